//! Tensor products of matrix factorizations, morphisms between
//! factorizations, and permutation-similarity witnesses.
//!
//! Two families of products are built here. The additive product and its
//! three rotated variants turn factorizations of `f` and `g` into one of
//! `f + g`; the multiplicative product and its anti-diagonal variant turn
//! them into one of `f * g`. Every output has size `2nm` and is fully
//! verified after construction.
//!
//! The inputs may share variables: all the block identities hold verbatim
//! over a common ring, and the size-reducing algorithm in [`crate::reducer`]
//! relies on that.

use std::fmt;

use num_rational::BigRational;

use crate::factorization::{FactorError, MatrixFactorization};
use crate::matrix::{MatrixError, PermutationMatrix, PolyMatrix};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorError {
    Factor(FactorError),
    Matrix(MatrixError),
    /// A commuting-diagram condition failed; 1 is `alpha*phi1 = phi2*beta`,
    /// 2 is `psi2*alpha = beta*psi1`.
    NotAMorphism { condition: u8 },
    TargetMismatch,
    ShapeMismatch,
    /// Composition attempted on morphisms whose middle objects differ.
    ChainMismatch,
    InvalidVariant(u8),
    /// No candidate block placement satisfies both morphism conditions.
    NoValidPlacement,
    WitnessNotFound,
    SizeMismatch,
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::Factor(e) => write!(f, "{e}"),
            TensorError::Matrix(e) => write!(f, "{e}"),
            TensorError::NotAMorphism { condition } => {
                write!(f, "morphism condition ({condition}) fails")
            }
            TensorError::TargetMismatch => write!(f, "objects target different polynomials"),
            TensorError::ShapeMismatch => write!(f, "matrix shapes do not fit the objects"),
            TensorError::ChainMismatch => write!(f, "morphisms do not chain"),
            TensorError::InvalidVariant(k) => write!(f, "invalid variant index {k}"),
            TensorError::NoValidPlacement => {
                write!(f, "no diagonal block placement yields a morphism")
            }
            TensorError::WitnessNotFound => write!(f, "no permutation witness found"),
            TensorError::SizeMismatch => write!(f, "objects have different sizes"),
        }
    }
}

impl std::error::Error for TensorError {}

impl From<FactorError> for TensorError {
    fn from(e: FactorError) -> Self {
        TensorError::Factor(e)
    }
}

impl From<MatrixError> for TensorError {
    fn from(e: MatrixError) -> Self {
        TensorError::Matrix(e)
    }
}

/// The additive tensor product and its three rotated variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YoshinoVariant {
    Plain,
    First,
    Second,
    Third,
}

impl YoshinoVariant {
    pub const ALL: [YoshinoVariant; 4] = [
        YoshinoVariant::Plain,
        YoshinoVariant::First,
        YoshinoVariant::Second,
        YoshinoVariant::Third,
    ];

    pub fn from_index(k: u8) -> Result<Self, TensorError> {
        match k {
            0 => Ok(YoshinoVariant::Plain),
            1 => Ok(YoshinoVariant::First),
            2 => Ok(YoshinoVariant::Second),
            3 => Ok(YoshinoVariant::Third),
            other => Err(TensorError::InvalidVariant(other)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            YoshinoVariant::Plain => 0,
            YoshinoVariant::First => 1,
            YoshinoVariant::Second => 2,
            YoshinoVariant::Third => 3,
        }
    }
}

/// The multiplicative tensor product (block diagonal) and its anti-diagonal
/// variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultVariant {
    Diagonal,
    AntiDiagonal,
}

impl MultVariant {
    pub const ALL: [MultVariant; 2] = [MultVariant::Diagonal, MultVariant::AntiDiagonal];

    pub fn from_index(k: u8) -> Result<Self, TensorError> {
        match k {
            0 => Ok(MultVariant::Diagonal),
            1 => Ok(MultVariant::AntiDiagonal),
            other => Err(TensorError::InvalidVariant(other)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            MultVariant::Diagonal => 0,
            MultVariant::AntiDiagonal => 1,
        }
    }
}

/// Additive tensor product: a factorization of `f + g` of size `2nm`.
pub fn yoshino(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
) -> Result<MatrixFactorization, TensorError> {
    yoshino_with(x, y, YoshinoVariant::Plain)
}

/// One of the three rotated variants, `k` in `1..=3`.
pub fn yoshino_variant(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
    k: u8,
) -> Result<MatrixFactorization, TensorError> {
    if !(1..=3).contains(&k) {
        return Err(TensorError::InvalidVariant(k));
    }
    yoshino_with(x, y, YoshinoVariant::from_index(k)?)
}

/// Additive tensor product with an explicit variant. The four block layouts
/// produce mutually distinct matrices for generic inputs.
pub fn yoshino_with(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
    variant: YoshinoVariant,
) -> Result<MatrixFactorization, TensorError> {
    let (n, m) = (x.size(), y.size());
    let phi_l = x.phi().kron(&PolyMatrix::identity(m));
    let psi_l = x.psi().kron(&PolyMatrix::identity(m));
    let phi_r = PolyMatrix::identity(n).kron(y.phi());
    let psi_r = PolyMatrix::identity(n).kron(y.psi());

    let (phi, psi) = match variant {
        YoshinoVariant::Plain => (
            PolyMatrix::from_blocks(&phi_l, &phi_r, &psi_r.neg(), &psi_l)?,
            PolyMatrix::from_blocks(&psi_l, &phi_r.neg(), &psi_r, &phi_l)?,
        ),
        YoshinoVariant::First => (
            PolyMatrix::from_blocks(&phi_r, &psi_l, &phi_l, &psi_r.neg())?,
            PolyMatrix::from_blocks(&psi_r, &psi_l, &phi_l, &phi_r.neg())?,
        ),
        YoshinoVariant::Second => (
            PolyMatrix::from_blocks(&psi_l, &psi_r.neg(), &phi_r, &phi_l)?,
            PolyMatrix::from_blocks(&phi_l, &psi_r, &phi_r.neg(), &psi_l)?,
        ),
        YoshinoVariant::Third => (
            PolyMatrix::from_blocks(&psi_r.neg(), &phi_l, &psi_l, &phi_r)?,
            PolyMatrix::from_blocks(&phi_r.neg(), &phi_l, &psi_l, &psi_r)?,
        ),
    };
    Ok(MatrixFactorization::new(phi, psi, x.target() + y.target())?)
}

/// Multiplicative tensor product: a factorization of `f * g` of size `2nm`.
pub fn mult_tensor(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
) -> Result<MatrixFactorization, TensorError> {
    mult_with(x, y, MultVariant::Diagonal)
}

/// Anti-diagonal variant of the multiplicative tensor product.
pub fn mult_tensor_variant(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
) -> Result<MatrixFactorization, TensorError> {
    mult_with(x, y, MultVariant::AntiDiagonal)
}

/// Multiplicative tensor product with an explicit variant.
pub fn mult_with(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
    variant: MultVariant,
) -> Result<MatrixFactorization, TensorError> {
    let phi_k = x.phi().kron(y.phi());
    let psi_k = x.psi().kron(y.psi());
    let zero = PolyMatrix::zeros(phi_k.rows(), phi_k.cols());
    let (phi, psi) = match variant {
        MultVariant::Diagonal => (phi_k.direct_sum(&phi_k), psi_k.direct_sum(&psi_k)),
        MultVariant::AntiDiagonal => (
            PolyMatrix::from_blocks(&zero, &phi_k, &phi_k, &zero)?,
            PolyMatrix::from_blocks(&zero, &psi_k, &psi_k, &zero)?,
        ),
    };
    Ok(MatrixFactorization::new(phi, psi, x.target() * y.target())?)
}

/// A morphism between two factorizations of the same polynomial: a pair
/// `(alpha, beta)` with `alpha*phi1 = phi2*beta` and `psi2*alpha = beta*psi1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: MatrixFactorization,
    dest: MatrixFactorization,
    alpha: PolyMatrix,
    beta: PolyMatrix,
}

impl Morphism {
    /// Builds and verifies a morphism. `alpha` and `beta` must be
    /// `dest.size() x source.size()`.
    pub fn new(
        source: &MatrixFactorization,
        dest: &MatrixFactorization,
        alpha: PolyMatrix,
        beta: PolyMatrix,
    ) -> Result<Self, TensorError> {
        if source.target() != dest.target() {
            return Err(TensorError::TargetMismatch);
        }
        let (n1, n2) = (source.size(), dest.size());
        for m in [&alpha, &beta] {
            if m.rows() != n2 || m.cols() != n1 {
                return Err(TensorError::ShapeMismatch);
            }
        }
        if alpha.mul(source.phi())? != dest.phi().mul(&beta)? {
            return Err(TensorError::NotAMorphism { condition: 1 });
        }
        if dest.psi().mul(&alpha)? != beta.mul(source.psi())? {
            return Err(TensorError::NotAMorphism { condition: 2 });
        }
        Ok(Morphism { source: source.clone(), dest: dest.clone(), alpha, beta })
    }

    pub fn identity(x: &MatrixFactorization) -> Self {
        let id = PolyMatrix::identity(x.size());
        Morphism { source: x.clone(), dest: x.clone(), alpha: id.clone(), beta: id }
    }

    /// The endomorphism `(c*I, c*I)`.
    pub fn scalar(x: &MatrixFactorization, c: &BigRational) -> Self {
        let block = PolyMatrix::scalar_matrix(&Polynomial::constant(c.clone()), x.size());
        Morphism { source: x.clone(), dest: x.clone(), alpha: block.clone(), beta: block }
    }

    /// `second` after `first`; the middle objects must coincide.
    pub fn compose(second: &Morphism, first: &Morphism) -> Result<Morphism, TensorError> {
        if first.dest != second.source {
            return Err(TensorError::ChainMismatch);
        }
        Morphism::new(
            &first.source,
            &second.dest,
            second.alpha.mul(&first.alpha)?,
            second.beta.mul(&first.beta)?,
        )
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn dest(&self) -> &MatrixFactorization {
        &self.dest
    }

    pub fn alpha(&self) -> &PolyMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &PolyMatrix {
        &self.beta
    }
}

/// Tensor of morphisms over the multiplicative product: maps
/// `X_f (x) X_g -> X_f' (x) X_g'` with blocks
/// `diag(alpha_f kron alpha_g)` and `diag(beta_f kron beta_g)`.
pub fn morphism_mult_tensor(
    zf: &Morphism,
    zg: &Morphism,
    variant: MultVariant,
) -> Result<Morphism, TensorError> {
    let source = mult_with(zf.source(), zg.source(), variant)?;
    let dest = mult_with(zf.dest(), zg.dest(), variant)?;
    let alpha_k = zf.alpha().kron(zg.alpha());
    let beta_k = zf.beta().kron(zg.beta());
    Morphism::new(&source, &dest, alpha_k.direct_sum(&alpha_k), beta_k.direct_sum(&beta_k))
}

/// Which of `alpha` or `beta` fills a diagonal block of a candidate
/// placement in [`morphism_yoshino_left`].
#[derive(Debug, Clone, Copy)]
enum Slot {
    A,
    B,
}

/// Tensors a morphism over `f` with a fixed object over `g` on the left of
/// an additive product: `X_f (+) Y -> X_f' (+) Y`.
///
/// The two diagonal blocks of each of the resulting `alpha` and `beta` are
/// filled with `alpha_f kron I` or `beta_f kron I`. Which arrangement
/// satisfies the morphism conditions depends on the block layout of the
/// variant, so candidates are tried in the fixed order
/// `(aa|bb)`, `(ab|ba)`, `(ba|ab)`, `(ab|ab)`, `(ba|ba)`, `(bb|aa)` and the
/// first verified placement is returned. The all-`alpha`/all-`beta`
/// placement listed first only verifies when `alpha = beta` (for example
/// scalar endomorphisms); generic morphisms select one of the mixed
/// placements, a different one for each variant.
pub fn morphism_yoshino_left(
    zf: &Morphism,
    y: &MatrixFactorization,
    variant: YoshinoVariant,
) -> Result<Morphism, TensorError> {
    let source = yoshino_with(zf.source(), y, variant)?;
    let dest = yoshino_with(zf.dest(), y, variant)?;
    let id = PolyMatrix::identity(y.size());
    let a = zf.alpha().kron(&id);
    let b = zf.beta().kron(&id);
    let pick = |s: Slot| match s {
        Slot::A => &a,
        Slot::B => &b,
    };
    const CANDIDATES: [[Slot; 4]; 6] = [
        [Slot::A, Slot::A, Slot::B, Slot::B],
        [Slot::A, Slot::B, Slot::B, Slot::A],
        [Slot::B, Slot::A, Slot::A, Slot::B],
        [Slot::A, Slot::B, Slot::A, Slot::B],
        [Slot::B, Slot::A, Slot::B, Slot::A],
        [Slot::B, Slot::B, Slot::A, Slot::A],
    ];
    for [a1, a2, b1, b2] in CANDIDATES {
        let alpha = pick(a1).direct_sum(pick(a2));
        let beta = pick(b1).direct_sum(pick(b2));
        match Morphism::new(&source, &dest, alpha, beta) {
            Ok(m) => return Ok(m),
            Err(TensorError::NotAMorphism { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(TensorError::NoValidPlacement)
}

/// Permutation `P` with `P (X (x) Y) P^T = Y (x) X`, acting on both matrix
/// components at once: `I_2 kron S(r, p)` for sizes `r`, `p`. The same
/// witness serves the diagonal and anti-diagonal forms.
pub fn commutativity_witness(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
    _variant: MultVariant,
) -> PermutationMatrix {
    let shuffle = PermutationMatrix::perfect_shuffle(x.size(), y.size());
    PermutationMatrix::identity(2).kron(&shuffle)
}

/// Outcome of comparing the two associations of a triple product.
#[derive(Debug, Clone)]
pub struct AssociativityReport {
    /// Whether `(X (x) Y) (x) Z` and `X (x) (Y (x) Z)` are entrywise equal.
    pub exact_equal: bool,
    /// Permutation mapping the left association onto the right one by
    /// conjugation (the identity whenever `x` has size 1).
    pub witness: PermutationMatrix,
    pub left: MatrixFactorization,
    pub right: MatrixFactorization,
}

/// Builds both associations of `x (x) y (x) z`, reports whether they are
/// entrywise equal, and produces a conjugation witness mapping one onto the
/// other. Both associations are verified factorizations of the triple
/// product of the targets.
pub fn associativity_check(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
    z: &MatrixFactorization,
    variant: MultVariant,
) -> Result<AssociativityReport, TensorError> {
    let left = mult_with(&mult_with(x, y, variant)?, z, variant)?;
    let right = mult_with(x, &mult_with(y, z, variant)?, variant)?;
    let exact_equal = left.phi() == right.phi() && left.psi() == right.psi();

    // Left is (outer) kron (I_2 kron phi_x kron M), right is
    // (outer) kron (phi_x kron I_2 kron M) with M = phi_y kron phi_z, so the
    // inner factors swap under S(2, size_x) kron I.
    let inner = PermutationMatrix::perfect_shuffle(2, x.size())
        .kron(&PermutationMatrix::identity(y.size() * z.size()));
    let witness = PermutationMatrix::identity(2).kron(&inner);

    if witness.conjugate(left.phi())? != *right.phi()
        || witness.conjugate(left.psi())? != *right.psi()
    {
        return Err(TensorError::WitnessNotFound);
    }
    Ok(AssociativityReport { exact_equal, witness, left, right })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributivitySide {
    /// `(X1 (+) X2) (x) Y` against `(X1 (x) Y) (+) (X2 (x) Y)`.
    Left,
    /// `Y (x) (X1 (+) X2)` against `(Y (x) X1) (+) (Y (x) X2)`.
    Right,
}

/// Block permutation mapping the tensor of a direct sum onto the direct sum
/// of tensors by conjugation. `x1` and `x2` must be same-size
/// factorizations of the same polynomial. The witness is checked against
/// both matrix components before being returned.
pub fn distributivity_witness(
    x1: &MatrixFactorization,
    x2: &MatrixFactorization,
    y: &MatrixFactorization,
    side: DistributivitySide,
    variant: MultVariant,
) -> Result<PermutationMatrix, TensorError> {
    if x1.size() != x2.size() {
        return Err(TensorError::SizeMismatch);
    }
    if x1.target() != x2.target() {
        return Err(TensorError::TargetMismatch);
    }
    let n = x1.size();
    let p = y.size();
    let sum = MatrixFactorization::direct_sum(x1, x2)?;

    // Middle-block swap: diag(A, B, C, D) -> diag(A, C, B, D) on n*p blocks.
    let block = n * p;
    let mut image = Vec::with_capacity(4 * block);
    for b in [0usize, 2, 1, 3] {
        image.extend((0..block).map(|t| b * block + t));
    }
    let left_witness = PermutationMatrix::from_image(image)?;

    let (tensored, stacked, witness) = match side {
        DistributivitySide::Left => {
            let tensored = mult_with(&sum, y, variant)?;
            let stacked = MatrixFactorization::direct_sum(
                &mult_with(x1, y, variant)?,
                &mult_with(x2, y, variant)?,
            )?;
            (tensored, stacked, left_witness)
        }
        DistributivitySide::Right => {
            let tensored = mult_with(y, &sum, variant)?;
            let stacked = MatrixFactorization::direct_sum(
                &mult_with(y, x1, variant)?,
                &mult_with(y, x2, variant)?,
            )?;
            // Conjugating by I_2 kron S(2n, p) turns Y (x) (X1 (+) X2) into
            // (X1 (+) X2) (x) Y; after the middle-block swap, each summand
            // is flipped back by I_2 kron S(n, p).
            let to_left = PermutationMatrix::identity(2)
                .kron(&PermutationMatrix::perfect_shuffle(2 * n, p))
                .transpose();
            let flip_each = PermutationMatrix::identity(2)
                .kron(&PermutationMatrix::perfect_shuffle(n, p));
            let witness = flip_each
                .direct_sum(&flip_each)
                .compose(&left_witness)?
                .compose(&to_left)?;
            (tensored, stacked, witness)
        }
    };

    if witness.conjugate(tensored.phi())? != *stacked.phi()
        || witness.conjugate(tensored.psi())? != *stacked.psi()
    {
        return Err(TensorError::WitnessNotFound);
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::MatrixFactorization as MF;
    use num_bigint::BigInt;

    fn p(text: &str) -> Polynomial {
        crate::parse_polynomial(text).unwrap()
    }

    fn mat(n: usize, entries: &[&str]) -> PolyMatrix {
        PolyMatrix::new(n, n, entries.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn one_by_one(g: &str, h: &str) -> MF {
        MF::one_by_one(&p(g), &p(h)).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn mult_tensor_of_one_by_ones_is_diagonal() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y^2", "y^3");
        let t = mult_tensor(&x, &y).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.target(), &p("x^3y^5"));
        assert_eq!(t.phi(), &PolyMatrix::scalar_matrix(&p("xy^2"), 2));
        assert_eq!(t.psi(), &PolyMatrix::scalar_matrix(&p("x^2y^3"), 2));

        let z = one_by_one("z^3", "z^4");
        let t2 = mult_tensor(&t, &z).unwrap();
        assert_eq!(t2.size(), 4);
        assert_eq!(t2.target(), &p("x^3y^5z^7"));
        assert_eq!(t2.phi(), &PolyMatrix::scalar_matrix(&p("xy^2z^3"), 4));
        assert_eq!(t2.psi(), &PolyMatrix::scalar_matrix(&p("x^2y^3z^4"), 4));
    }

    #[test]
    fn mult_tensor_two_by_two_matches_the_worked_blocks() {
        let x = MF::new(mat(2, &["x", "-1", "1", "x"]), mat(2, &["x", "1", "-1", "x"]), p("x^2+1"))
            .unwrap();
        let y = MF::new(
            mat(2, &["-x", "1", "-1", "-x"]),
            mat(2, &["x", "1", "-1", "x"]),
            p("-x^2-1"),
        )
        .unwrap();
        let t = mult_tensor(&x, &y).unwrap();
        assert_eq!(t.size(), 8);
        assert_eq!(t.target(), &p("-x^4-2x^2-1"));

        let phi_block = mat(
            4,
            &[
                "-x^2", "x", "x", "-1", //
                "-x", "-x^2", "1", "x", //
                "-x", "1", "-x^2", "x", //
                "-1", "-x", "-x", "-x^2",
            ],
        );
        let psi_block = mat(
            4,
            &[
                "x^2", "x", "x", "1", //
                "-x", "x^2", "-1", "x", //
                "-x", "-1", "x^2", "x", //
                "1", "-x", "-x", "x^2",
            ],
        );
        assert_eq!(t.phi().submatrix(0, 0, 4, 4), phi_block);
        assert_eq!(t.phi().submatrix(4, 4, 4, 4), phi_block);
        assert!(t.phi().submatrix(0, 4, 4, 4).entries().iter().all(|e| e.is_zero()));
        assert_eq!(t.psi().submatrix(0, 0, 4, 4), psi_block);
    }

    #[test]
    fn mult_variant_moves_blocks_off_the_diagonal() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y^2", "y^3");
        let t = mult_tensor_variant(&x, &y).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.target(), &p("x^3y^5"));
        assert_eq!(t.phi(), &mat(2, &["0", "xy^2", "xy^2", "0"]));
        assert_ne!(t.phi(), mult_tensor(&x, &y).unwrap().phi());
    }

    #[test]
    fn yoshino_products_verify_and_have_size_2nm() {
        let x = one_by_one("x", "x");
        let z = one_by_one("z", "z");
        let t = yoshino(&x, &z).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.target(), &p("x^2+z^2"));
        assert_eq!(t.phi(), &mat(2, &["x", "z", "-z", "x"]));
        assert_eq!(t.psi(), &mat(2, &["x", "-z", "z", "x"]));

        // same target as the standard method, different matrices
        let m = MF::standard_for_polynomial(&p("x^2+z^2")).unwrap();
        assert_eq!(m.target(), t.target());
    }

    #[test]
    fn first_variant_block_pattern() {
        let x = one_by_one("x", "x");
        let z = one_by_one("z", "z");
        let t = yoshino_variant(&x, &z, 1).unwrap();
        assert_eq!(t.phi(), &mat(2, &["z", "x", "x", "-z"]));
        assert_eq!(t.target(), &p("x^2+z^2"));
    }

    #[test]
    fn variants_are_pairwise_distinct() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y", "y^4");
        let all: Vec<MF> = YoshinoVariant::ALL
            .iter()
            .map(|v| yoshino_with(&x, &y, *v).unwrap())
            .collect();
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                assert_ne!(all[i].phi(), all[j].phi(), "variants {i} and {j} coincide");
            }
            assert_eq!(all[i].target(), &p("x^3 + y^5"));
            assert_eq!(all[i].size(), 2);
        }
        let d = mult_tensor(&x, &y).unwrap();
        let a = mult_tensor_variant(&x, &y).unwrap();
        assert_ne!(d.phi(), a.phi());
    }

    #[test]
    fn yoshino_of_two_by_twos_has_size_eight() {
        let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let z = MF::standard_for_polynomial(&p("z^2+w^2")).unwrap();
        for v in YoshinoVariant::ALL {
            let t = yoshino_with(&x, &z, v).unwrap();
            assert_eq!(t.size(), 8);
            assert_eq!(t.target(), &p("x^2+y^2+z^2+w^2"));
            assert!(t.verify().pass);
        }
    }

    #[test]
    fn yoshino_rejects_a_cancelling_sum() {
        let x = one_by_one("x", "y");
        let y = one_by_one("-x", "y");
        assert!(matches!(
            yoshino(&x, &y),
            Err(TensorError::Factor(FactorError::ZeroTarget))
        ));
    }

    #[test]
    fn thirty_two_by_thirty_two_factorization_of_the_first_worked_example() {
        let m = MF::standard_method(&[
            (p("x").as_monomial().unwrap(), p("x").as_monomial().unwrap()),
            (p("z").as_monomial().unwrap(), p("z").as_monomial().unwrap()),
        ])
        .unwrap();
        let g = MF::standard_method(&[
            (p("x").as_monomial().unwrap(), p("y").as_monomial().unwrap()),
            (p("x^2").as_monomial().unwrap(), p("z").as_monomial().unwrap()),
            (p("y").as_monomial().unwrap(), p("z^2").as_monomial().unwrap()),
        ])
        .unwrap();
        let hg = mult_tensor(&m, &g).unwrap();
        assert_eq!(hg.size(), 16);
        let q = one_by_one("x", "y");
        let f = yoshino(&q, &hg).unwrap();
        assert_eq!(f.size(), 32);
        assert_eq!(f.target(), &(&p("xy") + &(&p("x^2+z^2") * &p("xy+x^2z+yz^2"))));
    }

    #[test]
    fn identity_and_scalar_morphisms() {
        let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let id = Morphism::identity(&x);
        assert!(Morphism::new(&x, &x, id.alpha().clone(), id.beta().clone()).is_ok());
        let c = Morphism::scalar(&x, &BigRational::new(BigInt::from(3), BigInt::from(4)));
        assert!(Morphism::new(&x, &x, c.alpha().clone(), c.beta().clone()).is_ok());
    }

    #[test]
    fn swap_construction_is_a_morphism() {
        let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let y = one_by_one("z", "z^2");
        let src = mult_tensor(&x, &y).unwrap();
        let dst = mult_tensor(&y, &x).unwrap();
        let delta = y.phi().kron(x.phi());
        let beta = x.phi().kron(y.phi());
        let morph = Morphism::new(
            &src,
            &dst,
            delta.direct_sum(&delta),
            beta.direct_sum(&beta),
        );
        assert!(morph.is_ok());
    }

    #[test]
    fn morphism_rejects_bad_pairs() {
        let x = one_by_one("x", "x^2");
        let other = one_by_one("x", "y");
        assert_eq!(
            Morphism::new(&x, &other, PolyMatrix::identity(1), PolyMatrix::identity(1)),
            Err(TensorError::TargetMismatch)
        );
        let y = one_by_one("x^2", "x");
        let err = Morphism::new(&x, &y, PolyMatrix::identity(1), PolyMatrix::identity(1));
        assert_eq!(err, Err(TensorError::NotAMorphism { condition: 1 }));
    }

    #[test]
    fn composition_of_scalars_multiplies() {
        let x = MF::standard_for_polynomial(&p("x^2+1")).unwrap();
        let c = Morphism::scalar(&x, &rat(2));
        let d = Morphism::scalar(&x, &rat(5));
        let cd = Morphism::compose(&d, &c).unwrap();
        assert_eq!(cd, Morphism::scalar(&x, &rat(10)));
        let id = Morphism::identity(&x);
        assert_eq!(Morphism::compose(&id, &c).unwrap(), c);
        assert_eq!(Morphism::compose(&Morphism::identity(&x), &id).unwrap(), id);
        let y = one_by_one("x", "y");
        assert_eq!(
            Morphism::compose(&Morphism::identity(&y), &c),
            Err(TensorError::ChainMismatch)
        );
    }

    #[test]
    fn mult_tensor_of_identities_is_the_identity() {
        for v in MultVariant::ALL {
            let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
            let y = one_by_one("z", "z^2");
            let t = mult_with(&x, &y, v).unwrap();
            let idt = morphism_mult_tensor(&Morphism::identity(&x), &Morphism::identity(&y), v)
                .unwrap();
            assert_eq!(idt, Morphism::identity(&t));
        }
    }

    #[test]
    fn mult_tensor_of_scalars_is_the_scalar_product() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y", "y^4");
        let t = mult_tensor(&x, &y).unwrap();
        let m = morphism_mult_tensor(
            &Morphism::scalar(&x, &rat(2)),
            &Morphism::scalar(&y, &rat(3)),
            MultVariant::Diagonal,
        )
        .unwrap();
        assert_eq!(m, Morphism::scalar(&t, &rat(6)));
    }

    #[test]
    fn bifunctor_composition_law_with_swaps() {
        // chain built from the swap morphism and its reverse
        let a = one_by_one("x", "x^2");
        let b = one_by_one("y^2", "y");
        let src = mult_tensor(&a, &b).unwrap();
        let dst = mult_tensor(&b, &a).unwrap();
        let fwd = {
            let delta = b.phi().kron(a.phi());
            let beta = a.phi().kron(b.phi());
            Morphism::new(&src, &dst, delta.direct_sum(&delta), beta.direct_sum(&beta)).unwrap()
        };
        let back = {
            let delta = a.phi().kron(b.phi());
            let beta = b.phi().kron(a.phi());
            Morphism::new(&dst, &src, delta.direct_sum(&delta), beta.direct_sum(&beta)).unwrap()
        };

        let c = one_by_one("z", "z^3");
        let zc = Morphism::scalar(&c, &rat(4));
        let zc2 = Morphism::scalar(&c, &rat(7));

        let lhs = morphism_mult_tensor(
            &Morphism::compose(&back, &fwd).unwrap(),
            &Morphism::compose(&zc2, &zc).unwrap(),
            MultVariant::Diagonal,
        )
        .unwrap();
        let rhs = Morphism::compose(
            &morphism_mult_tensor(&back, &zc2, MultVariant::Diagonal).unwrap(),
            &morphism_mult_tensor(&fwd, &zc, MultVariant::Diagonal).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn yoshino_left_identity_gives_identity() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y", "y^4");
        for v in YoshinoVariant::ALL {
            let t = yoshino_with(&x, &y, v).unwrap();
            let m = morphism_yoshino_left(&Morphism::identity(&x), &y, v).unwrap();
            assert_eq!(m, Morphism::identity(&t));
        }
    }

    #[test]
    fn yoshino_left_scalar_all_variants() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y", "y^4");
        for v in YoshinoVariant::ALL {
            let m = morphism_yoshino_left(&Morphism::scalar(&x, &rat(5)), &y, v).unwrap();
            let t = yoshino_with(&x, &y, v).unwrap();
            assert_eq!(m, Morphism::scalar(&t, &rat(5)));
        }
    }

    #[test]
    fn yoshino_left_finds_a_placement_for_generic_morphisms() {
        // a genuinely non-scalar morphism (alpha != beta): the swap
        // construction between the two multiplicative products of a pair of
        // 2x2 factorizations
        let a = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let b = MF::standard_for_polynomial(&p("z^2+w^2")).unwrap();
        let src = mult_tensor(&a, &b).unwrap();
        let dst = mult_tensor(&b, &a).unwrap();
        let delta = b.phi().kron(a.phi());
        let beta = a.phi().kron(b.phi());
        let zf =
            Morphism::new(&src, &dst, delta.direct_sum(&delta), beta.direct_sum(&beta)).unwrap();
        assert_ne!(zf.alpha(), zf.beta());

        let y = one_by_one("u", "u^4");
        for v in YoshinoVariant::ALL {
            let m = morphism_yoshino_left(&zf, &y, v).unwrap();
            assert_eq!(m.source().size(), 16);
            assert_eq!(m.dest().size(), 16);
        }
    }

    #[test]
    fn commutativity_witness_small_cases() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y^2", "y^3");
        let w = commutativity_witness(&x, &y, MultVariant::Diagonal);
        assert!(w.is_identity());

        let m = MF::standard_for_polynomial(&p("x^2+z^2")).unwrap();
        let g = MF::standard_method(&[
            (p("x").as_monomial().unwrap(), p("y").as_monomial().unwrap()),
            (p("x^2").as_monomial().unwrap(), p("z").as_monomial().unwrap()),
            (p("y").as_monomial().unwrap(), p("z^2").as_monomial().unwrap()),
        ])
        .unwrap();
        for v in MultVariant::ALL {
            let mp = mult_with(&m, &g, v).unwrap();
            let pm = mult_with(&g, &m, v).unwrap();
            let w = commutativity_witness(&m, &g, v);
            assert_eq!(w.conjugate(mp.phi()).unwrap(), *pm.phi());
            assert_eq!(w.conjugate(mp.psi()).unwrap(), *pm.psi());
        }
    }

    #[test]
    fn commutativity_witness_reproduces_the_middle_swap() {
        let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let y = MF::standard_for_polynomial(&p("z^2+w^2")).unwrap();
        let w = commutativity_witness(&x, &y, MultVariant::Diagonal);
        // blockwise: I_2 kron S(2,2), so each 4x4 block swaps rows/cols 2 and 3
        assert_eq!(&w.image()[0..4], &[0, 2, 1, 3]);
        let xy = mult_tensor(&x, &y).unwrap();
        let yx = mult_tensor(&y, &x).unwrap();
        assert_eq!(w.conjugate(xy.phi()).unwrap(), *yx.phi());
    }

    #[test]
    fn associativity_exact_for_size_one_left_factor() {
        let x = one_by_one("x", "x^2");
        let y = one_by_one("y^2", "y^3");
        let z = one_by_one("z^3", "z^4");
        for v in MultVariant::ALL {
            let report = associativity_check(&x, &y, &z, v).unwrap();
            assert!(report.exact_equal);
            assert!(report.witness.is_identity());
            assert_eq!(report.left.target(), &p("x^3y^5z^7"));
            assert_eq!(report.left.size(), 4);
        }
    }

    #[test]
    fn associativity_witness_for_mixed_sizes() {
        let x = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        let y = one_by_one("z", "z^2");
        let z = one_by_one("w", "w^3");
        for v in MultVariant::ALL {
            let report = associativity_check(&x, &y, &z, v).unwrap();
            assert!(!report.exact_equal);
            assert!(report.left.verify().pass);
            assert!(report.right.verify().pass);
            assert_eq!(report.left.size(), 4 * x.size() * y.size() * z.size());
        }
    }

    #[test]
    fn distributivity_witness_left_and_right() {
        let x1 = MF::standard_method(&[
            (p("x").as_monomial().unwrap(), p("y").as_monomial().unwrap()),
            (p("z").as_monomial().unwrap(), p("w").as_monomial().unwrap()),
        ])
        .unwrap();
        let x2 = MF::standard_method(&[
            (p("z").as_monomial().unwrap(), p("w").as_monomial().unwrap()),
            (p("x").as_monomial().unwrap(), p("y").as_monomial().unwrap()),
        ])
        .unwrap();
        let y = MF::standard_for_polynomial(&p("u^2+v^2")).unwrap();
        for v in MultVariant::ALL {
            for side in [DistributivitySide::Left, DistributivitySide::Right] {
                assert!(distributivity_witness(&x1, &x2, &y, side, v).is_ok());
            }
        }
    }

    #[test]
    fn distributivity_one_by_one_cases() {
        let x = one_by_one("x", "x");
        let y = one_by_one("y", "y");
        // identical summands
        assert!(distributivity_witness(&x, &x, &y, DistributivitySide::Left, MultVariant::Diagonal)
            .is_ok());
        // distinct factorizations of the same target
        let x2 = one_by_one("x^2", "1");
        assert_eq!(x.target(), x2.target());
        assert!(distributivity_witness(&x, &x2, &y, DistributivitySide::Left, MultVariant::Diagonal)
            .is_ok());
        // degenerate right factor
        let g = MF::one_by_one(&Polynomial::one(), &p("y^3+y")).unwrap();
        assert!(distributivity_witness(&x, &x2, &g, DistributivitySide::Left, MultVariant::Diagonal)
            .is_ok());
        // mismatches
        let bad = one_by_one("y", "y");
        assert_eq!(
            distributivity_witness(&x, &bad, &y, DistributivitySide::Left, MultVariant::Diagonal),
            Err(TensorError::TargetMismatch)
        );
        let big = MF::standard_for_polynomial(&p("x^2+y^2")).unwrap();
        assert_eq!(
            distributivity_witness(&x, &big, &y, DistributivitySide::Left, MultVariant::Diagonal),
            Err(TensorError::SizeMismatch)
        );
    }
}
