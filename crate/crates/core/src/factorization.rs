//! Matrix factorizations with exact verification, and the inductive
//! standard method for building them summand by summand.
//!
//! A factorization of `f` is a pair of n x n matrices `(phi, psi)` with
//! `phi * psi = psi * phi = f * I_n`, checked entry by entry in exact
//! arithmetic. The checked constructor is the only public way to assemble
//! one from raw matrices; the operations in this module and in
//! [`crate::tensor`] build provably valid pairs and re-verify them in debug
//! builds.

use std::fmt;

use crate::matrix::{MatrixError, PolyMatrix};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductSide {
    PhiPsi,
    PsiPhi,
}

impl fmt::Display for ProductSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductSide::PhiPsi => write!(f, "phi*psi"),
            ProductSide::PsiPhi => write!(f, "psi*phi"),
        }
    }
}

/// First position at which a product differs from `f * I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyMismatch {
    pub side: ProductSide,
    pub row: usize,
    pub col: usize,
    pub found: Polynomial,
    pub expected: Polynomial,
}

impl fmt::Display for VerifyMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mismatch at ({}, {}): found {}, expected {}",
            self.side, self.row, self.col, self.found, self.expected
        )
    }
}

/// Outcome of re-verifying both products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    pub mismatch: Option<VerifyMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    NotAFactorization(VerifyMismatch),
    NotSquare { rows: usize, cols: usize },
    SizeMismatch { left: usize, right: usize },
    ZeroTarget,
    ZeroInput,
    EmptySummands,
    TargetMismatch,
    CommutationFailure,
    Matrix(MatrixError),
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::NotAFactorization(m) => write!(f, "not a factorization: {m}"),
            FactorError::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            FactorError::SizeMismatch { left, right } => {
                write!(f, "factorization sizes differ: {left} vs {right}")
            }
            FactorError::ZeroTarget => write!(f, "target polynomial must be nonzero"),
            FactorError::ZeroInput => write!(f, "input polynomial must be nonzero"),
            FactorError::EmptySummands => write!(f, "summand list must be nonempty"),
            FactorError::TargetMismatch => write!(f, "factorizations target different polynomials"),
            FactorError::CommutationFailure => {
                write!(f, "cross blocks do not commute")
            }
            FactorError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FactorError {}

impl From<MatrixError> for FactorError {
    fn from(e: MatrixError) -> Self {
        FactorError::Matrix(e)
    }
}

/// A verified pair `(phi, psi)` with `phi * psi = psi * phi = f * I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization {
    f: Polynomial,
    phi: PolyMatrix,
    psi: PolyMatrix,
}

impl MatrixFactorization {
    /// Builds and fully verifies a factorization of `f`.
    pub fn new(phi: PolyMatrix, psi: PolyMatrix, f: Polynomial) -> Result<Self, FactorError> {
        if !phi.is_square() {
            return Err(FactorError::NotSquare { rows: phi.rows(), cols: phi.cols() });
        }
        if !psi.is_square() || psi.rows() != phi.rows() {
            return Err(FactorError::SizeMismatch { left: phi.rows(), right: psi.rows() });
        }
        if f.is_zero() {
            return Err(FactorError::ZeroTarget);
        }
        let mf = MatrixFactorization { f, phi, psi };
        match mf.verify() {
            VerifyReport { pass: true, .. } => Ok(mf),
            VerifyReport { mismatch: Some(m), .. } => Err(FactorError::NotAFactorization(m)),
            VerifyReport { mismatch: None, .. } => unreachable!("failed verify carries a mismatch"),
        }
    }

    /// Assembles a factorization whose validity is guaranteed by the
    /// construction that produced the parts. Debug builds verify anyway.
    pub(crate) fn from_proven_parts(phi: PolyMatrix, psi: PolyMatrix, f: Polynomial) -> Self {
        let mf = MatrixFactorization { f, phi, psi };
        debug_assert!(mf.verify().pass, "construction produced an invalid factorization");
        mf
    }

    pub fn target(&self) -> &Polynomial {
        &self.f
    }

    /// Matrix dimension n.
    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    /// Recomputes both products and reports the first mismatch, if any.
    pub fn verify(&self) -> VerifyReport {
        verify_pair(&self.phi, &self.psi, &self.f)
    }

    /// The 1 x 1 factorization `([g], [h])` of `g * h`.
    pub fn one_by_one(g: &Polynomial, h: &Polynomial) -> Result<Self, FactorError> {
        if g.is_zero() || h.is_zero() {
            return Err(FactorError::ZeroInput);
        }
        let phi = PolyMatrix::new(1, 1, vec![g.clone()])?;
        let psi = PolyMatrix::new(1, 1, vec![h.clone()])?;
        Ok(Self::from_proven_parts(phi, psi, g * h))
    }

    /// Doubles a factorization of `f` into one of `f + g*h` with the blocks
    /// `([C, -gI; hI, D], [D, gI; -hI, C])`.
    pub fn add_summand(&self, g: &Polynomial, h: &Polynomial) -> Result<Self, FactorError> {
        let gh = g * h;
        if gh.is_zero() {
            return Err(FactorError::ZeroInput);
        }
        let n = self.size();
        let g_block = PolyMatrix::scalar_matrix(g, n);
        let h_block = PolyMatrix::scalar_matrix(h, n);
        let phi = PolyMatrix::from_blocks(&self.phi, &g_block.neg(), &h_block, &self.psi)?;
        let psi = PolyMatrix::from_blocks(&self.psi, &g_block, &h_block.neg(), &self.phi)?;
        Ok(Self::from_proven_parts(phi, psi, &self.f + &gh))
    }

    /// Combines same-size factorizations of `f1` and `f2` into one of
    /// `f1 + f2`, provided the cross blocks commute (`C1 D2 = D2 C1` and
    /// `C2 D1 = D1 C2`, both checked eagerly). The result is fully verified.
    pub fn combine_commuting(x1: &Self, x2: &Self) -> Result<Self, FactorError> {
        if x1.size() != x2.size() {
            return Err(FactorError::SizeMismatch { left: x1.size(), right: x2.size() });
        }
        let (c1, d1) = (&x1.phi, &x1.psi);
        let (c2, d2) = (&x2.phi, &x2.psi);
        if c1.mul(d2)? != d2.mul(c1)? || c2.mul(d1)? != d1.mul(c2)? {
            return Err(FactorError::CommutationFailure);
        }
        let phi = PolyMatrix::from_blocks(c1, &d2.neg(), c2, d1)?;
        let psi = PolyMatrix::from_blocks(d1, d2, &c2.neg(), c1)?;
        Self::new(phi, psi, &x1.f + &x2.f)
    }

    /// Left-fold of [`Self::one_by_one`] and [`Self::add_summand`] over an
    /// ordered list of `(g, h)` summand pairs: the standard method. For `k`
    /// summands the result has size `2^(k-1)` and is verified.
    pub fn standard_method(pairs: &[(Monomial, Monomial)]) -> Result<Self, FactorError> {
        let Some(((g0, h0), rest)) = pairs.split_first() else {
            return Err(FactorError::EmptySummands);
        };
        let mut acc = Self::one_by_one(&g0.clone().into(), &h0.clone().into())?;
        for (g, h) in rest {
            acc = acc.add_summand(&g.clone().into(), &h.clone().into())?;
        }
        match acc.verify() {
            VerifyReport { pass: true, .. } => Ok(acc),
            VerifyReport { mismatch: Some(m), .. } => Err(FactorError::NotAFactorization(m)),
            _ => unreachable!(),
        }
    }

    /// Standard method applied to a polynomial: its monomials are taken in
    /// descending graded-lex order (the rendering order) and each is split
    /// by [`Monomial::leading_split`].
    pub fn standard_for_polynomial(p: &Polynomial) -> Result<Self, FactorError> {
        if p.is_zero() {
            return Err(FactorError::ZeroInput);
        }
        let pairs: Vec<(Monomial, Monomial)> = p
            .monomials_desc()
            .iter()
            .map(|m| m.leading_split().expect("nonzero monomial"))
            .collect();
        Self::standard_method(&pairs)
    }

    /// Blockwise direct sum of two factorizations of the same `f`.
    pub fn direct_sum(x1: &Self, x2: &Self) -> Result<Self, FactorError> {
        if x1.f != x2.f {
            return Err(FactorError::TargetMismatch);
        }
        Ok(Self::from_proven_parts(
            x1.phi.direct_sum(&x2.phi),
            x1.psi.direct_sum(&x2.psi),
            x1.f.clone(),
        ))
    }
}

/// Checks `phi * psi = psi * phi = f * I` for raw, possibly invalid data;
/// the matrices must be square and of equal size.
pub fn verify_pair(phi: &PolyMatrix, psi: &PolyMatrix, f: &Polynomial) -> VerifyReport {
    debug_assert!(phi.is_square() && psi.is_square() && phi.rows() == psi.rows());
    for (side, left, right) in
        [(ProductSide::PhiPsi, phi, psi), (ProductSide::PsiPhi, psi, phi)]
    {
        let product = left.mul(right).expect("shapes checked by caller");
        if let Some((row, col)) = product.scalar_identity_mismatch(f) {
            let expected = if row == col { f.clone() } else { Polynomial::zero() };
            return VerifyReport {
                pass: false,
                mismatch: Some(VerifyMismatch {
                    side,
                    row,
                    col,
                    found: product.get(row, col).clone(),
                    expected,
                }),
            };
        }
    }
    VerifyReport { pass: true, mismatch: None }
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}", self.f)?;
        writeln!(f, "size = {}", self.size())?;
        writeln!(f, "phi:")?;
        writeln!(f, "{}", self.phi)?;
        writeln!(f, "psi:")?;
        write!(f, "{}", self.psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial {
        crate::parse_polynomial(text).unwrap()
    }

    fn m(text: &str) -> Monomial {
        p(text).as_monomial().unwrap()
    }

    fn mat(n: usize, entries: &[&str]) -> PolyMatrix {
        PolyMatrix::new(n, n, entries.iter().map(|s| p(s)).collect()).unwrap()
    }

    pub(crate) fn intro_pair() -> (PolyMatrix, PolyMatrix) {
        (mat(2, &["x", "-1", "1", "x"]), mat(2, &["x", "1", "-1", "x"]))
    }

    #[test]
    fn new_accepts_the_intro_pair() {
        let (phi, psi) = intro_pair();
        let mf = MatrixFactorization::new(phi, psi, p("x^2+1")).unwrap();
        assert_eq!(mf.size(), 2);
        assert!(mf.verify().pass);
    }

    #[test]
    fn new_accepts_a_one_by_one() {
        let mf = MatrixFactorization::new(mat(1, &["x"]), mat(1, &["x^2"]), p("x^3")).unwrap();
        assert_eq!(mf.size(), 1);
    }

    #[test]
    fn new_rejects_a_wrong_target() {
        let err = MatrixFactorization::new(mat(1, &["x"]), mat(1, &["y"]), p("x^2")).unwrap_err();
        match err {
            FactorError::NotAFactorization(mm) => {
                assert_eq!((mm.row, mm.col), (0, 0));
                assert_eq!(mm.found, p("xy"));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn new_rejects_zero_target_and_size_mismatch() {
        assert_eq!(
            MatrixFactorization::new(mat(1, &["x"]), mat(1, &["y"]), Polynomial::zero()),
            Err(FactorError::ZeroTarget)
        );
        assert!(matches!(
            MatrixFactorization::new(mat(1, &["x"]), mat(2, &["y", "0", "0", "y"]), p("xy")),
            Err(FactorError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn one_by_one_examples() {
        let q = MatrixFactorization::one_by_one(&p("x"), &p("y")).unwrap();
        assert_eq!(q.target(), &p("xy"));
        let l = MatrixFactorization::one_by_one(&p("x^3"), &p("y^2")).unwrap();
        assert_eq!(l.target(), &p("x^3y^2"));
        let t = MatrixFactorization::one_by_one(&Polynomial::one(), &p("x^2+1")).unwrap();
        assert_eq!(t.target(), &p("x^2+1"));
        assert_eq!(
            MatrixFactorization::one_by_one(&Polynomial::zero(), &p("x")),
            Err(FactorError::ZeroInput)
        );
    }

    #[test]
    fn add_summand_reproduces_the_two_by_two_pages() {
        // xz + y^2
        let d = MatrixFactorization::one_by_one(&p("x"), &p("z"))
            .unwrap()
            .add_summand(&p("y"), &p("y"))
            .unwrap();
        assert_eq!(d.phi(), &mat(2, &["x", "-y", "y", "z"]));
        assert_eq!(d.psi(), &mat(2, &["z", "y", "-y", "x"]));

        // xy + x^2 z
        let g2 = MatrixFactorization::one_by_one(&p("x"), &p("y"))
            .unwrap()
            .add_summand(&p("x^2"), &p("z"))
            .unwrap();
        assert_eq!(g2.phi(), &mat(2, &["x", "-x^2", "z", "y"]));
        assert_eq!(g2.psi(), &mat(2, &["y", "x^2", "-z", "x"]));

        // then + yz^2 gives the 4x4
        let g3 = g2.add_summand(&p("y"), &p("z^2")).unwrap();
        assert_eq!(g3.phi(), &standard_fixture_p().0);
        assert_eq!(g3.psi(), &standard_fixture_p().1);
        assert!(g3.add_summand(&Polynomial::zero(), &p("z")).is_err());
    }

    pub(crate) fn standard_fixture_m() -> (PolyMatrix, PolyMatrix) {
        (mat(2, &["x", "-z", "z", "x"]), mat(2, &["x", "z", "-z", "x"]))
    }

    pub(crate) fn standard_fixture_p() -> (PolyMatrix, PolyMatrix) {
        (
            mat(
                4,
                &[
                    "x", "-x^2", "-y", "0", //
                    "z", "y", "0", "-y", //
                    "z^2", "0", "y", "x^2", //
                    "0", "z^2", "-z", "x",
                ],
            ),
            mat(
                4,
                &[
                    "y", "x^2", "y", "0", //
                    "-z", "x", "0", "y", //
                    "-z^2", "0", "x", "-x^2", //
                    "0", "-z^2", "z", "y",
                ],
            ),
        )
    }

    pub(crate) fn standard_fixture_n() -> (PolyMatrix, PolyMatrix) {
        (
            mat(
                4,
                &[
                    "x", "-y", "-y^2", "0", //
                    "y", "z", "0", "-y^2", //
                    "z", "0", "z", "y", //
                    "0", "z", "-y", "x",
                ],
            ),
            mat(
                4,
                &[
                    "z", "y", "y^2", "0", //
                    "-y", "x", "0", "y^2", //
                    "-z", "0", "x", "-y", //
                    "0", "-z", "y", "z",
                ],
            ),
        )
    }

    #[test]
    fn standard_method_reproduces_the_golden_matrices() {
        let m_fix = MatrixFactorization::standard_method(&[
            (m("x"), m("x")),
            (m("z"), m("z")),
        ])
        .unwrap();
        assert_eq!((m_fix.phi(), m_fix.psi()), (&standard_fixture_m().0, &standard_fixture_m().1));
        assert_eq!(m_fix.target(), &p("x^2+z^2"));

        let p_fix = MatrixFactorization::standard_method(&[
            (m("x"), m("y")),
            (m("x^2"), m("z")),
            (m("y"), m("z^2")),
        ])
        .unwrap();
        assert_eq!((p_fix.phi(), p_fix.psi()), (&standard_fixture_p().0, &standard_fixture_p().1));
        assert_eq!(p_fix.target(), &p("xy+x^2z+yz^2"));

        let n_fix = MatrixFactorization::standard_method(&[
            (m("x"), m("z")),
            (m("y"), m("y")),
            (m("y^2"), m("z")),
        ])
        .unwrap();
        assert_eq!((n_fix.phi(), n_fix.psi()), (&standard_fixture_n().0, &standard_fixture_n().1));
        assert_eq!(n_fix.target(), &p("xz+y^2+y^2z"));
    }

    #[test]
    fn standard_method_size_law() {
        let vars = ['u', 'v', 'w', 'x', 'y', 'z', 't'];
        for k in 1..=7usize {
            let pairs: Vec<(Monomial, Monomial)> = (0..k)
                .map(|i| (Monomial::var(vars[i]), Monomial::var(vars[i])))
                .collect();
            let mf = MatrixFactorization::standard_method(&pairs).unwrap();
            assert_eq!(mf.size(), 1 << (k - 1));
            assert!(mf.verify().pass);
        }
        assert_eq!(MatrixFactorization::standard_method(&[]), Err(FactorError::EmptySummands));
    }

    #[test]
    fn standard_method_is_deterministic() {
        let pairs = [(m("x"), m("y")), (m("x^2"), m("z")), (m("y"), m("z^2"))];
        let a = MatrixFactorization::standard_method(&pairs).unwrap();
        let b = MatrixFactorization::standard_method(&pairs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn combine_commuting_builds_sums() {
        let x1 = MatrixFactorization::one_by_one(&p("x"), &p("y")).unwrap();
        let x2 = MatrixFactorization::one_by_one(&p("z"), &p("w")).unwrap();
        let sum = MatrixFactorization::combine_commuting(&x1, &x2).unwrap();
        assert_eq!(sum.target(), &p("xy+zw"));
        assert_eq!(sum.size(), 2);
        assert_eq!(
            sum.phi().mul(sum.psi()).unwrap(),
            PolyMatrix::scalar_matrix(&p("xy+zw"), 2)
        );
    }

    #[test]
    fn combine_commuting_matches_add_summand_for_scalar_pairs() {
        // the scalar pair (hI, gI) specializes the block construction to
        // the g,h summand step
        let x1 = MatrixFactorization::standard_method(&[(m("x"), m("x")), (m("z"), m("z"))]).unwrap();
        let scalar = MatrixFactorization::from_proven_parts(
            PolyMatrix::scalar_matrix(&p("y^3"), 2),
            PolyMatrix::scalar_matrix(&p("y"), 2),
            p("y^4"),
        );
        let combined = MatrixFactorization::combine_commuting(&x1, &scalar).unwrap();
        let added = x1.add_summand(&p("y"), &p("y^3")).unwrap();
        assert_eq!(combined, added);
    }

    #[test]
    fn combine_commuting_rejects_noncommuting_blocks() {
        let x1 = MatrixFactorization::standard_method(&[(m("x"), m("x")), (m("y"), m("y"))]).unwrap();
        let x2 = MatrixFactorization::new(
            mat(2, &["x", "0", "0", "y"]),
            mat(2, &["y", "0", "0", "x"]),
            p("xy"),
        )
        .unwrap();
        assert_eq!(
            MatrixFactorization::combine_commuting(&x1, &x2),
            Err(FactorError::CommutationFailure)
        );
    }

    #[test]
    fn direct_sum_stacks_same_target_factorizations() {
        let x = MatrixFactorization::one_by_one(&p("x"), &p("x^2")).unwrap();
        let d = MatrixFactorization::direct_sum(&x, &x).unwrap();
        assert_eq!(d.size(), 2);
        assert_eq!(d.phi(), &PolyMatrix::scalar_matrix(&p("x"), 2));

        let m_fix = MatrixFactorization::standard_method(&[(m("x"), m("x")), (m("z"), m("z"))]).unwrap();
        let mm = MatrixFactorization::direct_sum(&m_fix, &m_fix).unwrap();
        assert_eq!(mm.size(), 4);
        assert!(mm.verify().pass);

        // two distinct factorizations of the same polynomial, mixed sizes
        let a = MatrixFactorization::standard_method(&[(m("x"), m("y")), (m("z"), m("w"))]).unwrap();
        let b = MatrixFactorization::standard_method(&[(m("z"), m("w")), (m("x"), m("y"))]).unwrap();
        assert_ne!(a, b);
        let ab = MatrixFactorization::direct_sum(&a, &b).unwrap();
        assert!(ab.verify().pass);
        assert_eq!(ab.size(), 4);

        let other = MatrixFactorization::one_by_one(&p("x"), &p("y")).unwrap();
        assert_eq!(MatrixFactorization::direct_sum(&x, &other), Err(FactorError::TargetMismatch));
    }

    #[test]
    fn verify_reports_positions() {
        let (phi, psi) = intro_pair();
        let good = MatrixFactorization::new(phi.clone(), psi.clone(), p("x^2+1")).unwrap();
        assert_eq!(good.verify(), VerifyReport { pass: true, mismatch: None });

        // corrupt one entry: phi[1][1] = x+1
        let bad_phi = PolyMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (1, 1) {
                p("x+1")
            } else {
                phi.get(i, j).clone()
            }
        });
        let report = MatrixFactorization { f: p("x^2+1"), phi: bad_phi, psi }.verify();
        assert!(!report.pass);
        let mm = report.mismatch.unwrap();
        assert_eq!((mm.side, mm.row, mm.col), (ProductSide::PhiPsi, 1, 0));
        assert_eq!(mm.found, p("-1"));
    }

    #[test]
    fn standard_for_polynomial_splits_by_leading_variable() {
        let mf = MatrixFactorization::standard_for_polynomial(&p("xy+x^2z+yz^2")).unwrap();
        assert_eq!(mf.size(), 4);
        assert!(mf.verify().pass);
        assert_eq!(mf.target(), &p("xy+x^2z+yz^2"));
    }
}
