//! Sparse multivariate polynomial arithmetic over the rationals.
//!
//! Variables are single lowercase letters ordered alphabetically
//! (`x < y < z` in particular). Coefficients are arbitrary-precision
//! rationals, so every identity checked elsewhere in the crate holds
//! exactly. Values are canonical: no zero coefficient is ever stored and
//! two polynomials are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Error raised by monomial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The zero monomial has no defined split into two factors.
    ZeroSplit,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroSplit => write!(f, "the zero monomial cannot be split"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector of a monomial: variable name mapped to a positive exponent.
///
/// A variable with exponent zero is absent from the map, so the empty map is
/// the exponent vector of a constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponents(BTreeMap<char, u32>);

impl Exponents {
    /// Exponent vector of a constant.
    pub fn constant() -> Self {
        Exponents(BTreeMap::new())
    }

    /// Exponent vector of a single variable.
    pub fn var(v: char) -> Self {
        Self::from_pairs([(v, 1)])
    }

    /// Builds an exponent vector, dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (char, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            debug_assert!(v.is_ascii_lowercase(), "variable must be a lowercase letter");
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        map.retain(|_, e| *e > 0);
        Exponents(map)
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent_of(&self, v: char) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = char> + '_ {
        self.0.keys().copied()
    }

    /// Product of monomials: exponents add.
    pub fn mul(&self, other: &Exponents) -> Exponents {
        let mut map = self.0.clone();
        for (v, e) in &other.0 {
            *map.entry(*v).or_insert(0) += e;
        }
        Exponents(map)
    }

    pub fn pow(&self, n: u32) -> Exponents {
        if n == 0 {
            return Exponents::constant();
        }
        Exponents(self.0.iter().map(|(v, e)| (*v, e * n)).collect())
    }

    /// Graded-lexicographic comparison: total degree first, then variable by
    /// variable in alphabetical order with the higher exponent winning.
    pub fn graded_lex_cmp(&self, other: &Exponents) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut vars: Vec<char> = self.vars().chain(other.vars()).collect();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            match self.exponent_of(v).cmp(&other.exponent_of(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in &self.0 {
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A single monomial: a rational coefficient times a product of variable
/// powers. The zero monomial is canonical: coefficient zero, empty exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    coeff: BigRational,
    exponents: Exponents,
}

impl Monomial {
    pub fn new(coeff: BigRational, exponents: Exponents) -> Self {
        if coeff.is_zero() {
            Monomial { coeff, exponents: Exponents::constant() }
        } else {
            Monomial { coeff, exponents }
        }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), Exponents::constant())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(c, Exponents::constant())
    }

    pub fn var(v: char) -> Self {
        Self::new(BigRational::one(), Exponents::var(v))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exponents(&self) -> &Exponents {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.total_degree()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &other.coeff, self.exponents.mul(&other.exponents))
    }

    pub fn neg(&self) -> Monomial {
        Monomial::new(-&self.coeff, self.exponents.clone())
    }

    /// Splits a nonzero monomial into two factors `(g, h)` with `g * h`
    /// equal to the monomial. The coefficient and the alphabetically first
    /// variable, raised to its full exponent, go to `g`; the remaining
    /// variables go to `h`. A constant splits as `(c, 1)`.
    pub fn leading_split(&self) -> Result<(Monomial, Monomial), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroSplit);
        }
        match self.exponents.0.iter().next() {
            None => Ok((self.clone(), Monomial::one())),
            Some((&v, &e)) => {
                let g = Monomial::new(self.coeff.clone(), Exponents::from_pairs([(v, e)]));
                let rest = self.exponents.0.iter().filter(|(w, _)| **w != v).map(|(w, e)| (*w, *e));
                let h = Monomial::new(BigRational::one(), Exponents::from_pairs(rest));
                Ok((g, h))
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let neg = self.coeff.is_negative();
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{}", term_body(&self.coeff.abs(), &self.exponents))
    }
}

/// Renders `|coeff| * exponents` without a sign, omitting a unit coefficient
/// next to variables.
fn term_body(abs_coeff: &BigRational, exps: &Exponents) -> String {
    if exps.is_constant() {
        abs_coeff.to_string()
    } else if abs_coeff.is_one() {
        exps.to_string()
    } else {
        format!("{abs_coeff}{exps}")
    }
}

/// A multivariate polynomial in canonical form: a map from exponent vector
/// to nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Monomial::constant(c).into()
    }

    pub fn int(n: i64) -> Self {
        Monomial::int(n).into()
    }

    pub fn var(v: char) -> Self {
        Monomial::var(v).into()
    }

    pub fn from_monomials<'a, I: IntoIterator<Item = &'a Monomial>>(monomials: I) -> Self {
        let mut p = Polynomial::zero();
        for m in monomials {
            p.add_term(m.exponents().clone(), m.coeff().clone());
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomial_count() == 1
            && self.terms.keys().next().unwrap().is_constant()
            && self.terms.values().next().unwrap().is_one()
    }

    /// Number of stored terms.
    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Monomials in descending graded-lexicographic order, the same order
    /// used for rendering.
    pub fn monomials_desc(&self) -> Vec<Monomial> {
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.graded_lex_cmp(a));
        keys.into_iter()
            .map(|e| Monomial::new(self.terms[e].clone(), e.clone()))
            .collect()
    }

    /// The polynomial as a single monomial, if it has at most one term.
    pub fn as_monomial(&self) -> Option<Monomial> {
        match self.terms.len() {
            0 => Some(Monomial::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                Some(Monomial::new(c.clone(), e.clone()))
            }
            _ => None,
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m.exponents().clone(), m.coeff().clone());
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: Self) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: Self) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: Self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: terms in descending graded-lex order, `^` for
    /// powers, `*` omitted, explicit sign per term, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.monomials_desc().iter().enumerate() {
            let neg = m.coeff().is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", term_body(&m.coeff().abs(), m.exponents()))?;
        }
        Ok(())
    }
}
