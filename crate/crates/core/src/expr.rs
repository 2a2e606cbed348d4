//! Parser and AST for polynomials written in summand-reduced shape.
//!
//! The input language:
//!
//! ```text
//! expr   := ws ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*')? factor)*
//! factor := INT | RAT | VAR power? | '(' expr ')' power?
//! power  := '^' INT
//! VAR    := [a-z]     INT := [0-9]+     RAT := INT '/' INT
//! ```
//!
//! Whitespace is ignored and multiplication may be written implicitly
//! (`xy^2z`, `2(x+y)`). An optional sign is accepted on the first term so
//! that canonical renderings re-parse.
//!
//! A top-level term containing a parenthesized factor becomes a
//! [`Term::Product`]; its factors are kept in written order and are never
//! multiplied out. Within a term, a maximal run of unparenthesized factors
//! collapses into a single monomial factor, so `2x(x+y)y` has the three
//! factors `2x`, `x+y`, `y`. A term without parentheses is a single
//! [`Term::Monomial`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial};

/// Syntax error with the character offset it occurred at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// One top-level summand of a parsed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// A bare monomial summand.
    Monomial(Monomial),
    /// A product of factors, each a nonzero sum of monomials, in written
    /// order. A leading minus sign is folded into the first factor.
    Product(Vec<Polynomial>),
}

/// A polynomial kept in its written summand-reduced shape: an ordered list
/// of monomial summands and product-of-sums summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandForm {
    terms: Vec<Term>,
}

impl SummandForm {
    pub fn new(terms: Vec<Term>) -> Self {
        SummandForm { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of monomial summands (the `s` of the size formulas).
    pub fn monomial_term_count(&self) -> usize {
        self.terms.iter().filter(|t| matches!(t, Term::Monomial(_))).count()
    }

    pub fn product_terms(&self) -> impl Iterator<Item = &Vec<Polynomial>> {
        self.terms.iter().filter_map(|t| match t {
            Term::Product(fs) => Some(fs),
            Term::Monomial(_) => None,
        })
    }

    /// Full ring expansion.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for term in &self.terms {
            match term {
                Term::Monomial(m) => acc = &acc + &m.clone().into(),
                Term::Product(fs) => {
                    let prod = fs.iter().fold(Polynomial::one(), |p, f| &p * f);
                    acc = &acc + &prod;
                }
            }
        }
        acc
    }
}

impl fmt::Display for SummandForm {
    /// Structure-preserving rendering: monomial terms print canonically,
    /// every product factor is parenthesized so the output re-parses to the
    /// same AST.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            match term {
                Term::Monomial(m) => {
                    if i == 0 {
                        write!(f, "{m}")?;
                    } else if m.coeff().is_negative() {
                        write!(f, " - {}", m.neg())?;
                    } else {
                        write!(f, " + {m}")?;
                    }
                }
                Term::Product(fs) => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    for factor in fs {
                        write!(f, "({factor})")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses an expression into its summand-reduced shape.
pub fn parse(text: &str) -> Result<SummandForm, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty input"));
    }
    let sf = p.parse_expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected character"));
    }
    Ok(sf)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

enum Atom {
    Mono(Monomial),
    Paren(Polynomial),
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.to_string() }
    }

    fn parse_expr(&mut self) -> Result<SummandForm, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        terms.push(self.parse_term(negate)?);
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                Some('+') => {
                    self.bump();
                    terms.push(self.parse_term(false)?);
                }
                Some('-') => {
                    self.bump();
                    terms.push(self.parse_term(true)?);
                }
                Some(_) => return Err(self.err("expected '+' or '-' between terms")),
            }
        }
        Ok(SummandForm { terms })
    }

    fn parse_term(&mut self, negate: bool) -> Result<Term, ParseError> {
        let start = self.pos;
        let mut atoms = vec![self.parse_factor()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    atoms.push(self.parse_factor()?);
                }
                Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '(' => {
                    atoms.push(self.parse_factor()?);
                }
                _ => break,
            }
        }

        if atoms.iter().all(|a| matches!(a, Atom::Mono(_))) {
            let mut m = Monomial::one();
            for a in &atoms {
                if let Atom::Mono(x) = a {
                    m = m.mul(x);
                }
            }
            if negate {
                m = m.neg();
            }
            return Ok(Term::Monomial(m));
        }

        let mut factors: Vec<Polynomial> = Vec::new();
        let mut run: Option<Monomial> = None;
        for a in atoms {
            match a {
                Atom::Mono(x) => {
                    run = Some(match run.take() {
                        None => x,
                        Some(r) => r.mul(&x),
                    });
                }
                Atom::Paren(poly) => {
                    if let Some(r) = run.take() {
                        factors.push(r.into());
                    }
                    factors.push(poly);
                }
            }
        }
        if let Some(r) = run.take() {
            factors.push(r.into());
        }
        if negate {
            factors[0] = -&factors[0];
        }
        if factors.iter().any(|f| f.is_zero()) {
            return Err(ParseError {
                position: start,
                message: "product term has a zero factor".to_string(),
            });
        }
        Ok(Term::Product(factors))
    }

    fn parse_factor(&mut self) -> Result<Atom, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numerator = self.parse_integer()?;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.bump();
                    self.skip_ws();
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.err("expected integer denominator after '/'"));
                    }
                    let denominator = self.parse_integer()?;
                    if denominator.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Atom::Mono(Monomial::constant(BigRational::new(numerator, denominator))))
                } else {
                    Ok(Atom::Mono(Monomial::constant(BigRational::from_integer(numerator))))
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.bump();
                let e = self.parse_optional_power()?;
                Ok(Atom::Mono(Monomial::new(
                    BigRational::one(),
                    crate::poly::Exponents::from_pairs([(c, e)]),
                )))
            }
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                let e = self.parse_optional_power()?;
                let value = inner.expand().pow(e);
                if value.is_zero() {
                    return Err(self.err("parenthesized factor expands to zero"));
                }
                Ok(Atom::Paren(value))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn parse_optional_power(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err("expected integer exponent after '^'"));
        }
        let n = self.parse_integer()?;
        u32::try_from(n).map_err(|_| self.err("exponent too large"))
    }

    fn parse_integer(&mut self) -> Result<BigInt, ParseError> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        digits
            .parse::<BigInt>()
            .map_err(|_| self.err("invalid integer"))
    }
}

/// How a summand form relates to the structural conditions for the improved
/// algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Not in a shape the improved algorithm profits from.
    Plain,
    /// Has a two-factor product with at least six expanded monomials, and all
    /// product terms have at most two factors.
    SimpleSummandReduced,
    /// Satisfies the general structural conditions.
    SummandReduced,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Plain => "plain",
            Classification::SimpleSummandReduced => "simple-summand-reduced",
            Classification::SummandReduced => "summand-reduced",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LintKind {
    /// A two-factor product expands to two terms (an `a^n +- b^n` shape).
    TwoTermPowerForm,
    /// A two-factor product expands to a perfect square `a^2 +- 2ab + b^2`.
    PerfectSquare,
    /// Expansion has no more monomials than the factored accounting, so the
    /// factored form cannot win.
    ExpansionNotLarger,
}

/// Advisory finding attached to a product term; never a hard rejection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lint {
    pub term_index: usize,
    pub kind: LintKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub class: Classification,
    pub lints: Vec<Lint>,
}

/// Classifies a summand form against the structural conditions and collects
/// advisory lints. Classification is total and never fails.
pub fn classify(sf: &SummandForm) -> ClassifyReport {
    let s = sf.monomial_term_count();
    let products: Vec<&Vec<Polynomial>> = sf.product_terms().collect();

    let enough_products = if s == 0 { products.len() >= 2 } else { !products.is_empty() };
    let expansions: Vec<(Polynomial, usize)> = products
        .iter()
        .map(|fs| {
            let expanded = fs.iter().fold(Polynomial::one(), |p, f| &p * f);
            let factored: usize = fs.iter().map(|f| f.monomial_count()).sum();
            (expanded, factored)
        })
        .collect();
    let every_product_grows = expansions
        .iter()
        .all(|(expanded, factored)| expanded.monomial_count() > *factored);
    let some_multi_factor = products.iter().any(|fs| fs.len() >= 2);

    let general = enough_products && every_product_grows && some_multi_factor;
    let all_at_most_two = products.iter().all(|fs| fs.len() <= 2);
    let some_big_pair = products
        .iter()
        .any(|fs| fs.len() == 2 && fs[0].monomial_count() * fs[1].monomial_count() >= 6);
    let simple = general && all_at_most_two && some_big_pair && sf.terms.len() >= 2;

    let class = if simple {
        Classification::SimpleSummandReduced
    } else if general {
        Classification::SummandReduced
    } else {
        Classification::Plain
    };

    let mut lints = Vec::new();
    let mut product_idx = 0;
    for (term_index, term) in sf.terms.iter().enumerate() {
        let Term::Product(fs) = term else { continue };
        let (expanded, factored) = &expansions[product_idx];
        product_idx += 1;
        if fs.len() == 2 {
            if expanded.monomial_count() == 2 && two_term_power_form(expanded) {
                lints.push(Lint {
                    term_index,
                    kind: LintKind::TwoTermPowerForm,
                    message: format!(
                        "product expands to the two-term form {expanded}; writing it expanded gives smaller factors"
                    ),
                });
            } else if expanded.monomial_count() == 3 && perfect_square_form(expanded) {
                lints.push(Lint {
                    term_index,
                    kind: LintKind::PerfectSquare,
                    message: format!(
                        "product expands to the perfect square {expanded}; writing it expanded gives smaller factors"
                    ),
                });
            }
        }
        if expanded.monomial_count() <= *factored {
            lints.push(Lint {
                term_index,
                kind: LintKind::ExpansionNotLarger,
                message: format!(
                    "expansion has {} monomials but the factored form accounts for {}; the factored form cannot win",
                    expanded.monomial_count(),
                    factored
                ),
            });
        }
    }

    ClassifyReport { class, lints }
}

/// `a^n +- b^n` heuristic: exactly two terms, both with coefficient +-1.
fn two_term_power_form(p: &Polynomial) -> bool {
    p.monomial_count() == 2 && p.terms().all(|(_, c)| c.abs().is_one())
}

/// `a^2 +- 2ab + b^2` heuristic: three terms, two of which are coefficient-1
/// squares `A` and `C`, with the remaining term `B` satisfying `B^2 = 4AC`.
fn perfect_square_form(p: &Polynomial) -> bool {
    let ms = p.monomials_desc();
    if ms.len() != 3 {
        return false;
    }
    for middle in 0..3 {
        let (b, rest): (&Monomial, Vec<&Monomial>) = (
            &ms[middle],
            (0..3).filter(|&i| i != middle).map(|i| &ms[i]).collect(),
        );
        let (a, c) = (rest[0], rest[1]);
        let squares = |m: &Monomial| {
            m.coeff().is_one()
                && m.exponents().vars().all(|v| m.exponents().exponent_of(v).is_multiple_of(2))
        };
        if !squares(a) || !squares(c) {
            continue;
        }
        let b2 = b.mul(b);
        let four_ac = a.mul(c).mul(&Monomial::int(4));
        if b2 == four_ac {
            return true;
        }
    }
    false
}

/// Predicted factorization sizes for a summand form.
///
/// `standard_size` is `2^(N-1)` where `N` counts the monomials of the full
/// expansion; `improved_size` is `2^(sum of all p_ji + s - 1)` where `p_ji`
/// is the monomial count of factor `i` of product term `j` and `s` is the
/// number of monomial terms. `ratio` is their exact quotient when the
/// no-cancellation accounting holds (then it equals two to the power
/// `sum_j (prod_i p_ji - sum_i p_ji)`), and 0 when the quotient is not a
/// natural number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizePrediction {
    pub standard_size: u128,
    pub improved_size: u128,
    pub ratio: u128,
    pub cancellation: bool,
    pub expanded_monomials: usize,
    pub factored_monomials: usize,
}

fn pow2(e: usize) -> u128 {
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// Computes both size predictions. Meaningful for nonzero polynomials; the
/// improved size is computed from the written shape whether or not the form
/// classifies as summand-reduced.
pub fn predict_sizes(sf: &SummandForm) -> SizePrediction {
    let s = sf.monomial_term_count();
    let expanded = sf.expand().monomial_count();
    let factored: usize = s
        + sf.product_terms()
            .map(|fs| fs.iter().map(|f| f.monomial_count()).product::<usize>())
            .sum::<usize>();
    let improved_exp: usize = s
        + sf.product_terms()
            .map(|fs| fs.iter().map(|f| f.monomial_count()).sum::<usize>())
            .sum::<usize>();

    let standard_size = if expanded == 0 { 0 } else { pow2(expanded - 1) };
    let improved_size = if improved_exp == 0 { 0 } else { pow2(improved_exp - 1) };
    let cancellation = expanded != factored;
    let ratio = if improved_size > 0
        && standard_size >= improved_size
        && standard_size.is_multiple_of(improved_size)
    {
        standard_size / improved_size
    } else {
        0
    };
    SizePrediction {
        standard_size,
        improved_size,
        ratio,
        cancellation,
        expanded_monomials: expanded,
        factored_monomials: factored,
    }
}
