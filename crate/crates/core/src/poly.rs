//! Exact sparse polynomials over the rationals in the three parameters
//! `g` (genus), `d` (degree) and `r` (rank).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every coefficient in the crate.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `num / den`. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The three parameters a polynomial may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    G,
    D,
    R,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::G, Symbol::D, Symbol::R];

    fn index(self) -> usize {
        match self {
            Symbol::G => 0,
            Symbol::D => 1,
            Symbol::R => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::G => "g",
            Symbol::D => "d",
            Symbol::R => "r",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        match name {
            "g" => Some(Symbol::G),
            "d" => Some(Symbol::D),
            "r" => Some(Symbol::R),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(g, d, r)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponents
/// of `g`, `d`, `r` in turn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(g: u32, d: u32, r: u32) -> Self {
        Monomial([g, d, r])
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0[s.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values for some or all of the symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment([Option<Rational>; 3]);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, value: Rational) -> Self {
        self.0[s.index()] = Some(value);
        self
    }

    pub fn set(&mut self, s: Symbol, value: Option<Rational>) {
        self.0[s.index()] = value;
    }

    pub fn get(&self, s: Symbol) -> Option<&Rational> {
        self.0[s.index()].as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }
}

/// Sparse polynomial in `g`, `d`, `r` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RatPoly { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut e = [0; 3];
        e[s.index()] = 1;
        Self::monomial(Rational::one(), Monomial(e))
    }

    pub fn g() -> Self {
        Self::symbol(Symbol::G)
    }

    pub fn d() -> Self {
        Self::symbol(Symbol::D)
    }

    pub fn r() -> Self {
        Self::symbol(Symbol::R)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial, `None` if any symbol occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|&s| self.terms.keys().any(|m| m.exponent(s) > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes every symbol; fails if a symbol in `self` has no value.
    pub fn eval(&self, values: &Assignment) -> Result<Rational> {
        for s in self.symbols() {
            if values.get(s).is_none() {
                return Err(Error::MissingSymbol(s));
            }
        }
        match self.substitute(values).as_constant() {
            Some(v) => Ok(v),
            None => unreachable!("all symbols were assigned"),
        }
    }

    /// Substitutes the symbols that have a value and keeps the rest.
    pub fn substitute(&self, values: &Assignment) -> RatPoly {
        let mut out = RatPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = [0u32; 3];
            for s in Symbol::ALL {
                let e = m.exponent(s);
                match values.get(s) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest[s.index()] = e,
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }
}

impl From<Rational> for RatPoly {
    fn from(c: Rational) -> Self {
        RatPoly::constant(c)
    }
}

impl From<i64> for RatPoly {
    fn from(c: i64) -> Self {
        RatPoly::int(c)
    }
}

impl Add<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        let mut out = RatPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl AddAssign<&RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: &RatPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: &RatPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $f(self, rhs: RatPoly) -> RatPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $f(self, rhs: &RatPoly) -> RatPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $f(self, rhs: RatPoly) -> RatPoly {
                self.$f(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl AddAssign<RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: RatPoly) {
        *self += &rhs;
    }
}

impl SubAssign<RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: RatPoly) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for RatPoly {
    fn sum<I: Iterator<Item = RatPoly>>(iter: I) -> RatPoly {
        iter.fold(RatPoly::zero(), |acc, p| acc + p)
    }
}

// Rendering groups terms by their (d, r) monomial, highest first, and shows
// the coefficient of each group as a polynomial in g, e.g.
// `d^2 - 2*d*r - (g - 1)*r^2`.

fn power_str(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Signed pieces `(negative, body)` of a polynomial in g alone, highest power first.
fn genus_pieces(terms: &[(u32, Rational)]) -> Vec<(bool, String)> {
    terms
        .iter()
        .map(|(k, c)| {
            let mag = c.abs();
            let g = power_str("g", *k);
            let body = match (mag.is_one(), g) {
                (true, Some(g)) => g,
                (false, Some(g)) => format!("{mag}*{g}"),
                (_, None) => mag.to_string(),
            };
            (c.is_negative(), body)
        })
        .collect()
}

fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // (d, r) monomial -> coefficients in g, keyed by g-exponent.
        let mut groups: BTreeMap<Monomial, BTreeMap<u32, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = Monomial::new(0, m.exponent(Symbol::D), m.exponent(Symbol::R));
            groups
                .entry(key)
                .or_default()
                .insert(m.exponent(Symbol::G), c.clone());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (key, gcoeffs) in groups.iter().rev() {
            let gterms: Vec<(u32, Rational)> =
                gcoeffs.iter().rev().map(|(k, c)| (*k, c.clone())).collect();
            let dr: Vec<String> = [
                power_str("d", key.exponent(Symbol::D)),
                power_str("r", key.exponent(Symbol::R)),
            ]
            .into_iter()
            .flatten()
            .collect();
            let dr = dr.join("*");
            if dr.is_empty() {
                pieces.extend(genus_pieces(&gterms));
            } else if gterms.len() == 1 {
                let (k, c) = &gterms[0];
                let mut factors = Vec::new();
                if !c.abs().is_one() {
                    factors.push(c.abs().to_string());
                }
                factors.extend(power_str("g", *k));
                factors.push(dr);
                pieces.push((c.is_negative(), factors.join("*")));
            } else {
                let neg = gterms[0].1.is_negative();
                let inner: Vec<(u32, Rational)> = if neg {
                    gterms.iter().map(|(k, c)| (*k, -c)).collect()
                } else {
                    gterms
                };
                let inner = join_signed(&genus_pieces(&inner));
                pieces.push((neg, format!("({inner})*{dr}")));
            }
        }
        f.write_str(&join_signed(&pieces))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> RatPoly {
        RatPoly::g()
    }
    fn d() -> RatPoly {
        RatPoly::d()
    }
    fn r() -> RatPoly {
        RatPoly::r()
    }

    #[test]
    fn add_cancels_to_symbol() {
        assert_eq!(g() - RatPoly::one() + RatPoly::one(), g());
    }

    #[test]
    fn distributes_over_rank_square() {
        let lhs = (g() - RatPoly::one()) * r().pow(2);
        let mut expected = RatPoly::monomial(rat(1), Monomial::new(1, 0, 2));
        expected -= RatPoly::monomial(rat(1), Monomial::new(0, 0, 2));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn product_of_linear_forms() {
        // (d - 2r)(d + r) = d^2 - dr - 2r^2, expanded by hand
        let p = (d() - RatPoly::int(2) * r()) * (d() + r());
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&Monomial::new(0, 2, 0)), rat(1));
        assert_eq!(p.coefficient(&Monomial::new(0, 1, 1)), rat(-1));
        assert_eq!(p.coefficient(&Monomial::new(0, 0, 2)), rat(-2));
        assert_eq!(p.to_string(), "d^2 - d*r - 2*r^2");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = g() - g();
        assert!(p.is_zero());
        assert_eq!(p, RatPoly::zero());
        assert_eq!(
            RatPoly::monomial(rat(0), Monomial::new(1, 1, 1)),
            RatPoly::zero()
        );
    }

    #[test]
    fn eval_examples() {
        let p = d().pow(2) + (g() - RatPoly::one()) * r().pow(2);
        let a = Assignment::new()
            .with(Symbol::G, rat(2))
            .with(Symbol::D, rat(0))
            .with(Symbol::R, rat(1));
        assert_eq!(p.eval(&a).unwrap(), rat(1));
        assert_eq!(RatPoly::int(7).eval(&Assignment::new()).unwrap(), rat(7));
        let gdr = g() * d() * r();
        let a = Assignment::new()
            .with(Symbol::G, rat(3))
            .with(Symbol::D, rat(4))
            .with(Symbol::R, rat(5));
        assert_eq!(gdr.eval(&a).unwrap(), rat(60));
    }

    #[test]
    fn eval_reports_missing_symbol() {
        let p = g() * d();
        let a = Assignment::new().with(Symbol::G, rat(1));
        assert_eq!(p.eval(&a), Err(Error::MissingSymbol(Symbol::D)));
    }

    #[test]
    fn partial_substitution_keeps_free_symbols() {
        let p = g() * d() + r();
        let a = Assignment::new().with(Symbol::G, rat(3));
        assert_eq!(p.substitute(&a), RatPoly::int(3) * d() + r());
    }

    #[test]
    fn rendering() {
        let p = d().pow(2) - RatPoly::int(2) * d() * r() - (g() - RatPoly::one()) * r().pow(2);
        assert_eq!(p.to_string(), "d^2 - 2*d*r - (g - 1)*r^2");
        assert_eq!(
            (d().pow(2) + (g() - RatPoly::one()) * r().pow(2)).to_string(),
            "d^2 + (g - 1)*r^2"
        );
        assert_eq!(
            (RatPoly::int(24) - RatPoly::int(6) * g()).to_string(),
            "-6*g + 24"
        );
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(RatPoly::constant(ratio(-1, 2)).to_string(), "-1/2");
        let half = RatPoly::constant(ratio(-1, 2));
        assert_eq!(
            (half.clone() * d() + half * (g() - RatPoly::one()) * r()).to_string(),
            "-1/2*d - (1/2*g - 1/2)*r"
        );
        assert_eq!((g() * r() - r()).to_string(), "(g - 1)*r");
        assert_eq!((-(g() * r())).to_string(), "-g*r");
    }

    #[test]
    fn monomial_order_is_graded() {
        assert!(Monomial::new(0, 0, 2) > Monomial::new(1, 0, 0));
        assert!(Monomial::new(1, 0, 0) > Monomial::new(0, 1, 0));
        assert!(Monomial::new(0, 1, 0) > Monomial::ONE);
        let p = g() + d() + RatPoly::one();
        let order: Vec<Monomial> = p.terms().map(|(m, _)| *m).collect();
        assert_eq!(
            order,
            vec![
                Monomial::new(1, 0, 0),
                Monomial::new(0, 1, 0),
                Monomial::ONE
            ]
        );
    }
}
