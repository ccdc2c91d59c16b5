//! Chern character of the pullback `π^*E^{[n]}` of a tautological bundle to
//! `C^n`, computed from the exact sequence
//!
//! ```text
//! 0 → pr_1^*E(-δ') → π_n^*E^{[n]} → pr̄_1^* π_{n-1}^*E^{[n-1]} → 0
//! ```
//!
//! by additivity, together with the resulting intersection numbers on the
//! symmetric product `C^(n)` and their closed forms.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chow::{symmetric_classes, ChowClass};
use crate::error::{Error, Result};
use crate::poly::{RatPoly, Rational};

/// Rank and degree of the vector bundle `E` on the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    rank: RatPoly,
    degree: RatPoly,
}

impl Default for BundleSpec {
    fn default() -> Self {
        Self::symbolic()
    }
}

impl BundleSpec {
    /// Rank `r` and degree `d` kept as symbols.
    pub fn symbolic() -> Self {
        BundleSpec {
            rank: RatPoly::r(),
            degree: RatPoly::d(),
        }
    }

    /// A numeric rank must be positive.
    pub fn new(rank: RatPoly, degree: RatPoly) -> Result<Self> {
        if let Some(c) = rank.as_constant() {
            if !c.is_positive() {
                return Err(Error::NonPositiveRank(c.to_string()));
            }
        }
        Ok(BundleSpec { rank, degree })
    }

    pub fn numeric(rank: Rational, degree: Rational) -> Result<Self> {
        Self::new(RatPoly::constant(rank), RatPoly::constant(degree))
    }

    pub fn rank(&self) -> &RatPoly {
        &self.rank
    }

    pub fn degree(&self) -> &RatPoly {
        &self.degree
    }
}

/// A class split into homogeneous parts of codimension `0..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    n: usize,
    parts: Vec<ChowClass>,
}

impl GradedClass {
    /// Splits `class` by codimension, discarding everything above `order`.
    pub fn from_class(class: &ChowClass, order: usize) -> Self {
        GradedClass {
            n: class.n(),
            parts: (0..=order).map(|k| class.codim_part(k)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The truncation order `K`.
    pub fn order(&self) -> usize {
        self.parts.len() - 1
    }

    /// Part of codimension `k`; panics if `k` exceeds the order.
    pub fn part(&self, k: usize) -> &ChowClass {
        &self.parts[k]
    }

    pub fn parts(&self) -> &[ChowClass] {
        &self.parts
    }

    pub fn total(&self) -> ChowClass {
        self.parts
            .iter()
            .skip(1)
            .fold(self.parts[0].clone(), |acc, p| {
                acc.add(p).expect("parts share the ambient")
            })
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        let order = self.order().min(other.order());
        let parts = (0..=order)
            .map(|k| self.parts[k].add(&other.parts[k]))
            .collect::<Result<_>>()?;
        Ok(GradedClass { n: self.n, parts })
    }

    /// Product truncated at the smaller of the two orders.
    pub fn multiply(&self, other: &GradedClass) -> Result<GradedClass> {
        let order = self.order().min(other.order());
        let mut parts = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = ChowClass::zero(self.n)?;
            for i in 0..=k {
                acc = acc.add(&self.parts[i].multiply(&other.parts[k - i])?)?;
            }
            parts.push(acc);
        }
        Ok(GradedClass { n: self.n, parts })
    }

    pub fn pullback_insert_first(&self) -> Result<GradedClass> {
        let parts = self
            .parts
            .iter()
            .map(ChowClass::pullback_insert_first)
            .collect::<Result<_>>()?;
        Ok(GradedClass {
            n: self.n + 1,
            parts,
        })
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn factorial_poly(n: usize) -> RatPoly {
    RatPoly::constant(Rational::from_integer(factorial(n)))
}

/// `ch(pr_1^*E) = r + d·pr_1^*[x]` on `C^n`.
pub fn ch_pulled_back(n: usize, bundle: &BundleSpec, order: usize) -> Result<GradedClass> {
    let class = ChowClass::fundamental(n)?
        .scale(bundle.rank())
        .add(&ChowClass::point(1, n)?.scale(bundle.degree()))?;
    Ok(GradedClass::from_class(&class, order))
}

/// `exp(-δ')` truncated at `order`.
pub fn exp_neg_delta_prime(n: usize, order: usize) -> Result<GradedClass> {
    let minus = symmetric_classes(n)?.delta_prime.neg();
    let mut sum = ChowClass::fundamental(n)?;
    let mut term = ChowClass::fundamental(n)?;
    for k in 1..=order {
        term = term.multiply(&minus)?;
        let inv = RatPoly::constant(Rational::new(BigInt::one(), factorial(k)));
        sum = sum.add(&term.scale(&inv))?;
    }
    Ok(GradedClass::from_class(&sum, order))
}

/// `ch(pr_1^*E(-δ'))`, the kernel term of the exact sequence.
pub fn ch_twisted_kernel(n: usize, bundle: &BundleSpec, order: usize) -> Result<GradedClass> {
    ch_pulled_back(n, bundle, order)?.multiply(&exp_neg_delta_prime(n, order)?)
}

/// Memoised levels `ch(π_m^*E^{[m]})` for `m = 1..=n`.
#[derive(Clone, Debug)]
pub struct ChernTower {
    bundle: BundleSpec,
    order: usize,
    levels: Vec<GradedClass>,
}

impl ChernTower {
    pub fn new(bundle: BundleSpec, order: usize) -> Self {
        ChernTower {
            bundle,
            order,
            levels: Vec::new(),
        }
    }

    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Computes missing levels up to `n` and returns level `n`.
    pub fn level(&mut self, n: usize) -> Result<&GradedClass> {
        if n == 0 {
            return Err(Error::AmbientTooSmall {
                op: "tautological bundle",
                n,
                min: 1,
            });
        }
        while self.levels.len() < n {
            let m = self.levels.len() + 1;
            let next = match self.levels.last() {
                None => ch_pulled_back(1, &self.bundle, self.order)?,
                Some(prev) => ch_twisted_kernel(m, &self.bundle, self.order)?
                    .add(&prev.pullback_insert_first()?)?,
            };
            self.levels.push(next);
        }
        Ok(&self.levels[n - 1])
    }

    /// `∫ c_1(E^{[n]})^2 H^{n-2}` on `C^(n)`.
    pub fn integral_c1sq(&mut self, n: usize) -> Result<RatPoly> {
        require_surface(n, "c1^2 integral")?;
        if self.order < 1 {
            let mut deeper = ChernTower::new(self.bundle.clone(), 1);
            return deeper.integral_c1sq(n);
        }
        let c1 = self.level(n)?.part(1).clone();
        let h = symmetric_classes(n)?.h.power(n as u32 - 2);
        Ok(descend(c1.power(2).multiply(&h)?.integrate(), n))
    }

    /// `∫ ch_2(E^{[n]}) H^{n-2}` on `C^(n)`.
    pub fn integral_ch2(&mut self, n: usize) -> Result<RatPoly> {
        require_surface(n, "ch2 integral")?;
        if self.order < 2 {
            let mut deeper = ChernTower::new(self.bundle.clone(), 2);
            return deeper.integral_ch2(n);
        }
        let ch2 = self.level(n)?.part(2).clone();
        let h = symmetric_classes(n)?.h.power(n as u32 - 2);
        Ok(descend(ch2.multiply(&h)?.integrate(), n))
    }

    /// `∫ Δ(E^{[n]}) H^{n-2} = -2·rank(E^{[n]})·ch_2 + c_1^2`, from the engine.
    pub fn discriminant(&mut self, n: usize) -> Result<RatPoly> {
        let ch2 = self.integral_ch2(n)?;
        let c1sq = self.integral_c1sq(n)?;
        let rank = self.bundle.rank().clone();
        Ok(RatPoly::int(-2 * n as i64) * rank * ch2 + c1sq)
    }
}

fn require_surface(n: usize, op: &'static str) -> Result<()> {
    if n < 2 {
        Err(Error::AmbientTooSmall { op, n, min: 2 })
    } else {
        Ok(())
    }
}

/// Intersection numbers on `C^n` are `n!` times those on `C^(n)`.
fn descend(value: RatPoly, n: usize) -> RatPoly {
    value.scale(&Rational::new(BigInt::one(), factorial(n)))
}

/// `ch(π_n^*E^{[n]})` up to codimension `order`.
pub fn ch_taut(n: usize, bundle: &BundleSpec, order: usize) -> Result<GradedClass> {
    ChernTower::new(bundle.clone(), order).level(n).cloned()
}

/// `c_1(π^*E^{[n]}) = d·H̃ - r·δ`.
pub fn c1_taut_closed(n: usize, bundle: &BundleSpec) -> Result<ChowClass> {
    let s = symmetric_classes(n)?;
    s.h.scale(bundle.degree())
        .sub(&s.delta.scale(bundle.rank()))
}

pub fn integral_c1sq(n: usize, bundle: &BundleSpec) -> Result<RatPoly> {
    ChernTower::new(bundle.clone(), 1).integral_c1sq(n)
}

pub fn integral_ch2(n: usize, bundle: &BundleSpec) -> Result<RatPoly> {
    ChernTower::new(bundle.clone(), 2).integral_ch2(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscriminantMode {
    /// Expand the Chern character recursion and intersect.
    Engine,
    /// Evaluate the closed-form polynomial.
    Closed,
}

/// `∫ Δ(E^{[n]}) H^{n-2}` on `C^(n)`.
pub fn discriminant(n: usize, bundle: &BundleSpec, mode: DiscriminantMode) -> Result<RatPoly> {
    match mode {
        DiscriminantMode::Engine => ChernTower::new(bundle.clone(), 2).discriminant(n),
        DiscriminantMode::Closed => {
            require_surface(n, "discriminant")?;
            Ok(closed::discriminant(n, bundle))
        }
    }
}

/// Closed-form values of the intersection numbers, written directly as
/// polynomials in `g` and the bundle's rank and degree.
pub mod closed {
    use super::*;

    fn int(k: i64) -> RatPoly {
        RatPoly::int(k)
    }

    /// `d^2 - 2dr(n-1) - r^2(g-1) + r^2 n(n-2)`
    pub fn c1sq(n: usize, bundle: &BundleSpec) -> RatPoly {
        let (r, d) = (bundle.rank(), bundle.degree());
        let n = n as i64;
        let g1 = RatPoly::g() - int(1);
        d * d - int(2 * (n - 1)) * d * r - r * r * g1 + int(n * (n - 2)) * r * r
    }

    /// `-(d + (g-1)r - (n-2)r) / 2`
    pub fn ch2(n: usize, bundle: &BundleSpec) -> RatPoly {
        let (r, d) = (bundle.rank(), bundle.degree());
        let g1 = RatPoly::g() - int(1);
        let inner = d + g1 * r - int(n as i64 - 2) * r;
        inner.scale(&Rational::new(BigInt::from(-1), BigInt::from(2)))
    }

    /// `d^2 - (n-2)dr + (n-1)(g-1)r^2`
    pub fn discriminant(n: usize, bundle: &BundleSpec) -> RatPoly {
        let (r, d) = (bundle.rank(), bundle.degree());
        let n = n as i64;
        let g1 = RatPoly::g() - int(1);
        d * d - int(n - 2) * d * r + int(n - 1) * g1 * r * r
    }

    /// `∫_{C^n} ch_2(pr_1^*E(-δ')) H̃^{n-2}
    ///   = -(n-1)!·d - (n-1)!(g-1)·r + (n-1)!(n-2)·(3/2)·r`
    pub fn kernel_ch2(n: usize, bundle: &BundleSpec) -> RatPoly {
        let (r, d) = (bundle.rank(), bundle.degree());
        let f = factorial_poly(n - 1);
        let g1 = RatPoly::g() - int(1);
        let three_halves = RatPoly::constant(Rational::new(BigInt::from(3), BigInt::from(2)));
        &f * (-d - g1 * r + int(n as i64 - 2) * three_halves * r)
    }
}

/// `n · rank(E)`: the codimension-0 part of `ch(π^*E^{[n]})` as a scalar.
pub fn rank_of_tautological(n: usize, bundle: &BundleSpec) -> RatPoly {
    RatPoly::int(n as i64) * bundle.rank()
}
