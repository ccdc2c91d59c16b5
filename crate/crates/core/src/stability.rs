//! Slope diagnostics for `E^{[n]}` in terms of `μ(E)`: the range where
//! stability is inherited, the range where `O_{C^(n)}` destabilises, the
//! interval excluded by the Bogomolov inequality, and the expected dimension
//! of the moduli space for `n = 2`.
//!
//! All comparisons are exact. Interval endpoints are numbers of the form
//! `(p ± √q)/2`, compared against rational slopes by sign analysis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, Assignment, Rational, Symbol};
use crate::taut::{closed, BundleSpec};

/// The real number `(p + sign·√q)/2` with rational `p` and integer `q ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSurd {
    p: Rational,
    negative_root: bool,
    q: BigInt,
}

impl HalfSurd {
    pub fn rational(a: Rational) -> Self {
        HalfSurd {
            p: a * rat(2),
            negative_root: false,
            q: BigInt::zero(),
        }
    }

    /// `(p - √q)/2` if `negative_root`, else `(p + √q)/2`.
    pub fn new(p: Rational, negative_root: bool, q: BigInt) -> Self {
        assert!(!q.is_negative(), "radicand must be non-negative");
        let mut s = HalfSurd {
            p,
            negative_root,
            q,
        };
        // fold perfect squares into the rational part
        let root = s.q.sqrt();
        if &root * &root == s.q {
            let root = Rational::from_integer(root);
            s.p = if s.negative_root {
                &s.p - root
            } else {
                &s.p + root
            };
            s.q = BigInt::zero();
            s.negative_root = false;
        }
        s
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.q.is_zero().then(|| &self.p / rat(2))
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let root = self.q.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.negative_root {
            (p - root) / 2.0
        } else {
            (p + root) / 2.0
        }
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, mu: &Rational) -> Ordering {
        // (p ± √q)/2  vs  μ   ⇔   ±√q  vs  t := 2μ - p
        let t = mu * rat(2) - &self.p;
        let q = Rational::from_integer(self.q.clone());
        let root_vs = |t: &Rational| -> Ordering {
            // √q vs t
            if t.is_negative() {
                Ordering::Greater
            } else {
                q.cmp(&(t * t))
            }
        };
        if self.negative_root {
            root_vs(&-t).reverse()
        } else {
            root_vs(&t)
        }
    }
}

impl fmt::Display for HalfSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(a) => write!(f, "{a}"),
            None => {
                let sign = if self.negative_root { '-' } else { '+' };
                write!(f, "({} {} sqrt({}))/2", self.p, sign, self.q)
            }
        }
    }
}

/// An interval of slopes, open or closed at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeInterval {
    pub lo: HalfSurd,
    pub hi: HalfSurd,
    pub closed: bool,
}

impl SlopeInterval {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        SlopeInterval {
            lo: HalfSurd::rational(lo),
            hi: HalfSurd::rational(hi),
            closed: false,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        SlopeInterval {
            lo: HalfSurd::rational(lo),
            hi: HalfSurd::rational(hi),
            closed: true,
        }
    }

    pub fn contains(&self, mu: &Rational) -> bool {
        let above = self.lo.cmp_rational(mu);
        let below = self.hi.cmp_rational(mu);
        if self.closed {
            above != Ordering::Greater && below != Ordering::Less
        } else {
            above == Ordering::Less && below == Ordering::Greater
        }
    }
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = if self.closed { ('[', ']') } else { ('(', ')') };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::AmbientTooSmall {
            op: "slope diagnostics",
            n: n as usize,
            min: 2,
        })
    } else {
        Ok(())
    }
}

/// `(n-2)^2 - 4(n-1)(g-1)`
pub fn bogomolov_radicand(n: u32, g: u32) -> BigInt {
    let (n, g) = (BigInt::from(n), BigInt::from(g));
    let one = BigInt::from(1);
    let m = &n - 2;
    &m * &m - BigInt::from(4) * (&n - &one) * (&g - &one)
}

/// The open interval of slopes on which `μ^2 - (n-2)μ + (n-1)(g-1) < 0`, so
/// that the Bogomolov inequality fails for `E^{[n]}`. `None` when it is empty.
pub fn bogomolov_gap(n: u32, g: u32) -> Result<Option<SlopeInterval>> {
    check_n(n)?;
    let q = bogomolov_radicand(n, g);
    if !q.is_positive() {
        return Ok(None);
    }
    let p = rat(n as i64 - 2);
    Ok(Some(SlopeInterval {
        lo: HalfSurd::new(p.clone(), true, q.clone()),
        hi: HalfSurd::new(p, false, q),
        closed: false,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    KnownStable,
    KnownSemistableBoundary,
    SectionUnstable,
    BogomolovUnstable,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::KnownStable => "known-stable",
            Verdict::KnownSemistableBoundary => "known-semistable-boundary",
            Verdict::SectionUnstable => "section-unstable",
            Verdict::BogomolovUnstable => "bogomolov-unstable",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `μ ∉ [-1, n-1]`: stability of `E` is inherited.
    InheritedStability,
    /// `μ ∈ {-1, n-1}`: only semistability is inherited.
    SemistableBoundary,
    /// `μ ∈ (g-1, n-1)`: `O_{C^(n)}` is a destabilising subbundle.
    DestabilisingSection,
    /// `μ` lies in the Bogomolov gap.
    Bogomolov,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::InheritedStability => "inherited-stability",
            Criterion::SemistableBoundary => "semistable-boundary",
            Criterion::DestabilisingSection => "destabilising-section",
            Criterion::Bogomolov => "bogomolov",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub criterion: Criterion,
    pub interval: SlopeInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

/// Classifies `E^{[n]}` for a (semi)stable `E` of slope `μ` on a curve of
/// genus `g`.
///
/// The checks run in order: outside `[-1, n-1]` the bundle is known stable;
/// at the endpoints it is known semistable; inside `(g-1, n-1)` it has a
/// destabilising section; inside the Bogomolov gap it is unstable. A slope
/// caught by both instability criteria reports both witnesses.
pub fn classify_slope(n: u32, g: u32, mu: &Rational) -> Result<StabilityVerdict> {
    check_n(n)?;
    let top = rat(n as i64 - 1);
    let range = SlopeInterval::closed(rat(-1), top.clone());
    if !range.contains(mu) {
        return Ok(StabilityVerdict {
            verdict: Verdict::KnownStable,
            witnesses: vec![Witness {
                criterion: Criterion::InheritedStability,
                interval: range,
            }],
        });
    }
    if *mu == rat(-1) || *mu == top {
        return Ok(StabilityVerdict {
            verdict: Verdict::KnownSemistableBoundary,
            witnesses: vec![Witness {
                criterion: Criterion::SemistableBoundary,
                interval: range,
            }],
        });
    }

    let mut witnesses = Vec::new();
    let section = SlopeInterval::open(rat(g as i64 - 1), top);
    if section.contains(mu) {
        witnesses.push(Witness {
            criterion: Criterion::DestabilisingSection,
            interval: section,
        });
    }
    if let Some(gap) = bogomolov_gap(n, g)? {
        if gap.contains(mu) {
            witnesses.push(Witness {
                criterion: Criterion::Bogomolov,
                interval: gap,
            });
        }
    }
    let verdict = match witnesses.first().map(|w| w.criterion) {
        Some(Criterion::DestabilisingSection) => Verdict::SectionUnstable,
        Some(_) => Verdict::BogomolovUnstable,
        None => Verdict::Unknown,
    };
    Ok(StabilityVerdict { verdict, witnesses })
}

/// [`classify_slope`] with `μ = d/r`.
pub fn classify_bundle(
    n: u32,
    g: u32,
    degree: &Rational,
    rank: &Rational,
) -> Result<StabilityVerdict> {
    if !rank.is_positive() {
        return Err(Error::NonPositiveRank(rank.to_string()));
    }
    classify_slope(n, g, &(degree / rank))
}

/// Expected dimension of the moduli space of stable sheaves with the
/// invariants of `E^{[2]}`, together with `χ(O_{C^(2)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliDimension {
    pub expected_dim: Rational,
    pub chi: Rational,
}

/// `χ(O_{C^(2)}) = (g^2 - 3g + 2)/2`
pub fn chi_structure_sheaf(g: &Rational) -> Rational {
    (g * g - g * rat(3) + rat(2)) / rat(2)
}

/// `Δ(E^{[2]}) - (rank(E^{[2]})^2 - 1)·χ(O_{C^(2)})`.
pub fn moduli_expected_dim(
    g: &Rational,
    rank: &Rational,
    degree: &Rational,
) -> Result<ModuliDimension> {
    if *rank < rat(1) {
        return Err(Error::NonPositiveRank(rank.to_string()));
    }
    let bundle = BundleSpec::numeric(rank.clone(), degree.clone())?;
    let disc =
        closed::discriminant(2, &bundle).eval(&Assignment::new().with(Symbol::G, g.clone()))?;
    let taut_rank = rank * rat(2);
    let rank_sq = &taut_rank * &taut_rank;
    let chi = chi_structure_sheaf(g);
    Ok(ModuliDimension {
        expected_dim: disc - (rank_sq - rat(1)) * &chi,
        chi,
    })
}
