//! Re-derives every identity of the theory for `n = 2..=n_max` with
//! symbolic `g`, `d`, `r`, and collects one row per identity and `n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::chow::{configurations_of_codim, symmetric_classes, ChowClass, MAX_AMBIENT};
use crate::error::{Error, Result};
use crate::poly::{rat, Assignment, RatPoly, Rational, Symbol};
use crate::stability::{bogomolov_gap, classify_slope, Criterion};
use crate::taut::{closed, BundleSpec, ChernTower};

/// Largest genus swept by the slope-interval checks.
pub const GENUS_SWEEP: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub family: &'static str,
    pub n: usize,
    pub passed: bool,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub n_max: usize,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn family(&self, name: &str) -> impl Iterator<Item = &Row> {
        let name = name.to_string();
        self.rows.iter().filter(move |r| r.family == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.family.len()).max().unwrap_or(6);
        for r in &self.rows {
            let status = if r.passed { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{status}  {:<width$}  n={:<3} {}",
                r.family, r.n, r.computed
            )?;
            if !r.passed {
                writeln!(f, "      expected {}", r.expected)?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.rows.len(), failed)
    }
}

fn fact(n: usize) -> RatPoly {
    RatPoly::constant(Rational::from_integer(
        (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k)),
    ))
}

fn int(k: i64) -> RatPoly {
    RatPoly::int(k)
}

fn poly_row(family: &'static str, n: usize, computed: RatPoly, expected: RatPoly) -> Row {
    Row {
        family,
        n,
        passed: computed == expected,
        computed: computed.to_string(),
        expected: expected.to_string(),
    }
}

fn class_row(family: &'static str, n: usize, computed: &ChowClass, expected: &ChowClass) -> Row {
    Row {
        family,
        n,
        passed: computed == expected,
        computed: computed.to_string(),
        expected: expected.to_string(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// `H̃^k = k!·Σ_{|I|=k} η_I` for all `k = 1..=n`.
fn power_of_h_row(n: usize) -> Result<Row> {
    let h = symmetric_classes(n)?.h;
    let mut power = ChowClass::fundamental(n)?;
    let mut bad = None;
    let mut last = (power.clone(), power.clone());
    for k in 1..=n {
        power = power.multiply(&h)?;
        let mut sum = ChowClass::zero(n)?;
        for set in subsets(n, k) {
            sum = sum.add(&ChowClass::eta(&set, n)?)?;
        }
        let expected = sum.scale(&fact(k));
        if power != expected && bad.is_none() {
            bad = Some(k);
        }
        last = (power.clone(), expected);
    }
    let mut row = class_row("power-of-H", n, &last.0, &last.1);
    if let Some(k) = bad {
        row.passed = false;
        row.computed = format!("mismatch at k = {k}");
    }
    Ok(row)
}

fn intersection_rows(n: usize) -> Result<Vec<Row>> {
    let s = symmetric_classes(n)?;
    let h = |k: usize| s.h.power(k as u32);
    let g1 = RatPoly::g() - int(1);
    let ni = n as i64;
    let mut rows = vec![
        poly_row("H^n", n, h(n).integrate(), fact(n)),
        poly_row(
            "delta*H^(n-1)",
            n,
            s.delta.multiply(&h(n - 1))?.integrate(),
            fact(n) * int(ni - 1),
        ),
        poly_row(
            "delta^2*H^(n-2)",
            n,
            s.delta.power(2).multiply(&h(n - 2))?.integrate(),
            -(fact(n) * &g1) + fact(n) * int((ni - 2) * ni),
        ),
    ];
    let p1 = ChowClass::point(1, n)?;
    rows.push(poly_row(
        "P1*delta'*H^(n-2)",
        n,
        p1.multiply(&s.delta_prime)?
            .multiply(&h(n - 2))?
            .integrate(),
        fact(n - 1),
    ));
    rows.push(poly_row(
        "delta'^2*H^(n-2)",
        n,
        s.delta_prime.power(2).multiply(&h(n - 2))?.integrate(),
        -(fact(n - 1) * int(2) * &g1) + fact(n - 1) * int((ni - 2) * 3),
    ));
    Ok(rows)
}

/// `pr̄_{1*} H̃_n^{n-2} = (n-2)·H̃_{n-1}^{n-3}`, and the integral identity for
/// every codimension-2 configuration on `C^{n-1}`.
fn projection_row(n: usize) -> Result<Row> {
    let hn = symmetric_classes(n)?.h.power(n as u32 - 2);
    let hm = symmetric_classes(n - 1)?.h.power(n as u32 - 3);
    let pushed = hn.pushforward_forget_first()?;
    let expected = hm.scale(&int(n as i64 - 2));
    let mut row = class_row("projection-formula", n, &pushed, &expected);
    let alphas = configurations_of_codim(n - 1, 2)?;
    for alpha in &alphas {
        let alpha = ChowClass::from(alpha.clone());
        let lhs = hn.multiply(&alpha.pullback_insert_first()?)?.integrate();
        let rhs = hm.multiply(&alpha)?.integrate() * int(n as i64 - 2);
        if lhs != rhs {
            row.passed = false;
            row.computed = format!("integral mismatch against {alpha}: {lhs} vs {rhs}");
            return Ok(row);
        }
    }
    if row.passed {
        row.computed = format!("class identity and {} codim-2 integrals", alphas.len());
        row.expected = row.computed.clone();
    }
    Ok(row)
}

fn bundle_rows(n: usize, tower: &mut ChernTower) -> Result<Vec<Row>> {
    let bundle = tower.bundle().clone();
    let level = tower.level(n)?.clone();
    let mut rows = Vec::new();

    let rank = ChowClass::fundamental(n)?.scale(&(int(n as i64) * bundle.rank()));
    rows.push(class_row("rank", n, level.part(0), &rank));

    let s = symmetric_classes(n)?;
    let c1 =
        s.h.scale(bundle.degree())
            .sub(&s.delta.scale(bundle.rank()))?;
    let mut row = class_row("c1-closed-form", n, level.part(1), &c1);
    if row.passed {
        row.computed = "d*H - r*delta".into();
        row.expected = row.computed.clone();
    }
    rows.push(row);

    let kernel = crate::taut::ch_twisted_kernel(n, &bundle, 2)?;
    let h = s.h.power(n as u32 - 2);
    rows.push(poly_row(
        "kernel-ch2",
        n,
        kernel.part(2).multiply(&h)?.integrate(),
        closed::kernel_ch2(n, &bundle),
    ));
    rows.push(poly_row(
        "c1^2",
        n,
        tower.integral_c1sq(n)?,
        closed::c1sq(n, &bundle),
    ));
    rows.push(poly_row(
        "ch2",
        n,
        tower.integral_ch2(n)?,
        closed::ch2(n, &bundle),
    ));
    rows.push(poly_row(
        "discriminant",
        n,
        tower.discriminant(n)?,
        closed::discriminant(n, &bundle),
    ));
    Ok(rows)
}

/// Grid checks of the Bogomolov interval for one `n` and `g = 0..=10`.
pub fn gap_findings(n: u32) -> Result<Vec<String>> {
    let mut findings = Vec::new();
    let ni = n as i64;
    for g in 0..=GENUS_SWEEP {
        let gi = g as i64;
        let q = (ni - 2) * (ni - 2) - 4 * (ni - 1) * (gi - 1);
        let gap = bogomolov_gap(n, g)?;
        if gap.is_some() != (q > 0) {
            findings.push(format!("g={g}: emptiness disagrees with radicand {q}"));
            continue;
        }
        let quad = |mu: &Rational| mu * mu - rat(ni - 2) * mu + rat((ni - 1) * (gi - 1));
        if let Some(gap) = &gap {
            let root = (q as f64).sqrt();
            let (lo, hi) = (
                ((ni - 2) as f64 - root) / 2.0,
                ((ni - 2) as f64 + root) / 2.0,
            );
            if (gap.lo.to_f64() - lo).abs() > 1e-9 || (gap.hi.to_f64() - hi).abs() > 1e-9 {
                findings.push(format!("g={g}: endpoints {gap} differ from ({lo}, {hi})"));
            }
            if g >= 1
                && (gap.lo.cmp_rational(&rat(gi - 1)).is_lt()
                    || gap.hi.cmp_rational(&rat(ni - gi)).is_gt())
            {
                findings.push(format!("g={g}: {gap} not inside ({}, {})", gi - 1, ni - gi));
            }
            if g == 0
                && (gap.lo.as_rational() != Some(rat(-1))
                    || gap.hi.as_rational() != Some(rat(ni - 1)))
            {
                findings.push(format!("g=0: {gap} differs from (-1, {})", ni - 1));
            }
        }
        for k in -8..=4 * (ni + 1) {
            let mu = Rational::new(BigInt::from(k), BigInt::from(4));
            let inside = gap.as_ref().is_some_and(|gap| gap.contains(&mu));
            if inside != quad(&mu).is_negative() {
                findings.push(format!(
                    "g={g}, mu={mu}: gap membership disagrees with the quadratic"
                ));
            }
            let v = classify_slope(n, g, &mu)?;
            let has = |c| v.witnesses.iter().any(|w| w.criterion == c);
            if has(Criterion::Bogomolov) && !has(Criterion::DestabilisingSection) {
                findings.push(format!(
                    "g={g}, mu={mu}: Bogomolov fires without the section criterion"
                ));
            }
        }
        // sign of the evaluated discriminant against membership of d/r
        for r in 1..=2i64 {
            for d in -2 * r..=(ni + 1) * r {
                let b = BundleSpec::numeric(rat(r), rat(d))?;
                let disc = closed::discriminant(n as usize, &b)
                    .eval(&Assignment::new().with(Symbol::G, rat(gi)))?;
                let mu = Rational::new(BigInt::from(d), BigInt::from(r));
                let inside = gap.as_ref().is_some_and(|gap| gap.contains(&mu));
                if inside != disc.is_negative() {
                    findings.push(format!(
                        "g={g}, d={d}, r={r}: discriminant sign disagrees with the gap"
                    ));
                }
            }
        }
    }
    Ok(findings)
}

fn gap_row(n: usize) -> Result<Row> {
    let findings = gap_findings(n as u32)?;
    let expected = format!("g = 0..={GENUS_SWEEP}: all interval properties hold");
    Ok(Row {
        family: "bogomolov-gap",
        n,
        passed: findings.is_empty(),
        computed: findings
            .first()
            .cloned()
            .unwrap_or_else(|| expected.clone()),
        expected,
    })
}

/// Runs every identity for `n = 2..=n_max`. `cap` bounds `n_max`.
pub fn run_verification(n_max: usize, cap: usize) -> Result<Report> {
    if n_max < 2 {
        return Err(Error::AmbientTooSmall {
            op: "verify",
            n: n_max,
            min: 2,
        });
    }
    let cap = cap.min(MAX_AMBIENT);
    if n_max > cap {
        return Err(Error::AmbientTooLarge { n: n_max, cap });
    }
    let mut per_n: Vec<Vec<Row>> = Vec::new();
    let mut tower = ChernTower::new(BundleSpec::symbolic(), 2);
    for n in 2..=n_max {
        let mut rows = vec![power_of_h_row(n)?];
        rows.extend(intersection_rows(n)?);
        if n >= 3 {
            rows.push(projection_row(n)?);
        }
        rows.extend(bundle_rows(n, &mut tower)?);
        rows.push(gap_row(n)?);
        per_n.push(rows);
    }
    // group by family, in the order the largest n lists them
    let mut families: Vec<&'static str> = Vec::new();
    for row in per_n.iter().rev().flatten() {
        if !families.contains(&row.family) {
            families.push(row.family);
        }
    }
    let rows = families
        .iter()
        .flat_map(|f| {
            per_n
                .iter()
                .flatten()
                .filter(move |r| r.family == *f)
                .cloned()
        })
        .collect();
    Ok(Report { n_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_sweep_passes() {
        let report = run_verification(2, 12).unwrap();
        assert!(report.passed(), "{report}");
        let disc: Vec<_> = report.family("discriminant").collect();
        assert_eq!(disc.len(), 1);
        assert_eq!(disc[0].computed, "d^2 + (g - 1)*r^2");
        assert_eq!(report.family("projection-formula").count(), 0);
    }

    #[test]
    fn rows_per_family() {
        let report = run_verification(5, 12).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.family("discriminant").count(), 4);
        assert_eq!(report.family("projection-formula").count(), 3);
    }

    #[test]
    fn range_checks() {
        assert!(matches!(
            run_verification(1, 12),
            Err(Error::AmbientTooSmall { .. })
        ));
        assert!(matches!(
            run_verification(13, 12),
            Err(Error::AmbientTooLarge { .. })
        ));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
