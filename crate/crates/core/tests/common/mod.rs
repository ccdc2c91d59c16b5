//! Seeded random classes and expressions shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symprod::chow::configurations_of_codim;
use symprod::dsl::{Atom, Exponent, Expr, Func};
use symprod::{symmetric_classes, ChowClass, RatPoly, Symbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(rng);
    let mut set = all[..k].to_vec();
    set.sort_unstable();
    set
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    p
}

/// A small polynomial in `g` with integer coefficients.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> RatPoly {
    let a = rng.gen_range(-3i64..=3);
    let b = rng.gen_range(-2i64..=2);
    let c = RatPoly::int(a) + RatPoly::int(b) * RatPoly::g();
    if c.is_zero() {
        RatPoly::one()
    } else {
        c
    }
}

/// One of `P_i`, `Δ_ij`, `η_I`, `H̃`, `δ`, `δ'`.
pub fn random_generator<R: Rng>(rng: &mut R, n: usize) -> ChowClass {
    let pick = if n == 1 {
        rng.gen_range(0..2) * 2
    } else {
        rng.gen_range(0..6)
    };
    match pick {
        0 => ChowClass::point(rng.gen_range(1..=n), n).unwrap(),
        1 => {
            let s = random_subset(rng, n, 2);
            ChowClass::diagonal(s[0], s[1], n).unwrap()
        }
        2 => {
            let k = rng.gen_range(1..=n.min(3));
            ChowClass::eta(&random_subset(rng, n, k), n).unwrap()
        }
        3 => symmetric_classes(n).unwrap().h,
        4 => symmetric_classes(n).unwrap().delta,
        _ => symmetric_classes(n).unwrap().delta_prime,
    }
}

/// `c · x_1 ⋯ x_k` with `k ≤ max_factors` random generators.
pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_factors: usize) -> ChowClass {
    let k = rng.gen_range(0..=max_factors);
    let mut out = ChowClass::fundamental(n)
        .unwrap()
        .scale(&random_coefficient(rng));
    for _ in 0..k {
        out = out.multiply(&random_generator(rng, n)).unwrap();
    }
    out
}

/// A sum of up to three random monomials.
pub fn random_class<R: Rng>(rng: &mut R, n: usize, max_factors: usize) -> ChowClass {
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(ChowClass::zero(n).unwrap(), |acc, _| {
        acc.add(&random_monomial(rng, n, max_factors)).unwrap()
    })
}

/// A random combination of codimension-2 configurations.
pub fn random_codim2<R: Rng>(rng: &mut R, n: usize) -> ChowClass {
    let basis = configurations_of_codim(n, 2).unwrap();
    let mut out = ChowClass::zero(n).unwrap();
    while out.is_zero() {
        for conf in &basis {
            if rng.gen_bool(0.4) {
                out = out
                    .add(&ChowClass::from(conf.clone()).scale(&random_coefficient(rng)))
                    .unwrap();
            }
        }
    }
    out
}

fn random_atom<R: Rng>(rng: &mut R, n: usize) -> Atom {
    match rng.gen_range(0..7) {
        0 => Atom::H,
        1 => Atom::Delta,
        2 => Atom::DeltaPrime,
        3 => Atom::Fund,
        4 => Atom::Point(rng.gen_range(1..=n)),
        5 if n >= 2 => {
            let s = random_subset(rng, n, 2);
            Atom::Diagonal(s[0], s[1])
        }
        _ => {
            let k = rng.gen_range(1..=n);
            Atom::Eta(random_subset(rng, n, k))
        }
    }
}

/// A random expression tree of depth at most `depth` whose indices fit `C^n`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32, n: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => Expr::Num(BigInt::from(rng.gen_range(0u32..20))),
            1 => Expr::Symbol(*Symbol::ALL.choose(rng).unwrap()),
            _ => Expr::Atom(random_atom(rng, n)),
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1, n));
    match rng.gen_range(0..8) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        4 => Expr::Div(sub(rng), sub(rng)),
        5 => {
            let e = if rng.gen_bool(0.5) {
                Exponent::Int(rng.gen_range(0..4))
            } else {
                Exponent::AmbientMinus(rng.gen_range(0..4))
            };
            Expr::Pow(sub(rng), e)
        }
        6 => Expr::Call(Func::Integrate, sub(rng)),
        _ => {
            let f = if rng.gen_bool(0.5) {
                Func::Pushforward1
            } else {
                Func::Pullback1
            };
            Expr::Call(f, sub(rng))
        }
    }
}
