use std::fmt;

use num_bigint::BigInt;

use crate::poly::Symbol;

/// Named classes on the current ambient `C^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `H̃ = Σ pr_i^*[x]`
    H,
    /// `δ = Σ_{i<j} Δ_ij`
    Delta,
    /// `δ' = Σ_{j≥2} Δ_1j`
    DeltaPrime,
    /// `[C^m]`
    Fund,
    /// `pr_i^*[x]`
    Point(usize),
    /// `Δ_ij`
    Diagonal(usize, usize),
    /// `η_I`
    Eta(Vec<usize>),
}

/// An exponent: a literal, or `n - k` with `n` bound at evaluation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Int(u32),
    AmbientMinus(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Integrate,
    Pushforward1,
    Pullback1,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Integrate => "integrate",
            Func::Pushforward1 => "pushforward1",
            Func::Pullback1 => "pullback1",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "integrate" => Some(Func::Integrate),
            "pushforward1" => Some(Func::Pushforward1),
            "pullback1" => Some(Func::Pullback1),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative integer literal.
    Num(BigInt),
    Symbol(Symbol),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Exponent),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Int(k) => write!(f, "{k}"),
            Exponent::AmbientMinus(0) => f.write_str("n"),
            Exponent::AmbientMinus(k) => write!(f, "(n-{k})"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::H => f.write_str("H"),
            Atom::Delta => f.write_str("delta"),
            Atom::DeltaPrime => f.write_str("delta_prime"),
            Atom::Fund => f.write_str("fund"),
            Atom::Point(i) => write!(f, "P({i})"),
            Atom::Diagonal(i, j) => write!(f, "D({i},{j})"),
            Atom::Eta(set) => {
                f.write_str("eta({")?;
                for (k, i) in set.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{i}")?;
                }
                f.write_str("})")
            }
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            write!(
                f,
                "{} {op} {}",
                Wrapped(a, a.precedence() < p),
                Wrapped(b, b.precedence() <= p)
            )
        };
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Symbol(s) => write!(f, "{s}"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Neg(x) => write!(f, "-{}", Wrapped(x, x.precedence() < 3)),
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
            Expr::Div(a, b) => binary(f, a, "/", b, 2),
            Expr::Pow(base, e) => write!(f, "{}^{e}", Wrapped(base, base.precedence() < 5)),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
