use num_traits::Zero;

use super::ast::{Atom, Exponent, Expr, Func};
use crate::chow::{check_ambient, symmetric_classes, ChowClass, Generator};
use crate::error::{Error, Result};
use crate::poly::{RatPoly, Rational};

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(RatPoly),
    Class(ChowClass),
}

impl Value {
    fn into_class(self, ambient: usize) -> Result<ChowClass> {
        match self {
            Value::Class(c) => Ok(c),
            Value::Scalar(s) => Ok(ChowClass::fundamental(ambient)?.scale(&s)),
        }
    }
}

/// Evaluates `expr` on `C^n`, binding the exponent token `n` to `n`.
///
/// `pushforward1(e)` evaluates `e` one level up, on `C^{m+1}`, and
/// `pullback1(e)` one level down, so every subexpression lands on the ambient
/// of its surroundings.
pub fn evaluate(expr: &Expr, n: usize) -> Result<Value> {
    check_ambient(n)?;
    Evaluator { n }.eval(expr, n)
}

struct Evaluator {
    n: usize,
}

impl Evaluator {
    fn exponent(&self, e: Exponent) -> Result<u32> {
        match e {
            Exponent::Int(k) => Ok(k),
            Exponent::AmbientMinus(k) => (self.n as u64)
                .checked_sub(k as u64)
                .map(|v| v as u32)
                .ok_or(Error::NegativeExponent { n: self.n, k }),
        }
    }

    fn atom(&self, atom: &Atom, m: usize) -> Result<ChowClass> {
        match atom {
            Atom::H => Ok(symmetric_classes(m)?.h),
            Atom::Delta => Ok(symmetric_classes(m)?.delta),
            Atom::DeltaPrime => Ok(symmetric_classes(m)?.delta_prime),
            Atom::Fund => ChowClass::fundamental(m),
            Atom::Point(i) => ChowClass::generator(&Generator::Point(*i), m),
            Atom::Diagonal(i, j) => ChowClass::generator(&Generator::Diagonal(*i, *j), m),
            Atom::Eta(set) => ChowClass::generator(&Generator::Eta(set.clone()), m),
        }
    }

    fn binary(&self, a: &Expr, b: &Expr, m: usize) -> Result<(Value, Value)> {
        Ok((self.eval(a, m)?, self.eval(b, m)?))
    }

    fn eval(&self, expr: &Expr, m: usize) -> Result<Value> {
        Ok(match expr {
            Expr::Num(v) => Value::Scalar(RatPoly::constant(Rational::from_integer(v.clone()))),
            Expr::Symbol(s) => Value::Scalar(RatPoly::symbol(*s)),
            Expr::Atom(a) => Value::Class(self.atom(a, m)?),
            Expr::Neg(x) => match self.eval(x, m)? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Class(c) => Value::Class(c.neg()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let negate = matches!(expr, Expr::Sub(..));
                match self.binary(a, b, m)? {
                    (Value::Scalar(x), Value::Scalar(y)) => {
                        Value::Scalar(if negate { x - y } else { x + y })
                    }
                    (x, y) => {
                        let (x, y) = (x.into_class(m)?, y.into_class(m)?);
                        Value::Class(if negate { x.sub(&y)? } else { x.add(&y)? })
                    }
                }
            }
            Expr::Mul(a, b) => match self.binary(a, b, m)? {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
                (Value::Scalar(s), Value::Class(c)) | (Value::Class(c), Value::Scalar(s)) => {
                    Value::Class(c.scale(&s))
                }
                (Value::Class(x), Value::Class(y)) => Value::Class(x.multiply(&y)?),
            },
            Expr::Div(a, b) => {
                let divisor = match self.eval(b, m)? {
                    Value::Scalar(s) => s.as_constant(),
                    Value::Class(_) => None,
                };
                let inv = match divisor {
                    Some(c) if !c.is_zero() => RatPoly::constant(c.recip()),
                    _ => return Err(Error::InvalidDivisor),
                };
                match self.eval(a, m)? {
                    Value::Scalar(s) => Value::Scalar(s * inv),
                    Value::Class(c) => Value::Class(c.scale(&inv)),
                }
            }
            Expr::Pow(base, e) => {
                let k = self.exponent(*e)?;
                match self.eval(base, m)? {
                    Value::Scalar(s) => Value::Scalar(s.pow(k)),
                    Value::Class(c) => Value::Class(c.power(k)),
                }
            }
            Expr::Call(Func::Integrate, arg) => {
                Value::Scalar(self.eval(arg, m)?.into_class(m)?.integrate())
            }
            Expr::Call(Func::Pushforward1, arg) => {
                check_ambient(m + 1)?;
                let inner = self.eval(arg, m + 1)?.into_class(m + 1)?;
                Value::Class(inner.pushforward_forget_first()?)
            }
            Expr::Call(Func::Pullback1, arg) => {
                if m < 2 {
                    return Err(Error::AmbientTooSmall {
                        op: "pullback1",
                        n: m,
                        min: 2,
                    });
                }
                let inner = self.eval(arg, m - 1)?.into_class(m - 1)?;
                Value::Class(inner.pullback_insert_first()?)
            }
        })
    }
}
