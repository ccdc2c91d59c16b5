//! A small expression language over classes on `C^n`.
//!
//! ```
//! use symprod::dsl::{evaluate, parse, Value};
//! use symprod::RatPoly;
//!
//! let expr = parse("integrate(delta * H^(n-1))").unwrap();
//! let Value::Scalar(v) = evaluate(&expr, 4).unwrap() else { unreachable!() };
//! assert_eq!(v, RatPoly::int(72)); // 4!·3
//! ```

mod ast;
mod eval;
mod parser;

use std::str::FromStr;

pub use ast::{Atom, Exponent, Expr, Func};
pub use eval::{evaluate, Value};
pub use parser::parse;

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Parses the canonical rendering of a polynomial (or any scalar expression).
impl FromStr for RatPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<RatPoly> {
        match evaluate(&parse(s)?, 1)? {
            Value::Scalar(p) => Ok(p),
            Value::Class(_) => Err(Error::ExpectedScalar),
        }
    }
}
