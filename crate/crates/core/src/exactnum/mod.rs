//! Exact arithmetic: rationals, cyclotomic numbers and abelian subfields.

pub mod arith;
mod cyclotomic;
mod subfield;

use num_bigint::BigInt;
use thiserror::Error;

pub use cyclotomic::{conductor_ceiling, cyclotomic_poly, set_conductor_ceiling, CycNumber};
pub use subfield::{PlaceInfo, SubfieldDesc};

pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("conductor {conductor} exceeds the ceiling {ceiling}")]
    ConductorCeiling { conductor: u64, ceiling: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as "a/b", or "a" when integral.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "a/b" or "a".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b == BigInt::from(0) {
                None
            } else {
                Some(Rat::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}
