//! Exact Weil-number test: β = π + q/π must be totally real with every
//! conjugate in [−2√q, 2√q].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::factor;
use super::poly::{IntPoly, QPoly};
use crate::error::{InertiaError, Result};
use crate::exactnum::arith::is_prime;
use crate::exactnum::Rat;

/// Evidence behind a Weil decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilCertificate {
    /// Characteristic polynomial of β = π + q/π.
    pub beta_poly: String,
    /// Distinct conjugates of β.
    pub distinct_beta: usize,
    /// Distinct real conjugates of β.
    pub real_beta: usize,
    /// Distinct real conjugates with β² > 4q.
    pub beta_beyond_bound: usize,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilCheck {
    pub weil: bool,
    pub certificate: WeilCertificate,
}

/// A Weil q-number, q = p^n, given by its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilNumber {
    pub p: u64,
    pub n: u32,
    pub poly: IntPoly,
}

impl WeilNumber {
    pub fn new(poly: IntPoly, p: u64, n: u32) -> Result<Self> {
        let check = is_weil_number(&poly, p, n)?;
        if !check.weil {
            return Err(InertiaError::precondition(format!(
                "{poly} is not a Weil {}-number: {}",
                q_of(p, n),
                check.certificate.reason.unwrap_or_default()
            )));
        }
        Ok(WeilNumber { p, n, poly })
    }

    pub fn q(&self) -> BigInt {
        q_of(self.p, self.n)
    }
}

fn q_of(p: u64, n: u32) -> BigInt {
    BigInt::from(p).pow(n)
}

fn valuation(mut x: BigInt, p: u64) -> Option<u32> {
    let pb = BigInt::from(p);
    let mut v = 0;
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    x.abs().is_one().then_some(v)
}

fn qpoly_string(p: &QPoly) -> String {
    let ints: Option<Vec<BigInt>> = p.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
    match ints {
        Some(c) => IntPoly::new(c).to_string(),
        None => format!("{:?}", p.coeffs().iter().map(crate::exactnum::fmt_rat).collect::<Vec<_>>()),
    }
}

/// Characteristic polynomial of multiplication by x + q/x on Q[x]/(P).
fn beta_charpoly(poly: &IntPoly, q: &BigInt) -> QPoly {
    let d = poly.degree();
    let p = poly.to_q();
    let c = Rat::from_integer(poly.coeff(0));
    // x⁻¹ = −(P(x) − P(0)) / (x·P(0))
    let r: Vec<Rat> = p.coeffs()[1..].iter().map(|a| -a / &c).collect();
    let mut b = r.iter().map(|a| a * Rat::from_integer(q.clone())).collect::<Vec<_>>();
    if b.len() < 2 {
        b.resize(2, Rat::zero());
    }
    b[1] += Rat::one();
    let beta = QPoly::new(b);
    let beta = beta.divrem(&p).1;
    let mut m = vec![vec![Rat::zero(); d]; d];
    let mut xi = QPoly::new(vec![Rat::one()]);
    let x = QPoly::new(vec![Rat::zero(), Rat::one()]);
    for i in 0..d {
        let col = xi.mul(&beta).divrem(&p).1;
        for (j, v) in col.coeffs().iter().enumerate() {
            m[j][i] = v.clone();
        }
        xi = xi.mul(&x).divrem(&p).1;
    }
    QPoly::charpoly(&m)
}

/// S(y)·S(−y) as a polynomial in z = y².
fn square_roots_poly(s: &QPoly) -> QPoly {
    let c = s.coeffs();
    let even = QPoly::new(c.iter().step_by(2).cloned().collect());
    let odd = QPoly::new(c.iter().skip(1).step_by(2).cloned().collect());
    let z = QPoly::new(vec![Rat::zero(), Rat::one()]);
    even.mul(&even).sub(&z.mul(&odd).mul(&odd))
}

/// Decides whether every root of the monic irreducible P has absolute value
/// √q, q = p^n.
pub fn is_weil_number(poly: &IntPoly, p: u64, n: u32) -> Result<WeilCheck> {
    if !is_prime(p) {
        return Err(InertiaError::precondition(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(InertiaError::precondition("n must be positive"));
    }
    if poly.degree() == 0 || !poly.is_monic() {
        return Err(InertiaError::precondition(format!("{poly} is not a monic nonconstant polynomial")));
    }
    let factors = factor(poly)?;
    if factors.len() > 1 {
        let hints: Vec<String> = factors
            .iter()
            .map(|f| {
                let w = is_weil_number(f, p, n).map(|c| c.weil).unwrap_or(false);
                format!("{f} ({})", if w { "Weil" } else { "not Weil" })
            })
            .collect();
        return Err(InertiaError::precondition(format!("polynomial is reducible: {}", hints.join(" * "))));
    }
    let q = q_of(p, n);
    let c0 = poly.coeff(0);
    let Some(v) = valuation(c0.clone(), p) else {
        return Err(InertiaError::precondition(format!("constant term {c0} is not plus or minus a power of {p}")));
    };
    let d = poly.degree() as u32;
    let reject = |reason: String| WeilCheck {
        weil: false,
        certificate: WeilCertificate {
            beta_poly: String::new(),
            distinct_beta: 0,
            real_beta: 0,
            beta_beyond_bound: 0,
            reason: Some(reason),
        },
    };
    if 2 * v != n * d {
        return Ok(reject(format!(
            "|P(0)| = {p}^{v} but a Weil {q}-number of degree {d} needs {p}^{}",
            Rat::new((n * d).into(), 2.into())
        )));
    }
    let beta = beta_charpoly(poly, &q);
    let s = beta.squarefree();
    let distinct = s.degree();
    let real = s.count_real_roots(None, None);
    let t = square_roots_poly(&s).squarefree();
    let four_q = Rat::from_integer(&q * 4);
    let beyond = t.count_real_roots(Some(&four_q), None);
    let weil = real == distinct && beyond == 0;
    let reason = if weil {
        None
    } else if real != distinct {
        Some(format!("{} conjugates of pi + q/pi are not real", distinct - real))
    } else {
        Some(format!("{beyond} conjugates of pi + q/pi exceed 2*sqrt({q}) in absolute value"))
    };
    Ok(WeilCheck {
        weil,
        certificate: WeilCertificate {
            beta_poly: qpoly_string(&beta),
            distinct_beta: distinct,
            real_beta: real,
            beta_beyond_bound: beyond,
            reason,
        },
    })
}
