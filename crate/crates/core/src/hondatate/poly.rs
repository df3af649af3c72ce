//! Dense polynomials over Z and Q, parsing, and Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{InertiaError, Result};
use crate::exactnum::Rat;

/// A polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

/// A polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(Vec<Rat>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// P(−x).
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Parses "x^2-x+5", "3*x^3 + 2x - 1", or a coefficient list
    /// "[1,-1,5]" / "1,-1,5" given leading coefficient first.
    pub fn parse(s: &str) -> Result<IntPoly> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(InertiaError::precondition("empty polynomial"));
        }
        if !t.contains('x') {
            let inner = t.trim_start_matches('[').trim_end_matches(']');
            if inner.contains(',') || t.starts_with('[') {
                let mut coeffs = inner
                    .split(',')
                    .map(|c| c.parse::<BigInt>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| InertiaError::precondition(format!("bad coefficient list {s:?}: {e}")))?;
                coeffs.reverse();
                return Ok(IntPoly::new(coeffs));
            }
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = t.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let term = &t[start..i];
            if term.is_empty() {
                return Err(InertiaError::precondition(format!("malformed polynomial {s:?}")));
            }
            let (c, e) = parse_term(term)
                .ok_or_else(|| InertiaError::precondition(format!("malformed term {term:?} in {s:?}")))?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += sign * c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

fn parse_term(term: &str) -> Option<(BigInt, usize)> {
    let Some(pos) = term.find('x') else {
        return term.parse().ok().map(|c| (c, 0));
    };
    let head = term[..pos].trim_end_matches('*');
    let c = if head.is_empty() { BigInt::one() } else { head.parse().ok()? };
    let tail = &term[pos + 1..];
    let e =
        if tail.is_empty() { 1 } else { tail.strip_prefix('^').or_else(|| tail.strip_prefix("**"))?.parse().ok()? };
    Some((c, e))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            f.write_str(&mono)?;
        }
        Ok(())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> QPoly {
        let l = self.leading();
        QPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Rat::zero) - other.0.get(i).cloned().unwrap_or_else(Rat::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(i.into())).collect())
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.leading();
        if r.len() < d.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        (QPoly::new(q), QPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// The squarefree part P / gcd(P, P').
    pub fn squarefree(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Sign of P(x) as x → +∞ (or −∞ when `neg`).
    fn sign_at_infinity(&self, neg: bool) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let s = if self.leading().is_positive() { 1 } else { -1 };
        if neg && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Sturm chain P, P', −rem(P, P'), …
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Number of distinct real roots in (a, b], with `None` meaning ±∞.
    pub fn count_real_roots(&self, a: Option<&Rat>, b: Option<&Rat>) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let variations = |x: Option<&Rat>, neg: bool| -> usize {
            let signs: Vec<i32> = chain
                .iter()
                .map(|p| match x {
                    Some(x) => {
                        let v = p.eval(x);
                        if v.is_positive() {
                            1
                        } else if v.is_negative() {
                            -1
                        } else {
                            0
                        }
                    }
                    None => p.sign_at_infinity(neg),
                })
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(a, true).saturating_sub(variations(b, false))
    }

    /// Characteristic polynomial of a square rational matrix (Hessenberg reduction).
    pub fn charpoly(m: &[Vec<Rat>]) -> QPoly {
        let n = m.len();
        let mut h: Vec<Vec<Rat>> = m.to_vec();
        for k in 1..n.saturating_sub(1) {
            let Some(piv) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
                continue;
            };
            if piv != k {
                h.swap(piv, k);
                for row in h.iter_mut() {
                    row.swap(piv, k);
                }
            }
            for i in k + 1..n {
                let f = &h[i][k - 1] / &h[k][k - 1];
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &f * &h[k][j];
                    h[i][j] -= v;
                }
                for row in h.iter_mut() {
                    let v = &f * &row[i];
                    row[k] += v;
                }
            }
        }
        let x = QPoly::new(vec![Rat::zero(), Rat::one()]);
        let mut p: Vec<QPoly> = vec![QPoly::new(vec![Rat::one()])];
        for k in 0..n {
            let mut next = x.mul(&p[k]).sub(&p[k].mul(&QPoly::new(vec![h[k][k].clone()])));
            let mut prod = Rat::one();
            for i in (0..k).rev() {
                prod *= &h[i + 1][i];
                let term = p[i].mul(&QPoly::new(vec![&prod * &h[i][k]]));
                next = next.sub(&term);
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(IntPoly::parse("x^2-x+5").unwrap(), IntPoly::from_i64(&[5, -1, 1]));
        assert_eq!(IntPoly::parse("x - 4").unwrap(), IntPoly::from_i64(&[-4, 1]));
        assert_eq!(IntPoly::parse("3*x^3 + 2x - 1").unwrap(), IntPoly::from_i64(&[-1, 2, 0, 3]));
        assert_eq!(IntPoly::parse("[1,-1,5]").unwrap(), IntPoly::from_i64(&[5, -1, 1]));
        assert!(IntPoly::parse("x^^2").is_err());
        assert_eq!(IntPoly::parse("x^2-x+5").unwrap().to_string(), "x^2 - x + 5");
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x+3)
        let p = IntPoly::from_i64(&[6, -7, 0, 1]).to_q();
        assert_eq!(p.count_real_roots(None, None), 3);
        assert_eq!(p.count_real_roots(Some(&Rat::zero()), None), 2);
        let q = IntPoly::from_i64(&[1, 0, 1]).to_q();
        assert_eq!(q.count_real_roots(None, None), 0);
    }

    #[test]
    fn charpoly_companion() {
        let m = vec![vec![Rat::zero(), Rat::from_integer((-6).into())], vec![Rat::one(), Rat::from_integer(5.into())]];
        assert_eq!(QPoly::charpoly(&m), IntPoly::from_i64(&[6, -5, 1]).to_q());
    }
}
