//! Exact elements of cyclotomic fields Q(ζ_N) in the power basis, always stored
//! at their minimal conductor.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::arith::{crt, divisors, euler_phi, factorize, gcd, lcm, moebius, primitive_root};
use super::{ExactError, Rat};

static CONDUCTOR_CEILING: AtomicU64 = AtomicU64::new(10_000);

/// Largest conductor any arithmetic result may live in.
pub fn conductor_ceiling() -> u64 {
    CONDUCTOR_CEILING.load(AtomicOrdering::Relaxed)
}

pub fn set_conductor_ceiling(n: u64) {
    CONDUCTOR_CEILING.store(n.max(1), AtomicOrdering::Relaxed);
}

fn check_ceiling(n: u64) -> Result<(), ExactError> {
    let ceiling = conductor_ceiling();
    if n > ceiling {
        Err(ExactError::ConductorCeiling { conductor: n, ceiling })
    } else {
        Ok(())
    }
}

type PolyCache = Mutex<HashMap<u64, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let poly: Vec<i64> = if n == 1 {
        vec![-1, 1]
    } else {
        let mut num: Vec<i128> = vec![0; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let den = cyclotomic_poly(d);
            num = exact_div_monic(&num, &den);
        }
        num.into_iter().map(|c| c as i64).collect()
    };
    let poly = Arc::new(poly);
    poly_cache().lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduces a dense vector of coefficients of ζ_N^i (0 ≤ i < N) modulo Φ_N.
fn reduce_dense(mut dense: Vec<Rat>, n: u64) -> Vec<Rat> {
    let phi = euler_phi(n) as usize;
    let cyc = cyclotomic_poly(n);
    for i in (phi..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[i], Rat::zero());
        for (j, &pj) in cyc.iter().enumerate().take(phi) {
            if pj != 0 {
                dense[i - phi + j] -= &c * Rat::from_integer(BigInt::from(pj));
            }
        }
    }
    dense.truncate(phi);
    dense
}

struct Projection {
    pivots: Vec<usize>,
    inverse: Vec<Vec<Rat>>,
}

type ProjectionCache = Mutex<HashMap<(u64, u64), Arc<Projection>>>;

fn projection(n: u64, d: u64) -> Arc<Projection> {
    static CACHE: OnceLock<ProjectionCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(n, d)) {
        return Arc::clone(p);
    }
    let phi_n = euler_phi(n) as usize;
    let phi_d = euler_phi(d) as usize;
    let step = (n / d) as usize;
    // columns: images of ζ_d^j in the power basis of Q(ζ_N)
    let cols: Vec<Vec<Rat>> = (0..phi_d)
        .map(|j| {
            let mut dense = vec![Rat::zero(); n as usize];
            dense[j * step] = Rat::one();
            reduce_dense(dense, n)
        })
        .collect();
    let rows: Vec<Vec<Rat>> = (0..phi_n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut pivots = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (lead, b) in &basis {
            if !v[*lead].is_zero() {
                let f = v[*lead].clone() / &b[*lead];
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= &f * bi;
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            basis.push((lead, v));
            pivots.push(r);
            if pivots.len() == phi_d {
                break;
            }
        }
    }
    let square: Vec<Vec<Rat>> = pivots.iter().map(|&r| rows[r].clone()).collect();
    let inverse = invert_matrix(&square).expect("embedding matrix has full rank");
    let proj = Arc::new(Projection { pivots, inverse });
    cache.lock().unwrap().insert((n, d), Arc::clone(&proj));
    proj
}

fn invert_matrix(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rat::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// An exact element of Q(ζ_N), N minimal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNumber { conductor: 1, coeffs: vec![r] }
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: u64) -> Self {
        let mut counts = vec![0u64; n as usize];
        counts[(k % n) as usize] = 1;
        Self::from_root_powers(n, &counts)
    }

    /// Σ counts[i]·ζ_n^i.
    pub fn from_root_powers(n: u64, counts: &[u64]) -> Self {
        let mut dense = vec![Rat::zero(); n as usize];
        for (i, &c) in counts.iter().enumerate() {
            if c != 0 {
                dense[i % n as usize] += Rat::from_integer(BigInt::from(c));
            }
        }
        Self::canonical(n, reduce_dense(dense, n))
    }

    /// Builds an element from power-basis coefficients in Q(ζ_n).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rat>) -> Result<Self, ExactError> {
        check_ceiling(n)?;
        let mut dense = coeffs;
        dense.resize(dense.len().max(n as usize), Rat::zero());
        let mut folded = vec![Rat::zero(); n as usize];
        for (i, c) in dense.into_iter().enumerate() {
            folded[i % n as usize] += c;
        }
        Ok(Self::canonical(n, reduce_dense(folded, n)))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Returns the value as an integer if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rat().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Dense coefficients of ζ_L^i, 0 ≤ i < L, for a multiple L of the conductor.
    fn spread(&self, l: u64) -> Vec<Rat> {
        let step = (l / self.conductor) as usize;
        let mut dense = vec![Rat::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * step] += c;
        }
        dense
    }

    /// Power-basis coefficients after embedding into Q(ζ_L).
    pub fn coeffs_in(&self, l: u64) -> Vec<Rat> {
        assert!(l.is_multiple_of(self.conductor), "conductor must divide target");
        reduce_dense(self.spread(l), l)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let l = lcm(self.conductor, other.conductor);
        check_ceiling(l)?;
        let mut a = self.spread(l);
        for (x, y) in a.iter_mut().zip(other.spread(l)) {
            *x += y;
        }
        Ok(Self::canonical(l, reduce_dense(a, l)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let l = lcm(self.conductor, other.conductor);
        check_ceiling(l)?;
        let sa = (l / self.conductor) as usize;
        let sb = (l / other.conductor) as usize;
        let lu = l as usize;
        let mut dense = vec![Rat::zero(); lu];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[(i * sa + j * sb) % lu] += x * y;
                }
            }
        }
        Ok(Self::canonical(l, reduce_dense(dense, l)))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn neg_ref(&self) -> Self {
        CycNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplicative inverse; zero is a domain error.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_rat() {
            return Ok(Self::from_rat(Rat::one() / r));
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // column j: self · ζ^j
        let cols: Vec<Vec<Rat>> = (0..phi)
            .map(|j| {
                let mut dense = vec![Rat::zero(); n as usize];
                for (i, c) in self.coeffs.iter().enumerate() {
                    dense[(i + j) % n as usize] += c;
                }
                reduce_dense(dense, n)
            })
            .collect();
        let m: Vec<Vec<Rat>> = (0..phi).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = invert_matrix(&m).ok_or(ExactError::DivisionByZero)?;
        let coeffs = inv.into_iter().map(|row| row[0].clone()).collect();
        Ok(Self::canonical(n, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inv()?)
    }

    /// The Galois automorphism σ_k: ζ ↦ ζ^k, for k coprime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        debug_assert_eq!(gcd(k % n, n), 1, "Galois exponent must be a unit");
        let mut dense = vec![Rat::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[((i as u64 * k) % n) as usize] += c;
        }
        CycNumber { conductor: n, coeffs: reduce_dense(dense, n) }
    }

    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Trace from Q(ζ_N) down to Q, via Ramanujan sums.
    pub fn trace(&self) -> Rat {
        let n = self.conductor;
        let phi_n = euler_phi(n);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let g = gcd(i as u64, n);
                let m = n / g;
                let ram = moebius(m) * (phi_n / euler_phi(m)) as i64;
                c * Rat::from_integer(BigInt::from(ram))
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    fn canonical(n: u64, coeffs: Vec<Rat>) -> Self {
        let mut n = n;
        let mut coeffs = coeffs;
        'outer: loop {
            if n == 1 {
                break;
            }
            if n % 4 == 2 {
                let m = n / 2;
                let h = m.div_ceil(2);
                let mut dense = vec![Rat::zero(); m as usize];
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let pos = ((i as u64 * h) % m) as usize;
                    if i % 2 == 0 {
                        dense[pos] += c;
                    } else {
                        dense[pos] -= c;
                    }
                }
                coeffs = reduce_dense(dense, m);
                n = m;
                continue;
            }
            if coeffs.iter().skip(1).all(|c| c.is_zero()) {
                coeffs.truncate(1);
                n = 1;
                break;
            }
            let current = CycNumber { conductor: n, coeffs: coeffs.clone() };
            for (l, _) in factorize(n) {
                let d = n / l;
                let k = if d.is_multiple_of(l) { 1 + d } else { crt(1, d, primitive_root(l), l) };
                if current.galois(k) == current {
                    let proj = projection(n, d);
                    coeffs = proj
                        .inverse
                        .iter()
                        .map(|row| row.iter().zip(&proj.pivots).fold(Rat::zero(), |acc, (a, &p)| acc + a * &coeffs[p]))
                        .collect();
                    n = d;
                    continue 'outer;
                }
            }
            break;
        }
        CycNumber { conductor: n, coeffs }
    }
}

impl PartialOrd for CycNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

// Operator forms panic only when the conductor ceiling is exceeded; callers
// that need the error use the `checked_*` methods.
impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.checked_add(rhs).expect("conductor ceiling exceeded")
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.checked_sub(rhs).expect("conductor ceiling exceeded")
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.checked_mul(rhs).expect("conductor ceiling exceeded")
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z{}^{}", self.conductor, i)?,
                _ => write!(f, "{a}*z{}^{}", self.conductor, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: u64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNumber::from_int(-1));
    }

    #[test]
    fn sum_of_nontrivial_fifth_roots() {
        let s = (1..5).fold(CycNumber::zero(), |acc, k| &acc + &z(5, k));
        assert_eq!(s, CycNumber::from_int(-1));
    }

    #[test]
    fn norm_of_one_plus_zeta3() {
        let a = &CycNumber::one() + &z(3, 1);
        let b = &CycNumber::one() + &z(3, 2);
        assert_eq!(&a * &b, CycNumber::one());
    }

    #[test]
    fn minimal_conductor_is_found() {
        // ζ_8 + ζ_8^7 = √2 lives in Q(ζ_8) with conductor 8.
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(s.conductor(), 8);
        assert_eq!(&s * &s, CycNumber::from_int(2));
        // ζ_12^4 = ζ_3
        assert_eq!(z(12, 4), z(3, 1));
        // ζ_6 = -ζ_3^2
        assert_eq!(z(6, 1), -&z(3, 2));
        assert_eq!(z(6, 1).conductor(), 3);
        // ζ_15^5 lives in Q(ζ_3)
        assert_eq!(z(15, 5).conductor(), 3);
    }

    #[test]
    fn inversion() {
        let a = &CycNumber::from_int(2) + &z(7, 3);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, CycNumber::one());
        assert!(matches!(CycNumber::zero().inv(), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn trace_matches_galois_sum() {
        let a = &z(9, 2) + &CycNumber::from_int(3);
        let n = a.conductor();
        let sum = crate::exactnum::arith::units(n).into_iter().fold(CycNumber::zero(), |acc, k| &acc + &a.galois(k));
        assert_eq!(sum.to_rat().unwrap(), a.trace());
    }

    #[test]
    fn ceiling_is_an_error() {
        let a = z(101, 1);
        let b = z(103, 1);
        set_conductor_ceiling(1000);
        let r = a.checked_mul(&b);
        set_conductor_ceiling(10_000);
        assert!(matches!(r, Err(ExactError::ConductorCeiling { .. })));
    }
}
