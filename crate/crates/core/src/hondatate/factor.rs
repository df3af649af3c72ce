//! Factorization of monic integer polynomials: Cantor–Zassenhaus modulo a
//! small prime, Hensel lifting, and recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{IntPoly, QPoly};
use crate::error::{InertiaError, Result};
use crate::exactnum::arith::{is_prime, mod_inv};

/// Polynomials over F_l, lowest degree first, no trailing zeros.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_deg(a: &Fp) -> usize {
    a.len().saturating_sub(1)
}

fn fp_sub(a: &Fp, b: &Fp, l: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + l - y) % l
            })
            .collect(),
    )
}

fn fp_add(a: &Fp, b: &Fp, l: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % l).collect())
}

fn fp_mul(a: &Fp, b: &Fp, l: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % l as u128) as u64;
        }
    }
    trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, l: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = fp_deg(b);
    let inv = mod_inv(*b.last().unwrap(), l).expect("leading coefficient invertible");
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = (r[i + db] as u128 * inv as u128 % l as u128) as u64;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                let s = (c as u128 * y as u128 % l as u128) as u64;
                r[i + j] = (r[i + j] + l - s) % l;
            }
        }
        q[i] = c;
    }
    (trim(q), trim(r))
}

fn fp_monic(a: &Fp, l: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = mod_inv(lead, l).expect("nonzero");
            a.iter().map(|&c| (c as u128 * inv as u128 % l as u128) as u64).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, l: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, l);
        a = b;
        b = r;
    }
    fp_monic(&a, l)
}

/// Returns (g, s, t) with s·a + t·b = g monic.
fn fp_xgcd(a: &Fp, b: &Fp, l: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, l);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, l), l);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, l), l);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = mod_inv(*r0.last().expect("nonzero gcd"), l).expect("nonzero");
    let sc = |p: &Fp| trim(p.iter().map(|&c| (c as u128 * inv as u128 % l as u128) as u64).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_powmod(base: &Fp, mut e: u128, m: &Fp, l: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = fp_divrem(base, m, l).1;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_divrem(&fp_mul(&result, &b, l), m, l).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, l), m, l).1;
        e >>= 1;
    }
    result
}

fn fp_derivative(a: &Fp, l: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (c as u128 * i as u128 % l as u128) as u64).collect())
}

fn reduce(p: &IntPoly, l: u64) -> Fp {
    let lb = BigInt::from(l);
    trim(p.coeffs().iter().map(|c| c.mod_floor(&lb).to_u64().unwrap()).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Fp, l: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while fp_deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, l as u128, &f, l);
        let g = fp_gcd(&f, &fp_sub(&h, &x, l), l);
        if fp_deg(&g) > 0 {
            out.push((g.clone(), d));
            f = fp_divrem(&f, &g, l).0;
            h = fp_divrem(&h, &f, l).1;
        }
    }
    if fp_deg(&f) > 0 {
        let deg = fp_deg(&f);
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting for odd l.
fn edf(f: &Fp, d: usize, l: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = fp_deg(f);
    if n == d {
        return vec![f.clone()];
    }
    let e = ((l as u128).pow(d as u32) - 1) / 2;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..l)).collect());
        if fp_deg(&a) == 0 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e, f, l), &vec![1], l);
        let g = fp_gcd(f, &b, l);
        if fp_deg(&g) > 0 && fp_deg(&g) < n {
            let h = fp_divrem(f, &g, l).0;
            let mut out = edf(&g, d, l, rng);
            out.extend(edf(&fp_monic(&h, l), d, l, rng));
            return out;
        }
    }
}

/// Irreducible monic factors of a monic squarefree polynomial over F_l.
fn factor_mod(f: &Fp, l: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(l);
    let mut out = Vec::new();
    for (g, d) in ddf(f, l) {
        out.extend(edf(&g, d, l, &mut rng));
    }
    out
}

/// Degrees of the irreducible factors over F_l of a polynomial given by its
/// residues (lowest degree first), when it is squarefree of the stated
/// degree; `None` otherwise.
pub fn fp_degree_pattern(coeffs: &[u64], l: u64) -> Option<Vec<usize>> {
    let f = fp_monic(&trim(coeffs.iter().map(|c| c % l).collect()), l);
    if f.is_empty() || fp_deg(&f) + 1 != coeffs.len() || fp_deg(&fp_gcd(&f, &fp_derivative(&f, l), l)) > 0 {
        return None;
    }
    let mut d: Vec<usize> = ddf(&f, l).into_iter().flat_map(|(g, d)| std::iter::repeat_n(d, fp_deg(&g) / d)).collect();
    d.sort_unstable();
    Some(d)
}

/// Degrees of the irreducible factors of P modulo l, when P is squarefree
/// there; `None` otherwise.
pub fn degree_pattern(p: &IntPoly, l: u64) -> Option<Vec<usize>> {
    fp_degree_pattern(&reduce(p, l), l)
}

fn to_int(a: &Fp) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn sub_int(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    IntPoly::new((0..n).map(|i| a.coeff(i) - b.coeff(i)).collect())
}

fn add_int(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    IntPoly::new((0..n).map(|i| a.coeff(i) + b.coeff(i)).collect())
}

fn scale_int(a: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| c * m).collect())
}

fn symmetric_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts f ≡ g·h (mod l) to f ≡ g'·h' (mod l^k), g', h' monic.
fn hensel_pair(f: &IntPoly, g: &Fp, h: &Fp, l: u64, k: u32) -> (IntPoly, IntPoly) {
    let (_, s, t) = fp_xgcd(g, h, l);
    let mut gz = to_int(g);
    let mut hz = to_int(h);
    let lb = BigInt::from(l);
    let mut m = lb.clone();
    for _ in 1..k {
        let diff = sub_int(f, &gz.mul(&hz));
        let e = IntPoly::new(diff.coeffs().iter().map(|c| c / &m).collect());
        let ep = reduce(&e, l);
        let gp = reduce(&gz, l);
        let hp = reduce(&hz, l);
        let (q, a) = fp_divrem(&fp_mul(&t, &ep, l), &gp, l);
        let b = fp_divrem(&fp_add(&fp_mul(&s, &ep, l), &fp_mul(&q, &hp, l), l), &hp, l).1;
        gz = add_int(&gz, &scale_int(&to_int(&a), &m));
        hz = add_int(&hz, &scale_int(&to_int(&b), &m));
        m *= &lb;
    }
    (gz, hz)
}

fn lift_all(f: &IntPoly, factors: &[Fp], l: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, l));
    let (gz, hz) = hensel_pair(f, g, &h, l, k);
    let modulus = BigInt::from(l).pow(k);
    let hz = symmetric_mod(&hz, &modulus);
    let mut out = vec![symmetric_mod(&gz, &modulus)];
    out.extend(lift_all(&hz, &factors[1..], l, k));
    out
}

fn divides_exactly(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    let (q, r) = f.to_q().divrem(&g.to_q());
    if !r.is_zero() {
        return None;
    }
    q.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(IntPoly::new)
}

fn q_to_int(p: &QPoly) -> Result<IntPoly> {
    p.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
        .ok_or_else(|| InertiaError::Internal("factor of a monic integer polynomial is not integral".into()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut l = 3u64;
    while tried < 6 {
        if is_prime(l) {
            let fp = reduce(f, l);
            if fp_deg(&fp) == n && fp_deg(&fp_gcd(&fp, &fp_derivative(&fp, l), l)) == 0 {
                tried += 1;
                let fs = factor_mod(&fp, l);
                if fs.len() == 1 {
                    return vec![f.clone()];
                }
                if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                    best = Some((l, fs));
                }
            }
        }
        l += 2;
    }
    let (l, modular) = best.expect("a prime of good reduction exists");
    let norm: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2u32).pow(n as u32 + 1) * norm;
    let mut k = 1u32;
    while BigInt::from(l).pow(k) <= bound {
        k += 1;
    }
    let modulus = BigInt::from(l).pow(k);
    let mut lifted = lift_all(f, &modular, l, k);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for s in subsets(lifted.len(), size) {
            let cand = s.iter().fold(IntPoly::from_i64(&[1]), |acc, &i| symmetric_mod(&acc.mul(&lifted[i]), &modulus));
            if let Some(q) = divides_exactly(&rest, &cand) {
                out.push(cand);
                rest = q;
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !s.contains(i)).map(|(_, x)| x).collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out
}

/// Monic irreducible factors over Q of a monic integer polynomial, with
/// repetition, sorted by degree then coefficients.
pub fn factor(f: &IntPoly) -> Result<Vec<IntPoly>> {
    if !f.is_monic() {
        return Err(InertiaError::precondition(format!("polynomial {f} is not monic")));
    }
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let q = f.to_q();
    let g = q.gcd(&q.derivative());
    let mut out = if g.degree() > 0 {
        let gi = q_to_int(&g)?;
        let hi = q_to_int(&q.divrem(&g).0)?;
        let mut v = factor(&gi)?;
        v.extend(factor(&hi)?);
        v
    } else {
        factor_squarefree(f)
    };
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    Ok(factor(f)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn factors_products() {
        // (x^2+1)(x^2-2)(x-3)
        let f = p(&[1, 0, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[-3, 1]));
        let fs = factor(&f).unwrap();
        assert_eq!(fs, vec![p(&[-3, 1]), p(&[-2, 0, 1]), p(&[1, 0, 1])]);
    }

    #[test]
    fn irreducible_swinnerton_dyer() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[5, -1, 1])).unwrap());
    }

    #[test]
    fn repeated_factors() {
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 0, 1]));
        assert_eq!(factor(&f).unwrap(), vec![p(&[-1, 1]), p(&[-1, 1]), p(&[2, 0, 1])]);
    }

    #[test]
    fn patterns() {
        assert_eq!(degree_pattern(&p(&[1, 0, 1]), 3), Some(vec![2]));
        assert_eq!(degree_pattern(&p(&[1, 0, 1]), 5), Some(vec![1, 1]));
        assert_eq!(fp_degree_pattern(&[1, 1, 1], 2), Some(vec![2]));
        assert_eq!(fp_degree_pattern(&[1, 0, 1], 2), None);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        assert_eq!(factor(&p(&c)).unwrap().len(), 6);
    }
}
