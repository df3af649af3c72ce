use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{half, AlgebraDescriptor, LocalInvariant, Place};
use crate::error::{InertiaError, Result};
use crate::exactnum::arith::{factorize, gcd, lcm, mod_pow, mult_order, primitive_root};
use crate::exactnum::{CycNumber, Rat, SubfieldDesc};

/// A cyclic group Z/m acting on a product of simple algebras: the generator
/// sends factor i to factor `permutation[i]`, twisting its center by
/// σ_{field_action[i]} (exponents are units modulo `modulus`).
#[derive(Clone, Debug)]
pub struct TwistAction {
    pub base: Vec<AlgebraDescriptor>,
    /// Whether each base factor is the image of a linear character.
    pub linear: Vec<bool>,
    pub order: u64,
    pub permutation: Vec<usize>,
    pub field_action: Vec<u64>,
    pub modulus: u64,
    /// y^{m/n} for the residual action; a root of unity in the fixed field.
    pub cocycle_root: CycNumber,
    pub p: u64,
}

/// One cycle of the permutation together with the residual twist on its
/// first member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTwist {
    pub members: Vec<usize>,
    pub residual_order: u64,
    /// Exponent of the residual field automorphism, modulo the action's modulus.
    pub exponent: u64,
}

/// Splits the base factors into cycles. A cycle of length k leaves a twist
/// of order m/k on its first member.
pub fn orbit_split(action: &TwistAction) -> Result<Vec<OrbitTwist>> {
    let k = action.base.len();
    if action.permutation.len() != k || action.field_action.len() != k {
        return Err(InertiaError::precondition("twist action data has inconsistent lengths"));
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut exponent = 1 % action.modulus.max(1);
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            members.push(i);
            exponent = exponent * (action.field_action[i] % action.modulus.max(1)) % action.modulus.max(1);
            i = action.permutation[i];
            if i >= k {
                return Err(InertiaError::precondition("permutation index out of range"));
            }
        }
        if i != start {
            return Err(InertiaError::precondition("twist permutation is not a bijection"));
        }
        let len = members.len() as u64;
        if !action.order.is_multiple_of(len) {
            return Err(InertiaError::precondition(format!(
                "cycle of length {len} does not divide the order {}",
                action.order
            )));
        }
        out.push(OrbitTwist { members, residual_order: action.order / len, exponent });
    }
    Ok(out)
}

/// Writes a root of unity as ζ_s^b.
fn root_of_unity_exponent(c: &CycNumber) -> Option<(u64, u64)> {
    let s = lcm(2, c.conductor());
    (0..s).find(|&b| CycNumber::root_of_unity(s, b) == *c).map(|b| (s, b))
}

/// Order of σ_k on the field `f`.
fn action_order(f: &SubfieldDesc, k: u64) -> u64 {
    let n = f.conductor();
    if n == 1 {
        return 1;
    }
    let h: BTreeSet<u64> = f.stabilizer().iter().copied().collect();
    let k = k % n;
    let mut x = k;
    let mut t = 1;
    while !h.contains(&x) {
        x = x * k % n;
        t += 1;
    }
    t
}

/// Lifts a unit mod `from` to a unit mod `to` (a multiple of `from`) with the
/// same residue.
fn lift_unit(k: u64, from: u64, to: u64) -> u64 {
    let from = from.max(1);
    (0..to / from).map(|t| k % from + t * from).find(|&x| gcd(x, to) == 1).unwrap_or(1)
}

/// Teichmüller representative of x modulo p^e.
fn teichmuller(x: u64, p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    mod_pow(x, p.pow(e.saturating_sub(1)), pe)
}

/// The simple factors of E[m, τ] where τ = σ_k on the center of E, the
/// generator's n-th power (n the order of τ) acts by an inner automorphism,
/// and the resulting central element has r-th power `cocycle_root`.
pub fn cyclic_twist_factor(
    e: &AlgebraDescriptor,
    linear: bool,
    m: u64,
    exponent: u64,
    modulus: u64,
    cocycle_root: &CycNumber,
    p: u64,
) -> Result<Vec<AlgebraDescriptor>> {
    let f = &e.center;
    if !modulus.is_multiple_of(f.conductor()) {
        return Err(InertiaError::precondition("field action modulus must be a multiple of the conductor"));
    }
    let n0 = action_order(f, exponent);
    if !m.is_multiple_of(n0) {
        return Err(InertiaError::precondition(format!("field action of order {n0} does not divide {m}")));
    }
    let ft = f.fixed_by(exponent, modulus);
    let (s, b) = root_of_unity_exponent(cocycle_root)
        .ok_or_else(|| InertiaError::precondition("cocycle root must be a root of unity"))?;
    if !ft.contains(cocycle_root) {
        return Err(InertiaError::precondition("cocycle root is not fixed by the action"));
    }
    let r = m / n0;
    let big_r = r * s;
    let stab = ft.stabilizer_in(lcm(ft.conductor(), big_r));
    let roots: BTreeSet<u64> = (0..r).map(|i| (b + s * i) % big_r).collect();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut out = Vec::new();
    for &x in &roots {
        if seen.contains(&x) {
            continue;
        }
        for &k in &stab {
            seen.insert(x * (k % big_r) % big_r);
        }
        let g = gcd(x, big_r);
        let d = big_r / g;
        let a = (x / g) % d.max(1);
        let l = ft.compositum(&SubfieldDesc::cyclotomic(d));
        let degree = n0 * e.degree;
        let factor = if n0 == 1 {
            e.extend_center(&l, p)
        } else if e.pending || !linear {
            AlgebraDescriptor::pending(l, degree)
        } else {
            linear_cyclic_algebra(f, exponent, n0, &l, d, a, p).unwrap_or_else(|| AlgebraDescriptor::pending(l, degree))
        };
        out.push(factor);
    }
    Ok(out)
}

/// The cyclic algebra (K/L, σ, ζ_d^a) with K = F·L, σ|_F = σ_J of order n0,
/// for F inside Q(ζ_{p^∞}). Returns `None` when outside this shape.
fn linear_cyclic_algebra(
    f: &SubfieldDesc,
    j_exp: u64,
    n0: u64,
    l: &SubfieldDesc,
    d: u64,
    a: u64,
    p: u64,
) -> Option<AlgebraDescriptor> {
    let k_field = f.compositum(l);
    if k_field.degree() != l.degree() * n0 {
        return None;
    }
    let pe = f.conductor();
    let fac = factorize(pe);
    if fac.len() != 1 || fac[0].0 != p {
        return None;
    }
    let e = fac[0].1;
    let h_f: BTreeSet<u64> = f.stabilizer().iter().copied().collect();
    let mut invariants = Vec::new();
    if d == 2 && !f.is_totally_real() {
        for w in l.real_places() {
            invariants.push(LocalInvariant::new(Place::from_info(&w), half()));
        }
    }
    let f_loc = if d <= 1 { 1 } else { mult_order(p % d, d) };
    let big = lcm(l.conductor(), d);
    let g = primitive_root(p);
    for w in l.places_over(p) {
        let k = lift_unit(w.rep, l.conductor(), big) % d.max(1);
        // N_{L_w/Q_p}(ζ_d^a) as a power of the primitive root g mod p
        let q_mod = mod_pow(p, f_loc, d * (p - 1).max(1));
        let q_over_d = ((q_mod + d * (p - 1).max(1) - 1) % (d * (p - 1).max(1))) / d;
        let ratio = w.local_degree / f_loc;
        let pm1 = (p - 1).max(1) as u128;
        let expo =
            (k as u128 % pm1) * (a as u128 % pm1) % pm1 * (ratio as u128 % pm1) % pm1 * (q_over_d as u128 % pm1) % pm1;
        let base = mod_pow(g, expo as u64, p);
        let t = teichmuller(base, p, e);
        let target_ok = |x: u64| h_f.contains(&(x % pe));
        let mut x = t % pe;
        let mut j = None;
        for step in 0..n0 {
            if target_ok(x) {
                j = Some(step);
                break;
            }
            x = x * (j_exp % pe) % pe;
        }
        let j = j?;
        invariants.push(LocalInvariant::new(Place::from_info(&w), Rat::new(BigInt::from(j), BigInt::from(n0))));
    }
    Some(AlgebraDescriptor::with_invariants(l.clone(), n0, invariants))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> AlgebraDescriptor {
        AlgebraDescriptor::split(SubfieldDesc::rationals(), 1)
    }

    fn action(base: Vec<AlgebraDescriptor>, perm: Vec<usize>, m: u64) -> TwistAction {
        let k = base.len();
        TwistAction {
            linear: vec![true; k],
            base,
            order: m,
            permutation: perm,
            field_action: vec![1; k],
            modulus: 1,
            cocycle_root: CycNumber::one(),
            p: 2,
        }
    }

    #[test]
    fn swap_gives_one_orbit() {
        let split = orbit_split(&action(vec![q(), q()], vec![1, 0], 2)).unwrap();
        assert_eq!(split.len(), 1);
        assert_eq!(split[0].members, vec![0, 1]);
        assert_eq!(split[0].residual_order, 1);
    }

    #[test]
    fn identity_gives_fixed_orbits() {
        let split = orbit_split(&action(vec![q(), q()], vec![0, 1], 2)).unwrap();
        assert_eq!(split.len(), 2);
        assert!(split.iter().all(|o| o.residual_order == 2));
    }

    #[test]
    fn trivial_twist_of_q() {
        let f = cyclic_twist_factor(&q(), true, 2, 1, 1, &CycNumber::one(), 3).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|a| a.center.is_rational() && a.degree == 1));
    }

    #[test]
    fn conjugation_on_q_zeta13() {
        let e = AlgebraDescriptor::split(SubfieldDesc::cyclotomic(13), 1);
        let f = cyclic_twist_factor(&e, true, 2, 12, 13, &CycNumber::one(), 13).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].center, SubfieldDesc::from_generators(13, &[12]));
        assert_eq!(f[0].matrix_size(), Some(2));
    }

    #[test]
    fn quaternion_from_z3_by_z4() {
        let e = AlgebraDescriptor::split(SubfieldDesc::cyclotomic(3), 1);
        let f = cyclic_twist_factor(&e, true, 4, 2, 3, &CycNumber::one(), 3).unwrap();
        assert_eq!(f.len(), 2);
        let indices: Vec<Option<u64>> = f.iter().map(|a| a.index()).collect();
        assert!(indices.contains(&Some(1)) && indices.contains(&Some(2)));
        let h = f.iter().find(|a| a.index() == Some(2)).unwrap();
        assert_eq!(h.invariants.len(), 2);
        assert_eq!(h.invariant_sum(), Rat::from_integer(0.into()));
    }

    #[test]
    fn index_three_from_z7_by_z9() {
        let e = AlgebraDescriptor::split(SubfieldDesc::cyclotomic(7), 1);
        let f = cyclic_twist_factor(&e, true, 9, 2, 7, &CycNumber::one(), 7).unwrap();
        let third = f.iter().find(|a| a.index() == Some(3)).expect("index 3 factor");
        assert_eq!(third.center.degree(), 4);
        let vals: Vec<String> = third.invariants.iter().map(|i| crate::exactnum::fmt_rat(&i.value)).collect();
        assert_eq!(vals, vec!["1/3", "2/3"]);
    }

    #[test]
    fn rejects_bad_cocycle_root() {
        let e = AlgebraDescriptor::split(SubfieldDesc::cyclotomic(13), 1);
        let c = CycNumber::root_of_unity(13, 1);
        assert!(cyclic_twist_factor(&e, true, 2, 12, 13, &c, 13).is_err());
        assert!(cyclic_twist_factor(&e, true, 3, 12, 13, &CycNumber::one(), 13).is_err());
    }
}
