//! Burnside–Dixon: simultaneous eigenvectors of the class matrices modulo a
//! prime q ≡ 1 (mod exp G), then lifting of the values to cyclotomic numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{charpoly, nullspace, primitive_element, roots, rref, splitting_prime, Fq};
use crate::error::{InertiaError, Result};
use crate::exactnum::arith::mod_inv;
use crate::exactnum::CycNumber;
use crate::groupkit::FiniteGroup;

const RANDOM_ATTEMPTS: usize = 8;

pub(super) struct ModularTable {
    pub q: u64,
    pub omega: u64,
    /// Character values mod q, one row per character, one entry per class.
    pub rows: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

/// a[j][l][i] = #{x ∈ C_j : x⁻¹ z_i ∈ C_l} for a fixed z_i ∈ C_i.
fn structure_constants(g: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (i, c) in classes.iter().enumerate() {
        let z = c.rep;
        for x in 0..g.order() {
            let j = g.class_of(x);
            let l = g.class_of(g.mul(g.inv(x), z));
            a[j][l][i] += 1;
        }
    }
    a
}

pub(super) fn modular_table(g: &FiniteGroup, seed: u64) -> Result<ModularTable> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let order = g.order() as u64;
    let e = g.exponent();
    let q = splitting_prime(e, 4 * order);
    let f = Fq(q);
    let a = structure_constants(g);
    // (A_j)[l][i] = a[j][l][i]; each A_j acts on the column vector of ω_χ(K_i).
    let mats: Vec<Vec<Vec<u64>>> =
        a.iter().map(|aj| aj.iter().map(|row| row.iter().map(|&x| x % q).collect()).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut pending: Vec<Vec<Vec<u64>>> = vec![identity];
    let mut lines: Vec<Vec<u64>> = Vec::new();
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            lines.push(space.into_iter().next().unwrap());
            continue;
        }
        let pieces = split_space(f, &mats, &space, &mut rng)?;
        pending.extend(pieces);
    }

    let inverse_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c.rep))).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64 % q).collect();
    let mut rows = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for v in lines {
        let inv0 = f.inv(v[0]);
        let v: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        // Σ ω_i ω_{i'} / h_i = |G| / χ(1)²
        let s = (0..k).fold(0, |acc, i| f.add(acc, f.mul(f.mul(v[i], v[inverse_class[i]]), f.inv(sizes[i]))));
        if s == 0 {
            return Err(InertiaError::Internal("degenerate class-algebra eigenvector".into()));
        }
        let d2 = f.mul(order % q, f.inv(s));
        let d = (1..=((order as f64).sqrt() as u64 + 1))
            .find(|&d| d * d % q == d2 && order.is_multiple_of(d))
            .ok_or_else(|| InertiaError::Internal("character degree not recovered".into()))?;
        let row: Vec<u64> = (0..k).map(|i| f.mul(f.mul(v[i], d), f.inv(sizes[i]))).collect();
        rows.push(row);
        degrees.push(d);
    }
    let total: u64 = degrees.iter().map(|d| d * d).sum();
    if total != order {
        return Err(InertiaError::Internal(format!("sum of squared degrees is {total}, expected {order}")));
    }
    let omega = f.pow(primitive_element(f), (q - 1) / e);
    Ok(ModularTable { q, omega, rows, degrees })
}

/// Splits a common invariant subspace (given by a basis of row vectors) into
/// eigenspaces of some class matrix.
fn split_space(f: Fq, mats: &[Vec<Vec<u64>>], space: &[Vec<u64>], rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Vec<u64>>>> {
    let k = mats.len();
    let mut basis = space.to_vec();
    let pivots = rref(f, &mut basis);
    let dim = basis.len();
    let apply = |m: &Vec<Vec<u64>>, v: &[u64]| -> Vec<u64> {
        (0..k).map(|l| (0..k).fold(0, |acc, i| f.add(acc, f.mul(m[l][i], v[i])))).collect()
    };
    let restrict = |m: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        // column t holds the coordinates of M·b_t
        let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(m, b)).collect();
        (0..dim).map(|s| (0..dim).map(|t| images[t][pivots[s]]).collect()).collect()
    };
    let candidates = (0..RANDOM_ATTEMPTS)
        .map(|_| {
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..f.0)).collect();
            let mut m = vec![vec![0u64; k]; k];
            for (c, a) in coeffs.iter().zip(mats) {
                for l in 0..k {
                    for i in 0..k {
                        m[l][i] = f.add(m[l][i], f.mul(*c, a[l][i]));
                    }
                }
            }
            m
        })
        .chain(mats.iter().cloned());
    for m in candidates {
        let r = restrict(&m);
        let eigen = roots(f, &charpoly(f, &r));
        if eigen.len() < 2 {
            continue;
        }
        let mut pieces = Vec::new();
        for lambda in eigen {
            let shifted: Vec<Vec<u64>> = r
                .iter()
                .enumerate()
                .map(|(s, row)| {
                    row.iter().enumerate().map(|(t, &x)| if s == t { f.sub(x, lambda) } else { x }).collect()
                })
                .collect();
            let piece: Vec<Vec<u64>> = nullspace(f, &shifted)
                .into_iter()
                .map(|y| (0..k).map(|c| (0..dim).fold(0, |acc, t| f.add(acc, f.mul(y[t], basis[t][c])))).collect())
                .collect();
            pieces.push(piece);
        }
        return Ok(pieces);
    }
    Err(InertiaError::TableDidNotConverge)
}

/// Lifts a modular character row to exact values, by recovering eigenvalue
/// multiplicities on each cyclic subgroup.
pub(super) fn lift_row(g: &FiniteGroup, t: &ModularTable, row: &[u64]) -> Result<Vec<CycNumber>> {
    let f = Fq(t.q);
    let e = g.exponent();
    let degree = row[0];
    g.conjugacy_classes()
        .iter()
        .map(|c| {
            let o = g.element_order(c.rep);
            let z = f.pow(t.omega, e / o);
            let inv_o = f.inv(o % t.q);
            let chi_pows: Vec<u64> = (0..o).map(|j| row[g.class_of(g.pow(c.rep, j))]).collect();
            let zinv = f.inv(z);
            let mut mults = vec![0u64; o as usize];
            for (r, slot) in mults.iter_mut().enumerate() {
                let step = f.pow(zinv, r as u64);
                let mut w = 1u64;
                let mut acc = 0u64;
                for &x in &chi_pows {
                    acc = f.add(acc, f.mul(x, w));
                    w = f.mul(w, step);
                }
                let m = f.mul(acc, inv_o);
                if m > degree {
                    return Err(InertiaError::Internal("eigenvalue multiplicity out of range while lifting".into()));
                }
                *slot = m;
            }
            Ok(CycNumber::from_root_powers(o, &mults))
        })
        .collect()
}

/// Reduction of an exact value mod q under ζ_e ↦ ω.
pub(super) fn reduce_mod_q(x: &CycNumber, q: u64, omega: u64, e: u64) -> Option<u64> {
    let f = Fq(q);
    let n = x.conductor();
    let z = f.pow(omega, e / n);
    let mut acc = 0;
    for (i, c) in x.coeffs().iter().enumerate() {
        let num = c.numer().to_string().parse::<i128>().ok()?;
        let den = c.denom().to_string().parse::<i128>().ok()?;
        let num = num.rem_euclid(q as i128) as u64;
        let den = mod_inv(den.rem_euclid(q as i128) as u64, q)?;
        acc = f.add(acc, f.mul(f.mul(num, den), f.pow(z, i as u64)));
    }
    Some(acc)
}
