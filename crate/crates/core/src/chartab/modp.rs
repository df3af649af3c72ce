//! Linear algebra over a prime field F_q with q < 2^32.

use crate::exactnum::arith::{is_prime, mod_inv, mod_pow};

#[derive(Clone, Copy, Debug)]
pub struct Fq(pub u64);

impl Fq {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b % self.0) % self.0
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    pub fn inv(self, a: u64) -> u64 {
        mod_inv(a, self.0).expect("nonzero element of a field")
    }
    pub fn pow(self, a: u64, e: u64) -> u64 {
        mod_pow(a, e, self.0)
    }
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }
}

/// Smallest prime q ≡ 1 (mod e) with q > bound.
pub fn splitting_prime(e: u64, bound: u64) -> u64 {
    let mut q = (bound / e + 1) * e + 1;
    while !is_prime(q) {
        q += e;
    }
    q
}

/// Row-reduces `rows` in place; returns the pivot columns.
pub fn rref(f: Fq, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let t = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(t, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space of an n×n matrix.
pub fn nullspace(f: Fq, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.first().map_or(0, |r| r.len());
    let mut rows = m.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.sub(0, row[fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI − M), coefficients low to high.
pub fn charpoly(f: Fq, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    // similarity reduction to upper Hessenberg form
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for i in j + 2..n {
            let u = f.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[i][c] = f.sub(h[i][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    // p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j−1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        for (d, &c) in polys[k].iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][k], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Distinct roots in F_q of a polynomial (brute force).
pub fn roots(f: Fq, poly: &[u64]) -> Vec<u64> {
    (0..f.0).filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0).collect()
}

/// A generator of the multiplicative group of F_q.
pub fn primitive_element(f: Fq) -> u64 {
    crate::exactnum::arith::primitive_root(f.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrix() {
        let f = Fq(101);
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let m = vec![vec![2, 1], vec![1, 2]];
        let p = charpoly(f, &m);
        assert_eq!(p, vec![3, 97, 1]);
        assert_eq!(roots(f, &p), vec![1, 3]);
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        let f = Fq(1009);
        let m = vec![vec![1, 2, 3], vec![0, 4, 5], vec![7, 0, 6]];
        let p = charpoly(f, &m);
        assert_eq!(p[3], 1);
        assert_eq!(p[2], f.from_i64(-11));
        // det = 1*(24) - 2*(0-35) + 3*(0-28) = 24 + 70 - 84 = 10, constant = -det
        assert_eq!(p[0], f.from_i64(-10));
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fq(7);
        let m = vec![vec![1, 2], vec![2, 4]];
        let ns = nullspace(f, &m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(f.add(v[0], f.mul(2, v[1])), 0);
    }

    #[test]
    fn prime_search() {
        let q = splitting_prime(8, 100);
        assert_eq!(q % 8, 1);
        assert!(q > 100 && is_prime(q));
    }
}
