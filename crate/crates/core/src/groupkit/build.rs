//! Group constructors. Every constructor returns a validated table.

use std::collections::HashMap;

use super::{check_order, ActionSpec, FiniteGroup};
use crate::error::{InertiaError, Result};

fn bad(msg: impl Into<String>) -> InertiaError {
    InertiaError::precondition(msg)
}

pub fn from_table(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = rows.len();
    if n == 0 {
        return Err(bad("empty multiplication table"));
    }
    check_order(n)?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(bad("multiplication table is not square"));
    }
    for (i, row) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for &x in row {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(bad(format!("row {i} is not a permutation")));
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in rows {
            if std::mem::replace(&mut seen[row[j]], true) {
                return Err(bad(format!("column {j} is not a permutation")));
            }
        }
    }
    if (0..n).any(|x| rows[0][x] != x || rows[x][0] != x) {
        return Err(bad("element 0 is not the identity"));
    }
    let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
    let g = FiniteGroup::from_trusted_table(n, table, Vec::new());
    // Light's test: associativity on a generating set suffices.
    for &s in g.generators() {
        for x in 0..n {
            let xs = g.mul(x, s);
            for y in 0..n {
                if g.mul(xs, y) != g.mul(x, g.mul(s, y)) {
                    return Err(bad("multiplication table is not associative"));
                }
            }
        }
    }
    Ok(g)
}

pub fn from_permutations(degree: Option<usize>, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
    let d = degree.unwrap_or_else(|| gens.iter().map(|g| g.len()).max().unwrap_or(0));
    for (i, g) in gens.iter().enumerate() {
        let mut seen = vec![false; d];
        if g.len() != d || g.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
            return Err(bad(format!("generator {i} is not a permutation of 0..{d}")));
        }
    }
    let identity: Vec<usize> = (0..d).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut i = 0;
    // composition: (a·b)(k) = b(a(k)), i.e. apply a first
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&k| b[k]).collect() };
    while i < elems.len() {
        for g in gens {
            let y = compose(&elems[i], g);
            if !index.contains_key(&y) {
                check_order(elems.len() + 1)?;
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
        }
    }
    let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).filter(|&x| x != 0).collect();
    Ok(FiniteGroup::from_trusted_table(n, table, gen_idx))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(bad("cyclic group order must be positive"));
    }
    check_order(n)?;
    let table: Vec<u32> = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    let gens = if n > 1 { vec![1] } else { Vec::new() };
    Ok(FiniteGroup::from_trusted_table(n, table, gens))
}

/// Dihedral group of order 2n; element r^a s^b has index b·n + a.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(bad("dihedral parameter must be positive"));
    }
    let order = 2 * n;
    check_order(order)?;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table[x * order + y] = (((b + d) % 2) * n + rot) as u32;
        }
    }
    let gens = if n > 1 { vec![1, n] } else { vec![n] };
    Ok(FiniteGroup::from_trusted_table(order, table, gens))
}

/// Generalized quaternion group ⟨x, y | x^{h} = 1, y² = x^{h/2}, yxy⁻¹ = x⁻¹⟩
/// of order 2h; x^a y^b has index b·h + a.
pub fn gen_quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(bad("generalized quaternion order must be a power of 2, at least 8"));
    }
    check_order(order)?;
    let h = order / 2;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (a, b) = (x % h, x / h);
        for y in 0..order {
            let (c, d) = (y % h, y / h);
            let mut e = if b == 0 { a + c } else { a + h - c };
            let mut f = b + d;
            if f == 2 {
                f = 0;
                e += h / 2;
            }
            table[x * order + y] = (f * h + e % h) as u32;
        }
    }
    Ok(FiniteGroup::from_trusted_table(order, table, vec![1, h]))
}

/// G1 × G2 with (g1, g2) at index i1·|G2| + i2.
pub fn direct(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    check_order(n)?;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a1, a2) = (x / n2, x % n2);
        for y in 0..n {
            let (b1, b2) = (y / n2, y % n2);
            table[x * n + y] = (g1.mul(a1, b1) * n2 + g2.mul(a2, b2)) as u32;
        }
    }
    let mut gens: Vec<usize> = g1.generators().iter().map(|&g| g * n2).collect();
    gens.extend(g2.generators().iter().copied());
    Ok(FiniteGroup::from_trusted_table(n, table, gens))
}

/// Extends generator images to a full map and checks it is an automorphism.
fn automorphism_from_images(g: &FiniteGroup, images: &[usize]) -> Result<Vec<usize>> {
    let gens = g.generators();
    if images.len() != gens.len() {
        return Err(bad(format!("action needs {} generator images, got {}", gens.len(), images.len())));
    }
    if images.iter().any(|&x| x >= g.order()) {
        return Err(bad("action image out of range"));
    }
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let img = g.mul(phi[x], images[k]);
            if phi[y] == usize::MAX {
                phi[y] = img;
                queue.push(y);
            } else if phi[y] != img {
                return Err(bad("action is not a homomorphism"));
            }
        }
        i += 1;
    }
    check_automorphism(g, &phi)?;
    Ok(phi)
}

fn check_automorphism(g: &FiniteGroup, phi: &[usize]) -> Result<()> {
    let n = g.order();
    let mut seen = vec![false; n];
    for &y in phi {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(bad("action is not bijective"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if phi[g.mul(a, b)] != g.mul(phi[a], phi[b]) {
                return Err(bad("action is not a homomorphism"));
            }
        }
    }
    Ok(())
}

/// N ⋊ Z/m with (x, j) at index j·|N| + x and (x,i)(y,j) = (x·φ^i(y), i+j).
pub fn semidirect(normal: &FiniteGroup, m: usize, action: &ActionSpec) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(bad("acting cyclic group order must be positive"));
    }
    let n = normal.order();
    let order = n * m;
    check_order(order)?;
    let phi = match action {
        ActionSpec::Images { images } => automorphism_from_images(normal, images)?,
        ActionSpec::Power { power } => {
            let e = normal.exponent() as i64;
            let k = power.rem_euclid(e.max(1)) as u64;
            let phi: Vec<usize> = (0..n).map(|x| normal.pow(x, k)).collect();
            check_automorphism(normal, &phi)?;
            phi
        }
    };
    let mut powers: Vec<Vec<usize>> = vec![(0..n).collect()];
    for i in 1..=m {
        let prev = &powers[i - 1];
        powers.push(prev.iter().map(|&x| phi[x]).collect());
    }
    if powers[m].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(bad(format!("action order does not divide {m}")));
    }
    let mut table = vec![0u32; order * order];
    for u in 0..order {
        let (x, i) = (u % n, u / n);
        for v in 0..order {
            let (y, j) = (v % n, v / n);
            table[u * order + v] = (((i + j) % m) * n + normal.mul(x, powers[i][y])) as u32;
        }
    }
    let mut gens: Vec<usize> = normal.generators().to_vec();
    if m > 1 {
        gens.push(n);
    }
    Ok(FiniteGroup::from_trusted_table(order, table, gens))
}

/// (H × H) ⋊ Z/2 with the generator swapping the two coordinates.
pub fn wreath_c2(h: &FiniteGroup) -> Result<FiniteGroup> {
    let base = direct(h, h)?;
    let k = h.order();
    let swap: Vec<usize> = (0..base.order()).map(|x| (x % k) * k + x / k).collect();
    let images: Vec<usize> = base.generators().iter().map(|&g| swap[g]).collect();
    semidirect(&base, 2, &ActionSpec::Images { images })
}
