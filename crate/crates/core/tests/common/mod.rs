#![allow(dead_code)]

use inertia_core::groupkit::{ActionSpec, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cyclic(n: usize) -> GroupSpec {
    GroupSpec::Cyclic { n }
}

pub fn semidirect(m: usize, k: usize, power: i64) -> GroupSpec {
    GroupSpec::Semidirect { normal: Box::new(cyclic(m)), m: k, action: ActionSpec::Power { power } }
}

pub fn wreath(base: GroupSpec) -> GroupSpec {
    GroupSpec::WreathC2 { base: Box::new(base) }
}

/// Heisenberg group mod 3 acting on Z/3 × Z/3, optionally with the
/// involution (i, j) ↦ (−i, j).
pub fn heisenberg3(with_involution: bool) -> GroupSpec {
    let pt = |i: usize, j: usize| 3 * (i % 3) + j % 3;
    let mut x = vec![0; 9];
    let mut y = vec![0; 9];
    let mut z = vec![0; 9];
    for i in 0..3 {
        for j in 0..3 {
            x[pt(i, j)] = pt(i + 1, j);
            y[pt(i, j)] = pt(i, j + i);
            z[pt(i, j)] = pt(3 - i, j);
        }
    }
    let mut generators = vec![x, y];
    if with_involution {
        generators.push(z);
    }
    GroupSpec::Perm { degree: Some(9), generators }
}

pub fn sl23() -> GroupSpec {
    GroupSpec::Semidirect {
        normal: Box::new(GroupSpec::GenQuaternion { order: 8 }),
        m: 3,
        action: ActionSpec::Images { images: vec![4, 5] },
    }
}

/// Ramification groups with a prime at which they ramify.
pub fn corpus() -> Vec<(&'static str, GroupSpec, u64)> {
    vec![
        ("Z2", cyclic(2), 2),
        ("Z4", cyclic(4), 2),
        ("Z5", cyclic(5), 5),
        ("Z6", cyclic(6), 3),
        ("Z8", cyclic(8), 2),
        ("Z9", cyclic(9), 3),
        ("Z12", cyclic(12), 3),
        ("Z15", cyclic(15), 5),
        ("Z21", cyclic(21), 7),
        ("D3", GroupSpec::Dihedral { n: 3 }, 3),
        ("D4", GroupSpec::Dihedral { n: 4 }, 2),
        ("D5", GroupSpec::Dihedral { n: 5 }, 5),
        ("D7", GroupSpec::Dihedral { n: 7 }, 7),
        ("D9", GroupSpec::Dihedral { n: 9 }, 3),
        ("D13", GroupSpec::Dihedral { n: 13 }, 13),
        ("Q8", GroupSpec::GenQuaternion { order: 8 }, 2),
        ("Q16", GroupSpec::GenQuaternion { order: 16 }, 2),
        ("Q32", GroupSpec::GenQuaternion { order: 32 }, 2),
        ("Z7:Z3", semidirect(7, 3, 2), 7),
        ("Z7:Z9", semidirect(7, 9, 2), 7),
        ("Z3:Z4", semidirect(3, 4, 2), 3),
        ("Z3:Z8", semidirect(3, 8, 2), 3),
        ("Z5:Z4", semidirect(5, 4, 2), 5),
        ("Z5:Z8", semidirect(5, 8, 2), 5),
        ("Z11:Z5", semidirect(11, 5, 3), 11),
        ("Z13:Z4", semidirect(13, 4, 5), 13),
        ("3^(1+2)", heisenberg3(false), 3),
        ("3^(1+2):Z2", heisenberg3(true), 3),
        ("SL(2,3)", sl23(), 2),
        ("Z2 wr C2", wreath(cyclic(2)), 2),
        ("Z4 wr C2", wreath(cyclic(4)), 2),
        ("Z3 wr C2", wreath(cyclic(3)), 3),
        ("Q8 wr C2", wreath(GroupSpec::GenQuaternion { order: 8 }), 2),
    ]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Small groups drawn from the constructors, deterministic in `seed`.
pub fn random_groups(count: usize, seed: u64) -> Vec<GroupSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let spec = match rng.gen_range(0..6) {
            0 => cyclic(rng.gen_range(1..=40)),
            1 => GroupSpec::Dihedral { n: rng.gen_range(2..=20) },
            2 => GroupSpec::GenQuaternion { order: [8, 16, 32][rng.gen_range(0..3)] },
            3 => GroupSpec::Direct {
                factors: vec![cyclic(rng.gen_range(1..=6)), GroupSpec::Dihedral { n: rng.gen_range(2..=5) }],
            },
            4 => {
                let m: u64 = rng.gen_range(3..=15);
                let k: u64 = rng.gen_range(2..=8);
                let rs: Vec<u64> =
                    (2..m).filter(|&r| gcd(r, m) == 1 && (0..k).fold(1u64, |acc, _| acc * r % m) == 1).collect();
                if rs.is_empty() {
                    continue;
                }
                semidirect(m as usize, k as usize, rs[rng.gen_range(0..rs.len())] as i64)
            }
            _ => wreath(cyclic(rng.gen_range(2..=4))),
        };
        out.push(spec);
    }
    out
}
