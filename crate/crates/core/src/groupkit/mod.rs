//! Finite groups as multiplication tables: construction, conjugacy classes,
//! kernels and the ramification-group recognizer.

mod build;
mod spec;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{InertiaError, Result};
use crate::exactnum::arith::{factorize, is_prime, lcm};

pub use spec::{ActionSpec, GroupSpec};

const DEFAULT_MAX_ORDER: usize = 2000;

/// The group-order ceiling, overridable through `INERTIA_MAX_ORDER`.
pub fn max_order() -> usize {
    std::env::var("INERTIA_MAX_ORDER").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_ORDER)
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    let max = max_order();
    if order > max {
        Err(InertiaError::GroupTooLarge { order, max })
    } else {
        Ok(())
    }
}

/// A conjugacy class with its smallest element as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: usize,
    pub elements: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

/// A finite group on the indices `0..order`, with 0 the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    label: Option<String>,
    classes: OnceLock<ClassData>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            inverses: self.inverses.clone(),
            generators: self.generators.clone(),
            label: self.label.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl FiniteGroup {
    /// Trusted constructor: `table` must already be a group law with identity 0.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u32>, generators: Vec<usize>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).expect("inverse exists");
            inverses[a] = b as u32;
        }
        let mut g =
            FiniteGroup { order, table, inverses, generators: Vec::new(), label: None, classes: OnceLock::new() };
        g.generators = if generators.is_empty() { g.greedy_generators() } else { generators };
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1, |acc, g| lcm(acc, self.element_order(g)))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|g| self.element_order(g) == self.order as u64)
    }

    /// Closure of a set of elements under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for g in 0..self.order {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.subgroup_generated(&gens);
                if span.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let mut class_of = vec![usize::MAX; self.order];
            let mut classes = Vec::new();
            for x in 0..self.order {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let idx = classes.len();
                class_of[x] = idx;
                let mut elements = vec![x];
                let mut i = 0;
                while i < elements.len() {
                    let y = elements[i];
                    for &g in &self.generators {
                        let z = self.conjugate(g, y);
                        if class_of[z] == usize::MAX {
                            class_of[z] = idx;
                            elements.push(z);
                        }
                    }
                    i += 1;
                }
                elements.sort_unstable();
                classes.push(ConjClass { rep: x, elements });
            }
            ClassData { classes, class_of }
        })
    }

    /// Conjugacy classes ordered by smallest element; class 0 is the identity.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_data().class_of[g]
    }

    /// The normal closure of a set of elements.
    pub fn normal_closure(&self, elems: &[usize]) -> NormalSubgroup {
        let mut gens: BTreeSet<usize> = BTreeSet::new();
        for &e in elems {
            gens.extend(self.conjugacy_classes()[self.class_of(e)].elements.iter().copied());
        }
        let gens: Vec<usize> = gens.into_iter().collect();
        NormalSubgroup { elements: self.subgroup_generated(&gens) }
    }

    pub fn trivial_subgroup(&self) -> NormalSubgroup {
        NormalSubgroup { elements: vec![0] }
    }

    pub fn whole(&self) -> NormalSubgroup {
        NormalSubgroup { elements: (0..self.order).collect() }
    }

    /// Wraps a set of elements after checking it is a normal subgroup.
    pub fn normal_subgroup(&self, elements: Vec<usize>) -> Result<NormalSubgroup> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        let contains = |x: usize| elements.binary_search(&x).is_ok();
        if !contains(0) {
            return Err(InertiaError::precondition("subgroup must contain the identity"));
        }
        for &a in &elements {
            for &b in &elements {
                if !contains(self.mul(a, b)) {
                    return Err(InertiaError::precondition("set is not closed under multiplication"));
                }
            }
            for &g in &self.generators {
                if !contains(self.conjugate(g, a)) {
                    return Err(InertiaError::precondition("subgroup is not normal"));
                }
            }
        }
        Ok(NormalSubgroup { elements })
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// embedding `new index → old index` (identity first).
    pub fn subgroup_as_group(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut emb: Vec<usize> = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        let n = emb.len();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in emb.iter().enumerate() {
            pos[e] = i;
        }
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos[self.mul(emb[i], emb[j])] as u32;
            }
        }
        (FiniteGroup::from_trusted_table(n, table, Vec::new()), emb)
    }

    /// Dense multiplication table, rows indexed by the left factor.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }
}

/// A normal subgroup, stored as a sorted set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalSubgroup {
    elements: Vec<usize>,
}

impl NormalSubgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn intersect(&self, other: &NormalSubgroup) -> NormalSubgroup {
        NormalSubgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        NormalSubgroup { elements }
    }
}

/// Intersection of the given kernels; the empty intersection is `G`.
pub fn joint_kernel(g: &FiniteGroup, kernels: &[&NormalSubgroup]) -> NormalSubgroup {
    kernels.iter().fold(g.whole(), |acc, k| acc.intersect(k))
}

/// A decomposition G = Γ_p ⋊ ⟨c⟩ with |⟨c⟩| = n coprime to p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationDecomposition {
    pub p: u64,
    /// The normal Sylow p-subgroup (trivial when p = 0).
    pub sylow: NormalSubgroup,
    pub sylow_order: usize,
    /// Generator of the cyclic complement.
    pub complement_generator: usize,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamificationCheck {
    Yes(RamificationDecomposition),
    No(String),
}

impl RamificationCheck {
    pub fn decomposition(&self) -> Option<&RamificationDecomposition> {
        match self {
            RamificationCheck::Yes(d) => Some(d),
            RamificationCheck::No(_) => None,
        }
    }
}

/// Decides whether `g` is of the form Γ_p ⋊ Z/n with Γ_p a p-group and
/// gcd(n, p) = 1. For p = 0 this means `g` is cyclic.
pub fn ramification_check(g: &FiniteGroup, p: u64) -> Result<RamificationCheck> {
    let order = g.order() as u64;
    if p == 0 {
        return Ok(match (0..g.order()).find(|&x| g.element_order(x) == order) {
            Some(c) => RamificationCheck::Yes(RamificationDecomposition {
                p: 0,
                sylow: g.trivial_subgroup(),
                sylow_order: 1,
                complement_generator: c,
                n: order,
            }),
            None => RamificationCheck::No("p = 0 requires a cyclic group".into()),
        });
    }
    if !is_prime(p) {
        return Err(InertiaError::precondition(format!("{p} is not prime")));
    }
    let pa: u64 = factorize(order).into_iter().filter(|&(q, _)| q == p).map(|(q, e)| q.pow(e)).product();
    let p_elements: Vec<usize> = (0..g.order())
        .filter(|&x| {
            let o = g.element_order(x);
            factorize(o).iter().all(|&(q, _)| q == p)
        })
        .collect();
    if p_elements.len() as u64 != pa {
        return Ok(RamificationCheck::No(format!("the Sylow {p}-subgroup is not normal")));
    }
    let n = order / pa;
    match (0..g.order()).find(|&x| g.element_order(x) == n) {
        Some(c) => Ok(RamificationCheck::Yes(RamificationDecomposition {
            p,
            sylow: NormalSubgroup::from_sorted(p_elements),
            sylow_order: pa as usize,
            complement_generator: c,
            n,
        })),
        None => Ok(RamificationCheck::No(format!("no cyclic complement of order {n} to the Sylow {p}-subgroup"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn q8_classes() {
        let g = GroupSpec::GenQuaternion { order: 8 }.build().unwrap();
        assert_eq!(class_sizes(&g), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn dihedral_13_classes() {
        let g = GroupSpec::Dihedral { n: 13 }.build().unwrap();
        assert_eq!(g.order(), 26);
        assert_eq!(g.conjugacy_classes().len(), 8);
    }

    #[test]
    fn ramification_examples() {
        let d13 = GroupSpec::Dihedral { n: 13 }.build().unwrap();
        let r = ramification_check(&d13, 13).unwrap();
        let d = r.decomposition().unwrap();
        assert_eq!((d.sylow_order, d.n), (13, 2));

        let s4 =
            GroupSpec::Perm { degree: Some(4), generators: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]] }.build().unwrap();
        assert_eq!(s4.order(), 24);
        assert!(matches!(ramification_check(&s4, 2).unwrap(), RamificationCheck::No(_)));
        assert!(matches!(ramification_check(&s4, 0).unwrap(), RamificationCheck::No(_)));
    }

    #[test]
    fn empty_joint_kernel_is_everything() {
        let g = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        assert_eq!(joint_kernel(&g, &[]).order(), 6);
    }
}
