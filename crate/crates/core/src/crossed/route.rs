use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::twist::{cyclic_twist_factor, orbit_split, TwistAction};
use super::{half, AlgebraDescriptor, LocalInvariant, Place};
use crate::chartab::{CharacterTable, RationalCharacter};
use crate::error::{InertiaError, Result};
use crate::exactnum::arith::{factorize, units};
use crate::exactnum::{CycNumber, Rat};
use crate::groupkit::{ramification_check, FiniteGroup, GroupSpec, RamificationCheck};

/// Which presentation of Q[G] as a twisted algebra was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Q[Γ_p] twisted by the cyclic complement.
    Complement,
    /// Q[H × H] twisted by the swap of H ≀ Z/2.
    Wreath,
}

#[derive(Clone, Debug)]
pub struct CrossedFactor {
    pub algebra: AlgebraDescriptor,
    /// Base factors (indices into `CrossedDecomposition::base`) in the orbit
    /// this factor sits over.
    pub base: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CrossedDecomposition {
    pub route: Route,
    pub p: u64,
    pub base: Vec<AlgebraDescriptor>,
    pub factors: Vec<CrossedFactor>,
    /// Elements of G forming the base group (Γ_p, or H × H).
    pub base_subgroup: Vec<usize>,
    /// Rational character of each base factor, one value per element of
    /// `base_subgroup`.
    pub base_values: Vec<Vec<Rat>>,
}

impl CrossedDecomposition {
    /// True when every factor has a determined Albert type.
    pub fn supported(&self) -> bool {
        self.factors.iter().all(|f| f.algebra.albert_type().is_some())
    }

    pub fn algebras(&self) -> Vec<AlgebraDescriptor> {
        self.factors.iter().map(|f| f.algebra.clone()).collect()
    }

    pub fn total_dimension(&self) -> u64 {
        self.factors.iter().map(|f| f.algebra.dimension()).sum()
    }
}

fn is_power_of(n: usize, p: u64) -> bool {
    n == 1 || factorize(n as u64).iter().all(|&(q, _)| q == p)
}

/// Simple factors of Q[Γ] for a p-group Γ, from its rational characters.
/// For odd p every nontrivial center must be a full Q(ζ_{p^e}) and every
/// factor split; for p = 2 the quaternionic factors are exactly those with
/// indicator −1.
pub fn qgroup_base(
    gamma: &FiniteGroup,
    p: u64,
    seed: u64,
) -> Result<(CharacterTable, Vec<RationalCharacter>, Vec<AlgebraDescriptor>)> {
    if !is_power_of(gamma.order(), p) {
        return Err(InertiaError::precondition(format!("base group is not a {p}-group")));
    }
    let table = CharacterTable::compute(gamma, seed)?;
    let rcs = table.rational_characters(gamma)?;
    let mut out = Vec::with_capacity(rcs.len());
    for rc in &rcs {
        let f = rc.field.clone();
        if p != 2 {
            let cyclotomic = f.stabilizer().len() == 1 && is_power_of(f.conductor() as usize, p);
            if rc.fs == -1 || !cyclotomic {
                return Err(InertiaError::Internal(format!(
                    "factor over {f} of an odd p-group is not a split cyclotomic algebra"
                )));
            }
            out.push(AlgebraDescriptor::split(f, rc.degree));
        } else if rc.fs == -1 {
            let mut invs: Vec<LocalInvariant> =
                f.real_places().iter().map(|w| LocalInvariant::new(Place::from_info(w), half())).collect();
            for w in f.places_over(p) {
                invs.push(LocalInvariant::new(Place::from_info(&w), Rat::new(w.local_degree.into(), 2.into())));
            }
            out.push(AlgebraDescriptor::with_invariants(f, rc.degree, invs));
        } else {
            out.push(AlgebraDescriptor::split(f, rc.degree));
        }
    }
    Ok((table, rcs, out))
}

fn check_dimension(d: &CrossedDecomposition, order: usize) -> Result<()> {
    let total = d.total_dimension();
    if total != order as u64 {
        return Err(InertiaError::Internal(format!("twisted decomposition has dimension {total}, expected {order}")));
    }
    Ok(())
}

/// Simple factors of Q[G] for G = Γ_p ⋊ ⟨c⟩, computed from the table of Γ_p
/// and the action of c alone.
pub fn crossed_decompose(g: &FiniteGroup, p: u64, seed: u64) -> Result<CrossedDecomposition> {
    let dec = match ramification_check(g, p)? {
        RamificationCheck::Yes(d) => d,
        RamificationCheck::No(reason) => {
            return Err(InertiaError::precondition(format!("not a ramification group at {p}: {reason}")))
        }
    };
    let (gamma, emb) = g.subgroup_as_group(dec.sylow.elements());
    let (table, rcs, base) = qgroup_base(&gamma, if p == 0 { 2 } else { p }, seed)?;
    let c = dec.complement_generator;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in emb.iter().enumerate() {
        pos[x] = i;
    }
    // class of c·x·c⁻¹ for each class rep x of Γ
    let classes = gamma.conjugacy_classes();
    let cmap: Vec<usize> = classes.iter().map(|cl| gamma.class_of(pos[g.conjugate(c, emb[cl.rep])])).collect();
    let conj_char = |i: usize| -> usize {
        let vals = &table.characters[i].values;
        let image: Vec<&CycNumber> = cmap.iter().map(|&c| &vals[c]).collect();
        table
            .characters
            .iter()
            .position(|ch| ch.values.iter().zip(&image).all(|(a, b)| a == *b))
            .expect("conjugate of a character is a character")
    };
    let owner: BTreeMap<usize, usize> =
        rcs.iter().enumerate().flat_map(|(r, rc)| rc.members.iter().map(move |&m| (m, r))).collect();
    let modulus = table.exponent.max(1);
    let ks = units(modulus);
    let mut permutation = Vec::with_capacity(rcs.len());
    let mut field_action = Vec::with_capacity(rcs.len());
    for rc in &rcs {
        let image = conj_char(rc.members[0]);
        let target = owner[&image];
        let first = rcs[target].members[0];
        let j = ks
            .iter()
            .copied()
            .find(|&k| table.galois_image(first, k) == image)
            .ok_or_else(|| InertiaError::Internal("conjugate character is not a Galois conjugate".into()))?;
        permutation.push(target);
        field_action.push(j.max(1));
    }
    let action = TwistAction {
        linear: rcs.iter().map(|r| r.degree == 1).collect(),
        base: base.clone(),
        order: dec.n,
        permutation,
        field_action,
        modulus,
        cocycle_root: CycNumber::one(),
        p,
    };
    let mut factors = Vec::new();
    for orbit in orbit_split(&action)? {
        let rep = orbit.members[0];
        let k = orbit.members.len() as u64;
        let pieces = cyclic_twist_factor(
            &action.base[rep],
            action.linear[rep],
            orbit.residual_order,
            orbit.exponent,
            modulus,
            &action.cocycle_root,
            p,
        )?;
        for mut a in pieces {
            a.degree *= k;
            factors.push(CrossedFactor { algebra: a, base: orbit.members.clone() });
        }
    }
    let base_values =
        rcs.iter().map(|rc| (0..gamma.order()).map(|x| rc.values[gamma.class_of(x)].clone()).collect()).collect();
    let out = CrossedDecomposition { route: Route::Complement, p, base, factors, base_subgroup: emb, base_values };
    check_dimension(&out, g.order())?;
    Ok(out)
}

/// Simple factors of Q[H ≀ Z/2] from the table of the p-group H, using the
/// swap on Q[H × H]. The group elements follow the wreath constructor's
/// indexing, so H × H is the first |H|² elements.
pub fn crossed_decompose_wreath(h: &FiniteGroup, p: u64, seed: u64) -> Result<CrossedDecomposition> {
    let (table, rcs, base_h) = qgroup_base(h, p, seed)?;
    let owner: BTreeMap<usize, usize> =
        rcs.iter().enumerate().flat_map(|(r, rc)| rc.members.iter().map(move |&m| (m, r))).collect();
    let modulus = table.exponent.max(1);
    let ks = units(modulus);
    let k = table.len();
    // Galois orbits of pairs of complex characters
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if seen.contains(&(a, b)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> =
                ks.iter().map(|&s| (table.galois_image(a, s), table.galois_image(b, s))).collect();
            seen.extend(orbit.iter().copied());
            orbits.push(orbit.into_iter().collect());
        }
    }
    let orbit_of = |pair: (usize, usize)| orbits.iter().position(|o| o.contains(&pair)).unwrap();
    let mut base = Vec::with_capacity(orbits.len());
    for o in &orbits {
        let (a, b) = o[0];
        let (ea, eb) = (&base_h[owner[&a]], &base_h[owner[&b]]);
        let field = rcs[owner[&a]].field.compositum(&rcs[owner[&b]].field);
        let xa = ea.extend_center(&field, p);
        let xb = eb.extend_center(&field, p);
        let mut sums: BTreeMap<Place, Rat> = BTreeMap::new();
        for inv in xa.invariants.iter().chain(&xb.invariants) {
            *sums.entry(inv.place.clone()).or_insert_with(Rat::zero) += &inv.value;
        }
        let invs = sums.into_iter().map(|(pl, v)| LocalInvariant::new(pl, v)).collect();
        base.push(AlgebraDescriptor::with_invariants(field, ea.degree * eb.degree, invs));
    }
    let mut factors = Vec::new();
    let mut done = vec![false; orbits.len()];
    for (i, o) in orbits.iter().enumerate() {
        if done[i] {
            continue;
        }
        let (a, b) = o[0];
        let j = orbit_of((b, a));
        done[i] = true;
        done[j] = true;
        if j != i {
            let mut alg = base[i].clone();
            alg.degree *= 2;
            factors.push(CrossedFactor { algebra: alg, base: vec![i, j] });
        } else if a == b {
            // the flip is inner via the Goldman element, whose square is 1
            let field = base[i].center.clone();
            for alg in cyclic_twist_factor(&base[i], false, 2, 1, field.conductor(), &CycNumber::one(), p)? {
                factors.push(CrossedFactor { algebra: alg, base: vec![i] });
            }
        } else {
            let s = ks
                .iter()
                .copied()
                .find(|&s| (table.galois_image(a, s), table.galois_image(b, s)) == (b, a))
                .unwrap_or(1);
            let fixed = base[i].center.fixed_by(s, modulus);
            factors
                .push(CrossedFactor { algebra: AlgebraDescriptor::pending(fixed, 2 * base[i].degree), base: vec![i] });
        }
    }
    let nh = h.order();
    let base_values = orbits
        .iter()
        .map(|o| {
            (0..nh * nh)
                .map(|x| {
                    let (x1, x2) = (h.class_of(x / nh), h.class_of(x % nh));
                    let s = o.iter().fold(CycNumber::zero(), |acc, &(a, b)| {
                        &acc + &(&table.characters[a].values[x1] * &table.characters[b].values[x2])
                    });
                    s.to_rat().expect("orbit sums are rational")
                })
                .collect()
        })
        .collect();
    let out = CrossedDecomposition {
        route: Route::Wreath,
        p,
        base,
        factors,
        base_subgroup: (0..nh * nh).collect(),
        base_values,
    };
    check_dimension(&out, 2 * nh * nh)?;
    Ok(out)
}

/// Picks the wreath route for H ≀ Z/2 with H a 2-group at p = 2 (where the
/// complement route would be the character route itself), and the
/// complement route otherwise.
pub fn crossed_decompose_spec(spec: &GroupSpec, p: u64, seed: u64) -> Result<CrossedDecomposition> {
    if let GroupSpec::WreathC2 { base } = spec {
        if p == 2 {
            let h = base.build()?;
            if is_power_of(h.order(), 2) {
                return crossed_decompose_wreath(&h, p, seed);
            }
        }
    }
    crossed_decompose(&spec.build()?, p, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(d: &CrossedDecomposition) -> Vec<String> {
        let mut v: Vec<String> = d.factors.iter().map(|f| f.algebra.describe()).collect();
        v.sort();
        v
    }

    #[test]
    fn q8_base() {
        let g = GroupSpec::GenQuaternion { order: 8 }.build().unwrap();
        let (_, _, base) = qgroup_base(&g, 2, 0).unwrap();
        let quaternion: Vec<&AlgebraDescriptor> = base.iter().filter(|a| a.index() == Some(2)).collect();
        assert_eq!(base.len(), 5);
        assert_eq!(quaternion.len(), 1);
        assert_eq!(quaternion[0].invariants.len(), 2);
    }

    #[test]
    fn dihedral_13() {
        let g = GroupSpec::Dihedral { n: 13 }.build().unwrap();
        let d = crossed_decompose(&g, 13, 0).unwrap();
        assert_eq!(summary(&d), vec!["M_2(Q(zeta_13)^+)", "Q", "Q"]);
    }

    #[test]
    fn cyclic_15_at_3() {
        let g = GroupSpec::Cyclic { n: 15 }.build().unwrap();
        let d = crossed_decompose(&g, 3, 0).unwrap();
        let mut degs: Vec<u64> = d.factors.iter().map(|f| f.algebra.center.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 4, 8]);
    }

    #[test]
    fn wreath_q8() {
        let spec = GroupSpec::WreathC2 { base: Box::new(GroupSpec::GenQuaternion { order: 8 }) };
        let d = crossed_decompose_spec(&spec, 2, 0).unwrap();
        assert_eq!(d.route, Route::Wreath);
        let mut count: BTreeMap<String, usize> = BTreeMap::new();
        for s in summary(&d) {
            *count.entry(s).or_default() += 1;
        }
        let h = "M_2(D(Q; inf#0:1/2, 2#0:1/2))".to_string();
        assert_eq!(count.get("Q"), Some(&8));
        assert_eq!(count.get("M_2(Q)"), Some(&6));
        assert_eq!(count.get("M_4(Q)"), Some(&2));
        assert_eq!(count.get(&h), Some(&4));
    }

    #[test]
    fn sl23_at_2() {
        let spec = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::GenQuaternion { order: 8 }),
            m: 3,
            action: crate::groupkit::ActionSpec::Images { images: vec![4, 5] },
        };
        let d = crossed_decompose_spec(&spec, 2, 0).unwrap();
        assert!(d.supported());
        let quaternionic = d.factors.iter().filter(|f| f.algebra.index() == Some(2)).count();
        assert_eq!(quaternionic, 1);
    }
}
