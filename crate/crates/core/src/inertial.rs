//! (p,t,a)-inertial profiles: Pareto-minimal pairs (t,a) such that G embeds
//! in GL_t(Z) × Sp_2a(Q_ℓ) through rational representations, and the
//! symplectic realizations behind the a-side.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::albert::{classify_all, Parity, SimpleFactor};
use crate::chartab::{CharacterTable, RationalCharacter};
use crate::crossed::{crossed_decompose, AlbertType, CrossedDecomposition};
use crate::error::{InertiaError, Result};
use crate::exactnum::Rat;
use crate::groupkit::{ramification_check, FiniteGroup, NormalSubgroup, RamificationCheck, RamificationDecomposition};
use crate::hondatate::{good_embedding, EmbedOptions, Embedding};

pub type Pair = (u64, u64);

/// Everything computed about a ramification group before the search.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub p: u64,
    pub group_order: usize,
    pub decomposition: RamificationDecomposition,
    pub table: CharacterTable,
    pub rationals: Vec<RationalCharacter>,
    pub crossed: Option<CrossedDecomposition>,
    pub factors: Vec<SimpleFactor>,
}

fn require_ramification(g: &FiniteGroup, p: u64) -> Result<RamificationDecomposition> {
    match ramification_check(g, p)? {
        RamificationCheck::Yes(d) => Ok(d),
        RamificationCheck::No(reason) => {
            Err(InertiaError::precondition(format!("not a ramification group at {p}: {reason}")))
        }
    }
}

/// Character table, rational characters, twisted presentation and the
/// classified simple factors of Q[G].
pub fn analyze_group(g: &FiniteGroup, p: u64, seed: u64) -> Result<GroupAnalysis> {
    let decomposition = require_ramification(g, p)?;
    let table = CharacterTable::compute(g, seed)?;
    let rationals = table.rational_characters(g)?;
    let crossed =
        if rationals.iter().any(|r| r.fs == 0 && r.degree > 1) { Some(crossed_decompose(g, p, seed)?) } else { None };
    let factors = classify_all(g, &rationals, p, crossed.as_ref())?;
    Ok(GroupAnalysis { p, group_order: g.order(), decomposition, table, rationals, crossed, factors })
}

/// Keeps the componentwise-minimal pairs, sorted by t.
pub fn pareto_minimal(mut pairs: Vec<Pair>) -> Vec<Pair> {
    pairs.sort_unstable();
    pairs.dedup();
    let mut out: Vec<Pair> = Vec::new();
    for (t, a) in pairs {
        if out.iter().all(|&(t0, a0)| !(t0 <= t && a0 <= a)) {
            out.push((t, a));
        }
    }
    out
}

/// Pareto frontier of (Σ t-costs, Σ a-costs) over assignments of factors to
/// the t-side, the a-side or neither, whose used kernels meet trivially.
/// States are indexed by the running joint kernel.
fn frontier(group_order: usize, factors: &[SimpleFactor], t_cost: impl Fn(&SimpleFactor) -> u64) -> Vec<Pair> {
    let whole = NormalSubgroup::from_sorted((0..group_order).collect());
    let mut states: BTreeMap<NormalSubgroup, Vec<Pair>> = BTreeMap::new();
    states.insert(whole, vec![(0, 0)]);
    for f in factors {
        if f.kernel.order() == group_order {
            continue;
        }
        let tc = t_cost(f);
        let ac = f.a_cost();
        let mut next = states.clone();
        for (k, pairs) in &states {
            let meet = k.intersect(&f.kernel);
            let entry = next.entry(meet).or_default();
            for &(t, a) in pairs {
                entry.push((t + tc, a));
                entry.push((t, a + ac));
            }
        }
        for pairs in next.values_mut() {
            *pairs = pareto_minimal(std::mem::take(pairs));
        }
        states = next;
    }
    states.into_iter().find(|(k, _)| k.is_trivial()).map(|(_, v)| v).unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inertial {
    True,
    False,
    Unknown,
}

/// The full profile. When some Schur index is only bounded, `minimal_pairs`
/// uses the lower bounds and `upper_pairs` the upper bounds.
#[derive(Clone, Debug)]
pub struct InertialProfile {
    pub p: u64,
    pub group_order: usize,
    pub minimal_pairs: Vec<Pair>,
    pub upper_pairs: Vec<Pair>,
    pub exact: bool,
    pub factors: Vec<SimpleFactor>,
    pub notes: Vec<String>,
}

fn t_of(pairs: &[Pair]) -> u64 {
    pairs.iter().filter(|p| p.1 == 0).map(|p| p.0).min().unwrap_or(0)
}

fn a_of(pairs: &[Pair]) -> u64 {
    pairs.iter().filter(|p| p.0 == 0).map(|p| p.1).min().unwrap_or(0)
}

impl InertialProfile {
    pub fn t_g(&self) -> (u64, u64) {
        (t_of(&self.minimal_pairs), t_of(&self.upper_pairs))
    }

    pub fn a_g(&self) -> (u64, u64) {
        (a_of(&self.minimal_pairs), a_of(&self.upper_pairs))
    }

    /// Pairs outside the upward closure of the minimal pairs. Errors on an
    /// inexact profile.
    pub fn non_inertial(&self) -> Result<Vec<Pair>> {
        if !self.exact {
            return Err(InertiaError::precondition(
                "profile is inexact; use is_pta_inertial, which reports unknown pairs",
            ));
        }
        Ok(complement(&self.minimal_pairs))
    }
}

fn complement(minimal: &[Pair]) -> Vec<Pair> {
    let (tg, ag) = (t_of(minimal), a_of(minimal));
    let mut out = Vec::new();
    for t in 0..=tg {
        for a in 0..=ag {
            if !dominates((t, a), minimal) {
                out.push((t, a));
            }
        }
    }
    out
}

fn dominates(x: Pair, pairs: &[Pair]) -> bool {
    pairs.iter().any(|&(t, a)| t <= x.0 && a <= x.1)
}

fn bounded(lo: u64, hi: u64) -> serde_json::Value {
    if lo == hi {
        serde_json::json!(lo)
    } else {
        serde_json::json!({ "lo": lo, "hi": hi })
    }
}

impl Serialize for InertialProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |v: &[Pair]| v.iter().map(|&(t, a)| [t, a]).collect::<Vec<_>>();
        let (tl, th) = self.t_g();
        let (al, ah) = self.a_g();
        let mut st = s.serialize_struct("InertialProfile", 9)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("minimal_pairs", &pairs(&self.minimal_pairs))?;
        if !self.exact {
            st.serialize_field("upper_pairs", &pairs(&self.upper_pairs))?;
        }
        st.serialize_field("t_G", &bounded(tl, th))?;
        st.serialize_field("a_G", &bounded(al, ah))?;
        st.serialize_field("exact", &self.exact)?;
        let non = if self.exact { Some(pairs(&complement(&self.minimal_pairs))) } else { None };
        st.serialize_field("non_inertial", &non)?;
        st.serialize_field("factors", &self.factors)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

/// Known published values that disagree with the representation bounds.
pub fn inertial_profile_notes(g: &FiniteGroup, p: u64, profile: &InertialProfile) -> Vec<String> {
    let mut notes = Vec::new();
    if g.order() == 26 && !g.is_abelian() && p == 13 {
        let (t, _) = profile.t_g();
        let (a, _) = profile.a_g();
        notes.push(format!(
            "published values t_G = 6, a_G = 3 for the dihedral group of order 26 are inconsistent with \
             the representation bounds: an element of order 13 in GL_t(Z) forces t >= 12, and the \
             type I factor of degree 12 must appear an even number of times on the symplectic side; \
             computed t_G = {t}, a_G = {a}"
        ));
    }
    notes
}

/// Profile from classified factors.
pub fn profile_from_factors(group_order: usize, p: u64, factors: Vec<SimpleFactor>) -> InertialProfile {
    let exact = factors.iter().all(|f| f.schur_index.exact().is_some());
    let minimal_pairs = frontier(group_order, &factors, |f| f.rep_dims().t_dim_lo);
    let upper_pairs =
        if exact { minimal_pairs.clone() } else { frontier(group_order, &factors, |f| f.rep_dims().t_dim_hi) };
    InertialProfile { p, group_order, minimal_pairs, upper_pairs, exact, factors, notes: Vec::new() }
}

pub fn inertial_profile(g: &FiniteGroup, p: u64, seed: u64) -> Result<InertialProfile> {
    let analysis = analyze_group(g, p, seed)?;
    let mut profile = profile_from_factors(g.order(), p, analysis.factors);
    profile.notes = inertial_profile_notes(g, p, &profile);
    Ok(profile)
}

/// Three-valued membership in the achievable set.
pub fn is_pta_inertial(profile: &InertialProfile, t: u64, a: u64) -> Inertial {
    if dominates((t, a), &profile.upper_pairs) {
        Inertial::True
    } else if !dominates((t, a), &profile.minimal_pairs) {
        Inertial::False
    } else {
        Inertial::Unknown
    }
}

pub fn non_inertial_pairs(profile: &InertialProfile) -> Result<Vec<Pair>> {
    profile.non_inertial()
}

/// A multiplicity assignment on the simple factors realizing Sp_2a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticRealization {
    /// (factor index, multiplicity), multiplicities positive.
    pub multiplicities: Vec<(usize, u64)>,
    pub total_a: u64,
    pub faithful: bool,
    pub geometric: bool,
    /// Good-embedding witness for each used type III factor.
    pub witnesses: Vec<(usize, String)>,
}

impl SymplecticRealization {
    pub fn to_json(&self, factors: &[SimpleFactor]) -> serde_json::Value {
        serde_json::json!({
            "multiplicities": self.multiplicities.iter().map(|&(i, w)| serde_json::json!({
                "factor": i,
                "description": factors[i].describe(),
                "type": factors[i].albert_type,
                "w": w,
            })).collect::<Vec<_>>(),
            "total_a": self.total_a,
            "faithful": self.faithful,
            "geometric": self.geometric,
            "witnesses": self.witnesses.iter().map(|(i, w)| serde_json::json!({"factor": i, "witness": w})).collect::<Vec<_>>(),
        })
    }
}

/// Upper limit on the number of realizations returned.
pub const MAX_REALIZATIONS: usize = 100_000;

/// Every multiplicity vector with Σ w·vr/2 = a and w even on factors of
/// parity even. The second value is true when the list was truncated.
pub fn symplectic_realizations(
    group_order: usize,
    p: u64,
    factors: &[SimpleFactor],
    a: u64,
    faithful_only: bool,
) -> (Vec<SymplecticRealization>, bool) {
    // half-units: each copy of a factor contributes vr half-units of a
    let target = 2 * a;
    let steps: Vec<(u64, u64)> = factors
        .iter()
        .map(|f| {
            let vr = f.rep_dims().vr_dim;
            let step = if f.parity() == Parity::Even { 2 } else { 1 };
            (vr, step)
        })
        .collect();
    let mut out = Vec::new();
    let mut truncated = false;
    let mut current: Vec<u64> = vec![0; factors.len()];
    fn go(
        i: usize,
        remaining: u64,
        steps: &[(u64, u64)],
        current: &mut Vec<u64>,
        found: &mut Vec<Vec<u64>>,
        truncated: &mut bool,
    ) {
        if found.len() >= MAX_REALIZATIONS {
            *truncated = true;
            return;
        }
        if i == steps.len() {
            if remaining == 0 {
                found.push(current.clone());
            }
            return;
        }
        let (vr, step) = steps[i];
        let mut w = 0;
        while w * vr <= remaining {
            current[i] = w;
            go(i + 1, remaining - w * vr, steps, current, found, truncated);
            w += step;
        }
        current[i] = 0;
    }
    let mut found = Vec::new();
    go(0, target, &steps, &mut current, &mut found, &mut truncated);
    let whole = NormalSubgroup::from_sorted((0..group_order).collect());
    for ws in found {
        let used: Vec<usize> = (0..ws.len()).filter(|&i| ws[i] > 0).collect();
        let kernel = used.iter().fold(whole.clone(), |acc, &i| acc.intersect(&factors[i].kernel));
        let faithful = kernel.is_trivial();
        if faithful_only && !faithful {
            continue;
        }
        let witnesses = used
            .iter()
            .filter(|&&i| factors[i].albert_type == AlbertType::III)
            .map(|&i| {
                let text =
                    match good_embedding(&factors[i].algebra(), Some(AlbertType::III), p, EmbedOptions::default()) {
                        Ok(Embedding::Yes { witness }) => witness,
                        Ok(Embedding::No { obstruction }) => format!("no good embedding: {obstruction}"),
                        Err(e) => format!("undecided: {e}"),
                    };
                (i, text)
            })
            .collect();
        out.push(SymplecticRealization {
            multiplicities: used.iter().map(|&i| (i, ws[i])).collect(),
            total_a: a,
            faithful,
            geometric: true,
            witnesses,
        });
    }
    (out, truncated)
}

/// a contributed by a multiplicity vector, as a rational.
pub fn realization_a(factors: &[SimpleFactor], r: &SymplecticRealization) -> Rat {
    r.multiplicities
        .iter()
        .fold(Rat::default(), |acc, &(i, w)| acc + factors[i].rep_dims().a_unit * Rat::from_integer(w.into()))
}

/// One-line summary of a profile.
pub fn summary(profile: &InertialProfile) -> String {
    let pairs: Vec<String> = profile.minimal_pairs.iter().map(|(t, a)| format!("({t},{a})")).collect();
    let (tl, th) = profile.t_g();
    let (al, ah) = profile.a_g();
    let show = |lo: u64, hi: u64| if lo == hi { lo.to_string() } else { format!("[{lo},{hi}]") };
    format!(
        "p = {}: minimal pairs {}; t_G = {}, a_G = {}{}",
        profile.p,
        pairs.join(" "),
        show(tl, th),
        show(al, ah),
        if profile.exact { "" } else { " (inexact)" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::GroupSpec;

    fn profile(spec: GroupSpec, p: u64) -> InertialProfile {
        inertial_profile(&spec.build().unwrap(), p, 0).unwrap()
    }

    #[test]
    fn q8() {
        let pr = profile(GroupSpec::GenQuaternion { order: 8 }, 2);
        assert_eq!(pr.minimal_pairs, vec![(0, 1), (4, 0)]);
        assert_eq!(pr.non_inertial().unwrap(), vec![(0, 0), (1, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn small_cyclic() {
        let pr = profile(GroupSpec::Cyclic { n: 2 }, 2);
        assert_eq!(pr.non_inertial().unwrap(), vec![(0, 0)]);
        let pr = profile(GroupSpec::Cyclic { n: 4 }, 2);
        assert_eq!(pr.non_inertial().unwrap(), vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn z15() {
        let pr = profile(GroupSpec::Cyclic { n: 15 }, 3);
        assert_eq!(pr.minimal_pairs, vec![(0, 3), (2, 2), (4, 1), (6, 0)]);
        assert_eq!(is_pta_inertial(&pr, 2, 2), Inertial::True);
    }

    #[test]
    fn dihedral_13() {
        let pr = profile(GroupSpec::Dihedral { n: 13 }, 13);
        assert_eq!(pr.t_g(), (12, 12));
        assert_eq!(pr.a_g(), (12, 12));
        assert_eq!(pr.notes.len(), 1);
    }

    #[test]
    fn realizations() {
        let g = GroupSpec::GenQuaternion { order: 8 }.build().unwrap();
        let pr = inertial_profile(&g, 2, 0).unwrap();
        let (rs, _) = symplectic_realizations(8, 2, &pr.factors, 1, true);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicities.len(), 1);
        assert_eq!(rs[0].witnesses.len(), 1);
        let g = GroupSpec::Cyclic { n: 3 }.build().unwrap();
        let pr = inertial_profile(&g, 3, 0).unwrap();
        let (rs, _) = symplectic_realizations(3, 3, &pr.factors, 1, false);
        assert_eq!(rs.len(), 2);
        assert!(rs.iter().all(|r| realization_a(&pr.factors, r) == Rat::from_integer(1.into())));
    }
}
