//! Classification of the simple factors of Q[G] for a ramification group:
//! Albert type, local invariants, Schur index and representation dimensions.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::chartab::RationalCharacter;
use crate::crossed::{half, AlbertType, AlgebraDescriptor, CrossedDecomposition, LocalInvariant, Place};
use crate::error::{InertiaError, Result};
use crate::exactnum::{fmt_rat, Rat, SubfieldDesc};
use crate::groupkit::{FiniteGroup, NormalSubgroup};

/// A Schur index, exact or bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchurIndex {
    Exact(u64),
    Bounded { lo: u64, hi: u64 },
}

impl SchurIndex {
    pub fn exact(&self) -> Option<u64> {
        match self {
            SchurIndex::Exact(m) => Some(*m),
            SchurIndex::Bounded { .. } => None,
        }
    }

    pub fn lo(&self) -> u64 {
        match self {
            SchurIndex::Exact(m) => *m,
            SchurIndex::Bounded { lo, .. } => *lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match self {
            SchurIndex::Exact(m) => *m,
            SchurIndex::Bounded { hi, .. } => *hi,
        }
    }
}

impl Serialize for SchurIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SchurIndex::Exact(m) => s.serialize_u64(*m),
            SchurIndex::Bounded { lo, hi } => {
                let mut st = s.serialize_struct("SchurIndex", 2)?;
                st.serialize_field("lo", lo)?;
                st.serialize_field("hi", hi)?;
                st.end()
            }
        }
    }
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Any,
    Even,
}

/// Where the division part of a factor came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexSource {
    /// Determined by the indicator alone.
    Indicator,
    /// A commutative factor.
    Commutative,
    /// Read from the twisted-algebra presentation.
    CrossedPresentation,
    /// Every place over p is fixed by complex conjugation.
    SelfConjugatePlaces,
    /// No presentation; the index is only bounded.
    Unavailable,
}

/// One simple factor M_k(D) of Q[G].
#[derive(Clone, Debug)]
pub struct SimpleFactor {
    /// Index into the list of rational characters.
    pub rational: usize,
    pub center: SubfieldDesc,
    pub chi_degree: u64,
    pub fs: i8,
    pub albert_type: AlbertType,
    pub schur_index: SchurIndex,
    /// Nonzero local invariants; meaningful only when the index is exact.
    pub invariants: Vec<LocalInvariant>,
    pub index_source: IndexSource,
    pub kernel: NormalSubgroup,
}

/// Dimensions attached to a factor: minimal rational and rational-polarized
/// complex representations, the Q-dimension of the simple module, and the
/// cost of one polarized copy in units of a.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepDims {
    pub vr_dim: u64,
    pub vrp_dim: u64,
    pub t_dim_lo: u64,
    pub t_dim_hi: u64,
    #[serde(serialize_with = "ser_rat")]
    pub a_unit: Rat,
    pub parity: Parity,
}

impl SimpleFactor {
    pub fn field_degree(&self) -> u64 {
        self.center.degree()
    }

    /// χ(1)·f.
    pub fn deg(&self) -> u64 {
        self.chi_degree * self.field_degree()
    }

    pub fn parity(&self) -> Parity {
        match self.albert_type {
            AlbertType::I | AlbertType::II => Parity::Even,
            _ => Parity::Any,
        }
    }

    pub fn rep_dims(&self) -> RepDims {
        let vr = self.deg();
        let vrp = match self.albert_type {
            AlbertType::I | AlbertType::II => 2 * vr,
            _ => vr,
        };
        RepDims {
            vr_dim: vr,
            vrp_dim: vrp,
            t_dim_lo: vr * self.schur_index.lo(),
            t_dim_hi: vr * self.schur_index.hi(),
            a_unit: Rat::new(vr.into(), 2.into()),
            parity: self.parity(),
        }
    }

    /// Cost in a of one polarized copy: vrp/2.
    pub fn a_cost(&self) -> u64 {
        self.rep_dims().vrp_dim / 2
    }

    /// The factor as an algebra descriptor (pending when the index is bounded).
    pub fn algebra(&self) -> AlgebraDescriptor {
        match self.schur_index {
            SchurIndex::Exact(_) => {
                AlgebraDescriptor::with_invariants(self.center.clone(), self.chi_degree, self.invariants.clone())
            }
            SchurIndex::Bounded { .. } => AlgebraDescriptor::pending(self.center.clone(), self.chi_degree),
        }
    }

    pub fn describe(&self) -> String {
        self.algebra().describe()
    }
}

impl Serialize for SimpleFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dims = self.rep_dims();
        let mut st = s.serialize_struct("SimpleFactor", 16)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("center_name", &self.center.name())?;
        st.serialize_field("chi_degree", &self.chi_degree)?;
        st.serialize_field("fs", &self.fs)?;
        st.serialize_field("type", &self.albert_type)?;
        st.serialize_field("schur_index", &self.schur_index)?;
        st.serialize_field("index_source", &self.index_source)?;
        st.serialize_field("invariants", &self.invariants)?;
        st.serialize_field("deg", &self.deg())?;
        st.serialize_field("vr_dim", &dims.vr_dim)?;
        st.serialize_field("vrp_dim", &dims.vrp_dim)?;
        if dims.t_dim_lo == dims.t_dim_hi {
            st.serialize_field("t_dim", &dims.t_dim_lo)?;
        } else {
            st.serialize_field("t_dim", &SchurIndex::Bounded { lo: dims.t_dim_lo, hi: dims.t_dim_hi })?;
        }
        st.serialize_field("a_unit", &fmt_rat(&dims.a_unit))?;
        st.serialize_field("parity", &dims.parity)?;
        st.serialize_field("kernel_order", &self.kernel.order())?;
        st.serialize_field("description", &self.describe())?;
        st.end()
    }
}

fn quaternionic_invariants(f: &SubfieldDesc, p: u64) -> Vec<LocalInvariant> {
    let mut invs: Vec<LocalInvariant> =
        f.real_places().iter().map(|w| LocalInvariant::new(Place::from_info(w), half())).collect();
    if p != 0 {
        for w in f.places_over(p) {
            invs.push(LocalInvariant::new(Place::from_info(&w), Rat::new(w.local_degree.into(), 2.into())));
        }
    }
    invs.retain(|i| i.value != Rat::from_integer(0.into()));
    invs
}

/// Finds the twisted-algebra factor sitting over the same base factors as
/// `rc`, with the same center and degree. Returns it only when every such
/// candidate carries the same division part.
fn match_presentation(g: &FiniteGroup, rc: &RationalCharacter, d: &CrossedDecomposition) -> Option<AlgebraDescriptor> {
    let linked: BTreeSet<usize> = d
        .base_values
        .iter()
        .enumerate()
        .filter(|(_, vals)| {
            let s = d
                .base_subgroup
                .iter()
                .zip(vals.iter())
                .fold(Rat::from_integer(0.into()), |acc, (&x, v)| acc + &rc.values[g.class_of(x)] * v);
            s != Rat::from_integer(0.into())
        })
        .map(|(i, _)| i)
        .collect();
    let candidates: Vec<&AlgebraDescriptor> = d
        .factors
        .iter()
        .filter(|f| f.base.iter().any(|b| linked.contains(b)))
        .map(|f| &f.algebra)
        .filter(|a| a.center == rc.field && a.degree == rc.degree && !a.pending)
        .collect();
    let first = candidates.first()?;
    candidates.iter().all(|c| c.invariants == first.invariants).then(|| (*first).clone())
}

/// Classifies one rational character of a ramification group at p (p = 0
/// allowed for cyclic groups).
pub fn classify_factor(
    g: &FiniteGroup,
    index: usize,
    rc: &RationalCharacter,
    p: u64,
    presentation: Option<&CrossedDecomposition>,
) -> Result<SimpleFactor> {
    let f = rc.field.clone();
    let base = |albert_type, schur_index, invariants, index_source| SimpleFactor {
        rational: index,
        center: f.clone(),
        chi_degree: rc.degree,
        fs: rc.fs,
        albert_type,
        schur_index,
        invariants,
        index_source,
        kernel: rc.kernel.clone(),
    };
    match rc.fs {
        1 => {
            if !f.is_totally_real() {
                return Err(InertiaError::Internal(format!("indicator +1 with non-real center {f}")));
            }
            Ok(base(AlbertType::I, SchurIndex::Exact(1), Vec::new(), IndexSource::Indicator))
        }
        -1 => {
            if !f.is_totally_real() {
                return Err(InertiaError::Internal(format!("indicator -1 with non-real center {f}")));
            }
            let invs = quaternionic_invariants(&f, p);
            Ok(base(AlbertType::III, SchurIndex::Exact(2), invs, IndexSource::Indicator))
        }
        0 => {
            if f.is_totally_real() {
                return Err(InertiaError::Internal(format!("indicator 0 with real center {f}")));
            }
            if rc.degree == 1 {
                return Ok(base(AlbertType::IV, SchurIndex::Exact(1), Vec::new(), IndexSource::Commutative));
            }
            if let Some(alg) = presentation.and_then(|d| match_presentation(g, rc, d)) {
                let m = alg.index().unwrap_or(1);
                return Ok(base(
                    AlbertType::IV,
                    SchurIndex::Exact(m),
                    alg.invariants,
                    IndexSource::CrossedPresentation,
                ));
            }
            // g ↦ g⁻¹ is an involution of the second kind, so the corestriction to
            // the real subfield splits and inv_v = 0 wherever v = v̄.
            if p == 0 || f.places_over(p).iter().all(|w| w.self_conjugate) {
                return Ok(base(AlbertType::IV, SchurIndex::Exact(1), Vec::new(), IndexSource::SelfConjugatePlaces));
            }
            Ok(base(AlbertType::IV, SchurIndex::Bounded { lo: 1, hi: rc.degree }, Vec::new(), IndexSource::Unavailable))
        }
        other => Err(InertiaError::Internal(format!("invalid indicator {other}"))),
    }
}

/// Classifies every rational character, in order.
pub fn classify_all(
    g: &FiniteGroup,
    rcs: &[RationalCharacter],
    p: u64,
    presentation: Option<&CrossedDecomposition>,
) -> Result<Vec<SimpleFactor>> {
    rcs.iter().enumerate().map(|(i, rc)| classify_factor(g, i, rc, p, presentation)).collect()
}

/// The Schur index of a classified factor.
pub fn schur_index(factor: &SimpleFactor) -> SchurIndex {
    factor.schur_index
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::rational_characters;
    use crate::crossed::crossed_decompose;
    use crate::groupkit::{ActionSpec, GroupSpec};

    fn factors(spec: GroupSpec, p: u64) -> Vec<SimpleFactor> {
        let g = spec.build().unwrap();
        let (_, rcs) = rational_characters(&g, 0).unwrap();
        let d = crossed_decompose(&g, p, 0).ok();
        classify_all(&g, &rcs, p, d.as_ref()).unwrap()
    }

    #[test]
    fn q8_quaternion() {
        let fs = factors(GroupSpec::GenQuaternion { order: 8 }, 2);
        let h = fs.iter().find(|f| f.chi_degree == 2).unwrap();
        assert_eq!(h.albert_type, AlbertType::III);
        assert_eq!(h.schur_index, SchurIndex::Exact(2));
        let vals: Vec<String> = h.invariants.iter().map(|i| fmt_rat(&i.value)).collect();
        assert_eq!(vals, vec!["1/2", "1/2"]);
        let dims = h.rep_dims();
        assert_eq!((dims.vr_dim, dims.vrp_dim, dims.t_dim_lo), (2, 2, 4));
        assert_eq!(h.a_cost(), 1);
    }

    #[test]
    fn z5_faithful() {
        let fs = factors(GroupSpec::Cyclic { n: 5 }, 5);
        let f = fs.iter().find(|f| f.field_degree() == 4).unwrap();
        assert_eq!(f.albert_type, AlbertType::IV);
        assert_eq!(f.schur_index, SchurIndex::Exact(1));
    }

    #[test]
    fn d13_real_factor() {
        let fs = factors(GroupSpec::Dihedral { n: 13 }, 13);
        let f = fs.iter().find(|f| f.chi_degree == 2).unwrap();
        assert_eq!(f.albert_type, AlbertType::I);
        let dims = f.rep_dims();
        assert_eq!((dims.vr_dim, dims.vrp_dim, dims.t_dim_lo), (12, 24, 12));
    }

    #[test]
    fn z7_by_z9_index_three() {
        let spec = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic { n: 7 }),
            m: 9,
            action: ActionSpec::Power { power: 2 },
        };
        let fs = factors(spec, 7);
        let f = fs.iter().find(|f| f.schur_index == SchurIndex::Exact(3)).unwrap();
        assert_eq!(f.index_source, IndexSource::CrossedPresentation);
        assert_eq!(f.albert_type, AlbertType::IV);
    }

    #[test]
    fn z3_by_z4_quaternion_at_3() {
        let spec = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic { n: 3 }),
            m: 4,
            action: ActionSpec::Power { power: 2 },
        };
        let fs = factors(spec, 3);
        let h = fs.iter().find(|f| f.albert_type == AlbertType::III).unwrap();
        assert_eq!(h.center, SubfieldDesc::rationals());
        assert_eq!(h.invariants.len(), 2);
    }
}
