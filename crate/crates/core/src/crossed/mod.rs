//! Twisted group algebras E[m, τ] over products of simple algebras with
//! abelian centers, and the resulting second route to the simple factors of
//! Q[Γ_p ⋊ Z/n].

mod route;
mod twist;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactnum::{fmt_rat, Rat, SubfieldDesc};

pub use route::{
    crossed_decompose, crossed_decompose_spec, crossed_decompose_wreath, qgroup_base, CrossedDecomposition,
    CrossedFactor, Route,
};
pub use twist::{cyclic_twist_factor, orbit_split, OrbitTwist, TwistAction};

/// A place of an abelian number field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite { index: usize },
    Finite { prime: u64, index: usize, local_degree: u64, ramification_index: u64 },
}

impl Place {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite { .. })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Infinite { .. } => None,
            Place::Finite { prime, .. } => Some(*prime),
        }
    }

    pub fn from_info(info: &crate::exactnum::PlaceInfo) -> Self {
        match info.prime {
            None => Place::Infinite { index: info.index },
            Some(prime) => Place::Finite {
                prime,
                index: info.index,
                local_degree: info.local_degree,
                ramification_index: info.ramification_index,
            },
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite { index } => write!(f, "inf#{index}"),
            Place::Finite { prime, index, .. } => write!(f, "{prime}#{index}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Place::Infinite { index } => {
                let mut st = s.serialize_struct("Place", 2)?;
                st.serialize_field("kind", "infinite")?;
                st.serialize_field("index", index)?;
                st.end()
            }
            Place::Finite { prime, index, local_degree, ramification_index } => {
                let mut st = s.serialize_struct("Place", 5)?;
                st.serialize_field("kind", "finite")?;
                st.serialize_field("prime", prime)?;
                st.serialize_field("index", index)?;
                st.serialize_field("local_degree", local_degree)?;
                st.serialize_field("ramification_index", ramification_index)?;
                st.end()
            }
        }
    }
}

/// A Hasse invariant in Q/Z, stored reduced into [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalInvariant {
    pub place: Place,
    pub value: Rat,
}

/// Reduces a rational into [0, 1).
pub fn mod_one(r: &Rat) -> Rat {
    r - r.floor()
}

impl LocalInvariant {
    pub fn new(place: Place, value: Rat) -> Self {
        LocalInvariant { place, value: mod_one(&value) }
    }

    /// Order of the invariant in Q/Z.
    pub fn order(&self) -> u64 {
        self.value.denom().try_into().unwrap_or(u64::MAX)
    }
}

impl Serialize for LocalInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LocalInvariant", 2)?;
        st.serialize_field("place", &self.place)?;
        st.serialize_field("value", &fmt_rat(&self.value))?;
        st.end()
    }
}

/// Albert type of a simple algebra with positive involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AlbertType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for AlbertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlbertType::I => "I",
            AlbertType::II => "II",
            AlbertType::III => "III",
            AlbertType::IV => "IV",
        };
        f.write_str(s)
    }
}

/// M_k(D) with D central division over `center`, described by its nonzero
/// local invariants. `degree` is k·index, the square root of the dimension
/// over the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub center: SubfieldDesc,
    pub degree: u64,
    pub invariants: Vec<LocalInvariant>,
    /// The division part could not be determined.
    pub pending: bool,
}

impl AlgebraDescriptor {
    pub fn split(center: SubfieldDesc, degree: u64) -> Self {
        AlgebraDescriptor { center, degree, invariants: Vec::new(), pending: false }
    }

    pub fn with_invariants(center: SubfieldDesc, degree: u64, invariants: Vec<LocalInvariant>) -> Self {
        let mut invariants: Vec<LocalInvariant> = invariants.into_iter().filter(|i| !i.value.is_zero()).collect();
        invariants.sort();
        AlgebraDescriptor { center, degree, invariants, pending: false }
    }

    pub fn pending(center: SubfieldDesc, degree: u64) -> Self {
        AlgebraDescriptor { center, degree, invariants: Vec::new(), pending: true }
    }

    /// Schur index: lcm of the orders of the invariants.
    pub fn index(&self) -> Option<u64> {
        (!self.pending).then(|| self.invariants.iter().fold(1u64, |acc, i| acc.lcm(&i.order())))
    }

    pub fn matrix_size(&self) -> Option<u64> {
        self.index().map(|m| self.degree / m)
    }

    /// Dimension over Q.
    pub fn dimension(&self) -> u64 {
        self.center.degree() * self.degree * self.degree
    }

    pub fn invariant_sum(&self) -> Rat {
        mod_one(&self.invariants.iter().fold(Rat::zero(), |acc, i| acc + &i.value))
    }

    /// Type read from the center and the infinite invariants; `None` when a
    /// real center carries an undetermined division part.
    pub fn albert_type(&self) -> Option<AlbertType> {
        if !self.center.is_totally_real() {
            return Some(AlbertType::IV);
        }
        if self.pending {
            return None;
        }
        let half = Rat::new(1.into(), 2.into());
        let infinite: Vec<&LocalInvariant> = self.invariants.iter().filter(|i| i.place.is_infinite()).collect();
        if !infinite.is_empty() && infinite.iter().all(|i| i.value == half) {
            Some(AlbertType::III)
        } else if self.index() == Some(1) {
            Some(AlbertType::I)
        } else {
            Some(AlbertType::II)
        }
    }

    /// Tensor with a finite extension L of the center: each invariant is
    /// multiplied by the local degree [L_w : F_v].
    pub fn extend_center(&self, l: &SubfieldDesc, p: u64) -> AlgebraDescriptor {
        if self.pending {
            return AlgebraDescriptor::pending(l.clone(), self.degree);
        }
        let mut out = Vec::new();
        let has_real = self.invariants.iter().any(|i| i.place.is_infinite());
        if has_real {
            let half = Rat::new(1.into(), 2.into());
            for w in l.real_places() {
                out.push(LocalInvariant::new(Place::from_info(&w), half.clone()));
            }
        }
        let finite: Vec<&LocalInvariant> = self.invariants.iter().filter(|i| i.place.prime() == Some(p)).collect();
        if !finite.is_empty() {
            let below = self.center.places_over(p);
            for w in l.places_over(p) {
                let v = self.center.place_below(p, w.rep, l.conductor());
                let Some(inv) = finite.iter().find(|i| matches!(i.place, Place::Finite { index, .. } if index == v))
                else {
                    continue;
                };
                let ratio = w.local_degree / below[v].local_degree;
                out.push(LocalInvariant::new(Place::from_info(&w), &inv.value * Rat::from_integer(ratio.into())));
            }
        }
        AlgebraDescriptor::with_invariants(l.clone(), self.degree, out)
    }

    /// Human-readable form such as `M_2(H over Q)`.
    pub fn describe(&self) -> String {
        let body = if self.pending {
            format!("D?({})", self.center)
        } else if self.invariants.is_empty() {
            self.center.to_string()
        } else {
            let invs: Vec<String> =
                self.invariants.iter().map(|i| format!("{}:{}", i.place, fmt_rat(&i.value))).collect();
            format!("D({}; {})", self.center, invs.join(", "))
        };
        match self.matrix_size() {
            Some(1) => body,
            Some(k) => format!("M_{k}({body})"),
            None => format!("M_?({body}) of degree {}", self.degree),
        }
    }
}

impl Serialize for AlgebraDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraDescriptor", 5)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("matrix_size", &self.matrix_size())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("invariants", &self.invariants)?;
        st.serialize_field("pending", &self.pending)?;
        st.end()
    }
}

pub(crate) fn half() -> Rat {
    Rat::new(One::one(), 2.into())
}
