//! Good embeddings of simple algebras with positive involution: every type
//! other than III embeds; type III embeds exactly when E ≅ M_n(F ⊗ H_{p,∞}).

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::crossed::{half, AlbertType, AlgebraDescriptor, LocalInvariant, Place};
use crate::error::{InertiaError, Result};
use crate::exactnum::{fmt_rat, parse_rat, Rat, SubfieldDesc};

/// Why a type III algebra has no good embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub place: Place,
    pub actual: Rat,
    pub required: Rat,
}

impl Serialize for Obstruction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Obstruction", 4)?;
        st.serialize_field("place", &self.place)?;
        st.serialize_field("actual", &fmt_rat(&self.actual))?;
        st.serialize_field("required", &fmt_rat(&self.required))?;
        st.serialize_field("message", &self.to_string())?;
        st.end()
    }
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant at {} is {}, required {}", self.place, fmt_rat(&self.actual), fmt_rat(&self.required))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "good_embedding", rename_all = "snake_case")]
pub enum Embedding {
    Yes { witness: String },
    No { obstruction: Obstruction },
}

impl Embedding {
    pub fn is_yes(&self) -> bool {
        matches!(self, Embedding::Yes { .. })
    }
}

/// Knobs for the decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmbedOptions {
    /// Also reject type IV algebras with invariant 1/2 at a place over p
    /// fixed by complex conjugation.
    pub type_iv_evenness: bool,
}

fn invariant_at(e: &AlgebraDescriptor, place: &Place) -> Rat {
    e.invariants.iter().find(|i| same_place(&i.place, place)).map(|i| i.value.clone()).unwrap_or_default()
}

fn same_place(a: &Place, b: &Place) -> bool {
    match (a, b) {
        (Place::Infinite { index: i }, Place::Infinite { index: j }) => i == j,
        (Place::Finite { prime: p, index: i, .. }, Place::Finite { prime: q, index: j, .. }) => p == q && i == j,
        _ => false,
    }
}

/// Decides whether E (simple, polarizable, quasi-split outside p) admits a
/// good embedding at p.
pub fn good_embedding(
    e: &AlgebraDescriptor,
    albert_type: Option<AlbertType>,
    p: u64,
    opts: EmbedOptions,
) -> Result<Embedding> {
    if e.pending {
        return Err(InertiaError::precondition("division part of the algebra is undetermined"));
    }
    if let Some(bad) = e.invariants.iter().find(|i| matches!(i.place.prime(), Some(q) if q != p)) {
        return Err(InertiaError::precondition(format!(
            "not quasi-split outside {p}: invariant {} at {}",
            fmt_rat(&bad.value),
            bad.place
        )));
    }
    let ty = match albert_type.or_else(|| e.albert_type()) {
        Some(t) => t,
        None => return Err(InertiaError::precondition("Albert type cannot be determined")),
    };
    let f = &e.center;
    match ty {
        AlbertType::I | AlbertType::II => {
            Ok(Embedding::Yes { witness: format!("E (x)_F K for a CM quadratic extension K of F = {f}") })
        }
        AlbertType::IV => {
            if opts.type_iv_evenness {
                for w in f.places_over(p).iter().filter(|w| w.self_conjugate) {
                    let place = Place::from_info(w);
                    let actual = invariant_at(e, &place);
                    if actual == half() {
                        return Ok(Embedding::No {
                            obstruction: Obstruction { place, actual, required: Rat::default() },
                        });
                    }
                }
            }
            Ok(Embedding::Yes { witness: "E".to_string() })
        }
        AlbertType::III => {
            for w in f.real_places() {
                let place = Place::from_info(&w);
                let actual = invariant_at(e, &place);
                if actual != half() {
                    return Ok(Embedding::No { obstruction: Obstruction { place, actual, required: half() } });
                }
            }
            for w in f.places_over(p) {
                let place = Place::from_info(&w);
                let actual = invariant_at(e, &place);
                let required = crate::crossed::mod_one(&Rat::new(w.local_degree.into(), 2.into()));
                if actual != required {
                    return Ok(Embedding::No { obstruction: Obstruction { place, actual, required } });
                }
            }
            Ok(Embedding::Yes { witness: format!("M_{}(F (x) H_{{{p},inf}}) with F = {f}", e.degree / 2) })
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    center: SubfieldDesc,
    matrix_size: u64,
    #[serde(default)]
    invariants: Vec<InvariantJson>,
    #[serde(default, rename = "type")]
    albert_type: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvariantJson {
    place: String,
    value: String,
}

/// Parses "inf", "inf#i", "p" or "p#i" into a place of `center`.
pub fn parse_place(center: &SubfieldDesc, s: &str) -> Result<Place> {
    let (head, idx) = match s.split_once('#') {
        Some((h, i)) => {
            (h, i.parse::<usize>().map_err(|_| InertiaError::precondition(format!("bad place index in {s:?}")))?)
        }
        None => (s, 0),
    };
    let infos = if head == "inf" || head == "∞" {
        center.real_places()
    } else {
        let p: u64 = head.parse().map_err(|_| InertiaError::precondition(format!("bad place {s:?}")))?;
        if !crate::exactnum::arith::is_prime(p) {
            return Err(InertiaError::precondition(format!("{p} is not prime in place {s:?}")));
        }
        center.places_over(p)
    };
    infos
        .get(idx)
        .map(Place::from_info)
        .ok_or_else(|| InertiaError::precondition(format!("{center} has no place {s:?}")))
}

/// Reads an algebra descriptor from JSON:
/// {"center", "matrix_size", "invariants": [{"place", "value": "a/b"}], "type"?}.
pub fn parse_algebra(v: &serde_json::Value) -> Result<(AlgebraDescriptor, Option<AlbertType>)> {
    let raw: AlgebraJson = serde_json::from_value(v.clone())
        .map_err(|e| InertiaError::precondition(format!("bad algebra description: {e}")))?;
    let mut invs = Vec::new();
    for i in &raw.invariants {
        let place = parse_place(&raw.center, &i.place)?;
        let value = parse_rat(&i.value)
            .ok_or_else(|| InertiaError::precondition(format!("bad invariant value {:?}", i.value)))?;
        if place.is_infinite() {
            let v = crate::crossed::mod_one(&value);
            if v != Rat::default() && v != half() {
                return Err(InertiaError::precondition(format!("real invariant {} is not 0 or 1/2", i.value)));
            }
        }
        invs.push(LocalInvariant::new(place, value));
    }
    let e0 = AlgebraDescriptor::with_invariants(raw.center.clone(), 1, invs);
    if e0.invariant_sum() != Rat::default() {
        return Err(InertiaError::precondition(format!("invariants sum to {}, not 0", fmt_rat(&e0.invariant_sum()))));
    }
    let index = e0.index().unwrap_or(1);
    let e = AlgebraDescriptor { degree: raw.matrix_size * index, ..e0 };
    let ty = match raw.albert_type.as_deref() {
        None => None,
        Some("I") => Some(AlbertType::I),
        Some("II") => Some(AlbertType::II),
        Some("III") => Some(AlbertType::III),
        Some("IV") => Some(AlbertType::IV),
        Some(other) => return Err(InertiaError::precondition(format!("unknown Albert type {other:?}"))),
    };
    if ty == Some(AlbertType::IV) && e.center.is_totally_real() {
        return Err(InertiaError::precondition("type IV needs a CM center"));
    }
    if matches!(ty, Some(AlbertType::I | AlbertType::II | AlbertType::III)) && !e.center.is_totally_real() {
        return Err(InertiaError::precondition("types I to III need a totally real center"));
    }
    Ok((e, ty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn decide(v: serde_json::Value, p: u64) -> Embedding {
        let (e, ty) = parse_algebra(&v).unwrap();
        good_embedding(&e, ty, p, EmbedOptions::default()).unwrap()
    }

    #[test]
    fn matrix_quaternion_at_two() {
        let v = json!({"center": {"conductor": 1}, "matrix_size": 3,
            "invariants": [{"place": "inf", "value": "1/2"}, {"place": "2", "value": "1/2"}]});
        assert!(decide(v, 2).is_yes());
    }

    #[test]
    fn cyclotomic_five() {
        let v = json!({"center": {"conductor": 5}, "matrix_size": 1});
        for p in [2, 3, 5, 7] {
            assert!(decide(v.clone(), p).is_yes());
        }
    }

    #[test]
    fn split_at_seven_over_sqrt2() {
        let v = json!({"center": {"conductor": 8, "stabilizer_generators": [7]}, "matrix_size": 1,
            "invariants": [{"place": "inf#0", "value": "1/2"}, {"place": "inf#1", "value": "1/2"}]});
        match decide(v, 7) {
            Embedding::No { obstruction } => {
                assert_eq!(obstruction.place.prime(), Some(7));
                assert_eq!(obstruction.actual, Rat::default());
                assert_eq!(obstruction.required, half());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn not_quasi_split() {
        let v = json!({"center": {"conductor": 1}, "matrix_size": 1,
            "invariants": [{"place": "inf", "value": "1/2"}, {"place": "3", "value": "1/2"}]});
        let (e, ty) = parse_algebra(&v).unwrap();
        assert!(good_embedding(&e, ty, 2, EmbedOptions::default()).unwrap_err().is_precondition());
    }

    #[test]
    fn bad_sum_rejected() {
        let v = json!({"center": {"conductor": 1}, "matrix_size": 1,
            "invariants": [{"place": "inf", "value": "1/2"}]});
        assert!(parse_algebra(&v).is_err());
    }
}
