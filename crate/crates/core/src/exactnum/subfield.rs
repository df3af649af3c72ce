//! Abelian number fields as subfields of Q(ζ_N), described by the subgroup of
//! (Z/N)^× that fixes them.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::arith::{divisors, euler_phi, gcd, lcm, units};
use super::CycNumber;

/// A subfield of Q(ζ_N): the fixed field of the stabilizer H ⊆ (Z/N)^×.
/// Always stored at the smallest possible N.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubfieldDesc {
    conductor: u64,
    stabilizer: Vec<u64>,
}

/// A place of an abelian field, labelled by the smallest representative of its
/// coset in (Z/N)^×.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceInfo {
    /// `None` for a real place.
    pub prime: Option<u64>,
    pub index: usize,
    pub rep: u64,
    pub local_degree: u64,
    pub ramification_index: u64,
    pub residue_degree: u64,
    pub self_conjugate: bool,
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        0
    } else {
        a * b % n
    }
}

fn generated(gens: &[u64], n: u64) -> BTreeSet<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::new();
    set.insert(1 % n);
    let mut frontier = vec![1 % n];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul_mod(x, g % n, n);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn product_set(a: &BTreeSet<u64>, b: &BTreeSet<u64>, n: u64) -> BTreeSet<u64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| mul_mod(x, y, n))).collect()
}

impl SubfieldDesc {
    pub fn rationals() -> Self {
        SubfieldDesc { conductor: 1, stabilizer: vec![0] }
    }

    /// The full cyclotomic field Q(ζ_n).
    pub fn cyclotomic(n: u64) -> Self {
        Self::from_stabilizer(n, &[1 % n])
    }

    /// The fixed field of the subgroup generated by `gens` inside Q(ζ_n).
    pub fn from_generators(n: u64, gens: &[u64]) -> Self {
        let h: Vec<u64> = generated(gens, n).into_iter().collect();
        Self::from_stabilizer(n, &h)
    }

    /// The fixed field of `h` (a subgroup of (Z/n)^×) inside Q(ζ_n).
    pub fn from_stabilizer(n: u64, h: &[u64]) -> Self {
        let hs: BTreeSet<u64> = h.iter().map(|&x| x % n.max(1)).collect();
        for d in divisors(n) {
            if d % 4 == 2 {
                continue;
            }
            let kernel_inside = units(n).into_iter().filter(|&k| k % d == 1 % d).all(|k| hs.contains(&(k % n.max(1))));
            if kernel_inside {
                let image: BTreeSet<u64> = hs.iter().map(|&k| k % d).collect();
                return SubfieldDesc { conductor: d, stabilizer: image.into_iter().collect() };
            }
        }
        unreachable!("N itself always qualifies")
    }

    /// The field generated over Q by the given values.
    pub fn generated_by(values: &[CycNumber]) -> Self {
        let n = values.iter().fold(1, |acc, v| lcm(acc, v.conductor()));
        let h: Vec<u64> =
            units(n).into_iter().filter(|&k| values.iter().all(|v| v.galois(k % v.conductor().max(1)) == *v)).collect();
        Self::from_stabilizer(n, &h)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    /// The stabilizer pulled back to (Z/m)^× for a multiple m of the conductor.
    pub fn stabilizer_in(&self, m: u64) -> Vec<u64> {
        assert_eq!(m % self.conductor, 0);
        let hs: BTreeSet<u64> = self.stabilizer.iter().copied().collect();
        units(m).into_iter().filter(|&k| hs.contains(&(k % self.conductor))).collect()
    }

    /// A greedy generating set for the stabilizer.
    pub fn stabilizer_generators(&self) -> Vec<u64> {
        let n = self.conductor;
        let mut gens = Vec::new();
        let mut span = generated(&gens, n);
        for &k in &self.stabilizer {
            if !span.contains(&k) {
                gens.push(k);
                span = generated(&gens, n);
            }
        }
        gens
    }

    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.stabilizer.len() as u64
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// Abelian fields are either totally real or CM.
    pub fn is_totally_real(&self) -> bool {
        self.conductor <= 2 || self.stabilizer.contains(&(self.conductor - 1))
    }

    pub fn contains(&self, x: &CycNumber) -> bool {
        let m = lcm(self.conductor, x.conductor());
        self.stabilizer_in(m).into_iter().all(|k| x.galois(k % x.conductor().max(1)) == *x)
    }

    pub fn is_subfield_of(&self, other: &SubfieldDesc) -> bool {
        let m = lcm(self.conductor, other.conductor);
        let mine: BTreeSet<u64> = self.stabilizer_in(m).into_iter().collect();
        other.stabilizer_in(m).into_iter().all(|k| mine.contains(&k))
    }

    pub fn compositum(&self, other: &SubfieldDesc) -> SubfieldDesc {
        let m = lcm(self.conductor, other.conductor);
        let mine: BTreeSet<u64> = self.stabilizer_in(m).into_iter().collect();
        let h: Vec<u64> = other.stabilizer_in(m).into_iter().filter(|k| mine.contains(k)).collect();
        Self::from_stabilizer(m, &h)
    }

    /// The subfield fixed by the extra automorphism σ_k (k a unit mod a
    /// multiple of the conductor).
    pub fn fixed_by(&self, k: u64, modulus: u64) -> SubfieldDesc {
        let m = lcm(self.conductor, modulus);
        let mut gens = self.stabilizer_in(m);
        let k = (0..m / modulus.max(1))
            .map(|t| k % modulus.max(1) + t * modulus.max(1))
            .find(|&x| gcd(x, m) == 1)
            .unwrap_or(1);
        gens.push(k % m.max(1));
        Self::from_generators(m, &gens)
    }

    /// Places above the rational prime `p`, in order of coset representative.
    pub fn places_over(&self, p: u64) -> Vec<PlaceInfo> {
        let n = self.conductor;
        if n == 1 {
            return vec![PlaceInfo {
                prime: Some(p),
                index: 0,
                rep: 0,
                local_degree: 1,
                ramification_index: 1,
                residue_degree: 1,
                self_conjugate: true,
            }];
        }
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        let all = units(n);
        let frob: BTreeSet<u64> = generated(&[p % m.max(1)], m);
        let d: BTreeSet<u64> = all.iter().copied().filter(|&k| frob.contains(&(k % m))).collect();
        let inertia: BTreeSet<u64> = all.iter().copied().filter(|&k| k % m == 1 % m).collect();
        let h: BTreeSet<u64> = self.stabilizer.iter().copied().collect();
        let dh = product_set(&d, &h, n);
        let ih = product_set(&inertia, &h, n);
        let local_degree = (dh.len() / h.len()) as u64;
        let e = (ih.len() / h.len()) as u64;
        let self_conjugate = dh.contains(&(n - 1));
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut places = Vec::new();
        for &k in &all {
            if seen.contains(&k) {
                continue;
            }
            for &x in &dh {
                seen.insert(mul_mod(k, x, n));
            }
            places.push(PlaceInfo {
                prime: Some(p),
                index: places.len(),
                rep: k,
                local_degree,
                ramification_index: e,
                residue_degree: local_degree / e,
                self_conjugate,
            });
        }
        places
    }

    /// Index of the place of `self` above `p` that lies under a place of a
    /// bigger field labelled by `rep` modulo `modulus`.
    pub fn place_below(&self, p: u64, rep: u64, modulus: u64) -> usize {
        assert_eq!(modulus % self.conductor, 0);
        let target = rep % self.conductor.max(1);
        let n = self.conductor;
        if n == 1 {
            return 0;
        }
        let places = self.places_over(p);
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        let frob: BTreeSet<u64> = generated(&[p % m.max(1)], m);
        let h: BTreeSet<u64> = self.stabilizer.iter().copied().collect();
        let d: BTreeSet<u64> = units(n).into_iter().filter(|&k| frob.contains(&(k % m))).collect();
        let dh = product_set(&d, &h, n);
        places
            .iter()
            .find(|pl| dh.iter().any(|&x| mul_mod(pl.rep, x, n) == target))
            .map(|pl| pl.index)
            .expect("every unit lies in some coset")
    }

    /// Real places, one per embedding, when the field is totally real.
    pub fn real_places(&self) -> Vec<PlaceInfo> {
        if !self.is_totally_real() {
            return Vec::new();
        }
        let n = self.conductor;
        let h: BTreeSet<u64> = self.stabilizer.iter().copied().collect();
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut places = Vec::new();
        for k in units(n) {
            if seen.contains(&k) {
                continue;
            }
            for &x in &h {
                seen.insert(mul_mod(k, x, n));
            }
            places.push(PlaceInfo {
                prime: None,
                index: places.len(),
                rep: k,
                local_degree: 1,
                ramification_index: 1,
                residue_degree: 1,
                self_conjugate: true,
            });
        }
        places
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        let n = self.conductor;
        if n == 1 {
            "Q".to_string()
        } else if self.stabilizer.len() == 1 {
            format!("Q(zeta_{n})")
        } else if self.stabilizer == [1, n - 1] {
            format!("Q(zeta_{n})^+")
        } else {
            let gens: Vec<String> = self.stabilizer_generators().iter().map(|g| g.to_string()).collect();
            format!("Q(zeta_{n})^<{}>", gens.join(","))
        }
    }
}

impl fmt::Debug for SubfieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for SubfieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for SubfieldDesc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SubfieldDesc", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("stabilizer_generators", &self.stabilizer_generators())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for SubfieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            conductor: u64,
            #[serde(default)]
            stabilizer_generators: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        if let Some(g) = raw.stabilizer_generators.iter().find(|&&g| gcd(g, raw.conductor) != 1) {
            return Err(serde::de::Error::custom(format!(
                "stabilizer generator {g} is not a unit modulo {}",
                raw.conductor
            )));
        }
        Ok(SubfieldDesc::from_generators(raw.conductor, &raw.stabilizer_generators))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_conductor() {
        assert_eq!(SubfieldDesc::cyclotomic(6), SubfieldDesc::cyclotomic(3));
        assert_eq!(SubfieldDesc::cyclotomic(2), SubfieldDesc::rationals());
        // Q(√5) has conductor 5
        let k = SubfieldDesc::from_generators(20, &[9, 19]);
        assert_eq!(k.conductor(), 5);
        assert_eq!(k.degree(), 2);
        assert!(k.is_totally_real());
    }

    #[test]
    fn real_subfield_of_q_zeta13() {
        let k = SubfieldDesc::from_generators(13, &[12]);
        assert_eq!(k.degree(), 6);
        assert!(k.is_totally_real());
        assert_eq!(k.name(), "Q(zeta_13)^+");
        let places = k.places_over(13);
        assert_eq!(places.len(), 1);
        assert_eq!(places[0].ramification_index, 6);
        assert_eq!(k.real_places().len(), 6);
    }

    #[test]
    fn splitting_in_q_i() {
        let k = SubfieldDesc::cyclotomic(4);
        assert_eq!(k.places_over(5).len(), 2);
        assert_eq!(k.places_over(3).len(), 1);
        assert_eq!(k.places_over(3)[0].residue_degree, 2);
        assert_eq!(k.places_over(2)[0].ramification_index, 2);
        assert!(!k.places_over(5)[0].self_conjugate);
    }

    #[test]
    fn field_of_values() {
        let s = &CycNumber::root_of_unity(5, 1) + &CycNumber::root_of_unity(5, 4);
        let k = SubfieldDesc::generated_by(&[s]);
        assert_eq!(k, SubfieldDesc::from_generators(5, &[4]));
        assert!(k.is_subfield_of(&SubfieldDesc::cyclotomic(5)));
        assert_eq!(k.compositum(&SubfieldDesc::cyclotomic(3)).degree(), 4);
    }
}
