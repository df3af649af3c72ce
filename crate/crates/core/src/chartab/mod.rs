//! Complex character tables, Frobenius–Schur indicators and rational
//! characters (Galois orbits of irreducible characters).

mod dixon;
pub mod modp;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{InertiaError, Result};
use crate::exactnum::arith::units;
use crate::exactnum::{CycNumber, Rat, SubfieldDesc};
use crate::groupkit::{FiniteGroup, NormalSubgroup};

/// An irreducible complex character, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<CycNumber>,
    pub degree: u64,
    modq: Vec<u64>,
}

/// The full table of a group, characters in canonical order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub characters: Vec<Character>,
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub group_order: usize,
    pub exponent: u64,
    q: u64,
    omega: u64,
    /// power_map[c][k] is the class of g^k for g in class c, k < exponent.
    power_map: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

/// A Galois orbit of irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCharacter {
    /// Indices into the table's character list.
    pub members: Vec<usize>,
    pub degree: u64,
    pub field: SubfieldDesc,
    pub kernel: NormalSubgroup,
    pub fs: i8,
    /// Σ over the orbit of the member values; rational on every class.
    pub values: Vec<Rat>,
}

#[derive(Serialize)]
pub struct RationalCharacterJson {
    pub degree: u64,
    pub field: SubfieldDesc,
    pub fs: i8,
    pub kernel_order: usize,
    pub orbit_size: usize,
}

impl RationalCharacter {
    pub fn to_json(&self) -> RationalCharacterJson {
        RationalCharacterJson {
            degree: self.degree,
            field: self.field.clone(),
            fs: self.fs,
            kernel_order: self.kernel.order(),
            orbit_size: self.members.len(),
        }
    }

    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.values.iter().all(|v| *v == Rat::from_integer(1.into()))
    }
}

impl CharacterTable {
    /// Computes the table. The seed only drives the splitting heuristics; the
    /// result is identical for every seed that succeeds.
    pub fn compute(g: &FiniteGroup, seed: u64) -> Result<Self> {
        let modular = dixon::modular_table(g, seed)?;
        let classes = g.conjugacy_classes();
        let exponent = g.exponent();
        let mut characters = Vec::with_capacity(classes.len());
        for (row, &degree) in modular.rows.iter().zip(&modular.degrees) {
            let values = dixon::lift_row(g, &modular, row)?;
            characters.push(Character { values, degree, modq: row.clone() });
        }
        let trivial = |c: &Character| c.values.iter().all(|v| *v == CycNumber::one());
        characters.sort_by(|a, b| (a.degree, !trivial(a), &a.values).cmp(&(b.degree, !trivial(b), &b.values)));
        let power_map = classes.iter().map(|c| (0..exponent).map(|k| g.class_of(g.pow(c.rep, k))).collect()).collect();
        Ok(CharacterTable {
            characters,
            class_sizes: classes.iter().map(|c| c.size()).collect(),
            class_reps: classes.iter().map(|c| c.rep).collect(),
            group_order: g.order(),
            exponent,
            q: modular.q,
            omega: modular.omega,
            power_map,
            inverse_class: classes.iter().map(|c| g.class_of(g.inv(c.rep))).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree).collect()
    }

    /// ⟨χ_i, χ_j⟩ = |G|⁻¹ Σ_g χ_i(g)·conj(χ_j(g)), exactly.
    pub fn inner_product(&self, i: usize, j: usize) -> CycNumber {
        let a = &self.characters[i];
        let b = &self.characters[j];
        let sum = (0..self.class_sizes.len()).fold(CycNumber::zero(), |acc, c| {
            let term =
                (&a.values[c] * &b.values[self.inverse_class[c]]).scale(&Rat::from_integer(self.class_sizes[c].into()));
            &acc + &term
        });
        sum.scale(&Rat::new(1.into(), self.group_order.into()))
    }

    /// Σ_χ χ(g_a)·conj(χ(g_b)), which is |C_G(g_a)| when a = b and 0 otherwise.
    pub fn column_product(&self, a: usize, b: usize) -> CycNumber {
        self.characters
            .iter()
            .fold(CycNumber::zero(), |acc, c| &acc + &(&c.values[a] * &c.values[self.inverse_class[b]]))
    }

    /// Checks row and column orthogonality exactly.
    pub fn verify_orthogonality(&self) -> bool {
        let k = self.len();
        for i in 0..k {
            for j in i..k {
                let expected = CycNumber::from_int(i64::from(i == j));
                if self.inner_product(i, j) != expected {
                    return false;
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let expected = if a == b {
                    CycNumber::from_int((self.group_order / self.class_sizes[a]) as i64)
                } else {
                    CycNumber::zero()
                };
                if self.column_product(a, b) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// (1/|G|) Σ_g χ(g²), computed exactly.
    pub fn frobenius_schur(&self, i: usize) -> Result<i8> {
        let chi = &self.characters[i];
        let sum = (0..self.class_sizes.len()).fold(CycNumber::zero(), |acc, c| {
            let sq = self.power_map[c][2 % self.exponent.max(1) as usize];
            &acc + &chi.values[sq].scale(&Rat::from_integer(self.class_sizes[c].into()))
        });
        let v = sum
            .to_rat()
            .map(|r| r / Rat::from_integer(self.group_order.into()))
            .ok_or_else(|| InertiaError::Internal("indicator is not rational".into()))?;
        match v.to_integer().try_into() {
            Ok(x @ (-1..=1)) if v.is_integer() => Ok(x),
            _ => Err(InertiaError::Internal(format!("Frobenius-Schur indicator {v} out of range; table corrupted"))),
        }
    }

    /// Kernel {g : χ(g) = χ(1)} as a set of elements.
    pub fn kernel(&self, g: &FiniteGroup, i: usize) -> NormalSubgroup {
        let chi = &self.characters[i];
        let deg = CycNumber::from_int(chi.degree as i64);
        let mut elements: Vec<usize> = g
            .conjugacy_classes()
            .iter()
            .enumerate()
            .filter(|(c, _)| chi.values[*c] == deg)
            .flat_map(|(_, cl)| cl.elements.iter().copied())
            .collect();
        elements.sort_unstable();
        NormalSubgroup::from_sorted(elements)
    }

    /// Index of σ_k(χ_i), where σ_k(χ)(g) = χ(g^k).
    pub fn galois_image(&self, i: usize, k: u64) -> usize {
        let row = &self.characters[i].modq;
        let image: Vec<u64> =
            (0..row.len()).map(|c| row[self.power_map[c][(k % self.exponent.max(1)) as usize]]).collect();
        self.characters.iter().position(|c| c.modq == image).expect("Galois conjugate of a character is a character")
    }

    /// Reduction modulo the splitting prime of an exact value.
    pub fn reduce(&self, x: &CycNumber) -> Option<u64> {
        dixon::reduce_mod_q(x, self.q, self.omega, self.exponent)
    }

    /// Galois orbits with field of values, kernel and indicator.
    pub fn rational_characters(&self, g: &FiniteGroup) -> Result<Vec<RationalCharacter>> {
        let ks = units(self.exponent);
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen.contains(&i) {
                continue;
            }
            let members: BTreeSet<usize> = ks.iter().map(|&k| self.galois_image(i, k)).collect();
            seen.extend(members.iter().copied());
            let members: Vec<usize> = members.into_iter().collect();
            let chi = &self.characters[i];
            let field = SubfieldDesc::generated_by(&chi.values);
            if field.degree() as usize != members.len() {
                return Err(InertiaError::Internal("orbit size differs from degree of the field of values".into()));
            }
            let fs = self.frobenius_schur(i)?;
            let kernel = self.kernel(g, i);
            let values = (0..self.class_sizes.len())
                .map(|c| {
                    let s = members.iter().fold(CycNumber::zero(), |acc, &m| &acc + &self.characters[m].values[c]);
                    s.to_rat().ok_or_else(|| InertiaError::Internal("orbit sum is not rational".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(RationalCharacter { members, degree: chi.degree, field, kernel, fs, values });
        }
        Ok(out)
    }
}

/// Convenience: the table of `g` followed by its rational characters.
pub fn rational_characters(g: &FiniteGroup, seed: u64) -> Result<(CharacterTable, Vec<RationalCharacter>)> {
    let table = CharacterTable::compute(g, seed)?;
    let rc = table.rational_characters(g)?;
    Ok((table, rc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::GroupSpec;

    fn table(spec: GroupSpec) -> (FiniteGroup, CharacterTable) {
        let g = spec.build().unwrap();
        let t = CharacterTable::compute(&g, 0).unwrap();
        (g, t)
    }

    #[test]
    fn q8_table() {
        let (g, t) = table(GroupSpec::GenQuaternion { order: 8 });
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert!(t.verify_orthogonality());
        assert_eq!(t.frobenius_schur(4).unwrap(), -1);
        let rc = t.rational_characters(&g).unwrap();
        assert_eq!(rc.len(), 5);
        assert!(rc.iter().all(|r| r.field.is_rational()));
        assert!(t.kernel(&g, 4).is_trivial());
    }

    #[test]
    fn cyclic_three() {
        let (g, t) = table(GroupSpec::Cyclic { n: 3 });
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        assert!(t.verify_orthogonality());
        let rc = t.rational_characters(&g).unwrap();
        assert_eq!(rc.len(), 2);
        assert_eq!(rc[1].field, SubfieldDesc::cyclotomic(3));
        assert_eq!(rc[1].fs, 0);
    }

    #[test]
    fn dihedral_13() {
        let (g, t) = table(GroupSpec::Dihedral { n: 13 });
        assert_eq!(t.degrees(), vec![1, 1, 2, 2, 2, 2, 2, 2]);
        assert!(t.verify_orthogonality());
        for i in 2..8 {
            assert_eq!(t.frobenius_schur(i).unwrap(), 1);
        }
        let rc = t.rational_characters(&g).unwrap();
        let fields: Vec<u64> = rc.iter().map(|r| r.field.degree()).collect();
        assert_eq!(fields, vec![1, 1, 6]);
        assert_eq!(rc[2].field, SubfieldDesc::from_generators(13, &[12]));
    }

    #[test]
    fn seed_independence() {
        let g = GroupSpec::Dihedral { n: 9 }.build().unwrap();
        let a = CharacterTable::compute(&g, 0).unwrap();
        let b = CharacterTable::compute(&g, 12345).unwrap();
        assert_eq!(a.characters, b.characters);
    }
}
