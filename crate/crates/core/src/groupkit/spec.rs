use serde::{Deserialize, Serialize};

use super::{build, FiniteGroup};
use crate::error::Result;

/// JSON description of a group, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Explicit multiplication table; element 0 must be the identity.
    Table {
        table: Vec<Vec<usize>>,
    },
    /// Permutations of `0..degree` given as image lists.
    Perm {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        generators: Vec<Vec<usize>>,
    },
    Cyclic {
        n: usize,
    },
    /// The dihedral group of order 2n.
    Dihedral {
        n: usize,
    },
    /// The generalized quaternion group of the given order (a power of 2, at least 8).
    GenQuaternion {
        order: usize,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
    /// N ⋊ Z/m where the generator of Z/m acts on N by `action`.
    Semidirect {
        normal: Box<GroupSpec>,
        m: usize,
        action: ActionSpec,
    },
    /// (H × H) ⋊ Z/2 with the swap action.
    WreathC2 {
        base: Box<GroupSpec>,
    },
}

/// An automorphism of the normal factor, given by the images of its
/// generators or as x ↦ x^k (abelian factors only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Images { images: Vec<usize> },
    Power { power: i64 },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match self {
            GroupSpec::Table { table } => build::from_table(table)?,
            GroupSpec::Perm { degree, generators } => build::from_permutations(*degree, generators)?,
            GroupSpec::Cyclic { n } => build::cyclic(*n)?,
            GroupSpec::Dihedral { n } => build::dihedral(*n)?,
            GroupSpec::GenQuaternion { order } => build::gen_quaternion(*order)?,
            GroupSpec::Direct { factors } => {
                let built = factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                built
                    .iter()
                    .skip(1)
                    .try_fold(built.first().cloned().unwrap_or(build::cyclic(1)?), |acc, f| build::direct(&acc, f))?
            }
            GroupSpec::Semidirect { normal, m, action } => build::semidirect(&normal.build()?, *m, action)?,
            GroupSpec::WreathC2 { base } => build::wreath_c2(&base.build()?)?,
        };
        Ok(g.with_label(self.short_name()))
    }

    /// A compact name such as `D13` or `(Q8 x Q8):C2`.
    pub fn short_name(&self) -> String {
        match self {
            GroupSpec::Table { table } => format!("table{}", table.len()),
            GroupSpec::Perm { generators, .. } => format!("perm<{} gens>", generators.len()),
            GroupSpec::Cyclic { n } => format!("C{n}"),
            GroupSpec::Dihedral { n } => format!("D{n}"),
            GroupSpec::GenQuaternion { order } => format!("Q{order}"),
            GroupSpec::Direct { factors } => factors.iter().map(|f| f.short_name()).collect::<Vec<_>>().join(" x "),
            GroupSpec::Semidirect { normal, m, .. } => format!("({}):C{m}", normal.short_name()),
            GroupSpec::WreathC2 { base } => format!("{} wr C2", base.short_name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"semidirect","normal":{"kind":"cyclic","n":7},"m":3,"action":{"power":2}}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.build().unwrap().order(), 21);
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&back).unwrap(), spec);
    }

    #[test]
    fn wreath_of_q8_has_order_128() {
        let spec = GroupSpec::WreathC2 { base: Box::new(GroupSpec::GenQuaternion { order: 8 }) };
        assert_eq!(spec.build().unwrap().order(), 128);
    }
}
