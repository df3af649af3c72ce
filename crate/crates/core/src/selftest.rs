//! Built-in regression suite over the worked examples.

use serde::Serialize;
use serde_json::json;

use crate::albert::{SchurIndex, SimpleFactor};
use crate::crossed::AlbertType;
use crate::error::Result;
use crate::exactnum::SubfieldDesc;
use crate::groupkit::{ActionSpec, GroupSpec};
use crate::hondatate::{good_embedding, is_weil_number, parse_algebra, tate_report, EmbedOptions, IntPoly, WeilNumber};
use crate::inertial::{inertial_profile, Pair};

#[derive(Clone, Debug, Serialize)]
pub struct SelftestCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn pairs(spec: GroupSpec, p: u64) -> Result<Vec<Pair>> {
    Ok(inertial_profile(&spec.build()?, p, 0)?.minimal_pairs)
}

fn factors(spec: GroupSpec, p: u64) -> Result<Vec<SimpleFactor>> {
    Ok(inertial_profile(&spec.build()?, p, 0)?.factors)
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> SelftestCase {
    match f() {
        Ok((passed, detail)) => SelftestCase { name, passed, detail },
        Err(e) => SelftestCase { name, passed: false, detail: format!("error: {e}") },
    }
}

fn embed(v: serde_json::Value, p: u64) -> Result<bool> {
    let (e, ty) = parse_algebra(&v)?;
    Ok(good_embedding(&e, ty, p, EmbedOptions::default())?.is_yes())
}

pub fn run() -> Vec<SelftestCase> {
    vec![
        check("Q8 at 2: minimal pairs (0,1), (4,0)", || {
            let got = pairs(GroupSpec::GenQuaternion { order: 8 }, 2)?;
            Ok((got == vec![(0, 1), (4, 0)], format!("{got:?}")))
        }),
        check("Z/4 at 2: minimal pairs (0,1), (2,0)", || {
            let got = pairs(GroupSpec::Cyclic { n: 4 }, 2)?;
            Ok((got == vec![(0, 1), (2, 0)], format!("{got:?}")))
        }),
        check("Z/15 at 3: minimal pairs", || {
            let got = pairs(GroupSpec::Cyclic { n: 15 }, 3)?;
            Ok((got == vec![(0, 3), (2, 2), (4, 1), (6, 0)], format!("{got:?}")))
        }),
        check("D13 at 13: Q x Q x M_2(Q(zeta_13)^+), t_G = a_G = 12", || {
            let g = GroupSpec::Dihedral { n: 13 }.build()?;
            let pr = inertial_profile(&g, 13, 0)?;
            let names: Vec<String> = pr.factors.iter().map(|f| f.describe()).collect();
            let ok = names == ["Q", "Q", "M_2(Q(zeta_13)^+)"] && pr.t_g() == (12, 12) && pr.a_g() == (12, 12);
            Ok((ok, format!("{names:?}, t_G {:?}, a_G {:?}", pr.t_g(), pr.a_g())))
        }),
        check("Z/7 x| Z/9 at 7: Schur index 3", || {
            let spec = GroupSpec::Semidirect {
                normal: Box::new(GroupSpec::Cyclic { n: 7 }),
                m: 9,
                action: ActionSpec::Power { power: 2 },
            };
            let fs = factors(spec, 7)?;
            let ok = fs.iter().any(|f| f.schur_index == SchurIndex::Exact(3));
            Ok((ok, fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(", ")))
        }),
        check("Z/3 x| Z/4 at 3: H_{3,inf}", || {
            let spec = GroupSpec::Semidirect {
                normal: Box::new(GroupSpec::Cyclic { n: 3 }),
                m: 4,
                action: ActionSpec::Power { power: 2 },
            };
            let fs = factors(spec, 3)?;
            let ok = fs.iter().any(|f| {
                f.albert_type == AlbertType::III && f.center == SubfieldDesc::rationals() && f.invariants.len() == 2
            });
            Ok((ok, fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(", ")))
        }),
        check("Weil: x-4 (q=16), x^2-x+5 (q=5) yes; x^2-5x+5 (q=5) no", || {
            let w = |s: &str, p, n| -> Result<bool> { Ok(is_weil_number(&IntPoly::parse(s)?, p, n)?.weil) };
            let got = (w("x-4", 2, 4)?, w("x^2-x+5", 5, 1)?, w("x^2-5x+5", 5, 1)?);
            Ok((got == (true, true, false), format!("{got:?}")))
        }),
        check("Tate: x-p with q=p^2 gives H_{p,inf}, dim 1", || {
            let mut ok = true;
            for p in [2u64, 3, 5, 7] {
                let r = tate_report(&WeilNumber::new(IntPoly::parse(&format!("x-{p}"))?, p, 2)?);
                ok &= r.index == SchurIndex::Exact(2) && r.dim_a() == (1, 1) && r.albert_type == AlbertType::III;
            }
            Ok((ok, String::new()))
        }),
        check("good embeddings: M_3(H_{2,inf}) yes, Q(zeta_5) yes, Q(sqrt2) quaternion at 7 no", || {
            let a = embed(
                json!({"center": {"conductor": 1}, "matrix_size": 3,
                    "invariants": [{"place": "inf", "value": "1/2"}, {"place": "2", "value": "1/2"}]}),
                2,
            )?;
            let b = embed(json!({"center": {"conductor": 5}, "matrix_size": 1}), 3)?;
            let c = embed(
                json!({"center": {"conductor": 8, "stabilizer_generators": [7]}, "matrix_size": 1,
                    "invariants": [{"place": "inf#0", "value": "1/2"}, {"place": "inf#1", "value": "1/2"}]}),
                7,
            )?;
            Ok((a && b && !c, format!("{a} {b} {c}")))
        }),
    ]
}
