//! Full analysis report for one group and prime: decomposition, factors,
//! profile and per-factor embedding annotations, as JSON or a text table.

use std::time::Instant;

use serde_json::{json, Value};

use crate::albert::SchurIndex;
use crate::crossed::{crossed_decompose_spec, CrossedDecomposition};
use crate::error::Result;
use crate::groupkit::GroupSpec;
use crate::hondatate::{good_embedding, EmbedOptions};
use crate::inertial::{analyze_group, profile_from_factors, summary, GroupAnalysis, InertialProfile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub seed: u64,
    /// Include wall-clock timing; off by default so reports are reproducible.
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub input: Value,
    pub label: String,
    pub analysis: GroupAnalysis,
    pub profile: InertialProfile,
    pub twisted: Option<CrossedDecomposition>,
    pub seed: u64,
    pub elapsed_ms: Option<u128>,
}

fn annotation(f: &crate::albert::SimpleFactor, p: u64) -> Value {
    let embed = match f.schur_index {
        SchurIndex::Bounded { .. } => json!({"good_embedding": "undetermined"}),
        SchurIndex::Exact(_) => match good_embedding(&f.algebra(), Some(f.albert_type), p, EmbedOptions::default()) {
            Ok(e) => serde_json::to_value(e).unwrap_or(Value::Null),
            Err(e) => json!({"good_embedding": "undetermined", "reason": e.to_string()}),
        },
    };
    json!({"geometric": true, "embedding": embed})
}

impl AnalysisReport {
    pub fn build(spec: &GroupSpec, p: u64, opts: ReportOptions) -> Result<Self> {
        // the clock is only read on request: wasm32 has no Instant
        let start = opts.timing.then(Instant::now);
        let g = spec.build()?;
        let analysis = analyze_group(&g, p, opts.seed)?;
        let mut profile = profile_from_factors(g.order(), p, analysis.factors.clone());
        profile.notes = crate::inertial::inertial_profile_notes(&g, p, &profile);
        let twisted = match &analysis.crossed {
            Some(c) => Some(c.clone()),
            None => crossed_decompose_spec(spec, p, opts.seed).ok(),
        };
        Ok(AnalysisReport {
            input: serde_json::to_value(spec).unwrap_or(Value::Null),
            label: g.label().unwrap_or("G").to_string(),
            analysis,
            profile,
            twisted,
            seed: opts.seed,
            elapsed_ms: start.map(|s| s.elapsed().as_millis()),
        })
    }

    pub fn to_json(&self) -> Value {
        let d = &self.analysis.decomposition;
        let p = self.analysis.p;
        let mut v = json!({
            "tool": "inertia",
            "version": VERSION,
            "seed": self.seed,
            "input": {"group": self.input, "label": self.label, "prime": p},
            "group_order": self.analysis.group_order,
            "ramification": {
                "p": d.p,
                "sylow_order": d.sylow_order,
                "n": d.n,
                "complement_generator": d.complement_generator,
            },
            "rational_characters": self.analysis.rationals.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "factors": self.analysis.factors,
            "annotations": self.analysis.factors.iter().map(|f| annotation(f, p)).collect::<Vec<_>>(),
            "twisted_presentation": self.twisted.as_ref().map(|t| json!({
                "route": t.route,
                "factors": t.algebras(),
                "supported": t.supported(),
            })),
            "profile": self.profile,
        });
        if let Some(ms) = self.elapsed_ms {
            v["timing_ms"] = json!(ms);
        }
        v
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let d = &self.analysis.decomposition;
        out.push_str(&format!(
            "{} (order {}), p = {}: Sylow order {}, complement order {}\n",
            self.label, self.analysis.group_order, self.analysis.p, d.sylow_order, d.n
        ));
        out.push_str(&format!(
            "{:<4} {:<36} {:>4} {:>3} {:>5} {:>6} {:>5} {:>6} {:>7} {:>6}\n",
            "#", "factor", "type", "fs", "index", "deg", "vrp", "t_dim", "a_unit", "kernel"
        ));
        for (i, f) in self.analysis.factors.iter().enumerate() {
            let r = f.rep_dims();
            let index = match f.schur_index {
                SchurIndex::Exact(m) => m.to_string(),
                SchurIndex::Bounded { lo, hi } => format!("{lo}..{hi}"),
            };
            let t = if r.t_dim_lo == r.t_dim_hi {
                r.t_dim_lo.to_string()
            } else {
                format!("{}..{}", r.t_dim_lo, r.t_dim_hi)
            };
            out.push_str(&format!(
                "{:<4} {:<36} {:>4} {:>3} {:>5} {:>6} {:>5} {:>6} {:>7} {:>6}\n",
                i,
                f.describe(),
                f.albert_type.to_string(),
                f.fs,
                index,
                f.deg(),
                r.vrp_dim,
                t,
                crate::exactnum::fmt_rat(&r.a_unit),
                f.kernel.order()
            ));
        }
        out.push_str(&summary(&self.profile));
        out.push('\n');
        for n in &self.profile.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}
