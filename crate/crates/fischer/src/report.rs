//! Jordan checks on whole input systems, and their JSON reports.
//!
//! A disconnected system is checked one component at a time: its Matsuo
//! algebra is the direct sum of the component algebras, so it is Jordan iff
//! every component algebra is.

use std::time::Instant;

use fischer_core::matsuo::{
    direct_sum_check, is_jordan_with, JordanOptions, JordanReport, MatsuoAlgebra, MatsuoError,
    Verdict, Witness,
};
use fischer_core::{FieldSpec, Scalar, TripleSystem};
use serde::Serialize;

use crate::parallel::parallel_scan;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    /// `[point, coefficient]` pairs; coefficients as decimal or `num/den`.
    pub defect: Vec<(usize, String)>,
}

impl WitnessJson {
    fn from_witness(w: &Witness, points: &[usize]) -> Self {
        WitnessJson {
            x: points[w.x],
            y: points[w.y],
            z: points[w.z],
            w: points[w.w],
            defect: w
                .defect
                .terms()
                .iter()
                .map(|(p, c)| (points[*p], c.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplingJson {
    pub pairs: usize,
    pub nonzero_defects: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentJson {
    pub points: Vec<usize>,
    pub verdict: &'static str,
    pub witness: Option<WitnessJson>,
    pub quadruples_checked: u64,
    pub sampling: SamplingJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanJson {
    pub family: String,
    pub n_points: usize,
    pub field: String,
    pub delta: String,
    pub verdict: &'static str,
    pub witness: Option<WitnessJson>,
    pub quadruples_checked: u64,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub budget: u64,
    pub version: &'static str,
    pub threads: usize,
    pub pruned: bool,
    pub sampling: SamplingJson,
    pub in_theorem_scope: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentJson>>,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub json: JordanJson,
}

/// Combined verdict: any failure wins, then any exhausted budget.
fn conjunction(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Jordan;
    for v in verdicts {
        match v {
            Verdict::NotJordan => return Verdict::NotJordan,
            Verdict::BudgetExhausted => out = Verdict::BudgetExhausted,
            Verdict::Jordan => {}
        }
    }
    out
}

fn check_connected(
    system: TripleSystem,
    field: FieldSpec,
    delta: &Scalar,
    options: JordanOptions,
    threads: usize,
) -> Result<(MatsuoAlgebra, JordanReport), MatsuoError> {
    let alg = MatsuoAlgebra::new(system, field, delta.clone())?;
    let report = is_jordan_with(&alg, options, |alg, prune, budget| {
        parallel_scan(alg, prune, budget, threads)
    })?;
    Ok((alg, report))
}

pub fn check_jordan(
    system: &TripleSystem,
    family: &str,
    field: FieldSpec,
    delta: &Scalar,
    options: JordanOptions,
    threads: usize,
) -> Result<CheckOutcome, MatsuoError> {
    let start = Instant::now();
    let mut notes = Vec::new();
    if !matches!(field.characteristic(), 0 | 3) {
        notes.push(format!(
            "characteristic {} is outside the classification (characteristic 3 or 0)",
            field.characteristic()
        ));
    }
    if !system.is_fischer() {
        notes.push("input is not a Fischer space".to_string());
    }
    let components = system.connected_components();
    let mut parts = Vec::new();
    if components.len() <= 1 {
        let points: Vec<usize> = (0..system.n_points()).collect();
        parts.push((points, check_connected(system.clone(), field, delta, options, threads)?.1));
    } else {
        let sum = direct_sum_check(&MatsuoAlgebra::new(system.clone(), field, delta.clone())?);
        notes.push(format!(
            "disconnected input: {} components checked separately; direct sum check {}",
            components.len(),
            if sum.passed() { "passed" } else { "failed" }
        ));
        for points in components {
            let sub = system.induced(&points);
            let (_, report) = check_connected(sub, field, delta, options, threads)?;
            parts.push((points, report));
        }
    }
    for (_, r) in &parts {
        if !r.consistent() {
            notes.push("sampling found a nonzero Jordan defect although every basis J vanished".to_string());
        }
    }
    let verdict = conjunction(parts.iter().map(|(_, r)| r.verdict));
    let witness = parts
        .iter()
        .find_map(|(points, r)| r.witness.as_ref().map(|w| WitnessJson::from_witness(w, points)));
    let sampling = SamplingJson {
        pairs: parts.iter().map(|(_, r)| r.sampling.pairs).sum(),
        nonzero_defects: parts.iter().map(|(_, r)| r.sampling.nonzero).sum(),
    };
    let component_json = (parts.len() > 1).then(|| {
        parts
            .iter()
            .map(|(points, r)| ComponentJson {
                points: points.clone(),
                verdict: r.verdict.as_str(),
                witness: r.witness.as_ref().map(|w| WitnessJson::from_witness(w, points)),
                quadruples_checked: r.quadruples_checked,
                sampling: SamplingJson {
                    pairs: r.sampling.pairs,
                    nonzero_defects: r.sampling.nonzero,
                },
            })
            .collect()
    });
    let json = JordanJson {
        family: family.to_string(),
        n_points: system.n_points(),
        field: field.characteristic().to_string(),
        delta: delta.to_string(),
        verdict: verdict.as_str(),
        witness,
        quadruples_checked: parts.iter().map(|(_, r)| r.quadruples_checked).sum(),
        seed: options.seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
        budget: options.budget,
        version: VERSION,
        threads,
        pruned: parts.iter().all(|(_, r)| r.pruned),
        sampling,
        in_theorem_scope: matches!(field.characteristic(), 0 | 3),
        notes,
        components: component_json,
    };
    Ok(CheckOutcome { verdict, json })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fischer_core::constructions::{affine_space, sym_fischer};

    fn options() -> JordanOptions {
        JordanOptions {
            samples: 20,
            ..JordanOptions::default()
        }
    }

    #[test]
    fn witness_in_report() {
        let q = FieldSpec::Rational;
        let out = check_jordan(&affine_space(3), "affine", q, &q.delta_default(), options(), 2).unwrap();
        assert_eq!(out.verdict, Verdict::NotJordan);
        let w = out.json.witness.unwrap();
        assert!(!w.defect.is_empty());
        assert_eq!(out.json.field, "0");
        assert_eq!(out.json.delta, "1/4");
    }

    #[test]
    fn components_map_back_to_input_points() {
        let q = FieldSpec::Rational;
        let s = sym_fischer(4).disjoint_union(&affine_space(3));
        let out = check_jordan(&s, "input", q, &q.delta_default(), options(), 2).unwrap();
        assert_eq!(out.verdict, Verdict::NotJordan);
        let comps = out.json.components.as_ref().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].verdict, "jordan");
        let w = out.json.witness.unwrap();
        assert!(w.x >= 6 && w.y >= 6);
        assert!(out.json.notes.iter().any(|n| n.contains("2 components")));
    }

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(conjunction([Jordan, Jordan]), Jordan);
        assert_eq!(conjunction([Jordan, BudgetExhausted]), BudgetExhausted);
        assert_eq!(conjunction([BudgetExhausted, NotJordan]), NotJordan);
        assert_eq!(conjunction([]), Jordan);
    }
}
