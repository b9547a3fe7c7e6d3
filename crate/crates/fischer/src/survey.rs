//! The classification table: every implemented family up to a given rank,
//! with its affine-type status, the tau-commutation scan and the Jordan
//! verdict over one field.

use fischer_core::incidence::{Rank, TauCommutation};
use fischer_core::matsuo::{JordanOptions, MatsuoError};
use fischer_core::{FieldSpec, Scalar, TripleSystem};
use serde::Serialize;

use crate::families::Family;
use crate::report::check_jordan;

/// Rank bound for the survey search; all implemented spaces of rank at most
/// 4 come out exact well below it.
const SURVEY_RANK_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub space: String,
    pub n_points: usize,
    pub rank: String,
    pub affine_type: bool,
    pub tau_commutation: String,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub field: String,
    pub max_rank: usize,
    pub in_theorem_scope: bool,
    pub rows: Vec<SurveyRow>,
}

fn candidates(max_rank: usize) -> Vec<(Family, Option<usize>)> {
    let mut out = Vec::new();
    // Sym(n) has rank n-1, AG(n,3) rank n+1.
    for n in 3..=max_rank + 1 {
        out.push((Family::Sym, Some(n)));
    }
    for n in 1..max_rank {
        out.push((Family::Affine, Some(n)));
    }
    out.push((Family::Da22, None));
    out.push((Family::Hall81, None));
    out
}

fn rank_text(rank: Rank) -> String {
    match rank {
        Rank::Exact(k) => k.to_string(),
        Rank::AtLeast { lower, upper } => format!("{lower}..={upper}"),
    }
}

pub fn survey(
    max_rank: usize,
    field: FieldSpec,
    delta: &Scalar,
    options: JordanOptions,
    threads: usize,
) -> Result<Survey, MatsuoError> {
    let mut rows = Vec::new();
    for (family, n) in candidates(max_rank) {
        let system: TripleSystem = family.build(n).expect("survey parameters are in range");
        let rank = system.rank(SURVEY_RANK_CAP);
        let lower = match rank {
            Rank::Exact(k) => k,
            Rank::AtLeast { lower, .. } => lower,
        };
        if lower > max_rank {
            continue;
        }
        let tau = match system.affine_tau_commutation() {
            TauCommutation::Holds => "holds".to_string(),
            TauCommutation::Witness(x, y, z) => format!("fails at ({x},{y},{z})"),
        };
        let check = check_jordan(&system, family.name(), field, delta, options, threads)?;
        rows.push(SurveyRow {
            space: family.label(n),
            n_points: system.n_points(),
            rank: rank_text(rank),
            affine_type: system.is_affine_type(),
            tau_commutation: tau,
            verdict: check.verdict.as_str(),
        });
    }
    Ok(Survey {
        field: field.characteristic().to_string(),
        max_rank,
        in_theorem_scope: matches!(field.characteristic(), 0 | 3),
        rows,
    })
}

impl Survey {
    pub fn to_table(&self) -> String {
        let mut out = format!("field: characteristic {}\n", self.field);
        if !self.in_theorem_scope {
            out.push_str(&format!(
                "note: characteristic {} is outside the classification (characteristic 3 or 0); verdicts are as computed\n",
                self.field
            ));
        }
        let header = ["space", "points", "rank", "affine", "tau-commutation", "verdict"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.space.clone(),
                    r.n_points.to_string(),
                    r.rank.clone(),
                    if r.affine_type { "yes" } else { "no" }.to_string(),
                    r.tau_commutation.clone(),
                    r.verdict.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..6)
            .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
            .collect();
        let mut line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        line(header.to_vec());
        for c in &cells {
            line(c.iter().map(String::as_str).collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_three_over_q() {
        let q = FieldSpec::Rational;
        let options = JordanOptions {
            samples: 10,
            ..JordanOptions::default()
        };
        let s = survey(3, q, &q.delta_default(), options, 2).unwrap();
        let spaces: Vec<&str> = s.rows.iter().map(|r| r.space.as_str()).collect();
        assert_eq!(spaces, ["Sym(3)", "Sym(4)", "AG(1,3)", "AG(2,3)", "DA(2,2)"]);
        assert!(s.rows.iter().all(|r| r.verdict == "jordan"));
        assert!(s.to_table().contains("AG(2,3)"));
    }
}
