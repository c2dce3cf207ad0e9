//! The implication-chain benchmark: plain search against iterated cuts.

use std::time::Instant;

use lstar::enrichment::{cut_combine, EnrichmentLevel};
use lstar::lang::Formula;
use lstar::tableaux::{check_proof, prove, Proof};
use serde::{Deserialize, Serialize};

use crate::basis_file::{chain_atom, chain_basis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PlainOutcome {
    Found { size: usize, expansions: u64 },
    BudgetExhausted { budget: u64, expansions: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: u64,
    pub plain: PlainOutcome,
    /// Size of the assembled proof of `A_n`; `None` if a step proof was not found.
    pub enriched_size: Option<usize>,
    /// The assembled proof checks at the requested level.
    pub enriched_valid: bool,
    /// Size of the last `cut_combine` output, `None` for `n = 1`.
    pub cut_size: Option<usize>,
    /// Expansions spent on the step proofs.
    pub step_expansions: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub family: String,
    pub level: String,
    pub budget: u64,
    pub rows: Vec<BenchRow>,
    /// Measured slope and intercept with `enriched_size <= c1 * n + c2`.
    pub c1: i64,
    pub c2: i64,
}

impl BenchReport {
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.enriched_valid)
    }

    pub fn within_linear_bound(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.enriched_size.is_some_and(|s| s as i64 <= self.c1 * r.n as i64 + self.c2))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<BenchReport, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("family {} at level {}, budget {}\n", self.family, self.level, self.budget);
        s += "   n  plain  expansions  enriched  cut  valid\n";
        for r in &self.rows {
            let (plain, exp) = match &r.plain {
                PlainOutcome::Found { size, expansions } => (size.to_string(), expansions.to_string()),
                PlainOutcome::BudgetExhausted { expansions, .. } => ("exhausted".into(), expansions.to_string()),
            };
            let opt = |v: Option<usize>| v.map_or("-".into(), |v| v.to_string());
            s += &format!(
                "{:>4}  {:>5}  {:>10}  {:>8}  {:>3}  {}\n",
                r.n,
                plain,
                exp,
                opt(r.enriched_size),
                opt(r.cut_size),
                if r.enriched_valid { "yes" } else { "rejected" }
            );
        }
        s + &format!("enriched size <= {} * n + {}\n", self.c1, self.c2)
    }
}

/// Proof of `A_n` from `chain:n`: the plain proof of `A_1`, then one cut per
/// further link. For `n = 1` no cut is needed and the plain proof is used.
pub fn enriched_chain_proof(n: u64, budget: u64) -> Option<(Proof, Option<usize>, u64)> {
    let basis = chain_basis(n);
    let start = prove(&chain_atom(1), &basis, EnrichmentLevel::None, budget).ok()?;
    let mut spent = start.expansions;
    let mut proof = start.proof;
    let mut last_cut = None;
    for i in 1..n {
        let step_goal = Formula::implies(chain_atom(i), chain_atom(i + 1));
        let step = prove(&step_goal, &basis, EnrichmentLevel::None, budget).ok()?;
        spent += step.expansions;
        proof = cut_combine(&proof, &step.proof, &basis).ok()?;
        last_cut = Some(proof.size());
    }
    Some((proof, last_cut, spent))
}

pub fn bench_chain(n_max: u64, level: EnrichmentLevel, budget: u64) -> BenchReport {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let start = Instant::now();
        let basis = chain_basis(n);
        let plain = match prove(&chain_atom(n), &basis, EnrichmentLevel::None, budget) {
            Ok(f) => {
                assert!(check_proof(&f.proof, &basis, EnrichmentLevel::None).is_valid());
                PlainOutcome::Found { size: f.proof.size(), expansions: f.expansions }
            }
            Err(e) => PlainOutcome::BudgetExhausted { budget, expansions: e.expansions },
        };
        let (enriched_size, enriched_valid, cut_size, step_expansions) = match enriched_chain_proof(n, budget) {
            Some((p, cut, spent)) => (Some(p.size()), check_proof(&p, &basis, level).is_valid(), cut, spent),
            None => (None, false, None, 0),
        };
        rows.push(BenchRow {
            n,
            plain,
            enriched_size,
            enriched_valid,
            cut_size,
            step_expansions,
            wall_ms: start.elapsed().as_millis() as u64,
        });
    }
    let (c1, c2) = linear_fit(&rows);
    BenchReport { family: "chain".into(), level: level.to_string(), budget, rows, c1, c2 }
}

/// Smallest slope through consecutive rows, then the intercept that makes
/// every row satisfy the bound.
fn linear_fit(rows: &[BenchRow]) -> (i64, i64) {
    let pts: Vec<(i64, i64)> = rows.iter().filter_map(|r| Some((r.n as i64, r.enriched_size? as i64))).collect();
    let ceil_div = |a: i64, b: i64| a.div_euclid(b) + (a.rem_euclid(b) != 0) as i64;
    let c1 = pts.windows(2).map(|w| ceil_div(w[1].1 - w[0].1, w[1].0 - w[0].0)).max().unwrap_or(0).max(0);
    let c2 = pts.iter().map(|&(n, s)| s - c1 * n).max().unwrap_or(0);
    (c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_needs_no_cut() {
        let r = bench_chain(1, EnrichmentLevel::RankZero, 10_000);
        let row = &r.rows[0];
        assert_eq!(row.cut_size, None);
        let PlainOutcome::Found { size, .. } = row.plain else { panic!() };
        assert_eq!(row.enriched_size, Some(size));
    }

    #[test]
    fn level_none_rejects_cuts() {
        let r = bench_chain(3, EnrichmentLevel::None, 10_000);
        assert!(r.rows[0].enriched_valid);
        assert!(!r.rows[1].enriched_valid && !r.rows[2].enriched_valid);
    }

    #[test]
    fn report_round_trips() {
        let r = bench_chain(4, EnrichmentLevel::RankZero, 10_000);
        assert!(r.all_valid() && r.within_linear_bound());
        assert_eq!(BenchReport::from_json(&r.to_json()).unwrap(), r);
    }
}
