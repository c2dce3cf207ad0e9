//! Run records for consistency searches, stored as pretty-printed JSON.

use std::path::{Path, PathBuf};
use std::time::Duration;

use lstar::lang::print_formula;
use lstar::systems::{ConsistencyMode, GeneralizedArithmetic, SearchVerdict};
use serde::{Deserialize, Serialize};

use crate::proof_file::save_proof;

pub const FORMAT: &str = "lstar-run/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub format: String,
    pub system: String,
    pub level: String,
    pub mode: String,
    pub budget: u64,
    /// `refutation-found` or `no-refutation-found`.
    pub verdict: String,
    pub expansions: Option<u64>,
    /// The refuted sentence, when one was found.
    pub sentence: Option<String>,
    /// `[x, y]` Gödel numbers of a contradictory pair.
    pub pair: Option<[String; 2]>,
    pub witness_files: Vec<String>,
    pub wall_ms: u64,
}

impl RunRecord {
    /// Builds the record and writes witness proofs beside `dir`'s stem.
    pub fn from_verdict(
        g: &GeneralizedArithmetic,
        mode: ConsistencyMode,
        budget: u64,
        verdict: &SearchVerdict,
        wall: Duration,
        witness_dir: Option<&Path>,
    ) -> std::io::Result<RunRecord> {
        let mut record = RunRecord {
            format: FORMAT.into(),
            system: g.basis.name().into(),
            level: g.level.to_string(),
            mode: mode.to_string(),
            budget,
            verdict: String::new(),
            expansions: None,
            sentence: None,
            pair: None,
            witness_files: Vec::new(),
            wall_ms: wall.as_millis() as u64,
        };
        match verdict {
            SearchVerdict::NoRefutationFound { expansions, .. } => {
                record.verdict = "no-refutation-found".into();
                record.expansions = Some(*expansions);
            }
            SearchVerdict::RefutationFound(r) => {
                record.verdict = "refutation-found".into();
                record.sentence = Some(print_formula(&r.sentence));
                record.pair = r.pair.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]);
                if let Some(dir) = witness_dir {
                    let proofs = std::iter::once(&r.proof).chain(r.negation_proof.as_ref());
                    for (i, p) in proofs.enumerate() {
                        let path: PathBuf = dir.join(format!("witness-{i}.proof"));
                        save_proof(&path, p).map_err(|e| std::io::Error::other(e.to_string()))?;
                        record.witness_files.push(path.display().to_string());
                    }
                }
            }
        }
        Ok(record)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain record serializes") + "\n"
    }

    pub fn from_text(text: &str) -> Result<RunRecord, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human summary for `system report`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "system {} at {}, mode {}, budget {}: {}",
            self.system, self.level, self.mode, self.budget, self.verdict
        );
        if let Some(e) = self.expansions {
            s += &format!(" ({e} expansions, not a consistency claim)");
        }
        if let Some(f) = &self.sentence {
            s += &format!("\n  sentence: {f}");
        }
        for w in &self.witness_files {
            s += &format!("\n  witness: {w}");
        }
        s + &format!("\n  wall time: {} ms", self.wall_ms)
    }
}
