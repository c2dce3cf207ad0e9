//! Axiom bases by name or from a text file with one sentence per line.
//! Blank lines and lines starting with `//` are skipped.

use std::path::Path;

use lstar::lang::{encode_u64, parse_formula, print_formula, Formula};
use lstar::systems::{relational_arith_basis, AxiomBasis};

#[derive(Debug, thiserror::Error)]
pub enum BasisError {
    #[error("{path}:{line}: {message}")]
    Syntax { path: String, line: usize, message: String },
    #[error("unknown basis `{0}` (expected empty, relational-arith, chain:N or a file)")]
    Unknown(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

/// `A_i`: the true atom `encode_nat(i) = encode_nat(i)`.
pub fn chain_atom(i: u64) -> Formula {
    let n = encode_u64(i);
    Formula::eq(n.clone(), n)
}

/// `A_0` and `A_i -> A_(i+1)` for `i < n`.
pub fn chain_basis(n: u64) -> AxiomBasis {
    let mut axioms = vec![chain_atom(0)];
    axioms.extend((0..n).map(|i| Formula::implies(chain_atom(i), chain_atom(i + 1))));
    AxiomBasis::new(format!("chain:{n}"), axioms).declared_true()
}

pub fn builtin(name: &str) -> Option<AxiomBasis> {
    match name {
        "empty" => Some(AxiomBasis::empty()),
        "relational-arith" => Some(relational_arith_basis()),
        _ => name.strip_prefix("chain:")?.parse().ok().map(chain_basis),
    }
}

pub fn parse_basis(name: &str, text: &str, path: &str) -> Result<AxiomBasis, BasisError> {
    let mut axioms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let f = parse_formula(line).map_err(|e| BasisError::Syntax {
            path: path.into(),
            line: i + 1,
            message: e.to_string(),
        })?;
        if !f.is_closed() {
            return Err(BasisError::Syntax { path: path.into(), line: i + 1, message: "axiom is not a sentence".into() });
        }
        axioms.push(f);
    }
    Ok(AxiomBasis::new(name, axioms))
}

pub fn write_basis(b: &AxiomBasis) -> String {
    b.iter().map(|a| print_formula(a) + "\n").collect()
}

/// A built-in name, else a file whose stem names the basis.
pub fn resolve(source: &str) -> Result<AxiomBasis, BasisError> {
    if let Some(b) = builtin(source) {
        return Ok(b);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(BasisError::Unknown(source.into()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| BasisError::Io(source.into(), e))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
    parse_basis(name, &text, source)
}
