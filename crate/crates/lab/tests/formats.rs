use std::time::Duration;

use lstar::enrichment::EnrichmentLevel;
use lstar::lang::parse_formula;
use lstar::systems::{consistency_search, relational_arith_basis, AxiomBasis, ConsistencyMode, GeneralizedArithmetic};
use lstar::tableaux::{check_proof, prove};
use lstar_lab::basis_file::{chain_basis, parse_basis, resolve, write_basis};
use lstar_lab::bench::{bench_chain, BenchReport};
use lstar_lab::gen::Gen;
use lstar_lab::proof_file::{read_proof, write_proof, ProofFileError};
use lstar_lab::run_record::RunRecord;

#[test]
fn generated_proofs_round_trip() {
    let mut g = Gen::new(3);
    let mut seen = 0;
    while seen < 50 {
        let (goal, axioms) = g.provable_goal();
        let basis = AxiomBasis::new("gen", axioms);
        let Ok(found) = prove(&goal, &basis, EnrichmentLevel::None, 4000) else { continue };
        let text = write_proof(&found.proof);
        let back = read_proof(&text).unwrap();
        assert_eq!(back, found.proof);
        assert_eq!(write_proof(&back), text);
        seen += 1;
    }
}

#[test]
fn proof_file_errors_name_the_line() {
    let good = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/tautology.proof")).unwrap();
    let bad = good.replacen("\"rule\":2", "\"rule\":9", 1);
    match read_proof(&bad) {
        Err(ProofFileError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    assert!(matches!(read_proof(""), Err(ProofFileError::Empty)));
}

#[test]
fn basis_round_trip() {
    for b in [relational_arith_basis(), chain_basis(5), AxiomBasis::empty()] {
        let text = write_basis(&b);
        let back = parse_basis(b.name(), &text, "mem").unwrap();
        assert_eq!(back.iter().collect::<Vec<_>>(), b.iter().collect::<Vec<_>>());
    }
    let tiny = resolve(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/tiny.basis")).unwrap();
    assert_eq!(tiny.name(), "tiny");
    assert_eq!(tiny.len(), 2);
    assert!(resolve("no-such-basis").is_err());
}

#[test]
fn run_record_round_trip() {
    let axioms = vec![parse_formula("C0 = C1").unwrap(), parse_formula("~(C0 = C1)").unwrap()];
    let g = GeneralizedArithmetic::new(AxiomBasis::new("bad", axioms), EnrichmentLevel::None);
    let dir = tempfile::tempdir().unwrap();
    let mode = ConsistencyMode::Level(1);
    let v = consistency_search(&g, mode, 10_000);
    let rec = RunRecord::from_verdict(&g, mode, 10_000, &v, Duration::from_millis(3), Some(dir.path())).unwrap();
    assert_eq!(RunRecord::from_text(&rec.to_text()).unwrap(), rec);
    assert_eq!(rec.witness_files.len(), 2);
    for f in &rec.witness_files {
        let p = read_proof(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert!(check_proof(&p, &g.basis, g.level).is_valid());
    }
    assert!(RunRecord::from_text("{\"format\":\"lstar-run/1\",\"extra\":1}").is_err());
}

#[test]
fn bench_report_round_trip() {
    let r = bench_chain(3, EnrichmentLevel::RankZero, 20_000);
    assert_eq!(BenchReport::from_json(&r.to_json()).unwrap(), r);
}
