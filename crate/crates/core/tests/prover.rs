mod common;

use std::collections::HashSet;

use qsym_core::autgroup::Permutation;
use qsym_core::graph::{
    complement, complete, complete_bipartite, cycle, empty, hoffman_singleton, petersen,
};
use qsym_core::ncalgebra::{integer, Poly, RelationInstance};
use qsym_core::prover::{
    derive_qa5, prove_no_quantum_symmetry, sanity_eval, sanity_eval_with, verify_certificate,
    Certificate, ConclusionKind, Justification, ProofError, Scope, VerifyError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_valid(g: &qsym_core::graph::Graph, cert: &Certificate) {
    let report = verify_certificate(g, cert).expect("structurally sound");
    assert!(report.valid, "{:?}", report.first_failure);
    assert_eq!(report.steps_checked, cert.steps.len());
}

#[test]
fn cycle5_full_proof() {
    let g = cycle(5).unwrap();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    assert_eq!(cert.scope, Scope::AllPairs);
    assert_eq!(cert.conclusions.len(), 625);
    assert_valid(&g, &cert);
    let quads: HashSet<_> = cert.conclusions.iter().map(|c| c.quadruple()).collect();
    assert_eq!(quads.len(), 625);
}

#[test]
fn qa5_on_cycle5_covers_edge_pairs() {
    let g = cycle(5).unwrap();
    let cert = derive_qa5(&g).unwrap();
    assert_eq!(cert.scope, Scope::EdgePairs);
    assert_eq!(cert.count(ConclusionKind::Commutes), 100);
    assert_eq!(cert.count(ConclusionKind::ZeroProduct), 0);
    assert_valid(&g, &cert);
}

#[test]
fn petersen_partition_is_exact() {
    let g = petersen();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    assert_valid(&g, &cert);
    let mut seen = HashSet::new();
    for c in &cert.conclusions {
        assert!(seen.insert(c.quadruple()), "duplicate {:?}", c.quadruple());
        let (i, j, k, l) = c.quadruple();
        let mixed = g.is_adjacent(i, k) != g.is_adjacent(j, l) || (i == k) != (j == l);
        if mixed {
            assert_eq!(c.kind, ConclusionKind::ZeroProduct, "{:?}", c.quadruple());
        } else {
            assert_eq!(c.kind, ConclusionKind::Commutes, "{:?}", c.quadruple());
        }
    }
    assert_eq!(seen.len(), 10_000);
}

#[test]
fn comm_uses_are_certified_by_earlier_conclusions() {
    let g = petersen();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    let mut commutes = std::collections::HashMap::new();
    for c in &cert.conclusions {
        if c.kind == ConclusionKind::Commutes {
            commutes
                .entry(c.step)
                .or_insert_with(Vec::new)
                .push(c.quadruple());
        }
    }
    let mut uses = 0;
    for step in &cert.steps {
        if let Justification::RelationApplication {
            relation:
                RelationInstance::Comm {
                    i,
                    j,
                    k,
                    l,
                    certified_by,
                },
            ..
        } = step.justification
        {
            uses += 1;
            assert!(certified_by < step.id);
            assert!(commutes[&certified_by].contains(&(i, j, k, l)));
        }
    }
    assert!(uses > 0);
}

#[test]
fn production_is_deterministic() {
    let g = petersen();
    let a = prove_no_quantum_symmetry(&g).unwrap().to_json();
    let b = prove_no_quantum_symmetry(&g).unwrap().to_json();
    assert!(a == b);
}

#[test]
fn json_round_trip() {
    let g = cycle(5).unwrap();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    let text = cert.to_json();
    let back = Certificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert_valid(&g, &back);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for field in ["version", "graph_digest", "steps", "conclusions"] {
        assert!(value.get(field).is_some(), "missing {field}");
    }
    let step = &value["steps"][0];
    for field in ["id", "lhs", "rhs", "justification"] {
        assert!(step.get(field).is_some(), "missing step field {field}");
    }
    assert!(step["lhs"].is_string());
}

#[test]
fn hypotheses_not_met() {
    let graphs = [
        complete(4).unwrap(),
        empty(4).unwrap(),
        complement(&petersen()),
        complete_bipartite(3, 3).unwrap(),
    ];
    for g in &graphs {
        for result in [prove_no_quantum_symmetry(g), derive_qa5(g)] {
            match result {
                Err(ProofError::ConditionsNotMet(f)) => assert!(f.witness().is_some(), "{f}"),
                other => panic!("expected ConditionsNotMet, got {other:?}"),
            }
        }
    }
}

#[test]
fn higher_degree_is_refused() {
    let g = hoffman_singleton();
    assert_eq!(
        prove_no_quantum_symmetry(&g).unwrap_err(),
        ProofError::UnsupportedDegree { k: 7 }
    );
    assert_eq!(
        prove_no_quantum_symmetry(&g).unwrap_err().to_string(),
        "UnsupportedDegree k=7"
    );
}

#[test]
fn digest_mismatch_is_an_error() {
    let cert = prove_no_quantum_symmetry(&cycle(5).unwrap()).unwrap();
    let other = petersen();
    assert!(matches!(
        verify_certificate(&other, &cert),
        Err(VerifyError::DigestMismatch { .. })
    ));
}

#[test]
fn perturbed_coefficient_names_its_step() {
    let g = cycle(5).unwrap();
    let mut cert = prove_no_quantum_symmetry(&g).unwrap();
    let id = cert.steps.len() / 2;
    let step = &mut cert.steps[id];
    let (w, c) = step
        .lhs
        .terms()
        .next()
        .map(|(w, c)| (w.clone(), c.clone()))
        .unwrap();
    step.lhs = &step.lhs + &Poly::monomial(c + integer(1), w);
    let report = verify_certificate(&g, &cert).unwrap();
    assert!(!report.valid);
    let failure = report.first_failure.unwrap();
    assert!(failure.step.is_some(), "{failure}");
    assert!(failure.step.unwrap() >= id, "{failure}");
}

#[test]
fn dropped_conclusion_is_rejected() {
    let g = cycle(5).unwrap();
    let mut cert = prove_no_quantum_symmetry(&g).unwrap();
    cert.conclusions.pop();
    assert!(!verify_certificate(&g, &cert).unwrap().valid);
}

#[test]
fn mutations_of_cycle5_are_rejected() {
    let g = cycle(5).unwrap();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let summary = common::fuzz(&g, &cert, 300, &mut rng);
    assert!(summary.passed(300), "{summary:?}");
}

#[test]
fn claim_mutations_are_always_rejected() {
    let g = cycle(5).unwrap();
    let cert = prove_no_quantum_symmetry(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 300 {
        let mut m = cert.clone();
        let (id, kind) = common::mutate(&mut m, &mut rng);
        if kind != common::MutationKind::Claim {
            continue;
        }
        checked += 1;
        let result = verify_certificate(&g, &m);
        assert!(
            common::rejected_step(&result).is_some(),
            "claim change at step {id} accepted"
        );
    }
}

#[test]
fn sanity_holds_on_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for g in [petersen(), cycle(5).unwrap()] {
        let cert = prove_no_quantum_symmetry(&g).unwrap();
        let report = sanity_eval(&g, &cert, 100, &mut rng).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.evaluations, 100 * cert.conclusions.len());
        let id = sanity_eval_with(&g, &cert, &[Permutation::identity(g.n())]).unwrap();
        assert!(id.passed());
    }
}

#[test]
fn sanity_catches_false_conclusions() {
    let g = cycle(5).unwrap();
    let mut cert = prove_no_quantum_symmetry(&g).unwrap();
    // u_11 u_22 is nonzero at the identity; claiming it vanishes must be caught
    let c = cert
        .conclusions
        .iter_mut()
        .find(|c| c.quadruple() == (1, 1, 2, 2))
        .unwrap();
    c.kind = ConclusionKind::ZeroProduct;
    let report = sanity_eval_with(&g, &cert, &[Permutation::identity(5)]).unwrap();
    assert_eq!(report.zero_product_failures, 1);
}
