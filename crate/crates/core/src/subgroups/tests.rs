use std::collections::BTreeSet;

use super::*;
use crate::rootdata::is_prime;

fn arc(s: &str) -> Arc<ChevalleyAlgebra> {
    Arc::new(build_algebra(&RootSystem::new(&parse_components(s).unwrap()).unwrap()).unwrap())
}

/// Types obtained by deleting each node of the extended diagram, read off
/// the extended Cartan matrix directly.
fn deletion_oracle(sys: &RootSystem, only_prime: bool) -> BTreeSet<Vec<String>> {
    let ext = sys.extended_diagram();
    let n = ext.nodes.len();
    (0..n)
        .filter(|&k| ext.nodes[k].simple.is_some() && (!only_prime || is_prime(ext.nodes[k].mark as u64)))
        .map(|k| {
            let keep: Vec<usize> = (0..n).filter(|&m| m != k).collect();
            let m: Vec<Vec<i64>> = keep.iter().map(|&a| keep.iter().map(|&b| ext.cartan[a][b]).collect()).collect();
            let mut types: Vec<String> = recognize_cartan(&m)
                .unwrap()
                .into_iter()
                .map(|(t, order)| {
                    let first = &ext.nodes[keep[order[0]]].root;
                    let short = !sys.components()[0].is_simply_laced() && t.is_simply_laced() && sys.norm(first) < sys.norm(&ext.nodes[0].root);
                    format!("{}{t}", if short { "~" } else { "" })
                })
                .collect();
            types.sort();
            types
        })
        .collect()
}

fn labels(entries: &[BdsEntry], pick: impl Fn(&BdsEntry) -> bool) -> BTreeSet<Vec<String>> {
    entries.iter().filter(|e| pick(e)).map(|e| e.signature.labels.clone()).collect()
}

#[test]
fn long_a2_in_g2() {
    let g = arc("G2");
    let sys = g.system();
    let long: Vec<usize> = (0..sys.num_roots()).filter(|&r| sys.is_long(r)).collect();
    let phi = sys.subsystem(&long).unwrap();
    let emb = regular_embedding(g.clone(), &phi, "G2/A2").unwrap();
    assert_eq!(emb.sub_system().type_string(), "A2");
    assert_eq!(emb.sub_basis.len() + 2 - emb.sub_system().rank(), 8);
    assert!(emb.center_basis.is_empty());
}

#[test]
fn f4_levi_is_c3() {
    let g = arc("F4");
    let phi = g.system().standard_levi(&[1, 2, 3]);
    let emb = regular_embedding(g, &phi, "F4/levi-234").unwrap();
    assert_eq!(emb.sub_system().type_string(), "C3");
    assert_eq!(emb.dim(), 18 + 3 + 1);
    // λ of H maps to its own pairings on the Levi nodes.
    let lam = emb.map_cocharacter(&Cocharacter::new(vec![2, 0, 0])).unwrap();
    let sys = emb.ambient().system();
    for (k, &b) in phi.components(sys)[0].base.iter().enumerate() {
        assert_eq!(lam.degree(&sys.root(b).coords), [2, 0, 0][k]);
    }
}

#[test]
fn whole_system_is_identity() {
    let g = arc("B3");
    let phi = g.system().standard_levi(&[0, 1, 2]);
    let emb = regular_embedding(g.clone(), &phi, "B3/levi-123").unwrap();
    assert_eq!(emb.dim(), g.dim());
    assert!(emb.center_basis.is_empty());
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(emb.cartan_map.get(i, j).to_int(), Some(i64::from(i == j)));
        }
    }
}

#[test]
fn torus_levi() {
    let emb = embedding_by_id("A2/levi-").unwrap();
    assert_eq!(emb.sub_basis.len(), 0);
    assert_eq!(emb.dim(), 2);
}

#[test]
fn e6_folding_gives_f4() {
    let emb = embedding_by_id("E6/F4-folding").unwrap();
    assert_eq!(emb.sub_system().type_string(), "F4");
    assert_eq!(emb.dim(), 52);
}

#[test]
fn triality_gives_g2() {
    let emb = embedding_by_id("D4/G2-triality").unwrap();
    assert_eq!(emb.sub_system().type_string(), "G2");
    assert_eq!(emb.dim(), 14);
    let theta = match &emb.kind {
        EmbeddingKind::FixedPoints(t) => t.clone(),
        _ => unreachable!(),
    };
    assert_eq!(theta.order, 3);
}

#[test]
fn identity_automorphism_fixes_everything() {
    let g = arc("F4");
    let theta = DiagramAutomorphism::new(&g, vec![0, 1, 2, 3]).unwrap();
    assert_eq!(theta.order, 1);
    assert_eq!(theta.fixed_space(&g).len(), 52);
    let emb = fixed_point_embedding(g, theta, "F4/id").unwrap();
    assert_eq!(emb.dim(), 52);
}

#[test]
fn non_symmetries_rejected() {
    let g = arc("B3");
    assert!(DiagramAutomorphism::new(&g, vec![2, 1, 0]).is_err());
    assert!(DiagramAutomorphism::new(&g, vec![0, 0, 1]).is_err());
}

#[test]
fn diagonals() {
    let emb = embedding_by_id("A1xA1/diagonal").unwrap();
    assert_eq!(emb.dim(), 3);
    let emb = embedding_by_id("E8/D4xD4-diagonal").unwrap();
    assert_eq!(emb.sub_system().type_string(), "D4");
    assert_eq!(emb.dim(), 28);
    // ι∘λ pairs the same way on both factors.
    let lam = emb.map_cocharacter(&Cocharacter::new(vec![2, 0, 2, 2])).unwrap();
    assert_eq!(lam.pairings(), &[2, 0, 2, 2, 2, 0, 2, 2]);
}

#[test]
fn unknown_ids() {
    for id in ["F4", "F4/levi-5", "F4/levi-11", "F4/E6", "Q4/levi-1", "A2/diagonal"] {
        assert!(embedding_by_id(id).is_err(), "{id}");
    }
}

#[test]
fn bds_ids() {
    let emb = embedding_by_id("F4/A2+~A2").unwrap();
    assert_eq!(emb.dim(), 8 + 8);
    let emb = embedding_by_id("F4/A3+~A1").unwrap();
    assert_eq!(emb.dim(), 15 + 3);
}

#[test]
fn f4_maximal() {
    let sys = RootSystem::new(&parse_components("F4").unwrap()).unwrap();
    let entries = borel_de_siebenthal(&sys, BdsOptions::default());
    let got = labels(&entries, |e| e.maximal);
    assert_eq!(got, deletion_oracle(&sys, true));
    let named: BTreeSet<String> = entries.iter().filter(|e| e.maximal).map(|e| e.label.clone()).collect();
    assert_eq!(named, ["A1+C3", "A2+~A2", "B4"].iter().map(|s| s.to_string()).collect());
    let a3 = entries.iter().find(|e| e.label == "~A1+A3").unwrap();
    assert!(!a3.maximal);
    assert_eq!(a3.removed_mark, Some(4));
}

#[test]
fn a2_has_only_levis() {
    let sys = RootSystem::new(&parse_components("A2").unwrap()).unwrap();
    let entries = borel_de_siebenthal(&sys, BdsOptions { depth: None });
    let got: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(got, ["A2", "A1", "T"]);
    assert!(entries.iter().all(|e| !e.maximal));
}

#[test]
fn e8_depth_one() {
    let sys = RootSystem::new(&parse_components("E8").unwrap()).unwrap();
    let entries = borel_de_siebenthal(&sys, BdsOptions { depth: Some(1) });
    let ext = labels(&entries, |e| e.step == BdsStep::Extended);
    assert_eq!(ext, deletion_oracle(&sys, false));
    let names: BTreeSet<&str> = entries.iter().map(|e| e.label.as_str()).collect();
    assert!(names.contains("D8"));
    assert!(names.contains("A1+E7"));
}

#[test]
fn lattice_invariants() {
    for ty in ["G2", "B3", "F4", "D4xA1"] {
        let sys = RootSystem::new(&parse_components(ty).unwrap()).unwrap();
        let entries = borel_de_siebenthal(&sys, BdsOptions { depth: None });
        for e in &entries {
            assert!(sys.is_closed_subsystem(e.spec.roots()));
            assert!(e.good_prime_consistent, "{ty} {}", e.label);
            if e.depth > 0 {
                assert!(e.deriziotis, "{ty} {}", e.label);
            }
        }
    }
}

#[test]
fn deriziotis_examples() {
    let sys = RootSystem::new(&parse_components("F4").unwrap()).unwrap();
    let full = sys.subsystem(&(0..sys.num_roots()).collect::<Vec<_>>()).unwrap();
    assert!(!deriziotis_check(&sys, &full, 5));
    let entries = borel_de_siebenthal(&sys, BdsOptions::default());
    for e in entries.iter().filter(|e| e.depth == 1) {
        assert!(deriziotis_check(&sys, &e.spec, 5), "{}", e.label);
    }
    let a2a2 = entries.iter().find(|e| e.label == "A2+~A2").unwrap();
    assert!(deriziotis_check(&sys, &a2a2.spec, 5));
    // In characteristic 3 the mark-3 deletion is unavailable.
    assert!(!deriziotis_check(&sys, &a2a2.spec, 3));
}
