use super::*;
use crate::rootdata::parse_components;

fn alg(s: &str) -> ChevalleyAlgebra {
    build_algebra(&RootSystem::new(&parse_components(s).unwrap()).unwrap()).unwrap()
}

fn catalog(a: &ChevalleyAlgebra) -> OrbitCatalog {
    enumerate_orbits(a, CatalogOptions::default()).unwrap()
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Partitions of `n` in which every part satisfying `restricted` has even
/// multiplicity. Returns (count, number of partitions with only even parts,
/// each with even multiplicity).
fn partitions(n: usize, restricted: impl Fn(usize) -> bool + Copy) -> (usize, usize) {
    fn go(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            acc.push(p);
            go(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    go(n, n, &mut Vec::new(), &mut all);
    let valid: Vec<&Vec<usize>> = all
        .iter()
        .filter(|p| {
            p.iter()
                .all(|&x| !restricted(x) || p.iter().filter(|&&y| y == x).count() % 2 == 0)
        })
        .collect();
    let very_even = valid
        .iter()
        .filter(|p| p.iter().all(|&x| x % 2 == 0 && p.iter().filter(|&&y| y == x).count() % 2 == 0))
        .count();
    (valid.len(), very_even)
}

#[test]
fn classical_counts_match_partitions() {
    // Type A_{n-1}: partitions of n.
    for n in 2..=5 {
        let (count, _) = partitions(n, |_| false);
        assert_eq!(catalog(&alg(&format!("A{}", n - 1))).len(), count);
    }
    // B3 = so(7): even parts with even multiplicity.
    assert_eq!(catalog(&alg("B3")).len(), partitions(7, |x| x % 2 == 0).0);
    // C3 = sp(6): odd parts with even multiplicity.
    assert_eq!(catalog(&alg("C3")).len(), partitions(6, |x| x % 2 == 1).0);
    // D4 = so(8): very even partitions split in two.
    let (count, very_even) = partitions(8, |x| x % 2 == 0);
    assert_eq!(count + very_even, 12);
    assert_eq!(catalog(&alg("D4")).len(), 12);
}

#[test]
fn a2_catalog() {
    let c = catalog(&alg("A2"));
    let diagrams: Vec<Vec<i64>> = c.orbits.iter().map(|o| o.diagram.clone()).collect();
    assert_eq!(diagrams, vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    let labels: Vec<&str> = c.orbits.iter().map(|o| o.label.as_str()).collect();
    assert_eq!(labels, vec!["1", "A1", "A2"]);
}

#[test]
fn g2_catalog_labels() {
    let a = alg("G2");
    let c = catalog(&a);
    let labels: Vec<&str> = c.orbits.iter().map(|o| o.label.as_str()).collect();
    assert_eq!(labels, vec!["1", "A1", "~A1", "G2(a1)", "G2"]);
    assert_eq!(c.by_label("G2").unwrap().diagram, vec![2, 2]);
    assert!(c.by_label("G2").unwrap().distinguished);
    assert!(c.by_label("G2(a1)").unwrap().distinguished);
    let dims: Vec<usize> = c.orbits.iter().map(|o| o.dim_orbit).collect();
    assert_eq!(dims, vec![0, 6, 8, 10, 12]);
}

#[test]
fn f4_catalog_facts() {
    let a = alg("F4");
    let c = catalog(&a);
    assert_eq!(c.len(), 16);
    for l in ["F4(a3)", "F4(a1)", "~A2A1", "A1~A1", "C3", "~A2", "F4(a2)", "B3", "C3(a1)"] {
        assert!(c.by_label(l).is_some(), "{l} missing");
    }
    assert!(c.by_label("F4(a3)").unwrap().distinguished);
    assert!(c.by_label("F4(a1)").unwrap().distinguished);
    assert_eq!(c.by_label("~A2A1").unwrap().reductive_rank, 1);
    assert_eq!(c.by_label("~A2").unwrap().reductive_rank, 2);
    assert_eq!(c.by_label("C3").unwrap().reductive_rank, 1);
    assert_eq!(c.by_label("F4").unwrap().dim_orbit, 48);
    assert_eq!(c.orbits.iter().filter(|o| o.distinguished).count(), 4);
    for o in &c.orbits {
        assert_eq!(identify_orbit(&a, &c, &o.representative).unwrap().label, o.label);
        assert_eq!(is_distinguished(&a, o, 1).unwrap(), o.distinguished);
        // dim 𝔤(j) = dim 𝔤(−j), dim 𝔤(0) ≥ dim 𝔤(2).
        let g = grade(&a, &o.cocharacter());
        for j in 1..=6 {
            assert_eq!(g.dim(j), g.dim(-j));
        }
        assert!(g.dim(0) >= g.dim(2));
    }
}

#[test]
fn jacobson_morozov_examples() {
    let a = alg("A2");
    assert_eq!(jacobson_morozov(&a, &LieElement::zero()).unwrap(), Sl2Triple::zero());
    let e = LieElement::basis(0);
    let t = jacobson_morozov(&a, &e).unwrap();
    assert_eq!(t.h, LieElement::basis(a.cartan_index(0)));
    assert_eq!(t.f, LieElement::basis(a.system().negative(0)));
    assert_eq!(weighted_diagram(&a, &t).unwrap(), vec![1, 1]);
    let reg = LieElement::from_terms([(0, q(1)), (1, q(1))]);
    let t = jacobson_morozov(&a, &reg).unwrap();
    let lam = t.cocharacter(&a).unwrap();
    assert_eq!(lam.pairings(), &[2, 2]);
    assert_eq!(weighted_diagram(&a, &t).unwrap(), vec![2, 2]);
}

#[test]
fn jacobson_morozov_rejects_semisimple_input() {
    let a = alg("A2");
    let h = LieElement::basis(a.cartan_index(0));
    assert!(matches!(jacobson_morozov(&a, &h), Err(Error::NotNilpotent)));
}

#[test]
fn minimal_a2_orbit_is_not_distinguished() {
    let a = alg("A2");
    let c = catalog(&a);
    let o = c.by_label("A1").unwrap();
    assert!(!is_distinguished(&a, o, 0).unwrap());
    assert_eq!(o.reductive_rank, 1);
}

#[test]
fn product_catalog_of_two_factors() {
    let a = alg("A1xA2");
    let c = catalog(&a);
    assert_eq!(c.len(), 6);
    let top = c.orbits.last().unwrap();
    assert_eq!(top.label, "A1 x A2");
    assert_eq!(top.diagram, vec![2, 2, 2]);
    assert!(top.distinguished);
    for o in &c.orbits {
        assert_eq!(identify_orbit(&a, &c, &o.representative).unwrap().diagram, o.diagram);
    }
}

#[test]
fn json_round_trip_rechecks_triples() {
    let a = alg("G2");
    let c = catalog(&a);
    let j = CatalogJson::from_catalog(&c);
    let text = serde_json::to_string(&j).unwrap();
    let back: CatalogJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_catalog(&a).unwrap(), c);

    let mut broken = back.clone();
    let last = broken.orbits.len() - 1;
    broken.orbits[last].triple.f = broken.orbits[last].triple.e.clone();
    assert!(broken.to_catalog(&a).is_err());
    assert!(back.to_catalog(&alg("A2")).is_err());
}
