use std::sync::Arc;

use super::*;
use crate::chevalley::build_algebra;
use crate::linalg::Matrix;
use crate::orbits::{enumerate_orbits, CatalogOptions};
use crate::rootdata::{parse_components, RootSystem};
use crate::scalar::Scalar;
use crate::subgroups::embedding_by_id;

fn alg(s: &str) -> ChevalleyAlgebra {
    build_algebra(&RootSystem::new(&parse_components(s).unwrap()).unwrap()).unwrap()
}

fn catalog(a: &ChevalleyAlgebra) -> OrbitCatalog {
    enumerate_orbits(a, CatalogOptions::default()).unwrap()
}

/// Whether some `f ∈ 𝔤` has `[e, f] = h_λ` and `[h_λ, f] = −2f`, solved
/// densely over the whole algebra.
fn brute_force_associated(a: &ChevalleyAlgebra, e: &LieElement<Rational>, lam: &Cocharacter) -> bool {
    let h = lam.h_element(a);
    if (0..a.dim()).any(|b| {
        let x = e.coeff(b);
        x != Rational::from_int(0) && (a.is_cartan_index(b) || lam.basis_degree(a, b) != 2)
    }) {
        return false;
    }
    let n = a.dim();
    let ade = a.ad_matrix(e);
    let adh = a.ad_matrix(&h);
    let mut rows: Vec<Vec<Rational>> = ade.rows().to_vec();
    for (i, row) in adh.rows().iter().enumerate() {
        let mut r = row.clone();
        r[i] += Rational::from_int(2);
        rows.push(r);
    }
    let mut rhs = h.to_dense(n);
    rhs.extend(vec![Rational::from_int(0); n]);
    Matrix::from_rows(rows, n).solve(&rhs).is_some()
}

#[test]
fn associated_examples() {
    let a = alg("A2");
    let e = LieElement::basis(0);
    let (ok, w) = is_associated(&a, &e, &Cocharacter::new(vec![2, -1]));
    assert!(ok);
    w.triple.unwrap().check(&a).unwrap();
    let lam = Cocharacter::new(vec![2, 0]);
    let (ok, w) = is_associated(&a, &e, &lam);
    assert!(!ok && w.reason.is_some());
    assert!(!brute_force_associated(&a, &e, &lam));

    let g = alg("G2");
    let reg = LieElement::from_terms([(0, Rational::from_int(1)), (1, Rational::from_int(1))]);
    assert!(is_associated(&g, &reg, &Cocharacter::new(vec![2, 2])).0);
}

#[test]
fn associated_matches_brute_force_on_small_algebras() {
    for ty in ["A2", "B2", "G2"] {
        let a = alg(ty);
        for o in &catalog(&a).orbits {
            let lam = o.cocharacter();
            let candidates = [lam.clone(), lam.negated(), Cocharacter::zero(a.rank()), Cocharacter::new(vec![2; a.rank()])];
            for c in candidates {
                assert_eq!(
                    is_associated(&a, &o.representative, &c).0,
                    brute_force_associated(&a, &o.representative, &c),
                    "{ty} {} {:?}",
                    o.label,
                    c.pairings()
                );
            }
        }
    }
}

#[test]
fn witness_examples() {
    let a = alg("A2");
    let w = direct_definition_witness(&a, &LieElement::basis(0), &Cocharacter::new(vec![2, -1])).unwrap();
    let coords: Vec<&[i64]> = w.roots().iter().map(|&r| a.system().root(r).coords.as_slice()).collect();
    assert_eq!(coords, [&[1, 0][..], &[-1, 0][..]]);

    let f = alg("F4");
    let cat = catalog(&f);
    let reg = cat.by_label("F4").unwrap();
    let w = direct_definition_witness(&f, &reg.representative, &reg.cocharacter()).unwrap();
    assert_eq!(w.roots().len(), 48);

    let o = cat.by_label("A1~A1").unwrap();
    let w = direct_definition_witness(&f, &o.representative, &o.cocharacter()).unwrap();
    assert_eq!(w.type_label(f.system()), "A1+~A1");
}

/// The sl2 criterion and the literal definition agree, both on diagram
/// cocharacters and on perturbations `λ + μ` with `μ` orthogonal to the
/// support of `e`, which keep `e` in degree 2.
#[test]
fn witness_matches_sl2_criterion() {
    for ty in ["G2", "F4"] {
        let a = alg(ty);
        let sys = a.system();
        for o in &catalog(&a).orbits {
            let lam = o.cocharacter();
            assert!(is_associated(&a, &o.representative, &lam).0);
            assert!(direct_definition_witness(&a, &o.representative, &lam).is_some(), "{ty} {}", o.label);

            let support: Vec<Vec<Rational>> = o
                .representative
                .support()
                .map(|b| sys.root(b).coords.iter().map(|&c| Rational::from_int(c)).collect())
                .collect();
            let kernel = if support.is_empty() {
                (0..a.rank())
                    .map(|i| (0..a.rank()).map(|j| Rational::from_int(i64::from(i == j))).collect())
                    .collect()
            } else {
                Matrix::from_rows(support, a.rank()).kernel()
            };
            for mu in kernel {
                let den = mu.iter().fold(num_bigint::BigInt::from(1), |d, x| num_integer::Integer::lcm(&d, x.denom()));
                let mu: Vec<i64> = mu.iter().map(|x| (x * Rational::from_integer(den.clone())).to_int().unwrap()).collect();
                let shifted = Cocharacter::new(lam.pairings().iter().zip(&mu).map(|(a, b)| a + b).collect());
                let sl2 = is_associated(&a, &o.representative, &shifted).0;
                let direct = direct_definition_witness(&a, &o.representative, &shifted).is_some();
                assert_eq!(sl2, direct, "{ty} {} {:?}", o.label, shifted.pairings());
                assert!(!sl2);
            }
        }
    }
}

fn folding() -> (Embedding, OrbitCatalog, OrbitCatalog) {
    let emb = embedding_by_id("E6/F4-folding").unwrap();
    let h = catalog(&emb.sub_algebra);
    let g = catalog(emb.ambient());
    (emb, h, g)
}

#[test]
fn e6_folding_fusion_and_reports() {
    let (emb, h, g) = folding();
    let fused = |l: &str| fuse(&emb, h.by_label(l).unwrap(), &g).unwrap().label.clone();
    assert_eq!(fused("F4(a2)"), "E6(a3)");
    assert_eq!(fused("~A2"), "2A2");
    assert_eq!(fused("C3"), "A5");
    assert_eq!(fused("F4"), "E6");
    assert_eq!(fused("0"), "1");

    let reports: Vec<DaggerReport> = h.orbits.iter().map(|o| check_dagger(&emb, o, &g, 7).unwrap()).collect();
    assert_eq!(reports.len(), 16);
    assert!(reports.iter().all(|r| r.verdict.is_verified()));
    let by = |l: &str| reports.iter().find(|r| r.h_orbit == l).unwrap();
    let a2 = by("~A2");
    assert!(a2.forward_ok);
    assert_eq!((a2.rank_h, a2.rank_g), (2, 2));
    let c3 = by("C3");
    assert_eq!((c3.rank_h, c3.rank_g), (1, 1));
    assert!(by("F4(a2)").distinguished_in_g);
    let zero = by("1");
    assert!(zero.lambda_h.is_zero() && zero.verdict.is_verified());
    // Besides ~A2 and C3 exactly one more pair has nontrivial centralizer
    // tori of equal rank.
    let equal_nontrivial = reports.iter().filter(|r| r.rank_condition && r.rank_h > 0).count();
    assert_eq!(equal_nontrivial, 3);
}

#[test]
fn sub_rank_computed_in_ambient() {
    let (emb, h, _) = folding();
    for o in &h.orbits {
        assert_eq!(sub_centralizer_rank(&emb, o, 3).unwrap(), o.reductive_rank, "{}", o.label);
    }
    let emb = embedding_by_id("F4/levi-234").unwrap();
    let h = catalog(&emb.sub_algebra);
    for o in &h.orbits {
        assert_eq!(sub_centralizer_rank(&emb, o, 3).unwrap(), o.reductive_rank + 1, "{}", o.label);
    }
}

#[test]
fn triality_regular_orbit() {
    let emb = embedding_by_id("D4/G2-triality").unwrap();
    let h = catalog(&emb.sub_algebra);
    let g = catalog(emb.ambient());
    let r = check_dagger(&emb, h.by_label("G2").unwrap(), &g, 1).unwrap();
    assert!(r.forward_ok);
    assert_eq!(r.g_orbit, "D4");
    // On the 7-dimensional module G2(a1) has Jordan blocks (3,3,1), so on
    // the 8-dimensional one (3,3,1,1), the partition of A2 in D4.
    let r = check_dagger(&emb, h.by_label("G2(a1)").unwrap(), &g, 1).unwrap();
    assert_eq!(r.g_orbit, "A2");
}

#[test]
fn levi_zero_orbit() {
    let emb = embedding_by_id("F4/levi-234").unwrap();
    let h = catalog(&emb.sub_algebra);
    let g = catalog(emb.ambient());
    let r = check_dagger(&emb, h.zero_orbit(), &g, 1).unwrap();
    assert_eq!(r.verdict, Verdict::DaggerVerifiedByReduction);
    assert_eq!((r.rank_h, r.rank_g), (4, 4));
}

#[test]
fn optimal_parabolics() {
    let a = alg("A2");
    assert_eq!(optimal_parabolic(&a, &LieElement::zero()).unwrap().len(), 6);
    let reg = LieElement::from_terms([(0, Rational::from_int(1)), (1, Rational::from_int(1))]);
    let p = optimal_parabolic(&a, &reg).unwrap();
    assert_eq!(p, (0..3).collect::<Vec<_>>());
    // The highest root vector has h = (1, 1) in dominant position.
    let top = LieElement::basis(2);
    let p = optimal_parabolic(&a, &top).unwrap();
    let oracle: Vec<usize> = (0..6)
        .filter(|&r| a.system().root(r).coords.iter().sum::<i64>() >= 0)
        .collect();
    assert_eq!(p, oracle);
}

#[test]
fn table1() {
    assert_eq!(table1_lookup("G2(a1)"), Some("F4(a3)"));
    assert_eq!(table1_lookup("A1"), Some("A1~A1"));
    assert_eq!(table1_lookup("1"), Some("1"));
    let f4 = catalog(&alg("F4"));
    let checks = table1_checks(&f4);
    assert!(checks.iter().all(|c| c.f4_in_catalog));
    assert!(checks.iter().all(|c| c.claim.is_none_or(|(_, ok)| ok)));
}

#[test]
fn reports_serialize() {
    let emb = embedding_by_id("A1xA1/diagonal").unwrap();
    let emb = Arc::new(emb);
    let h = catalog(&emb.sub_algebra);
    let g = catalog(emb.ambient());
    let r = check_dagger(&emb, h.by_label("A1").unwrap(), &g, 1).unwrap();
    assert_eq!(r.g_orbit, "A1 x A1");
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"verdict\":\"DAGGER_VERIFIED_BY_REDUCTION\""));
    let back: DaggerReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.tsv_row().split('\t').count(), DaggerReport::TSV_HEADER.split('\t').count());
}
