use std::sync::OnceLock;

use proptest::prelude::*;

use cochar::chevalley::{build_algebra, reductive_rank, ChevalleyAlgebra, LieElement, RankTrials, Subalgebra};
use cochar::cochar::{grade, levi_of, parabolic_of, Cocharacter};
use cochar::rootdata::{apply_reflections, parse_components, to_dominant, RootSystem};
use cochar::subgroups::{embedding_by_id, Embedding};
use cochar::Rational;

const TYPES: [&str; 6] = ["A3", "B3", "C3", "G2", "F4", "A1xB2"];

fn algebras() -> &'static Vec<ChevalleyAlgebra> {
    static A: OnceLock<Vec<ChevalleyAlgebra>> = OnceLock::new();
    A.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| build_algebra(&RootSystem::new(&parse_components(t).unwrap()).unwrap()).unwrap())
            .collect()
    })
}

fn folding() -> &'static Embedding {
    static E: OnceLock<Embedding> = OnceLock::new();
    E.get_or_init(|| embedding_by_id("E6/F4-folding").unwrap())
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn pairings(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_path_independent(t in 0..TYPES.len(), dom in prop::collection::vec(0i64..=3, 4), word in prop::collection::vec(0usize..4, 0..12)) {
        let sys = algebras()[t].system();
        let r = sys.rank();
        let dom: Vec<Rational> = dom[..r].iter().map(|&v| q(v)).collect();
        let word: Vec<usize> = word.into_iter().map(|i| i % r).collect();
        let scrambled = apply_reflections(sys, &dom, &word);
        let (d, _) = to_dominant(sys, &scrambled);
        prop_assert_eq!(&d, &dom);
        let (again, w2) = to_dominant(sys, &d);
        prop_assert_eq!(again, d);
        prop_assert!(w2.is_empty());
    }

    #[test]
    fn grading_is_compatible_with_bracket(t in 0..TYPES.len(), p in pairings(4), x in 0usize..200, y in 0usize..200) {
        let a = &algebras()[t];
        let lam = Cocharacter::new(p[..a.rank()].to_vec());
        let (x, y) = (x % a.dim(), y % a.dim());
        let z = a.bracket(&LieElement::<Rational>::basis(x), &LieElement::basis(y));
        let want = lam.basis_degree(a, x) + lam.basis_degree(a, y);
        for b in z.support() {
            prop_assert_eq!(lam.basis_degree(a, b), want);
        }
        let g = grade(a, &lam);
        prop_assert_eq!(g.total_dim(), a.dim());
        for (&j, v) in &g.by_degree {
            prop_assert_eq!(g.dim(-j), v.len());
        }
    }

    #[test]
    fn levi_and_parabolics(t in 0..TYPES.len(), p in pairings(4)) {
        let sys = algebras()[t].system();
        let lam = Cocharacter::new(p[..sys.rank()].to_vec());
        prop_assert_eq!(levi_of(sys, &lam), levi_of(sys, &lam.negated()));
        let plus = parabolic_of(sys, &lam);
        let minus = parabolic_of(sys, &lam.negated());
        let both: Vec<usize> = plus.iter().copied().filter(|r| minus.contains(r)).collect();
        prop_assert_eq!(both, levi_of(sys, &lam).roots().to_vec());
        prop_assert!(sys.is_closed_subsystem(levi_of(sys, &lam).roots()));
    }

    #[test]
    fn h_lambda_round_trips(t in 0..TYPES.len(), p in pairings(4)) {
        let a = &algebras()[t];
        let lam = Cocharacter::new(p[..a.rank()].to_vec());
        prop_assert_eq!(Cocharacter::from_cartan_element(a, &lam.h_element(a)), Some(lam));
    }

    #[test]
    fn cartan_map_commutes_with_h(p in pairings(4)) {
        let emb = folding();
        let lam = Cocharacter::new(p);
        let image = emb.map_cocharacter(&lam).unwrap();
        prop_assert_eq!(emb.map_element(&lam.h_element(&emb.sub_algebra)), image.h_element(emb.ambient()));
    }

    #[test]
    fn reductive_rank_ignores_basis_choice(t in 0..3usize, p in pairings(4), mix in prop::collection::vec(-2i64..=2, 16), seed in 0u64..1000) {
        // 𝔤(0, λ) is reductive of rank equal to the rank of 𝔤.
        let a = &algebras()[t];
        let lam = Cocharacter::new(p[..a.rank()].to_vec());
        let basis = grade(a, &lam).basis(0);
        let n = basis.len();
        // Unitriangular change of basis.
        let mut mixed = basis.clone();
        for i in 0..n {
            for j in i + 1..n {
                let c = mix[(i * 7 + j) % mix.len()];
                if c != 0 {
                    mixed[i] = mixed[i].plus(&basis[j].scaled(&q(c)));
                }
            }
        }
        let s = Subalgebra::new(a, mixed).unwrap();
        let rank = reductive_rank(a, &s, RankTrials { seed, ..RankTrials::default() }).unwrap();
        prop_assert_eq!(rank, a.rank());
    }
}

