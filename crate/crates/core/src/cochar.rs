//! Cocharacters of the fixed maximal torus and the gradings they induce.
//!
//! The adjoint form is used throughout: a cocharacter is any integer vector
//! of pairings `⟨α_i, λ⟩`. Its semisimple element `h_λ` is the Cartan
//! element with `α_i(h_λ) = ⟨α_i, λ⟩`, written in the simple coroots.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chevalley::{ChevalleyAlgebra, LieElement};
use crate::linalg::Matrix;
use crate::rootdata::{to_dominant, RootSystem, SubsystemSpec};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocharacter {
    pairings: Vec<i64>,
}

impl Cocharacter {
    pub fn new(pairings: Vec<i64>) -> Self {
        Self { pairings }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    pub fn rank(&self) -> usize {
        self.pairings.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pairings.iter().all(|&p| p == 0)
    }

    pub fn negated(&self) -> Self {
        Self::new(self.pairings.iter().map(|p| -p).collect())
    }

    /// `⟨β, λ⟩` for a vector in simple-root coordinates.
    pub fn degree(&self, coords: &[i64]) -> i64 {
        coords.iter().zip(&self.pairings).map(|(c, p)| c * p).sum()
    }

    /// Degree of a basis vector of the algebra (zero on the Cartan).
    pub fn basis_degree(&self, alg: &ChevalleyAlgebra, b: usize) -> i64 {
        if alg.is_cartan_index(b) {
            0
        } else {
            self.degree(&alg.system().root(b).coords)
        }
    }

    /// Coordinates of `h_λ` in the simple coroots: `x = (Aᵀ)⁻¹ p`.
    pub fn coroot_coords(&self, sys: &RootSystem) -> Vec<Rational> {
        let r = sys.rank();
        if r == 0 {
            return Vec::new();
        }
        let rows: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|k| Rational::from_int(sys.cartan()[k][i])).collect())
            .collect();
        let p: Vec<Rational> = self.pairings.iter().map(|&v| Rational::from_int(v)).collect();
        Matrix::from_rows(rows, r)
            .solve(&p)
            .expect("Cartan matrix is invertible")
    }

    /// `h_λ` as an element of the algebra.
    pub fn h_element(&self, alg: &ChevalleyAlgebra) -> LieElement<Rational> {
        LieElement::from_terms(
            self.coroot_coords(alg.system())
                .into_iter()
                .enumerate()
                .map(|(k, x)| (alg.cartan_index(k), x)),
        )
    }

    /// Reads a cocharacter off a Cartan element; `None` unless `h` lies in
    /// the Cartan subalgebra with integral root values.
    pub fn from_cartan_element(alg: &ChevalleyAlgebra, h: &LieElement<Rational>) -> Option<Self> {
        let sys = alg.system();
        if h.support().any(|b| !alg.is_cartan_index(b)) {
            return None;
        }
        let mut pairings = Vec::with_capacity(sys.rank());
        for i in 0..sys.rank() {
            let mut v = Rational::from_int(0);
            for (b, x) in h.terms() {
                let k = b - sys.num_roots();
                v += x.clone() * Rational::from_int(sys.cartan()[k][i]);
            }
            pairings.push(v.to_int()?);
        }
        Some(Self::new(pairings))
    }

    /// Dominant Weyl conjugate together with the reflection word used.
    pub fn dominant(&self, sys: &RootSystem) -> (Self, Vec<usize>) {
        let v: Vec<Rational> = self.pairings.iter().map(|&p| Rational::from_int(p)).collect();
        let (d, word) = to_dominant(sys, &v);
        let d = d.iter().map(|x| x.to_int().expect("integral")).collect();
        (Self::new(d), word)
    }
}

/// `𝔤 = ⊕ 𝔤(j, λ)`, stored as basis indices per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub by_degree: BTreeMap<i64, Vec<usize>>,
}

impl GradedDecomposition {
    pub fn basis_indices(&self, j: i64) -> &[usize] {
        self.by_degree.get(&j).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, j: i64) -> usize {
        self.basis_indices(j).len()
    }

    pub fn basis(&self, j: i64) -> Vec<LieElement<Rational>> {
        self.basis_indices(j).iter().map(|&b| LieElement::basis(b)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }
}

pub fn grade(alg: &ChevalleyAlgebra, lambda: &Cocharacter) -> GradedDecomposition {
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for b in 0..alg.dim() {
        by_degree.entry(lambda.basis_degree(alg, b)).or_default().push(b);
    }
    GradedDecomposition { by_degree }
}

/// Roots with `⟨β, λ⟩ ≥ 0`, the roots of `P_λ`.
pub fn parabolic_of(sys: &RootSystem, lambda: &Cocharacter) -> Vec<usize> {
    (0..sys.num_roots())
        .filter(|&r| lambda.degree(&sys.root(r).coords) >= 0)
        .collect()
}

/// Roots with `⟨β, λ⟩ = 0`, the roots of `L_λ = C_G(λ)`.
pub fn levi_of(sys: &RootSystem, lambda: &Cocharacter) -> SubsystemSpec {
    let roots: Vec<usize> = (0..sys.num_roots())
        .filter(|&r| lambda.degree(&sys.root(r).coords) == 0)
        .collect();
    sys.subsystem(&roots).expect("centralizer of a cocharacter is closed")
}

/// True iff `λ(k^*) ≤ 𝒟L`, that is, `h_λ` is a rational combination of the
/// coroots of `levi`.
pub fn in_derived_of(sys: &RootSystem, lambda: &Cocharacter, levi: &SubsystemSpec) -> bool {
    if lambda.is_zero() {
        return true;
    }
    if levi.base().is_empty() {
        return false;
    }
    let x = lambda.coroot_coords(sys);
    let cols: Vec<Vec<Rational>> = levi
        .base()
        .iter()
        .map(|&b| sys.coroot(b).into_iter().map(Rational::from_int).collect())
        .collect();
    Matrix::from_columns(&cols, sys.rank()).solve(&x).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_algebra;
    use crate::rootdata::parse_components;

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_algebra(&RootSystem::new(&parse_components(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn zero_cocharacter_grades_everything_in_degree_zero() {
        let a = alg("B3");
        let g = grade(&a, &Cocharacter::zero(3));
        assert_eq!(g.by_degree.len(), 1);
        assert_eq!(g.dim(0), 21);
    }

    #[test]
    fn a2_regular_grading() {
        let a = alg("A2");
        let g = grade(&a, &Cocharacter::new(vec![1, 1]));
        let dims: Vec<(i64, usize)> = g.by_degree.iter().map(|(j, b)| (*j, b.len())).collect();
        assert_eq!(dims, vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]);
    }

    #[test]
    fn g2_all_two_has_cartan_as_degree_zero() {
        let a = alg("G2");
        let g = grade(&a, &Cocharacter::new(vec![2, 2]));
        assert_eq!(g.dim(0), 2);
        assert!(g.basis_indices(0).iter().all(|&b| a.is_cartan_index(b)));
    }

    #[test]
    fn h_lambda_acts_by_degree() {
        let a = alg("F4");
        let lam = Cocharacter::new(vec![0, 1, 0, 1]);
        let h = lam.h_element(&a);
        for b in 0..a.dim() {
            let x = LieElement::<Rational>::basis(b);
            let d = Rational::from_int(lam.basis_degree(&a, b));
            assert_eq!(a.bracket(&h, &x), x.scaled(&d));
        }
        assert_eq!(Cocharacter::from_cartan_element(&a, &h), Some(lam));
    }

    #[test]
    fn parabolic_and_levi() {
        let sys = RootSystem::new(&parse_components("A2").unwrap()).unwrap();
        let zero = Cocharacter::zero(2);
        assert_eq!(parabolic_of(&sys, &zero).len(), 6);
        assert_eq!(levi_of(&sys, &zero).roots().len(), 6);
        let lam = Cocharacter::new(vec![2, 0]);
        let levi = levi_of(&sys, &lam);
        let coords: Vec<&[i64]> = levi.roots().iter().map(|&r| sys.root(r).coords.as_slice()).collect();
        assert_eq!(coords, vec![&[0, 1][..], &[0, -1][..]]);
    }

    #[test]
    fn f4_levi_of_a_diagram() {
        // Weighted diagram 0 1 0 1 (the ~A2A1 orbit): 𝔤(0) exceeds its Levi
        // root count by the rank.
        let a = alg("F4");
        let lam = Cocharacter::new(vec![0, 1, 0, 1]);
        let levi = levi_of(a.system(), &lam);
        assert_eq!(grade(&a, &lam).dim(0) - levi.roots().len(), 4);
    }

    #[test]
    fn derived_membership() {
        let sys = RootSystem::new(&parse_components("A2").unwrap()).unwrap();
        let l1 = sys.standard_levi(&[0]);
        // α1^∨ has pairings (2, −1).
        assert!(in_derived_of(&sys, &Cocharacter::new(vec![2, -1]), &l1));
        // ϖ1^∨ has pairings (1, 0).
        assert!(!in_derived_of(&sys, &Cocharacter::new(vec![1, 0]), &l1));
        assert!(in_derived_of(&sys, &Cocharacter::zero(2), &l1));
    }

    #[test]
    fn dominant_form() {
        let sys = RootSystem::new(&parse_components("A2").unwrap()).unwrap();
        let (d, _) = Cocharacter::new(vec![2, -1]).dominant(&sys);
        assert_eq!(d.pairings(), &[1, 1]);
    }
}
