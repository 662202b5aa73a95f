//! Lie algebras in a Chevalley basis, over exact rationals.
//!
//! Basis order: root vectors `e_β` in the order of [`RootSystem::roots`]
//! (positive roots, then negative roots), followed by the simple coroots
//! `h_1, …, h_r`. Brackets:
//!
//! * `[e_α, e_β] = N_{α,β} e_{α+β}` when `α + β` is a root,
//! * `[e_α, e_{−α}] = h_α`, the coroot written in the `h_i`,
//! * `[h_i, e_β] = ⟨β, α_i^∨⟩ e_β`, `[h_i, h_j] = 0`.

mod element;
mod structure;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use element::{ElementJson, LieElement};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::RootSystem;
use crate::scalar::Scalar;
use crate::Rational;

/// Number of random basis triples checked for the Jacobi identity on
/// algebras too large for exhaustive checking.
pub const JACOBI_SAMPLES: usize = 100_000;
const JACOBI_SEED: u64 = 0x5eed_ca11;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    sys: RootSystem,
    /// `table[i * dim + j]` = `[b_i, b_j]` as integer terms.
    table: Vec<Vec<(usize, i64)>>,
    dim: usize,
}

/// Builds the algebra and verifies it: `|N_{α,β}| = p + 1` for every pair and
/// the Jacobi identity (exhaustively up to rank 4, on [`JACOBI_SAMPLES`]
/// seeded random triples above that).
pub fn build_algebra(sys: &RootSystem) -> Result<ChevalleyAlgebra> {
    let alg = ChevalleyAlgebra::new(sys)?;
    if sys.rank() <= 4 {
        alg.check_jacobi_exhaustive()?;
    } else {
        alg.check_jacobi_sampled(JACOBI_SAMPLES, JACOBI_SEED)?;
    }
    Ok(alg)
}

impl ChevalleyAlgebra {
    /// Builds the structure table without the Jacobi verification done by
    /// [`build_algebra`].
    pub fn new(sys: &RootSystem) -> Result<Self> {
        let sums = structure::structure_constants(sys)?;
        let nr = sys.num_roots();
        let rank = sys.rank();
        let dim = nr + rank;
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..nr {
            let coroot = sys.coroot(a);
            for b in 0..nr {
                let entry = &mut table[a * dim + b];
                if b == sys.negative(a) {
                    for (k, &c) in coroot.iter().enumerate() {
                        if c != 0 {
                            entry.push((nr + k, c));
                        }
                    }
                } else if let Some((s, n)) = sums[a][b] {
                    entry.push((s, n));
                }
            }
            for k in 0..rank {
                let p = sys.pairing(&sys.root(a).coords, k);
                if p != 0 {
                    table[(nr + k) * dim + a].push((a, p));
                    table[a * dim + nr + k].push((a, -p));
                }
            }
        }
        Ok(Self {
            sys: sys.clone(),
            table,
            dim,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.sys.num_roots()
    }

    /// Basis index of the root vector `e_β` for root index `r`.
    pub fn root_vector(&self, r: usize) -> usize {
        r
    }

    /// Basis index of `h_i`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.sys.num_roots() + i
    }

    pub fn is_cartan_index(&self, b: usize) -> bool {
        b >= self.sys.num_roots()
    }

    /// `[b_i, b_j]` as integer terms.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim + j]
    }

    /// `N_{α,β}` for root indices, zero when `α + β` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        if b == self.sys.negative(a) {
            return 0;
        }
        self.bracket_basis(a, b).first().map_or(0, |&(_, n)| n)
    }

    pub fn bracket<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>) -> LieElement<F> {
        let mut out = LieElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let ab = a.clone() * b.clone();
                for &(k, c) in self.bracket_basis(i, j) {
                    out.add_term(k, ab.clone() * F::from_int(c));
                }
            }
        }
        out
    }

    /// Like [`bracket`](Self::bracket), rejecting elements with coordinates
    /// outside this algebra.
    pub fn checked_bracket<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>) -> Result<LieElement<F>> {
        for e in [x, y] {
            if let Some(m) = e.max_index() {
                if m >= self.dim {
                    return Err(Error::Dimension(format!(
                        "basis index {m} outside algebra of dimension {}",
                        self.dim
                    )));
                }
            }
        }
        Ok(self.bracket(x, y))
    }

    /// `[x, b_j]` for a single basis vector.
    pub fn bracket_with_basis<F: Scalar>(&self, x: &LieElement<F>, j: usize) -> LieElement<F> {
        let mut out = LieElement::zero();
        for (i, a) in x.terms() {
            for &(k, c) in self.bracket_basis(i, j) {
                out.add_term(k, a.clone() * F::from_int(c));
            }
        }
        out
    }

    /// Matrix of `ad x` (column `j` is `[x, b_j]`).
    pub fn ad_matrix<F: Scalar>(&self, x: &LieElement<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim)
            .map(|j| self.bracket_with_basis(x, j).to_dense(self.dim))
            .collect();
        Matrix::from_columns(&cols, self.dim)
    }

    /// True when `ad x` is nilpotent, checked by exact powers.
    pub fn is_ad_nilpotent(&self, x: &LieElement<Rational>) -> bool {
        // (ad x)^dim b = 0 for every basis vector b.
        (0..self.dim).all(|j| {
            let mut v = LieElement::basis(j);
            for _ in 0..self.dim {
                if v.is_zero() {
                    return true;
                }
                v = self.bracket(x, &v);
            }
            v.is_zero()
        })
    }

    /// Centralizer of `x` in the whole algebra.
    pub fn centralizer<F: Scalar>(&self, x: &LieElement<F>) -> Subalgebra<F> {
        let basis = self
            .ad_matrix(x)
            .kernel()
            .into_iter()
            .map(|v| LieElement::from_dense(&v))
            .collect();
        Subalgebra {
            basis,
            parent_dim: self.dim,
        }
    }

    /// Centralizer of `x` inside the span of `within`.
    pub fn centralizer_in<F: Scalar>(&self, x: &LieElement<F>, within: &Subalgebra<F>) -> Subalgebra<F> {
        let basis = self.kernel_of_ad_on(x, within.basis());
        Subalgebra {
            basis,
            parent_dim: self.dim,
        }
    }

    /// Elements `y` of `span(vectors)` with `[x, y] = 0`.
    pub fn kernel_of_ad_on<F: Scalar>(&self, x: &LieElement<F>, vectors: &[LieElement<F>]) -> Vec<LieElement<F>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let cols: Vec<Vec<F>> = vectors
            .iter()
            .map(|b| self.bracket(x, b).to_dense(self.dim))
            .collect();
        Matrix::from_columns(&cols, self.dim)
            .kernel()
            .into_iter()
            .map(|k| {
                let mut y = LieElement::zero();
                for (c, b) in k.iter().zip(vectors) {
                    y.add_scaled(b, c);
                }
                y
            })
            .collect()
    }

    /// Dimension of the centralizer of `x` in `span(vectors)`.
    pub fn centralizer_dim_on<F: Scalar>(&self, x: &LieElement<F>, vectors: &[LieElement<F>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let cols: Vec<Vec<F>> = vectors
            .iter()
            .map(|b| self.bracket(x, b).to_dense(self.dim))
            .collect();
        vectors.len() - Matrix::from_columns(&cols, self.dim).rank()
    }

    pub fn check_jacobi_exhaustive(&self) -> Result<()> {
        for x in 0..self.dim {
            for y in 0..self.dim {
                for z in 0..self.dim {
                    self.check_jacobi_triple(x, y, z)?;
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (x, y, z) = (
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
            );
            self.check_jacobi_triple(x, y, z)?;
        }
        Ok(())
    }

    fn check_jacobi_triple(&self, x: usize, y: usize, z: usize) -> Result<()> {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            for &(k, n) in self.bracket_basis(a, b) {
                for &(m, n2) in self.bracket_basis(k, c) {
                    acc.push((m, n * n2));
                }
            }
        }
        acc.sort_unstable();
        let mut i = 0;
        while i < acc.len() {
            let mut j = i;
            let mut s = 0;
            while j < acc.len() && acc[j].0 == acc[i].0 {
                s += acc[j].1;
                j += 1;
            }
            if s != 0 {
                return Err(Error::Consistency(format!(
                    "Jacobi identity fails on basis triple ({x}, {y}, {z})"
                )));
            }
            i = j;
        }
        Ok(())
    }

    /// Tab-separated `α  β  N_{α,β}` for every pair of roots whose sum is a
    /// root, roots written as coordinate lists.
    pub fn structure_tsv(&self) -> String {
        let mut out = String::from("alpha\tbeta\tN\n");
        let nr = self.sys.num_roots();
        let fmt_root = |r: usize| {
            let c: Vec<String> = self.sys.root(r).coords.iter().map(|x| x.to_string()).collect();
            format!("[{}]", c.join(","))
        };
        for a in 0..nr {
            for b in 0..nr {
                let n = self.structure_constant(a, b);
                if n != 0 {
                    let _ = writeln!(out, "{}\t{}\t{}", fmt_root(a), fmt_root(b), n);
                }
            }
        }
        out
    }
}

/// A subspace of the algebra given by a basis, used for centralizers and
/// fixed-point subalgebras.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra<F> {
    basis: Vec<LieElement<F>>,
    parent_dim: usize,
}

impl<F: Scalar> Subalgebra<F> {
    /// Validates linear independence and closure under the bracket.
    pub fn new(alg: &ChevalleyAlgebra, basis: Vec<LieElement<F>>) -> Result<Self> {
        let dim = alg.dim();
        let cols: Vec<Vec<F>> = basis.iter().map(|b| b.to_dense(dim)).collect();
        let m = Matrix::from_columns(&cols, dim);
        if m.rank() != basis.len() {
            return Err(Error::Dimension("subalgebra basis is linearly dependent".into()));
        }
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                let z = alg.bracket(x, y).to_dense(dim);
                if m.solve(&z).is_none() {
                    return Err(Error::Consistency("subspace is not closed under the bracket".into()));
                }
            }
        }
        Ok(Self {
            basis,
            parent_dim: dim,
        })
    }

    pub fn whole(alg: &ChevalleyAlgebra) -> Self {
        Self {
            basis: (0..alg.dim()).map(LieElement::basis).collect(),
            parent_dim: alg.dim(),
        }
    }

    pub fn from_basis_unchecked(alg: &ChevalleyAlgebra, basis: Vec<LieElement<F>>) -> Self {
        Self {
            basis,
            parent_dim: alg.dim(),
        }
    }

    pub fn basis(&self) -> &[LieElement<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }
}

/// Trial policy for [`reductive_rank`].
#[derive(Clone, Copy, Debug)]
pub struct RankTrials {
    pub seed: u64,
    /// Consecutive trials without a new minimum needed to stop.
    pub stable_after: usize,
    pub max_trials: usize,
}

impl Default for RankTrials {
    fn default() -> Self {
        Self {
            seed: 0,
            stable_after: 5,
            max_trials: 200,
        }
    }
}

/// Rank of a reductive subalgebra: the minimum of `dim c_s(x)` over trial
/// elements `x ∈ s`, stopped once the minimum has held for `stable_after`
/// consecutive trials.
///
/// The first trials are generic elements of the toral part `s ∩ 𝔱`. Since
/// `s ∩ 𝔱` is a toral subalgebra, its dimension bounds the rank from below,
/// and every trial bounds it from above; when the two meet the answer is
/// certified and returned at once. Later trials are random integer
/// combinations of the basis of `s` with coefficient bounds growing per
/// trial.
pub fn reductive_rank(alg: &ChevalleyAlgebra, s: &Subalgebra<Rational>, trials: RankTrials) -> Result<usize> {
    if s.dim() == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trials.seed);
    let toral = toral_part(alg, s);
    let lower = toral.len();
    let mut best = usize::MAX;
    let mut unchanged = 0;
    for t in 0..trials.max_trials {
        let on_torus = t < TORAL_TRIALS && lower > 0;
        let bound = if on_torus { 1000 << (4 * t) } else { 3 + t as i64 };
        let pool = if on_torus { &toral } else { s.basis() };
        let mut x = LieElement::zero();
        for b in pool {
            let c = rng.gen_range(-bound..=bound);
            x.add_scaled(b, &Rational::from_int(c));
        }
        let d = alg.centralizer_dim_on(&x, s.basis());
        if d < lower {
            return Err(Error::Consistency(format!(
                "centralizer of dimension {d} below the toral part of dimension {lower}"
            )));
        }
        if d == lower {
            return Ok(d);
        }
        if d < best {
            best = d;
            unchanged = 0;
        } else {
            unchanged += 1;
        }
        if unchanged >= trials.stable_after {
            return Ok(best);
        }
    }
    Err(Error::RankUnstable(format!(
        "minimum {best} not stable after {} trials",
        trials.max_trials
    )))
}

const TORAL_TRIALS: usize = 3;

/// A basis of `s ∩ 𝔱`.
fn toral_part(alg: &ChevalleyAlgebra, s: &Subalgebra<Rational>) -> Vec<LieElement<Rational>> {
    let nr = alg.num_roots();
    // Combinations of the basis of s whose root-vector coordinates vanish.
    let cols: Vec<Vec<Rational>> = s
        .basis()
        .iter()
        .map(|b| b.to_dense(alg.dim())[..nr].to_vec())
        .collect();
    Matrix::from_columns(&cols, nr)
        .kernel()
        .into_iter()
        .map(|k| {
            let mut y = LieElement::zero();
            for (c, b) in k.iter().zip(s.basis()) {
                y.add_scaled(b, c);
            }
            y
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_components;

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_algebra(&RootSystem::new(&parse_components(s).unwrap()).unwrap()).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg("A2").dim(), 8);
        assert_eq!(alg("G2").dim(), 14);
        assert_eq!(alg("F4").dim(), 52);
        assert_eq!(alg("D4").dim(), 28);
    }

    #[test]
    fn a2_bracket_of_simple_root_vectors() {
        let a = alg("A2");
        let n = a.structure_constant(0, 1);
        assert_eq!(n.abs(), 1);
        let e = a.bracket(&LieElement::<Rational>::basis(0), &LieElement::basis(1));
        let sum = a.system().find(&[1, 1]).unwrap();
        assert_eq!(e, LieElement::term(sum, q(n)));
    }

    #[test]
    fn g2_max_structure_constant_is_three() {
        let a = alg("G2");
        let nr = a.num_roots();
        let max = (0..nr)
            .flat_map(|x| (0..nr).map(move |y| (x, y)))
            .map(|(x, y)| a.structure_constant(x, y).abs())
            .max()
            .unwrap();
        assert_eq!(max, 3);
        // Brute-force string lengths agree with the table everywhere.
        for x in 0..nr {
            for y in 0..nr {
                if let Some(_) = structure::sum_index(a.system(), x, y) {
                    let p = structure::string_below(a.system(), x, y);
                    assert_eq!(a.structure_constant(x, y).abs(), p + 1);
                }
            }
        }
    }

    #[test]
    fn defining_relations() {
        let a = alg("A2");
        let h1 = LieElement::<Rational>::basis(a.cartan_index(0));
        let e1 = LieElement::basis(a.root_vector(0));
        let f1 = LieElement::basis(a.system().negative(0));
        assert_eq!(a.bracket(&h1, &e1), e1.scaled(&q(2)));
        assert_eq!(a.bracket(&e1, &f1), h1);
    }

    #[test]
    fn antisymmetry_on_random_elements() {
        let a = alg("G2");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = LieElement::from_terms((0..a.dim()).map(|i| (i, q(rng.gen_range(-3..=3)))));
            let y = LieElement::from_terms((0..a.dim()).map(|i| (i, q(rng.gen_range(-3..=3)))));
            assert!(a.bracket(&x, &x).is_zero());
            assert_eq!(a.bracket(&x, &y), a.bracket(&y, &x).scaled(&q(-1)));
        }
    }

    #[test]
    fn jacobi_exhaustive_small_and_sampled_e6() {
        for s in ["A2", "G2", "B3", "C3", "F4", "D4"] {
            alg(s).check_jacobi_exhaustive().unwrap();
        }
        let e6 = ChevalleyAlgebra::new(&RootSystem::new(&parse_components("E6").unwrap()).unwrap()).unwrap();
        e6.check_jacobi_sampled(JACOBI_SAMPLES, 1).unwrap();
    }

    #[test]
    fn centralizer_examples() {
        let a = alg("A2");
        let zero = LieElement::<Rational>::zero();
        assert_eq!(a.centralizer(&zero).dim(), 8);
        let regular = LieElement::from_terms([(0, q(1)), (1, q(1))]);
        assert_eq!(a.centralizer(&regular).dim(), 2);
        let minimal = LieElement::<Rational>::basis(0);
        assert_eq!(a.centralizer(&minimal).dim(), 4);
    }

    /// Exact and floating-point kernels agree on the A2 centralizers.
    #[test]
    fn float_centralizer_matches_exact() {
        let a = alg("A2");
        let regular = LieElement::<f64>::from_terms([(0, 1.0), (1, 1.0)]);
        assert_eq!(a.centralizer(&regular).dim(), 2);
        let minimal = LieElement::<f64>::basis(0);
        assert_eq!(a.centralizer(&minimal).dim(), 4);
    }

    #[test]
    fn regular_nilpotent_centralizer_is_rank() {
        for s in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let a = alg(s);
            let e = LieElement::<Rational>::from_terms((0..a.rank()).map(|i| (i, q(1))));
            assert_eq!(a.centralizer(&e).dim(), a.rank(), "{s}");
            assert!(a.is_ad_nilpotent(&e));
        }
    }

    #[test]
    fn reductive_rank_of_whole_algebra() {
        let a = alg("F4");
        let whole = Subalgebra::whole(&a);
        assert_eq!(reductive_rank(&a, &whole, RankTrials::default()).unwrap(), 4);
    }

    #[test]
    fn subalgebra_validation() {
        let a = alg("A2");
        // span{e_α1, e_α2} is not closed: their bracket is e_{α1+α2}.
        let bad = vec![LieElement::<Rational>::basis(0), LieElement::basis(1)];
        assert!(Subalgebra::new(&a, bad).is_err());
        let dep = vec![LieElement::<Rational>::basis(0), LieElement::term(0, q(2))];
        assert!(Subalgebra::new(&a, dep).is_err());
        let sl2 = vec![
            LieElement::<Rational>::basis(0),
            LieElement::basis(a.system().negative(0)),
            LieElement::basis(a.cartan_index(0)),
        ];
        assert!(Subalgebra::new(&a, sl2).is_ok());
    }

    #[test]
    fn checked_bracket_rejects_foreign_elements() {
        let a = alg("A1");
        let x = LieElement::<Rational>::basis(17);
        assert!(a.checked_bracket(&x, &LieElement::basis(0)).is_err());
    }

    #[test]
    fn tsv_export() {
        let a = alg("A2");
        let tsv = a.structure_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "alpha\tbeta\tN");
        // 6 roots; ordered pairs with root sums: (α1,α2),(α2,α1) and the
        // sums involving one negative root, 12 in total.
        assert_eq!(lines.len() - 1, 12);
        assert!(lines[1..].iter().all(|l| l.split('\t').count() == 3));
    }
}
