//! Diagram automorphisms lifted to the Chevalley basis.

use serde::{Deserialize, Serialize};

use crate::chevalley::{ChevalleyAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// A permutation `π` of the simple roots preserving the Cartan matrix,
/// lifted to `θ(e_β) = s_β e_{πβ}`, `θ(h_i) = h_{πi}` with signs fixed by
/// `s = +1` on simple roots and their negatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    pub node_permutation: Vec<usize>,
    pub order: usize,
    /// `(π-image root index, sign)` per root index.
    root_images: Vec<(usize, i64)>,
}

impl DiagramAutomorphism {
    pub fn new(alg: &ChevalleyAlgebra, node_permutation: Vec<usize>) -> Result<Self> {
        let sys = alg.system();
        let r = sys.rank();
        let mut check = node_permutation.clone();
        check.sort_unstable();
        if check != (0..r).collect::<Vec<_>>() {
            return Err(Error::NotAutomorphism(format!("{node_permutation:?} is not a permutation")));
        }
        let a = sys.cartan();
        for i in 0..r {
            for j in 0..r {
                if a[node_permutation[i]][node_permutation[j]] != a[i][j] {
                    return Err(Error::NotAutomorphism(format!(
                        "{node_permutation:?} does not preserve the Cartan matrix"
                    )));
                }
            }
        }
        let order = permutation_order(&node_permutation);
        let permute = |coords: &[i64]| {
            let mut out = vec![0; r];
            for (i, &c) in coords.iter().enumerate() {
                out[node_permutation[i]] = c;
            }
            out
        };
        let nr = sys.num_roots();
        let np = sys.positive_count();
        let mut images = vec![(usize::MAX, 0i64); nr];
        for i in 0..r {
            let s = sys.simple_root(i);
            let t = sys.simple_root(node_permutation[i]);
            images[s] = (t, 1);
            images[sys.negative(s)] = (sys.negative(t), 1);
        }
        // Positive roots come in height order, so each γ = α_k + δ with δ
        // already done. Same for the negatives.
        for g in 0..np {
            if images[g].1 != 0 {
                continue;
            }
            for negative in [false, true] {
                let gamma = if negative { sys.negative(g) } else { g };
                let (k, delta) = split_off_simple(alg, gamma)
                    .ok_or_else(|| Error::NotAutomorphism("root with no simple summand".into()))?;
                let target = sys
                    .find(&permute(&sys.root(gamma).coords))
                    .ok_or_else(|| Error::NotAutomorphism("image of a root is not a root".into()))?;
                let n_src = alg.structure_constant(k, delta);
                let (k_img, _) = images[k];
                let (d_img, d_sign) = images[delta];
                let n_img = alg.structure_constant(k_img, d_img);
                if n_src == 0 || n_img.abs() != n_src.abs() {
                    return Err(Error::NotAutomorphism(format!(
                        "structure constants {n_src} and {n_img} are incompatible"
                    )));
                }
                images[gamma] = (target, d_sign * n_img / n_src);
            }
        }
        let theta = Self {
            node_permutation,
            order,
            root_images: images,
        };
        theta.verify(alg)?;
        Ok(theta)
    }

    pub fn apply_basis(&self, alg: &ChevalleyAlgebra, b: usize) -> LieElement<Rational> {
        if alg.is_cartan_index(b) {
            let i = b - alg.num_roots();
            LieElement::basis(alg.cartan_index(self.node_permutation[i]))
        } else {
            let (t, s) = self.root_images[b];
            LieElement::term(t, Rational::from_int(s))
        }
    }

    pub fn apply(&self, alg: &ChevalleyAlgebra, x: &LieElement<Rational>) -> LieElement<Rational> {
        x.map_basis(|b| self.apply_basis(alg, b))
    }

    /// Brackets are preserved on all basis pairs and `θ^order = id`.
    fn verify(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let n = alg.dim();
        let images: Vec<LieElement<Rational>> = (0..n).map(|b| self.apply_basis(alg, b)).collect();
        for x in 0..n {
            for y in 0..n {
                let lhs = alg.bracket(&images[x], &images[y]);
                let mut rhs = LieElement::zero();
                for &(k, c) in alg.bracket_basis(x, y) {
                    rhs.add_scaled(&images[k], &Rational::from_int(c));
                }
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!("bracket of basis {x}, {y} not preserved")));
                }
            }
        }
        for b in 0..n {
            let mut v = LieElement::basis(b);
            for _ in 0..self.order {
                v = self.apply(alg, &v);
            }
            if v != LieElement::basis(b) {
                return Err(Error::NotAutomorphism(format!("θ^{} moves basis vector {b}", self.order)));
            }
        }
        Ok(())
    }

    /// Basis of the fixed subspace, the kernel of `θ − 1`.
    pub fn fixed_space(&self, alg: &ChevalleyAlgebra) -> Vec<LieElement<Rational>> {
        let n = alg.dim();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|b| self.apply_basis(alg, b).minus(&LieElement::basis(b)).to_dense(n))
            .collect();
        Matrix::from_columns(&cols, n)
            .kernel()
            .into_iter()
            .map(|v| LieElement::from_dense(&v))
            .collect()
    }

    /// Fixed-space dimension by counting: `θ` permutes the basis up to sign,
    /// and each cycle contributes one fixed vector iff the signs around it
    /// multiply to `+1`.
    pub fn fixed_dim_by_cycles(&self, alg: &ChevalleyAlgebra) -> usize {
        let n = alg.dim();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut b = start;
            let mut sign = 1;
            loop {
                seen[b] = true;
                let img = self.apply_basis(alg, b);
                let (next, c) = img.terms().next().expect("θ maps basis vectors to ± basis vectors");
                sign *= c.to_int().expect("sign");
                b = next;
                if b == start {
                    break;
                }
            }
            if sign == 1 {
                count += 1;
            }
        }
        count
    }
}

/// Some simple `k` and root `δ` with `γ = ±α_k + δ` (sign of `γ`).
pub(crate) fn split_off_simple(alg: &ChevalleyAlgebra, gamma: usize) -> Option<(usize, usize)> {
    let sys = alg.system();
    let positive = sys.is_positive(gamma);
    for i in 0..sys.rank() {
        let mut s = sys.simple_root(i);
        if !positive {
            s = sys.negative(s);
        }
        let diff: Vec<i64> = sys
            .root(gamma)
            .coords
            .iter()
            .zip(&sys.root(s).coords)
            .map(|(a, b)| a - b)
            .collect();
        if let Some(d) = sys.find(&diff) {
            return Some((s, d));
        }
    }
    None
}

fn permutation_order(p: &[usize]) -> usize {
    let mut order = 1;
    for start in 0..p.len() {
        let mut len = 1;
        let mut i = p[start];
        while i != start {
            i = p[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}
