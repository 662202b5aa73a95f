//! Reductive subalgebras realized inside a Chevalley algebra.
//!
//! Every embedding is built the same way: choose images `E_k`, `F_k` of the
//! Chevalley generators of the abstract algebra `𝔥`, set `ι(h_k) = [E_k, F_k]`,
//! extend to all root vectors by height using the structure constants of
//! `𝔥`, and verify that `ι` preserves every bracket of basis vectors.

mod automorphism;
mod bds;

use std::sync::Arc;

pub use automorphism::DiagramAutomorphism;
pub use bds::{borel_de_siebenthal, deriziotis_check, BdsEntry, BdsOptions, BdsStep};

use crate::chevalley::{build_algebra, ChevalleyAlgebra, LieElement};
use crate::cochar::Cocharacter;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::{parse_components, recognize_cartan, RootSystem, SimpleType, SubsystemSpec};
use crate::scalar::Scalar;
use crate::Rational;
use automorphism::split_off_simple;

#[derive(Clone, Debug)]
pub enum EmbeddingKind {
    Regular(SubsystemSpec),
    FixedPoints(DiagramAutomorphism),
    /// Diagonal in a product of two isomorphic factors; node `i` of the
    /// first factor is paired with node `pairing[i]` of the second.
    Diagonal { pairing: Vec<(usize, usize)> },
}

impl EmbeddingKind {
    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingKind::Regular(_) => "regular",
            EmbeddingKind::FixedPoints(_) => "fixed_points",
            EmbeddingKind::Diagonal { .. } => "diagonal",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    pub id: String,
    pub kind: EmbeddingKind,
    pub ambient: Arc<ChevalleyAlgebra>,
    /// The semisimple part of `𝔥` as an abstract Chevalley algebra.
    pub sub_algebra: Arc<ChevalleyAlgebra>,
    /// `ι(b)` for each basis vector `b` of `sub_algebra`.
    pub sub_basis: Vec<LieElement<Rational>>,
    /// Cartan elements spanning the centre of `𝔥` (regular embeddings keep
    /// the whole ambient Cartan subalgebra).
    pub center_basis: Vec<LieElement<Rational>>,
    /// Takes `⟨α^H_k, λ⟩` to `⟨α_i, ι∘λ⟩`.
    pub cartan_map: Matrix<Rational>,
}

impl Embedding {
    pub fn ambient(&self) -> &ChevalleyAlgebra {
        &self.ambient
    }

    pub fn sub_system(&self) -> &RootSystem {
        self.sub_algebra.system()
    }

    /// `dim 𝔥`, including the centre.
    pub fn dim(&self) -> usize {
        self.sub_basis.len() + self.center_basis.len()
    }

    pub fn map_element(&self, x: &LieElement<Rational>) -> LieElement<Rational> {
        x.map_basis(|b| self.sub_basis[b].clone())
    }

    /// Image of a cocharacter of `H`; fails unless the image is integral.
    pub fn map_cocharacter(&self, lambda: &Cocharacter) -> Result<Cocharacter> {
        let p: Vec<Rational> = lambda.pairings().iter().map(|&v| Rational::from_int(v)).collect();
        let out = if p.is_empty() {
            vec![Rational::from_int(0); self.ambient.rank()]
        } else {
            self.cartan_map.mul_vec(&p)
        };
        out.iter()
            .map(|x| x.to_int())
            .collect::<Option<Vec<i64>>>()
            .map(Cocharacter::new)
            .ok_or_else(|| Error::Consistency(format!("{:?} does not map to a cocharacter", lambda.pairings())))
    }

    /// Checks that `sub_basis` together with `center_basis` spans a
    /// bracket-closed subspace of the right dimension.
    pub fn verify_closed(&self) -> Result<()> {
        let mut basis = self.sub_basis.clone();
        basis.extend(self.center_basis.iter().cloned());
        crate::chevalley::Subalgebra::new(&self.ambient, basis).map(|_| ())
    }
}

/// Images of all basis vectors of `sub` given images of the generators
/// `e_{α_k}`, `e_{−α_k}`; verifies the homomorphism property and injectivity.
fn extend_generators(
    ambient: &ChevalleyAlgebra,
    sub: &ChevalleyAlgebra,
    e_img: &[LieElement<Rational>],
    f_img: &[LieElement<Rational>],
) -> Result<Vec<LieElement<Rational>>> {
    let hs = sub.system();
    let nr = hs.num_roots();
    let mut img = vec![LieElement::zero(); sub.dim()];
    for k in 0..hs.rank() {
        img[hs.simple_root(k)] = e_img[k].clone();
        img[hs.negative(hs.simple_root(k))] = f_img[k].clone();
        img[nr + k] = ambient.bracket(&e_img[k], &f_img[k]);
    }
    for g in 0..hs.positive_count() {
        if hs.root(g).height() == 1 {
            continue;
        }
        for gamma in [g, hs.negative(g)] {
            let (s, delta) = split_off_simple(sub, gamma).expect("non-simple root splits");
            let n = sub.structure_constant(s, delta);
            let v = ambient.bracket(&img[s], &img[delta]);
            img[gamma] = v.scaled(&(Rational::from_int(1) / Rational::from_int(n)));
        }
    }
    for x in 0..sub.dim() {
        for y in x + 1..sub.dim() {
            let lhs = ambient.bracket(&img[x], &img[y]);
            let mut rhs = LieElement::zero();
            for &(k, c) in sub.bracket_basis(x, y) {
                rhs.add_scaled(&img[k], &Rational::from_int(c));
            }
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "generator images do not define a homomorphism (basis {x}, {y})"
                )));
            }
        }
    }
    let cols: Vec<Vec<Rational>> = img.iter().map(|v| v.to_dense(ambient.dim())).collect();
    if Matrix::from_columns(&cols, ambient.dim()).rank() != img.len() {
        return Err(Error::Consistency("embedding is not injective".into()));
    }
    Ok(img)
}

/// `M = A_Gᵀ · P · (A_Hᵀ)⁻¹` where column `k` of `P` holds `ι(h_k)` in the
/// ambient coroot basis.
fn cartan_map(ambient: &ChevalleyAlgebra, sub: &ChevalleyAlgebra, img: &[LieElement<Rational>]) -> Matrix<Rational> {
    let g = ambient.system();
    let h = sub.system();
    let (rg, rh) = (g.rank(), h.rank());
    if rh == 0 {
        return Matrix::zeros(rg, 0);
    }
    let nr_h = h.num_roots();
    let p = Matrix::from_columns(
        &(0..rh)
            .map(|k| (0..rg).map(|i| img[nr_h + k].coeff(ambient.cartan_index(i))).collect())
            .collect::<Vec<Vec<Rational>>>(),
        rg,
    );
    let ag_t = Matrix::from_rows(
        (0..rg)
            .map(|j| (0..rg).map(|i| Rational::from_int(g.cartan()[i][j])).collect())
            .collect(),
        rg,
    );
    let ah_t = Matrix::from_rows(
        (0..rh)
            .map(|j| (0..rh).map(|i| Rational::from_int(h.cartan()[i][j])).collect())
            .collect(),
        rh,
    );
    ag_t.mul(&p).mul(&ah_t.inverse().expect("Cartan matrix is invertible"))
}

/// Cartan elements vanishing on every root of `roots`, i.e. the centre of
/// the regular subalgebra they span together with the Cartan subalgebra.
fn center_of(ambient: &ChevalleyAlgebra, roots: &SubsystemSpec) -> Vec<LieElement<Rational>> {
    let sys = ambient.system();
    let r = sys.rank();
    if roots.base().is_empty() {
        return (0..r).map(|k| LieElement::basis(ambient.cartan_index(k))).collect();
    }
    let rows: Vec<Vec<Rational>> = roots
        .base()
        .iter()
        .map(|&b| (0..r).map(|k| Rational::from_int(sys.pairing(&sys.root(b).coords, k))).collect())
        .collect();
    Matrix::from_rows(rows, r)
        .kernel()
        .into_iter()
        .map(|x| LieElement::from_terms(x.into_iter().enumerate().map(|(k, c)| (ambient.cartan_index(k), c))))
        .collect()
}

pub fn regular_embedding(ambient: Arc<ChevalleyAlgebra>, phi: &SubsystemSpec, id: impl Into<String>) -> Result<Embedding> {
    let sys = ambient.system();
    if !sys.is_closed_subsystem(phi.roots()) {
        return Err(Error::NotClosed(format!("{} roots", phi.roots().len())));
    }
    let comps = phi.components(sys);
    let types: Vec<SimpleType> = comps.iter().map(|c| c.simple_type).collect();
    let base: Vec<usize> = comps.iter().flat_map(|c| c.base.iter().copied()).collect();
    let sub = Arc::new(build_algebra(&RootSystem::new(&types)?)?);
    let e: Vec<LieElement<Rational>> = base.iter().map(|&b| LieElement::basis(b)).collect();
    let f: Vec<LieElement<Rational>> = base.iter().map(|&b| LieElement::basis(sys.negative(b))).collect();
    let img = extend_generators(&ambient, &sub, &e, &f)?;
    let cmap = cartan_map(&ambient, &sub, &img);
    let center_basis = center_of(&ambient, phi);
    let emb = Embedding {
        id: id.into(),
        kind: EmbeddingKind::Regular(phi.clone()),
        ambient,
        sub_algebra: sub,
        sub_basis: img,
        center_basis,
        cartan_map: cmap,
    };
    emb.verify_closed()?;
    Ok(emb)
}

/// `𝔥 = 𝔤^θ` for a diagram automorphism whose orbits on the simple roots
/// consist of pairwise orthogonal nodes.
pub fn fixed_point_embedding(ambient: Arc<ChevalleyAlgebra>, theta: DiagramAutomorphism, id: impl Into<String>) -> Result<Embedding> {
    let sys = ambient.system();
    let r = sys.rank();
    let pi = &theta.node_permutation;
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; r];
    for i in 0..r {
        if seen[i] {
            continue;
        }
        let mut o = vec![i];
        seen[i] = true;
        let mut j = pi[i];
        while j != i {
            seen[j] = true;
            o.push(j);
            j = pi[j];
        }
        if o.iter().any(|&a| o.iter().any(|&b| a != b && sys.cartan()[a][b] != 0)) {
            return Err(Error::NotAutomorphism(format!("orbit {o:?} has joined nodes")));
        }
        o.sort_unstable();
        orbits.push(o);
    }
    // Folded Cartan matrix: [ι(h_O), E_{O'}] = (Σ_{i∈O} A[i][j]) E_{O'}.
    let folded: Vec<Vec<i64>> = orbits
        .iter()
        .map(|o| orbits.iter().map(|o2| o.iter().map(|&i| sys.cartan()[i][o2[0]]).sum()).collect())
        .collect();
    let recognized = recognize_cartan(&folded)?;
    let types: Vec<SimpleType> = recognized.iter().map(|(t, _)| *t).collect();
    let order: Vec<usize> = recognized.iter().flat_map(|(_, o)| o.iter().copied()).collect();
    let sub = Arc::new(build_algebra(&RootSystem::new(&types)?)?);
    let sum_over = |o: &[usize], negative: bool| {
        LieElement::from_terms(o.iter().map(|&i| {
            let s = sys.simple_root(i);
            (if negative { sys.negative(s) } else { s }, Rational::from_int(1))
        }))
    };
    let e: Vec<LieElement<Rational>> = order.iter().map(|&k| sum_over(&orbits[k], false)).collect();
    let f: Vec<LieElement<Rational>> = order.iter().map(|&k| sum_over(&orbits[k], true)).collect();
    let img = extend_generators(&ambient, &sub, &e, &f)?;

    // The image must be exactly the fixed space, whose dimension is
    // computed twice.
    let fixed = theta.fixed_space(&ambient);
    let by_cycles = theta.fixed_dim_by_cycles(&ambient);
    if fixed.len() != by_cycles {
        return Err(Error::Consistency(format!(
            "fixed space has dimension {} by kernel, {by_cycles} by cycle count",
            fixed.len()
        )));
    }
    if fixed.len() != img.len() || img.iter().any(|x| &theta.apply(&ambient, x) != x) {
        return Err(Error::Consistency(format!(
            "fixed space of dimension {} is not the folded subalgebra of dimension {}",
            fixed.len(),
            img.len()
        )));
    }
    let cmap = cartan_map(&ambient, &sub, &img);
    let emb = Embedding {
        id: id.into(),
        kind: EmbeddingKind::FixedPoints(theta),
        ambient,
        sub_algebra: sub,
        sub_basis: img,
        center_basis: Vec::new(),
        cartan_map: cmap,
    };
    emb.verify_closed()?;
    Ok(emb)
}

/// Diagonal copy of a simple factor in a product of two isomorphic
/// factors, checked against the fixed points of the factor swap.
pub fn diagonal_embedding(
    ambient: Arc<ChevalleyAlgebra>,
    factors: (usize, usize),
    pairing: Vec<(usize, usize)>,
    id: impl Into<String>,
) -> Result<Embedding> {
    let sys = ambient.system();
    let (a, b) = factors;
    let ta = sys.components()[a];
    let tb = sys.components()[b];
    let (oa, ob) = (sys.component_offsets()[a], sys.component_offsets()[b]);
    let a_cartan = ta.cartan_matrix();
    let ok = ta == tb
        && pairing.len() == ta.rank
        && pairing.iter().all(|&(i, j)| {
            pairing
                .iter()
                .all(|&(k, l)| a_cartan[i][k] == a_cartan[j][l])
        });
    if !ok {
        return Err(Error::Dimension(format!("factors {ta} and {tb} are not paired isomorphically")));
    }
    let sub = Arc::new(build_algebra(&RootSystem::new(&[ta])?)?);
    let mut e = vec![LieElement::zero(); ta.rank];
    let mut f = vec![LieElement::zero(); ta.rank];
    for &(i, j) in &pairing {
        let (s1, s2) = (sys.simple_root(oa + i), sys.simple_root(ob + j));
        e[i] = LieElement::from_terms([(s1, Rational::from_int(1)), (s2, Rational::from_int(1))]);
        f[i] = LieElement::from_terms([
            (sys.negative(s1), Rational::from_int(1)),
            (sys.negative(s2), Rational::from_int(1)),
        ]);
    }
    let img = extend_generators(&ambient, &sub, &e, &f)?;

    let mut swap: Vec<usize> = (0..sys.rank()).collect();
    for &(i, j) in &pairing {
        swap[oa + i] = ob + j;
        swap[ob + j] = oa + i;
    }
    let theta = DiagramAutomorphism::new(&ambient, swap)?;
    let fixed = theta.fixed_space(&ambient);
    if fixed.len() != img.len() || img.iter().any(|x| &theta.apply(&ambient, x) != x) {
        return Err(Error::Consistency("diagonal is not the fixed space of the swap".into()));
    }
    let cmap = cartan_map(&ambient, &sub, &img);
    let emb = Embedding {
        id: id.into(),
        kind: EmbeddingKind::Diagonal { pairing },
        ambient,
        sub_algebra: sub,
        sub_basis: img,
        center_basis: Vec::new(),
        cartan_map: cmap,
    };
    emb.verify_closed()?;
    Ok(emb)
}

/// Named embeddings:
///
/// * `E6/F4-folding`: fixed points of `α1↔α6, α3↔α5` on E6;
/// * `D4/G2-triality`: fixed points of `α1→α3→α4→α1` on D4;
/// * `E8/D4xD4-diagonal`: the diagonal D4 inside the D4×D4 subsystem of E8,
///   computed with D4×D4 as the ambient algebra;
/// * `XxX/diagonal` for any simple type X;
/// * `<type>/levi-<nodes>`, nodes 1-indexed digits (empty for the torus);
/// * `<type>/<label>` for a Borel–de Siebenthal subsystem label such as
///   `F4/A1+C3` or `F4/A2+~A2`.
pub fn embedding_by_id(id: &str) -> Result<Embedding> {
    let unknown = || Error::UnknownEmbedding(id.to_string());
    let (ty, rest) = id.split_once('/').ok_or_else(unknown)?;
    let algebra = |s: &str| -> Result<Arc<ChevalleyAlgebra>> {
        Ok(Arc::new(build_algebra(&RootSystem::new(&parse_components(s)?)?)?))
    };
    match (ty, rest) {
        ("E6", "F4-folding") => {
            let g = algebra("E6")?;
            let theta = DiagramAutomorphism::new(&g, vec![5, 1, 4, 3, 2, 0])?;
            fixed_point_embedding(g, theta, id)
        }
        ("D4", "G2-triality") => {
            let g = algebra("D4")?;
            let theta = DiagramAutomorphism::new(&g, vec![2, 1, 3, 0])?;
            fixed_point_embedding(g, theta, id)
        }
        ("E8", "D4xD4-diagonal") => {
            let g = algebra("D4xD4")?;
            diagonal_embedding(g, (0, 1), (0..4).map(|i| (i, i)).collect(), id)
        }
        (_, "diagonal") => {
            let comps = parse_components(ty)?;
            if comps.len() != 2 {
                return Err(unknown());
            }
            let g = algebra(ty)?;
            diagonal_embedding(g, (0, 1), (0..comps[0].rank).map(|i| (i, i)).collect(), id)
        }
        (_, levi) if levi.starts_with("levi-") => {
            let g = algebra(ty)?;
            let digits = &levi["levi-".len()..];
            let mut nodes = Vec::new();
            for ch in digits.chars() {
                let d = ch.to_digit(10).ok_or_else(unknown)? as usize;
                if d == 0 || d > g.rank() || nodes.contains(&(d - 1)) {
                    return Err(unknown());
                }
                nodes.push(d - 1);
            }
            nodes.sort_unstable();
            let phi = g.system().standard_levi(&nodes);
            regular_embedding(g, &phi, id)
        }
        (_, label) => {
            let g = algebra(ty)?;
            let mut wanted: Vec<&str> = label.split('+').collect();
            wanted.sort_unstable();
            let entries = borel_de_siebenthal(g.system(), BdsOptions { depth: None });
            let entry = entries
                .iter()
                .find(|e| e.signature.labels.iter().map(String::as_str).eq(wanted.iter().copied()))
                .ok_or_else(unknown)?;
            let phi = entry.spec.clone();
            regular_embedding(g, &phi, id)
        }
    }
}

#[cfg(test)]
mod tests;
