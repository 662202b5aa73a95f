//! Nilpotent orbit catalogs.
//!
//! Orbits of a simple algebra are enumerated by Bala–Carter: a standard
//! Levi subsystem `J` together with a distinguished labeling of each of its
//! simple factors gives the neutral element `h_J` and hence the weighted
//! Dynkin diagram `to_dominant(α(h_J))`. Catalogs of semisimple algebras are
//! products of the catalogs of their simple factors.
//!
//! Every catalog representative sits in dominant position: `e ∈ 𝔤(2, λ)`
//! where `λ` is the diagram cocharacter, and the stored triple has `h = h_λ`.

mod json;
mod labels;
mod triple;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use json::{CatalogJson, OrbitJson};
pub use labels::{distinguished_labelings, DistinguishedLabeling};
pub use triple::{complete_triple, jacobson_morozov, weighted_diagram, Sl2Triple, TripleJson};

use crate::chevalley::{build_algebra, reductive_rank, ChevalleyAlgebra, LieElement, RankTrials, Subalgebra};
use crate::cochar::{grade, Cocharacter};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, SubsystemSpec};
use crate::scalar::Scalar;
use crate::Rational;
use labels::{bala_carter_label, LabelPart};

const GENERICITY_ATTEMPTS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOrbit {
    pub label: String,
    pub representative: LieElement<Rational>,
    pub triple: Sl2Triple,
    pub diagram: Vec<i64>,
    pub dim_orbit: usize,
    pub centralizer_dim: usize,
    pub reductive_rank: usize,
    pub distinguished: bool,
    /// Simple roots of the Bala–Carter Levi and the labels on them.
    pub levi_nodes: Vec<usize>,
    pub levi_labels: Vec<i64>,
}

impl NilpotentOrbit {
    pub fn cocharacter(&self) -> Cocharacter {
        Cocharacter::new(self.diagram.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.diagram.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitCatalog {
    pub system: RootSystem,
    pub orbits: Vec<NilpotentOrbit>,
}

impl OrbitCatalog {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn by_diagram(&self, diagram: &[i64]) -> Option<&NilpotentOrbit> {
        self.orbits.iter().find(|o| o.diagram == diagram)
    }

    /// Looks up a label; `0` is accepted for the zero orbit.
    pub fn by_label(&self, label: &str) -> Option<&NilpotentOrbit> {
        if label == "0" {
            return self.orbits.iter().find(|o| o.is_zero());
        }
        self.orbits.iter().find(|o| o.label == label)
    }

    pub fn zero_orbit(&self) -> &NilpotentOrbit {
        self.orbits.iter().find(|o| o.is_zero()).expect("catalog has the zero orbit")
    }

    /// Re-checks the exact sl(2) relations and gradings of every entry.
    pub fn verify(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        for o in &self.orbits {
            o.triple.check(alg)?;
            let lam = o.cocharacter();
            if o.triple.cocharacter(alg)? != lam {
                return Err(Error::Consistency(format!("{}: h is not h_λ for its diagram", o.label)));
            }
            if o.representative.support().any(|b| lam.basis_degree(alg, b) != 2) {
                return Err(Error::Consistency(format!("{}: representative not in 𝔤(2)", o.label)));
            }
        }
        let mut diagrams: Vec<&Vec<i64>> = self.orbits.iter().map(|o| &o.diagram).collect();
        diagrams.sort();
        diagrams.dedup();
        if diagrams.len() != self.orbits.len() {
            return Err(Error::Consistency("repeated diagram in catalog".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CatalogOptions {
    pub seed: u64,
}

/// Builds the orbit catalog of `alg`.
pub fn enumerate_orbits(alg: &ChevalleyAlgebra, opts: CatalogOptions) -> Result<OrbitCatalog> {
    let sys = alg.system();
    let catalog = match sys.components().len() {
        0 => OrbitCatalog {
            system: sys.clone(),
            orbits: vec![zero_orbit(alg)],
        },
        1 => simple_catalog(alg, opts)?,
        _ => product_catalog(alg, opts)?,
    };
    catalog.verify(alg)?;
    Ok(catalog)
}

fn zero_orbit(alg: &ChevalleyAlgebra) -> NilpotentOrbit {
    NilpotentOrbit {
        label: "1".into(),
        representative: LieElement::zero(),
        triple: Sl2Triple::zero(),
        diagram: vec![0; alg.rank()],
        dim_orbit: 0,
        centralizer_dim: alg.dim(),
        reductive_rank: alg.rank(),
        distinguished: alg.dim() == 0,
        levi_nodes: Vec::new(),
        levi_labels: Vec::new(),
    }
}

/// A Bala–Carter datum waiting to be realized.
#[derive(Clone, Debug)]
struct Candidate {
    nodes: Vec<usize>,
    /// Label on each node of `nodes`.
    labels: Vec<i64>,
    /// `⟨α_i, λ_J⟩` for all simple roots.
    pairings: Vec<i64>,
    label: String,
}

fn candidates(sys: &RootSystem) -> BTreeMap<Vec<i64>, Candidate> {
    let r = sys.rank();
    let mut out: BTreeMap<Vec<i64>, Candidate> = BTreeMap::new();
    let mut table = BTreeMap::new();
    for mask in 0u32..(1 << r) {
        let nodes: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let levi = sys.standard_levi(&nodes);
        let comps = levi.components(sys);
        let choices: Vec<Vec<DistinguishedLabeling>> = comps
            .iter()
            .map(|c| {
                table
                    .entry(c.simple_type)
                    .or_insert_with(|| distinguished_labelings(c.simple_type))
                    .clone()
            })
            .collect();
        for pick in choices.iter().map(|v| 0..v.len()).multi_cartesian_or_unit() {
            let mut node_label = vec![0i64; r];
            let mut parts = Vec::new();
            for (ci, comp) in comps.iter().enumerate() {
                let d = &choices[ci][pick[ci]];
                for (k, &b) in comp.base.iter().enumerate() {
                    debug_assert_eq!(sys.simple_root(b), b);
                    node_label[b] = d.labels[k];
                }
                parts.push(LabelPart::new(comp, &d.decoration));
            }
            let labels: Vec<i64> = nodes.iter().map(|&i| node_label[i]).collect();
            let pairings = neutral_pairings(sys, &nodes, &labels);
            let diagram = Cocharacter::new(pairings.clone()).dominant(sys).0.pairings().to_vec();
            out.entry(diagram).or_insert(Candidate {
                nodes: nodes.clone(),
                labels,
                pairings,
                label: bala_carter_label(parts),
            });
        }
    }
    out
}

/// Pairings of the neutral element `h_J = Σ_{k∈J} x_k h_k` with
/// `α_j(h_J) = label_j` on `J`.
fn neutral_pairings(sys: &RootSystem, nodes: &[usize], labels: &[i64]) -> Vec<i64> {
    if nodes.is_empty() {
        return vec![0; sys.rank()];
    }
    let a = sys.cartan();
    let rows: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|&j| nodes.iter().map(|&k| Rational::from_int(a[k][j])).collect())
        .collect();
    let rhs: Vec<Rational> = labels.iter().map(|&l| Rational::from_int(l)).collect();
    let x = crate::linalg::Matrix::from_rows(rows, nodes.len())
        .solve(&rhs)
        .expect("Levi Cartan matrix is invertible");
    (0..sys.rank())
        .map(|i| {
            let v = nodes
                .iter()
                .zip(&x)
                .fold(Rational::from_int(0), |s, (&k, xk)| s + xk.clone() * Rational::from_int(a[k][i]));
            v.to_int().expect("neutral elements have integral root values")
        })
        .collect()
}

fn simple_catalog(alg: &ChevalleyAlgebra, opts: CatalogOptions) -> Result<OrbitCatalog> {
    let sys = alg.system();
    let cands: Vec<(Vec<i64>, Candidate)> = candidates(sys).into_iter().collect();
    let mut orbits = cands
        .par_iter()
        .map(|(diagram, c)| realize(alg, diagram, c, opts))
        .collect::<Result<Vec<_>>>()?;
    orbits.sort_by(|a, b| a.dim_orbit.cmp(&b.dim_orbit).then(a.diagram.cmp(&b.diagram)));
    add_primes(&mut orbits);
    Ok(OrbitCatalog {
        system: sys.clone(),
        orbits,
    })
}

/// Distinct orbits that share a Bala–Carter label (non-conjugate Levis of
/// equal type) get `'`, `''`, … in catalog order.
fn add_primes(orbits: &mut [NilpotentOrbit]) {
    let mut count: BTreeMap<String, usize> = BTreeMap::new();
    for o in orbits.iter() {
        *count.entry(o.label.clone()).or_default() += 1;
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for o in orbits.iter_mut() {
        if count[&o.label] > 1 {
            let k = seen.entry(o.label.clone()).or_default();
            *k += 1;
            o.label = format!("{}{}", o.label, "'".repeat(*k));
        }
    }
}

/// Basis of the semisimple part of a Levi subsystem: its root vectors and
/// the coroots of its base.
pub fn levi_basis(alg: &ChevalleyAlgebra, levi: &SubsystemSpec) -> Vec<LieElement<Rational>> {
    let sys = alg.system();
    let mut out: Vec<LieElement<Rational>> = levi.roots().iter().map(|&r| LieElement::basis(r)).collect();
    for &b in levi.base() {
        out.push(LieElement::from_terms(
            sys.coroot(b)
                .into_iter()
                .enumerate()
                .map(|(k, c)| (alg.cartan_index(k), Rational::from_int(c))),
        ));
    }
    out
}

/// `dim 𝔩'(j, λ)` for the semisimple part of a Levi.
fn levi_graded_dim(sys: &RootSystem, levi: &SubsystemSpec, lambda: &Cocharacter, j: i64) -> usize {
    let roots = levi
        .roots()
        .iter()
        .filter(|&&r| lambda.degree(&sys.root(r).coords) == j)
        .count();
    if j == 0 {
        roots + levi.rank()
    } else {
        roots
    }
}

/// Coefficients for the `attempt`-th genericity trial on `n` terms.
fn coefficients(attempt: usize, n: usize, seed: u64) -> Vec<i64> {
    match attempt {
        0 => vec![1; n],
        1 => (1..=n as i64).collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let bound = 3 * attempt as i64;
            (0..n)
                .map(|_| {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-bound..=bound);
                    }
                    c
                })
                .collect()
        }
    }
}

/// A generic element of `𝔩'(2, λ)` for the Levi `levi`, certified by
/// `dim c_{𝔩'}(e) = dim 𝔩'(0, λ)`.
fn generic_in_levi(
    alg: &ChevalleyAlgebra,
    levi: &SubsystemSpec,
    lambda: &Cocharacter,
    seed: u64,
) -> Result<LieElement<Rational>> {
    let sys = alg.system();
    let degree_two: Vec<usize> = levi
        .roots()
        .iter()
        .copied()
        .filter(|&r| lambda.degree(&sys.root(r).coords) == 2)
        .collect();
    if degree_two.is_empty() {
        return Ok(LieElement::zero());
    }
    let basis = levi_basis(alg, levi);
    let target = levi_graded_dim(sys, levi, lambda, 0);
    for attempt in 0..GENERICITY_ATTEMPTS {
        let c = coefficients(attempt, degree_two.len(), seed);
        let e = LieElement::from_terms(degree_two.iter().zip(&c).map(|(&r, &v)| (r, Rational::from_int(v))));
        if alg.centralizer_dim_on(&e, &basis) == target {
            return Ok(e);
        }
    }
    Err(Error::Genericity(format!(
        "no element of 𝔩(2) with centralizer dimension {target} for λ = {:?}",
        lambda.pairings()
    )))
}

/// Applies simple reflections (in order) to every root of a subsystem.
pub(crate) fn conjugate_subsystem(sys: &RootSystem, spec: &SubsystemSpec, word: &[usize]) -> SubsystemSpec {
    let mut roots: Vec<usize> = spec.roots().to_vec();
    for &i in word {
        let s = sys.simple_root(i);
        for r in roots.iter_mut() {
            *r = sys.reflect_root(*r, s);
        }
    }
    sys.subsystem(&roots).expect("Weyl conjugate of a closed subsystem is closed")
}

fn realize(alg: &ChevalleyAlgebra, diagram: &[i64], c: &Candidate, opts: CatalogOptions) -> Result<NilpotentOrbit> {
    let sys = alg.system();
    let seed = opts.seed;
    let levi = sys.standard_levi(&c.nodes);
    let lam_j = Cocharacter::new(c.pairings.clone());

    // Bala–Carter representative and an independent Jacobson–Morozov check
    // of its diagram.
    let e_bc = generic_in_levi(alg, &levi, &lam_j, seed)?;
    let t_bc = jacobson_morozov(alg, &e_bc)?;
    let d_bc = weighted_diagram(alg, &t_bc)?;
    if d_bc != diagram {
        return Err(Error::Consistency(format!(
            "Bala–Carter datum predicts {diagram:?}, Jacobson–Morozov gives {d_bc:?}"
        )));
    }

    // The same construction after moving λ_J to the dominant chamber.
    let (lam, word) = lam_j.dominant(sys);
    debug_assert_eq!(lam.pairings(), diagram);
    let levi_w = conjugate_subsystem(sys, &levi, &word);
    let e = generic_in_levi(alg, &levi_w, &lam, seed)?;
    let triple = complete_triple(alg, &e, &lam, None)
        .ok_or_else(|| Error::NoTriple(format!("dominant representative for {diagram:?}")))?;

    let all: Vec<LieElement<Rational>> = (0..alg.dim()).map(LieElement::basis).collect();
    let centralizer_dim = alg.centralizer_dim_on(&e, &all);
    let g = grade(alg, &lam);
    if centralizer_dim != g.dim(0) + g.dim(1) {
        return Err(Error::Consistency(format!(
            "dim c(e) = {centralizer_dim} but dim 𝔤(0) + dim 𝔤(1) = {}",
            g.dim(0) + g.dim(1)
        )));
    }
    let rank = centralizer_rank(alg, &e, &lam, seed)?;
    let distinguished = rank == 0;
    if distinguished != (g.dim(0) == g.dim(2)) {
        return Err(Error::Consistency(format!(
            "distinguished tests disagree on {diagram:?}: rank {rank}, dim 𝔤(0) = {}, dim 𝔤(2) = {}",
            g.dim(0),
            g.dim(2)
        )));
    }
    Ok(NilpotentOrbit {
        label: c.label.clone(),
        representative: e,
        triple,
        diagram: diagram.to_vec(),
        dim_orbit: alg.dim() - centralizer_dim,
        centralizer_dim,
        reductive_rank: rank,
        distinguished,
        levi_nodes: c.nodes.clone(),
        levi_labels: c.labels.clone(),
    })
}

/// Reductive rank of `𝔠_𝔤(e) ∩ 𝔤(0, λ)`.
pub fn centralizer_rank(alg: &ChevalleyAlgebra, e: &LieElement<Rational>, lambda: &Cocharacter, seed: u64) -> Result<usize> {
    let g0 = grade(alg, lambda).basis(0);
    let c0 = alg.kernel_of_ad_on(e, &g0);
    let s = Subalgebra::from_basis_unchecked(alg, c0);
    reductive_rank(
        alg,
        &s,
        RankTrials {
            seed,
            ..RankTrials::default()
        },
    )
}

/// Catalog of a semisimple algebra as the product of the catalogs of its
/// simple factors; representatives and triples are transported into the
/// ambient basis.
fn product_catalog(alg: &ChevalleyAlgebra, opts: CatalogOptions) -> Result<OrbitCatalog> {
    let sys = alg.system();
    let factors: Vec<(OrbitCatalog, Vec<usize>)> = sys
        .components()
        .par_iter()
        .enumerate()
        .map(|(ci, &t)| {
            let local = RootSystem::new(&[t])?;
            let local_alg = build_algebra(&local)?;
            let cat = simple_catalog(&local_alg, opts)?;
            Ok((cat, component_index_map(alg, &local_alg, ci)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut orbits = Vec::new();
    for pick in factors.iter().map(|(c, _)| 0..c.len()).multi_cartesian_or_unit() {
        let mut o = NilpotentOrbit {
            label: String::new(),
            representative: LieElement::zero(),
            triple: Sl2Triple::zero(),
            diagram: Vec::new(),
            dim_orbit: 0,
            centralizer_dim: 0,
            reductive_rank: 0,
            distinguished: true,
            levi_nodes: Vec::new(),
            levi_labels: Vec::new(),
        };
        let mut labels = Vec::new();
        for (ci, (cat, map)) in factors.iter().enumerate() {
            let f = &cat.orbits[pick[ci]];
            let move_in = |x: &LieElement<Rational>| x.map_basis(|b| LieElement::basis(map[b]));
            o.representative = o.representative.plus(&move_in(&f.representative));
            o.triple.e = o.triple.e.plus(&move_in(&f.triple.e));
            o.triple.h = o.triple.h.plus(&move_in(&f.triple.h));
            o.triple.f = o.triple.f.plus(&move_in(&f.triple.f));
            o.diagram.extend_from_slice(&f.diagram);
            o.dim_orbit += f.dim_orbit;
            o.centralizer_dim += f.centralizer_dim;
            o.reductive_rank += f.reductive_rank;
            o.distinguished &= f.distinguished;
            let off = sys.component_offsets()[ci];
            o.levi_nodes.extend(f.levi_nodes.iter().map(|n| n + off));
            o.levi_labels.extend_from_slice(&f.levi_labels);
            labels.push(f.label.clone());
        }
        o.label = labels.join(" x ");
        orbits.push(o);
    }
    orbits.sort_by(|a, b| a.dim_orbit.cmp(&b.dim_orbit).then(a.diagram.cmp(&b.diagram)));
    Ok(OrbitCatalog {
        system: sys.clone(),
        orbits,
    })
}

/// Basis index of the ambient algebra for each basis index of the algebra of
/// simple factor `ci`.
fn component_index_map(alg: &ChevalleyAlgebra, local: &ChevalleyAlgebra, ci: usize) -> Vec<usize> {
    let sys = alg.system();
    let off = sys.component_offsets()[ci];
    let mut map = Vec::with_capacity(local.dim());
    for r in 0..local.num_roots() {
        let mut coords = vec![0; sys.rank()];
        coords[off..off + local.rank()].copy_from_slice(&local.system().root(r).coords);
        map.push(sys.find(&coords).expect("factor root is an ambient root"));
    }
    for k in 0..local.rank() {
        map.push(alg.cartan_index(off + k));
    }
    map
}

/// Finds the catalog orbit of `e`: Jacobson–Morozov, weighted diagram, then
/// a centralizer-dimension cross-check.
pub fn identify_orbit<'a>(
    alg: &ChevalleyAlgebra,
    catalog: &'a OrbitCatalog,
    e: &LieElement<Rational>,
) -> Result<&'a NilpotentOrbit> {
    let t = jacobson_morozov(alg, e)?;
    let d = weighted_diagram(alg, &t)?;
    let o = catalog.by_diagram(&d).ok_or_else(|| Error::UnknownOrbit(d.clone()))?;
    let all: Vec<LieElement<Rational>> = (0..alg.dim()).map(LieElement::basis).collect();
    let cdim = alg.centralizer_dim_on(e, &all);
    if cdim != o.centralizer_dim {
        return Err(Error::Consistency(format!(
            "element has centralizer dimension {cdim}, orbit {} has {}",
            o.label, o.centralizer_dim
        )));
    }
    Ok(o)
}

/// Whether `o` is distinguished, recomputed: `reductive_rank(𝔠_𝔤(e) ∩
/// 𝔤(0,λ)) = 0`, cross-checked against `dim 𝔤(0,λ) = dim 𝔤(2,λ)`.
pub fn is_distinguished(alg: &ChevalleyAlgebra, o: &NilpotentOrbit, seed: u64) -> Result<bool> {
    let lam = o.cocharacter();
    let rank = centralizer_rank(alg, &o.representative, &lam, seed)?;
    let g = grade(alg, &lam);
    let by_dims = g.dim(0) == g.dim(2);
    if (rank == 0) != by_dims {
        return Err(Error::Consistency(format!("distinguished tests disagree for {}", o.label)));
    }
    Ok(rank == 0)
}

/// Cartesian product of ranges that yields one empty tuple for no ranges.
trait CartesianOrUnit {
    fn multi_cartesian_or_unit(self) -> Box<dyn Iterator<Item = Vec<usize>>>;
}

impl<I: Iterator<Item = std::ops::Range<usize>>> CartesianOrUnit for I {
    fn multi_cartesian_or_unit(self) -> Box<dyn Iterator<Item = Vec<usize>>> {
        let ranges: Vec<std::ops::Range<usize>> = self.collect();
        if ranges.is_empty() {
            return Box::new(std::iter::once(Vec::new()));
        }
        use itertools::Itertools;
        Box::new(ranges.into_iter().multi_cartesian_product())
    }
}

#[cfg(test)]
mod tests;
