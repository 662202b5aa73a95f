//! Root systems in simple-root coordinates.
//!
//! Conventions, fixed for the whole crate:
//!
//! * Simple roots follow Bourbaki numbering per component (E-types: the
//!   chain is 1-3-4-5-6-7-8 with node 2 attached to node 4; F4 has α1, α2
//!   long; G2 has α1 short).
//! * The Cartan matrix satisfies `A[i][j] = ⟨α_j, α_i^∨⟩`.
//! * Roots are integer coordinate vectors over the simple roots. Lengths
//!   come from the symmetrised form `(α_i, α_j) = d_i A[i][j]`, where
//!   `(α_i, α_i) = 2 d_i` and the shortest simple root of each component has
//!   `d_i = 1`.
//! * Positive roots are ordered by height and then by descending
//!   lexicographic order of their coordinates, so root `i < rank` is the
//!   simple root α_{i+1}. Negative roots follow in the same order.
//!
//! Semisimple systems are products of simple components; every root
//! records which component it lives in.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// The type of a simple component, e.g. `F4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Bourbaki Cartan matrix, `A[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    bond(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            Family::E => {
                bond(0, 2);
                bond(1, 3);
                for i in 2..n - 1 {
                    bond(i, i + 1);
                }
            }
            Family::F => {
                bond(0, 1);
                bond(1, 2);
                bond(2, 3);
            }
            Family::G => bond(0, 1),
        }
        match self.family {
            // α_n short
            Family::B => a[n - 1][n - 2] = -2,
            // α_n long
            Family::C => a[n - 2][n - 1] = -2,
            Family::F => a[2][1] = -2,
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

/// Parses a product type such as `F4`, `D4xD4` or `A2+A1`.
pub fn parse_components(s: &str) -> Result<Vec<SimpleType>> {
    let parts: Vec<&str> = s
        .split(|c: char| c == 'x' || c == 'X' || c == '+' || c == '×' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::ParseType(s.to_string()));
    }
    parts.into_iter().map(SimpleType::from_str).collect()
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub component: usize,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    components: Vec<SimpleType>,
    offsets: Vec<usize>,
    node_component: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    half_norms: Vec<i64>,
    roots: Vec<Root>,
    positive_count: usize,
    highest: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for RootSystem {}

/// Builds the root system of a product of simple types.
pub fn build_root_system(components: &[SimpleType]) -> Result<RootSystem> {
    RootSystem::new(components)
}

impl RootSystem {
    pub fn new(components: &[SimpleType]) -> Result<Self> {
        for c in components {
            SimpleType::new(c.family, c.rank)?;
        }
        let rank: usize = components.iter().map(|c| c.rank).sum();
        let mut offsets = Vec::with_capacity(components.len());
        let mut node_component = Vec::with_capacity(rank);
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut half_norms = vec![0i64; rank];
        let mut positive: Vec<Root> = Vec::new();
        let mut off = 0;
        for (ci, c) in components.iter().enumerate() {
            offsets.push(off);
            let local = c.cartan_matrix();
            for i in 0..c.rank {
                node_component.push(ci);
                for j in 0..c.rank {
                    cartan[off + i][off + j] = local[i][j];
                }
            }
            for (i, d) in symmetrizer(&local).into_iter().enumerate() {
                half_norms[off + i] = d;
            }
            for local_root in positive_roots_from_cartan(&local) {
                let mut coords = vec![0i64; rank];
                coords[off..off + c.rank].copy_from_slice(&local_root);
                positive.push(Root {
                    coords,
                    component: ci,
                });
            }
            off += c.rank;
        }
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coords.cmp(&a.coords))
        });
        let positive_count = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.into_iter().map(|r| Root {
            coords: r.coords.iter().map(|c| -c).collect(),
            component: r.component,
        }));
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();
        let highest = (0..components.len())
            .map(|ci| {
                (0..positive_count)
                    .filter(|&i| roots[i].component == ci)
                    .max_by_key(|&i| roots[i].height())
                    .expect("component without roots")
            })
            .collect();
        Ok(Self {
            components: components.to_vec(),
            offsets,
            node_component,
            cartan,
            half_norms,
            roots,
            positive_count,
            highest,
            index,
        })
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    /// Index of the first simple root of each component.
    pub fn component_offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Simple-root indices belonging to component `ci`.
    pub fn component_nodes(&self, ci: usize) -> std::ops::Range<usize> {
        self.offsets[ci]..self.offsets[ci] + self.components[ci].rank
    }

    pub fn node_component(&self, i: usize) -> usize {
        self.node_component[i]
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.positive_count
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.positive_count {
            i + self.positive_count
        } else {
            i - self.positive_count
        }
    }

    /// Root index of the simple root α_{i+1}.
    pub fn simple_root(&self, i: usize) -> usize {
        debug_assert!(i < self.rank());
        i
    }

    pub fn find(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Highest root of each component, as root indices.
    pub fn highest_roots(&self) -> &[usize] {
        &self.highest
    }

    /// `(α_i, α_i) / 2` for each simple root.
    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    /// Dimension of the Lie algebra, `|Ψ| + rank`.
    pub fn dimension(&self) -> usize {
        self.roots.len() + self.rank()
    }

    /// `⟨β, α_i^∨⟩` for a vector `β` in simple-root coordinates.
    pub fn pairing(&self, coords: &[i64], i: usize) -> i64 {
        coords
            .iter()
            .zip(&self.cartan[i])
            .map(|(c, a)| c * a)
            .sum()
    }

    /// The symmetric form `(x, y)`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj != 0 {
                    s += xi * yj * self.half_norms[i] * self.cartan[i][j];
                }
            }
        }
        s
    }

    pub fn norm(&self, coords: &[i64]) -> i64 {
        self.inner(coords, coords)
    }

    /// True when root `i` is long within its component (all roots are long
    /// in a simply-laced component).
    pub fn is_long(&self, i: usize) -> bool {
        let r = &self.roots[i];
        let max = self
            .component_nodes(r.component)
            .map(|j| self.half_norms[j])
            .max()
            .unwrap_or(1);
        self.norm(&r.coords) == 2 * max
    }

    /// Coroot of root `i` in the basis of simple coroots:
    /// `β^∨ = Σ c_j (α_j, α_j)/(β, β) α_j^∨`.
    pub fn coroot(&self, i: usize) -> Vec<i64> {
        let r = &self.roots[i];
        let nb = self.norm(&r.coords);
        r.coords
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let num = c * 2 * self.half_norms[j];
                debug_assert_eq!(num % nb, 0);
                num / nb
            })
            .collect()
    }

    /// `⟨x, β^∨⟩ = 2 (x, β) / (β, β)` for a root β.
    pub fn coroot_pairing(&self, x: &[i64], beta: &[i64]) -> i64 {
        let num = 2 * self.inner(x, beta);
        let den = self.norm(beta);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Index of `s_β(root)` where β is the root with index `by`.
    pub fn reflect_root(&self, root: usize, by: usize) -> usize {
        let x = &self.roots[root].coords;
        let b = &self.roots[by].coords;
        let k = self.coroot_pairing(x, b);
        let y: Vec<i64> = x.iter().zip(b).map(|(xi, bi)| xi - k * bi).collect();
        self.find(&y).expect("reflection of a root is a root")
    }

    /// Permutation of root indices induced by the simple reflection `s_i`.
    pub fn simple_reflection_perm(&self, i: usize) -> Vec<usize> {
        (0..self.roots.len())
            .map(|r| self.reflect_root(r, i))
            .collect()
    }

    /// Bad primes: primes dividing some coefficient of some positive root.
    pub fn good_primes(&self) -> BadPrimeReport {
        let mut bad = BTreeSet::new();
        for r in &self.roots[..self.positive_count] {
            for &c in &r.coords {
                for p in prime_factors(c.unsigned_abs()) {
                    bad.insert(p);
                }
            }
        }
        BadPrimeReport { bad }
    }

    pub fn extended_diagram(&self) -> ExtendedDiagram {
        let mut nodes = Vec::new();
        for ci in 0..self.components.len() {
            let hr = &self.roots[self.highest[ci]];
            nodes.push(ExtendedNode {
                root: hr.coords.iter().map(|c| -c).collect(),
                component: ci,
                mark: 1,
                simple: None,
            });
            for i in self.component_nodes(ci) {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                nodes.push(ExtendedNode {
                    root: e,
                    component: ci,
                    mark: hr.coords[i],
                    simple: Some(i),
                });
            }
        }
        let cartan = nodes
            .iter()
            .map(|a| {
                nodes
                    .iter()
                    .map(|b| self.coroot_pairing(&b.root, &a.root))
                    .collect()
            })
            .collect();
        ExtendedDiagram { nodes, cartan }
    }

    /// True iff the root set is symmetric and closed under addition inside
    /// the ambient root system.
    pub fn is_closed_subsystem(&self, roots: &[usize]) -> bool {
        let set: HashSet<usize> = roots.iter().copied().collect();
        if set.iter().any(|&r| !set.contains(&self.negative(r))) {
            return false;
        }
        for &a in &set {
            for &b in &set {
                let sum: Vec<i64> = self.roots[a]
                    .coords
                    .iter()
                    .zip(&self.roots[b].coords)
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(s) = self.find(&sum) {
                    if !set.contains(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Validates a closed subsystem and computes its base (the positive
    /// members that are not sums of two positive members).
    pub fn subsystem(&self, roots: &[usize]) -> Result<SubsystemSpec> {
        if !self.is_closed_subsystem(roots) {
            return Err(Error::NotClosed(format!("{} roots", roots.len())));
        }
        let mut sorted: Vec<usize> = roots.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let set: HashSet<usize> = sorted.iter().copied().collect();
        let positive: Vec<usize> = sorted
            .iter()
            .copied()
            .filter(|&r| self.is_positive(r))
            .collect();
        let base = positive
            .iter()
            .copied()
            .filter(|&r| {
                !positive.iter().any(|&a| {
                    let diff: Vec<i64> = self.roots[r]
                        .coords
                        .iter()
                        .zip(&self.roots[a].coords)
                        .map(|(x, y)| x - y)
                        .collect();
                    self.find(&diff)
                        .is_some_and(|d| self.is_positive(d) && set.contains(&d))
                })
            })
            .collect();
        Ok(SubsystemSpec {
            roots: sorted,
            base,
        })
    }

    /// The subsystem generated by a set of roots: closure under the
    /// reflections in those roots.
    pub fn subsystem_from_base(&self, generators: &[usize]) -> SubsystemSpec {
        let mut seen: HashSet<usize> = generators.iter().copied().collect();
        let mut queue: VecDeque<usize> = generators.iter().copied().collect();
        while let Some(r) = queue.pop_front() {
            for &g in generators {
                let s = self.reflect_root(r, g);
                if seen.insert(s) {
                    queue.push_back(s);
                }
            }
        }
        let roots: Vec<usize> = seen.into_iter().collect();
        self.subsystem(&roots)
            .expect("reflection closure of a root set is a closed subsystem")
    }

    /// The standard Levi subsystem spanned by the given simple roots.
    pub fn standard_levi(&self, nodes: &[usize]) -> SubsystemSpec {
        let roots: Vec<usize> = (0..self.roots.len())
            .filter(|&r| {
                self.roots[r]
                    .coords
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
            .collect();
        self.subsystem(&roots).expect("standard Levi is closed")
    }

    /// Coordinates of `x` in terms of the given roots, if `x` lies in their
    /// rational span.
    pub fn coordinates_in(&self, basis: &[usize], x: &[i64]) -> Option<Vec<BigRational>> {
        let cols: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|&b| {
                self.roots[b]
                    .coords
                    .iter()
                    .map(|&c| BigRational::from_int(c))
                    .collect()
            })
            .collect();
        let m = Matrix::from_columns(&cols, self.rank());
        let rhs: Vec<BigRational> = x.iter().map(|&c| BigRational::from_int(c)).collect();
        m.solve(&rhs)
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            components: self.components.iter().map(|c| c.to_string()).collect(),
            cartan: self.cartan.clone(),
            roots: self.roots.iter().map(|r| r.coords.clone()).collect(),
            positive_count: self.positive_count,
            highest_roots: self
                .highest
                .iter()
                .map(|&i| self.roots[i].coords.clone())
                .collect(),
        }
    }

    /// Rebuilds a system from its JSON form, checking that the stored data
    /// agrees with a fresh construction.
    pub fn from_json(json: &RootSystemJson) -> Result<Self> {
        let comps = json
            .components
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<SimpleType>>>()?;
        let sys = Self::new(&comps)?;
        if sys.to_json() != *json {
            return Err(Error::Consistency(
                "stored root system data disagrees with its type".into(),
            ));
        }
        Ok(sys)
    }

    /// Type string such as `F4` or `D4xD4`.
    pub fn type_string(&self) -> String {
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.type_string())
    }
}

/// JSON shape of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub components: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub positive_count: usize,
    pub highest_roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeReport {
    pub bad: BTreeSet<u64>,
}

impl BadPrimeReport {
    pub fn is_good(&self, p: u64) -> bool {
        is_prime(p) && !self.bad.contains(&p)
    }
}

/// One node of an extended Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedNode {
    /// The root in ambient simple-root coordinates (−ϱ for the extra node).
    pub root: Vec<i64>,
    pub component: usize,
    /// Coefficient of the node in the highest root; 1 for −ϱ.
    pub mark: i64,
    /// Simple-root index, or `None` for −ϱ.
    pub simple: Option<usize>,
}

/// Extended Dynkin diagram: per component, −ϱ followed by the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedDiagram {
    pub nodes: Vec<ExtendedNode>,
    /// `cartan[a][b] = ⟨node_b, node_a^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
}

impl ExtendedDiagram {
    pub fn marks(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.mark).collect()
    }

    /// Unordered edges `(a, b)` between distinct nodes with nonzero pairing.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.cartan[a][b] != 0)
            .collect()
    }
}

/// Reduces a coweight, given by its pairings `⟨α_i, λ⟩`, to the dominant
/// chamber. Returns the dominant vector and the sequence of simple
/// reflections applied (first applied first).
pub fn to_dominant<F: Scalar>(sys: &RootSystem, v: &[F]) -> (Vec<F>, Vec<usize>) {
    reduce(v, F::is_negative, |v, i| {
        let vi = v[i].clone();
        for (j, vj) in v.iter_mut().enumerate() {
            let a = sys.cartan[i][j];
            if a != 0 {
                let cur = std::mem::replace(vj, F::zero());
                *vj = cur - vi.clone() * F::from_int(a);
            }
        }
    })
}

/// Applies simple reflections, in order, to a coweight pairing vector.
pub fn apply_reflections<F: Scalar>(sys: &RootSystem, v: &[F], word: &[usize]) -> Vec<F> {
    let mut out = v.to_vec();
    for &i in word {
        let vi = out[i].clone();
        for (j, vj) in out.iter_mut().enumerate() {
            let a = sys.cartan[i][j];
            if a != 0 {
                let cur = std::mem::replace(vj, F::zero());
                *vj = cur - vi.clone() * F::from_int(a);
            }
        }
    }
    out
}

/// Like [`to_dominant`] but for weights given by their pairings with the
/// simple coroots.
pub fn to_dominant_weight(sys: &RootSystem, w: &[i64]) -> (Vec<i64>, Vec<usize>) {
    reduce(w, |x| *x < 0, |w, i| {
        let wi = w[i];
        for (j, wj) in w.iter_mut().enumerate() {
            *wj -= wi * sys.cartan[j][i];
        }
    })
}

fn reduce<T: Clone>(
    v: &[T],
    is_negative: impl Fn(&T) -> bool,
    mut reflect: impl FnMut(&mut Vec<T>, usize),
) -> (Vec<T>, Vec<usize>) {
    let mut v = v.to_vec();
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(&is_negative) {
        reflect(&mut v, i);
        word.push(i);
    }
    (v, word)
}

/// A closed subsystem of an ambient root system, stored as sorted root
/// indices together with its base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemSpec {
    roots: Vec<usize>,
    base: Vec<usize>,
}

/// A simple component of a subsystem, with its base in Bourbaki order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComponent {
    pub simple_type: SimpleType,
    pub base: Vec<usize>,
    /// Simply-laced component made of short roots of a non-simply-laced
    /// ambient component; written with a leading `~`.
    pub short: bool,
}

impl SubComponent {
    pub fn label(&self) -> String {
        if self.short {
            format!("~{}", self.simple_type)
        } else {
            self.simple_type.to_string()
        }
    }
}

/// Weyl-invariant fingerprint of a subsystem: component labels plus the
/// dominant form of the sum of its positive roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsystemSignature {
    pub labels: Vec<String>,
    pub dominant_rho: Vec<i64>,
}

impl SubsystemSpec {
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, root: usize) -> bool {
        self.roots.binary_search(&root).is_ok()
    }

    /// Cartan matrix of the base, `M[k][l] = ⟨b_l, b_k^∨⟩`.
    pub fn base_cartan(&self, sys: &RootSystem) -> Vec<Vec<i64>> {
        self.base
            .iter()
            .map(|&k| {
                self.base
                    .iter()
                    .map(|&l| sys.coroot_pairing(&sys.root(l).coords, &sys.root(k).coords))
                    .collect()
            })
            .collect()
    }

    /// Simple components, each with its base in Bourbaki order. Components
    /// are sorted by rank, then long before short, then type.
    pub fn components(&self, sys: &RootSystem) -> Vec<SubComponent> {
        let cartan = self.base_cartan(sys);
        let recognized = recognize_cartan(&cartan).expect("base of a root subsystem has finite type");
        let mut comps: Vec<SubComponent> = recognized
            .into_iter()
            .map(|(t, order)| {
                let base: Vec<usize> = order.iter().map(|&k| self.base[k]).collect();
                let ambient = sys.components()[sys.root(base[0]).component];
                let short = t.is_simply_laced()
                    && !ambient.is_simply_laced()
                    && !sys.is_long(base[0]);
                SubComponent {
                    simple_type: t,
                    base,
                    short,
                }
            })
            .collect();
        comps.sort_by(|a, b| {
            (a.simple_type.rank, a.short, a.simple_type.family, &a.base).cmp(&(
                b.simple_type.rank,
                b.short,
                b.simple_type.family,
                &b.base,
            ))
        });
        comps
    }

    /// Label such as `A1+C3` or `A2+~A2` (rank ascending); `T` for the
    /// empty subsystem.
    pub fn type_label(&self, sys: &RootSystem) -> String {
        let comps = self.components(sys);
        if comps.is_empty() {
            return "T".to_string();
        }
        comps.iter().map(SubComponent::label).collect::<Vec<_>>().join("+")
    }

    pub fn signature(&self, sys: &RootSystem) -> SubsystemSignature {
        let mut labels: Vec<String> = self.components(sys).iter().map(SubComponent::label).collect();
        labels.sort();
        let mut rho = vec![0i64; sys.rank()];
        for &r in self.roots.iter().filter(|&&r| sys.is_positive(r)) {
            for (a, c) in rho.iter_mut().zip(&sys.root(r).coords) {
                *a += c;
            }
        }
        let weight: Vec<i64> = (0..sys.rank()).map(|i| sys.pairing(&rho, i)).collect();
        SubsystemSignature {
            labels,
            dominant_rho: to_dominant_weight(sys, &weight).0,
        }
    }

    pub fn to_json(&self, sys: &RootSystem) -> SubsystemJson {
        SubsystemJson {
            label: self.type_label(sys),
            roots: self.roots.iter().map(|&r| sys.root(r).coords.clone()).collect(),
            base: self.base.iter().map(|&r| sys.root(r).coords.clone()).collect(),
        }
    }

    pub fn from_json(sys: &RootSystem, json: &SubsystemJson) -> Result<Self> {
        let roots = json
            .roots
            .iter()
            .map(|c| {
                sys.find(c)
                    .ok_or_else(|| Error::NotClosed(format!("{c:?} is not a root")))
            })
            .collect::<Result<Vec<usize>>>()?;
        sys.subsystem(&roots)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemJson {
    pub label: String,
    pub roots: Vec<Vec<i64>>,
    pub base: Vec<Vec<i64>>,
}

/// Splits a Cartan matrix into simple components and finds, for each, its
/// type and a node order matching the Bourbaki Cartan matrix.
pub fn recognize_cartan(m: &[Vec<i64>]) -> Result<Vec<(SimpleType, Vec<usize>)>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for b in 0..n {
                if !seen[b] && (m[a][b] != 0 || m[b][a] != 0) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(recognize_connected(m, &comp)?);
    }
    Ok(out)
}

fn candidate_types(rank: usize) -> Vec<SimpleType> {
    use Family::*;
    [A, B, C, D, E, F, G]
        .into_iter()
        .filter_map(|f| SimpleType::new(f, rank).ok())
        .collect()
}

fn recognize_connected(m: &[Vec<i64>], nodes: &[usize]) -> Result<(SimpleType, Vec<usize>)> {
    for t in candidate_types(nodes.len()) {
        let target = t.cartan_matrix();
        let mut assign = Vec::with_capacity(nodes.len());
        let mut used = vec![false; nodes.len()];
        if match_nodes(m, nodes, &target, &mut assign, &mut used) {
            return Ok((t, assign.into_iter().map(|k| nodes[k]).collect()));
        }
    }
    Err(Error::UnknownCartan(format!(
        "{:?}",
        nodes.iter().map(|&a| nodes.iter().map(|&b| m[a][b]).collect::<Vec<_>>()).collect::<Vec<_>>()
    )))
}

fn match_nodes(
    m: &[Vec<i64>],
    nodes: &[usize],
    target: &[Vec<i64>],
    assign: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assign.len();
    if i == nodes.len() {
        return true;
    }
    for k in 0..nodes.len() {
        if used[k] {
            continue;
        }
        let ok = assign.iter().enumerate().all(|(j, &kj)| {
            m[nodes[k]][nodes[kj]] == target[i][j] && m[nodes[kj]][nodes[k]] == target[j][i]
        });
        if ok {
            used[k] = true;
            assign.push(k);
            if match_nodes(m, nodes, target, assign, used) {
                return true;
            }
            assign.pop();
            used[k] = false;
        }
    }
    false
}

/// `d_i` with `d_i A[i][j] = d_j A[j][i]` on one connected Cartan matrix,
/// scaled so the smallest is 1.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // Rank ≤ 8 and bond ratios ≤ 3 keep these small; work with fractions
    // num/den over a common denominator.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && den[j] == 0 {
                // d_j = d_i a[i][j] / a[j][i]
                num[j] = num[i] * a[i][j];
                den[j] = den[i] * a[j][i];
                if den[j] < 0 {
                    num[j] = -num[j];
                    den[j] = -den[j];
                }
                queue.push_back(j);
            }
        }
    }
    let common: i64 = den.iter().product();
    let scaled: Vec<i64> = (0..n).map(|i| num[i] * (common / den[i])).collect();
    let g = scaled.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    scaled.into_iter().map(|x| x / g).collect()
}

/// Positive roots of one connected Cartan matrix, by string arithmetic:
/// `β + α_i` is a root iff `p − ⟨β, α_i^∨⟩ > 0`, where `p` is the length of
/// the α_i-string below β.
fn positive_roots_from_cartan(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let simples: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut all: HashSet<Vec<i64>> = simples.iter().cloned().collect();
    let mut out = simples.clone();
    let mut frontier = simples;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let mut p = 0;
                let mut x = beta.clone();
                loop {
                    x[i] -= 1;
                    if all.contains(&x) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                if p - pairing > 0 {
                    let mut y = beta.clone();
                    y[i] += 1;
                    if all.insert(y.clone()) {
                        next.push(y.clone());
                        out.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
