//! sl(2)-triples through a nilpotent element.

use serde::{Deserialize, Serialize};

use crate::chevalley::{ChevalleyAlgebra, ElementJson, LieElement};
use crate::cochar::Cocharacter;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::to_dominant;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: LieElement<Rational>,
    pub h: LieElement<Rational>,
    pub f: LieElement<Rational>,
}

impl Sl2Triple {
    pub fn zero() -> Self {
        Self {
            e: LieElement::zero(),
            h: LieElement::zero(),
            f: LieElement::zero(),
        }
    }

    /// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`, and `h` in the Cartan.
    pub fn check(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let two = Rational::from_int(2);
        let ok = alg.bracket(&self.h, &self.e) == self.e.scaled(&two)
            && alg.bracket(&self.h, &self.f) == self.f.scaled(&-two)
            && alg.bracket(&self.e, &self.f) == self.h
            && self.h.support().all(|b| alg.is_cartan_index(b));
        if ok {
            Ok(())
        } else {
            Err(Error::Consistency(format!("sl(2) relations fail for e = {}", self.e)))
        }
    }

    /// The cocharacter with `h_λ = h`.
    pub fn cocharacter(&self, alg: &ChevalleyAlgebra) -> Result<Cocharacter> {
        if self.h.is_zero() {
            return Ok(Cocharacter::zero(alg.rank()));
        }
        Cocharacter::from_cartan_element(alg, &self.h)
            .ok_or_else(|| Error::NoTriple(format!("h = {} has non-integral root values", self.h)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub e: ElementJson,
    pub h: ElementJson,
    pub f: ElementJson,
}

impl TripleJson {
    pub fn from_triple(t: &Sl2Triple) -> Self {
        Self {
            e: ElementJson::from_element(&t.e),
            h: ElementJson::from_element(&t.h),
            f: ElementJson::from_element(&t.f),
        }
    }

    pub fn to_triple(&self) -> Option<Sl2Triple> {
        Some(Sl2Triple {
            e: self.e.to_element()?,
            h: self.h.to_element()?,
            f: self.f.to_element()?,
        })
    }
}

/// Root indices in the support of `e`; `None` if `e` has a Cartan part.
pub(crate) fn root_support(alg: &ChevalleyAlgebra, e: &LieElement<Rational>) -> Option<Vec<usize>> {
    let s: Vec<usize> = e.support().collect();
    if s.iter().any(|&b| alg.is_cartan_index(b)) {
        None
    } else {
        Some(s)
    }
}

/// Solves `[e, f] = h_λ` for `f ∈ 𝔤(−2, λ)`, optionally restricting `f` to
/// root vectors of the given roots. Returns the triple on success.
pub fn complete_triple(
    alg: &ChevalleyAlgebra,
    e: &LieElement<Rational>,
    lambda: &Cocharacter,
    allowed_roots: Option<&[usize]>,
) -> Option<Sl2Triple> {
    let h = lambda.h_element(alg);
    if e.is_zero() {
        return h.is_zero().then(Sl2Triple::zero);
    }
    let sys = alg.system();
    let candidates: Vec<usize> = (0..sys.num_roots())
        .filter(|&r| lambda.degree(&sys.root(r).coords) == -2)
        .filter(|r| allowed_roots.is_none_or(|a| a.contains(r)))
        .collect();
    let f = solve_in_span(alg, e, &candidates, &h)?;
    let t = Sl2Triple { e: e.clone(), h, f };
    t.check(alg).ok().map(|_| t)
}

/// Some `f ∈ span{e_r : r ∈ roots}` with `[e, f] = target`.
fn solve_in_span(
    alg: &ChevalleyAlgebra,
    e: &LieElement<Rational>,
    roots: &[usize],
    target: &LieElement<Rational>,
) -> Option<LieElement<Rational>> {
    // Only rows hit by some column or by the target matter.
    let images: Vec<LieElement<Rational>> = roots.iter().map(|&r| alg.bracket_with_basis(e, r)).collect();
    let mut rows_used: Vec<usize> = images
        .iter()
        .flat_map(|x| x.support())
        .chain(target.support())
        .collect();
    rows_used.sort_unstable();
    rows_used.dedup();
    let pos = |b: usize| rows_used.binary_search(&b).expect("row present");
    let mut cols = Vec::with_capacity(images.len());
    for img in &images {
        let mut c = vec![Rational::from_int(0); rows_used.len()];
        for (b, v) in img.terms() {
            c[pos(b)] = v.clone();
        }
        cols.push(c);
    }
    let mut rhs = vec![Rational::from_int(0); rows_used.len()];
    for (b, v) in target.terms() {
        rhs[pos(b)] = v.clone();
    }
    let x = Matrix::from_columns(&cols, rows_used.len()).solve(&rhs)?;
    Some(LieElement::from_terms(roots.iter().copied().zip(x)))
}

/// Jacobson–Morozov completion with `h` in the Cartan subalgebra.
///
/// `e` must be a combination of root vectors. First `h = Σ x_k h_k` is found
/// with `β(h) = 2` on the support of `e` and `h = [e, z]` for some `z`; then
/// `f` is solved in the `−2` eigenspace of `h`.
pub fn jacobson_morozov(alg: &ChevalleyAlgebra, e: &LieElement<Rational>) -> Result<Sl2Triple> {
    if e.is_zero() {
        return Ok(Sl2Triple::zero());
    }
    if !alg.is_ad_nilpotent(e) {
        return Err(Error::NotNilpotent);
    }
    let sys = alg.system();
    let support = root_support(alg, e).ok_or_else(|| Error::NoTriple("e has a Cartan component".into()))?;
    let n = alg.dim();
    let r = alg.rank();
    // Unknowns (z_0 … z_{n−1}, x_0 … x_{r−1}).
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::from_int(0); n + r]; n];
    for j in 0..n {
        for (b, v) in alg.bracket_with_basis(e, j).terms() {
            rows[b][j] = v.clone();
        }
    }
    for k in 0..r {
        rows[alg.cartan_index(k)][n + k] = Rational::from_int(-1);
    }
    let mut rhs = vec![Rational::from_int(0); n];
    for &beta in &support {
        let mut row = vec![Rational::from_int(0); n + r];
        for (k, slot) in row[n..].iter_mut().enumerate() {
            *slot = Rational::from_int(sys.pairing(&sys.root(beta).coords, k));
        }
        rows.push(row);
        rhs.push(Rational::from_int(2));
    }
    let sol = Matrix::from_rows(rows, n + r)
        .solve(&rhs)
        .ok_or_else(|| Error::NoTriple(format!("no Cartan neutral element for e = {e}")))?;
    let h = LieElement::from_terms(sol[n..].iter().cloned().enumerate().map(|(k, x)| (alg.cartan_index(k), x)));
    // Root values of h; f lives where they equal −2.
    let deg = |beta: usize| -> Rational {
        let mut v = Rational::from_int(0);
        for (k, x) in sol[n..].iter().enumerate() {
            v += x.clone() * Rational::from_int(sys.pairing(&sys.root(beta).coords, k));
        }
        v
    };
    let minus_two = Rational::from_int(-2);
    let candidates: Vec<usize> = (0..sys.num_roots()).filter(|&b| deg(b) == minus_two).collect();
    let f = solve_in_span(alg, e, &candidates, &h)
        .ok_or_else(|| Error::NoTriple(format!("no f for e = {e}")))?;
    let t = Sl2Triple { e: e.clone(), h, f };
    t.check(alg)?;
    Ok(t)
}

/// Dominant form of the pairings of `h`, checked to lie in `{0,1,2}`.
pub fn weighted_diagram(alg: &ChevalleyAlgebra, t: &Sl2Triple) -> Result<Vec<i64>> {
    let lam = t.cocharacter(alg)?;
    let v: Vec<Rational> = lam.pairings().iter().map(|&p| Rational::from_int(p)).collect();
    let d: Vec<i64> = to_dominant(alg.system(), &v)
        .0
        .iter()
        .map(|x| x.to_int().expect("integral"))
        .collect();
    if d.iter().any(|&x| !(0..=2).contains(&x)) {
        return Err(Error::BadDiagram(d));
    }
    Ok(d)
}
