//! Structure constants `N_{α,β}` of a Chevalley basis.
//!
//! Signs are fixed by declaring `N_{α,β} = +(p+1)` on every extraspecial
//! pair, with positive roots totally ordered by index (height, then
//! descending coordinates). All other constants follow from the standard
//! identities for a Chevalley basis with `[e_α, e_{−α}] = h_α` and
//! `N_{−α,−β} = −N_{α,β}`:
//!
//! * `N_{r,s} = −N_{s,r}`;
//! * if `r + s + t = 0` then `N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)`;
//! * if `r + s + t + u = 0` with no two opposite, then
//!   `N_{r,s}N_{t,u}/(r+s,r+s) + N_{s,t}N_{r,u}/(s+t,s+t) + N_{t,r}N_{s,u}/(t+r,t+r) = 0`.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;

/// `sums[a][b] = Some((index of a+b, N_{a,b}))` when `a + b` is a root.
pub(crate) type SumTable = Vec<Vec<Option<(usize, i64)>>>;

pub(crate) fn structure_constants(sys: &RootSystem) -> Result<SumTable> {
    let n = sys.num_roots();
    let mut builder = Builder {
        sys,
        memo: HashMap::new(),
        extraspecial: extraspecial_pairs(sys),
    };
    let mut sums = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            if let Some(s) = sum_index(sys, a, b) {
                let v = builder.general(a, b)?;
                let p = string_below(sys, a, b);
                if v.abs() != p + 1 {
                    return Err(Error::Consistency(format!(
                        "|N| = {} but p + 1 = {} for roots {:?}, {:?}",
                        v.abs(),
                        p + 1,
                        sys.root(a).coords,
                        sys.root(b).coords
                    )));
                }
                sums[a][b] = Some((s, v));
            }
        }
    }
    Ok(sums)
}

pub(crate) fn sum_index(sys: &RootSystem, a: usize, b: usize) -> Option<usize> {
    let ra = &sys.root(a).coords;
    let rb = &sys.root(b).coords;
    let s: Vec<i64> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
    if s.iter().all(|&c| c == 0) {
        return None;
    }
    sys.find(&s)
}

/// `p = max{k : β − kα ∈ Ψ}`.
pub(crate) fn string_below(sys: &RootSystem, alpha: usize, beta: usize) -> i64 {
    let a = &sys.root(alpha).coords;
    let mut x = sys.root(beta).coords.clone();
    let mut p = 0;
    loop {
        for (xi, ai) in x.iter_mut().zip(a) {
            *xi -= ai;
        }
        if sys.find(&x).is_some() {
            p += 1;
        } else {
            return p;
        }
    }
}

/// For each positive root of height ≥ 2, the pair `(α, β)` with `α + β = ξ`,
/// `α < β` and `α` minimal.
fn extraspecial_pairs(sys: &RootSystem) -> HashMap<usize, (usize, usize)> {
    let np = sys.positive_count();
    let mut out = HashMap::new();
    for xi in 0..np {
        for alpha in 0..xi {
            let diff: Vec<i64> = sys
                .root(xi)
                .coords
                .iter()
                .zip(&sys.root(alpha).coords)
                .map(|(x, a)| x - a)
                .collect();
            if let Some(beta) = sys.find(&diff) {
                if sys.is_positive(beta) && alpha < beta {
                    out.insert(xi, (alpha, beta));
                    break;
                }
            }
        }
    }
    out
}

struct Builder<'a> {
    sys: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
    extraspecial: HashMap<usize, (usize, usize)>,
}

impl Builder<'_> {
    fn norm(&self, r: usize) -> i64 {
        self.sys.norm(&self.sys.root(r).coords)
    }

    /// `N_{x,y}` for arbitrary roots with `x + y` a root.
    fn general(&mut self, x: usize, y: usize) -> Result<i64> {
        let sys = self.sys;
        let z = sum_index(sys, x, y).expect("general() needs a root sum");
        match (sys.is_positive(x), sys.is_positive(y)) {
            (true, true) => self.positive(x, y),
            (false, false) => Ok(-self.positive(sys.negative(x), sys.negative(y))?),
            (true, false) => {
                if sys.is_positive(z) {
                    // N_{x,y} = (z,z)/(x,x) N_{y,−z} = −(z,z)/(x,x) N_{−y,z}
                    let v = self.positive(sys.negative(y), z)?;
                    exact_div(-self.norm(z) * v, self.norm(x))
                } else {
                    // N_{x,y} = (z,z)/(y,y) N_{−z,x}
                    let v = self.positive(sys.negative(z), x)?;
                    exact_div(self.norm(z) * v, self.norm(y))
                }
            }
            (false, true) => Ok(-self.general(y, x)?),
        }
    }

    fn general_or_zero(&mut self, x: usize, y: usize) -> Result<Ratio<i64>> {
        if sum_index(self.sys, x, y).is_some() {
            Ok(Ratio::from_integer(self.general(x, y)?))
        } else {
            Ok(Ratio::from_integer(0))
        }
    }

    fn positive(&mut self, r: usize, s: usize) -> Result<i64> {
        if let Some(&v) = self.memo.get(&(r, s)) {
            return Ok(v);
        }
        let v = self.positive_uncached(r, s)?;
        self.memo.insert((r, s), v);
        Ok(v)
    }

    fn positive_uncached(&mut self, r: usize, s: usize) -> Result<i64> {
        let sys = self.sys;
        if r > s {
            return Ok(-self.positive(s, r)?);
        }
        let xi = sum_index(sys, r, s).expect("positive() needs a root sum");
        let (alpha, beta) = self.extraspecial[&xi];
        let n_ab = string_below(sys, alpha, beta) + 1;
        if (r, s) == (alpha, beta) {
            return Ok(n_ab);
        }
        let neg_alpha = sys.negative(alpha);
        let neg_beta = sys.negative(beta);
        let mut total = Ratio::from_integer(0i64);
        if let Some(gamma) = sum_index(sys, s, neg_alpha) {
            let t = self.general_or_zero(s, neg_alpha)? * self.general_or_zero(r, neg_beta)?;
            total += t / self.norm(gamma);
        }
        if let Some(delta) = sum_index(sys, r, neg_alpha) {
            let t = self.general_or_zero(neg_alpha, r)? * self.general_or_zero(s, neg_beta)?;
            total += t / self.norm(delta);
        }
        let v = total * self.norm(xi) / n_ab;
        if !v.is_integer() {
            return Err(Error::Consistency(format!(
                "non-integral structure constant {v} for {:?}, {:?}",
                sys.root(r).coords,
                sys.root(s).coords
            )));
        }
        Ok(v.to_integer())
    }
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Consistency(format!("{num} not divisible by {den}")));
    }
    Ok(num / den)
}
