use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A vector of the Lie algebra in Chevalley-basis coordinates. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LieElement<F> {
    coeffs: BTreeMap<usize, F>,
}

impl<F: Scalar> LieElement<F> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, F::one())
    }

    pub fn term(i: usize, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn from_dense(v: &[F]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: F) {
        if c.is_negligible() {
            return;
        }
        match self.coeffs.remove(&i) {
            Some(cur) => {
                let s = cur + c;
                if !s.is_negligible() {
                    self.coeffs.insert(i, s);
                }
            }
            None => {
                self.coeffs.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &F) {
        if k.is_negligible() {
            return;
        }
        for (&i, c) in &other.coeffs {
            self.add_term(i, c.clone() * k.clone());
        }
    }

    pub fn scaled(&self, k: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    /// Applies a linear map given on basis vectors.
    pub fn map_basis(&self, mut image: impl FnMut(usize) -> LieElement<F>) -> Self {
        let mut out = Self::zero();
        for (&i, c) in &self.coeffs {
            out.add_scaled(&image(i), c);
        }
        out
    }
}

impl<F: Scalar> fmt::Display for LieElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·b{i}")?;
        }
        Ok(())
    }
}

/// Serialized form: `[[basis index, "p/q"], ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementJson(pub Vec<(usize, String)>);

impl ElementJson {
    pub fn from_element(e: &LieElement<crate::Rational>) -> Self {
        Self(e.terms().map(|(i, c)| (i, c.to_string())).collect())
    }

    pub fn to_element(&self) -> Option<LieElement<crate::Rational>> {
        self.0
            .iter()
            .map(|(i, s)| s.parse::<crate::Rational>().ok().map(|c| (*i, c)))
            .collect::<Option<Vec<_>>>()
            .map(LieElement::from_terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut e = LieElement::term(3, q(2));
        e.add_term(3, q(-2));
        assert!(e.is_zero());
        e.add_term(1, q(0));
        assert!(e.is_empty());
    }

    #[test]
    fn arithmetic() {
        let a = LieElement::from_terms([(0, q(1)), (2, q(3))]);
        let b = LieElement::from_terms([(2, q(3)), (5, q(-1))]);
        let d = a.minus(&b);
        assert_eq!(d, LieElement::from_terms([(0, q(1)), (5, q(1))]));
        assert_eq!(a.plus(&b).coeff(2), q(6));
        assert_eq!(a.scaled(&q(0)), LieElement::zero());
        assert_eq!(LieElement::from_dense(&a.to_dense(4)), a);
    }

    #[test]
    fn json_form() {
        let e = LieElement::from_terms([(1, "3/2".parse::<Rational>().unwrap()), (4, q(-1))]);
        let j = ElementJson::from_element(&e);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"[[1,"3/2"],[4,"-1"]]"#);
        let back: ElementJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_element().unwrap(), e);
    }
}
