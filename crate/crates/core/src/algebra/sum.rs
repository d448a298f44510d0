use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::ring::Ring;

/// A finite formal linear combination of basis keys.
///
/// Zero coefficients are never stored, so two sums are equal exactly when
/// their coefficient maps are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<K: Ord, T> {
    terms: BTreeMap<K, T>,
}

/// An element of the free module on a basis `K`.
pub type ModuleElement<K, T> = Combination<K, T>;
/// An element of the second tensor power, keyed by ordered pairs.
pub type Tensor2<K, T> = Combination<(K, K), T>;
/// An element of the third tensor power, keyed by ordered triples.
pub type Tensor3<K, T> = Combination<(K, K, K), T>;

impl<K: Ord, T> Default for Combination<K, T> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, T: Clone + PartialEq> Combination<K, T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis<R: Ring<Elem = T>>(ring: &R, key: K) -> Self {
        Self::term(ring, key, ring.one())
    }

    pub fn term<R: Ring<Elem = T>>(ring: &R, key: K, coef: T) -> Self {
        let mut out = Self::zero();
        out.add_term(ring, key, coef);
        out
    }

    pub fn from_terms<R: Ring<Elem = T>>(ring: &R, terms: impl IntoIterator<Item = (K, T)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(ring, k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &T)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient<R: Ring<Elem = T>>(&self, ring: &R, key: &K) -> T {
        self.terms.get(key).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn add_term<R: Ring<Elem = T>>(&mut self, ring: &R, key: K, coef: T) {
        if ring.is_zero(&coef) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = ring.add(c, &coef);
                if ring.is_zero(&sum) {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coef);
            }
        }
    }

    /// `self += coef * other`
    pub fn add_scaled<R: Ring<Elem = T>>(&mut self, ring: &R, other: &Self, coef: &T) {
        if ring.is_zero(coef) {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(ring, k.clone(), ring.mul(c, coef));
        }
    }

    pub fn add_assign<R: Ring<Elem = T>>(&mut self, ring: &R, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(ring, k.clone(), c.clone());
        }
    }

    pub fn sub_assign<R: Ring<Elem = T>>(&mut self, ring: &R, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(ring, k.clone(), ring.neg(c));
        }
    }

    pub fn plus<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(ring, other);
        out
    }

    pub fn minus<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(ring, other);
        out
    }

    pub fn scale<R: Ring<Elem = T>>(&self, ring: &R, coef: &T) -> Self {
        let mut out = Self::zero();
        out.add_scaled(ring, self, coef);
        out
    }

    pub fn negate<R: Ring<Elem = T>>(&self, ring: &R) -> Self {
        self.scale(ring, &ring.neg(&ring.one()))
    }

    /// Extends a map on basis keys linearly.
    pub fn linear_map<K2, R, F>(&self, ring: &R, mut f: F) -> Combination<K2, T>
    where
        K2: Ord + Clone,
        R: Ring<Elem = T>,
        F: FnMut(&K) -> Combination<K2, T>,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            let image = f(k);
            out.add_scaled(ring, &image, c);
        }
        out
    }

    /// Relabels basis keys; coefficients of keys that collide are summed.
    pub fn map_keys<K2, R, F>(&self, ring: &R, mut f: F) -> Combination<K2, T>
    where
        K2: Ord + Clone,
        R: Ring<Elem = T>,
        F: FnMut(&K) -> K2,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(ring, f(k), c.clone());
        }
        out
    }

    pub fn retain_keys(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Deterministic JSON object `{label: coefficient}`, sorted by label.
    pub fn to_json<R: Ring<Elem = T>>(&self, ring: &R, label: impl Fn(&K) -> String) -> Value {
        let sorted: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(k, c)| (label(k), ring.render(c)))
            .collect();
        let mut map = Map::new();
        for (k, v) in sorted {
            map.insert(k, Value::String(v));
        }
        Value::Object(map)
    }
}

impl<K: Ord + Clone, T: Clone + PartialEq> FromIterator<(K, T)> for Combination<K, T> {
    /// Collects raw terms. Callers must not pass zero coefficients or
    /// duplicate keys; use [`Combination::from_terms`] otherwise.
    fn from_iter<I: IntoIterator<Item = (K, T)>>(iter: I) -> Self {
        Self {
            terms: iter.into_iter().collect(),
        }
    }
}

/// `x ⊗ y` for module elements.
pub fn tensor<K, R>(ring: &R, x: &ModuleElement<K, R::Elem>, y: &ModuleElement<K, R::Elem>) -> Tensor2<K, R::Elem>
where
    K: Ord + Clone,
    R: Ring,
{
    let mut out = Combination::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_term(ring, (a.clone(), b.clone()), ring.mul(c, d));
        }
    }
    out
}

/// `t ⊗ z` for a 2-tensor and a module element.
pub fn tensor_right<K, R>(ring: &R, t: &Tensor2<K, R::Elem>, z: &ModuleElement<K, R::Elem>) -> Tensor3<K, R::Elem>
where
    K: Ord + Clone,
    R: Ring,
{
    let mut out = Combination::zero();
    for ((a, b), c) in t.iter() {
        for (k, d) in z.iter() {
            out.add_term(ring, (a.clone(), b.clone(), k.clone()), ring.mul(c, d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;
    use num_bigint::BigInt;

    #[test]
    fn adding_the_negation_cancels_to_empty() {
        let r = Integers;
        let x = Combination::from_terms(&r, [(1u32, BigInt::from(3)), (2, BigInt::from(-5))]);
        let sum = x.plus(&r, &x.negate(&r));
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let r = Integers;
        let mut x = Combination::zero();
        x.add_term(&r, "a", BigInt::from(0));
        assert!(x.is_zero());
        x.add_term(&r, "a", BigInt::from(2));
        x.add_term(&r, "a", BigInt::from(-2));
        assert!(x.is_zero());
    }

    #[test]
    fn json_is_sorted_by_label() {
        let r = Integers;
        let x = Combination::from_terms(&r, [(2u32, BigInt::from(1)), (10, BigInt::from(-4))]);
        let json = x.to_json(&r, |k| format!("k{k}"));
        assert_eq!(json.to_string(), r#"{"k10":"-4","k2":"1"}"#);
    }
}
