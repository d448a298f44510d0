//! Fixed endomorphisms of the second and third tensor powers, and
//! bi-endomorphisms (linear endomorphisms of `M ⊗ M`).

use std::fmt;
use std::rc::Rc;

use super::ring::Ring;
use super::sum::{Combination, Tensor2, Tensor3};

/// `x ⊗ y ↦ y ⊗ x`
pub fn permute<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor2<K, R::Elem>) -> Tensor2<K, R::Elem> {
    t.map_keys(ring, |(x, y)| (y.clone(), x.clone()))
}

/// `x ⊗ y ⊗ z ↦ y ⊗ z ⊗ x`: the first factor moves to the end.
pub fn rotate<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor3<K, R::Elem>) -> Tensor3<K, R::Elem> {
    t.map_keys(ring, |(x, y, z)| (y.clone(), z.clone(), x.clone()))
}

/// `x ⊗ y ⊗ z ↦ z ⊗ y ⊗ x`
pub fn swap_outer<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor3<K, R::Elem>) -> Tensor3<K, R::Elem> {
    t.map_keys(ring, |(x, y, z)| (z.clone(), y.clone(), x.clone()))
}

/// `x ⊗ y ⊗ z ↦ x ⊗ y ⊗ z − z ⊗ y ⊗ x`
pub fn antisym_e<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor3<K, R::Elem>) -> Tensor3<K, R::Elem> {
    t.minus(ring, &swap_outer(ring, t))
}

/// `t ↦ t − P(t)`
pub fn pbar<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor2<K, R::Elem>) -> Tensor2<K, R::Elem> {
    t.minus(ring, &permute(ring, t))
}

/// `t ↦ t + Q(t) + Q²(t)`
pub fn cyclic_sum<K: Ord + Clone, R: Ring>(ring: &R, t: &Tensor3<K, R::Elem>) -> Tensor3<K, R::Elem> {
    let q1 = rotate(ring, t);
    let q2 = rotate(ring, &q1);
    t.plus(ring, &q1).plus(ring, &q2)
}

type PairMap<K, T> = dyn Fn(&K, &K) -> Tensor2<K, T>;

/// A linear endomorphism of `M ⊗ M`, given on generators `x ⊗ y`.
pub struct BiEndomorphism<K: Ord, R: Ring> {
    ring: R,
    on_generator: Rc<PairMap<K, R::Elem>>,
}

impl<K: Ord, R: Ring> Clone for BiEndomorphism<K, R> {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            on_generator: Rc::clone(&self.on_generator),
        }
    }
}

impl<K: Ord, R: Ring> fmt::Debug for BiEndomorphism<K, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiEndomorphism").field("ring", &self.ring).finish_non_exhaustive()
    }
}

impl<K: Ord + Clone + 'static, R: Ring> BiEndomorphism<K, R> {
    pub fn from_fn(ring: R, f: impl Fn(&K, &K) -> Tensor2<K, R::Elem> + 'static) -> Self {
        Self {
            ring,
            on_generator: Rc::new(f),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn identity(ring: R) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, move |x, y| Combination::basis(&r, (x.clone(), y.clone())))
    }

    /// The permutation `P`.
    pub fn permutation(ring: R) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, move |x, y| Combination::basis(&r, (y.clone(), x.clone())))
    }

    /// `P̄ = id − P`
    pub fn pbar(ring: R) -> Self {
        let r = ring.clone();
        Self::from_fn(ring, move |x, y| {
            let mut t = Combination::basis(&r, (x.clone(), y.clone()));
            t.add_term(&r, (y.clone(), x.clone()), r.neg(&r.one()));
            t
        })
    }

    pub fn zero(ring: R) -> Self {
        Self::from_fn(ring, |_, _| Combination::zero())
    }

    pub fn on_generator(&self, x: &K, y: &K) -> Tensor2<K, R::Elem> {
        (self.on_generator)(x, y)
    }

    pub fn apply(&self, t: &Tensor2<K, R::Elem>) -> Tensor2<K, R::Elem> {
        t.linear_map(&self.ring, |(x, y)| self.on_generator(x, y))
    }

    /// `self ∘ first`
    pub fn after(&self, first: &Self) -> Self {
        let outer = self.clone();
        let inner = first.clone();
        Self::from_fn(self.ring.clone(), move |x, y| outer.apply(&inner.on_generator(x, y)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| a.on_generator(x, y).plus(&r, &b.on_generator(x, y)))
    }

    pub fn minus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| a.on_generator(x, y).minus(&r, &b.on_generator(x, y)))
    }

    pub fn scaled(&self, coef: R::Elem) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| a.on_generator(x, y).scale(&r, &coef))
    }

    /// `P ∘ self`
    pub fn then_permute(&self) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| permute(&r, &a.on_generator(x, y)))
    }

    /// `self ∘ P`
    pub fn after_permute(&self) -> Self {
        let a = self.clone();
        Self::from_fn(self.ring.clone(), move |x, y| a.on_generator(y, x))
    }

    /// Compares two bi-endomorphisms on the given generators; returns the
    /// first generator where they differ.
    pub fn first_difference<'a>(&self, other: &Self, sample: &'a [(K, K)]) -> Option<&'a (K, K)> {
        sample
            .iter()
            .find(|(x, y)| self.on_generator(x, y) != other.on_generator(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;
    use crate::algebra::sum::Combination;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type T2 = Tensor2<u8, BigInt>;
    type T3 = Tensor3<u8, BigInt>;

    fn t2(terms: &[((u8, u8), i64)]) -> T2 {
        Combination::from_terms(&Integers, terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    fn t3(terms: &[((u8, u8, u8), i64)]) -> T3 {
        Combination::from_terms(&Integers, terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    fn arb_t2() -> impl Strategy<Value = T2> {
        prop::collection::vec(((0u8..4, 0u8..4), -5i64..5), 0..8).prop_map(|v| t2(&v))
    }

    fn arb_t3() -> impl Strategy<Value = T3> {
        prop::collection::vec(((0u8..3, 0u8..3, 0u8..3), -5i64..5), 0..10).prop_map(|v| t3(&v))
    }

    #[test]
    fn generator_images() {
        let r = Integers;
        assert_eq!(permute(&r, &t2(&[((0, 1), 1)])), t2(&[((1, 0), 1)]));
        assert_eq!(permute(&r, &t2(&[((2, 2), 1)])), t2(&[((2, 2), 1)]));
        assert_eq!(rotate(&r, &t3(&[((0, 1, 2), 1)])), t3(&[((1, 2, 0), 1)]));
        assert_eq!(rotate(&r, &t3(&[((1, 1, 1), 1)])), t3(&[((1, 1, 1), 1)]));
        assert_eq!(antisym_e(&r, &t3(&[((0, 1, 2), 1)])), t3(&[((0, 1, 2), 1), ((2, 1, 0), -1)]));
        assert!(antisym_e(&r, &t3(&[((0, 1, 0), 1)])).is_zero());
        assert_eq!(pbar(&r, &t2(&[((0, 1), 1)])), t2(&[((0, 1), 1), ((1, 0), -1)]));
        assert!(pbar(&r, &t2(&[((3, 3), 1)])).is_zero());
    }

    // Oracle for E∘E and P̄∘P̄: expand on a generator by hand.
    // E(E(xyz)) = E(xyz) − E(zyx) = (xyz − zyx) − (zyx − xyz) = 2xyz − 2zyx.
    // P̄(P̄(xy)) = (xy − yx) − (yx − xy) = 2xy − 2yx.
    #[test]
    fn squares_by_generator_expansion() {
        let r = Integers;
        let g = t3(&[((0, 1, 2), 1)]);
        assert_eq!(antisym_e(&r, &antisym_e(&r, &g)), t3(&[((0, 1, 2), 2), ((2, 1, 0), -2)]));
        let h = t2(&[((0, 1), 1)]);
        assert_eq!(pbar(&r, &pbar(&r, &h)), t2(&[((0, 1), 2), ((1, 0), -2)]));
    }

    proptest! {
        #[test]
        fn permutation_is_an_involution(t in arb_t2()) {
            prop_assert_eq!(permute(&Integers, &permute(&Integers, &t)), t);
        }

        #[test]
        fn rotation_has_order_three(t in arb_t3()) {
            let r = Integers;
            prop_assert_eq!(rotate(&r, &rotate(&r, &rotate(&r, &t))), t);
        }

        #[test]
        fn e_squared_is_twice_e(t in arb_t3()) {
            let r = Integers;
            let e = antisym_e(&r, &t);
            prop_assert_eq!(antisym_e(&r, &e), e.scale(&r, &BigInt::from(2)));
        }

        #[test]
        fn e_is_id_minus_rotated_transposition(t in arb_t3()) {
            let r = Integers;
            // Q(x⊗z⊗y) = z⊗y⊗x, so E = id − Q∘(swap of the last two factors).
            let swap_last: T3 = t.map_keys(&r, |(x, y, z)| (*x, *z, *y));
            let rhs = t.minus(&r, &rotate(&r, &swap_last));
            prop_assert_eq!(antisym_e(&r, &t), rhs);
        }

        #[test]
        fn pbar_relations(t in arb_t2()) {
            let r = Integers;
            let pb = pbar(&r, &t);
            prop_assert_eq!(pbar(&r, &pb), pb.scale(&r, &BigInt::from(2)));
            prop_assert_eq!(permute(&r, &pb), pb.negate(&r));
            prop_assert_eq!(pbar(&r, &permute(&r, &t)), pb.negate(&r));
        }

        #[test]
        fn operators_are_linear(s in arb_t2(), t in arb_t2(), c in -4i64..4, u in arb_t3(), v in arb_t3()) {
            let r = Integers;
            let c = BigInt::from(c);
            let lin2 = |f: &dyn Fn(&T2) -> T2| {
                f(&s.scale(&r, &c).plus(&r, &t)) == f(&s).scale(&r, &c).plus(&r, &f(&t))
            };
            prop_assert!(lin2(&|x| permute(&r, x)));
            prop_assert!(lin2(&|x| pbar(&r, x)));
            let lin3 = |f: &dyn Fn(&T3) -> T3| {
                f(&u.scale(&r, &c).plus(&r, &v)) == f(&u).scale(&r, &c).plus(&r, &f(&v))
            };
            prop_assert!(lin3(&|x| rotate(&r, x)));
            prop_assert!(lin3(&|x| antisym_e(&r, x)));
        }
    }

    #[test]
    fn bi_endomorphism_compositions() {
        let r = Integers;
        let p = BiEndomorphism::<u8, _>::permutation(r);
        let pb = BiEndomorphism::pbar(r);
        let id = BiEndomorphism::identity(r);
        let sample: Vec<(u8, u8)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        assert!(p.after(&p).first_difference(&id, &sample).is_none());
        let neg_pb = pb.scaled(BigInt::from(-1));
        assert!(pb.after(&p).first_difference(&neg_pb, &sample).is_none());
        assert!(p.after(&pb).first_difference(&neg_pb, &sample).is_none());
        assert!(p.then_permute().first_difference(&id, &sample).is_none());
        assert!(id.after_permute().first_difference(&p, &sample).is_none());
        assert!(id.minus(&p).first_difference(&pb, &sample).is_none());
    }
}
