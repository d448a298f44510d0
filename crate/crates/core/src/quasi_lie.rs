//! Brackets, cobrackets, their derived operators, and axiom checkers for
//! quasi-Lie algebras, coalgebras and bialgebras.
//!
//! Every operator is given on basis keys and extended (multi)linearly. The
//! checkers evaluate both sides of each axiom exactly on a finite sample of
//! basis keys; since all identities are multilinear this verifies them on
//! the span of the sample.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::rc::Rc;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{
    antisym_e, cyclic_sum, permute, rotate, tensor_right, BiEndomorphism, Combination, ModuleElement, Ring, Tensor2,
    Tensor3,
};

/// Keys usable as a basis of a free module.
pub trait Basis: Ord + Clone + Hash + Debug + 'static {}
impl<T: Ord + Clone + Hash + Debug + 'static> Basis for T {}

type Fn2<K, T> = dyn Fn(&K, &K) -> ModuleElement<K, T>;
type Fn3<K, T> = dyn Fn(&K, &K, &K) -> ModuleElement<K, T>;
type CoFn2<K, T> = dyn Fn(&K) -> Tensor2<K, T>;
type CoFn3<K, T> = dyn Fn(&K) -> Tensor3<K, T>;

/// A bilinear map `M × M → M`.
pub struct Bracket2<K: Ord, R: Ring> {
    ring: R,
    f: Rc<Fn2<K, R::Elem>>,
}

/// A trilinear map `M × M × M → M`.
pub struct Bracket3<K: Ord, R: Ring> {
    ring: R,
    f: Rc<Fn3<K, R::Elem>>,
}

/// A linear map `M → M ⊗ M`.
pub struct Cobracket2<K: Ord, R: Ring> {
    ring: R,
    f: Rc<CoFn2<K, R::Elem>>,
}

/// A linear map `M → M ⊗ M ⊗ M`.
pub struct Cobracket3<K: Ord, R: Ring> {
    ring: R,
    f: Rc<CoFn3<K, R::Elem>>,
}

macro_rules! impl_clone {
    ($($t:ident),*) => {$(
        impl<K: Ord, R: Ring> Clone for $t<K, R> {
            fn clone(&self) -> Self {
                Self { ring: self.ring.clone(), f: Rc::clone(&self.f) }
            }
        }
    )*};
}
impl_clone!(Bracket2, Bracket3, Cobracket2, Cobracket3);

impl<K: Basis, R: Ring> Bracket2<K, R> {
    pub fn from_fn(ring: R, f: impl Fn(&K, &K) -> ModuleElement<K, R::Elem> + 'static) -> Self {
        Self { ring, f: Rc::new(f) }
    }

    pub fn zero(ring: R) -> Self {
        Self::from_fn(ring, |_, _| Combination::zero())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn on_basis(&self, x: &K, y: &K) -> ModuleElement<K, R::Elem> {
        (self.f)(x, y)
    }

    pub fn apply(&self, x: &ModuleElement<K, R::Elem>, y: &ModuleElement<K, R::Elem>) -> ModuleElement<K, R::Elem> {
        let r = &self.ring;
        let mut out = Combination::zero();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_scaled(r, &self.on_basis(a, b), &r.mul(c, d));
            }
        }
        out
    }

    /// Caches values on basis pairs. The cache is append-only and values are
    /// deterministic, so a cached result equals a recomputed one.
    pub fn memoized(&self) -> Self {
        let inner = self.clone();
        let cache: RefCell<HashMap<(K, K), ModuleElement<K, R::Elem>>> = RefCell::new(HashMap::new());
        Self::from_fn(self.ring.clone(), move |x, y| {
            let key = (x.clone(), y.clone());
            if let Some(v) = cache.borrow().get(&key) {
                return v.clone();
            }
            let v = inner.on_basis(x, y);
            cache.borrow_mut().insert(key, v.clone());
            v
        })
    }

    /// `(x, y) ↦ self(y, x)`
    pub fn transpose(&self) -> Self {
        let b = self.clone();
        Self::from_fn(self.ring.clone(), move |x, y| b.on_basis(y, x))
    }

    pub fn minus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| a.on_basis(x, y).minus(&r, &b.on_basis(x, y)))
    }

    /// Post-composes with a linear map of `M` given on basis keys.
    pub fn then(&self, f: impl Fn(&K) -> ModuleElement<K, R::Elem> + 'static) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y| a.on_basis(x, y).linear_map(&r, &f))
    }
}

impl<K: Basis, R: Ring> Bracket3<K, R> {
    pub fn from_fn(ring: R, f: impl Fn(&K, &K, &K) -> ModuleElement<K, R::Elem> + 'static) -> Self {
        Self { ring, f: Rc::new(f) }
    }

    pub fn zero(ring: R) -> Self {
        Self::from_fn(ring, |_, _, _| Combination::zero())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn on_basis(&self, x: &K, y: &K, z: &K) -> ModuleElement<K, R::Elem> {
        (self.f)(x, y, z)
    }

    pub fn apply(
        &self,
        x: &ModuleElement<K, R::Elem>,
        y: &ModuleElement<K, R::Elem>,
        z: &ModuleElement<K, R::Elem>,
    ) -> ModuleElement<K, R::Elem> {
        let r = &self.ring;
        let mut out = Combination::zero();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                let cd = r.mul(c, d);
                for (e, f) in z.iter() {
                    out.add_scaled(r, &self.on_basis(a, b, e), &r.mul(&cd, f));
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y, z| a.on_basis(x, y, z).plus(&r, &b.on_basis(x, y, z)))
    }

    pub fn minus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y, z| a.on_basis(x, y, z).minus(&r, &b.on_basis(x, y, z)))
    }

    pub fn scaled(&self, coef: R::Elem) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y, z| a.on_basis(x, y, z).scale(&r, &coef))
    }

    /// `(x, y, z) ↦ self(z, y, x)`
    pub fn reversed(&self) -> Self {
        let a = self.clone();
        Self::from_fn(self.ring.clone(), move |x, y, z| a.on_basis(z, y, x))
    }

    pub fn then(&self, f: impl Fn(&K) -> ModuleElement<K, R::Elem> + 'static) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x, y, z| a.on_basis(x, y, z).linear_map(&r, &f))
    }
}

impl<K: Basis, R: Ring> Cobracket2<K, R> {
    pub fn from_fn(ring: R, f: impl Fn(&K) -> Tensor2<K, R::Elem> + 'static) -> Self {
        Self { ring, f: Rc::new(f) }
    }

    pub fn zero(ring: R) -> Self {
        Self::from_fn(ring, |_| Combination::zero())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn on_basis(&self, x: &K) -> Tensor2<K, R::Elem> {
        (self.f)(x)
    }

    pub fn apply(&self, x: &ModuleElement<K, R::Elem>) -> Tensor2<K, R::Elem> {
        x.linear_map(&self.ring, |k| self.on_basis(k))
    }

    pub fn memoized(&self) -> Self {
        let inner = self.clone();
        let cache: RefCell<HashMap<K, Tensor2<K, R::Elem>>> = RefCell::new(HashMap::new());
        Self::from_fn(self.ring.clone(), move |x| {
            if let Some(v) = cache.borrow().get(x) {
                return v.clone();
            }
            let v = inner.on_basis(x);
            cache.borrow_mut().insert(x.clone(), v.clone());
            v
        })
    }

    pub fn minus(&self, other: &Self) -> Self {
        let (a, b, r) = (self.clone(), other.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x| a.on_basis(x).minus(&r, &b.on_basis(x)))
    }

    /// `P ∘ self`
    pub fn then_permute(&self) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x| permute(&r, &a.on_basis(x)))
    }

    /// `(ν ⊗ id) ∘ ν`
    pub fn iterate(&self) -> Cobracket3<K, R> {
        let (a, r) = (self.clone(), self.ring.clone());
        Cobracket3::from_fn(self.ring.clone(), move |x| {
            let mut out = Combination::zero();
            for ((u, v), c) in a.on_basis(x).iter() {
                let left = a.on_basis(u);
                let right = Combination::basis(&r, v.clone());
                out.add_scaled(&r, &tensor_right(&r, &left, &right), c);
            }
            out
        })
    }
}

impl<K: Basis, R: Ring> Cobracket3<K, R> {
    pub fn from_fn(ring: R, f: impl Fn(&K) -> Tensor3<K, R::Elem> + 'static) -> Self {
        Self { ring, f: Rc::new(f) }
    }

    pub fn zero(ring: R) -> Self {
        Self::from_fn(ring, |_| Combination::zero())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn on_basis(&self, x: &K) -> Tensor3<K, R::Elem> {
        (self.f)(x)
    }

    pub fn apply(&self, x: &ModuleElement<K, R::Elem>) -> Tensor3<K, R::Elem> {
        x.linear_map(&self.ring, |k| self.on_basis(k))
    }

    pub fn scaled(&self, coef: R::Elem) -> Self {
        let (a, r) = (self.clone(), self.ring.clone());
        Self::from_fn(self.ring.clone(), move |x| a.on_basis(x).scale(&r, &coef))
    }
}

/// `(x, y) ↦ b(y, x)`
pub fn transpose<K: Basis, R: Ring>(b: &Bracket2<K, R>) -> Bracket2<K, R> {
    b.transpose()
}

/// `J_b(x, y, z) = b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y)`
pub fn jacobiator<K: Basis, R: Ring>(b: &Bracket2<K, R>) -> Bracket3<K, R> {
    let b = b.clone();
    let ring = b.ring().clone();
    Bracket3::from_fn(ring.clone(), move |x, y, z| {
        let term = |p: &K, q: &K, s: &K| {
            let inner = b.on_basis(p, q);
            b.apply(&inner, &Combination::basis(&ring, s.clone()))
        };
        let mut out = term(x, y, z);
        out.add_assign(&ring, &term(y, z, x));
        out.add_assign(&ring, &term(z, x, y));
        out
    })
}

/// The quasi-Lie pair built from an arbitrary bilinear form:
/// `[x, y] = x•y − y•x` and `[x, y, z] = J_•(x, y, z) + J_•ᵗ(x, y, z)`.
pub fn pair_from_bilinear<K: Basis, R: Ring>(dot: &Bracket2<K, R>) -> (Bracket2<K, R>, Bracket3<K, R>) {
    let two = dot.minus(&dot.transpose());
    let three = jacobiator(dot).plus(&jacobiator(&dot.transpose()));
    (two, three)
}

/// The same 2-bracket with the 3-bracket
/// `(x•y)•z − x•(y•z) + (y•z)•x − y•(z•x) + (z•x)•y − z•(x•y)`,
/// a cyclic sum of associators.
pub fn remark1_pair<K: Basis, R: Ring>(dot: &Bracket2<K, R>) -> (Bracket2<K, R>, Bracket3<K, R>) {
    let two = dot.minus(&dot.transpose());
    let d = dot.clone();
    let ring = dot.ring().clone();
    let three = Bracket3::from_fn(ring.clone(), move |x, y, z| {
        let assoc = |p: &K, q: &K, s: &K| {
            let left = d.apply(&d.on_basis(p, q), &Combination::basis(&ring, s.clone()));
            let right = d.apply(&Combination::basis(&ring, p.clone()), &d.on_basis(q, s));
            left.minus(&ring, &right)
        };
        let mut out = assoc(x, y, z);
        out.add_assign(&ring, &assoc(y, z, x));
        out.add_assign(&ring, &assoc(z, x, y));
        out
    });
    (two, three)
}

/// The fully symmetric 3-bracket `s(x, y, z) = b3(x, y, z) + b3(z, y, x)`.
pub fn symmetrize_s<K: Basis, R: Ring>(_b2: &Bracket2<K, R>, b3: &Bracket3<K, R>) -> Bracket3<K, R> {
    b3.plus(&b3.reversed())
}

/// Recovers the 3-bracket of a quasi-Lie pair from its 2-bracket and the
/// symmetric bracket `s`, as `(s + J)/2`. Needs `1/2` in the ring.
pub fn recover_ternary<K: Basis, R: Ring>(b2: &Bracket2<K, R>, s: &Bracket3<K, R>) -> Option<Bracket3<K, R>> {
    let half = b2.ring().half()?;
    Some(s.plus(&jacobiator(b2)).scaled(half))
}

/// `j_ν = (I + Q + Q²) ∘ (ν ⊗ id) ∘ ν`
pub fn cojacobiator<K: Basis, R: Ring>(nu: &Cobracket2<K, R>) -> Cobracket3<K, R> {
    let sq = nu.iterate();
    let ring = nu.ring().clone();
    Cobracket3::from_fn(ring.clone(), move |x| cyclic_sum(&ring, &sq.on_basis(x)))
}

/// `ad_z(x ⊗ y) = b(z, x) ⊗ y + x ⊗ b(z, y)`, applied to a 2-tensor.
pub fn ad<K: Basis, R: Ring>(b: &Bracket2<K, R>, z: &K, t: &Tensor2<K, R::Elem>) -> Tensor2<K, R::Elem> {
    let r = b.ring();
    let mut out = Combination::zero();
    for ((x, y), c) in t.iter() {
        for (k, d) in b.on_basis(z, x).iter() {
            out.add_term(r, (k.clone(), y.clone()), r.mul(c, d));
        }
        for (k, d) in b.on_basis(z, y).iter() {
            out.add_term(r, (x.clone(), k.clone()), r.mul(c, d));
        }
    }
    out
}

/// `∂ν(x ⊗ y) = ν([x, y]) − ad_x(ν(y)) + ad_y(ν(x))`
pub fn coboundary<K: Basis, R: Ring>(b: &Bracket2<K, R>, nu: &Cobracket2<K, R>) -> BiEndomorphism<K, R> {
    let (b, nu) = (b.clone(), nu.clone());
    let ring = b.ring().clone();
    BiEndomorphism::from_fn(ring.clone(), move |x, y| {
        let mut out = nu.apply(&b.on_basis(x, y));
        out.sub_assign(&ring, &ad(&b, x, &nu.on_basis(y)));
        out.add_assign(&ring, &ad(&b, y, &nu.on_basis(x)));
        out
    })
}

/// `δ(ζ) = P̄ ∘ ζ ∘ P̄`
pub fn delta<K: Basis, R: Ring>(zeta: &BiEndomorphism<K, R>) -> BiEndomorphism<K, R> {
    let pb = BiEndomorphism::pbar(zeta.ring().clone());
    pb.after(zeta).after(&pb)
}

/// `ζ^eq = ζ + P ∘ ζ ∘ P`
pub fn equivariantize<K: Basis, R: Ring>(zeta: &BiEndomorphism<K, R>) -> BiEndomorphism<K, R> {
    zeta.plus(&zeta.after_permute().then_permute())
}

/// A bilinear form on the free module with basis `0..rank`, given by
/// structure constants `table[i][j][k]` = coefficient of `e_k` in `e_i • e_j`.
pub fn bilinear_from_table<R: Ring>(ring: R, table: Vec<Vec<Vec<i64>>>) -> Bracket2<usize, R> {
    let r = ring.clone();
    Bracket2::from_fn(ring, move |i: &usize, j: &usize| {
        let row: &Vec<i64> = &table[*i][*j];
        Combination::from_terms(&r, row.iter().enumerate().map(|(k, c)| (k, r.from_int(*c))))
    })
}

/// The failing instance recorded by a checker.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness {
    pub property: String,
    pub input: String,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of an axiom check. Failures are data, not errors.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<Witness>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            checked: 0,
            failures: 0,
            witness: None,
        }
    }

    /// Records one comparison.
    pub fn compare(&mut self, property: &str, input: impl FnOnce() -> String, equal: bool, sides: impl FnOnce() -> (Value, Value)) {
        self.checked += 1;
        if equal {
            return;
        }
        self.passed = false;
        self.failures += 1;
        if self.witness.is_none() {
            let (lhs, rhs) = sides();
            self.witness = Some(Witness {
                property: property.to_string(),
                input: input(),
                lhs,
                rhs,
            });
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.passed &= other.passed;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

/// Renders basis keys inside reports.
pub type Label<K> = dyn Fn(&K) -> String;

fn json1<K: Basis, R: Ring>(ring: &R, label: &Label<K>, x: &ModuleElement<K, R::Elem>) -> Value {
    x.to_json(ring, label)
}

fn json2<K: Basis, R: Ring>(ring: &R, label: &Label<K>, t: &Tensor2<K, R::Elem>) -> Value {
    t.to_json(ring, |(a, b)| format!("{} ⊗ {}", label(a), label(b)))
}

fn json3<K: Basis, R: Ring>(ring: &R, label: &Label<K>, t: &Tensor3<K, R::Elem>) -> Value {
    t.to_json(ring, |(a, b, c)| format!("{} ⊗ {} ⊗ {}", label(a), label(b), label(c)))
}

/// Checks that `b2` is skew, `b3` is cyclically symmetric, and
/// `J_{b2}(x, y, z) = b3(x, y, z) − b3(z, y, x)` on every sampled triple.
pub fn check_quasi_lie_algebra<K: Basis, R: Ring>(
    b2: &Bracket2<K, R>,
    b3: &Bracket3<K, R>,
    triples: &[(K, K, K)],
    label: &Label<K>,
) -> Report {
    let ring = b2.ring();
    let jac = jacobiator(b2);
    let mut report = Report::new("quasi-Lie algebra");
    for (x, y, z) in triples {
        let input = || format!("({}, {}, {})", label(x), label(y), label(z));
        let xy = b2.on_basis(x, y);
        let yx = b2.on_basis(y, x).negate(ring);
        report.compare("skew-symmetry of the 2-bracket", input, xy == yx, || {
            (json1(ring, label, &xy), json1(ring, label, &yx))
        });
        let t = b3.on_basis(x, y, z);
        let t_rot = b3.on_basis(y, z, x);
        report.compare("cyclic symmetry of the 3-bracket", input, t == t_rot, || {
            (json1(ring, label, &t), json1(ring, label, &t_rot))
        });
        let lhs = jac.on_basis(x, y, z);
        let rhs = t.minus(ring, &b3.on_basis(z, y, x));
        report.compare("Jacobiator equals antisymmetrized 3-bracket", input, lhs == rhs, || {
            (json1(ring, label, &lhs), json1(ring, label, &rhs))
        });
    }
    report
}

/// Checks `P∘ν = −ν`, `Q∘γ = γ` and `j_ν = E∘γ` on every sampled key.
pub fn check_quasi_lie_coalgebra<K: Basis, R: Ring>(
    nu: &Cobracket2<K, R>,
    gamma: &Cobracket3<K, R>,
    keys: &[K],
    label: &Label<K>,
) -> Report {
    let ring = nu.ring();
    let cojac = cojacobiator(nu);
    let mut report = Report::new("quasi-Lie coalgebra");
    for x in keys {
        let input = || label(x);
        let v = nu.on_basis(x);
        let pv = permute(ring, &v).negate(ring);
        report.compare("skew-symmetry of the 2-cobracket", input, v == pv, || {
            (json2(ring, label, &v), json2(ring, label, &pv))
        });
        let g = gamma.on_basis(x);
        let qg = rotate(ring, &g);
        report.compare("cyclic symmetry of the 3-cobracket", input, g == qg, || {
            (json3(ring, label, &g), json3(ring, label, &qg))
        });
        let lhs = cojac.on_basis(x);
        let rhs = antisym_e(ring, &g);
        report.compare("co-Jacobiator equals E applied to the 3-cobracket", input, lhs == rhs, || {
            (json3(ring, label, &lhs), json3(ring, label, &rhs))
        });
    }
    report
}

/// Runs both checks above, then verifies that `ζ` is equivariant and
/// `∂ν = δ(ζ)` on the sampled pairs.
#[allow(clippy::too_many_arguments)]
pub fn check_quasi_lie_bialgebra<K: Basis, R: Ring>(
    b2: &Bracket2<K, R>,
    b3: &Bracket3<K, R>,
    nu: &Cobracket2<K, R>,
    gamma: &Cobracket3<K, R>,
    zeta: &BiEndomorphism<K, R>,
    triples: &[(K, K, K)],
    keys: &[K],
    pairs: &[(K, K)],
    label: &Label<K>,
) -> Report {
    let ring = b2.ring();
    let mut report = Report::new("quasi-Lie bialgebra");
    report.absorb(check_quasi_lie_algebra(b2, b3, triples, label));
    report.absorb(check_quasi_lie_coalgebra(nu, gamma, keys, label));
    let cob = coboundary(b2, nu);
    let dz = delta(zeta);
    for (x, y) in pairs {
        let input = || format!("{} ⊗ {}", label(x), label(y));
        let pz = permute(ring, &zeta.on_generator(x, y));
        let zp = zeta.on_generator(y, x);
        report.compare("equivariance of the bi-endomorphism", input, pz == zp, || {
            (json2(ring, label, &pz), json2(ring, label, &zp))
        });
        let lhs = cob.on_generator(x, y);
        let rhs = dz.on_generator(x, y);
        report.compare("coboundary equals delta of the bi-endomorphism", input, lhs == rhs, || {
            (json2(ring, label, &lhs), json2(ring, label, &rhs))
        });
    }
    report
}

/// All ordered triples of the given keys.
pub fn all_triples<K: Clone>(keys: &[K]) -> Vec<(K, K, K)> {
    let mut out = Vec::with_capacity(keys.len().pow(3));
    for x in keys {
        for y in keys {
            for z in keys {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Integers, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn label(k: &usize) -> String {
        format!("e{k}")
    }

    fn random_table(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Vec<Vec<i64>>> {
        (0..rank)
            .map(|_| (0..rank).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect())
            .collect()
    }

    fn basis(rank: usize) -> Vec<usize> {
        (0..rank).collect()
    }

    fn e(i: usize, c: i64) -> ModuleElement<usize, BigInt> {
        Combination::term(&Integers, i, BigInt::from(c))
    }

    /// The commutator bracket of 2×2 integer matrices on the basis
    /// E11, E12, E21, E22 (indices 0..4).
    fn gl2_commutator() -> Bracket2<usize, Integers> {
        let prod = |i: usize, j: usize| -> Option<usize> {
            let (a, b) = (i / 2, i % 2);
            let (c, d) = (j / 2, j % 2);
            (b == c).then_some(a * 2 + d)
        };
        Bracket2::from_fn(Integers, move |&i, &j| {
            let mut out = Combination::zero();
            if let Some(k) = prod(i, j) {
                out.add_term(&Integers, k, BigInt::from(1));
            }
            if let Some(k) = prod(j, i) {
                out.add_term(&Integers, k, BigInt::from(-1));
            }
            out
        })
    }

    #[test]
    fn transpose_examples() {
        let proj = Bracket2::from_fn(Integers, |x: &usize, _y: &usize| e(*x, 1));
        assert_eq!(proj.transpose().on_basis(&0, &1), e(1, 1));
        assert_eq!(proj.transpose().transpose().on_basis(&0, &1), e(0, 1));
        let sym = Bracket2::from_fn(Integers, |x: &usize, y: &usize| e(x + y, 1));
        assert_eq!(sym.transpose().on_basis(&2, &5), sym.on_basis(&2, &5));
    }

    #[test]
    fn zero_bracket_has_zero_jacobiator() {
        let z = Bracket2::<usize, _>::zero(Integers);
        assert!(jacobiator(&z).on_basis(&0, &1, &2).is_zero());
        let (b2, b3) = pair_from_bilinear(&z);
        assert!(b2.on_basis(&0, &1).is_zero());
        assert!(b3.on_basis(&0, &1, &2).is_zero());
    }

    // Oracle: the matrix commutator satisfies Jacobi; expanding the three
    // nested commutators directly on all 64 basis triples gives zero.
    #[test]
    fn matrix_commutator_jacobiator_vanishes() {
        let b = gl2_commutator();
        let j = jacobiator(&b);
        for (x, y, z) in all_triples(&basis(4)) {
            assert!(j.on_basis(&x, &y, &z).is_zero(), "({x},{y},{z})");
        }
        let report = check_quasi_lie_algebra(&b, &Bracket3::zero(Integers), &all_triples(&basis(4)), &label);
        assert!(report.passed, "{report:?}");
    }

    // Oracle: on one generator with x•x = c·x, every nested product is c²·x;
    // J_• and J_•ᵗ each give 3c²·x.
    #[test]
    fn rank_one_pair() {
        for c in -3..=3 {
            let dot = bilinear_from_table(Integers, vec![vec![vec![c]]]);
            let (b2, b3) = pair_from_bilinear(&dot);
            assert!(b2.on_basis(&0, &0).is_zero());
            assert_eq!(b3.on_basis(&0, &0, &0), e(0, 6 * c * c));
        }
    }

    // Independent oracle: the six-term expansion of [x,y,z], written out
    // with explicit products.
    #[test]
    fn pair_matches_six_term_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = Integers;
        for _ in 0..20 {
            let rank = rng.gen_range(2..=3);
            let dot = bilinear_from_table(r, random_table(&mut rng, rank));
            let (_, b3) = pair_from_bilinear(&dot);
            let m = |a: &ModuleElement<usize, BigInt>, b: &ModuleElement<usize, BigInt>| dot.apply(a, b);
            for (x, y, z) in all_triples(&basis(rank)) {
                let (x, y, z) = (e(x, 1), e(y, 1), e(z, 1));
                let mut six = m(&m(&x, &y), &z);
                six.add_assign(&r, &m(&m(&y, &z), &x));
                six.add_assign(&r, &m(&m(&z, &x), &y));
                six.add_assign(&r, &m(&z, &m(&y, &x)));
                six.add_assign(&r, &m(&x, &m(&z, &y)));
                six.add_assign(&r, &m(&y, &m(&x, &z)));
                let (i, j, k) = (*x.keys().next().unwrap(), *y.keys().next().unwrap(), *z.keys().next().unwrap());
                assert_eq!(b3.on_basis(&i, &j, &k), six);
            }
        }
    }

    #[test]
    fn random_bilinear_forms_give_quasi_lie_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..30 {
            let rank = rng.gen_range(3..=4);
            let dot = bilinear_from_table(Integers, random_table(&mut rng, rank));
            let (b2, b3) = pair_from_bilinear(&dot);
            let report = check_quasi_lie_algebra(&b2, &b3, &all_triples(&basis(rank)), &label);
            assert!(report.passed, "{report:?}");
            let (c2, c3) = remark1_pair(&dot);
            let report = check_quasi_lie_algebra(&c2, &c3, &all_triples(&basis(rank)), &label);
            assert!(report.passed, "{report:?}");
        }
    }

    #[test]
    fn associative_commutative_product_has_zero_remark1_bracket() {
        // Polynomial-style product e_i • e_j = e_{(i+j) mod 3}: associative and commutative.
        let dot = Bracket2::from_fn(Integers, |i: &usize, j: &usize| e((i + j) % 3, 1));
        let (b2, b3) = remark1_pair(&dot);
        for (x, y, z) in all_triples(&basis(3)) {
            assert!(b3.on_basis(&x, &y, &z).is_zero());
            assert!(b2.on_basis(&x, &y).is_zero());
        }
        let (b2, b3) = remark1_pair(&Bracket2::<usize, _>::zero(Integers));
        assert!(b2.on_basis(&0, &1).is_zero() && b3.on_basis(&0, &1, &2).is_zero());
    }

    #[test]
    fn skew_bracket_jacobiator_of_transpose_agrees() {
        let b = gl2_commutator();
        let j = jacobiator(&b);
        let jt = jacobiator(&b.transpose());
        for (x, y, z) in all_triples(&basis(4)) {
            assert_eq!(j.on_basis(&x, &y, &z), jt.on_basis(&x, &y, &z));
        }
    }

    #[test]
    fn symmetrized_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = Integers;
        let dot = bilinear_from_table(r, random_table(&mut rng, 3));
        let (b2, b3) = pair_from_bilinear(&dot);
        let s = symmetrize_s(&b2, &b3);
        let j = jacobiator(&b2);
        for (x, y, z) in all_triples(&basis(3)) {
            let v = s.on_basis(&x, &y, &z);
            let expected = b3.on_basis(&x, &y, &z).scale(&r, &BigInt::from(2)).minus(&r, &j.on_basis(&x, &y, &z));
            assert_eq!(v, expected);
            // full symmetry, via the cyclic symmetry of b3
            assert_eq!(v, s.on_basis(&z, &x, &y));
            assert_eq!(v, s.on_basis(&y, &x, &z));
            assert_eq!(v, s.on_basis(&x, &z, &y));
        }
        assert!(symmetrize_s(&b2, &Bracket3::zero(r)).on_basis(&0, &1, &2).is_zero());
    }

    #[test]
    fn ternary_bracket_round_trips_over_rationals() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let dot = bilinear_from_table(Rationals, random_table(&mut rng, 3));
        let (b2, b3) = pair_from_bilinear(&dot);
        let s = symmetrize_s(&b2, &b3);
        let back = recover_ternary(&b2, &s).unwrap();
        for (x, y, z) in all_triples(&basis(3)) {
            assert_eq!(back.on_basis(&x, &y, &z), b3.on_basis(&x, &y, &z));
        }
        let int_dot = bilinear_from_table(Integers, vec![vec![vec![1]]]);
        let (b2, b3) = pair_from_bilinear(&int_dot);
        assert!(recover_ternary(&b2, &symmetrize_s(&b2, &b3)).is_none());
    }

    #[test]
    fn cojacobiator_examples() {
        let r = Integers;
        let zero = Cobracket2::<usize, _>::zero(r);
        assert!(cojacobiator(&zero).on_basis(&0).is_zero());
        // ν(x) = x⊗x: ν²(x) = x⊗x⊗x, and I+Q+Q² triples it.
        let diag = Cobracket2::from_fn(r, move |x: &usize| Combination::basis(&r, (*x, *x)));
        let j = cojacobiator(&diag).on_basis(&0);
        assert_eq!(j, Combination::term(&r, (0, 0, 0), BigInt::from(3)));
    }

    fn random_cobracket(seed: u64, rank: usize) -> Cobracket2<usize, Integers> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table: Vec<Vec<(usize, usize, i64)>> = (0..rank)
            .map(|_| (0..3).map(|_| (rng.gen_range(0..rank), rng.gen_range(0..rank), rng.gen_range(-3..=3))).collect())
            .collect();
        let r = Integers;
        Cobracket2::from_fn(r, move |x: &usize| {
            Combination::from_terms(&r, table[*x].iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn jacobiator_is_cyclic(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dot = bilinear_from_table(Integers, random_table(&mut rng, 3));
            let j = jacobiator(&dot);
            for (x, y, z) in all_triples(&basis(3)) {
                prop_assert_eq!(j.on_basis(&x, &y, &z), j.on_basis(&y, &z, &x));
            }
        }

        #[test]
        fn cojacobiator_is_cyclic(seed in 0u64..1000) {
            let nu = random_cobracket(seed, 3);
            let j = cojacobiator(&nu);
            for x in 0..3 {
                let v = j.on_basis(&x);
                prop_assert_eq!(rotate(&Integers, &v), v);
            }
        }

        #[test]
        fn coboundary_of_skew_data_is_skew(seed in 0u64..500) {
            let r = Integers;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dot = bilinear_from_table(r, random_table(&mut rng, 3));
            let b = dot.minus(&dot.transpose());
            let raw = random_cobracket(seed + 1, 3);
            let nu = raw.minus(&raw.then_permute());
            let cob = coboundary(&b, &nu);
            let neg = cob.scaled(BigInt::from(-1));
            let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |c| (a, c))).collect();
            prop_assert!(cob.then_permute().first_difference(&neg, &pairs).is_none());
            prop_assert!(cob.after_permute().first_difference(&neg, &pairs).is_none());
        }

        #[test]
        fn delta_and_equivariantization(seed in 0u64..500) {
            let r = Integers;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let table: Vec<Vec<Vec<(usize, usize, i64)>>> = (0..3).map(|_| (0..3).map(|_| {
                (0..2).map(|_| (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(-3..=3))).collect()
            }).collect()).collect();
            let zeta = BiEndomorphism::from_fn(r, move |x: &usize, y: &usize| {
                Combination::from_terms(&r, table[*x][*y].iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))))
            });
            let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |c| (a, c))).collect();
            let d = delta(&zeta);
            let neg = d.scaled(BigInt::from(-1));
            prop_assert!(d.then_permute().first_difference(&neg, &pairs).is_none());
            prop_assert!(d.after_permute().first_difference(&neg, &pairs).is_none());
            let eq = equivariantize(&zeta);
            prop_assert!(eq.then_permute().first_difference(&eq.after_permute(), &pairs).is_none());
            let twice = d.scaled(BigInt::from(2));
            prop_assert!(delta(&eq).first_difference(&twice, &pairs).is_none());
        }
    }

    #[test]
    fn coboundary_vanishes_without_cobracket() {
        let r = Integers;
        let b = gl2_commutator();
        let cob = coboundary(&b, &Cobracket2::zero(r));
        for x in 0..4 {
            for y in 0..4 {
                assert!(cob.on_generator(&x, &y).is_zero());
            }
        }
        let cob = coboundary(&Bracket2::zero(r), &Cobracket2::<usize, _>::zero(r));
        assert!(cob.on_generator(&0, &1).is_zero());
    }

    // δ(id) = P̄² = 2P̄ and δ(P) = P̄PP̄ = −P̄² = −2P̄, by generator expansion:
    // P̄(x⊗y) = x⊗y − y⊗x, P maps it to y⊗x − x⊗y, P̄ of that is 2(y⊗x − x⊗y).
    #[test]
    fn delta_of_identity_and_permutation() {
        let r = Integers;
        let pairs: Vec<(usize, usize)> = vec![(0, 1), (1, 0), (2, 2), (0, 2)];
        let pb = BiEndomorphism::pbar(r);
        let d_id = delta(&BiEndomorphism::identity(r));
        assert!(d_id.first_difference(&pb.scaled(BigInt::from(2)), &pairs).is_none());
        let d_p = delta(&BiEndomorphism::permutation(r));
        assert!(d_p.first_difference(&pb.scaled(BigInt::from(-2)), &pairs).is_none());
        assert_eq!(d_p.on_generator(&0, &1), Combination::from_terms(&r, [((0, 1), BigInt::from(-2)), ((1, 0), BigInt::from(2))]));
    }

    #[test]
    fn coalgebra_checker_catches_missing_gamma() {
        let r = Integers;
        // every skew cobracket in rank two is co-Jacobi; in rank three take
        // ν(e0) = e0∧e1, ν(e1) = e1∧e2, ν(e2) = 0
        let nu = Cobracket2::from_fn(r, move |k: &usize| match *k {
            2 => Combination::zero(),
            k => Combination::from_terms(&r, [((k, k + 1), BigInt::from(1)), ((k + 1, k), BigInt::from(-1))]),
        });
        assert!(!cojacobiator(&nu).on_basis(&0).is_zero());
        let report = check_quasi_lie_coalgebra(&nu, &Cobracket3::zero(r), &[0, 1, 2], &label);
        assert!(!report.passed);
        let w = report.witness.unwrap();
        assert_eq!(w.property, "co-Jacobiator equals E applied to the 3-cobracket");
        assert_eq!(w.input, "e0");

        let ok = check_quasi_lie_coalgebra(&Cobracket2::<usize, _>::zero(r), &Cobracket3::zero(r), &[0, 1], &label);
        assert!(ok.passed);
        assert_eq!(ok.checked, 6);
    }

    #[test]
    fn bialgebra_checker_on_trivial_and_classical_data() {
        let r = Integers;
        let triples = all_triples(&basis(2));
        let pairs = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let report = check_quasi_lie_bialgebra(
            &Bracket2::zero(r),
            &Bracket3::zero(r),
            &Cobracket2::zero(r),
            &Cobracket3::zero(r),
            &BiEndomorphism::zero(r),
            &triples,
            &[0, 1],
            &pairs,
            &label,
        );
        assert!(report.passed, "{report:?}");

        // Classical: the two-dimensional non-abelian Lie algebra [e0, e1] = e1
        // with the cobracket ν(e0) = 0, ν(e1) = e1⊗e0 − e0⊗e1, a Lie bialgebra.
        let b = Bracket2::from_fn(r, move |x: &usize, y: &usize| match (x, y) {
            (0, 1) => e(1, 1),
            (1, 0) => e(1, -1),
            _ => Combination::zero(),
        });
        let nu = Cobracket2::from_fn(r, move |x: &usize| {
            if *x == 1 {
                Combination::from_terms(&r, [((1, 0), BigInt::from(1)), ((0, 1), BigInt::from(-1))])
            } else {
                Combination::zero()
            }
        });
        let cob = coboundary(&b, &nu);
        for &(x, y) in &pairs {
            assert!(cob.on_generator(&x, &y).is_zero());
        }
        let report = check_quasi_lie_bialgebra(
            &b,
            &Bracket3::zero(r),
            &nu,
            &Cobracket3::zero(r),
            &BiEndomorphism::zero(r),
            &triples,
            &[0, 1],
            &pairs,
            &label,
        );
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn memoized_bracket_agrees() {
        let b = gl2_commutator();
        let m = b.memoized();
        for (x, y, _) in all_triples(&basis(4)) {
            assert_eq!(m.on_basis(&x, &y), b.on_basis(&x, &y));
            assert_eq!(m.on_basis(&x, &y), b.on_basis(&x, &y));
        }
    }

    #[test]
    fn brackets_are_multilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = Integers;
        let dot = bilinear_from_table(r, random_table(&mut rng, 3));
        let x = e(0, 2).plus(&r, &e(1, -3));
        let y = e(2, 5);
        let z = e(1, 1).plus(&r, &e(2, 4));
        let c = BigInt::from(-7);
        let lhs = dot.apply(&x.scale(&r, &c).plus(&r, &y), &z);
        let rhs = dot.apply(&x, &z).scale(&r, &c).plus(&r, &dot.apply(&y, &z));
        assert_eq!(lhs, rhs);
        let (_, b3) = pair_from_bilinear(&dot);
        let lhs = b3.apply(&z, &x.scale(&r, &c).plus(&r, &y), &x);
        let rhs = b3.apply(&z, &x, &x).scale(&r, &c).plus(&r, &b3.apply(&z, &y, &x));
        assert_eq!(lhs, rhs);
    }
}
