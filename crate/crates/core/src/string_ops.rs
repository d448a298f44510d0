//! Operations on the free module spanned by free homotopy classes: the
//! ω-bracket and the skew bracket, the cobrackets, the gate m-brackets and
//! m-cobrackets, the gate bi-endomorphism, and the quotient by `Re`.
//!
//! Loop-level functions take explicit generic loops. [`LoopAlgebra`] lifts
//! them to basis classes, drawing a jointly generic family of fresh
//! representatives for every evaluation.

use std::rc::Rc;

use crate::algebra::{BiEndomorphism, Combination, ModuleElement, Ring, Tensor2, Tensor3};
use crate::loops::{check_family, disk_crossings, ClassTable, Cut, CyclicWord, GatePoint, GenericLoop, Layout, Letter, Stage};
use crate::quasi_lie::{Bracket2, Bracket3, Cobracket2, Cobracket3};
use crate::surface::{GateOrientation, GeometryError, QuasiSurface};

pub type Element<R> = ModuleElement<CyclicWord, <R as Ring>::Elem>;
pub type Element2<R> = Tensor2<CyclicWord, <R as Ring>::Elem>;
pub type Element3<R> = Tensor3<CyclicWord, <R as Ring>::Elem>;
/// An element of an arbitrary tensor power, keyed by the list of factors.
pub type ElementN<R> = Combination<Vec<CyclicWord>, <R as Ring>::Elem>;

/// A gate orientation together with the sign convention for `ε(ω, k)`.
///
/// `flip_gate_sign` negates every `ε(ω, k)`. It exists only as a negative
/// control for the verifier: with it set, the identities must fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub omega: GateOrientation,
    pub flip_gate_sign: bool,
}

impl Orientation {
    pub fn new(omega: GateOrientation) -> Self {
        Self {
            omega,
            flip_gate_sign: false,
        }
    }

    pub fn counterclockwise(gates: usize) -> Self {
        Self::new(GateOrientation::counterclockwise(gates))
    }

    pub fn flipped(mut self) -> Self {
        self.flip_gate_sign = !self.flip_gate_sign;
        self
    }

    pub fn epsilon(&self, k: usize) -> i64 {
        let e = self.omega.get(k).expect("orientation covers every gate") as i64;
        if self.flip_gate_sign {
            -e
        } else {
            e
        }
    }

    pub fn precedes(&self, k: usize, p: &GatePoint, q: &GatePoint) -> bool {
        self.omega.precedes(k, &p.u, &q.u)
    }
}

fn class(letters: &[Letter]) -> CyclicWord {
    CyclicWord::from_letters(letters)
}

fn concat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    a.iter().chain(b).copied().collect()
}

/// `⟨·⟩₀`: the class, or nothing when it is trivial.
fn class0(letters: &[Letter]) -> Option<CyclicWord> {
    Some(class(letters)).filter(|c| !c.is_identity())
}

/// `bracket_ω(a, b)`: signed disk crossings of `a` with `b`, plus the gate
/// chords `(p, q)` with `q <_ω p`.
pub fn bracket_omega<R: Ring>(
    ring: &R,
    or: &Orientation,
    a: &GenericLoop,
    b: &GenericLoop,
) -> Result<Element<R>, GeometryError> {
    let (la, lb) = (a.layout(), b.layout());
    let mut out = Combination::zero();
    for r in disk_crossings(a, b)? {
        let w = concat(
            &la.based(Cut::new(r.legs.0, Stage::Middle)),
            &lb.based(Cut::new(r.legs.1, Stage::Middle)),
        );
        out.add_term(ring, class(&w), ring.from_int(r.sign as i64));
    }
    let bq = b.crossings();
    for p in a.crossings() {
        for q in bq.iter().filter(|q| q.gate == p.gate) {
            if or.precedes(p.gate, q, &p) {
                let sign = or.epsilon(p.gate) * p.sign as i64 * q.sign as i64;
                let w = concat(&la.based(p.cut), &lb.based(q.cut));
                out.add_term(ring, class(&w), ring.from_int(sign));
            }
        }
    }
    Ok(out)
}

/// The gate `m`-bracket `μ^m_C(a₁, …, a_m)` with `m` the number of loops.
pub fn gate_mu<R: Ring>(ring: &R, gate: usize, loops: &[&GenericLoop]) -> Element<R> {
    let lists: Vec<_> = loops.iter().map(|a| (a.layout(), a.crossings_with(gate))).collect();
    let mut out = Combination::zero();
    let mut word = Vec::new();
    fn rec<R: Ring>(
        ring: &R,
        lists: &[(Layout, Vec<GatePoint>)],
        sign: i64,
        word: &mut Vec<Letter>,
        out: &mut Element<R>,
    ) {
        let Some(((layout, points), rest)) = lists.split_first() else {
            out.add_term(ring, class(word), ring.from_int(sign));
            return;
        };
        for p in points {
            let len = word.len();
            word.extend(layout.based(p.cut));
            rec(ring, rest, sign * p.sign as i64, word, out);
            word.truncate(len);
        }
    }
    rec(ring, &lists, 1, &mut word, &mut out);
    out
}

/// `μ^m = Σ_k μ^m_{α_k}`.
pub fn total_mu<R: Ring>(ring: &R, s: &QuasiSurface, loops: &[&GenericLoop]) -> Element<R> {
    let mut out = Combination::zero();
    for k in 0..s.gate_count() {
        out.add_assign(ring, &gate_mu(ring, k, loops));
    }
    out
}

/// `ν_ω(a)`: self-intersections `a¹ ⊗ a² − a² ⊗ a¹`, plus the gate chords
/// `p₁ <_ω p₂` of `a` with itself.
pub fn nu_omega<R: Ring>(ring: &R, or: &Orientation, a: &GenericLoop) -> Result<Element2<R>, GeometryError> {
    let mut out = Combination::zero();
    for r in a.self_intersections()? {
        if let (Some(h1), Some(h2)) = (class0(&r.halves.0), class0(&r.halves.1)) {
            out.add_term(ring, (h1.clone(), h2.clone()), ring.one());
            out.add_term(ring, (h2, h1), ring.neg(&ring.one()));
        }
    }
    let layout = a.layout();
    let points = a.crossings();
    for p1 in &points {
        for p2 in points.iter().filter(|p| p.gate == p1.gate) {
            if !or.precedes(p1.gate, p1, p2) {
                continue;
            }
            let (Some(x), Some(y)) = (class0(&layout.between(p2.cut, p1.cut)), class0(&layout.between(p1.cut, p2.cut)))
            else {
                continue;
            };
            let sign = or.epsilon(p1.gate) * p1.sign as i64 * p2.sign as i64;
            out.add_term(ring, (x, y), ring.from_int(sign));
        }
    }
    Ok(out)
}

/// The gate `m`-cobracket `γ_{C,m}(a)`: every `m`-subset of `a ∩ C` in
/// loop order, with each of its `m` rotations.
pub fn gate_gamma<R: Ring>(ring: &R, gate: usize, m: usize, a: &GenericLoop) -> ElementN<R> {
    let mut out = Combination::zero();
    let points = a.crossings_with(gate);
    if m == 0 || m > points.len() {
        return out;
    }
    let layout = a.layout();
    for subset in subsets(points.len(), m) {
        for rot in 0..m {
            let seq: Vec<&GatePoint> = (0..m).map(|i| &points[subset[(rot + i) % m]]).collect();
            let factors: Option<Vec<CyclicWord>> =
                (0..m).map(|i| class0(&layout.between(seq[i].cut, seq[(i + 1) % m].cut))).collect();
            if let Some(f) = factors {
                let sign: i64 = seq.iter().map(|p| p.sign as i64).product();
                out.add_term(ring, f, ring.from_int(sign));
            }
        }
    }
    out
}

/// Increasing `m`-element index lists drawn from `0..n`.
fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

/// `γ^m = Σ_k γ_{α_k, m}`.
pub fn total_gamma<R: Ring>(ring: &R, s: &QuasiSurface, m: usize, a: &GenericLoop) -> ElementN<R> {
    let mut out = Combination::zero();
    for k in 0..s.gate_count() {
        out.add_assign(ring, &gate_gamma(ring, k, m, a));
    }
    out
}

/// The gate bi-endomorphism `ζ_C(a ⊗ b)`.
pub fn gate_zeta<R: Ring>(ring: &R, gate: usize, a: &GenericLoop, b: &GenericLoop) -> Element2<R> {
    let mut out = Combination::zero();
    let pa = a.crossings_with(gate);
    let pb = b.crossings_with(gate);
    let weight = pa.len() as i64 * b.intersection_number(gate);
    if weight != 0 {
        if let (Some(x), Some(y)) = (class0(&a.word()), class0(&b.word())) {
            out.add_term(ring, (x, y), ring.from_int(weight));
        }
    }
    let (la, lb) = (a.layout(), b.layout());
    for p1 in &pa {
        for p2 in &pa {
            if p1.cut == p2.cut {
                continue;
            }
            let Some(x) = class0(&la.between(p1.cut, p2.cut)) else {
                continue;
            };
            let back = la.between(p2.cut, p1.cut);
            for q in &pb {
                let Some(y) = class0(&concat(&back, &lb.based(q.cut))) else {
                    continue;
                };
                let sign = 2 * p1.sign as i64 * p2.sign as i64 * q.sign as i64;
                out.add_term(ring, (x.clone(), y), ring.from_int(sign));
            }
        }
    }
    out
}

pub fn total_zeta<R: Ring>(ring: &R, s: &QuasiSurface, a: &GenericLoop, b: &GenericLoop) -> Element2<R> {
    let mut out = Combination::zero();
    for k in 0..s.gate_count() {
        out.add_assign(ring, &gate_zeta(ring, k, a, b));
    }
    out
}

/// `ψ`: drops the coefficient of the trivial class.
pub fn project_quotient<R: Ring>(x: &Element<R>) -> Element<R> {
    x.retain_keys(|k| !k.is_identity())
}

pub fn project_quotient2<R: Ring>(t: &Element2<R>) -> Element2<R> {
    t.retain_keys(|(a, b)| !a.is_identity() && !b.is_identity())
}

pub fn project_quotient3<R: Ring>(t: &Element3<R>) -> Element3<R> {
    t.retain_keys(|(a, b, c)| !a.is_identity() && !b.is_identity() && !c.is_identity())
}

/// Converts a 2- or 3-fold tensor keyed by factor lists.
pub fn to_tensor2<R: Ring>(ring: &R, t: &ElementN<R>) -> Element2<R> {
    t.map_keys(ring, |v| (v[0].clone(), v[1].clone()))
}

pub fn to_tensor3<R: Ring>(ring: &R, t: &ElementN<R>) -> Element3<R> {
    t.map_keys(ring, |v| (v[0].clone(), v[1].clone(), v[2].clone()))
}

/// The operations of the quasi-surface lifted to basis classes.
#[derive(Clone)]
pub struct LoopAlgebra<R: Ring> {
    ring: R,
    table: Rc<ClassTable>,
    orientation: Orientation,
}

impl<R: Ring> LoopAlgebra<R> {
    pub fn new(ring: R, table: Rc<ClassTable>, orientation: Orientation) -> Self {
        Self {
            ring,
            table,
            orientation,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn table(&self) -> &Rc<ClassTable> {
        &self.table
    }

    pub fn surface(&self) -> &QuasiSurface {
        self.table.surface()
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Self {
            orientation,
            ..self.clone()
        }
    }

    /// Jointly generic representatives of `words`.
    ///
    /// # Panics
    /// When no generic family turns up after the table's retries; the
    /// allocator makes that practically impossible.
    pub fn family(&self, words: &[&CyclicWord]) -> Vec<GenericLoop> {
        let fam = self
            .table
            .fresh_family(words)
            .unwrap_or_else(|e| panic!("no generic family of representatives: {e}"));
        debug_assert!(check_family(&fam.iter().collect::<Vec<_>>()).is_ok());
        fam
    }

    pub fn bracket_omega(&self) -> Bracket2<CyclicWord, R> {
        let this = self.clone();
        Bracket2::from_fn(self.ring.clone(), move |x, y| {
            let f = this.family(&[x, y]);
            bracket_omega(&this.ring, &this.orientation, &f[0], &f[1]).expect("generic family")
        })
    }

    /// `[x, y]_X = bracket_ω(x, y) − bracket_ω(y, x)`
    pub fn bracket(&self) -> Bracket2<CyclicWord, R> {
        let b = self.bracket_omega();
        b.minus(&b.transpose()).memoized()
    }

    pub fn mu3(&self) -> Bracket3<CyclicWord, R> {
        let this = self.clone();
        Bracket3::from_fn(self.ring.clone(), move |x, y, z| {
            let f = this.family(&[x, y, z]);
            total_mu(&this.ring, this.surface(), &[&f[0], &f[1], &f[2]])
        })
    }

    /// `μ^m` (or `μ^m_C` for one gate) on a list of classes.
    pub fn mu(&self, gate: Option<usize>, xs: &[&CyclicWord]) -> Element<R> {
        let f = self.family(xs);
        let refs: Vec<&GenericLoop> = f.iter().collect();
        match gate {
            Some(k) => gate_mu(&self.ring, k, &refs),
            None => total_mu(&self.ring, self.surface(), &refs),
        }
    }

    pub fn nu_omega(&self) -> Cobracket2<CyclicWord, R> {
        let this = self.clone();
        Cobracket2::from_fn(self.ring.clone(), move |x| {
            let f = this.family(&[x]);
            nu_omega(&this.ring, &this.orientation, &f[0]).expect("generic loop")
        })
    }

    /// `ν_X = ν_ω − P ∘ ν_ω`
    pub fn nu(&self) -> Cobracket2<CyclicWord, R> {
        let n = self.nu_omega().memoized();
        n.minus(&n.then_permute()).memoized()
    }

    pub fn gamma(&self, gate: Option<usize>, m: usize, x: &CyclicWord) -> ElementN<R> {
        let f = self.family(&[x]);
        match gate {
            Some(k) => gate_gamma(&self.ring, k, m, &f[0]),
            None => total_gamma(&self.ring, self.surface(), m, &f[0]),
        }
    }

    pub fn gamma3(&self) -> Cobracket3<CyclicWord, R> {
        let this = self.clone();
        Cobracket3::from_fn(self.ring.clone(), move |x| to_tensor3(&this.ring, &this.gamma(None, 3, x)))
    }

    pub fn zeta(&self) -> BiEndomorphism<CyclicWord, R> {
        let this = self.clone();
        BiEndomorphism::from_fn(self.ring.clone(), move |x, y| {
            let f = this.family(&[x, y]);
            total_zeta(&this.ring, this.surface(), &f[0], &f[1])
        })
    }
}

fn trivial(keys: &[&CyclicWord]) -> bool {
    keys.iter().any(|k| k.is_identity())
}

/// The operations induced on `M∘ = M/Re`, on the basis of nontrivial classes.
pub fn quotient_bracket2<R: Ring>(b: &Bracket2<CyclicWord, R>) -> Bracket2<CyclicWord, R> {
    let b = b.clone();
    Bracket2::from_fn(b.ring().clone(), move |x, y| {
        if trivial(&[x, y]) {
            Combination::zero()
        } else {
            project_quotient::<R>(&b.on_basis(x, y))
        }
    })
}

pub fn quotient_bracket3<R: Ring>(b: &Bracket3<CyclicWord, R>) -> Bracket3<CyclicWord, R> {
    let b = b.clone();
    Bracket3::from_fn(b.ring().clone(), move |x, y, z| {
        if trivial(&[x, y, z]) {
            Combination::zero()
        } else {
            project_quotient::<R>(&b.on_basis(x, y, z))
        }
    })
}

pub fn quotient_cobracket2<R: Ring>(nu: &Cobracket2<CyclicWord, R>) -> Cobracket2<CyclicWord, R> {
    let nu = nu.clone();
    Cobracket2::from_fn(nu.ring().clone(), move |x: &CyclicWord| {
        if x.is_identity() {
            Combination::zero()
        } else {
            project_quotient2::<R>(&nu.on_basis(x))
        }
    })
}

pub fn quotient_cobracket3<R: Ring>(g: &Cobracket3<CyclicWord, R>) -> Cobracket3<CyclicWord, R> {
    let g = g.clone();
    Cobracket3::from_fn(g.ring().clone(), move |x: &CyclicWord| {
        if x.is_identity() {
            Combination::zero()
        } else {
            project_quotient3::<R>(&g.on_basis(x))
        }
    })
}

pub fn quotient_bi<R: Ring>(z: &BiEndomorphism<CyclicWord, R>) -> BiEndomorphism<CyclicWord, R> {
    let z = z.clone();
    BiEndomorphism::from_fn(z.ring().clone(), move |x, y| {
        if trivial(&[x, y]) {
            Combination::zero()
        } else {
            project_quotient2::<R>(&z.on_generator(x, y))
        }
    })
}
