//! Seeded random instances and the checks behind `qg verify`.
//!
//! Every trial draws its own surface, classes and representatives from a
//! seed derived from the run seed and the trial index, so trials are
//! independent and reports are reproducible.

use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{antisym_e, permute, BiEndomorphism, Integers, Rationals, Ring};
use crate::loops::moves::random_move;
use crate::loops::{check_family, make_simple, random_word, ClassTable, CyclicWord, GenericLoop};
use crate::quasi_lie::{
    all_triples, bilinear_from_table, check_quasi_lie_algebra, check_quasi_lie_bialgebra, check_quasi_lie_coalgebra,
    coboundary, delta, equivariantize, jacobiator, pair_from_bilinear, Report,
};
use crate::string_ops::{
    self, bracket_omega, gate_gamma, gate_mu, gate_zeta, nu_omega, project_quotient2, quotient_bi, quotient_bracket2,
    quotient_bracket3, quotient_cobracket2, quotient_cobracket3, LoopAlgebra, Orientation,
};
use crate::surface::{EdgeSpec, GateOrientation, GateSpec, GraphSpec, QuasiSurface, SurfaceSpec};

/// Size bounds for random scenarios.
pub const MAX_GATES: usize = 3;
pub const MAX_EDGES: usize = 3;
pub const MAX_CHORDS: usize = 4;
/// Longest random walk used to draw a class.
pub const MAX_WALK: usize = 8;
/// Chord bound for the simplification trials.
pub const MAX_SIMPLE_CHORDS: usize = 6;
/// Length of the random move sequences.
pub const MOVE_STEPS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Jacobi,
    Cojacobi,
    Coboundary,
    Bialgebra,
    BilinearPair,
    OmegaIndep,
    Moves,
    Simple,
    Structure,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Jacobi,
        Theorem::Cojacobi,
        Theorem::Coboundary,
        Theorem::Bialgebra,
        Theorem::BilinearPair,
        Theorem::OmegaIndep,
        Theorem::Moves,
        Theorem::Simple,
        Theorem::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Jacobi => "jacobi",
            Theorem::Cojacobi => "cojacobi",
            Theorem::Coboundary => "coboundary",
            Theorem::Bialgebra => "bialgebra",
            Theorem::BilinearPair => "lemma22",
            Theorem::OmegaIndep => "omega-indep",
            Theorem::Moves => "moves",
            Theorem::Simple => "simple",
            Theorem::Structure => "structure",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    /// Negates `ε(ω, k)` everywhere, as a negative control.
    pub flip_gate_sign: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub theorem: Theorem,
    pub seed: u64,
    pub trials: usize,
    /// Families regenerated because fresh coordinates were degenerate.
    pub retries: usize,
    /// Trials whose compared quantities were not all zero.
    pub nontrivial: usize,
    pub report: Report,
}

/// One trial's report, and whether it exercised anything.
pub struct Checked {
    pub report: Report,
    pub nontrivial: bool,
}

/// A trial's random state: a surface, a class table on it and a generator.
pub struct Trial {
    pub index: usize,
    pub surface: QuasiSurface,
    pub table: Rc<ClassTable>,
    pub rng: ChaCha8Rng,
}

impl Trial {
    pub fn new(seed: u64, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let surface = random_surface(&mut rng);
        let table = Rc::new(ClassTable::new(surface.clone(), rng.gen()));
        Self {
            index,
            surface,
            table,
            rng,
        }
    }

    /// A random class. Mostly aims for a random number of chords so that
    /// gates carry several points; sometimes takes a plain random walk.
    pub fn word(&mut self) -> CyclicWord {
        if self.rng.gen_ratio(1, 8) {
            return random_word(&self.surface, &mut self.rng, MAX_CHORDS, MAX_WALK);
        }
        self.word_with_chords(1)
    }

    /// A class with between `min` and the maximum number of chords, when
    /// the surface has one.
    pub fn word_with_chords(&mut self, min: usize) -> CyclicWord {
        let target = self.rng.gen_range(min.min(MAX_CHORDS)..=MAX_CHORDS);
        let mut best = CyclicWord::identity();
        for _ in 0..64 {
            let w = random_word(&self.surface, &mut self.rng, target, 4 * target + 4);
            if chords(&self.surface, &w) == target {
                return w;
            }
            if chords(&self.surface, &w) > chords(&self.surface, &best) {
                best = w;
            }
        }
        best
    }

    /// A class that is not trivial, falling back to a single chord.
    pub fn nontrivial_word(&mut self) -> CyclicWord {
        for _ in 0..32 {
            let w = self.word();
            if !w.is_identity() {
                return w;
            }
        }
        let g = self.surface.generator_name(0).to_string();
        CyclicWord::parse(&self.surface, &format!("{g}.{g}^-1.{g}")).unwrap_or_else(|_| self.word())
    }

    pub fn omega(&mut self) -> GateOrientation {
        let n = self.surface.gate_count();
        GateOrientation::from_signs((0..n).map(|_| if self.rng.gen_bool(0.5) { 1 } else { -1 }).collect())
    }

    pub fn algebra<R: Ring>(&mut self, ring: R, flip: bool) -> LoopAlgebra<R> {
        let mut or = Orientation::new(self.omega());
        or.flip_gate_sign = flip;
        LoopAlgebra::new(ring, Rc::clone(&self.table), or)
    }

    pub fn label(&self) -> impl Fn(&CyclicWord) -> String {
        let s = self.surface.clone();
        move |w: &CyclicWord| w.render(&s)
    }
}

fn chords(s: &QuasiSurface, w: &CyclicWord) -> usize {
    w.letters().iter().filter(|l| s.is_gate_generator(l.gen) && !l.inverse).count()
}

/// A random quasi-surface: up to three gates in disjoint slots of the
/// boundary, each vertex carrying at least one gate, and up to three edges.
///
/// One-gate surfaces and graphs that leave gate vertices apart carry no
/// class with a chord, so they are drawn rarely.
pub fn random_surface(rng: &mut impl Rng) -> QuasiSurface {
    let n = match rng.gen_range(0..20) {
        0..=1 => 1,
        2..=8 => 2,
        _ => MAX_GATES,
    };
    let nv = rng.gen_range(1..=n);
    let mut gates = Vec::new();
    for k in 0..n {
        let a = rng.gen_range(1..9u32);
        let b = rng.gen_range(a + 1..=9u32);
        let slot = 10 * n as u32;
        let lo = 10 * k as u32 + a;
        let hi = 10 * k as u32 + b;
        let vertex = if k < nv { k } else { rng.gen_range(0..nv) };
        gates.push(GateSpec {
            id: format!("G{}", k + 1),
            arc: [format!("{lo}/{slot}"), format!("{hi}/{slot}")],
            vertex: format!("v{}", vertex + 1),
        });
    }
    let mut ends: Vec<(usize, usize)> = Vec::new();
    if rng.gen_ratio(4, 5) {
        ends.extend((1..nv).map(|v| (v - 1, v)));
    }
    let ne = rng.gen_range(ends.len()..=MAX_EDGES);
    while ends.len() < ne {
        ends.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    let edges = ends
        .iter()
        .enumerate()
        .map(|(i, (f, t))| EdgeSpec {
            id: format!("y{}", i + 1),
            from: format!("v{}", f + 1),
            to: format!("v{}", t + 1),
        })
        .collect();
    let spec = SurfaceSpec {
        gates,
        ygraph: GraphSpec {
            vertices: (1..=nv).map(|i| format!("v{i}")).collect(),
            edges,
        },
    };
    QuasiSurface::from_spec(&spec).expect("generated surfaces are valid")
}

pub fn verify(theorem: Theorem, cfg: &VerifyConfig) -> VerifyOutcome {
    let mut report = Report::new(theorem.name());
    let mut retries = 0;
    let mut nontrivial = 0;
    for i in 0..cfg.trials {
        let mut trial = Trial::new(cfg.seed, i);
        let r = match theorem {
            Theorem::Jacobi => jacobi_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::Cojacobi => cojacobi_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::Coboundary => coboundary_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::Bialgebra => bialgebra_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::BilinearPair => lemma22_trial(&mut trial.rng),
            Theorem::OmegaIndep => omega_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::Moves => moves_trial(&mut trial, cfg.flip_gate_sign),
            Theorem::Simple => simple_trial(&mut trial),
            Theorem::Structure => structure_trial(&mut trial, cfg.flip_gate_sign),
        };
        retries += trial.table.retries();
        nontrivial += r.nontrivial as usize;
        report.absorb(tag(r.report, &trial));
    }
    VerifyOutcome {
        theorem,
        seed: cfg.seed,
        trials: cfg.trials,
        retries,
        nontrivial,
        report,
    }
}

/// Prefixes the witness input with the trial and its surface.
fn tag(mut r: Report, trial: &Trial) -> Report {
    if let Some(w) = &mut r.witness {
        w.input = format!("trial {} on {}: {}", trial.index, trial.surface, w.input);
    }
    r
}

fn json2<R: Ring>(ring: &R, s: &QuasiSurface, t: &string_ops::Element2<R>) -> Value {
    t.to_json(ring, |(a, b)| format!("{} ⊗ {}", a.render(s), b.render(s)))
}

pub fn jacobi_trial(trial: &mut Trial, flip: bool) -> Checked {
    let alg = trial.algebra(Integers, flip);
    let (x, y, z) = (trial.word(), trial.word(), trial.word());
    let label = trial.label();
    let mu = alg.mu3();
    let nontrivial = mu.on_basis(&x, &y, &z) != mu.on_basis(&z, &y, &x);
    let report = check_quasi_lie_algebra(&alg.bracket(), &mu, &[(x, y, z)], &label);
    Checked { report, nontrivial }
}

pub fn cojacobi_trial(trial: &mut Trial, flip: bool) -> Checked {
    let alg = trial.algebra(Integers, flip);
    let mut keys = vec![trial.word()];
    keys.extend((0..3).map(|_| trial.word_with_chords(3)));
    let label = trial.label();
    let gamma = alg.gamma3();
    let nontrivial = keys.iter().any(|x| !antisym_e(&Integers, &gamma.on_basis(x)).is_zero());
    let report = check_quasi_lie_coalgebra(&alg.nu(), &gamma, &keys, &label);
    Checked { report, nontrivial }
}

/// `(ψ ⊗ ψ)(δ(ζ)(x ⊗ y)) = (ψ ⊗ ψ)(2·∂ν(x ⊗ y))`
pub fn coboundary_trial(trial: &mut Trial, flip: bool) -> Checked {
    let alg = trial.algebra(Integers, flip);
    let (x, y) = (trial.word(), trial.word());
    let s = trial.surface.clone();
    let ring = Integers;
    let dz = delta(&alg.zeta());
    let dnu = coboundary(&alg.bracket(), &alg.nu()).scaled(ring.from_int(2));
    let mut report = Report::new("coboundary");
    let mut nontrivial = false;
    for (p, q) in [(&x, &y), (&y, &x), (&x, &x)] {
        let lhs = project_quotient2::<Integers>(&dz.on_generator(p, q));
        let rhs = project_quotient2::<Integers>(&dnu.on_generator(p, q));
        nontrivial |= !lhs.is_zero();
        report.compare(
            "delta of the bi-endomorphism equals twice the coboundary of the cobracket, modulo the trivial class",
            || format!("{} ⊗ {}", p.render(&s), q.render(&s)),
            lhs == rhs,
            || (json2(&ring, &s, &lhs), json2(&ring, &s, &rhs)),
        );
    }
    Checked { report, nontrivial }
}

/// The quotient structure over the rationals, with `(1/4)(ζ∘)^eq`.
pub fn bialgebra_trial(trial: &mut Trial, flip: bool) -> Checked {
    let ring = Rationals;
    let alg = trial.algebra(ring.clone(), flip);
    let words: Vec<CyclicWord> = (0..3).map(|_| trial.nontrivial_word()).collect();
    let quarter = ring.parse("1/4").expect("rational literal");
    let b2 = quotient_bracket2(&alg.bracket());
    let b3 = quotient_bracket3(&alg.mu3());
    let nu = quotient_cobracket2(&alg.nu());
    let gamma = quotient_cobracket3(&alg.gamma3());
    let zeta = equivariantize(&quotient_bi(&alg.zeta())).scaled(quarter);
    let (x, y, z) = (words[0].clone(), words[1].clone(), words[2].clone());
    let triples = vec![(x.clone(), y.clone(), z.clone())];
    let pairs = vec![(x.clone(), y.clone()), (y.clone(), z.clone())];
    let label = trial.label();
    let nontrivial = !delta(&zeta).on_generator(&x, &y).is_zero();
    let report = check_quasi_lie_bialgebra(&b2, &b3, &nu, &gamma, &zeta, &triples, &words, &pairs, &label);
    Checked { report, nontrivial }
}

/// A random bilinear form of rank 3 to 5 with entries in `[−3, 3]`, checked
/// on every basis triple.
pub fn lemma22_trial(rng: &mut impl Rng) -> Checked {
    let rank = rng.gen_range(3..=5);
    let table: Vec<Vec<Vec<i64>>> = (0..rank)
        .map(|_| (0..rank).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect())
        .collect();
    let dot = bilinear_from_table(Integers, table);
    let (b2, b3) = pair_from_bilinear(&dot);
    let keys: Vec<usize> = (0..rank).collect();
    let label = |k: &usize| format!("e{k}");
    let b2 = b2.memoized();
    let nontrivial = !jacobiator(&b2).on_basis(&0, &1, &2).is_zero();
    let report = check_quasi_lie_algebra(&b2, &b3, &all_triples(&keys), &label);
    Checked { report, nontrivial }
}

/// `[−, −]_X` and `ν_X` agree for every gate orientation.
pub fn omega_trial(trial: &mut Trial, flip: bool) -> Checked {
    let (x, y) = (trial.word(), trial.word());
    let s = trial.surface.clone();
    let ring = Integers;
    let make = |omega: GateOrientation| {
        let mut or = Orientation::new(omega);
        or.flip_gate_sign = flip;
        LoopAlgebra::new(ring.clone(), Rc::clone(&trial.table), or)
    };
    let base = make(GateOrientation::counterclockwise(s.gate_count()));
    let (b0, n0) = (base.bracket().on_basis(&x, &y), base.nu().on_basis(&x));
    let mut report = Report::new("omega-indep");
    for omega in GateOrientation::all(s.gate_count()) {
        let bits = omega.bits();
        let alg = make(omega);
        let b = alg.bracket().on_basis(&x, &y);
        report.compare(
            "bracket is independent of the gate orientation",
            || format!("[{}, {}] with orientation {bits}", x.render(&s), y.render(&s)),
            b == b0,
            || (b0.to_json(&ring, |w| w.render(&s)), b.to_json(&ring, |w| w.render(&s))),
        );
        let n = alg.nu().on_basis(&x);
        report.compare(
            "cobracket is independent of the gate orientation",
            || format!("nu({}) with orientation {bits}", x.render(&s)),
            n == n0,
            || (json2(&ring, &s, &n0), json2(&ring, &s, &n)),
        );
    }
    Checked {
        nontrivial: !b0.is_zero() || !n0.is_zero(),
        report,
    }
}

/// Everything computed from a generic pair of loops, per gate where the
/// operation is a gate operation.
fn loop_values(s: &QuasiSurface, or: &Orientation, a: &GenericLoop, b: &GenericLoop) -> Vec<(String, Value)> {
    let r = Integers;
    let lab = |w: &CyclicWord| w.render(s);
    let mut out = vec![
        ("bracket_omega(a, b)".to_string(), bracket_omega(&r, or, a, b).expect("generic").to_json(&r, lab)),
        ("bracket_omega(b, a)".to_string(), bracket_omega(&r, or, b, a).expect("generic").to_json(&r, lab)),
        ("nu_omega(a)".to_string(), json2(&r, s, &nu_omega(&r, or, a).expect("generic"))),
    ];
    let list = |ws: &Vec<CyclicWord>| ws.iter().map(lab).collect::<Vec<_>>().join(" ⊗ ");
    for k in 0..s.gate_count() {
        let g = s.gate(k).id.clone();
        out.push((format!("mu1_{g}(a)"), gate_mu(&r, k, &[a]).to_json(&r, lab)));
        out.push((format!("mu2_{g}(a, b)"), gate_mu(&r, k, &[a, b]).to_json(&r, lab)));
        out.push((format!("mu3_{g}(a, b, a)"), gate_mu(&r, k, &[a, b, a]).to_json(&r, lab)));
        for m in 1..=3 {
            out.push((format!("gamma{m}_{g}(a)"), gate_gamma(&r, k, m, a).to_json(&r, list)));
        }
        out.push((format!("zeta_{g}(a, b)"), json2(&r, s, &gate_zeta(&r, k, a, b))));
        out.push((format!("zeta_{g}(b, a)"), json2(&r, s, &gate_zeta(&r, k, b, a))));
    }
    out
}

/// Every loop operation is unchanged when one input undergoes a random
/// sequence of moves.
pub fn moves_trial(trial: &mut Trial, flip: bool) -> Checked {
    let s = trial.surface.clone();
    let (x, y) = (trial.word(), trial.word());
    let mut or = Orientation::new(trial.omega());
    or.flip_gate_sign = flip;
    let fam = trial.table.fresh_family(&[&x, &y]).expect("generic family");
    let (mut a, b) = (fam[0].clone(), fam[1].clone());
    let before = loop_values(&s, &or, &a, &b);
    let mut alloc = trial.table.fresh_allocator();
    let mut applied = 0;
    while applied < MOVE_STEPS {
        let moved = random_move(&s, &a, &mut alloc, &mut trial.rng).expect("a move always applies");
        if check_family(&[&moved, &b]).is_ok() {
            a = moved;
            applied += 1;
        }
    }
    let after = loop_values(&s, &or, &a, &b);
    let nontrivial = before.iter().any(|(_, v)| v.as_object().is_some_and(|m| !m.is_empty()));
    let mut report = Report::new("moves");
    for ((name, v0), (_, v1)) in before.into_iter().zip(after) {
        report.compare(
            "invariance under moves",
            || format!("{name} with a = {}, b = {}", x.render(&s), y.render(&s)),
            v0 == v1,
            || (v0.clone(), v1.clone()),
        );
    }
    Checked { report, nontrivial }
}

/// `make_simple` removes every self-intersection and keeps the class.
pub fn simple_trial(trial: &mut Trial) -> Checked {
    let s = trial.surface.clone();
    let w = random_word(&s, &mut trial.rng, MAX_SIMPLE_CHORDS, 2 * MAX_WALK);
    let mut a = trial.table.fresh_family(&[&w]).expect("generic loop").remove(0);
    // a few moves tangle the representative, which starts out nearly simple
    let mut alloc = trial.table.fresh_allocator();
    for _ in 0..4 {
        let b = random_move(&s, &a, &mut alloc, &mut trial.rng).expect("a move always applies");
        if b.chord_count() <= MAX_SIMPLE_CHORDS && check_family(&[&b]).is_ok() {
            a = b;
        }
    }
    let mut report = Report::new("simple");
    let out = make_simple(&s, &a);
    let (simple, same) = match &out {
        Ok(r) => (r.result.self_intersections().map(|v| v.is_empty()).unwrap_or(false), r.result.class_of() == w),
        Err(_) => (false, false),
    };
    let shown = |r: &Result<crate::loops::Simplified, _>| match r {
        Ok(r) => r.result.to_json(&s),
        Err(e) => Value::String(format!("{e}")),
    };
    report.compare(
        "simplified loop has no self-intersections",
        || w.render(&s),
        simple,
        || (a.to_json(&s), shown(&out)),
    );
    report.compare(
        "simplified loop keeps its class",
        || w.render(&s),
        same,
        || (Value::String(w.render(&s)), shown(&out)),
    );
    Checked {
        nontrivial: a.crossing_count() > 0,
        report,
    }
}

/// Skew and cyclic symmetries, `γ¹ = 0`, the symmetry of `∂ν` and
/// `δ(ζ^eq) = 2δ(ζ)`.
pub fn structure_trial(trial: &mut Trial, flip: bool) -> Checked {
    let s = trial.surface.clone();
    let ring = Integers;
    let alg = trial.algebra(ring.clone(), flip);
    let (x, y, z) = (trial.word(), trial.word(), trial.word());
    let show = |w: &CyclicWord| w.render(&s);
    let mut report = Report::new("structure");
    let br = alg.bracket();

    let xx = br.on_basis(&x, &x);
    report.compare("[x, x] = 0", || show(&x), xx.is_zero(), || (xx.to_json(&ring, show), Value::Null));
    let (xy, yx) = (br.on_basis(&x, &y), br.on_basis(&y, &x).negate(&ring));
    report.compare(
        "[x, y] = −[y, x]",
        || format!("{}, {}", show(&x), show(&y)),
        xy == yx,
        || (xy.to_json(&ring, show), yx.to_json(&ring, show)),
    );

    let nu = alg.nu();
    let v = nu.on_basis(&x);
    let pv = permute(&ring, &v).negate(&ring);
    report.compare("P ∘ nu = −nu", || show(&x), v == pv, || (json2(&ring, &s, &v), json2(&ring, &s, &pv)));

    let mu = alg.mu3();
    let (m0, m1) = (mu.on_basis(&x, &y, &z), mu.on_basis(&y, &z, &x));
    report.compare(
        "mu3 is cyclically symmetric",
        || format!("{}, {}, {}", show(&x), show(&y), show(&z)),
        m0 == m1,
        || (m0.to_json(&ring, show), m1.to_json(&ring, show)),
    );
    let m2 = alg.mu(None, &[&x, &y]);
    let m2r = alg.mu(None, &[&y, &x]);
    report.compare(
        "mu2 is cyclically symmetric",
        || format!("{}, {}", show(&x), show(&y)),
        m2 == m2r,
        || (m2.to_json(&ring, show), m2r.to_json(&ring, show)),
    );

    let list = |ws: &Vec<CyclicWord>| ws.iter().map(show).collect::<Vec<_>>().join(" ⊗ ");
    for m in 2..=3 {
        let g = alg.gamma(None, m, &x);
        let rotated = g.map_keys(&ring, |v| {
            let mut v = v.clone();
            v.rotate_left(1);
            v
        });
        report.compare(
            "gamma_m is cyclically symmetric",
            || format!("m = {m}, {}", show(&x)),
            g == rotated,
            || (g.to_json(&ring, list), rotated.to_json(&ring, list)),
        );
    }
    let g1 = alg.gamma(None, 1, &x);
    report.compare("gamma1 = 0", || show(&x), g1.is_zero(), || (g1.to_json(&ring, list), Value::Null));

    // ∂ν on a skew input x⊗y − y⊗x
    let cob = coboundary(&br, &nu);
    let skew = |f: &BiEndomorphism<CyclicWord, Integers>| f.on_generator(&x, &y).minus(&ring, &f.on_generator(&y, &x));
    let d = skew(&cob);
    let pd = permute(&ring, &d).negate(&ring);
    let dp = skew(&cob.after_permute()).negate(&ring);
    report.compare(
        "P ∘ ∂nu = −∂nu on skew tensors",
        || format!("{} ∧ {}", show(&x), show(&y)),
        d == pd,
        || (json2(&ring, &s, &d), json2(&ring, &s, &pd)),
    );
    report.compare(
        "∂nu ∘ P = −∂nu on skew tensors",
        || format!("{} ∧ {}", show(&x), show(&y)),
        d == dp,
        || (json2(&ring, &s, &d), json2(&ring, &s, &dp)),
    );

    let zeta = alg.zeta();
    let lhs = delta(&equivariantize(&zeta)).on_generator(&x, &y);
    let rhs = delta(&zeta).scaled(ring.from_int(2)).on_generator(&x, &y);
    report.compare(
        "δ(ζ^eq) = 2δ(ζ)",
        || format!("{} ⊗ {}", show(&x), show(&y)),
        lhs == rhs,
        || (json2(&ring, &s, &lhs), json2(&ring, &s, &rhs)),
    );
    Checked {
        nontrivial: !xy.is_zero(),
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(t: Theorem, trials: usize, flip: bool) -> VerifyOutcome {
        verify(
            t,
            &VerifyConfig {
                seed: 7,
                trials,
                flip_gate_sign: flip,
            },
        )
    }

    #[test]
    fn random_surfaces_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = random_surface(&mut rng);
            assert!(s.gate_count() <= MAX_GATES);
            assert!(s.edges().len() <= MAX_EDGES);
        }
    }

    #[test]
    fn theorems_hold_on_a_few_trials() {
        for t in Theorem::ALL {
            let out = run(t, 6, false);
            assert!(out.report.passed, "{}: {:?}", t.name(), out.report.witness);
        }
    }

    #[test]
    fn flipped_gate_sign_is_caught() {
        let out = run(Theorem::OmegaIndep, 20, true);
        assert!(!out.report.passed);
        assert!(out.report.witness.is_some());
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.name()), Some(t));
        }
    }
}
