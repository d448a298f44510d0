//! Fresh coordinates, canonical representatives of classes, and the
//! registry that resolves basis keys to loops.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::surface::{Coord, Gate, QuasiSurface};

use super::generic::{check_family, Endpoint, GenericLoop, Leg};
use super::word::Letter;
use super::{CyclicWord, LoopError};

/// Hands out gate coordinates `lo + (hi − lo)·m/q` with `gcd(m, q) = 1` and
/// strictly increasing `q`, so no two values in one gate ever coincide.
#[derive(Clone, Debug)]
pub struct Allocator {
    next_den: u64,
    rng: ChaCha8Rng,
}

impl Allocator {
    pub fn new(seed: u64) -> Self {
        Self {
            next_den: 2,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn fresh(&mut self, gate: &Gate) -> Coord {
        let q = self.next_den;
        self.next_den += 1;
        let m = loop {
            let m = self.rng.gen_range(1..q);
            if m.gcd(&q) == 1 {
                break m;
            }
        };
        let t = Coord::new(BigInt::from(m), BigInt::from(q));
        &gate.lo + (&gate.hi - &gate.lo) * t
    }

    /// A fresh coordinate that also avoids the coordinates of `a`, which
    /// may come from elsewhere.
    pub fn fresh_for(&mut self, gate: &Gate, a: &GenericLoop) -> Coord {
        loop {
            let u = self.fresh(gate);
            if a.coordinates().all(|v| v != &u) {
                return u;
            }
        }
    }
}

/// A representative of a class, with fresh coordinates.
///
/// The word is rotated to start at a gate letter and read as maximal
/// patterns `g_a · g_b⁻¹` (chords) separated by runs of `Y` letters.
pub fn loop_from_word(s: &QuasiSurface, w: &CyclicWord, alloc: &mut Allocator) -> Result<GenericLoop, LoopError> {
    if !w.is_edge_cycle(s) {
        return Err(LoopError::NotAPath(w.render(s)));
    }
    let letters = w.letters();
    if letters.is_empty() {
        return Ok(GenericLoop::Constant);
    }
    let Some(start) = letters.iter().position(|l| s.is_gate_generator(l.gen) && !l.inverse) else {
        return Ok(GenericLoop::Graph(letters.to_vec()));
    };
    let rot: Vec<Letter> = letters[start..].iter().chain(&letters[..start]).copied().collect();
    let mut legs = Vec::new();
    let mut i = 0;
    while i < rot.len() {
        // the center has only star edges, so g_a is always followed by g_b⁻¹
        let (a, b) = (rot[i], rot[i + 1]);
        debug_assert!(!a.inverse && b.inverse && s.is_gate_generator(b.gen));
        i += 2;
        let mut path = Vec::new();
        while i < rot.len() && !s.is_gate_generator(rot[i].gen) {
            path.push(rot[i]);
            i += 1;
        }
        legs.push(Leg {
            enter: Endpoint::new(a.gen, alloc.fresh(s.gate(a.gen))),
            exit: Endpoint::new(b.gen, alloc.fresh(s.gate(b.gen))),
            path,
        });
    }
    let out = GenericLoop::Legs(legs);
    out.validate(s)?;
    Ok(out)
}

/// Append-only registry of class representatives.
///
/// Every evaluation asks for a fresh family: each call draws a new
/// allocator seed from the table's generator, so representatives never
/// share coordinates with loops built for other calls in the same family.
#[derive(Debug)]
pub struct ClassTable {
    surface: QuasiSurface,
    inner: RefCell<TableState>,
}

#[derive(Debug)]
struct TableState {
    reps: HashMap<CyclicWord, GenericLoop>,
    rng: ChaCha8Rng,
    retries: usize,
}

/// Attempts before a family with coincidences is reported.
const FAMILY_ATTEMPTS: usize = 16;

impl ClassTable {
    pub fn new(surface: QuasiSurface, seed: u64) -> Self {
        Self {
            surface,
            inner: RefCell::new(TableState {
                reps: HashMap::new(),
                rng: ChaCha8Rng::seed_from_u64(seed),
                retries: 0,
            }),
        }
    }

    pub fn surface(&self) -> &QuasiSurface {
        &self.surface
    }

    /// The stored representative of a class, creating it on first use.
    pub fn representative(&self, w: &CyclicWord) -> Result<GenericLoop, LoopError> {
        if let Some(r) = self.inner.borrow().reps.get(w) {
            return Ok(r.clone());
        }
        let seed = self.inner.borrow_mut().rng.gen();
        let rep = loop_from_word(&self.surface, w, &mut Allocator::new(seed))?;
        debug_assert_eq!(&rep.class_of(), w);
        self.inner.borrow_mut().reps.entry(w.clone()).or_insert(rep.clone());
        Ok(rep)
    }

    pub fn len(&self) -> usize {
        self.inner.borrow().reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total number of regenerated families over the table's lifetime.
    pub fn retries(&self) -> usize {
        self.inner.borrow().retries
    }

    pub fn fresh_allocator(&self) -> Allocator {
        Allocator::new(self.inner.borrow_mut().rng.gen())
    }

    /// Jointly generic representatives of the given classes.
    pub fn fresh_family(&self, words: &[&CyclicWord]) -> Result<Vec<GenericLoop>, LoopError> {
        let mut last = None;
        for _ in 0..FAMILY_ATTEMPTS {
            let mut alloc = self.fresh_allocator();
            let loops = words
                .iter()
                .map(|w| loop_from_word(&self.surface, w, &mut alloc))
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&GenericLoop> = loops.iter().collect();
            match check_family(&refs) {
                Ok(()) => {
                    for (w, l) in words.iter().zip(&loops) {
                        self.inner.borrow_mut().reps.entry((*w).clone()).or_insert_with(|| l.clone());
                    }
                    return Ok(loops);
                }
                Err(e) => {
                    self.inner.borrow_mut().retries += 1;
                    last = Some(e);
                }
            }
        }
        Err(LoopError::Geometry(last.expect("at least one attempt")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::fixture;

    #[test]
    fn allocator_never_repeats_within_a_gate() {
        let s = fixture();
        let mut a = Allocator::new(3);
        let values: Vec<Coord> = (0..200).map(|_| a.fresh(s.gate(1))).collect();
        let mut sorted = values.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), values.len());
        assert!(values.iter().all(|u| s.gate(1).contains(u)));
    }

    #[test]
    fn loop_from_word_examples() {
        let s = fixture();
        let mut alloc = Allocator::new(1);
        let w = CyclicWord::parse(&s, "g1.g2^-1.y1^-1").unwrap();
        let a = loop_from_word(&s, &w, &mut alloc).unwrap();
        assert_eq!(a.chord_count(), 1);
        assert_eq!(a.legs()[0].path.len(), 1);
        assert_eq!(a.class_of(), w);

        let y = CyclicWord::parse(&s, "y1.y2.y2^-1.y1^-1").unwrap();
        assert!(y.is_identity());
        let e = loop_from_word(&s, &y, &mut alloc).unwrap();
        assert_eq!(e, GenericLoop::Constant);

        let two = CyclicWord::parse(&s, "g1.g2^-1.y1^-1.g1.g3^-1.y2^-1.y1^-1").unwrap();
        let b = loop_from_word(&s, &two, &mut alloc).unwrap();
        assert_eq!(b.chord_count(), 2);
        assert_eq!(b.class_of(), two);
    }

    #[test]
    fn pure_graph_words_have_no_chords() {
        use crate::surface::{EdgeSpec, GateSpec, GraphSpec, SurfaceSpec};
        let s = QuasiSurface::from_spec(&SurfaceSpec {
            gates: vec![GateSpec {
                id: "G1".into(),
                arc: ["1/10".into(), "1/5".into()],
                vertex: "v".into(),
            }],
            ygraph: GraphSpec {
                vertices: vec!["v".into()],
                edges: vec![EdgeSpec {
                    id: "y".into(),
                    from: "v".into(),
                    to: "v".into(),
                }],
            },
        })
        .unwrap();
        let w = CyclicWord::parse(&s, "y.y").unwrap();
        let a = loop_from_word(&s, &w, &mut Allocator::new(0)).unwrap();
        assert!(matches!(a, GenericLoop::Graph(_)));
        assert!(a.crossings().is_empty());
        assert_eq!(a.class_of(), w);
    }

    #[test]
    fn table_round_trips_classes() {
        let s = fixture();
        let t = ClassTable::new(s.clone(), 9);
        let w = CyclicWord::parse(&s, "g1.g2^-1.y1^-1").unwrap();
        let rep = t.representative(&w).unwrap();
        assert_eq!(rep.class_of(), w);
        assert_eq!(t.representative(&w).unwrap(), rep);
        let fam = t.fresh_family(&[&w, &w, &w.power(2)]).unwrap();
        assert!(fam.iter().zip([&w, &w, &w.power(2)]).all(|(l, c)| &l.class_of() == c));
        assert!(check_family(&fam.iter().collect::<Vec<_>>()).is_ok());
        assert!(loop_from_word(&s, &CyclicWord::from_letters(&[Letter::pos(0)]), &mut Allocator::new(0)).is_err());
    }
}
