//! Deforming a loop into one without self-intersections in the disk.
//!
//! Every chord is first cut into hops between circularly adjacent gates by
//! finger moves, always travelling counterclockwise. Hops of one gap are
//! then placed in nested order and excursions (chords returning to their
//! gate) as adjacent pairs in the middle of the gate, which leaves no two
//! chords interleaved. The result is checked exactly; should a crossing
//! survive, branches are pushed across gates one crossing at a time.

use num_bigint::BigInt;

use crate::surface::{interleaved, realize, Coord, Point, QuasiSurface};

use super::generic::{GenericLoop, Leg};
use super::moves::finger_insert_chord;
use super::{Allocator, LoopError};

/// Output of [`make_simple`].
#[derive(Clone, Debug, PartialEq)]
pub struct Simplified {
    pub result: GenericLoop,
    /// Number of elementary moves (finger insertions and endpoint slides).
    pub moves: usize,
}

pub fn make_simple(s: &QuasiSurface, a: &GenericLoop) -> Result<Simplified, LoopError> {
    a.validate(s)?;
    if a.is_simple() {
        return Ok(Simplified {
            result: a.clone(),
            moves: 0,
        });
    }
    let (hopped, fingers) = split_into_hops(s, a)?;
    let (placed, slides) = nested_placement(s, &hopped)?;
    let mut moves = fingers + slides;
    let result = if placed.is_simple() {
        placed
    } else {
        let (pushed, extra) = simplify_by_pushing(s, &placed)?;
        moves += extra;
        pushed
    };
    debug_assert_eq!(result.class_of(), a.class_of());
    Ok(Simplified { result, moves })
}

/// Replaces every chord between distinct gates by counterclockwise hops.
fn split_into_hops(s: &QuasiSurface, a: &GenericLoop) -> Result<(GenericLoop, usize), LoopError> {
    let n = s.gate_count();
    let mut alloc = Allocator::new(0x5eed);
    let mut cur = a.clone();
    let mut moves = 0;
    let mut i = 0;
    while i < cur.chord_count() {
        let leg = &cur.legs()[i];
        let (from, to) = (leg.enter.gate, leg.exit.gate);
        if from != to && (from + 1) % n != to {
            let mid = (from + 1) % n;
            let (u1, u2) = (alloc.fresh_for(s.gate(mid), &cur), alloc.fresh_for(s.gate(mid), &cur));
            cur = finger_insert_chord(s, &cur, i, mid, u1, u2)?;
            moves += 1;
        }
        i += 1;
    }
    Ok((cur, moves))
}

#[derive(Clone, Copy)]
enum Slot {
    Enter(usize),
    Exit(usize),
}

/// Assigns nested coordinates to hop and excursion endpoints.
fn nested_placement(s: &QuasiSurface, a: &GenericLoop) -> Result<(GenericLoop, usize), LoopError> {
    let n = s.gate_count();
    let legs = a.legs();
    // per gate: arrivals, excursion pairs, departures
    let mut arrivals: Vec<Vec<Slot>> = vec![Vec::new(); n];
    let mut turns: Vec<Vec<Slot>> = vec![Vec::new(); n];
    let mut departures: Vec<Vec<Slot>> = vec![Vec::new(); n];
    for (i, leg) in legs.iter().enumerate() {
        let (g, h) = (leg.enter.gate, leg.exit.gate);
        if g == h {
            turns[g].push(Slot::Enter(i));
            turns[g].push(Slot::Exit(i));
        } else {
            departures[g].push(Slot::Enter(i));
            arrivals[h].push(Slot::Exit(i));
        }
    }
    // the r-th departure (ascending) pairs with the r-th arrival from the top
    for list in &mut arrivals {
        list.reverse();
    }
    let mut out: Vec<Leg> = legs.to_vec();
    let mut slides = 0;
    for g in 0..n {
        let slots: Vec<Slot> = arrivals[g].iter().chain(&turns[g]).chain(&departures[g]).copied().collect();
        let gate = s.gate(g);
        let den = Coord::from_integer(BigInt::from(slots.len() as u64 + 1));
        for (k, slot) in slots.iter().enumerate() {
            let u = &gate.lo + (&gate.hi - &gate.lo) * Coord::from_integer(BigInt::from(k as u64 + 1)) / &den;
            let target = match *slot {
                Slot::Enter(i) => &mut out[i].enter.u,
                Slot::Exit(i) => &mut out[i].exit.u,
            };
            if *target != u {
                *target = u;
                slides += 1;
            }
        }
    }
    let placed = GenericLoop::Legs(out);
    placed.validate(s)?;
    Ok((placed, slides))
}

/// Parameter along `p → q` of its intersection with the line `c → d`.
fn intersection_parameter(p: &Point, q: &Point, c: &Point, d: &Point) -> Coord {
    let cross = |ax: &Coord, ay: &Coord, bx: &Coord, by: &Coord| ax * by - ay * bx;
    let (rx, ry) = (&q.x - &p.x, &q.y - &p.y);
    let (sx, sy) = (&d.x - &c.x, &d.y - &c.y);
    let (wx, wy) = (&c.x - &p.x, &c.y - &p.y);
    cross(&wx, &wy, &sx, &sy) / cross(&rx, &ry, &sx, &sy)
}

/// Removes crossings one at a time: for the crossing of chord `i` nearest
/// its exit point `p`, the branch `j` through it is pushed across the gate
/// at `p`, with the two new points placed on either side of `p`.
pub fn simplify_by_pushing(s: &QuasiSurface, a: &GenericLoop) -> Result<(GenericLoop, usize), LoopError> {
    let mut cur = a.clone();
    let n0 = cur.chord_count() + cur.crossing_count();
    let bound = 4 * n0 * n0 + 16;
    let mut moves = 0;
    while !cur.is_simple() {
        if moves >= bound {
            return Err(LoopError::IterationBound(bound));
        }
        cur = push_once(s, &cur)?;
        moves += 1;
    }
    Ok((cur, moves))
}

fn push_once(s: &QuasiSurface, a: &GenericLoop) -> Result<GenericLoop, LoopError> {
    let legs = a.legs();
    let before = a.crossing_count();
    let mut best: Option<(usize, GenericLoop)> = None;
    for i in 0..legs.len() {
        let (p, q) = (realize(&legs[i].enter.u)?, realize(&legs[i].exit.u)?);
        // the crossing on chord i closest to its exit
        let mut nearest: Option<(Coord, usize)> = None;
        for (j, other) in legs.iter().enumerate() {
            if j == i || !interleaved((&legs[i].enter.u, &legs[i].exit.u), (&other.enter.u, &other.exit.u)) {
                continue;
            }
            let (c, d) = (realize(&other.enter.u)?, realize(&other.exit.u)?);
            let t = intersection_parameter(&p, &q, &c, &d);
            if nearest.as_ref().map_or(true, |(bt, _)| &t > bt) {
                nearest = Some((t, j));
            }
        }
        let Some((_, j)) = nearest else { continue };
        let gate_ix = legs[i].exit.gate;
        let gate = s.gate(gate_ix);
        let x = &legs[i].exit.u;
        let mut below = gate.lo.clone();
        let mut above = gate.hi.clone();
        for u in a.coordinates() {
            if u < x && u > &below {
                below = u.clone();
            }
            if u > x && u < &above {
                above = u.clone();
            }
        }
        let three = Coord::from_integer(BigInt::from(3));
        let lo = x - (x - &below) / &three;
        let hi = x + (&above - x) / &three;
        for (u1, u2) in [(lo.clone(), hi.clone()), (hi.clone(), lo.clone())] {
            let candidate = finger_insert_chord(s, a, j, gate_ix, u1, u2)?;
            let c = candidate.crossing_count();
            if c < before && best.as_ref().map_or(true, |(bc, _)| c < *bc) {
                best = Some((c, candidate));
            }
        }
    }
    match best {
        Some((_, b)) => Ok(b),
        None => Err(LoopError::IterationBound(0)),
    }
}

/// Whether some placement of the given coordinate multiset in the loop's
/// gates is crossing-free; exhaustive over orderings within each gate.
pub fn exists_simple_placement(s: &QuasiSurface, a: &GenericLoop) -> bool {
    let legs = a.legs();
    let n = s.gate_count();
    let mut per_gate: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (i, l) in legs.iter().enumerate() {
        per_gate[l.enter.gate].push((i, true));
        per_gate[l.exit.gate].push((i, false));
    }
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for at in 0..=p.len() {
                let mut q = p.clone();
                q.insert(at, k - 1);
                out.push(q);
            }
        }
        out
    }
    let choices: Vec<Vec<Vec<usize>>> = per_gate.iter().map(|g| permutations(g.len())).collect();
    let mut idx = vec![0usize; n];
    loop {
        let mut out = legs.to_vec();
        for g in 0..n {
            let gate = s.gate(g);
            let m = per_gate[g].len();
            let den = Coord::from_integer(BigInt::from(m as u64 + 1));
            for (rank, &slot) in choices[g][idx[g]].iter().enumerate() {
                let u = &gate.lo + (&gate.hi - &gate.lo) * Coord::from_integer(BigInt::from(rank as u64 + 1)) / &den;
                let (leg, enter) = per_gate[g][slot];
                if enter {
                    out[leg].enter.u = u;
                } else {
                    out[leg].exit.u = u;
                }
            }
        }
        if GenericLoop::Legs(out).is_simple() {
            return true;
        }
        let mut g = 0;
        loop {
            if g == n {
                return false;
            }
            idx[g] += 1;
            if idx[g] < choices[g].len() {
                break;
            }
            idx[g] = 0;
            g += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::moves::random_move;
    use crate::loops::{loop_from_word, random_word};
    use crate::surface::{GateSpec, GraphSpec, SurfaceSpec};
    use crate::testing::{fixture, legs, one_chord, squared};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn four_gates() -> QuasiSurface {
        let gate = |id: &str, lo: &str, hi: &str| GateSpec {
            id: id.into(),
            arc: [lo.into(), hi.into()],
            vertex: "v".into(),
        };
        QuasiSurface::from_spec(&SurfaceSpec {
            gates: vec![
                gate("G1", "1/10", "1/5"),
                gate("G2", "3/10", "2/5"),
                gate("G3", "1/2", "3/5"),
                gate("G4", "7/10", "4/5"),
            ],
            ygraph: GraphSpec {
                vertices: vec!["v".into()],
                edges: vec![],
            },
        })
        .unwrap()
    }

    #[test]
    fn simple_loops_are_returned_unchanged() {
        let s = fixture();
        let a = one_chord(&s, "0.12", "0.45");
        let out = make_simple(&s, &a).unwrap();
        assert_eq!(out.result, a);
        assert_eq!(out.moves, 0);
    }

    #[test]
    fn squared_loop_becomes_simple() {
        let s = fixture();
        let a = squared(&s);
        let out = make_simple(&s, &a).unwrap();
        assert!(out.result.is_simple());
        assert!(out.result.self_intersections().unwrap().is_empty());
        assert_eq!(out.result.class_of(), a.class_of());
        // oracle: the nested placement of the two parallel chords
        assert!(exists_simple_placement(&s, &a));
    }

    #[test]
    fn forced_crossing_needs_a_finger() {
        let s = four_gates();
        let a = legs(&s, &[("G1", "0.15", "G3", "0.55", ""), ("G2", "0.35", "G4", "0.75", "")]);
        assert_eq!(a.crossing_count(), 1);
        assert!(!exists_simple_placement(&s, &a));
        let fingered = finger_insert_chord(&s, &a, 0, 1, q("0.32"), q("0.38")).unwrap();
        assert!(exists_simple_placement(&s, &fingered));
        let out = make_simple(&s, &a).unwrap();
        assert!(out.result.is_simple());
        assert_eq!(out.result.class_of(), a.class_of());
        assert!(out.result.chord_count() > a.chord_count());
    }

    #[test]
    fn pushing_removes_the_crossing_of_the_squared_loop() {
        let s = fixture();
        let a = squared(&s);
        let (b, moves) = simplify_by_pushing(&s, &a).unwrap();
        assert!(b.is_simple());
        assert_eq!(moves, 1);
        assert_eq!(b.class_of(), a.class_of());
    }

    #[test]
    fn random_loops_become_simple() {
        let s = fixture();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 40 {
            let w = random_word(&s, &mut rng, 4, 10);
            let mut alloc = Allocator::new(rng.gen());
            let mut a = loop_from_word(&s, &w, &mut alloc).unwrap();
            for _ in 0..3 {
                let b = random_move(&s, &a, &mut alloc, &mut rng).unwrap();
                if b.chord_count() <= 6 {
                    a = b;
                }
            }
            let out = make_simple(&s, &a).unwrap();
            assert!(out.result.is_simple());
            assert_eq!(out.result.class_of(), w);
            done += 1;
        }
    }

    fn q(s: &str) -> Coord {
        crate::algebra::parse_rational(s).unwrap()
    }
}
