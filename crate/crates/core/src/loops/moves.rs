//! Elementary homotopies of generic loops. Every move preserves the class.
//!
//! Moves that introduce coordinates reject values already used by the loop;
//! callers that need genericity relative to other loops draw coordinates
//! from a shared [`Allocator`](super::Allocator).

use rand::Rng;

use crate::surface::{Coord, QuasiSurface};

use super::generic::{Endpoint, GenericLoop, Leg};
use super::word::Letter;
use super::{Allocator, LoopError};

/// Which end of a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Enter,
    Exit,
}

fn check(s: &QuasiSurface, out: GenericLoop) -> Result<GenericLoop, LoopError> {
    out.validate(s)?;
    Ok(out)
}

fn legs_of(a: &GenericLoop) -> Result<Vec<Leg>, LoopError> {
    match a {
        GenericLoop::Legs(l) => Ok(l.clone()),
        _ => Err(LoopError::MoveMismatch("the loop has no chords".into())),
    }
}

/// Moves one chord endpoint to a new coordinate in the same gate.
pub fn slide(s: &QuasiSurface, a: &GenericLoop, leg: usize, end: End, u: Coord) -> Result<GenericLoop, LoopError> {
    let mut legs = legs_of(a)?;
    let l = legs
        .get_mut(leg)
        .ok_or_else(|| LoopError::MoveMismatch(format!("no leg {leg}")))?;
    match end {
        End::Enter => l.enter.u = u,
        End::Exit => l.exit.u = u,
    }
    check(s, GenericLoop::Legs(legs))
}

/// Pushes chord `leg` across gate `gate`: the chord `k₁ → k₂` becomes
/// `k₁ → gate` at `u1`, an empty ypath, and `gate → k₂` from `u2`.
pub fn finger_insert_chord(
    s: &QuasiSurface,
    a: &GenericLoop,
    leg: usize,
    gate: usize,
    u1: Coord,
    u2: Coord,
) -> Result<GenericLoop, LoopError> {
    let mut legs = legs_of(a)?;
    if leg >= legs.len() {
        return Err(LoopError::MoveMismatch(format!("no leg {leg}")));
    }
    let old = legs[leg].clone();
    legs[leg] = Leg {
        enter: old.enter,
        exit: Endpoint::new(gate, u1),
        path: Vec::new(),
    };
    legs.insert(
        leg + 1,
        Leg {
            enter: Endpoint::new(gate, u2),
            exit: old.exit,
            path: old.path,
        },
    );
    check(s, GenericLoop::Legs(legs))
}

/// Pushes a point of a ypath into the disk through `gate`, adding the
/// excursion chord `gate → gate` from `u1` to `u2`.
///
/// `at` indexes the vertices along the ypath of `leg` (0 is the vertex of the
/// exit gate). For a graph loop `leg` is ignored and `at` indexes its path.
/// The constant loop becomes a single excursion.
pub fn finger_insert_path(
    s: &QuasiSurface,
    a: &GenericLoop,
    leg: usize,
    at: usize,
    gate: usize,
    u1: Coord,
    u2: Coord,
) -> Result<GenericLoop, LoopError> {
    let excursion = |path: Vec<Letter>| Leg {
        enter: Endpoint::new(gate, u1.clone()),
        exit: Endpoint::new(gate, u2.clone()),
        path,
    };
    let out = match a {
        GenericLoop::Constant => GenericLoop::Legs(vec![excursion(Vec::new())]),
        GenericLoop::Graph(p) => {
            if at > p.len() {
                return Err(LoopError::MoveMismatch(format!("no vertex {at} on the path")));
            }
            let mut path = p[at..].to_vec();
            path.extend_from_slice(&p[..at]);
            GenericLoop::Legs(vec![excursion(path)])
        }
        GenericLoop::Legs(legs) => {
            let mut legs = legs.clone();
            let l = legs
                .get_mut(leg)
                .ok_or_else(|| LoopError::MoveMismatch(format!("no leg {leg}")))?;
            if at > l.path.len() {
                return Err(LoopError::MoveMismatch(format!("no vertex {at} on the ypath")));
            }
            let tail = l.path.split_off(at);
            legs.insert(leg + 1, excursion(tail));
            GenericLoop::Legs(legs)
        }
    };
    check(s, out)
}

/// Inverse of [`finger_insert_chord`]: merges leg `leg` with the next one
/// when the ypath between them is empty.
pub fn finger_remove_chord(s: &QuasiSurface, a: &GenericLoop, leg: usize) -> Result<GenericLoop, LoopError> {
    let mut legs = legs_of(a)?;
    let n = legs.len();
    if n < 2 || leg >= n || !legs[leg].path.is_empty() || legs[leg].exit.gate != legs[(leg + 1) % n].enter.gate {
        return Err(LoopError::MoveMismatch("no finger to remove at this leg".into()));
    }
    let next = legs[(leg + 1) % n].clone();
    legs[leg].exit = next.exit;
    legs[leg].path = next.path;
    legs.remove((leg + 1) % n);
    check(s, GenericLoop::Legs(legs))
}

/// Inverse of [`finger_insert_path`]: removes the excursion chord `leg`
/// whose two ends lie on one gate.
pub fn finger_remove_path(s: &QuasiSurface, a: &GenericLoop, leg: usize) -> Result<GenericLoop, LoopError> {
    let mut legs = legs_of(a)?;
    let n = legs.len();
    if leg >= n || legs[leg].enter.gate != legs[leg].exit.gate {
        return Err(LoopError::MoveMismatch("leg is not an excursion".into()));
    }
    let removed = legs.remove(leg);
    if legs.is_empty() {
        return check(
            s,
            if removed.path.is_empty() {
                GenericLoop::Constant
            } else {
                GenericLoop::Graph(removed.path)
            },
        );
    }
    let prev = (leg + n - 1) % n;
    let prev = if prev > leg { prev - 1 } else { prev };
    legs[prev].path.extend(removed.path);
    check(s, GenericLoop::Legs(legs))
}

/// Inserts `e·e⁻¹` into a ypath (or a graph loop) at vertex `at`.
pub fn y_insert_cancel_pair(
    s: &QuasiSurface,
    a: &GenericLoop,
    leg: usize,
    at: usize,
    letter: Letter,
) -> Result<GenericLoop, LoopError> {
    if s.is_gate_generator(letter.gen) {
        return Err(LoopError::MoveMismatch("only edges of Y can be inserted".into()));
    }
    let insert = |path: &mut Vec<Letter>| -> Result<(), LoopError> {
        if at > path.len() {
            return Err(LoopError::MoveMismatch(format!("no vertex {at} on the path")));
        }
        path.splice(at..at, [letter, letter.inv()]);
        Ok(())
    };
    let out = match a {
        GenericLoop::Constant => return Err(LoopError::MoveMismatch("the constant loop has no path".into())),
        GenericLoop::Graph(p) => {
            let mut p = p.clone();
            insert(&mut p)?;
            GenericLoop::Graph(p)
        }
        GenericLoop::Legs(legs) => {
            let mut legs = legs.clone();
            let l = legs
                .get_mut(leg)
                .ok_or_else(|| LoopError::MoveMismatch(format!("no leg {leg}")))?;
            insert(&mut l.path)?;
            GenericLoop::Legs(legs)
        }
    };
    check(s, out)
}

/// Changes the starting leg; the loop is unchanged as a cyclic object.
pub fn rotate_strands(a: &GenericLoop, by: usize) -> GenericLoop {
    match a {
        GenericLoop::Legs(legs) => {
            let mut legs = legs.clone();
            let n = legs.len();
            legs.rotate_left(by % n);
            GenericLoop::Legs(legs)
        }
        GenericLoop::Graph(p) => {
            let mut p = p.clone();
            let n = p.len();
            p.rotate_left(by % n);
            GenericLoop::Graph(p)
        }
        GenericLoop::Constant => GenericLoop::Constant,
    }
}

/// Node of `G` at vertex position `at` along a path starting at `start`.
fn vertex_along(s: &QuasiSurface, start: usize, path: &[Letter], at: usize) -> usize {
    if at == 0 {
        start
    } else {
        path[at - 1].ends(s).1
    }
}

/// Applies one random applicable move, drawing new coordinates from `alloc`.
pub fn random_move(
    s: &QuasiSurface,
    a: &GenericLoop,
    alloc: &mut Allocator,
    rng: &mut impl Rng,
) -> Result<GenericLoop, LoopError> {
    let n_gates = s.gate_count();
    let edges: Vec<usize> = (n_gates..s.generator_count()).collect();
    for _ in 0..32 {
        let legs = a.legs();
        let out = match rng.gen_range(0..6) {
            0 if !legs.is_empty() => {
                let i = rng.gen_range(0..legs.len());
                let end = if rng.gen_bool(0.5) { End::Enter } else { End::Exit };
                let gate = match end {
                    End::Enter => legs[i].enter.gate,
                    End::Exit => legs[i].exit.gate,
                };
                slide(s, a, i, end, alloc.fresh_for(s.gate(gate), a))
            }
            1 if !legs.is_empty() => {
                let i = rng.gen_range(0..legs.len());
                let k = rng.gen_range(0..n_gates);
                let (u1, u2) = (alloc.fresh_for(s.gate(k), a), alloc.fresh_for(s.gate(k), a));
                finger_insert_chord(s, a, i, k, u1, u2)
            }
            2 => {
                // push a vertex of a ypath that is some gate's vertex into the disk
                let (leg, start, path) = match a {
                    GenericLoop::Constant => (0, None, Vec::new()),
                    GenericLoop::Graph(p) => (0, Some(p[0].ends(s).0), p.clone()),
                    GenericLoop::Legs(l) => {
                        let i = rng.gen_range(0..l.len());
                        (i, Some(s.gate(l[i].exit.gate).vertex), l[i].path.clone())
                    }
                };
                let at = rng.gen_range(0..=path.len());
                let candidates: Vec<usize> = match start {
                    None => (0..n_gates).collect(),
                    Some(v0) => {
                        let v = vertex_along(s, v0, &path, at);
                        (0..n_gates).filter(|&k| s.gate(k).vertex == v).collect()
                    }
                };
                if candidates.is_empty() {
                    continue;
                }
                let k = candidates[rng.gen_range(0..candidates.len())];
                let (u1, u2) = (alloc.fresh_for(s.gate(k), a), alloc.fresh_for(s.gate(k), a));
                finger_insert_path(s, a, leg, at, k, u1, u2)
            }
            3 if !edges.is_empty() && !matches!(a, GenericLoop::Constant) => {
                let (leg, start, path) = match a {
                    GenericLoop::Graph(p) => (0, p[0].ends(s).0, p.clone()),
                    GenericLoop::Legs(l) => {
                        let i = rng.gen_range(0..l.len());
                        (i, s.gate(l[i].exit.gate).vertex, l[i].path.clone())
                    }
                    GenericLoop::Constant => unreachable!(),
                };
                let at = rng.gen_range(0..=path.len());
                let v = vertex_along(s, start, &path, at);
                let options: Vec<Letter> = edges
                    .iter()
                    .flat_map(|&e| [Letter::pos(e), Letter::neg(e)])
                    .filter(|l| l.ends(s).0 == v)
                    .collect();
                if options.is_empty() {
                    continue;
                }
                let l = options[rng.gen_range(0..options.len())];
                y_insert_cancel_pair(s, a, leg, at, l)
            }
            4 if legs.len() > 1 => {
                let i = rng.gen_range(0..legs.len());
                finger_remove_chord(s, a, i).or_else(|_| finger_remove_path(s, a, i))
            }
            5 if !legs.is_empty() => Ok(rotate_strands(a, rng.gen_range(0..legs.len()))),
            _ => continue,
        };
        match out {
            Ok(b) => return Ok(b),
            Err(LoopError::MoveMismatch(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(a.clone())
}
