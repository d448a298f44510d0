//! Generic loops: cyclic sequences of disk chords and edge paths in `Y`.

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational};
use crate::surface::{
    check_no_triple_points, crossing_sign, distinct_coordinates, Coord, GeometryError, QuasiSurface, RealizedChord,
};

use super::word::{format_letters, free_reduce, path_ends, Letter};
use super::{CyclicWord, LoopError};

/// A point of a gate arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub gate: usize,
    pub u: Coord,
}

impl Endpoint {
    pub fn new(gate: usize, u: Coord) -> Self {
        Self { gate, u }
    }
}

/// A chord through the disk followed by the edge path in `Y` leading from
/// the exit gate's vertex to the vertex of the next chord's entry gate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leg {
    pub enter: Endpoint,
    pub exit: Endpoint,
    pub path: Vec<Letter>,
}

/// A loop in general position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenericLoop {
    /// The constant loop, representing the trivial class.
    Constant,
    /// A closed nonempty edge path in `Y` that never enters the disk.
    Graph(Vec<Letter>),
    /// A nonempty cyclic sequence of legs.
    Legs(Vec<Leg>),
}

/// Where a loop is cut: at the entry, middle or exit of a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub leg: usize,
    pub stage: Stage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Entry,
    Middle,
    Exit,
}

impl Cut {
    pub fn new(leg: usize, stage: Stage) -> Self {
        Self { leg, stage }
    }
}

/// A transversal crossing of a loop with a gate.
#[derive(Clone, Debug, PartialEq)]
pub struct GatePoint {
    pub gate: usize,
    pub u: Coord,
    /// `+1` entering the disk, `−1` leaving it.
    pub sign: i8,
    pub cut: Cut,
}

/// A self-intersection of a loop inside the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfIntersection {
    /// The two chords through the point, in loop order.
    pub legs: (usize, usize),
    /// The halves `(a¹, a²)` based at the point, numbered so that the pair of
    /// tangent directions `(v¹, v²)` is positively oriented.
    pub halves: (Vec<Letter>, Vec<Letter>),
}

/// A crossing of a chord of one loop with a chord of another.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskCrossing {
    pub legs: (usize, usize),
    pub sign: i8,
}

/// The unreduced word of a loop with the positions of its cuts.
///
/// Leg `i` contributes `g_k · g_{k'}⁻¹ · path` starting at `offsets[i]`;
/// its entry, middle and exit cuts sit before, between and after the two
/// gate letters.
#[derive(Clone, Debug)]
pub struct Layout {
    letters: Vec<Letter>,
    offsets: Vec<usize>,
}

impl Layout {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn position(&self, c: Cut) -> usize {
        self.offsets[c.leg]
            + match c.stage {
                Stage::Entry => 0,
                Stage::Middle => 1,
                Stage::Exit => 2,
            }
    }

    /// The loop read from `c` once around, freely reduced.
    pub fn based(&self, c: Cut) -> Vec<Letter> {
        let p = self.position(c);
        let rot: Vec<Letter> = self.letters[p..].iter().chain(&self.letters[..p]).copied().collect();
        free_reduce(&rot)
    }

    /// The letters traversed from `from` to `to` along the loop, freely
    /// reduced. Equal cuts give the whole loop.
    pub fn between(&self, from: Cut, to: Cut) -> Vec<Letter> {
        if from == to {
            return self.based(from);
        }
        let (p, q) = (self.position(from), self.position(to));
        let raw: Vec<Letter> = if from < to {
            self.letters[p..q].to_vec()
        } else {
            self.letters[p..].iter().chain(&self.letters[..q]).copied().collect()
        };
        free_reduce(&raw)
    }
}

/// JSON form of a loop.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LoopSpec {
    pub strands: Vec<StrandSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum StrandSpec {
    Chord { enter: PointSpec, exit: PointSpec },
    Ypath(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointSpec {
    pub gate: String,
    pub u: String,
}

fn endpoint_from_spec(s: &QuasiSurface, p: &PointSpec) -> Result<Endpoint, LoopError> {
    let gate = s
        .gate_index(&p.gate)
        .ok_or_else(|| LoopError::Malformed(format!("unknown gate {:?}", p.gate)))?;
    let u = parse_rational(&p.u).ok_or_else(|| LoopError::Malformed(format!("unparsable coordinate {:?}", p.u)))?;
    Ok(Endpoint::new(gate, u))
}

fn path_from_spec(s: &QuasiSurface, letters: &[String]) -> Result<Vec<Letter>, LoopError> {
    let path = letters.iter().map(|t| Letter::parse(s, t)).collect::<Result<Vec<_>, _>>()?;
    if path.iter().any(|l| s.is_gate_generator(l.gen)) {
        return Err(LoopError::Malformed("a ypath may only use edges of Y".into()));
    }
    Ok(path)
}

impl GenericLoop {
    pub fn from_spec(s: &QuasiSurface, spec: &LoopSpec) -> Result<Self, LoopError> {
        let strands = &spec.strands;
        let out = match strands.as_slice() {
            [] => GenericLoop::Constant,
            [StrandSpec::Ypath(p)] if p.is_empty() => GenericLoop::Constant,
            [StrandSpec::Ypath(p)] => GenericLoop::Graph(path_from_spec(s, p)?),
            _ => {
                let mut strands = strands.clone();
                if matches!(strands[0], StrandSpec::Ypath(_)) {
                    strands.rotate_left(1);
                }
                if strands.len() % 2 != 0 {
                    return Err(LoopError::Malformed("chords and ypaths must alternate".into()));
                }
                let mut legs = Vec::new();
                for pair in strands.chunks(2) {
                    match pair {
                        [StrandSpec::Chord { enter, exit }, StrandSpec::Ypath(p)] => legs.push(Leg {
                            enter: endpoint_from_spec(s, enter)?,
                            exit: endpoint_from_spec(s, exit)?,
                            path: path_from_spec(s, p)?,
                        }),
                        _ => return Err(LoopError::Malformed("chords and ypaths must alternate".into())),
                    }
                }
                GenericLoop::Legs(legs)
            }
        };
        out.validate(s)?;
        Ok(out)
    }

    pub fn to_spec(&self, s: &QuasiSurface) -> LoopSpec {
        let point = |e: &Endpoint| PointSpec {
            gate: s.gate(e.gate).id.clone(),
            u: format_rational(&e.u),
        };
        let path = |p: &[Letter]| p.iter().map(|l| l.render(s)).collect::<Vec<_>>();
        let strands = match self {
            GenericLoop::Constant => Vec::new(),
            GenericLoop::Graph(p) => vec![StrandSpec::Ypath(path(p))],
            GenericLoop::Legs(legs) => legs
                .iter()
                .flat_map(|l| {
                    [
                        StrandSpec::Chord {
                            enter: point(&l.enter),
                            exit: point(&l.exit),
                        },
                        StrandSpec::Ypath(path(&l.path)),
                    ]
                })
                .collect(),
        };
        LoopSpec { strands }
    }

    pub fn to_json(&self, s: &QuasiSurface) -> serde_json::Value {
        serde_json::to_value(self.to_spec(s)).expect("loop specs serialize")
    }

    /// Checks alternation, endpoint placement, path continuity and that
    /// the loop's own gate coordinates are pairwise distinct.
    pub fn validate(&self, s: &QuasiSurface) -> Result<(), LoopError> {
        match self {
            GenericLoop::Constant => Ok(()),
            GenericLoop::Graph(p) => {
                if p.is_empty() {
                    return Err(LoopError::Malformed("a graph loop needs at least one edge".into()));
                }
                if p.iter().any(|l| s.is_gate_generator(l.gen)) {
                    return Err(LoopError::Malformed("a graph loop may only use edges of Y".into()));
                }
                match path_ends(s, p)? {
                    Some((a, b)) if a == b => Ok(()),
                    _ => Err(LoopError::NotAPath(format!("{} is not closed", format_letters(s, p)))),
                }
            }
            GenericLoop::Legs(legs) => {
                if legs.is_empty() {
                    return Err(LoopError::Malformed("a loop with chords needs at least one leg".into()));
                }
                for (i, leg) in legs.iter().enumerate() {
                    for e in [&leg.enter, &leg.exit] {
                        if e.gate >= s.gate_count() || !s.gate(e.gate).contains(&e.u) {
                            return Err(LoopError::Malformed(format!(
                                "coordinate {} of leg {i} is not inside its gate",
                                format_rational(&e.u)
                            )));
                        }
                    }
                    if leg.path.iter().any(|l| s.is_gate_generator(l.gen)) {
                        return Err(LoopError::Malformed(format!("ypath of leg {i} uses a gate letter")));
                    }
                    let from = s.gate(leg.exit.gate).vertex;
                    let to = s.gate(legs[(i + 1) % legs.len()].enter.gate).vertex;
                    match path_ends(s, &leg.path)? {
                        None if from == to => {}
                        Some((a, b)) if a == from && b == to => {}
                        _ => {
                            return Err(LoopError::NotAPath(format!(
                                "ypath {} of leg {i} does not join {} to {}",
                                format_letters(s, &leg.path),
                                s.vertices()[from],
                                s.vertices()[to]
                            )))
                        }
                    }
                }
                distinct_coordinates(self.coordinates())?;
                Ok(())
            }
        }
    }

    pub fn legs(&self) -> &[Leg] {
        match self {
            GenericLoop::Legs(l) => l,
            _ => &[],
        }
    }

    pub fn chord_count(&self) -> usize {
        self.legs().len()
    }

    pub fn coordinates(&self) -> impl Iterator<Item = &Coord> {
        self.legs().iter().flat_map(|l| [&l.enter.u, &l.exit.u])
    }

    pub fn layout(&self) -> Layout {
        match self {
            GenericLoop::Constant => Layout {
                letters: Vec::new(),
                offsets: Vec::new(),
            },
            GenericLoop::Graph(p) => Layout {
                letters: p.clone(),
                offsets: Vec::new(),
            },
            GenericLoop::Legs(legs) => {
                let mut letters = Vec::new();
                let mut offsets = Vec::new();
                for leg in legs {
                    offsets.push(letters.len());
                    letters.push(Letter::pos(leg.enter.gate));
                    letters.push(Letter::neg(leg.exit.gate));
                    letters.extend_from_slice(&leg.path);
                }
                Layout { letters, offsets }
            }
        }
    }

    /// The unreduced word of the loop.
    pub fn word(&self) -> Vec<Letter> {
        self.layout().letters
    }

    pub fn class_of(&self) -> CyclicWord {
        CyclicWord::from_letters(&self.word())
    }

    pub fn is_contractible(&self) -> bool {
        self.class_of().is_identity()
    }

    /// All gate crossings in loop order.
    pub fn crossings(&self) -> Vec<GatePoint> {
        let mut out = Vec::new();
        for (i, leg) in self.legs().iter().enumerate() {
            out.push(GatePoint {
                gate: leg.enter.gate,
                u: leg.enter.u.clone(),
                sign: 1,
                cut: Cut::new(i, Stage::Entry),
            });
            out.push(GatePoint {
                gate: leg.exit.gate,
                u: leg.exit.u.clone(),
                sign: -1,
                cut: Cut::new(i, Stage::Exit),
            });
        }
        out
    }

    /// Crossings with one gate, in loop order.
    pub fn crossings_with(&self, gate: usize) -> Vec<GatePoint> {
        self.crossings().into_iter().filter(|p| p.gate == gate).collect()
    }

    /// Crossings grouped by gate, each list sorted by coordinate.
    pub fn crossings_by_gate(&self, gates: usize) -> Vec<Vec<GatePoint>> {
        let mut out = vec![Vec::new(); gates];
        for p in self.crossings() {
            out[p.gate].push(p);
        }
        for list in &mut out {
            list.sort_by(|a, b| a.u.cmp(&b.u));
        }
        out
    }

    /// Algebraic intersection number with a gate.
    pub fn intersection_number(&self, gate: usize) -> i64 {
        self.crossings_with(gate).iter().map(|p| p.sign as i64).sum()
    }

    pub fn realized_chords(&self) -> Result<Vec<RealizedChord>, GeometryError> {
        self.legs().iter().map(|l| RealizedChord::new(&l.enter.u, &l.exit.u)).collect()
    }

    /// Self-intersections inside the disk.
    pub fn self_intersections(&self) -> Result<Vec<SelfIntersection>, GeometryError> {
        let chords = self.realized_chords()?;
        check_no_triple_points(&chords)?;
        let layout = self.layout();
        let mut out = Vec::new();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let Some(sign) = crossing_sign(&chords[i], &chords[j]) else {
                    continue;
                };
                let (mi, mj) = (Cut::new(i, Stage::Middle), Cut::new(j, Stage::Middle));
                let (first, second) = (layout.between(mi, mj), layout.between(mj, mi));
                let halves = if sign > 0 { (first, second) } else { (second, first) };
                out.push(SelfIntersection { legs: (i, j), halves });
            }
        }
        Ok(out)
    }

    /// Number of interleaved chord pairs, without the concurrency check.
    pub fn crossing_count(&self) -> usize {
        let legs = self.legs();
        let mut n = 0;
        for i in 0..legs.len() {
            for j in i + 1..legs.len() {
                if crate::surface::interleaved(
                    (&legs[i].enter.u, &legs[i].exit.u),
                    (&legs[j].enter.u, &legs[j].exit.u),
                ) {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn is_simple(&self) -> bool {
        self.crossing_count() == 0
    }
}

/// Crossings of the chords of `a` with the chords of `b`.
pub fn disk_crossings(a: &GenericLoop, b: &GenericLoop) -> Result<Vec<DiskCrossing>, GeometryError> {
    let (ca, cb) = (a.realized_chords()?, b.realized_chords()?);
    let mut out = Vec::new();
    for (i, x) in ca.iter().enumerate() {
        for (j, y) in cb.iter().enumerate() {
            if let Some(sign) = crossing_sign(x, y) {
                out.push(DiskCrossing { legs: (i, j), sign });
            }
        }
    }
    Ok(out)
}

/// A family is generic when all gate coordinates are distinct and no three
/// chords pass through one point.
pub fn check_family(loops: &[&GenericLoop]) -> Result<(), GeometryError> {
    distinct_coordinates(loops.iter().flat_map(|l| l.coordinates()))?;
    let mut chords = Vec::new();
    for l in loops {
        chords.extend(l.realized_chords()?);
    }
    check_no_triple_points(&chords)
}
