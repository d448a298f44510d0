//! The combinatorial quasi-surface: an oriented disk whose boundary circle
//! carries disjoint gate arcs, each gate collapsed to a vertex of a finite
//! graph (the singular part), plus exact geometry of straight chords.
//!
//! Boundary points are addressed by a coordinate `u ∈ (0, 1)`; increasing
//! `u` runs counterclockwise. All geometry is exact rational arithmetic.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, parse_rational};

pub type Coord = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("boundary coordinate {0} is outside the open interval (0, 1)")]
    OutOfRange(String),
    #[error("chords share the endpoint coordinate {0}")]
    CoincidentEndpoints(String),
    #[error("three chords meet in one point: {0}")]
    TriplePoint(String),
    #[error("unknown gate {0}")]
    UnknownGate(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("invalid quasi-surface: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

/// JSON form of a quasi-surface.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SurfaceSpec {
    pub gates: Vec<GateSpec>,
    pub ygraph: GraphSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GateSpec {
    pub id: String,
    pub arc: [String; 2],
    pub vertex: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub id: String,
    pub lo: Coord,
    pub hi: Coord,
    pub vertex: usize,
}

impl Gate {
    /// Whether `u` lies strictly inside the arc.
    pub fn contains(&self, u: &Coord) -> bool {
        &self.lo < u && u < &self.hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

/// A validated quasi-surface.
///
/// The fundamental group is free on the graph `G = Y + {g_k}` where the star
/// edge `g_k` runs from the vertex of gate `k` to the disk center `c`.
/// Generators are numbered gates first, then edges of `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiSurface {
    gates: Vec<Gate>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    generator_names: Vec<String>,
    name_to_generator: HashMap<String, usize>,
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<String>,
}

fn bad_name(s: &str) -> bool {
    s.is_empty() || s == "1" || s.chars().any(|c| c.is_whitespace() || matches!(c, '.' | '^' | '⊗' | '"'))
}

/// The letter naming the star edge of a gate: `G1 ↦ g1`, otherwise `g` + id.
pub fn gate_letter_name(gate_id: &str) -> String {
    match gate_id.strip_prefix('G') {
        Some(rest) if !rest.is_empty() => format!("g{rest}"),
        _ => format!("g{gate_id}"),
    }
}

/// Checks arc disjointness, connectivity and graph well-formedness.
pub fn validate(spec: &SurfaceSpec) -> ValidationReport {
    let mut issues = Vec::new();
    if spec.gates.is_empty() {
        issues.push("a quasi-surface needs at least one gate".to_string());
    }
    let mut vertex_ix = HashMap::new();
    for (i, v) in spec.ygraph.vertices.iter().enumerate() {
        if bad_name(v) {
            issues.push(format!("invalid vertex name {v:?}"));
        }
        if vertex_ix.insert(v.clone(), i).is_some() {
            issues.push(format!("duplicate vertex {v:?}"));
        }
    }
    let mut names = HashSet::new();
    let mut arcs = Vec::new();
    for g in &spec.gates {
        if bad_name(&g.id) {
            issues.push(format!("invalid gate id {:?}", g.id));
        }
        if !names.insert(gate_letter_name(&g.id)) {
            issues.push(format!("duplicate gate {:?}", g.id));
        }
        if !vertex_ix.contains_key(&g.vertex) {
            issues.push(format!("gate {} maps to unknown vertex {:?}", g.id, g.vertex));
        }
        match (parse_rational(&g.arc[0]), parse_rational(&g.arc[1])) {
            (Some(lo), Some(hi)) => {
                if !(lo.is_positive() && lo < hi && hi < Coord::one()) {
                    issues.push(format!(
                        "gate {} has arc [{}, {}], which is not a segment inside (0, 1)",
                        g.id, g.arc[0], g.arc[1]
                    ));
                } else {
                    arcs.push((lo, hi, g.id.clone()));
                }
            }
            _ => issues.push(format!("gate {} has an unparsable arc {:?}", g.id, g.arc)),
        }
    }
    for w in arcs.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.0 <= a.1 {
            if b.1 < a.0 {
                issues.push(format!("gates {} and {} are not listed in increasing order", a.2, b.2));
            } else {
                issues.push(format!("arcs of gates {} and {} overlap", a.2, b.2));
            }
        }
    }
    let mut edge_ids = HashSet::new();
    for e in &spec.ygraph.edges {
        if bad_name(&e.id) {
            issues.push(format!("invalid edge id {:?}", e.id));
        }
        if names.contains(&e.id) || !edge_ids.insert(e.id.clone()) {
            issues.push(format!("edge id {:?} collides with another generator name", e.id));
        }
        for end in [&e.from, &e.to] {
            if !vertex_ix.contains_key(end) {
                issues.push(format!("edge {} has unknown endpoint {:?}", e.id, end));
            }
        }
    }
    if issues.is_empty() {
        // union-find over Y vertices plus the disk center
        let n = spec.ygraph.vertices.len();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        };
        for g in &spec.gates {
            union(vertex_ix[&g.vertex], n);
        }
        for e in &spec.ygraph.edges {
            union(vertex_ix[&e.from], vertex_ix[&e.to]);
        }
        for (i, v) in spec.ygraph.vertices.iter().enumerate() {
            if find(&mut parent, i) != find(&mut parent, n) {
                issues.push(format!("vertex {v:?} is not connected to the surface core"));
            }
        }
    }
    ValidationReport {
        valid: issues.is_empty(),
        issues,
    }
}

impl QuasiSurface {
    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self, SurfaceError> {
        let report = validate(spec);
        if !report.valid {
            return Err(SurfaceError::Invalid(report.issues));
        }
        let vertex_ix: HashMap<&str, usize> =
            spec.ygraph.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let gates: Vec<Gate> = spec
            .gates
            .iter()
            .map(|g| Gate {
                id: g.id.clone(),
                lo: parse_rational(&g.arc[0]).expect("validated"),
                hi: parse_rational(&g.arc[1]).expect("validated"),
                vertex: vertex_ix[g.vertex.as_str()],
            })
            .collect();
        let edges: Vec<Edge> = spec
            .ygraph
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                from: vertex_ix[e.from.as_str()],
                to: vertex_ix[e.to.as_str()],
            })
            .collect();
        let generator_names: Vec<String> = gates
            .iter()
            .map(|g| gate_letter_name(&g.id))
            .chain(edges.iter().map(|e| e.id.clone()))
            .collect();
        let name_to_generator = generator_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Ok(Self {
            gates,
            vertices: spec.ygraph.vertices.clone(),
            edges,
            generator_names,
            name_to_generator,
        })
    }

    pub fn to_spec(&self) -> SurfaceSpec {
        SurfaceSpec {
            gates: self
                .gates
                .iter()
                .map(|g| GateSpec {
                    id: g.id.clone(),
                    arc: [format_rational(&g.lo), format_rational(&g.hi)],
                    vertex: self.vertices[g.vertex].clone(),
                })
                .collect(),
            ygraph: GraphSpec {
                vertices: self.vertices.clone(),
                edges: self
                    .edges
                    .iter()
                    .map(|e| EdgeSpec {
                        id: e.id.clone(),
                        from: self.vertices[e.from].clone(),
                        to: self.vertices[e.to].clone(),
                    })
                    .collect(),
            },
        }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, k: usize) -> &Gate {
        &self.gates[k]
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gate_index(&self, id: &str) -> Option<usize> {
        self.gates.iter().position(|g| g.id == id)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of generators of the free group (`gates + edges`).
    pub fn generator_count(&self) -> usize {
        self.gates.len() + self.edges.len()
    }

    pub fn is_gate_generator(&self, gen: usize) -> bool {
        gen < self.gates.len()
    }

    /// Node id of the disk center in `G` (Y vertices come first).
    pub fn center(&self) -> usize {
        self.vertices.len()
    }

    /// Tail and head of a generator as a directed edge of `G`.
    pub fn generator_ends(&self, gen: usize) -> (usize, usize) {
        if gen < self.gates.len() {
            (self.gates[gen].vertex, self.center())
        } else {
            let e = &self.edges[gen - self.gates.len()];
            (e.from, e.to)
        }
    }

    pub fn generator_name(&self, gen: usize) -> &str {
        &self.generator_names[gen]
    }

    pub fn generator_by_name(&self, name: &str) -> Option<usize> {
        self.name_to_generator.get(name).copied()
    }

    /// Rank of the free fundamental group of `G`.
    pub fn rank(&self) -> usize {
        // connected graph: E − V + 1, with V counting the center
        self.generator_count() + 1 - (self.vertices.len() + 1)
    }

    /// The gate containing `u` strictly inside its arc.
    pub fn gate_of(&self, u: &Coord) -> Option<usize> {
        self.gates.iter().position(|g| g.contains(u))
    }
}

impl fmt::Display for QuasiSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quasi-surface with {} gates, {} vertices, {} edges", self.gates.len(), self.vertices.len(), self.edges.len())
    }
}

/// An exact point of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    fn sub(&self, o: &Point) -> (Coord, Coord) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

fn cross(a: &(Coord, Coord), b: &(Coord, Coord)) -> Coord {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sign(q: &Coord) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// The point of the unit circle at boundary coordinate `u`.
///
/// With `s = (2u − 1)/(u(1 − u))` the point is `((1 − s²)/(1 + s²), 2s/(1 + s²))`.
/// The map is injective and counterclockwise in `u`, and `u = 1/2` lands on `(1, 0)`.
pub fn realize(u: &Coord) -> Result<Point, GeometryError> {
    let one = Coord::one();
    if !(u.is_positive() && u < &one) {
        return Err(GeometryError::OutOfRange(format_rational(u)));
    }
    let two = Coord::from_integer(BigInt::from(2));
    let s = (&two * u - &one) / (u * (&one - u));
    let s2 = &s * &s;
    let d = &one + &s2;
    Ok(Point {
        x: (&one - &s2) / &d,
        y: (&two * &s) / &d,
    })
}

/// A straight chord of the disk between two realized boundary points.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedChord {
    pub start: Coord,
    pub end: Coord,
    pub p: Point,
    pub q: Point,
}

impl RealizedChord {
    pub fn new(start: &Coord, end: &Coord) -> Result<Self, GeometryError> {
        if start == end {
            return Err(GeometryError::CoincidentEndpoints(format_rational(start)));
        }
        Ok(Self {
            p: realize(start)?,
            q: realize(end)?,
            start: start.clone(),
            end: end.clone(),
        })
    }

    fn direction(&self) -> (Coord, Coord) {
        self.q.sub(&self.p)
    }

    fn side(&self, r: &Point) -> i8 {
        sign(&cross(&self.direction(), &r.sub(&self.p)))
    }

    /// Coefficients `(a, b, c)` of the supporting line `a·x + b·y = c`.
    fn line(&self) -> (Coord, Coord, Coord) {
        let (dx, dy) = self.direction();
        let c = &dy * &self.p.x - &dx * &self.p.y;
        (dy, -dx, c)
    }
}

/// Whether the endpoint pairs interleave on the circle.
pub fn interleaved(a: (&Coord, &Coord), b: (&Coord, &Coord)) -> bool {
    let (lo, hi) = if a.0 < a.1 { (a.0, a.1) } else { (a.1, a.0) };
    let inside = |u: &Coord| lo < u && u < hi;
    inside(b.0) != inside(b.1)
}

/// Sign of the crossing of two realized chords, or `None` if they do not
/// meet. `+1` means (direction of `a`, direction of `b`) is a positive basis.
pub fn crossing_sign(a: &RealizedChord, b: &RealizedChord) -> Option<i8> {
    let s1 = a.side(&b.p) * a.side(&b.q);
    let s2 = b.side(&a.p) * b.side(&a.q);
    if s1 < 0 && s2 < 0 {
        Some(sign(&cross(&a.direction(), &b.direction())))
    } else {
        None
    }
}

/// Exact crossing test for chords given by boundary coordinates.
pub fn chords_cross(c1: (&Coord, &Coord), c2: (&Coord, &Coord)) -> Result<Option<i8>, GeometryError> {
    let coords = [c1.0, c1.1, c2.0, c2.1];
    for i in 0..4 {
        for j in i + 1..4 {
            if coords[i] == coords[j] {
                return Err(GeometryError::CoincidentEndpoints(format_rational(coords[i])));
            }
        }
    }
    let a = RealizedChord::new(c1.0, c1.1)?;
    let b = RealizedChord::new(c2.0, c2.1)?;
    let s = crossing_sign(&a, &b);
    debug_assert_eq!(s.is_some(), interleaved(c1, c2));
    Ok(s)
}

/// Whether three chords, the first two of which cross, pass through one point.
pub fn concurrent(a: &RealizedChord, b: &RealizedChord, c: &RealizedChord) -> bool {
    let (a1, b1, c1) = a.line();
    let (a2, b2, c2) = b.line();
    let (a3, b3, c3) = c.line();
    let det = &a1 * (&b2 * &c3 - &b3 * &c2) - &b1 * (&a2 * &c3 - &a3 * &c2) + &c1 * (&a2 * &b3 - &a3 * &b2);
    det.is_zero()
}

/// Rejects families of chords with a point where three or more meet.
pub fn check_no_triple_points(chords: &[RealizedChord]) -> Result<(), GeometryError> {
    let n = chords.len();
    let meet = |i: usize, j: usize| {
        interleaved((&chords[i].start, &chords[i].end), (&chords[j].start, &chords[j].end))
    };
    for i in 0..n {
        for j in i + 1..n {
            if !meet(i, j) {
                continue;
            }
            for k in j + 1..n {
                // a chord through an interior crossing point must cross both
                if meet(i, k) && meet(j, k) && concurrent(&chords[i], &chords[j], &chords[k]) {
                    let c = &chords[k];
                    return Err(GeometryError::TriplePoint(format!(
                        "chords ({}, {}), ({}, {}), ({}, {})",
                        format_rational(&chords[i].start),
                        format_rational(&chords[i].end),
                        format_rational(&chords[j].start),
                        format_rational(&chords[j].end),
                        format_rational(&c.start),
                        format_rational(&c.end)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A gate orientation: `+1` orients a gate toward increasing `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateOrientation(Vec<i8>);

impl GateOrientation {
    pub fn counterclockwise(gates: usize) -> Self {
        Self(vec![1; gates])
    }

    /// Parses a bit string, one character per gate: `1` is `+1`, `0` is `−1`.
    pub fn from_bits(bits: &str) -> Option<Self> {
        bits.chars()
            .map(|c| match c {
                '1' => Some(1),
                '0' => Some(-1),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn from_signs(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        Self(signs)
    }

    /// All `2^gates` orientations.
    pub fn all(gates: usize) -> Vec<Self> {
        (0..1u32 << gates)
            .map(|mask| Self((0..gates).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<i8> {
        self.0.get(k).copied()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }

    pub fn bits(&self) -> String {
        self.0.iter().map(|s| if *s == 1 { '1' } else { '0' }).collect()
    }

    /// `p <_ω q` for two distinct points of gate `k`.
    pub fn precedes(&self, k: usize, p: &Coord, q: &Coord) -> bool {
        p != q && ((p < q) == (self.0[k] == 1))
    }
}

/// `ε(ω, k)`: `+1` exactly when the orientation of gate `k` agrees with the
/// counterclockwise boundary direction. For the counterclockwise disk, the
/// pair (counterclockwise tangent, inward normal) is positively oriented.
pub fn epsilon_gate(omega: &GateOrientation, k: usize) -> Result<i8, GeometryError> {
    omega.get(k).ok_or_else(|| GeometryError::UnknownGate(k.to_string()))
}

/// Placement of `n` points evenly inside a gate arc, in increasing order.
pub fn spread_in_arc(gate: &Gate, n: usize) -> Vec<Coord> {
    let width = &gate.hi - &gate.lo;
    let den = Coord::from_integer(BigInt::from(n as u64 + 1));
    (1..=n)
        .map(|i| &gate.lo + &width * Coord::from_integer(BigInt::from(i as u64)) / &den)
        .collect()
}

/// Collects coordinates, rejecting duplicates.
pub fn distinct_coordinates<'a>(coords: impl IntoIterator<Item = &'a Coord>) -> Result<(), GeometryError> {
    let mut seen: BTreeMap<&Coord, ()> = BTreeMap::new();
    for c in coords {
        if seen.insert(c, ()).is_some() {
            return Err(GeometryError::CoincidentEndpoints(format_rational(c)));
        }
    }
    Ok(())
}
