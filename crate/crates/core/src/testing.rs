//! Shared fixtures for unit tests.

use crate::loops::{GenericLoop, LoopSpec};
use crate::surface::{EdgeSpec, GateSpec, GraphSpec, QuasiSurface, SurfaceSpec};

/// Three gates on a path graph `v1 -y1- v2 -y2- v3`.
pub fn fixture() -> QuasiSurface {
    let gate = |id: &str, lo: &str, hi: &str, v: &str| GateSpec {
        id: id.into(),
        arc: [lo.into(), hi.into()],
        vertex: v.into(),
    };
    let edge = |id: &str, f: &str, t: &str| EdgeSpec {
        id: id.into(),
        from: f.into(),
        to: t.into(),
    };
    QuasiSurface::from_spec(&SurfaceSpec {
        gates: vec![
            gate("G1", "1/10", "1/5", "v1"),
            gate("G2", "2/5", "1/2", "v2"),
            gate("G3", "7/10", "4/5", "v3"),
        ],
        ygraph: GraphSpec {
            vertices: vec!["v1".into(), "v2".into(), "v3".into()],
            edges: vec![edge("y1", "v1", "v2"), edge("y2", "v2", "v3")],
        },
    })
    .unwrap()
}

/// A loop from a compact description: `(enter gate, u, exit gate, u, ypath)`.
pub fn legs(s: &QuasiSurface, strands: &[(&str, &str, &str, &str, &str)]) -> GenericLoop {
    let mut json = Vec::new();
    for (g1, u1, g2, u2, path) in strands {
        json.push(serde_json::json!({"chord": {"enter": {"gate": g1, "u": u1}, "exit": {"gate": g2, "u": u2}}}));
        let letters: Vec<&str> = if path.is_empty() || *path == "1" { vec![] } else { path.split('.').collect() };
        json.push(serde_json::json!({ "ypath": letters }));
    }
    let spec: LoopSpec = serde_json::from_value(serde_json::json!({ "strands": json })).unwrap();
    GenericLoop::from_spec(s, &spec).unwrap()
}

/// The one-chord loop `g1.g2^-1.y1^-1` entering at `u1` and exiting at `u2`.
pub fn one_chord(s: &QuasiSurface, u1: &str, u2: &str) -> GenericLoop {
    legs(s, &[("G1", u1, "G2", u2, "y1^-1")])
}

/// The loop of class `w²` with two crossing chords.
pub fn squared(s: &QuasiSurface) -> GenericLoop {
    legs(s, &[("G1", "0.12", "G2", "0.45", "y1^-1"), ("G1", "0.15", "G2", "0.48", "y1^-1")])
}
