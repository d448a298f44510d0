//! Words in the free fundamental group of the graph `G` and their
//! canonical cyclic forms.

use std::cmp::Ordering;

use crate::surface::QuasiSurface;

use super::LoopError;

/// A generator of `π₁(G)` or its inverse. Ordered by generator, then with
/// the positive letter first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Self::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Self::new(gen, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.gen, !self.inverse)
    }

    /// Start and end node of the letter traversed as an edge of `G`.
    pub fn ends(self, s: &QuasiSurface) -> (usize, usize) {
        let (t, h) = s.generator_ends(self.gen);
        if self.inverse {
            (h, t)
        } else {
            (t, h)
        }
    }

    pub fn render(self, s: &QuasiSurface) -> String {
        let name = s.generator_name(self.gen);
        if self.inverse {
            format!("{name}^-1")
        } else {
            name.to_string()
        }
    }

    pub fn parse(s: &QuasiSurface, text: &str) -> Result<Self, LoopError> {
        let text = text.trim();
        let (name, inverse) = match text.strip_suffix("^-1").or_else(|| text.strip_suffix("⁻¹")) {
            Some(n) => (n, true),
            None => (text, false),
        };
        s.generator_by_name(name)
            .map(|g| Letter::new(g, inverse))
            .ok_or_else(|| LoopError::UnknownGenerator(text.to_string()))
    }
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancellation around the wrap.
pub fn cyclic_reduce(letters: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(letters);
    let mut i = 0;
    let mut j = w.len();
    while j - i >= 2 && w[i] == w[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// The lexicographically least rotation.
pub fn minimal_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|k| letters[(a + k) % n].cmp(&letters[(b + k) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
        .unwrap_or(0);
    letters[best..].iter().chain(&letters[..best]).copied().collect()
}

/// A conjugacy class of `π₁(G)` stored as the least rotation of a cyclically
/// reduced word. The empty word is the class of contractible loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl Ord for CyclicWord {
    // shortlex keeps short classes first in sorted output
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CyclicWord {
    pub fn from_letters(letters: &[Letter]) -> Self {
        Self(minimal_rotation(&cyclic_reduce(letters)))
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn power(&self, n: usize) -> Self {
        Self::from_letters(&self.0.repeat(n))
    }

    pub fn inverse(&self) -> Self {
        let rev: Vec<Letter> = self.0.iter().rev().map(|l| l.inv()).collect();
        Self::from_letters(&rev)
    }

    pub fn render(&self, s: &QuasiSurface) -> String {
        format_letters(s, &self.0)
    }

    /// Parses a closed edge path and canonicalizes it.
    pub fn parse(s: &QuasiSurface, text: &str) -> Result<Self, LoopError> {
        let letters = parse_letters(s, text)?;
        if !is_closed_path(s, &letters) {
            return Err(LoopError::NotAPath(text.to_string()));
        }
        Ok(Self::from_letters(&letters))
    }

    /// Checks that the letters close up into an edge cycle of `G`.
    pub fn is_edge_cycle(&self, s: &QuasiSurface) -> bool {
        is_closed_path(s, &self.0)
    }
}

/// A word rendered as `g1.g2^-1.y1^-1`, with `1` for the empty word.
pub fn format_letters(s: &QuasiSurface, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    letters.iter().map(|l| l.render(s)).collect::<Vec<_>>().join(".")
}

pub fn parse_letters(s: &QuasiSurface, text: &str) -> Result<Vec<Letter>, LoopError> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    text.split(['.', '·']).map(|t| Letter::parse(s, t)).collect()
}

/// End nodes of an edge path in `G`, or `None` for the empty path.
pub fn path_ends(s: &QuasiSurface, letters: &[Letter]) -> Result<Option<(usize, usize)>, LoopError> {
    let Some(first) = letters.first() else {
        return Ok(None);
    };
    let start = first.ends(s).0;
    let mut at = start;
    for (i, l) in letters.iter().enumerate() {
        let (t, h) = l.ends(s);
        if t != at {
            return Err(LoopError::NotAPath(format!(
                "letter {} at position {i} does not start where the path stands",
                l.render(s)
            )));
        }
        at = h;
    }
    Ok(Some((start, at)))
}

pub fn is_closed_path(s: &QuasiSurface, letters: &[Letter]) -> bool {
    matches!(path_ends(s, letters), Ok(None)) || matches!(path_ends(s, letters), Ok(Some((a, b))) if a == b)
}
