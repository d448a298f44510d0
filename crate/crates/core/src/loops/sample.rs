//! Random classes for tests and the verifier.

use std::collections::VecDeque;

use rand::Rng;

use crate::surface::QuasiSurface;

use super::word::Letter;
use super::CyclicWord;

/// All letters leaving a node of `G`.
fn letters_from(s: &QuasiSurface, node: usize) -> Vec<Letter> {
    (0..s.generator_count())
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .filter(|l| l.ends(s).0 == node)
        .collect()
}

/// A shortest edge path between two nodes of the connected graph `G`.
pub fn shortest_path(s: &QuasiSurface, from: usize, to: usize) -> Vec<Letter> {
    let nodes = s.vertices().len() + 1;
    let mut back: Vec<Option<Letter>> = vec![None; nodes];
    let mut seen = vec![false; nodes];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for l in letters_from(s, v) {
            let h = l.ends(s).1;
            if !seen[h] {
                seen[h] = true;
                back[h] = Some(l);
                queue.push_back(h);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let l = back[at].expect("G is connected");
        path.push(l);
        at = l.ends(s).0;
    }
    path.reverse();
    path
}

/// A random class: a non-backtracking walk of random length from a vertex
/// of `Y`, closed by a shortest path, with at most `max_chords` visits to the
/// disk center.
pub fn random_word(s: &QuasiSurface, rng: &mut impl Rng, max_chords: usize, max_len: usize) -> CyclicWord {
    loop {
        let start = rng.gen_range(0..s.vertices().len());
        let steps = rng.gen_range(1..=max_len.max(1));
        let mut at = start;
        let mut w: Vec<Letter> = Vec::new();
        for _ in 0..steps {
            let options: Vec<Letter> = letters_from(s, at)
                .into_iter()
                .filter(|l| w.last() != Some(&l.inv()))
                .collect();
            if options.is_empty() {
                break;
            }
            let l = options[rng.gen_range(0..options.len())];
            w.push(l);
            at = l.ends(s).1;
        }
        w.extend(shortest_path(s, at, start));
        let c = CyclicWord::from_letters(&w);
        let chords = c.letters().iter().filter(|l| s.is_gate_generator(l.gen) && !l.inverse).count();
        if chords <= max_chords {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::fixture;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_words_are_edge_cycles_within_bounds() {
        let s = fixture();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut nontrivial = 0;
        for _ in 0..200 {
            let w = random_word(&s, &mut rng, 3, 9);
            assert!(w.is_edge_cycle(&s));
            assert!(w.letters().iter().filter(|l| s.is_gate_generator(l.gen) && !l.inverse).count() <= 3);
            if !w.is_identity() {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 100);
    }

    #[test]
    fn shortest_paths_connect() {
        let s = fixture();
        let p = shortest_path(&s, 0, 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].ends(&s).0, 0);
        assert_eq!(p[1].ends(&s).1, 2);
        assert!(shortest_path(&s, 1, 1).is_empty());
    }
}
