//! Level-L tile approximations of the limit space: one tile per word of
//! length L, glued along nucleus moves. The shift drops the last (deepest)
//! letter. For regular groups the shift is |X|-to-1 on tiles.

use std::collections::BTreeSet;

use serde::Serialize;

use super::automaton::MealyAutomaton;
use super::nucleus::Nucleus;
use crate::error::{Error, Result};

/// The level-L tile complex. Words are stored deepest-letter-first (the
/// automaton consumes the deep end), so dropping the last letter realizes
/// the shift on left-infinite sequences.
///
/// Tiles are merged only when the nucleus relation makes them equal as
/// sets, which does not occur for presentations satisfying the open set
/// condition; the class bookkeeping still routes everything through
/// `class_of` so a finer model can merge without changing the interface.
#[derive(Clone, Debug, Serialize)]
pub struct TileComplex {
    pub level: usize,
    pub words: Vec<Vec<usize>>,
    /// class_of[word index] = vertex class index.
    pub class_of: Vec<usize>,
    pub class_count: usize,
    /// Unordered adjacency pairs of distinct classes: some nucleus element
    /// moves a representative of one onto the other.
    pub edges: Vec<(usize, usize)>,
    /// Shift on classes, targeting the level-(L-1) complex built the same
    /// way (indices into that complex's classes).
    pub shift: Vec<usize>,
}

impl TileComplex {
    /// Degree-2 connected single cycle check (the circle shape).
    pub fn is_single_cycle(&self) -> bool {
        let n = self.class_count;
        if self.edges.len() != n || n < 3 {
            return false;
        }
        let mut deg = vec![0usize; n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 2) {
            return false;
        }
        // Connectivity.
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Number of preimage classes per image class under the shift.
    pub fn shift_fiber_sizes(&self) -> Vec<usize> {
        let max_target = self.shift.iter().copied().max().map_or(0, |m| m + 1);
        let mut fibers = vec![0usize; max_target];
        for &t in &self.shift {
            fibers[t] += 1;
        }
        fibers
    }
}

/// Builds the level-L tile complex from a computed nucleus.
pub fn limit_space(aut: &MealyAutomaton, nuc: &Nucleus, level: usize) -> Result<TileComplex> {
    if level == 0 {
        return Err(Error::LevelTooSmall { need: 1, got: 0 });
    }
    let m = aut.alphabet_len();
    let words = all_words(m, level);
    let index = |w: &[usize]| -> usize {
        // Lexicographic enumeration: digits little-endian on the right.
        w.iter().fold(0usize, |acc, &x| acc * m + x)
    };

    // Vertex classes: one per word (see struct docs).
    let class_of: Vec<usize> = (0..words.len()).collect();
    let class_count = words.len();

    // Edges: v -- g.v for nucleus elements g.
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for g in &nuc.elements {
        for (i, w) in words.iter().enumerate() {
            let (img, _) = aut.act_word(g, w)?;
            let j = index(&img);
            if i != j {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }

    // Shift: drop the last letter; with lexicographic indexing this is
    // integer division by the alphabet size.
    let shift: Vec<usize> = (0..words.len()).map(|i| i / m).collect();

    Ok(TileComplex {
        level,
        words,
        class_of,
        class_count,
        edges: edges.into_iter().collect(),
        shift,
    })
}

fn all_words(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
