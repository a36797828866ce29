//! The contracting test: iterative closure towards the nucleus, a
//! semi-decision with an explicit growth bound, followed by minimization to
//! the elements that occur as arbitrarily deep restrictions. Regularity is
//! decided on the nucleus Moore diagram.

use serde::Serialize;

use super::automaton::{GroupElement, MealyAutomaton};

/// The nucleus: the minimal finite set absorbing all deep restrictions,
/// together with its Moore diagram edges (g, x | g.x, g|_x).
#[derive(Clone, Debug, Serialize)]
pub struct Nucleus {
    pub elements: Vec<GroupElement>,
    pub names: Vec<String>,
    /// `moore_edges[i]` lists, per letter x, (output letter, target index).
    pub moore_edges: Vec<Vec<(usize, usize)>>,
    pub identity_index: usize,
}

/// Contraction is undecidable in general, so the closure is bounded and
/// `Undetermined` is a first-class outcome, not an error.
#[derive(Clone, Debug, Serialize)]
pub enum NucleusResult {
    Nucleus(Nucleus),
    Undetermined { bound: usize },
}

impl NucleusResult {
    pub fn nucleus(&self) -> Option<&Nucleus> {
        match self {
            NucleusResult::Nucleus(n) => Some(n),
            NucleusResult::Undetermined { .. } => None,
        }
    }
}

/// Verdict of the regularity test with an explicit witness on failure: a
/// cycle g_1 -> g_2 -> ... -> g_1 in the diagonal Moore subgraph, fixing
/// the infinite word spelled by the cycle letters without fixing any of its
/// neighborhoods.
#[derive(Clone, Debug, Serialize)]
pub struct Regularity {
    pub regular: bool,
    pub witness_elements: Vec<String>,
    pub witness_letters: Vec<usize>,
}

struct Candidate {
    elements: Vec<GroupElement>,
}

impl Candidate {
    fn position(&self, aut: &MealyAutomaton, g: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|e| aut.equal(e, g))
    }

    fn insert(&mut self, aut: &MealyAutomaton, g: GroupElement) -> bool {
        if self.position(aut, &g).is_none() {
            self.elements.push(g);
            true
        } else {
            false
        }
    }

    /// Closes the set under restrictions.
    fn restriction_close(&mut self, aut: &MealyAutomaton) {
        let mut i = 0;
        while i < self.elements.len() {
            for x in 0..aut.alphabet_len() {
                let (_, r) = aut.act_letter(&self.elements[i].clone(), x);
                self.insert(aut, r);
            }
            i += 1;
        }
    }
}

/// Computes the nucleus by bounded iterative closure.
///
/// Start from the generators, their inverses and the identity, closed under
/// restriction. In each round, every pair product is followed through its
/// restriction orbit; if the orbit cycles outside the candidate set the
/// group has not yet been absorbed and the orbit is adjoined. When a round
/// adds nothing, every product contracts into the candidate and the nucleus
/// is extracted as the set of elements reachable from restriction cycles.
pub fn nucleus(aut: &MealyAutomaton, bound: usize) -> NucleusResult {
    let mut cand = Candidate { elements: vec![aut.identity_element()] };
    for &g in &aut.generators {
        cand.insert(aut, GroupElement { word: vec![g] });
        cand.insert(aut, GroupElement { word: vec![aut.inverses[g]] });
    }
    cand.restriction_close(aut);

    let mut absorbed = false;
    for _round in 0..bound.max(1) {
        let mut grew = false;
        let snapshot = cand.elements.clone();
        for g in &snapshot {
            for h in &snapshot {
                let w = aut.compose(g, h);
                let escaped = orbit_outside(aut, &cand, &w);
                if !escaped.is_empty() {
                    for e in escaped {
                        if cand.insert(aut, e) {
                            grew = true;
                        }
                    }
                }
            }
        }
        if grew {
            cand.restriction_close(aut);
        } else {
            absorbed = true;
            break;
        }
    }
    if !absorbed {
        return NucleusResult::Undetermined { bound };
    }

    // Restriction graph on the candidate; the nucleus is everything
    // reachable from a cycle (elements that recur at unbounded depth).
    let n = cand.elements.len();
    let m = aut.alphabet_len();
    let target: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|x| {
                    let (_, r) = aut.act_letter(&cand.elements[i], x);
                    cand.position(aut, &r).expect("candidate is restriction closed")
                })
                .collect()
        })
        .collect();
    let on_cycle: Vec<bool> = (0..n).map(|i| reaches(&target, i, i)).collect();
    let mut keep = vec![false; n];
    for i in 0..n {
        if on_cycle[i] {
            mark_reachable(&target, i, &mut keep);
        }
    }

    let mut elements: Vec<GroupElement> = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        if keep[i] {
            elements.push(cand.elements[i].clone());
            names.push(aut.display_element(&cand.elements[i]));
        }
    }
    let position = |g: &GroupElement| elements.iter().position(|e| aut.equal(e, g)).unwrap();
    let moore_edges: Vec<Vec<(usize, usize)>> = elements
        .iter()
        .map(|g| {
            (0..m)
                .map(|x| {
                    let (y, r) = aut.act_letter(g, x);
                    (y, position(&r))
                })
                .collect()
        })
        .collect();
    let identity_index = position(&aut.identity_element());
    NucleusResult::Nucleus(Nucleus {
        elements,
        names,
        moore_edges,
        identity_index,
    })
}

/// Follows the restriction orbit of w; returns the set of visited elements
/// not absorbed by the candidate if the orbit cycles outside it, or empty
/// when every path is eventually absorbed.
fn orbit_outside(
    aut: &MealyAutomaton,
    cand: &Candidate,
    w: &GroupElement,
) -> Vec<GroupElement> {
    if cand.position(aut, w).is_some() {
        return Vec::new();
    }
    // Depth-first search over non-candidate nodes with cycle detection.
    let mut nodes: Vec<GroupElement> = vec![w.clone()];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let mut row = Vec::new();
        for x in 0..aut.alphabet_len() {
            let (_, r) = aut.act_letter(&nodes[i], x);
            if cand.position(aut, &r).is_some() {
                continue; // absorbed
            }
            let idx = match nodes.iter().position(|u| aut.equal(u, &r)) {
                Some(j) => j,
                None => {
                    nodes.push(r);
                    nodes.len() - 1
                }
            };
            row.push(idx);
        }
        edges.push(row);
        i += 1;
    }
    let cyclic = (0..nodes.len()).any(|v| reaches(&edges_as_targets(&edges), v, v));
    if cyclic {
        nodes
    } else {
        Vec::new()
    }
}

fn edges_as_targets(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    edges.to_vec()
}

/// Is there a nonempty path from `from` to `to`?
fn reaches(target: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; target.len()];
    let mut stack: Vec<usize> = target[from].to_vec();
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if !seen[v] {
            seen[v] = true;
            stack.extend(target[v].iter().copied());
        }
    }
    false
}

fn mark_reachable(target: &[Vec<usize>], from: usize, keep: &mut [bool]) {
    if keep[from] {
        return;
    }
    keep[from] = true;
    let next: Vec<usize> = target[from].to_vec();
    for v in next {
        mark_reachable(target, v, keep);
    }
}

/// Regularity: the diagonal subgraph of the nucleus Moore diagram keeps
/// only non-identity states and edges with equal input and output letter.
/// The group is regular iff this subgraph is acyclic; a cycle certifies a
/// fixed infinite word whose neighborhoods are not fixed.
pub fn is_regular(aut: &MealyAutomaton, nuc: &Nucleus) -> Regularity {
    let n = nuc.elements.len();
    let m = aut.alphabet_len();
    // diagonal[i] = (letter, target) pairs with g.x = x, g != 1, target != 1.
    let diagonal: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|i| {
            if i == nuc.identity_index {
                return Vec::new();
            }
            (0..m)
                .filter_map(|x| {
                    let (y, t) = nuc.moore_edges[i][x];
                    (y == x && t != nuc.identity_index).then_some((x, t))
                })
                .collect()
        })
        .collect();

    // DFS cycle detection with path recovery.
    let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
    let mut path: Vec<(usize, usize)> = Vec::new(); // (node, letter chosen)
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        if let Some(cycle) = dfs_cycle(start, &diagonal, &mut color, &mut path) {
            let witness_elements = cycle.iter().map(|&(v, _)| nuc.names[v].clone()).collect();
            let witness_letters = cycle.iter().map(|&(_, x)| x).collect();
            return Regularity {
                regular: false,
                witness_elements,
                witness_letters,
            };
        }
    }
    Regularity {
        regular: true,
        witness_elements: Vec::new(),
        witness_letters: Vec::new(),
    }
}

fn dfs_cycle(
    v: usize,
    diagonal: &[Vec<(usize, usize)>],
    color: &mut [u8],
    path: &mut Vec<(usize, usize)>,
) -> Option<Vec<(usize, usize)>> {
    color[v] = 1;
    for &(x, t) in &diagonal[v] {
        if color[t] == 1 {
            // Found a cycle: slice the current path from t onwards.
            let mut cycle: Vec<(usize, usize)> = Vec::new();
            let pos = path.iter().position(|&(node, _)| node == t);
            if let Some(p) = pos {
                cycle.extend(path[p..].iter().copied());
            }
            cycle.push((v, x));
            // Keep only the closing loop in node order starting at t.
            return Some(cycle);
        }
        if color[t] == 0 {
            path.push((v, x));
            if let Some(c) = dfs_cycle(t, diagonal, color, path) {
                return Some(c);
            }
            path.pop();
        }
    }
    color[v] = 2;
    None
}
