//! Mealy automata presenting self-similar groups: wreath recursion,
//! inverse closure, bisimulation minimization, and exact group-element
//! equality through the product automaton.

use std::collections::{BTreeMap, HashSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// Names accepted for the identity state in input presentations.
const IDENTITY_NAMES: [&str; 3] = ["1", "id", "e"];

/// One automaton state g: output(g, x) = the letter g.x and
/// transition(g, x) = the restriction state g|_x.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MealyState {
    pub name: String,
    pub output: Vec<usize>,
    pub transition: Vec<usize>,
}

/// A self-similar group presentation closed under inverses, with the
/// bisimulation-minimized state set used for all group-element work.
///
/// Convention: the automaton consumes the leftmost letter of a stored word
/// first. Left-infinite limit-space words are handled by storing them
/// deepest-letter-first, so the shift on tiles drops the last letter.
#[derive(Clone, Debug, Serialize)]
pub struct MealyAutomaton {
    pub alphabet: Vec<String>,
    pub states: Vec<MealyState>,
    pub identity: usize,
    /// Indices of the original generator states (pre-closure), for reports.
    pub generators: Vec<usize>,
    /// `inverse[s]` = the state acting as the inverse of s.
    pub inverses: Vec<usize>,
}

impl MealyAutomaton {
    /// Builds the automaton from named generator recursions, adjoining an
    /// identity state if missing, closing under inverses, and minimizing by
    /// bisimulation.
    pub fn new(alphabet: Vec<String>, raw_states: Vec<RawState>) -> Result<Self> {
        let m = alphabet.len();
        if m < 2 {
            return Err(Error::InvalidParameter(
                "alphabet needs at least two letters".into(),
            ));
        }
        let mut names: Vec<String> = Vec::new();
        let mut name_index: BTreeMap<String, usize> = BTreeMap::new();
        // Reserve index 0 for the identity.
        let identity_name = raw_states
            .iter()
            .find(|s| IDENTITY_NAMES.contains(&s.name.as_str()))
            .map(|s| s.name.clone())
            .unwrap_or_else(|| "1".to_string());
        names.push(identity_name.clone());
        name_index.insert(identity_name.clone(), 0);
        for s in &raw_states {
            if name_index.contains_key(&s.name) {
                if IDENTITY_NAMES.contains(&s.name.as_str()) {
                    continue;
                }
                return Err(Error::InvalidParameter(format!(
                    "duplicate state name {:?}",
                    s.name
                )));
            }
            name_index.insert(s.name.clone(), names.len());
            names.push(s.name.clone());
        }

        let mut output = vec![vec![0usize; m]; names.len()];
        let mut transition = vec![vec![0usize; m]; names.len()];
        // Identity: trivial permutation, self-loops.
        output[0] = (0..m).collect();
        transition[0] = vec![0; m];

        let letter_index = |label: &str| -> Result<usize> {
            alphabet
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownSymbol(label.to_string()))
        };
        for s in &raw_states {
            let idx = name_index[&s.name];
            if s.wreath.len() != m {
                return Err(Error::InvalidParameter(format!(
                    "state {:?} needs {m} wreath entries",
                    s.name
                )));
            }
            if idx == 0 {
                // Explicit identity rows are allowed but must be trivial.
                for (x, (out, st)) in s.wreath.iter().enumerate() {
                    if letter_index(out)? != x || !IDENTITY_NAMES.contains(&st.as_str()) {
                        return Err(Error::InvalidParameter(
                            "identity state must have trivial wreath recursion".into(),
                        ));
                    }
                }
                continue;
            }
            for (x, (out, st)) in s.wreath.iter().enumerate() {
                output[idx][x] = letter_index(out)?;
                transition[idx][x] = *name_index
                    .get(st)
                    .ok_or_else(|| Error::UnknownSymbol(st.clone()))?;
            }
        }
        // Outputs must be permutations.
        for (i, out) in output.iter().enumerate() {
            let mut seen = vec![false; m];
            for &y in out {
                if seen[y] {
                    return Err(Error::InvalidParameter(format!(
                        "state {:?} output is not a permutation",
                        names[i]
                    )));
                }
                seen[y] = true;
            }
        }

        let generator_count = names.len();
        // Close under inverses: state s^-1 has output = output[s]^-1 and
        // (s^-1)|_y = (s|_(s^-1 . y))^-1.
        let mut inverse = vec![0usize; generator_count];
        for s in 1..generator_count {
            inverse[s] = generator_count + s - 1;
        }
        for s in 1..generator_count {
            let mut inv_out = vec![0usize; m];
            for x in 0..m {
                inv_out[output[s][x]] = x;
            }
            let inv_trans: Vec<usize> = (0..m)
                .map(|y| {
                    let x = inv_out[y];
                    let t = transition[s][x];
                    if t == 0 {
                        0
                    } else {
                        generator_count + t - 1
                    }
                })
                .collect();
            names.push(format!("{}^-1", names[s]));
            output.push(inv_out);
            transition.push(inv_trans);
            inverse.push(s);
        }
        let total = names.len();
        debug_assert_eq!(inverse.len(), total);

        // Bisimulation minimization by partition refinement.
        let block = minimize(&output, &transition);
        let nblocks = 1 + *block.iter().max().unwrap();
        let mut rep = vec![usize::MAX; nblocks];
        for (s, &b) in block.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = s;
            }
        }
        let states: Vec<MealyState> = (0..nblocks)
            .map(|b| {
                let s = rep[b];
                MealyState {
                    name: names[s].clone(),
                    output: output[s].clone(),
                    transition: transition[s].iter().map(|&t| block[t]).collect(),
                }
            })
            .collect();
        let identity = block[0];
        let generators = (1..generator_count).map(|s| block[s]).collect();
        let inverses = (0..nblocks).map(|b| block[inverse[rep[b]]]).collect();
        Ok(MealyAutomaton {
            alphabet,
            states,
            identity,
            generators,
            inverses,
        })
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_named(&self, name: &str) -> Result<usize> {
        if IDENTITY_NAMES.contains(&name) {
            return Ok(self.identity);
        }
        // Accept trailing ^-1 for inverses of named states.
        if let Some(base) = name.strip_suffix("^-1") {
            let b = self.state_named(base)?;
            return Ok(self.inverses[b]);
        }
        self.states
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Group element from a word of state names (leftmost acts last, as in
    /// function composition).
    pub fn element(&self, names: &[&str]) -> Result<GroupElement> {
        let mut word = Vec::with_capacity(names.len());
        for n in names {
            word.push(self.state_named(n)?);
        }
        Ok(self.reduce(word))
    }

    fn reduce(&self, word: Vec<usize>) -> GroupElement {
        GroupElement {
            word: word.into_iter().filter(|&s| s != self.identity).collect(),
        }
    }

    pub fn identity_element(&self) -> GroupElement {
        GroupElement { word: Vec::new() }
    }

    pub fn inverse_element(&self, g: &GroupElement) -> GroupElement {
        GroupElement {
            word: g.word.iter().rev().map(|&s| self.inverses[s]).collect(),
        }
    }

    /// Applies the whole word to one letter: returns (image letter,
    /// restriction element).
    pub fn act_letter(&self, g: &GroupElement, x: usize) -> (usize, GroupElement) {
        let mut cur = x;
        let mut rest = vec![0usize; g.word.len()];
        for i in (0..g.word.len()).rev() {
            let s = g.word[i];
            rest[i] = self.states[s].transition[cur];
            cur = self.states[s].output[cur];
        }
        (cur, self.reduce(rest))
    }

    /// g . (x_1 x_2 ...) consumed leftmost first; returns the image word and
    /// the restriction g|_w.
    pub fn act_word(&self, g: &GroupElement, w: &[usize]) -> Result<(Vec<usize>, GroupElement)> {
        let m = self.alphabet_len();
        if w.iter().any(|&x| x >= m) {
            return Err(Error::UnknownSymbol(format!("{w:?}")));
        }
        let mut image = Vec::with_capacity(w.len());
        let mut cur = g.clone();
        for &x in w {
            let (y, next) = self.act_letter(&cur, x);
            image.push(y);
            cur = next;
        }
        Ok((image, cur))
    }

    /// Output permutation of a composite element.
    pub fn permutation(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.alphabet_len())
            .map(|x| self.act_letter(g, x).0)
            .collect()
    }

    /// Exact equality of group elements: bisimulation over the finite pair
    /// space of restriction words. Decidable with no contraction hypothesis.
    pub fn equal(&self, a: &GroupElement, b: &GroupElement) -> bool {
        let mut visited: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((u, v)) = stack.pop() {
            if !visited.insert((u.word.clone(), v.word.clone())) {
                continue;
            }
            for x in 0..self.alphabet_len() {
                let (ya, ra) = self.act_letter(&u, x);
                let (yb, rb) = self.act_letter(&v, x);
                if ya != yb {
                    return false;
                }
                stack.push((ra, rb));
            }
        }
        true
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        self.equal(g, &self.identity_element())
    }

    /// Product g * h (g applied after h).
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut word = g.word.clone();
        word.extend_from_slice(&h.word);
        GroupElement { word }
    }

    pub fn display_element(&self, g: &GroupElement) -> String {
        if g.word.is_empty() {
            return self.states[self.identity].name.clone();
        }
        g.word
            .iter()
            .map(|&s| self.states[s].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A group element as a product of automaton states, identity dropped.
/// Equality of the underlying group elements is `MealyAutomaton::equal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub word: Vec<usize>,
}

/// Partition refinement: states are bisimilar iff they have the same output
/// row and bisimilar transitions. Returns the block index per state.
fn minimize(output: &[Vec<usize>], transition: &[Vec<usize>]) -> Vec<usize> {
    let n = output.len();
    let mut block: Vec<usize> = {
        let mut keys: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        output
            .iter()
            .map(|o| {
                let next = keys.len();
                *keys.entry(o).or_insert(next)
            })
            .collect()
    };
    loop {
        let mut keys: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..n)
            .map(|s| {
                let sig = (
                    block[s],
                    transition[s].iter().map(|&t| block[t]).collect::<Vec<_>>(),
                );
                let fresh = keys.len();
                *keys.entry(sig).or_insert(fresh)
            })
            .collect();
        if next == block {
            return block;
        }
        block = next;
    }
}

/// Input-side presentation of one state.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct RawState {
    pub name: String,
    /// `wreath[x]` = (label of g.x, name of g|_x).
    pub wreath: Vec<(String, String)>,
}

/// JSON schema: `{"alphabet": [...], "states": [{"name", "wreath"}...]}`.
#[derive(Clone, Debug, Serialize)]
pub struct AutomatonSpec {
    pub alphabet: Vec<String>,
    pub states: Vec<RawState>,
}

impl<'de> Deserialize<'de> for AutomatonSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            alphabet: Vec<String>,
            states: Vec<RawState>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.alphabet.is_empty() {
            return Err(D::Error::custom("alphabet must be nonempty"));
        }
        Ok(AutomatonSpec { alphabet: raw.alphabet, states: raw.states })
    }
}

impl AutomatonSpec {
    pub fn build(self) -> Result<MealyAutomaton> {
        MealyAutomaton::new(self.alphabet, self.states)
    }
}
