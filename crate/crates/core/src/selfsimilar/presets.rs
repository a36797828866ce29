//! Bundled automata: binary and n-ary odometers (the degree-n torus
//! dilations in dimension one), the Grigorchuk group, and the trivial
//! automaton.

use super::automaton::{MealyAutomaton, RawState};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Binary adding machine a = (1, a) sigma: a . 0w = 1w, a . 1w = 0 (a . w).
pub fn odometer() -> MealyAutomaton {
    odometer_n(2)
}

/// n-ary adding machine: adds one with carry, least significant letter
/// consumed first. The limit space is the circle and the induced shift is
/// the degree-n covering, realizing the one-dimensional dilation family.
pub fn odometer_n(n: usize) -> MealyAutomaton {
    assert!(n >= 2);
    let wreath: Vec<(String, String)> = (0..n)
        .map(|x| {
            let out = ((x + 1) % n).to_string();
            let rest = if x == n - 1 { "a" } else { "1" };
            (out, rest.to_string())
        })
        .collect();
    MealyAutomaton::new(
        labels(n),
        vec![RawState { name: "a".into(), wreath }],
    )
    .expect("odometer preset is well formed")
}

/// The Grigorchuk group: a = sigma, b = (a, c), c = (a, d), d = (1, b).
pub fn grigorchuk() -> MealyAutomaton {
    let st = |name: &str, w0: (&str, &str), w1: (&str, &str)| RawState {
        name: name.into(),
        wreath: vec![
            (w0.0.to_string(), w0.1.to_string()),
            (w1.0.to_string(), w1.1.to_string()),
        ],
    };
    MealyAutomaton::new(
        labels(2),
        vec![
            st("a", ("1", "1"), ("0", "1")),
            st("b", ("0", "a"), ("1", "c")),
            st("c", ("0", "a"), ("1", "d")),
            st("d", ("0", "1"), ("1", "b")),
        ],
    )
    .expect("grigorchuk preset is well formed")
}

/// Identity-only automaton on two letters.
pub fn trivial() -> MealyAutomaton {
    MealyAutomaton::new(labels(2), Vec::new()).expect("trivial preset is well formed")
}
