use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// One-sided eventually periodic sequence prefix . cycle^infinity over
/// symbol indices.
///
/// Normal form: the cycle is primitive (its own minimal period) and is the
/// lexicographically minimal rotation; the prefix is the shortest compatible
/// with that rotation. Two words are equal as sequences iff their normal
/// forms coincide, which makes sequence equality (and hence the kappa
/// function) exactly decidable.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventuallyPeriodicWord {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl EventuallyPeriodicWord {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Self {
        assert!(!cycle.is_empty(), "cycle must be nonempty");
        let mut w = EventuallyPeriodicWord { prefix, cycle };
        w.normalize();
        w
    }

    /// Purely periodic word cycle^infinity.
    pub fn periodic(cycle: Vec<usize>) -> Self {
        Self::new(Vec::new(), cycle)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Symbol at position i (0-based).
    pub fn at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The shifted word with the first letter dropped.
    pub fn shift(&self) -> Self {
        if self.prefix.is_empty() {
            let mut c = self.cycle.clone();
            c.rotate_left(1);
            Self::new(Vec::new(), c)
        } else {
            Self::new(self.prefix[1..].to_vec(), self.cycle.clone())
        }
    }

    pub fn shift_by(&self, k: usize) -> Self {
        let mut w = self.clone();
        for _ in 0..k {
            w = w.shift();
        }
        w
    }

    /// Prepends a finite word.
    pub fn prepend(&self, head: &[usize]) -> Self {
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Self::new(prefix, self.cycle.clone())
    }

    /// Number of positions that determine the word together with one full
    /// cycle: indices >= this bound repeat with the cycle period.
    fn settle(&self) -> usize {
        self.prefix.len()
    }

    /// Exact equality of the shifted sequences sigma^a(self) and
    /// sigma^b(other), decided by comparing a provably sufficient window.
    pub fn eq_shifted(&self, a: usize, other: &Self, b: usize) -> bool {
        let p = self
            .settle()
            .saturating_sub(a)
            .max(other.settle().saturating_sub(b));
        let l = self.cycle.len().lcm(&other.cycle.len());
        for i in 0..p + l {
            if self.at(a + i) != other.at(b + i) {
                return false;
            }
        }
        true
    }

    /// Renders the word using alphabet labels, for reports.
    pub fn display(&self, alphabet: &[String]) -> String {
        let fmt_part = |part: &[usize]| {
            part.iter()
                .map(|&s| alphabet[s].as_str())
                .collect::<Vec<_>>()
                .join("")
        };
        if self.prefix.is_empty() {
            format!("({})^inf", fmt_part(&self.cycle))
        } else {
            format!("{}({})^inf", fmt_part(&self.prefix), fmt_part(&self.cycle))
        }
    }

    fn normalize(&mut self) {
        // 1. Reduce the cycle to its primitive root.
        let root = primitive_root(&self.cycle);
        self.cycle.truncate(root);

        // 2. Shortest prefix: absorb trailing prefix letters that match the
        //    end of the cycle, rotating the cycle right each time.
        while let Some(&last) = self.prefix.last() {
            if last == *self.cycle.last().unwrap() {
                self.prefix.pop();
                self.cycle.rotate_right(1);
            } else {
                break;
            }
        }

        // 3. Pin the cycle to its minimal rotation, re-extending the prefix
        //    by the skipped letters.
        let j = minimal_rotation(&self.cycle);
        if j > 0 {
            self.prefix.extend_from_slice(&self.cycle[..j]);
            self.cycle.rotate_left(j);
        }
    }
}

/// Length of the primitive root of a finite word (smallest period dividing
/// the length).
fn primitive_root(w: &[usize]) -> usize {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return p;
        }
    }
    n
}

/// Index of the lexicographically minimal rotation (Booth's problem; the
/// naive scan is fine at these sizes). Unique for primitive words.
fn minimal_rotation(w: &[usize]) -> usize {
    let n = w.len();
    let mut best = 0;
    for cand in 1..n {
        for i in 0..n {
            let a = w[(cand + i) % n];
            let b = w[(best + i) % n];
            if a < b {
                best = cand;
                break;
            }
            if a > b {
                break;
            }
        }
    }
    best
}

impl fmt::Debug for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.prefix.iter().map(|s| s.to_string()).collect();
        let c: Vec<String> = self.cycle.iter().map(|s| s.to_string()).collect();
        write!(f, "{}({})^inf", p.join(""), c.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_reduces_cycle_to_primitive_root() {
        let w = EventuallyPeriodicWord::new(vec![], vec![0, 1, 0, 1]);
        assert_eq!(w.cycle(), &[0, 1]);
    }

    #[test]
    fn normal_form_shortens_prefix() {
        // 01(01)^inf = (01)^inf: the whole prefix absorbs into the cycle.
        let a = EventuallyPeriodicWord::new(vec![0, 1], vec![0, 1]);
        assert_eq!(a.prefix(), &[] as &[usize]);
        assert_eq!(a.cycle(), &[0, 1]);

        // (10)^inf is canonically 1(01)^inf: minimal cycle rotation wins.
        let b = EventuallyPeriodicWord::new(vec![], vec![1, 0]);
        assert_eq!(b.prefix(), &[1]);
        assert_eq!(b.cycle(), &[0, 1]);
        for i in 0..6 {
            assert_eq!(b.at(i), [1, 0][i % 2]);
        }
    }

    #[test]
    fn equality_is_sequence_equality() {
        let a = EventuallyPeriodicWord::new(vec![0, 0], vec![0]);
        let b = EventuallyPeriodicWord::periodic(vec![0]);
        assert_eq!(a, b, "leading zeros absorb into the 0-cycle");

        let c = EventuallyPeriodicWord::new(vec![1, 1], vec![0]);
        assert_ne!(c, b);
        assert_eq!(c.at(0), 1);
        assert_eq!(c.at(1), 1);
        assert_eq!(c.at(2), 0);
        assert_eq!(c.at(100), 0);
    }

    #[test]
    fn shift_walks_the_word() {
        let w = EventuallyPeriodicWord::new(vec![1, 1], vec![0]);
        let s1 = w.shift();
        assert_eq!(s1, EventuallyPeriodicWord::new(vec![1], vec![0]));
        let s2 = s1.shift();
        assert_eq!(s2, EventuallyPeriodicWord::periodic(vec![0]));
        assert_eq!(s2.shift(), s2);
    }

    #[test]
    fn shift_rotates_pure_cycles() {
        let w = EventuallyPeriodicWord::periodic(vec![0, 1]);
        let s = w.shift();
        assert_eq!(s.at(0), 1);
        assert_eq!(s.at(1), 0);
        assert!(w.eq_shifted(1, &s, 0));
        assert!(!w.eq_shifted(0, &s, 0));
    }

    #[test]
    fn eq_shifted_crosses_prefixes() {
        // sigma^2(110^inf) = 0^inf.
        let x = EventuallyPeriodicWord::new(vec![1, 1], vec![0]);
        let y = EventuallyPeriodicWord::periodic(vec![0]);
        assert!(x.eq_shifted(2, &y, 0));
        assert!(!x.eq_shifted(1, &y, 0));
        assert!(x.eq_shifted(5, &y, 3));
    }
}
