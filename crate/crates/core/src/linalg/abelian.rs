use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;

/// Finitely generated abelian group in canonical form
/// Z^free_rank + Z/t_1 + ... + Z/t_k with 2 <= t_1 | t_2 | ... | t_k.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

/// Torsion entries ride through JSON as decimal strings, like matrices.
mod bigint_strings {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|t| t.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.into_iter()
            .map(|s| BigInt::from_str(&s).map_err(D::Error::custom))
            .collect()
    }
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        AbelianGroup::free(0)
    }

    /// Builds the canonical form from a free rank and arbitrary torsion
    /// entries: zeros become free summands, ones are dropped.
    pub fn from_parts(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let mut free = free_rank;
        let mut tors: Vec<BigInt> = Vec::new();
        for t in torsion {
            if t.is_zero() {
                free += 1;
            } else if !t.is_one() {
                tors.push(t);
            }
        }
        tors.sort();
        AbelianGroup { free_rank: free, torsion: tors }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
    }

    /// Total order when finite, None otherwise.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank == 0 {
            Some(self.torsion_order())
        } else {
            None
        }
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Kernel and cokernel of M viewed as a map Z^cols -> Z^rows.
///
/// The kernel of an integer matrix is always free; the cokernel
/// Z^rows / im(M) is read off the Smith diagonal.
pub fn abelian_group_of(m: &IntMatrix) -> (AbelianGroup, AbelianGroup) {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let kernel = AbelianGroup::free(m.cols() - rank);
    let torsion = snf
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    let cokernel = AbelianGroup::from_parts(m.rows() - rank, torsion);
    (kernel, cokernel)
}
