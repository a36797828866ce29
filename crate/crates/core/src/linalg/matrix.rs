use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
///
/// Every operation in this module is exact; no rounding ever occurs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            entries: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    /// Square matrix from nested rows, for tests and presets.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&e| BigInt::from(e)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// n x n scalar matrix c*I.
    pub fn scalar(n: usize, c: &BigInt) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let entries = self.entries.iter().map(|e| e * c).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    /// Matrix power by repeated multiplication. Exponent 0 gives the identity.
    pub fn pow(&self, e: usize) -> IntMatrix {
        assert!(self.is_square());
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect_one = i == j;
                if self[(i, j)].is_one() != expect_one || (!expect_one && !self[(i, j)].is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: division is exact at every step.
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let pivot = (rank..self.rows).find(|&i| !m[i][col].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for j in col..self.cols {
                let v = &m[rank][j] * &inv;
                m[rank][j] = v;
            }
            for i in 0..self.rows {
                if i != rank && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in col..self.cols {
                        let v = &m[i][j] - &f * &m[rank][j];
                        m[i][j] = v;
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact inverse over the rationals. Errors on singular input.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.require_square()?;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|j| BigRational::from(self[(i, j)].clone()))
                    .collect();
                for j in 0..n {
                    row.push(if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    });
                }
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m[i][col].is_zero()).ok_or(Error::Singular)?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for j in 0..2 * n {
                let v = &m[col][j] * &inv;
                m[col][j] = v;
            }
            for i in 0..n {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in 0..2 * n {
                        let v = &m[i][j] - &f * &m[col][j];
                        m[i][j] = v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// The j-th compound matrix: the C(d,j) x C(d,j) matrix of j x j minors,
    /// rows and columns indexed by increasing index tuples in lexicographic
    /// order. Satisfies compound(M N) = compound(M) compound(N).
    pub fn exterior_power(&self, j: usize) -> Result<IntMatrix> {
        let d = self.require_square()?;
        if j > d {
            return Err(Error::ExteriorIndex { j, d });
        }
        let combos = combinations(d, j);
        let n = combos.len();
        let mut out = IntMatrix::zero(n, n);
        for (r, rows) in combos.iter().enumerate() {
            for (c, cols) in combos.iter().enumerate() {
                out[(r, c)] = self.minor(rows, cols)?;
            }
        }
        Ok(out)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<BigInt> {
        let k = rows.len();
        let mut sub = IntMatrix::zero(k, k);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                sub[(i, j)] = self[(r, c)].clone();
            }
        }
        sub.det()
    }

    /// Leading principal minors det(M[..k, ..k]) for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Result<Vec<BigInt>> {
        let n = self.require_square()?;
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut sub = IntMatrix::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    sub[(i, j)] = self[(i, j)].clone();
                }
            }
            out.push(sub.det()?);
        }
        Ok(out)
    }

    /// Matrix-vector product over exact rationals.
    pub fn apply_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc += BigRational::from(self[(i, j)].clone()) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// All j-element subsets of {0..d}, each increasing, in lexicographic order.
pub fn combinations(d: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(j);
    fn rec(start: usize, d: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, j, cur, out);
            cur.pop();
        }
    }
    rec(0, d, j, &mut cur, &mut out);
    out
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// Matrices serialize as arrays of arrays of decimal strings so that
// arbitrary-precision entries survive JSON round-trips.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatrixVisitor;

        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = IntMatrix;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of arrays of decimal strings or integers")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntMatrix, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum Cell {
                    Int(i64),
                    Str(String),
                }
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Cell>>()? {
                    let parsed: std::result::Result<Vec<BigInt>, A::Error> = row
                        .into_iter()
                        .map(|c| match c {
                            Cell::Int(v) => Ok(BigInt::from(v)),
                            Cell::Str(s) => BigInt::from_str(s.trim()).map_err(|_| {
                                de::Error::custom(format!("invalid integer literal {s:?}"))
                            }),
                        })
                        .collect();
                    rows.push(parsed?);
                }
                let r = rows.len();
                let c = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|row| row.len() != c) {
                    return Err(de::Error::custom("ragged matrix rows"));
                }
                Ok(IntMatrix {
                    rows: r,
                    cols: c,
                    entries: rows.into_iter().flatten().collect(),
                })
            }
        }

        deserializer.deserialize_seq(MatrixVisitor)
    }
}

/// sign(x) as an i32 in {-1, 0, 1}.
pub fn bigint_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_cofactor_expansion_small() {
        let m = IntMatrix::from_rows(&[&[2, 3], &[1, 4]]);
        assert_eq!(m.det().unwrap(), BigInt::from(5));
        let m = IntMatrix::from_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-3));
        let singular = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn rank_of_rectangular() {
        let m = IntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let m = IntMatrix::from_rows(&[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn json_round_trip_uses_decimal_strings() {
        let m = IntMatrix::from_rows(&[&[1, -2], &[0, 7]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1","-2"],["0","7"]]"#);
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // Plain integer cells are accepted on input.
        let from_ints: IntMatrix = serde_json::from_str("[[1,-2],[0,7]]").unwrap();
        assert_eq!(from_ints, m);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn inverse_rational_round_trips() {
        let m = IntMatrix::from_rows(&[&[1, -1], &[1, 1]]);
        let inv = m.inverse_rational().unwrap();
        // m * inv = identity
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = BigRational::zero();
                for k in 0..2 {
                    acc += BigRational::from(m[(i, k)].clone()) * &inv[k][j];
                }
                let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                assert_eq!(acc, expect);
            }
        }
    }
}
