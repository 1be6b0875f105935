//! Dense square matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Int, Rational};

/// Square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![Int::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch(format!(
                "expected {n} columns in every row"
            )));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("square literal matrix")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Int>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.n {
            let v = self.get(src, j) * k;
            self.data[dst * self.n + j] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.n {
            let v = self.get(i, src) * k;
            self.data[i * self.n + dst] += v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        let n = self.n;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.rows();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Inverse over the rationals, `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self
                    .row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(p, c);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x = &*x / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..2 * n {
                        let v = &f * &a[c][j];
                        a[r][j] -= v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse over the integers, `None` unless the matrix is unimodular.
    pub fn integer_inverse(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let rows = inv
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|q| q.is_integer().then(|| q.to_integer()))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        IntMatrix::from_rows(rows).ok()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// `self * v` for a column vector of rationals.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| {
                        acc + Rational::from_integer(a.clone()) * x
                    })
            })
            .collect()
    }

    pub fn max_abs_entry(&self) -> Int {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.n)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row(i)
                            .iter()
                            .map(|x| match x.to_i64() {
                                Some(v) => serde_json::Value::from(v),
                                None => serde_json::Value::from(x.to_string()),
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: IntMatrix) -> IntMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        parse_matrix_value(&v).map_err(D::Error::custom)
    }
}

/// Reads a JSON array of integer rows. Entries may be numbers or decimal strings.
pub fn parse_matrix_value(v: &serde_json::Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be a JSON array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|x| match x {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
                    serde_json::Value::String(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
                    other => Err(Error::Parse(format!("not an integer: {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}
