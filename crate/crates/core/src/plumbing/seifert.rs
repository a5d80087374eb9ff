use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::det::{bareiss_det, PolyMatrix};
use super::tree::PlumbingTree;
use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::sign::Sign;

/// Square integer matrix of linking numbers, with its determinant cached.
#[derive(Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    dim: usize,
    entries: Vec<BigInt>,
    det: BigInt,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
        let det = bareiss_det(rows.clone());
        Ok(SeifertMatrix { dim, entries: rows.into_iter().flatten().collect(), det })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Parses `"a,b;c,d"` (rows separated by `;`). The empty string is the
    /// 0x0 matrix.
    pub fn parse_rows(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// Sign of the determinant: -1, 0 or 1.
    pub fn sign(&self) -> i8 {
        if self.det.is_zero() {
            0
        } else if self.det.is_positive() {
            1
        } else {
            -1
        }
    }

    /// `|det S| = 1`, as for the Seifert matrix of a fiber surface.
    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        SeifertMatrix { dim: n, entries, det: self.det.clone() }
    }

    /// Upper-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let k = k.min(self.dim);
        let rows = (0..k)
            .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
            .collect();
        Self::new(rows).expect("square by construction")
    }

    /// `t * S - (S^T + shift)` entrywise, where `shift` is added to `S^T`.
    pub(crate) fn pencil(&self, shift: Option<&[Vec<BigInt>]>) -> PolyMatrix {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut constant = self.get(j, i).clone();
                        if let Some(s) = shift {
                            constant += &s[i][j];
                        }
                        IntPoly::new(vec![-constant, self.get(i, j).clone()])
                    })
                    .collect()
            })
            .collect()
    }

    /// The Alexander pencil `t S - S^T`.
    pub fn alexander_pencil(&self) -> PolyMatrix {
        self.pencil(None)
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix{:?}", self.rows())
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

/// `S_Gamma`: vertex signs on the diagonal and one `-1` per edge, placed in
/// the lower triangle at `(max(i,j), min(i,j))`.
pub fn seifert_from_tree(tree: &PlumbingTree) -> SeifertMatrix {
    let n = tree.len();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for (i, s) in tree.signs().iter().enumerate() {
        rows[i][i] = s.to_big();
    }
    for &(a, b) in tree.edges() {
        rows[a.max(b)][a.min(b)] = BigInt::from(-1);
    }
    SeifertMatrix::new(rows).expect("square by construction")
}

/// Appends `steps` Hopf bands, each as a new last row `[0, ..., 0, -1, ±1]`
/// with a zero column above the new corner.
pub fn iterate_plumb_seifert(s: &SeifertMatrix, sign: Sign, steps: usize) -> SeifertMatrix {
    let mut rows = s.rows();
    for _ in 0..steps {
        let k = rows.len();
        for r in rows.iter_mut() {
            r.push(BigInt::zero());
        }
        let mut last = vec![BigInt::zero(); k + 1];
        if k > 0 {
            last[k - 1] = BigInt::from(-1);
        }
        last[k] = sign.to_big();
        rows.push(last);
    }
    SeifertMatrix::new(rows).expect("square by construction")
}

fn inverse_unimodular(s: &SeifertMatrix) -> Vec<Vec<BigInt>> {
    let n = s.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| BigRational::from_integer(s.get(i, j).clone()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("unimodular matrix is invertible");
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &factor * p;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row.into_iter()
                .skip(n)
                .map(|v| {
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Characteristic polynomial of the homological monodromy `S^T S^{-1}`,
/// by Faddeev–LeVerrier over the integers.
pub fn monodromy_char_poly(s: &SeifertMatrix) -> Result<IntPoly> {
    if !s.is_unimodular() {
        return Err(Error::NotFibered { det: s.det().to_string() });
    }
    let n = s.dim();
    let inv = inverse_unimodular(s);
    let h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| s.get(k, i) * &inv[k][j]).sum())
                .collect()
        })
        .collect();
    let matmul = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&h, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let hm = matmul(&h, &m);
        let trace: BigInt = (0..n).map(|i| hm[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    Ok(IntPoly::new(coeffs))
}
