//! Exact determinants: fraction-free elimination over the integers and
//! evaluation–interpolation for polynomial matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::polyring::IntPoly;

/// Square matrix of polynomials, row-major.
pub type PolyMatrix = Vec<Vec<IntPoly>>;

/// Bareiss fraction-free elimination. Every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Evaluation points `0, 1, -1, 2, -2, ...`.
fn nodes(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
        .map(BigInt::from)
        .collect()
}

/// Interpolating polynomial through `(xs[i], ys[i])`; must be integral.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / dx;
        }
    }
    // Newton form to monomial form, Horner from the top.
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let xk = BigRational::from_integer(xs[k].clone());
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xk;
        }
        next[0] += &dd[k];
        acc = next;
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral interpolant of an integer determinant");
                c.to_integer()
            })
            .collect(),
    )
}

/// Exact determinant of a polynomial matrix.
///
/// Evaluates at `max_degree * dim + 1` integer nodes, takes each integer
/// determinant by Bareiss elimination and interpolates the result.
pub fn poly_matrix_det(m: &[Vec<IntPoly>]) -> Result<IntPoly> {
    poly_matrix_det_with(Execution::default(), m)
}

pub fn poly_matrix_det_with(exec: Execution, m: &[Vec<IntPoly>]) -> Result<IntPoly> {
    let dim = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
    }
    if dim == 0 {
        return Ok(IntPoly::one());
    }
    let max_degree = m
        .iter()
        .flatten()
        .filter_map(IntPoly::degree)
        .max();
    let Some(max_degree) = max_degree else {
        return Ok(IntPoly::zero());
    };
    let xs = nodes(max_degree * dim + 1);
    let ys = par::map(exec, &xs, |x| {
        bareiss_det(
            m.iter()
                .map(|row| row.iter().map(|p| p.eval_int(x)).collect())
                .collect(),
        )
    });
    Ok(interpolate(&xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_det(ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_det(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(bareiss_det(ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(bareiss_det(vec![]), BigInt::one());
    }

    #[test]
    fn bareiss_matches_permutation_expansion() {
        // 4x4 with zero pivots forcing swaps.
        let a = ints(&[&[0, 2, 0, 1], &[3, 0, 1, 0], &[0, 1, 4, 0], &[1, 0, 0, 5]]);
        let n = 4;
        let mut expect = BigInt::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        fn permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == perm.len() {
                out.push(perm.clone());
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permutations(k + 1, perm, out);
                perm.swap(k, i);
            }
        }
        let mut all = Vec::new();
        permutations(0, &mut perm, &mut all);
        for pm in all {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| pm[i] > pm[j])
                .count();
            let mut term = BigInt::one();
            for i in 0..n {
                term *= &a[i][pm[i]];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            expect += term;
        }
        assert_eq!(bareiss_det(a), expect);
    }

    #[test]
    fn constant_identity() {
        let m = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]];
        assert_eq!(poly_matrix_det(&m).unwrap(), p(&[1]));
    }

    #[test]
    fn figure_eight_matrix() {
        // tS - S^T for S = [[-1,0],[-1,1]]: [[-t+1, 1], [-t, t-1]]
        let m = vec![vec![p(&[1, -1]), p(&[1])], vec![p(&[0, -1]), p(&[-1, 1])]];
        assert_eq!(poly_matrix_det(&m).unwrap(), p(&[-1, 3, -1]));
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = vec![vec![p(&[]), p(&[])], vec![p(&[1, 2]), p(&[3])]];
        assert!(poly_matrix_det(&m).unwrap().is_zero());
    }

    #[test]
    fn higher_degree_entries() {
        // det [[t^2, 1], [1, t]] = t^3 - 1
        let m = vec![vec![p(&[0, 0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(poly_matrix_det(&m).unwrap(), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = vec![vec![p(&[1]), p(&[1])]];
        assert!(poly_matrix_det(&m).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let m: PolyMatrix = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| p(&[(i * 3 + j) as i64 % 5 - 2, ((i + j) % 3) as i64 - 1]))
                    .collect()
            })
            .collect();
        assert_eq!(
            poly_matrix_det_with(Execution::Sequential, &m).unwrap(),
            poly_matrix_det_with(Execution::Parallel, &m).unwrap()
        );
    }
}
