//! Exact rational scalars, dense matrices and fraction-free elimination.

mod matrix;
mod rational;

pub use matrix::Matrix;
pub use rational::{q, qi, ParseRationalError, Rational};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Scales each row by the lcm of its denominators so that it becomes integral.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    if den.is_one() {
        return num;
    }
    let (quot, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "fraction-free elimination lost exactness");
    quot
}

/// Fraction-free Gauss-Jordan reduction restricted to the first `pivot_cols` columns.
///
/// On return every pivot entry equals `det` and every other entry of a pivot column is zero.
struct Reduced {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    det: BigInt,
}

fn gauss_jordan(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Reduced {
    let nrows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let aic = std::mem::take(&mut row[c]);
            for j in 0..width {
                if j == c {
                    continue;
                }
                let mut v = &piv * &row[j];
                if !aic.is_zero() && !pivot_row[j].is_zero() {
                    v -= &aic * &pivot_row[j];
                }
                row[j] = exact_div(v, &prev);
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Reduced {
        rows: a,
        pivots,
        det: prev,
    }
}

/// Exact rank via Bareiss elimination on integer-scaled rows.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let nrows = a.len();
    let ncols = m.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let aic = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = piv * &row[j];
                if !aic.is_zero() && !pivot_row[j].is_zero() {
                    v -= &aic * &pivot_row[j];
                }
                row[j] = exact_div(v, &prev);
            }
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

fn primitive(v: Vec<BigInt>) -> Vec<Rational> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    v.into_iter()
        .map(|x| {
            if g.is_zero() {
                Rational::zero()
            } else {
                Rational::from(x / &g)
            }
        })
        .collect()
}

/// Basis of the right kernel; each vector is integral, primitive and has a positive
/// entry at its free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let ncols = m.cols();
    let red = gauss_jordan(integer_rows(m), ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let sign = if red.det.is_negative() { -BigInt::one() } else { BigInt::one() };
    let d = red.det.abs();
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![BigInt::zero(); ncols];
            x[f] = d.clone();
            for (i, &c) in red.pivots.iter().enumerate() {
                x[c] = -&red.rows[i][f] * &sign;
            }
            primitive(x)
        })
        .collect()
}

/// Indices of the pivot columns of the reduced row echelon form, in increasing order.
pub fn pivot_columns(m: &Matrix) -> Vec<usize> {
    gauss_jordan(integer_rows(m), m.cols()).pivots
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "solve: matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let ncols = a.cols();
    let mut aug = Matrix::zeros(a.rows(), ncols + 1);
    for i in 0..a.rows() {
        for j in 0..ncols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, ncols)] = b[i].clone();
    }
    let red = gauss_jordan(integer_rows(&aug), ncols);
    let r = red.pivots.len();
    if red.rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); ncols];
    let det = Rational::from(red.det.clone());
    for (i, &c) in red.pivots.iter().enumerate() {
        x[c] = Rational::from(red.rows[i][ncols].clone()) / &det;
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    assert!(a.is_square(), "inverse of a non-square matrix");
    let n = a.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let red = gauss_jordan(integer_rows(&aug), n);
    if red.pivots.len() < n {
        return None;
    }
    let det = Rational::from(red.det.clone());
    Some(Matrix::from_fn(n, n, |i, j| {
        Rational::from(red.rows[i][n + j].clone()) / &det
    }))
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    assert_eq!(u.len(), v.len(), "dot product length mismatch");
    let mut acc = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Rational], vectors: &[Vec<Rational>], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

pub fn unit_vector(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 3)), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let a = m(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 0, 0, 1], &[0, 3, 6, 0]]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn nullspace_examples() {
        let ns = nullspace(&m(&[&[1, 1]]));
        assert_eq!(ns, vec![vec![qi(-1), qi(1)]]);
        assert!(nullspace(&Matrix::identity(4)).is_empty());
        assert_eq!(nullspace(&Matrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve(&Matrix::identity(2), &[qi(3), qi(5)]).unwrap(),
            Some(vec![qi(3), qi(5)])
        );
        assert_eq!(solve(&m(&[&[1, 1], &[1, 1]]), &[qi(1), qi(0)]).unwrap(), None);
        assert_eq!(solve(&m(&[&[2]]), &[qi(1)]).unwrap(), Some(vec![q(1, 2)]));
        assert!(solve(&m(&[&[2]]), &[qi(1), qi(2)]).is_err());
    }

    #[test]
    fn inverse_examples() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn rational_entries() {
        let a = Matrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), qi(1)]]);
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&ns[0])));
    }
}
