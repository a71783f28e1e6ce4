//! Dense exact linear algebra over the rationals (Gaussian elimination).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(m: usize) -> Matrix {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = b.len();
    if a.iter().any(|row| row.len() != inner) {
        return Err(Error::DimensionMismatch {
            expected: inner,
            found: a.first().map_or(0, Vec::len),
        });
    }
    let cols = b.first().map_or(0, Vec::len);
    Ok(a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Matrix) -> usize {
    let mut a = a.clone();
    row_reduce(&mut a).len()
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != m || pivots.last() == Some(&m) {
        return Err(Error::InvalidParameter("singular system".into()));
    }
    Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let m = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(m))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != m || pivots.iter().any(|&c| c >= m) {
        return Err(Error::InvalidParameter("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|row| row[m..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_and_inverts() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv).unwrap(), identity(2));
        assert_eq!(rank(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert!(inverse(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_err());
    }
}
