//! Dense linear algebra over an exact field.

use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

/// Exact field operations needed by elimination.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl Field for RationalFunction {}
impl Field for BigRational {}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Matrix<F> = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
    }
    det
}

/// Inverse by Gauss–Jordan elimination.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Matrix<F>> {
    let n = m.len();
    let mut a: Matrix<F> = m.to_vec();
    let mut inv = identity::<F>(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].clone() / p.clone();
            inv[col][c] = inv[col][c].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let v = a[r][c].clone() - factor.clone() * a[col][c].clone();
                a[r][c] = v;
                let w = inv[r][c].clone() - factor.clone() * inv[col][c].clone();
                inv[r][c] = w;
            }
        }
    }
    Ok(inv)
}

pub fn multiply<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(F::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][c].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][c].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(v: &[F], m: &[Vec<F>]) -> Vec<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| {
            v.iter().zip(m).fold(F::zero(), |acc, (x, row)| {
                if x.is_zero() || row[c].is_zero() {
                    acc
                } else {
                    acc + x.clone() * row[c].clone()
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rf;

    fn rf(s: &str) -> Rf {
        s.parse().unwrap()
    }

    #[test]
    fn two_by_two_character_table() {
        let t = alloc::vec![
            alloc::vec![Rf::one(), Rf::one()],
            alloc::vec![rf("q-1"), rf("-1")]
        ];
        assert_eq!(determinant(&t), rf("-q"));
        let inv = inverse(&t).unwrap();
        assert_eq!(multiply(&t, &inv), identity(2));
    }

    #[test]
    fn singular_matrix() {
        let t = alloc::vec![
            alloc::vec![BigRational::one(), BigRational::one()],
            alloc::vec![BigRational::one(), BigRational::one()]
        ];
        assert!(determinant(&t).is_zero());
        assert_eq!(inverse(&t), Err(Error::Singular));
    }
}
