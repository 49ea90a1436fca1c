//! Exact linear algebra on small rational matrices: inversion, Sylvester
//! signature and row reduction.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{one, Scalar};
use crate::tensor::{Tensor, Variance};

/// Inertia of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

fn square_rows(t: &Tensor) -> Result<Vec<Vec<Scalar>>> {
    if t.rank() != 2 || t.shape()[0] != t.shape()[1] {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: t.rank(),
        });
    }
    Ok(t.rows())
}

pub fn is_symmetric(t: &Tensor) -> bool {
    t.rank() == 2
        && t.shape()[0] == t.shape()[1]
        && (0..t.shape()[0]).all(|i| (0..i).all(|j| t[&[i, j][..]] == t[&[j, i][..]]))
}

/// Gauss-Jordan inverse of a square matrix.
pub fn invert(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMetric)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..2 * n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse `g^{ij}` of a non-degenerate symmetric `(0,2)` form.
pub fn invert_symmetric(g: &Tensor) -> Result<Tensor> {
    let rows = square_rows(g)?;
    let inv = invert(&rows)?;
    Tensor::from_rows(&inv, [Variance::Up, Variance::Up])
}

/// Inertia by symmetric congruence elimination. A zero diagonal with a
/// nonzero off-diagonal entry `a_pq` is handled by the change `e_p -> e_p + e_q`,
/// which puts `2 a_pq` on the diagonal.
pub fn signature(g: &Tensor) -> Result<Signature> {
    let mut a = square_rows(g)?;
    if !is_symmetric(g) {
        return Err(Error::NotSymmetric);
    }
    let mut sig = Signature::new(0, 0, 0);
    while !a.is_empty() {
        let m = a.len();
        let pivot = match (0..m).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let off = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                match off {
                    None => {
                        sig.zero += m;
                        break;
                    }
                    Some((p, q)) => {
                        // row/column p += row/column q
                        for c in 0..m {
                            let v = a[q][c].clone();
                            a[p][c] += v;
                        }
                        for r in 0..m {
                            let v = a[r][q].clone();
                            a[r][p] += v;
                        }
                        p
                    }
                }
            }
        };
        a.swap(0, pivot);
        for row in a.iter_mut() {
            row.swap(0, pivot);
        }
        let d = a[0][0].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let mut rest = Vec::with_capacity(m - 1);
        for i in 1..m {
            let li = &a[i][0] / &d;
            rest.push((1..m).map(|j| &a[i][j] - &li * &a[0][j]).collect::<Vec<_>>());
        }
        a = rest;
    }
    Ok(sig)
}

/// Reduced row echelon form; returns the nonzero rows (a basis of the row
/// space).
pub fn row_basis(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].recip();
        for v in a[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..a.len() {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

pub fn matrix_rank(rows: &[Vec<Scalar>]) -> usize {
    row_basis(rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use Variance::Down;

    fn form(rows: &[&[i64]]) -> Tensor {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Tensor::from_rows(&rows, [Down, Down]).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let id = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(invert_symmetric(&id).unwrap().rows(), id.rows());
        let d = form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        assert_eq!(invert_symmetric(&d).unwrap().rows(), d.rows());
        // cofactors: inverse of [[0,-1],[-1,0]] is adj/det = [[0,1],[1,0]]/(-1)
        let h = form(&[&[0, -1], &[-1, 0]]);
        assert_eq!(invert_symmetric(&h).unwrap().rows(), h.rows());
        assert_eq!(invert_symmetric(&h).unwrap().variance(), &[Variance::Up, Variance::Up]);
    }

    #[test]
    fn singular_metric() {
        let s = form(&[&[1, 1], &[1, 1]]);
        assert_eq!(invert_symmetric(&s), Err(Error::SingularMetric));
        let skew = Tensor::from_rows(&[vec![int(0), int(1)], vec![int(-1), int(0)]], [Variance::Down, Variance::Down]).unwrap();
        assert_eq!(signature(&skew), Err(Error::NotSymmetric));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&form(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap(), Signature::new(2, 1, 0));
        assert_eq!(signature(&form(&[&[0, 0], &[0, 0]])).unwrap(), Signature::new(0, 0, 2));
        let hyperbolic = form(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, 1]]);
        assert_eq!(signature(&hyperbolic).unwrap(), Signature::new(2, 1, 0));
        let degenerate = form(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -3]]);
        assert_eq!(signature(&degenerate).unwrap(), Signature::new(1, 1, 1));
    }

    #[test]
    fn rank_of_rows() {
        let rows = vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(0)]];
        assert_eq!(matrix_rank(&rows), 1);
        assert_eq!(matrix_rank(&[]), 0);
    }
}
