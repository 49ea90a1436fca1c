//! Real Lie algebras given by structure constants on a fixed basis.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::row_basis;
use crate::scalar::{self, Scalar};
use crate::tensor::{Tensor, Variance};

/// Structure constants `c^k_ij` with `[x_i, x_j] = c^k_ij x_k`, stored in
/// slot order `(k, i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    c: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntisymmetryViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(with = "scalar::serde_str")]
    pub sum: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    #[serde(with = "scalar::serde_str")]
    pub value: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraValidation {
    pub antisymmetry: Vec<AntisymmetryViolation>,
    pub jacobi: Vec<JacobiViolation>,
}

impl AlgebraValidation {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }

    /// One human-readable line per violation.
    pub fn messages(&self) -> Vec<String> {
        let anti = self.antisymmetry.iter().map(|v| {
            format!(
                "antisymmetry: c^{k}_{i}{j} + c^{k}_{j}{i} = {} (bracket [x{i}, x{j}])",
                v.sum,
                i = v.i,
                j = v.j,
                k = v.k
            )
        });
        let jac = self.jacobi.iter().map(|v| {
            format!(
                "jacobi: cyclic sum for (x{}, x{}, x{}) has x{} component {}",
                v.i, v.j, v.k, v.l, v.value
            )
        });
        anti.chain(jac).collect()
    }
}

impl LieAlgebra {
    pub fn from_structure_constants(c: Tensor) -> Result<Self> {
        let dim = c.shape().first().copied().unwrap_or(0);
        if c.rank() != 3 || c.shape().iter().any(|&n| n != dim) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: c.rank(),
            });
        }
        if c.variance() != [Variance::Up, Variance::Down, Variance::Down] {
            return Err(Error::VarianceMismatch {
                up: 0,
                down: 1,
                up_variance: "c^k_ij",
                down_variance: "expected (up, down, down)",
            });
        }
        Ok(Self { c })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            c: Tensor::square(dim, &[Variance::Up, Variance::Down, Variance::Down]),
        }
    }

    /// Sets `[x_i, x_j] = Σ coeffs[k] x_k` and `[x_j, x_i]` to its negative.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: &[Scalar]) -> Result<()> {
        let dim = self.dim();
        if coeffs.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coeffs.len(),
            });
        }
        for (k, v) in coeffs.iter().enumerate() {
            self.c.set(&[k, i, j], v.clone());
            if i != j {
                self.c.set(&[k, j, i], -v);
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.c.shape()[0]
    }

    pub fn structure_constants(&self) -> &Tensor {
        &self.c
    }

    /// `c^k_ij`
    pub fn constant(&self, k: usize, i: usize, j: usize) -> &Scalar {
        self.c.get(&[k, i, j])
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.constant(k, i, j).clone()).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(k, i, j);
                    if !c.is_zero() {
                        *o += c * &xy;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reports every antisymmetry and Jacobi violation.
    pub fn validate(&self) -> AlgebraValidation {
        let n = self.dim();
        let mut report = AlgebraValidation::default();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let sum = self.constant(k, i, j) + self.constant(k, j, i);
                    if !sum.is_zero() {
                        report.antisymmetry.push(AntisymmetryViolation { i, j, k, sum });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut value = Scalar::zero();
                        for m in 0..n {
                            value += self.constant(m, i, j) * self.constant(l, m, k)
                                + self.constant(m, j, k) * self.constant(l, m, i)
                                + self.constant(m, k, i) * self.constant(l, m, j);
                        }
                        if !value.is_zero() {
                            report.jacobi.push(JacobiViolation { i, j, k, l, value });
                        }
                    }
                }
            }
        }
        report
    }

    /// Dimensions of the derived series `g ⊃ [g,g] ⊃ …` until it stabilizes.
    pub fn derived_series_dims(&self) -> Result<Vec<usize>> {
        let validation = self.validate();
        if !validation.is_valid() {
            return Err(Error::InvalidAlgebra(validation.messages().join("; ")));
        }
        let n = self.dim();
        let mut basis: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let mut dims = vec![basis.len()];
        while !basis.is_empty() {
            let mut spans = Vec::new();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    spans.push(self.bracket(&basis[a], &basis[b])?);
                }
            }
            let next = row_basis(&spans);
            if next.len() == basis.len() {
                break;
            }
            basis = next;
            dims.push(basis.len());
        }
        Ok(dims)
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series_dims()?.last() == Some(&0) || self.dim() == 0)
    }
}
