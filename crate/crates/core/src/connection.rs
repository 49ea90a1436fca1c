//! Levi-Civita connection of a left-invariant metric and covariant
//! derivatives of left-invariant tensor fields.
//!
//! All tensors here have constant components on the Lie algebra basis, so
//! directional derivatives of components vanish and every covariant
//! derivative reduces to Christoffel corrections.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie_algebra::LieAlgebra;
use crate::scalar::{frac, Scalar};
use crate::structure::AcnModel;
use crate::tensor::{Tensor, Variance};

const GAMMA_VARIANCE: [Variance; 3] = [Variance::Up, Variance::Down, Variance::Down];

/// Christoffel symbols in slot order `(k, i, j)`: `∇_{x_i} x_j = Γ^k_ij x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    /// Wraps arbitrary components. No torsion or metricity is implied; this is
    /// how perturbed connections are built for negative controls.
    pub fn from_components(gamma: Tensor) -> Result<Self> {
        let d = gamma.shape().first().copied().unwrap_or(0);
        if gamma.rank() != 3 || gamma.shape().iter().any(|&n| n != d) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: gamma.rank(),
            });
        }
        if gamma.variance() != GAMMA_VARIANCE {
            return Err(Error::VarianceMismatch {
                up: 0,
                down: 1,
                up_variance: "gamma",
                down_variance: "expected (up, down, down)",
            });
        }
        Ok(Self { gamma })
    }

    pub fn dim(&self) -> usize {
        self.gamma.shape()[0]
    }

    pub fn gamma(&self) -> &Tensor {
        &self.gamma
    }

    pub fn into_gamma(self) -> Tensor {
        self.gamma
    }

    /// `Γ^k_ij`
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Scalar {
        self.gamma.get(&[k, i, j])
    }

    /// `∇_X Y` for left-invariant fields.
    pub fn nabla(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let w = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.christoffel(k, i, j);
                    if !c.is_zero() {
                        *o += c * &w;
                    }
                }
            }
        }
        out
    }

    /// `∇_{x_i} x_j` as a coordinate vector.
    pub fn nabla_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.christoffel(k, i, j).clone()).collect()
    }

    /// `T^k_ij = Γ^k_ij − Γ^k_ji − c^k_ij`.
    pub fn torsion(&self, algebra: &LieAlgebra) -> Tensor {
        Tensor::from_fn(self.dim(), &GAMMA_VARIANCE, |i| {
            let (k, a, b) = (i[0], i[1], i[2]);
            self.christoffel(k, a, b) - self.christoffel(k, b, a) - algebra.constant(k, a, b)
        })
    }

    /// `(∇_{x_i} g)(x_j, x_k)`, zero iff the connection is metric.
    pub fn metric_defect(&self, g: &Tensor) -> Result<Tensor> {
        covariant_derivative(self, g)
    }
}

/// Solves the Koszul formula with only bracket terms:
/// `2 g(∇_{x_i} x_j, x_k) = g([x_i,x_j],x_k) + g([x_k,x_i],x_j) + g([x_k,x_j],x_i)`.
pub fn levi_civita(m: &AcnModel) -> Result<Connection> {
    let d = m.dim();
    let ginv = m.metric_inverse()?;
    let c = &m.algebra;
    // lowered[k][i][j] = g(∇_{x_i} x_j, x_k)
    let half = frac(1, 2);
    let bracket_dot = |a: usize, b: usize, e: usize| -> Scalar {
        (0..d).map(|s| c.constant(s, a, b) * m.g_at(s, e)).sum()
    };
    let lowered = Tensor::from_fn(d, &[Variance::Down; 3], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        (bracket_dot(i, j, k) + bracket_dot(k, i, j) + bracket_dot(k, j, i)) * &half
    });
    let gamma = Tensor::from_fn(d, &GAMMA_VARIANCE, |idx| {
        let (l, i, j) = (idx[0], idx[1], idx[2]);
        (0..d)
            .filter(|&k| !ginv.get(&[l, k]).is_zero())
            .map(|k| ginv.get(&[l, k]) * lowered.get(&[k, i, j]))
            .sum()
    });
    Connection::from_components(gamma)
}

/// `∇T` for a left-invariant tensor `T`. The derivative direction becomes
/// slot 0 of the result; the original slots follow in order.
pub fn covariant_derivative(conn: &Connection, t: &Tensor) -> Result<Tensor> {
    let d = conn.dim();
    if let Some(&bad) = t.shape().iter().find(|&&n| n != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad,
        });
    }
    let mut variance = vec![Variance::Down];
    variance.extend_from_slice(t.variance());
    let mut out = Tensor::square(d, &variance);
    let tv = t.variance();
    let mut moved = vec![0; t.rank()];
    for (idx, _) in t.entries() {
        for i in 0..d {
            let mut acc = Scalar::zero();
            for (s, var) in tv.iter().enumerate() {
                moved.copy_from_slice(&idx);
                for m in 0..d {
                    moved[s] = m;
                    let comp = t.get(&moved);
                    if comp.is_zero() {
                        continue;
                    }
                    match var {
                        Variance::Up => acc += conn.christoffel(idx[s], i, m) * comp,
                        Variance::Down => acc -= conn.christoffel(m, i, idx[s]) * comp,
                    }
                }
            }
            if !acc.is_zero() {
                let mut full = Vec::with_capacity(idx.len() + 1);
                full.push(i);
                full.extend_from_slice(&idx);
                out.set(&full, acc);
            }
        }
    }
    Ok(out)
}

/// `(∇²T)(x, y) = ∇_x(∇_y T) − ∇_{∇_x y} T`, slots `(x, y, …)`.
pub fn second_covariant_derivative(conn: &Connection, t: &Tensor) -> Result<Tensor> {
    covariant_derivative(conn, &covariant_derivative(conn, t)?)
}

/// Defect of `(∇²φ)(x,y)z − (∇²φ)(y,x)z = R(x,y)φz − φR(x,y)z`, slots
/// `(x, y, z, out)`. `curvature` is `R(x_i, x_j) x_k = R^l x_l` stored as
/// `(i, j, k, l)`.
pub fn ricci_identity_defect_phi(conn: &Connection, phi: &Tensor, curvature: &Tensor) -> Result<Tensor> {
    let d = conn.dim();
    let hess = second_covariant_derivative(conn, phi)?;
    Ok(Tensor::from_fn(
        d,
        &[Variance::Down, Variance::Down, Variance::Down, Variance::Up],
        |idx| {
            let (x, y, z, l) = (idx[0], idx[1], idx[2], idx[3]);
            let lhs = hess.get(&[x, y, l, z]) - hess.get(&[y, x, l, z]);
            let mut rhs = Scalar::zero();
            for m in 0..d {
                rhs += phi.get(&[m, z]) * curvature.get(&[x, y, m, l]);
                rhs -= phi.get(&[l, m]) * curvature.get(&[x, y, z, m]);
            }
            lhs - rhs
        },
    ))
}

/// Defect of `(∇²η)(x,y)z − (∇²η)(y,x)z = −η(R(x,y)z)`, slots `(x, y, z)`.
pub fn ricci_identity_defect_eta(conn: &Connection, eta: &[Scalar], curvature: &Tensor) -> Result<Tensor> {
    let d = conn.dim();
    let hess = second_covariant_derivative(conn, &Tensor::covector(eta.to_vec()))?;
    Ok(Tensor::from_fn(d, &[Variance::Down; 3], |idx| {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let lhs = hess.get(&[x, y, z]) - hess.get(&[y, x, z]);
        let rhs: Scalar = -(0..d).map(|l| &eta[l] * curvature.get(&[x, y, z, l])).sum::<Scalar>();
        lhs - rhs
    }))
}
