//! Almost contact structures `(φ, ξ, η)` with a compatible Norden metric `g`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_algebra::LieAlgebra;
use crate::linalg::{invert_symmetric, is_symmetric, signature, Signature};
use crate::scalar::{one, Scalar};
use crate::tensor::{Tensor, Variance};

/// A left-invariant almost contact structure with Norden metric, written in
/// the basis of the Lie algebra.
///
/// `phi` has slots `(up a, down b)` so that `φ x_b = φ^a_b x_a`; `g` has
/// components `g_ab = g(x_a, x_b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcnModel {
    pub name: String,
    pub algebra: LieAlgebra,
    pub phi: Tensor,
    pub xi: Vec<Scalar>,
    pub eta: Vec<Scalar>,
    pub g: Tensor,
}

impl AcnModel {
    /// Assembles a model, checking only shapes and variances. Use
    /// [`validate_structure`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        algebra: LieAlgebra,
        phi: Tensor,
        xi: Vec<Scalar>,
        eta: Vec<Scalar>,
        g: Tensor,
    ) -> Result<Self> {
        let dim = algebra.dim();
        let check = |found: usize| {
            if found == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: dim, found })
            }
        };
        for t in [&phi, &g] {
            if t.rank() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: t.rank(),
                });
            }
            check(t.shape()[0])?;
            check(t.shape()[1])?;
        }
        check(xi.len())?;
        check(eta.len())?;
        if phi.variance() != [Variance::Up, Variance::Down] {
            return Err(Error::VarianceMismatch {
                up: 0,
                down: 1,
                up_variance: "phi",
                down_variance: "expected (up, down)",
            });
        }
        if g.variance() != [Variance::Down, Variance::Down] {
            return Err(Error::VarianceMismatch {
                up: 0,
                down: 1,
                up_variance: "g",
                down_variance: "expected (down, down)",
            });
        }
        Ok(Self {
            name: name.into(),
            algebra,
            phi,
            xi,
            eta,
            g,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `n` with `dim = 2n + 1`, if the dimension is odd.
    pub fn half_dim(&self) -> Option<usize> {
        let d = self.dim();
        (d % 2 == 1).then_some(d / 2)
    }

    /// `φ^a_b`
    pub fn phi_at(&self, a: usize, b: usize) -> &Scalar {
        self.phi.get(&[a, b])
    }

    pub fn g_at(&self, a: usize, b: usize) -> &Scalar {
        self.g.get(&[a, b])
    }

    pub fn apply_phi(&self, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                (0..d)
                    .filter(|&b| !v[b].is_zero())
                    .map(|b| self.phi_at(a, b) * &v[b])
                    .sum()
            })
            .collect()
    }

    /// `φ x_b` as a coordinate vector.
    pub fn phi_basis(&self, b: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|a| self.phi_at(a, b).clone()).collect()
    }

    pub fn metric(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let d = self.dim();
        let mut acc = Scalar::zero();
        for a in 0..d {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if !y[b].is_zero() {
                    acc += &x[a] * self.g_at(a, b) * &y[b];
                }
            }
        }
        acc
    }

    pub fn eta_of(&self, v: &[Scalar]) -> Scalar {
        self.eta.iter().zip(v).map(|(e, x)| e * x).sum()
    }

    pub fn metric_inverse(&self) -> Result<Tensor> {
        invert_symmetric(&self.g)
    }

    /// Lowers an index: `v ↦ g(v, ·)`.
    pub fn lower(&self, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        (0..d)
            .map(|b| (0..d).map(|a| &v[a] * self.g_at(a, b)).sum())
            .collect()
    }

    /// Raises an index: `ω ↦ Ω` with `ω(x) = g(x, Ω)`.
    pub fn raise(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        let ginv = self.metric_inverse()?;
        let d = self.dim();
        Ok((0..d)
            .map(|a| (0..d).map(|b| ginv.get(&[a, b]) * &w[b]).sum())
            .collect())
    }
}

/// Basis vector `x_i` in dimension `dim`.
pub fn basis_vector(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|k| if k == i { one() } else { Scalar::zero() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureValidation {
    pub checks: Vec<StructureCheck>,
}

impl StructureValidation {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn messages(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .flat_map(|c| c.violations.iter().map(move |v| format!("{} ({}): {v}", c.name, c.description)))
            .collect()
    }
}

fn check(
    name: &'static str,
    description: &'static str,
    violations: Vec<String>,
) -> StructureCheck {
    StructureCheck {
        name,
        description,
        passed: violations.is_empty(),
        violations,
    }
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)))
}

/// Checks every structure axiom and derived identity by exact comparison of
/// basis components.
pub fn validate_structure(m: &AcnModel) -> StructureValidation {
    let d = m.dim();
    let e = |i: usize| basis_vector(d, i);
    let mut checks = Vec::new();

    checks.push(check(
        "odd_dimension",
        "dim = 2n + 1 with n >= 1",
        if d >= 3 && d % 2 == 1 {
            vec![]
        } else {
            vec![format!("dimension {d} is not of the form 2n + 1, n >= 1")]
        },
    ));

    let eta_xi = m.eta_of(&m.xi);
    checks.push(check(
        "eta_xi",
        "eta(xi) = 1",
        if eta_xi == one() {
            vec![]
        } else {
            vec![format!("eta(xi) = {eta_xi}")]
        },
    ));

    // φ² = −Id + η⊗ξ
    let mut v = Vec::new();
    for b in 0..d {
        let phi2 = m.apply_phi(&m.phi_basis(b));
        for a in 0..d {
            let mut rhs = &m.eta[b] * &m.xi[a];
            if a == b {
                rhs -= one();
            }
            if phi2[a] != rhs {
                v.push(format!("phi^2 x{b} has x{a} component {} but -Id + eta(x)xi gives {rhs}", phi2[a]));
            }
        }
    }
    checks.push(check("phi_squared", "phi^2 = -Id + eta (x) xi", v));

    checks.push(check(
        "metric_symmetric",
        "g(x, y) = g(y, x)",
        pairs(d)
            .filter(|&(i, j)| i < j && m.g_at(i, j) != m.g_at(j, i))
            .map(|(i, j)| format!("g(x{i}, x{j}) = {} but g(x{j}, x{i}) = {}", m.g_at(i, j), m.g_at(j, i)))
            .collect(),
    ));

    let mut v = Vec::new();
    for (i, j) in pairs(d) {
        let lhs = m.metric(&m.phi_basis(i), &m.phi_basis(j));
        let rhs = -m.g_at(i, j) + &m.eta[i] * &m.eta[j];
        if lhs != rhs {
            v.push(format!("at (x{i}, x{j}): g(phi x, phi y) = {lhs} but -g(x, y) + eta(x)eta(y) = {rhs}"));
        }
    }
    checks.push(check("norden_compatibility", "g(phi x, phi y) = -g(x, y) + eta(x)eta(y)", v));

    let phi_xi = m.apply_phi(&m.xi);
    checks.push(check(
        "phi_xi_zero",
        "phi xi = 0",
        phi_xi
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("phi xi has x{a} component {c}"))
            .collect(),
    ));

    checks.push(check(
        "eta_phi_zero",
        "eta o phi = 0",
        (0..d)
            .filter_map(|b| {
                let val = m.eta_of(&m.phi_basis(b));
                (!val.is_zero()).then(|| format!("eta(phi x{b}) = {val}"))
            })
            .collect(),
    ));

    checks.push(check(
        "eta_is_g_xi",
        "eta(x) = g(x, xi)",
        (0..d)
            .filter_map(|b| {
                let gx = m.metric(&e(b), &m.xi);
                (gx != m.eta[b]).then(|| format!("eta(x{b}) = {} but g(x{b}, xi) = {gx}", m.eta[b]))
            })
            .collect(),
    ));

    checks.push(check(
        "phi_g_symmetric",
        "g(phi x, y) = g(x, phi y)",
        pairs(d)
            .filter(|&(i, j)| i <= j)
            .filter_map(|(i, j)| {
                let l = m.metric(&m.phi_basis(i), &e(j));
                let r = m.metric(&e(i), &m.phi_basis(j));
                (l != r).then(|| format!("at (x{i}, x{j}): g(phi x, y) = {l} but g(x, phi y) = {r}"))
            })
            .collect(),
    ));

    let sig = signature(&symmetrized(&m.g)).ok();
    checks.push(check(
        "metric_nondegenerate",
        "det g != 0",
        match m.metric_inverse() {
            Ok(_) => vec![],
            Err(_) => vec!["g is singular".to_string()],
        },
    ));

    let expected = Signature::new(d / 2 + 1, d / 2, 0);
    checks.push(check(
        "signature",
        "g has signature (n + 1, n)",
        match sig {
            Some(s) if s == expected => vec![],
            Some(s) => vec![format!("signature {s}, expected {expected}")],
            None => vec!["signature could not be computed".to_string()],
        },
    ));

    StructureValidation { checks }
}

fn symmetrized(g: &Tensor) -> Tensor {
    if is_symmetric(g) {
        return g.clone();
    }
    let d = g.shape()[0];
    let half = crate::scalar::frac(1, 2);
    Tensor::from_fn(d, &[Variance::Down, Variance::Down], |i| {
        (g.get(&[i[0], i[1]]) + g.get(&[i[1], i[0]])) * &half
    })
}

/// `g̃(x, y) = g(x, φy) + η(x)η(y)`.
pub fn associated_metric(m: &AcnModel) -> Tensor {
    let d = m.dim();
    Tensor::from_fn(d, &[Variance::Down, Variance::Down], |i| {
        let (a, b) = (i[0], i[1]);
        m.metric(&basis_vector(d, a), &m.phi_basis(b)) + &m.eta[a] * &m.eta[b]
    })
}
