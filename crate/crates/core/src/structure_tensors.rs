//! Tensors built from the covariant derivative of the structure: the
//! fundamental tensor `F`, its 1-forms, `∇η`, the Nijenhuis tensor, square
//! norms, divergence, and the auxiliary tensors `S` and `ψ₄(S)`.
//!
//! Every `g^{ij}` contraction runs over the full basis, `ξ` included.

use num_traits::Zero;

use crate::classifier::is_f11;
use crate::connection::{covariant_derivative, Connection};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structure::{basis_vector, AcnModel};
use crate::tensor::{Tensor, Variance};

use Variance::{Down, Up};

/// `F(x,y,z) = g((∇_x φ)y, z)`, slots `(x, y, z)`.
pub fn fundamental_tensor(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let d = m.dim();
    let nphi = covariant_derivative(conn, &m.phi)?;
    Ok(Tensor::from_fn(d, &[Down; 3], |idx| {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        (0..d)
            .filter(|&a| !nphi.get(&[x, a, y]).is_zero())
            .map(|a| nphi.get(&[x, a, y]) * m.g_at(a, z))
            .sum()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForms {
    pub theta: Vec<Scalar>,
    pub theta_star: Vec<Scalar>,
    pub omega: Vec<Scalar>,
    pub omega_star: Vec<Scalar>,
    /// The vector `Ω` with `ω(x) = g(x, Ω)`.
    pub big_omega: Vec<Scalar>,
}

/// `θ(x) = g^{ij}F(e_i,e_j,x)`, `θ*(x) = g^{ij}F(e_i,φe_j,x)`,
/// `ω(x) = F(ξ,ξ,x)`, `ω* = ω∘φ`, and `Ω`.
pub fn one_forms(m: &AcnModel, f: &Tensor) -> Result<OneForms> {
    let d = m.dim();
    let ginv = m.metric_inverse()?;
    let mut theta = vec![Scalar::zero(); d];
    let mut theta_star = vec![Scalar::zero(); d];
    for i in 0..d {
        for j in 0..d {
            let gij = ginv.get(&[i, j]);
            if gij.is_zero() {
                continue;
            }
            for (x, (t, ts)) in theta.iter_mut().zip(theta_star.iter_mut()).enumerate() {
                *t += gij * f.get(&[i, j, x]);
                let phi_j: Scalar = (0..d).map(|b| m.phi_at(b, j) * f.get(&[i, b, x])).sum();
                *ts += gij * phi_j;
            }
        }
    }
    let omega = omega_form(m, f);
    let omega_star = (0..d)
        .map(|j| (0..d).map(|a| &omega[a] * m.phi_at(a, j)).sum())
        .collect();
    let big_omega = m.raise(&omega)?;
    Ok(OneForms {
        theta,
        theta_star,
        omega,
        omega_star,
        big_omega,
    })
}

/// `ω(x) = F(ξ, ξ, x)`.
pub fn omega_form(m: &AcnModel, f: &Tensor) -> Vec<Scalar> {
    let d = m.dim();
    (0..d)
        .map(|x| {
            let mut acc = Scalar::zero();
            for a in (0..d).filter(|&a| !m.xi[a].is_zero()) {
                for b in (0..d).filter(|&b| !m.xi[b].is_zero()) {
                    acc += &m.xi[a] * &m.xi[b] * f.get(&[a, b, x]);
                }
            }
            acc
        })
        .collect()
}

/// `(∇_x η)y` by Christoffel correction, slots `(x, y)`.
pub fn nabla_eta(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    covariant_derivative(conn, &Tensor::covector(m.eta.clone()))
}

/// `(∇_x η)y = F(x, φy, ξ)`, slots `(x, y)`.
pub fn nabla_eta_from_f(m: &AcnModel, f: &Tensor) -> Tensor {
    let d = m.dim();
    Tensor::from_fn(d, &[Down, Down], |idx| {
        let (x, y) = (idx[0], idx[1]);
        let mut acc = Scalar::zero();
        for b in (0..d).filter(|&b| !m.phi_at(b, y).is_zero()) {
            for c in (0..d).filter(|&c| !m.xi[c].is_zero()) {
                acc += m.phi_at(b, y) * &m.xi[c] * f.get(&[x, b, c]);
            }
        }
        acc
    })
}

fn add_scaled(acc: &mut [Scalar], v: &[Scalar], factor: &Scalar) {
    if factor.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b * factor;
    }
}

fn vector_field(d: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Tensor {
    let mut t = Tensor::square(d, &[Down, Down, Up]);
    for x in 0..d {
        for y in 0..d {
            for (l, v) in f(x, y).into_iter().enumerate() {
                t.set(&[x, y, l], v);
            }
        }
    }
    t
}

/// `N(x,y) = φ²[x,y] + [φx,φy] − φ[φx,y] − φ[x,φy] + (∇_xη)y ξ − (∇_yη)x ξ`,
/// slots `(x, y, out)`.
pub fn nijenhuis_bracket(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let d = m.dim();
    let neta = nabla_eta(m, conn)?;
    let alg = &m.algebra;
    let minus = -crate::scalar::one();
    let mut err = None;
    let t = vector_field(d, |x, y| {
        let (ex, ey) = (basis_vector(d, x), basis_vector(d, y));
        let (px, py) = (m.phi_basis(x), m.phi_basis(y));
        let mut out = m.apply_phi(&m.apply_phi(&alg.bracket_basis(x, y)));
        let terms = [
            alg.bracket(&px, &py).map(|v| (v, crate::scalar::one())),
            alg.bracket(&px, &ey).map(|v| (m.apply_phi(&v), minus.clone())),
            alg.bracket(&ex, &py).map(|v| (m.apply_phi(&v), minus.clone())),
        ];
        for term in terms {
            match term {
                Ok((v, s)) => add_scaled(&mut out, &v, &s),
                Err(e) => err = Some(e),
            }
        }
        add_scaled(&mut out, &m.xi, &(neta.get(&[x, y]) - neta.get(&[y, x])));
        out
    });
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// `N(x,y) = (∇_{φx}φ)y − (∇_{φy}φ)x − φ(∇_xφ)y + φ(∇_yφ)x + (∇_xη)y ξ − (∇_yη)x ξ`
/// with `(∇_xη)y = F(x,φy,ξ)`, slots `(x, y, out)`.
pub fn nijenhuis_derivative(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let d = m.dim();
    let nphi = covariant_derivative(conn, &m.phi)?;
    let f = fundamental_tensor(m, conn)?;
    let neta = nabla_eta_from_f(m, &f);
    // (∇_v φ) x_y as a vector
    let dphi = |v: &[Scalar], y: usize| -> Vec<Scalar> {
        (0..d)
            .map(|a| (0..d).filter(|&i| !v[i].is_zero()).map(|i| &v[i] * nphi.get(&[i, a, y])).sum())
            .collect()
    };
    let minus = -crate::scalar::one();
    Ok(vector_field(d, |x, y| {
        let (ex, ey) = (basis_vector(d, x), basis_vector(d, y));
        let mut out = dphi(&m.phi_basis(x), y);
        add_scaled(&mut out, &dphi(&m.phi_basis(y), x), &minus);
        add_scaled(&mut out, &m.apply_phi(&dphi(&ex, y)), &minus);
        add_scaled(&mut out, &m.apply_phi(&dphi(&ey, x)), &crate::scalar::one());
        add_scaled(&mut out, &m.xi, &(neta.get(&[x, y]) - neta.get(&[y, x])));
        out
    }))
}

/// The Nijenhuis tensor, computed both from brackets and from `∇φ`; the two
/// must agree exactly.
pub fn nijenhuis(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let by_bracket = nijenhuis_bracket(m, conn)?;
    let by_derivative = nijenhuis_derivative(m, conn)?;
    if by_bracket != by_derivative {
        let at = by_bracket.sub(&by_derivative)?.first_nonzero();
        return Err(Error::InternalInconsistency(format!(
            "Nijenhuis constructions disagree at {at:?}"
        )));
    }
    Ok(by_bracket)
}

/// `Σ g^{ij} g^{ks} value(i, k, j, s)`.
fn double_trace(ginv: &Tensor, value: impl Fn(usize, usize, usize, usize) -> Scalar) -> Scalar {
    let d = ginv.shape()[0];
    let nz: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !ginv.get(&[i, j]).is_zero())
        .collect();
    let mut acc = Scalar::zero();
    for &(i, j) in &nz {
        for &(k, s) in &nz {
            let v = value(i, k, j, s);
            if !v.is_zero() {
                acc += ginv.get(&[i, j]) * ginv.get(&[k, s]) * v;
            }
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareNorms {
    pub nabla_phi: Scalar,
    pub nabla_eta: Scalar,
    pub nijenhuis: Scalar,
}

/// `‖∇φ‖²`, `‖∇η‖²` and `‖N‖² = g^{ij}g^{ks} g(N(e_i,e_k), N(e_j,e_s))`.
pub fn square_norms(m: &AcnModel, conn: &Connection) -> Result<SquareNorms> {
    let d = m.dim();
    let ginv = m.metric_inverse()?;
    let nphi = covariant_derivative(conn, &m.phi)?;
    let neta = nabla_eta(m, conn)?;
    let n = nijenhuis(m, conn)?;
    let col = |t: &Tensor, i: usize, k: usize, lead: bool| -> Vec<Scalar> {
        (0..d)
            .map(|a| if lead { t.get(&[i, a, k]).clone() } else { t.get(&[i, k, a]).clone() })
            .collect()
    };
    let nabla_phi = double_trace(&ginv, |i, k, j, s| m.metric(&col(&nphi, i, k, true), &col(&nphi, j, s, true)));
    let nabla_eta = double_trace(&ginv, |i, k, j, s| neta.get(&[i, k]) * neta.get(&[j, s]));
    let nijenhuis = double_trace(&ginv, |i, k, j, s| m.metric(&col(&n, i, k, false), &col(&n, j, s, false)));
    Ok(SquareNorms {
        nabla_phi,
        nabla_eta,
        nijenhuis,
    })
}

/// `S(x,y) = (∇_xω)φy − ω(φx)ω(φy)`, slots `(x, y)`.
pub fn tensor_s(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let d = m.dim();
    let f = fundamental_tensor(m, conn)?;
    let omega = omega_form(m, &f);
    let nomega = covariant_derivative(conn, &Tensor::covector(omega.clone()))?;
    let omega_phi: Vec<Scalar> = (0..d)
        .map(|y| (0..d).map(|a| &omega[a] * m.phi_at(a, y)).sum())
        .collect();
    Ok(Tensor::from_fn(d, &[Down, Down], |idx| {
        let (x, y) = (idx[0], idx[1]);
        let first: Scalar = (0..d).map(|a| nomega.get(&[x, a]) * m.phi_at(a, y)).sum();
        first - &omega_phi[x] * &omega_phi[y]
    }))
}

/// `tr S = g^{ij} S(e_i, e_j)`.
pub fn trace_s(m: &AcnModel, s: &Tensor) -> Result<Scalar> {
    let ginv = m.metric_inverse()?;
    let d = m.dim();
    Ok((0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| ginv.get(&[i, j]) * s.get(&[i, j]))
        .sum())
}

/// `ψ₄(S)(x,y,z,u) = η(y)η(z)S(x,u) − η(x)η(z)S(y,u) + η(x)η(u)S(y,z) − η(y)η(u)S(x,z)`.
pub fn psi4(s: &Tensor, eta: &[Scalar]) -> Tensor {
    let d = eta.len();
    Tensor::from_fn(d, &[Down; 4], |idx| {
        let (x, y, z, u) = (idx[0], idx[1], idx[2], idx[3]);
        &eta[y] * &eta[z] * s.get(&[x, u]) - &eta[x] * &eta[z] * s.get(&[y, u])
            + &eta[x] * &eta[u] * s.get(&[y, z])
            - &eta[y] * &eta[u] * s.get(&[x, z])
    })
}

/// `Div X = g^{ij} g(∇_{e_i} X, e_j)`.
pub fn divergence(m: &AcnModel, conn: &Connection, x: &[Scalar]) -> Result<Scalar> {
    let d = m.dim();
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: x.len(),
        });
    }
    let ginv = m.metric_inverse()?;
    let mut acc = Scalar::zero();
    for i in 0..d {
        let nx = conn.nabla(&basis_vector(d, i), x);
        for j in 0..d {
            let gij = ginv.get(&[i, j]);
            if !gij.is_zero() {
                acc += gij * m.metric(&nx, &basis_vector(d, j));
            }
        }
    }
    Ok(acc)
}

/// Defect of `(∇_xω*)y = (∇_xω)φy + η(x)η(y)ω(Ω)` at every basis pair.
pub fn nabla_omega_star_defect(m: &AcnModel, conn: &Connection) -> Result<Tensor> {
    let d = m.dim();
    let f = fundamental_tensor(m, conn)?;
    let forms = one_forms(m, &f)?;
    let omega_omega: Scalar = forms.omega.iter().zip(&forms.big_omega).map(|(a, b)| a * b).sum();
    let nomega = covariant_derivative(conn, &Tensor::covector(forms.omega.clone()))?;
    let nomega_star = covariant_derivative(conn, &Tensor::covector(forms.omega_star.clone()))?;
    Ok(Tensor::from_fn(d, &[Down, Down], |idx| {
        let (x, y) = (idx[0], idx[1]);
        let rhs: Scalar = (0..d).map(|a| nomega.get(&[x, a]) * m.phi_at(a, y)).sum::<Scalar>()
            + &m.eta[x] * &m.eta[y] * &omega_omega;
        nomega_star.get(&[x, y]) - rhs
    }))
}

/// Whether `(∇_xω*)y = (∇_xω)φy + η(x)η(y)ω(Ω)` holds; defined for F₁₁ models.
pub fn nabla_omega_star_check(m: &AcnModel, conn: &Connection) -> Result<bool> {
    let f = fundamental_tensor(m, conn)?;
    if !is_f11(m, &f) {
        return Err(Error::NotApplicable("model is not in class F11".into()));
    }
    Ok(nabla_omega_star_defect(m, conn)?.is_zero())
}

/// All structure tensors of a model in one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePack {
    pub f: Tensor,
    pub forms: OneForms,
    pub nabla_eta: Tensor,
    pub nijenhuis: Tensor,
    pub s: Tensor,
}

pub fn compute_structure(m: &AcnModel, conn: &Connection) -> Result<StructurePack> {
    let f = fundamental_tensor(m, conn)?;
    let forms = one_forms(m, &f)?;
    Ok(StructurePack {
        nabla_eta: nabla_eta(m, conn)?,
        nijenhuis: nijenhuis(m, conn)?,
        s: tensor_s(m, conn)?,
        forms,
        f,
    })
}
