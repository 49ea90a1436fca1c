//! Curvature of the Levi-Civita connection on a left-invariant model: the
//! Riemann tensor, Ricci tensor, scalar curvatures, sectional curvature and
//! the type of a 2-section.

use num_traits::Zero;
use serde::Serialize;

use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linalg::matrix_rank;
use crate::scalar::Scalar;
use crate::structure::AcnModel;
use crate::tensor::{Tensor, Variance};

use Variance::{Down, Up};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvaturePack {
    /// `R(x_i, x_j) x_k = R^l x_l`, slots `(i, j, k, l)`.
    pub r13: Tensor,
    /// `R(x, y, z, u) = g(R(x, y)z, u)`.
    pub r04: Tensor,
    pub ricci: Tensor,
    pub tau: Scalar,
    pub tau_star: Scalar,
    pub tau_2star: Scalar,
}

/// `R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_{[x,y]} z` for left-invariant fields:
/// `R^l_{ijk} = Γ^m_jk Γ^l_im − Γ^m_ik Γ^l_jm − c^m_ij Γ^l_mk`.
pub fn riemann_tensor(m: &AcnModel, conn: &Connection) -> Tensor {
    let d = m.dim();
    let c = &m.algebra;
    Tensor::from_fn(d, &[Down, Down, Down, Up], |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = Scalar::zero();
        for s in 0..d {
            let a = conn.christoffel(s, j, k);
            if !a.is_zero() {
                acc += a * conn.christoffel(l, i, s);
            }
            let b = conn.christoffel(s, i, k);
            if !b.is_zero() {
                acc -= b * conn.christoffel(l, j, s);
            }
            let cc = c.constant(s, i, j);
            if !cc.is_zero() {
                acc -= cc * conn.christoffel(l, s, k);
            }
        }
        acc
    })
}

pub fn lower_curvature(m: &AcnModel, r13: &Tensor) -> Tensor {
    let d = m.dim();
    Tensor::from_fn(d, &[Down; 4], |idx| {
        (0..d)
            .filter(|&l| !r13.get(&[idx[0], idx[1], idx[2], l]).is_zero())
            .map(|l| r13.get(&[idx[0], idx[1], idx[2], l]) * m.g_at(l, idx[3]))
            .sum()
    })
}

pub fn riemann(m: &AcnModel, conn: &Connection) -> Result<CurvaturePack> {
    let r13 = riemann_tensor(m, conn);
    let r04 = lower_curvature(m, &r13);
    let (ricci, tau, tau_star, tau_2star) = ricci_and_scalars(m, &r04)?;
    Ok(CurvaturePack {
        r13,
        r04,
        ricci,
        tau,
        tau_star,
        tau_2star,
    })
}

/// `R(x, y, φz, φu)` as a `(0,4)` tensor.
pub fn curvature_phi_phi(m: &AcnModel, r04: &Tensor) -> Tensor {
    let d = m.dim();
    Tensor::from_fn(d, &[Down; 4], |idx| {
        let (x, y, z, u) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = Scalar::zero();
        for a in (0..d).filter(|&a| !m.phi_at(a, z).is_zero()) {
            for b in (0..d).filter(|&b| !m.phi_at(b, u).is_zero()) {
                acc += m.phi_at(a, z) * m.phi_at(b, u) * r04.get(&[x, y, a, b]);
            }
        }
        acc
    })
}

/// `ρ(y,z) = g^{ij}R(e_i,y,z,e_j)`, `τ = g^{ij}ρ(e_i,e_j)`,
/// `τ* = g^{ij}ρ(e_i,φe_j)`, `τ** = g^{is}g^{jk}R(e_i,e_j,φe_k,φe_s)`.
pub fn ricci_and_scalars(m: &AcnModel, r04: &Tensor) -> Result<(Tensor, Scalar, Scalar, Scalar)> {
    let d = m.dim();
    let ginv = m.metric_inverse()?;
    let nz: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !ginv.get(&[i, j]).is_zero())
        .collect();
    let ricci = Tensor::from_fn(d, &[Down, Down], |idx| {
        nz.iter()
            .map(|&(i, j)| ginv.get(&[i, j]) * r04.get(&[i, idx[0], idx[1], j]))
            .sum()
    });
    let tau = nz.iter().map(|&(i, j)| ginv.get(&[i, j]) * ricci.get(&[i, j])).sum();
    let tau_star = nz
        .iter()
        .map(|&(i, j)| {
            let rho_phi: Scalar = (0..d).map(|a| m.phi_at(a, j) * ricci.get(&[i, a])).sum();
            ginv.get(&[i, j]) * rho_phi
        })
        .sum();
    let rpp = curvature_phi_phi(m, r04);
    let mut tau_2star = Scalar::zero();
    for &(i, s) in &nz {
        for &(j, k) in &nz {
            tau_2star += ginv.get(&[i, s]) * ginv.get(&[j, k]) * rpp.get(&[i, j, k, s]);
        }
    }
    Ok((ricci, tau, tau_star, tau_2star))
}

/// Evaluates a `(0,4)` tensor on four vectors.
pub fn evaluate4(t: &Tensor, x: &[Scalar], y: &[Scalar], z: &[Scalar], u: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (idx, v) in t.entries() {
        if v.is_zero() {
            continue;
        }
        let w = &x[idx[0]] * &y[idx[1]] * &z[idx[2]] * &u[idx[3]];
        if !w.is_zero() {
            acc += v * w;
        }
    }
    acc
}

fn check_independent(x: &[Scalar], y: &[Scalar]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    if matrix_rank(&[x.to_vec(), y.to_vec()]) < 2 {
        return Err(Error::LinearlyDependent);
    }
    Ok(())
}

/// `π₁(x,y,y,x) = g(y,y)g(x,x) − g(x,y)²`.
pub fn pi1(m: &AcnModel, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let gxy = m.metric(x, y);
    m.metric(y, y) * m.metric(x, x) - &gxy * &gxy
}

/// `k(α) = R(x,y,y,x) / π₁(x,y,y,x)` for the section spanned by `x, y`.
pub fn sectional_curvature(m: &AcnModel, pack: &CurvaturePack, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
    if x.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: x.len(),
        });
    }
    check_independent(x, y)?;
    let denom = pi1(m, x, y);
    if denom.is_zero() {
        return Err(Error::DegenerateSection);
    }
    Ok(evaluate4(&pack.r04, x, y, y, x) / denom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    XiSection,
    PhiHolomorphic,
    TotallyReal,
    Generic,
}

impl std::fmt::Display for SectionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SectionKind::XiSection => "xi_section",
            SectionKind::PhiHolomorphic => "phi_holomorphic",
            SectionKind::TotallyReal => "totally_real",
            SectionKind::Generic => "generic",
        })
    }
}

/// Section type with every property that holds; `kind` follows the order
/// ξ-section, φ-holomorphic, totally real, generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionClass {
    pub kind: SectionKind,
    pub xi_section: bool,
    pub phi_holomorphic: bool,
    pub totally_real: bool,
}

pub fn classify_section(m: &AcnModel, x: &[Scalar], y: &[Scalar]) -> Result<SectionClass> {
    if x.len() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: x.len(),
        });
    }
    check_independent(x, y)?;
    let span = [x.to_vec(), y.to_vec()];
    let xi_section = matrix_rank(&[x.to_vec(), y.to_vec(), m.xi.clone()]) == 2;
    let (px, py) = (m.apply_phi(x), m.apply_phi(y));
    let phi_holomorphic = matrix_rank(&[px.clone(), py.clone()]) == 2
        && matrix_rank(&[x.to_vec(), y.to_vec(), px.clone()]) == 2
        && matrix_rank(&[x.to_vec(), y.to_vec(), py.clone()]) == 2;
    let totally_real = [&px, &py]
        .iter()
        .all(|p| span.iter().all(|v| m.metric(p, v).is_zero()));
    let kind = if xi_section {
        SectionKind::XiSection
    } else if phi_holomorphic {
        SectionKind::PhiHolomorphic
    } else if totally_real {
        SectionKind::TotallyReal
    } else {
        SectionKind::Generic
    };
    Ok(SectionClass {
        kind,
        xi_section,
        phi_holomorphic,
        totally_real,
    })
}

/// Witnesses (first failing index) for the algebraic symmetries of a
/// `(0,4)` curvature tensor.
pub fn symmetry_defects(r04: &Tensor) -> Vec<(&'static str, Option<Vec<usize>>)> {
    let mut skew12 = None;
    let mut skew34 = None;
    let mut pair = None;
    let mut bianchi = None;
    for (idx, v) in r04.entries() {
        let (x, y, z, u) = (idx[0], idx[1], idx[2], idx[3]);
        if skew12.is_none() && *v != -r04.get(&[y, x, z, u]) {
            skew12 = Some(idx.clone());
        }
        if skew34.is_none() && *v != -r04.get(&[x, y, u, z]) {
            skew34 = Some(idx.clone());
        }
        if pair.is_none() && v != r04.get(&[z, u, x, y]) {
            pair = Some(idx.clone());
        }
        if bianchi.is_none() && !(v + r04.get(&[y, z, x, u]) + r04.get(&[z, x, y, u])).is_zero() {
            bianchi = Some(idx.clone());
        }
    }
    vec![
        ("antisymmetric_12", skew12),
        ("antisymmetric_34", skew34),
        ("pair_symmetric", pair),
        ("first_bianchi", bianchi),
    ]
}
