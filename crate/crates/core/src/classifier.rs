//! Class membership (F₀, F₁₁), closedness of ω and ω*, the isotropic-Kähler
//! and φ-Kähler-type decisions, and per-model verification of the F₁₁
//! identities.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::connection::{
    covariant_derivative, levi_civita, ricci_identity_defect_eta, ricci_identity_defect_phi, Connection,
};
use crate::curvature::{curvature_phi_phi, riemann, symmetry_defects, CurvaturePack};
use crate::error::Result;
use crate::scalar::{int, Scalar};
use crate::structure::AcnModel;
use crate::structure_tensors::{
    compute_structure, divergence, nabla_eta_from_f, nabla_omega_star_defect, omega_form, psi4,
    square_norms, trace_s, SquareNorms, StructurePack,
};
use crate::tensor::{Tensor, Variance};

/// Defect of `F(x,y,z) = η(x){η(y)ω(z) + η(z)ω(y)}` with `ω(z) = F(ξ,ξ,z)`.
pub fn f11_defect(m: &AcnModel, f: &Tensor) -> Tensor {
    let omega = omega_form(m, f);
    let eta = &m.eta;
    Tensor::from_fn(m.dim(), &[Variance::Down; 3], |i| {
        let (x, y, z) = (i[0], i[1], i[2]);
        f.get(i) - &eta[x] * (&eta[y] * &omega[z] + &eta[z] * &omega[y])
    })
}

pub fn is_f11(m: &AcnModel, f: &Tensor) -> bool {
    f11_defect(m, f).is_zero()
}

pub fn is_f0(f: &Tensor) -> bool {
    f.is_zero()
}

/// `(dω = 0, dω* = 0)` via `(∇_xω)y = (∇_yω)x` and `(∇_xω)φy = (∇_yω)φx`.
pub fn forms_closed(m: &AcnModel, conn: &Connection) -> Result<(bool, bool)> {
    let d = m.dim();
    let f = crate::structure_tensors::fundamental_tensor(m, conn)?;
    let omega = omega_form(m, &f);
    let nomega = covariant_derivative(conn, &Tensor::covector(omega))?;
    let on_phi = |x: usize, y: usize| -> Scalar { (0..d).map(|a| nomega.get(&[x, a]) * m.phi_at(a, y)).sum() };
    let mut closed = true;
    let mut closed_star = true;
    for x in 0..d {
        for y in x + 1..d {
            closed &= nomega.get(&[x, y]) == nomega.get(&[y, x]);
            closed_star &= on_phi(x, y) == on_phi(y, x);
        }
    }
    Ok((closed, closed_star))
}

/// `‖∇φ‖² = ‖∇η‖² = 0`.
pub fn is_isotropic_kahler(m: &AcnModel, conn: &Connection) -> Result<bool> {
    let norms = square_norms(m, conn)?;
    Ok(norms.nabla_phi.is_zero() && norms.nabla_eta.is_zero())
}

/// `R(x,y,φz,φu) = −R(x,y,z,u)` at every basis quadruple.
pub fn curvature_phi_kahler(m: &AcnModel, pack: &CurvaturePack) -> bool {
    curvature_phi_phi(m, &pack.r04)
        .add(&pack.r04)
        .map(|t| t.is_zero())
        .unwrap_or(false)
}

/// Defect of `(∇_xω*)y = η(x)η(y)ω(Ω) + ω*(x)ω*(y)`.
pub fn phi_kahler_condition_defect(m: &AcnModel, conn: &Connection, forms_: &crate::structure_tensors::OneForms) -> Result<Tensor> {
    let omega_omega = dot(&forms_.omega, &forms_.big_omega);
    let nstar = covariant_derivative(conn, &Tensor::covector(forms_.omega_star.clone()))?;
    let ws = &forms_.omega_star;
    Ok(Tensor::from_fn(m.dim(), &[Variance::Down; 2], |i| {
        let (x, y) = (i[0], i[1]);
        nstar.get(i) - (&m.eta[x] * &m.eta[y] * &omega_omega + &ws[x] * &ws[y])
    }))
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// False when the identity is an F₁₁ theorem and the model is not F₁₁.
    pub applicable: bool,
    pub passed: bool,
    /// Basis indices of the first failing component.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

pub type IdentityVerdicts = BTreeMap<String, Verdict>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub is_f0: bool,
    pub is_f11: bool,
    /// `N = 0`.
    pub normal: bool,
    /// Membership in the remaining basic classes is not decided.
    pub other_classes: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(with = "crate::scalar::serde_str")]
    pub tau: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub tau_star: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub tau_2star: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub omega_of_big_omega: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub norm_nabla_phi: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub norm_nabla_eta: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub norm_nijenhuis: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub div_phi_big_omega: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub rho_xi_xi: Scalar,
    #[serde(with = "crate::scalar::serde_str")]
    pub trace_s: Scalar,
}

/// Every tensor and verdict computed for one model. A pure function of the
/// model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryReport {
    pub name: String,
    pub dim: usize,
    pub class_flags: ClassFlags,
    pub omega_closed: bool,
    pub omega_star_closed: bool,
    pub isotropic_kahler: bool,
    pub curvature_phi_kahler: bool,
    pub invariants: Invariants,
    pub identity_verdicts: IdentityVerdicts,
    pub connection: Connection,
    pub structure: StructurePack,
    pub curvature: CurvaturePack,
}

impl GeometryReport {
    /// True when every applicable identity passed.
    pub fn all_applicable_pass(&self) -> bool {
        self.identity_verdicts.values().all(|v| !v.applicable || v.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.identity_verdicts
            .iter()
            .filter(|(_, v)| v.applicable && !v.passed)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn tensor_verdict(applicable: bool, defect: &Tensor, detail: impl Into<String>) -> Verdict {
    let witness = defect.first_nonzero();
    Verdict {
        applicable,
        passed: witness.is_none(),
        witness,
        detail: detail.into(),
    }
}

fn bool_verdict(applicable: bool, passed: bool, detail: String) -> Verdict {
    Verdict {
        applicable,
        passed,
        witness: None,
        detail,
    }
}

/// Full analysis of a model: connection, structure tensors, curvature,
/// invariants, class flags and identity verdicts.
pub fn analyze(m: &AcnModel) -> Result<GeometryReport> {
    let d = m.dim();
    let conn = levi_civita(m)?;
    let pack = compute_structure(m, &conn)?;
    let curv = riemann(m, &conn)?;
    let norms = square_norms(m, &conn)?;
    let f = &pack.f;
    let forms = &pack.forms;

    let f11 = is_f11(m, f);
    let f0 = is_f0(f);
    let (omega_closed, omega_star_closed) = forms_closed(m, &conn)?;
    let isotropic = norms.nabla_phi.is_zero() && norms.nabla_eta.is_zero();
    let phi_kahler = curvature_phi_kahler(m, &curv);
    let omega_omega = dot(&forms.omega, &forms.big_omega);
    let phi_big_omega = m.apply_phi(&forms.big_omega);
    let div = divergence(m, &conn, &phi_big_omega)?;
    let rho_xi_xi: Scalar = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .map(|(a, b)| &m.xi[a] * &m.xi[b] * curv.ricci.get(&[a, b]))
        .sum();
    let tr_s = trace_s(m, &pack.s)?;

    let mut v = IdentityVerdicts::new();

    v.insert(
        "connection_torsion_free".into(),
        tensor_verdict(true, &conn.torsion(&m.algebra), "Gamma^k_ij - Gamma^k_ji = c^k_ij"),
    );
    v.insert(
        "connection_metric".into(),
        tensor_verdict(true, &conn.metric_defect(&m.g)?, "nabla g = 0"),
    );
    v.insert("f_symmetries".into(), tensor_verdict(true, &f_symmetry_defect(m, f), f_symmetry_detail()));
    v.insert(
        "nabla_eta_cross_check".into(),
        tensor_verdict(
            true,
            &pack.nabla_eta.sub(&nabla_eta_from_f(m, f))?,
            "(nabla_x eta)y = F(x, phi y, xi)",
        ),
    );
    let sym = symmetry_defects(&curv.r04);
    let sym_witness = sym.iter().find_map(|(name, w)| w.as_ref().map(|w| (*name, w.clone())));
    v.insert(
        "curvature_symmetries".into(),
        Verdict {
            applicable: true,
            passed: sym_witness.is_none(),
            detail: match &sym_witness {
                Some((name, _)) => format!("R fails {name}"),
                None => "R antisymmetric in (1,2) and (3,4), pair symmetric, first Bianchi".into(),
            },
            witness: sym_witness.map(|(_, w)| w),
        },
    );
    v.insert(
        "ricci_identity_phi".into(),
        tensor_verdict(
            true,
            &ricci_identity_defect_phi(&conn, &m.phi, &curv.r13)?,
            "(nabla^2 phi)(x,y)z - (nabla^2 phi)(y,x)z = R(x,y)phi z - phi R(x,y)z",
        ),
    );
    v.insert(
        "ricci_identity_eta".into(),
        tensor_verdict(
            true,
            &ricci_identity_defect_eta(&conn, &m.eta, &curv.r13)?,
            "(nabla^2 eta)(x,y)z - (nabla^2 eta)(y,x)z = -eta(R(x,y)z)",
        ),
    );

    // F11 theorems
    let chain = [
        norms.nabla_phi.clone(),
        -norms.nijenhuis.clone(),
        &norms.nabla_eta * int(-2),
        &omega_omega * int(2),
    ];
    v.insert(
        "norm_chain".into(),
        bool_verdict(
            f11,
            chain.windows(2).all(|w| w[0] == w[1]),
            format!(
                "|nabla phi|^2 = -|N|^2 = -2|nabla eta|^2 = 2 omega(Omega): {} = {} = {} = {}",
                chain[0], chain[1], chain[2], chain[3]
            ),
        ),
    );
    let c1 = [isotropic, omega_omega.is_zero(), norms.nijenhuis.is_zero()];
    v.insert(
        "isotropic_equivalence".into(),
        bool_verdict(
            f11,
            c1.iter().all(|&b| b == c1[0]),
            format!(
                "isotropic Kahler {} <=> omega(Omega) = 0 {} <=> |N|^2 = 0 {}",
                c1[0], c1[1], c1[2]
            ),
        ),
    );
    let theta_defect = Tensor::covector(
        forms
            .theta
            .iter()
            .zip(&forms.omega)
            .map(|(t, o)| t - o)
            .chain(forms.theta_star.iter().cloned())
            .collect(),
    );
    v.insert(
        "theta_forms".into(),
        tensor_verdict(f11, &theta_defect, "theta = omega and theta* = 0 (witness index >= dim refers to theta*)"),
    );
    let rpp = curvature_phi_phi(m, &curv.r04);
    let eq19 = rpp.add(&curv.r04)?.sub(&psi4(&pack.s, &m.eta))?;
    v.insert(
        "phi_curvature_psi4".into(),
        tensor_verdict(f11, &eq19, "R(x,y,phi z,phi u) = -R(x,y,z,u) + psi4(S)(x,y,z,u)"),
    );
    let two_div = &div * int(2);
    let two_rho = &rho_xi_xi * int(2);
    let tau_sum = &curv.tau + &curv.tau_2star;
    v.insert(
        "scalar_curvature_sum".into(),
        bool_verdict(
            f11,
            tau_sum == two_div && two_div == two_rho,
            format!("tau + tau** = 2 Div(phi Omega) = 2 rho(xi, xi): {tau_sum} = {two_div} = {two_rho}"),
        ),
    );
    let eq22 = phi_kahler_condition_defect(m, &conn, forms)?;
    let eq22_holds = eq22.is_zero();
    v.insert(
        "phi_kahler_criterion".into(),
        Verdict {
            applicable: f11,
            passed: phi_kahler == eq22_holds,
            witness: None,
            detail: format!(
                "R of phi-Kahler type ({phi_kahler}) <=> (nabla_x omega*)y = eta(x)eta(y)omega(Omega) + omega*(x)omega*(y) ({eq22_holds})"
            ),
        },
    );
    v.insert(
        "nabla_omega_star".into(),
        tensor_verdict(
            f11,
            &nabla_omega_star_defect(m, &conn)?,
            "(nabla_x omega*)y = (nabla_x omega)phi y + eta(x)eta(y)omega(Omega)",
        ),
    );

    Ok(GeometryReport {
        name: m.name.clone(),
        dim: d,
        class_flags: ClassFlags {
            is_f0: f0,
            is_f11: f11,
            normal: pack.nijenhuis.is_zero(),
            other_classes: "unknown",
        },
        omega_closed,
        omega_star_closed,
        isotropic_kahler: isotropic,
        curvature_phi_kahler: phi_kahler,
        invariants: Invariants {
            tau: curv.tau.clone(),
            tau_star: curv.tau_star.clone(),
            tau_2star: curv.tau_2star.clone(),
            omega_of_big_omega: omega_omega,
            norm_nabla_phi: norms.nabla_phi.clone(),
            norm_nabla_eta: norms.nabla_eta.clone(),
            norm_nijenhuis: norms.nijenhuis.clone(),
            div_phi_big_omega: div,
            rho_xi_xi,
            trace_s: tr_s,
        },
        identity_verdicts: v,
        connection: conn,
        structure: pack,
        curvature: curv,
    })
}

/// Identity verdicts for a model; F₁₁ theorems are marked not applicable on
/// other models but still evaluated.
pub fn verify_identities(m: &AcnModel) -> Result<IdentityVerdicts> {
    Ok(analyze(m)?.identity_verdicts)
}

/// The square norms of a model as computed by [`analyze`].
pub fn norms_of(report: &GeometryReport) -> SquareNorms {
    SquareNorms {
        nabla_phi: report.invariants.norm_nabla_phi.clone(),
        nabla_eta: report.invariants.norm_nabla_eta.clone(),
        nijenhuis: report.invariants.norm_nijenhuis.clone(),
    }
}

fn f_symmetry_detail() -> &'static str {
    "F(x,y,z) = F(x,z,y); F(x,phi y,phi z) = F(x,y,z) - F(x,xi,z)eta(y) - F(x,y,xi)eta(z); F(x,xi,xi) = 0"
}

/// Stacked defects of the algebraic identities of `F`: slot 0 selects the
/// identity (0 symmetry, 1 φ-relation, 2 `F(x,ξ,ξ)`).
fn f_symmetry_defect(m: &AcnModel, f: &Tensor) -> Tensor {
    let d = m.dim();
    let xi = &m.xi;
    let f_xi_mid = |x: usize, z: usize| -> Scalar { (0..d).map(|a| &xi[a] * f.get(&[x, a, z])).sum() };
    let f_xi_last = |x: usize, y: usize| -> Scalar { (0..d).map(|a| &xi[a] * f.get(&[x, y, a])).sum() };
    let mut out = Tensor::zeros(vec![3, d, d, d], vec![Variance::Down; 4]);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                out.set(&[0, x, y, z], f.get(&[x, y, z]) - f.get(&[x, z, y]));
                let mut lhs = Scalar::zero();
                for a in (0..d).filter(|&a| !m.phi_at(a, y).is_zero()) {
                    for b in (0..d).filter(|&b| !m.phi_at(b, z).is_zero()) {
                        lhs += m.phi_at(a, y) * m.phi_at(b, z) * f.get(&[x, a, b]);
                    }
                }
                let rhs = f.get(&[x, y, z]) - f_xi_mid(x, z) * &m.eta[y] - f_xi_last(x, y) * &m.eta[z];
                out.set(&[1, x, y, z], lhs - rhs);
            }
            if y == 0 {
                let v: Scalar = (0..d).map(|a| &xi[a] * f_xi_last(x, a)).sum();
                out.set(&[2, x, 0, 0], v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::{generate_family, heisenberg_model, FamilyParams};
    use crate::structure_tensors::fundamental_tensor;

    fn family(n: usize, lambda: &[i64]) -> AcnModel {
        generate_family(&FamilyParams::new(n, lambda.iter().map(|&v| int(v)).collect()).unwrap()).unwrap()
    }

    #[test]
    fn class_flags_family() {
        let m = family(1, &[2, 3]);
        let f = fundamental_tensor(&m, &levi_civita(&m).unwrap()).unwrap();
        assert!(is_f11(&m, &f));
        assert!(!is_f0(&f));
        let m = family(1, &[0, 0]);
        let f = fundamental_tensor(&m, &levi_civita(&m).unwrap()).unwrap();
        assert!(is_f11(&m, &f) && is_f0(&f));
    }

    #[test]
    fn abelian_with_family_structure_is_f0() {
        let mut m = family(1, &[2, 3]);
        m.algebra = crate::lie_algebra::LieAlgebra::abelian(3);
        let f = fundamental_tensor(&m, &levi_civita(&m).unwrap()).unwrap();
        assert!(is_f0(&f));
    }

    #[test]
    fn closedness_and_negative_control() {
        let m = family(2, &[1, -2, 3, 2]);
        let conn = levi_civita(&m).unwrap();
        assert_eq!(forms_closed(&m, &conn).unwrap(), (true, true));
        let mut gamma = conn.gamma().clone();
        // ∇_{x1} x2 gets an x1 component but ∇_{x2} x1 does not; ω(x1) ≠ 0
        gamma.set(&[1, 1, 2], int(1));
        let perturbed = Connection::from_components(gamma).unwrap();
        assert!(!forms_closed(&m, &perturbed).unwrap().0);
    }

    #[test]
    fn isotropic_kahler_examples() {
        for (lambda, expected) in [([1, 1], true), ([2, 3], false), ([0, 0], true)] {
            let m = family(1, &lambda);
            assert_eq!(is_isotropic_kahler(&m, &levi_civita(&m).unwrap()).unwrap(), expected, "{lambda:?}");
        }
    }

    #[test]
    fn phi_kahler_curvature() {
        let m = family(1, &[0, 0]);
        let conn = levi_civita(&m).unwrap();
        assert!(curvature_phi_kahler(&m, &riemann(&m, &conn).unwrap()));
        let m = family(1, &[2, 3]);
        let conn = levi_civita(&m).unwrap();
        assert!(!curvature_phi_kahler(&m, &riemann(&m, &conn).unwrap()));
    }

    #[test]
    fn verdicts_family_23() {
        let v = verify_identities(&family(1, &[2, 3])).unwrap();
        for (name, verdict) in &v {
            assert!(verdict.applicable && verdict.passed, "{name}: {verdict:?}");
        }
        assert!(v["phi_kahler_criterion"].detail.contains("(false)"));
    }

    #[test]
    fn verdicts_zero_lambda() {
        let r = analyze(&family(1, &[0, 0])).unwrap();
        assert!(r.all_applicable_pass());
        assert!(r.curvature_phi_kahler);
        assert!(r.identity_verdicts["phi_kahler_criterion"].detail.ends_with("(true)"));
        // where the φ-Kähler condition holds, ω* is closed
        assert!(r.omega_star_closed);
    }

    #[test]
    fn heisenberg_regression() {
        let m = heisenberg_model();
        let r = analyze(&m).unwrap();
        // regression baseline recorded from a pipeline run
        assert!(!r.class_flags.is_f11);
        assert!(!r.class_flags.is_f0);
        assert!(r.class_flags.normal);
        assert_eq!(r.invariants.tau, crate::scalar::frac(1, 2));
        assert_eq!(r.invariants.tau_star, int(0));
        assert_eq!(r.invariants.tau_2star, crate::scalar::frac(3, 2));
        assert_eq!(r.invariants.norm_nabla_phi, int(3));
        assert_eq!(r.invariants.norm_nabla_eta, crate::scalar::frac(-1, 2));
        assert!(r.all_applicable_pass());
        for name in ["connection_torsion_free", "connection_metric", "f_symmetries", "ricci_identity_phi", "ricci_identity_eta", "curvature_symmetries", "nabla_eta_cross_check"] {
            assert!(r.identity_verdicts[name].passed, "{name}");
        }
        assert!(r.identity_verdicts["norm_chain"].applicable == r.class_flags.is_f11);
    }

    #[test]
    fn deterministic() {
        let m = family(2, &[1, 2, -3, 4]);
        assert_eq!(analyze(&m).unwrap(), analyze(&m).unwrap());
    }
}
