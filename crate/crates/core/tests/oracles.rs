//! Cross-checks of library routines against independent constructions that
//! share no code with them beyond the model types.

mod common;

use num_traits::Zero;

use norden_core::classifier::analyze;
use norden_core::connection::levi_civita;
use norden_core::curvature::riemann;
use norden_core::model_io::heisenberg_model;
use norden_core::scalar::{frac, int, Scalar};
use norden_core::structure::{basis_vector, AcnModel};
use norden_core::structure_tensors::{fundamental_tensor, nabla_eta, nabla_eta_from_f};

use common::{family, levi_civita_by_linear_system, random_lambda, rng};

fn sample_models() -> Vec<AcnModel> {
    let mut r = rng(7);
    let mut out = vec![heisenberg_model()];
    for n in 1..=2 {
        for _ in 0..4 {
            out.push(family(n, random_lambda(&mut r, n)));
        }
    }
    out
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[test]
fn koszul_connection_matches_linear_system() {
    for m in sample_models() {
        let conn = levi_civita(&m).unwrap();
        assert_eq!(conn.gamma(), &levi_civita_by_linear_system(&m), "{}", m.name);
    }
}

/// R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_[x,y] z on basis vectors, using only
/// `nabla` on vectors.
#[test]
fn curvature_matches_commutator_of_derivatives() {
    for m in sample_models() {
        let d = m.dim();
        let conn = levi_civita(&m).unwrap();
        let pack = riemann(&m, &conn).unwrap();
        let e = |i| basis_vector(d, i);
        for i in 0..d {
            for j in 0..d {
                let bracket = m.algebra.bracket(&e(i), &e(j)).unwrap();
                for k in 0..d {
                    let a = conn.nabla(&e(i), &conn.nabla(&e(j), &e(k)));
                    let b = conn.nabla(&e(j), &conn.nabla(&e(i), &e(k)));
                    let c = conn.nabla(&bracket, &e(k));
                    let expected = sub(&sub(&a, &b), &c);
                    let got: Vec<Scalar> = (0..d).map(|l| pack.r13.get(&[i, j, k, l]).clone()).collect();
                    assert_eq!(got, expected, "{}: R(x{i},x{j})x{k}", m.name);
                }
            }
        }
    }
}

/// (∇_x η)(y) = g(∇_x ξ, y) for a metric connection, compared with both
/// library routes.
#[test]
fn nabla_eta_routes_match_direct_formula() {
    for m in sample_models() {
        let d = m.dim();
        let conn = levi_civita(&m).unwrap();
        let f = fundamental_tensor(&m, &conn).unwrap();
        let direct = nabla_eta(&m, &conn).unwrap();
        assert_eq!(direct, nabla_eta_from_f(&m, &f), "{}", m.name);
        for x in 0..d {
            let nx = conn.nabla(&basis_vector(d, x), &m.xi);
            for y in 0..d {
                assert_eq!(direct.get(&[x, y]), &m.metric(&nx, &basis_vector(d, y)), "{}", m.name);
            }
        }
    }
}

/// F(x,y,z) = g((∇_x φ)y, z) with (∇_x φ)y = ∇_x(φy) − φ∇_x y.
#[test]
fn fundamental_tensor_matches_definition() {
    for m in sample_models() {
        let d = m.dim();
        let conn = levi_civita(&m).unwrap();
        let f = fundamental_tensor(&m, &conn).unwrap();
        for x in 0..d {
            for y in 0..d {
                let ex = basis_vector(d, x);
                let v = sub(
                    &conn.nabla(&ex, &m.phi_basis(y)),
                    &m.apply_phi(&conn.nabla(&ex, &basis_vector(d, y))),
                );
                for z in 0..d {
                    assert_eq!(f.get(&[x, y, z]), &m.metric(&v, &basis_vector(d, z)), "{}", m.name);
                }
            }
        }
    }
}

/// Ricci tensor, τ and τ* as traces against an explicitly inverted metric.
#[test]
fn ricci_and_scalar_curvatures_by_traces() {
    for m in sample_models() {
        let d = m.dim();
        let report = analyze(&m).unwrap();
        let c = &report.curvature;
        let rows = m.g.rows();
        let ginv = common::gauss_inverse(&rows);
        for y in 0..d {
            for z in 0..d {
                let trace: Scalar = (0..d).map(|x| c.r13.get(&[x, y, z, x]).clone()).sum();
                assert_eq!(c.ricci.get(&[y, z]), &trace, "{}", m.name);
            }
        }
        let tau: Scalar = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| &ginv[i][j] * c.ricci.get(&[i, j]))
            .sum();
        assert_eq!(c.tau, tau, "{}", m.name);
        let tau_star: Scalar = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let phi_ej = m.phi_basis(j);
                let rho_i_phi_j: Scalar = (0..d).map(|a| &phi_ej[a] * c.ricci.get(&[i, a])).sum();
                &ginv[i][j] * rho_i_phi_j
            })
            .sum();
        assert_eq!(c.tau_star, tau_star, "{}", m.name);
    }
}

#[test]
fn heisenberg_levi_civita_by_hand() {
    // [x1, x2] = x0 with g = diag(1, 1, -1)
    let m = heisenberg_model();
    let conn = levi_civita(&m).unwrap();
    let e = |i| basis_vector(3, i);
    let half = frac(1, 2);
    assert_eq!(conn.nabla(&e(1), &e(2)), vec![half.clone(), int(0), int(0)]);
    assert_eq!(conn.nabla(&e(2), &e(1)), vec![-half.clone(), int(0), int(0)]);
    assert!(conn.nabla(&e(0), &e(0)).iter().all(Zero::is_zero));
}

#[test]
fn family_spot_values() {
    let m = family(1, vec![int(2), int(3)]);
    let report = analyze(&m).unwrap();
    let inv = &report.invariants;
    assert_eq!(report.curvature.tau, int(10));
    assert_eq!(report.curvature.tau_star, int(-12));
    assert_eq!(inv.omega_of_big_omega, int(5));
    assert_eq!(inv.norm_nabla_phi, int(10));
    assert_eq!(inv.norm_nabla_eta, int(-5));
    assert_eq!(inv.norm_nijenhuis, int(-10));
    assert_eq!(inv.div_phi_big_omega, int(5));
    assert_eq!(inv.trace_s, int(5));
    assert_eq!(report.structure.forms.omega_star, vec![int(0), int(2), int(3)]);
    assert_eq!(report.structure.forms.big_omega, vec![int(0), int(-3), int(-2)]);
}
