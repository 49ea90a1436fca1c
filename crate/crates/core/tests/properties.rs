mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use norden_core::classifier::analyze;
use norden_core::connection::levi_civita;
use norden_core::curvature::{evaluate4, riemann, sectional_curvature, symmetry_defects};
use norden_core::lie_algebra::LieAlgebra;
use norden_core::linalg::{invert_symmetric, signature};
use norden_core::model_io::{parse_model, serialize_model, serialize_model_json};
use norden_core::scalar::{frac, int, Scalar};
use norden_core::structure::{basis_vector, validate_structure, AcnModel};
use norden_core::structure_tensors::{fundamental_tensor, nijenhuis_bracket, nijenhuis_derivative};
use norden_core::{Tensor, Variance};

use common::family;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn family_model() -> impl Strategy<Value = AcnModel> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(rational(), 2 * n)))
        .prop_map(|(n, lambda)| family(n, lambda))
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), d)
}

/// Random symmetric matrix; may be singular.
fn symmetric(d: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec(rational(), d * d).prop_map(move |v| {
        Tensor::from_fn(d, &[Variance::Down, Variance::Down], |ix| {
            let (i, j) = (ix[0].min(ix[1]), ix[0].max(ix[1]));
            v[i * d + j].clone()
        })
    })
}

/// Upper times lower unitriangular, so determinant one.
fn unimodular(d: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    (prop::collection::vec(rational(), d * d), prop::collection::vec(rational(), d * d)).prop_map(move |(u, l)| {
        let upper = |i: usize, j: usize| match i.cmp(&j) {
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Less => u[i * d + j].clone(),
            _ => Scalar::zero(),
        };
        let lower = |i: usize, j: usize| match i.cmp(&j) {
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Greater => l[i * d + j].clone(),
            _ => Scalar::zero(),
        };
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| upper(i, k) * lower(k, j)).sum()).collect())
            .collect()
    })
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = b.len();
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| (0..n).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn combine(a: &Scalar, x: &[Scalar], b: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_stay_in_lowest_terms(a in rational(), b in rational(), c in rational()) {
        for v in [&a * &b + &c, &a - &b * &c, (&a + &b) * (&b - &c)] {
            prop_assert!(v.denom().is_positive());
            let reduced = Scalar::new(v.numer().clone(), v.denom().clone());
            prop_assert_eq!(reduced.numer(), v.numer());
        }
    }

    #[test]
    fn symmetric_inverse_is_exact(
        g in prop::sample::select(vec![3usize, 5, 7]).prop_flat_map(symmetric),
    ) {
        let Ok(inv) = invert_symmetric(&g) else { return Ok(()); };
        prop_assert_eq!(inv.variance(), &[Variance::Up, Variance::Up]);
        let product = mat_mul(&g.rows(), &inv.rows());
        for (i, row) in product.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                prop_assert_eq!(v.clone(), if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn signature_survives_congruence(g in symmetric(4), p in unimodular(4)) {
        let congruent = mat_mul(&mat_mul(&transpose(&p), &g.rows()), &p);
        let h = Tensor::from_rows(&congruent, [Variance::Down, Variance::Down]).unwrap();
        prop_assert_eq!(signature(&g).unwrap(), signature(&h).unwrap());
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        m in family_model(),
        seed in vector(7),
        a in rational(),
        b in rational(),
    ) {
        let d = m.dim();
        let x: Vec<Scalar> = seed.iter().take(d).cloned().collect();
        let y: Vec<Scalar> = seed.iter().rev().take(d).cloned().collect();
        let z: Vec<Scalar> = (0..d).map(|i| &seed[i] * &seed[6 - i]).collect();
        let alg: &LieAlgebra = &m.algebra;
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        prop_assert_eq!(xy.clone(), yx.iter().map(|v| -v).collect::<Vec<_>>());
        let lhs = alg.bracket(&combine(&a, &x, &b, &z), &y).unwrap();
        let zy = alg.bracket(&z, &y).unwrap();
        prop_assert_eq!(lhs, combine(&a, &xy, &b, &zy));
    }

    #[test]
    fn family_models_are_valid_and_solvable(m in family_model()) {
        prop_assert!(validate_structure(&m).is_valid());
        prop_assert!(m.algebra.validate().is_valid());
        prop_assert!(m.algebra.is_solvable().unwrap());
    }

    #[test]
    fn eta_is_the_metric_dual_of_xi(m in family_model(), v in vector(7)) {
        let x = &v[..m.dim()];
        prop_assert_eq!(m.eta_of(x), m.metric(x, &m.xi));
    }

    #[test]
    fn fundamental_tensor_symmetries(m in family_model()) {
        let conn = levi_civita(&m).unwrap();
        let f = fundamental_tensor(&m, &conn).unwrap();
        let d = m.dim();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    // F(x,y,z) = F(x,z,y) and F(x,φy,φz) = F(x,y,z) − F(x,ξ,z)η(y) − F(x,y,ξ)η(z)
                    prop_assert_eq!(f.get(&[x, y, z]), f.get(&[x, z, y]));
                    let py = m.phi_basis(y);
                    let pz = m.phi_basis(z);
                    let twisted: Scalar = (0..d)
                        .flat_map(|a| (0..d).map(move |b| (a, b)))
                        .map(|(a, b)| &py[a] * &pz[b] * f.get(&[x, a, b]))
                        .sum();
                    let xi_part: Scalar = (0..d)
                        .map(|a| &m.xi[a] * (f.get(&[x, a, z]) * &m.eta[y] + f.get(&[x, y, a]) * &m.eta[z]))
                        .sum();
                    prop_assert_eq!(f.get(&[x, y, z]) - xi_part, twisted);
                }
            }
        }
    }

    #[test]
    fn nijenhuis_constructions_agree(m in family_model()) {
        let conn = levi_civita(&m).unwrap();
        prop_assert_eq!(nijenhuis_bracket(&m, &conn).unwrap(), nijenhuis_derivative(&m, &conn).unwrap());
    }

    #[test]
    fn curvature_has_riemannian_symmetries(m in family_model()) {
        let pack = riemann(&m, &levi_civita(&m).unwrap()).unwrap();
        for (name, at) in symmetry_defects(&pack.r04) {
            prop_assert!(at.is_none(), "{} fails at {:?}", name, at);
        }
    }

    #[test]
    fn sectional_curvature_depends_only_on_the_plane(
        m in family_model(),
        v in vector(14),
        coeffs in (rational(), rational(), rational()),
    ) {
        let d = m.dim();
        let x = v[..d].to_vec();
        let y = v[7..7 + d].to_vec();
        let pack = riemann(&m, &levi_civita(&m).unwrap()).unwrap();
        let Ok(k) = sectional_curvature(&m, &pack, &x, &y) else { return Ok(()); };
        // (x, y) -> (x + a y, y) -> (x', b x' + y) has determinant one
        let (a, b, _) = coeffs;
        let x2 = combine(&int(1), &x, &a, &y);
        let y2 = combine(&b, &x2, &int(1), &y);
        prop_assert_eq!(sectional_curvature(&m, &pack, &x2, &y2).unwrap(), k.clone());
        // swapping the spanning vectors is harmless too
        prop_assert_eq!(sectional_curvature(&m, &pack, &y, &x).unwrap(), k);
    }

    #[test]
    fn curvature_is_multilinear_in_basis_expansion(m in family_model(), v in vector(7)) {
        let pack = riemann(&m, &levi_civita(&m).unwrap()).unwrap();
        let d = m.dim();
        let x = &v[..d];
        let e = |i| basis_vector(d, i);
        let expanded: Scalar = (0..d).map(|i| &x[i] * evaluate4(&pack.r04, &e(i), &e(0), &e(0), &e(1))).sum();
        prop_assert_eq!(evaluate4(&pack.r04, x, &e(0), &e(0), &e(1)), expanded);
    }

    #[test]
    fn model_files_round_trip(m in family_model()) {
        prop_assert_eq!(parse_model(&serialize_model(&m)).unwrap(), m.clone());
        prop_assert_eq!(parse_model(&serialize_model_json(&m)).unwrap(), m);
    }
}

#[test]
fn analysis_is_deterministic() {
    let m = family(2, vec![frac(1, 2), int(-3), frac(7, 5), int(0)]);
    let a = analyze(&m).unwrap();
    let b = analyze(&m).unwrap();
    assert_eq!(norden_core::report::to_json(&a), norden_core::report::to_json(&b));
}
