#![allow(dead_code)]

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use norden_core::model_io::{generate_family, FamilyParams};
use norden_core::scalar::{frac, int};
use norden_core::structure::AcnModel;
use norden_core::{Scalar, Tensor, Variance};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut StdRng) -> Scalar {
    frac(rng.random_range(-9..=9), rng.random_range(1..=6))
}

pub fn random_lambda(rng: &mut StdRng, n: usize) -> Vec<Scalar> {
    (0..2 * n).map(|_| random_rational(rng)).collect()
}

pub fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn family(n: usize, lambda: Vec<Scalar>) -> AcnModel {
    generate_family(&FamilyParams::new(n, lambda).unwrap()).unwrap()
}

/// Unique solution of `a x = b` by plain Gaussian elimination, or `None` if
/// the system is inconsistent or underdetermined.
pub fn gauss_solve(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let d = &f * &a[r][k];
                    a[i][k] -= d;
                }
                let d = &f * &b[r];
                b[i] -= d;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| &b[c] / &a[c][c]).collect())
}

/// Levi-Civita symbols found as the unique solution of the linear system
/// "torsion-free and metric", without using the Koszul formula.
pub fn levi_civita_by_linear_system(m: &AcnModel) -> Tensor {
    let d = m.dim();
    let var = |k: usize, i: usize, j: usize| (k * d + i) * d + j;
    let nvars = d * d * d;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 0..d {
        for i in 0..d {
            for j in i + 1..d {
                let mut row = vec![Scalar::zero(); nvars];
                row[var(k, i, j)] += int(1);
                row[var(k, j, i)] -= int(1);
                a.push(row);
                b.push(m.algebra.constant(k, i, j).clone());
            }
        }
    }
    // Γ^s_ik g_sj + Γ^s_ij g_ks = 0
    for i in 0..d {
        for j in 0..d {
            for k in j..d {
                let mut row = vec![Scalar::zero(); nvars];
                for s in 0..d {
                    row[var(s, i, k)] += m.g_at(s, j);
                    row[var(s, i, j)] += m.g_at(k, s);
                }
                a.push(row);
                b.push(Scalar::zero());
            }
        }
    }
    let x = gauss_solve(a, b).expect("unique Levi-Civita connection");
    Tensor::from_data(vec![d, d, d], vec![Variance::Up, Variance::Down, Variance::Down], x).unwrap()
}

/// Inverse of a square matrix, column by column through `gauss_solve`.
pub fn gauss_inverse(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let d = a.len();
    let cols: Vec<Vec<Scalar>> = (0..d)
        .map(|c| {
            let b = (0..d).map(|r| if r == c { int(1) } else { Scalar::zero() }).collect();
            gauss_solve(a.to_vec(), b).expect("invertible")
        })
        .collect();
    (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
}
