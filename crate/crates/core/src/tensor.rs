//! Dense tensors over exact rationals with per-slot variance.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    /// Contravariant slot.
    Up,
    /// Covariant slot.
    Down,
}

impl Variance {
    fn name(self) -> &'static str {
        match self {
            Variance::Up => "up",
            Variance::Down => "down",
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense row-major tensor. Slot `k` has extent `shape[k]` and variance
/// `variance[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    shape: Vec<usize>,
    variance: Vec<Variance>,
    data: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(shape: Vec<usize>, variance: Vec<Variance>) -> Self {
        assert_eq!(shape.len(), variance.len(), "one variance tag per slot");
        let len = shape.iter().product();
        Self {
            shape,
            variance,
            data: vec![Scalar::zero(); len],
        }
    }

    /// Zero tensor with every slot of extent `dim`.
    pub fn square(dim: usize, variance: &[Variance]) -> Self {
        Self::zeros(vec![dim; variance.len()], variance.to_vec())
    }

    pub fn from_fn(dim: usize, variance: &[Variance], mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut t = Self::square(dim, variance);
        for (offset, idx) in multi_indices(&t.shape).enumerate() {
            t.data[offset] = f(&idx);
        }
        t
    }

    pub fn from_data(shape: Vec<usize>, variance: Vec<Variance>, data: Vec<Scalar>) -> Result<Self> {
        if shape.len() != variance.len() {
            return Err(Error::DimensionMismatch {
                expected: shape.len(),
                found: variance.len(),
            });
        }
        let expected: usize = shape.iter().product();
        if expected != data.len() {
            return Err(Error::DimensionMismatch {
                expected,
                found: data.len(),
            });
        }
        Ok(Self {
            shape,
            variance,
            data,
        })
    }

    pub fn scalar(value: Scalar) -> Self {
        Self {
            shape: Vec::new(),
            variance: Vec::new(),
            data: vec![value],
        }
    }

    pub fn vector(components: Vec<Scalar>) -> Self {
        Self {
            shape: vec![components.len()],
            variance: vec![Variance::Up],
            data: components,
        }
    }

    pub fn covector(components: Vec<Scalar>) -> Self {
        Self {
            shape: vec![components.len()],
            variance: vec![Variance::Down],
            data: components,
        }
    }

    /// Square matrix from rows; `rows[a][b]` becomes component `(a, b)`.
    pub fn from_rows(rows: &[Vec<Scalar>], variance: [Variance; 2]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            shape: vec![n, n],
            variance: variance.to_vec(),
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, &[Variance::Up, Variance::Down], |i| {
            if i[0] == i[1] {
                crate::scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    /// Rows of a rank-2 tensor.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        assert_eq!(self.rank(), 2, "rows() needs a rank-2 tensor");
        self.data.chunks(self.shape[1].max(1)).map(<[Scalar]>::to_vec).collect()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index rank mismatch");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of range {n}");
            acc * n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Multi-index of the first nonzero component, if any.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        multi_indices(&self.shape)
            .zip(&self.data)
            .find(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
    }

    /// Iterator over `(multi-index, component)` pairs in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> {
        multi_indices(&self.shape).zip(&self.data)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self {
            shape: self.shape.clone(),
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        self.map(|v| v * factor)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.shape != other.shape || self.variance != other.variance {
            return Err(Error::DimensionMismatch {
                expected: self.data.len(),
                found: other.data.len(),
            });
        }
        Ok(Self {
            shape: self.shape.clone(),
            variance: self.variance.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Tensor product; slots of `self` come first.
    pub fn outer(&self, other: &Self) -> Self {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self {
            shape,
            variance,
            data,
        }
    }

    /// Trace over one contravariant and one covariant slot.
    pub fn contract(&self, up_slot: usize, down_slot: usize) -> Result<Self> {
        let r = self.rank();
        if up_slot >= r || down_slot >= r || up_slot == down_slot {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: up_slot.max(down_slot),
            });
        }
        if self.variance[up_slot] != Variance::Up || self.variance[down_slot] != Variance::Down {
            return Err(Error::VarianceMismatch {
                up: up_slot,
                down: down_slot,
                up_variance: self.variance[up_slot].name(),
                down_variance: self.variance[down_slot].name(),
            });
        }
        if self.shape[up_slot] != self.shape[down_slot] {
            return Err(Error::DimensionMismatch {
                expected: self.shape[up_slot],
                found: self.shape[down_slot],
            });
        }
        let keep: Vec<usize> = (0..r).filter(|&k| k != up_slot && k != down_slot).collect();
        let shape: Vec<usize> = keep.iter().map(|&k| self.shape[k]).collect();
        let variance: Vec<Variance> = keep.iter().map(|&k| self.variance[k]).collect();
        let mut out = Self::zeros(shape.clone(), variance);
        let mut full = vec![0; r];
        for (o, idx) in multi_indices(&shape).enumerate() {
            for (&k, &i) in keep.iter().zip(&idx) {
                full[k] = i;
            }
            let mut acc = Scalar::zero();
            for t in 0..self.shape[up_slot] {
                full[up_slot] = t;
                full[down_slot] = t;
                acc += self.get(&full);
            }
            out.data[o] = acc;
        }
        Ok(out)
    }
}

impl Index<&[usize]> for Tensor {
    type Output = Scalar;

    fn index(&self, idx: &[usize]) -> &Scalar {
        self.get(idx)
    }
}

impl IndexMut<&[usize]> for Tensor {
    fn index_mut(&mut self, idx: &[usize]) -> &mut Scalar {
        let o = self.offset(idx);
        &mut self.data[o]
    }
}

/// All multi-indices of `shape` in row-major order.
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    let mut current = vec![0; shape.len()];
    (0..total).map(move |step| {
        if step > 0 {
            for k in (0..shape.len()).rev() {
                current[k] += 1;
                if current[k] < shape[k] {
                    break;
                }
                current[k] = 0;
            }
        }
        current.clone()
    })
}
