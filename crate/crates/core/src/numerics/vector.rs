use std::ops::{Index, IndexMut};

use crate::Scalar;

/// Dense real vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseVector<S> {
    data: Vec<S>,
}

impl<S: Scalar> DenseVector<S> {
    pub fn zeros(len: usize) -> Self {
        Self {
            data: vec![S::zero(); len],
        }
    }

    pub fn filled(len: usize, value: S) -> Self {
        Self {
            data: vec![value; len],
        }
    }

    pub fn from_vec(data: Vec<S>) -> Self {
        Self { data }
    }

    pub fn from_slice(data: &[S]) -> Self {
        Self {
            data: data.to_vec(),
        }
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> S) -> Self {
        Self {
            data: (0..len).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn dot(&self, other: &Self) -> S {
        debug_assert_eq!(self.len(), other.len());
        self.data
            .iter()
            .zip(&other.data)
            .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn norm2(&self) -> S {
        self.dot(self).sqrt()
    }

    pub fn norm_inf(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn min_value(&self) -> S {
        self.data.iter().fold(S::infinity(), |acc, &v| acc.min(v))
    }

    pub fn max_value(&self) -> S {
        self.data
            .iter()
            .fold(S::neg_infinity(), |acc, &v| acc.max(v))
    }

    pub fn sum(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, &v| acc + v)
    }

    pub fn scale(&self, s: S) -> Self {
        Self::from_fn(self.len(), |i| self.data[i] * s)
    }

    pub fn scale_in_place(&mut self, s: S) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::from_fn(self.len(), |i| self.data[i] + other.data[i])
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::from_fn(self.len(), |i| self.data[i] - other.data[i])
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: S, other: &Self) {
        debug_assert_eq!(self.len(), other.len());
        for (v, &o) in self.data.iter_mut().zip(&other.data) {
            *v += s * o;
        }
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self::from_fn(self.len(), |i| self.data[i] * other.data[i])
    }

    pub fn map(&self, f: impl FnMut(S) -> S) -> Self {
        Self {
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.len() + other.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Self { data }
    }
}

impl<S> Index<usize> for DenseVector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}

impl<S> IndexMut<usize> for DenseVector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.data[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_norms() {
        let a = DenseVector::from_vec(vec![3.0_f64, -4.0]);
        assert_eq!(a.dot(&a), 25.0);
        assert_eq!(a.norm2(), 5.0);
        assert_eq!(a.norm_inf(), 4.0);
        assert_eq!(a.sum(), -1.0);
    }

    #[test]
    fn axpy_updates_in_place() {
        let mut a = DenseVector::from_vec(vec![1.0_f64, 2.0]);
        let b = DenseVector::from_vec(vec![10.0, 20.0]);
        a.axpy(0.5, &b);
        assert_eq!(a.as_slice(), &[6.0, 12.0]);
    }
}
