//! Small dense containers generic over the scalar type.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Row-major `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Square<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Clone> Square<S> {
    pub fn filled(n: usize, v: S) -> Self {
        Square { n, data: vec![v; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Square { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> Square<T> {
        Square {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Same matrix with rows and columns relabelled: `out[a][b] = self[perm[a]][perm[b]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Square::from_fn(self.n, |a, b| self[(perm[a], perm[b])].clone())
    }
}

impl<S: Scalar> Square<S> {
    pub fn zeros(n: usize) -> Self {
        Square::filled(n, S::zero())
    }
}

impl Square<Complex64> {
    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        Square::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

impl<S> Index<(usize, usize)> for Square<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Square<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

/// Fully indexed `n × n × n` tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Clone> Tensor3<S> {
    pub fn filled(n: usize, v: S) -> Self {
        Tensor3 { n, data: vec![v; n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Writes `v` into all index permutations of `(a, b, c)`.
    pub fn set_symmetric(&mut self, a: usize, b: usize, c: usize, v: S) {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            self[(x, y, z)] = v.clone();
        }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> Tensor3<T> {
        Tensor3 {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<S> Index<(usize, usize, usize)> for Tensor3<S> {
    type Output = S;
    fn index(&self, (a, b, c): (usize, usize, usize)) -> &S {
        &self.data[(a * self.n + b) * self.n + c]
    }
}

impl<S> IndexMut<(usize, usize, usize)> for Tensor3<S> {
    fn index_mut(&mut self, (a, b, c): (usize, usize, usize)) -> &mut S {
        &mut self.data[(a * self.n + b) * self.n + c]
    }
}
