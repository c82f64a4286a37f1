//! Canonical nondegenerate quadratic forms on `GF(q)^{2m}`.
//!
//! Hyperbolic: `x1x2 + x3x4 + ... + x_{2m-1}x_{2m}`.
//! Elliptic: the last pair is replaced by `x_{2m-1}^2 + b x_{2m}^2` with `-b` a nonsquare.
//! Vectors are slices of field-element indices; matrices act on the right.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, SquareClass};
use crate::linalg::Matrix;

/// Exhaustive isometry checks are used up to this many vectors.
pub const EXHAUSTIVE_LIMIT: u64 = 6561;

#[derive(Debug, Clone)]
pub struct QuadForm {
    field: Arc<FieldCtx>,
    m: u32,
    eps: i32,
    b: u32,
}

impl QuadForm {
    pub fn new(field: Arc<FieldCtx>, m: u32, eps: i32) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::BadEps(eps));
        }
        if m < 2 {
            return Err(Error::MTooSmall(m));
        }
        let b = if eps == -1 { field.nonsquare_witness_index() } else { 0 };
        Ok(QuadForm { field, m, eps, b })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn eps(&self) -> i32 {
        self.eps
    }

    /// Elliptic coefficient; 0 for hyperbolic forms.
    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn dim(&self) -> usize {
        2 * self.m as usize
    }

    /// Number of vectors, `q^{2m}`.
    pub fn space_size(&self) -> u64 {
        (self.field.order() as u64).pow(2 * self.m)
    }

    fn check_dim(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// Unchecked evaluation; `x.len()` must be `2m`.
    #[inline]
    pub fn eval_raw(&self, x: &[u32]) -> u32 {
        let f = &*self.field;
        let pairs = if self.eps == 1 { self.m } else { self.m - 1 } as usize;
        let mut acc = 0;
        for i in 0..pairs {
            acc = f.add(acc, f.mul(x[2 * i], x[2 * i + 1]));
        }
        if self.eps == -1 {
            let n = self.dim();
            let s = f.mul(x[n - 2], x[n - 2]);
            let t = f.mul(self.b, f.mul(x[n - 1], x[n - 1]));
            acc = f.add(acc, f.add(s, t));
        }
        acc
    }

    pub fn evaluate(&self, x: &[u32]) -> Result<u32> {
        self.check_dim(x)?;
        Ok(self.eval_raw(x))
    }

    /// `β(x, y) = Q(x + y) - Q(x) - Q(y)`.
    pub fn bilinear(&self, x: &[u32], y: &[u32]) -> Result<u32> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let f = &*self.field;
        let s: Vec<u32> = x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(f.sub(f.sub(self.eval_raw(&s), self.eval_raw(x)), self.eval_raw(y)))
    }

    /// The expanded symmetric formula for `β`.
    pub fn bilinear_expanded(&self, x: &[u32], y: &[u32]) -> Result<u32> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let f = &*self.field;
        let pairs = if self.eps == 1 { self.m } else { self.m - 1 } as usize;
        let mut acc = 0;
        for i in 0..pairs {
            let (a, b) = (2 * i, 2 * i + 1);
            acc = f.add(acc, f.add(f.mul(x[a], y[b]), f.mul(x[b], y[a])));
        }
        if self.eps == -1 {
            let n = self.dim();
            let two = f.from_int(2);
            acc = f.add(acc, f.mul(two, f.mul(x[n - 2], y[n - 2])));
            let t = f.mul(f.mul(two, self.b), f.mul(x[n - 1], y[n - 1]));
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    pub fn classify_vector(&self, x: &[u32]) -> Result<SquareClass> {
        Ok(self.field.square_class_of(self.evaluate(x)?))
    }

    /// Basis of `v^⊥`. The pivot is the first coordinate `i` with `β(e_i, v) ≠ 0`;
    /// the basis vectors are `e_j - (c_j / c_i) e_i` for every `j ≠ i`, in order.
    pub fn perp_basis(&self, v: &[u32]) -> Result<Vec<Vec<u32>>> {
        self.check_dim(v)?;
        if v.iter().all(|&c| c == 0) {
            return Err(Error::ZeroVector);
        }
        if self.eval_raw(v) == 0 {
            return Err(Error::SingularVector);
        }
        let f = &*self.field;
        let coeffs = self.functional_of(v);
        let pivot = coeffs.iter().position(|&c| c != 0).ok_or(Error::SingularVector)?;
        let pinv = f.inv(coeffs[pivot]).expect("nonzero pivot");
        let n = self.dim();
        Ok((0..n)
            .filter(|&j| j != pivot)
            .map(|j| {
                let mut u = vec![0; n];
                u[j] = 1;
                u[pivot] = f.neg(f.mul(coeffs[j], pinv));
                u
            })
            .collect())
    }

    /// `c_i = β(e_i, v)`, so that `β(x, v) = Σ c_i x_i`.
    pub fn functional_of(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.bilinear_expanded(&e, v).expect("dimension checked")
            })
            .collect()
    }

    pub fn is_isometry(&self, m: &Matrix) -> Result<bool> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: m.dim() });
        }
        let f = &*self.field;
        let n = self.dim();
        let preserved = |x: &[u32]| self.eval_raw(&m.apply(x, f)) == self.eval_raw(x);
        for i in 0..n {
            for j in i..n {
                let mut x = vec![0; n];
                x[i] = 1;
                x[j] = f.add(x[j], 1);
                if !preserved(&x) {
                    return Ok(false);
                }
            }
        }
        if self.space_size() <= EXHAUSTIVE_LIMIT {
            let q = f.order();
            let mut x = vec![0; n];
            for idx in 0..self.space_size() {
                let mut r = idx;
                for c in x.iter_mut() {
                    *c = (r % q as u64) as u32;
                    r /= q as u64;
                }
                if !preserved(&x) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Counts of (Zero, Square, NonSquare) values over the nonzero vectors.
    pub fn class_counts(&self) -> [u64; 3] {
        let q = self.field.order() as u64;
        let n = self.dim();
        let mut counts = [0u64; 3];
        let mut x = vec![0; n];
        for idx in 1..self.space_size() {
            let mut r = idx;
            for c in x.iter_mut() {
                *c = (r % q) as u32;
                r /= q;
            }
            counts[self.field.square_class_of(self.eval_raw(&x)) as usize] += 1;
        }
        counts
    }
}
