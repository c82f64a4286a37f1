//! Group law for regular subgroups of AGL(n, q) of the shape `{[A_{α(x)}, x] : x ∈ V}`.
//!
//! Every element has a distinct translation part `x`, so elements are indexed
//! by the base-q encoding of `x` (coordinate 1 least significant). The linear
//! part is recovered from `x` through a linear functional `α`, and
//! `[M₁, v₁][M₂, v₂] = [M₁M₂, v₁M₂ + v₂]` becomes `x · y = x A_{α(y)} + y`.

use std::sync::Arc;

use crate::field::FieldCtx;
use crate::linalg::Matrix;

pub const MAX_AFFINE_DIM: usize = 16;

#[derive(Debug, Clone)]
pub struct AffineLaw {
    field: Arc<FieldCtx>,
    dim: usize,
    /// `matrices[a]` is `A_α` for the field element with index `a`.
    matrices: Vec<Matrix>,
    /// `α(x) = Σ functional[i] · x_i`.
    functional: Vec<u32>,
}

impl AffineLaw {
    pub fn new(field: Arc<FieldCtx>, matrices: Vec<Matrix>, functional: Vec<u32>) -> Self {
        let dim = functional.len();
        assert!(dim <= MAX_AFFINE_DIM);
        assert_eq!(matrices.len(), field.order() as usize);
        assert!(matrices.iter().all(|m| m.dim() == dim));
        AffineLaw { field, dim, matrices, functional }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u64 {
        (self.field.order() as u64).pow(self.dim as u32)
    }

    pub fn matrix(&self, alpha: u32) -> &Matrix {
        &self.matrices[alpha as usize]
    }

    pub fn functional(&self) -> &[u32] {
        &self.functional
    }

    #[inline]
    pub fn decode_into(&self, mut idx: u32, out: &mut [u32]) {
        let q = self.field.order();
        for c in out.iter_mut().take(self.dim) {
            *c = idx % q;
            idx /= q;
        }
    }

    pub fn decode(&self, idx: u32) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        self.decode_into(idx, &mut v);
        v
    }

    #[inline]
    pub fn encode(&self, x: &[u32]) -> u32 {
        let q = self.field.order();
        x[..self.dim].iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// The α-coordinate selecting the linear part of the element with translation `x`.
    #[inline]
    pub fn alpha(&self, x: &[u32]) -> u32 {
        let f = &*self.field;
        x.iter().zip(&self.functional).fold(0, |acc, (&xi, &ci)| f.add(acc, f.mul(xi, ci)))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.field;
        let mut x = [0u32; MAX_AFFINE_DIM];
        let mut y = [0u32; MAX_AFFINE_DIM];
        let mut z = [0u32; MAX_AFFINE_DIM];
        let n = self.dim;
        self.decode_into(a, &mut x[..n]);
        self.decode_into(b, &mut y[..n]);
        let m = &self.matrices[self.alpha(&y[..n]) as usize];
        m.apply_into(&x[..n], &mut z[..n], f);
        for i in 0..n {
            z[i] = f.add(z[i], y[i]);
        }
        self.encode(&z[..n])
    }

    /// `[A_α, x]⁻¹ = [A_{-α}, -x A_{-α}]`.
    pub fn inv(&self, a: u32) -> u32 {
        let f = &*self.field;
        let n = self.dim;
        let mut x = [0u32; MAX_AFFINE_DIM];
        let mut z = [0u32; MAX_AFFINE_DIM];
        self.decode_into(a, &mut x[..n]);
        let neg_alpha = f.neg(self.alpha(&x[..n]));
        self.matrices[neg_alpha as usize].apply_into(&x[..n], &mut z[..n], f);
        for c in z[..n].iter_mut() {
            *c = f.neg(*c);
        }
        self.encode(&z[..n])
    }
}
