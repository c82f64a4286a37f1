//! Regular subgroups of the affine orthogonal group acting on `V = GF(q)^{2m}`,
//! and the partitions of their nonidentity elements by the value of `Q`.
//!
//! Every element is `[A_{α(x)}, x]` for a unique `x ∈ V`; `α` is a linear
//! functional invariant under every `A_γ`, so the set is closed under the
//! affine law and acts regularly.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldCtx, SquareClass};
use crate::groups::{abelian_group, affine_group, AffineLaw, ElementSet, GroupHandle};
use crate::linalg::Matrix;
use crate::partition::PartitionScheme;
use crate::quadform::QuadForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AffineKind {
    G1,
    G2,
    AbelianTv,
}

impl AffineKind {
    pub fn tag(self) -> &'static str {
        match self {
            AffineKind::G1 => "affine-g1",
            AffineKind::G2 => "affine-g2",
            AffineKind::AbelianTv => "affine-abelian",
        }
    }
}

/// A constructed affine group with its form, linear parts and `D0/D1/D2` partition.
#[derive(Debug, Clone)]
pub struct AffineConstruction {
    pub kind: AffineKind,
    pub group: GroupHandle,
    pub form: QuadForm,
    /// The fixed nonsingular vector for G1.
    pub anchor: Option<Vec<u32>>,
    /// `matrices[a]` is `A_α` for the field element with index `a`.
    pub matrices: Vec<Matrix>,
    /// `α(x) = Σ functional[i] x_i`.
    pub functional: Vec<u32>,
    pub scheme: PartitionScheme,
    pub note: String,
}

fn form_for(q: u64, m: u32, eps: i32, modulus: Option<&[u32]>) -> Result<QuadForm> {
    let (p, e) = prime_power(q)
        .filter(|&(p, _)| p % 2 == 1)
        .ok_or_else(|| Error::BadParameters(format!("q = {q} is not an odd prime power")))?;
    if m < 2 {
        return Err(Error::BadParameters(format!("m = {m} must be at least 2")));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::BadParameters(format!("eps = {eps} must be +1 or -1")));
    }
    let size = (q as u128).pow(2 * m);
    if 2 * m as usize > crate::groups::MAX_AFFINE_DIM || size > u32::MAX as u128 {
        return Err(Error::BadParameters(format!("q^(2m) = {q}^{} is too large", 2 * m)));
    }
    let field = Arc::new(FieldCtx::new(p, e, modulus)?);
    QuadForm::new(field, m, eps)
}

fn descriptor(kind: AffineKind, form: &QuadForm) -> String {
    let f = form.field();
    let sign = if form.eps() == 1 { "+1" } else { "-1" };
    let mut d = format!("{}:{}:{}:{}", kind.tag(), f.order(), form.m(), sign);
    if f.degree() > 1 {
        let coeffs: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        d.push_str(&format!(":mod={}", coeffs.join(",")));
    }
    d
}

/// `C_α` for the hyperbolic form in dimension 4.
fn c_hyperbolic(f: &FieldCtx, a: u32) -> Matrix {
    let na = f.neg(a);
    let a2 = f.mul(a, a);
    Matrix::from_rows(&[vec![1, 0, 0, a], vec![0, 1, 0, na], vec![a, na, 1, a2], vec![0, 0, 0, 1]])
}

/// `C_α` for the elliptic form in dimension 4.
fn c_elliptic(f: &FieldCtx, a: u32) -> Matrix {
    let na2 = f.neg(f.mul(a, a));
    let n2a = f.neg(f.mul(f.from_int(2), a));
    Matrix::from_rows(&[vec![1, na2, a, 0], vec![0, 1, 0, 0], vec![0, n2a, 1, 0], vec![0, 0, 0, 1]])
}

/// `B_α`, acting on the first four coordinates.
fn b_block(f: &FieldCtx, a: u32) -> Matrix {
    let na = f.neg(a);
    Matrix::from_rows(&[vec![1, 0, 0, 0], vec![0, 1, na, 0], vec![0, 0, 1, 0], vec![a, 0, 0, 1]])
}

fn embed(block: &Matrix, n: usize, offset: usize) -> Matrix {
    Matrix::identity(n).with_block(offset, block)
}

fn dq_partition(group: &GroupHandle, form: &QuadForm, decode: impl Fn(u32) -> Vec<u32>) -> Result<PartitionScheme> {
    let mut classes = vec![ElementSet::empty(group); 3];
    for idx in 1..group.order() as u32 {
        let x = decode(idx);
        let c = match form.classify_vector(&x)? {
            SquareClass::Zero => 0,
            SquareClass::Square => 1,
            SquareClass::NonSquare => 2,
        };
        classes[c].insert_idx(idx);
    }
    let labels = vec!["D0".to_string(), "D1".into(), "D2".into()];
    PartitionScheme::new(group, classes, labels)
}

fn build(
    kind: AffineKind,
    form: QuadForm,
    matrices: Vec<Matrix>,
    functional: Vec<u32>,
    anchor: Option<Vec<u32>>,
    note: String,
) -> Result<AffineConstruction> {
    let field = form.field().clone();
    let law = AffineLaw::new(field, matrices.clone(), functional.clone());
    let group = affine_group(law, descriptor(kind, &form));
    let crate::groups::Backend::Affine(law) = group.backend() else { unreachable!() };
    let law = law.clone();
    let scheme = dq_partition(&group, &form, |i| law.decode(i))?;
    Ok(AffineConstruction { kind, group, form, anchor, matrices, functional, scheme, note })
}

/// `G1^ε`: translations by `v^⊥` extended by `{[A_α, αv]}`.
///
/// m = 2 uses `C_α` with anchor `e1 + e2` (ε = +1) or `e4` (ε = -1); m > 2 uses
/// `B_α ⊕ I` with anchor `e5 + e6`. The elliptic `C_α` fixes only `⟨e2, e4⟩`
/// pointwise and `e2` is singular, so `e4` is the nonsingular fixed anchor.
pub fn affine_g1_with(q: u64, m: u32, eps: i32, modulus: Option<&[u32]>) -> Result<AffineConstruction> {
    let form = form_for(q, m, eps, modulus)?;
    let f = form.field().clone();
    let n = form.dim();
    let mut anchor = vec![0; n];
    let (matrices, note): (Vec<Matrix>, &str) = if m == 2 {
        if eps == 1 {
            anchor[0] = 1;
            anchor[1] = 1;
            ((0..f.order()).map(|a| c_hyperbolic(&f, a)).collect(), "C_alpha (hyperbolic), anchor e1+e2")
        } else {
            anchor[3] = 1;
            ((0..f.order()).map(|a| c_elliptic(&f, a)).collect(), "C_alpha (elliptic), anchor e4")
        }
    } else {
        anchor[4] = 1;
        anchor[5] = 1;
        ((0..f.order()).map(|a| embed(&b_block(&f, a), n, 0)).collect(), "B_alpha block, anchor e5+e6")
    };
    let qv = form.evaluate(&anchor)?;
    if qv == 0 {
        return Err(Error::SingularVector);
    }
    // α(x) = β(x, v) / (2 Q(v)) is the ⟨v⟩-coordinate in V = ⟨v⟩ ⊕ v^⊥.
    let scale = f.inv(f.mul(f.from_int(2), qv)).expect("Q(v) nonzero");
    let functional = form.functional_of(&anchor).into_iter().map(|c| f.mul(c, scale)).collect();
    build(AffineKind::G1, form, matrices, functional, Some(anchor), note.to_string())
}

pub fn affine_g1(q: u64, m: u32, eps: i32) -> Result<(GroupHandle, PartitionScheme)> {
    let c = affine_g1_with(q, m, eps, None)?;
    Ok((c.group, c.scheme))
}

/// `G2`: translations by `U = ⟨e1, e4, ..., e_{2m}⟩` extended by `{[A_α, αe2 + βe3]}`.
/// Requires m > 2, or m = 2 with the hyperbolic form.
pub fn affine_g2_with(q: u64, m: u32, eps: i32, modulus: Option<&[u32]>) -> Result<AffineConstruction> {
    if m == 2 && eps == -1 {
        return Err(Error::BadParameters("G2 needs m > 2 or a hyperbolic form when m = 2".into()));
    }
    let form = form_for(q, m, eps, modulus)?;
    let f = form.field().clone();
    let n = form.dim();
    let matrices = (0..f.order()).map(|a| embed(&b_block(&f, a), n, 0)).collect();
    // α is the e2-coordinate of the ⟨e2, e3⟩ component.
    let mut functional = vec![0; n];
    functional[1] = 1;
    build(AffineKind::G2, form, matrices, functional, None, "B_alpha block".into())
}

pub fn affine_g2(q: u64, m: u32, eps: i32) -> Result<(GroupHandle, PartitionScheme)> {
    let c = affine_g2_with(q, m, eps, None)?;
    Ok((c.group, c.scheme))
}

/// The translation group `T_V ≅ Z_p^{2me}` with the same `D0/D1/D2` partition.
/// Its abelian indexing coincides with the base-q vector encoding.
pub fn affine_abelian_with(q: u64, m: u32, eps: i32, modulus: Option<&[u32]>) -> Result<AffineConstruction> {
    let form = form_for(q, m, eps, modulus)?;
    let f = form.field().clone();
    let n = form.dim();
    let p = f.characteristic() as u64;
    let group = abelian_group(&vec![p; n * f.degree() as usize])?;
    let qq = f.order();
    let scheme = dq_partition(&group, &form, |mut idx| {
        let mut x = vec![0; n];
        for c in x.iter_mut() {
            *c = idx % qq;
            idx /= qq;
        }
        x
    })?;
    Ok(AffineConstruction {
        kind: AffineKind::AbelianTv,
        group,
        form,
        anchor: None,
        matrices: vec![Matrix::identity(n); qq as usize],
        functional: vec![0; n],
        scheme,
        note: "translations only".into(),
    })
}

pub fn affine_abelian(q: u64, m: u32, eps: i32) -> Result<(GroupHandle, PartitionScheme)> {
    let c = affine_abelian_with(q, m, eps, None)?;
    Ok((c.group, c.scheme))
}

impl AffineConstruction {
    fn field(&self) -> &FieldCtx {
        self.form.field()
    }

    pub fn decode(&self, idx: u32) -> Vec<u32> {
        let q = self.field().order();
        let mut r = idx;
        (0..self.form.dim())
            .map(|_| {
                let c = r % q;
                r /= q;
                c
            })
            .collect()
    }

    /// Every `A_α` preserves `Q`.
    pub fn check_isometries(&self) -> Result<bool> {
        for m in &self.matrices {
            if !self.form.is_isometry(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `A_α A_γ = A_{α+γ}` for all α, γ.
    pub fn check_additive(&self) -> bool {
        let f = self.field();
        let q = f.order();
        (0..q).all(|a| {
            (0..q).all(|c| {
                self.matrices[a as usize].mul(&self.matrices[c as usize], f) == self.matrices[f.add(a, c) as usize]
            })
        })
    }

    /// `α(x A_γ) = α(x)` on a basis, which makes `{[A_{α(x)}, x]}` closed.
    pub fn check_closure(&self) -> bool {
        let f = self.field();
        let n = self.form.dim();
        let alpha = |x: &[u32]| x.iter().zip(&self.functional).fold(0, |acc, (&a, &c)| f.add(acc, f.mul(a, c)));
        self.matrices.iter().all(|m| {
            (0..n).all(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                alpha(&m.apply(&e, f)) == alpha(&e)
            })
        })
    }

    /// The anchor is fixed by every `A_α`.
    pub fn check_anchor_fixed(&self) -> bool {
        match &self.anchor {
            None => true,
            Some(v) => self.matrices.iter().all(|m| m.apply(v, self.field()) == *v),
        }
    }

    /// `0^{[A_{α(x)}, x]} = x` and `x ↦ element` is a bijection onto V.
    pub fn check_regular_action(&self) -> bool {
        let q = self.field().order() as u64;
        let mut hit = vec![false; self.group.order() as usize];
        for idx in 0..self.group.order() as u32 {
            let x = self.decode(idx);
            let back = x.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64);
            if back != idx as u64 || hit[back as usize] {
                return false;
            }
            hit[back as usize] = true;
        }
        hit.iter().all(|&h| h)
    }
}

/// The `(q+3)`-class scheme on `G2(q, 2, +1)`: `D1`, `D2`, then the nonzero vectors
/// of `U_∞ = ⟨e4, e1⟩` and `U_α = ⟨e2 + αe4, αe1 - e3⟩` for α in index order.
pub fn affine_scheme_q4_with(q: u64, modulus: Option<&[u32]>) -> Result<(AffineConstruction, PartitionScheme)> {
    let base = affine_g2_with(q, 2, 1, modulus)?;
    let f = base.form.field().clone();
    let g = base.group.clone();
    let qq = f.order();
    let encode = |x: [u32; 4]| x.iter().rev().fold(0u32, |acc, &c| acc * qq + c);
    let span = |v: [u32; 4], u: [u32; 4]| {
        let mut s = ElementSet::empty(&g);
        for a in 0..qq {
            for b in 0..qq {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = std::array::from_fn(|i| f.add(f.mul(a, v[i]), f.mul(b, u[i])));
                s.insert_idx(encode(x));
            }
        }
        s
    };
    let mut classes = vec![base.scheme.class(1).clone(), base.scheme.class(2).clone()];
    let mut labels = vec!["D1".to_string(), "D2".to_string()];
    classes.push(span([0, 0, 0, 1], [1, 0, 0, 0]));
    labels.push("U_inf".into());
    for a in 0..qq {
        classes.push(span([0, 1, 0, a], [a, 0, f.neg(1), 0]));
        labels.push(format!("U_{a}"));
    }
    let scheme = PartitionScheme::new(&g, classes, labels)?;
    Ok((base, scheme))
}

pub fn affine_scheme_q4(q: u64) -> Result<(GroupHandle, PartitionScheme)> {
    let (base, scheme) = affine_scheme_q4_with(q, None)?;
    Ok((base.group, scheme))
}

/// `D1` together with the first `(q+1)/2` subspace classes; size `(q^4 - 1)/2`.
pub fn affine_paley_q4(q: u64) -> Result<(GroupHandle, ElementSet)> {
    let (g, scheme) = affine_scheme_q4(q)?;
    Ok((g, scheme.fuse(&affine_paley_selection(q))))
}

/// Class indices of the Paley fusion in the `(q+3)`-class scheme.
pub fn affine_paley_selection(q: u64) -> Vec<usize> {
    let mut selection = vec![0];
    selection.extend(2..2 + (q as usize).div_ceil(2));
    selection
}
