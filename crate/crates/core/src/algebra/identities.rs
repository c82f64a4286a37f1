//! Group-ring identities behind the semidirect `P_i` classes at `t = 2`.
//!
//! `P_i` is the disjoint union of `p + 1` constituents `T = H - K` with `K ≤ H`
//! cyclic: `T_j = ⟨x y^{ip+j}⟩ - ⟨x^p y^{pj}⟩` for `0 ≤ j < p` and
//! `T_∞ = ⟨x^{pi} y⟩ - ⟨y^p⟩`. Every identity here is compared coefficient by
//! coefficient over the whole group.

use serde::Serialize;

use super::census::convolution;
use crate::constructions::{gen_subgroup, scheme_group};
use crate::error::{Error, Result};
use crate::groups::{ElementSet, GroupHandle};

/// A dense element of `Z[G]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    owner: GroupHandle,
    coeffs: Vec<i64>,
}

impl GroupRingElem {
    pub fn zero(g: &GroupHandle) -> Self {
        GroupRingElem { owner: g.clone(), coeffs: vec![0; g.order() as usize] }
    }

    pub fn identity(g: &GroupHandle) -> Self {
        let mut e = Self::zero(g);
        e.coeffs[0] = 1;
        e
    }

    pub fn from_set(s: &ElementSet) -> Self {
        let mut e = Self::zero(s.owner());
        for x in s.indices() {
            e.coeffs[x as usize] = 1;
        }
        e
    }

    pub fn whole(g: &GroupHandle) -> Self {
        GroupRingElem { owner: g.clone(), coeffs: vec![1; g.order() as usize] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn scale(&self, c: i64) -> Self {
        GroupRingElem { owner: self.owner.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        GroupRingElem { owner: self.owner.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    /// Product in `Z[G]`; `O(|supp a| · |supp b|)`.
    pub fn mul(&self, o: &Self) -> Self {
        let g = &self.owner;
        let mut out = vec![0i64; self.coeffs.len()];
        let right: Vec<(u32, i64)> =
            o.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect();
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for &(b, cb) in &right {
                out[g.mul_idx(a as u32, b) as usize] += ca * cb;
            }
        }
        GroupRingElem { owner: g.clone(), coeffs: out }
    }
}

/// One constituent `H - K` of a `P_i` class.
#[derive(Debug, Clone)]
pub struct Constituent {
    pub big: ElementSet,
    pub small: ElementSet,
}

impl Constituent {
    pub fn elem(&self) -> GroupRingElem {
        GroupRingElem::from_set(&self.big).sub(&GroupRingElem::from_set(&self.small))
    }

    /// `(H - K)(H' - K')` expanded into four set convolutions.
    pub fn product_by_census(&self, other: &Constituent) -> Result<Vec<i64>> {
        let g = self.big.owner();
        let parts = [
            (1, convolution(g, &self.big, &other.big)?),
            (-1, convolution(g, &self.big, &other.small)?),
            (-1, convolution(g, &self.small, &other.big)?),
            (1, convolution(g, &self.small, &other.small)?),
        ];
        let mut out = vec![0i64; g.order() as usize];
        for (sign, c) in parts {
            for (o, v) in out.iter_mut().zip(c.signed()) {
                *o += sign * v;
            }
        }
        Ok(out)
    }
}

/// The `p + 1` constituents of `P_i` in `Z_{p^2} ⋊ Z_{p^2}` (or `Z_{p^2}^2`).
pub fn constituents(g: &GroupHandle, p: u32, i: u32) -> Vec<Constituent> {
    let (p, i) = (p as u64, i as u64);
    let n = p * p;
    let mut out: Vec<Constituent> = (0..p)
        .map(|j| Constituent { big: gen_subgroup(g, n, 1, i * p + j), small: gen_subgroup(g, n, p, p * j) })
        .collect();
    out.push(Constituent { big: gen_subgroup(g, n, p * i, 1), small: gen_subgroup(g, n, 0, p) });
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub mismatches: usize,
    /// `(element, lhs, rhs)` at the first differing coefficient.
    pub first_mismatch: Option<(u32, i64, i64)>,
    pub lhs_mass: i64,
    pub rhs_mass: i64,
}

impl IdentityCheck {
    pub fn compare(name: &str, lhs: &[i64], rhs: &[i64]) -> Self {
        let diffs: Vec<usize> = (0..lhs.len()).filter(|&x| lhs[x] != rhs[x]).collect();
        IdentityCheck {
            name: name.to_string(),
            holds: diffs.is_empty(),
            mismatches: diffs.len(),
            first_mismatch: diffs.first().map(|&x| (x as u32, lhs[x], rhs[x])),
            lhs_mass: lhs.iter().sum(),
            rhs_mass: rhs.iter().sum(),
        }
    }

    pub fn into_result(self) -> Result<Self> {
        match self.first_mismatch {
            Some((element, lhs, rhs)) => Err(Error::IdentityFails { element, lhs, rhs }),
            None => Ok(self),
        }
    }
}

struct Ctx {
    g: GroupHandle,
    p: i64,
    parts: Vec<Constituent>,
    class: GroupRingElem,
    /// `⟨x^p, y^p⟩`.
    socle: GroupRingElem,
}

fn ctx(p: u32, twisted: bool, i: u32) -> Result<Ctx> {
    if i == 0 || i >= p {
        return Err(Error::BadParameters(format!("class index {i} outside 1..{p}")));
    }
    let g = scheme_group(p, 2, twisted)?;
    let parts = constituents(&g, p, i);
    let mut class = GroupRingElem::zero(&g);
    for c in &parts {
        class = class.add(&c.elem());
    }
    let n = (p * p) as u64;
    let socle = ElementSet::from_idx_iter(
        &g,
        (0..p as u64).flat_map(|a| (0..p as u64).map(move |b| (a * p as u64 + n * b * p as u64) as u32)),
    );
    Ok(Ctx { p: p as i64, parts, class, socle: GroupRingElem::from_set(&socle), g })
}

/// `Σ ((p²-2p) H + p K)` over the constituents: the expansion of `Σ T²`.
fn internal_lhs(c: &Ctx) -> GroupRingElem {
    let mut lhs = GroupRingElem::zero(&c.g);
    for t in &c.parts {
        let h = GroupRingElem::from_set(&t.big).scale(c.p * c.p - 2 * c.p);
        let k = GroupRingElem::from_set(&t.small).scale(c.p);
        lhs = lhs.add(&h).add(&k);
    }
    lhs
}

/// Each constituent squared, summed by census, against `Σ ((p²-2p) H + p K)`.
pub fn check_diagonal_sum(p: u32, twisted: bool, i: u32) -> Result<IdentityCheck> {
    let c = ctx(p, twisted, i)?;
    let mut squares = vec![0i64; c.g.order() as usize];
    for t in &c.parts {
        for (s, v) in squares.iter_mut().zip(t.product_by_census(t)?) {
            *s += v;
        }
    }
    Ok(IdentityCheck::compare("diagonal-sum", &squares, internal_lhs(&c).coeffs()))
}

/// `Σ ((p²-2p) H + p K) = (p²-p)(p+1)·1 + (p²-2p) P_i + (p²-p) ⟨x^p, y^p⟩`, as printed.
pub fn check_internal_printed(p: u32, twisted: bool, i: u32) -> Result<IdentityCheck> {
    let c = ctx(p, twisted, i)?;
    let rhs = GroupRingElem::identity(&c.g)
        .scale((c.p * c.p - c.p) * (c.p + 1))
        .add(&c.class.scale(c.p * c.p - 2 * c.p))
        .add(&c.socle.scale(c.p * c.p - c.p));
    Ok(IdentityCheck::compare("internal-printed", internal_lhs(&c).coeffs(), rhs.coeffs()))
}

/// The same identity with the socle term taken without the identity:
/// `(p²-p)(p+1)·1 + (p²-2p) P_i + (p²-p)(⟨x^p, y^p⟩ - 1)`.
pub fn check_internal_corrected(p: u32, twisted: bool, i: u32) -> Result<IdentityCheck> {
    let c = ctx(p, twisted, i)?;
    let one = GroupRingElem::identity(&c.g);
    let rhs = one
        .scale((c.p * c.p - c.p) * (c.p + 1))
        .add(&c.class.scale(c.p * c.p - 2 * c.p))
        .add(&c.socle.sub(&one).scale(c.p * c.p - c.p));
    Ok(IdentityCheck::compare("internal-corrected", internal_lhs(&c).coeffs(), rhs.coeffs()))
}

fn external_rhs(c: &Ctx) -> GroupRingElem {
    let k = c.p * c.p - c.p;
    GroupRingElem::whole(&c.g).scale(k).sub(&c.socle.scale(k))
}

/// `Σ_{j≠j'} T_j T_{j'} + Σ_j T_j (⟨x^{ip+j} y⟩ - ⟨x^{pj} y^p⟩) = (p²-p) G - (p²-p) ⟨x^p, y^p⟩`,
/// as printed, with `j, j'` ranging over `0..p`.
pub fn check_external_printed(p: u32, twisted: bool, i: u32) -> Result<IdentityCheck> {
    let c = ctx(p, twisted, i)?;
    let (pu, iu) = (p as u64, i as u64);
    let n = pu * pu;
    let mut lhs = GroupRingElem::zero(&c.g);
    for a in 0..p as usize {
        for b in 0..p as usize {
            if a != b {
                lhs = lhs.add(&c.parts[a].elem().mul(&c.parts[b].elem()));
            }
        }
    }
    for j in 0..pu {
        let second =
            Constituent { big: gen_subgroup(&c.g, n, iu * pu + j, 1), small: gen_subgroup(&c.g, n, pu * j, pu) };
        lhs = lhs.add(&c.parts[j as usize].elem().mul(&second.elem()));
    }
    Ok(IdentityCheck::compare("external-printed", lhs.coeffs(), external_rhs(&c).coeffs()))
}

/// `Σ_{a≠b} T_a T_b` over all `p + 1` constituents, computed by census, against
/// `(p²-p) G - (p²-p) ⟨x^p, y^p⟩`.
pub fn check_external_constituents(p: u32, twisted: bool, i: u32) -> Result<IdentityCheck> {
    let c = ctx(p, twisted, i)?;
    let mut lhs = vec![0i64; c.g.order() as usize];
    for (a, ta) in c.parts.iter().enumerate() {
        for (b, tb) in c.parts.iter().enumerate() {
            if a != b {
                for (s, v) in lhs.iter_mut().zip(ta.product_by_census(tb)?) {
                    *s += v;
                }
            }
        }
    }
    Ok(IdentityCheck::compare("external-constituents", &lhs, external_rhs(&c).coeffs()))
}
