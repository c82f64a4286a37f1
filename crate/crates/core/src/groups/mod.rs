//! Finite groups with a canonical index bijection `[0, v) ↔ G`, identity at index 0.
//!
//! Backends: abelian products of cyclic groups, the twisted semidirect
//! products `Z_{p^t} ⋊_s Z_{p^t}`, regular affine groups and direct products.

mod affine;
mod set;

pub use affine::{AffineLaw, MAX_AFFINE_DIM};
pub use set::ElementSet;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime;

/// Groups up to this order cache a full multiplication table.
pub const TABLE_LIMIT: u64 = 1024;
/// Bound for exhaustive probes (center, exponent).
pub const PROBE_LIMIT: u64 = 1_000_000;
/// Inverses are cached up to this order.
const INV_TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug)]
pub enum Backend {
    Abelian { orders: Vec<u32> },
    Semidirect { p: u32, t: u32, n: u32, s: u32, s_pow: Vec<u32>, s_inv_pow: Vec<u32> },
    Affine(Arc<AffineLaw>),
    Product(GroupHandle, GroupHandle),
}

struct GroupInner {
    order: u64,
    backend: Backend,
    descriptor: String,
    fingerprint: u64,
    table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// Shared, immutable group. Cloning is cheap.
#[derive(Clone)]
pub struct GroupHandle(Arc<GroupInner>);

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHandle({})", self.0.descriptor)
    }
}

impl PartialEq for GroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.0.fingerprint == other.0.fingerprint && self.0.descriptor == other.0.descriptor
    }
}

impl Eq for GroupHandle {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementId {
    idx: u32,
    group: u64,
}

impl ElementId {
    pub fn index(self) -> u32 {
        self.idx
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupOpKind {
    Mul,
    Inv,
    Identity,
}

fn fingerprint_of(descriptor: &str) -> u64 {
    let mut h = DefaultHasher::new();
    descriptor.hash(&mut h);
    h.finish()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Direct product of cyclic groups; the first factor varies fastest in the index.
pub fn abelian_group(orders: &[u64]) -> Result<GroupHandle> {
    if orders.is_empty() {
        return Err(Error::BadParameters("abelian group needs at least one factor".into()));
    }
    if let Some(&o) = orders.iter().find(|&&o| o < 2) {
        return Err(Error::OrderTooSmall(o));
    }
    let order = orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o));
    let order = match order {
        Some(v) if v <= u32::MAX as u64 => v,
        _ => {
            return Err(Error::TooLarge { order: u64::MAX, limit: u32::MAX as u64 });
        }
    };
    let descriptor = format!("abelian:{}", orders.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
    let backend = Backend::Abelian { orders: orders.iter().map(|&o| o as u32).collect() };
    Ok(GroupHandle::build(order, backend, descriptor))
}

/// `Z_{p^t} ⋊_s Z_{p^t}` with `s = (p-1)p^{t-1} + 1`; `(a, b)` stands for `x^a y^b`.
pub fn semidirect_group(p: u32, t: u32) -> Result<GroupHandle> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::NotOddPrime(p as u64));
    }
    if t < 2 {
        return Err(Error::TTooSmall(t));
    }
    let n64 = (p as u64).checked_pow(t).filter(|&n| n * n <= u32::MAX as u64);
    let n = n64.ok_or(Error::TooLarge { order: u64::MAX, limit: u32::MAX as u64 })? as u32;
    let s = (p - 1) * (n / p) + 1;
    let mut s_pow = Vec::with_capacity(n as usize);
    let mut acc = 1u64;
    for _ in 0..n {
        s_pow.push(acc as u32);
        acc = acc * s as u64 % n as u64;
    }
    // s has order p, which divides n, so s^{-b} = s^{n-b}.
    let s_inv_pow = (0..n).map(|b| s_pow[((n - b) % n) as usize]).collect();
    let descriptor = format!("semidirect:{p}:{t}");
    let backend = Backend::Semidirect { p, t, n, s, s_pow, s_inv_pow };
    Ok(GroupHandle::build(n as u64 * n as u64, backend, descriptor))
}

/// Componentwise product; index `idx_G + |G| * idx_H`.
pub fn direct_product(g: &GroupHandle, h: &GroupHandle) -> Result<GroupHandle> {
    let order = g.order().checked_mul(h.order()).filter(|&v| v <= u32::MAX as u64);
    let order = order.ok_or(Error::TooLarge { order: g.order().saturating_mul(h.order()), limit: u32::MAX as u64 })?;
    let descriptor = format!("product:({})x({})", g.descriptor(), h.descriptor());
    Ok(GroupHandle::build(order, Backend::Product(g.clone(), h.clone()), descriptor))
}

/// Group acting regularly through an [`AffineLaw`]. `descriptor` must identify the law.
pub fn affine_group(law: AffineLaw, descriptor: String) -> GroupHandle {
    let order = law.order();
    assert!(order <= u32::MAX as u64);
    GroupHandle::build(order, Backend::Affine(Arc::new(law)), descriptor)
}

impl GroupHandle {
    fn build(order: u64, backend: Backend, descriptor: String) -> Self {
        let fingerprint = fingerprint_of(&descriptor);
        let mut inner = GroupInner { order, backend, descriptor, fingerprint, table: None, inv_table: None };
        if order <= TABLE_LIMIT {
            let v = order as u32;
            let mut table = Vec::with_capacity((v * v) as usize);
            for a in 0..v {
                for b in 0..v {
                    table.push(inner.law_mul(a, b));
                }
            }
            inner.table = Some(table);
        }
        if order <= INV_TABLE_LIMIT {
            inner.inv_table = Some((0..order as u32).map(|a| inner.law_inv(a)).collect());
        }
        GroupHandle(Arc::new(inner))
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn descriptor(&self) -> &str {
        &self.0.descriptor
    }

    pub fn fingerprint(&self) -> u64 {
        self.0.fingerprint
    }

    pub fn backend(&self) -> &Backend {
        &self.0.backend
    }

    /// Factors of a direct product, if this is one.
    pub fn factors(&self) -> Option<(&GroupHandle, &GroupHandle)> {
        match &self.0.backend {
            Backend::Product(g, h) => Some((g, h)),
            _ => None,
        }
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        match &self.0.table {
            Some(t) => t[a as usize * self.0.order as usize + b as usize],
            None => self.0.law_mul(a, b),
        }
    }

    #[inline]
    pub fn inv_idx(&self, a: u32) -> u32 {
        match &self.0.inv_table {
            Some(t) => t[a as usize],
            None => self.0.law_inv(a),
        }
    }

    pub fn identity(&self) -> ElementId {
        ElementId { idx: 0, group: self.0.fingerprint }
    }

    pub fn element(&self, idx: u64) -> Result<ElementId> {
        if idx >= self.0.order {
            return Err(Error::IndexOutOfRange { idx, order: self.0.order });
        }
        Ok(ElementId { idx: idx as u32, group: self.0.fingerprint })
    }

    pub(crate) fn id_unchecked(&self, idx: u32) -> ElementId {
        ElementId { idx, group: self.0.fingerprint }
    }

    pub fn check(&self, a: ElementId) -> Result<()> {
        if a.group != self.0.fingerprint {
            return Err(Error::HandleMismatch {
                expected: self.0.descriptor.clone(),
                found: format!("group with fingerprint {:016x}", a.group),
            });
        }
        Ok(())
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.id_unchecked(self.mul_idx(a.idx, b.idx)))
    }

    pub fn inv(&self, a: ElementId) -> Result<ElementId> {
        self.check(a)?;
        Ok(self.id_unchecked(self.inv_idx(a.idx)))
    }

    /// Uniform entry point; `b` is ignored for `Inv` and both operands for `Identity`.
    pub fn op(&self, kind: GroupOpKind, a: ElementId, b: ElementId) -> Result<ElementId> {
        match kind {
            GroupOpKind::Mul => self.mul(a, b),
            GroupOpKind::Inv => self.inv(a),
            GroupOpKind::Identity => {
                self.check(a)?;
                self.check(b)?;
                Ok(self.identity())
            }
        }
    }

    /// Backend coordinates of an element: residues for abelian groups, `(a, b)` for
    /// semidirect groups, the translation vector for affine groups, and the
    /// concatenated factor coordinates for products.
    pub fn coords(&self, idx: u32) -> Vec<u64> {
        match &self.0.backend {
            Backend::Abelian { orders } => {
                let mut rest = idx;
                orders
                    .iter()
                    .map(|&o| {
                        let c = rest % o;
                        rest /= o;
                        c as u64
                    })
                    .collect()
            }
            Backend::Semidirect { n, .. } => vec![(idx % n) as u64, (idx / n) as u64],
            Backend::Affine(law) => law.decode(idx).into_iter().map(u64::from).collect(),
            Backend::Product(g, h) => {
                let gv = g.order() as u32;
                let mut c = g.coords(idx % gv);
                c.extend(h.coords(idx / gv));
                c
            }
        }
    }

    /// Semidirect element `x^a y^b`. Panics for other backends.
    pub fn semidirect_elem(&self, a: u64, b: u64) -> u32 {
        match &self.0.backend {
            Backend::Semidirect { n, .. } => {
                let n = *n as u64;
                (a % n + n * (b % n)) as u32
            }
            _ => panic!("not a semidirect group"),
        }
    }

    pub fn pair_idx(&self, g: u32, h: u32) -> u32 {
        match &self.0.backend {
            Backend::Product(left, _) => g + left.order() as u32 * h,
            _ => panic!("not a direct product"),
        }
    }

    pub fn element_order(&self, idx: u32) -> u64 {
        let mut k = 1;
        let mut x = idx;
        while x != 0 {
            x = self.mul_idx(x, idx);
            k += 1;
        }
        k
    }

    pub fn cyclic_subgroup(&self, g: ElementId) -> Result<ElementSet> {
        self.check(g)?;
        Ok(self.cyclic_subgroup_idx(g.idx))
    }

    pub fn cyclic_subgroup_idx(&self, g: u32) -> ElementSet {
        let mut set = ElementSet::empty(self);
        let mut x = 0;
        loop {
            set.insert_idx(x);
            x = self.mul_idx(x, g);
            if x == 0 {
                break;
            }
        }
        set
    }

    /// A generating set: structural for abelian, semidirect and product backends,
    /// greedy (index order) otherwise.
    pub fn generators(&self) -> Vec<u32> {
        match &self.0.backend {
            Backend::Abelian { orders } => {
                let mut stride = 1;
                orders
                    .iter()
                    .map(|&o| {
                        let g = stride;
                        stride *= o;
                        g
                    })
                    .collect()
            }
            Backend::Semidirect { n, .. } => vec![1, *n],
            Backend::Product(g, h) => {
                let gv = g.order() as u32;
                let mut gens = g.generators();
                gens.extend(h.generators().into_iter().map(|x| x * gv));
                gens
            }
            Backend::Affine(_) => self.greedy_generators(),
        }
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let v = self.0.order as u32;
        let mut gens = Vec::new();
        let mut inside = ElementSet::empty(self);
        inside.insert_idx(0);
        let mut members = vec![0u32];
        for g in 1..v {
            if inside.contains_idx(g) {
                continue;
            }
            gens.push(g);
            // Re-close under right multiplication by every generator.
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &s in &gens {
                    let y = self.mul_idx(x, s);
                    if !inside.contains_idx(y) {
                        inside.insert_idx(y);
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
            if members.len() as u32 == v {
                break;
            }
        }
        gens
    }

    fn probe_guard(&self) -> Result<()> {
        if self.0.order > PROBE_LIMIT {
            return Err(Error::TooLarge { order: self.0.order, limit: PROBE_LIMIT });
        }
        Ok(())
    }

    pub fn center(&self) -> Result<ElementSet> {
        self.probe_guard()?;
        let gens = self.generators();
        let mut z = ElementSet::empty(self);
        for x in 0..self.0.order as u32 {
            if gens.iter().all(|&g| self.mul_idx(x, g) == self.mul_idx(g, x)) {
                z.insert_idx(x);
            }
        }
        Ok(z)
    }

    pub fn exponent(&self) -> Result<u64> {
        self.probe_guard()?;
        let mut e = 1;
        for x in 1..self.0.order as u32 {
            e = lcm(e, self.element_order(x));
        }
        Ok(e)
    }

    pub fn is_abelian(&self) -> bool {
        if let Backend::Abelian { .. } = self.0.backend {
            return true;
        }
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    pub fn all(&self) -> ElementSet {
        let mut s = ElementSet::empty(self);
        s.fill();
        s
    }
}

impl GroupInner {
    fn law_mul(&self, a: u32, b: u32) -> u32 {
        match &self.backend {
            Backend::Abelian { orders } => {
                let (mut ra, mut rb) = (a, b);
                let mut out = 0;
                let mut stride = 1;
                for &o in orders {
                    let c = (ra % o + rb % o) % o;
                    out += c * stride;
                    stride *= o;
                    ra /= o;
                    rb /= o;
                }
                out
            }
            Backend::Semidirect { n, s_pow, .. } => {
                let n64 = *n as u64;
                let (a0, b0) = (a % n, a / n);
                let (c0, d0) = (b % n, b / n);
                let x = (a0 as u64 + c0 as u64 * s_pow[b0 as usize] as u64) % n64;
                let y = (b0 + d0) % n;
                x as u32 + n * y
            }
            Backend::Affine(law) => law.mul(a, b),
            Backend::Product(g, h) => {
                let gv = g.order() as u32;
                let left = g.mul_idx(a % gv, b % gv);
                let right = h.mul_idx(a / gv, b / gv);
                left + gv * right
            }
        }
    }

    fn law_inv(&self, a: u32) -> u32 {
        match &self.backend {
            Backend::Abelian { orders } => {
                let mut ra = a;
                let mut out = 0;
                let mut stride = 1;
                for &o in orders {
                    let c = (o - ra % o) % o;
                    out += c * stride;
                    stride *= o;
                    ra /= o;
                }
                out
            }
            Backend::Semidirect { n, s_inv_pow, .. } => {
                let n64 = *n as u64;
                let (a0, b0) = (a % n, a / n);
                let x = (n64 - a0 as u64 * s_inv_pow[b0 as usize] as u64 % n64) % n64;
                let y = (n - b0) % n;
                x as u32 + n * y
            }
            Backend::Affine(law) => law.inv(a),
            Backend::Product(g, h) => {
                let gv = g.order() as u32;
                g.inv_idx(a % gv) + gv * h.inv_idx(a / gv)
            }
        }
    }
}
