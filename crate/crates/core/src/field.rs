//! Exact arithmetic in GF(p^e), p an odd prime.
//!
//! Elements are addressed by their canonical index `Σ c_i p^i`, where the
//! element is `Σ c_i α^i` and `α` is a root of the context's modulus. Index 0
//! is zero and index 1 is one. Negation, inversion, discrete-log and
//! square-class tables are built once per context, so every operation on
//! indices is a table lookup or a short digit loop.
//!
//! Two layers are exposed: the `u32` index methods (`add`, `mul`, ...) used by
//! the hot loops elsewhere in the crate, and the checked [`FieldElem`] layer
//! (`elem`, `arith`) which tags every element with its context.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Inv,
}

/// Second operand of [`FieldCtx::arith`]: an element, an integer exponent,
/// or nothing for the unary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Elem(FieldElem),
    Int(i64),
    None,
}

/// A field element tagged with the fingerprint of its owning context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    idx: u32,
    field: u64,
}

impl FieldElem {
    pub fn index(self) -> u32 {
        self.idx
    }
}

#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    class: Vec<SquareClass>,
    fingerprint: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over GF(p), coefficient lists with the constant term first.

fn poly_trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    // g is monic
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let t = (lead as u64 * gi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = n;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn fingerprint(p: u32, e: u32, modulus: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    ("field", p, e, modulus).hash(&mut h);
    h.finish()
}

impl FieldCtx {
    /// Builds GF(p^e). When `modulus` is `None` the smallest monic irreducible
    /// of degree `e` is used, comparing coefficient tuples `(c_{e-1}, ..., c_0)`
    /// lexicographically.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::DegreeMismatch { expected: 0, got: modulus.map(|m| m.to_vec()).unwrap_or_default() });
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge(u64::MAX))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::DegreeMismatch { expected: e, got: m.to_vec() });
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => Self::default_modulus(p, e),
        };
        let mut ctx = FieldCtx {
            p,
            e,
            q: q as u32,
            fingerprint: fingerprint(p, e, &modulus),
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            class: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    /// GF(q) for a prime power `q` with the default modulus.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::BadParameters(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    fn default_modulus(p: u32, e: u32) -> Vec<u32> {
        let count = (p as u64).pow(e);
        for n in 0..count {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut rest = n;
            for _ in 0..e {
                f.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Multiplication by polynomial reduction, used only while building tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        self.pack_digits(&r)
    }

    fn pow_slow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let gen = (2..self.q)
            .chain(std::iter::once(1))
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![0u32; q];
        let mut x = 1;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.mul_slow(x, gen);
        }
        debug_assert_eq!(x, 1);
        let neg = (0..self.q)
            .map(|a| {
                let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
                self.pack_digits(&d)
            })
            .collect();
        let inv =
            (0..self.q).map(|a| if a == 0 { 0 } else { exp[(q - 1 - log[a as usize] as usize) % (q - 1)] }).collect();
        let class = (0..q)
            .map(|a| match a {
                0 => SquareClass::Zero,
                _ if log[a].is_multiple_of(2) => SquareClass::Square,
                _ => SquareClass::NonSquare,
            })
            .collect();
        self.exp = exp;
        self.log = log;
        self.neg = neg;
        self.inv = inv;
        self.class = class;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Short label, e.g. `GF(9)[x^2+x+2]` style coefficient list for `e > 1`.
    pub fn label(&self) -> String {
        if self.e == 1 {
            format!("GF({})", self.q)
        } else {
            let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("GF({})[{}]", self.q, m.join(","))
        }
    }

    // Index-level arithmetic.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.e {
                let s = (a % self.p + b % self.p) % self.p;
                out += s * place;
                place *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[s % (self.q as usize - 1)]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^n`; negative exponents need a nonzero base. `0^0 = 1`.
    pub fn pow(&self, a: u32, n: i64) -> Option<u32> {
        if a == 0 {
            return match n.cmp(&0) {
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Greater => Some(0),
                std::cmp::Ordering::Less => None,
            };
        }
        let order = self.q as i64 - 1;
        let k = (self.log[a as usize] as i64 * n.rem_euclid(order)).rem_euclid(order);
        Some(self.exp[k as usize])
    }

    /// The integer `n` as a field element (reduced mod p).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn square_class_of(&self, a: u32) -> SquareClass {
        self.class[a as usize]
    }

    pub fn nonsquare_witness_index(&self) -> u32 {
        (1..self.q)
            .find(|&b| self.class[self.neg(b) as usize] == SquareClass::NonSquare)
            .expect("odd fields have nonsquares")
    }

    // Checked element layer.

    pub fn elem(&self, idx: u32) -> Result<FieldElem> {
        if idx >= self.q {
            return Err(Error::ContextMismatch);
        }
        Ok(FieldElem { idx, field: self.fingerprint })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { idx: 0, field: self.fingerprint }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { idx: 1, field: self.fingerprint }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(|idx| FieldElem { idx, field: self.fingerprint })
    }

    fn own(&self, a: FieldElem) -> Result<u32> {
        if a.field != self.fingerprint || a.idx >= self.q {
            return Err(Error::ContextMismatch);
        }
        Ok(a.idx)
    }

    pub fn arith(&self, op: ArithOp, a: FieldElem, b: Operand) -> Result<FieldElem> {
        let a = self.own(a)?;
        let elem_b = |b: Operand| match b {
            Operand::Elem(e) => self.own(e),
            _ => Err(Error::ContextMismatch),
        };
        let idx = match op {
            ArithOp::Add => self.add(a, elem_b(b)?),
            ArithOp::Sub => self.sub(a, elem_b(b)?),
            ArithOp::Mul => self.mul(a, elem_b(b)?),
            ArithOp::Div => self.div(a, elem_b(b)?).ok_or(Error::DivisionByZero)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a).ok_or(Error::DivisionByZero)?,
            ArithOp::Pow => match b {
                Operand::Int(n) => self.pow(a, n).ok_or(Error::DivisionByZero)?,
                _ => return Err(Error::ContextMismatch),
            },
        };
        Ok(FieldElem { idx, field: self.fingerprint })
    }

    pub fn square_class(&self, a: FieldElem) -> Result<SquareClass> {
        Ok(self.class[self.own(a)? as usize])
    }

    /// Least-index `b` with `-b` a nonsquare.
    pub fn nonsquare_witness(&self) -> FieldElem {
        FieldElem { idx: self.nonsquare_witness_index(), field: self.fingerprint }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_by_enumeration(ctx: &FieldCtx) -> Vec<u32> {
        let mut s: Vec<u32> = (1..ctx.order()).map(|x| ctx.mul_slow(x, x)).collect();
        s.sort();
        s.dedup();
        s
    }

    #[test]
    fn prime_fields() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.add(2, 2), 1);
        let f7 = FieldCtx::new(7, 1, None).unwrap();
        assert_eq!(f7.pow(3, 6), Some(1));
    }

    #[test]
    fn gf5_squares() {
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(squares_by_enumeration(&f5), vec![1, 4]);
        assert_eq!(f5.square_class_of(4), SquareClass::Square);
        assert_eq!(f5.square_class_of(2), SquareClass::NonSquare);
        assert_eq!(f5.square_class_of(0), SquareClass::Zero);
    }

    #[test]
    fn gf9_cyclic_and_square_count() {
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        // the generator found at construction has full order 8
        let orders: Vec<usize> =
            (1..9u32).map(|a| (1..=8).find(|&k| f9.pow(a, k).unwrap() == 1).unwrap() as usize).collect();
        assert!(orders.contains(&8));
        assert_eq!(squares_by_enumeration(&f9).len(), 4);
        let n_sq = (0..9).filter(|&a| f9.square_class_of(a) == SquareClass::Square).count();
        assert_eq!(n_sq, 4);
        for a in 1..9 {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn default_modulus_is_smallest() {
        // x^2 + 1 is irreducible over GF(3) and has the smallest (c1, c0) = (0, 1)
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // over GF(5), x^2 + 2 is the first irreducible (x^2, x^2+1 = (x-2)(x+2) are not)
        let f25 = FieldCtx::new(5, 2, None).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        // e = 1: x itself
        assert_eq!(FieldCtx::new(7, 1, None).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(FieldCtx::new(2, 1, None).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldCtx::new(9, 1, None).unwrap_err(), Error::NotOddPrime(9));
        assert!(matches!(FieldCtx::new(3, 2, Some(&[1, 1])), Err(Error::DegreeMismatch { .. })));
        // x^2 + 2 = (x-1)(x+1) over GF(3)
        assert_eq!(FieldCtx::new(3, 2, Some(&[2, 0, 1])).unwrap_err(), Error::ReducibleModulus(vec![2, 0, 1]));
        // quartic without roots but reducible: (x^2+1)^2 = x^4 + 2x^2 + 1 over GF(3)
        assert!(matches!(FieldCtx::new(3, 4, Some(&[1, 0, 2, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(FieldCtx::new(3, 2, Some(&[2, 1, 1])).is_ok());
    }

    #[test]
    fn nonsquare_witnesses() {
        assert_eq!(FieldCtx::new(3, 1, None).unwrap().nonsquare_witness().index(), 1);
        assert_eq!(FieldCtx::new(7, 1, None).unwrap().nonsquare_witness().index(), 1);
        assert_eq!(FieldCtx::new(5, 1, None).unwrap().nonsquare_witness().index(), 2);
    }

    #[test]
    fn checked_layer() {
        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let a = f9.elem(5).unwrap();
        let ainv = f9.arith(ArithOp::Inv, a, Operand::None).unwrap();
        assert_eq!(f9.arith(ArithOp::Mul, a, Operand::Elem(ainv)).unwrap(), f9.one());
        assert_eq!(f9.arith(ArithOp::Div, a, Operand::Elem(f9.zero())).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f3.arith(ArithOp::Add, a, Operand::Elem(f3.one())).unwrap_err(), Error::ContextMismatch);
        assert_eq!(f9.elem(9).unwrap_err(), Error::ContextMismatch);
        let p8 = f9.arith(ArithOp::Pow, a, Operand::Int(8)).unwrap();
        assert_eq!(p8, f9.one());
        let pm1 = f9.arith(ArithOp::Pow, a, Operand::Int(-1)).unwrap();
        assert_eq!(pm1, ainv);
    }

    #[test]
    fn square_class_rules_exhaustive() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2), (3, 4)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            let q = f.order();
            let squares = squares_by_enumeration(&f);
            assert_eq!(squares.len() as u32, (q - 1) / 2);
            for a in 1..q {
                let ca = f.square_class_of(a);
                assert_eq!(ca == SquareClass::Square, squares.binary_search(&a).is_ok());
                assert_eq!(f.square_class_of(f.mul(a, a)), SquareClass::Square);
                for b in 1..q {
                    let cb = f.square_class_of(b);
                    let expected = if ca == cb { SquareClass::Square } else { SquareClass::NonSquare };
                    assert_eq!(f.square_class_of(f.mul(a, b)), expected);
                }
            }
        }
    }

    #[test]
    fn tables_match_polynomial_arithmetic() {
        for (p, e) in [(3, 2), (5, 2), (3, 3), (3, 4)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(83), Some((83, 1)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(6563));
    }
}
