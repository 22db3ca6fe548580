//! Finite fields GF(q), q = p^k, with elements encoded as integers in `0..q`.
//!
//! An element with index `i` is the polynomial `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`
//! whose coefficients are the base-`p` digits of `i` (least significant first).
//! Index 0 is zero and index 1 is one. The modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `k`, so every coordinate
//! computed on top of a field is reproducible.
//!
//! Multiplication goes through discrete log tables built from a primitive
//! element; addition uses a full table for q <= 256 and digit arithmetic above.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// Identity of a field: fields with equal `(p, k)` have identical arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    pub p: u32,
    pub k: u32,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

/// An element of a specific field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldId,
    index: u32,
}

impl FieldElement {
    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

/// A finite field. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    id: FieldId,
    q: u32,
    /// Coefficients `c_0..=c_k` of the monic modulus.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("id", &self.inner.id)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^k).
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::domain(format!("characteristic {p} is not prime")));
        }
        if k < 1 {
            return Err(Error::domain("extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::domain(format!("{p}^{k} exceeds the field order cap {MAX_ORDER}")))?
            as u32;

        let modulus = smallest_irreducible(p, k);
        let poly = PolyCtx { p, k, modulus: &modulus };

        let generator = (1..q)
            .find(|&g| poly.is_primitive(g, q))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut e = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = e;
            log[e as usize] = i as u32;
            e = poly.mul(e, generator);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }

        let neg: Vec<u32> = (0..q).map(|a| poly.neg(a)).collect();
        let inv: Vec<u32> = (0..q)
            .map(|a| if a == 0 { 0 } else { exp[((q - 1) - log[a as usize]) as usize % (q - 1) as usize] })
            .collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = poly.add(a, b) as u16;
                }
            }
            t
        });

        Ok(Field {
            inner: Arc::new(Tables { id: FieldId { p, k }, q, modulus, exp, log, neg, inv, add }),
        })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        Field::new(p, k)
    }

    pub fn id(&self) -> FieldId {
        self.inner.id
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.id.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.id.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients `c_0..=c_k` of the modulus polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.inner.q {
            return Err(Error::domain(format!("index {index} out of range for {}", self.inner.id)));
        }
        Ok(FieldElement { field: self.inner.id, index })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |index| FieldElement { field: self.inner.id, index })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.inner.id, index: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.inner.id, index: 1 }
    }

    fn check(&self, a: FieldElement) -> Result<u32> {
        if a.field != self.inner.id {
            return Err(Error::FieldMismatch { left: self.inner.id, right: a.field });
        }
        Ok(a.index)
    }

    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement { field: self.inner.id, index }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_raw(self.check(a)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(a)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_raw(self.check(a)?, e)))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[a as usize];
        Ok(n / gcd(n as u64, l as u64) as u32)
    }

    // Index-level arithmetic used by the geometry layers. Arguments must be
    // valid indices of this field.

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let t = &self.inner;
        match &t.add {
            Some(table) => table[(a * t.q + b) as usize] as u32,
            None if t.id.k == 1 => (a + b) % t.q,
            None => PolyCtx { p: t.id.p, k: t.id.k, modulus: &t.modulus }.add(a, b),
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero index; returns 0 for 0.
    #[inline]
    pub fn inv_raw(&self, a: u32) -> u32 {
        self.inner.inv[a as usize]
    }

    pub fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.inner.q - 1) as u64;
        let l = (self.inner.log[a as usize] as u64 * (e % n)) % n;
        self.inner.exp[l as usize]
    }

    /// Whether the element is a nonzero square.
    pub fn is_square_raw(&self, a: u32) -> bool {
        a != 0 && (self.inner.id.p == 2 || self.inner.log[a as usize] % 2 == 0)
    }
}

/// Polynomial arithmetic over GF(p) on packed digit encodings.
struct PolyCtx<'a> {
    p: u32,
    k: u32,
    modulus: &'a [u32],
}

impl PolyCtx<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let k = self.k as usize;
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^k = -(c_0 + ... + c_{k-1} x^{k-1})
            for i in 0..k {
                let sub = c * self.modulus[i] as u64 % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&d)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_primitive(&self, g: u32, q: u32) -> bool {
        let n = (q - 1) as u64;
        if n == 1 {
            return g == 1;
        }
        prime_factors(n).into_iter().all(|l| self.pow(g, n / l) != 1)
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `k` over GF(p),
/// ordered by the packed integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for packed in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut rest = packed;
        for _ in 0..k {
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

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for packed in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = packed;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for i in 0..=dg {
            let sub = c * g[i] as u64 % p;
            r[deg - dg + i] = (r[deg - dg + i] + p - sub) % p;
        }
    }
    r.iter().all(|&c| c == 0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Decomposes `q = p^k`; `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        // Brute force: monic x^2 + b x + c is irreducible iff it has no root in GF(3).
        let mut first = None;
        'outer: for packed in 0..9u32 {
            let (c, b) = (packed % 3, packed / 3);
            for x in 0..3 {
                if (x * x + b * x + c) % 3 == 0 {
                    continue 'outer;
                }
            }
            first = Some(vec![c, b, 1]);
            break;
        }
        assert_eq!(first.as_deref(), Some(&[1, 0, 1][..]));
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(Field::new(4, 1), Err(Error::Domain(_))));
        assert!(matches!(Field::new(3, 0), Err(Error::Domain(_))));
        assert!(matches!(Field::new(2, 17), Err(Error::Domain(_))));
        assert!(Field::new(2, 16).is_ok());
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.add(two, two).unwrap().index(), 1);

        // GF(4) modulus x^2+x+1; x has index 2, x+1 has index 3.
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x = f4.element(2).unwrap();
        assert_eq!(f4.mul(x, x).unwrap().index(), 3);

        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.inv(f5.element(2).unwrap()).unwrap().index(), 3);
    }

    #[test]
    fn inverse_of_zero_and_mixed_fields_fail() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        assert!(matches!(f5.inv(f5.zero()), Err(Error::DivisionByZero)));
        assert!(matches!(f5.add(f5.one(), f7.one()), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::new(2, 10).unwrap();
        for a in [1u32, 5, 777, 1023] {
            assert_eq!(f.mul_raw(a, f.inv_raw(a)), 1);
            assert_eq!(f.add_raw(a, a), 0);
        }
        let g = Field::new(257, 1).unwrap();
        assert_eq!(g.add_raw(200, 100), 43);
        assert_eq!(g.mul_raw(g.inv_raw(3), 3), 1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(7), 7);
    }
}
