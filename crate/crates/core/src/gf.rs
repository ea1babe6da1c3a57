//! Arithmetic in finite fields `F_q`, `q = p^m`, `q <= 2^16`.
//!
//! Elements are stored as plain `u32` indices in `[0, q)`. For an extension
//! field the index is the coefficient vector of the polynomial-basis
//! representative read as a base-`p` integer, lowest degree first, so the
//! prime subfield `F_p` occupies the indices `0..p`. Multiplication goes
//! through exp/log tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw field element: canonical index in `[0, q)`.
pub type Elem = u32;

pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, low-degree first, length `m + 1`. Empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to an immutable [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut m) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

// Polynomials over F_p, coefficient vectors low-degree first.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &bi) in b.iter().enumerate() {
            let sub = factor * bi as u64 % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Exhaustive trial division by every monic polynomial of degree `1..=m/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for k in 1..=m / 2 {
        let count = (p as u64).pow(k as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, k as u32);
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    if m == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let (da, db) = (digits(a, p, m), digits(b, p, m));
    let mut prod = vec![0u32; 2 * m as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(m as usize, 0);
    undigits(&r, p)
}

impl Field {
    /// Builds `F_{p^m}`. With `m > 1` and no modulus, the first monic
    /// irreducible of degree `m` in counting order of its lower coefficients
    /// (constant term least significant) is used.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(m)))?;
        let p = p as u32;
        let modulus = if m == 1 {
            if let Some(md) = modulus {
                if md.len() != 2 || md[1] != 1 || md[0] >= p {
                    return Err(Error::ReducibleModulus(m));
                }
            }
            Vec::new()
        } else if let Some(md) = modulus {
            if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p) {
                return Err(Error::ReducibleModulus(m));
            }
            if !is_irreducible(md, p) {
                return Err(Error::ReducibleModulus(m));
            }
            md.to_vec()
        } else {
            (0..(q as u32))
                .map(|low| {
                    let mut f = digits(low, p, m);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let q = q as u32;
        let (exp, log) = build_tables(p, m, q, &modulus);
        Ok(Field(Arc::new(FieldSpec {
            p,
            m,
            q,
            modulus,
            exp,
            log,
        })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field with `q` elements, default modulus when `q` is not prime.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p as u64, m, None)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = &self.0;
        if s.m == 1 {
            let t = a + b;
            if t >= s.p {
                t - s.p
            } else {
                t
            }
        } else if s.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            for _ in 0..s.m {
                out += ((a % s.p + b % s.p) % s.p) * place;
                a /= s.p;
                b /= s.p;
                place *= s.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let s = &self.0;
        if s.p == 2 {
            a
        } else if s.m == 1 {
            if a == 0 {
                0
            } else {
                s.p - a
            }
        } else {
            let (mut a, mut out, mut place) = (a, 0, 1);
            for _ in 0..s.m {
                out += ((s.p - a % s.p) % s.p) * place;
                a /= s.p;
                place *= s.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = &self.0;
        s.exp[(s.log[a as usize] + s.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let s = &self.0;
        let l = s.log[a as usize];
        Some(s.exp[((s.q - 1 - l) % (s.q - 1)) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let s = &self.0;
        let l = (s.log[a as usize] as u64 * (e % (s.q as u64 - 1))) % (s.q as u64 - 1);
        s.exp[l as usize]
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.0.q as u64
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::InvalidElement(value));
        }
        Ok(FieldElement {
            value: value as Elem,
            field: self.clone(),
        })
    }

    /// Decimal for prime fields, comma-separated coefficients (low degree
    /// first) for extension fields.
    pub fn format(&self, a: Elem) -> String {
        if self.0.m == 1 {
            a.to_string()
        } else {
            digits(a, self.0.p, self.0.m)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid field element `{text}`"));
        if self.0.m == 1 {
            let v: u64 = text.parse().map_err(|_| bad())?;
            if !self.contains(v) {
                return Err(Error::InvalidElement(v));
            }
            return Ok(v as Elem);
        }
        let ds = text
            .split(',')
            .map(|d| d.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if ds.len() > self.0.m as usize || ds.iter().any(|&d| d >= self.0.p) {
            return Err(bad());
        }
        Ok(undigits(&ds, self.0.p))
    }
}

/// Walks the powers of candidate generators until one has order `q - 1`.
fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let order = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![0u32; q as usize];
    for g in 1..q {
        let mut x = 1u32;
        let mut k = 0usize;
        loop {
            exp[k] = x;
            k += 1;
            x = slow_mul(x, g, p, m, modulus);
            if x == 1 || k > order {
                break;
            }
        }
        if k == order {
            break;
        }
    }
    for k in 0..order {
        exp[order + k] = exp[k];
        log[exp[k] as usize] = k as u32;
    }
    (exp, log)
}

/// A field element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: Elem,
    field: Field,
}

impl FieldElement {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with(&self, value: Elem) -> FieldElement {
        FieldElement {
            value,
            field: self.field.clone(),
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_fields() -> Vec<Field> {
        [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64]
            .iter()
            .map(|&q| Field::with_order(q).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.add(2, 2), 1);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.mul(1, 1), 1);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(3), Some(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), Error::ZeroExtensionDegree);
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(Field::new(2, 17, None), Err(Error::FieldTooLarge(_))));
        assert_eq!(Field::with_order(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn f4_multiplication_table() {
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4, Field::with_order(4).unwrap());
        // Oracle: multiply polynomials over F_2 by hand and reduce with x^2 = x + 1.
        let oracle = |a: u32, b: u32| -> u32 {
            let mut prod = 0u32;
            for i in 0..2 {
                if b >> i & 1 == 1 {
                    prod ^= a << i;
                }
            }
            if prod & 0b100 != 0 {
                prod ^= 0b111;
            }
            prod
        };
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f4.mul(a, b), oracle(a, b), "{a}*{b}");
            }
        }
        // multiplicative group has order 3: every nonzero a has a^3 = 1
        for a in 1..4 {
            assert_eq!(f4.pow(a, 3), 1);
        }
        assert!((1..4).any(|a| f4.pow(a, 1) != 1 && f4.mul(a, a) != 1));
    }

    #[test]
    fn default_moduli_are_deterministic() {
        let a = Field::new(2, 3, None).unwrap();
        let b = Field::new(2, 3, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in small_fields().into_iter().filter(|f| f.q() <= 9) {
            let q = f.q();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn fermat_and_inverses() {
        for f in small_fields() {
            for a in 1..f.q() {
                assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1);
                assert_eq!(f.inv(inv), Some(a));
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn element_wrappers_check_fields() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        let a = f3.element(2).unwrap();
        let b = f5.element(2).unwrap();
        assert_eq!(a.try_add(&b).unwrap_err(), Error::MixedFields);
        assert_eq!(a.try_add(&a).unwrap().value(), 1);
        assert_eq!(f3.element(0).unwrap().inv().unwrap_err(), Error::DivisionByZero);
        assert!(f3.element(3).is_err());
    }

    #[test]
    fn element_text_format() {
        let f9 = Field::with_order(9).unwrap();
        assert_eq!(f9.format(7), "1,2");
        assert_eq!(f9.parse("1,2").unwrap(), 7);
        assert_eq!(f9.parse("2").unwrap(), 2);
        assert!(f9.parse("3,0").is_err());
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.format(6), "6");
        assert!(f7.parse("7").is_err());
    }

    proptest! {
        #[test]
        fn axioms_random_triples(idx in 0usize..13, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let f = &small_fields()[idx];
            let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
            prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }
}
