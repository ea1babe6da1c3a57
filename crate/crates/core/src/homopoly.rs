//! Homogeneous forms in `X_0..X_n` over `F_q`.
//!
//! A degree-`d` form is a dense coefficient vector of length `C(n+d, n)`
//! indexed by the monomials of degree `d` in graded lexicographic order with
//! `X_0 > X_1 > ... > X_n`; for `n = 2, d = 2` that is
//! `X0^2, X0*X1, X0*X2, X1^2, X1*X2, X2^2`.
//!
//! Normalized forms (first nonzero coefficient equal to 1) are in bijection
//! with `[0, N(e))` through [`NormalizedPoly::rank`] and
//! [`NormalizedPoly::unrank`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldElement};
use crate::limits::Limits;
use crate::linalg;

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n+d, n)`, the dimension of the space of degree-`d` forms.
pub fn num_monomials(n: usize, d: usize) -> usize {
    binomial((n + d) as u64, n as u64)
        .and_then(|v| usize::try_from(v).ok())
        .expect("monomial count fits in usize")
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// Position in the graded-lex basis of its degree.
    pub fn index(&self) -> usize {
        monomial_index(&self.exponents)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{k}")?;
            } else {
                write!(f, "X{k}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `X_0..X_n`, graded-lex descending.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, vars_left: usize, deg: u32, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(deg);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=deg).rev() {
            prefix.push(a);
            fill(prefix, vars_left - 1, deg - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(num_monomials(n, d));
    fill(&mut Vec::with_capacity(n + 1), n + 1, d as u32, &mut out);
    out
}

/// Number of monomials of the same degree that precede `exps`.
fn monomial_index(exps: &[u32]) -> usize {
    let n = exps.len() - 1;
    let mut remaining: usize = exps.iter().map(|&e| e as usize).sum();
    let mut index = 0;
    for (i, &a) in exps[..n].iter().enumerate() {
        let vars_after = n - i;
        for v in (a as usize + 1)..=remaining {
            index += num_monomials(vars_after - 1, remaining - v);
        }
        remaining -= a as usize;
    }
    index
}

type TableKey = (usize, usize, usize);

/// Flat `len(a) x len(b)` table mapping basis index pairs to the index of
/// their product in degree `a + b`.
pub(crate) fn product_table(n: usize, a: usize, b: usize) -> Arc<Vec<u32>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<Vec<u32>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(n, a, b)) {
        return Arc::clone(t);
    }
    let (ba, bb) = (monomial_basis(n, a), monomial_basis(n, b));
    let mut table = Vec::with_capacity(ba.len() * bb.len());
    let mut buf = vec![0u32; n + 1];
    for x in &ba {
        for y in &bb {
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = x.exponents[k] + y.exponents[k];
            }
            table.push(monomial_index(&buf) as u32);
        }
    }
    let table = Arc::new(table);
    cache
        .lock()
        .unwrap()
        .insert((n, a, b), Arc::clone(&table));
    table
}

/// Multiplies raw coefficient vectors with a precomputed product table.
pub(crate) fn mul_raw(field: &Field, table: &[u32], a: &[Elem], b: &[Elem], out: &mut [Elem]) {
    out.fill(0);
    let lb = b.len();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let row = &table[i * lb..(i + 1) * lb];
        for (&y, &k) in b.iter().zip(row) {
            if y != 0 {
                let slot = &mut out[k as usize];
                *slot = field.add(*slot, field.mul(x, y));
            }
        }
    }
}

#[derive(Clone)]
pub struct HomogeneousPoly {
    field: Field,
    n: usize,
    degree: usize,
    coeffs: Vec<Elem>,
}

impl PartialEq for HomogeneousPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.degree == other.degree
            && self.coeffs == other.coeffs
            && self.field == other.field
    }
}

impl Eq for HomogeneousPoly {}

impl Hash for HomogeneousPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.n.hash(state);
        self.degree.hash(state);
        self.coeffs.hash(state);
    }
}

impl HomogeneousPoly {
    pub fn new(field: &Field, n: usize, degree: usize, coeffs: Vec<Elem>) -> Result<Self> {
        let expected = num_monomials(n, degree);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c as u64)) {
            return Err(Error::InvalidElement(bad as u64));
        }
        Ok(HomogeneousPoly {
            field: field.clone(),
            n,
            degree,
            coeffs,
        })
    }

    pub fn zero(field: &Field, n: usize, degree: usize) -> Self {
        HomogeneousPoly {
            field: field.clone(),
            n,
            degree,
            coeffs: vec![0; num_monomials(n, degree)],
        }
    }

    /// `coeff * X^exponents`; the number of variables is `exponents.len()`.
    pub fn monomial(field: &Field, exponents: &[u32], coeff: Elem) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Parse("a monomial needs at least one variable".into()));
        }
        let m = Monomial::new(exponents.to_vec());
        let mut p = Self::zero(field, exponents.len() - 1, m.degree());
        if !field.contains(coeff as u64) {
            return Err(Error::InvalidElement(coeff as u64));
        }
        p.coeffs[m.index()] = coeff;
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Index of the last variable (`n + 1` variables in total).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coefficient(&self, index: usize) -> FieldElement {
        self.field
            .element(self.coeffs[index] as u64)
            .expect("coefficients are valid elements")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: Elem) -> Self {
        HomogeneousPoly {
            coeffs: self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeTooSmall {
                small: self.degree.min(other.degree),
                large: self.degree.max(other.degree),
            });
        }
        Ok(HomogeneousPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| self.field.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let table = product_table(self.n, self.degree, other.degree);
        let mut out = Self::zero(&self.field, self.n, self.degree + other.degree);
        mul_raw(&self.field, &table, &self.coeffs, &other.coeffs, &mut out.coeffs);
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(&self.field, &vec![0; self.n + 1], 1).expect("constant 1");
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn normalize(&self) -> Result<NormalizedPoly> {
        let lead = *self
            .coeffs
            .iter()
            .find(|&&c| c != 0)
            .ok_or(Error::ZeroPolynomial)?;
        let inv = self.field.inv(lead).expect("nonzero");
        Ok(NormalizedPoly(if inv == 1 {
            self.clone()
        } else {
            self.scale(inv)
        }))
    }

    /// The unique `F` with `self * F = h`, if it exists.
    pub fn divides(&self, h: &Self) -> Result<Option<Self>> {
        divides(self, h)
    }

    pub fn parse(field: &Field, n: usize, text: &str) -> Result<Self> {
        parse_form(field, n, text)
    }
}

/// Solves the linear system `G * F = H` for `F` of degree `deg H - deg G`.
pub fn divides(g: &HomogeneousPoly, h: &HomogeneousPoly) -> Result<Option<HomogeneousPoly>> {
    g.compatible(h)?;
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.degree < g.degree {
        return Err(Error::DegreeTooSmall {
            small: h.degree,
            large: g.degree,
        });
    }
    let field = &g.field;
    let qdeg = h.degree - g.degree;
    let unknowns = num_monomials(g.n, qdeg);
    let table = product_table(g.n, g.degree, qdeg);
    // one equation per monomial of degree deg H, augmented with H's coefficient
    let mut rows = vec![vec![0 as Elem; unknowns + 1]; h.coeffs.len()];
    for (i, &gc) in g.coeffs.iter().enumerate() {
        if gc == 0 {
            continue;
        }
        for j in 0..unknowns {
            let k = table[i * unknowns + j] as usize;
            rows[k][j] = field.add(rows[k][j], gc);
        }
    }
    for (row, &hc) in rows.iter_mut().zip(&h.coeffs) {
        row[unknowns] = hc;
    }
    let pivots = linalg::rref(field, &mut rows, unknowns + 1);
    if pivots.last() == Some(&unknowns) {
        return Ok(None);
    }
    debug_assert_eq!(pivots.len(), unknowns, "multiplication by G is injective");
    let coeffs = rows.iter().map(|r| r[unknowns]).collect();
    Ok(Some(HomogeneousPoly {
        field: field.clone(),
        n: g.n,
        degree: qdeg,
        coeffs,
    }))
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &c) in monomial_basis(self.n, self.degree).iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let constant = m.degree() == 0;
            if c != 1 || constant {
                f.write_str(&self.field.format(c))?;
                if !constant {
                    f.write_str("*")?;
                }
            }
            if !constant {
                write!(f, "{m}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousPoly({self})")
    }
}

/// Parses `X0^2 + X0*X1 + 2*X2^2`. Terms may come in any order; repeated
/// monomials are summed. The degree is taken from the terms, which must agree.
pub fn parse_form(field: &Field, n: usize, text: &str) -> Result<HomogeneousPoly> {
    let err = |msg: String| Error::Parse(msg);
    let mut terms: Vec<(Vec<u32>, Elem)> = Vec::new();
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(err(format!("empty term in `{text}`")));
        }
        let mut exps = vec![0u32; n + 1];
        let mut coeff: Elem = 1;
        for (pos, factor) in term.split('*').map(str::trim).enumerate() {
            if let Some(var) = factor.strip_prefix('X') {
                let (idx, e) = match var.split_once('^') {
                    Some((i, e)) => (i, e.trim().parse::<u32>().map_err(|_| err(format!("bad exponent in `{factor}`")))?),
                    None => (var, 1),
                };
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad variable `{factor}`")))?;
                if idx > n {
                    return Err(err(format!("variable X{idx} outside X0..X{n}")));
                }
                exps[idx] += e;
            } else if pos == 0 {
                coeff = field.parse(factor)?;
            } else {
                return Err(err(format!("coefficient `{factor}` must lead its term")));
            }
        }
        terms.push((exps, coeff));
    }
    let degree = terms[0].0.iter().sum::<u32>() as usize;
    let mut poly = HomogeneousPoly::zero(field, n, degree);
    for (exps, c) in terms {
        if exps.iter().sum::<u32>() as usize != degree {
            return Err(err(format!("`{text}` is not homogeneous")));
        }
        let k = monomial_index(&exps);
        poly.coeffs[k] = field.add(poly.coeffs[k], c);
    }
    Ok(poly)
}

/// Nonzero form whose first nonzero coefficient (in monomial order) is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalizedPoly(HomogeneousPoly);

impl NormalizedPoly {
    pub fn poly(&self) -> &HomogeneousPoly {
        &self.0
    }

    pub fn into_inner(self) -> HomogeneousPoly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn rank(&self) -> Result<u64> {
        let q = self.0.field.q() as u64;
        count_normalized_u64(q, self.0.coeffs.len()).ok_or(Error::Capacity {
            requested: u128::MAX,
            limit: u64::MAX as u128,
        })?;
        Ok(rank_raw(q, &self.0.coeffs))
    }

    pub fn unrank(field: &Field, n: usize, e: usize, index: u64) -> Result<Self> {
        let len = num_monomials(n, e);
        let q = field.q() as u64;
        let count = count_normalized_u64(q, len).ok_or(Error::Capacity {
            requested: u128::MAX,
            limit: u64::MAX as u128,
        })?;
        if index >= count {
            return Err(Error::RankOutOfRange { index, count });
        }
        let mut p = HomogeneousPoly::zero(field, n, e);
        unrank_raw(q, index, &mut p.coeffs);
        Ok(NormalizedPoly(p))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        // graded lex is a monomial order, so leading coefficients multiply to 1
        Ok(NormalizedPoly(self.0.mul(&other.0)?))
    }
}

impl fmt::Display for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for NormalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalizedPoly({})", self.0)
    }
}

/// Rank order on normalized forms of equal shape.
impl Ord for NormalizedPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let lead = |p: &NormalizedPoly| p.poly().coeffs().iter().position(|&c| c != 0);
        (self.n(), self.degree(), lead(self), self.poly().coeffs())
            .cmp(&(other.n(), other.degree(), lead(other), other.poly().coeffs()))
    }
}

impl PartialOrd for NormalizedPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(q^len - 1) / (q - 1)` when it fits in `u64`.
pub fn count_normalized_u64(q: u64, len: usize) -> Option<u64> {
    let total = q.checked_pow(u32::try_from(len).ok()?)?;
    Some((total - 1) / (q - 1))
}

/// Rank of a normalized coefficient vector: forms whose first nonzero
/// coefficient sits at position `j` come before those at `j + 1`; within a
/// block the trailing coefficients are read as a base-`q` number, most
/// significant first.
pub(crate) fn rank_raw(q: u64, coeffs: &[Elem]) -> u64 {
    let len = coeffs.len();
    let j = coeffs.iter().position(|&c| c != 0).expect("nonzero form");
    // sum_{j' < j} q^(len-1-j') = (q^len - q^(len-j)) / (q - 1)
    let offset = (q.pow(len as u32) - q.pow((len - j) as u32)) / (q - 1);
    let rest = coeffs[j + 1..]
        .iter()
        .fold(0u64, |acc, &c| acc * q + c as u64);
    offset + rest
}

pub(crate) fn unrank_raw(q: u64, mut index: u64, out: &mut [Elem]) {
    let len = out.len();
    out.fill(0);
    let mut j = 0;
    loop {
        let block = q.pow((len - 1 - j) as u32);
        if index < block {
            break;
        }
        index -= block;
        j += 1;
    }
    out[j] = 1;
    for slot in out[j + 1..].iter_mut().rev() {
        *slot = (index % q) as Elem;
        index /= q;
    }
}

/// Every normalized form of degree `e`, in rank order.
pub fn normalized_forms(
    field: &Field,
    n: usize,
    e: usize,
    limits: Limits,
) -> Result<impl Iterator<Item = NormalizedPoly>> {
    let len = num_monomials(n, e);
    let count = count_normalized_u64(field.q() as u64, len).ok_or(Error::Capacity {
        requested: u128::MAX,
        limit: crate::limits::MAX_ENUMERATION,
    })?;
    limits.check_enumeration(count as u128)?;
    let field = field.clone();
    let q = field.q() as u64;
    Ok((0..count).map(move |i| {
        let mut p = HomogeneousPoly::zero(&field, n, e);
        unrank_raw(q, i, &mut p.coeffs);
        NormalizedPoly(p)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn p(field: &Field, n: usize, text: &str) -> HomogeneousPoly {
        parse_form(field, n, text).unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        let b = monomial_basis(2, 2);
        assert_eq!(b.len(), 6);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["X0^2", "X0*X1", "X0*X2", "X1^2", "X1*X2", "X2^2"]);
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 0)[0].to_string(), "1");
        for n in 0..4 {
            for d in 0..6 {
                let b = monomial_basis(n, d);
                assert_eq!(b.len(), num_monomials(n, d));
                for (i, m) in b.iter().enumerate() {
                    assert_eq!(m.index(), i);
                    assert_eq!(m.degree(), d);
                }
            }
        }
    }

    #[test]
    fn multiplication_examples() {
        let f2 = f(2);
        let s = p(&f2, 1, "X0 + X1");
        assert_eq!(s.mul(&s).unwrap(), p(&f2, 1, "X0^2 + X1^2"));
        let a = p(&f2, 2, "X0").mul(&p(&f2, 2, "X1*X2")).unwrap();
        assert_eq!(a.to_string(), "X0*X1*X2");
        // (X0 + X1)(X0 + 2X1) = X0^2 + 3X0X1 + 2X1^2 = X0^2 + 2X1^2 mod 3
        let f3 = f(3);
        let prod = p(&f3, 1, "X0 + X1").mul(&p(&f3, 1, "X0 + 2*X1")).unwrap();
        assert_eq!(prod, p(&f3, 1, "X0^2 + 2*X1^2"));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = p(&f(2), 1, "X0");
        assert_eq!(a.mul(&p(&f(2), 2, "X0")).unwrap_err(), Error::VariableMismatch(1, 2));
        assert_eq!(a.mul(&p(&f(3), 1, "X0")).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn normalize_examples() {
        let f3 = f(3);
        assert_eq!(
            p(&f3, 1, "2*X0^2 + X1^2").normalize().unwrap().poly(),
            &p(&f3, 1, "X0^2 + 2*X1^2")
        );
        let f2 = f(2);
        let g = p(&f2, 2, "X0*X2 + X1^2");
        assert_eq!(g.normalize().unwrap().poly(), &g);
        let f5 = f(5);
        assert_eq!(
            p(&f5, 2, "3*X1*X2").normalize().unwrap().poly(),
            &p(&f5, 2, "X1*X2")
        );
        assert_eq!(
            HomogeneousPoly::zero(&f5, 2, 2).normalize().unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn normalize_constant_on_orbits() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let field = f(q);
            for form in normalized_forms(&field, 1, 2, Limits::guarded()).unwrap() {
                let g = form.poly();
                assert_eq!(&g.normalize().unwrap(), &form);
                for c in 1..field.q() {
                    assert_eq!(g.scale(c).normalize().unwrap(), form);
                }
            }
        }
    }

    #[test]
    fn division_examples() {
        let f2 = f(2);
        let x0 = p(&f2, 2, "X0");
        assert_eq!(
            x0.divides(&p(&f2, 2, "X0*X1")).unwrap(),
            Some(p(&f2, 2, "X1"))
        );
        assert_eq!(
            p(&f2, 2, "X0 + X1").divides(&p(&f2, 2, "X0^2 + X1^2")).unwrap(),
            Some(p(&f2, 2, "X0 + X1"))
        );
        assert_eq!(x0.divides(&p(&f2, 2, "X1^2")).unwrap(), None);
        assert!(matches!(
            p(&f2, 2, "X0^2").divides(&x0),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn rank_unrank_examples() {
        let f2 = f(2);
        assert_eq!(NormalizedPoly::unrank(&f2, 2, 1, 0).unwrap().to_string(), "X0");
        let linear: Vec<_> = (0..7)
            .map(|i| NormalizedPoly::unrank(&f2, 2, 1, i).unwrap())
            .collect();
        let mut seen: Vec<_> = linear.iter().map(|l| l.poly().coeffs().to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 7);
        assert!(matches!(
            NormalizedPoly::unrank(&f2, 2, 1, 7),
            Err(Error::RankOutOfRange { index: 7, count: 7 })
        ));
        for i in 0..63 {
            let u = NormalizedPoly::unrank(&f2, 2, 2, i).unwrap();
            assert_eq!(u.rank().unwrap(), i);
        }
    }

    #[test]
    fn rank_bijection_exhaustive() {
        // q^len <= 2^21
        for (q, n, e) in [(2u64, 2, 3), (2, 2, 4), (3, 1, 3), (4, 2, 1), (7, 1, 4), (5, 2, 2)] {
            let field = f(q);
            let len = num_monomials(n, e);
            let count = count_normalized_u64(q, len).unwrap();
            let mut seen = std::collections::HashSet::new();
            for i in 0..count {
                let u = NormalizedPoly::unrank(&field, n, e, i).unwrap();
                assert_eq!(u.poly().normalize().unwrap(), u);
                assert_eq!(u.rank().unwrap(), i);
                assert!(seen.insert(u.poly().coeffs().to_vec()));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let f3 = f(3);
        let g = p(&f3, 2, "2*X2^2 + X0*X1 + X0^2");
        assert_eq!(g.to_string(), "X0^2 + X0*X1 + 2*X2^2");
        assert_eq!(p(&f3, 2, "X0*X0").to_string(), "X0^2");
        assert_eq!(p(&f3, 2, "X1 + X1 + X1").to_string(), "0");
        assert!(parse_form(&f3, 2, "X0 + X1^2").is_err());
        assert!(parse_form(&f3, 2, "X3").is_err());
        assert!(parse_form(&f3, 2, "X0*2").is_err());
        let f4 = f(4);
        let h = p(&f4, 1, "0,1*X0 + X1");
        assert_eq!(h.to_string(), "0,1*X0 + X1");
    }

    #[test]
    fn enumeration_guard() {
        let f2 = f(2);
        // n=2, e=6 has 28 coefficients: 2^28 - 1 forms
        assert!(matches!(
            normalized_forms(&f2, 2, 6, Limits::guarded()),
            Err(Error::Capacity { .. })
        ));
        assert!(normalized_forms(&f2, 2, 6, Limits::unlimited()).is_ok());
    }

    fn from_raw(field: &Field, n: usize, d: usize, raw: &[u32]) -> HomogeneousPoly {
        let c = raw[..num_monomials(n, d)].iter().map(|&x| x % field.q()).collect();
        HomogeneousPoly::new(field, n, d, c).unwrap()
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(
            q in prop::sample::select(vec![2u64, 3, 4, 5]),
            n in 0usize..3,
            (da, db, dc) in (0usize..4, 0usize..4, 0usize..4),
            raw in proptest::collection::vec(any::<u32>(), 30),
        ) {
            let field = f(q);
            let a = from_raw(&field, n, da, &raw[0..10]);
            let b = from_raw(&field, n, db, &raw[10..20]);
            let c = from_raw(&field, n, dc, &raw[20..30]);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn divides_recovers_cofactor(
            q in prop::sample::select(vec![2u64, 3, 4]),
            gi in any::<u64>(),
            fc in proptest::collection::vec(any::<u32>(), 10),
        ) {
            let field = f(q);
            let (n, e, k) = (2usize, 2usize, 2usize);
            let count = count_normalized_u64(q, num_monomials(n, e)).unwrap();
            let g = NormalizedPoly::unrank(&field, n, e, gi % count).unwrap().into_inner();
            let fv: Vec<Elem> = fc[..num_monomials(n, k)].iter().map(|&x| x % field.q()).collect();
            let cof = HomogeneousPoly::new(&field, n, k, fv).unwrap();
            let h = g.mul(&cof).unwrap();
            prop_assert_eq!(g.divides(&h).unwrap(), Some(cof));
        }
    }
}
