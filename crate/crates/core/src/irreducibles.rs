//! Counting and enumerating normalized forms: all of `N(e)`, the irreducible
//! ones `I(e)`, and the `e`-th powers of linear forms `L(e)`.
//!
//! Counts come from unique factorization: a normalized form of degree `e`
//! is a multiset of irreducible normalized factors whose degrees partition
//! `e`, so
//!
//! ```text
//! N(e) = sum over 1*a_1 + ... + e*a_e = e of  prod_i C(I(i) + a_i - 1, a_i)
//! ```
//!
//! and `I(e)` is `N(e)` minus the same sum restricted to partitions with no
//! part equal to `e`.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::homopoly::{
    count_normalized_u64, mul_raw, num_monomials, product_table, rank_raw, unrank_raw,
    HomogeneousPoly, NormalizedPoly,
};
use crate::limits::Limits;

/// Partition of an integer stored as multiplicities: `mult[i]` parts equal to `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Number of parts equal to `size`.
    pub fn count(&self, size: usize) -> u32 {
        self.mult.get(size - 1).copied().unwrap_or(0)
    }
}

/// All partitions of `e`, generated iteratively in reverse lexicographic
/// order of their descending part lists, starting from `[e]`.
pub fn partitions(e: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if e == 0 {
        return out;
    }
    let mut parts = vec![e];
    loop {
        let mut mult = vec![0u32; e];
        for &p in &parts {
            mult[p - 1] += 1;
        }
        out.push(Partition { mult });
        // rightmost part larger than 1
        let Some(k) = parts.iter().rposition(|&p| p > 1) else {
            break;
        };
        let mut rem: usize = parts[k + 1..].iter().sum::<usize>() + 1;
        let v = parts[k] - 1;
        parts.truncate(k);
        parts.push(v);
        while rem > 0 {
            let take = rem.min(v);
            parts.push(take);
            rem -= take;
        }
    }
    out
}

/// `C(count + a - 1, a)`: multisets of size `a` drawn from `count` items.
pub fn multiset(count: &BigUint, a: u32) -> BigUint {
    let mut acc = BigUint::one();
    let base = count + BigUint::from(a) - BigUint::one();
    // C(base, a) = prod_{i<a} (base - i) / (i + 1), exact at every step
    for i in 0..a {
        acc *= &base - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    if a > 0 && count.is_zero() {
        return BigUint::zero();
    }
    acc
}

/// `N(e) = (q^C(n+e,n) - 1) / (q - 1)`.
pub fn count_normalized(q: u64, n: usize, e: usize) -> BigUint {
    let len = num_monomials(n, e);
    let q = BigUint::from(q);
    (q.pow(len as u32) - BigUint::one()) / (q - BigUint::one())
}

/// Number of normalized forms of degree `e` whose irreducible factor degrees
/// follow some partition in `parts`, given `irr[i-1] = I(i)`.
fn factorization_sum<'a>(
    irr: &[BigUint],
    parts: impl Iterator<Item = &'a Partition>,
) -> BigUint {
    parts
        .map(|p| {
            p.multiplicities()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .fold(BigUint::one(), |acc, (i, &a)| acc * multiset(&irr[i], a))
        })
        .sum()
}

/// `[I(1), ..., I(e)]`, computed bottom-up.
pub fn irreducible_counts(q: u64, n: usize, e: usize) -> Vec<BigUint> {
    let mut irr: Vec<BigUint> = Vec::with_capacity(e);
    for k in 1..=e {
        let all = partitions(k);
        let reducible = factorization_sum(&irr, all.iter().filter(|p| p.count(k) == 0));
        irr.push(count_normalized(q, n, k) - reducible);
    }
    irr
}

pub fn count_irreducible(q: u64, n: usize, e: usize) -> Result<BigUint> {
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(irreducible_counts(q, n, e).pop().expect("e >= 1"))
}

/// Right-hand side of the unique-factorization identity for `N(e)`, summed
/// over every partition of `e` (the trivial one included), from the
/// irreducible counts `irr[i-1] = I(i)`, `i = 1..=e`.
pub fn factorization_count(irr: &[BigUint], e: usize) -> BigUint {
    assert!(irr.len() >= e, "need I(1..=e)");
    factorization_sum(irr, partitions(e).iter())
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    pub q: u64,
    pub n: usize,
    pub e: usize,
    pub normalized: BigUint,
    pub irreducible: BigUint,
    pub forms: Option<Vec<NormalizedPoly>>,
}

impl CensusResult {
    pub const CSV_HEADER: &'static str = "q,n,e,N_e,I_e";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.q, self.n, self.e, self.normalized, self.irreducible
        )
    }
}

/// Counts for degree `e`; with `enumerate` the irreducible forms are also
/// listed by the sieve.
pub fn census(field: &Field, n: usize, e: usize, enumerate: bool, limits: Limits) -> Result<CensusResult> {
    let q = field.q() as u64;
    let irreducible = count_irreducible(q, n, e)?;
    let forms = if enumerate {
        Some(sieve_irreducible(field, n, e, limits)?)
    } else {
        None
    };
    Ok(CensusResult {
        q,
        n,
        e,
        normalized: count_normalized(q, n, e),
        irreducible,
        forms,
    })
}

fn enumeration_size(field: &Field, n: usize, e: usize, limits: Limits) -> Result<u64> {
    let count = count_normalized_u64(field.q() as u64, num_monomials(n, e)).ok_or(
        Error::Capacity {
            requested: u128::MAX,
            limit: crate::limits::MAX_ENUMERATION,
        },
    )?;
    limits.check_enumeration(count as u128)?;
    Ok(count)
}

/// Irreducible normalized forms of degree `e`, in rank order.
///
/// Marks the rank of every product `A * B` with `A` in `N(k)`, `B` in
/// `N(e - k)`, `1 <= k <= e/2`; the unmarked ranks are the irreducibles.
pub fn sieve_irreducible(field: &Field, n: usize, e: usize, limits: Limits) -> Result<Vec<NormalizedPoly>> {
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = field.q() as u64;
    let total = enumeration_size(field, n, e, limits)?;
    let marks: Vec<AtomicU64> = (0..total.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let len_e = num_monomials(n, e);
    for k in 1..=e / 2 {
        let (la, lb) = (num_monomials(n, k), num_monomials(n, e - k));
        let count_a = count_normalized_u64(q, la).expect("smaller than N(e)");
        let count_b = count_normalized_u64(q, lb).expect("smaller than N(e)");
        let table = product_table(n, k, e - k);
        (0..count_a).into_par_iter().for_each_init(
            || (vec![0; la], vec![0; lb], vec![0; len_e]),
            |(a, b, out), ia| {
                unrank_raw(q, ia, a);
                // for equal degrees the grid is symmetric
                let start = if 2 * k == e { ia } else { 0 };
                for ib in start..count_b {
                    unrank_raw(q, ib, b);
                    mul_raw(field, &table, a, b, out);
                    let r = rank_raw(q, out);
                    marks[(r / 64) as usize].fetch_or(1 << (r % 64), AtomicOrdering::Relaxed);
                }
            },
        );
    }
    let survivors: Vec<u64> = marks
        .iter()
        .enumerate()
        .flat_map(|(w, word)| {
            let bits = word.load(AtomicOrdering::Relaxed);
            (0..64u64)
                .filter(move |b| bits >> b & 1 == 0)
                .map(move |b| w as u64 * 64 + b)
        })
        .filter(|&r| r < total)
        .collect();
    survivors
        .into_par_iter()
        .map(|r| NormalizedPoly::unrank(field, n, e, r))
        .collect()
}

/// `{ normalize(L^e) : L in N(1) }`, in rank order.
pub fn linear_powers(field: &Field, n: usize, e: usize, limits: Limits) -> Result<Vec<NormalizedPoly>> {
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    let count = enumeration_size(field, n, 1, limits)?;
    let mut powers = (0..count)
        .map(|i| {
            let l = NormalizedPoly::unrank(field, n, 1, i)?;
            l.poly().pow(e as u32).normalize()
        })
        .collect::<Result<Vec<_>>>()?;
    powers.sort();
    Ok(powers)
}

/// Outcome of a coprimality check. `offending` holds the indices of the
/// first pair found to share a nonconstant divisor, and that divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeReport {
    pub offending: Option<(usize, usize, NormalizedPoly)>,
}

impl CoprimeReport {
    pub fn is_coprime(&self) -> bool {
        self.offending.is_none()
    }

    /// Converts a failed check into [`Error::NotCoprime`] against `family`.
    pub fn into_result(self, family: &[NormalizedPoly]) -> Result<()> {
        match self.offending {
            None => Ok(()),
            Some((i, j, g)) => Err(Error::NotCoprime {
                first: family[i].to_string(),
                second: family[j].to_string(),
                divisor: g.to_string(),
            }),
        }
    }
}

/// Checks that no two distinct members of `family` share a nonconstant
/// factor. Duplicates count as sharing themselves.
///
/// Any common factor has an irreducible factor `G` of degree `k < e`, so it
/// suffices to walk every multiple `G * F`, `F` in `N(e - k)`, of every
/// irreducible `G` and see whether two members are hit.
pub fn pairwise_coprime(family: &[NormalizedPoly], limits: Limits) -> Result<CoprimeReport> {
    let Some(first) = family.first() else {
        return Ok(CoprimeReport { offending: None });
    };
    let (field, n, e) = (first.field().clone(), first.n(), first.degree());
    if family
        .iter()
        .any(|p| p.field() != &field || p.n() != n || p.degree() != e)
    {
        return Err(Error::MixedParameters);
    }
    let q = field.q() as u64;
    enumeration_size(&field, n, e, limits)?;

    let mut by_rank: HashMap<u64, usize> = HashMap::with_capacity(family.len());
    for (j, p) in family.iter().enumerate() {
        let r = rank_raw(q, p.poly().coeffs());
        if let Some(&i) = by_rank.get(&r) {
            return Ok(CoprimeReport {
                offending: Some((i, j, p.clone())),
            });
        }
        by_rank.insert(r, j);
    }

    let len_e = num_monomials(n, e);
    for k in 1..e {
        let lb = num_monomials(n, e - k);
        let count_b = enumeration_size(&field, n, e - k, limits)?;
        let table = product_table(n, k, e - k);
        let divisors = sieve_irreducible(&field, n, k, limits)?;
        let hit = divisors.par_iter().find_map_first(|g| {
            let (mut b, mut out) = (vec![0 as Elem; lb], vec![0 as Elem; len_e]);
            let mut owner: Option<usize> = None;
            for ib in 0..count_b {
                unrank_raw(q, ib, &mut b);
                mul_raw(&field, &table, g.poly().coeffs(), &b, &mut out);
                if let Some(&j) = by_rank.get(&rank_raw(q, &out)) {
                    match owner {
                        None => owner = Some(j),
                        Some(i) => return Some((i.min(j), i.max(j), g.clone())),
                    }
                }
            }
            None
        });
        if hit.is_some() {
            return Ok(CoprimeReport { offending: hit });
        }
    }
    Ok(CoprimeReport { offending: None })
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(i, &a)| std::iter::repeat_n((i + 1).to_string(), a as usize))
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// Reads newline-delimited forms, skipping blank lines.
pub fn parse_form_list(field: &Field, n: usize, text: &str) -> Result<Vec<NormalizedPoly>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| HomogeneousPoly::parse(field, n, l)?.normalize())
        .collect()
}
