//! Codes `C_B = { V_G : G in B }` with `V_G = G * F_q[X_0..X_n]_{d-e}`.
//!
//! For pairwise coprime generators of degree `e` every codeword has
//! dimension `l = C(n+d-e, n)` inside `F_q^N`, `N = C(n+d, n)`, and any two
//! distinct codewords meet in `G_1 G_2 * F_q[X]_{d-2e}` (zero when
//! `d < 2e`), which fixes the distance between them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::homopoly::{num_monomials, product_table, HomogeneousPoly, NormalizedPoly};
use crate::irreducibles::{self, pairwise_coprime};
use crate::limits::Limits;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// All irreducible normalized forms of degree `e`.
    Irreducible,
    /// `e`-th powers of the normalized linear forms.
    LinearPowers,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Irreducible => "irr",
            Family::LinearPowers => "linear",
            Family::Custom => "custom",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "irr" => Ok(Family::Irreducible),
            "linear" => Ok(Family::LinearPowers),
            "custom" => Ok(Family::Custom),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// Packet length `N = C(n+d, n)`.
pub fn packet_length(n: usize, d: usize) -> usize {
    num_monomials(n, d)
}

/// Codeword dimension `l = C(n+d-e, n)`.
pub fn codeword_dim(n: usize, d: usize, e: usize) -> usize {
    num_monomials(n, d - e)
}

/// Distance between any two distinct codewords of a coprime family:
/// `2 C(n+d-e, n)` when `d - e < e`, else `2 (C(n+d-e, n) - C(n+d-2e, n))`.
pub fn theoretical_distance(n: usize, d: usize, e: usize) -> usize {
    assert!(d >= e && e >= 1, "requires d >= e >= 1");
    let l = num_monomials(n, d - e);
    if d - e < e {
        2 * l
    } else {
        2 * (l - num_monomials(n, d - 2 * e))
    }
}

/// Dimension of `V_1 ∩ V_2` for distinct codewords of a coprime family.
pub fn theoretical_intersection(n: usize, d: usize, e: usize) -> usize {
    if d < 2 * e {
        0
    } else {
        num_monomials(n, d - 2 * e)
    }
}

/// `V_G`: the span of `G * m` over all monomials `m` of degree `d - e`.
pub fn build_codeword(g: &NormalizedPoly, d: usize) -> Result<Subspace> {
    let (n, e) = (g.n(), g.degree());
    if d < e {
        return Err(Error::DegreeTooSmall { small: d, large: e });
    }
    let field = g.field();
    let (lg, lm, ambient) = (num_monomials(n, e), num_monomials(n, d - e), num_monomials(n, d));
    let table = product_table(n, e, d - e);
    let mut rows = vec![vec![0 as Elem; ambient]; lm];
    for (i, &c) in g.poly().coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, row) in rows.iter_mut().enumerate() {
            let k = table[i * lm + j] as usize;
            row[k] = field.add(row[k], c);
        }
    }
    debug_assert_eq!(table.len(), lg * lm);
    Ok(Subspace::from_rows_unchecked(
        field,
        ambient,
        rows.iter().map(Vec::as_slice),
    ))
}

#[derive(Clone, Debug)]
pub struct SubspaceCode {
    field: Field,
    n: usize,
    e: usize,
    d: usize,
    family: Family,
    generators: Vec<NormalizedPoly>,
    codewords: Vec<Subspace>,
}

impl SubspaceCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[NormalizedPoly] {
        &self.generators
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn packet_length(&self) -> usize {
        packet_length(self.n, self.d)
    }

    pub fn codeword_dim(&self) -> usize {
        codeword_dim(self.n, self.d, self.e)
    }

    /// Distance from the formula, `None` for fewer than two codewords.
    pub fn distance(&self) -> Option<usize> {
        (self.len() >= 2).then(|| theoretical_distance(self.n, self.d, self.e))
    }

    pub fn params(&self, verify: bool, limits: Limits) -> Result<CodeParameters> {
        code_params(self, verify, limits)
    }
}

/// Builds `C_B` after checking that `generators` are pairwise coprime.
pub fn build_code(
    generators: Vec<NormalizedPoly>,
    d: usize,
    family: Family,
    limits: Limits,
) -> Result<SubspaceCode> {
    let first = generators.first().ok_or(Error::EmptyFamily)?;
    let (field, n, e) = (first.field().clone(), first.n(), first.degree());
    if d < e {
        return Err(Error::DegreeTooSmall { small: d, large: e });
    }
    pairwise_coprime(&generators, limits)?.into_result(&generators)?;
    let codewords = generators
        .par_iter()
        .map(|g| build_codeword(g, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceCode {
        field,
        n,
        e,
        d,
        family,
        generators,
        codewords,
    })
}

/// `C_I(e)` or `C_L(e)` built from the sieve or the linear powers.
pub fn family_code(
    field: &Field,
    n: usize,
    e: usize,
    d: usize,
    family: Family,
    limits: Limits,
) -> Result<SubspaceCode> {
    let generators = family_generators(field, n, e, family, limits)?;
    build_code(generators, d, family, limits)
}

pub fn family_generators(
    field: &Field,
    n: usize,
    e: usize,
    family: Family,
    limits: Limits,
) -> Result<Vec<NormalizedPoly>> {
    match family {
        Family::Irreducible => irreducibles::sieve_irreducible(field, n, e, limits),
        Family::LinearPowers => irreducibles::linear_powers(field, n, e, limits),
        Family::Custom => Err(Error::Parse("custom families are read from a file".into())),
    }
}

/// Size of a named family without enumerating it.
pub fn family_size(q: u64, n: usize, e: usize, family: Family) -> Result<BigUint> {
    match family {
        Family::Irreducible => irreducibles::count_irreducible(q, n, e),
        Family::LinearPowers => Ok(irreducibles::count_normalized(q, n, 1)),
        Family::Custom => Err(Error::Parse("custom family size is not known".into())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeParameters {
    /// Packet length `N`.
    pub packet_length: usize,
    /// Codeword dimension `l`.
    pub dim: usize,
    pub size: BigUint,
    pub logq_size: f64,
    /// Minimum distance `D`; absent for fewer than two codewords.
    pub distance: Option<usize>,
    /// Normalized weight `l / N`.
    pub lambda: f64,
    /// `log_q |C| / (N l)`.
    pub rate: f64,
    /// Normalized minimum distance `D / (2 l)`.
    pub delta: Option<f64>,
}

impl CodeParameters {
    pub fn from_size(q: u64, n: usize, e: usize, d: usize, size: &BigUint) -> Result<Self> {
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        if d < e {
            return Err(Error::DegreeTooSmall { small: d, large: e });
        }
        let packet = packet_length(n, d);
        let dim = codeword_dim(n, d, e);
        let logq_size = size.to_f64().unwrap_or(f64::INFINITY).ln() / (q as f64).ln();
        let distance = (*size >= BigUint::from(2u32)).then(|| theoretical_distance(n, d, e));
        Ok(CodeParameters {
            packet_length: packet,
            dim,
            size: size.clone(),
            logq_size,
            distance,
            lambda: dim as f64 / packet as f64,
            rate: logq_size / (packet as f64 * dim as f64),
            delta: distance.map(|dd| dd as f64 / (2 * dim) as f64),
        })
    }
}

/// Parameters of a built code. With `verify`, every pairwise distance is
/// recomputed by row reduction and must equal the formula.
pub fn code_params(code: &SubspaceCode, verify: bool, limits: Limits) -> Result<CodeParameters> {
    let size = BigUint::from(code.len());
    let params = CodeParameters::from_size(code.field.q() as u64, code.n, code.e, code.d, &size)?;
    if verify {
        if let Some(expected) = params.distance {
            verify_equidistant(code, expected, limits)?;
        }
    }
    Ok(params)
}

fn check_pairs(len: usize, limits: Limits) -> Result<()> {
    let pairs = len as u128 * len.saturating_sub(1) as u128 / 2;
    limits.check_pairs(pairs)
}

fn verify_equidistant(code: &SubspaceCode, expected: usize, limits: Limits) -> Result<()> {
    check_pairs(code.len(), limits)?;
    let words = &code.codewords;
    let bad = (0..words.len()).into_par_iter().find_map_first(|i| {
        words[i + 1..].iter().enumerate().find_map(|(k, w)| {
            let found = words[i].dist(w).expect("same ambient space");
            (found != expected).then_some((i, i + 1 + k, found))
        })
    });
    match bad {
        None => Ok(()),
        Some((first, second, found)) => Err(Error::VerificationMismatch {
            first,
            second,
            found,
            expected,
        }),
    }
}

/// Minimum pairwise distance by exhaustive row reduction; `None` for fewer
/// than two codewords.
pub fn min_distance_bruteforce(code: &SubspaceCode, limits: Limits) -> Result<Option<usize>> {
    check_pairs(code.len(), limits)?;
    let words = &code.codewords;
    Ok((0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            words[i + 1..]
                .iter()
                .map(|w| words[i].dist(w).expect("same ambient space"))
                .min()
        })
        .min())
}

/// Rounds half away from zero to three decimals.
pub fn fmt3(x: f64) -> String {
    format!("{:.3}", (x * 1000.0).round() / 1000.0)
}

/// True for the cells of the published `q = 2, n = 2` irreducible-family
/// table at `d = 2e` whose printed distance disagrees with the formula.
pub fn table_erratum(q: u64, n: usize, e: usize, d: usize, family: Family) -> bool {
    family == Family::Irreducible && q == 2 && n == 2 && (1..=5).contains(&e) && d == 2 * e
}

/// One CSV row `e,d,N,l,size,logq_size,D,lambda,delta,R,erratum_flag`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamRow {
    pub e: usize,
    pub d: usize,
    pub params: CodeParameters,
    pub erratum: bool,
}

impl ParamRow {
    pub const CSV_HEADER: &'static str = "e,d,N,l,size,logq_size,D,lambda,delta,R,erratum_flag";

    pub fn new(q: u64, n: usize, e: usize, d: usize, family: Family, size: &BigUint) -> Result<Self> {
        Ok(ParamRow {
            e,
            d,
            params: CodeParameters::from_size(q, n, e, d, size)?,
            erratum: table_erratum(q, n, e, d, family),
        })
    }

    pub fn csv(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.e,
            self.d,
            p.packet_length,
            p.dim,
            p.size,
            fmt3(p.logq_size),
            p.distance.map(|d| d.to_string()).unwrap_or_default(),
            fmt3(p.lambda),
            p.delta.map(fmt3).unwrap_or_default(),
            fmt3(p.rate),
            self.erratum,
        )
    }
}

/// Header `q n e d family size`, then per codeword its generator on one
/// line followed by its subspace block.
impl fmt::Display for SubspaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} {} {} {} {}",
            self.field.q(),
            self.n,
            self.e,
            self.d,
            self.family,
            self.len()
        )?;
        for (g, v) in self.generators.iter().zip(&self.codewords) {
            writeln!(f, "{g}")?;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl SubspaceCode {
    /// Reads the serialization written by `Display`, re-deriving every
    /// codeword from its generator and rejecting blocks that disagree.
    pub fn parse(text: &str) -> Result<SubspaceCode> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let header = lines
            .first()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [q, n, e, d, family, size] = fields[..] else {
            return Err(Error::Parse(format!("header `{header}` must be `q n e d family size`")));
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number `{s}` in header")))
        };
        let field = Field::with_order(num(q)? as u64)?;
        let (n, e, d, size) = (num(n)?, num(e)?, num(d)?, num(size)?);
        let family: Family = family.parse()?;
        let mut generators = Vec::with_capacity(size);
        let mut codewords = Vec::with_capacity(size);
        let mut at = 1;
        for _ in 0..size {
            let gen_line = lines
                .get(at)
                .ok_or_else(|| Error::Parse("truncated code file".into()))?;
            let g = HomogeneousPoly::parse(&field, n, gen_line)?.normalize()?;
            if g.degree() != e {
                return Err(Error::MixedParameters);
            }
            let block_header = lines
                .get(at + 1)
                .ok_or_else(|| Error::Parse("truncated code file".into()))?;
            let rows = block_header
                .split_whitespace()
                .nth(2)
                .and_then(|l| l.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad subspace header `{block_header}`")))?;
            let end = at + 2 + rows;
            if end > lines.len() {
                return Err(Error::Parse("truncated code file".into()));
            }
            let block = lines[at + 1..end].join("\n");
            let v = Subspace::parse(&block, true)?.subspace;
            if v != build_codeword(&g, d)? {
                return Err(Error::Parse(format!("subspace block does not match generator `{g}`")));
            }
            generators.push(g);
            codewords.push(v);
            at = end;
        }
        Ok(SubspaceCode {
            field,
            n,
            e,
            d,
            family,
            generators,
            codewords,
        })
    }
}
