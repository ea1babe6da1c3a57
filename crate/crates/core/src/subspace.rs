//! Subspaces of `F_q^N` in canonical reduced row-echelon form, and the
//! subspace distance `dist(V, W) = dim(V + W) - dim(V ∩ W)`.
//!
//! Over `F_2` the basis rows are bit-packed; other fields use one `u32` per
//! entry. Either way two subspaces compare equal exactly when they are the
//! same subspace.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{self, BitRows};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Basis {
    Bits(BitRows),
    Dense(Vec<Vec<Elem>>),
}

#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Basis,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis && self.field == other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl Subspace {
    /// Span of `vectors`, each of length `ambient`.
    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vec<Elem>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            if let Some(&bad) = v.iter().find(|&&x| !field.contains(x as u64)) {
                return Err(Error::InvalidElement(bad as u64));
            }
        }
        Ok(Self::from_rows_unchecked(field, ambient, vectors.iter().map(Vec::as_slice)))
    }

    pub(crate) fn from_rows_unchecked<'a>(
        field: &Field,
        ambient: usize,
        rows: impl Iterator<Item = &'a [Elem]>,
    ) -> Self {
        let basis = if field.q() == 2 {
            let mut bits = BitRows::new(ambient);
            for r in rows {
                bits.push_elems(r);
            }
            bits.rref();
            Basis::Bits(bits)
        } else {
            let mut dense: Vec<Vec<Elem>> = rows.map(<[Elem]>::to_vec).collect();
            linalg::rref(field, &mut dense, ambient);
            Basis::Dense(dense)
        };
        Subspace {
            field: field.clone(),
            ambient,
            basis,
        }
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Self::from_rows_unchecked(field, ambient, std::iter::empty())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        match &self.basis {
            Basis::Bits(b) => b.nrows(),
            Basis::Dense(d) => d.len(),
        }
    }

    /// The canonical basis rows.
    pub fn basis(&self) -> Vec<Vec<Elem>> {
        match &self.basis {
            Basis::Bits(b) => (0..b.nrows()).map(|r| b.row_elems(r)).collect(),
            Basis::Dense(d) => d.clone(),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.ambient != other.ambient {
            Err(Error::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    /// `dim(self + other)`.
    pub fn sum_dim(&self, other: &Self) -> Result<usize> {
        self.check_same_space(other)?;
        Ok(match (&self.basis, &other.basis) {
            (Basis::Bits(a), Basis::Bits(b)) => {
                let mut s = a.clone();
                s.extend(b);
                s.rank()
            }
            (Basis::Dense(a), Basis::Dense(b)) => {
                let rows: Vec<Vec<Elem>> = a.iter().chain(b).cloned().collect();
                linalg::rank(&self.field, rows, self.ambient)
            }
            _ => unreachable!("same field implies same representation"),
        })
    }

    /// `dim(self ∩ other) = dim self + dim other - dim(self + other)`.
    pub fn intersect_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    pub fn dist(&self, other: &Self) -> Result<usize> {
        let r = self.sum_dim(other)?;
        Ok(2 * r - self.dim() - other.dim())
    }

    pub fn sum(&self, other: &Self) -> Result<Subspace> {
        self.check_same_space(other)?;
        let rows: Vec<Vec<Elem>> = self.basis().into_iter().chain(other.basis()).collect();
        Ok(Self::from_rows_unchecked(
            &self.field,
            self.ambient,
            rows.iter().map(Vec::as_slice),
        ))
    }

    /// Zassenhaus: reduce `[v | v]` for `v` in `self` stacked on `[w | 0]` for
    /// `w` in `other`; rows with a zero left half span the intersection.
    pub fn intersection(&self, other: &Self) -> Result<Subspace> {
        self.check_same_space(other)?;
        let n = self.ambient;
        let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis() {
            let mut r = v.clone();
            r.extend_from_slice(&v);
            rows.push(r);
        }
        for w in other.basis() {
            let mut r = w;
            r.resize(2 * n, 0);
            rows.push(r);
        }
        let pivots = linalg::rref(&self.field, &mut rows, 2 * n);
        let meet: Vec<&[Elem]> = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| &r[n..])
            .collect();
        Ok(Self::from_rows_unchecked(&self.field, n, meet.into_iter()))
    }

    pub fn contains_vector(&self, v: &[Elem]) -> Result<bool> {
        let line = Subspace::from_vectors(&self.field, self.ambient, &[v.to_vec()])?;
        Ok(self.sum_dim(&line)? == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        Ok(self.sum_dim(other)? == other.dim())
    }

    /// Reads the text block written by `Display`. With `strict`, rows that
    /// are not linearly independent are an error; otherwise the deficiency
    /// is reported in [`ParsedSubspace::rank_deficient`].
    pub fn parse(text: &str, strict: bool) -> Result<ParsedSubspace> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty subspace file".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        let [q, ambient, declared] = nums[..] else {
            return Err(Error::Parse(format!("header `{header}` must be `q N l`")));
        };
        let field = Field::with_order(q)?;
        let (ambient, declared) = (ambient as usize, declared as usize);
        let rows = lines
            .take(declared)
            .map(|l| l.split_whitespace().map(|t| field.parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != declared {
            return Err(Error::Parse(format!(
                "expected {declared} rows, found {}",
                rows.len()
            )));
        }
        let subspace = Subspace::from_vectors(&field, ambient, &rows)?;
        let rank_deficient = subspace.dim() < declared;
        if strict && rank_deficient {
            return Err(Error::RankDeficient {
                declared,
                rank: subspace.dim(),
            });
        }
        Ok(ParsedSubspace {
            subspace,
            declared,
            rank_deficient,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ParsedSubspace {
    pub subspace: Subspace,
    pub declared: usize,
    pub rank_deficient: bool,
}

pub fn dist(a: &Subspace, b: &Subspace) -> Result<usize> {
    a.dist(b)
}

pub fn sum_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    a.sum_dim(b)
}

pub fn intersect_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    a.intersect_dim(b)
}

/// `q N l` followed by the `l` canonical basis rows.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.field.q(), self.ambient, self.dim())?;
        for row in self.basis() {
            let cells: Vec<String> = row.iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{})", self.dim(), self.field.q(), self.ambient)
    }
}
