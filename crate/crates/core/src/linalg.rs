//! Row reduction kernels: generic dense elimination over any `F_q` and a
//! bit-packed variant for `F_2`.

use crate::gf::{Elem, Field};

/// Brings `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = field.inv(rows[top][col]).expect("pivot is nonzero");
        if inv != 1 {
            for x in rows[top][col..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[top]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col] == 0 {
                continue;
            }
            let factor = field.neg(row[col]);
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = field.add(*x, field.mul(factor, y));
                }
            }
        }
        rows[top] = pivot_row;
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

pub fn rank(field: &Field, mut rows: Vec<Vec<Elem>>, ncols: usize) -> usize {
    rref(field, &mut rows, ncols).len()
}

/// Rows of bits over `F_2`, `words` 64-bit limbs per row, column `c` stored
/// at bit `c % 64` of limb `c / 64`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitRows {
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub fn new(cols: usize) -> Self {
        BitRows {
            cols,
            words: cols.div_ceil(64).max(1),
            data: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn nrows(&self) -> usize {
        self.data.len() / self.words
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn push_words(&mut self, row: &[u64]) {
        debug_assert_eq!(row.len(), self.words);
        self.data.extend_from_slice(row);
    }

    /// Pushes a row given as field elements in `{0, 1}`.
    pub fn push_elems(&mut self, row: &[Elem]) {
        debug_assert_eq!(row.len(), self.cols);
        let start = self.data.len();
        self.data.resize(start + self.words, 0);
        for (c, &x) in row.iter().enumerate() {
            if x & 1 == 1 {
                self.data[start + c / 64] |= 1 << (c % 64);
            }
        }
    }

    pub fn row_elems(&self, r: usize) -> Vec<Elem> {
        (0..self.cols).map(|c| self.get(r, c) as Elem).collect()
    }

    pub fn extend(&mut self, other: &BitRows) {
        debug_assert_eq!(self.words, other.words);
        self.data.extend_from_slice(&other.data);
    }

    /// Reduced row-echelon form in place; zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let n = self.nrows();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == n {
                break;
            }
            let (limb, bit) = (col / 64, col % 64);
            let Some(found) = (top..n).find(|&r| self.data[r * w + limb] >> bit & 1 == 1) else {
                continue;
            };
            if found != top {
                for k in 0..w {
                    self.data.swap(top * w + k, found * w + k);
                }
            }
            for r in 0..n {
                if r != top && self.data[r * w + limb] >> bit & 1 == 1 {
                    for k in limb..w {
                        let pivot_word = self.data[top * w + k];
                        self.data[r * w + k] ^= pivot_word;
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        self.data.truncate(top * w);
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.rref().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_rref_drops_dependent_rows() {
        let f3 = Field::prime(3).unwrap();
        let mut rows = vec![vec![1, 2], vec![2, 1]];
        let piv = rref(&f3, &mut rows, 2);
        assert_eq!(piv, vec![0]);
        assert_eq!(rows, vec![vec![1, 2]]);
    }

    #[test]
    fn dense_rref_clears_above_pivots() {
        let f5 = Field::prime(5).unwrap();
        let mut rows = vec![vec![0, 2, 1, 0], vec![3, 1, 0, 4], vec![3, 3, 1, 4]];
        let piv = rref(&f5, &mut rows, 4);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0][1], 0);
        assert_eq!(rows[1][0], 0);
        assert_eq!((rows[0][0], rows[1][1]), (1, 1));
    }

    #[test]
    fn bit_rref_matches_dense_on_f2() {
        let f2 = Field::prime(2).unwrap();
        let rows: Vec<Vec<Elem>> = (0u32..40)
            .map(|i| (0..70).map(|c| (i * 7 + c * 13 + i * c) % 3 % 2).collect())
            .collect();
        let mut bits = BitRows::new(70);
        for r in &rows {
            bits.push_elems(r);
        }
        let mut dense = rows.clone();
        let dp = rref(&f2, &mut dense, 70);
        let bp = bits.rref();
        assert_eq!(dp, bp);
        for (i, r) in dense.iter().enumerate() {
            assert_eq!(&bits.row_elems(i), r);
        }
    }
}
