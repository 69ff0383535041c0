//! Bit-packed symmetric matrices over GF(2).
//!
//! A [`Gf2Matrix`] is indexed by an ordered list of vertex labels. Rows are
//! packed into `u64` words; every row uses the same number of words and the
//! bits past the order are always zero, so derived equality is entrywise
//! equality.
//!
//! All arithmetic is mod 2: there are no signs and no pivot tolerances, so
//! determinants, principal pivot transforms and kernel vectors are exact.

use std::fmt;

use crate::bits::{self, words_for};
use crate::error::{Error, Result};
use crate::vertex::{Vertex, VertexSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    labels: Vec<Vertex>,
    stride: usize,
    words: Vec<u64>,
}

impl Gf2Matrix {
    /// The zero matrix on `labels`.
    pub fn zeros<I, V>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
    {
        let labels: Vec<Vertex> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self::zeros_unchecked(labels))
    }

    pub(crate) fn zeros_unchecked(labels: Vec<Vertex>) -> Self {
        let stride = words_for(labels.len()).max(1);
        let words = vec![0; stride * labels.len()];
        Gf2Matrix {
            labels,
            stride,
            words,
        }
    }

    /// Builds a matrix from 0/1 rows. Any nonzero entry counts as 1.
    pub fn from_rows<I, V>(labels: I, rows: &[Vec<u8>]) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
    {
        let mut m = Self::zeros(labels)?;
        let n = m.order();
        if rows.len() != n {
            return Err(Error::RaggedMatrix {
                row: rows.len(),
                len: 0,
                expected: n,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedMatrix {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if (x != 0) != (rows[j][i] != 0) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                bits::set(m.row_mut(i), j, x != 0);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from an entry function, which must be symmetric.
    pub fn from_fn<I, V, F>(labels: I, mut entry: F) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vertex>,
        F: FnMut(usize, usize) -> bool,
    {
        let mut m = Self::zeros(labels)?;
        let n = m.order();
        for i in 0..n {
            for j in i..n {
                let a = entry(i, j);
                if j != i && a != entry(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                m.set(i, j, a);
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.labels.iter().position(|l| l == v)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.order(), "column {j} out of range");
        bits::get(self.row(i), j)
    }

    /// Entry addressed by labels.
    pub fn entry(&self, x: &Vertex, y: &Vertex) -> Result<bool> {
        let i = self
            .index_of(x)
            .ok_or_else(|| Error::UnknownVertex(x.clone()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| Error::UnknownVertex(y.clone()))?;
        Ok(self.get(i, j))
    }

    /// Sets `a_ij` and `a_ji`.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.order() && j < self.order(), "index out of range");
        bits::set(self.row_mut(i), j, value);
        bits::set(self.row_mut(j), i, value);
    }

    /// Flips `a_ij` and `a_ji` (once, when `i == j`).
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.order() && j < self.order(), "index out of range");
        bits::flip(self.row_mut(i), j);
        if i != j {
            bits::flip(self.row_mut(j), i);
        }
    }

    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Index mask with every row selected.
    pub(crate) fn full_mask(&self) -> Vec<u64> {
        let mut mask = vec![0; self.stride];
        for i in 0..self.order() {
            bits::set(&mut mask, i, true);
        }
        mask
    }

    /// Index mask of a label set.
    pub(crate) fn mask_of(&self, x: &VertexSet) -> Result<Vec<u64>> {
        let mut mask = vec![0; self.stride];
        for v in x {
            let i = self
                .index_of(v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            bits::set(&mut mask, i, true);
        }
        Ok(mask)
    }

    pub(crate) fn set_of_mask(&self, mask: &[u64]) -> VertexSet {
        bits::ones(mask).map(|i| self.labels[i].clone()).collect()
    }

    /// Determinant mod 2. The 0×0 matrix has determinant 1.
    pub fn det(&self) -> bool {
        self.det_masked(&self.full_mask())
    }

    /// `det(M[X])` without materialising the submatrix.
    pub fn det_principal(&self, x: &VertexSet) -> Result<bool> {
        Ok(self.det_masked(&self.mask_of(x)?))
    }

    /// Determinant of the principal submatrix selected by an index mask.
    pub(crate) fn det_masked(&self, mask: &[u64]) -> bool {
        debug_assert_eq!(mask.len(), self.stride);
        if self.stride == 1 {
            return self.det_masked_word(mask[0]);
        }
        let cols: Vec<usize> = bits::ones(mask).collect();
        let stride = self.stride;
        let mut rows = Vec::with_capacity(cols.len() * stride);
        for &i in &cols {
            rows.extend(self.row(i).iter().zip(mask).map(|(w, m)| w & m));
        }
        full_rank(&mut rows, stride, &cols)
    }

    /// Single-word fast path: order ≤ 64.
    pub(crate) fn det_masked_word(&self, mask: u64) -> bool {
        debug_assert_eq!(self.stride, 1);
        let mut rows = [0u64; 64];
        let mut k = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            rows[k] = self.words[i] & mask;
            k += 1;
        }
        let rows = &mut rows[..k];
        let mut m = mask;
        let mut pos = 0;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            m &= m - 1;
            let Some(r) = (pos..k).find(|&r| rows[r] & bit != 0) else {
                return false;
            };
            rows.swap(pos, r);
            let pivot = rows[pos];
            for row in rows[pos + 1..].iter_mut() {
                if *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            pos += 1;
        }
        true
    }

    /// `M[X]`, keeping the label order of `self`.
    pub fn principal_submatrix(&self, x: &VertexSet) -> Result<Gf2Matrix> {
        let mask = self.mask_of(x)?;
        Ok(self.submatrix_masked(&mask))
    }

    pub(crate) fn submatrix_masked(&self, mask: &[u64]) -> Gf2Matrix {
        let idx: Vec<usize> = bits::ones(mask).collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let mut sub = Gf2Matrix::zeros_unchecked(labels);
        for (a, &i) in idx.iter().enumerate() {
            let row = self.row(i);
            let dst = sub.row_mut(a);
            for (b, &j) in idx.iter().enumerate() {
                if bits::get(row, j) {
                    bits::set(dst, b, true);
                }
            }
        }
        sub
    }

    /// Principal pivot transform `M * X`.
    ///
    /// With `M = [[P, Q], [R, S]]` and `P = M[X]` invertible, the result is
    /// `[[P⁻¹, P⁻¹Q], [RP⁻¹, S + RP⁻¹Q]]` (signs vanish mod 2), laid out in
    /// the original index order. Computed by Gauss-Jordan elimination on the
    /// exchange system rather than by forming `P⁻¹`.
    pub fn ppt(&self, x: &VertexSet) -> Result<Gf2Matrix> {
        let mask = self.mask_of(x)?;
        self.ppt_masked(&mask)
    }

    pub(crate) fn ppt_masked(&self, mask: &[u64]) -> Result<Gf2Matrix> {
        let n = self.order();
        let s = self.stride;
        // Row i of the exchange system is [L_i | R_i]: column j of L is the
        // coefficient of the new output variable j, column j of R that of the
        // new input variable j. Output j is x_j when j ∈ X (coefficients from
        // column j of M) and y_j otherwise (a unit vector); inputs swap roles.
        let mut sys = vec![0u64; n * 2 * s];
        for i in 0..n {
            let row = self.row(i);
            let (left, right) = sys[i * 2 * s..(i + 1) * 2 * s].split_at_mut(s);
            for w in 0..s {
                left[w] = row[w] & mask[w];
                right[w] = row[w] & !mask[w];
            }
            if bits::get(mask, i) {
                bits::set(right, i, true);
            } else {
                bits::set(left, i, true);
            }
        }
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| bits::get(&sys[r * 2 * s..r * 2 * s + s], c)) else {
                return Err(Error::SingularPivot);
            };
            if r != c {
                for w in 0..2 * s {
                    sys.swap(r * 2 * s + w, c * 2 * s + w);
                }
            }
            let pivot: Vec<u64> = sys[c * 2 * s..(c + 1) * 2 * s].to_vec();
            for rr in 0..n {
                if rr != c && bits::get(&sys[rr * 2 * s..rr * 2 * s + s], c) {
                    bits::xor_into(&mut sys[rr * 2 * s..(rr + 1) * 2 * s], &pivot);
                }
            }
        }
        let mut out = Gf2Matrix::zeros_unchecked(self.labels.clone());
        for i in 0..n {
            out.row_mut(i)
                .copy_from_slice(&sys[i * 2 * s + s..(i + 1) * 2 * s]);
        }
        Ok(out)
    }

    /// A non-empty set of rows summing to zero, or `None` when `det = 1`.
    ///
    /// Reduces to row echelon form, takes the first free column `f` and
    /// back-substitutes with `x_f = 1` and the other free variables 0.
    /// As the matrix is symmetric, the rows indexed by the returned set sum
    /// to the zero vector: every vertex has an even number of neighbours in it.
    pub fn kernel_witness(&self) -> Option<VertexSet> {
        let n = self.order();
        let s = self.stride;
        let mut rows = self.words.clone();
        let mut pivot_cols = Vec::with_capacity(n);
        let mut free = None;
        for c in 0..n {
            let rank = pivot_cols.len();
            let Some(r) = (rank..n).find(|&r| bits::get(&rows[r * s..(r + 1) * s], c)) else {
                free.get_or_insert(c);
                continue;
            };
            if r != rank {
                for w in 0..s {
                    rows.swap(r * s + w, rank * s + w);
                }
            }
            let pivot: Vec<u64> = rows[rank * s..(rank + 1) * s].to_vec();
            for rr in 0..n {
                if rr != rank && bits::get(&rows[rr * s..(rr + 1) * s], c) {
                    bits::xor_into(&mut rows[rr * s..(rr + 1) * s], &pivot);
                }
            }
            pivot_cols.push(c);
        }
        let f = free?;
        let mut witness = vec![0u64; s];
        bits::set(&mut witness, f, true);
        for (r, &p) in pivot_cols.iter().enumerate() {
            if bits::get(&rows[r * s..(r + 1) * s], f) {
                bits::set(&mut witness, p, true);
            }
        }
        Some(self.set_of_mask(&witness))
    }
}

/// Forward elimination on `cols.len()` packed rows restricted to `cols`;
/// true iff every column finds a pivot.
fn full_rank(rows: &mut [u64], stride: usize, cols: &[usize]) -> bool {
    let k = cols.len();
    for (pos, &c) in cols.iter().enumerate() {
        let Some(r) = (pos..k).find(|&r| bits::get(&rows[r * stride..(r + 1) * stride], c)) else {
            return false;
        };
        if r != pos {
            for w in 0..stride {
                rows.swap(r * stride + w, pos * stride + w);
            }
        }
        let (head, tail) = rows.split_at_mut((pos + 1) * stride);
        let pivot = &head[pos * stride..];
        for row in tail.chunks_exact_mut(stride) {
            if bits::get(row, c) {
                bits::xor_into(row, pivot);
            }
        }
    }
    true
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {:?}", self.labels)?;
        write!(f, "{self}")
    }
}

/// One line per row, entries as `0`/`1` separated by spaces.
impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order() {
            let line: Vec<&str> = (0..self.order())
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
