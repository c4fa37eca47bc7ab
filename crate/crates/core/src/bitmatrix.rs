//! Dense bit matrices over F_2 with word-parallel Gaussian elimination.

use std::fmt;

use crate::error::{parse_err, Error, Result};

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Packed bit vector helpers over `&[u64]` words.
pub mod bits {
    #[inline]
    pub fn get(v: &[u64], i: usize) -> bool {
        v[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(v: &mut [u64], i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            v[i / 64] |= mask;
        } else {
            v[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn xor_into(dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
    }

    #[inline]
    pub fn weight(v: &[u64]) -> u32 {
        v.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn dot(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(v: &[u64]) -> Option<usize> {
        v.iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// A `rows x cols` matrix over F_2, row-major, each row packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {}", self.row_string(r))?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from packed rows of `cols` bits each.
    pub fn from_rows<R: AsRef<[u64]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(0, cols);
        for r in rows {
            m.push_row(r.as_ref());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks_exact(self.stride.max(1)).take(self.rows)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        bits::get(self.row(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        bits::set(self.row_mut(r), c, v)
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert!(row.len() >= self.stride, "row too short");
        let row = &row[..self.stride];
        if let Some(&last) = row.last() {
            let tail = self.cols % 64;
            assert!(tail == 0 || last >> tail == 0, "row has bits beyond column {}", self.cols);
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// `self * v` for a packed column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<bool> {
        self.iter_rows().map(|r| bits::dot(r, v)).collect()
    }

    /// True iff every row of `self` is orthogonal to every row of `other`,
    /// i.e. `self * other^T = 0`.
    pub fn rows_orthogonal_to(&self, other: &BitMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        self.iter_rows().all(|a| other.iter_rows().all(|b| !bits::dot(a, b)))
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    /// Zero rows are dropped, so `rows()` equals the rank afterwards.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut top = 0;
        let stride = self.stride;
        for c in 0..self.cols {
            let Some(p) = (top..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if p != top {
                for w in 0..stride {
                    self.data.swap(p * stride + w, top * stride + w);
                }
            }
            let pivot_row = self.row(top).to_vec();
            for r in 0..self.rows {
                if r != top && self.get(r, c) {
                    bits::xor_into(self.row_mut(r), &pivot_row);
                }
            }
            pivots.push(c);
            top += 1;
            if top == self.rows {
                break;
            }
        }
        self.rows = top;
        self.data.truncate(top * stride);
        pivots
    }

    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().0.rows()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per row.
    pub fn kernel(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = BitMatrix::zeros(0, self.cols);
        let mut v = vec![0u64; self.stride];
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            v.iter_mut().for_each(|w| *w = 0);
            bits::set(&mut v, free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, free) {
                    bits::set(&mut v, p, true);
                }
            }
            out.push_row(&v);
        }
        out
    }

    /// True iff `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u64]) -> bool {
        let (r, pivots) = self.rref();
        let mut v = v[..self.stride].to_vec();
        for (i, &p) in pivots.iter().enumerate() {
            if bits::get(&v, p) {
                bits::xor_into(&mut v, r.row(i));
            }
        }
        bits::is_zero(&v)
    }

    /// Visits the row combinations whose Gray-code indices lie in `range`
    /// (index `i` selects the rows set in `i ^ (i >> 1)`), one XOR per step.
    pub fn for_each_codeword_in(&self, range: std::ops::Range<u64>, mut f: impl FnMut(&[u64])) {
        assert!(self.rows < 64, "too many rows for Gray-code enumeration");
        if range.is_empty() {
            return;
        }
        let mut cw = vec![0u64; self.stride];
        let g = range.start ^ (range.start >> 1);
        for r in (0..self.rows).filter(|&r| g >> r & 1 == 1) {
            bits::xor_into(&mut cw, self.row(r));
        }
        f(&cw);
        for i in range.start + 1..range.end {
            bits::xor_into(&mut cw, self.row(i.trailing_zeros() as usize));
            f(&cw);
        }
    }

    pub fn row_string(&self, r: usize) -> String {
        (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect()
    }

    /// Text form: `<rows> <cols>` then one 0/1 string per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            s.push_str(&self.row_string(r));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(ln + 1, format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(ln + 1, "expected `<rows> <cols>`"));
        };
        let mut m = BitMatrix::zeros(0, cols);
        let mut buf = vec![0u64; words_for(cols)];
        for (ln, line) in lines {
            let line = line.trim();
            if line.len() != cols {
                return Err(parse_err(ln + 1, format!("row has {} entries, expected {cols}", line.len())));
            }
            buf.iter_mut().for_each(|w| *w = 0);
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits::set(&mut buf, c, true),
                    _ => return Err(parse_err(ln + 1, format!("unexpected character {ch:?}"))),
                }
            }
            m.push_row(&buf);
        }
        if m.rows() != rows {
            return Err(Error::DimensionMismatch(format!("header says {rows} rows, found {}", m.rows())));
        }
        Ok(m)
    }
}
