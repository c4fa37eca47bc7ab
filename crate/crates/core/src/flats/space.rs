//! Canonical subspaces and flats of F_2^n.

use std::fmt;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};

/// Largest ambient dimension for subspaces and flats.
pub const MAX_AMBIENT_DIM: u32 = 16;

pub(crate) type Basis = ArrayVec<u32, { MAX_AMBIENT_DIM as usize }>;

#[inline]
fn lead(v: u32) -> u32 {
    31 - v.leading_zeros()
}

/// Inserts `v` into a fully reduced echelon basis; returns false if `v` was
/// already in the span. Rows stay sorted by leading bit, descending.
pub(crate) fn insert_reduced(rows: &mut Basis, v: u32) -> bool {
    let v = reduce_by(rows, v);
    if v == 0 {
        return false;
    }
    let p = lead(v);
    for row in rows.iter_mut() {
        if *row >> p & 1 == 1 {
            *row ^= v;
        }
    }
    let pos = rows.iter().position(|&r| lead(r) < p).unwrap_or(rows.len());
    rows.insert(pos, v);
    true
}

/// Clears every pivot bit of `v` using the rows of a reduced echelon basis.
#[inline]
pub(crate) fn reduce_by(rows: &[u32], mut v: u32) -> u32 {
    for &row in rows {
        if v >> lead(row) & 1 == 1 {
            v ^= row;
        }
    }
    v
}

/// A linear subspace of F_2^n in reduced row-echelon form.
///
/// Each basis row's leading bit is its highest set bit, rows are sorted by
/// leading bit in strictly decreasing order, and no row has a bit set at
/// another row's leading position. Equal subspaces therefore have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u32,
    basis: Basis,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, basis={:x?})", self.n, self.basis.as_slice())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex_list(&self.basis))
    }
}

pub(crate) fn hex_list(vs: &[u32]) -> String {
    vs.iter().map(|v| format!("{v:x}")).collect::<Vec<_>>().join(",")
}

pub(crate) fn check_ambient(n: u32) -> Result<()> {
    if n > MAX_AMBIENT_DIM {
        Err(Error::InvalidArgument(format!("ambient dimension {n} > {MAX_AMBIENT_DIM}")))
    } else {
        Ok(())
    }
}

impl Subspace {
    /// The zero subspace of F_2^n.
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_AMBIENT_DIM);
        Self { n, basis: Basis::new() }
    }

    /// All of F_2^n.
    pub fn full(n: u32) -> Self {
        assert!(n <= MAX_AMBIENT_DIM);
        Self { n, basis: (0..n).rev().map(|i| 1u32 << i).collect() }
    }

    /// The span of arbitrary vectors (dependent ones are dropped).
    pub fn span(n: u32, vectors: &[u32]) -> Result<Self> {
        check_ambient(n)?;
        let mut basis = Basis::new();
        for &v in vectors {
            if v >> n != 0 {
                return Err(Error::ValueOutOfRange { value: v, bits: n });
            }
            insert_reduced(&mut basis, v);
        }
        Ok(Self { n, basis })
    }

    /// The span of `vectors`, which must be linearly independent.
    pub fn from_independent(n: u32, vectors: &[u32]) -> Result<Self> {
        let s = Self::span(n, vectors)?;
        if s.dim() as usize != vectors.len() {
            return Err(Error::InvalidArgument(format!(
                "vectors {} are linearly dependent",
                hex_list(vectors)
            )));
        }
        Ok(s)
    }

    /// Wraps rows already in canonical form (used by enumeration).
    pub(crate) fn from_canonical(n: u32, basis: Basis) -> Self {
        debug_assert!(Self::span(n, &basis).map(|s| s.basis == basis).unwrap_or(false));
        Self { n, basis }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    /// Canonical basis rows, leading bits descending.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// Mask of the leading-bit positions.
    pub fn pivot_mask(&self) -> u32 {
        self.basis.iter().fold(0, |m, &r| m | 1 << lead(r))
    }

    /// `v` with all pivot bits cleared: the least element of `v + self`.
    pub fn reduce(&self, v: u32) -> u32 {
        reduce_by(&self.basis, v)
    }

    pub fn contains(&self, v: u32) -> bool {
        v >> self.n == 0 && self.reduce(v) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&v| other.contains(v))
    }

    /// All `2^dim` points, in Gray-code order starting from 0.
    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        gray_points(&self.basis, 0)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        let mut basis = self.basis.clone();
        for &v in &other.basis {
            insert_reduced(&mut basis, v);
        }
        Subspace { n: self.n, basis }
    }

    /// `dim(self ∩ other)`, via `dim U + dim W - dim(U + W)`.
    pub fn intersection_dim(&self, other: &Subspace) -> u32 {
        assert_eq!(self.n, other.n);
        let mut basis = self.basis.clone();
        let mut grown = 0;
        for &v in &other.basis {
            if insert_reduced(&mut basis, v) {
                grown += 1;
            }
        }
        other.dim() - grown
    }

    /// `self ∩ other`, by the Zassenhaus sum-intersection algorithm.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut rows: Vec<u64> = self
            .basis
            .iter()
            .map(|&u| (u as u64) << n | u as u64)
            .chain(other.basis.iter().map(|&w| (w as u64) << n))
            .collect();
        // echelonize on the full 2n-bit words
        let mut pivot_row = 0;
        for bit in (0..2 * n).rev() {
            let Some(i) = (pivot_row..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(pivot_row, i);
            let p = rows[pivot_row];
            for (j, r) in rows.iter_mut().enumerate() {
                if j != pivot_row && *r >> bit & 1 == 1 {
                    *r ^= p;
                }
            }
            pivot_row += 1;
        }
        let low = (1u64 << n) - 1;
        let vecs: Vec<u32> = rows[..pivot_row]
            .iter()
            .filter(|&&r| r >> n == 0)
            .map(|&r| (r & low) as u32)
            .collect();
        Subspace::span(n, &vecs).expect("intersection lies in the ambient space")
    }
}

/// Points `start + span(basis)` in Gray-code order.
pub(crate) fn gray_points(basis: &[u32], start: u32) -> impl Iterator<Item = u32> + '_ {
    let count = 1u32 << basis.len();
    let mut p = start;
    (0..count).map(move |i| {
        if i > 0 {
            p ^= basis[i.trailing_zeros() as usize];
        }
        p
    })
}

/// XOR of `table` over `start + span(basis)`, walking the span in Gray-code order.
#[inline]
pub(crate) fn gray_sum(table: &[u32], basis: &[u32], start: u32) -> u32 {
    let mut p = start;
    let mut acc = table[p as usize];
    for i in 1..1u32 << basis.len() {
        p ^= basis[i.trailing_zeros() as usize];
        acc ^= table[p as usize];
    }
    acc
}

/// An affine subspace `rep + direction`, with `rep` the least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    direction: Subspace,
    rep: u32,
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat({:?}, rep={:#x})", self.direction, self.rep)
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis={} rep={:x}", self.direction, self.rep)
    }
}

impl Flat {
    /// The coset of `direction` through `point`.
    pub fn new(direction: Subspace, point: u32) -> Result<Self> {
        if point >> direction.n() != 0 {
            return Err(Error::ValueOutOfRange { value: point, bits: direction.n() });
        }
        let rep = direction.reduce(point);
        Ok(Self { direction, rep })
    }

    /// A single point as a 0-flat.
    pub fn point(n: u32, p: u32) -> Result<Self> {
        check_ambient(n)?;
        Self::new(Subspace::zero(n), p)
    }

    pub(crate) fn from_canonical(direction: Subspace, rep: u32) -> Self {
        debug_assert_eq!(direction.reduce(rep), rep);
        Self { direction, rep }
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn n(&self) -> u32 {
        self.direction.n()
    }

    pub fn dim(&self) -> u32 {
        self.direction.dim()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.direction.contains(x ^ self.rep)
    }

    /// All `2^dim` points, Gray-code order from `rep`.
    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        gray_points(self.direction.basis(), self.rep)
    }

    /// The intersection of two flats, `None` if disjoint.
    pub fn intersection(&self, other: &Flat) -> Option<Flat> {
        assert_eq!(self.n(), other.n());
        let delta = self.rep ^ other.rep;
        let sum = self.direction.sum(&other.direction);
        if !sum.contains(delta) {
            return None;
        }
        // write delta = u + w with u in self.direction, w in other.direction
        let (small, large, base) = if self.dim() <= other.dim() {
            (&self.direction, &other.direction, self.rep)
        } else {
            (&other.direction, &self.direction, other.rep)
        };
        let u = small
            .points()
            .find(|&u| large.contains(delta ^ u))
            .expect("delta lies in the sum of the directions");
        let common = self.direction.intersection(&other.direction);
        Some(Flat::new(common, base ^ u).expect("point lies in the ambient space"))
    }
}
