//! Ranked enumeration of k-subspaces and k-flats.
//!
//! Canonical order of k-subspaces: first by the mask of pivot positions
//! (ascending as an integer), then by the integer formed from the free
//! entries of the echelon rows. Free entries are numbered row by row from
//! the highest pivot down, lower bit positions first. Flats of a given
//! direction follow the order of their direction and then of their least
//! element, so the flat with index `s * 2^(n-k) + j` has direction `s` and
//! the `j`-th coset representative.

use num_bigint::BigUint;

use super::space::{check_ambient, Basis, Flat, Subspace};
use crate::error::{Error, Result};

/// Number of k-subspaces of F_2^n (the 2-Gaussian binomial), exactly.
pub fn gaussian_binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    let one = BigUint::from(1u32);
    for i in 0..k {
        num *= (BigUint::from(1u32) << (n - i)) - &one;
        den *= (BigUint::from(1u32) << (i + 1)) - &one;
    }
    num / den
}

/// Number of k-flats, `2^(n-k) [n k]`.
pub fn flat_count(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    gaussian_binomial(n, k) << (n - k)
}

pub(crate) fn to_u128(x: &BigUint) -> u128 {
    let digits = x.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as u128,
        2 => (digits[1] as u128) << 64 | digits[0] as u128,
        _ => u128::MAX,
    }
}

#[derive(Clone, Debug)]
struct PivotClass {
    mask: u32,
    /// pivot positions, descending
    pivots: Basis,
    /// (row, bit) for each free entry, in assignment-bit order
    free: Vec<(u8, u8)>,
    offset: u128,
}

impl PivotClass {
    fn count(&self) -> u128 {
        1u128 << self.free.len()
    }

    fn build(&self, assignment: u128) -> Basis {
        let mut rows: Basis = self.pivots.iter().map(|&p| 1u32 << p).collect();
        for (t, &(row, bit)) in self.free.iter().enumerate() {
            if assignment >> t & 1 == 1 {
                rows[row as usize] |= 1 << bit;
            }
        }
        rows
    }
}

/// The set of k-subspaces of F_2^n with ranking and unranking.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    n: u32,
    k: u32,
    classes: Vec<PivotClass>,
    total: u128,
}

impl Grassmannian {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        check_ambient(n)?;
        if k > n {
            return Err(Error::InvalidArgument(format!("k={k} exceeds n={n}")));
        }
        let mut classes = Vec::new();
        let mut offset = 0u128;
        // colex order of k-subsets == ascending mask order
        let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() == k).collect();
        masks.sort_unstable();
        for mask in masks {
            let pivots: Basis = (0..n).rev().filter(|&b| mask >> b & 1 == 1).collect();
            let mut free = Vec::new();
            for (row, &p) in pivots.iter().enumerate() {
                for bit in 0..p {
                    if mask >> bit & 1 == 0 {
                        free.push((row as u8, bit as u8));
                    }
                }
            }
            let class = PivotClass { mask, pivots, free, offset };
            offset += class.count();
            classes.push(class);
        }
        Ok(Self { n, k, classes, total: offset })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of k-subspaces.
    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn class_of(&self, index: u128) -> usize {
        self.classes.partition_point(|c| c.offset + c.count() <= index)
    }

    /// The subspace with the given canonical index.
    pub fn unrank(&self, index: u128) -> Subspace {
        assert!(index < self.total, "index {index} out of range");
        let c = &self.classes[self.class_of(index)];
        Subspace::from_canonical(self.n, c.build(index - c.offset))
    }

    /// Canonical index of a k-subspace of the same ambient space.
    pub fn rank(&self, s: &Subspace) -> Result<u128> {
        if s.n() != self.n || s.dim() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "subspace of dim {} in F_2^{}, expected dim {} in F_2^{}",
                s.dim(),
                s.n(),
                self.k,
                self.n
            )));
        }
        let mask = s.pivot_mask();
        let ci = self.classes.binary_search_by_key(&mask, |c| c.mask).expect("valid pivot mask");
        let c = &self.classes[ci];
        let mut a = 0u128;
        for (t, &(row, bit)) in c.free.iter().enumerate() {
            if s.basis()[row as usize] >> bit & 1 == 1 {
                a |= 1 << t;
            }
        }
        Ok(c.offset + a)
    }

    /// Calls `f(index, basis)` for each subspace with index in `range`, in
    /// canonical order, until `f` returns `Some`.
    pub fn find_map_in_range<T>(
        &self,
        range: std::ops::Range<u128>,
        mut f: impl FnMut(u128, &[u32]) -> Option<T>,
    ) -> Option<T> {
        let end = range.end.min(self.total);
        let mut index = range.start;
        while index < end {
            let ci = self.class_of(index);
            let c = &self.classes[ci];
            let stop = end.min(c.offset + c.count());
            for a in index - c.offset..stop - c.offset {
                let rows = c.build(a);
                if let Some(t) = f(c.offset + a, &rows) {
                    return Some(t);
                }
            }
            index = stop;
        }
        None
    }

    /// Iterates every subspace in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        self.classes.iter().flat_map(move |c| {
            (0..c.count()).map(move |a| Subspace::from_canonical(self.n, c.build(a)))
        })
    }

    /// Splits `[0, len)` into contiguous shards for parallel work.
    pub(crate) fn shards(&self, jobs: usize) -> Vec<std::ops::Range<u128>> {
        let pieces = (jobs.max(1) * 16) as u128;
        let size = (self.total / pieces).max(64);
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.total {
            let end = (start + size).min(self.total);
            out.push(start..end);
            start = end;
        }
        out
    }
}

/// Coset representatives of a subspace with the given pivot mask, ascending.
pub(crate) fn coset_reps(n: u32, pivot_mask: u32) -> impl Iterator<Item = u32> {
    let free = ((1u64 << n) - 1) as u32 & !pivot_mask;
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        let succ = (cur | !free).wrapping_add(1) & free;
        next = if succ == 0 { None } else { Some(succ) };
        Some(cur)
    })
}

/// Iterates all k-subspaces of F_2^n, refusing more than `cap` of them.
pub fn enumerate_subspaces(n: u32, k: u32, cap: u128) -> Result<impl Iterator<Item = Subspace>> {
    let g = Grassmannian::new(n, k)?;
    if g.len() > cap {
        return Err(Error::CapExceeded { what: "subspaces", count: g.len(), cap });
    }
    let classes = g.classes;
    Ok(classes.into_iter().flat_map(move |c| {
        (0..c.count()).map(move |a| Subspace::from_canonical(n, c.build(a)))
    }))
}

/// Iterates all k-flats of F_2^n, refusing more than `cap` of them.
pub fn enumerate_flats(n: u32, k: u32, cap: u128) -> Result<impl Iterator<Item = Flat>> {
    check_ambient(n)?;
    let count = to_u128(&flat_count(n, k));
    if count > cap {
        return Err(Error::CapExceeded { what: "flats", count, cap });
    }
    Ok(enumerate_subspaces(n, k, u128::MAX)?.flat_map(move |s| {
        let mask = s.pivot_mask();
        coset_reps(n, mask).map(move |r| Flat::from_canonical(s.clone(), r))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute-force subspace enumeration: close every k-tuple of vectors
    /// under XOR and deduplicate the resulting point sets.
    fn brute_subspaces(n: u32, k: u32) -> HashSet<Vec<u32>> {
        fn rec(n: u32, k: u32, start: u32, span: Vec<u32>, out: &mut HashSet<Vec<u32>>) {
            if span.len() == 1 << k {
                let mut s = span;
                s.sort();
                out.insert(s);
                return;
            }
            for v in start..1 << n {
                if span.contains(&v) {
                    continue;
                }
                let mut next = span.clone();
                next.extend(span.iter().map(|&u| u ^ v));
                rec(n, k, v + 1, next, out);
            }
        }
        let mut out = HashSet::new();
        rec(n, k, 1, vec![0], &mut out);
        out
    }

    #[test]
    fn gaussian_binomial_examples() {
        for n in 0..12 {
            assert_eq!(gaussian_binomial(n, 0), BigUint::from(1u32));
            if n > 0 {
                assert_eq!(gaussian_binomial(n, 1), BigUint::from((1u64 << n) - 1));
            }
        }
        assert_eq!(gaussian_binomial(6, 3), BigUint::from(1395u32));
        assert_eq!(gaussian_binomial(4, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(5, 3), BigUint::from(155u32));
        assert_eq!(gaussian_binomial(7, 3), BigUint::from(11811u32));
        assert_eq!(brute_subspaces(6, 3).len(), 1395);
        assert_eq!(brute_subspaces(4, 2).len(), 35);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=5 {
            for k in 0..=n {
                let ours: HashSet<Vec<u32>> = enumerate_subspaces(n, k, u128::MAX)
                    .unwrap()
                    .map(|s| {
                        let mut p: Vec<u32> = s.points().collect();
                        p.sort();
                        p
                    })
                    .collect();
                assert_eq!(ours, brute_subspaces(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn counts_match_closed_form() {
        for n in 0..=10 {
            for k in 0..=n {
                let g = Grassmannian::new(n, k).unwrap();
                assert_eq!(BigUint::from(g.len()), gaussian_binomial(n, k));
                if n <= 8 {
                    assert_eq!(g.iter().count() as u128, g.len());
                    let flats = enumerate_flats(n, k, u128::MAX).unwrap().count();
                    assert_eq!(BigUint::from(flats), flat_count(n, k), "n={n} k={k}");
                }
            }
        }
        assert_eq!(enumerate_flats(5, 3, u128::MAX).unwrap().count(), 620);
        assert_eq!(enumerate_flats(4, 2, u128::MAX).unwrap().count(), 140);
        assert_eq!(enumerate_flats(6, 6, u128::MAX).unwrap().count(), 1);
        let zero: Vec<_> = enumerate_subspaces(7, 0, 10).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(7)]);
    }

    #[test]
    fn rank_unrank_and_canonicity() {
        for (n, k) in [(4, 2), (5, 3), (6, 3), (7, 2)] {
            let g = Grassmannian::new(n, k).unwrap();
            for (i, s) in g.iter().enumerate() {
                assert_eq!(g.rank(&s).unwrap(), i as u128);
                assert_eq!(g.unrank(i as u128), s);
                // re-canonicalizing a scrambled basis reproduces the stored rows
                let b = s.basis();
                let scrambled: Vec<u32> =
                    (0..b.len()).map(|j| b[j] ^ if j + 1 < b.len() { b[j + 1] } else { 0 }).collect();
                assert_eq!(Subspace::span(n, &scrambled).unwrap(), s);
            }
        }
    }

    #[test]
    fn range_scan_matches_iteration() {
        let g = Grassmannian::new(6, 3).unwrap();
        let all: Vec<Subspace> = g.iter().collect();
        let mut seen = Vec::new();
        for r in g.shards(3) {
            g.find_map_in_range(r, |i, b| {
                assert_eq!(all[i as usize].basis(), b);
                seen.push(i);
                None::<()>
            });
        }
        assert_eq!(seen, (0..1395).collect::<Vec<_>>());
    }

    #[test]
    fn flats_are_distinct_and_canonical() {
        let flats: Vec<Flat> = enumerate_flats(5, 2, u128::MAX).unwrap().collect();
        let sets: HashSet<Vec<u32>> = flats
            .iter()
            .map(|f| {
                let mut p: Vec<u32> = f.points().collect();
                p.sort();
                assert_eq!(p[0], f.rep());
                p
            })
            .collect();
        assert_eq!(sets.len(), flats.len());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_flats(8, 4, 1000),
            Err(Error::CapExceeded { what: "flats", .. })
        ));
        assert!(matches!(
            enumerate_subspaces(6, 3, 1394),
            Err(Error::CapExceeded { count: 1395, .. })
        ));
    }
}
