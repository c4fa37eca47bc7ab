//! Reed-Muller codes RM(r,n) and their low-weight codewords.

use crate::bitmatrix::{bits, words_for, BitMatrix};
use crate::error::{Error, Result};
use crate::flats::{Flat, MAX_AMBIENT_DIM};

fn check_rn(r: u32, n: u32) -> Result<()> {
    if n > MAX_AMBIENT_DIM {
        return Err(Error::DegreeOutOfRange(n));
    }
    if r > n {
        return Err(Error::InvalidArgument(format!("RM order r={r} exceeds n={n}")));
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// `dim RM(r,n) = sum_{i<=r} C(n,i)`.
pub fn rm_dimension(r: u32, n: u32) -> usize {
    (0..=r.min(n)).map(|i| binomial(n, i)).sum()
}

/// Monomial supports of degree at most `r`, ordered by weight then as integers.
pub fn monomial_order(r: u32, n: u32) -> Vec<u32> {
    let mut s: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() <= r).collect();
    s.sort_by_key(|&m| (m.count_ones(), m));
    s
}

/// Generator matrix of RM(r,n): one row per monomial, columns are the
/// points of F_2^n in integer order.
pub fn rm_generator(r: u32, n: u32) -> Result<BitMatrix> {
    check_rn(r, n)?;
    let len = 1usize << n;
    let mut g = BitMatrix::zeros(0, len);
    let mut row = vec![0u64; words_for(len)];
    for s in monomial_order(r, n) {
        row.iter_mut().for_each(|w| *w = 0);
        for x in 0..len as u32 {
            if x & s == s {
                bits::set(&mut row, x as usize, true);
            }
        }
        g.push_row(&row);
    }
    Ok(g)
}

/// Parity-check matrix of RM(r,n), i.e. the generator of RM(n-r-1,n).
pub fn rm_parity_check(r: u32, n: u32) -> Result<BitMatrix> {
    check_rn(r, n)?;
    if r == n {
        return Err(Error::InvalidArgument(format!("RM({n},{n}) is the full space; no parity check")));
    }
    rm_generator(n - r - 1, n)
}

/// Indicator vector of a flat over the 2^n points.
pub fn incidence_vector(a: &Flat) -> Vec<u64> {
    let len = 1usize << a.n();
    let mut v = vec![0u64; words_for(len)];
    for x in a.points() {
        bits::set(&mut v, x as usize, true);
    }
    v
}

/// XOR of the incidence vectors of two equal-dimension flats meeting in a
/// flat of dimension two less; such vectors have weight `3 * 2^(dim-1)`.
pub fn second_weight_codeword(a1: &Flat, a2: &Flat) -> Result<Vec<u64>> {
    if a1.n() != a2.n() || a1.dim() != a2.dim() || a1.dim() < 2 {
        return Err(Error::InvalidArgument(
            "flats must share ambient space and dimension (at least 2)".into(),
        ));
    }
    match a1.intersection(a2) {
        Some(i) if i.dim() + 2 == a1.dim() => {}
        other => {
            return Err(Error::InvalidArgument(format!(
                "flats must meet in dimension {}, got {}",
                a1.dim() - 2,
                other.map_or("empty".to_string(), |i| i.dim().to_string())
            )))
        }
    }
    let mut v = incidence_vector(a1);
    bits::xor_into(&mut v, &incidence_vector(a2));
    Ok(v)
}

/// A binary linear code given by a generator matrix, a parity-check
/// matrix, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generator: Option<BitMatrix>,
    parity_check: Option<BitMatrix>,
}

impl BinaryCode {
    pub fn new(generator: Option<BitMatrix>, parity_check: Option<BitMatrix>) -> Result<Self> {
        let length = match (&generator, &parity_check) {
            (None, None) => {
                return Err(Error::InvalidArgument("a code needs a generator or parity check".into()))
            }
            (Some(g), None) => g.cols(),
            (None, Some(h)) => h.cols(),
            (Some(g), Some(h)) => {
                if g.cols() != h.cols() {
                    return Err(Error::DimensionMismatch(format!(
                        "generator has {} columns, parity check {}",
                        g.cols(),
                        h.cols()
                    )));
                }
                if !g.rows_orthogonal_to(h) || g.rank() + h.rank() != g.cols() {
                    return Err(Error::DimensionMismatch(
                        "generator and parity check are not dual".into(),
                    ));
                }
                g.cols()
            }
        };
        Ok(Self { length, generator, parity_check })
    }

    pub fn from_generator(g: BitMatrix) -> Self {
        Self { length: g.cols(), generator: Some(g), parity_check: None }
    }

    pub fn from_parity_check(h: BitMatrix) -> Self {
        Self { length: h.cols(), generator: None, parity_check: Some(h) }
    }

    pub fn reed_muller(r: u32, n: u32) -> Result<Self> {
        let g = rm_generator(r, n)?;
        if r == n {
            return Ok(Self::from_generator(g));
        }
        Ok(Self { length: g.cols(), generator: Some(g), parity_check: Some(rm_parity_check(r, n)?) })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// A generator matrix with independent rows (derived from the parity
    /// check when not stored).
    pub fn generator(&self) -> BitMatrix {
        match (&self.generator, &self.parity_check) {
            (Some(g), _) => g.clone(),
            (None, Some(h)) => h.kernel(),
            (None, None) => unreachable!(),
        }
    }

    pub fn parity_check(&self) -> BitMatrix {
        match (&self.parity_check, &self.generator) {
            (Some(h), _) => h.clone(),
            (None, Some(g)) => g.kernel(),
            (None, None) => unreachable!(),
        }
    }

    pub fn stored_generator(&self) -> Option<&BitMatrix> {
        self.generator.as_ref()
    }

    pub fn stored_parity_check(&self) -> Option<&BitMatrix> {
        self.parity_check.as_ref()
    }

    pub fn dimension(&self) -> usize {
        match (&self.generator, &self.parity_check) {
            (Some(g), _) => g.rank(),
            (None, Some(h)) => self.length - h.rank(),
            (None, None) => unreachable!(),
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        match (&self.parity_check, &self.generator) {
            (Some(h), _) => h.mul_vec(v).iter().all(|b| !b),
            (None, Some(g)) => g.row_space_contains(v),
            (None, None) => unreachable!(),
        }
    }

    /// True iff every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.length == other.length && self.generator().iter_rows().all(|r| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flats::{enumerate_flats, Subspace};
    use std::collections::BTreeSet;

    #[test]
    fn generator_shapes() {
        let g0 = rm_generator(0, 4).unwrap();
        assert_eq!((g0.rows(), g0.cols()), (1, 16));
        assert_eq!(bits::weight(g0.row(0)), 16);
        assert_eq!(rm_generator(2, 5).unwrap().rows(), 16);
        assert_eq!(rm_generator(2, 6).unwrap().rows(), 22);
        assert_eq!(rm_parity_check(2, 5).unwrap().rows(), 16);
        assert_eq!(rm_parity_check(2, 6).unwrap().rows(), 42);
        let h = rm_parity_check(4, 5).unwrap();
        assert_eq!(h.rows(), 1);
        assert_eq!(bits::weight(h.row(0)), 32);
        assert!(rm_generator(6, 5).is_err());
        assert!(rm_parity_check(5, 5).is_err());
    }

    #[test]
    fn row_order_is_weight_then_integer() {
        assert_eq!(monomial_order(2, 3), vec![0, 1, 2, 4, 3, 5, 6]);
        // Row for x_0 is the indicator of odd points.
        let g = rm_generator(1, 3).unwrap();
        assert_eq!(g.row_string(1), "01010101");
        assert_eq!(g.row_string(3), "00001111");
    }

    #[test]
    fn duality_and_dimensions() {
        for n in 1..=10 {
            for r in 0..n {
                let g = rm_generator(r, n).unwrap();
                assert_eq!(g.rank(), g.rows());
                assert_eq!(rm_dimension(r, n) + rm_dimension(n - r - 1, n), 1 << n);
                if n <= 8 {
                    let h = rm_parity_check(r, n).unwrap();
                    assert!(g.rows_orthogonal_to(&h), "r={r} n={n}");
                }
            }
        }
        assert!(BinaryCode::reed_muller(2, 5).is_ok());
        let bogus = BinaryCode::new(Some(rm_generator(1, 5).unwrap()), Some(rm_generator(1, 5).unwrap()));
        assert!(bogus.is_err());
    }

    #[test]
    fn incidence_vectors_are_codewords() {
        let whole = Flat::new(Subspace::full(4), 0).unwrap();
        assert_eq!(bits::weight(&incidence_vector(&whole)), 16);
        let p = Flat::point(4, 9).unwrap();
        assert_eq!(bits::first_one(&incidence_vector(&p)), Some(9));
        for n in 2..=6u32 {
            for r in 2.min(n)..=n.saturating_sub(2) {
                let code = BinaryCode::reed_muller(r, n).unwrap();
                for a in enumerate_flats(n, n - r, u128::MAX).unwrap() {
                    let v = incidence_vector(&a);
                    assert_eq!(bits::weight(&v), 1 << (n - r));
                    assert!(code.contains(&v));
                }
            }
        }
    }

    #[test]
    fn second_weight_examples() {
        let a = |basis: &[u32], p| Flat::new(Subspace::span(5, basis).unwrap(), p).unwrap();
        let a1 = a(&[1, 2, 4], 0);
        let a2 = a(&[1, 8, 16], 2);
        let v = second_weight_codeword(&a1, &a2).unwrap();
        assert_eq!(bits::weight(&v), 12);
        assert!(BinaryCode::reed_muller(2, 5).unwrap().contains(&v));
        assert!(second_weight_codeword(&a1, &a1).is_err());
        // Disjoint parallel flats are rejected.
        assert!(second_weight_codeword(&a1, &a(&[1, 2, 4], 8)).is_err());

        let b = |basis: &[u32], p| Flat::new(Subspace::span(6, basis).unwrap(), p).unwrap();
        let v = second_weight_codeword(&b(&[1, 2, 4, 8], 0), &b(&[1, 2, 16, 32], 4)).unwrap();
        assert_eq!(bits::weight(&v), 24);
        assert!(BinaryCode::reed_muller(2, 6).unwrap().contains(&v));
    }

    /// Minimum distance 2^(n-r) and the minimum-weight codewords are exactly
    /// the incidence vectors of (n-r)-flats.
    #[test]
    fn min_weight_codewords_are_flats() {
        for (r, n) in [(2u32, 4u32), (2, 5), (3, 5), (2, 6), (1, 4), (1, 5)] {
            let g = rm_generator(r, n).unwrap();
            let w = 1u32 << (n - r);
            let mut min = u32::MAX;
            let mut found = BTreeSet::new();
            g.for_each_codeword_in(1..1u64 << g.rows(), |cw| {
                let wt = bits::weight(cw);
                min = min.min(wt);
                if wt == w {
                    found.insert(cw.to_vec());
                }
            });
            assert_eq!(min, w, "r={r} n={n}");
            let flats: BTreeSet<Vec<u64>> =
                enumerate_flats(n, n - r, u128::MAX).unwrap().map(|a| incidence_vector(&a)).collect();
            assert_eq!(found, flats, "r={r} n={n}");
        }
    }

    #[test]
    fn code_views_agree() {
        let code = BinaryCode::reed_muller(2, 6).unwrap();
        let from_h = BinaryCode::from_parity_check(code.parity_check());
        let from_g = BinaryCode::from_generator(code.generator());
        assert_eq!(from_h.dimension(), 22);
        assert_eq!(from_g.dimension(), 22);
        assert!(from_h.is_subcode_of(&from_g) && from_g.is_subcode_of(&from_h));
        assert!(BinaryCode::reed_muller(1, 6).unwrap().is_subcode_of(&code));
        assert!(!code.is_subcode_of(&BinaryCode::reed_muller(1, 6).unwrap()));
    }
}
