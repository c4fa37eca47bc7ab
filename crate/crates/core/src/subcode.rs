//! The subcode C_F of RM(r,n) defined by an (n-r)th-order sum-free function,
//! the inverse extraction, and minimum-distance computation/certification.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::bitmatrix::{bits, words_for, BitMatrix};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::flats::{find_vanishing_flat, gray_sum, Flat, Grassmannian, Subspace};
use crate::rmcode::{incidence_vector, rm_dimension, rm_parity_check, second_weight_codeword, BinaryCode};
use crate::vecfun::VectorialFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    BuiltFromFunction,
    ExtractedFromCode,
}

/// A subcode of RM(r,n) together with the (n,m)-function defining it.
#[derive(Clone, Debug)]
pub struct SubcodeBundle {
    pub r: u32,
    pub n: u32,
    pub m: u32,
    pub code: BinaryCode,
    pub function: VectorialFunction,
    pub provenance: Provenance,
}

impl SubcodeBundle {
    /// Codimension zero: the code is RM(r,n) itself.
    pub fn is_trivial(&self) -> bool {
        self.m == 0
    }

    /// The expected minimum distance `3 * 2^(n-r-1)`.
    pub fn designed_distance(&self) -> u32 {
        3 << (self.n - self.r - 1)
    }
}

/// The m x 2^n matrix whose column x is F(x) (row i = output bit i).
pub fn value_matrix(f: &VectorialFunction) -> BitMatrix {
    let len = 1usize << f.n();
    let mut m = BitMatrix::zeros(f.m() as usize, len);
    for (x, &y) in f.table().iter().enumerate() {
        for i in 0..f.m() {
            if y >> i & 1 == 1 {
                m.set(i as usize, x, true);
            }
        }
    }
    m
}

/// Options for [`build_subcode`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Skip the sum-freedom and non-degeneracy checks.
    pub trust: bool,
}

fn check_r(r: u32, n: u32) -> Result<()> {
    if r < 2 || r + 2 > n {
        return Err(Error::InvalidArgument(format!("need 2 <= r <= n-2, got r={r}, n={n}")));
    }
    Ok(())
}

/// Builds C_F with parity check `[rm_parity_check(r,n); M_F]`.
pub fn build_subcode(
    f: &VectorialFunction,
    r: u32,
    opts: BuildOptions,
    cfg: &RunConfig,
) -> Result<SubcodeBundle> {
    let n = f.n();
    check_r(r, n)?;
    let k = n - r;
    if !opts.trust {
        if let Some(flat) = find_vanishing_flat(f, k, cfg)? {
            return Err(Error::NotSumFree { k, flat: flat.to_string() });
        }
        if let Some((v, d)) = f.low_degree_component(k) {
            let degree = d.map_or("-inf".to_string(), |d| d.to_string());
            return Err(Error::Degenerate { k, v, degree });
        }
    }
    let h = rm_parity_check(r, n)?.stack(&value_matrix(f));
    let g = h.kernel();
    let code = BinaryCode::new(Some(g), Some(h))?;
    Ok(SubcodeBundle { r, n, m: f.m(), code, function: f.clone(), provenance: Provenance::BuiltFromFunction })
}

/// Recovers an (n,m)-function from a subcode of RM(r,n) of codimension
/// `m <= n`: the code's parity-check rows that are independent of
/// RM(n-r-1,n) form M, and `F(v)` is column v of M.
pub fn extract_function(code: &BinaryCode, r: u32) -> Result<SubcodeBundle> {
    let len = code.length();
    if !len.is_power_of_two() || len < 2 {
        return Err(Error::DimensionMismatch(format!("code length {len} is not 2^n")));
    }
    let n = len.trailing_zeros();
    if r >= n {
        return Err(Error::InvalidArgument(format!("need r < n, got r={r}, n={n}")));
    }
    let rm = BinaryCode::reed_muller(r, n)?;
    if !code.is_subcode_of(&rm) {
        return Err(Error::NotSubcode { r, n });
    }
    let m = (rm_dimension(r, n) - code.dimension()) as u32;
    if m > n {
        return Err(Error::CodimensionTooLarge { m, n });
    }

    let (mut span, mut pivots) = rm_parity_check(r, n)?.rref();
    let mut surplus = BitMatrix::zeros(0, len);
    for h in code.parity_check().iter_rows() {
        if surplus.rows() == m as usize {
            break;
        }
        let mut v = h.to_vec();
        for (i, &p) in pivots.iter().enumerate() {
            if bits::get(&v, p) {
                bits::xor_into(&mut v, span.row(i));
            }
        }
        if !bits::is_zero(&v) {
            surplus.push_row(h);
            let mut grown = BitMatrix::zeros(0, len);
            grown.push_row(&v);
            (span, pivots) = span.stack(&grown).rref();
        }
    }
    debug_assert_eq!(surplus.rows(), m as usize);
    let table = (0..len)
        .map(|x| (0..m).fold(0u32, |acc, i| acc | (surplus.get(i as usize, x) as u32) << i))
        .collect();
    let function = VectorialFunction::new(n, m, table)?;
    Ok(SubcodeBundle { r, n, m, code: code.clone(), function, provenance: Provenance::ExtractedFromCode })
}

/// Exact minimum distance by Gray-code enumeration of all nonzero
/// codewords. Refuses codes of dimension above `cfg.codeword_dim_cap`.
pub fn min_distance_exhaustive(code: &BinaryCode, cfg: &RunConfig) -> Result<u32> {
    let (g, _) = code.generator().rref();
    let dim = g.rows() as u32;
    if dim > cfg.codeword_dim_cap {
        return Err(Error::CapExceeded {
            what: "codeword enumeration dimension (use certificate mode)",
            count: dim as u128,
            cap: cfg.codeword_dim_cap as u128,
        });
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("zero code has no minimum distance".into()));
    }
    let total = 1u64 << dim;
    let pieces = (cfg.jobs as u64 * 16).min(total);
    let size = total.div_ceil(pieces);
    let shard = |i: u64| {
        let range = (i * size).max(1)..((i + 1) * size).min(total);
        let mut best = u32::MAX;
        g.for_each_codeword_in(range, |cw| best = best.min(bits::weight(cw)));
        best
    };
    cfg.install(|| (0..pieces).into_par_iter().map(shard).min().unwrap_or(u32::MAX))
}

/// Two-sided minimum-distance certificate for a subcode bundle.
#[derive(Clone, Debug)]
pub struct DistanceCertificate {
    pub n: u32,
    pub r: u32,
    /// `3 * 2^(n-r-1)` when the sum-free re-check passed.
    pub lower: Option<u32>,
    /// Weight of the explicit codeword below.
    pub upper: Option<u32>,
    /// Flats whose incidence vectors XOR to the upper-bound codeword.
    pub witness_flats: Option<(Flat, Flat)>,
    pub witness_codeword: Option<Vec<u64>>,
    /// Set when the defining function is not sum-free: its incidence vector
    /// is a codeword of weight `2^(n-r)`.
    pub vanishing_flat: Option<Flat>,
    /// Number of (n-r)-spaces whose witness was computed.
    pub inspected: u64,
}

impl DistanceCertificate {
    pub fn is_tight(&self) -> bool {
        self.lower.is_some() && self.lower == self.upper
    }
}

impl fmt::Display for DistanceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: Option<u32>| b.map_or("?".to_string(), |b| b.to_string());
        write!(f, "n={} r={} lower={} upper={}", self.n, self.r, show(self.lower), show(self.upper))?;
        if let Some((a1, a2)) = &self.witness_flats {
            write!(f, " A1=[{a1}] A2=[{a2}]")?;
        }
        if let Some(a) = &self.vanishing_flat {
            write!(f, " vanishing=[{a}]")?;
        }
        write!(f, " inspected={}", self.inspected)
    }
}

/// Spreads the low bits of `v` over the set bits of `mask` (ascending).
fn scatter(mut v: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 && v != 0 {
        let low = m & m.wrapping_neg();
        if v & 1 == 1 {
            out |= low;
        }
        v >>= 1;
        m ^= low;
    }
    out
}

/// Certifies `d(C_F) = 3 * 2^(n-r-1)`.
///
/// The lower bound is the sum-free re-check. The upper bound walks the
/// (k-2)-subspaces W (k = n-r) in canonical order and, for each, the
/// k-spaces containing W (one per 2-space of the quotient), grouping them
/// by witness. Two spaces with equal witness meeting exactly in W give a
/// codeword of weight `3 * 2^(k-1)`. Spaces through the origin suffice:
/// the witness coloring has at most 2^m - 1 < χ(J_2(n,k,k-2)) colors.
pub fn certify_min_distance(bundle: &SubcodeBundle, cfg: &RunConfig) -> Result<DistanceCertificate> {
    let (n, r) = (bundle.n, bundle.r);
    check_r(r, n)?;
    if bundle.m > n {
        return Err(Error::CodimensionTooLarge { m: bundle.m, n });
    }
    let f = &bundle.function;
    let k = n - r;
    let mut cert = DistanceCertificate {
        n,
        r,
        lower: None,
        upper: None,
        witness_flats: None,
        witness_codeword: None,
        vanishing_flat: None,
        inspected: 0,
    };

    match find_vanishing_flat(f, k, cfg)? {
        None => cert.lower = Some(3 << (k - 1)),
        Some(a) => {
            let v = incidence_vector(&a);
            if bundle.code.contains(&v) {
                cert.upper = Some(bits::weight(&v));
                cert.witness_codeword = Some(v);
            }
            cert.vanishing_flat = Some(a);
            return Ok(cert);
        }
    }

    let ws = Grassmannian::new(n, k - 2)?;
    let quotient = Grassmannian::new(r + 2, 2)?;
    let star = quotient.len() as u64;
    let budget_ws = (cfg.search_cap / star.max(1)) as u128;
    let limit = ws.len().min(budget_ws.max(1));
    let table = f.table();
    let full = ((1u64 << n) - 1) as u32;

    let search = |range: std::ops::Range<u128>| {
        let mut groups: HashMap<u32, Vec<[u32; 2]>> = HashMap::new();
        ws.find_map_in_range(range, |_, w| {
            groups.clear();
            let pivots = w.iter().fold(0u32, |m, &b| m | 1 << (31 - b.leading_zeros()));
            let free = full & !pivots;
            quotient.find_map_in_range(0..quotient.len(), |_, q| {
                let mut basis: Vec<u32> = w.to_vec();
                basis.extend(q.iter().map(|&x| scatter(x, free)));
                let omega = gray_sum(table, &basis, 0);
                let bucket = groups.entry(omega).or_default();
                // Quotient 2-spaces either meet trivially or share a line;
                // only the former give intersection exactly W.
                let line = [q[0], q[1], q[0] ^ q[1]];
                let hit = bucket.iter().find(|o| ![o[0], o[1], o[0] ^ o[1]].iter().any(|x| line.contains(x)));
                if let Some(other) = hit {
                    let mut b1 = w.to_vec();
                    b1.extend(other.iter().map(|&x| scatter(x, free)));
                    return Some((b1, basis));
                }
                bucket.push([q[0], q[1]]);
                None
            })
        })
    };
    let found = if cfg.jobs <= 1 {
        search(0..limit)
    } else {
        let shards: Vec<_> = ws.shards(cfg.jobs).into_iter().filter(|s| s.start < limit).map(|s| s.start..s.end.min(limit)).collect();
        cfg.install(|| shards.into_par_iter().find_map_first(search))?
    };

    cert.inspected = match &found {
        Some((b1, _)) => {
            let idx = ws.rank(&Subspace::span(n, &b1[..(k - 2) as usize])?)?;
            ((idx + 1) * star as u128) as u64
        }
        None => (limit * star as u128) as u64,
    };
    if let Some((b1, b2)) = found {
        let a1 = Flat::new(Subspace::span(n, &b1)?, 0)?;
        let a2 = Flat::new(Subspace::span(n, &b2)?, 0)?;
        let v = second_weight_codeword(&a1, &a2)?;
        let weight = bits::weight(&v);
        if weight == 3 << (k - 1) && bundle.code.contains(&v) {
            cert.upper = Some(weight);
            cert.witness_codeword = Some(v);
            cert.witness_flats = Some((a1, a2));
        }
    }
    Ok(cert)
}

/// Packs a codeword as a `0`/`1` string of the given length.
pub fn codeword_string(v: &[u64], len: usize) -> String {
    debug_assert!(v.len() >= words_for(len));
    (0..len).map(|i| if bits::get(v, i) { '1' } else { '0' }).collect()
}
