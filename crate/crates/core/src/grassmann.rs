//! Generalized Grassmann graphs J_2(n,k,t), colorings built from sum-free
//! witnesses, and their verification.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::flats::{find_vanishing_flat, gaussian_binomial, gray_sum, to_u128, Grassmannian, Subspace};
use crate::vecfun::VectorialFunction;

/// Parameters of J_2(n,k,t): k-spaces of F_2^n, adjacent when their
/// intersection has dimension at least t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannParams {
    pub n: u32,
    pub k: u32,
    pub t: u32,
}

impl GrassmannParams {
    pub fn new(n: u32, k: u32, t: u32) -> Result<Self> {
        if t > k || k >= n || n > crate::flats::MAX_AMBIENT_DIM {
            return Err(Error::InvalidArgument(format!("need 0 <= t <= k < n <= 16, got n={n} k={k} t={t}")));
        }
        Ok(Self { n, k, t })
    }

    /// The ordinary Grassmann graph J_2(n,k) (t = k-1).
    pub fn grassmann(n: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("J_2(n,k) needs k >= 1".into()));
        }
        Self::new(n, k, k - 1)
    }

    pub fn vertex_count(&self) -> BigUint {
        gaussian_binomial(self.n, self.k)
    }
}

impl fmt::Display for GrassmannParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J_2({},{},{})", self.n, self.k, self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Producer {
    Witness,
    Extended,
    External,
}

/// A color for every k-space, stored in canonical subspace order.
#[derive(Clone, Debug)]
pub struct ColoringCertificate {
    params: GrassmannParams,
    m: u32,
    colors: Vec<u32>,
    producer: Producer,
    source: Option<VectorialFunction>,
}

impl ColoringCertificate {
    /// Wraps colors given in canonical order (see [`Grassmannian::unrank`]).
    pub fn from_colors(params: GrassmannParams, m: u32, colors: Vec<u32>, producer: Producer) -> Result<Self> {
        let expected = to_u128(&params.vertex_count());
        if colors.len() as u128 != expected {
            return Err(Error::IncompleteAssignment(format!(
                "{} colors for {expected} vertices of {params}",
                colors.len()
            )));
        }
        let limit = if m >= 32 { u32::MAX } else { (1u32 << m) - 1 };
        if let Some(i) = colors.iter().position(|&c| c == 0 || c > limit) {
            return Err(Error::InvalidArgument(format!(
                "vertex {i} has color {:#x}, not a nonzero {m}-bit value",
                colors[i]
            )));
        }
        Ok(Self { params, m, colors, producer, source: None })
    }

    /// Builds a certificate from an explicit (subspace, color) list that
    /// must name every k-space exactly once.
    pub fn from_assignment(
        params: GrassmannParams,
        m: u32,
        assignment: impl IntoIterator<Item = (Subspace, u32)>,
    ) -> Result<Self> {
        let g = Grassmannian::new(params.n, params.k)?;
        let mut colors = vec![0u32; usize::try_from(g.len()).map_err(|_| Error::CapExceeded {
            what: "vertices",
            count: g.len(),
            cap: usize::MAX as u128,
        })?];
        for (s, c) in assignment {
            if s.n() != params.n || s.dim() != params.k {
                return Err(Error::DimensionMismatch(format!("subspace {s} is not a {}-space of F_2^{}", params.k, params.n)));
            }
            let i = g.rank(&s)? as usize;
            if colors[i] != 0 {
                return Err(Error::IncompleteAssignment(format!("subspace {s} assigned twice")));
            }
            if c == 0 {
                return Err(Error::InvalidArgument(format!("subspace {s} has color 0")));
            }
            colors[i] = c;
        }
        if let Some(i) = colors.iter().position(|&c| c == 0) {
            return Err(Error::IncompleteAssignment(format!("no color for {}", g.unrank(i as u128))));
        }
        Self::from_colors(params, m, colors, Producer::External)
    }

    pub fn params(&self) -> GrassmannParams {
        self.params
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn producer(&self) -> Producer {
        self.producer
    }

    /// Function the coloring was derived from, if any.
    pub fn source(&self) -> Option<&VectorialFunction> {
        self.source.as_ref()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of(&self, s: &Subspace) -> Result<u32> {
        let g = Grassmannian::new(self.params.n, self.params.k)?;
        Ok(self.colors[g.rank(s)? as usize])
    }

    /// (subspace, color) pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Subspace, u32)> + '_ {
        let g = Grassmannian::new(self.params.n, self.params.k).expect("validated params");
        let colors = &self.colors;
        (0..colors.len()).map(move |i| (g.unrank(i as u128), colors[i]))
    }

    pub fn colors_used(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Applies `f` to every color label (must stay nonzero and within m bits).
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        let colors = self.colors.iter().map(|&c| f(c)).collect();
        let mut out = Self::from_colors(self.params, self.m, colors, self.producer)?;
        out.source = self.source.clone();
        Ok(out)
    }
}

/// `dim(U ∩ W)`.
pub fn intersection_dim(u: &Subspace, w: &Subspace) -> Result<u32> {
    if u.n() != w.n() {
        return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", u.n(), w.n())));
    }
    Ok(u.intersection_dim(w))
}

fn check_vertex_cap(params: &GrassmannParams, cfg: &RunConfig) -> Result<Grassmannian> {
    let g = Grassmannian::new(params.n, params.k)?;
    cfg.check_flat_cap("Grassmann graph vertices", g.len())?;
    Ok(g)
}

/// Colors each k-space by its witness. Valid on J_2(n,k) when `F` is
/// kth-order sum-free, which is checked first.
pub fn witness_coloring(f: &VectorialFunction, k: u32, cfg: &RunConfig) -> Result<ColoringCertificate> {
    let params = GrassmannParams::grassmann(f.n(), k)?;
    if let Some(a) = find_vanishing_flat(f, k, cfg)? {
        return Err(Error::NotSumFree { k, flat: a.to_string() });
    }
    let g = check_vertex_cap(&params, cfg)?;
    let table = f.table();
    let mut colors = Vec::with_capacity(g.len() as usize);
    g.find_map_in_range(0..g.len(), |_, basis| {
        colors.push(gray_sum(table, basis, 0));
        None::<()>
    });
    let mut cert = ColoringCertificate::from_colors(params, f.m(), colors, Producer::Witness)?;
    cert.source = Some(f.clone());
    Ok(cert)
}

/// The coloring c_F of J_2(n+1,k). The new coordinate is bit n and the
/// hyperplane H is `bit n = 0`; a k-space inside H gets its witness, any
/// other gets the sum of F over the first components of `U \ H`.
pub fn extended_coloring(f: &VectorialFunction, k: u32, cfg: &RunConfig) -> Result<ColoringCertificate> {
    let n = f.n();
    if k < 2 || k >= n {
        return Err(Error::InvalidArgument(format!("extended coloring needs 2 <= k < n, got k={k}, n={n}")));
    }
    if f.algebraic_degree() != Some(k) {
        return Err(Error::InvalidArgument(format!(
            "extended coloring needs algebraic degree {k}, got {:?}",
            f.algebraic_degree()
        )));
    }
    for order in [k - 1, k] {
        if let Some(a) = find_vanishing_flat(f, order, cfg)? {
            return Err(Error::NotSumFree { k: order, flat: a.to_string() });
        }
    }
    let params = GrassmannParams::grassmann(n + 1, k)?;
    let g = check_vertex_cap(&params, cfg)?;
    let table = f.table();
    let mut colors = Vec::with_capacity(g.len() as usize);
    g.find_map_in_range(0..g.len(), |_, basis| {
        colors.push(extended_color(table, n, basis));
        None::<()>
    });
    let mut cert = ColoringCertificate::from_colors(params, f.m(), colors, Producer::Extended)?;
    cert.source = Some(f.clone());
    Ok(cert)
}

/// c_F for a canonical basis of F_2^(n+1): only the first row can carry
/// bit n, and when it does, `U \ H = basis[0] + span(basis[1..])`.
fn extended_color(table: &[u32], n: u32, basis: &[u32]) -> u32 {
    let hb = 1u32 << n;
    if basis[0] & hb == 0 {
        gray_sum(table, basis, 0)
    } else {
        gray_sum(table, &basis[1..], basis[0] & (hb - 1))
    }
}

/// Outcome of re-checking the four adjacency cases behind c_F.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendedCheck {
    pub sampled: u64,
    /// Pairs seen per case: both in H; one in H; neither, meeting inside H;
    /// neither, meeting outside H.
    pub per_case: [u64; 4],
    pub failures: u64,
    pub first_failure: Option<(Subspace, Subspace)>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub valid: bool,
    pub colors_used: usize,
    pub first_conflict: Option<(Subspace, Subspace)>,
    pub pairs_checked: u64,
    pub extended: Option<ExtendedCheck>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "valid={} colors_used={} pairs_checked={}",
            self.valid, self.colors_used, self.pairs_checked
        )?;
        if let Some((u, w)) = &self.first_conflict {
            write!(f, " conflict=[{u}]|[{w}]")?;
        }
        if let Some(e) = &self.extended {
            write!(
                f,
                " extended_sampled={} cases={:?} extended_failures={}",
                e.sampled, e.per_case, e.failures
            )?;
        }
        Ok(())
    }
}

/// Number of adjacent pairs sampled when re-checking extended colorings.
pub const EXTENDED_SAMPLES: u64 = 4096;

/// Checks that no two adjacent vertices share a color. Only same-colored
/// vertices can conflict, so vertices are bucketed by color and pairs are
/// examined within buckets; the reported conflict is the lexicographically
/// first by canonical index.
pub fn verify_coloring(cert: &ColoringCertificate, cfg: &RunConfig) -> Result<VerifyReport> {
    let params = cert.params;
    let g = check_vertex_cap(&params, cfg)?;
    let mut buckets: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &c) in cert.colors.iter().enumerate() {
        buckets.entry(c).or_default().push(i);
    }
    let colors_used = buckets.len();
    let spaces: Vec<Subspace> = g.iter().collect();
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let scan = |b: &Vec<usize>| {
        let mut checked = 0u64;
        let mut first: Option<(usize, usize)> = None;
        for (x, &i) in b.iter().enumerate() {
            for &j in &b[x + 1..] {
                checked += 1;
                if spaces[i].intersection_dim(&spaces[j]) >= params.t {
                    first = Some(first.map_or((i, j), |f| f.min((i, j))));
                    break;
                }
            }
        }
        (checked, first)
    };
    let results: Vec<(u64, Option<(usize, usize)>)> = cfg.install(|| buckets.par_iter().map(scan).collect())?;
    let pairs_checked = results.iter().map(|r| r.0).sum();
    let conflict = results.iter().filter_map(|r| r.1).min();
    let first_conflict = conflict.map(|(i, j)| (spaces[i].clone(), spaces[j].clone()));

    let extended = match (cert.producer, &cert.source) {
        (Producer::Extended, Some(f)) => Some(recheck_extended(cert, f, &g, cfg)),
        _ => None,
    };
    let valid = first_conflict.is_none() && extended.as_ref().is_none_or(|e| e.failures == 0);
    Ok(VerifyReport { valid, colors_used, first_conflict, pairs_checked, extended })
}

/// A random vertex and a random neighbor meeting it in dimension k-1.
fn sample_adjacent(g: &Grassmannian, rng: &mut ChaCha8Rng) -> (Subspace, Subspace) {
    let (n, k) = (g.n(), g.k());
    let u1 = g.unrank(rng.random_range(0..g.len()));
    let combo = |rng: &mut ChaCha8Rng| {
        let sel: u32 = rng.random_range(1..1u32 << k);
        u1.basis().iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).fold(0, |a, (_, &b)| a ^ b)
    };
    let hyper = loop {
        let vs: Vec<u32> = (0..k - 1).map(|_| combo(rng)).collect();
        let h = Subspace::span(n, &vs).expect("in range");
        if h.dim() == k - 1 {
            break h;
        }
    };
    let x = loop {
        let x = rng.random_range(0..1u32 << n);
        if !u1.contains(x) {
            break x;
        }
    };
    let u2 = hyper.sum(&Subspace::span(n, &[x]).expect("in range"));
    (u1, u2)
}

/// Recomputes `c(U1) + c(U2)` from the case-specific expression in the
/// validity argument for c_F and checks that it agrees and is nonzero.
fn recheck_pair(table: &[u32], n: u32, u1: &Subspace, u2: &Subspace) -> (usize, bool) {
    let hb = 1u32 << n;
    let mask = hb - 1;
    let in_h = |u: &Subspace| u.basis()[0] & hb == 0;
    let omega = |basis: &[u32], rep: u32| gray_sum(table, basis, rep & mask);
    let lhs = extended_color(table, n, u1.basis()) ^ extended_color(table, n, u2.basis());
    let meet = u1.intersection(u2);
    match (in_h(u1), in_h(u2)) {
        (true, true) => {
            let rhs = omega(u1.basis(), 0) ^ omega(u2.basis(), 0);
            (0, rhs == lhs && rhs != 0)
        }
        (a_in, _) => {
            if a_in || in_h(u2) {
                let (inside, outside) = if a_in { (u1, u2) } else { (u2, u1) };
                let w = meet.basis();
                let a = *inside.basis().iter().find(|&&v| !meet.contains(v)).expect("U1 != W");
                let b = outside.basis()[0];
                let rhs = omega(w, 0) ^ omega(w, a) ^ omega(w, b);
                // The identity ω(W)+ω(W+a)+ω(W+b) = ω(W+a+b) for degree-k F.
                let special = omega(w, a ^ b);
                (1, rhs == lhs && rhs == special && rhs != 0)
            } else if in_h(&meet) {
                let mut dirs: Vec<u32> = u1.basis()[1..].to_vec();
                dirs.extend_from_slice(&u2.basis()[1..]);
                dirs.push((u1.basis()[0] ^ u2.basis()[0]) & mask);
                let dir = Subspace::span(n, &dirs).expect("in range");
                let k = u1.dim();
                let rhs = omega(dir.basis(), u1.basis()[0]);
                (2, dir.dim() == k && rhs == lhs && rhs != 0)
            } else {
                let w: Vec<u32> = meet.basis()[1..].to_vec();
                let pick = |u: &Subspace| u.points().find(|&p| p & hb != 0 && !meet.contains(p)).expect("exists");
                let rhs = omega(&w, pick(u1)) ^ omega(&w, pick(u2));
                (3, rhs == lhs && rhs != 0)
            }
        }
    }
}

fn recheck_extended(cert: &ColoringCertificate, f: &VectorialFunction, g: &Grassmannian, cfg: &RunConfig) -> ExtendedCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = ExtendedCheck::default();
    for _ in 0..EXTENDED_SAMPLES {
        let (u1, u2) = sample_adjacent(g, &mut rng);
        let (case, ok) = recheck_pair(f.table(), cert.params.n - 1, &u1, &u2);
        out.sampled += 1;
        out.per_case[case] += 1;
        if !ok {
            out.failures += 1;
            out.first_failure.get_or_insert((u1, u2));
        }
    }
    out
}

/// `χ(J_2(n,k,t)) >= max{G(n-t,k-t), G(2k-t,k-t)}` for `1 <= t <= k`,
/// and `G(n,k)` (complete graph) for `t = 0`.
pub fn chromatic_lower_bound(n: u32, k: u32, t: u32) -> Result<BigUint> {
    GrassmannParams::new(n, k, t)?;
    if t == 0 {
        return Ok(gaussian_binomial(n, k));
    }
    Ok(gaussian_binomial(n - t, k - t).max(gaussian_binomial(2 * k - t, k - t)))
}

/// Counts for the identity `ω(U)+ω(x+U)+ω(y+U) = ω(x+y+U)` over
/// (k-1)-spaces U and coset representatives x, y.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialConditionReport {
    pub checked: u64,
    pub identity_failures: u64,
    pub zero_sums: u64,
}

/// Checks the three-coset identity for every (k-1)-space and every pair
/// of coset representatives (exhaustive).
pub fn check_special_condition(f: &VectorialFunction, k: u32, cfg: &RunConfig) -> Result<SpecialConditionReport> {
    let n = f.n();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= n, got k={k}")));
    }
    let g = Grassmannian::new(n, k - 1)?;
    cfg.check_flat_cap("special-condition triples", g.len() << (2 * (n - k + 1)))?;
    let table = f.table();
    let mut rep = SpecialConditionReport::default();
    g.find_map_in_range(0..g.len(), |_, basis| {
        let u = Subspace::span(n, basis).expect("canonical");
        let reps: Vec<u32> = (0..1u32 << n).filter(|&x| u.reduce(x) == x).collect();
        let w0 = gray_sum(table, basis, 0);
        for &x in &reps {
            let wx = gray_sum(table, basis, x);
            for &y in &reps {
                let lhs = w0 ^ wx ^ gray_sum(table, basis, y);
                rep.checked += 1;
                if lhs != gray_sum(table, basis, x ^ y) {
                    rep.identity_failures += 1;
                }
                if lhs == 0 {
                    rep.zero_sums += 1;
                }
            }
        }
        None::<()>
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::FieldContext;

    fn pm(n: u32, d: u64) -> VectorialFunction {
        VectorialFunction::power_map(&FieldContext::with_default_modulus(n).unwrap(), d).unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    /// Oracle: all pairs, no bucketing.
    fn brute_valid(cert: &ColoringCertificate) -> bool {
        let v: Vec<(Subspace, u32)> = cert.iter().collect();
        let t = cert.params().t;
        v.iter().enumerate().all(|(i, (u, cu))| {
            v[i + 1..].iter().all(|(w, cw)| cu != cw || u.intersection_dim(w) < t)
        })
    }

    #[test]
    fn intersection_dim_examples() {
        let s = |b: &[u32]| Subspace::span(4, b).unwrap();
        assert_eq!(intersection_dim(&s(&[1, 2]), &s(&[1, 2])).unwrap(), 2);
        assert_eq!(intersection_dim(&s(&[1, 2]), &s(&[4, 8])).unwrap(), 0);
        assert_eq!(intersection_dim(&s(&[1, 2]), &s(&[1, 4])).unwrap(), 1);
        assert!(intersection_dim(&s(&[1]), &Subspace::span(5, &[1]).unwrap()).is_err());
    }

    #[test]
    fn witness_colorings_valid() {
        for (n, k, d) in [(5u32, 3u32, 7u64), (6, 3, 7), (5, 2, 3), (4, 2, 3)] {
            let cert = witness_coloring(&pm(n, d), k, &cfg()).unwrap();
            let rep = verify_coloring(&cert, &cfg()).unwrap();
            assert!(rep.valid, "n={n} k={k}: {rep}");
            assert!(rep.colors_used < 1 << n);
            let lb = chromatic_lower_bound(n, k, k - 1).unwrap();
            assert!(BigUint::from(rep.colors_used) >= lb);
            if n <= 5 {
                assert!(brute_valid(&cert));
            }
        }
        assert_eq!(witness_coloring(&pm(6, 7), 3, &cfg()).unwrap().colors().len(), 1395);
        assert!(witness_coloring(&pm(5, 3), 3, &cfg()).is_err());
    }

    #[test]
    fn constant_coloring_conflicts() {
        let p = GrassmannParams::grassmann(4, 2).unwrap();
        let cert = ColoringCertificate::from_colors(p, 1, vec![1; 35], Producer::External).unwrap();
        let rep = verify_coloring(&cert, &cfg()).unwrap();
        assert!(!rep.valid);
        let (u, w) = rep.first_conflict.unwrap();
        assert!(u.intersection_dim(&w) >= 1);
        assert_eq!(brute_valid(&cert), rep.valid);
    }

    #[test]
    fn relabeling_preserves_validity() {
        let cert = witness_coloring(&pm(5, 7), 3, &cfg()).unwrap();
        // Multiplication by a nonzero field element permutes nonzero labels.
        let ctx = FieldContext::with_default_modulus(5).unwrap();
        let perm = cert.relabel(|c| ctx.mul(c, 0b10110)).unwrap();
        let a = verify_coloring(&cert, &cfg()).unwrap();
        let b = verify_coloring(&perm, &cfg()).unwrap();
        assert_eq!((a.valid, a.colors_used), (b.valid, b.colors_used));
        // A relabeling that maps a used color to 0 is refused.
        let used = cert.colors()[0];
        assert!(cert.relabel(|c| c ^ used).is_err());
    }

    #[test]
    fn assignment_must_be_complete() {
        let cert = witness_coloring(&pm(4, 3), 2, &cfg()).unwrap();
        let mut pairs: Vec<_> = cert.iter().collect();
        pairs.reverse();
        let again = ColoringCertificate::from_assignment(cert.params(), 4, pairs.clone()).unwrap();
        assert_eq!(again.colors(), cert.colors());
        pairs.pop();
        assert!(matches!(
            ColoringCertificate::from_assignment(cert.params(), 4, pairs.clone()),
            Err(Error::IncompleteAssignment(_))
        ));
        let dup = pairs[0].clone();
        pairs.push(dup);
        assert!(ColoringCertificate::from_assignment(cert.params(), 4, pairs).is_err());
    }

    #[test]
    fn extended_colorings() {
        for (d, k) in [(7u64, 3u32), (3, 2)] {
            let f = pm(5, d);
            let cert = extended_coloring(&f, k, &cfg()).unwrap();
            assert_eq!(cert.params(), GrassmannParams::grassmann(6, k).unwrap());
            let rep = verify_coloring(&cert, &cfg()).unwrap();
            assert!(rep.valid, "{rep}");
            assert!(rep.colors_used <= 31);
            let e = rep.extended.unwrap();
            assert_eq!(e.failures, 0);
            assert!(e.per_case.iter().all(|&c| c > 0), "{:?}", e.per_case);
            // Inside H the extended coloring is the witness coloring.
            let w = witness_coloring(&f, k, &cfg()).unwrap();
            for (s, c) in w.iter() {
                let lifted = Subspace::span(6, s.basis()).unwrap();
                assert_eq!(cert.color_of(&lifted).unwrap(), c);
            }
        }
        assert_eq!(extended_coloring(&pm(5, 3), 2, &cfg()).unwrap().colors_used(), 31);
        // x^3 has degree 2, not 3.
        assert!(extended_coloring(&pm(5, 3), 3, &cfg()).is_err());
    }

    #[test]
    fn extended_recheck_exhaustive_small() {
        // Every adjacent pair of J_2(6,2) built from x^3 over GF(2^5).
        let f = pm(5, 3);
        let g = Grassmannian::new(6, 2).unwrap();
        let all: Vec<Subspace> = g.iter().collect();
        let mut cases = [0u64; 4];
        for (i, u) in all.iter().enumerate() {
            for w in &all[i + 1..] {
                if u.intersection_dim(w) == 1 {
                    let (c, ok) = recheck_pair(f.table(), 5, u, w);
                    assert!(ok, "{u} {w}");
                    cases[c] += 1;
                }
            }
        }
        assert!(cases.iter().all(|&c| c > 0));
    }

    #[test]
    fn special_condition() {
        let rep = check_special_condition(&pm(5, 7), 3, &cfg()).unwrap();
        assert_eq!(rep.identity_failures, 0);
        assert_eq!(rep.zero_sums, 0);
        assert_eq!(rep.checked, 155 * 64);
        // Degree 4 breaks the identity for k = 3.
        let rep = check_special_condition(&pm(5, 15), 3, &cfg()).unwrap();
        assert!(rep.identity_failures > 0);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(chromatic_lower_bound(6, 3, 0).unwrap(), gaussian_binomial(6, 3));
        assert_eq!(chromatic_lower_bound(6, 3, 3).unwrap(), BigUint::from(1u32));
        assert_eq!(chromatic_lower_bound(6, 3, 2).unwrap(), BigUint::from(15u32));
        assert!(chromatic_lower_bound(3, 3, 1).is_err());
    }
}
