//! Power-map families, Gold-inverse checks, catalog profiling and small
//! exhaustive nonexistence searches.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::flats::{enumerate_flats, flat_count, order_profile_in, to_u128, OrderProfile};
use crate::gf2n::FieldContext;
use crate::vecfun::VectorialFunction;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponent of `F_{k,j} = x^((2^{jk}-1)/(2^j-1)) = x^(1 + 2^j + ... + 2^{j(k-1)})`
/// reduced modulo `2^n - 1` into `1..=2^n-1`.
pub fn carlet_exponent(n: u32, k: u32, j: u32) -> u64 {
    let q = (1u64 << n) - 1;
    let e = (0..k).map(|i| 1u64 << ((j as u64 * i as u64) % n as u64)).sum::<u64>() % q;
    if e == 0 {
        q
    } else {
        e
    }
}

/// The power map `F_{k,j}`. The `gcd(j, n) = 1` requirement can be waived
/// with `allow_any_j` for exploration beyond the known sufficient condition.
pub fn carlet_function(ctx: &FieldContext, k: u32, j: u32, allow_any_j: bool) -> Result<VectorialFunction> {
    let n = ctx.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if j == 0 {
        return Err(Error::InvalidArgument("j must be positive".into()));
    }
    if !allow_any_j && gcd(j, n) != 1 {
        return Err(Error::InvalidArgument(format!("gcd(j={j}, n={n}) != 1 (override to explore)")));
    }
    VectorialFunction::power_map(ctx, carlet_exponent(n, k, j))
}

/// Result of checking that `F_{m+1,2i}` inverts the Gold map `x^(2^i+1)`.
#[derive(Clone, Debug)]
pub struct GoldInverseReport {
    pub n: u32,
    pub i: u32,
    pub gold_exponent: u64,
    pub inverse_exponent: u64,
    pub composition_is_identity: bool,
    pub profile: OrderProfile,
}

impl GoldInverseReport {
    pub fn passed(&self) -> bool {
        let half = (self.n - 1) / 2;
        self.composition_is_identity && self.profile.contains(2) && self.profile.contains(half + 1)
    }
}

impl fmt::Display for GoldInverseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} i={} gold=x^{} inverse=x^{} identity={} orders={:?}",
            self.n, self.i, self.gold_exponent, self.inverse_exponent, self.composition_is_identity, self.profile.orders
        )
    }
}

/// For odd `n = 2m+1`, checks `F_{m+1,2i}(x^(2^i+1)) = x` for all x and
/// that `F_{m+1,2i}` is sum-free at orders 2 and m+1.
pub fn gold_inverse_check(ctx: &FieldContext, i: u32, cfg: &RunConfig) -> Result<GoldInverseReport> {
    let n = ctx.n();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidArgument(format!("n must be odd and at least 3, got {n}")));
    }
    if i == 0 || gcd(2 * i, n) != 1 {
        return Err(Error::InvalidArgument(format!("need gcd(2i, n) = 1, got i={i}, n={n}")));
    }
    let half = (n - 1) / 2;
    let j = (2 * i) % n;
    let inverse_exponent = carlet_exponent(n, half + 1, j);
    let gold_exponent = (1u64 << (i % n)) + 1;
    let composition_is_identity =
        (0..ctx.size() as u32).all(|x| ctx.pow(ctx.pow(x, gold_exponent), inverse_exponent) == x);
    let f = VectorialFunction::power_map(ctx, inverse_exponent)?;
    let profile = order_profile_in(&f, [2, half + 1], cfg)?;
    Ok(GoldInverseReport { n, i, gold_exponent, inverse_exponent, composition_is_identity, profile })
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub function: VectorialFunction,
    pub tags: Vec<String>,
}

/// A labelled list of (n,m)-functions sharing n and m.
#[derive(Clone, Debug)]
pub struct FunctionCatalog {
    entries: Vec<CatalogEntry>,
    pub source: Option<PathBuf>,
}

impl FunctionCatalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        if let Some(first) = entries.first() {
            let (n, m) = (first.function.n(), first.function.m());
            if let Some(e) = entries.iter().find(|e| e.function.n() != n || e.function.m() != m) {
                return Err(Error::DimensionMismatch(format!(
                    "entry {:?} is an ({},{})-function, catalog is ({n},{m})",
                    e.label,
                    e.function.n(),
                    e.function.m()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        if let Some(e) = entries.iter().find(|e| !seen.insert(e.label.as_str())) {
            return Err(Error::InvalidArgument(format!("duplicate catalog label {:?}", e.label)));
        }
        Ok(Self { entries, source: None })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub label: String,
    pub degree: Option<u32>,
    pub profile: OrderProfile,
    /// `(k, is_nondegenerate(k))` for each requested k.
    pub nondegenerate: Vec<(u32, bool)>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ProfileReport {
    pub kmin: u32,
    pub kmax: u32,
    pub rows: Vec<ProfileRow>,
}

impl ProfileReport {
    /// Labels of entries sum-free at order k.
    pub fn sumfree_at(&self, k: u32) -> Vec<&str> {
        self.rows.iter().filter(|r| r.profile.contains(k)).map(|r| r.label.as_str()).collect()
    }
}

impl fmt::Display for ProfileReport {
    /// Deterministic table (timings are omitted).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# k in [{}, {}]", self.kmin, self.kmax)?;
        writeln!(f, "label\tdegree\torders\tnondegenerate\tskipped")?;
        for r in &self.rows {
            let deg = r.degree.map_or("-".to_string(), |d| d.to_string());
            let orders: Vec<String> = r.profile.orders.iter().map(|k| k.to_string()).collect();
            let nd: Vec<String> = r.nondegenerate.iter().filter(|p| p.1).map(|p| p.0.to_string()).collect();
            let skipped: Vec<String> = r.profile.skipped.iter().map(|s| s.0.to_string()).collect();
            writeln!(
                f,
                "{}\t{}\t{{{}}}\t{{{}}}\t{{{}}}",
                r.label,
                deg,
                orders.join(","),
                nd.join(","),
                skipped.join(",")
            )?;
        }
        Ok(())
    }
}

/// Order profile of every catalog entry within `kmin..=kmax`, in parallel
/// across entries. Orders beyond the flat cap are recorded as skipped.
pub fn profile_catalog(catalog: &FunctionCatalog, kmin: u32, kmax: u32, cfg: &RunConfig) -> Result<ProfileReport> {
    if kmin > kmax {
        return Err(Error::InvalidArgument(format!("empty k range [{kmin}, {kmax}]")));
    }
    let inner = RunConfig { jobs: 1, ..cfg.clone() };
    let row = |e: &CatalogEntry| -> Result<ProfileRow> {
        let start = Instant::now();
        let f = &e.function;
        let hi = kmax.min(f.n());
        let profile = order_profile_in(f, kmin..=hi, &inner)?;
        Ok(ProfileRow {
            label: e.label.clone(),
            degree: f.algebraic_degree(),
            nondegenerate: (kmin..=hi).map(|k| (k, f.is_nondegenerate(k))).collect(),
            profile,
            elapsed: start.elapsed(),
        })
    };
    let rows = cfg.install(|| catalog.entries.par_iter().map(row).collect::<Result<Vec<_>>>())??;
    Ok(ProfileReport { kmin, kmax, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonexistence {
    /// A kth-order sum-free function was found.
    Exists(VectorialFunction),
    /// The search tree was exhausted: no such function exists.
    Nonexistent { nodes: u64 },
    /// The node budget ran out first; nothing is concluded.
    BudgetExhausted { nodes: u64 },
}

/// Depth-first search for a kth-order sum-free (n,m)-function.
///
/// Points are assigned in increasing order. Every k-flat is attached to its
/// largest point, so assigning `F(p)` only re-checks the flats completed at
/// `p`. For `k >= 1` the witness is unchanged by adding a constant to F,
/// so `F(0) = 0` is fixed.
pub fn exhaustive_nonexistence(n: u32, m: u32, k: u32, budget: u64) -> Result<Nonexistence> {
    if n == 0 || n > 8 || m == 0 || m > 8 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= n <= 8, 1 <= m <= 8, k <= n; got ({n},{m},{k})")));
    }
    let size = 1usize << n;
    let count = to_u128(&flat_count(n, k));
    let mut buckets: Vec<Vec<Vec<u16>>> = vec![Vec::new(); size];
    for a in enumerate_flats(n, k, count)? {
        let pts: Vec<u16> = a.points().map(|p| p as u16).collect();
        let last = *pts.iter().max().expect("flats are nonempty") as usize;
        buckets[last].push(pts);
    }
    let values = 1u32 << m;
    let mut table = vec![0u32; size];
    let mut nodes = 0u64;
    // next[p] = next candidate value for point p.
    let mut next = vec![0u32; size];
    let first = if k >= 1 { 1 } else { 0 };
    let ok_at = |table: &[u32], p: usize| {
        buckets[p].iter().all(|pts| pts.iter().fold(0, |acc, &x| acc ^ table[x as usize]) != 0)
    };
    if k >= 1 && !ok_at(&table, 0) {
        return Ok(Nonexistence::Nonexistent { nodes });
    }
    let mut p = first;
    loop {
        if p == size {
            return Ok(Nonexistence::Exists(VectorialFunction::new(n, m, table)?));
        }
        if next[p] == values {
            next[p] = 0;
            if p == first {
                return Ok(Nonexistence::Nonexistent { nodes });
            }
            p -= 1;
            continue;
        }
        if nodes >= budget {
            return Ok(Nonexistence::BudgetExhausted { nodes });
        }
        nodes += 1;
        table[p] = next[p];
        next[p] += 1;
        if ok_at(&table, p) {
            p += 1;
        }
    }
}

/// Consistency of a profile with `m >= max{n-k+2, k+2}` for `2 <= k <= n-2`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u32,
    pub m: u32,
    pub profile: OrderProfile,
    /// `(k, required m, satisfied)`.
    pub checks: Vec<(u32, u32, bool)>,
}

impl BoundReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.2)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} orders={:?}", self.n, self.m, self.profile.orders)?;
        for (k, req, ok) in &self.checks {
            write!(f, " k={k}:m>={req}:{}", if *ok { "ok" } else { "VIOLATED" })?;
        }
        Ok(())
    }
}

/// Computes `K_F` and checks every order `2 <= k <= n-2` in it against the
/// lower bound on m. A violation would falsify the bound.
pub fn bound_consistency_report(f: &VectorialFunction, cfg: &RunConfig) -> Result<BoundReport> {
    let (n, m) = (f.n(), f.m());
    let profile = order_profile_in(f, 1..=n, cfg)?;
    let checks = profile
        .orders
        .iter()
        .filter(|&&k| k >= 2 && k + 2 <= n)
        .map(|&k| {
            let req = (n - k + 2).max(k + 2);
            (k, req, m >= req)
        })
        .collect();
    Ok(BoundReport { n, m, profile, checks })
}
