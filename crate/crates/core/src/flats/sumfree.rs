//! Witnesses, kth-order sum-freedom and related checks.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::enumerate::{coset_reps, flat_count, to_u128, Grassmannian};
use super::space::{gray_sum, Flat, Subspace};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::vecfun::VectorialFunction;

/// `ω_F(A)`: the XOR of `F` over all points of `A`.
pub fn witness(f: &VectorialFunction, a: &Flat) -> u32 {
    assert_eq!(f.n(), a.n(), "flat and function live in different spaces");
    gray_sum(f.table(), a.direction().basis(), a.rep())
}

fn check_order(f: &VectorialFunction, k: u32) -> Result<()> {
    if k > f.n() {
        return Err(Error::InvalidArgument(format!("order k={k} exceeds n={}", f.n())));
    }
    Ok(())
}

/// The first k-flat in canonical order on which the witness vanishes, or
/// `None` if `F` is kth-order sum-free.
///
/// Work is sharded over canonical subspace ranges and reduced to the
/// earliest hit, so the answer does not depend on `cfg.jobs`.
pub fn find_vanishing_flat(f: &VectorialFunction, k: u32, cfg: &RunConfig) -> Result<Option<Flat>> {
    check_order(f, k)?;
    let n = f.n();
    cfg.check_flat_cap("flats", to_u128(&flat_count(n, k)))?;
    let g = Grassmannian::new(n, k)?;
    let table = f.table();
    let scan = |range: std::ops::Range<u128>| {
        g.find_map_in_range(range, |_, basis| {
            let mask = basis.iter().fold(0, |m, &r| m | 1 << (31 - r.leading_zeros()));
            coset_reps(n, mask)
                .find(|&rep| gray_sum(table, basis, rep) == 0)
                .map(|rep| Flat::from_canonical(Subspace::from_canonical(n, basis.iter().copied().collect()), rep))
        })
    };
    if cfg.jobs <= 1 {
        return Ok(scan(0..g.len()));
    }
    let shards = g.shards(cfg.jobs);
    cfg.install(|| shards.into_par_iter().find_map_first(scan))
}

/// True iff every k-flat has a nonzero witness. For `k = 0` this means
/// `F` has no roots.
pub fn is_sumfree(f: &VectorialFunction, k: u32) -> Result<bool> {
    Ok(find_vanishing_flat(f, k, &RunConfig::default())?.is_none())
}

/// The orders at which a function is sum-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderProfile {
    pub n: u32,
    pub m: u32,
    /// Orders verified exhaustively.
    pub orders: BTreeSet<u32>,
    /// Orders that were requested but not checked, with the reason.
    pub skipped: Vec<(u32, String)>,
}

impl OrderProfile {
    pub fn contains(&self, k: u32) -> bool {
        self.orders.contains(&k)
    }

    pub fn is_multiorder(&self) -> bool {
        self.orders.iter().filter(|&&k| k >= 1).count() >= 2
    }
}

/// `K_F ∩ ks`, each order checked exhaustively. Orders whose flat count
/// exceeds the cap are listed in `skipped` instead of failing the call.
pub fn order_profile_in(
    f: &VectorialFunction,
    ks: impl IntoIterator<Item = u32>,
    cfg: &RunConfig,
) -> Result<OrderProfile> {
    let mut profile = OrderProfile { n: f.n(), m: f.m(), orders: BTreeSet::new(), skipped: Vec::new() };
    for k in ks {
        match find_vanishing_flat(f, k, cfg) {
            Ok(None) => {
                profile.orders.insert(k);
            }
            Ok(Some(_)) => {}
            Err(e @ Error::CapExceeded { .. }) => profile.skipped.push((k, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(profile)
}

/// `K_F` over `1..=n`.
pub fn order_profile(f: &VectorialFunction) -> Result<OrderProfile> {
    order_profile_in(f, 1..=f.n(), &RunConfig::default())
}

/// Witnesses of all cosets of `u`, ordered by coset representative.
pub fn coset_witnesses(f: &VectorialFunction, u: &Subspace) -> Vec<u32> {
    assert_eq!(f.n(), u.n());
    coset_reps(f.n(), u.pivot_mask())
        .map(|rep| gray_sum(f.table(), u.basis(), rep))
        .collect()
}

/// True iff the cosets of `u` have pairwise distinct witnesses.
pub fn coset_witnesses_distinct(f: &VectorialFunction, u: &Subspace) -> bool {
    let mut w = coset_witnesses(f, u);
    w.sort_unstable();
    w.windows(2).all(|p| p[0] != p[1])
}

/// Restricts `D_{v_1} ... D_{v_j} F` to a complement `W` of `span(dirs)`,
/// re-indexing the points of `W` by coordinates in its canonical basis
/// (bit `i` of the new input selects the row with the `i`-th lowest pivot).
pub fn derivative_restriction(
    f: &VectorialFunction,
    dirs: &[u32],
    w: &Subspace,
) -> Result<VectorialFunction> {
    let n = f.n();
    let j = dirs.len() as u32;
    let v = Subspace::from_independent(n, dirs)?;
    if w.n() != n || w.dim() + j != n {
        return Err(Error::DimensionMismatch(format!(
            "complement must have dimension {} in F_2^{n}, got {} in F_2^{}",
            n - j,
            w.dim(),
            w.n()
        )));
    }
    if v.intersection_dim(w) != 0 {
        return Err(Error::InvalidArgument("W meets span(dirs) nontrivially".into()));
    }
    let d = f.higher_derivative(dirs);
    let rows: Vec<u32> = w.basis().iter().rev().copied().collect();
    VectorialFunction::from_fn(n - j, f.m(), |y| {
        let x = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| y >> i & 1 == 1)
            .fold(0, |acc, (_, &r)| acc ^ r);
        d.eval(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flats::enumerate::enumerate_flats;
    use crate::gf2n::FieldContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pm(n: u32, d: u64) -> VectorialFunction {
        VectorialFunction::power_map(&FieldContext::with_default_modulus(n).unwrap(), d).unwrap()
    }

    /// Sum over the flat's points listed independently of the Gray walk.
    fn direct_witness(f: &VectorialFunction, a: &Flat) -> u32 {
        (0..1u32 << f.n()).filter(|&x| a.contains(x)).fold(0, |acc, x| acc ^ f.eval(x))
    }

    /// Brute-force sum-freedom over every enumerated flat.
    fn brute_sumfree(f: &VectorialFunction, k: u32) -> bool {
        enumerate_flats(f.n(), k, u128::MAX).unwrap().all(|a| direct_witness(f, &a) != 0)
    }

    fn random_function(rng: &mut ChaCha8Rng, n: u32, m: u32) -> VectorialFunction {
        VectorialFunction::from_fn(n, m, |_| rng.random::<u32>() & ((1 << m) - 1)).unwrap()
    }

    /// Random function of degree at most `d`: random ANF supported on
    /// monomials of weight <= d.
    fn random_low_degree(rng: &mut ChaCha8Rng, n: u32, m: u32, d: u32) -> VectorialFunction {
        let mut coeffs: Vec<u32> = (0..1u32 << n)
            .map(|u| if u.count_ones() <= d { rng.random::<u32>() & ((1 << m) - 1) } else { 0 })
            .collect();
        crate::vecfun::mobius_transform(&mut coeffs);
        VectorialFunction::new(n, m, coeffs).unwrap()
    }

    #[test]
    fn witness_examples() {
        let c = VectorialFunction::constant(5, 5, 7).unwrap();
        for a in enumerate_flats(5, 2, u128::MAX).unwrap() {
            assert_eq!(witness(&c, &a), 0);
        }
        let x7 = pm(5, 7);
        for a in enumerate_flats(5, 3, u128::MAX).unwrap() {
            assert_ne!(witness(&x7, &a), 0);
            assert_eq!(witness(&x7, &a), direct_witness(&x7, &a));
        }
        let x3 = pm(5, 3);
        for a in enumerate_flats(5, 3, u128::MAX).unwrap() {
            assert_eq!(witness(&x3, &a), 0);
        }
    }

    #[test]
    fn sumfree_examples() {
        assert!(is_sumfree(&pm(5, 7), 3).unwrap());
        let x3 = pm(4, 3);
        assert!(!is_sumfree(&x3, 3).unwrap());
        let first = find_vanishing_flat(&x3, 3, &RunConfig::default()).unwrap().unwrap();
        assert_eq!(first, enumerate_flats(4, 3, u128::MAX).unwrap().next().unwrap());
        // permutations are first-order sum-free
        let ctx = FieldContext::with_default_modulus(5).unwrap();
        let perm = VectorialFunction::from_fn(5, 5, |x| ctx.mul(x, 9) ^ 3).unwrap();
        assert!(is_sumfree(&perm, 1).unwrap());
        // x^3 over GF(2^6) is not a permutation since 3 | 63
        assert!(!is_sumfree(&pm(6, 3), 1).unwrap());
        assert!(matches!(is_sumfree(&perm, 6), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn zero_order_means_no_roots() {
        let f = VectorialFunction::from_fn(3, 2, |x| if x == 5 { 0 } else { 1 }).unwrap();
        let hit = find_vanishing_flat(&f, 0, &RunConfig::default()).unwrap().unwrap();
        assert_eq!((hit.dim(), hit.rep()), (0, 5));
        assert!(is_sumfree(&VectorialFunction::constant(3, 2, 1).unwrap(), 0).unwrap());
    }

    #[test]
    fn parallel_counterexample_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let f = random_function(&mut rng, 7, 3);
            let seq = find_vanishing_flat(&f, 3, &RunConfig::default()).unwrap();
            for jobs in [2, 4] {
                let par = find_vanishing_flat(&f, 3, &RunConfig::default().with_jobs(jobs)).unwrap();
                assert_eq!(seq, par);
            }
        }
        let x7 = pm(7, 7);
        assert_eq!(find_vanishing_flat(&x7, 3, &RunConfig::default().with_jobs(4)).unwrap(), None);
    }

    #[test]
    fn cap_exceeded_is_an_error() {
        let cfg = RunConfig { flat_cap: 100, ..RunConfig::default() };
        assert!(matches!(
            find_vanishing_flat(&pm(5, 7), 3, &cfg),
            Err(Error::CapExceeded { count: 620, .. })
        ));
        let p = order_profile_in(&pm(5, 7), 1..=5, &cfg).unwrap();
        assert!(p.skipped.iter().any(|(k, _)| *k == 3));
    }

    #[test]
    fn profile_examples() {
        let inv = order_profile(&pm(5, 30)).unwrap();
        assert_eq!(inv.orders, BTreeSet::from([1, 2, 3, 4]));
        assert!(inv.is_multiorder());
        let x7 = order_profile(&pm(5, 7)).unwrap();
        assert!(x7.contains(2) && x7.contains(3));
        let c = order_profile(&VectorialFunction::constant(5, 5, 1).unwrap()).unwrap();
        assert!(c.orders.is_empty());
    }

    #[test]
    fn profile_is_modulus_invariant() {
        let a = FieldContext::new(5, 0b100101).unwrap();
        let b = FieldContext::new(5, 0b111101).unwrap();
        for d in [3, 5, 7, 11, 15, 30] {
            let fa = VectorialFunction::power_map(&a, d).unwrap();
            let fb = VectorialFunction::power_map(&b, d).unwrap();
            assert_eq!(order_profile(&fa).unwrap().orders, order_profile(&fb).unwrap().orders);
        }
    }

    #[test]
    fn coset_witness_examples() {
        let x7 = pm(5, 7);
        for u in Grassmannian::new(5, 2).unwrap().iter() {
            assert!(coset_witnesses_distinct(&x7, &u));
        }
        let c = VectorialFunction::constant(5, 5, 3).unwrap();
        assert!(!coset_witnesses_distinct(&c, &Subspace::span(5, &[1, 2]).unwrap()));
    }

    #[test]
    fn coset_criterion_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut fns: Vec<VectorialFunction> = (3..=6).flat_map(|n| [pm(n, 3), pm(n, 7), pm(n, (1 << n) - 2)]).collect();
        for n in 3..=6 {
            for m in [n - 1, n, n + 1] {
                fns.push(random_function(&mut rng, n, m));
            }
        }
        for f in &fns {
            for k in 1..=f.n() {
                let via_cosets =
                    Grassmannian::new(f.n(), k - 1).unwrap().iter().all(|u| coset_witnesses_distinct(f, &u));
                assert_eq!(via_cosets, brute_sumfree(f, k), "{f:?} k={k}");
                assert_eq!(via_cosets, is_sumfree(f, k).unwrap());
            }
        }
    }

    #[test]
    fn witness_equals_higher_derivative() {
        for n in 1..=6 {
            let f = pm(n, (1 << n) - 2);
            for k in 0..=n.min(3) {
                for a in enumerate_flats(n, k, u128::MAX).unwrap() {
                    let d = f.higher_derivative(a.direction().basis());
                    assert_eq!(d.eval(a.rep()), witness(&f, &a));
                }
            }
        }
    }

    #[test]
    fn low_degree_functions_vanish_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=6 {
            for k in 1..=n {
                let f = random_low_degree(&mut rng, n, 4, k - 1);
                assert!(enumerate_flats(n, k, u128::MAX).unwrap().all(|a| witness(&f, &a) == 0));
                assert!(!is_sumfree(&f, k).unwrap());
                // converse: a function of degree exactly k has some nonzero k-flat witness
                let mut g = random_low_degree(&mut rng, n, 4, k);
                while g.algebraic_degree() != Some(k) {
                    g = random_low_degree(&mut rng, n, 4, k);
                }
                assert!(enumerate_flats(n, k, u128::MAX).unwrap().any(|a| witness(&g, &a) != 0));
            }
        }
    }

    #[test]
    fn sumfree_with_k_plus_one_outputs_has_degree_k() {
        let mut found = 0;
        // APN-like (n,k+1) candidates from truncating power maps
        for n in 3..=6u32 {
            for k in 1..n {
                for d in 1..(1u64 << n) - 1 {
                    let f = pm(n, d);
                    let g = VectorialFunction::from_fn(n, k + 1, |x| f.eval(x) & ((1 << (k + 1)) - 1)).unwrap();
                    if is_sumfree(&g, k).unwrap() {
                        found += 1;
                        assert_eq!(g.algebraic_degree(), Some(k), "n={n} k={k} d={d}");
                    }
                }
            }
        }
        assert!(found > 0);
        for n in 3..=8 {
            let f = pm(n, (1 << (n - 1)) - 1);
            assert_eq!(f.algebraic_degree(), Some(n - 1));
        }
    }

    #[test]
    fn derivative_restriction_examples() {
        let x7 = pm(5, 7);
        let same = derivative_restriction(&x7, &[], &Subspace::full(5)).unwrap();
        assert_eq!(same, x7);

        let w = Subspace::span(5, &[2, 4, 8, 16]).unwrap();
        let g = derivative_restriction(&x7, &[1], &w).unwrap();
        assert_eq!((g.n(), g.m()), (4, 5));
        assert!(is_sumfree(&g, 2).unwrap());

        let x15 = pm(6, 15);
        assert!(is_sumfree(&x15, 4).unwrap());
        let w6 = Subspace::span(6, &[1, 2, 4, 8, 16]).unwrap();
        let h = derivative_restriction(&x15, &[0b100001], &w6).unwrap();
        assert_eq!((h.n(), h.m()), (5, 6));
        assert!(is_sumfree(&h, 3).unwrap());

        assert!(derivative_restriction(&x7, &[1], &Subspace::span(5, &[1, 2, 4, 8]).unwrap()).is_err());
        assert!(derivative_restriction(&x7, &[1, 1], &Subspace::span(5, &[2, 4, 8]).unwrap()).is_err());
        assert!(derivative_restriction(&x7, &[1], &Subspace::span(5, &[2, 4, 8]).unwrap()).is_err());
    }
}
