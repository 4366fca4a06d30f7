//! Random and extremal digraph models.
//!
//! All samplers are pure functions of `(parameters, seed)`. Pair sampling
//! walks a ChaCha stream in pair-index order; since ChaCha is seekable, the
//! draw for pair `k` is fixed by `(seed, k)` alone. Below [`SKIP_THRESHOLD`]
//! the sampler jumps between successes with geometric gaps instead, which
//! gives the same distribution with `O(expected edges)` draws.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::seed;
use crate::{Digraph, Error, Result};

/// Edge probability below which geometric skipping is used.
pub const SKIP_THRESHOLD: f64 = 0.05;

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Indices in `0..count` each selected independently with probability `p`.
fn bernoulli_indices(count: u64, p: f64, seed: u64) -> Vec<u64> {
    let mut rng = seed::rng(seed);
    if p <= 0.0 || count == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..count).collect();
    }
    if p < SKIP_THRESHOLD {
        let gaps = Geometric::new(p).expect("0 < p < 1");
        let mut out = Vec::with_capacity((count as f64 * p * 1.2) as usize + 8);
        let mut idx = 0u64;
        loop {
            idx = idx.saturating_add(gaps.sample(&mut rng));
            if idx >= count {
                break;
            }
            out.push(idx);
            idx += 1;
        }
        out
    } else {
        naive_indices(count, p, &mut rng)
    }
}

fn naive_indices<R: Rng>(count: u64, p: f64, rng: &mut R) -> Vec<u64> {
    (0..count).filter(|_| rng.random::<f64>() < p).collect()
}

/// `k`-th ordered pair `(u, v)`, `u ≠ v`, in row-major order.
fn ordered_pair(n: usize, k: u64) -> (usize, usize) {
    let u = (k / (n as u64 - 1)) as usize;
    let r = (k % (n as u64 - 1)) as usize;
    (u, if r < u { r } else { r + 1 })
}

/// `k`-th unordered pair `u < v` in row-major order.
fn unordered_pair(n: usize, mut k: u64) -> (usize, usize) {
    let mut u = 0usize;
    loop {
        let row = (n - 1 - u) as u64;
        if k < row {
            return (u, u + 1 + k as usize);
        }
        k -= row;
        u += 1;
    }
}

/// Binomial random digraph `D(n, p)`: every ordered pair `(u, v)`, `u ≠ v`,
/// is an edge independently with probability `p`.
pub fn sample_binomial_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    check_probability(p)?;
    let mut g = Digraph::new(n)?;
    if n < 2 {
        return Ok(g);
    }
    for k in bernoulli_indices((n * (n - 1)) as u64, p, seed) {
        let (u, v) = ordered_pair(n, k);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Same law as [`sample_binomial_digraph`] but always with one uniform draw
/// per pair. Kept as a reference for the skipping sampler.
pub fn sample_binomial_digraph_naive(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    check_probability(p)?;
    let mut g = Digraph::new(n)?;
    if n < 2 {
        return Ok(g);
    }
    let mut rng = seed::rng(seed);
    for k in naive_indices((n * (n - 1)) as u64, p, &mut rng) {
        let (u, v) = ordered_pair(n, k);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Mirrored model `D*(n, p)`: each antiparallel pair is present together
/// with probability `p`, independently over unordered pairs.
pub fn sample_mirrored_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    check_probability(p)?;
    let mut g = Digraph::new(n)?;
    if n < 2 {
        return Ok(g);
    }
    for k in bernoulli_indices((n * (n - 1) / 2) as u64, p, seed) {
        let (u, v) = unordered_pair(n, k);
        g.add_edge(u, v)?;
        g.add_edge(v, u)?;
    }
    Ok(g)
}

/// Complete bipartite graph on parts `0..a` and `a..a+b` with both
/// directions on every cross pair.
pub fn doubled_complete_bipartite(a: usize, b: usize) -> Result<Digraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("both parts must be non-empty".into()));
    }
    let mut g = Digraph::new(a + b)?;
    for x in 0..a {
        for y in a..a + b {
            g.add_edge(x, y)?;
            g.add_edge(y, x)?;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseStyle {
    /// Doubled `K_{⌈αn⌉, n-⌈αn⌉}`.
    DoubledBipartite,
    /// Blobs of size at least `⌈αn⌉` around a directed cycle, every vertex
    /// pointing at the whole next blob.
    BlownCycle,
    /// `D(n, min(1, 3α))` with edges added to deficient vertices until the
    /// semidegree target is met.
    RandomRepair,
    /// As `RandomRepair` but starting from `D(n, α)`, so the minimum
    /// semidegree sits close to `αn`.
    TightRepair,
}

impl std::str::FromStr for BaseStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "doubled-bipartite" => BaseStyle::DoubledBipartite,
            "blown-cycle" => BaseStyle::BlownCycle,
            "random-repair" => BaseStyle::RandomRepair,
            "tight-repair" => BaseStyle::TightRepair,
            other => return Err(Error::InvalidParameter(format!("unknown base style {other:?}"))),
        })
    }
}

/// `⌈αn⌉`, the semidegree target used wherever `αn` appears. A small
/// tolerance keeps values like `0.3 * 10` from rounding up to 4.
pub fn semidegree_target(n: usize, alpha: f64) -> usize {
    let x = alpha * n as f64;
    (x - 1e-9).ceil().max(0.0) as usize
}

/// A dense digraph with minimum semidegree at least `⌈αn⌉`.
pub fn dense_base(n: usize, alpha: f64, style: BaseStyle, seed: u64) -> Result<Digraph> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let target = semidegree_target(n, alpha);
    if target == 0 || target > n.saturating_sub(1) {
        return Err(Error::InvalidParameter(format!(
            "semidegree target {target} infeasible on {n} vertices"
        )));
    }
    let g = match style {
        BaseStyle::DoubledBipartite => {
            if n - target < target {
                return Err(Error::InvalidParameter(format!(
                    "doubled-bipartite base needs alpha <= 1/2 (parts {target} and {})",
                    n - target
                )));
            }
            doubled_complete_bipartite(target, n - target)?
        }
        BaseStyle::BlownCycle => blown_cycle(n, target)?,
        BaseStyle::RandomRepair => random_repair(n, (3.0 * alpha).min(1.0), target, seed)?,
        BaseStyle::TightRepair => random_repair(n, alpha, target, seed)?,
    };
    debug_assert!(g.min_semidegree() >= target);
    Ok(g)
}

fn blown_cycle(n: usize, target: usize) -> Result<Digraph> {
    let blobs = n / target;
    if blobs < 2 {
        return Err(Error::InvalidParameter(format!(
            "blown-cycle base needs at least two blobs of size {target} on {n} vertices"
        )));
    }
    // The remainder is spread over the first blobs as filler.
    let mut starts = Vec::with_capacity(blobs + 1);
    let mut at = 0;
    for b in 0..blobs {
        starts.push(at);
        at += target + usize::from(b < n % target);
    }
    starts.push(n);
    let mut g = Digraph::new(n)?;
    for b in 0..blobs {
        let next = (b + 1) % blobs;
        for u in starts[b]..starts[b + 1] {
            for v in starts[next]..starts[next + 1] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

fn random_repair(n: usize, density: f64, target: usize, seed: u64) -> Result<Digraph> {
    let mut g = sample_binomial_digraph(n, density, seed)?;
    let mut rng = seed::stream(seed, 1, seed::Phase::Base);
    let mut order: Vec<usize> = (0..n).collect();
    // Out-deficits first, preferring heads that are themselves short of
    // in-edges; then whatever in-deficits remain.
    order.shuffle(&mut rng);
    for &v in &order {
        if g.out_degree(v) >= target {
            continue;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(v, u)).collect();
        candidates.shuffle(&mut rng);
        candidates.sort_by_key(|&u| g.in_degree(u) >= target);
        for u in candidates {
            if g.out_degree(v) >= target {
                break;
            }
            g.add_edge(v, u)?;
        }
    }
    order.shuffle(&mut rng);
    for &v in &order {
        if g.in_degree(v) >= target {
            continue;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
        candidates.shuffle(&mut rng);
        for u in candidates {
            if g.in_degree(v) >= target {
                break;
            }
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// A perturbed graph `base ∪ R` together with its random part `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbed {
    pub graph: Digraph,
    pub random: Digraph,
}

/// Adds `R ~ D(n, c/n)` to `base`.
pub fn perturb(base: &Digraph, c: f64, seed: u64) -> Result<Perturbed> {
    let n = base.n();
    if c < 0.0 || c / n as f64 > 1.0 || c.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "c = {c} needs 0 <= c/n <= 1 for n = {n}"
        )));
    }
    let random = sample_binomial_digraph(n, c / n as f64, seed)?;
    let graph = base.union(&random)?;
    Ok(Perturbed { graph, random })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_is_a_bijection() {
        let n = 7;
        let mut seen = std::collections::HashSet::new();
        for k in 0..(n * (n - 1)) as u64 {
            let (u, v) = ordered_pair(n, k);
            assert!(u != v && u < n && v < n);
            assert!(seen.insert((u, v)));
        }
        let mut seen = std::collections::HashSet::new();
        for k in 0..(n * (n - 1) / 2) as u64 {
            let (u, v) = unordered_pair(n, k);
            assert!(u < v && v < n);
            assert!(seen.insert((u, v)));
        }
    }

    #[test]
    fn binomial_extremes() {
        assert_eq!(sample_binomial_digraph(10, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(sample_binomial_digraph(10, 1.0, 1).unwrap().edge_count(), 90);
        assert!(sample_binomial_digraph(10, 1.5, 1).is_err());
        assert!(sample_binomial_digraph(10, -0.1, 1).is_err());
        assert!(sample_mirrored_digraph(10, 2.0, 1).is_err());
        assert_eq!(
            sample_mirrored_digraph(6, 1.0, 1).unwrap(),
            Digraph::complete(6).unwrap()
        );
    }

    #[test]
    fn samplers_are_reproducible() {
        for p in [0.01, 0.3] {
            assert_eq!(
                sample_binomial_digraph(60, p, 42).unwrap(),
                sample_binomial_digraph(60, p, 42).unwrap()
            );
            assert_ne!(
                sample_binomial_digraph(60, p, 42).unwrap(),
                sample_binomial_digraph(60, p, 43).unwrap()
            );
        }
    }

    #[test]
    fn mirrored_samples_are_reversal_invariant() {
        for s in 0..50 {
            let g = sample_mirrored_digraph(25, 0.2, s).unwrap();
            assert_eq!(g.reversed(), g);
            for (u, v) in g.edges() {
                assert!(g.has_edge(v, u));
            }
        }
    }

    fn mean_edges(sampler: fn(usize, f64, u64) -> Result<Digraph>, n: usize, p: f64, samples: u64) -> f64 {
        (0..samples)
            .map(|s| sampler(n, p, s).unwrap().edge_count() as f64)
            .sum::<f64>()
            / samples as f64
    }

    #[test]
    fn binomial_mean_edge_count() {
        // 2·C(50,2)·0.1 = 245, per-sample sd sqrt(2450·0.1·0.9).
        let samples = 10_000;
        let mean = mean_edges(sample_binomial_digraph, 50, 0.1, samples);
        let sigma = (2450.0f64 * 0.1 * 0.9).sqrt() / (samples as f64).sqrt();
        assert!((mean - 245.0).abs() < 4.0 * sigma, "mean {mean}");
    }

    #[test]
    fn skipping_matches_naive_in_distribution() {
        // p below the threshold uses geometric skips; compare first two
        // moments of the edge count with the per-pair sampler.
        let (n, p, samples) = (80usize, 0.02, 4000u64);
        let pairs = (n * (n - 1)) as f64;
        let sigma = (pairs * p * (1.0 - p)).sqrt() / (samples as f64).sqrt();
        for sampler in [sample_binomial_digraph, sample_binomial_digraph_naive] {
            let mean = mean_edges(sampler, n, p, samples);
            assert!((mean - pairs * p).abs() < 4.0 * sigma, "mean {mean}");
        }
        let var = |sampler: fn(usize, f64, u64) -> Result<Digraph>| {
            let xs: Vec<f64> = (0..samples)
                .map(|s| sampler(n, p, s).unwrap().edge_count() as f64)
                .collect();
            let m = xs.iter().sum::<f64>() / xs.len() as f64;
            xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
        };
        let expected_var = pairs * p * (1.0 - p);
        for sampler in [sample_binomial_digraph, sample_binomial_digraph_naive] {
            let v = var(sampler);
            assert!((v / expected_var - 1.0).abs() < 0.1, "variance {v} vs {expected_var}");
        }
    }

    #[test]
    fn skipped_edges_are_uniform_over_pairs() {
        // Each ordered pair of a 6-vertex graph should appear with frequency p.
        let (n, p, samples) = (6usize, 0.04, 50_000u64);
        let mut hits = vec![0u32; n * n];
        for s in 0..samples {
            for (u, v) in sample_binomial_digraph(n, p, s).unwrap().edges() {
                hits[u * n + v] += 1;
            }
        }
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        for u in 0..n {
            for v in 0..n {
                let f = hits[u * n + v] as f64 / samples as f64;
                if u == v {
                    assert_eq!(f, 0.0);
                } else {
                    assert!((f - p).abs() < 5.0 * sigma, "pair ({u},{v}) freq {f}");
                }
            }
        }
    }

    #[test]
    fn mirrored_fixed_triangle_probability() {
        // Pr[triangle {0,1,2} present] = 0.3^3 = 0.027.
        let samples = 100_000u64;
        let hits = (0..samples)
            .filter(|&s| {
                let g = sample_mirrored_digraph(5, 0.3, s).unwrap();
                g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2)
            })
            .count();
        let f = hits as f64 / samples as f64;
        let sigma = (0.027f64 * 0.973 / samples as f64).sqrt();
        assert!((f - 0.027).abs() < 3.0 * sigma, "freq {f}");
    }

    #[test]
    fn doubled_bipartite_examples() {
        let g = doubled_complete_bipartite(2, 3).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.min_semidegree(), 2);
        let c2 = doubled_complete_bipartite(1, 1).unwrap();
        assert_eq!(c2.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        let k22 = doubled_complete_bipartite(2, 2).unwrap();
        assert!((0..4).all(|v| k22.out_degree(v) == 2 && k22.in_degree(v) == 2));
        assert!(doubled_complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn dense_base_meets_target() {
        let g = dense_base(10, 0.3, BaseStyle::DoubledBipartite, 0).unwrap();
        assert_eq!(g.min_semidegree(), 3);
        for style in [
            BaseStyle::DoubledBipartite,
            BaseStyle::BlownCycle,
            BaseStyle::RandomRepair,
            BaseStyle::TightRepair,
        ] {
            for (n, alpha) in [(20, 0.2), (50, 0.3), (101, 0.45), (300, 0.3)] {
                let g = dense_base(n, alpha, style, 9).unwrap();
                g.validate().unwrap();
                assert!(
                    g.min_semidegree() >= semidegree_target(n, alpha),
                    "{style:?} {n} {alpha}"
                );
            }
        }
        for s in 0..100 {
            let g = dense_base(100, 0.25, BaseStyle::RandomRepair, s).unwrap();
            assert!(g.min_semidegree() >= 25);
        }
        // Random repair also covers alpha above 1/2.
        assert!(
            dense_base(30, 0.8, BaseStyle::RandomRepair, 1)
                .unwrap()
                .min_semidegree()
                >= 24
        );
        let dense = dense_base(300, 0.3, BaseStyle::RandomRepair, 2).unwrap();
        let tight = dense_base(300, 0.3, BaseStyle::TightRepair, 2).unwrap();
        assert!(dense.min_semidegree() > 200);
        assert_eq!(tight.min_semidegree(), 90);
        assert!(dense_base(10, 0.7, BaseStyle::DoubledBipartite, 0).is_err());
        assert!(dense_base(10, 0.7, BaseStyle::BlownCycle, 0).is_err());
        assert!(dense_base(10, 1.0, BaseStyle::RandomRepair, 0).is_err());
        assert!(dense_base(10, 0.0, BaseStyle::RandomRepair, 0).is_err());
    }

    #[test]
    fn semidegree_target_rounds_up() {
        assert_eq!(semidegree_target(10, 0.3), 3);
        assert_eq!(semidegree_target(10, 0.31), 4);
        assert_eq!(semidegree_target(120, 0.3), 36);
    }

    #[test]
    fn perturb_examples() {
        let base = doubled_complete_bipartite(5, 5).unwrap();
        let p = perturb(&base, 0.0, 1).unwrap();
        assert_eq!(p.graph, base);
        assert_eq!(p.random.edge_count(), 0);
        let p = perturb(&base, 4.0, 1).unwrap();
        assert!(base.is_subgraph_of(&p.graph));
        assert!(p.random.is_subgraph_of(&p.graph));
        assert!(perturb(&base, 11.0, 1).is_err());
        assert!(perturb(&base, -1.0, 1).is_err());
    }

    #[test]
    fn perturb_random_part_mean() {
        // 2·C(200,2)·(10/200) = 1990.
        let base = Digraph::new(200).unwrap();
        let samples = 1000u64;
        let mean = (0..samples)
            .map(|s| perturb(&base, 10.0, s).unwrap().random.edge_count() as f64)
            .sum::<f64>()
            / samples as f64;
        let sigma = (39_800.0f64 * 0.05 * 0.95).sqrt() / (samples as f64).sqrt();
        assert!((mean - 1990.0).abs() < 4.0 * sigma, "mean {mean}");
    }
}
