//! Good-star probabilities, the Azuma tail, and Monte Carlo experiments under
//! uniformly random injections.
//!
//! For a triple `(u, ±, w)` three pairwise disjoint designated sets
//! `N*(u) ⊆ N^±(u)`, `N⁺(w)` and `N⁻(w)` of size `α′n = ⌊αn/3⌋` are fixed. A
//! star is *good* under `φ` when its center lands in `N*(u)`, its out-leaves
//! in `N⁺(w)` and its in-leaves in `N⁻(w)`; good stars are absorbing. `X`
//! counts good stars among the first `N` stars of a pack.

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::absorption::{is_absorbing, Sign, StarPack, Triple};
use crate::embed::sample_uniform_injection_with;
use crate::seed::{self, Phase};
use crate::stats::Moments;
use crate::{Digraph, Error, OrientedTree, Result};

/// `n (n-1) ... (n-i+1)`, with `0` when `i > n`.
///
/// Saturates at `u128::MAX`; every call site keeps products far below that.
pub fn falling_factorial(n: u64, i: u64) -> u128 {
    if i > n {
        return 0;
    }
    (n - i + 1..=n).fold(1u128, |acc, k| acc.saturating_mul(k as u128))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoodStarParams {
    pub n: usize,
    pub alpha: f64,
    /// `α / 3`.
    pub alpha_prime: f64,
    pub gamma: f64,
    /// `⌈min(γn, αn / (6(Δ+1)))⌉`.
    pub n_cap: usize,
    pub max_degree: usize,
}

const ROUND_EPS: f64 = 1e-9;

impl GoodStarParams {
    pub fn new(n: usize, alpha: f64, gamma: f64, max_degree: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} outside (0, 1]")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} outside (0, 1]")));
        }
        if max_degree == 0 {
            return Err(Error::InvalidParameter("max degree must be positive".into()));
        }
        let nf = n as f64;
        let cap = (gamma * nf).min(alpha * nf / (6.0 * (max_degree as f64 + 1.0)));
        Ok(Self {
            n,
            alpha,
            alpha_prime: alpha / 3.0,
            gamma,
            n_cap: (cap - ROUND_EPS).ceil().max(0.0) as usize,
            max_degree,
        })
    }

    /// `α′n` as an integer set size, `⌊αn/3⌋`.
    pub fn designated_size(&self) -> usize {
        (self.alpha * self.n as f64 / 3.0 + ROUND_EPS).floor() as usize
    }
}

/// Residual parts of the designated sets and of the host, as fractions of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualFractions {
    pub a_star: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b: f64,
}

impl ResidualFractions {
    /// The unexposed state: every designated set full, every host free.
    pub fn initial(p: &GoodStarParams) -> Self {
        ResidualCounts::initial(p).fractions(p.n)
    }

    /// Whether the fractions lie in `a ∈ [α/6, α/3]`, `b ∈ [1/2, 1]`.
    pub fn in_claimed_range(&self, alpha: f64) -> bool {
        let lo = alpha / 6.0 - ROUND_EPS;
        let hi = alpha / 3.0 + ROUND_EPS;
        [self.a_star, self.a_plus, self.a_minus]
            .iter()
            .all(|a| (lo..=hi).contains(a))
            && (0.5 - ROUND_EPS..=1.0 + ROUND_EPS).contains(&self.b)
    }
}

/// Residual set sizes as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualCounts {
    pub a_star: u64,
    pub a_plus: u64,
    pub a_minus: u64,
    pub b: u64,
}

impl ResidualCounts {
    pub fn initial(p: &GoodStarParams) -> Self {
        let a = p.designated_size() as u64;
        Self {
            a_star: a,
            a_plus: a,
            a_minus: a,
            b: p.n as u64,
        }
    }

    pub fn from_fractions(res: &ResidualFractions, n: usize) -> Self {
        let c = |x: f64| (x * n as f64).round().max(0.0) as u64;
        Self {
            a_star: c(res.a_star),
            a_plus: c(res.a_plus),
            a_minus: c(res.a_minus),
            b: c(res.b),
        }
    }

    pub fn fractions(&self, n: usize) -> ResidualFractions {
        let nf = n as f64;
        ResidualFractions {
            a_star: self.a_star as f64 / nf,
            a_plus: self.a_plus as f64 / nf,
            a_minus: self.a_minus as f64 / nf,
            b: self.b as f64 / nf,
        }
    }

    /// Probability that `centers` disjoint stars with `s_plus` out-leaves and
    /// `s_minus` in-leaves in total are all good, as an exact fraction
    /// `(numerator, denominator)`. `None` on overflow.
    fn good_fraction(&self, centers: u64, s_plus: u64, s_minus: u64) -> Option<(u128, u128)> {
        let s = centers + s_plus + s_minus;
        let den = falling_factorial(self.b, s);
        if den == 0 {
            return Some((0, 1));
        }
        let num = falling_factorial(self.a_star, centers)
            .checked_mul(falling_factorial(self.a_plus, s_plus))?
            .checked_mul(falling_factorial(self.a_minus, s_minus))?;
        (den != u128::MAX && num != u128::MAX).then_some((num, den))
    }

    /// Float evaluation of [`Self::good_fraction`], one division at the end.
    fn good_probability(&self, centers: u64, s_plus: u64, s_minus: u64) -> f64 {
        match self.good_fraction(centers, s_plus, s_minus) {
            Some((num, den)) => num as f64 / den as f64,
            None => {
                // Products past u128: fall back to a running product of ratios.
                let s = centers + s_plus + s_minus;
                let mut p = 1.0;
                let mut d = self.b;
                for (a, k) in [(self.a_star, centers), (self.a_plus, s_plus), (self.a_minus, s_minus)] {
                    for j in 0..k {
                        p *= a.saturating_sub(j) as f64 / d as f64;
                        d -= 1;
                    }
                }
                debug_assert_eq!(d, self.b - s);
                p
            }
        }
    }
}

/// `E[X_S | exposed]` for one star: `a*n (a⁺n)^{s⁺} (a⁻n)^{s⁻} / (bn)^{s}` with
/// falling powers and `s = s⁺ + s⁻ + 1`. Zero when `s > bn`.
pub fn conditional_good_probability(res: &ResidualFractions, s_plus: usize, s_minus: usize, n: usize) -> f64 {
    ResidualCounts::from_fractions(res, n).good_probability(1, s_plus as u64, s_minus as u64)
}

/// `Pr[S is good]` for a star with `s⁺` out-leaves and `s⁻` in-leaves, before
/// anything is exposed.
pub fn good_star_probability(p: &GoodStarParams, s_plus: usize, s_minus: usize) -> f64 {
    conditional_good_probability(&ResidualFractions::initial(p), s_plus, s_minus, p.n)
}

/// [`good_star_probability`] as an exact rational.
pub fn good_star_probability_exact(p: &GoodStarParams, s_plus: usize, s_minus: usize) -> Result<Ratio<u128>> {
    let (num, den) = ResidualCounts::initial(p)
        .good_fraction(1, s_plus as u64, s_minus as u64)
        .ok_or_else(|| Error::InvalidParameter("falling factorials overflow u128".into()))?;
    Ok(Ratio::new(num, den))
}

/// `E[X]` over a pack profile of `(s⁺, s⁻)` pairs.
pub fn expected_good_stars(p: &GoodStarParams, profile: &[(usize, usize)]) -> f64 {
    profile.iter().map(|&(sp, sm)| good_star_probability(p, sp, sm)).sum()
}

/// Exact `Var(X)` from single and pairwise joint good probabilities.
pub fn good_star_variance(p: &GoodStarParams, profile: &[(usize, usize)]) -> f64 {
    let res = ResidualCounts::initial(p);
    let single: Vec<f64> = profile
        .iter()
        .map(|&(sp, sm)| res.good_probability(1, sp as u64, sm as u64))
        .collect();
    let mut var: f64 = single.iter().map(|q| q * (1.0 - q)).sum();
    for i in 0..profile.len() {
        for j in i + 1..profile.len() {
            let joint = res.good_probability(
                2,
                (profile[i].0 + profile[j].0) as u64,
                (profile[i].1 + profile[j].1) as u64,
            );
            var += 2.0 * (joint - single[i] * single[j]);
        }
    }
    var.max(0.0)
}

/// Azuma–Hoeffding tail `min(1, 2 exp(-ε² / (2 N L²)))` for a martingale of
/// `steps` steps with differences bounded by `l`.
pub fn azuma_tail(steps: usize, l: f64, eps: f64) -> f64 {
    let bound = 2.0 * (-(eps * eps) / (2.0 * steps as f64 * l * l)).exp();
    bound.min(1.0)
}

/// Pairwise disjoint designated sets for one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignatedSets {
    pub star: FixedBitSet,
    pub plus: FixedBitSet,
    pub minus: FixedBitSet,
}

impl DesignatedSets {
    /// The first `size` vertices of `N^sign(u)`, then of `N⁺(w)` and `N⁻(w)`
    /// skipping anything already taken. Sets come out smaller than `size`
    /// when a neighborhood runs out.
    pub fn greedy(graph: &Digraph, triple: Triple, size: usize) -> Self {
        let n = graph.n();
        let mut taken = FixedBitSet::with_capacity(n);
        let mut pick = |source: &[u32]| {
            let mut set = FixedBitSet::with_capacity(n);
            let picked: Vec<usize> = source
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| !taken.contains(x))
                .take(size)
                .collect();
            for x in picked {
                set.insert(x);
                taken.insert(x);
            }
            set
        };
        let star = pick(match triple.sign {
            Sign::Plus => graph.out_neighbors(triple.u),
            Sign::Minus => graph.in_neighbors(triple.u),
        });
        let plus = pick(graph.out_neighbors(triple.w));
        let minus = pick(graph.in_neighbors(triple.w));
        Self { star, plus, minus }
    }

    pub fn sizes(&self) -> [usize; 3] {
        [
            self.star.count_ones(..),
            self.plus.count_ones(..),
            self.minus.count_ones(..),
        ]
    }
}

/// Which triples an experiment looks at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleSelection {
    /// `random` uniform triples plus `adversarial` ones with `u = w`.
    Sampled {
        random: usize,
        adversarial: usize,
    },
    /// All `2n²` triples.
    Full,
    Explicit(Vec<Triple>),
}

impl Default for TripleSelection {
    fn default() -> Self {
        TripleSelection::Sampled {
            random: 64,
            adversarial: 8,
        }
    }
}

impl TripleSelection {
    /// The triples and whether each one is adversarial.
    pub fn resolve(&self, n: usize, seed: u64) -> Vec<(Triple, bool)> {
        match self {
            TripleSelection::Sampled { random, adversarial } => {
                let mut rng = seed::stream(seed, 0, Phase::Triples);
                let sign = |rng: &mut rand_chacha::ChaCha8Rng| {
                    if rng.random_bool(0.5) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                };
                let mut out = Vec::with_capacity(random + adversarial);
                for _ in 0..*random {
                    let (u, w) = (rng.random_range(0..n), rng.random_range(0..n));
                    let s = sign(&mut rng);
                    out.push((Triple { u, sign: s, w }, false));
                }
                for _ in 0..*adversarial {
                    let u = rng.random_range(0..n);
                    let s = sign(&mut rng);
                    out.push((Triple { u, sign: s, w: u }, true));
                }
                out
            }
            TripleSelection::Full => (0..n)
                .flat_map(|u| {
                    (0..n).flat_map(move |w| Sign::BOTH.into_iter().map(move |sign| (Triple { u, sign, w }, u == w)))
                })
                .collect(),
            TripleSelection::Explicit(ts) => ts.iter().map(|&t| (t, t.u == t.w)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub triples: TripleSelection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleSummary {
    pub triple_id: usize,
    pub triple: Triple,
    pub adversarial: bool,
    pub designated_sizes: [usize; 3],
    pub empirical_mean: f64,
    pub empirical_sd: f64,
    /// `(mean - E[X]) / (σ / √trials)` with the exact `σ`.
    pub z_score: f64,
    pub min: u32,
    pub max: u32,
    /// Trials with `X < E[X]/2`.
    pub below_half: u64,
    /// Trials with `|X - E[X]| ≥ E[X]/2`.
    pub far: u64,
    /// Largest measured `Σ_{i>k} |E[X_i | φ_{k-1}] - E[X_i | φ_k]|`.
    pub c4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub params: GoodStarParams,
    pub stars: usize,
    pub trials: usize,
    pub expected: f64,
    pub variance: f64,
    pub triples: Vec<TripleSummary>,
    /// Largest exposure difference over every triple and trial.
    pub c4: f64,
    /// `azuma_tail(N, 1 + c4, E[X]/2)`.
    pub azuma_bound: f64,
    /// Worst per-triple frequency of `X < E[X]/2`.
    pub max_below_half_rate: f64,
    /// Worst per-triple frequency of `|X - E[X]| ≥ E[X]/2`.
    pub max_far_rate: f64,
    /// Largest `|z|` over triples.
    pub max_abs_z: f64,
    /// Fraction of trials whose minimum over triples is positive.
    pub min_positive_rate: f64,
    /// Quantiles 1%, 5%, 50%, 95%, 99% of `X - E[X]` pooled over triples.
    pub deviation_quantiles: [f64; 5],
    /// Whether every residual state met the `[α/6, α/3] × [1/2, 1]` ranges.
    pub residuals_in_range: bool,
    /// Good stars that failed the absorbing test. Must be zero.
    pub good_not_absorbing: u64,
    /// `counts[triple][trial]`.
    #[serde(skip)]
    pub counts: Vec<Vec<u32>>,
}

impl ConcentrationReport {
    /// Writes `triple_id,trial,count` rows.
    pub fn write_counts_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["triple_id", "trial", "count"]).map_err(csv_err)?;
        for (t, row) in self.counts.iter().enumerate() {
            for (trial, c) in row.iter().enumerate() {
                w.serialize((t, trial, c)).map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

struct PreparedTriple {
    triple: Triple,
    adversarial: bool,
    sets: DesignatedSets,
    initial: ResidualCounts,
}

struct TrialResult {
    counts: Vec<u32>,
    c4: Vec<f64>,
    in_range: bool,
    violations: u64,
}

/// Draws `trials` uniform injections of `tree` into the host and counts good
/// stars among the pack for each selected triple.
///
/// The pack is cut to its first `N_cap` stars. Each trial replays the star
/// exposure martingale to measure the largest change in the conditional
/// expectation of the later stars, and checks every good star against
/// [`is_absorbing`] in `base`.
pub fn run_concentration_experiment(
    base: &Digraph,
    tree: &OrientedTree,
    pack: &StarPack,
    params: &GoodStarParams,
    config: &ExperimentConfig,
) -> Result<ConcentrationReport> {
    let n = base.n();
    if params.n != n {
        return Err(Error::SizeMismatch(params.n, n));
    }
    if tree.n() > n {
        return Err(Error::SizeMismatch(tree.n(), n));
    }
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let size = params.designated_size();
    if (params.alpha * n as f64 / 3.0) < (params.max_degree + 1) as f64 {
        return Err(Error::InvalidParameter(format!(
            "αn/3 = {} is below Δ + 1 = {}",
            params.alpha * n as f64 / 3.0,
            params.max_degree + 1
        )));
    }
    let pack = pack.truncated(params.n_cap);
    let profile: Vec<(usize, usize)> = pack.stars().iter().map(|s| (s.s_plus.len(), s.s_minus.len())).collect();
    let expected = expected_good_stars(params, &profile);
    let variance = good_star_variance(params, &profile);

    let triples: Vec<PreparedTriple> = config
        .triples
        .resolve(n, config.seed)
        .into_iter()
        .map(|(triple, adversarial)| {
            let sets = DesignatedSets::greedy(base, triple, size);
            let [a_star, a_plus, a_minus] = sets.sizes().map(|x| x as u64);
            PreparedTriple {
                triple,
                adversarial,
                sets,
                initial: ResidualCounts {
                    a_star,
                    a_plus,
                    a_minus,
                    b: n as u64,
                },
            }
        })
        .collect();
    if triples.is_empty() {
        return Err(Error::InvalidParameter("no triples selected".into()));
    }

    let results: Vec<TrialResult> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(base, tree, &pack, &profile, &triples, params, config.seed, trial))
        .collect::<Result<_>>()?;

    let t_count = triples.len();
    let mut counts = vec![Vec::with_capacity(config.trials); t_count];
    let mut c4 = vec![0.0f64; t_count];
    let mut in_range = true;
    let mut violations = 0;
    let mut min_positive = 0usize;
    for r in &results {
        for (t, &c) in r.counts.iter().enumerate() {
            counts[t].push(c);
            c4[t] = c4[t].max(r.c4[t]);
        }
        in_range &= r.in_range;
        violations += r.violations;
        min_positive += usize::from(r.counts.iter().all(|&c| c > 0));
    }

    let sigma_mean = (variance / config.trials as f64).sqrt();
    let mut deviations = Vec::with_capacity(t_count * config.trials);
    let summaries: Vec<TripleSummary> = triples
        .iter()
        .enumerate()
        .map(|(id, pt)| {
            let row = &counts[id];
            let mut m = Moments::default();
            row.iter().for_each(|&c| m.push(c as f64));
            deviations.extend(row.iter().map(|&c| c as f64 - expected));
            let z_score = if sigma_mean > 0.0 {
                (m.mean - expected) / sigma_mean
            } else if (m.mean - expected).abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            TripleSummary {
                triple_id: id,
                triple: pt.triple,
                adversarial: pt.adversarial,
                designated_sizes: pt.sets.sizes(),
                empirical_mean: m.mean,
                empirical_sd: m.variance().sqrt(),
                z_score,
                min: row.iter().copied().min().unwrap_or(0),
                max: row.iter().copied().max().unwrap_or(0),
                below_half: row.iter().filter(|&&c| (c as f64) < expected / 2.0).count() as u64,
                far: row
                    .iter()
                    .filter(|&&c| (c as f64 - expected).abs() >= expected / 2.0)
                    .count() as u64,
                c4: c4[id],
            }
        })
        .collect();
    deviations.sort_by(f64::total_cmp);
    let quantile = |q: f64| deviations[((deviations.len() - 1) as f64 * q).round() as usize];
    let c4_max = c4.iter().copied().fold(0.0, f64::max);
    let trials_f = config.trials as f64;

    Ok(ConcentrationReport {
        params: *params,
        stars: pack.len(),
        trials: config.trials,
        expected,
        variance,
        c4: c4_max,
        azuma_bound: azuma_tail(pack.len().max(1), 1.0 + c4_max, expected / 2.0),
        max_below_half_rate: summaries
            .iter()
            .map(|s| s.below_half as f64 / trials_f)
            .fold(0.0, f64::max),
        max_far_rate: summaries.iter().map(|s| s.far as f64 / trials_f).fold(0.0, f64::max),
        max_abs_z: summaries.iter().map(|s| s.z_score.abs()).fold(0.0, f64::max),
        min_positive_rate: min_positive as f64 / trials_f,
        deviation_quantiles: [0.01, 0.05, 0.5, 0.95, 0.99].map(quantile),
        residuals_in_range: in_range,
        good_not_absorbing: violations,
        triples: summaries,
        counts,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    base: &Digraph,
    tree: &OrientedTree,
    pack: &StarPack,
    profile: &[(usize, usize)],
    triples: &[PreparedTriple],
    params: &GoodStarParams,
    master: u64,
    trial: usize,
) -> Result<TrialResult> {
    let mut rng = seed::stream(master, trial as u64, Phase::Injection);
    let phi = sample_uniform_injection_with(tree.n(), base.n(), &mut rng)?;
    let img = |v: u32| phi.get(v as usize).expect("injection is total");
    let mut out = TrialResult {
        counts: Vec::with_capacity(triples.len()),
        c4: Vec::with_capacity(triples.len()),
        in_range: true,
        violations: 0,
    };
    for pt in triples {
        let mut count = 0u32;
        let mut res = pt.initial;
        let mut prev = Vec::with_capacity(pack.len());
        let mut c4 = 0.0f64;
        for (k, star) in pack.stars().iter().enumerate() {
            let good = pt.sets.star.contains(img(star.center))
                && star.s_plus.iter().all(|&l| pt.sets.plus.contains(img(l)))
                && star.s_minus.iter().all(|&l| pt.sets.minus.contains(img(l)));
            if good {
                count += 1;
                if !is_absorbing(star, &phi, base, pt.triple.u, pt.triple.sign, pt.triple.w)? {
                    out.violations += 1;
                }
            }
            // Conditional expectations of the later stars before and after
            // exposing star k.
            if k == 0 {
                prev = profile
                    .iter()
                    .map(|&(sp, sm)| res.good_probability(1, sp as u64, sm as u64))
                    .collect();
            }
            for v in star.vertices() {
                let h = phi.get(v).expect("injection is total");
                res.a_star -= u64::from(pt.sets.star.contains(h));
                res.a_plus -= u64::from(pt.sets.plus.contains(h));
                res.a_minus -= u64::from(pt.sets.minus.contains(h));
                res.b -= 1;
            }
            out.in_range &=
                pt.initial != ResidualCounts::initial(params) || res.fractions(params.n).in_claimed_range(params.alpha);
            let mut diff = 0.0;
            for (i, &(sp, sm)) in profile.iter().enumerate().skip(k + 1) {
                let now = res.good_probability(1, sp as u64, sm as u64);
                diff += (prev[i] - now).abs();
                prev[i] = now;
            }
            c4 = c4.max(diff);
        }
        out.counts.push(count);
        out.c4.push(c4);
    }
    Ok(out)
}

/// Frequency of goodness for one star with `s⁺` out- and `s⁻` in-leaves under
/// uniform injections into an `n`-vertex host whose designated sets are
/// `{0..a}`, `{a..2a}` and `{2a..3a}`. Returns the number of good draws.
pub fn simulate_good_frequency(
    n: usize,
    a: usize,
    s_plus: usize,
    s_minus: usize,
    trials: u64,
    seed: u64,
) -> Result<u64> {
    let size = 1 + s_plus + s_minus;
    if 3 * a > n || size > n {
        return Err(Error::InvalidParameter(format!(
            "sets of size {a} and a star of {size} do not fit in {n}"
        )));
    }
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = seed::stream(seed, t, Phase::Injection);
            let phi = sample_uniform_injection_with(size, n, &mut rng).expect("star fits");
            let h = |v| phi.get(v).expect("total");
            h(0) < a
                && (1..=s_plus).all(|v| (a..2 * a).contains(&h(v)))
                && (s_plus + 1..size).all(|v| (2 * a..3 * a).contains(&h(v)))
        })
        .count();
    Ok(hits as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption::greedy_star_pack;
    use crate::models::{dense_base, BaseStyle};
    use crate::tree::random_tree;
    use proptest::prelude::*;

    fn params(n: usize, alpha: f64) -> GoodStarParams {
        GoodStarParams::new(n, alpha, 0.05, 3).unwrap()
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(9, 0), 1);
        assert_eq!(falling_factorial(0, 0), 1);
        assert_eq!(falling_factorial(7, 7), 5040);
        assert_eq!(falling_factorial(3, 4), 0);
    }

    #[test]
    fn good_star_probability_examples() {
        let p = params(30, 0.3);
        assert_eq!(p.designated_size(), 3);
        assert_eq!(good_star_probability_exact(&p, 1, 0).unwrap(), Ratio::new(9, 870));
        assert!((good_star_probability(&p, 1, 0) - 9.0 / 870.0).abs() < 1e-15);
        // A lone center lands in N*(u) with probability α′.
        assert_eq!(good_star_probability(&p, 0, 0), 0.1);
        // Star bigger than a designated set.
        assert_eq!(good_star_probability(&p, 4, 0), 0.0);
    }

    #[test]
    fn conditional_specializes_to_unconditional() {
        for n in [30, 60, 120, 300] {
            let p = params(n, 0.3);
            let res = ResidualFractions::initial(&p);
            for sp in 0..4 {
                for sm in 0..4 - sp {
                    let a = good_star_probability(&p, sp, sm);
                    let b = conditional_good_probability(&res, sp, sm, n);
                    assert_eq!(a.to_bits(), b.to_bits());
                }
            }
        }
        let res = ResidualFractions {
            a_star: 0.1,
            a_plus: 0.1,
            a_minus: 0.1,
            b: 1.0,
        };
        assert!((conditional_good_probability(&res, 1, 0, 30) - 9.0 / 870.0).abs() < 1e-15);
        assert!((conditional_good_probability(&res, 0, 0, 30) - 0.1).abs() < 1e-15);
        // More star vertices than free hosts.
        let tight = ResidualFractions { b: 2.0 / 30.0, ..res };
        assert_eq!(conditional_good_probability(&tight, 1, 1, 30), 0.0);
    }

    #[test]
    fn expected_good_stars_examples() {
        let p = params(30, 0.3);
        assert!((expected_good_stars(&p, &[(0, 0); 7]) - 0.7).abs() < 1e-12);
        assert!((expected_good_stars(&p, &[(1, 0); 9]) - 81.0 / 870.0).abs() < 1e-12);
        let profile = [(1, 0), (0, 2), (1, 1), (2, 1)];
        let min = profile
            .iter()
            .map(|&(a, b)| good_star_probability(&p, a, b))
            .fold(1.0, f64::min);
        assert!(expected_good_stars(&p, &profile) >= min * profile.len() as f64);
    }

    #[test]
    fn azuma_examples() {
        assert_eq!(azuma_tail(10, 1.0, 0.0), 1.0);
        let v = azuma_tail(100, 1.0, 20.0);
        assert!(((v - 2.0 * (-2.0f64).exp()) / v).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn azuma_monotone(n in 1usize..500, l in 0.1f64..5.0, e in 0.0f64..50.0, d in 0.0f64..5.0) {
            let base = azuma_tail(n, l, e);
            prop_assert!(azuma_tail(n, l, e + d) <= base);
            prop_assert!(azuma_tail(n + 1, l, e) >= base);
            prop_assert!(azuma_tail(n, l + d, e) >= base);
            prop_assert!((0.0..=1.0).contains(&base));
        }

        #[test]
        fn variance_matches_brute_force_pair(a in 2usize..5, sp1 in 0usize..2, sm1 in 0usize..2, sp2 in 0usize..2, sm2 in 0usize..2) {
            // Two stars in a host of 3a + 1 vertices, enumerated exhaustively.
            let n = 3 * a + 1;
            let p = GoodStarParams::new(n, 3.0 * a as f64 / n as f64, 1.0, 3).unwrap();
            prop_assume!(p.designated_size() == a);
            let profile = [(sp1, sm1), (sp2, sm2)];
            let s1 = 1 + sp1 + sm1;
            let s2 = 1 + sp2 + sm2;
            let good = |h: &[usize], sp: usize, s: usize| {
                h[0] < a && h[1..=sp].iter().all(|&x| (a..2 * a).contains(&x)) && h[sp + 1..s].iter().all(|&x| (2 * a..3 * a).contains(&x))
            };
            let (mut total, mut sum, mut sum2) = (0f64, 0f64, 0f64);
            let mut h = vec![0usize; s1 + s2];
            fn rec(h: &mut Vec<usize>, depth: usize, n: usize, visit: &mut dyn FnMut(&[usize])) {
                if depth == h.len() { visit(h); return; }
                for x in 0..n {
                    if h[..depth].contains(&x) { continue; }
                    h[depth] = x;
                    rec(h, depth + 1, n, visit);
                }
            }
            rec(&mut h, 0, n, &mut |h| {
                let x = u32::from(good(&h[..s1], sp1, s1)) + u32::from(good(&h[s1..], sp2, s2));
                total += 1.0;
                sum += x as f64;
                sum2 += (x * x) as f64;
            });
            let mean = sum / total;
            let var = sum2 / total - mean * mean;
            prop_assert!((mean - expected_good_stars(&p, &profile)).abs() < 1e-12);
            prop_assert!((var - good_star_variance(&p, &profile)).abs() < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_matches_nine_over_870() {
        let trials = 20_000u64;
        let hits = simulate_good_frequency(30, 3, 1, 0, trials, 1).unwrap();
        let p = 9.0 / 870.0;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((hits as f64 / trials as f64 - p).abs() < 4.0 * sigma);
    }

    #[test]
    fn designated_sets_are_disjoint_and_sized() {
        let g = dense_base(60, 0.3, BaseStyle::RandomRepair, 4).unwrap();
        for u in [0, 5, 17] {
            for w in [0, 5, 33] {
                for sign in Sign::BOTH {
                    let s = DesignatedSets::greedy(&g, Triple { u, sign, w }, 6);
                    assert_eq!(s.sizes(), [6, 6, 6]);
                    assert!(
                        s.star.is_disjoint(&s.plus) && s.star.is_disjoint(&s.minus) && s.plus.is_disjoint(&s.minus)
                    );
                    assert!(s.star.ones().all(|x| sign.neighborhood(&g, u).contains(x)));
                    assert!(s.plus.ones().all(|x| g.has_edge(w, x)));
                    assert!(s.minus.ones().all(|x| g.has_edge(x, w)));
                }
            }
        }
    }

    #[test]
    fn complete_base_experiment_matches_formula() {
        let n = 60;
        let g = Digraph::complete(n).unwrap();
        let mut rng = seed::rng(2);
        let t = random_tree(n, 3, &mut rng).unwrap();
        let pack = greedy_star_pack(&t);
        let p = GoodStarParams::new(n, 0.9, 0.1, 3).unwrap();
        let cfg = ExperimentConfig {
            trials: 4000,
            seed: 9,
            triples: TripleSelection::Sampled {
                random: 6,
                adversarial: 2,
            },
        };
        let r = run_concentration_experiment(&g, &t, &pack, &p, &cfg).unwrap();
        assert_eq!(r.stars, p.n_cap.min(pack.len()));
        assert!(r.max_abs_z < 4.0, "max |z| = {}", r.max_abs_z);
        assert_eq!(r.good_not_absorbing, 0);
        assert!(r.triples.iter().all(|s| s.max as usize <= r.stars));
        assert!(r.max_far_rate <= r.azuma_bound);
        let mut csv = Vec::new();
        r.write_counts_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("triple_id,trial,count\n"));
        assert_eq!(text.lines().count(), 1 + 8 * 4000);
    }

    #[test]
    fn emptied_designated_sets_give_zero() {
        // u has no out-neighbors, so N*(u) is empty for the + sign.
        let n = 40;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for a in 1..n {
            for b in 0..n {
                if a != b {
                    edges.push((a, b));
                }
            }
        }
        let g = Digraph::from_edges(n, edges).unwrap();
        let t = random_tree(n, 3, &mut seed::rng(1)).unwrap();
        let p = GoodStarParams::new(n, 0.9, 0.2, 3).unwrap();
        let cfg = ExperimentConfig {
            trials: 200,
            seed: 3,
            triples: TripleSelection::Explicit(vec![Triple {
                u: 0,
                sign: Sign::Plus,
                w: 5,
            }]),
        };
        let r = run_concentration_experiment(&g, &t, &greedy_star_pack(&t), &p, &cfg).unwrap();
        assert!(r.counts[0].iter().all(|&c| c == 0));
        assert_eq!(r.triples[0].designated_sizes[0], 0);
    }

    #[test]
    fn rejects_tiny_designated_sets() {
        let g = Digraph::complete(12).unwrap();
        let t = random_tree(12, 3, &mut seed::rng(1)).unwrap();
        let p = GoodStarParams::new(12, 0.5, 0.2, 3).unwrap();
        let cfg = ExperimentConfig {
            trials: 5,
            seed: 0,
            triples: TripleSelection::Full,
        };
        assert!(run_concentration_experiment(&g, &t, &greedy_star_pack(&t), &p, &cfg).is_err());
    }

    #[test]
    fn n_cap_formula() {
        let p = GoodStarParams::new(120, 0.3, 0.05, 3).unwrap();
        assert_eq!(p.n_cap, 2);
        assert_eq!(p.designated_size(), 12);
        let p = GoodStarParams::new(1000, 0.3, 0.1, 3).unwrap();
        assert_eq!(p.n_cap, 13);
    }
}
