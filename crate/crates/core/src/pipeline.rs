//! End-to-end trials: embed most of the tree into the random edges, pack
//! stars, absorb the rest, verify. Plus parameter sweeps over such trials.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::time::Instant;

use crate::absorption::{
    complete_embedding, greedy_star_pack, AbsorbingCounter, CompletionFailure, CompletionOptions, TripleCount,
};
use crate::concentration::csv_err;
use crate::embed::{embed_almost, verify_embedding, Verdict};
use crate::models::{dense_base, sample_binomial_digraph, semidegree_target, BaseStyle};
use crate::seed::{self, Phase};
use crate::stats::{wilson_interval, Interval, Z95};
use crate::tree::{family_tree, random_tree, TreeFamily};
use crate::{Digraph, Embedding, Error, OrientedTree, Result, RetryPolicy};

/// How many pack stars the completion may use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackCap {
    /// `⌈min(γn, αn / (6(Δ+1)))⌉`, the star count analysed by the
    /// concentration lab.
    Lemma,
    /// `⌈γn⌉`.
    #[default]
    Gamma,
    /// Every star of the greedy pack.
    Full,
}

/// Where each trial's tree comes from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeSource {
    /// Uniform tree with total degree at most `Δ`, fresh per trial.
    #[default]
    Random,
    Family(TreeFamily),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub n: usize,
    pub alpha: f64,
    pub max_degree: usize,
    /// Random edges arrive with probability `c / n`.
    pub c: f64,
    /// Fraction of the tree left for absorption.
    pub epsilon: f64,
    /// Pack density; `1 / (2(Δ² + 1))` when absent.
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub retry: RetryPolicy,
    #[serde(default)]
    pub seed: u64,
    /// Absorbing-count threshold; `2⌈εn⌉` when absent.
    #[serde(default)]
    pub tau: Option<usize>,
    #[serde(default)]
    pub pack_cap: PackCap,
    #[serde(default = "default_base_style")]
    pub base_style: BaseStyle,
    #[serde(default)]
    pub tree: TreeSource,
    /// Re-check the completion invariants after every step.
    #[serde(default)]
    pub debug: bool,
}

fn default_base_style() -> BaseStyle {
    BaseStyle::RandomRepair
}

impl PipelineConfig {
    pub fn new(n: usize, alpha: f64, max_degree: usize, c: f64, epsilon: f64) -> Self {
        Self {
            n,
            alpha,
            max_degree,
            c,
            epsilon,
            gamma: None,
            retry: RetryPolicy::default(),
            seed: 0,
            tau: None,
            pack_cap: PackCap::default(),
            base_style: default_base_style(),
            tree: TreeSource::default(),
            debug: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
            .unwrap_or_else(|| 1.0 / (2.0 * ((self.max_degree * self.max_degree) as f64 + 1.0)))
    }

    pub fn tau(&self) -> usize {
        self.tau
            .unwrap_or_else(|| 2 * (self.epsilon * self.n as f64 - 1e-9).ceil().max(0.0) as usize)
    }

    /// Vertices of the prefix tree, `⌈(1-ε)n⌉`.
    pub fn prefix_size(&self) -> usize {
        ((1.0 - self.epsilon) * self.n as f64 - 1e-9).ceil() as usize
    }

    /// Stars handed to the completion.
    pub fn star_cap(&self) -> Option<usize> {
        let nf = self.n as f64;
        let ceil = |x: f64| (x - 1e-9).ceil().max(0.0) as usize;
        match self.pack_cap {
            PackCap::Lemma => Some(ceil(
                (self.gamma() * nf).min(self.alpha * nf / (6.0 * (self.max_degree as f64 + 1.0))),
            )),
            PackCap::Gamma => Some(ceil(self.gamma() * nf)),
            PackCap::Full => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n < 3 {
            return bad(format!("n = {} is too small", self.n));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha = {} outside (0, 1)", self.alpha));
        }
        if self.max_degree < 2 {
            return bad(format!(
                "max degree {} cannot span {} vertices",
                self.max_degree, self.n
            ));
        }
        if !(self.c >= 0.0 && self.c / self.n as f64 <= 1.0) {
            return bad(format!("c = {} needs 0 <= c/n <= 1", self.c));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0 / 3.0) {
            return bad(format!("epsilon = {} outside (0, 1/3)", self.epsilon));
        }
        let gamma = self.gamma();
        if !(gamma > 0.0 && gamma <= 1.0) || gamma * (self.n as f64) < 1.0 {
            return bad(format!("gamma = {gamma} needs gamma * n >= 1"));
        }
        if self.prefix_size() < 2 {
            return bad("prefix tree has fewer than two vertices".into());
        }
        Ok(())
    }
}

/// Milliseconds spent per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub sample_random: f64,
    pub almost_embed: f64,
    pub pack: f64,
    pub absorbing_min: f64,
    pub completion: f64,
    pub verify: f64,
}

/// Outcome of one trial. Everything but the timings is a function of the
/// config, the inputs and the trial index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub trial: u64,
    pub config: PipelineConfig,
    pub prefix_size: usize,
    pub unembedded: usize,
    pub random_edges: usize,
    pub almost_embedded: bool,
    /// Largest prefix of the tree embedded into the random edges.
    pub deepest_prefix: usize,
    pub restarts: u32,
    pub backtracks: u64,
    /// Stars in the greedy pack of the prefix tree, before the cap.
    pub pack_full: usize,
    pub pack_size: usize,
    /// Smallest absorbing count over all triples in `D_base ∪ R`.
    pub min_absorbing_all: Option<TripleCount>,
    /// Smallest absorbing count over triples whose `w` is still free.
    pub min_absorbing_free: Option<TripleCount>,
    /// Smallest count among the triples the completion actually consumed.
    pub min_absorbing_encountered: Option<usize>,
    pub tau: usize,
    /// Whether the all-triples minimum reached `τ`.
    pub hypothesis_met: Option<bool>,
    pub completed: bool,
    pub failure: Option<CompletionFailure>,
    /// Final witness verified against `D_base ∪ R`.
    pub verified: bool,
    /// The almost-spanning part verified against `R` alone.
    pub prefix_uses_random_only: Option<bool>,
    #[serde(skip)]
    pub timings: PhaseTimings,
}

impl TrialRecord {
    pub fn success(&self) -> bool {
        self.completed && self.verified
    }

    /// JSON without timings; identical inputs give identical text.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone)]
pub struct TrialOutput {
    pub record: TrialRecord,
    pub witness: Option<Embedding>,
    pub random: Digraph,
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs every phase for one trial. Phase failures are recorded in the
/// returned record; only inconsistent inputs are errors.
pub fn run_trial(cfg: &PipelineConfig, tree: &OrientedTree, base: &Digraph, trial: u64) -> Result<TrialOutput> {
    cfg.validate()?;
    let n = cfg.n;
    if tree.n() != n || base.n() != n {
        return Err(Error::SizeMismatch(tree.n().max(base.n()), n));
    }
    if tree.max_total_degree() > cfg.max_degree {
        return Err(Error::InvalidParameter(format!(
            "tree degree {} exceeds Δ = {}",
            tree.max_total_degree(),
            cfg.max_degree
        )));
    }
    let target = semidegree_target(n, cfg.alpha);
    if base.min_semidegree() < target {
        return Err(Error::InvalidParameter(format!(
            "base semidegree {} below ⌈αn⌉ = {target}",
            base.min_semidegree()
        )));
    }
    let mut timings = PhaseTimings::default();

    let ord = tree.valid_ordering(tree.center())?;
    let prefix_size = cfg.prefix_size();
    let prefix = tree.prefix_subtree(&ord, prefix_size - 1)?;

    let t = Instant::now();
    let random = sample_binomial_digraph(n, cfg.c / n as f64, seed::derive(cfg.seed, trial, Phase::Random))?;
    let host = base.union(&random)?;
    timings.sample_random = elapsed_ms(t);

    let mut record = TrialRecord {
        seed: cfg.seed,
        trial,
        config: cfg.clone(),
        prefix_size,
        unembedded: n - prefix_size,
        random_edges: random.edge_count(),
        almost_embedded: false,
        deepest_prefix: 0,
        restarts: 0,
        backtracks: 0,
        pack_full: 0,
        pack_size: 0,
        min_absorbing_all: None,
        min_absorbing_free: None,
        min_absorbing_encountered: None,
        tau: cfg.tau(),
        hypothesis_met: None,
        completed: false,
        failure: None,
        verified: false,
        prefix_uses_random_only: None,
        timings,
    };

    let t = Instant::now();
    let almost = embed_almost(
        &prefix.tree,
        &prefix.ordering,
        &random,
        seed::derive(cfg.seed, trial, Phase::Embed),
        cfg.retry,
    )?;
    record.timings.almost_embed = elapsed_ms(t);
    record.deepest_prefix = almost.stats.deepest_prefix;
    record.restarts = almost.stats.restarts;
    record.backtracks = almost.stats.backtracks;
    let Some(phi_prefix) = almost.embedding else {
        return Ok(TrialOutput {
            record,
            witness: None,
            random,
        });
    };
    record.almost_embedded = true;
    record.prefix_uses_random_only = Some(verify_embedding(&prefix.tree, &random, &phi_prefix)?.is_valid());
    let phi0 = phi_prefix.relabel_tree(&prefix.to_original, n)?;

    let t = Instant::now();
    let full_pack = greedy_star_pack(&prefix.tree).relabel(&prefix.to_original, n)?;
    record.pack_full = full_pack.len();
    let pack = match cfg.star_cap() {
        Some(cap) => full_pack.truncated(cap),
        None => full_pack,
    };
    record.pack_size = pack.len();
    record.timings.pack = elapsed_ms(t);

    let t = Instant::now();
    let used = fixedbitset::FixedBitSet::with_capacity(pack.len());
    let counter = AbsorbingCounter::new(&pack, &used, &phi0, &host)?;
    let all: Vec<usize> = (0..n).collect();
    record.min_absorbing_all = counter.minimum_over(&all);
    record.min_absorbing_free = counter.minimum_over(&phi0.unused_hosts());
    record.hypothesis_met = record.min_absorbing_all.map(|m| m.count >= record.tau);
    record.timings.absorbing_min = elapsed_ms(t);

    let t = Instant::now();
    let completion = complete_embedding(tree, &ord, &phi0, &host, &pack, CompletionOptions { debug: cfg.debug })?;
    record.timings.completion = elapsed_ms(t);
    record.min_absorbing_encountered = completion.encountered_min();
    record.failure = completion.failure.clone();
    record.completed = completion.succeeded();

    let t = Instant::now();
    if let Some(phi) = &completion.embedding {
        record.verified = verify_embedding(tree, &host, phi)? == Verdict::Valid;
    }
    record.timings.verify = elapsed_ms(t);
    Ok(TrialOutput {
        record,
        witness: completion.embedding,
        random,
    })
}

/// The base digraph used by every trial of a config.
pub fn cell_base(cfg: &PipelineConfig) -> Result<Digraph> {
    dense_base(cfg.n, cfg.alpha, cfg.base_style, seed::derive(cfg.seed, 0, Phase::Base))
}

/// The tree used by trial `trial` of a config.
pub fn trial_tree(cfg: &PipelineConfig, trial: u64) -> Result<OrientedTree> {
    match cfg.tree {
        TreeSource::Random => random_tree(cfg.n, cfg.max_degree, &mut seed::stream(cfg.seed, trial, Phase::Tree)),
        TreeSource::Family(kind) => family_tree(kind, cfg.n),
    }
}

/// Builds the base and tree from the config and runs trial `trial`.
pub fn run_config_trial(cfg: &PipelineConfig, trial: u64) -> Result<TrialOutput> {
    let base = cell_base(cfg)?;
    run_trial(cfg, &trial_tree(cfg, trial)?, &base, trial)
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub cell: usize,
    pub n: usize,
    pub alpha: f64,
    pub max_degree: usize,
    pub c: f64,
    pub epsilon: f64,
    pub pack_cap: PackCap,
    pub valid: bool,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub almost_embedded: u64,
    pub hypothesis_met: u64,
    pub mean_pack_size: f64,
    pub mean_min_absorbing: f64,
    /// Successes whose witness or random-only prefix failed re-verification.
    pub unverified_successes: u64,
    /// Set when a smaller `c` in the same group has a disjoint, higher
    /// Wilson interval.
    pub monotone_violation: bool,
    pub note: String,
}

impl SweepRow {
    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.wilson_lo,
            hi: self.wilson_hi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Records per cell in trial order; empty for invalid cells.
    pub records: Vec<Vec<TrialRecord>>,
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows_csv(&self.rows, out)
    }
}

pub fn write_rows_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    if rows.is_empty() {
        w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

const SWEEP_HEADER: [&str; 20] = [
    "cell",
    "n",
    "alpha",
    "max_degree",
    "c",
    "epsilon",
    "pack_cap",
    "valid",
    "trials",
    "successes",
    "rate",
    "wilson_lo",
    "wilson_hi",
    "almost_embedded",
    "hypothesis_met",
    "mean_pack_size",
    "mean_min_absorbing",
    "unverified_successes",
    "monotone_violation",
    "note",
];

/// Writes one CSV line per trial record.
pub fn write_records_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "trial",
        "seed",
        "success",
        "almost_embedded",
        "deepest_prefix",
        "pack_size",
        "min_absorbing_all",
        "min_absorbing_free",
        "min_absorbing_encountered",
        "tau",
        "completed",
        "verified",
        "prefix_uses_random_only",
        "failure",
        "ms_random",
        "ms_embed",
        "ms_pack",
        "ms_absorbing",
        "ms_completion",
        "ms_verify",
    ])
    .map_err(csv_err)?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in records {
        let failure = match &r.failure {
            None => String::new(),
            Some(CompletionFailure::NoAbsorbingStar { step, .. }) => {
                format!("no-absorbing-star@{step}")
            }
            Some(CompletionFailure::NotEnoughHosts { .. }) => "not-enough-hosts".into(),
        };
        let t = &r.timings;
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.success().to_string(),
            r.almost_embedded.to_string(),
            r.deepest_prefix.to_string(),
            r.pack_size.to_string(),
            opt(r.min_absorbing_all.map(|m| m.count)),
            opt(r.min_absorbing_free.map(|m| m.count)),
            opt(r.min_absorbing_encountered),
            r.tau.to_string(),
            r.completed.to_string(),
            r.verified.to_string(),
            r.prefix_uses_random_only.map(|b| b.to_string()).unwrap_or_default(),
            failure,
            format!("{:.3}", t.sample_random),
            format!("{:.3}", t.almost_embed),
            format!("{:.3}", t.pack),
            format!("{:.3}", t.absorbing_min),
            format!("{:.3}", t.completion),
            format!("{:.3}", t.verify),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Sweep grid as read from JSON: either an explicit list of cells or one
/// config swept over several `c` values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepGrid {
    Cells(Vec<PipelineConfig>),
    OverC { base: PipelineConfig, c: Vec<f64> },
}

impl SweepGrid {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("sweep grid: {e}")))
    }

    pub fn cells(&self) -> Vec<PipelineConfig> {
        match self {
            SweepGrid::Cells(cells) => cells.clone(),
            SweepGrid::OverC { base, c } => c.iter().map(|&c| PipelineConfig { c, ..base.clone() }).collect(),
        }
    }
}

/// Runs `trials` trials of every cell on `parallelism` worker threads
/// (`0` uses the default pool size).
///
/// Cells whose config or base fails validation are reported with
/// `valid = false` and no trials.
pub fn sweep(cells: &[PipelineConfig], trials: u64, parallelism: usize) -> Result<SweepResult> {
    if cells.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| {
        let bases: Vec<std::result::Result<Digraph, Error>> = cells
            .par_iter()
            .map(|cfg| cfg.validate().and_then(|_| cell_base(cfg)))
            .collect();
        let jobs: Vec<(usize, u64)> = (0..cells.len())
            .filter(|&i| bases[i].is_ok())
            .flat_map(|i| (0..trials).map(move |t| (i, t)))
            .collect();
        let outputs: Vec<(usize, Result<TrialRecord>)> = jobs
            .par_iter()
            .map(|&(i, t)| {
                let cfg = &cells[i];
                let base = bases[i].as_ref().expect("filtered");
                let rec = trial_tree(cfg, t)
                    .and_then(|tree| run_trial(cfg, &tree, base, t))
                    .map(|o| o.record);
                (i, rec)
            })
            .collect();

        let mut records: Vec<Vec<TrialRecord>> = vec![Vec::new(); cells.len()];
        let mut errors: Vec<Option<String>> = bases.iter().map(|b| b.as_ref().err().map(|e| e.to_string())).collect();
        for (i, rec) in outputs {
            match rec {
                Ok(r) => records[i].push(r),
                Err(e) => {
                    errors[i].get_or_insert(e.to_string());
                }
            }
        }
        let mut rows: Vec<SweepRow> = cells
            .iter()
            .enumerate()
            .map(|(i, cfg)| summarize(i, cfg, &records[i], errors[i].clone()))
            .collect();
        flag_monotonicity(&mut rows);
        Ok(SweepResult { rows, records })
    })
}

fn summarize(cell: usize, cfg: &PipelineConfig, records: &[TrialRecord], error: Option<String>) -> SweepRow {
    let valid = error.is_none();
    let trials = if valid { records.len() as u64 } else { 0 };
    let successes = records.iter().filter(|r| r.success()).count() as u64;
    let ci = wilson_interval(successes, trials, Z95);
    let mean = |f: &dyn Fn(&TrialRecord) -> Option<f64>| {
        let v: Vec<f64> = records.iter().filter_map(f).collect();
        if v.is_empty() {
            f64::NAN
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    SweepRow {
        cell,
        n: cfg.n,
        alpha: cfg.alpha,
        max_degree: cfg.max_degree,
        c: cfg.c,
        epsilon: cfg.epsilon,
        pack_cap: cfg.pack_cap,
        valid,
        trials,
        successes,
        rate: if trials > 0 {
            successes as f64 / trials as f64
        } else {
            f64::NAN
        },
        wilson_lo: ci.lo,
        wilson_hi: ci.hi,
        almost_embedded: records.iter().filter(|r| r.almost_embedded).count() as u64,
        hypothesis_met: records.iter().filter(|r| r.hypothesis_met == Some(true)).count() as u64,
        mean_pack_size: mean(&|r| r.almost_embedded.then_some(r.pack_size as f64)),
        mean_min_absorbing: mean(&|r| r.min_absorbing_all.map(|m| m.count as f64)),
        unverified_successes: records
            .iter()
            .filter(|r| r.completed && !(r.verified && r.prefix_uses_random_only == Some(true)))
            .count() as u64,
        monotone_violation: false,
        note: error.unwrap_or_default(),
    }
}

/// Rows agreeing on everything but `c` form a group. A row is flagged when
/// some row of its group with smaller `c` has a Wilson interval entirely
/// above its own.
fn flag_monotonicity(rows: &mut [SweepRow]) {
    let key = |r: &SweepRow| (r.n, r.alpha.to_bits(), r.max_degree, r.epsilon.to_bits(), r.pack_cap);
    let flags: Vec<bool> = rows
        .iter()
        .map(|r| {
            r.valid
                && rows
                    .iter()
                    .any(|o| o.valid && key(o) == key(r) && o.c < r.c && o.interval().lo > r.interval().hi)
        })
        .collect();
    for (row, flag) in rows.iter_mut().zip(flags) {
        row.monotone_violation = flag;
    }
}
