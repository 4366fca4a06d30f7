//! Command-line front end. Exit codes: 0 success, 1 phase failure,
//! 2 invalid input.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fixedbitset::FixedBitSet;

use perturbed_trees::absorption::{greedy_star_pack, AbsorbingCounter, Sign};
use perturbed_trees::concentration::{run_concentration_experiment, ExperimentConfig, GoodStarParams, TripleSelection};
use perturbed_trees::embed::{embed_almost, verify_embedding, Verdict};
use perturbed_trees::models::{dense_base, sample_binomial_digraph, sample_mirrored_digraph, BaseStyle};
use perturbed_trees::oracle::{contains_tree_bruteforce, DEFAULT_LIMIT};
use perturbed_trees::pipeline::{run_config_trial, sweep, write_records_csv, PipelineConfig, SweepGrid};
use perturbed_trees::tree::{family_tree, random_tree, TreeFamily};
use perturbed_trees::{seed, Digraph, EdgeOrdering, Embedding, Error, OrientedTree, RetryPolicy};

#[derive(Parser)]
#[command(
    name = "ptrees",
    version,
    about = "Spanning oriented trees in randomly perturbed digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dense base digraph with minimum semidegree at least ⌈αn⌉.
    GenBase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "random-repair")]
        style: BaseStyle,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random or structured oriented tree.
    GenTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Deterministic family instead of a uniform random tree.
        #[arg(long)]
        family: Option<TreeFamily>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a breadth-first valid ordering from the tree center.
        #[arg(long)]
        ordering_out: Option<PathBuf>,
    },
    /// Binomial random digraph, optionally unioned with a base.
    GenRandom {
        #[arg(long)]
        n: usize,
        /// Edge probability; give this or `--c`.
        #[arg(long, conflicts_with = "c")]
        p: Option<f64>,
        /// Edge probability c/n.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_enum, default_value_t = RandomModel::Binomial)]
        model: RandomModel,
        /// Union the sample with this base graph.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Almost-spanning embedding of a tree (or its prefix) by randomized
    /// backtracking.
    Embed {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// Random edge set R; the host is then `host ∪ R`.
        #[arg(long)]
        random: Option<PathBuf>,
        /// Embed into and verify against R alone.
        #[arg(long, requires = "random")]
        random_only: bool,
        #[arg(long)]
        ordering: Option<PathBuf>,
        /// Embed only the prefix tree on this many vertices.
        #[arg(long)]
        prefix: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        backtrack_budget: u64,
        #[arg(long, default_value_t = 20)]
        max_restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Absorbing counts for every triple `(u, sign, w)` as CSV.
    AbsorbCount {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Embedding of a prefix of the ordering.
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        ordering: Option<PathBuf>,
        /// Keep only the first this many pack stars.
        #[arg(long)]
        cap: Option<usize>,
        /// Emit `count,triples` instead of one row per triple.
        #[arg(long)]
        histogram: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Good-star counts under uniform injections.
    Concentration {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value = "random-repair")]
        style: BaseStyle,
        /// Every triple instead of the sampled set.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `triple_id,trial,count` rows.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Exhaustive containment check for small hosts. Exits 1 when the tree
    /// is not contained.
    Oracle {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// End-to-end trials from a JSON config. Exits 1 if any trial fails.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Per-trial CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// One canonical JSON record per line.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Directory for `trial-<k>.emb` witness files.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Success rates over a grid of configs. Exits 1 on a monotonicity or
    /// re-verification violation.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        parallelism: usize,
        /// Overrides every cell's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks an embedding file. Exits 1 when an edge is missing.
    Verify {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomModel {
    Binomial,
    Mirrored,
}

enum Failure {
    Phase(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Phase(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Digraph, Error> {
    Digraph::parse_edge_list(BufReader::new(read(path)?.as_bytes()))
}

fn load_tree(path: &Path) -> Result<OrientedTree, Error> {
    OrientedTree::parse_text(BufReader::new(read(path)?.as_bytes()))
}

fn load_ordering(tree: &OrientedTree, path: Option<&Path>) -> Result<EdgeOrdering, Error> {
    match path {
        Some(p) => EdgeOrdering::parse_text(&read(p)?),
        None => tree.valid_ordering(tree.center()),
    }
}

fn load_embedding(path: &Path, tree_size: usize, host_size: usize) -> Result<Embedding, Error> {
    Embedding::parse_text(BufReader::new(read(path)?.as_bytes()), tree_size, host_size)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn writer(out: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::GenBase {
            n,
            alpha,
            style,
            seed,
            out,
        } => {
            let g = dense_base(n, alpha, style, seed)?;
            emit(out.as_deref(), &g.to_edge_list())?;
        }
        Command::GenTree {
            n,
            max_degree,
            family,
            seed,
            out,
            ordering_out,
        } => {
            let t = match family {
                Some(kind) => family_tree(kind, n)?,
                None => random_tree(n, max_degree, &mut seed::rng(seed))?,
            };
            emit(out.as_deref(), &t.to_text())?;
            if let Some(p) = ordering_out {
                emit(Some(&p), &t.valid_ordering(t.center())?.to_text())?;
            }
        }
        Command::GenRandom {
            n,
            p,
            c,
            model,
            base,
            seed,
            out,
        } => {
            let p = match (p, c) {
                (Some(p), None) => p,
                (None, Some(c)) => c / n as f64,
                _ => return Err(Error::InvalidParameter("give exactly one of --p and --c".into()).into()),
            };
            let mut g = match model {
                RandomModel::Binomial => sample_binomial_digraph(n, p, seed)?,
                RandomModel::Mirrored => sample_mirrored_digraph(n, p, seed)?,
            };
            if let Some(b) = base {
                g = load_graph(&b)?.union(&g)?;
            }
            emit(out.as_deref(), &g.to_edge_list())?;
        }
        Command::Embed {
            tree,
            host,
            random,
            random_only,
            ordering,
            prefix,
            backtrack_budget,
            max_restarts,
            seed,
            out,
        } => {
            let t = load_tree(&tree)?;
            let ord = load_ordering(&t, ordering.as_deref())?;
            let mut target = load_graph(&host)?;
            if let Some(r) = random {
                let r = load_graph(&r)?;
                target = if random_only { r } else { target.union(&r)? };
            }
            let (sub, sub_ord, relabel) = match prefix {
                Some(k) if k < t.n() => {
                    let pre = t.prefix_subtree(&ord, k.saturating_sub(1))?;
                    (pre.tree, pre.ordering, Some(pre.to_original))
                }
                _ => (t.clone(), ord, None),
            };
            let policy = RetryPolicy {
                backtrack_budget,
                max_restarts,
            };
            let outcome = embed_almost(&sub, &sub_ord, &target, seed, policy)?;
            let Some(phi) = outcome.embedding else {
                return Err(Failure::Phase(format!(
                    "embedding failed: deepest prefix {} of {} edges after {} restarts",
                    outcome.stats.deepest_prefix,
                    sub.edge_count(),
                    outcome.stats.restarts
                )));
            };
            if !verify_embedding(&sub, &target, &phi)?.is_valid() {
                return Err(Failure::Phase("embedding does not verify".into()));
            }
            let phi = match relabel {
                Some(map) => phi.relabel_tree(&map, t.n())?,
                None => phi,
            };
            emit(out.as_deref(), &phi.to_text())?;
        }
        Command::AbsorbCount {
            tree,
            graph,
            embedding,
            ordering,
            cap,
            histogram,
            out,
        } => {
            let t = load_tree(&tree)?;
            let g = load_graph(&graph)?;
            let phi = load_embedding(&embedding, t.n(), g.n())?;
            let ord = load_ordering(&t, ordering.as_deref())?;
            let mapped = phi.mapped_count();
            let pack = if mapped == t.n() {
                greedy_star_pack(&t)
            } else if mapped >= 2 {
                let pre = t.prefix_subtree(&ord, mapped - 1)?;
                greedy_star_pack(&pre.tree).relabel(&pre.to_original, t.n())?
            } else {
                return Err(Error::InvalidParameter("embedding maps fewer than two vertices".into()).into());
            };
            let pack = cap.map_or(pack.clone(), |k| pack.truncated(k));
            let counter = AbsorbingCounter::new(&pack, &FixedBitSet::with_capacity(pack.len()), &phi, &g)?;
            let n = g.n();
            let mut w = csv::Writer::from_writer(writer(out.as_deref())?);
            let io_err = |e: csv::Error| Failure::Input(Error::Io(e.to_string()));
            if histogram {
                let mut hist = vec![0u64; pack.len() + 1];
                for ww in 0..n {
                    for u in 0..n {
                        for sign in Sign::BOTH {
                            hist[counter.count(u, sign, ww)] += 1;
                        }
                    }
                }
                w.write_record(["count", "triples"]).map_err(io_err)?;
                for (c, k) in hist.iter().enumerate().filter(|(_, &k)| k > 0) {
                    w.serialize((c, k)).map_err(io_err)?;
                }
            } else {
                w.write_record(["u", "w", "sign", "count"]).map_err(io_err)?;
                for u in 0..n {
                    for ww in 0..n {
                        for sign in Sign::BOTH {
                            w.serialize((u, ww, sign.symbol(), counter.count(u, sign, ww)))
                                .map_err(io_err)?;
                        }
                    }
                }
            }
            w.flush().map_err(Error::from)?;
            let all: Vec<usize> = (0..n).collect();
            let min = counter.minimum_over(&all).expect("nonempty host");
            eprintln!(
                "stars {}  min over all triples {} at ({}, {}, {})",
                pack.len(),
                min.count,
                min.triple.u,
                min.triple.sign,
                min.triple.w
            );
            if let Some(m) = counter.minimum_over(&phi.unused_hosts()) {
                eprintln!(
                    "min over free targets {} at ({}, {}, {})",
                    m.count, m.triple.u, m.triple.sign, m.triple.w
                );
            }
        }
        Command::Concentration {
            n,
            alpha,
            max_degree,
            gamma,
            trials,
            style,
            full,
            seed,
            out,
            summary,
        } => {
            let base = dense_base(n, alpha, style, seed::derive(seed, 0, seed::Phase::Base))?;
            let tree = random_tree(n, max_degree, &mut seed::stream(seed, 0, seed::Phase::Tree))?;
            let params = GoodStarParams::new(n, alpha, gamma, max_degree)?;
            let cfg = ExperimentConfig {
                trials,
                seed,
                triples: if full {
                    TripleSelection::Full
                } else {
                    TripleSelection::default()
                },
            };
            let report = run_concentration_experiment(&base, &tree, &greedy_star_pack(&tree), &params, &cfg)?;
            report.write_counts_csv(writer(out.as_deref())?)?;
            match summary {
                Some(p) => emit(Some(&p), &report.summary_json())?,
                None => eprintln!("{}", report.summary_json()),
            }
            if report.good_not_absorbing > 0 {
                return Err(Failure::Phase(format!(
                    "{} good stars were not absorbing",
                    report.good_not_absorbing
                )));
            }
        }
        Command::Oracle {
            tree,
            graph,
            limit,
            witness,
        } => {
            let t = load_tree(&tree)?;
            let g = load_graph(&graph)?;
            match contains_tree_bruteforce(&t, &g, limit)? {
                Some(phi) => {
                    println!("contained");
                    if let Some(p) = witness {
                        emit(Some(&p), &phi.to_text())?;
                    }
                }
                None => return Err(Failure::Phase("not contained".into())),
            }
        }
        Command::Run {
            config,
            trial,
            trials,
            seed,
            out,
            records,
            witness_dir,
        } => {
            let mut cfg = PipelineConfig::from_json(&read(&config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(dir) = &witness_dir {
                fs::create_dir_all(dir).map_err(Error::from)?;
            }
            let mut recs = Vec::new();
            for k in trial..trial + trials {
                let output = run_config_trial(&cfg, k)?;
                if let (Some(dir), Some(phi)) = (&witness_dir, &output.witness) {
                    emit(Some(&dir.join(format!("trial-{k}.emb"))), &phi.to_text())?;
                }
                recs.push(output.record);
            }
            write_records_csv(&recs, writer(out.as_deref())?)?;
            if let Some(p) = records {
                let lines: String = recs.iter().map(|r| r.canonical_json() + "\n").collect();
                emit(Some(&p), &lines)?;
            }
            let failed = recs.iter().filter(|r| !r.success()).count();
            if failed > 0 {
                return Err(Failure::Phase(format!("{failed} of {} trials failed", recs.len())));
            }
        }
        Command::Sweep {
            config,
            trials,
            parallelism,
            seed,
            out,
        } => {
            let mut cells = SweepGrid::from_json(&read(&config)?)?.cells();
            if let Some(s) = seed {
                cells.iter_mut().for_each(|c| c.seed = s);
            }
            let result = sweep(&cells, trials, parallelism)?;
            result.write_csv(writer(out.as_deref())?)?;
            let flagged = result
                .rows
                .iter()
                .filter(|r| r.monotone_violation || r.unverified_successes > 0)
                .count();
            if flagged > 0 {
                return Err(Failure::Phase(format!("{flagged} cells flagged")));
            }
        }
        Command::Verify { tree, graph, embedding } => {
            let t = load_tree(&tree)?;
            let g = load_graph(&graph)?;
            let phi = load_embedding(&embedding, t.n(), g.n())?;
            match verify_embedding(&t, &g, &phi)? {
                Verdict::Valid => println!("valid"),
                Verdict::MissingEdge { tree_edge, host_edge } => {
                    return Err(Failure::Phase(format!(
                        "tree edge {tree_edge:?} maps to missing host edge {host_edge:?}"
                    )))
                }
            }
        }
    }
    Ok(())
}
