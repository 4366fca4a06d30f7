//! Success rate as a function of c under each star cap: the concentration
//! lab's count, `⌈γn⌉`, and the whole pack.

use perturbed_trees::pipeline::{sweep, PackCap, PipelineConfig};

fn main() -> perturbed_trees::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut cells = Vec::new();
    for cap in [PackCap::Lemma, PackCap::Gamma, PackCap::Full] {
        for c in [2.0, 5.0, 10.0, 15.0, 20.0, 30.0] {
            cells.push(PipelineConfig {
                seed: 7,
                pack_cap: cap,
                ..PipelineConfig::new(300, 0.3, 3, c, 0.05)
            });
        }
    }
    let result = sweep(&cells, trials, 0)?;
    result.write_csv(std::io::stdout())?;
    for row in result.rows.iter().filter(|r| r.monotone_violation) {
        eprintln!("monotonicity flagged at c = {} ({:?})", row.c, row.pack_cap);
    }
    Ok(())
}
