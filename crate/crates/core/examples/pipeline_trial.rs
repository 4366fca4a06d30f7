//! One end-to-end trial from a JSON config, with its record and witness.

use perturbed_trees::pipeline::{run_config_trial, PipelineConfig};

fn main() -> perturbed_trees::Result<()> {
    let cfg = PipelineConfig::from_json(
        r#"{"n": 200, "alpha": 0.3, "max_degree": 3, "c": 30, "epsilon": 0.05, "seed": 4, "pack_cap": "full"}"#,
    )?;
    let out = run_config_trial(&cfg, 0)?;
    let r = &out.record;
    println!("{}", serde_json::to_string_pretty(r).expect("record serializes"));
    println!("timings (ms): {:?}", r.timings);
    if let Some(phi) = &out.witness {
        let text = phi.to_text();
        println!(
            "witness: {} lines, first {:?}",
            text.lines().count(),
            text.lines().next()
        );
    }

    // Same config and trial index, same record.
    assert_eq!(run_config_trial(&cfg, 0)?.record.canonical_json(), r.canonical_json());
    Ok(())
}
