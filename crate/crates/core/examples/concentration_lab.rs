//! Closed-form good-star probabilities against Monte Carlo under uniform
//! injections.

use perturbed_trees::absorption::greedy_star_pack;
use perturbed_trees::concentration::{
    azuma_tail, good_star_probability, good_star_probability_exact, run_concentration_experiment,
    simulate_good_frequency, ExperimentConfig, GoodStarParams, TripleSelection,
};
use perturbed_trees::models::{dense_base, BaseStyle};
use perturbed_trees::seed;
use perturbed_trees::tree::random_tree;

fn main() -> perturbed_trees::Result<()> {
    let p = GoodStarParams::new(30, 0.3, 0.05, 3)?;
    println!(
        "Pr[good] for a 2-vertex star at n = 30: {} = {:.7}",
        good_star_probability_exact(&p, 1, 0)?,
        good_star_probability(&p, 1, 0)
    );
    let trials = 100_000;
    let hits = simulate_good_frequency(30, 3, 1, 0, trials, 1)?;
    println!("simulated: {:.7}", hits as f64 / trials as f64);
    println!("azuma_tail(100, 1, 20) = {:.7}", azuma_tail(100, 1.0, 20.0));

    let n = 120;
    let base = dense_base(n, 0.3, BaseStyle::RandomRepair, seed::derive(0, 0, seed::Phase::Base))?;
    let tree = random_tree(n, 3, &mut seed::stream(0, 0, seed::Phase::Tree))?;
    for gamma in [0.05, 0.2] {
        let params = GoodStarParams::new(n, 0.3, gamma, 3)?;
        let cfg = ExperimentConfig {
            trials: 500,
            seed: 0,
            triples: TripleSelection::default(),
        };
        let r = run_concentration_experiment(&base, &tree, &greedy_star_pack(&tree), &params, &cfg)?;
        println!(
            "γ = {gamma}: N = {}, E[X] = {:.4}, max |z| = {:.2}, c4 = {:.4}, worst Pr[X < E/2] = {:.3} vs bound {:.3}, min > 0 in {:.1}% of trials",
            r.stars,
            r.expected,
            r.max_abs_z,
            r.c4,
            r.max_below_half_rate,
            r.azuma_bound,
            100.0 * r.min_positive_rate
        );
    }
    Ok(())
}
