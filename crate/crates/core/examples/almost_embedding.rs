//! Embedding 95% of a bounded-degree tree into the random edges alone.

use perturbed_trees::embed::{embed_almost, verify_embedding};
use perturbed_trees::models::sample_binomial_digraph;
use perturbed_trees::tree::random_tree;
use perturbed_trees::{seed, RetryPolicy};

fn main() -> perturbed_trees::Result<()> {
    let n = 300;
    let tree = random_tree(n, 3, &mut seed::rng(1))?;
    let ord = tree.valid_ordering(tree.center())?;
    let prefix = tree.prefix_subtree(&ord, 284)?;

    println!("c     success  deepest  restarts  backtracks");
    for c in [5.0, 10.0, 15.0, 20.0, 40.0] {
        let r = sample_binomial_digraph(n, c / n as f64, 2)?;
        let out = embed_almost(&prefix.tree, &prefix.ordering, &r, 3, RetryPolicy::default())?;
        if let Some(phi) = &out.embedding {
            assert!(verify_embedding(&prefix.tree, &r, phi)?.is_valid());
        }
        println!(
            "{c:<5} {:<8} {:<8} {:<9} {}",
            out.succeeded(),
            out.stats.deepest_prefix,
            out.stats.restarts,
            out.stats.backtracks
        );
    }
    Ok(())
}
