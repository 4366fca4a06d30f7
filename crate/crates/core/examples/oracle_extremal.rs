//! Exhaustive containment on the extremal examples, and the coupling between
//! D(n, p) and the mirrored model.

use perturbed_trees::models::{doubled_complete_bipartite, sample_binomial_digraph, sample_mirrored_digraph};
use perturbed_trees::oracle::contains_tree_bruteforce;
use perturbed_trees::tree::{family_tree, TreeFamily};
use perturbed_trees::Digraph;

fn main() -> perturbed_trees::Result<()> {
    let path = |n| family_tree(TreeFamily::DirectedPath, n);
    let k22 = doubled_complete_bipartite(2, 2)?;
    let k24 = doubled_complete_bipartite(2, 4)?;
    let c4 = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])?;
    let anti = family_tree(TreeFamily::AntiDirectedPath, 4)?;

    println!(
        "P4 in doubled K(2,2): {}",
        contains_tree_bruteforce(&path(4)?, &k22, 12)?.is_some()
    );
    println!(
        "P6 in doubled K(2,4): {}",
        contains_tree_bruteforce(&path(6)?, &k24, 12)?.is_some()
    );
    println!(
        "anti-directed P4 in C4: {}",
        contains_tree_bruteforce(&anti, &c4, 12)?.is_some()
    );
    println!(
        "directed P4 in C4: {}",
        contains_tree_bruteforce(&path(4)?, &c4, 12)?.is_some()
    );

    let samples = 20_000u64;
    let t = path(4)?;
    let (mut plain, mut mirrored) = (0, 0);
    for s in 0..samples {
        plain += u64::from(contains_tree_bruteforce(&t, &sample_binomial_digraph(5, 0.3, s)?, 12)?.is_some());
        mirrored += u64::from(contains_tree_bruteforce(&t, &sample_mirrored_digraph(5, 0.3, s)?, 12)?.is_some());
    }
    println!(
        "Pr[P4 ⊆ D(5, 0.3)] ≈ {:.4}, Pr[P4 ⊆ D*(5, 0.3)] ≈ {:.4}",
        plain as f64 / samples as f64,
        mirrored as f64 / samples as f64
    );
    Ok(())
}
