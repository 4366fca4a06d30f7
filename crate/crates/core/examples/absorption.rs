//! Star packing, absorbing counts and the completion step by step.

use fixedbitset::FixedBitSet;
use perturbed_trees::absorption::{
    complete_embedding, greedy_star_pack, min_absorbing_over_triples, AbsorbingCounter, CompletionOptions, Sign,
};
use perturbed_trees::embed::{embed_almost, verify_embedding};
use perturbed_trees::models::{dense_base, perturb, BaseStyle};
use perturbed_trees::tree::random_tree;
use perturbed_trees::{seed, RetryPolicy};

fn main() -> perturbed_trees::Result<()> {
    let n = 120;
    let tree = random_tree(n, 3, &mut seed::rng(5))?;
    let ord = tree.valid_ordering(tree.center())?;
    let prefix = tree.prefix_subtree(&ord, n - 1 - 6)?;

    let pack = greedy_star_pack(&prefix.tree);
    let d = prefix.tree.max_total_degree();
    println!(
        "pack of {} stars, bound n'/(Δ²+1) = {:.1}",
        pack.len(),
        prefix.tree.n() as f64 / (d * d + 1) as f64
    );

    let base = dense_base(n, 0.3, BaseStyle::RandomRepair, 1)?;
    let host = perturb(&base, 40.0, 2)?;
    let out = embed_almost(&prefix.tree, &prefix.ordering, &host.random, 3, RetryPolicy::default())?;
    let Some(phi_prefix) = out.embedding else {
        println!("almost-spanning phase failed at depth {}", out.stats.deepest_prefix);
        return Ok(());
    };
    let phi0 = phi_prefix.relabel_tree(&prefix.to_original, n)?;
    let pack = pack.relabel(&prefix.to_original, n)?;

    let min = min_absorbing_over_triples(&pack, &phi0, &host.graph, &phi0.unused_hosts())?;
    println!(
        "min absorbing count {} at ({}, {}, {}); over free targets {:?}",
        min.all.count,
        min.all.triple.u,
        min.all.triple.sign,
        min.all.triple.w,
        min.restricted.map(|m| m.count)
    );

    let counter = AbsorbingCounter::new(&pack, &FixedBitSet::with_capacity(pack.len()), &phi0, &host.graph)?;
    println!(
        "count(0, +, 1) = {}, count(0, -, 1) = {}",
        counter.count(0, Sign::Plus, 1),
        counter.count(0, Sign::Minus, 1)
    );

    let done = complete_embedding(
        &tree,
        &ord,
        &phi0,
        &host.graph,
        &pack,
        CompletionOptions { debug: true },
    )?;
    for s in &done.steps {
        println!(
            "step {}: edge {:?}, star {} moves to {}, {} absorbing stars available",
            s.step, s.tree_edge, s.star, s.triple.w, s.absorbing_before
        );
    }
    match done.embedding {
        Some(phi) => println!(
            "complete, valid = {}",
            verify_embedding(&tree, &host.graph, &phi)?.is_valid()
        ),
        None => println!("stuck: {:?}", done.failure),
    }
    Ok(())
}
