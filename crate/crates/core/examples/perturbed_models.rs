//! Dense bases, binomial random digraphs and their union.

use perturbed_trees::models::{
    dense_base, perturb, sample_binomial_digraph, sample_mirrored_digraph, semidegree_target, BaseStyle,
};

fn main() -> perturbed_trees::Result<()> {
    let n = 300;
    let alpha = 0.3;
    println!("semidegree target ⌈αn⌉ = {}", semidegree_target(n, alpha));
    for style in [
        BaseStyle::DoubledBipartite,
        BaseStyle::BlownCycle,
        BaseStyle::RandomRepair,
    ] {
        let g = dense_base(n, alpha, style, 1)?;
        println!(
            "{style:?}: {} edges, min semidegree {}",
            g.edge_count(),
            g.min_semidegree()
        );
    }

    for c in [1.0, 5.0, 20.0] {
        let r = sample_binomial_digraph(n, c / n as f64, 7)?;
        let isolated = (0..n).filter(|&v| r.out_degree(v) + r.in_degree(v) == 0).count();
        println!(
            "D(n, {c}/n): {} edges (mean {:.0}), {isolated} isolated",
            r.edge_count(),
            c * (n - 1) as f64
        );
    }

    let mirrored = sample_mirrored_digraph(n, 0.02, 3)?;
    let digons = mirrored
        .edges()
        .filter(|&(u, v)| u < v && mirrored.has_edge(v, u))
        .count();
    println!("mirrored model: {} edges, {digons} digons", mirrored.edge_count());

    let base = dense_base(n, alpha, BaseStyle::RandomRepair, 1)?;
    let p = perturb(&base, 5.0, 9)?;
    println!(
        "perturbed: base {} + random {} -> {} edges",
        base.edge_count(),
        p.random.edge_count(),
        p.graph.edge_count()
    );
    Ok(())
}
