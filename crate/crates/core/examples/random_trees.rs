//! Degree-capped uniform random trees, structured families, valid orderings
//! and prefix subtrees.

use perturbed_trees::seed;
use perturbed_trees::tree::{family_tree, random_tree, TreeFamily};

fn main() -> perturbed_trees::Result<()> {
    let mut rng = seed::rng(42);
    for delta in [2, 3, 5] {
        let t = random_tree(200, delta, &mut rng)?;
        let leaves = (0..t.n()).filter(|&v| t.total_degree(v) == 1).count();
        println!(
            "Δ = {delta}: max degree {}, {leaves} leaves, center {}",
            t.max_total_degree(),
            t.center()
        );
    }

    let t = random_tree(12, 3, &mut rng)?;
    print!("{}", t.to_text());
    let ord = t.valid_ordering(t.center())?;
    println!("ordering from the center: {}", ord.to_text().trim());
    assert!(t.check_ordering(&ord)?);

    let pre = t.prefix_subtree(&ord, 8)?;
    println!(
        "prefix on {} vertices, original ids {:?}",
        pre.tree.n(),
        pre.to_original
    );

    for kind in [
        TreeFamily::DirectedPath,
        TreeFamily::AntiDirectedPath,
        TreeFamily::OutSpider,
        TreeFamily::BinaryOutTree,
        TreeFamily::Caterpillar,
    ] {
        let f = family_tree(kind, 9)?;
        println!("{kind:?}: {:?}", f.edges().collect::<Vec<_>>());
    }
    Ok(())
}
