//! Building digraphs, querying neighborhoods and round-tripping the edge-list
//! format.

use perturbed_trees::models::doubled_complete_bipartite;
use perturbed_trees::Digraph;

fn main() -> perturbed_trees::Result<()> {
    let mut g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)])?;
    println!("n = {}, m = {}", g.n(), g.edge_count());
    println!("N+(0) = {:?}, N-(0) = {:?}", g.out_neighbors(0), g.in_neighbors(0));

    // Adding an edge twice is a no-op.
    assert!(g.add_edge(4, 3)?);
    assert!(!g.add_edge(4, 3)?);
    println!("min semidegree {}", g.min_semidegree());

    let k = doubled_complete_bipartite(2, 3)?;
    let union = k.union(&g)?;
    println!(
        "K(2,3) doubled has {} edges, union with g has {}",
        k.edge_count(),
        union.edge_count()
    );
    assert!(g.is_subgraph_of(&union));

    let text = g.to_edge_list();
    print!("{text}");
    let back = Digraph::parse_edge_list(text.as_bytes())?;
    assert_eq!(back, g);

    // Malformed input is rejected with the offending line.
    match Digraph::parse_edge_list("digraph 3 1\n0 0\n".as_bytes()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
