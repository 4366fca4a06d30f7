//! Exhaustive tree containment for small hosts.

use crate::{Digraph, Embedding, Error, OrientedTree, Result};

/// Default host-size cap for [`contains_tree_bruteforce`].
pub const DEFAULT_LIMIT: usize = 12;

/// Searches every injective map of `tree` into `graph` for a copy of the
/// tree. Returns the first witness found, or `None` when there is no copy.
///
/// The search roots the tree at its center and extends along a breadth-first
/// ordering, pruning host vertices whose out- or in-degree is below the tree
/// vertex's. Hosts with more than `limit` vertices are rejected.
pub fn contains_tree_bruteforce(tree: &OrientedTree, graph: &Digraph, limit: usize) -> Result<Option<Embedding>> {
    if graph.n() > limit {
        return Err(Error::TooLarge { n: graph.n(), limit });
    }
    if tree.n() > graph.n() {
        return Ok(None);
    }
    let root = tree.center();
    let ord = tree.valid_ordering(root)?;
    // (parent, child, child is head of the edge)
    let steps: Vec<(usize, usize, bool)> = {
        let mut placed = vec![false; tree.n()];
        placed[root] = true;
        ord.0
            .iter()
            .map(|&e| {
                let (t, h) = tree.edge(e);
                let step = if placed[t] { (t, h, true) } else { (h, t, false) };
                placed[step.1] = true;
                step
            })
            .collect()
    };
    let fits = |t: usize, h: usize| {
        graph.out_degree(h) >= tree.out_neighbors(t).len() && graph.in_degree(h) >= tree.in_neighbors(t).len()
    };

    let mut search = Search {
        graph,
        steps: &steps,
        phi: Embedding::empty(tree.n(), graph.n()),
        fits: &fits,
    };
    for h in 0..graph.n() {
        if !fits(root, h) {
            continue;
        }
        search.phi.assign(root, h)?;
        if search.extend(0)? {
            return Ok(Some(search.phi));
        }
        search.phi.unassign(root);
    }
    Ok(None)
}

struct Search<'a, F: Fn(usize, usize) -> bool> {
    graph: &'a Digraph,
    steps: &'a [(usize, usize, bool)],
    phi: Embedding,
    fits: &'a F,
}

impl<F: Fn(usize, usize) -> bool> Search<'_, F> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        let Some(&(parent, child, forward)) = self.steps.get(depth) else {
            return Ok(true);
        };
        let p = self.phi.get(parent).expect("parent placed first");
        let candidates = if forward {
            self.graph.out_neighbors(p)
        } else {
            self.graph.in_neighbors(p)
        };
        for &h in candidates {
            let h = h as usize;
            if self.phi.is_used(h) || !(self.fits)(child, h) {
                continue;
            }
            self.phi.assign(child, h)?;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.phi.unassign(child);
        }
        Ok(false)
    }
}
