//! Oriented trees, valid edge orderings and tree generators.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{parse_err, parse_num};
use crate::{Error, Result};

/// A digraph whose underlying undirected graph is a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedTree {
    n: usize,
    edges: Vec<(u32, u32)>,
    out_nbrs: Vec<Vec<u32>>,
    in_nbrs: Vec<Vec<u32>>,
    // (neighbor, edge index), ascending by neighbor
    incident: Vec<Vec<(u32, u32)>>,
    max_total_degree: usize,
}

impl OrientedTree {
    /// Validates `edges` as an oriented tree on `n ≥ 1` vertices.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!("{} edges on {n} vertices", edges.len())));
        }
        let mut out_nbrs = vec![Vec::new(); n];
        let mut in_nbrs = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (idx, &(t, h)) in edges.iter().enumerate() {
            for v in [t, h] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if t == h {
                return Err(Error::SelfLoop(t));
            }
            out_nbrs[t].push(h as u32);
            in_nbrs[h].push(t as u32);
            incident[t].push((h as u32, idx as u32));
            incident[h].push((t as u32, idx as u32));
        }
        for lists in [&mut out_nbrs, &mut in_nbrs] {
            lists.iter_mut().for_each(|l| l.sort_unstable());
        }
        incident.iter_mut().for_each(|l| l.sort_unstable());

        // n - 1 edges plus connectivity makes it a tree.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &incident[x] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    reached += 1;
                    stack.push(y as usize);
                }
            }
        }
        if reached != n {
            return Err(Error::NotATree(format!(
                "underlying graph disconnected ({reached} of {n} vertices reachable from 0)"
            )));
        }
        let max_total_degree = incident.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Self {
            n,
            edges: edges.into_iter().map(|(t, h)| (t as u32, h as u32)).collect(),
            out_nbrs,
            in_nbrs,
            incident,
            max_total_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(tail, head)` of edge `idx`.
    pub fn edge(&self, idx: usize) -> (usize, usize) {
        let (t, h) = self.edges[idx];
        (t as usize, h as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(t, h)| (t as usize, h as usize))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out_nbrs[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.in_nbrs[v]
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Maximum of in-degree plus out-degree over all vertices.
    pub fn max_total_degree(&self) -> usize {
        self.max_total_degree
    }

    /// Undirected neighbors of `v` with the connecting edge index, ascending.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.incident[v].iter().map(|&(w, e)| (w as usize, e as usize))
    }

    /// A vertex of minimum eccentricity (smallest id among ties).
    pub fn center(&self) -> usize {
        // Peel leaves layer by layer; the last layer holds the center(s).
        if self.n <= 2 {
            return 0;
        }
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.total_degree(v)).collect();
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for (w, _) in self.incident(leaf) {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.into_iter().min().unwrap_or(0)
    }

    /// Breadth-first valid ordering from `root`, children visited in
    /// ascending vertex order.
    pub fn valid_ordering(&self, root: usize) -> Result<EdgeOrdering> {
        if root >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                n: self.n,
            });
        }
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.edges.len());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            for (y, e) in self.incident(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(e);
                    queue.push_back(y);
                }
            }
        }
        Ok(EdgeOrdering(order))
    }

    /// Whether `ord` satisfies prefix-connectivity: every edge after the
    /// first shares exactly one endpoint with the edges before it.
    ///
    /// Fails if `ord` is not a permutation of the edge indices.
    pub fn check_ordering(&self, ord: &EdgeOrdering) -> Result<bool> {
        self.check_permutation(ord)?;
        Ok(self.first_violation(ord).is_none())
    }

    fn check_permutation(&self, ord: &EdgeOrdering) -> Result<()> {
        let m = self.edges.len();
        if ord.0.len() != m {
            return Err(Error::NotAPermutation(format!("length {} for {m} edges", ord.0.len())));
        }
        let mut seen = vec![false; m];
        for &e in &ord.0 {
            if e >= m || std::mem::replace(&mut seen[e], true) {
                return Err(Error::NotAPermutation(format!(
                    "edge index {e} repeated or out of range"
                )));
            }
        }
        Ok(())
    }

    fn first_violation(&self, ord: &EdgeOrdering) -> Option<usize> {
        let mut covered = vec![false; self.n];
        for (pos, &e) in ord.0.iter().enumerate() {
            let (t, h) = self.edge(e);
            if pos > 0 && covered[t] == covered[h] {
                return Some(pos);
            }
            covered[t] = true;
            covered[h] = true;
        }
        None
    }

    /// The subtree spanned by the first `k` edges of a valid ordering.
    ///
    /// Sub-vertex ids follow ascending original ids and sub-edges keep the
    /// original edge order, so `k = n - 1` reproduces the tree exactly.
    pub fn prefix_subtree(&self, ord: &EdgeOrdering, k: usize) -> Result<PrefixTree> {
        if k == 0 || k > self.edges.len() {
            return Err(Error::InvalidParameter(format!(
                "prefix length {k} outside 1..={}",
                self.edges.len()
            )));
        }
        self.check_permutation(ord)?;
        if let Some(pos) = self.first_violation(ord) {
            return Err(Error::InvalidOrdering(pos));
        }
        let mut chosen: Vec<usize> = ord.0[..k].to_vec();
        chosen.sort_unstable();
        let mut in_prefix = vec![false; self.n];
        for &e in &chosen {
            let (t, h) = self.edge(e);
            in_prefix[t] = true;
            in_prefix[h] = true;
        }
        let to_original: Vec<u32> = (0..self.n).filter(|&v| in_prefix[v]).map(|v| v as u32).collect();
        let mut from_original = vec![None; self.n];
        for (s, &o) in to_original.iter().enumerate() {
            from_original[o as usize] = Some(s as u32);
        }
        let sub = |v: usize| from_original[v].expect("prefix vertex") as usize;
        let edges = chosen
            .iter()
            .map(|&e| {
                let (t, h) = self.edge(e);
                (sub(t), sub(h))
            })
            .collect();
        let tree = OrientedTree::new(to_original.len(), edges)?;
        let ordering = EdgeOrdering(
            ord.0[..k]
                .iter()
                .map(|e| chosen.binary_search(e).expect("chosen edge"))
                .collect(),
        );
        Ok(PrefixTree {
            tree,
            ordering,
            to_original,
            from_original,
            original_edges: chosen,
        })
    }

    /// Serializes as `tree <n>` followed by one `tail head` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "tree {}", self.n).unwrap();
        for (t, h) in self.edges() {
            writeln!(s, "{t} {h}").unwrap();
        }
        s
    }

    pub fn parse_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let n = match lines.next() {
            Some((_, line)) => {
                let line = line?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                match parts.as_slice() {
                    ["tree", n] => parse_num(n, 1)?,
                    _ => return Err(parse_err(1, "expected header `tree <n>`")),
                }
            }
            None => return Err(parse_err(1, "empty input")),
        };
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (idx, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [t, h] => edges.push((parse_num(t, idx + 1)?, parse_num(h, idx + 1)?)),
                _ => return Err(parse_err(idx + 1, "expected `tail head`")),
            }
        }
        OrientedTree::new(n, edges)
    }
}

/// A permutation of a tree's edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOrdering(pub Vec<usize>);

impl EdgeOrdering {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whitespace-separated edge indices.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        parts.join(" ") + "\n"
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| parse_num(tok, 1))
            .collect::<Result<Vec<_>>>()
            .map(EdgeOrdering)
    }
}

/// A prefix subtree together with its vertex relabelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTree {
    pub tree: OrientedTree,
    /// The first `k` edges of the parent ordering, in sub-edge indices.
    pub ordering: EdgeOrdering,
    pub to_original: Vec<u32>,
    pub from_original: Vec<Option<u32>>,
    /// Sub-edge index → original edge index.
    pub original_edges: Vec<usize>,
}

/// Uniform random labelled tree with underlying degrees at most `max_degree`,
/// each edge oriented by an independent fair coin.
///
/// Labelled trees with degree caps correspond to Prüfer sequences in which
/// every label appears at most `max_degree - 1` times. Letter multiplicities
/// are drawn as independent truncated Poisson variables and rejected unless
/// they sum to `n - 2`; conditioning on the sum makes each multiplicity vector
/// appear with probability proportional to its multinomial coefficient, and
/// shuffling the multiset then yields an exactly uniform capped sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Result<OrientedTree> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("random tree needs n >= 2, got {n}")));
    }
    if max_degree == 0 || (max_degree == 1 && n > 2) {
        return Err(Error::InvalidParameter(format!(
            "no tree on {n} vertices has maximum degree {max_degree}"
        )));
    }
    let len = n - 2;
    let mut code = Vec::with_capacity(len);
    if len > 0 {
        let cap = (max_degree - 1).min(len);
        let lambda = truncated_poisson_rate(cap, len as f64 / n as f64);
        let mut weights = Vec::with_capacity(cap + 1);
        let mut w = 1.0f64;
        for j in 0..=cap {
            if j > 0 {
                w *= lambda / j as f64;
            }
            weights.push(w);
        }
        let dist = WeightedIndex::new(&weights).expect("positive weights");
        let mut counts = vec![0usize; n];
        loop {
            let mut total = 0;
            for c in counts.iter_mut() {
                *c = dist.sample(rng);
                total += *c;
            }
            if total == len {
                break;
            }
        }
        for (label, &c) in counts.iter().enumerate() {
            code.extend(std::iter::repeat_n(label, c));
        }
        code.shuffle(rng);
    }
    let undirected = prufer_decode(n, &code);
    let edges = undirected
        .into_iter()
        .map(|(a, b)| if rng.random::<bool>() { (a, b) } else { (b, a) })
        .collect();
    OrientedTree::new(n, edges)
}

/// Rate `λ` at which a Poisson variable truncated to `0..=cap` has the given
/// mean. Requires `0 < mean < cap`.
fn truncated_poisson_rate(cap: usize, mean: f64) -> f64 {
    let truncated_mean = |lambda: f64| {
        let (mut num, mut den, mut w) = (0.0, 0.0, 1.0);
        for j in 0..=cap {
            if j > 0 {
                w *= lambda / j as f64;
            }
            num += j as f64 * w;
            den += w;
        }
        num / den
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while truncated_mean(hi) < mean {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if truncated_mean(mid) < mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Decodes a Prüfer sequence over `0..n` into the undirected edge list.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Deterministic stress families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFamily {
    /// `0 → 1 → … → n-1`.
    DirectedPath,
    /// Path whose edge directions alternate, starting `0 → 1 ← 2`.
    AntiDirectedPath,
    /// Three directed legs of near-equal length leaving vertex 0.
    OutSpider,
    /// Heap-shaped binary tree oriented away from vertex 0.
    BinaryOutTree,
    /// Directed spine `0..k` with one pendant leaf per spine vertex, leaf
    /// edges alternating out and in.
    Caterpillar,
}

impl std::str::FromStr for TreeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "directed-path" => TreeFamily::DirectedPath,
            "anti-directed-path" => TreeFamily::AntiDirectedPath,
            "out-spider" => TreeFamily::OutSpider,
            "binary-out-tree" => TreeFamily::BinaryOutTree,
            "caterpillar" => TreeFamily::Caterpillar,
            other => return Err(Error::InvalidParameter(format!("unknown tree family {other:?}"))),
        })
    }
}

pub fn family_tree(kind: TreeFamily, n: usize) -> Result<OrientedTree> {
    let min_n = match kind {
        TreeFamily::OutSpider => 4,
        _ => 2,
    };
    if n < min_n {
        return Err(Error::InvalidParameter(format!("{kind:?} needs n >= {min_n}, got {n}")));
    }
    let edges: Vec<(usize, usize)> = match kind {
        TreeFamily::DirectedPath => (0..n - 1).map(|i| (i, i + 1)).collect(),
        TreeFamily::AntiDirectedPath => (0..n - 1)
            .map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) })
            .collect(),
        TreeFamily::OutSpider => {
            let rest = n - 1;
            let mut edges = Vec::with_capacity(rest);
            let mut next = 1;
            for leg in 0..3 {
                let len = rest / 3 + usize::from(leg < rest % 3);
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            edges
        }
        TreeFamily::BinaryOutTree => (1..n).map(|i| ((i - 1) / 2, i)).collect(),
        TreeFamily::Caterpillar => {
            let spine = n.div_ceil(2);
            let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|i| (i, i + 1)).collect();
            for (i, leaf) in (spine..n).enumerate() {
                edges.push(if i % 2 == 0 { (i, leaf) } else { (leaf, i) });
            }
            edges
        }
    };
    OrientedTree::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    fn path(n: usize) -> OrientedTree {
        family_tree(TreeFamily::DirectedPath, n).unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        assert!(OrientedTree::new(3, vec![(0, 1)]).is_err());
        assert!(OrientedTree::new(4, vec![(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(OrientedTree::new(3, vec![(0, 1), (1, 1)]).is_err());
        assert!(OrientedTree::new(1, vec![]).is_ok());
    }

    #[test]
    fn valid_ordering_examples() {
        let p = path(3);
        let ord = p.valid_ordering(0).unwrap();
        assert_eq!(ord.0, vec![0, 1]);
        assert!(p.check_ordering(&ord).unwrap());

        let star = OrientedTree::new(4, vec![(0, 3), (0, 1), (0, 2)]).unwrap();
        let ord = star.valid_ordering(0).unwrap();
        let heads: Vec<usize> = ord.0.iter().map(|&e| star.edge(e).1).collect();
        assert_eq!(heads, vec![1, 2, 3]);
        assert!(star.check_ordering(&ord).unwrap());
    }

    #[test]
    fn check_ordering_rejects_disconnected_prefix() {
        // 0→1, 2→3, 1→2: the second edge misses {0, 1}.
        let p = path(4);
        assert!(!p.check_ordering(&EdgeOrdering(vec![0, 2, 1])).unwrap());
        assert!(p.check_ordering(&EdgeOrdering(vec![1, 0, 2])).unwrap());
        assert!(matches!(
            p.check_ordering(&EdgeOrdering(vec![0, 0, 1])),
            Err(Error::NotAPermutation(_))
        ));
        assert!(p.check_ordering(&EdgeOrdering(vec![0, 1])).is_err());
        let single = path(2);
        assert!(single.check_ordering(&EdgeOrdering(vec![0])).unwrap());
    }

    #[test]
    fn prefix_subtree_examples() {
        let p = path(4);
        let ord = p.valid_ordering(0).unwrap();
        let full = p.prefix_subtree(&ord, 3).unwrap();
        assert_eq!(full.tree, p);
        let two = p.prefix_subtree(&ord, 2).unwrap();
        assert_eq!(two.tree, path(3));
        assert_eq!(two.to_original, vec![0, 1, 2]);
        let one = p.prefix_subtree(&ord, 1).unwrap();
        assert_eq!(one.tree.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(p.prefix_subtree(&ord, 0).is_err());
        assert!(p.prefix_subtree(&ord, 4).is_err());
        assert!(p.prefix_subtree(&EdgeOrdering(vec![0, 2, 1]), 2).is_err());
    }

    #[test]
    fn prefix_subtree_relabels_and_keeps_ordering() {
        // Root at 3 so the prefix is not an initial segment of ids.
        let p = path(6);
        let ord = p.valid_ordering(3).unwrap();
        let pre = p.prefix_subtree(&ord, 3).unwrap();
        assert_eq!(pre.tree.n(), 4);
        assert!(pre.tree.check_ordering(&pre.ordering).unwrap());
        for (s, (t, h)) in pre.tree.edges().enumerate() {
            let orig = p.edge(pre.original_edges[s]);
            assert_eq!(orig, (pre.to_original[t] as usize, pre.to_original[h] as usize));
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(path(3).edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let anti = family_tree(TreeFamily::AntiDirectedPath, 3).unwrap();
        assert_eq!(anti.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
        let bin = family_tree(TreeFamily::BinaryOutTree, 7).unwrap();
        assert_eq!(bin.max_total_degree(), 3);
        assert!((0..7).all(|v| bin.in_neighbors(v).len() == usize::from(v != 0)));
        let spider = family_tree(TreeFamily::OutSpider, 10).unwrap();
        assert_eq!(spider.max_total_degree(), 3);
        assert_eq!(spider.out_neighbors(0).len(), 3);
        let cat = family_tree(TreeFamily::Caterpillar, 9).unwrap();
        assert_eq!(cat.max_total_degree(), 3);
        assert!(family_tree(TreeFamily::OutSpider, 3).is_err());
        assert!(family_tree(TreeFamily::DirectedPath, 1).is_err());
    }

    #[test]
    fn center_of_path_and_spider() {
        assert_eq!(path(5).center(), 2);
        assert_eq!(path(4).center(), 1);
        assert_eq!(family_tree(TreeFamily::OutSpider, 10).unwrap().center(), 0);
    }

    #[test]
    fn text_round_trip() {
        let t = family_tree(TreeFamily::Caterpillar, 7).unwrap();
        assert_eq!(OrientedTree::parse_text(t.to_text().as_bytes()).unwrap(), t);
        let ord = t.valid_ordering(2).unwrap();
        assert_eq!(EdgeOrdering::parse_text(&ord.to_text()).unwrap(), ord);
        assert!(t.to_text().starts_with("tree 7\n"));
    }

    #[test]
    fn random_tree_small_cases() {
        let mut rng = seed::rng(3);
        let t = random_tree(2, 1, &mut rng).unwrap();
        assert_eq!(t.edge_count(), 1);
        assert!(random_tree(3, 1, &mut rng).is_err());
        assert!(random_tree(1, 3, &mut rng).is_err());
        let path_like = random_tree(30, 2, &mut rng).unwrap();
        assert_eq!(path_like.max_total_degree(), 2);
    }

    #[test]
    fn random_tree_respects_degree_caps() {
        for &n in &[10usize, 50, 200] {
            for &d in &[2usize, 3, 5] {
                let mut rng = seed::stream(11, (n * 10 + d) as u64, seed::Phase::Tree);
                for _ in 0..10_000 {
                    let t = random_tree(n, d, &mut rng).unwrap();
                    assert_eq!(t.edge_count(), n - 1);
                    assert!(t.max_total_degree() <= d);
                }
            }
        }
    }

    /// Every one of the 5^3 = 125 labelled trees on 5 vertices is equally likely.
    #[test]
    fn random_tree_is_uniform_on_five_vertices() {
        use std::collections::HashMap;
        let mut rng = seed::rng(2024);
        let samples = 100_000usize;
        let mut hist: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        for _ in 0..samples {
            let t = random_tree(5, 4, &mut rng).unwrap();
            let mut key: Vec<(usize, usize)> = t.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
            key.sort_unstable();
            *hist.entry(key).or_default() += 1;
        }
        assert_eq!(hist.len(), 125);
        let expected = samples as f64 / 125.0;
        let chi2: f64 = hist.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 124 degrees of freedom: mean 124, sd sqrt(248).
        assert!(chi2 < 124.0 + 4.0 * 248f64.sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn prufer_decode_known_sequence() {
        // Sequence (3, 3, 3) on 5 vertices is the star centered at 3.
        let mut edges = prufer_decode(5, &[3, 3, 3]);
        edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn every_root_gives_valid_ordering_and_connected_prefixes() {
        for s in 0..100u64 {
            let mut rng = seed::stream(5, s, seed::Phase::Tree);
            let t = random_tree(40, 3, &mut rng).unwrap();
            for root in 0..t.n() {
                let ord = t.valid_ordering(root).unwrap();
                assert!(t.check_ordering(&ord).unwrap());
            }
            let ord = t.valid_ordering(0).unwrap();
            for k in 1..t.n() {
                let pre = t.prefix_subtree(&ord, k).unwrap();
                assert_eq!(pre.tree.n(), k + 1);
            }
        }
    }
}
