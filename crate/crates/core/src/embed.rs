//! Injective tree-to-host maps, their verification, and the almost-spanning
//! embedder that only uses edges of the random graph.

use std::fmt::Write as _;
use std::io::BufRead;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{parse_err, parse_num};
use crate::{seed, Digraph, EdgeOrdering, Error, OrientedTree, Result};

/// A partial injective map from tree vertices to host vertices.
///
/// Edge validity is not part of the type; check it against a concrete graph
/// with [`verify_embedding`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    forward: Vec<Option<u32>>,
    inverse: Vec<Option<u32>>,
}

impl Embedding {
    pub fn empty(tree_size: usize, host_size: usize) -> Self {
        Self {
            forward: vec![None; tree_size],
            inverse: vec![None; host_size],
        }
    }

    /// Builds a map from `(tree vertex, host vertex)` pairs.
    pub fn from_pairs<I>(tree_size: usize, host_size: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut e = Self::empty(tree_size, host_size);
        for (t, h) in pairs {
            e.assign(t, h)?;
        }
        Ok(e)
    }

    pub fn tree_size(&self) -> usize {
        self.forward.len()
    }

    pub fn host_size(&self) -> usize {
        self.inverse.len()
    }

    /// Maps `t → h`, replacing any previous image of `t`. Fails if `h` is
    /// already the image of another tree vertex.
    pub fn assign(&mut self, t: usize, h: usize) -> Result<()> {
        if t >= self.forward.len() {
            return Err(Error::VertexOutOfRange {
                vertex: t,
                n: self.forward.len(),
            });
        }
        if h >= self.inverse.len() {
            return Err(Error::VertexOutOfRange {
                vertex: h,
                n: self.inverse.len(),
            });
        }
        match self.inverse[h] {
            Some(other) if other as usize != t => {
                return Err(Error::NotInjective(format!(
                    "host vertex {h} already holds tree vertex {other}"
                )))
            }
            _ => {}
        }
        if let Some(old) = self.forward[t] {
            self.inverse[old as usize] = None;
        }
        self.forward[t] = Some(h as u32);
        self.inverse[h] = Some(t as u32);
        Ok(())
    }

    /// Removes the image of `t`, if any.
    pub fn unassign(&mut self, t: usize) {
        if let Some(h) = self.forward[t].take() {
            self.inverse[h as usize] = None;
        }
    }

    #[inline]
    pub fn get(&self, t: usize) -> Option<usize> {
        self.forward.get(t).copied().flatten().map(|h| h as usize)
    }

    #[inline]
    pub fn preimage(&self, h: usize) -> Option<usize> {
        self.inverse.get(h).copied().flatten().map(|t| t as usize)
    }

    pub fn is_used(&self, h: usize) -> bool {
        self.preimage(h).is_some()
    }

    pub fn mapped_count(&self) -> usize {
        self.forward.iter().filter(|x| x.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.forward.iter().all(Option::is_some)
    }

    pub fn unmapped(&self) -> Vec<usize> {
        (0..self.forward.len()).filter(|&t| self.forward[t].is_none()).collect()
    }

    /// Host vertices outside the image, ascending.
    pub fn unused_hosts(&self) -> Vec<usize> {
        (0..self.inverse.len()).filter(|&h| self.inverse[h].is_none()).collect()
    }

    /// Image as a host-sized bit-vector.
    pub fn image_bits(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.inverse.len());
        for (h, t) in self.inverse.iter().enumerate() {
            if t.is_some() {
                bits.insert(h);
            }
        }
        bits
    }

    /// Mapped pairs `(tree vertex, host vertex)` in tree-vertex order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(t, h)| h.map(|h| (t, h as usize)))
    }

    /// Re-indexes the tree side: tree vertex `t` becomes `relabel[t]` in a
    /// tree with `tree_size` vertices.
    pub fn relabel_tree(&self, relabel: &[u32], tree_size: usize) -> Result<Embedding> {
        Embedding::from_pairs(
            tree_size,
            self.host_size(),
            self.pairs().map(|(t, h)| (relabel[t] as usize, h)),
        )
    }

    /// One `tree_vertex host_vertex` line per mapped vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (t, h) in self.pairs() {
            writeln!(s, "{t} {h}").unwrap();
        }
        s
    }

    pub fn parse_text<R: BufRead>(reader: R, tree_size: usize, host_size: usize) -> Result<Self> {
        let mut e = Self::empty(tree_size, host_size);
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [t, h] => {
                    let (t, h) = (parse_num(t, idx + 1)?, parse_num(h, idx + 1)?);
                    if e.get(t).is_some() {
                        return Err(parse_err(idx + 1, "tree vertex mapped twice"));
                    }
                    e.assign(t, h).map_err(|err| parse_err(idx + 1, &err.to_string()))?;
                }
                _ => return Err(parse_err(idx + 1, "expected `tree_vertex host_vertex`")),
            }
        }
        Ok(e)
    }
}

/// Outcome of checking a total embedding against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Tree edge `tree_edge` maps to the non-edge `host_edge`.
    MissingEdge {
        tree_edge: (usize, usize),
        host_edge: (usize, usize),
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks that `phi` is total on `tree`, injective, and sends every tree edge
/// to an equally oriented edge of `graph`.
pub fn verify_embedding(tree: &OrientedTree, graph: &Digraph, phi: &Embedding) -> Result<Verdict> {
    if phi.tree_size() != tree.n() {
        return Err(Error::SizeMismatch(phi.tree_size(), tree.n()));
    }
    if phi.host_size() != graph.n() {
        return Err(Error::SizeMismatch(phi.host_size(), graph.n()));
    }
    let unmapped = phi.unmapped();
    if !unmapped.is_empty() {
        return Err(Error::PartialEmbedding(unmapped));
    }
    // Injectivity is maintained by `assign`; recheck since it is the contract.
    let mut seen = FixedBitSet::with_capacity(graph.n());
    for (t, h) in phi.pairs() {
        if seen.put(h) {
            return Err(Error::NotInjective(format!(
                "host vertex {h} reused by tree vertex {t}"
            )));
        }
    }
    for (a, b) in tree.edges() {
        let (x, y) = (phi.get(a).unwrap(), phi.get(b).unwrap());
        if !graph.has_edge(x, y) {
            return Ok(Verdict::MissingEdge {
                tree_edge: (a, b),
                host_edge: (x, y),
            });
        }
    }
    Ok(Verdict::Valid)
}

/// Limits on the bounded backtracking search of [`embed_almost`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryPolicy {
    /// Placements that may be undone per attempt.
    pub backtrack_budget: u64,
    /// Fresh-root attempts after the first one.
    pub max_restarts: u32,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            backtrack_budget: 10_000,
            max_restarts: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedStats {
    /// Largest number of tree edges embedded at once, over all attempts.
    pub deepest_prefix: usize,
    pub restarts: u32,
    pub backtracks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedOutcome {
    pub embedding: Option<Embedding>,
    pub stats: EmbedStats,
}

impl EmbedOutcome {
    pub fn succeeded(&self) -> bool {
        self.embedding.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    In,
}

struct Step {
    parent: usize,
    child: usize,
    side: Side,
}

fn plan_steps(tree: &OrientedTree, ord: &EdgeOrdering) -> Result<(usize, Vec<Step>)> {
    if tree.edge_count() == 0 {
        return Ok((0, Vec::new()));
    }
    if !tree.check_ordering(ord)? {
        return Err(Error::InvalidParameter("ordering is not valid for the tree".into()));
    }
    let (root, _) = tree.edge(ord.0[0]);
    let mut placed = vec![false; tree.n()];
    placed[root] = true;
    let steps = ord
        .0
        .iter()
        .map(|&e| {
            let (t, h) = tree.edge(e);
            let step = if placed[t] {
                Step {
                    parent: t,
                    child: h,
                    side: Side::Out,
                }
            } else {
                Step {
                    parent: h,
                    child: t,
                    side: Side::In,
                }
            };
            placed[step.child] = true;
            step
        })
        .collect();
    Ok((root, steps))
}

/// Embeds `tree` into `random` following `ord`.
///
/// The root (tail of the first edge) goes to a uniform host vertex. Each
/// subsequent edge places its new endpoint on a uniformly chosen unused
/// neighbor of its parent's image in the matching direction. An empty
/// candidate set is a dead end: the most recent placement is undone and its
/// next candidate tried, up to `policy.backtrack_budget` times per attempt,
/// after which the search restarts from a fresh root, at most
/// `policy.max_restarts` times.
pub fn embed_almost(
    tree: &OrientedTree,
    ord: &EdgeOrdering,
    random: &Digraph,
    seed: u64,
    policy: RetryPolicy,
) -> Result<EmbedOutcome> {
    let mut rng = seed::rng(seed);
    embed_almost_with(tree, ord, random, &mut rng, policy)
}

pub fn embed_almost_with<R: Rng + ?Sized>(
    tree: &OrientedTree,
    ord: &EdgeOrdering,
    random: &Digraph,
    rng: &mut R,
    policy: RetryPolicy,
) -> Result<EmbedOutcome> {
    if tree.n() > random.n() {
        return Err(Error::InvalidParameter(format!(
            "tree on {} vertices cannot embed into {} host vertices",
            tree.n(),
            random.n()
        )));
    }
    let (root, steps) = plan_steps(tree, ord)?;
    let mut stats = EmbedStats::default();

    struct Frame {
        candidates: Vec<u32>,
        cursor: usize,
    }

    for attempt in 0..=policy.max_restarts {
        stats.restarts = attempt;
        let mut phi = Embedding::empty(tree.n(), random.n());
        phi.assign(root, rng.random_range(0..random.n()))?;
        let mut frames: Vec<Frame> = Vec::with_capacity(steps.len());
        let mut budget = policy.backtrack_budget;
        let mut need_frame = true;

        loop {
            let depth = frames.len() - usize::from(!need_frame);
            if need_frame {
                if frames.len() == steps.len() {
                    return Ok(EmbedOutcome {
                        embedding: Some(phi),
                        stats,
                    });
                }
                let step = &steps[frames.len()];
                let x = phi.get(step.parent).expect("parent placed");
                let nbrs = match step.side {
                    Side::Out => random.out_neighbors(x),
                    Side::In => random.in_neighbors(x),
                };
                let mut candidates: Vec<u32> = nbrs.iter().copied().filter(|&h| !phi.is_used(h as usize)).collect();
                candidates.shuffle(rng);
                frames.push(Frame { candidates, cursor: 0 });
                need_frame = false;
                continue;
            }
            let top = frames.last_mut().expect("frame present");
            let step = &steps[depth];
            if top.cursor < top.candidates.len() {
                let h = top.candidates[top.cursor] as usize;
                top.cursor += 1;
                phi.assign(step.child, h)?;
                stats.deepest_prefix = stats.deepest_prefix.max(depth + 1);
                need_frame = true;
                continue;
            }
            // Dead end at this step: drop it and revise the previous one.
            frames.pop();
            if frames.is_empty() || budget == 0 {
                break;
            }
            budget -= 1;
            stats.backtracks += 1;
            phi.unassign(steps[frames.len() - 1].child);
        }
    }
    Ok(EmbedOutcome { embedding: None, stats })
}

/// Uniformly random injective map of `tree_size` tree vertices into
/// `host_size` host vertices, ignoring edges.
pub fn sample_uniform_injection(tree_size: usize, host_size: usize, seed: u64) -> Result<Embedding> {
    let mut rng = seed::rng(seed);
    sample_uniform_injection_with(tree_size, host_size, &mut rng)
}

pub fn sample_uniform_injection_with<R: Rng + ?Sized>(
    tree_size: usize,
    host_size: usize,
    rng: &mut R,
) -> Result<Embedding> {
    if tree_size > host_size {
        return Err(Error::SizeMismatch(tree_size, host_size));
    }
    // `index::sample` returns distinct indices in uniformly shuffled order.
    let hosts = rand::seq::index::sample(rng, host_size, tree_size);
    Embedding::from_pairs(tree_size, host_size, hosts.iter().enumerate())
}
