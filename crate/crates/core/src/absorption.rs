//! Star packing, absorbing stars, and completion of an almost-spanning
//! embedding.
//!
//! A star `S_v = (v, S⁺, S⁻)` is *(u,±,w)-absorbing* under `φ` when
//! `φ(v) ∈ N^±(u)`, `φ(S⁺) ⊆ N⁺(w)` and `φ(S⁻) ⊆ N⁻(w)`. Such a star lets the
//! unused host vertex `w` take over the center's role, freeing `φ(v)` for a
//! new tree vertex hanging off `u`. Stars here are always full-neighborhood
//! stars, so `S⁺` and `S⁻` are the whole out- and in-neighborhoods of `v`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::verify_embedding;
use crate::{Digraph, EdgeOrdering, Embedding, Error, OrientedTree, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Bit-vector of `N^sign(u)` in `g`.
    pub fn neighborhood(self, g: &Digraph, u: usize) -> &FixedBitSet {
        match self {
            Sign::Plus => g.out_bits(u),
            Sign::Minus => g.in_bits(u),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A host triple `(u, sign, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub u: usize,
    pub sign: Sign,
    pub w: usize,
}

/// Full-neighborhood star of a tree vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Star {
    pub center: u32,
    pub s_plus: Vec<u32>,
    pub s_minus: Vec<u32>,
}

impl Star {
    pub fn full(tree: &OrientedTree, v: usize) -> Self {
        Self {
            center: v as u32,
            s_plus: tree.out_neighbors(v).to_vec(),
            s_minus: tree.in_neighbors(v).to_vec(),
        }
    }

    pub fn center(&self) -> usize {
        self.center as usize
    }

    /// Center followed by all leaves.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center)
            .chain(self.s_plus.iter().copied())
            .chain(self.s_minus.iter().copied())
            .map(|v| v as usize)
    }

    /// Number of vertices, `s⁺ + s⁻ + 1`.
    pub fn size(&self) -> usize {
        1 + self.s_plus.len() + self.s_minus.len()
    }

    fn relabel(&self, map: &[u32]) -> Star {
        let m = |v: &u32| map[*v as usize];
        Star {
            center: map[self.center as usize],
            s_plus: self.s_plus.iter().map(m).collect(),
            s_minus: self.s_minus.iter().map(m).collect(),
        }
    }
}

/// Vertex-disjoint collection of full-neighborhood stars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarPack {
    stars: Vec<Star>,
    /// Tree vertex → index of the star containing it.
    member_of: Vec<Option<u32>>,
}

impl StarPack {
    /// Builds a pack over a tree with `tree_size` vertices, rejecting
    /// overlapping stars.
    pub fn new(tree_size: usize, stars: Vec<Star>) -> Result<Self> {
        let mut member_of = vec![None; tree_size];
        for (idx, star) in stars.iter().enumerate() {
            for v in star.vertices() {
                if v >= tree_size {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n: tree_size,
                    });
                }
                if member_of[v].replace(idx as u32).is_some() {
                    return Err(Error::Invariant(format!("stars overlap at tree vertex {v}")));
                }
            }
        }
        Ok(Self { stars, member_of })
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn star(&self, idx: usize) -> &Star {
        &self.stars[idx]
    }

    pub fn member_of(&self, v: usize) -> Option<usize> {
        self.member_of.get(v).copied().flatten().map(|i| i as usize)
    }

    /// Index of the star centered at `v`, if there is one.
    pub fn star_with_center(&self, v: usize) -> Option<usize> {
        self.member_of(v).filter(|&i| self.stars[i].center() == v)
    }

    /// First `k` stars.
    pub fn truncated(&self, k: usize) -> StarPack {
        let stars = self.stars[..k.min(self.stars.len())].to_vec();
        StarPack::new(self.member_of.len(), stars).expect("subset of a disjoint pack")
    }

    /// Re-indexes tree vertices through `map` into a tree of `tree_size`.
    pub fn relabel(&self, map: &[u32], tree_size: usize) -> Result<StarPack> {
        StarPack::new(tree_size, self.stars.iter().map(|s| s.relabel(map)).collect())
    }

    /// Checks disjointness and that every star is the full neighborhood star
    /// of its center in `tree`.
    pub fn validate(&self, tree: &OrientedTree) -> Result<()> {
        if self.member_of.len() != tree.n() {
            return Err(Error::SizeMismatch(self.member_of.len(), tree.n()));
        }
        StarPack::new(tree.n(), self.stars.clone())?;
        for star in &self.stars {
            if *star != Star::full(tree, star.center()) {
                return Err(Error::Invariant(format!(
                    "star at {} is not its full neighborhood",
                    star.center
                )));
            }
        }
        Ok(())
    }
}

/// Scans vertices in ascending id and keeps each full-neighborhood star that
/// is disjoint from all stars kept so far.
///
/// Overlapping stars have centers at distance at most two, so each kept star
/// blocks at most `Δ²` others and the pack has at least `n / (Δ² + 1)` stars.
pub fn greedy_star_pack(tree: &OrientedTree) -> StarPack {
    let mut taken = vec![false; tree.n()];
    let mut stars = Vec::new();
    for v in 0..tree.n() {
        let star = Star::full(tree, v);
        if star.vertices().all(|x| !taken[x]) {
            star.vertices().for_each(|x| taken[x] = true);
            stars.push(star);
        }
    }
    StarPack::new(tree.n(), stars).expect("greedy stars are disjoint")
}

fn image(phi: &Embedding, v: usize) -> Result<usize> {
    phi.get(v).ok_or_else(|| Error::PartialEmbedding(vec![v]))
}

/// Whether `star` is `(u, sign, w)`-absorbing under `phi` in `graph`.
pub fn is_absorbing(star: &Star, phi: &Embedding, graph: &Digraph, u: usize, sign: Sign, w: usize) -> Result<bool> {
    if phi.host_size() != graph.n() {
        return Err(Error::SizeMismatch(phi.host_size(), graph.n()));
    }
    let unmapped: Vec<usize> = star.vertices().filter(|&v| phi.get(v).is_none()).collect();
    if !unmapped.is_empty() {
        return Err(Error::PartialEmbedding(unmapped));
    }
    let center = image(phi, star.center())?;
    if !sign.neighborhood(graph, u).contains(center) {
        return Ok(false);
    }
    for &l in &star.s_plus {
        if !graph.has_edge(w, image(phi, l as usize)?) {
            return Ok(false);
        }
    }
    for &l in &star.s_minus {
        if !graph.has_edge(image(phi, l as usize)?, w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of stars outside `used` that are `(u, sign, w)`-absorbing.
pub fn count_absorbing(
    pack: &StarPack,
    used: &FixedBitSet,
    phi: &Embedding,
    graph: &Digraph,
    u: usize,
    sign: Sign,
    w: usize,
) -> Result<usize> {
    let mut count = 0;
    for (idx, star) in pack.stars().iter().enumerate() {
        if !used.contains(idx) && is_absorbing(star, phi, graph, u, sign, w)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Absorbing counts for every triple at once.
///
/// For each star the set of hosts `w` satisfying the leaf conditions is the
/// intersection of the leaves' (reversed) neighborhoods; recording `φ(center)`
/// for each such `w` leaves every count as one popcount of
/// `centers[w] ∧ N^±(u)`.
pub struct AbsorbingCounter<'g> {
    graph: &'g Digraph,
    centers: Vec<FixedBitSet>,
}

impl<'g> AbsorbingCounter<'g> {
    pub fn new(pack: &StarPack, used: &FixedBitSet, phi: &Embedding, graph: &'g Digraph) -> Result<Self> {
        let n = graph.n();
        if phi.host_size() != n {
            return Err(Error::SizeMismatch(phi.host_size(), n));
        }
        let mut centers = vec![FixedBitSet::with_capacity(n); n];
        let mut targets = FixedBitSet::with_capacity(n);
        for (idx, star) in pack.stars().iter().enumerate() {
            if used.contains(idx) {
                continue;
            }
            let unmapped: Vec<usize> = star.vertices().filter(|&v| phi.get(v).is_none()).collect();
            if !unmapped.is_empty() {
                return Err(Error::PartialEmbedding(unmapped));
            }
            targets.set_range(.., true);
            for &l in &star.s_plus {
                targets.intersect_with(graph.in_bits(image(phi, l as usize)?));
            }
            for &l in &star.s_minus {
                targets.intersect_with(graph.out_bits(image(phi, l as usize)?));
            }
            let c = image(phi, star.center())?;
            for w in targets.ones() {
                centers[w].insert(c);
            }
        }
        Ok(Self { graph, centers })
    }

    #[inline]
    pub fn count(&self, u: usize, sign: Sign, w: usize) -> usize {
        and_popcount(&self.centers[w], sign.neighborhood(self.graph, u))
    }

    /// Minimum over `u ∈ V`, both signs, and `w ∈ targets`; ties go to the
    /// smallest `(w, u, sign)`.
    pub fn minimum_over(&self, targets: &[usize]) -> Option<TripleCount> {
        let n = self.graph.n();
        targets
            .par_iter()
            .filter_map(|&w| {
                (0..n)
                    .flat_map(|u| Sign::BOTH.into_iter().map(move |sign| (u, sign)))
                    .map(|(u, sign)| TripleCount {
                        count: self.count(u, sign, w),
                        triple: Triple { u, sign, w },
                    })
                    .min_by_key(|tc| (tc.count, tc.triple.u, tc.triple.sign))
            })
            .min_by_key(|tc| (tc.count, tc.triple.w, tc.triple.u, tc.triple.sign))
    }

    /// Every count, indexed `[(w * n + u) * 2 + sign]`.
    pub fn table(&self) -> Vec<u32> {
        let n = self.graph.n();
        let mut out = vec![0u32; n * n * 2];
        out.par_chunks_mut(n * 2).enumerate().for_each(|(w, row)| {
            for u in 0..n {
                row[u * 2] = self.count(u, Sign::Plus, w) as u32;
                row[u * 2 + 1] = self.count(u, Sign::Minus, w) as u32;
            }
        });
        out
    }
}

fn and_popcount(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCount {
    pub count: usize,
    pub triple: Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbingMinimum {
    /// Minimum over all `u, w ∈ V` and both signs.
    pub all: TripleCount,
    /// Minimum restricted to `w` among the given unembedded hosts.
    pub restricted: Option<TripleCount>,
}

/// Minimum absorbing count over all triples, and over triples whose `w` lies
/// in `unembedded`. Every pack star must be mapped by `phi`.
pub fn min_absorbing_over_triples(
    pack: &StarPack,
    phi: &Embedding,
    graph: &Digraph,
    unembedded: &[usize],
) -> Result<AbsorbingMinimum> {
    let used = FixedBitSet::with_capacity(pack.len());
    let counter = AbsorbingCounter::new(pack, &used, phi, graph)?;
    let all_hosts: Vec<usize> = (0..graph.n()).collect();
    Ok(AbsorbingMinimum {
        all: counter.minimum_over(&all_hosts).expect("graph has a vertex"),
        restricted: counter.minimum_over(unembedded),
    })
}

/// Reference implementation of [`min_absorbing_over_triples`] by a plain
/// triple loop over [`count_absorbing`].
pub fn min_absorbing_naive(
    pack: &StarPack,
    phi: &Embedding,
    graph: &Digraph,
    unembedded: &[usize],
) -> Result<AbsorbingMinimum> {
    let used = FixedBitSet::with_capacity(pack.len());
    let scan = |ws: &mut dyn Iterator<Item = usize>| -> Result<Option<TripleCount>> {
        let mut best: Option<TripleCount> = None;
        for w in ws {
            for u in 0..graph.n() {
                for sign in Sign::BOTH {
                    let count = count_absorbing(pack, &used, phi, graph, u, sign, w)?;
                    if best.is_none_or(|b| count < b.count) {
                        best = Some(TripleCount {
                            count,
                            triple: Triple { u, sign, w },
                        });
                    }
                }
            }
        }
        Ok(best)
    };
    let mut sorted = unembedded.to_vec();
    sorted.sort_unstable();
    Ok(AbsorbingMinimum {
        all: scan(&mut (0..graph.n()))?.expect("graph has a vertex"),
        restricted: scan(&mut sorted.into_iter())?,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionOptions {
    /// Re-check the per-step invariants after every step. Costs a full
    /// triple sweep per step.
    pub debug: bool,
}

/// One absorption step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub tree_edge: (usize, usize),
    /// The already embedded endpoint.
    pub attach: usize,
    /// The endpoint embedded by this step.
    pub new_vertex: usize,
    pub triple: Triple,
    pub star: usize,
    pub retired: Vec<usize>,
    /// Unused absorbing stars for `triple` before the step.
    pub absorbing_before: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionFailure {
    /// No unused star is absorbing for the step's triple.
    NoAbsorbingStar {
        step: usize,
        triple: Triple,
        unused_stars: usize,
    },
    /// The host has fewer free vertices than tree vertices left to place.
    NotEnoughHosts { needed: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    /// Total embedding of the tree on success.
    pub embedding: Option<Embedding>,
    /// The embedding as far as it got.
    pub last: Embedding,
    pub steps: Vec<StepRecord>,
    pub failure: Option<CompletionFailure>,
}

impl Completion {
    pub fn succeeded(&self) -> bool {
        self.embedding.is_some()
    }

    /// Smallest pre-step absorbing count over the triples actually consumed.
    pub fn encountered_min(&self) -> Option<usize> {
        self.steps.iter().map(|s| s.absorbing_before).min()
    }
}

/// Extends `phi0`, an embedding of the prefix tree `e_1..e_{n-1-i}` of `ord`,
/// to the whole tree by absorption.
///
/// Free hosts `x_1 < … < x_i` are consumed in ascending order. For edge
/// `e_{n-i+j}` with embedded endpoint `a`, the first unused star (by index)
/// that is `(φ(a), +, x_{j+1})`-absorbing, or `(φ(a), −, x_{j+1})`-absorbing
/// when `a` is the head, donates its center's image to the new vertex while
/// the center moves to `x_{j+1}`. That star and the star centered at `a`, if
/// any, are retired.
pub fn complete_embedding(
    tree: &OrientedTree,
    ord: &EdgeOrdering,
    phi0: &Embedding,
    graph: &Digraph,
    pack: &StarPack,
    options: CompletionOptions,
) -> Result<Completion> {
    let n = tree.n();
    if phi0.tree_size() != n {
        return Err(Error::SizeMismatch(phi0.tree_size(), n));
    }
    if phi0.host_size() != graph.n() {
        return Err(Error::SizeMismatch(phi0.host_size(), graph.n()));
    }
    if !tree.check_ordering(ord)? {
        return Err(Error::InvalidParameter("ordering is not valid for the tree".into()));
    }
    let remaining = n - phi0.mapped_count();
    if remaining == 0 {
        if !verify_embedding(tree, graph, phi0)?.is_valid() {
            return Err(Error::InvalidParameter("total input embedding is not valid".into()));
        }
        return Ok(Completion {
            embedding: Some(phi0.clone()),
            last: phi0.clone(),
            steps: Vec::new(),
            failure: None,
        });
    }
    if remaining + 1 >= n {
        return Err(Error::InvalidParameter(format!(
            "prefix must contain at least one edge ({remaining} of {n} vertices unembedded)"
        )));
    }
    let prefix_edges = n - 1 - remaining;
    check_prefix_embedding(tree, &ord.0[..prefix_edges], phi0, graph)?;
    for star in pack.stars() {
        if let Some(v) = star.vertices().find(|&v| phi0.get(v).is_none()) {
            return Err(Error::InvalidParameter(format!(
                "pack star vertex {v} lies outside the prefix"
            )));
        }
    }

    let free = phi0.unused_hosts();
    if free.len() < remaining {
        return Ok(Completion {
            embedding: None,
            last: phi0.clone(),
            steps: Vec::new(),
            failure: Some(CompletionFailure::NotEnoughHosts {
                needed: remaining,
                available: free.len(),
            }),
        });
    }

    let mut phi = phi0.clone();
    let mut used = FixedBitSet::with_capacity(pack.len());
    let mut steps = Vec::with_capacity(remaining);
    let mut monitor = if options.debug {
        Some(StepMonitor::new(pack, &used, &phi, graph, remaining)?)
    } else {
        None
    };

    for j in 0..remaining {
        let edge_idx = ord.0[prefix_edges + j];
        let (a, b) = tree.edge(edge_idx);
        let (attach, new_vertex, sign) = match (phi.get(a).is_some(), phi.get(b).is_some()) {
            (true, false) => (a, b, Sign::Plus),
            (false, true) => (b, a, Sign::Minus),
            (true, true) => {
                return Err(Error::Invariant(format!(
                    "both endpoints of edge ({a},{b}) already embedded"
                )))
            }
            (false, false) => {
                return Err(Error::Invariant(format!(
                    "edge ({a},{b}) is disconnected from the embedded prefix"
                )))
            }
        };
        let triple = Triple {
            u: phi.get(attach).unwrap(),
            sign,
            w: free[j],
        };
        let mut chosen = None;
        let mut absorbing_before = 0;
        for (idx, star) in pack.stars().iter().enumerate() {
            if used.contains(idx) {
                continue;
            }
            if is_absorbing(star, &phi, graph, triple.u, triple.sign, triple.w)? {
                chosen.get_or_insert(idx);
                absorbing_before += 1;
            }
        }
        let Some(star_idx) = chosen else {
            return Ok(Completion {
                embedding: None,
                last: phi,
                steps,
                failure: Some(CompletionFailure::NoAbsorbingStar {
                    step: j + 1,
                    triple,
                    unused_stars: pack.len() - used.count_ones(..),
                }),
            });
        };

        let center = pack.star(star_idx).center();
        let freed = phi.get(center).unwrap();
        phi.unassign(center);
        phi.assign(new_vertex, freed)?;
        phi.assign(center, triple.w)?;

        let mut retired = vec![star_idx];
        used.insert(star_idx);
        if let Some(k) = pack.star_with_center(attach) {
            if k != star_idx {
                retired.push(k);
            }
            used.insert(k);
        }
        steps.push(StepRecord {
            step: j + 1,
            tree_edge: (a, b),
            attach,
            new_vertex,
            triple,
            star: star_idx,
            retired,
            absorbing_before,
        });
        if let Some(m) = monitor.as_mut() {
            m.check_step(
                j + 1,
                tree,
                &ord.0[..prefix_edges + j + 1],
                phi0,
                &free[..=j],
                pack,
                &used,
                &phi,
                graph,
            )?;
        }
    }

    match verify_embedding(tree, graph, &phi)? {
        crate::embed::Verdict::Valid => Ok(Completion {
            embedding: Some(phi.clone()),
            last: phi,
            steps,
            failure: None,
        }),
        bad => Err(Error::Invariant(format!(
            "completed embedding fails verification: {bad:?}"
        ))),
    }
}

fn check_prefix_embedding(tree: &OrientedTree, prefix: &[usize], phi: &Embedding, graph: &Digraph) -> Result<()> {
    let mut covered = vec![false; tree.n()];
    for &e in prefix {
        let (t, h) = tree.edge(e);
        covered[t] = true;
        covered[h] = true;
        match (phi.get(t), phi.get(h)) {
            (Some(x), Some(y)) if graph.has_edge(x, y) => {}
            (Some(x), Some(y)) => {
                return Err(Error::InvalidParameter(format!(
                    "prefix edge ({t},{h}) maps to non-edge ({x},{y})"
                )))
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "prefix edge ({t},{h}) is not fully mapped"
                )))
            }
        }
    }
    for (v, &inside) in covered.iter().enumerate() {
        if !inside && phi.get(v).is_some() {
            return Err(Error::InvalidParameter(format!(
                "tree vertex {v} is mapped but outside the prefix"
            )));
        }
    }
    Ok(())
}

/// Debug-mode bookkeeping for the per-step invariants:
/// (1) the image grows by exactly the consumed free hosts,
/// (2) at most `2j` stars are retired after `j` steps,
/// (3) no triple loses more than two unused absorbing stars per step, and
/// when the start satisfied the `≥ 2i` hypothesis every triple keeps at least
/// `2(i - j)`.
struct StepMonitor {
    remaining: usize,
    hypothesis_met: bool,
    table: Vec<u32>,
}

impl StepMonitor {
    fn new(pack: &StarPack, used: &FixedBitSet, phi: &Embedding, graph: &Digraph, remaining: usize) -> Result<Self> {
        let table = AbsorbingCounter::new(pack, used, phi, graph)?.table();
        let min = table.iter().copied().min().unwrap_or(0) as usize;
        Ok(Self {
            remaining,
            hypothesis_met: min >= 2 * remaining,
            table,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn check_step(
        &mut self,
        j: usize,
        tree: &OrientedTree,
        prefix: &[usize],
        phi0: &Embedding,
        consumed: &[usize],
        pack: &StarPack,
        used: &FixedBitSet,
        phi: &Embedding,
        graph: &Digraph,
    ) -> Result<()> {
        let mut expected = phi0.image_bits();
        consumed.iter().for_each(|&x| expected.insert(x));
        if phi.image_bits() != expected {
            return Err(Error::Invariant(format!(
                "step {j}: image is not Im(φ0) ∪ {{x_1..x_j}}"
            )));
        }
        if used.count_ones(..) > 2 * j {
            return Err(Error::Invariant(format!(
                "step {j}: {} stars retired, more than 2j",
                used.count_ones(..)
            )));
        }
        check_prefix_embedding(tree, prefix, phi, graph)
            .map_err(|e| Error::Invariant(format!("step {j}: grown prefix invalid: {e}")))?;
        let table = AbsorbingCounter::new(pack, used, phi, graph)?.table();
        for (idx, (&before, &after)) in self.table.iter().zip(&table).enumerate() {
            if before > after + 2 {
                return Err(Error::Invariant(format!(
                    "step {j}: triple #{idx} lost {} absorbing stars",
                    before - after
                )));
            }
            if self.hypothesis_met && (after as usize) < 2 * (self.remaining - j) {
                return Err(Error::Invariant(format!(
                    "step {j}: triple #{idx} has {after} < 2(i - j) absorbing stars"
                )));
            }
        }
        self.table = table;
        Ok(())
    }
}
