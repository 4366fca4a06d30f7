//! Directed host graphs.
//!
//! Vertices are dense integers `0..n`. Every vertex keeps a sorted out-list and
//! in-list together with a membership bit-vector for each direction, so
//! `has_edge` is a single bit test regardless of degree. Antiparallel pairs
//! `(u,v),(v,u)` may coexist; self-loops and duplicate edges may not.

use std::fmt::Write as _;
use std::io::BufRead;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    out_bits: Vec<FixedBitSet>,
    in_bits: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Digraph {
    /// Edgeless digraph on `n ≥ 1` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            n,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            out_bits: vec![FixedBitSet::with_capacity(n); n],
            in_bits: vec![FixedBitSet::with_capacity(n); n],
            edge_count: 0,
        })
    }

    /// Builds a digraph from directed pairs. Duplicates collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// All `n(n-1)` directed edges.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(
            n,
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Inserts `u → v`. Returns `true` if the edge is new, `false` if it was
    /// already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.out_bits[u].contains(v) {
            return Ok(false);
        }
        self.out_bits[u].insert(v);
        self.in_bits[v].insert(u);
        insert_sorted(&mut self.out_adj[u], v as u32);
        insert_sorted(&mut self.in_adj[v], u as u32);
        self.edge_count += 1;
        Ok(true)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out_bits[u].contains(v)
    }

    /// Out-neighbors of `v`, ascending.
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v`, ascending.
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.in_adj[v]
    }

    pub fn out_bits(&self, v: usize) -> &FixedBitSet {
        &self.out_bits[v]
    }

    pub fn in_bits(&self, v: usize) -> &FixedBitSet {
        &self.in_bits[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Minimum semidegree: `min_v min(out-degree(v), in-degree(v))`.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    /// Edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v as usize)))
    }

    /// Edge-set union on a shared vertex set.
    pub fn union(&self, other: &Digraph) -> Result<Digraph> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Whether every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Graph with every edge reversed.
    pub fn reversed(&self) -> Digraph {
        Digraph {
            n: self.n,
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            out_bits: self.in_bits.clone(),
            in_bits: self.out_bits.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Exhaustively checks the representation invariants. `O(n + m)` plus
    /// one pass over the bit-vectors.
    pub fn validate(&self) -> Result<()> {
        let mut out_sum = 0;
        let mut in_sum = 0;
        for v in 0..self.n {
            let outs = &self.out_adj[v];
            let ins = &self.in_adj[v];
            if !outs.windows(2).all(|w| w[0] < w[1]) || !ins.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Invariant(format!("adjacency of {v} not strictly sorted")));
            }
            if self.out_bits[v].contains(v) || outs.binary_search(&(v as u32)).is_ok() {
                return Err(Error::Invariant(format!("self-loop at {v}")));
            }
            if self.out_bits[v].count_ones(..) != outs.len() || self.in_bits[v].count_ones(..) != ins.len() {
                return Err(Error::Invariant(format!("bit-vector of {v} disagrees with list")));
            }
            for &w in outs {
                let w = w as usize;
                if !self.out_bits[v].contains(w)
                    || !self.in_bits[w].contains(v)
                    || self.in_adj[w].binary_search(&(v as u32)).is_err()
                {
                    return Err(Error::Invariant(format!("edge ({v},{w}) not mirrored")));
                }
            }
            out_sum += outs.len();
            in_sum += ins.len();
        }
        if out_sum != self.edge_count || in_sum != self.edge_count {
            return Err(Error::Invariant(format!(
                "edge_count {} but out-sum {out_sum}, in-sum {in_sum}",
                self.edge_count
            )));
        }
        Ok(())
    }

    /// Serializes as `digraph <n> <m>` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(16 + self.edge_count * 8);
        writeln!(s, "digraph {} {}", self.n, self.edge_count).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Parses the edge-list format written by [`Digraph::to_edge_list`].
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Digraph> {
        let mut lines = reader.lines().enumerate();
        let (n, m) = match lines.next() {
            Some((_, line)) => {
                let line = line?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                match parts.as_slice() {
                    ["digraph", n, m] => (parse_num(n, 1)?, parse_num(m, 1)?),
                    _ => return Err(parse_err(1, "expected header `digraph <n> <m>`")),
                }
            }
            None => return Err(parse_err(1, "empty input")),
        };
        let mut g = Digraph::new(n)?;
        let mut seen = 0;
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let (u, v) = match parts.as_slice() {
                [u, v] => (parse_num(u, lineno)?, parse_num(v, lineno)?),
                _ => return Err(parse_err(lineno, "expected `u v`")),
            };
            if !g.add_edge(u, v).map_err(|e| parse_err(lineno, &e.to_string()))? {
                return Err(parse_err(lineno, "duplicate edge"));
            }
            seen += 1;
        }
        if seen != m {
            return Err(parse_err(0, &format!("header declares {m} edges, found {seen}")));
        }
        Ok(g)
    }
}

fn insert_sorted(list: &mut Vec<u32>, x: u32) {
    if let Err(pos) = list.binary_search(&x) {
        list.insert(pos, x);
    }
}

pub(crate) fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("not a non-negative integer: {s:?}")))
}

pub(crate) fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}
