//! Core undirected simple graph type with dense vertex ids, BFS metrics,
//! graph6/sparse6/JSON/DOT input-output, edge-induced subgraphs, and an exact
//! branch-and-bound minimum dominating set solver.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Distance value with an explicit sentinel for unreachable pairs.
///
/// `Fin(d) < Inf` for every finite `d`, so max/min comparisons behave as
/// expected for eccentricity and diameter computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Fin(usize),
    Inf,
}

impl Dist {
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Fin(_))
    }
    /// The finite value, panicking on the sentinel.
    pub fn finite(self) -> usize {
        match self {
            Dist::Fin(d) => d,
            Dist::Inf => panic!("distance is infinite"),
        }
    }
    pub fn leq(self, bound: usize) -> bool {
        matches!(self, Dist::Fin(d) if d <= bound)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(d) => write!(f, "{d}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}

/// Errors from graph construction and parsing.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },
    #[error("sparse6 parse error at byte {offset}: {msg}")]
    Sparse6 { offset: usize, msg: String },
    #[error("json graph error: {0}")]
    Json(String),
    #[error("vertex {0} out of range (n = {1})")]
    VertexRange(usize, usize),
    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),
    #[error("graph too large for this operation: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("{0}")]
    Other(String),
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

/// Serialized form: `{"n": .., "edges": [[u,v], ..]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Cycle graph C_n.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Path graph P_n on n vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Complete bipartite graph K_{a,b}; the `a`-side gets ids `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// Adds an edge; idempotent. Panics on loops or out-of-range ids.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at {u}");
        let n = self.n();
        assert!(u < n && v < n, "edge ({u},{v}) out of range, n={n}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.n() - 1
    }

    /// All edges as (min, max) pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced by `verts` (deduplicated, sorted). Returns the graph
    /// with dense ids and the map from new id to old id.
    pub fn induced_subgraph(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let vs: BTreeSet<usize> = verts.iter().copied().collect();
        let map: Vec<usize> = vs.iter().copied().collect();
        let mut inv = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = Graph::new(map.len());
        for (new, &old) in map.iter().enumerate() {
            for &w in &self.adj[old] {
                if vs.contains(&w) && new < inv[w] {
                    g.add_edge(new, inv[w]);
                }
            }
        }
        (g, map)
    }

    /// Edge-induced subgraph: the endpoints of `edges` carry dense new ids and
    /// exactly the listed edges are present. Returns the new-to-old id map.
    pub fn edge_induced(&self, edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
        let mut vs = BTreeSet::new();
        for &(u, v) in edges {
            assert!(self.has_edge(u, v), "edge ({u},{v}) not in host");
            vs.insert(u);
            vs.insert(v);
        }
        let map: Vec<usize> = vs.iter().copied().collect();
        let mut inv = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = Graph::new(map.len());
        for &(u, v) in edges {
            g.add_edge(inv[u], inv[v]);
        }
        (g, map)
    }

    /// Disjoint union; the other graph's ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    /// Graph with the vertex set reordered / restricted by `keep` (old ids);
    /// convenience wrapper over `induced_subgraph`.
    pub fn without_vertices(&self, drop: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// BFS distances from `src`, with `Dist::Inf` for unreachable vertices.
    pub fn bfs_dist(&self, src: usize) -> Vec<Dist> {
        let mut dist = vec![Dist::Inf; self.n()];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = Dist::Fin(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].finite();
            for &v in &self.adj[u] {
                if dist[v] == Dist::Inf {
                    dist[v] = Dist::Fin(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs BFS distance matrix.
    pub fn distances(&self) -> Vec<Vec<Dist>> {
        (0..self.n()).map(|v| self.bfs_dist(v)).collect()
    }

    pub fn dist(&self, u: usize, v: usize) -> Dist {
        self.bfs_dist(u)[v]
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_dist(0).iter().all(|d| d.is_finite())
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Eccentricities, diameter and radius over all vertices.
    pub fn metric_profile(&self) -> MetricProfile {
        let ecc: Vec<Dist> = (0..self.n())
            .map(|v| self.bfs_dist(v).into_iter().max().unwrap_or(Dist::Fin(0)))
            .collect();
        MetricProfile {
            diameter: ecc.iter().copied().max().unwrap_or(Dist::Fin(0)),
            radius: ecc.iter().copied().min().unwrap_or(Dist::Fin(0)),
            eccentricities: ecc,
        }
    }

    pub fn diameter(&self) -> Dist {
        self.metric_profile().diameter
    }

    // ---------------- graph6 / sparse6 ----------------

    /// Parses the graph6 format (optionally prefixed with `>>graph6<<`).
    pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
        let s = s.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        let (n, mut pos) = read_g6_order(bytes, 0, false)?;
        let mut g = Graph::new(n);
        let nbits = n.saturating_sub(1) * n / 2;
        let mut bit = 0usize;
        let mut cur: u32 = 0;
        let mut have = 0usize;
        for v in 1..n {
            for u in 0..v {
                if have == 0 {
                    if pos >= bytes.len() {
                        return Err(GraphError::Graph6 {
                            offset: pos,
                            msg: format!("truncated: need {nbits} adjacency bits"),
                        });
                    }
                    let b = bytes[pos];
                    if !(63..=126).contains(&b) {
                        return Err(GraphError::Graph6 {
                            offset: pos,
                            msg: format!("invalid byte 0x{b:02x}"),
                        });
                    }
                    cur = (b - 63) as u32;
                    have = 6;
                    pos += 1;
                }
                have -= 1;
                if (cur >> have) & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        let _ = bit;
        if pos != bytes.len() {
            return Err(GraphError::Graph6 {
                offset: pos,
                msg: "trailing bytes after adjacency data".into(),
            });
        }
        Ok(g)
    }

    /// Encodes in graph6 format (n ≤ 258047).
    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = Vec::new();
        write_g6_order(&mut out, n);
        let mut cur: u32 = 0;
        let mut have = 0usize;
        for v in 1..n {
            for u in 0..v {
                cur = (cur << 1) | u32::from(self.has_edge(u, v));
                have += 1;
                if have == 6 {
                    out.push((cur as u8) + 63);
                    cur = 0;
                    have = 0;
                }
            }
        }
        if have > 0 {
            out.push(((cur << (6 - have)) as u8) + 63);
        }
        String::from_utf8(out).unwrap()
    }

    /// Parses the sparse6 format (leading `:`; optional `>>sparse6<<`).
    pub fn parse_sparse6(s: &str) -> Result<Graph, GraphError> {
        let s = s.trim();
        let s = s.strip_prefix(">>sparse6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.first() != Some(&b':') {
            return Err(GraphError::Sparse6 {
                offset: 0,
                msg: "missing ':' prefix".into(),
            });
        }
        let (n, pos) = read_g6_order(bytes, 1, true)?;
        let mut g = Graph::new(n);
        if n <= 1 {
            return Ok(g);
        }
        let k = (usize::BITS - (n - 1).leading_zeros()) as usize;
        // Bit stream over the remaining bytes.
        let mut bits: Vec<u8> = Vec::new();
        for (i, &b) in bytes[pos..].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(GraphError::Sparse6 {
                    offset: pos + i,
                    msg: format!("invalid byte 0x{b:02x}"),
                });
            }
            let x = b - 63;
            for j in (0..6).rev() {
                bits.push((x >> j) & 1);
            }
        }
        let mut v: usize = 0;
        let mut i = 0usize;
        while i + k < bits.len() {
            let b = bits[i];
            i += 1;
            let mut x = 0usize;
            for _ in 0..k {
                x = (x << 1) | bits[i] as usize;
                i += 1;
            }
            if b == 1 {
                v += 1;
            }
            if x >= n || v >= n {
                break; // padding
            }
            if x > v {
                v = x;
            } else if x != v {
                g.add_edge(x, v);
            }
        }
        Ok(g)
    }

    /// Encodes in sparse6 format.
    pub fn to_sparse6(&self) -> String {
        let n = self.n();
        let mut out = vec![b':'];
        write_g6_order(&mut out, n);
        let k = if n <= 1 {
            1
        } else {
            (usize::BITS - (n - 1).leading_zeros()) as usize
        };
        let mut bits: Vec<u8> = Vec::new();
        let push_num = |bits: &mut Vec<u8>, x: usize| {
            for j in (0..k).rev() {
                bits.push(((x >> j) & 1) as u8);
            }
        };
        let mut v = 0usize;
        // sparse6 wants edges grouped by their larger endpoint
        let mut es = self.edges();
        es.sort_by_key(|&(u, w)| (w, u));
        for (u, w) in es {
            if w == v {
                bits.push(0);
                push_num(&mut bits, u);
            } else if w == v + 1 {
                v = w;
                bits.push(1);
                push_num(&mut bits, u);
            } else {
                v = w;
                bits.push(1);
                push_num(&mut bits, v);
                bits.push(0);
                push_num(&mut bits, u);
            }
        }
        // Pad with 1-bits to a multiple of 6.
        while bits.len() % 6 != 0 {
            bits.push(1);
        }
        for chunk in bits.chunks(6) {
            let mut x = 0u8;
            for &b in chunk {
                x = (x << 1) | b;
            }
            out.push(x + 63);
        }
        String::from_utf8(out).unwrap()
    }

    /// Parses either graph6 or sparse6, keyed on the `:` prefix.
    pub fn parse_g6_or_s6(s: &str) -> Result<Graph, GraphError> {
        let t = s.trim();
        if t.starts_with(':') || t.starts_with(">>sparse6<<") {
            Graph::parse_sparse6(t)
        } else {
            Graph::parse_graph6(t)
        }
    }

    // ---------------- JSON / DOT ----------------

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n(),
            edges: self.edges(),
        })
        .unwrap()
    }

    pub fn from_json(s: &str) -> Result<Graph, GraphError> {
        let gj: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        for &(u, v) in &gj.edges {
            if u >= gj.n || v >= gj.n {
                return Err(GraphError::VertexRange(u.max(v), gj.n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
        }
        Ok(Graph::from_edges(gj.n, &gj.edges))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph g {\n");
        for v in 0..self.n() {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }

    // ---------------- dominating set ----------------

    /// Exact minimum dominating set by branch and bound over uncovered
    /// vertices. Limited to n ≤ 64 (bitset arithmetic); returns an error above.
    pub fn min_dominating_set(&self) -> Result<Vec<usize>, GraphError> {
        let n = self.n();
        if n > 64 {
            return Err(GraphError::TooLarge { n, limit: 64 });
        }
        if n == 0 {
            return Ok(vec![]);
        }
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let closed: Vec<u64> = (0..n)
            .map(|v| {
                let mut m = 1u64 << v;
                for &w in &self.adj[v] {
                    m |= 1u64 << w;
                }
                m
            })
            .collect();
        // Greedy upper bound.
        let mut best: Vec<usize> = Vec::new();
        let mut covered = 0u64;
        while covered != full {
            let v = (0..n)
                .max_by_key(|&v| (closed[v] & !covered).count_ones())
                .unwrap();
            best.push(v);
            covered |= closed[v];
        }
        let max_cover = closed.iter().map(|m| m.count_ones()).max().unwrap().max(1);
        let mut cur: Vec<usize> = Vec::new();
        fn rec(
            n: usize,
            full: u64,
            closed: &[u64],
            covered: u64,
            cur: &mut Vec<usize>,
            best: &mut Vec<usize>,
            max_cover: u32,
        ) {
            if covered == full {
                if cur.len() < best.len() {
                    *best = cur.clone();
                }
                return;
            }
            let need = (full & !covered).count_ones().div_ceil(max_cover) as usize;
            if cur.len() + need >= best.len() {
                return;
            }
            // Branch on the uncovered vertex with fewest potential dominators.
            let mut pick = usize::MAX;
            let mut pick_cands: Vec<usize> = Vec::new();
            for v in 0..n {
                if covered >> v & 1 == 1 {
                    continue;
                }
                let cands: Vec<usize> = (0..n).filter(|&d| closed[d] >> v & 1 == 1).collect();
                if cands.len() < pick_cands.len() || pick == usize::MAX {
                    pick = v;
                    pick_cands = cands;
                    if pick_cands.len() <= 1 {
                        break;
                    }
                }
            }
            for d in pick_cands {
                cur.push(d);
                rec(n, full, closed, covered | closed[d], cur, best, max_cover);
                cur.pop();
            }
        }
        rec(n, full, &closed, 0, &mut cur, &mut best, max_cover);
        best.sort_unstable();
        Ok(best)
    }

    /// Exact fractional-free integer domination number.
    pub fn domination_number(&self) -> Result<usize, GraphError> {
        Ok(self.min_dominating_set()?.len())
    }

    /// True if `set` dominates every vertex (closed neighborhoods).
    pub fn dominates_all(&self, set: &[usize]) -> bool {
        let mut ok = vec![false; self.n()];
        for &v in set {
            ok[v] = true;
            for &w in &self.adj[v] {
                ok[w] = true;
            }
        }
        ok.into_iter().all(|b| b)
    }
}

/// Diameter / radius / per-vertex eccentricities, with infinity sentinels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricProfile {
    pub eccentricities: Vec<Dist>,
    pub diameter: Dist,
    pub radius: Dist,
}

fn read_g6_order(bytes: &[u8], start: usize, sparse: bool) -> Result<(usize, usize), GraphError> {
    let err = |offset: usize, msg: String| {
        if sparse {
            GraphError::Sparse6 { offset, msg }
        } else {
            GraphError::Graph6 { offset, msg }
        }
    };
    let b0 = *bytes
        .get(start)
        .ok_or_else(|| err(start, "empty input".into()))?;
    if b0 == 126 {
        let b1 = *bytes
            .get(start + 1)
            .ok_or_else(|| err(start + 1, "truncated order".into()))?;
        if b1 == 126 {
            // 8-byte (36-bit) form
            let mut n: usize = 0;
            for i in 0..6 {
                let b = *bytes
                    .get(start + 2 + i)
                    .ok_or_else(|| err(start + 2 + i, "truncated order".into()))?;
                if !(63..=126).contains(&b) {
                    return Err(err(start + 2 + i, format!("invalid byte 0x{b:02x}")));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            Ok((n, start + 8))
        } else {
            let mut n: usize = 0;
            for i in 0..3 {
                let b = *bytes
                    .get(start + 1 + i)
                    .ok_or_else(|| err(start + 1 + i, "truncated order".into()))?;
                if !(63..=126).contains(&b) {
                    return Err(err(start + 1 + i, format!("invalid byte 0x{b:02x}")));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            Ok((n, start + 4))
        }
    } else if (63..=125).contains(&b0) {
        Ok(((b0 - 63) as usize, start + 1))
    } else {
        Err(err(start, format!("invalid order byte 0x{b0:02x}")))
    }
}

fn write_g6_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        panic!("graph too large for graph6 order field");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small_oracles() {
        // "Bw" is the triangle K3.
        let k3 = Graph::parse_graph6("Bw").unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        // "C~" is K4.
        let k4 = Graph::parse_graph6("C~").unwrap();
        assert_eq!(k4, Graph::complete(4));
        // "@" is the single vertex.
        let k1 = Graph::parse_graph6("@").unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.m(), 0);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        match Graph::parse_graph6("C") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected truncation error, got {other:?}"),
        }
        match Graph::parse_graph6("B\u{7f}") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected invalid byte error, got {other:?}"),
        }
    }

    #[test]
    fn graph6_round_trip_identity() {
        let mut rng = 0xdeadbeefu64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 0..20 {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 3 == 0 {
                        g.add_edge(u, v);
                    }
                }
            }
            let s = g.to_graph6();
            let h = Graph::parse_graph6(&s).unwrap();
            assert_eq!(g, h, "graph6 round trip must preserve vertex order");
            let s6 = g.to_sparse6();
            let h6 = Graph::parse_sparse6(&s6).unwrap();
            assert_eq!(g, h6, "sparse6 round trip must preserve vertex order");
        }
    }

    #[test]
    fn big_order_round_trip() {
        let g = Graph::cycle(100);
        assert_eq!(Graph::parse_graph6(&g.to_graph6()).unwrap(), g);
        assert_eq!(Graph::parse_sparse6(&g.to_sparse6()).unwrap(), g);
    }

    #[test]
    fn c7_metric_profile() {
        let c7 = Graph::cycle(7);
        let mp = c7.metric_profile();
        assert_eq!(mp.diameter, Dist::Fin(3));
        assert_eq!(mp.radius, Dist::Fin(3));
        assert!(mp.eccentricities.iter().all(|&e| e == Dist::Fin(3)));
        let d0 = c7.bfs_dist(0);
        let mut vals: Vec<usize> = d0.iter().map(|d| d.finite()).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![0, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn disconnected_distance_is_inf() {
        let g = Graph::new(2);
        assert_eq!(g.dist(0, 1), Dist::Inf);
        assert_eq!(g.metric_profile().diameter, Dist::Inf);
        assert!(Dist::Fin(1000) < Dist::Inf);
    }

    #[test]
    fn edge_induced_exact_edges() {
        // Host C5 plus chord; take two edges sharing vertex 0.
        let mut g = Graph::cycle(5);
        g.add_edge(0, 2);
        let (h, map) = g.edge_induced(&[(0, 1), (0, 2)]);
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
        // Host edge (1,2) exists but is not in R, so it must be absent.
        assert!(g.has_edge(1, 2) && !h.has_edge(1, 2));
    }

    #[test]
    fn dominating_set_oracles() {
        // Star K_{1,5}: center dominates everything.
        let star = Graph::complete_bipartite(1, 5);
        assert_eq!(star.min_dominating_set().unwrap(), vec![0]);
        assert_eq!(Graph::cycle(6).domination_number().unwrap(), 2);
        assert_eq!(Graph::cycle(7).domination_number().unwrap(), 3);
        let g = Graph::new(70);
        assert!(matches!(
            g.min_dominating_set(),
            Err(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn dominating_set_matches_brute_force() {
        let mut rng = 0x12345u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 1..9usize {
            for _ in 0..20 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if next() % 2 == 0 {
                            g.add_edge(u, v);
                        }
                    }
                }
                let opt = g.min_dominating_set().unwrap();
                assert!(g.dominates_all(&opt));
                let mut brute = n;
                for mask in 0u32..(1 << n) {
                    let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    if g.dominates_all(&set) {
                        brute = brute.min(set.len());
                    }
                }
                assert_eq!(opt.len(), brute);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5);
        let j = g.to_json();
        assert_eq!(Graph::from_json(&j).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
        assert!(Graph::from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn dot_output_shape() {
        let d = Graph::path(3).to_dot();
        assert!(d.contains("0 -- 1") && d.contains("1 -- 2"));
    }
}
