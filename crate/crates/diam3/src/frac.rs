//! Exact matching and domination machinery: maximum matching (blossom
//! contraction), fractional matching/cover and fractional domination/packing
//! via the exact LP solver with a combinatorial cross-check, weighting
//! verification, the Moore bound, matching partitions, and tameness.

use crate::graph::{Graph, GraphError};
use crate::lp::{solve_max, LpProblem};
use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Weightings
// ---------------------------------------------------------------------------

/// The four supported weighting roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "fractional-matching")]
    Matching,
    #[serde(rename = "fractional-cover")]
    Cover,
    #[serde(rename = "fractional-dominating")]
    Dominating,
    #[serde(rename = "fractional-packing")]
    Packing,
}

/// A rational weighting of edges or vertices with a role-specific
/// feasibility meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    pub role: Role,
    pub edge_weights: BTreeMap<(usize, usize), Rat>,
    pub vertex_weights: BTreeMap<usize, Rat>,
}

#[derive(Serialize, Deserialize)]
struct SupportItem {
    #[serde(skip_serializing_if = "Option::is_none")]
    edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex: Option<usize>,
    w: Rat,
}

#[derive(Serialize, Deserialize)]
struct WeightingJson {
    role: Role,
    support: Vec<SupportItem>,
}

impl Weighting {
    pub fn new_edges(role: Role, weights: BTreeMap<(usize, usize), Rat>) -> Self {
        Weighting {
            role,
            edge_weights: weights,
            vertex_weights: BTreeMap::new(),
        }
    }

    pub fn new_vertices(role: Role, weights: BTreeMap<usize, Rat>) -> Self {
        Weighting {
            role,
            edge_weights: BTreeMap::new(),
            vertex_weights: weights,
        }
    }

    pub fn value(&self) -> Rat {
        let mut v = Rat::zero();
        for w in self.edge_weights.values() {
            v += w.clone();
        }
        for w in self.vertex_weights.values() {
            v += w.clone();
        }
        v
    }

    pub fn to_json(&self) -> String {
        let mut support: Vec<SupportItem> = self
            .edge_weights
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(&e, w)| SupportItem {
                edge: Some(e),
                vertex: None,
                w: w.clone(),
            })
            .collect();
        support.extend(
            self.vertex_weights
                .iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(&v, w)| SupportItem {
                    edge: None,
                    vertex: Some(v),
                    w: w.clone(),
                }),
        );
        serde_json::to_string(&WeightingJson {
            role: self.role,
            support,
        })
        .unwrap()
    }

    pub fn from_json(s: &str) -> Result<Weighting, GraphError> {
        let wj: WeightingJson =
            serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut out = Weighting {
            role: wj.role,
            edge_weights: BTreeMap::new(),
            vertex_weights: BTreeMap::new(),
        };
        for item in wj.support {
            match (item.edge, item.vertex) {
                (Some((u, v)), None) => {
                    out.edge_weights.insert((u.min(v), u.max(v)), item.w);
                }
                (None, Some(v)) => {
                    out.vertex_weights.insert(v, item.w);
                }
                _ => {
                    return Err(GraphError::Json(
                        "support item must have exactly one of edge/vertex".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

/// A violated feasibility constraint, with the (negative) slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: String,
    pub slack: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Feasible(Rat),
    Violated(Violation),
}

/// Checks a weighting against its role's constraints on `g`; returns the
/// exact value when feasible and otherwise the first violated constraint in
/// id order. Unknown edges or vertices in the support are hard errors.
pub fn verify_weighting(g: &Graph, w: &Weighting) -> Result<VerifyOutcome, GraphError> {
    for (&(u, v), _) in &w.edge_weights {
        if !g.has_edge(u, v) {
            return Err(GraphError::Other(format!(
                "support edge ({u},{v}) is not an edge of the graph"
            )));
        }
    }
    for (&v, _) in &w.vertex_weights {
        if v >= g.n() {
            return Err(GraphError::VertexRange(v, g.n()));
        }
    }
    for (&(u, v), wt) in &w.edge_weights {
        if wt.is_negative() {
            return Ok(VerifyOutcome::Violated(Violation {
                constraint: format!("nonnegativity of edge ({u},{v})"),
                slack: wt.clone(),
            }));
        }
    }
    for (&v, wt) in &w.vertex_weights {
        if wt.is_negative() {
            return Ok(VerifyOutcome::Violated(Violation {
                constraint: format!("nonnegativity of vertex {v}"),
                slack: wt.clone(),
            }));
        }
    }
    let ew = |u: usize, v: usize| -> Rat {
        w.edge_weights
            .get(&(u.min(v), u.max(v)))
            .cloned()
            .unwrap_or_else(Rat::zero)
    };
    let vw = |v: usize| -> Rat {
        w.vertex_weights.get(&v).cloned().unwrap_or_else(Rat::zero)
    };
    match w.role {
        Role::Matching => {
            for v in 0..g.n() {
                let mut s = Rat::zero();
                for u in g.neighbors(v) {
                    s += ew(u, v);
                }
                if s > Rat::one() {
                    return Ok(VerifyOutcome::Violated(Violation {
                        constraint: format!("matching load at vertex {v}"),
                        slack: &Rat::one() - &s,
                    }));
                }
            }
        }
        Role::Cover => {
            for (u, v) in g.edges() {
                let s = &vw(u) + &vw(v);
                if s < Rat::one() {
                    return Ok(VerifyOutcome::Violated(Violation {
                        constraint: format!("cover constraint at edge ({u},{v})"),
                        slack: &s - &Rat::one(),
                    }));
                }
            }
        }
        Role::Dominating | Role::Packing => {
            for v in 0..g.n() {
                let mut s = vw(v);
                for u in g.neighbors(v) {
                    s += vw(u);
                }
                if w.role == Role::Dominating && s < Rat::one() {
                    return Ok(VerifyOutcome::Violated(Violation {
                        constraint: format!("closed neighborhood of vertex {v}"),
                        slack: &s - &Rat::one(),
                    }));
                }
                if w.role == Role::Packing && s > Rat::one() {
                    return Ok(VerifyOutcome::Violated(Violation {
                        constraint: format!("closed neighborhood of vertex {v}"),
                        slack: &Rat::one() - &s,
                    }));
                }
            }
        }
    }
    Ok(VerifyOutcome::Feasible(w.value()))
}

// ---------------------------------------------------------------------------
// Maximum matching (blossom contraction)
// ---------------------------------------------------------------------------

/// Maximum matching in a general graph by alternating-tree search with
/// blossom contraction (O(V^3)). Edges are returned as (min, max) pairs in
/// lexicographic order.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy warm start.
    for (u, v) in g.edges() {
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
    }
    for root in 0..n {
        if mate[root].is_none() {
            augment_from(g, &mut mate, root);
        }
    }
    let mut out: Vec<(usize, usize)> = (0..n)
        .filter_map(|v| mate[v].filter(|&u| v < u).map(|u| (v, u)))
        .collect();
    out.sort_unstable();
    out
}

/// Size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

/// One blossom phase: tries to find and apply an augmenting path from `root`.
fn augment_from(g: &Graph, mate: &mut [Option<usize>], root: usize) -> bool {
    let n = g.n();
    let mut p: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut q = std::collections::VecDeque::new();
    used[root] = true;
    q.push_back(root);

    fn lca(
        mate: &[Option<usize>],
        p: &[Option<usize>],
        base: &[usize],
        mut a: usize,
        mut b: usize,
    ) -> usize {
        let n = base.len();
        let mut on_path = vec![false; n];
        loop {
            a = base[a];
            on_path[a] = true;
            match mate[a] {
                None => break,
                Some(ma) => match p[ma] {
                    None => break,
                    Some(pa) => a = pa,
                },
            }
        }
        loop {
            b = base[b];
            if on_path[b] {
                return b;
            }
            b = p[mate[b].expect("interior tree vertex is matched")]
                .expect("interior tree vertex has a parent");
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn mark_path(
        mate: &[Option<usize>],
        base: &[usize],
        blossom: &mut [bool],
        p: &mut [Option<usize>],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            let mv = mate[v].expect("blossom vertex is matched");
            blossom[base[v]] = true;
            blossom[base[mv]] = true;
            p[v] = Some(child);
            child = mv;
            v = p[mv].expect("blossom vertex has a tree parent");
        }
    }

    let mut found: Option<usize> = None;
    'bfs: while let Some(v) = q.pop_front() {
        for to in g.neighbors(v) {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            if to == root || mate[to].map_or(false, |mt| p[mt].is_some()) {
                // Odd cycle: contract the blossom.
                let curbase = lca(mate, &p, &base, v, to);
                let mut blossom = vec![false; n];
                mark_path(mate, &base, &mut blossom, &mut p, v, curbase, to);
                mark_path(mate, &base, &mut blossom, &mut p, to, curbase, v);
                for i in 0..n {
                    if blossom[base[i]] {
                        base[i] = curbase;
                        if !used[i] {
                            used[i] = true;
                            q.push_back(i);
                        }
                    }
                }
            } else if p[to].is_none() {
                p[to] = Some(v);
                match mate[to] {
                    None => {
                        found = Some(to);
                        break 'bfs;
                    }
                    Some(mt) => {
                        used[mt] = true;
                        q.push_back(mt);
                    }
                }
            }
        }
    }
    let Some(mut v) = found else {
        return false;
    };
    // Flip matching along the alternating path back to the root.
    while let Some(pv) = p[v] {
        let ppv = mate[pv];
        mate[v] = Some(pv);
        mate[pv] = Some(v);
        match ppv {
            None => break,
            Some(x) => v = x,
        }
    }
    true
}

/// Finds an augmenting path for the matching `m`, or None if `m` is maximum.
/// The returned vertex sequence alternates non-matching/matching edges and
/// both endpoints are unsaturated.
pub fn find_augmenting(g: &Graph, m: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    for &(u, v) in m {
        assert!(g.has_edge(u, v), "matching edge ({u},{v}) not in graph");
        assert!(
            mate[u].is_none() && mate[v].is_none(),
            "edge set is not a matching at ({u},{v})"
        );
        mate[u] = Some(v);
        mate[v] = Some(u);
    }
    let before: BTreeSet<(usize, usize)> = m.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut mate2 = mate.clone();
    let improved = (0..n).any(|r| mate2[r].is_none() && augment_from(g, &mut mate2, r));
    if !improved {
        return None;
    }
    // The symmetric difference of the two matchings is a single augmenting path.
    let after: BTreeSet<(usize, usize)> = (0..n)
        .filter_map(|v| mate2[v].filter(|&u| v < u).map(|u| (v, u)))
        .collect();
    let mut diff = Graph::new(n);
    for &(u, v) in before.symmetric_difference(&after) {
        diff.add_edge(u, v);
    }
    // Walk the path from one unsaturated (in `m`) endpoint of the difference.
    let start = (0..n)
        .find(|&v| diff.degree(v) == 1 && mate[v].is_none())
        .expect("augmenting path has an unsaturated endpoint");
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = diff.neighbors(cur).find(|&w| w != prev);
        match next {
            None => break,
            Some(w) => {
                path.push(w);
                prev = cur;
                cur = w;
            }
        }
    }
    debug_assert!(path.len() % 2 == 0);
    Some(path)
}

// ---------------------------------------------------------------------------
// Fractional matching / cover
// ---------------------------------------------------------------------------

fn matching_lp(g: &Graph) -> (Vec<(usize, usize)>, LpProblem) {
    let edges = g.edges();
    let mut rows = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let row: Vec<(usize, Rat)> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(j, _)| (j, Rat::one()))
            .collect();
        rows.push((row, Rat::one()));
    }
    let lp = LpProblem {
        num_vars: edges.len(),
        rows,
        objective: vec![Rat::one(); edges.len()],
    };
    (edges, lp)
}

/// Fractional matching number via half the maximum matching of the bipartite
/// double cover (fast combinatorial route).
pub fn mu_star_double_cover(g: &Graph) -> Rat {
    let n = g.n();
    let mut dc = Graph::new(2 * n);
    for (u, v) in g.edges() {
        dc.add_edge(u, n + v);
        dc.add_edge(v, n + u);
    }
    Rat::frac(matching_number(&dc) as i64, 2)
}

/// Fractional matching number with an optimal fractional matching, computed
/// by exact LP and cross-checked against the double-cover identity. The
/// value is asserted half-integral.
pub fn mu_star(g: &Graph) -> (Rat, Weighting) {
    let (edges, lp) = matching_lp(g);
    let sol = solve_max(&lp).expect("matching LP is bounded and slack-feasible");
    assert_eq!(
        sol.value,
        mu_star_double_cover(g),
        "LP and double-cover fractional matching values disagree"
    );
    let twice = &sol.value + &sol.value;
    assert!(twice.is_integer(), "fractional matching value not half-integral");
    let weights: BTreeMap<(usize, usize), Rat> = edges
        .iter()
        .copied()
        .zip(sol.primal.iter().cloned())
        .filter(|(_, w)| !w.is_zero())
        .collect();
    (sol.value, Weighting::new_edges(Role::Matching, weights))
}

/// Fractional vertex cover number with an optimal fractional cover (the
/// matching LP's dual); equals `mu_star` by strong duality.
pub fn tau_star(g: &Graph) -> (Rat, Weighting) {
    let (_, lp) = matching_lp(g);
    let sol = solve_max(&lp).expect("matching LP is bounded and slack-feasible");
    let weights: BTreeMap<usize, Rat> = sol
        .dual
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let cover = Weighting::new_vertices(Role::Cover, weights);
    match verify_weighting(g, &cover).unwrap() {
        VerifyOutcome::Feasible(v) => assert_eq!(v, sol.value, "dual value mismatch"),
        VerifyOutcome::Violated(viol) => panic!("LP dual is not a feasible cover: {viol:?}"),
    }
    (sol.value, cover)
}

fn packing_lp(g: &Graph) -> LpProblem {
    let n = g.n();
    let mut rows = Vec::with_capacity(n);
    for v in 0..n {
        let mut row: Vec<(usize, Rat)> = vec![(v, Rat::one())];
        row.extend(g.neighbors(v).map(|u| (u, Rat::one())));
        rows.push((row, Rat::one()));
    }
    LpProblem {
        num_vars: n,
        rows,
        objective: vec![Rat::one(); n],
    }
}

/// Fractional domination number with an optimal fractional dominating
/// function (dual of the packing LP; the closed-neighborhood matrix is
/// symmetric, so the dual is exactly the dominating LP).
pub fn gamma_f(g: &Graph) -> (Rat, Weighting) {
    let sol = solve_max(&packing_lp(g)).expect("packing LP is bounded and slack-feasible");
    let weights: BTreeMap<usize, Rat> = sol
        .dual
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let dom = Weighting::new_vertices(Role::Dominating, weights);
    match verify_weighting(g, &dom).unwrap() {
        VerifyOutcome::Feasible(v) => assert_eq!(v, sol.value, "dual value mismatch"),
        VerifyOutcome::Violated(viol) => panic!("LP dual is not feasible dominating: {viol:?}"),
    }
    (sol.value, dom)
}

/// Fractional closed-neighborhood packing number with an optimal packing;
/// equals `gamma_f` by strong duality.
pub fn rho_f(g: &Graph) -> (Rat, Weighting) {
    let sol = solve_max(&packing_lp(g)).expect("packing LP is bounded and slack-feasible");
    let weights: BTreeMap<usize, Rat> = sol
        .primal
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .collect();
    (sol.value, Weighting::new_vertices(Role::Packing, weights))
}

// ---------------------------------------------------------------------------
// Moore bound
// ---------------------------------------------------------------------------

/// Largest possible order of a graph with maximum degree `delta` and
/// diameter `d` (breadth-first counting bound).
pub fn moore_bound(delta: u64, d: u32) -> Result<u64, GraphError> {
    if delta < 2 || d < 1 {
        return Err(GraphError::Other(format!(
            "moore_bound needs delta >= 2 and d >= 1 (got {delta}, {d})"
        )));
    }
    if delta == 2 {
        return Ok(2 * d as u64 + 1);
    }
    let dm1 = (delta - 1) as u128;
    let pow = dm1.pow(d);
    let val = 1 + (delta as u128) * (pow - 1) / (delta as u128 - 2);
    Ok(val as u64)
}

// ---------------------------------------------------------------------------
// Matching partitions and tameness
// ---------------------------------------------------------------------------

/// Structure of a graph around a maximum matching: the (U, V, W, X)
/// partition, private triangles/edges, an alternating path family, and the
/// tameness flag.
#[derive(Debug, Clone)]
pub struct MatchingAnalysis {
    /// Oriented matching edges (u_i, v_i); when an endpoint has private
    /// edges it is placed first, otherwise the smaller id is first.
    pub matching: Vec<(usize, usize)>,
    pub saturated: BTreeSet<usize>,
    pub u_side: Vec<usize>,
    pub v_side: Vec<usize>,
    /// Unsaturated vertices lying in a private triangle.
    pub w_part: BTreeSet<usize>,
    /// Unsaturated vertices with a private edge but no private triangle.
    pub x_part: BTreeSet<usize>,
    /// Private triangle apex per matching edge (keyed by (min, max)).
    pub private_triangles: BTreeMap<(usize, usize), usize>,
    /// Private-edge apexes per saturated endpoint.
    pub private_edges: BTreeMap<usize, Vec<usize>>,
    /// Pairwise saturated-disjoint alternating paths avoiding private
    /// triangles, maximizing the number of saturated vertices covered
    /// (exhaustive at desk scale).
    pub alternating_family: Vec<Vec<usize>>,
    pub tame: bool,
}

/// Computes the matching partition of `h` for the maximum matching `m`.
pub fn m_partition(h: &Graph, m: &[(usize, usize)]) -> Result<MatchingAnalysis, GraphError> {
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) == 0) {
        return Err(GraphError::Other(format!(
            "isolated vertex {v} is not allowed"
        )));
    }
    let mut mate: Vec<Option<usize>> = vec![None; h.n()];
    for &(u, v) in m {
        if !h.has_edge(u, v) {
            return Err(GraphError::Other(format!(
                "matching edge ({u},{v}) not in graph"
            )));
        }
        if mate[u].is_some() || mate[v].is_some() {
            return Err(GraphError::Other("edge set is not a matching".into()));
        }
        mate[u] = Some(v);
        mate[v] = Some(u);
    }
    if find_augmenting(h, m).is_some() {
        return Err(GraphError::Other("matching is not maximum".into()));
    }
    let saturated: BTreeSet<usize> = (0..h.n()).filter(|&v| mate[v].is_some()).collect();
    let unsat: Vec<usize> = (0..h.n()).filter(|&v| mate[v].is_none()).collect();

    let mut private_triangles = BTreeMap::new();
    for &(a, b) in m {
        let key = (a.min(b), a.max(b));
        let apexes: Vec<usize> = unsat
            .iter()
            .copied()
            .filter(|&w| h.has_edge(a, w) && h.has_edge(b, w))
            .collect();
        assert!(
            apexes.len() <= 1,
            "matching edge ({a},{b}) has {} private triangles; matching not maximum?",
            apexes.len()
        );
        if let Some(&w) = apexes.first() {
            private_triangles.insert(key, w);
        }
    }
    let w_part: BTreeSet<usize> = private_triangles.values().copied().collect();

    let mut matching = Vec::new();
    let mut private_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in m {
        let key = (a.min(b), a.max(b));
        let apex = private_triangles.get(&key).copied();
        let priv_of = |x: usize| -> Vec<usize> {
            unsat
                .iter()
                .copied()
                .filter(|&w| h.has_edge(x, w) && Some(w) != apex)
                .collect()
        };
        let pa = priv_of(a);
        let pb = priv_of(b);
        assert!(
            pa.is_empty() || pb.is_empty(),
            "both endpoints of ({a},{b}) have private edges; matching not maximum?"
        );
        let (u, v) = if !pa.is_empty() {
            (a, b)
        } else if !pb.is_empty() {
            (b, a)
        } else {
            (a.min(b), a.max(b))
        };
        let pu = if u == a { pa } else { pb };
        if !pu.is_empty() {
            private_edges.insert(u, pu);
        }
        matching.push((u, v));
    }
    matching.sort_unstable();
    let u_side: Vec<usize> = matching.iter().map(|&(u, _)| u).collect();
    let v_side: Vec<usize> = matching.iter().map(|&(_, v)| v).collect();

    let x_part: BTreeSet<usize> = unsat
        .iter()
        .copied()
        .filter(|v| !w_part.contains(v))
        .collect();
    // Every unsaturated vertex belongs to a private edge or triangle.
    for &x in &x_part {
        let has_private = h.neighbors(x).any(|y| saturated.contains(&y));
        assert!(has_private, "unsaturated vertex {x} has no private edge");
    }
    // W ∪ X independent; no X-V edges.
    for &a in w_part.iter().chain(x_part.iter()) {
        for b in h.neighbors(a) {
            assert!(saturated.contains(&b), "W ∪ X is not independent at {a}");
        }
    }
    for &x in &x_part {
        for y in h.neighbors(x) {
            assert!(
                !v_side.contains(&y),
                "edge between X vertex {x} and V-side vertex {y}"
            );
        }
    }

    let alternating_family = best_alternating_family(h, &mate, &private_triangles);
    let tame = is_tame(h).0;
    Ok(MatchingAnalysis {
        matching,
        saturated,
        u_side,
        v_side,
        w_part,
        x_part,
        private_triangles,
        private_edges,
        alternating_family,
        tame,
    })
}

/// Enumerates alternating paths (rooted at unsaturated vertices, avoiding
/// all private-triangle vertices) and picks a pairwise saturated-disjoint
/// family maximizing the number of saturated vertices covered. Falls back to
/// a greedy family if the path count is too large for exhaustive search.
fn best_alternating_family(
    h: &Graph,
    mate: &[Option<usize>],
    private_triangles: &BTreeMap<(usize, usize), usize>,
) -> Vec<Vec<usize>> {
    let n = h.n();
    if n > 64 {
        return Vec::new();
    }
    let mut forbidden = vec![false; n];
    for (&(a, b), &w) in private_triangles {
        forbidden[a] = true;
        forbidden[b] = true;
        forbidden[w] = true;
    }
    // A path from an unsaturated root is forced after each non-matching step:
    // x1 (unsaturated) -> x2 (saturated) -> mate(x2) -> x4 -> mate(x4) ...
    let mut paths: Vec<Vec<usize>> = Vec::new();
    fn extend(
        h: &Graph,
        mate: &[Option<usize>],
        forbidden: &[bool],
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        if paths.len() > 4000 {
            return;
        }
        let last = *path.last().unwrap();
        for y in h.neighbors(last) {
            if on_path[y] || forbidden[y] {
                continue;
            }
            let Some(my) = mate[y] else {
                continue; // a second unsaturated vertex would augment
            };
            if on_path[my] || forbidden[my] {
                continue;
            }
            path.push(y);
            path.push(my);
            on_path[y] = true;
            on_path[my] = true;
            paths.push(path.clone());
            extend(h, mate, forbidden, path, on_path, paths);
            on_path[y] = false;
            on_path[my] = false;
            path.pop();
            path.pop();
        }
    }
    for root in 0..n {
        if mate[root].is_some() || forbidden[root] {
            continue;
        }
        let mut on_path = vec![false; n];
        on_path[root] = true;
        let mut path = vec![root];
        extend(h, mate, &forbidden, &mut path, &mut on_path, &mut paths);
    }
    let sat_mask = |p: &Vec<usize>| -> u64 {
        p.iter()
            .filter(|&&v| mate[v].is_some())
            .fold(0u64, |m, &v| m | 1 << v)
    };
    let masks: Vec<u64> = paths.iter().map(sat_mask).collect();
    if paths.is_empty() {
        return Vec::new();
    }
    if paths.len() <= 200 {
        // Exhaustive branch and bound over path subsets.
        fn rec(
            idx: usize,
            used: u64,
            picked: &mut Vec<usize>,
            paths: &[Vec<usize>],
            masks: &[u64],
            best: &mut (u32, Vec<usize>),
        ) {
            let gain = used.count_ones();
            if gain > best.0 {
                *best = (gain, picked.clone());
            }
            if idx == paths.len() {
                return;
            }
            let rest: u64 = masks[idx..].iter().fold(0, |a, &b| a | b);
            if (used | rest).count_ones() <= best.0 {
                return;
            }
            if masks[idx] & used == 0 {
                picked.push(idx);
                rec(idx + 1, used | masks[idx], picked, paths, masks, best);
                picked.pop();
            }
            rec(idx + 1, used, picked, paths, masks, best);
        }
        let mut best = (0u32, Vec::new());
        let mut picked = Vec::new();
        rec(0, 0, &mut picked, &paths, &masks, &mut best);
        return best.1.into_iter().map(|i| paths[i].clone()).collect();
    }
    // Greedy fallback, largest saturated coverage first.
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(masks[i].count_ones()));
    let mut used = 0u64;
    let mut fam = Vec::new();
    for i in order {
        if masks[i] & used == 0 {
            used |= masks[i];
            fam.push(paths[i].clone());
        }
    }
    fam
}

/// Decides tameness: at most 9 vertices, or a 7-cycle plus a star whose
/// leaves are pendant at the star center, with arbitrary extra edges inside
/// the cycle-plus-center. When tame, returns a fractional cover of value at
/// most 9/2 following the fixed scheme (1 on the center, 1/2 on the cycle).
pub fn is_tame(h: &Graph) -> (bool, Option<Weighting>) {
    let n = h.n();
    if n <= 9 {
        let weights: BTreeMap<usize, Rat> = (0..n).map(|v| (v, Rat::frac(1, 2))).collect();
        return (true, Some(Weighting::new_vertices(Role::Cover, weights)));
    }
    // Need a center v, leaves = pendant neighbors of v, and the remaining 7
    // vertices carrying a spanning 7-cycle with no edges to the leaves.
    for center in 0..n {
        let leaves: BTreeSet<usize> = (0..n)
            .filter(|&u| u != center && h.degree(u) == 1 && h.has_edge(u, center))
            .collect();
        let cyc: Vec<usize> = (0..n)
            .filter(|&u| u != center && !leaves.contains(&u))
            .collect();
        if cyc.len() != 7 {
            continue;
        }
        // Cycle vertices may touch only the cycle and the center.
        let cyc_set: BTreeSet<usize> = cyc.iter().copied().collect();
        let closed = cyc.iter().all(|&u| {
            h.neighbors(u)
                .all(|w| w == center || cyc_set.contains(&w))
        });
        if !closed {
            continue;
        }
        let (sub, _) = h.induced_subgraph(&cyc);
        if !has_hamiltonian_cycle_7(&sub) {
            continue;
        }
        let mut weights: BTreeMap<usize, Rat> = BTreeMap::new();
        weights.insert(center, Rat::one());
        for &u in &cyc {
            weights.insert(u, Rat::frac(1, 2));
        }
        let cover = Weighting::new_vertices(Role::Cover, weights);
        debug_assert!(matches!(
            verify_weighting(h, &cover),
            Ok(VerifyOutcome::Feasible(_))
        ));
        return (true, Some(cover));
    }
    (false, None)
}

fn has_hamiltonian_cycle_7(g: &Graph) -> bool {
    let n = g.n();
    if n != 7 || (0..n).any(|v| g.degree(v) < 2) {
        return false;
    }
    let mut perm: Vec<usize> = (1..n).collect();
    // Heap-style permutation enumeration over the 6 non-anchor vertices.
    fn rec(g: &Graph, perm: &mut Vec<usize>, k: usize) -> bool {
        let n = perm.len();
        if k == n {
            let ok = g.has_edge(0, perm[0])
                && g.has_edge(perm[n - 1], 0)
                && perm.windows(2).all(|w| g.has_edge(w[0], w[1]));
            return ok;
        }
        for i in k..n {
            perm.swap(k, i);
            if rec(g, perm, k + 1) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(g, &mut perm, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c7_plus_k2() -> Graph {
        Graph::cycle(7).disjoint_union(&Graph::complete(2))
    }
    fn nk3(k: usize) -> Graph {
        let mut g = Graph::new(0);
        for _ in 0..k {
            g = g.disjoint_union(&Graph::complete(3));
        }
        g
    }

    #[test]
    fn max_matching_oracles() {
        assert_eq!(matching_number(&Graph::complete(3)), 1);
        assert_eq!(matching_number(&c7_plus_k2()), 4);
        assert_eq!(matching_number(&nk3(3)), 3);
        // Petersen graph has a perfect matching.
        let pet = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        );
        assert_eq!(matching_number(&pet), 5);
    }

    #[test]
    fn max_matching_matches_brute_force() {
        let mut rng = 0x77aau64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 2..9usize {
            for _ in 0..25 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if next() % 3 == 0 {
                            g.add_edge(u, v);
                        }
                    }
                }
                let edges = g.edges();
                let mut brute = 0usize;
                for mask in 0u32..(1 << edges.len().min(20)) {
                    let mut used = 0u32;
                    let mut size = 0;
                    let mut ok = true;
                    for (i, &(u, v)) in edges.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            if used >> u & 1 == 1 || used >> v & 1 == 1 {
                                ok = false;
                                break;
                            }
                            used |= 1 << u | 1 << v;
                            size += 1;
                        }
                    }
                    if ok {
                        brute = brute.max(size);
                    }
                }
                assert_eq!(matching_number(&g), brute, "graph {g:?}");
            }
        }
    }

    #[test]
    fn find_augmenting_oracles() {
        let p4 = Graph::path(4);
        let path = find_augmenting(&p4, &[(1, 2)]).expect("middle edge is augmentable");
        assert_eq!(path.len(), 4);
        assert!(find_augmenting(&p4, &[(0, 1), (2, 3)]).is_none());
        let c5 = Graph::cycle(5);
        assert!(find_augmenting(&c5, &[(0, 1), (2, 3)]).is_none());
    }

    #[test]
    fn mu_star_oracles() {
        assert_eq!(mu_star(&Graph::complete(2)).0, Rat::one());
        assert_eq!(mu_star(&Graph::cycle(5)).0, Rat::frac(5, 2));
        assert_eq!(mu_star(&nk3(3)).0, Rat::frac(9, 2));
        assert_eq!(mu_star(&Graph::cycle(4)).0, Rat::int(2));
        // The witness must verify feasible at the same value.
        let (v, w) = mu_star(&Graph::cycle(7));
        assert_eq!(v, Rat::frac(7, 2));
        assert_eq!(
            verify_weighting(&Graph::cycle(7), &w).unwrap(),
            VerifyOutcome::Feasible(Rat::frac(7, 2))
        );
    }

    #[test]
    fn tau_star_oracles() {
        assert_eq!(tau_star(&Graph::complete(2)).0, Rat::one());
        assert_eq!(tau_star(&Graph::cycle(7)).0, Rat::frac(7, 2));
        let k3_3k2 = Graph::complete(3)
            .disjoint_union(&Graph::complete(2))
            .disjoint_union(&Graph::complete(2))
            .disjoint_union(&Graph::complete(2));
        assert_eq!(tau_star(&k3_3k2).0, Rat::frac(9, 2));
        assert_eq!(mu_star(&k3_3k2).0, Rat::frac(9, 2));
    }

    #[test]
    fn gamma_f_oracles() {
        for n in 2..6 {
            assert_eq!(gamma_f(&Graph::complete(n)).0, Rat::one());
        }
        assert_eq!(gamma_f(&Graph::cycle(4)).0, Rat::frac(4, 3));
        let (g1, _) = gamma_f(&Graph::cycle(7));
        let (r1, pw) = rho_f(&Graph::cycle(7));
        assert_eq!(g1, r1, "duality");
        assert!(matches!(
            verify_weighting(&Graph::cycle(7), &pw).unwrap(),
            VerifyOutcome::Feasible(_)
        ));
    }

    #[test]
    fn sandwich_properties_on_randoms() {
        let mut rng = 0x5eedu64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for n in 3..9usize {
            for _ in 0..10 {
                let mut g = Graph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if next() % 3 != 0 {
                            g.add_edge(u, v);
                        }
                    }
                }
                let mu = Rat::int(matching_number(&g) as i64);
                let (ms, _) = mu_star(&g);
                let (ts, _) = tau_star(&g);
                assert_eq!(ms, ts);
                assert!(mu <= ms);
                let two_mu = &mu + &mu;
                assert!(ms <= two_mu);
                let twice = &ms + &ms;
                assert!(twice.is_integer());
                // Domination sandwich.
                let (gf, _) = gamma_f(&g);
                let gam = Rat::int(g.domination_number().unwrap() as i64);
                let lower = Rat::frac(n as i64, g.max_degree() as i64 + 1);
                assert!(lower <= gf && gf <= gam);
            }
        }
    }

    #[test]
    fn verify_weighting_oracles() {
        let k3 = Graph::complete(3);
        let mut ew = BTreeMap::new();
        for e in k3.edges() {
            ew.insert(e, Rat::frac(1, 2));
        }
        let w = Weighting::new_edges(Role::Matching, ew);
        assert_eq!(
            verify_weighting(&k3, &w).unwrap(),
            VerifyOutcome::Feasible(Rat::frac(3, 2))
        );
        // Two incident edges at weight 1: violation at the shared vertex.
        let p3 = Graph::path(3);
        let mut ew = BTreeMap::new();
        ew.insert((0, 1), Rat::one());
        ew.insert((1, 2), Rat::one());
        let w = Weighting::new_edges(Role::Matching, ew);
        match verify_weighting(&p3, &w).unwrap() {
            VerifyOutcome::Violated(v) => {
                assert_eq!(v.constraint, "matching load at vertex 1");
                assert_eq!(v.slack, Rat::int(-1));
            }
            other => panic!("expected violation, got {other:?}"),
        }
        // Nine halves on 3K3.
        let g = nk3(3);
        let mut ew = BTreeMap::new();
        for e in g.edges() {
            ew.insert(e, Rat::frac(1, 2));
        }
        let w = Weighting::new_edges(Role::Matching, ew);
        assert_eq!(
            verify_weighting(&g, &w).unwrap(),
            VerifyOutcome::Feasible(Rat::frac(9, 2))
        );
        // Unknown edge is a hard error.
        let mut ew = BTreeMap::new();
        ew.insert((0, 2), Rat::one());
        let w = Weighting::new_edges(Role::Matching, ew);
        assert!(verify_weighting(&p3, &w).is_err());
    }

    #[test]
    fn weighting_json_round_trip() {
        let (_, w) = mu_star(&Graph::cycle(5));
        let j = w.to_json();
        assert!(j.contains("fractional-matching"));
        let w2 = Weighting::from_json(&j).unwrap();
        assert_eq!(w, w2);
    }

    #[test]
    fn moore_bound_oracles() {
        assert_eq!(moore_bound(2, 3).unwrap(), 7);
        assert_eq!(moore_bound(3, 2).unwrap(), 10);
        assert_eq!(moore_bound(3, 3).unwrap(), 22);
        assert!(moore_bound(1, 3).is_err());
        assert!(moore_bound(3, 0).is_err());
    }

    #[test]
    fn m_partition_oracles() {
        // K3 with one matching edge: the apex is a private triangle vertex.
        let k3 = Graph::complete(3);
        let ma = m_partition(&k3, &[(0, 1)]).unwrap();
        assert_eq!(ma.w_part.iter().copied().collect::<Vec<_>>(), vec![2]);
        assert!(ma.x_part.is_empty());
        assert_eq!(ma.private_triangles.get(&(0, 1)), Some(&2));
        // Path a-b-c with matching {ab}: c has a private edge bc, so b is u_1.
        let p3 = Graph::path(3);
        let ma = m_partition(&p3, &[(0, 1)]).unwrap();
        assert_eq!(ma.x_part.iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(ma.matching, vec![(1, 0)], "endpoint with private edge is u");
        assert_eq!(ma.u_side, vec![1]);
        // C7+K2 with a maximum matching: X nonempty, |W| <= 1.
        let g = c7_plus_k2();
        let m = max_matching(&g);
        assert_eq!(m.len(), 4);
        let ma = m_partition(&g, &m).unwrap();
        assert!(!ma.x_part.is_empty());
        assert!(ma.w_part.len() <= 1);
        // Errors: non-maximum matching, isolated vertex.
        assert!(m_partition(&Graph::path(4), &[(1, 2)]).is_err());
        let mut iso = Graph::path(2);
        iso.add_vertex();
        assert!(m_partition(&iso, &[(0, 1)]).is_err());
    }

    #[test]
    fn tame_oracles() {
        // Anything with at most 9 vertices is tame via the uniform cover.
        let (t, cover) = is_tame(&Graph::cycle(9));
        assert!(t);
        let c = cover.unwrap();
        assert!(c.value() <= Rat::frac(9, 2));
        // C7 plus a star K_{1,3}: center is vertex 7, leaves 8..10.
        let mut g = Graph::cycle(7);
        for _ in 0..4 {
            g.add_vertex();
        }
        g.add_edge(7, 8);
        g.add_edge(7, 9);
        g.add_edge(7, 10);
        let (t, cover) = is_tame(&g);
        assert!(t);
        let c = cover.unwrap();
        assert_eq!(c.value(), Rat::frac(9, 2));
        assert!(matches!(
            verify_weighting(&g, &c).unwrap(),
            VerifyOutcome::Feasible(_)
        ));
        // Extra edges inside cycle ∪ center stay tame.
        let mut g2 = g.clone();
        g2.add_edge(0, 2);
        g2.add_edge(7, 0);
        assert!(is_tame(&g2).0);
        // 3K3 + K2 on 11 vertices is not tame.
        let bad = Graph::complete(3)
            .disjoint_union(&Graph::complete(3))
            .disjoint_union(&Graph::complete(3))
            .disjoint_union(&Graph::complete(2));
        assert!(!is_tame(&bad).0);
    }
}
