//! Lanterns (theta subgraphs of plane graphs): discovery by vertex-disjoint
//! path packing, classification (dominating / short / chordless /
//! hub-faithful / deep / nice) with stored evidence, width-reducing
//! extraction stages, and interior emptying with an isometry audit.

use crate::embed::{faces_containing, Embedding};
use crate::graph::{Dist, Graph, GraphError};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeSet;

/// A lantern: two hubs joined by at least two internally disjoint paths
/// (axes), listed in facial order. The cyclic region between the last and
/// first axis is the lantern's last region; operations that fix a free face
/// rotate the axis list so the free face is that last region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lantern {
    pub hubs: (usize, usize),
    /// Each axis runs from hubs.0 to hubs.1.
    pub axes: Vec<Vec<usize>>,
}

impl Lantern {
    pub fn width(&self) -> usize {
        self.axes.len()
    }

    /// Maximum number of edges on an axis.
    pub fn length(&self) -> usize {
        self.axes.iter().map(|a| a.len() - 1).max().unwrap_or(0)
    }

    /// All lantern vertices.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.axes.iter().flatten().copied().collect()
    }

    /// Contiguous cyclic slice of axes `[start, start+count)`.
    pub fn window(&self, start: usize, count: usize) -> Lantern {
        let k = self.width();
        assert!(count >= 2 && count <= k);
        Lantern {
            hubs: self.hubs,
            axes: (0..count).map(|i| self.axes[(start + i) % k].clone()).collect(),
        }
    }

    /// Checks the structural lantern invariants against the host.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        let (u, v) = self.hubs;
        if u == v || u >= g.n() || v >= g.n() {
            return Err(GraphError::Other("invalid hubs".into()));
        }
        if self.axes.len() < 2 {
            return Err(GraphError::Other("a lantern needs at least 2 axes".into()));
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for axis in &self.axes {
            if axis.first() != Some(&u) || axis.last() != Some(&v) || axis.len() < 2 {
                return Err(GraphError::Other("axis does not join the hubs".into()));
            }
            for w in axis.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(GraphError::Other(format!(
                        "axis edge ({},{}) missing in host",
                        w[0], w[1]
                    )));
                }
            }
            for &x in &axis[1..axis.len() - 1] {
                if x == u || x == v || !seen.insert(x) {
                    return Err(GraphError::Other(
                        "axes are not internally disjoint".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, class: Option<&LanternClass>) -> String {
        let mut obj = json!({
            "hubs": [self.hubs.0, self.hubs.1],
            "axes": self.axes,
        });
        if let Some(c) = class {
            obj["free_face"] = match c.free_face {
                Some(f) => json!(f),
                None => serde_json::Value::Null,
            };
            obj["flags"] = json!({
                "dominating": c.dominating,
                "short": c.short,
                "chordless": c.chordless,
                "hub_faithful": c.hub_faithful,
                "deep": c.deep,
                "nice": c.nice,
            });
            obj["evidence"] = json!({
                "candidate_free_faces": c.candidate_free_faces,
                "hub_path": c.hub_path,
                "u_side": c.u_side,
                "v_side": c.v_side,
                "deep_u_witness": c.deep_u_witness,
                "deep_v_witness": c.deep_v_witness,
                "interior": c.interior,
                "boundary_cycle": c.boundary_cycle,
            });
        }
        obj.to_string()
    }

    pub fn from_json(s: &str) -> Result<Lantern, GraphError> {
        let val: serde_json::Value =
            serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        let hubs = val["hubs"]
            .as_array()
            .and_then(|a| Some((a.first()?.as_u64()? as usize, a.get(1)?.as_u64()? as usize)))
            .ok_or_else(|| GraphError::Json("missing hubs".into()))?;
        let axes: Vec<Vec<usize>> = serde_json::from_value(val["axes"].clone())
            .map_err(|e| GraphError::Json(e.to_string()))?;
        Ok(Lantern { hubs, axes })
    }
}

/// Classification flags with the evidence backing each one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LanternClass {
    pub width: usize,
    pub length: usize,
    pub dominating: bool,
    /// Region indices (region i lies between axes i and i+1 cyclically)
    /// that qualify as a free face.
    pub candidate_free_faces: Vec<usize>,
    /// Chosen free face: the smallest candidate.
    pub free_face: Option<usize>,
    pub short: bool,
    pub chordless: bool,
    pub hub_faithful: bool,
    /// A shortest hub path drawn in the closure of the free face.
    pub hub_path: Option<Vec<usize>>,
    pub deep: bool,
    /// Interior vertices adjacent to the first hub but not the second.
    pub u_side: Vec<usize>,
    /// Interior vertices adjacent to the second hub but not the first.
    pub v_side: Vec<usize>,
    pub deep_u_witness: Option<usize>,
    pub deep_v_witness: Option<usize>,
    /// Vertices strictly inside the interior (relative to the chosen free
    /// face), including internal vertices of non-boundary axes.
    pub interior: Vec<usize>,
    /// Vertices of the cycle bounding the interior (the two axes adjacent
    /// to the free face).
    pub boundary_cycle: Vec<usize>,
    pub nice: bool,
}

/// Per-region geometry of a lantern inside its host embedding.
struct Regions {
    /// `strict[i]` = vertices strictly inside region i (between axes i and
    /// i+1 cyclically), excluding all lantern vertices.
    strict: Vec<BTreeSet<usize>>,
    /// `face_region[f]` = region containing host face f.
    face_region: Vec<usize>,
}

fn cycle_of(axes: &[Vec<usize>], i: usize, j: usize) -> Vec<usize> {
    // Closed walk: axis i forward, axis j backward, endpoints dropped once.
    let mut cyc: Vec<usize> = axes[i].clone();
    cyc.extend(axes[j].iter().rev().skip(1).take(axes[j].len() - 2));
    cyc
}

fn compute_regions(g: &Graph, emb: &Embedding, l: &Lantern) -> Result<Regions, GraphError> {
    let k = l.width();
    let lantern_verts = l.vertices();
    let mut strict: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    let mut face_region: Vec<usize> = vec![usize::MAX; emb.faces.len()];
    for i in 0..k {
        let j = (i + 1) % k;
        let cyc = cycle_of(&l.axes, i, j);
        let sides = faces_containing(g, emb, &cyc)?;
        // The strict side of region i is the side containing no internal
        // vertex of any other axis. If neither side has a distinguishing
        // vertex (k = 2, or all other axes are on one side without
        // internals), fall back to face counts of already-claimed regions.
        let mut others: BTreeSet<usize> = BTreeSet::new();
        for (a, axis) in l.axes.iter().enumerate() {
            if a != i && a != j {
                others.extend(axis[1..axis.len() - 1].iter().copied());
            }
        }
        let outer_has = sides.outer_side.iter().any(|x| others.contains(x));
        let inner_has = sides.inner_side.iter().any(|x| others.contains(x));
        let (verts, faces) = if k == 2 {
            // Two regions are the two sides; assign region 0 the inner side.
            if i == 0 {
                (&sides.inner_side, &sides.inner_faces)
            } else {
                (&sides.outer_side, &sides.outer_faces)
            }
        } else if outer_has && !inner_has {
            (&sides.inner_side, &sides.inner_faces)
        } else if inner_has && !outer_has {
            (&sides.outer_side, &sides.outer_faces)
        } else if !outer_has && !inner_has {
            // No internal vertices on other axes: distinguish by which side
            // the other axes' edges lie. Check a face adjacent to an edge
            // of some other axis.
            let (a, axis) = l
                .axes
                .iter()
                .enumerate()
                .find(|(a, _)| *a != i && *a != j)
                .expect("k >= 3 has another axis");
            let _ = a;
            let (f1, f2) = faces_of_edge(emb, axis[0], axis[1])?;
            if sides.outer_faces.contains(&f1) || sides.outer_faces.contains(&f2) {
                (&sides.inner_side, &sides.inner_faces)
            } else {
                (&sides.outer_side, &sides.outer_faces)
            }
        } else {
            return Err(GraphError::Other(
                "axes are not in facial order (both sides contain other axes)".into(),
            ));
        };
        strict[i] = verts
            .iter()
            .copied()
            .filter(|x| !lantern_verts.contains(x))
            .collect();
        for &f in faces {
            face_region[f] = i;
        }
    }
    // Faces bounded entirely by the two axes of a single region (including
    // faces of the lantern subgraph itself) may remain unclaimed only if
    // every region assignment above missed them; claim by edge membership.
    if face_region.iter().any(|&r| r == usize::MAX) {
        for f in 0..emb.faces.len() {
            if face_region[f] != usize::MAX {
                continue;
            }
            // A face between axes i and i+1 uses only their vertices.
            let fv: BTreeSet<usize> = emb.faces[f].iter().copied().collect();
            for i in 0..k {
                let j = (i + 1) % k;
                let cv: BTreeSet<usize> = l.axes[i]
                    .iter()
                    .chain(l.axes[j].iter())
                    .copied()
                    .collect();
                if fv.is_subset(&cv) {
                    face_region[f] = i;
                    break;
                }
            }
        }
    }
    if face_region.iter().any(|&r| r == usize::MAX) {
        return Err(GraphError::Other("could not assign all faces to regions".into()));
    }
    Ok(Regions {
        strict,
        face_region,
    })
}

fn faces_of_edge(emb: &Embedding, a: usize, b: usize) -> Result<(usize, usize), GraphError> {
    let mut found: Vec<usize> = Vec::new();
    for (f, walk) in emb.faces.iter().enumerate() {
        let m = walk.len();
        for t in 0..m {
            let (x, y) = (walk[t], walk[(t + 1) % m]);
            if (x, y) == (a, b) || (x, y) == (b, a) {
                found.push(f);
            }
        }
    }
    match found.as_slice() {
        [f1, f2] => Ok((*f1, *f2)),
        _ => Err(GraphError::Other(format!(
            "edge ({a},{b}) not on exactly two faces"
        ))),
    }
}

/// Interior vertex set relative to free region `f`: everything outside the
/// closure of the free face (strict free content plus the two bounding axes).
fn interior_given_free(g: &Graph, l: &Lantern, regions: &Regions, f: usize) -> BTreeSet<usize> {
    let k = l.width();
    let mut closure: BTreeSet<usize> = regions.strict[f].clone();
    closure.extend(l.axes[f].iter().copied());
    closure.extend(l.axes[(f + 1) % k].iter().copied());
    (0..g.n()).filter(|x| !closure.contains(x)).collect()
}

/// Boundary cycle vertices for free region f.
fn boundary_given_free(l: &Lantern, f: usize) -> BTreeSet<usize> {
    let k = l.width();
    l.axes[f]
        .iter()
        .chain(l.axes[(f + 1) % k].iter())
        .copied()
        .collect()
}

/// Shortest hub path constrained to edges drawn in the free face's closure;
/// None if no such path attains the global hub distance.
fn free_side_hub_path(
    g: &Graph,
    emb: &Embedding,
    regions: &Regions,
    l: &Lantern,
    free: usize,
) -> Option<Vec<usize>> {
    let (u, v) = l.hubs;
    let d = g.dist(u, v);
    // BFS over edges whose drawing touches the free region.
    let allowed = |a: usize, b: usize| {
        faces_of_edge(emb, a, b)
            .map(|(f1, f2)| regions.face_region[f1] == free || regions.face_region[f2] == free)
            .unwrap_or(false)
    };
    let mut dist = vec![usize::MAX; g.n()];
    let mut prev = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[u] = 0;
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if dist[y] == usize::MAX && allowed(x, y) {
                dist[y] = dist[x] + 1;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if Dist::Fin(dist[v]) != d {
        return None;
    }
    let mut path = vec![v];
    while *path.last().unwrap() != u {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

fn deep_witness(
    g: &Graph,
    hub: usize,
    boundary: &BTreeSet<usize>,
    candidates: &[usize],
    other_hub: usize,
) -> Option<usize> {
    // Auxiliary graph: the host's induced subgraph on the boundary cycle
    // (chords included), plus the candidate joined to its hub only.
    let bverts: Vec<usize> = boundary.iter().copied().collect();
    for &cand in candidates {
        let mut verts = bverts.clone();
        verts.push(cand);
        let (mut aux, map) = g.induced_subgraph(&verts);
        let pos = |x: usize| map.iter().position(|&o| o == x).unwrap();
        let cpos = pos(cand);
        // Strip every edge at the candidate except the hub edge.
        let nbrs: Vec<usize> = aux.neighbors(cpos).collect();
        for nb in nbrs {
            aux.remove_edge(cpos, nb);
        }
        aux.add_edge(cpos, pos(hub));
        let aux_dist = aux.bfs_dist(cpos);
        let ok = boundary
            .iter()
            .filter(|&&w| w != hub && w != other_hub)
            .all(|&w| g.dist(cand, w) == aux_dist[pos(w)]);
        if ok {
            return Some(cand);
        }
    }
    None
}

/// Classifies a lantern: every flag is computed from first principles
/// against the host graph and embedding, with evidence recorded.
pub fn classify(g: &Graph, emb: &Embedding, l: &Lantern) -> Result<LanternClass, GraphError> {
    l.validate(g)?;
    let (u, v) = l.hubs;
    let k = l.width();
    let regions = compute_regions(g, emb, l)?;
    // Dominating: some region's strict content can absorb every vertex not
    // dominated by the hubs.
    let dominated: Vec<bool> = {
        let mut dom = vec![false; g.n()];
        for &h in &[u, v] {
            dom[h] = true;
            for x in g.neighbors(h) {
                dom[x] = true;
            }
        }
        dom
    };
    let candidate_free_faces: Vec<usize> = (0..k)
        .filter(|&f| {
            (0..g.n()).all(|x| dominated[x] || regions.strict[f].contains(&x))
        })
        .collect();
    let dominating = !candidate_free_faces.is_empty();
    // Prefer a candidate whose closure carries a shortest hub path: the
    // hub-faithfulness witness fixes the free face when several qualify.
    let free_face = candidate_free_faces
        .iter()
        .copied()
        .find(|&f| free_side_hub_path(g, emb, &regions, l, f).is_some())
        .or_else(|| candidate_free_faces.first().copied());
    let short = l.length() <= 3;
    let chordless = l.axes.iter().all(|axis| {
        let t = axis.len() - 1;
        (0..=t).all(|a| {
            (a + 2..=t).all(|b| (a, b) == (0, t) || !g.has_edge(axis[a], axis[b]))
        })
    });
    let (mut interior, mut boundary) = (BTreeSet::new(), BTreeSet::new());
    let mut hub_path = None;
    let (mut u_side, mut v_side) = (Vec::new(), Vec::new());
    let (mut deep_u_witness, mut deep_v_witness) = (None, None);
    let mut deep = false;
    if let Some(f) = free_face {
        interior = interior_given_free(g, l, &regions, f);
        boundary = boundary_given_free(l, f);
        hub_path = free_side_hub_path(g, emb, &regions, l, f);
        u_side = interior
            .iter()
            .copied()
            .filter(|&x| g.has_edge(x, u) && !g.has_edge(x, v))
            .collect();
        v_side = interior
            .iter()
            .copied()
            .filter(|&x| g.has_edge(x, v) && !g.has_edge(x, u))
            .collect();
        deep_u_witness = deep_witness(g, u, &boundary, &u_side, v);
        deep_v_witness = deep_witness(g, v, &boundary, &v_side, u);
        deep = (u_side.is_empty() || deep_u_witness.is_some())
            && (v_side.is_empty() || deep_v_witness.is_some());
    }
    let hub_faithful = dominating && hub_path.is_some();
    let nice = hub_faithful && short && chordless && deep && k >= 6;
    Ok(LanternClass {
        width: k,
        length: l.length(),
        dominating,
        candidate_free_faces,
        free_face,
        short,
        chordless,
        hub_faithful,
        hub_path,
        deep,
        u_side,
        v_side,
        deep_u_witness,
        deep_v_witness,
        interior: interior.into_iter().collect(),
        boundary_cycle: boundary.into_iter().collect(),
        nice,
    })
}

// ---------------------------------------------------------------------------
// Discovery
// ---------------------------------------------------------------------------

/// Widest lantern with the given hubs: a maximum family of internally
/// disjoint hub paths (unit vertex capacities, Menger), ordered facially by
/// walking the rotation at the first hub, then rotated/reflected to the
/// lexicographically least axis list for reproducibility.
pub fn max_lantern(
    g: &Graph,
    emb: &Embedding,
    u: usize,
    v: usize,
) -> Result<Lantern, GraphError> {
    if u == v || u >= g.n() || v >= g.n() {
        return Err(GraphError::Other("invalid hubs".into()));
    }
    if !g.dist(u, v).is_finite() {
        return Err(GraphError::Other("hubs are disconnected".into()));
    }
    let paths = disjoint_paths(g, u, v);
    if paths.len() < 2 {
        return Err(GraphError::Other(
            "fewer than two internally disjoint hub paths".into(),
        ));
    }
    // Facial order: position of each axis's first edge in the rotation at u.
    let rot = &emb.rotation[u];
    let pos_of = |x: usize| rot.iter().position(|&y| y == x).expect("neighbor in rotation");
    let mut ordered: Vec<(usize, Vec<usize>)> =
        paths.into_iter().map(|p| (pos_of(p[1]), p)).collect();
    ordered.sort();
    let axes: Vec<Vec<usize>> = ordered.into_iter().map(|(_, p)| p).collect();
    // Deterministic representative over rotations and reflection.
    let k = axes.len();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for refl in 0..2 {
        let base: Vec<Vec<usize>> = if refl == 0 {
            axes.clone()
        } else {
            axes.iter().rev().cloned().collect()
        };
        for s in 0..k {
            let cand: Vec<Vec<usize>> = (0..k).map(|i| base[(s + i) % k].clone()).collect();
            if best.as_ref().map_or(true, |b| &cand < b) {
                best = Some(cand);
            }
        }
    }
    let l = Lantern {
        hubs: (u, v),
        axes: best.unwrap(),
    };
    l.validate(g)?;
    Ok(l)
}

/// Maximum set of internally disjoint u-v paths via unit-capacity flow with
/// vertex splitting.
pub(crate) fn disjoint_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    // Node x -> in = 2x, out = 2x+1. Capacities are implicit (all unit);
    // store flow as a set of used directed arcs.
    let arc_in = |x: usize| 2 * x;
    let arc_out = |x: usize| 2 * x + 1;
    let mut cap: std::collections::HashMap<(usize, usize), i32> = std::collections::HashMap::new();
    for x in 0..n {
        if x != u && x != v {
            cap.insert((arc_in(x), arc_out(x)), 1);
        }
    }
    for (a, b) in g.edges() {
        cap.insert((arc_out(a), arc_in(b)), 1);
        cap.insert((arc_out(b), arc_in(a)), 1);
    }
    // Hubs have unlimited throughput.
    cap.insert((arc_in(u), arc_out(u)), i32::MAX / 2);
    cap.insert((arc_in(v), arc_out(v)), i32::MAX / 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for &(a, b) in cap.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    let residual = |cap: &std::collections::HashMap<(usize, usize), i32>, a: usize, b: usize| {
        *cap.get(&(a, b)).unwrap_or(&0)
    };
    let (src, snk) = (arc_out(u), arc_in(v));
    loop {
        // BFS in the residual network.
        let mut prev = vec![usize::MAX; 2 * n];
        let mut queue = std::collections::VecDeque::new();
        prev[src] = src;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if prev[y] == usize::MAX && residual(&cap, x, y) > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[snk] == usize::MAX {
            break;
        }
        let mut y = snk;
        while y != src {
            let x = prev[y];
            *cap.entry((x, y)).or_insert(0) -= 1;
            *cap.entry((y, x)).or_insert(0) += 1;
            y = x;
        }
    }
    // Decompose: flow on (out(a), in(b)) arcs with cap exhausted below the
    // original unit means the arc carries a path.
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            if residual(&cap, arc_out(x), arc_in(y)) == 0 {
                used.insert((x, y));
            }
        }
    }
    // Cancel opposite arcs (flow conservation may leave both directions).
    let both: Vec<(usize, usize)> = used
        .iter()
        .copied()
        .filter(|&(a, b)| a < b && used.contains(&(b, a)))
        .collect();
    for (a, b) in both {
        used.remove(&(a, b));
        used.remove(&(b, a));
    }
    let mut paths = Vec::new();
    loop {
        let Some(&(_, first)) = used.iter().find(|&&(a, _)| a == u) else {
            break;
        };
        let mut path = vec![u, first];
        used.remove(&(u, first));
        while *path.last().unwrap() != v {
            let x = *path.last().unwrap();
            let &(_, y) = used
                .iter()
                .find(|&&(a, _)| a == x)
                .expect("flow path continues to the sink");
            used.remove(&(x, y));
            path.push(y);
        }
        paths.push(path);
    }
    paths
}

/// Orders externally supplied internally disjoint hub paths facially (by
/// rotation position at the first hub) into a lantern.
pub fn order_axes(
    g: &Graph,
    emb: &Embedding,
    u: usize,
    v: usize,
    axes: Vec<Vec<usize>>,
) -> Result<Lantern, GraphError> {
    let rot = &emb.rotation[u];
    let mut ordered: Vec<(usize, Vec<usize>)> = Vec::new();
    for p in axes {
        let pos = rot
            .iter()
            .position(|&y| y == p[1])
            .ok_or_else(|| GraphError::Other("axis does not start at hub".into()))?;
        ordered.push((pos, p));
    }
    ordered.sort();
    let l = Lantern {
        hubs: (u, v),
        axes: ordered.into_iter().map(|(_, p)| p).collect(),
    };
    l.validate(g)?;
    Ok(l)
}

// ---------------------------------------------------------------------------
// Extraction stages
// ---------------------------------------------------------------------------

fn require_diameter3(g: &Graph) -> Result<(), GraphError> {
    if !g.diameter().leq(3) {
        return Err(GraphError::Other("host diameter exceeds 3".into()));
    }
    Ok(())
}

/// Rotates the axis list so the free region (per `class`) becomes the last
/// cyclic region (between the last and first axes).
fn normalize_free_last(l: &Lantern, free: usize) -> Lantern {
    let k = l.width();
    l.window((free + 1) % k, k)
}

/// Width-k dominating sublantern of a width-(k+2) lantern in a diameter-3
/// plane host (k ≥ 8): the far vertices (distance ≥ 2 from both hubs) meet
/// the closures of at most three consecutive regions; dropping the two axes
/// inside that window leaves a dominating lantern.
pub fn dominating_sublantern(
    g: &Graph,
    emb: &Embedding,
    l: &Lantern,
    k: usize,
) -> Result<Lantern, GraphError> {
    require_diameter3(g)?;
    if k < 8 {
        return Err(GraphError::Other(format!("k = {k} is below the floor of 8")));
    }
    if l.width() != k + 2 {
        return Err(GraphError::Other(format!(
            "need width {} for a width-{k} result, got {}",
            k + 2,
            l.width()
        )));
    }
    l.validate(g)?;
    let (u, v) = l.hubs;
    let kk = k + 2;
    let regions = compute_regions(g, emb, l)?;
    let du = g.bfs_dist(u);
    let dv = g.bfs_dist(v);
    let far: Vec<usize> = (0..g.n())
        .filter(|&x| !du[x].leq(1) && !dv[x].leq(1))
        .collect();
    let mut touched: Vec<bool> = vec![false; kk];
    for &x in &far {
        for i in 0..kk {
            let closure_has = regions.strict[i].contains(&x)
                || l.axes[i].contains(&x)
                || l.axes[(i + 1) % kk].contains(&x);
            if closure_has {
                touched[i] = true;
            }
        }
    }
    // Smallest window start a with all touched regions in {a, a+1, a+2}.
    let window_start = (0..kk).find(|&a| {
        (0..kk).all(|i| !touched[i] || (0..3).any(|t| (a + t) % kk == i))
    });
    let Some(a) = window_start else {
        return Err(GraphError::Other(
            "far vertices spread beyond three consecutive regions".into(),
        ));
    };
    // Regions a..a+2 are bounded by axes a..a+3; dropping axes a+1, a+2
    // merges them into the free face of the remaining window.
    let result = l.window((a + 3) % kk, k);
    let cls = classify(g, emb, &result)?;
    assert!(
        cls.dominating,
        "window sublantern failed the dominating audit"
    );
    Ok(result)
}

/// Shortcuts chords on the non-extreme axes of a dominating width-(k+2)
/// lantern (k ≥ 4) and drops the two extreme axes: the result has width k,
/// length ≤ 3, and no axis chords, with interior inside the original's.
pub fn shorten_chordless(
    g: &Graph,
    emb: &Embedding,
    l: &Lantern,
) -> Result<Lantern, GraphError> {
    require_diameter3(g)?;
    let kk = l.width();
    if kk < 6 {
        return Err(GraphError::Other(format!(
            "need width at least 6, got {kk}"
        )));
    }
    let cls = classify(g, emb, l)?;
    let Some(free) = cls.free_face else {
        return Err(GraphError::Other("lantern is not dominating".into()));
    };
    let mut cur = normalize_free_last(l, free);
    for idx in 1..kk - 1 {
        loop {
            let axis = &cur.axes[idx];
            let t = axis.len() - 1;
            let chord = (0..=t)
                .flat_map(|a| ((a + 2)..=t).map(move |b| (a, b)))
                .find(|&(a, b)| (a, b) != (0, t) && g.has_edge(axis[a], axis[b]));
            match chord {
                Some((a, b)) => {
                    let mut next: Vec<usize> = axis[..=a].to_vec();
                    next.extend_from_slice(&axis[b..]);
                    cur.axes[idx] = next;
                }
                None => break,
            }
        }
        assert!(
            cur.axes[idx].len() <= 4,
            "chordless dominated axis still longer than 3 edges"
        );
    }
    let result = cur.window(1, kk - 2);
    let out = classify(g, emb, &result)?;
    assert!(out.dominating && out.short && out.chordless,
        "shortened core failed the dominating/short/chordless audit");
    Ok(result)
}

/// Hub-faithful sublantern of width k from a short chordless dominating
/// lantern of width 2k-1: a shortest hub path has length ≤ 2 and sits in a
/// single region or equals an axis, so one of the two k-axis sides avoids
/// it.
pub fn hub_faithful_sublantern(
    g: &Graph,
    emb: &Embedding,
    l: &Lantern,
) -> Result<Lantern, GraphError> {
    require_diameter3(g)?;
    let kk = l.width();
    if kk < 3 || kk % 2 == 0 {
        return Err(GraphError::Other(format!(
            "need odd width at least 3, got {kk}"
        )));
    }
    let k = (kk + 1) / 2;
    let cls = classify(g, emb, l)?;
    if !(cls.short && cls.chordless && cls.dominating) {
        return Err(GraphError::Other(
            "lantern must be short, chordless, and dominating".into(),
        ));
    }
    let cur = normalize_free_last(l, cls.free_face.unwrap());
    let cls = classify(g, emb, &cur)?;
    if cls.hub_faithful {
        let result = cur.window(0, k);
        let out = classify(g, emb, &result)?;
        assert!(out.hub_faithful, "hub-faithful heredity audit failed");
        return Ok(result);
    }
    // Both k-axis sides are candidates; the proof's index argument selects
    // one, and the classification audit is authoritative either way.
    for start in [k - 1, 0] {
        let result = cur.window(start, k);
        let out = classify(g, emb, &result)?;
        if out.hub_faithful {
            return Ok(result);
        }
    }
    Err(GraphError::Other(
        "no hub-faithful side exists (pipeline invariant violated)".into(),
    ))
}

/// Deep sublantern from a short hub-faithful lantern of width k+12: nested
/// cores three and six axes in have monotone u/v-side sets, and one of
/// {whole, middle, inner} is deep.
pub fn deepen(g: &Graph, emb: &Embedding, l: &Lantern) -> Result<Lantern, GraphError> {
    require_diameter3(g)?;
    let kk = l.width();
    if kk < 14 {
        return Err(GraphError::Other(format!(
            "need width at least 14, got {kk}"
        )));
    }
    let cls = classify(g, emb, l)?;
    if !(cls.short && cls.hub_faithful) {
        return Err(GraphError::Other(
            "lantern must be short and hub-faithful".into(),
        ));
    }
    let cur = normalize_free_last(l, cls.free_face.unwrap());
    let mid = cur.window(3, kk - 6);
    let mid_cls = classify(g, emb, &mid)?;
    let chosen = if !mid_cls.u_side.is_empty() && !mid_cls.v_side.is_empty() {
        cur.clone()
    } else if mid_cls.u_side.is_empty() && mid_cls.v_side.is_empty() {
        mid.clone()
    } else {
        let inner = cur.window(6, kk - 12);
        let inner_cls = classify(g, emb, &inner)?;
        if inner_cls.u_side.is_empty() && inner_cls.v_side.is_empty() {
            inner
        } else {
            mid
        }
    };
    let out = classify(g, emb, &chosen)?;
    assert!(
        out.deep && out.hub_faithful && out.short,
        "deepening audit failed"
    );
    Ok(chosen)
}

/// Full extraction pipeline: width-w lantern in a diameter-3 plane host →
/// nice lantern with the same hubs, vertices inside the original's. Each
/// stage is audited by classify; an early stage result that is already nice
/// is returned as-is.
pub fn extract_nice(
    g: &Graph,
    emb: &Embedding,
    l: &Lantern,
    w: usize,
) -> Result<Lantern, GraphError> {
    require_diameter3(g)?;
    if l.width() < w {
        return Err(GraphError::Other(format!(
            "lantern width {} is below the parameter {w}",
            l.width()
        )));
    }
    let mut cur = if l.width() > w { l.window(0, w) } else { l.clone() };
    if classify(g, emb, &cur)?.nice {
        return Ok(cur);
    }
    cur = dominating_sublantern(g, emb, &cur, cur.width() - 2)?;
    if classify(g, emb, &cur)?.nice {
        return Ok(cur);
    }
    cur = shorten_chordless(g, emb, &cur)?;
    if classify(g, emb, &cur)?.nice {
        return Ok(cur);
    }
    if cur.width() % 2 == 0 {
        // Drop one extreme axis to reach the odd width the next stage needs;
        // heredity keeps short/chordless/dominating.
        cur = cur.window(1, cur.width() - 1);
    }
    cur = hub_faithful_sublantern(g, emb, &cur)?;
    if classify(g, emb, &cur)?.nice {
        return Ok(cur);
    }
    cur = deepen(g, emb, &cur)?;
    let cls = classify(g, emb, &cur)?;
    if !cls.nice {
        return Err(GraphError::Other(format!(
            "pipeline finished without a nice lantern (width {})",
            cur.width()
        )));
    }
    Ok(cur)
}

/// Outcome of emptying a lantern interior.
#[derive(Debug, Clone, Serialize)]
pub struct IsometryReport {
    pub removed: Vec<usize>,
    pub pairs_checked: usize,
}

/// Removes every vertex drawn in the interior of a short hub-faithful
/// lantern of width ≥ 4 and verifies, pair by pair, that distances among the
/// remaining vertices are unchanged. Returns the reduced graph, the
/// kept-index → original-id map, and the audit report.
pub fn empty_lantern(
    g: &Graph,
    emb: &Embedding,
    l: &Lantern,
) -> Result<(Graph, Vec<usize>, IsometryReport), GraphError> {
    require_diameter3(g)?;
    if l.width() < 4 {
        return Err(GraphError::Other(format!(
            "need width at least 4, got {}",
            l.width()
        )));
    }
    let cls = classify(g, emb, l)?;
    if !(cls.short && cls.hub_faithful) {
        return Err(GraphError::Other(
            "lantern must be short and hub-faithful".into(),
        ));
    }
    if cls.candidate_free_faces.len() > 1 {
        return Err(GraphError::Other(
            "both sides are hub-dominated; interior is ambiguous".into(),
        ));
    }
    let interior: BTreeSet<usize> = cls.interior.iter().copied().collect();
    let (reduced, map) = g.without_vertices(&interior);
    let mut pairs = 0usize;
    for i in 0..reduced.n() {
        let dr = reduced.bfs_dist(i);
        let dg = g.bfs_dist(map[i]);
        for j in i + 1..reduced.n() {
            pairs += 1;
            if dr[j] != dg[map[j]] {
                return Err(GraphError::Other(format!(
                    "isometry violated between {} and {} after emptying",
                    map[i], map[j]
                )));
            }
        }
    }
    Ok((
        reduced,
        map,
        IsometryReport {
            removed: interior.into_iter().collect(),
            pairs_checked: pairs,
        },
    ))
}
