//! Exhaustive catalog of connected planar graphs up to isomorphism, built by
//! vertex extension with canonical-form deduplication. Used as the ground set
//! for the desk-scale sweeps.

use crate::embed::is_planar;
use crate::graph::{Graph, GraphError};
use rayon::prelude::*;
use std::collections::HashSet;

const CATALOG_LIMIT: usize = 11;

/// Canonical 55-bit adjacency code of a graph on at most 11 vertices:
/// the minimum upper-triangle bit string over all vertex orderings reachable
/// from the stable degree refinement (isomorphism invariant).
pub fn canonical_code(g: &Graph) -> Result<u64, GraphError> {
    let n = g.n();
    if n > CATALOG_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: CATALOG_LIMIT,
        });
    }
    // Ordered partition of the vertices into cells; refined until stable.
    let mut best: Option<u64> = None;
    let cells = refine(g, vec![(0..n).collect()]);
    canon_rec(g, cells, &mut best);
    Ok(best.unwrap_or(0))
}

/// Splits every cell by the count profile of neighbors per cell, repeatedly,
/// until no cell splits. Cell order is deterministic (split groups sorted by
/// profile), so the refinement is isomorphism-invariant.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key: Vec<usize> = cells
                        .iter()
                        .map(|c| c.iter().filter(|&&u| g.has_edge(u, v)).count())
                        .collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[1].0 == w[0].0 {
                    group.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                }
            }
            next.push(group);
        }
        if next.len() != cells.len() {
            changed = true;
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn canon_rec(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    if let Some(pos) = cells.iter().position(|c| c.len() > 1) {
        for &v in &cells[pos] {
            let mut split: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == pos {
                    split.push(vec![v]);
                    split.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    split.push(c.clone());
                }
            }
            canon_rec(g, refine(g, split), best);
        }
        return;
    }
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    match best {
        Some(b) if *b <= code => {}
        _ => *best = Some(code),
    }
}

/// All connected planar graphs with exactly `n` vertices, one representative
/// per isomorphism class, by extending the (n-1)-vertex catalog with a new
/// vertex over every nonempty attachment set.
pub fn connected_planar_catalog(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > CATALOG_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: CATALOG_LIMIT,
        });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let mut level = vec![Graph::new(1)];
    for size in 2..=n {
        let candidates: Vec<(u64, Graph)> = level
            .par_iter()
            .flat_map_iter(|g| {
                let prev = size - 1;
                (1u64..(1 << prev)).filter_map(move |mask| {
                    let mut h = g.clone();
                    let v = h.add_vertex();
                    for u in 0..prev {
                        if mask >> u & 1 == 1 {
                            h.add_edge(u, v);
                        }
                    }
                    // Any graph with at most 8 edges is planar (the smallest
                    // non-planar graph, K3,3, has 9); any planar graph has at
                    // most 3n-6 edges.
                    if h.m() + 6 > 3 * size && size > 2 {
                        return None;
                    }
                    if h.m() > 8 && !is_planar(&h) {
                        return None;
                    }
                    let code = canonical_code(&h).expect("size within limit");
                    Some((code, h))
                })
            })
            .collect();
        let mut seen: HashSet<u64> = HashSet::with_capacity(candidates.len());
        let mut next = Vec::new();
        for (code, h) in candidates {
            if seen.insert(code) {
                next.push(h);
            }
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_code_is_isomorphism_invariant() {
        let c5 = Graph::cycle(5);
        // Relabelled C5.
        let c5b = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        assert_eq!(canonical_code(&c5).unwrap(), canonical_code(&c5b).unwrap());
        let p5 = Graph::path(5);
        assert_ne!(canonical_code(&c5).unwrap(), canonical_code(&p5).unwrap());
        // The two non-isomorphic trees on 4 vertices.
        let p4 = Graph::path(4);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&star).unwrap());
        assert!(canonical_code(&Graph::new(12)).is_err());
    }

    #[test]
    fn catalog_counts_small() {
        // Connected planar graphs up to isomorphism, n = 1..7.
        for (n, want) in [(1, 1usize), (2, 1), (3, 2), (4, 6), (5, 20), (6, 99), (7, 646)] {
            let cat = connected_planar_catalog(n).unwrap();
            assert_eq!(cat.len(), want, "n = {n}");
            for g in &cat {
                assert!(g.is_connected());
                assert!(is_planar(g));
            }
        }
    }

    #[test]
    fn catalog_counts_n8() {
        assert_eq!(connected_planar_catalog(8).unwrap().len(), 5974);
    }
}
