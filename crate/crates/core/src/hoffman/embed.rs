use super::HoffmanGraph;

/// (slim-neighbor count, fat-neighbor count)
fn signature(h: &HoffmanGraph, v: usize) -> (usize, usize) {
    let fat = h.graph.neighbors(v).filter(|&u| h.fat[u]).count();
    (h.graph.degree(v) - fat, fat)
}

fn search_order(f: &HoffmanGraph) -> Vec<usize> {
    let n = f.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = f.graph.neighbors(v).filter(|&u| placed[u]).count();
                (links, f.graph.degree(v), std::cmp::Reverse(v))
            })
            .expect("vertices remain");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Label-preserving induced embedding of `f` into `g`: `map[v]` is the image
/// of `f`-vertex `v`. Deterministic: the first embedding in search order.
pub fn contains_induced(g: &HoffmanGraph, f: &HoffmanGraph) -> Option<Vec<usize>> {
    if f.n() > g.n() {
        return None;
    }
    let order = search_order(f);
    let fsig: Vec<(usize, usize)> = (0..f.n()).map(|v| signature(f, v)).collect();
    let gsig: Vec<(usize, usize)> = (0..g.n()).map(|v| signature(g, v)).collect();
    let mut map = vec![usize::MAX; f.n()];
    let mut used = vec![false; g.n()];
    if extend(g, f, &order, 0, &fsig, &gsig, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &HoffmanGraph,
    f: &HoffmanGraph,
    order: &[usize],
    depth: usize,
    fsig: &[(usize, usize)],
    gsig: &[(usize, usize)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let placed = &order[..depth];
    for v in 0..g.n() {
        if used[v] || g.fat[v] != f.fat[u] || gsig[v].0 < fsig[u].0 || gsig[v].1 < fsig[u].1 {
            continue;
        }
        if placed.iter().any(|&w| f.graph.has_edge(u, w) != g.graph.has_edge(v, map[w])) {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(g, f, order, depth + 1, fsig, gsig, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hoffman::{canonical_fat, FatMode, Graph};

    fn verify(g: &HoffmanGraph, f: &HoffmanGraph, map: &[usize]) {
        for u in 0..f.n() {
            assert_eq!(f.fat[u], g.fat[map[u]]);
            for w in 0..f.n() {
                if u != w {
                    assert_eq!(f.graph.has_edge(u, w), g.graph.has_edge(map[u], map[w]));
                }
            }
        }
    }

    #[test]
    fn self_embedding_is_identity() {
        let h = canonical_fat(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), FatMode::P);
        assert_eq!(contains_induced(&h, &h), Some((0..h.n()).collect()));
    }

    #[test]
    fn fat_degree_blocks() {
        let star = |k: usize| HoffmanGraph::from_parts(1, k, &(1..=k).map(|f| (0, f)).collect::<Vec<_>>()).unwrap();
        assert_eq!(contains_induced(&star(3), &star(4)), None);
        let m = contains_induced(&star(5), &star(4)).unwrap();
        verify(&star(5), &star(4), &m);
    }

    #[test]
    fn induced_not_just_subgraph() {
        let tri = HoffmanGraph::slim_only(Graph::from_fn(3, |_, _| true));
        let path = HoffmanGraph::slim_only(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(contains_induced(&tri, &path), None);
        assert!(contains_induced(&path, &tri).is_none());
        let c4 = HoffmanGraph::slim_only(Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap());
        let m = contains_induced(&c4, &path).unwrap();
        verify(&c4, &path, &m);
    }
}
