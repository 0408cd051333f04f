use crate::exactmat::IntSymMatrix;
use crate::hoffman::HoffmanGraph;

struct Search<'a> {
    m: &'a IntSymMatrix,
    k: usize,
    /// fat neighbours still needed per slim vertex
    need: Vec<i64>,
    /// common fat neighbours placed so far
    common: Vec<Vec<i64>>,
    fats: Vec<u32>,
}

impl Search<'_> {
    fn hi(&self, i: usize, j: usize) -> i64 {
        1 - self.m.get(i, j)
    }

    fn lo(&self, i: usize, j: usize) -> i64 {
        (-self.m.get(i, j)).max(0)
    }

    fn run(&mut self, prev: Option<(usize, u32)>) -> bool {
        let Some(i) = (0..self.k).find(|&i| self.need[i] > 0) else {
            return (0..self.k).all(|a| ((a + 1)..self.k).all(|b| self.common[a][b] >= self.lo(a, b)));
        };
        // pairs (i', j) with i' < i are final
        if let Some((pi, _)) = prev {
            if pi < i {
                for a in pi..i {
                    for b in (a + 1)..self.k {
                        if self.common[a][b] < self.lo(a, b) {
                            return false;
                        }
                    }
                }
            }
        }
        let cap = match prev {
            Some((pi, mask)) if pi == i => mask,
            _ => u32::MAX,
        };
        let others: Vec<usize> = ((i + 1)..self.k).filter(|&j| self.need[j] > 0 && self.common[i][j] < self.hi(i, j)).collect();
        // subsets of `others` in decreasing mask order so each multiset of fats is tried once
        let mut subsets: Vec<u32> = Vec::new();
        for sel in 0u32..(1 << others.len()) {
            let mut mask = 1u32 << i;
            let mut ok = true;
            let members: Vec<usize> = (0..others.len()).filter(|&b| sel >> b & 1 == 1).map(|b| others[b]).collect();
            for (x, &a) in members.iter().enumerate() {
                mask |= 1 << a;
                for &b in &members[x + 1..] {
                    if self.common[a][b] >= self.hi(a, b) {
                        ok = false;
                    }
                }
            }
            if ok && mask <= cap {
                subsets.push(mask);
            }
        }
        subsets.sort_unstable_by(|a, b| b.cmp(a));
        for mask in subsets {
            let members: Vec<usize> = (0..self.k).filter(|&a| mask >> a & 1 == 1).collect();
            for (x, &a) in members.iter().enumerate() {
                self.need[a] -= 1;
                for &b in &members[x + 1..] {
                    self.common[a][b] += 1;
                }
            }
            self.fats.push(mask);
            if self.run(Some((i, mask))) {
                return true;
            }
            self.fats.pop();
            for (x, &a) in members.iter().enumerate() {
                self.need[a] += 1;
                for &b in &members[x + 1..] {
                    self.common[a][b] -= 1;
                }
            }
        }
        false
    }
}

/// Fat Hoffman graph with `Sp + I = M`, or `None` when none exists.
///
/// Slim vertices are `0..k` in matrix order; fat vertices follow. The search is
/// over multisets of fat neighbourhoods; slim adjacency is then forced by
/// `A_ij = M_ij + |N^f(x_i) ∩ N^f(x_j)|`, which must lie in `{0, 1}`.
pub fn realize_special(m: &IntSymMatrix) -> Option<HoffmanGraph> {
    let k = m.order();
    if k > 31 || (0..k).any(|i| m.get(i, i) > 0) {
        return None;
    }
    let mut search = Search { m, k, need: (0..k).map(|i| 1 - m.get(i, i)).collect(), common: vec![vec![0; k]; k], fats: Vec::new() };
    if !search.run(None) {
        return None;
    }
    let mut edges = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            if m.get(a, b) + search.common[a][b] == 1 {
                edges.push((a, b));
            }
        }
    }
    for (f, &mask) in search.fats.iter().enumerate() {
        edges.extend((0..k).filter(|&a| mask >> a & 1 == 1).map(|a| (a, k + f)));
    }
    let h = HoffmanGraph::from_parts(k, search.fats.len(), &edges).ok()?;
    assert_eq!(h.special_matrix().ok()?.shifted(1), *m, "realization must reproduce M");
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<i64>>) -> IntSymMatrix {
        IntSymMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn single_slim() {
        let h = realize_special(&mat(vec![vec![-3]])).unwrap();
        assert_eq!(h.fat_vertices().len(), 4);
        assert_eq!(h.fat_neighbors(0).len(), 4);
    }

    #[test]
    fn two_by_two_examples() {
        let h = realize_special(&mat(vec![vec![-2, 1], vec![1, 0]])).unwrap();
        assert!(h.graph.has_edge(0, 1));
        assert_eq!((h.fat_neighbors(0).len(), h.fat_neighbors(1).len()), (3, 1));
        assert!(h.fat_neighbors(0).iter().all(|f| !h.fat_neighbors(1).contains(f)));

        let h = realize_special(&mat(vec![vec![-2, -1], vec![-1, 0]])).unwrap();
        assert!(!h.graph.has_edge(0, 1));
        let shared = h.fat_neighbors(0).iter().filter(|f| h.fat_neighbors(1).contains(f)).count();
        assert_eq!((h.fat_neighbors(0).len(), shared), (3, 1));
    }

    #[test]
    fn unrealizable() {
        // two slims each with one fat neighbour but needing two common fats
        assert!(realize_special(&mat(vec![vec![0, -2], vec![-2, 0]])).is_none());
        assert!(realize_special(&mat(vec![vec![1]])).is_none());
    }
}
