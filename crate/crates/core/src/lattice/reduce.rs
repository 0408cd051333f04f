use serde::Serialize;

use super::{sum_of_squares, GramLattice, IntegralDecomposition, LatticeError};
use crate::exactmat::IntSymMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LogEntry {
    /// `v ← v − c·unit` for every listed `(v, c)`.
    SplitUnit { unit: usize, coefficients: Vec<(usize, i64)> },
    Zero { generator: usize },
    Duplicate { generator: usize, of: usize, sign: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBlock {
    /// Generator indices of the input Gram, increasing.
    pub members: Vec<usize>,
    pub gram: IntSymMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub order: usize,
    pub unit_count: usize,
    pub units: Vec<usize>,
    pub components: Vec<ComponentBlock>,
    pub log: Vec<LogEntry>,
}

/// Splits off norm-1 generators to a fixpoint, drops zero generators and
/// proportional roots, and groups the remaining norm-2 generators into
/// connected components.
pub fn reduce_gram(b: &GramLattice) -> Result<Reduction, LatticeError> {
    let k = b.order();
    for i in 0..k {
        let d = b.gram.get(i, i);
        if !(0..=2).contains(&d) {
            return Err(LatticeError::NotNormBounded { index: i, norm: d });
        }
    }
    let mut g: Vec<Vec<i64>> = b.gram.rows();
    let mut active = vec![true; k];
    let mut log = Vec::new();
    let mut units = Vec::new();
    while let Some(e) = (0..k).find(|&i| active[i] && g[i][i] == 1) {
        active[e] = false;
        let coefficients: Vec<(usize, i64)> = (0..k).filter(|&v| active[v] && g[v][e] != 0).map(|v| (v, g[v][e])).collect();
        for &(v, cv) in &coefficients {
            for &(w, cw) in &coefficients {
                g[v][w] -= cv * cw;
            }
        }
        units.push(e);
        log.push(LogEntry::SplitUnit { unit: e, coefficients });
    }
    for v in 0..k {
        if active[v] && g[v][v] == 0 {
            active[v] = false;
            log.push(LogEntry::Zero { generator: v });
        }
    }
    for v in 0..k {
        if !active[v] {
            continue;
        }
        for w in (v + 1)..k {
            if active[w] && g[v][w].abs() == 2 {
                active[w] = false;
                log.push(LogEntry::Duplicate { generator: w, of: v, sign: g[v][w].signum() });
            }
        }
    }
    let mut comp = vec![usize::MAX; k];
    let mut components = Vec::new();
    for s in 0..k {
        if !active[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for w in 0..k {
                if active[w] && comp[w] == usize::MAX && g[v][w] != 0 {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        let gram = IntSymMatrix::from_fn(members.len(), |i, j| g[members[i]][members[j]])?;
        components.push(ComponentBlock { members, gram });
    }
    Ok(Reduction { order: k, unit_count: units.len(), units, components, log })
}

impl Reduction {
    /// Realizes the input Gram at scale `s` from decompositions of the
    /// component Grams (each at scale `s`, in component order). Units get
    /// fresh coordinates carrying `√s`.
    pub fn assemble(&self, s: u64, parts: &[IntegralDecomposition], gram: &IntSymMatrix) -> Result<IntegralDecomposition, LatticeError> {
        assert_eq!(parts.len(), self.components.len());
        let root = sum_of_squares(s);
        let dim = self.units.len() * root.len() + parts.iter().map(|p| p.ambient_dim).sum::<usize>();
        let mut cols = vec![vec![0i64; dim]; self.order];
        let mut unit_vec: Vec<Vec<i64>> = Vec::with_capacity(self.units.len());
        for (k, &u) in self.units.iter().enumerate() {
            let mut v = vec![0i64; dim];
            for (t, &a) in root.iter().enumerate() {
                v[k * root.len() + t] = a;
            }
            cols[u] = v.clone();
            unit_vec.push(v);
        }
        let mut offset = self.units.len() * root.len();
        for (block, part) in self.components.iter().zip(parts) {
            if part.scale != s {
                return Err(LatticeError::Hypothesis(format!("component certificate has scale {} not {s}", part.scale)));
            }
            part.verify(&block.gram)?;
            for (i, &m) in block.members.iter().enumerate() {
                cols[m][offset..offset + part.ambient_dim].copy_from_slice(&part.columns[i]);
            }
            offset += part.ambient_dim;
        }
        for entry in &self.log {
            if let LogEntry::Duplicate { generator, of, sign } = entry {
                cols[*generator] = cols[*of].iter().map(|x| sign * x).collect();
            }
        }
        let mut k = 0;
        for entry in &self.log {
            if let LogEntry::SplitUnit { coefficients, .. } = entry {
                for &(v, c) in coefficients {
                    for (x, y) in cols[v].iter_mut().zip(&unit_vec[k]) {
                        *x += c * y;
                    }
                }
                k += 1;
            }
        }
        IntegralDecomposition::new(s, cols, gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: Vec<Vec<i64>>) -> GramLattice {
        GramLattice::new(IntSymMatrix::from_rows(rows).unwrap(), "test").unwrap()
    }

    #[test]
    fn identity_is_all_units() {
        let b = GramLattice::new(IntSymMatrix::identity(4).unwrap(), "id").unwrap();
        let r = reduce_gram(&b).unwrap();
        assert_eq!(r.unit_count, 4);
        assert!(r.components.is_empty());
        let d = r.assemble(1, &[], &b.gram).unwrap();
        assert_eq!(d.ambient_dim, 4);
    }

    #[test]
    fn split_cascades() {
        let b = lat(vec![vec![2, 1], vec![1, 1]]);
        let r = reduce_gram(&b).unwrap();
        assert_eq!(r.unit_count, 2);
        assert_eq!(r.units, vec![1, 0]);
        assert!(r.components.is_empty());
        for s in [1, 2, 3] {
            r.assemble(s, &[], &b.gram).unwrap();
        }
    }

    #[test]
    fn zero_and_duplicates() {
        // v2 = v0 (unit), v3 = −v1, v1 norm 2
        let b = lat(vec![vec![1, 0, 1, 0], vec![0, 2, 0, -2], vec![1, 0, 1, 0], vec![0, -2, 0, 2]]);
        let r = reduce_gram(&b).unwrap();
        assert_eq!(r.unit_count, 1);
        assert!(r.log.contains(&LogEntry::Zero { generator: 2 }));
        assert!(r.log.contains(&LogEntry::Duplicate { generator: 3, of: 1, sign: -1 }));
        assert_eq!(r.components.len(), 1);
        let part = IntegralDecomposition::new(1, vec![vec![1, 1]], &r.components[0].gram).unwrap();
        r.assemble(1, &[part], &b.gram).unwrap();
    }

    #[test]
    fn norm_bound() {
        let b = lat(vec![vec![3]]);
        assert!(matches!(reduce_gram(&b), Err(LatticeError::NotNormBounded { index: 0, norm: 3 })));
    }
}
