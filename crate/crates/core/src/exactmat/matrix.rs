use std::fmt;

use super::MatrixError;

/// Dense symmetric integer matrix.
///
/// Entries are stored as `i64`; every elimination that can grow numbers
/// (determinants, pivots, solves) runs in arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSymMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntSymMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(MatrixError::NotSquare { row: i, len: row.len(), order });
            }
            entries.extend_from_slice(row);
        }
        let m = IntSymMatrix { order, entries };
        for i in 0..order {
            for j in (i + 1)..order {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from the upper triangle produced by `f(i, j)` with `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self, MatrixError> {
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = vec![0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[i * order + j] = v;
                entries[j * order + i] = v;
            }
        }
        Ok(IntSymMatrix { order, entries })
    }

    pub fn identity(order: usize) -> Result<Self, MatrixError> {
        Self::from_fn(order, |i, j| i64::from(i == j))
    }

    pub fn diagonal(diag: &[i64]) -> Result<Self, MatrixError> {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { 0 })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    /// `self + t·I`.
    pub fn shifted(&self, t: i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.entries[i * self.order + i] += t;
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        IntSymMatrix { order: self.order, entries: self.entries.iter().map(|v| v * k).collect() }
    }

    pub fn principal(&self, idx: &[usize]) -> Result<Self, MatrixError> {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is `self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        self.principal(perm).expect("non-empty")
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&v| v as f64).collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Gram matrix `ZᵀZ` of the given columns, or `None` when the columns disagree in length.
    pub fn gram_of_columns(columns: &[Vec<i64>]) -> Option<Result<Self, MatrixError>> {
        let dim = columns.first().map(|c| c.len())?;
        if columns.iter().any(|c| c.len() != dim) {
            return None;
        }
        Some(Self::from_fn(columns.len(), |i, j| dot(&columns[i], &columns[j])))
    }

    /// Support graph connectivity: indices linked by nonzero off-diagonal entries.
    pub fn is_irreducible(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.get(i, j) != 0 {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl fmt::Debug for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.order).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_and_ragged() {
        assert!(matches!(
            IntSymMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]),
            Err(MatrixError::NotSymmetric { i: 0, j: 1 })
        ));
        assert!(matches!(IntSymMatrix::from_rows(vec![vec![0, 1]]), Err(MatrixError::NotSquare { .. })));
        assert!(matches!(IntSymMatrix::from_rows(vec![]), Err(MatrixError::Empty)));
    }

    #[test]
    fn principal_and_shift() {
        let m = IntSymMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 5], vec![3, 5, 6]]).unwrap();
        let p = m.principal(&[2, 0]).unwrap();
        assert_eq!(p.rows(), vec![vec![6, 3], vec![3, 1]]);
        assert_eq!(m.shifted(2).diag(), vec![3, 6, 8]);
    }

    #[test]
    fn irreducibility() {
        let block = IntSymMatrix::diagonal(&[1, 1]).unwrap();
        assert!(!block.is_irreducible());
        let path = IntSymMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(path.is_irreducible());
    }
}

impl serde::Serialize for IntSymMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for IntSymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(de)?;
        IntSymMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
