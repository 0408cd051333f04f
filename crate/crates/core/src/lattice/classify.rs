use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::models::root_system;
use super::{scale_up, GramLattice, IntegralDecomposition, LatticeError};
use crate::exactmat::linalg::{common_denominator, gram_coordinates};
use crate::exactmat::{determinant, dot, integer_rowspace_basis, psd_check_int, IntSymMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::E6 | Family::E7 | Family::E8)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootComponent {
    pub family: Family,
    pub rank: usize,
    pub discriminant: u64,
    /// Generator indices used as coordinates for `basis_coords`.
    pub retained: Vec<usize>,
    /// Rows: a lattice basis in coordinates of the retained generators.
    #[serde(serialize_with = "ser_rationals")]
    pub basis_coords: Vec<Vec<BigRational>>,
}

fn ser_rationals<S: serde::Serializer>(rows: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    strings.serialize(s)
}

impl RootComponent {
    pub fn name(&self) -> String {
        match self.family {
            Family::A | Family::D => format!("{}{}", self.family, self.rank),
            _ => self.family.to_string(),
        }
    }
}

fn family_for(rank: usize, disc: &BigInt) -> Option<Family> {
    let d = disc.to_u64()?;
    if d == rank as u64 + 1 {
        return Some(Family::A);
    }
    match (d, rank) {
        (4, r) if r >= 4 => Some(Family::D),
        (3, 6) => Some(Family::E6),
        (2, 7) => Some(Family::E7),
        (1, 8) => Some(Family::E8),
        _ => None,
    }
}

/// Classifies the lattice generated by a connected set of norm-2 vectors.
pub fn classify_component(gc: &GramLattice) -> Result<RootComponent, LatticeError> {
    let g = &gc.gram;
    if g.diag().iter().any(|&d| d != 2) || !g.is_irreducible() {
        return Err(LatticeError::NotComponent);
    }
    let retained = psd_check_int(g, 0).positive_pivots();
    let coords = gram_coordinates(g, &retained).expect("retained generators are independent");
    let den = common_denominator(&coords);
    let scaled: Vec<Vec<BigInt>> =
        coords.iter().map(|row| row.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()).collect();
    let hnf = integer_rowspace_basis(&scaled);
    let dq = BigRational::from_integer(den);
    let basis_coords: Vec<Vec<BigRational>> =
        hnf.iter().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone()) / &dq).collect()).collect();
    let rank = retained.len();
    // Gram of the basis in retained coordinates, scaled by den² to stay integral
    let gs: Vec<Vec<BigInt>> =
        retained.iter().map(|&i| retained.iter().map(|&j| BigInt::from(g.get(i, j))).collect()).collect();
    let mut bg = vec![vec![BigInt::zero(); rank]; rank];
    for a in 0..rank {
        for b in a..rank {
            let mut acc = BigInt::zero();
            for i in 0..rank {
                for j in 0..rank {
                    acc += &hnf[a][i] * &gs[i][j] * &hnf[b][j];
                }
            }
            bg[a][b] = acc.clone();
            bg[b][a] = acc;
        }
    }
    let den = dq.to_integer();
    let d2 = &den * &den;
    let small: Option<Vec<Vec<i64>>> =
        bg.iter().map(|row| row.iter().map(|x| (x / &d2).to_i64()).collect::<Option<Vec<i64>>>()).collect();
    let small = small.expect("basis Gram entries are small integers");
    let disc = determinant(&IntSymMatrix::from_rows(small)?);
    let family = family_for(rank, &disc).ok_or_else(|| LatticeError::NotRootLattice { rank, disc: disc.to_string() })?;
    Ok(RootComponent { family, rank, discriminant: disc.to_u64().expect("small"), retained, basis_coords })
}

/// Smallest `k` with `s = model_scale·k`, or the appropriate error.
fn scale_factor(family: Family, model_scale: u64, s: u64) -> Result<u64, LatticeError> {
    if s == 0 {
        return Err(LatticeError::ZeroScale);
    }
    if family.is_exceptional() && s == 1 {
        return Err(LatticeError::Unrepresentable { family, s });
    }
    if s % model_scale != 0 {
        return Err(LatticeError::NoConstruction { family, s });
    }
    Ok(s / model_scale)
}

/// Standard basis of the family at scale `s`, with `ZᵀZ = s·Cartan`.
pub fn standard_embedding(component: &RootComponent, s: u64) -> Result<IntegralDecomposition, LatticeError> {
    let model = root_system(component.family, component.rank);
    let k = scale_factor(component.family, model.model_scale, s)?;
    let basis_gram = IntSymMatrix::from_fn(model.rank, |i, j| dot(&model.basis[i], &model.basis[j]) / model.model_scale as i64)?;
    let base = IntegralDecomposition::new(model.model_scale, model.basis.clone(), &basis_gram)?;
    let out = scale_up(&base, k);
    out.verify(&basis_gram)?;
    Ok(out)
}

fn bfs_order(g: &IntSymMatrix) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in 0..n {
                if !seen[w] && g.get(v, w) != 0 {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

/// Assigns to every generator of `gc` a root of the standard model so that all
/// inner products match, then scales to `s`.
pub fn component_isometry(gc: &GramLattice, component: &RootComponent, s: u64) -> Result<IntegralDecomposition, LatticeError> {
    let model = root_system(component.family, component.rank);
    let k = scale_factor(component.family, model.model_scale, s)?;
    let g = &gc.gram;
    let ms = model.model_scale as i64;
    let order = bfs_order(g);
    let n = order.len();
    let roots = &model.roots;
    let sparse: Vec<Vec<(usize, i64)>> =
        roots.iter().map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()).collect();
    let mut assign = vec![usize::MAX; n];
    fn go(
        depth: usize,
        order: &[usize],
        g: &IntSymMatrix,
        ms: i64,
        roots: &[Vec<i64>],
        sparse: &[Vec<(usize, i64)>],
        assign: &mut [usize],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let count = if depth == 0 { 1 } else { roots.len() };
        for r in 0..count {
            let ok = (0..depth).all(|p| {
                let placed = &roots[assign[p]];
                sparse[r].iter().map(|&(i, x)| x * placed[i]).sum::<i64>() == ms * g.get(v, order[p])
            });
            if ok {
                assign[depth] = r;
                if go(depth + 1, order, g, ms, roots, sparse, assign) {
                    return true;
                }
            }
        }
        false
    }
    if !go(0, &order, g, ms, roots, &sparse, &mut assign) {
        return Err(LatticeError::IsometryNotFound { family: component.family });
    }
    let mut columns = vec![Vec::new(); n];
    for (depth, &v) in order.iter().enumerate() {
        columns[v] = roots[assign[depth]].clone();
    }
    let base = IntegralDecomposition::new(model.model_scale, columns, g)?;
    let out = scale_up(&base, k);
    out.verify(g)?;
    Ok(out)
}
