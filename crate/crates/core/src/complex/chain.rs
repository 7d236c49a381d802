//! Chain complexes over ℚ with sparse integer boundary matrices.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Q;

/// Cells per dimension and, for each `d ≥ 1`, the boundary of every
/// `d`-cell as `(face index, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    cells: Vec<usize>,
    boundaries: Vec<Vec<Vec<(usize, i64)>>>,
}

impl ChainComplex {
    /// `boundaries[d - 1]` is the boundary map out of dimension `d`.
    pub fn new(cells: Vec<usize>, boundaries: Vec<Vec<Vec<(usize, i64)>>>) -> Self {
        ChainComplex { cells, boundaries }
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Rank over ℚ of `∂_d : C_d → C_{d−1}`.
    pub fn boundary_rank(&self, d: usize) -> usize {
        if d == 0 {
            return 0;
        }
        self.boundaries.get(d - 1).map_or(0, |rows| rational_rank(rows))
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.cells.len()).map(|d| self.boundary_rank(d)).collect();
        (0..self.cells.len()).map(|d| self.cells[d] - ranks[d] - ranks[d + 1]).collect()
    }
}

/// Rank over ℚ of a sparse integer matrix given by rows.
pub fn rational_rank(rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, Q> = BTreeMap::new();
        for &(c, v) in row {
            let e = r.entry(c).or_insert_with(Q::zero);
            *e += Q::from_integer(v.into());
        }
        r.retain(|_, v| !v.is_zero());
        while let Some((c, lead)) = r.iter().next().map(|(&c, v)| (c, v.clone())) {
            match pivots.get(&c) {
                Some(p) => {
                    let factor = lead / &p[&c];
                    for (&pc, pv) in p {
                        let e = r.entry(pc).or_insert_with(Q::zero);
                        *e -= &factor * pv;
                        if e.is_zero() {
                            r.remove(&pc);
                        }
                    }
                }
                None => {
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}
