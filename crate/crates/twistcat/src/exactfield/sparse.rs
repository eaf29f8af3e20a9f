use std::collections::BTreeMap;

use super::{GaussianRational, Vector};

/// A homogeneous linear system stored row by row as sparse `(column, coefficient)` lists.
///
/// Used for intertwiner systems whose dense form would have tens of
/// thousands of rows but only two nonzeros per row.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    cols: usize,
    rows: Vec<BTreeMap<usize, GaussianRational>>,
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Append one equation `Σ c·x_col = 0`; repeated columns are summed.
    pub fn push(&mut self, terms: impl IntoIterator<Item = (usize, GaussianRational)>) {
        let mut row = BTreeMap::new();
        for (c, x) in terms {
            assert!(c < self.cols, "column out of range");
            let e = row.entry(c).or_insert_with(GaussianRational::zero);
            *e += x;
        }
        row.retain(|_, x: &mut GaussianRational| !x.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    fn echelon(&self) -> BTreeMap<usize, BTreeMap<usize, GaussianRational>> {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, GaussianRational>> = BTreeMap::new();
        for row in &self.rows {
            let mut row = row.clone();
            while let Some((&lead, _)) = row.iter().next() {
                let Some(prow) = pivots.get(&lead) else { break };
                let f = row[&lead].clone();
                for (c, x) in prow {
                    let e = row.entry(*c).or_insert_with(GaussianRational::zero);
                    *e -= &(&f * x);
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
            if let Some((&lead, x)) = row.iter().next() {
                let inv = x.inv().expect("nonzero leading entry");
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                pivots.insert(lead, row);
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Basis of the solution space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let pivots = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![GaussianRational::zero(); self.cols];
                x[f] = GaussianRational::one();
                for (&p, row) in pivots.iter().rev() {
                    let mut acc = GaussianRational::zero();
                    for (c, a) in row.range(p + 1..) {
                        if !x[*c].is_zero() {
                            acc += a * &x[*c];
                        }
                    }
                    x[p] = -acc;
                }
                x
            })
            .collect()
    }
}
