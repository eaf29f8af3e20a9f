use crate::exactfield::{ExactMatrix, GaussianRational, Vector};

/// Coordinates with respect to a linearly independent family of vectors.
#[derive(Debug, Clone)]
pub(crate) struct Basis {
    vectors: Vec<Vector>,
    rows: Vec<usize>,
    inv: ExactMatrix,
}

impl Basis {
    /// `None` when the vectors are dependent.
    pub fn new(vectors: Vec<Vector>) -> Option<Basis> {
        let k = vectors.len();
        let len = vectors.first().map_or(0, Vec::len);
        if k == 0 {
            return Some(Basis { vectors, rows: Vec::new(), inv: ExactMatrix::zeros(0, 0) });
        }
        let m = ExactMatrix::from_columns(len, &vectors);
        let rows = m.transpose().echelon().pivots;
        if rows.len() < k {
            return None;
        }
        let inv = m.select(&rows, &(0..k).collect::<Vec<_>>()).inverse()?;
        Some(Basis { vectors, rows, inv })
    }

    /// Basis of matrices, flattened row-major.
    pub fn of_matrices(ms: &[ExactMatrix]) -> Option<Basis> {
        Basis::new(ms.iter().map(|m| m.entries().to_vec()).collect())
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[GaussianRational]) -> Option<Vector> {
        if self.vectors.is_empty() {
            return crate::exactfield::is_zero_vec(v).then(Vec::new);
        }
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inv.mul_vec(&picked);
        (self.combine(&c) == v).then_some(c)
    }

    pub fn matrix_coords(&self, m: &ExactMatrix) -> Option<Vector> {
        self.coords(m.entries())
    }

    pub fn combine(&self, c: &[GaussianRational]) -> Vector {
        let len = self.vectors.first().map_or(0, Vec::len);
        let mut out = vec![GaussianRational::zero(); len];
        for (x, v) in c.iter().zip(&self.vectors) {
            if x.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(v) {
                *o += x * e;
            }
        }
        out
    }
}

/// Basis of `{X : XᵀF + FX = 0}`, the Lie algebra of infinitesimal isometries of `F`.
pub(crate) fn preserving(form: &ExactMatrix) -> Vec<ExactMatrix> {
    let d = form.rows();
    let mut sys = crate::exactfield::SparseSystem::new(d * d);
    for a in 0..d {
        for b in 0..d {
            // (XᵀF)_{ab} = Σ_c X_{ca} F_{cb},  (FX)_{ab} = Σ_c F_{ac} X_{cb}
            let mut row = Vec::new();
            for c in 0..d {
                row.push((c * d + a, form[(c, b)].clone()));
                row.push((c * d + b, form[(a, c)].clone()));
            }
            sys.push(row);
        }
    }
    sys.kernel().into_iter().map(|v| ExactMatrix::from_entries(d, d, v).expect("d*d entries")).collect()
}

/// Matrix of the rotation `r_{ij}` on `V = ℂⁿ`.
pub(crate) fn vector_rep(n: usize, i: usize, j: usize) -> ExactMatrix {
    let cols: Vec<Vector> = (0..n)
        .map(|mu| {
            let mut e = vec![GaussianRational::zero(); n];
            e[mu] = GaussianRational::one();
            crate::clifford::rotate_vector(i, j, &e)
        })
        .collect();
    ExactMatrix::from_columns(n, &cols)
}

/// Matrix of the rotation `r_{ij}` on a spinor sector.
pub(crate) fn spinor_rep(
    model: &crate::clifford::CliffordModel,
    sector: crate::clifford::Sector,
    i: usize,
    j: usize,
) -> ExactMatrix {
    let d = model.sector_dim(sector);
    let cols: Vec<Vector> = (0..d)
        .map(|t| {
            let mut e = vec![GaussianRational::zero(); d];
            e[t] = GaussianRational::one();
            let s = crate::clifford::Spinor::new(model.n(), sector, e);
            model.so_action(i, j, &s).expect("valid rotation plane").coeffs
        })
        .collect();
    ExactMatrix::from_columns(d, &cols)
}

/// Rotation planes `(i, j)`, `i < j`, in lexicographic order.
pub(crate) fn planes(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub(crate) fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.mul(b).sub(&b.mul(a))
}
