use crate::exactfield::{ExactMatrix, GaussianRational, Vector};

/// A monomial matrix: column `q` has a single nonzero entry `coef[q]` in row `target[q]`.
///
/// Every gamma matrix and every product of gamma matrices in the tensor
/// construction has this shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    target: Vec<usize>,
    coef: Vec<GaussianRational>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        Monomial { target: (0..d).collect(), coef: vec![GaussianRational::one(); d] }
    }

    /// Read a monomial matrix; `None` if some column is not a single nonzero entry.
    pub fn from_matrix(m: &ExactMatrix) -> Option<Self> {
        let d = m.cols();
        let mut target = Vec::with_capacity(d);
        let mut coef = Vec::with_capacity(d);
        for q in 0..d {
            let nz: Vec<usize> = (0..m.rows()).filter(|&i| !m[(i, q)].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            target.push(nz[0]);
            coef.push(m[(nz[0], q)].clone());
        }
        Some(Monomial { target, coef })
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self, q: usize) -> usize {
        self.target[q]
    }

    pub fn coef(&self, q: usize) -> &GaussianRational {
        &self.coef[q]
    }

    /// `self · other`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let d = self.dim();
        let mut target = Vec::with_capacity(d);
        let mut coef = Vec::with_capacity(d);
        for q in 0..d {
            let mid = other.target[q];
            target.push(self.target[mid]);
            coef.push(&self.coef[mid] * &other.coef[q]);
        }
        Monomial { target, coef }
    }

    pub fn scale(&self, c: &GaussianRational) -> Monomial {
        Monomial { target: self.target.clone(), coef: self.coef.iter().map(|x| x * c).collect() }
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); v.len()];
        for (q, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.target[q]] = &self.coef[q] * x;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for q in 0..d {
            m[(self.target[q], q)] = self.coef[q].clone();
        }
        m
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim()).filter(|&q| self.target[q] == q).map(|q| self.coef[q].clone()).sum()
    }
}
