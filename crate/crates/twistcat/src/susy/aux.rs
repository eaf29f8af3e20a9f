use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SusyError;
use crate::exactfield::{ExactMatrix, GaussianRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxKind {
    Symmetric,
    Symplectic,
    DualPair,
}

impl AuxKind {
    /// The kind of auxiliary data for dimension `n`, and whether it comes as a pair `(𝒩₊, 𝒩₋)`.
    pub fn for_dim(n: usize) -> (AuxKind, bool) {
        match n % 8 {
            1 | 3 => (AuxKind::Symmetric, false),
            5 | 7 => (AuxKind::Symplectic, false),
            2 => (AuxKind::Symmetric, true),
            6 => (AuxKind::Symplectic, true),
            _ => (AuxKind::DualPair, false),
        }
    }
}

impl fmt::Display for AuxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuxKind::Symmetric => "symmetric",
            AuxKind::Symplectic => "symplectic",
            AuxKind::DualPair => "dual_pair",
        })
    }
}

/// The amount of supersymmetry: `𝒩` or `(𝒩₊, 𝒩₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AuxCount {
    Single(usize),
    Pair(usize, usize),
}

impl AuxCount {
    pub fn total(&self) -> usize {
        match *self {
            AuxCount::Single(k) => k,
            AuxCount::Pair(a, b) => a + b,
        }
    }
}

impl fmt::Display for AuxCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxCount::Single(k) => write!(f, "N={k}"),
            AuxCount::Pair(a, b) => write!(f, "N=({a},{b})"),
        }
    }
}

impl FromStr for AuxCount {
    type Err = SusyError;

    /// Accepts `N=2`, `n = (1,1)`, `2` or `(1,0)`.
    fn from_str(s: &str) -> Result<Self, SusyError> {
        let bad = || SusyError::BadAuxSpec(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("N=")
            .or_else(|| compact.strip_prefix("n="))
            .or_else(|| compact.strip_prefix("𝒩="))
            .unwrap_or(&compact);
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(AuxCount::Pair(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
        }
        body.parse().map(AuxCount::Single).map_err(|_| bad())
    }
}

/// The auxiliary space W (or `W₊, W₋`, or `W, W*`) with its pairing matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AuxSpace {
    pub kind: AuxKind,
    pub count: AuxCount,
    /// Symmetric and symplectic kinds: one form per Σ-block. Dual pair: the coupling `W × W*`.
    pub forms: Vec<ExactMatrix>,
}

/// Hyperbolic symmetric form of size `k`: pairs `(2j, 2j+1)`, and `⟨w_{k−1}, w_{k−1}⟩ = 1` for odd `k`.
pub fn hyperbolic_form(k: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(k, k);
    for j in 0..k / 2 {
        m[(2 * j, 2 * j + 1)] = GaussianRational::one();
        m[(2 * j + 1, 2 * j)] = GaussianRational::one();
    }
    if k % 2 == 1 {
        m[(k - 1, k - 1)] = GaussianRational::one();
    }
    m
}

/// Standard symplectic form of size `2k`: `ω(w₂ⱼ, w₂ⱼ₊₁) = 1`.
pub fn symplectic_form(k: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * k, 2 * k);
    for j in 0..k {
        m[(2 * j, 2 * j + 1)] = GaussianRational::one();
        m[(2 * j + 1, 2 * j)] = -GaussianRational::one();
    }
    m
}

impl AuxSpace {
    /// Standard pairings for a kind and count.
    pub fn from_kind(kind: AuxKind, count: AuxCount) -> AuxSpace {
        let sizes: Vec<usize> = match count {
            AuxCount::Single(k) => vec![k],
            AuxCount::Pair(a, b) => vec![a, b],
        };
        let forms = sizes
            .into_iter()
            .map(|k| match kind {
                AuxKind::Symmetric => hyperbolic_form(k),
                AuxKind::Symplectic => symplectic_form(k),
                AuxKind::DualPair => ExactMatrix::identity(k),
            })
            .collect();
        AuxSpace { kind, count, forms }
    }

    pub fn standard(n: usize, count: AuxCount) -> Result<AuxSpace, SusyError> {
        let (kind, _) = AuxKind::for_dim(n);
        let aux = AuxSpace::from_kind(kind, count);
        aux.validate(n)?;
        Ok(aux)
    }

    /// Whether the pairings are the standard normal forms.
    pub fn is_standard(&self) -> bool {
        *self == AuxSpace::from_kind(self.kind, self.count)
    }

    pub fn validate(&self, n: usize) -> Result<(), SusyError> {
        let (kind, pair) = AuxKind::for_dim(n);
        let shape_ok = matches!((pair, self.count), (true, AuxCount::Pair(..)) | (false, AuxCount::Single(_)));
        if kind != self.kind || !shape_ok {
            let expected = format!("{kind} auxiliary data with {}", if pair { "N=(a,b)" } else { "N=k" });
            return Err(SusyError::IllegalAux { n, expected, found: format!("{} {}", self.kind, self.count) });
        }
        if self.count.total() == 0 {
            return Err(SusyError::IllegalAux { n, expected: "nonzero N".into(), found: self.count.to_string() });
        }
        let sizes: Vec<usize> = match (self.kind, self.count) {
            (AuxKind::Symplectic, AuxCount::Single(k)) => vec![2 * k],
            (AuxKind::Symplectic, AuxCount::Pair(a, b)) => vec![2 * a, 2 * b],
            (_, AuxCount::Single(k)) => vec![k],
            (_, AuxCount::Pair(a, b)) => vec![a, b],
        };
        if self.forms.len() != sizes.len() {
            return Err(SusyError::BadForm(format!("expected {} pairing matrices", sizes.len())));
        }
        for (m, k) in self.forms.iter().zip(sizes) {
            if m.rows() != k || m.cols() != k {
                return Err(SusyError::BadForm(format!("expected a {k}x{k} matrix")));
            }
            if k > 0 && m.inverse().is_none() {
                return Err(SusyError::BadForm("degenerate pairing".into()));
            }
            let sym_ok = match self.kind {
                AuxKind::Symmetric => m.is_symmetric(),
                AuxKind::Symplectic => m.is_antisymmetric(),
                AuxKind::DualPair => true,
            };
            if !sym_ok {
                return Err(SusyError::BadForm(format!("pairing is not {}", self.kind)));
            }
        }
        Ok(())
    }

    /// Auxiliary dimension of each Σ-block.
    pub fn block_dims(&self) -> Vec<usize> {
        match self.kind {
            AuxKind::DualPair => vec![self.forms[0].rows(); 2],
            _ => self.forms.iter().map(ExactMatrix::rows).collect(),
        }
    }

    /// `(b₁, b₂, K)`: blocks coupled by the bracket and the pairing `W_{b₁} × W_{b₂} → ℂ`.
    pub fn couplings(&self) -> Vec<(usize, usize, &ExactMatrix)> {
        match self.kind {
            AuxKind::DualPair => vec![(0, 1, &self.forms[0])],
            _ => self.forms.iter().enumerate().map(|(b, m)| (b, b, m)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AuxData {
    kind: AuxKind,
    #[serde(rename = "N")]
    count: AuxCount,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forms: Option<Vec<ExactMatrix>>,
}

impl Serialize for AuxSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let forms = (!self.is_standard()).then(|| self.forms.clone());
        AuxData { kind: self.kind, count: self.count, forms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AuxSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let data = AuxData::deserialize(d)?;
        Ok(match data.forms {
            Some(forms) => AuxSpace { kind: data.kind, count: data.count, forms },
            None => AuxSpace::from_kind(data.kind, data.count),
        })
    }
}
