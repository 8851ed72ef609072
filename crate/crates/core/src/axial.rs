//! Block data model for operators on C^(2j+1) ⊗ C^2 that commute with the
//! z-component of the total spin.
//!
//! In the product basis ordered as |j,↑⟩, |j,↓⟩, |j-1,↑⟩, …, |-j,↓⟩ such an
//! operator splits into two 1×1 edge blocks (positions 0 and 4j+1) and 2j
//! two-by-two blocks on the index pairs (2k-1, 2k), k = 1…2j.

use std::fmt;

use crate::error::{invalid_argument, invalid_state, Result};

/// Default tolerance for density-matrix validation.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Spin magnitude j, stored exactly as the positive integer 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(invalid_argument("2j must be a positive integer"));
        }
        Ok(Self { twice_j })
    }

    /// Spin-1/2.
    pub const HALF: SpinJ = SpinJ { twice_j: 1 };

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    /// Number of two-by-two blocks, 2j.
    pub fn num_blocks(self) -> usize {
        self.twice_j as usize
    }

    /// Dimension of the large spin, 2j+1.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Dimension of the joint Hilbert space, 4j+2.
    pub fn total_dim(self) -> usize {
        2 * self.dim()
    }

    pub fn is_integer(self) -> bool {
        self.twice_j.is_multiple_of(2)
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// One 2×2 Hamiltonian block `[[h, g], [g, h']]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianBlock {
    pub h: f64,
    pub h_prime: f64,
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxialHamiltonian {
    spin: SpinJ,
    e_first: f64,
    e_last: f64,
    blocks: Vec<HamiltonianBlock>,
}

impl AxialHamiltonian {
    pub fn new(
        spin: SpinJ,
        e_first: f64,
        e_last: f64,
        blocks: Vec<HamiltonianBlock>,
    ) -> Result<Self> {
        if blocks.len() != spin.num_blocks() {
            return Err(invalid_argument(format!(
                "expected {} blocks for j = {spin}, got {}",
                spin.num_blocks(),
                blocks.len()
            )));
        }
        let finite = e_first.is_finite()
            && e_last.is_finite()
            && blocks
                .iter()
                .all(|b| b.h.is_finite() && b.h_prime.is_finite() && b.g.is_finite());
        if !finite {
            return Err(invalid_argument("Hamiltonian entries must be finite"));
        }
        Ok(Self {
            spin,
            e_first,
            e_last,
            blocks,
        })
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    /// Energy of the edge state |j,↑⟩ (E₀).
    pub fn e_first(&self) -> f64 {
        self.e_first
    }

    /// Energy of the edge state |-j,↓⟩ (E₄ⱼ₊₁).
    pub fn e_last(&self) -> f64 {
        self.e_last
    }

    pub fn blocks(&self) -> &[HamiltonianBlock] {
        &self.blocks
    }

    pub fn spectra(&self) -> Vec<BlockSpectrum> {
        self.blocks
            .iter()
            .map(|b| spectrum_unchecked(b.h, b.h_prime, b.g))
            .collect()
    }

    /// Smallest eigenvalue.
    pub fn min_energy(&self) -> f64 {
        self.spectra()
            .iter()
            .map(|s| s.e_minus)
            .fold(self.e_first.min(self.e_last), f64::min)
    }

    /// Largest absolute entry, used to scale tolerances.
    pub fn max_abs_entry(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| [b.h.abs(), b.h_prime.abs(), b.g.abs()])
            .fold(self.e_first.abs().max(self.e_last.abs()), f64::max)
    }
}

/// Eigenvalues of one Hamiltonian block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSpectrum {
    pub e_plus: f64,
    pub e_minus: f64,
    /// Level splitting `sqrt((h-h')² + 4g²)`.
    pub r: f64,
}

pub fn block_spectrum(h: f64, h_prime: f64, g: f64) -> Result<BlockSpectrum> {
    if !(h.is_finite() && h_prime.is_finite() && g.is_finite()) {
        return Err(invalid_argument("block entries must be finite"));
    }
    Ok(spectrum_unchecked(h, h_prime, g))
}

fn spectrum_unchecked(h: f64, h_prime: f64, g: f64) -> BlockSpectrum {
    let r = (h - h_prime).hypot(2.0 * g);
    let mid = 0.5 * (h + h_prime);
    BlockSpectrum {
        e_plus: mid + 0.5 * r,
        e_minus: mid - 0.5 * r,
        r,
    }
}

/// One 2×2 density block `[[a, u], [u, b]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityBlock {
    pub a: f64,
    pub b: f64,
    pub u: f64,
}

impl DensityBlock {
    /// `a·b - u²` evaluated with an error-free product, so the sign is
    /// reliable for the stored floats.
    pub fn det(&self) -> f64 {
        det2(self.a, self.b, self.u)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b
    }
}

pub(crate) fn det2(a: f64, b: f64, u: f64) -> f64 {
    let uu = u * u;
    let err = u.mul_add(u, -uu);
    a.mul_add(b, -uu) - err
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxialDensityMatrix {
    spin: SpinJ,
    p_first: f64,
    p_last: f64,
    blocks: Vec<DensityBlock>,
}

impl AxialDensityMatrix {
    /// Builds a state from its entries. Only the block count is checked
    /// here; use [`validate_density`] for positivity and normalisation.
    pub fn new(spin: SpinJ, p_first: f64, p_last: f64, blocks: Vec<DensityBlock>) -> Result<Self> {
        if blocks.len() != spin.num_blocks() {
            return Err(invalid_argument(format!(
                "expected {} blocks for j = {spin}, got {}",
                spin.num_blocks(),
                blocks.len()
            )));
        }
        Ok(Self {
            spin,
            p_first,
            p_last,
            blocks,
        })
    }

    /// `I / (4j+2)`.
    pub fn maximally_mixed(spin: SpinJ) -> Self {
        let w = 1.0 / spin.total_dim() as f64;
        Self {
            spin,
            p_first: w,
            p_last: w,
            blocks: vec![DensityBlock { a: w, b: w, u: 0.0 }; spin.num_blocks()],
        }
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    /// Weight of |j,↑⟩ (p₀).
    pub fn p_first(&self) -> f64 {
        self.p_first
    }

    /// Weight of |-j,↓⟩ (p₄ⱼ₊₁).
    pub fn p_last(&self) -> f64 {
        self.p_last
    }

    pub fn blocks(&self) -> &[DensityBlock] {
        &self.blocks
    }

    pub fn trace(&self) -> f64 {
        self.p_first + self.p_last + self.blocks.iter().map(DensityBlock::trace).sum::<f64>()
    }

    /// Per-block eigen decompositions, without the positivity check.
    pub fn block_eigens(&self) -> Vec<BlockEigen> {
        self.blocks
            .iter()
            .map(|b| eigen_unchecked(b.a, b.b, b.u))
            .collect()
    }

    /// All 4j+2 eigenvalues in the slot order p₀, p₁, q₁, …, p₂ⱼ, q₂ⱼ, p₄ⱼ₊₁.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.spin.total_dim());
        out.push(self.p_first);
        for e in self.block_eigens() {
            out.push(e.p);
            out.push(e.q);
        }
        out.push(self.p_last);
        out
    }
}

/// Eigenvalues and eigenvector weights of one density block.
///
/// The eigenvector of `p` is `(κ̃, ũ)` with `kappa2 = κ̃²`, `usq = ũ²`; the
/// eigenvector of `q` is `(ũ, -κ̃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockEigen {
    pub p: f64,
    pub q: f64,
    pub kappa2: f64,
    pub usq: f64,
}

impl BlockEigen {
    /// `(a-b)/(p-q)`, with the value +1 on degenerate blocks.
    pub fn ratio(&self) -> f64 {
        self.kappa2 - self.usq
    }
}

pub fn block_eigs(a: f64, b: f64, u: f64) -> Result<BlockEigen> {
    if !(a.is_finite() && b.is_finite() && u.is_finite()) {
        return Err(invalid_state("block entries must be finite"));
    }
    if a < -DEFAULT_TOL || b < -DEFAULT_TOL {
        return Err(invalid_state(format!(
            "negative diagonal in block: a = {a}, b = {b}"
        )));
    }
    if -det2(a, b, u) > DEFAULT_TOL {
        return Err(invalid_state(format!(
            "block not positive: u² - ab = {}",
            -det2(a, b, u)
        )));
    }
    Ok(eigen_unchecked(a, b, u))
}

pub(crate) fn eigen_unchecked(a: f64, b: f64, u: f64) -> BlockEigen {
    let a = a.max(0.0);
    let b = b.max(0.0);
    let diff = a - b;
    let split = diff.hypot(2.0 * u);
    let p = 0.5 * (a + b + split);
    let q = if p > 0.0 {
        det2(a, b, u).max(0.0) / p
    } else {
        0.0
    };
    let (kappa2, usq) = if split == 0.0 {
        (1.0, 0.0)
    } else {
        // The small weight is 2u²/(s(s+|a-b|)), free of cancellation.
        let big = (split + diff.abs()) / (2.0 * split);
        let small = 2.0 * u * u / (split * (split + diff.abs()));
        if diff >= 0.0 {
            (big, small)
        } else {
            (small, big)
        }
    };
    BlockEigen { p, q, kappa2, usq }
}

/// A violated invariant of an [`AxialDensityMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite { position: String },
    NegativeWeight { position: String, value: f64 },
    BlockNotPositive { k: usize, excess: f64 },
    Trace { trace: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { position } => write!(f, "non-finite entry at {position}"),
            Violation::NegativeWeight { position, value } => {
                write!(f, "negative weight {value:e} at {position}")
            }
            Violation::BlockNotPositive { k, excess } => {
                write!(f, "block {k} not positive: u² - ab = {excess:e}")
            }
            Violation::Trace { trace } => {
                write!(f, "trace {trace} differs from 1 by {:e}", trace - 1.0)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msg: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(invalid_state(msg.join("; ")))
        }
    }
}

pub fn validate_density(rho: &AxialDensityMatrix, tol: f64) -> ValidationReport {
    let mut violations = Vec::new();
    let check_weight = |position: String, value: f64, out: &mut Vec<Violation>| {
        if !value.is_finite() {
            out.push(Violation::NonFinite { position });
        } else if value < -tol {
            out.push(Violation::NegativeWeight { position, value });
        }
    };
    check_weight("p_first".into(), rho.p_first, &mut violations);
    check_weight("p_last".into(), rho.p_last, &mut violations);
    for (i, blk) in rho.blocks.iter().enumerate() {
        let k = i + 1;
        check_weight(format!("a_{k}"), blk.a, &mut violations);
        check_weight(format!("b_{k}"), blk.b, &mut violations);
        if !blk.u.is_finite() {
            violations.push(Violation::NonFinite {
                position: format!("u_{k}"),
            });
            continue;
        }
        let excess = -blk.det();
        if excess > tol {
            violations.push(Violation::BlockNotPositive { k, excess });
        }
    }
    let trace = rho.trace();
    if trace.is_finite() && (trace - 1.0).abs() > tol {
        violations.push(Violation::Trace { trace });
    }
    ValidationReport { violations }
}
