//! Closed-form LQFI and LQU of axially symmetric qubit-qudit states.
//!
//! Both quantities are the minimum of two branches. The 0-branch comes from
//! measuring along the symmetry axis, the 1-branch from a transverse axis.

use crate::axial::{
    det2, eigen_unchecked, validate_density, AxialDensityMatrix, BlockEigen, DEFAULT_TOL,
};
use crate::error::{invalid_state, Result};

/// Negative `ab - u²` down to this value is treated as rounding noise.
const RADICAND_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Zero,
    One,
}

impl Branch {
    pub fn index(self) -> u8 {
        match self {
            Branch::Zero => 0,
            Branch::One => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub f0: f64,
    pub f1: f64,
    pub u0: f64,
    pub u1: f64,
    /// LQFI, `min(f0, f1)`.
    pub f: f64,
    /// LQU, `min(u0, u1)`.
    pub u: f64,
    pub active_branch_f: Branch,
    pub active_branch_u: Branch,
}

fn pick(zero: f64, one: f64) -> (f64, Branch) {
    if zero <= one {
        (zero, Branch::Zero)
    } else {
        (one, Branch::One)
    }
}

fn checked(rho: &AxialDensityMatrix) -> Result<()> {
    validate_density(rho, DEFAULT_TOL).into_result()
}

fn eigens(rho: &AxialDensityMatrix) -> Vec<BlockEigen> {
    rho.blocks()
        .iter()
        .map(|b| eigen_unchecked(b.a, b.b, b.u))
        .collect()
}

fn f0_unchecked(rho: &AxialDensityMatrix) -> f64 {
    4.0 * rho
        .blocks()
        .iter()
        .map(|b| {
            let s = b.a + b.b;
            if s > 0.0 {
                b.u * b.u / s
            } else {
                0.0
            }
        })
        .sum::<f64>()
}

fn u0_unchecked(rho: &AxialDensityMatrix) -> Result<f64> {
    let mut sum = 0.0;
    for (k, b) in rho.blocks().iter().enumerate() {
        let det = det2(b.a, b.b, b.u);
        if det < RADICAND_FLOOR {
            return Err(invalid_state(format!(
                "block {} has negative determinant {det:e}",
                k + 1
            )));
        }
        let den = b.a + b.b + 2.0 * det.max(0.0).sqrt();
        if den > 0.0 {
            sum += b.u * b.u / den;
        }
    }
    Ok(4.0 * sum)
}

/// `(x + √(pq)) / (√p + √q)`, zero on an empty block.
fn root_ratio(x: f64, p: f64, q: f64) -> f64 {
    let den = p.sqrt() + q.sqrt();
    if den > 0.0 {
        (x + (p * q).sqrt()) / den
    } else {
        0.0
    }
}

fn u1_unchecked(rho: &AxialDensityMatrix) -> f64 {
    let blocks = rho.blocks();
    let eig = eigens(rho);
    let n = blocks.len();
    let first = root_ratio(blocks[0].a, eig[0].p, eig[0].q) * rho.p_first().max(0.0).sqrt();
    let last =
        root_ratio(blocks[n - 1].b, eig[n - 1].p, eig[n - 1].q) * rho.p_last().max(0.0).sqrt();
    let inner: f64 = (0..n - 1)
        .map(|k| {
            root_ratio(blocks[k].b, eig[k].p, eig[k].q)
                * root_ratio(blocks[k + 1].a, eig[k + 1].p, eig[k + 1].q)
        })
        .sum();
    1.0 - 2.0 * (first + last + inner)
}

/// `w/(w+x) · (y/(w+z))`, zero whenever the leading weight `w` vanishes.
fn weighted(w: f64, x: f64, y: f64, z: f64) -> f64 {
    if w > 0.0 {
        w / (w + x) * y / (w + z)
    } else {
        0.0
    }
}

fn edge_terms(rho: &AxialDensityMatrix, eig: &[BlockEigen]) -> f64 {
    let blocks = rho.blocks();
    let n = blocks.len();
    let p0 = rho.p_first().max(0.0);
    let pl = rho.p_last().max(0.0);
    let (e1, el) = (&eig[0], &eig[n - 1]);
    weighted(p0, e1.p, blocks[0].a * p0 + e1.p * e1.q, e1.q)
        + weighted(pl, el.p, blocks[n - 1].b * pl + el.p * el.q, el.q)
}

fn f1_unchecked(rho: &AxialDensityMatrix) -> f64 {
    let blocks = rho.blocks();
    let eig = eigens(rho);
    let inner: f64 = (0..blocks.len() - 1)
        .map(|k| {
            let (e, en) = (&eig[k], &eig[k + 1]);
            let (r, rn) = (e.ratio(), en.ratio());
            let (b, an) = (blocks[k].b, blocks[k + 1].a);
            let pq = e.p * e.q;
            let pqn = en.p * en.q;
            weighted(e.q, en.p, an * e.q + pqn, en.q) * (1.0 + r)
                + weighted(e.p, en.p, an * e.p + pqn, en.q) * (1.0 - r)
                + weighted(en.p, e.p, b * en.p + pq, e.q) * (1.0 + rn)
                + weighted(en.q, e.p, b * en.q + pq, e.q) * (1.0 - rn)
        })
        .sum();
    1.0 - 4.0 * edge_terms(rho, &eig) - inner
}

fn f1_expanded_unchecked(rho: &AxialDensityMatrix) -> f64 {
    let blocks = rho.blocks();
    let eig = eigens(rho);
    let inner: f64 = (0..blocks.len() - 1)
        .map(|k| {
            let (e, en) = (&eig[k], &eig[k + 1]);
            let den = (e.p + en.p) * (e.p + en.q) * (e.q + en.p) * (e.q + en.q);
            if den <= 0.0 {
                return 0.0;
            }
            let (ak, bk) = (blocks[k].a, blocks[k].b);
            let (an, bn) = (blocks[k + 1].a, blocks[k + 1].b);
            let uk = blocks[k].u * blocks[k].u;
            let un = blocks[k + 1].u * blocks[k + 1].u;
            let num = an * bk * (ak + an) * (bk + bn) * (ak + bn)
                - an * uk * (bn * bn + bk * (2.0 * ak + an) + bn * (ak + bk))
                - bk * un * (ak * ak + an * (bk + 2.0 * bn) + ak * (an + bn))
                + (ak + bn) * uk * un
                + an * uk * uk
                + bk * un * un;
            num / den
        })
        .sum();
    1.0 - 4.0 * (edge_terms(rho, &eig) + inner)
}

/// LQFI 0-branch.
pub fn branch_f0(rho: &AxialDensityMatrix) -> Result<f64> {
    checked(rho)?;
    Ok(f0_unchecked(rho))
}

/// LQU 0-branch.
pub fn branch_u0(rho: &AxialDensityMatrix) -> Result<f64> {
    checked(rho)?;
    u0_unchecked(rho)
}

/// LQU 1-branch.
pub fn branch_u1(rho: &AxialDensityMatrix) -> Result<f64> {
    checked(rho)?;
    Ok(u1_unchecked(rho))
}

/// LQFI 1-branch, written through the block eigenvalues and the mixing ratios.
pub fn branch_f1(rho: &AxialDensityMatrix) -> Result<f64> {
    checked(rho)?;
    Ok(f1_unchecked(rho))
}

/// LQFI 1-branch as a rational function of the block entries. Algebraically
/// equal to [`branch_f1`]; kept as a cross-check.
pub fn branch_f1_expanded(rho: &AxialDensityMatrix) -> Result<f64> {
    checked(rho)?;
    Ok(f1_expanded_unchecked(rho))
}

/// All four branches together with LQFI and LQU. Ties go to the 0-branch.
pub fn correlations(rho: &AxialDensityMatrix) -> Result<CorrelationResult> {
    checked(rho)?;
    let f0 = f0_unchecked(rho);
    let f1 = f1_unchecked(rho);
    let u0 = u0_unchecked(rho)?;
    let u1 = u1_unchecked(rho);
    let (f, active_branch_f) = pick(f0, f1);
    let (u, active_branch_u) = pick(u0, u1);
    Ok(CorrelationResult {
        f0,
        f1,
        u0,
        u1,
        f,
        u,
        active_branch_f,
        active_branch_u,
    })
}
