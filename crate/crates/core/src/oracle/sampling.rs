//! Random models, temperatures and states for the cross-validation suites.

use rand::Rng;

use crate::axial::{AxialDensityMatrix, DensityBlock, SpinJ};
use crate::models::ModelParams;
use crate::thermal::Temperature;

const COUPLING_RANGE: f64 = 1.5;

/// One of the three model families with couplings uniform in ±1.5.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R) -> ModelParams {
    let mut c = || rng.gen_range(-COUPLING_RANGE..=COUPLING_RANGE);
    let (a, b, x, y) = (c(), c(), c(), c());
    match rng.gen_range(0..3) {
        0 => ModelParams::Xxx {
            j0: a,
            normalized: true,
        },
        1 => ModelParams::Xxz { jz: a, jxy: b },
        _ => ModelParams::XxzField {
            jz: a,
            jxy: b,
            b1: x,
            b2: y,
        },
    }
}

/// Log-uniform in `[lo, hi]`.
pub fn random_temperature<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Temperature {
    let t = (lo.ln() + rng.gen::<f64>() * (hi / lo).ln()).exp();
    Temperature::new(t).expect("positive bounds")
}

/// Full-rank axial state built from random spectral weights and block
/// mixing angles.
pub fn random_axial_state<R: Rng + ?Sized>(rng: &mut R, spin: SpinJ) -> AxialDensityMatrix {
    let mut weight = || rng.gen_range(0.05..1.0);
    let p_first: f64 = weight();
    let p_last: f64 = weight();
    let pairs: Vec<(f64, f64)> = (0..spin.num_blocks())
        .map(|_| (weight(), weight()))
        .collect();
    let total = p_first + p_last + pairs.iter().map(|(p, q)| p + q).sum::<f64>();
    let blocks = pairs
        .iter()
        .map(|&(p, q)| {
            let angle = rng.gen_range(0.0..std::f64::consts::PI);
            let (s, c) = angle.sin_cos();
            let (p, q) = (p / total, q / total);
            DensityBlock {
                a: p * c * c + q * s * s,
                b: p * s * s + q * c * c,
                u: (p - q) * s * c,
            }
        })
        .collect();
    AxialDensityMatrix::new(spin, p_first / total, p_last / total, blocks)
        .expect("block count taken from the spin")
}
