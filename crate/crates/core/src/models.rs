//! Concrete axially symmetric Hamiltonians and the paramagnet
//! Brillouin/Langevin functions.

use crate::axial::{AxialHamiltonian, HamiltonianBlock, SpinJ};
use crate::error::Result;

/// Coupling parameters of the supported models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    /// Isotropic Heisenberg `J₀ S·s`, optionally normalised by |S| = sqrt(j(j+1)).
    Xxx { j0: f64, normalized: bool },
    /// `J_z S_z σ_z + J (S_x σ_x + S_y σ_y)`.
    Xxz { jz: f64, jxy: f64 },
    /// XXZ plus the inhomogeneous fields `B₁ S_z + B₂ σ_z`.
    XxzField { jz: f64, jxy: f64, b1: f64, b2: f64 },
}

impl ModelParams {
    pub fn hamiltonian(&self, spin: SpinJ) -> AxialHamiltonian {
        match *self {
            ModelParams::Xxx { j0, normalized } => xxx_hamiltonian(spin, j0, normalized),
            ModelParams::Xxz { jz, jxy } => xxz_hamiltonian(spin, jz, jxy),
            ModelParams::XxzField { jz, jxy, b1, b2 } => {
                xxz_field_hamiltonian(spin, jz, jxy, b1, b2)
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ModelParams::Xxx { .. } => "xxx",
            ModelParams::Xxz { .. } => "xxz",
            ModelParams::XxzField { .. } => "xxzfield",
        }
    }

    /// Model parameters as `(name, value)` pairs, in CSV column order.
    pub fn columns(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ModelParams::Xxx { j0, .. } => vec![("j0", j0)],
            ModelParams::Xxz { jz, jxy } => vec![("jz", jz), ("j", jxy)],
            ModelParams::XxzField { jz, jxy, b1, b2 } => {
                vec![("jz", jz), ("j", jxy), ("b1", b1), ("b2", b2)]
            }
        }
    }

    /// Same model with the transverse coupling negated (J → -J, J₀ unchanged for XXX).
    pub fn with_flipped_transverse(&self) -> Self {
        match *self {
            ModelParams::Xxx { .. } => *self,
            ModelParams::Xxz { jz, jxy } => ModelParams::Xxz { jz, jxy: -jxy },
            ModelParams::XxzField { jz, jxy, b1, b2 } => ModelParams::XxzField {
                jz,
                jxy: -jxy,
                b1,
                b2,
            },
        }
    }
}

/// `sqrt(k(2j-k+1))` for block k (1-based).
fn ladder(spin: SpinJ, k: u32) -> f64 {
    f64::from(k * (spin.twice_j() - k + 1)).sqrt()
}

/// Normalisation factor `J₀ / (2 sqrt(j(j+1)))`.
pub fn xxx_scale(spin: SpinJ, j0: f64) -> f64 {
    let j = spin.j();
    j0 / (2.0 * (j * (j + 1.0)).sqrt())
}

pub fn xxx_hamiltonian(spin: SpinJ, j0: f64, normalized: bool) -> AxialHamiltonian {
    let c = if normalized { xxx_scale(spin, j0) } else { j0 };
    let j = spin.j();
    let blocks = (1..=spin.twice_j())
        .map(|k| {
            let kf = f64::from(k);
            HamiltonianBlock {
                h: c * (-j + kf - 1.0),
                h_prime: c * (j - kf),
                g: c * ladder(spin, k),
            }
        })
        .collect();
    AxialHamiltonian::new(spin, c * j, c * j, blocks).expect("finite XXX couplings")
}

pub fn xxz_hamiltonian(spin: SpinJ, jz: f64, jxy: f64) -> AxialHamiltonian {
    xxz_field_hamiltonian(spin, jz, jxy, 0.0, 0.0)
}

pub fn xxz_field_hamiltonian(spin: SpinJ, jz: f64, jxy: f64, b1: f64, b2: f64) -> AxialHamiltonian {
    let j = spin.j();
    let blocks = (1..=spin.twice_j())
        .map(|k| {
            let kf = f64::from(k);
            HamiltonianBlock {
                h: (-j + kf - 1.0) * (jz - b1) - b2,
                h_prime: (j - kf) * (jz + b1) + b2,
                g: jxy * ladder(spin, k),
            }
        })
        .collect();
    AxialHamiltonian::new(spin, j * (jz + b1) + b2, j * (jz - b1) - b2, blocks)
        .expect("finite XXZ couplings")
}

/// Checked variant of the builders for untrusted (e.g. command-line) input.
pub fn build(params: &ModelParams, spin: SpinJ) -> Result<AxialHamiltonian> {
    let finite = match *params {
        ModelParams::Xxx { j0, .. } => j0.is_finite(),
        ModelParams::Xxz { jz, jxy } => jz.is_finite() && jxy.is_finite(),
        ModelParams::XxzField { jz, jxy, b1, b2 } => {
            jz.is_finite() && jxy.is_finite() && b1.is_finite() && b2.is_finite()
        }
    };
    if !finite {
        return Err(crate::error::invalid_argument(
            "model parameters must be finite",
        ));
    }
    Ok(params.hamiltonian(spin))
}

/// `coth(y) - 1/y`, finite at the origin.
fn coth_minus_inverse(y: f64) -> f64 {
    if y.abs() < 1e-3 {
        let y2 = y * y;
        y * (1.0 / 3.0 - y2 * (1.0 / 45.0 - y2 * (2.0 / 945.0)))
    } else {
        1.0 / y.tanh() - 1.0 / y
    }
}

/// Brillouin function `B_j(x)`.
pub fn brillouin(spin: SpinJ, x: f64) -> f64 {
    let tj = f64::from(spin.twice_j());
    let outer = (tj + 1.0) / tj;
    let inner = 1.0 / tj;
    // The 1/x poles of the two coth terms cancel exactly.
    outer * coth_minus_inverse(outer * x) - inner * coth_minus_inverse(inner * x)
}

/// Langevin function `L(x) = coth x - 1/x`.
pub fn langevin(x: f64) -> f64 {
    coth_minus_inverse(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::block_spectrum;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn spin(tj: u32) -> SpinJ {
        SpinJ::from_twice(tj).unwrap()
    }

    #[test]
    fn xxx_half_levels() {
        let h = xxx_hamiltonian(spin(1), 1.0, true);
        let e1 = 1.0 / (2.0 * 3f64.sqrt());
        let e2 = -(3f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(h.e_first(), e1, epsilon = 1e-15);
        assert_abs_diff_eq!(h.e_last(), e1, epsilon = 1e-15);
        let s = h.spectra()[0];
        assert_abs_diff_eq!(s.e_plus, e1, epsilon = 1e-15);
        assert_abs_diff_eq!(s.e_minus, e2, epsilon = 1e-15);
        assert_abs_diff_eq!(e1, 0.288675134594813, epsilon = 1e-12);
        assert_abs_diff_eq!(e2, -0.866025403784439, epsilon = 1e-12);
    }

    #[test]
    fn xxx_zero_coupling_is_zero() {
        let h = xxx_hamiltonian(spin(3), 0.0, true);
        assert_eq!(h.max_abs_entry(), 0.0);
    }

    #[test]
    fn xxx_spin_one_offdiagonal() {
        let h = xxx_hamiltonian(spin(2), 1.0, true);
        assert_abs_diff_eq!(h.blocks()[0].g, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn xxz_without_transverse_is_diagonal() {
        let h = xxz_hamiltonian(spin(5), 1.3, 0.0);
        assert!(h.blocks().iter().all(|b| b.g == 0.0));
    }

    #[test]
    fn xxz_half_splitting() {
        // The J_z part of the splitting, (2k-2j-1)J_z, vanishes for j = 1/2.
        let h = xxz_hamiltonian(spin(1), 1.0, 0.9);
        assert_abs_diff_eq!(h.spectra()[0].r, 1.8, epsilon = 1e-15);
        let h = xxz_hamiltonian(spin(2), 1.0, 0.9);
        assert_abs_diff_eq!(
            h.spectra()[0].r,
            (1.0f64 + 4.0 * 2.0 * 0.81).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn xxz_splitting_matches_closed_form() {
        for tj in 1..10u32 {
            let s = spin(tj);
            let j = s.j();
            let (jz, jxy) = (0.7, -1.3);
            for (i, sp) in xxz_hamiltonian(s, jz, jxy).spectra().iter().enumerate() {
                let k = (i + 1) as f64;
                let r = ((2.0 * k - 2.0 * j - 1.0).powi(2) * jz * jz
                    + 4.0 * k * (2.0 * j - k + 1.0) * jxy * jxy)
                    .sqrt();
                assert_abs_diff_eq!(sp.r, r, epsilon = 1e-12);
                assert_abs_diff_eq!(sp.e_plus, 0.5 * (-jz + r), epsilon = 1e-12);
                assert_abs_diff_eq!(sp.e_minus, 0.5 * (-jz - r), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn xxz_isotropic_equals_unnormalized_xxx() {
        let s = spin(2);
        let xxz = xxz_hamiltonian(s, 1.0, 1.0);
        // Unnormalised XXX is J₀ S·σ = 2 J₀ S·s; with J₀ = 1 it is XXZ(1, 1).
        let xxx = xxx_hamiltonian(s, 1.0, false);
        assert_eq!(xxz, xxx);
        assert_eq!(xxz.blocks()[0].h_prime, 0.0);
        assert_abs_diff_eq!(xxz.blocks()[0].g, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn field_free_reduction() {
        for tj in 1..7 {
            assert_eq!(
                xxz_field_hamiltonian(spin(tj), 0.4, 1.1, 0.0, 0.0),
                xxz_hamiltonian(spin(tj), 0.4, 1.1)
            );
        }
    }

    #[test]
    fn field_entries_half() {
        let h = xxz_field_hamiltonian(spin(1), 1.0, 1.1, 0.2, 0.0);
        assert_abs_diff_eq!(h.e_first(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(h.e_last(), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(h.blocks()[0].h, -0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(h.blocks()[0].h_prime, -0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(h.blocks()[0].g, 1.1, epsilon = 1e-15);
    }

    #[test]
    fn field_reversal_maps_to_spin_flipped_image() {
        for tj in 1..8u32 {
            let s = spin(tj);
            let h = xxz_field_hamiltonian(s, 0.8, 1.1, 0.3, -0.7);
            let r = xxz_field_hamiltonian(s, 0.8, 1.1, -0.3, 0.7);
            assert_abs_diff_eq!(h.e_first(), r.e_last(), epsilon = 1e-14);
            assert_abs_diff_eq!(h.e_last(), r.e_first(), epsilon = 1e-14);
            let n = s.num_blocks();
            for k in 0..n {
                let mirror = &r.blocks()[n - 1 - k];
                assert_abs_diff_eq!(h.blocks()[k].h, mirror.h_prime, epsilon = 1e-14);
                assert_abs_diff_eq!(h.blocks()[k].h_prime, mirror.h, epsilon = 1e-14);
                assert_abs_diff_eq!(h.blocks()[k].g, mirror.g, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn block_spectrum_agrees_with_builder() {
        let h = xxz_field_hamiltonian(spin(4), 1.0, 0.3, 0.2, 0.1);
        for (b, s) in h.blocks().iter().zip(h.spectra()) {
            assert_eq!(block_spectrum(b.h, b.h_prime, b.g).unwrap(), s);
        }
    }

    #[test]
    fn brillouin_half_is_tanh() {
        assert_abs_diff_eq!(brillouin(SpinJ::HALF, 1.0), 1f64.tanh(), epsilon = 1e-14);
        assert_abs_diff_eq!(
            brillouin(SpinJ::HALF, 1.0),
            0.761594155955765,
            epsilon = 1e-12
        );
        for x in [-3.0, -0.5, 1e-5, 1e-3, 0.2, 7.0] {
            assert_abs_diff_eq!(brillouin(SpinJ::HALF, x), x.tanh(), epsilon = 1e-13);
        }
    }

    #[test]
    fn brillouin_and_langevin_vanish_at_origin() {
        assert_eq!(brillouin(spin(7), 0.0), 0.0);
        assert_eq!(langevin(0.0), 0.0);
    }

    #[test]
    fn large_spin_approaches_langevin() {
        let l1 = 1.0 / 1f64.tanh() - 1.0;
        assert_abs_diff_eq!(langevin(1.0), l1, epsilon = 1e-15);
        assert_abs_diff_eq!(l1, 0.313035285499331, epsilon = 1e-12);
        assert!((brillouin(spin(2000), 1.0) - l1).abs() < 1e-3);
    }

    #[test]
    fn small_argument_slope() {
        // B_j(x) ≈ (j+1)x/(3j) near the origin.
        for tj in [1u32, 2, 5, 40] {
            let s = spin(tj);
            let j = s.j();
            let x = 1e-6;
            assert_abs_diff_eq!(brillouin(s, x) / x, (j + 1.0) / (3.0 * j), epsilon = 1e-9);
        }
        assert_abs_diff_eq!(langevin(1e-6) / 1e-6, 1.0 / 3.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn brillouin_odd_monotone_bounded(tj in 1u32..200, x in 0.0f64..5.0, dx in 1e-3f64..1.0) {
            let s = spin(tj);
            let b = brillouin(s, x);
            prop_assert!((b + brillouin(s, -x)).abs() < 1e-14);
            prop_assert!(brillouin(s, x + dx) > b);
            prop_assert!(b.abs() <= 1.0);
            let l = langevin(x);
            prop_assert!((l + langevin(-x)).abs() < 1e-14);
            prop_assert!(langevin(x + dx) > l);
            prop_assert!(l.abs() <= 1.0);
        }
    }
}
