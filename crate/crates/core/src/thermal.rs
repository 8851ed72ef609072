//! Partition function, Gibbs state and zero-temperature limit of an
//! [`AxialHamiltonian`].
//!
//! Every Boltzmann factor is formed relative to the global minimum energy,
//! so no exponent is ever positive and nothing overflows at low temperature.

use crate::axial::{AxialDensityMatrix, AxialHamiltonian, DensityBlock};
use crate::error::{invalid_argument, Result};

/// Relative tolerance for membership in the ground manifold.
pub const DEFAULT_TIE_TOL: f64 = 1e-12;

/// Temperature in energy units; strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(invalid_argument(format!(
                "temperature must be positive and finite, got {t}"
            )));
        }
        Ok(Self(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionFunction {
    /// `ln Z`.
    pub ln_z: f64,
    /// `Z · exp(E_min/T)`, i.e. the sum of shifted Boltzmann factors (≥ 1).
    pub shifted: f64,
    pub e_min: f64,
}

impl PartitionFunction {
    /// `Z` itself; overflows to infinity when `-E_min/T` is large.
    pub fn z(&self) -> f64 {
        self.ln_z.exp()
    }
}

/// Shifted Boltzmann data for one block.
struct BlockWeights {
    /// `exp(-(E⁽¹⁾ - E_min)/T)`.
    upper: f64,
    /// `exp(-(E⁽²⁾ - E_min)/T)`.
    lower: f64,
    /// `sinh(R/2T) e^{-(h+h')/2T} / R` shifted; tends to `lower/(2T)` as R → 0.
    sinh_over_r: f64,
}

fn block_weights(h: &AxialHamiltonian, t: f64, e_min: f64) -> Vec<BlockWeights> {
    h.spectra()
        .iter()
        .map(|s| {
            let lower = (-(s.e_minus - e_min) / t).exp();
            let upper = (-(s.e_plus - e_min) / t).exp();
            let gap = -(-s.r / t).exp_m1();
            let sinh_over_r = if s.r > 0.0 {
                lower * gap / (2.0 * s.r)
            } else {
                lower / (2.0 * t)
            };
            BlockWeights {
                upper,
                lower,
                sinh_over_r,
            }
        })
        .collect()
}

pub fn partition_function(h: &AxialHamiltonian, t: Temperature) -> Result<PartitionFunction> {
    let t = t.value();
    let e_min = h.min_energy();
    let edges = (-(h.e_first() - e_min) / t).exp() + (-(h.e_last() - e_min) / t).exp();
    let shifted = edges
        + block_weights(h, t, e_min)
            .iter()
            .map(|w| w.upper + w.lower)
            .sum::<f64>();
    Ok(PartitionFunction {
        ln_z: shifted.ln() - e_min / t,
        shifted,
        e_min,
    })
}

/// `exp(-H/T)/Z` in block form.
pub fn gibbs_state(h: &AxialHamiltonian, t: Temperature) -> Result<AxialDensityMatrix> {
    let z = partition_function(h, t)?;
    let t = t.value();
    let inv_z = 1.0 / z.shifted;
    let blocks = h
        .blocks()
        .iter()
        .zip(block_weights(h, t, z.e_min))
        .map(|(blk, w)| {
            let cosh_part = 0.5 * (w.upper + w.lower);
            let tilt = (blk.h_prime - blk.h) * w.sinh_over_r;
            let out = DensityBlock {
                a: (cosh_part + tilt) * inv_z,
                b: (cosh_part - tilt) * inv_z,
                u: -2.0 * blk.g * w.sinh_over_r * inv_z,
            };
            fit_det(out, (w.upper * inv_z) * (w.lower * inv_z))
        })
        .collect();
    AxialDensityMatrix::new(
        h.spin(),
        (-(h.e_first() - z.e_min) / t).exp() * inv_z,
        (-(h.e_last() - z.e_min) / t).exp() * inv_z,
        blocks,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    /// Equal-weight mixture over the ground manifold.
    pub state: AxialDensityMatrix,
    /// Number of degenerate ground levels merged into `state`.
    pub degeneracy: usize,
    pub energy: f64,
}

/// Eigenvector weights `(x₁², x₂², x₁x₂)` of the upper (`upper = true`) or
/// lower eigenvalue of `[[h, g], [g, h']]`.
fn block_vector(h: f64, h_prime: f64, g: f64, upper: bool) -> (f64, f64, f64) {
    let d = h - h_prime;
    let r = d.hypot(2.0 * g);
    if r == 0.0 {
        return if upper {
            (1.0, 0.0, 0.0)
        } else {
            (0.0, 1.0, 0.0)
        };
    }
    let big = (r + d.abs()) / (2.0 * r);
    let small = 2.0 * g * g / (r * (r + d.abs()));
    // Upper vector leans towards the larger diagonal entry.
    let first_big = (d >= 0.0) == upper;
    let (x1, x2) = if first_big {
        (big, small)
    } else {
        (small, big)
    };
    let cross = if upper { g / r } else { -g / r };
    (x1, x2, cross)
}

/// Moves |u| by a few ulps to the largest stored determinant not above
/// `target`, the exact `p·q` of the block. Near-pure blocks otherwise carry a
/// determinant of pure rounding noise, whose square root enters the LQU.
fn fit_det(mut blk: DensityBlock, target: f64) -> DensityBlock {
    const MAX_STEPS: usize = 8;
    if blk.u == 0.0 {
        return blk;
    }
    let sign = blk.u.signum();
    let with = |mag: f64| DensityBlock {
        u: sign * mag,
        ..blk
    };
    let mut mag = blk.u.abs();
    if blk.det() > target {
        for _ in 0..MAX_STEPS {
            mag = mag.next_up();
            if with(mag).det() <= target {
                break;
            }
        }
    } else {
        for _ in 0..MAX_STEPS {
            let smaller = mag.next_down();
            if with(smaller).det() > target {
                break;
            }
            mag = smaller;
        }
    }
    blk.u = sign * mag;
    blk
}

/// T → 0 limit of the Gibbs state: the maximally mixed state on the ground
/// manifold. Levels within `tie_tol·(1+|E_min|)` of the minimum are merged.
pub fn ground_state(h: &AxialHamiltonian, tie_tol: f64) -> GroundState {
    let spectra = h.spectra();
    let e_min = h.min_energy();
    let window = tie_tol * (1.0 + e_min.abs());
    let in_ground = |e: f64| e - e_min <= window;

    let first = in_ground(h.e_first());
    let last = in_ground(h.e_last());
    let mut degeneracy = usize::from(first) + usize::from(last);
    let slots: Vec<(bool, bool)> = spectra
        .iter()
        .map(|s| (in_ground(s.e_plus), in_ground(s.e_minus)))
        .collect();
    degeneracy += slots
        .iter()
        .map(|&(up, lo)| usize::from(up) + usize::from(lo))
        .sum::<usize>();
    let weight = 1.0 / degeneracy as f64;

    let blocks = h
        .blocks()
        .iter()
        .zip(&slots)
        .map(|(blk, &(up, lo))| {
            let mut out = DensityBlock {
                a: 0.0,
                b: 0.0,
                u: 0.0,
            };
            for (present, upper) in [(up, true), (lo, false)] {
                if present {
                    let (x1, x2, cross) = block_vector(blk.h, blk.h_prime, blk.g, upper);
                    out.a += weight * x1;
                    out.b += weight * x2;
                    out.u += weight * cross;
                }
            }
            if up != lo {
                fit_det(out, 0.0)
            } else {
                out
            }
        })
        .collect();
    let state = AxialDensityMatrix::new(
        h.spin(),
        if first { weight } else { 0.0 },
        if last { weight } else { 0.0 },
        blocks,
    )
    .expect("block count taken from the Hamiltonian");
    GroundState {
        state,
        degeneracy,
        energy: e_min,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::{validate_density, SpinJ, DEFAULT_TOL};
    use crate::models::{xxx_hamiltonian, xxz_field_hamiltonian, xxz_hamiltonian};
    use approx::assert_abs_diff_eq;

    fn spin(tj: u32) -> SpinJ {
        SpinJ::from_twice(tj).unwrap()
    }

    fn temp(t: f64) -> Temperature {
        Temperature::new(t).unwrap()
    }

    #[test]
    fn non_positive_temperature_rejected() {
        assert!(Temperature::new(0.0).is_err());
        assert!(Temperature::new(-1.0).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
    }

    #[test]
    fn infinite_temperature_counts_states() {
        for tj in 1..6 {
            let h = xxz_field_hamiltonian(spin(tj), 0.7, 1.2, 0.3, -0.2);
            let t = 1e9 * h.max_abs_entry();
            let z = partition_function(&h, temp(t)).unwrap();
            let n = spin(tj).total_dim() as f64;
            assert!((z.z() - n).abs() / n < 1e-6);
        }
    }

    #[test]
    fn xxx_half_partition_function() {
        let z = partition_function(&xxx_hamiltonian(SpinJ::HALF, 1.0, true), temp(1.0)).unwrap();
        let e1 = 1.0 / (2.0 * 3f64.sqrt());
        let e2 = 3f64.sqrt() / 2.0;
        let expected = 3.0 * (-e1).exp() + e2.exp();
        assert_abs_diff_eq!(z.z(), expected, epsilon = 1e-13);
        assert_abs_diff_eq!(z.z(), 4.625209, epsilon = 1e-6);
    }

    #[test]
    fn xxz_partition_function_even_in_transverse_coupling() {
        for tj in 1..8 {
            let a = partition_function(&xxz_hamiltonian(spin(tj), 0.8, 1.3), temp(0.4)).unwrap();
            let b = partition_function(&xxz_hamiltonian(spin(tj), 0.8, -1.3), temp(0.4)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn low_temperature_does_not_overflow() {
        let h = xxx_hamiltonian(SpinJ::HALF, 1.0, true);
        let z = partition_function(&h, temp(1e-4)).unwrap();
        assert!(z.ln_z.is_finite());
        let rho = gibbs_state(&h, temp(1e-4)).unwrap();
        assert!(validate_density(&rho, DEFAULT_TOL).is_valid());
    }

    #[test]
    fn uncoupled_degenerate_blocks_are_diagonal() {
        let h = xxz_field_hamiltonian(spin(4), 0.0, 0.0, 0.0, 0.0);
        let rho = gibbs_state(&h, temp(0.7)).unwrap();
        for blk in rho.blocks() {
            assert_eq!(blk.u, 0.0);
            assert_eq!(blk.a, blk.b);
        }
    }

    #[test]
    fn xxx_gibbs_matches_closed_form_entries() {
        let s = spin(2);
        let t = 0.5;
        let j = s.j();
        let w = ((2.0 * j + 1.0) / (2.0 * t * (j * (j + 1.0)).sqrt())).exp();
        assert_abs_diff_eq!(w, 8.342145, epsilon = 1e-6);
        let rho = gibbs_state(&xxx_hamiltonian(s, 1.0, true), temp(t)).unwrap();
        let den = 2.0 * (2.0 * j + 1.0) * (1.0 + j * (1.0 + w));
        for (i, blk) in rho.blocks().iter().enumerate() {
            let k = (i + 1) as f64;
            let a = (k + (2.0 * j + 1.0 - k) * w) / den;
            let b = (k / (2.0 * j + 1.0) + (j - k) / (1.0 + j * (1.0 + w))) / (2.0 * j);
            let u = (w - 1.0) * (k * (2.0 * j + 1.0 - k)).sqrt() / den;
            assert_abs_diff_eq!(blk.a, a, epsilon = 1e-14);
            assert_abs_diff_eq!(blk.b, b, epsilon = 1e-14);
            // Sign convention of the off-diagonal follows exp(-H/T) (negative for J₀ > 0).
            assert_abs_diff_eq!(blk.u, -u, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(rho.p_first(), (2.0 * j + 1.0) / den, epsilon = 1e-14);
    }

    #[test]
    fn gibbs_eigenvalues_equal_boltzmann_weights() {
        for tj in 1..12 {
            let h = xxz_field_hamiltonian(spin(tj), -0.6, 1.1, 0.25, 0.4);
            let t = temp(0.3);
            let z = partition_function(&h, t).unwrap();
            let rho = gibbs_state(&h, t).unwrap();
            for (eig, s) in rho.block_eigens().iter().zip(h.spectra()) {
                let p = (-(s.e_minus - z.e_min) / 0.3).exp() / z.shifted;
                let q = (-(s.e_plus - z.e_min) / 0.3).exp() / z.shifted;
                assert_abs_diff_eq!(eig.p, p, epsilon = 1e-10);
                assert_abs_diff_eq!(eig.q, q, epsilon = 1e-10);
            }
            assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn xxx_singlet_ground_state() {
        let g = ground_state(&xxx_hamiltonian(SpinJ::HALF, 1.0, true), DEFAULT_TIE_TOL);
        assert_eq!(g.degeneracy, 1);
        let blk = g.state.blocks()[0];
        assert_abs_diff_eq!(blk.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(blk.b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(blk.u, -0.5, epsilon = 1e-15);
        assert_eq!(g.state.p_first(), 0.0);
        assert_eq!(g.state.p_last(), 0.0);
        assert!(blk.det() <= 0.0);
    }

    #[test]
    fn xxx_ferro_spin_one_ground_state() {
        let g = ground_state(&xxx_hamiltonian(spin(2), -1.0, true), DEFAULT_TIE_TOL);
        assert_eq!(g.degeneracy, 4);
        assert_abs_diff_eq!(g.state.p_first(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(g.state.p_last(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(g.state.blocks()[0].a, 1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.state.blocks()[1].a, 2.0 / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn xxx_ground_state_matches_zero_temperature_entries() {
        for tj in 1..12u32 {
            let s = spin(tj);
            let j = s.j();
            for j0 in [1.0, -1.0] {
                let g = ground_state(&xxx_hamiltonian(s, j0, true), DEFAULT_TIE_TOL);
                let expected_d = if j0 > 0.0 {
                    tj as usize
                } else {
                    tj as usize + 2
                };
                assert_eq!(g.degeneracy, expected_d);
                for (i, blk) in g.state.blocks().iter().enumerate() {
                    let k = (i + 1) as f64;
                    let root = (k * (2.0 * j + 1.0 - k)).sqrt();
                    // Off-diagonal sign follows exp(-H/T): opposite to the coupling.
                    let (a, b, u) = if j0 > 0.0 {
                        let d = 2.0 * j * (2.0 * j + 1.0);
                        ((2.0 * j + 1.0 - k) / d, k / d, -root / d)
                    } else {
                        let d = 2.0 * (j + 1.0) * (2.0 * j + 1.0);
                        (k / d, (2.0 * j + 1.0 - k) / d, root / d)
                    };
                    assert_abs_diff_eq!(blk.a, a, epsilon = 1e-14);
                    assert_abs_diff_eq!(blk.b, b, epsilon = 1e-14);
                    assert_abs_diff_eq!(blk.u, u, epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn integer_spin_xxz_ground_is_doubly_degenerate() {
        // |J| > |J_z|: blocks k = j and k = j+1 share the lowest level.
        assert_eq!(
            ground_state(&xxz_hamiltonian(spin(4), 1.0, 1.1), DEFAULT_TIE_TOL).degeneracy,
            2
        );
        assert_eq!(
            ground_state(&xxz_hamiltonian(spin(5), 1.0, 1.1), DEFAULT_TIE_TOL).degeneracy,
            1
        );
    }

    #[test]
    fn ground_state_is_cold_gibbs_limit() {
        let hams = [
            xxx_hamiltonian(spin(3), 1.0, true),
            xxx_hamiltonian(spin(4), -1.0, true),
            xxz_hamiltonian(spin(4), 1.0, 1.1),
            xxz_hamiltonian(spin(3), 1.0, 0.9),
            xxz_field_hamiltonian(spin(5), 1.0, 1.1, 0.2, 0.0),
            xxz_field_hamiltonian(spin(2), 1.0, 1.0, -0.5, 0.3),
        ];
        for h in &hams {
            let g = ground_state(h, DEFAULT_TIE_TOL);
            let mut levels: Vec<f64> = h
                .spectra()
                .iter()
                .flat_map(|s| [s.e_plus, s.e_minus])
                .chain([h.e_first(), h.e_last()])
                .collect();
            levels.sort_by(f64::total_cmp);
            let window = DEFAULT_TIE_TOL * (1.0 + g.energy.abs());
            let gap = levels
                .iter()
                .find(|&&e| e - g.energy > window)
                .map(|e| e - g.energy)
                .unwrap();
            let cold = gibbs_state(h, temp(1e-6 * gap)).unwrap();
            let close = |a: f64, b: f64| (a - b).abs() < 1e-4;
            assert!(close(cold.p_first(), g.state.p_first()));
            assert!(close(cold.p_last(), g.state.p_last()));
            for (x, y) in cold.blocks().iter().zip(g.state.blocks()) {
                assert!(close(x.a, y.a) && close(x.b, y.b) && close(x.u, y.u));
            }
            // Cooling further moves the Gibbs state monotonically towards the limit.
            let dist = |t: f64| {
                let rho = gibbs_state(h, temp(t)).unwrap();
                rho.blocks()
                    .iter()
                    .zip(g.state.blocks())
                    .map(|(x, y)| (x.a - y.a).abs() + (x.b - y.b).abs() + (x.u - y.u).abs())
                    .sum::<f64>()
                    + (rho.p_first() - g.state.p_first()).abs()
                    + (rho.p_last() - g.state.p_last()).abs()
            };
            assert!(dist(0.02 * gap) < dist(0.2 * gap));
        }
    }
}
