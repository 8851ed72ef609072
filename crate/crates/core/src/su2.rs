//! SU(2)-invariant qubit-qudit states, parametrised by the single weight `F`
//! of the total-spin `j+1/2` multiplet, and the measures that have closed
//! forms on them.
//!
//! Thermal states of the XXX model belong to this family. There `F` depends
//! only on the exponent `x = (2j+1)c/T`, with `c` the coupling scale of the
//! Hamiltonian. All XXX routines below work with `x` so that neither `e^x` nor
//! `e^-x` is formed when it would overflow.

use crate::axial::SpinJ;
use crate::error::{invalid_argument, Result};
use crate::models::xxx_scale;
use crate::thermal::Temperature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2State {
    f_param: f64,
    /// `1 - F`, kept separately so that it stays accurate as F → 1.
    complement: f64,
    spin: SpinJ,
}

impl SU2State {
    pub fn new(spin: SpinJ, f_param: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f_param) {
            return Err(invalid_argument(format!(
                "F must lie in [0, 1], got {f_param}"
            )));
        }
        Ok(Self {
            f_param,
            complement: 1.0 - f_param,
            spin,
        })
    }

    pub fn f_param(&self) -> f64 {
        self.f_param
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    /// `j/(2j+1)`, the value at infinite temperature.
    pub fn f_c(&self) -> f64 {
        let j = self.spin.j();
        j / (2.0 * j + 1.0)
    }
}

/// Boltzmann exponent `ln w = (2j+1)c/T` of the XXX model.
pub fn xxx_exponent(spin: SpinJ, j0: f64, t: Temperature, normalized: bool) -> f64 {
    let c = if normalized { xxx_scale(spin, j0) } else { j0 };
    (2.0 * spin.j() + 1.0) * c / t.value()
}

/// `F = jw/(1+j+jw)` with `w = e^x`.
pub fn su2_f_from_exponent(spin: SpinJ, x: f64) -> SU2State {
    let j = spin.j();
    let (f, complement) = if x > 0.0 {
        let v = (1.0 + j) * (-x).exp();
        (j / (v + j), v / (v + j))
    } else {
        let jw = j * x.exp();
        (jw / (1.0 + j + jw), (1.0 + j) / (1.0 + j + jw))
    };
    SU2State {
        f_param: f,
        complement,
        spin,
    }
}

/// `F` of the thermal state of the normalised XXX model.
pub fn su2_f_from_thermal(spin: SpinJ, j0: f64, t: Temperature) -> SU2State {
    su2_f_from_exponent(spin, xxx_exponent(spin, j0, t, true))
}

/// Double negativity `max(0, 2(F - 2j/(2j+1)))`.
pub fn negativity(s: &SU2State) -> f64 {
    let j = s.spin.j();
    (2.0 * (s.f_param - 2.0 * j / (2.0 * j + 1.0))).max(0.0)
}

/// `-x log₂x - (1-x) log₂(1-x)`, zero at both ends.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Entanglement of formation.
pub fn eof(s: &SU2State) -> f64 {
    let j = s.spin.j();
    let f = s.f_param;
    if f <= 2.0 * j / (2.0 * j + 1.0) {
        return 0.0;
    }
    let d = f.sqrt() - (2.0 * j * s.complement).sqrt();
    binary_entropy(d * d / (2.0 * j + 1.0))
}

/// Eigenvalues entering the conditional entropy of the discord. For integer
/// `j` the `n = j` pair collapses to a single value, so there are always
/// `2j+1` of them and they sum to one.
pub fn discord_eigenvalues(s: &SU2State) -> Vec<f64> {
    let j = s.spin.j();
    let two_j = s.spin.twice_j();
    let base = 1.0 / (2.0 * j + 1.0);
    let spread = ((2.0 * j + 1.0) * s.f_param - j).abs() / (j * (j + 1.0) * (2.0 * j + 1.0));
    let mut out = Vec::with_capacity(two_j as usize + 1);
    for n in 0..=two_j / 2 {
        let offset = (j - f64::from(n)) * spread;
        if 2 * n == two_j {
            out.push(base);
        } else {
            out.push(base + offset);
            out.push(base - offset);
        }
    }
    out
}

fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Entropic quantum discord with the measurement on the qubit.
pub fn discord(s: &SU2State) -> f64 {
    let j = s.spin.j();
    let (f, g) = (s.f_param, s.complement);
    let head = 1.0 + xlog2x(f) - f * (2.0 * j).log2() + xlog2x(g) - g * (2.0 * j + 2.0).log2();
    head - discord_eigenvalues(s).into_iter().map(xlog2x).sum::<f64>()
}

/// LQU as a function of `F`.
pub fn lqu_su2(s: &SU2State) -> f64 {
    let j = s.spin.j();
    let d = (s.f_param / (2.0 * j)).sqrt() - (s.complement / (2.0 * (j + 1.0))).sqrt();
    8.0 * j * (j + 1.0) / (3.0 * (2.0 * j + 1.0)) * d * d
}

/// LQFI as a function of `F`.
pub fn lqfi_su2(s: &SU2State) -> f64 {
    let j = s.spin.j();
    let f = s.f_param;
    let d = j - (2.0 * j + 1.0) * f;
    4.0 / 3.0 * d * d / ((2.0 * j + 1.0) * (j + f))
}

/// LQFI and LQU of the XXX thermal state with exponent `x`, written directly
/// in `w` (or `1/w`) rather than through `F`.
pub fn xxx_correlations_from_exponent(spin: SpinJ, x: f64) -> (f64, f64) {
    let j = spin.j();
    let pre = 4.0 * j * (j + 1.0) / (3.0 * (2.0 * j + 1.0));
    if x > 0.0 {
        let v = (-x).exp();
        let lqfi = pre * (1.0 - v) * (1.0 - v) / (((1.0 + j) * v + j) * (1.0 + v));
        let r = 1.0 - (-0.5 * x).exp();
        let lqu = pre * r * r / (v * (1.0 + j) + j);
        (lqfi, lqu)
    } else {
        let w = x.exp();
        let lqfi = pre * (w - 1.0) * (w - 1.0) / ((1.0 + j + j * w) * (1.0 + w));
        let r = 1.0 - (0.5 * x).exp();
        let lqu = pre * r * r / (1.0 + j + j * w);
        (lqfi, lqu)
    }
}

/// `(LQFI, LQU)` of the normalised XXX model at temperature `t`.
pub fn xxx_correlations_closed(spin: SpinJ, j0: f64, t: Temperature) -> (f64, f64) {
    xxx_correlations_from_exponent(spin, xxx_exponent(spin, j0, t, true))
}

/// Temperature above which the XXX thermal state is separable.
///
/// With `normalized = false` this is the threshold in the convention that
/// drops only `sqrt(j(j+1))` from the coupling, `(2j+1)J₀/(2 ln(2j+2))`.
pub fn threshold_temperature(spin: SpinJ, j0: f64, normalized: bool) -> Result<f64> {
    if !(j0 > 0.0 && j0.is_finite()) {
        return Err(invalid_argument(
            "threshold temperature exists only for antiferromagnetic coupling J0 > 0",
        ));
    }
    let j = spin.j();
    let norm = if normalized {
        (j * (j + 1.0)).sqrt()
    } else {
        1.0
    };
    Ok((2.0 * j + 1.0) * j0 / (2.0 * norm * (2.0 * j + 2.0).ln()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxxGroundValues {
    /// LQFI, equal to LQU at zero temperature.
    pub fu: f64,
    pub eof: f64,
    pub negativity: f64,
    pub discord: f64,
}

/// Measures of the XXX ground state: `F = 1` for antiferromagnetic and
/// `F = 0` for ferromagnetic coupling.
pub fn ground_state_xxx(spin: SpinJ, ferro: bool) -> XxxGroundValues {
    let j = spin.j();
    let sign = if ferro { -1.0 } else { 1.0 };
    let f = if ferro { 0.0 } else { 1.0 };
    let s = SU2State {
        f_param: f,
        complement: 1.0 - f,
        spin,
    };
    XxxGroundValues {
        fu: 2.0 / 3.0 * (1.0 + sign / (2.0 * j + 1.0)),
        eof: eof(&s),
        negativity: negativity(&s),
        discord: discord(&s),
    }
}
