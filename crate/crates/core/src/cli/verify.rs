//! Randomised cross-checks of the closed forms against the dense oracle.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axial::{AxialDensityMatrix, SpinJ};
use crate::correlations::{branch_f1, branch_f1_expanded, correlations, Branch};
use crate::error::Result;
use crate::models::ModelParams;
use crate::oracle::sampling::{random_axial_state, random_model, random_temperature};
use crate::oracle::{
    dense_gibbs, expand, oracle_lqfi, oracle_lqu, qfi, sz_commutator, variance, wigner_yanase,
    BlochVector, Observable,
};
use crate::su2::{self, SU2State};
use crate::thermal::{gibbs_state, Temperature};

const T_LO: f64 = 0.05;
const T_HI: f64 = 20.0;
/// Branch gaps below this are treated as ties when comparing minimising axes.
const TIE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub max_two_j: u32,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_two_j: 6,
            samples: 50,
            tol: 1e-8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    /// Largest deviation seen; boolean checks count as 0 or 1.
    pub worst: f64,
    pub tol: f64,
    pub checks: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.worst <= self.tol
    }
}

struct Suite {
    name: &'static str,
    worst: f64,
    checks: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            worst: 0.0,
            checks: 0,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.checks += 1;
        // NaN counts as a failure.
        if deviation.is_nan() {
            self.worst = f64::INFINITY;
        } else if deviation > self.worst {
            self.worst = deviation;
        }
    }

    fn report(self, tol: f64) -> SuiteReport {
        SuiteReport {
            name: self.name,
            worst: self.worst,
            tol,
            checks: self.checks,
        }
    }
}

fn random_spin(rng: &mut ChaCha8Rng, max_two_j: u32) -> SpinJ {
    SpinJ::from_twice(rng.gen_range(1..=max_two_j)).expect("2j >= 1")
}

fn random_gibbs(
    rng: &mut ChaCha8Rng,
    cfg: &VerifyConfig,
) -> Result<(ModelParams, SpinJ, Temperature, AxialDensityMatrix)> {
    let model = random_model(rng);
    let spin = random_spin(rng, cfg.max_two_j);
    let t = random_temperature(rng, T_LO, T_HI);
    let rho = gibbs_state(&model.hamiltonian(spin), t)?;
    Ok((model, spin, t, rho))
}

fn block_identities(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("block identities");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let rho = random_axial_state(rng, spin);
        s.record((branch_f1(&rho)? - branch_f1_expanded(&rho)?).abs());
        let c = correlations(&rho)?;
        s.record((c.u - c.f).max(0.0));
        s.record((-c.u).max(0.0));
        s.record((c.f - 1.0).max(0.0));
    }
    Ok(s)
}

/// Not an identity: reports the largest excess of LQFI over twice the LQU.
fn lqfi_twice_lqu(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("lqfi <= 2 lqu");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let rho = random_axial_state(rng, spin);
        let c = correlations(&rho)?;
        s.record((c.f - 2.0 * c.u).max(0.0));
        let (_, _, _, rho) = random_gibbs(rng, cfg)?;
        let c = correlations(&rho)?;
        s.record((c.f - 2.0 * c.u).max(0.0));
    }
    Ok(s)
}

fn gibbs_vs_dense(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("gibbs state vs dense exponential");
    for _ in 0..cfg.samples {
        let (model, spin, t, rho) = random_gibbs(rng, cfg)?;
        let dense = dense_gibbs(&expand(&model.hamiltonian(spin)), t)?;
        s.record(expand(&rho).sub(&dense).max_abs());
    }
    Ok(s)
}

fn against_oracle(s: &mut Suite, rho: &AxialDensityMatrix) -> Result<()> {
    let c = correlations(rho)?;
    let d = expand(rho);
    let lqu = oracle_lqu(&d)?;
    let lqfi = oracle_lqfi(&d)?;
    s.record((c.u - lqu.matrix).abs());
    s.record((c.u - lqu.sphere).abs());
    s.record((c.f - lqfi.matrix).abs());
    s.record((c.f - lqfi.sphere).abs());
    for (zero, one, branch, oracle) in [
        (c.u0, c.u1, c.active_branch_u, lqu),
        (c.f0, c.f1, c.active_branch_f, lqfi),
    ] {
        if (zero - one).abs() > TIE_MARGIN {
            let axial = branch == Branch::Zero;
            s.record(if axial == oracle.axial { 0.0 } else { 1.0 });
        }
    }
    Ok(())
}

fn oracle_gibbs(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("closed forms vs oracle (gibbs states)");
    for _ in 0..cfg.samples {
        let (_, _, _, rho) = random_gibbs(rng, cfg)?;
        against_oracle(&mut s, &rho)?;
    }
    Ok(s)
}

fn oracle_random(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("closed forms vs oracle (random axial states)");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let rho = random_axial_state(rng, spin);
        against_oracle(&mut s, &rho)?;
    }
    Ok(s)
}

fn xxx_branches(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("xxx closed forms vs general branches");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let j0 = rng.gen_range(-1.5..1.5);
        let t = random_temperature(rng, T_LO, T_HI);
        let model = ModelParams::Xxx {
            j0,
            normalized: true,
        };
        let c = correlations(&gibbs_state(&model.hamiltonian(spin), t)?)?;
        let (f, u) = su2::xxx_correlations_closed(spin, j0, t);
        s.record((f - c.f).abs());
        s.record((u - c.u).abs());
    }
    Ok(s)
}

fn su2_family(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("su2 family");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let j0 = rng.gen_range(-1.5..1.5);
        let t = random_temperature(rng, T_LO, T_HI);
        let state = su2::su2_f_from_exponent(spin, su2::xxx_exponent(spin, j0, t, true));
        let (f, u) = su2::xxx_correlations_closed(spin, j0, t);
        s.record((su2::lqfi_su2(&state) - f).abs());
        s.record((su2::lqu_su2(&state) - u).abs());
        let g = rng.gen_range(0.0..=1.0);
        let st = SU2State::new(spin, g)?;
        s.record((-su2::negativity(&st)).max(0.0));
        s.record((su2::eof(&st) - 1.0).max(0.0));
        s.record((-su2::discord(&st)).max(0.0));
        s.record((su2::lqu_su2(&st) - su2::lqfi_su2(&st)).max(0.0));
    }
    Ok(s)
}

fn sz_symmetry(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("conserved total Sz");
    for _ in 0..cfg.samples {
        let (model, spin, t, _) = random_gibbs(rng, cfg)?;
        let dense = dense_gibbs(&expand(&model.hamiltonian(spin)), t)?;
        s.record(sz_commutator(&dense, spin));
    }
    Ok(s)
}

fn information_ordering(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Suite> {
    let mut s = Suite::new("skew information <= fisher <= variance");
    for _ in 0..cfg.samples {
        let spin = random_spin(rng, cfg.max_two_j);
        let rho = random_axial_state(rng, spin);
        let d = expand(&rho);
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let h = Observable::local(d.dim(), BlochVector::from_angles(theta, phi));
        let (wy, q, var) = (wigner_yanase(&d, &h)?, qfi(&d, &h)?, variance(&d, &h)?);
        s.record((wy - q).max(0.0));
        s.record((q - var).max(0.0));
    }
    Ok(s)
}

type SuiteFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<Suite>;

const SUITES: [SuiteFn; 9] = [
    block_identities,
    lqfi_twice_lqu,
    gibbs_vs_dense,
    oracle_gibbs,
    oracle_random,
    xxx_branches,
    su2_family,
    sz_symmetry,
    information_ordering,
];

/// Runs every suite with its own seeded generator.
pub fn verify_reports(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    if cfg.max_two_j == 0 {
        return Err(crate::error::invalid_argument(
            "--max-two-j must be at least 1",
        ));
    }
    if cfg.tol.is_nan() || cfg.tol < 0.0 {
        return Err(crate::error::invalid_argument("--tol must be non-negative"));
    }
    SUITES
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            Ok(suite(cfg, &mut rng)?.report(cfg.tol))
        })
        .collect()
}

/// Prints one line per suite and a summary; returns whether all passed.
pub fn run_verify(cfg: &VerifyConfig, out: &mut dyn Write) -> Result<bool> {
    let reports = verify_reports(cfg)?;
    for r in &reports {
        writeln!(
            out,
            "{} {}: worst {:.3e} (tol {:.1e}, {} checks)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            r.worst,
            r.tol,
            r.checks
        )?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(
        out,
        "{} of {} suites passed",
        reports.len() - failed,
        reports.len()
    )?;
    Ok(failed == 0)
}
