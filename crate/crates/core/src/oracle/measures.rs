use rayon::prelude::*;

use super::dense::{dense_sqrt, eigh, DenseHermitian};
use crate::error::{invalid_argument, invalid_state, Result};

const GRID_THETA: usize = 64;
const GRID_PHI: usize = 128;
const DIRECTION_TOL: f64 = 1e-10;

/// Unit vector selecting the local observable `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl BlochVector {
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        if norm.is_nan() || (norm - 1.0).abs() > 1e-12 {
            return Err(invalid_argument(format!("Bloch vector has norm {norm}")));
        }
        Ok(Self { nx, ny, nz })
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            nx: theta.sin() * phi.cos(),
            ny: theta.sin() * phi.sin(),
            nz: theta.cos(),
        }
    }

    pub fn z() -> Self {
        Self {
            nx: 0.0,
            ny: 0.0,
            nz: 1.0,
        }
    }

    fn components(&self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }
}

/// Hermitian operator `re + i·im`, `re` symmetric and `im` antisymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub re: DenseHermitian,
    pub im: DenseHermitian,
}

impl Observable {
    pub fn real(h: DenseHermitian) -> Self {
        let dim = h.dim();
        Self {
            re: h,
            im: DenseHermitian::zeros(dim),
        }
    }

    /// `I ⊗ (n·σ)` acting on the qubit factor.
    pub fn local(dim: usize, n: BlochVector) -> Self {
        let mut re = DenseHermitian::zeros(dim);
        let mut im = DenseHermitian::zeros(dim);
        for s in (0..dim).step_by(2) {
            re[(s, s)] = n.nz;
            re[(s + 1, s + 1)] = -n.nz;
            re[(s, s + 1)] = n.nx;
            re[(s + 1, s)] = n.nx;
            im[(s, s + 1)] = -n.ny;
            im[(s + 1, s)] = n.ny;
        }
        Self { re, im }
    }

    fn dim(&self) -> usize {
        self.re.dim()
    }

    /// `(Vᵀ re V, Vᵀ im V)`.
    fn rotated(&self, v: &DenseHermitian) -> (DenseHermitian, DenseHermitian) {
        let vt = v.transpose();
        (vt.matmul(&self.re).matmul(v), vt.matmul(&self.im).matmul(v))
    }
}

fn checked_spectrum(rho: &DenseHermitian) -> Result<(Vec<f64>, DenseHermitian)> {
    if (rho.trace() - 1.0).abs() > 1e-9 {
        return Err(invalid_state(format!("trace is {}", rho.trace())));
    }
    let (p, v) = eigh(rho)?;
    if p[0] < -1e-9 {
        return Err(invalid_state(format!("negative eigenvalue {:e}", p[0])));
    }
    Ok((p.into_iter().map(|x| x.max(0.0)).collect(), v))
}

fn check_dims(rho: &DenseHermitian, h: &Observable) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(invalid_argument("state and observable dimensions differ"));
    }
    Ok(())
}

/// `Σ_mn w(p_m, p_n) |H_mn|²` in the eigenbasis of ρ.
fn spectral_sum(
    p: &[f64],
    a: &DenseHermitian,
    b: &DenseHermitian,
    w: impl Fn(f64, f64) -> f64,
) -> f64 {
    let n = p.len();
    let mut s = 0.0;
    for m in 0..n {
        for k in 0..n {
            s += w(p[m], p[k]) * (a[(m, k)] * a[(m, k)] + b[(m, k)] * b[(m, k)]);
        }
    }
    s
}

/// `⟨H²⟩ - ⟨H⟩²`.
pub fn variance(rho: &DenseHermitian, h: &Observable) -> Result<f64> {
    check_dims(rho, h)?;
    let (p, v) = checked_spectrum(rho)?;
    let (a, b) = h.rotated(&v);
    let mean: f64 = p.iter().enumerate().map(|(m, pm)| pm * a[(m, m)]).sum();
    let square = spectral_sum(&p, &a, &b, |pm, _| pm);
    Ok(square - mean * mean)
}

/// Wigner-Yanase skew information `-½ Tr [√ρ, H]²`.
pub fn wigner_yanase(rho: &DenseHermitian, h: &Observable) -> Result<f64> {
    check_dims(rho, h)?;
    checked_spectrum(rho)?;
    let s = dense_sqrt(rho)?;
    // [√ρ, re] is antisymmetric and [√ρ, i·im] is i times a symmetric matrix;
    // the trace of the square is minus the sum of both squared norms.
    let cr = s.matmul(&h.re).sub(&h.re.matmul(&s));
    let ci = s.matmul(&h.im).sub(&h.im.matmul(&s));
    let frob = |m: &DenseHermitian| {
        let n = m.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|ij| m[ij] * m[ij])
            .sum::<f64>()
    };
    Ok(0.5 * (frob(&cr) + frob(&ci)))
}

fn qfi_weight(pm: f64, pn: f64) -> f64 {
    let s = pm + pn;
    if s > 0.0 {
        0.5 * (pm - pn) * (pm - pn) / s
    } else {
        0.0
    }
}

fn wy_weight(pm: f64, pn: f64) -> f64 {
    let d = pm.sqrt() - pn.sqrt();
    0.5 * d * d
}

/// Quantum Fisher information, `½ Σ (p_m - p_n)²/(p_m + p_n) |H_mn|²`.
pub fn qfi(rho: &DenseHermitian, h: &Observable) -> Result<f64> {
    check_dims(rho, h)?;
    let (p, v) = checked_spectrum(rho)?;
    let (a, b) = h.rotated(&v);
    Ok(spectral_sum(&p, &a, &b, qfi_weight))
}

pub type Sym3 = [[f64; 3]; 3];

/// Pauli operators in the eigenbasis of ρ, as (real, imaginary) pairs.
fn rotated_paulis(dim: usize, v: &DenseHermitian) -> [(DenseHermitian, DenseHermitian); 3] {
    let axis = |x, y, z| {
        Observable::local(
            dim,
            BlochVector {
                nx: x,
                ny: y,
                nz: z,
            },
        )
        .rotated(v)
    };
    [
        axis(1.0, 0.0, 0.0),
        axis(0.0, 1.0, 0.0),
        axis(0.0, 0.0, 1.0),
    ]
}

/// `Re Σ_mn w(p_m, p_n) (σ_μ)_mn (σ_ν)_nm`.
fn pair_matrix(rho: &DenseHermitian, w: impl Fn(f64, f64) -> f64) -> Result<Sym3> {
    let (p, v) = checked_spectrum(rho)?;
    let sig = rotated_paulis(rho.dim(), &v);
    let n = p.len();
    let mut out = [[0.0; 3]; 3];
    for mu in 0..3 {
        for nu in 0..3 {
            let (ar, ai) = (&sig[mu].0, &sig[mu].1);
            let (br, bi) = (&sig[nu].0, &sig[nu].1);
            let mut s = 0.0;
            for m in 0..n {
                for k in 0..n {
                    // (σ_ν)_km = conj((σ_ν)_mk).
                    s += w(p[m], p[k]) * (ar[(m, k)] * br[(m, k)] + ai[(m, k)] * bi[(m, k)]);
                }
            }
            out[mu][nu] = s;
        }
    }
    Ok(out)
}

/// `W_μν = Tr{√ρ σ_μ √ρ σ_ν}`.
pub fn w_matrix(rho: &DenseHermitian) -> Result<Sym3> {
    pair_matrix(rho, |a, b| (a * b).sqrt())
}

/// `M_μν = Σ 2 p_m p_n/(p_m + p_n) (σ_μ)_mn (σ_ν)_nm`.
pub fn m_matrix(rho: &DenseHermitian) -> Result<Sym3> {
    pair_matrix(rho, |a, b| {
        let s = a + b;
        if s > 0.0 {
            2.0 * a * b / s
        } else {
            0.0
        }
    })
}

/// Largest eigenvalue of a symmetric 3×3 matrix by the trigonometric formula.
pub fn sym3_max_eigenvalue(m: &Sym3) -> f64 {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if p1 == 0.0 {
        return m[0][0].max(m[1][1]).max(m[2][2]);
    }
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (m[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    q + 2.0 * p * phi.cos()
}

/// Whether the dominant direction of a (diagonal) axial 3×3 matrix is the
/// symmetry axis. Ties count as axial.
pub fn dominant_is_axial(m: &Sym3) -> bool {
    m[2][2] >= m[0][0].max(m[1][1])
}

/// An oracle value obtained by two independent routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    /// `1 - λ_max` of the 3×3 matrix.
    pub matrix: f64,
    /// Minimum of the information functional over the Bloch sphere.
    pub sphere: f64,
    /// Minimising direction found on the sphere.
    pub direction: BlochVector,
    pub axial: bool,
}

fn golden_min(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > DIRECTION_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimises `f(n)` over the unit sphere: a fixed (θ, φ) grid followed by
/// alternating golden-section searches with a shrinking bracket.
fn sphere_min(f: impl Fn(BlochVector) -> f64 + Sync) -> (f64, BlochVector) {
    let dtheta = std::f64::consts::PI / GRID_THETA as f64;
    let dphi = 2.0 * std::f64::consts::PI / GRID_PHI as f64;
    let (mut value, mut theta, mut phi) = (0..=GRID_THETA)
        .into_par_iter()
        .map(|i| {
            let th = i as f64 * dtheta;
            (0..GRID_PHI)
                .map(|k| {
                    let ph = k as f64 * dphi;
                    (f(BlochVector::from_angles(th, ph)), th, ph)
                })
                .fold((f64::INFINITY, 0.0, 0.0), |best, x| {
                    if x.0 < best.0 {
                        x
                    } else {
                        best
                    }
                })
        })
        .reduce(
            || (f64::INFINITY, 0.0, 0.0),
            |x, y| {
                if y.0 < x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) {
                    y
                } else {
                    x
                }
            },
        );
    let mut h = dtheta.max(dphi);
    for _ in 0..200 {
        let (th, vt) = golden_min(
            &|t| f(BlochVector::from_angles(t, phi)),
            theta - h,
            theta + h,
        );
        if vt <= value {
            theta = th;
            value = vt;
        }
        let (ph, vp) = golden_min(&|p| f(BlochVector::from_angles(theta, p)), phi - h, phi + h);
        if vp <= value {
            phi = ph;
            value = vp;
        }
        h *= 0.5;
        if h < DIRECTION_TOL {
            break;
        }
    }
    (value, BlochVector::from_angles(theta, phi))
}

fn sphere_route(rho: &DenseHermitian, w: fn(f64, f64) -> f64) -> Result<(f64, BlochVector)> {
    let (p, v) = checked_spectrum(rho)?;
    let sig = rotated_paulis(rho.dim(), &v);
    let n = p.len();
    let weights: Vec<f64> = (0..n * n).map(|i| w(p[i / n], p[i % n])).collect();
    let functional = |b: BlochVector| {
        let c = b.components();
        let mut s = 0.0;
        for m in 0..n {
            for k in 0..n {
                let ij = (m, k);
                let re = c[0] * sig[0].0[ij] + c[2] * sig[2].0[ij];
                let im = c[1] * sig[1].1[ij];
                s += weights[m * n + k] * (re * re + im * im);
            }
        }
        s
    };
    Ok(sphere_min(functional))
}

/// Local quantum uncertainty by both routes.
pub fn oracle_lqu(rho: &DenseHermitian) -> Result<OracleValue> {
    let w = w_matrix(rho)?;
    let (sphere, direction) = sphere_route(rho, wy_weight)?;
    Ok(OracleValue {
        matrix: 1.0 - sym3_max_eigenvalue(&w),
        sphere,
        direction,
        axial: dominant_is_axial(&w),
    })
}

/// Local quantum Fisher information by both routes.
pub fn oracle_lqfi(rho: &DenseHermitian) -> Result<OracleValue> {
    let m = m_matrix(rho)?;
    let (sphere, direction) = sphere_route(rho, qfi_weight)?;
    Ok(OracleValue {
        matrix: 1.0 - sym3_max_eigenvalue(&m),
        sphere,
        direction,
        axial: dominant_is_axial(&m),
    })
}
