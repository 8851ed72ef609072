use crate::axial::{AxialDensityMatrix, AxialHamiltonian, SpinJ};
use crate::error::{invalid_argument, invalid_state, Result};
use crate::thermal::Temperature;

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    dim: usize,
    data: Vec<f64>,
}

impl DenseHermitian {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(invalid_argument("matrix rows must form a square array"));
        }
        Ok(Self {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// `V diag(f(λ)) Vᵀ`.
    fn spectral(values: &[f64], vectors: &Self, f: impl Fn(f64) -> f64) -> Self {
        let n = vectors.dim;
        let fv: Vec<f64> = values.iter().map(|&x| f(x)).collect();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..n)
                    .map(|k| vectors[(i, k)] * fv[k] * vectors[(j, k)])
                    .sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for DenseHermitian {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseHermitian {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Anything with an axial block layout that can be written out densely.
pub trait Expand {
    fn expand(&self) -> DenseHermitian;
}

fn fill(
    spin: SpinJ,
    first: f64,
    last: f64,
    blocks: impl Iterator<Item = (f64, f64, f64)>,
) -> DenseHermitian {
    let n = spin.total_dim();
    let mut m = DenseHermitian::zeros(n);
    m[(0, 0)] = first;
    m[(n - 1, n - 1)] = last;
    for (i, (a, b, u)) in blocks.enumerate() {
        let (r, c) = (2 * i + 1, 2 * i + 2);
        m[(r, r)] = a;
        m[(c, c)] = b;
        m[(r, c)] = u;
        m[(c, r)] = u;
    }
    m
}

impl Expand for AxialHamiltonian {
    fn expand(&self) -> DenseHermitian {
        fill(
            self.spin(),
            self.e_first(),
            self.e_last(),
            self.blocks().iter().map(|b| (b.h, b.h_prime, b.g)),
        )
    }
}

impl Expand for AxialDensityMatrix {
    fn expand(&self) -> DenseHermitian {
        fill(
            self.spin(),
            self.p_first(),
            self.p_last(),
            self.blocks().iter().map(|b| (b.a, b.b, b.u)),
        )
    }
}

pub fn expand<T: Expand>(x: &T) -> DenseHermitian {
    x.expand()
}

/// Diagonal of the conserved total `S_z + σ_z/2` in the product basis.
pub fn total_sz(spin: SpinJ) -> Vec<f64> {
    let j = spin.j();
    (0..spin.total_dim())
        .map(|i| {
            let m = j - (i / 2) as f64;
            let s = if i % 2 == 0 { 0.5 } else { -0.5 };
            m + s
        })
        .collect()
}

/// `max |[M, S_z^tot]|`.
pub fn sz_commutator(m: &DenseHermitian, spin: SpinJ) -> f64 {
    let sz = total_sz(spin);
    let mut worst: f64 = 0.0;
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            worst = worst.max((m[(i, j)] * (sz[j] - sz[i])).abs());
        }
    }
    worst
}

/// Eigen-decomposition `M = V Λ Vᵀ` by cyclic Jacobi rotations. Eigenvalues
/// ascending; eigenvectors are the columns of `V`.
pub fn eigh(m: &DenseHermitian) -> Result<(Vec<f64>, DenseHermitian)> {
    let n = m.dim();
    let scale = m.max_abs();
    if m.asymmetry() > 1e-14 * scale.max(1.0) {
        return Err(invalid_argument("eigh needs a symmetric matrix"));
    }
    let mut a = m.clone();
    let mut v = DenseHermitian::identity(n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= 1e-17 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for r in 0..n {
                    let (arp, arq) = (a[(r, p)], a[(r, q)]);
                    a[(r, p)] = c * arp - s * arq;
                    a[(r, q)] = s * arp + c * arq;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[(p, r)], a[(q, r)]);
                    a[(p, r)] = c * apr - s * aqr;
                    a[(q, r)] = s * apr + c * aqr;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                // The two new diagonal entries are the eigenvalues of the 2×2
                // pivot block; the smaller one is taken from its determinant,
                // which keeps it accurate for nearly singular blocks.
                let sq = apq * apq;
                let det = app.mul_add(aqq, -sq) - apq.mul_add(apq, -sq);
                let (big, small) = if a[(p, p)].abs() >= a[(q, q)].abs() {
                    ((p, p), (q, q))
                } else {
                    ((q, q), (p, p))
                };
                if a[big] != 0.0 {
                    a[small] = det / a[big];
                }
                for r in 0..n {
                    let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut sorted = DenseHermitian::zeros(n);
    for (col, &i) in order.iter().enumerate() {
        for r in 0..n {
            sorted[(r, col)] = v[(r, i)];
        }
    }
    Ok((values, sorted))
}

/// `exp(-H/T)/Z` with the exponent shifted by the lowest eigenvalue.
pub fn dense_gibbs(h: &DenseHermitian, t: Temperature) -> Result<DenseHermitian> {
    let (values, vectors) = eigh(h)?;
    let e_min = values[0];
    let boltzmann = |e: f64| (-(e - e_min) / t.value()).exp();
    let z: f64 = values.iter().map(|&e| boltzmann(e)).sum();
    Ok(DenseHermitian::spectral(&values, &vectors, |e| {
        boltzmann(e) / z
    }))
}

/// Rank-detection threshold `n·ε·max|λ|`: eigenvalues below it cannot be told
/// apart from zero for a general dense input.
fn rank_floor(values: &[f64]) -> f64 {
    let top = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    values.len() as f64 * f64::EPSILON * top
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues below
/// the rank-detection threshold are set to zero, so that the square root of a
/// rank-deficient input does not pick up `sqrt(ε)`-sized noise.
pub fn dense_sqrt(rho: &DenseHermitian) -> Result<DenseHermitian> {
    let (values, vectors) = eigh(rho)?;
    if values.first().is_some_and(|&x| x < -1e-12) {
        return Err(invalid_state(format!(
            "matrix has negative eigenvalue {:e}",
            values[0]
        )));
    }
    let floor = rank_floor(&values);
    Ok(DenseHermitian::spectral(&values, &vectors, |x| {
        if x <= floor {
            0.0
        } else {
            x.sqrt()
        }
    }))
}
