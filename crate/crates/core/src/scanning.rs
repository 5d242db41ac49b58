//! Floating-point realization of the scanning map and the analytic jet
//! maps: local root configurations, jet nonvanishing, the degree of the jet
//! map to `CP^{n-1}`, the parity of the real jet loop in `RP^{n-1}`, and
//! conjugation equivariance.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::poly::{squarefree_decomposition, Polynomial};
use crate::random;

/// Default relative tolerance for merging numerically close roots.
pub const CLUSTER_TOL: f64 = 1e-6;
const MAX_DRAWS: usize = 16;
const MAX_REFINE: usize = 40;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
    #[error("polynomial must have positive degree")]
    Constant,
    #[error("no nondegenerate hyperplane after {attempts} draws")]
    DegenerateDraw { attempts: usize },
    #[error("root count {roots} and winding number {winding} disagree")]
    CountMismatch { roots: usize, winding: i64 },
    #[error("polynomial has non-real coefficients")]
    NonReal,
    #[error("jet loop lift could not be refined near t = {t}")]
    LiftStepTooCoarse { t: f64 },
    #[error("jet vanishes at t = {t}")]
    JetVanishes { t: f64 },
}

/// Scanning radius, evaluation grid, and seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub epsilon: f64,
    pub grid: Vec<Complex64>,
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(epsilon: f64, grid: Vec<Complex64>, seed: u64) -> Result<Self, ScanError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(ScanError::InvalidConfig(format!("epsilon must be positive, got {epsilon}")));
        }
        if grid.is_empty() {
            return Err(ScanError::InvalidConfig("empty grid".into()));
        }
        if grid.iter().any(|z| !z.is_finite()) {
            return Err(ScanError::InvalidConfig("non-finite grid point".into()));
        }
        Ok(ScanConfig { epsilon, grid, seed })
    }

    /// `(2k+1)^2` points on the square `[-r, r]^2`, `epsilon = 1`.
    pub fn square_grid(half_width: f64, k: usize, seed: u64) -> Self {
        let step = if k == 0 { 0.0 } else { half_width / k as f64 };
        let ticks: Vec<f64> = (0..=2 * k).map(|i| -half_width + step * i as f64).collect();
        let grid = ticks
            .iter()
            .flat_map(|&x| ticks.iter().map(move |&y| Complex64::new(x, y)))
            .collect();
        ScanConfig {
            epsilon: 1.0,
            grid,
            seed,
        }
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig::square_grid(2.0, 8, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LabelledPoint {
    pub point: Complex64,
    pub multiplicity: usize,
}

/// Finitely many distinct points with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LabelledConfiguration(pub Vec<LabelledPoint>);

impl LabelledConfiguration {
    pub fn new(points: impl IntoIterator<Item = (Complex64, usize)>) -> Self {
        LabelledConfiguration(
            points
                .into_iter()
                .filter(|&(_, m)| m > 0)
                .map(|(point, multiplicity)| LabelledPoint { point, multiplicity })
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.0.iter().map(|p| p.multiplicity).sum()
    }

    pub fn points(&self) -> &[LabelledPoint] {
        &self.0
    }
}

/// Coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatPoly {
    coeffs: Vec<Complex64>,
}

impl FloatPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        FloatPoly { coeffs }
    }

    pub fn from_exact(f: &Polynomial) -> Self {
        FloatPoly::new(f.coeffs().iter().map(|c| c.to_complex64()).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[(Complex64, usize)]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &(r, m) in roots {
            for _ in 0..m {
                let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                coeffs = next;
            }
        }
        FloatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> FloatPoly {
        FloatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn conj(&self) -> FloatPoly {
        FloatPoly::new(self.coeffs.iter().map(Complex64::conj).collect())
    }

    /// `(f, f', ..., f^(n-1))`
    pub fn derivatives(&self, n: usize) -> Vec<FloatPoly> {
        let mut out = vec![self.clone()];
        while out.len() < n {
            let next = out.last().unwrap().derivative();
            out.push(next);
        }
        out
    }

    pub fn jet(&self, z: Complex64, n: usize) -> Vec<Complex64> {
        self.derivatives(n).iter().map(|p| p.eval(z)).collect()
    }

    /// `1 + max |a_i / a_d|`; every root lies strictly inside.
    pub fn cauchy_bound(&self) -> f64 {
        let lead = self.coeffs.last().map_or(1.0, |c| c.norm());
        1.0 + self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max)
    }

    /// All roots with multiplicity, by companion-matrix eigenvalues and
    /// Newton polishing.
    pub fn roots(&self) -> Vec<Complex64> {
        let Some(d) = self.degree().filter(|&d| d > 0) else {
            return Vec::new();
        };
        let lead = self.coeffs[d];
        let companion = DMatrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -self.coeffs[i] / lead
            } else if i == j + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let eig = companion
            .clone()
            .try_schur(f64::EPSILON, 10_000)
            .and_then(|s| s.eigenvalues())
            .map(|v| v.iter().copied().collect::<Vec<_>>())
            .unwrap_or_else(|| companion.diagonal().iter().copied().collect());
        let df = self.derivative();
        eig.into_iter().map(|r| self.polish(&df, r)).collect()
    }

    fn polish(&self, df: &FloatPoly, mut r: Complex64) -> Complex64 {
        for _ in 0..8 {
            let fr = self.eval(r);
            let dr = df.eval(r);
            if dr.norm() == 0.0 {
                break;
            }
            let step = fr / dr;
            let next = r - step;
            if !next.is_finite() || self.eval(next).norm() >= fr.norm() {
                break;
            }
            r = next;
        }
        r
    }

    /// Roots merged within `tol` relative to their magnitude.
    pub fn root_configuration(&self, tol: f64) -> LabelledConfiguration {
        cluster(&self.roots(), tol)
    }

    /// Winding number of `f` around the circle of radius `r`.
    pub fn winding_number(&self, r: f64) -> i64 {
        let d = self.degree().unwrap_or(0);
        let mut samples = 64 * (d + 1);
        loop {
            let last_try = samples >= 1 << 20;
            if let Some(turns) = self.winding_with(r, samples, last_try) {
                return turns;
            }
            samples *= 2;
        }
    }

    /// `None` when some step turns by more than a quarter and `force` is off.
    fn winding_with(&self, r: f64, samples: usize, force: bool) -> Option<i64> {
        let mut total = 0.0;
        let mut prev = self.eval(Complex64::new(r, 0.0));
        for k in 1..=samples {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / samples as f64);
            let cur = self.eval(z);
            let step = (cur / prev).arg();
            if step.abs() > FRAC_PI_2 && !force {
                return None;
            }
            total += step;
            prev = cur;
        }
        Some((total / std::f64::consts::TAU).round() as i64)
    }
}

fn cluster(roots: &[Complex64], tol: f64) -> LabelledConfiguration {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        let scale = r.norm().max(1.0);
        match groups.iter_mut().find(|(c, _)| (c - r).norm() <= tol * scale) {
            Some((c, m)) => {
                *c = (*c * *m as f64 + r) / (*m + 1) as f64;
                *m += 1;
            }
            None => groups.push((r, 1)),
        }
    }
    LabelledConfiguration::new(groups)
}

/// Root configuration of an exact polynomial: multiplicities come from the
/// exact squarefree decomposition, locations from the squarefree factors.
pub fn exact_root_configuration(f: &Polynomial) -> LabelledConfiguration {
    let Ok(sqf) = squarefree_decomposition(f) else {
        return LabelledConfiguration::default();
    };
    LabelledConfiguration::new(
        sqf.factors()
            .iter()
            .flat_map(|(g, m)| FloatPoly::from_exact(g).roots().into_iter().map(move |r| (r, *m))),
    )
}

/// The part of `roots` in the closed `epsilon`-disk about `z`, rescaled to the
/// unit disk by `x -> (x - z) / epsilon`.
pub fn scan_sample(roots: &LabelledConfiguration, z: Complex64, cfg: &ScanConfig) -> LabelledConfiguration {
    LabelledConfiguration::new(
        roots
            .points()
            .iter()
            .filter(|p| (p.point - z).norm() <= cfg.epsilon)
            .map(|p| ((p.point - z) / cfg.epsilon, p.multiplicity)),
    )
}

/// Minimum over the grid of the Euclidean norm of `(f(z), ..., f^(n-1)(z))`.
pub fn jet_nonvanishing_check(f: &FloatPoly, n: usize, cfg: &ScanConfig) -> f64 {
    let ders = f.derivatives(n);
    cfg.grid
        .iter()
        .map(|&z| ders.iter().map(|p| p.eval(z).norm_sqr()).sum::<f64>().sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// One random hyperplane `sum c_i w_i = 0` in `CP^{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneDraw {
    pub coefficients: Vec<Complex64>,
    /// Roots of `sum c_i f^(i)`, counted with multiplicity.
    pub root_count: usize,
    /// Winding number of the same polynomial on a circle enclosing all roots.
    pub winding: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JetDegreeReport {
    pub degree: usize,
    pub min_jet_norm: f64,
    pub draws: Vec<HyperplaneDraw>,
}

/// Degree of `z -> [f(z) : f'(z) : ... : f^(n-1)(z)]` as a map from the
/// sphere to `CP^{n-1}`: the number of preimages of a generic hyperplane.
/// Two independent hyperplanes are drawn and must agree, and each root count
/// is checked against the argument principle.
pub fn degree_of_jet_map(f: &FloatPoly, n: usize, cfg: &ScanConfig) -> Result<JetDegreeReport, ScanError> {
    let d = f.degree().filter(|&d| d > 0).ok_or(ScanError::Constant)?;
    let ders = f.derivatives(n);
    let mut rng = random::rng(cfg.seed);
    let mut draws = Vec::new();
    let mut attempts = 0;
    while draws.len() < 2 {
        attempts += 1;
        if attempts > MAX_DRAWS {
            return Err(ScanError::DegenerateDraw { attempts: MAX_DRAWS });
        }
        let c: Vec<Complex64> = (0..n).map(|_| random::complex(&mut rng, 1.0)).collect();
        if c[0].norm() < 1e-3 {
            continue;
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        for (ci, p) in c.iter().zip(&ders) {
            for (k, a) in p.coeffs().iter().enumerate() {
                coeffs[k] += ci * a;
            }
        }
        let g = FloatPoly::new(coeffs);
        if g.degree() != Some(d) {
            continue;
        }
        let root_count = g.roots().len();
        let winding = g.winding_number(2.0 * g.cauchy_bound());
        if winding != root_count as i64 {
            return Err(ScanError::CountMismatch {
                roots: root_count,
                winding,
            });
        }
        draws.push(HyperplaneDraw {
            coefficients: c,
            root_count,
            winding,
        });
    }
    if draws[0].root_count != draws[1].root_count {
        return Err(ScanError::CountMismatch {
            roots: draws[0].root_count,
            winding: draws[1].winding,
        });
    }
    Ok(JetDegreeReport {
        degree: draws[0].root_count,
        min_jet_norm: jet_nonvanishing_check(f, n, cfg),
        draws,
    })
}

fn real_jet_direction(ders: &[FloatPoly], t: f64) -> Result<Vec<f64>, ScanError> {
    let v: Vec<f64> = ders.iter().map(|p| p.eval(Complex64::new(t, 0.0)).re).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(ScanError::JetVanishes { t });
    }
    Ok(v.into_iter().map(|x| x / norm).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Class in `pi_1(RP^{n-1}) = Z/2` of the loop `t -> [f(t) : ... : f^(n-1)(t)]`
/// on the real line closed at infinity. The loop is lifted to the sphere along
/// an adaptively refined grid; the result is 1 when the lift ends antipodally.
pub fn real_loop_parity(f: &FloatPoly, n: usize) -> Result<u8, ScanError> {
    if !f.is_real() {
        return Err(ScanError::NonReal);
    }
    let d = f.degree().filter(|&d| d > 0).ok_or(ScanError::Constant)?;
    let ders = f.derivatives(n);
    // direction error near the ends is about d / t
    let t_max = 1e4 * f.cauchy_bound() * (d as f64 + 1.0);
    let s_max = t_max.atan();
    let base = 256 * (d + 1);

    let mut s_prev = -s_max;
    let mut lift = real_jet_direction(&ders, s_prev.tan())?;
    let start = lift.clone();
    for k in 1..=base {
        let s_next = -s_max + 2.0 * s_max * k as f64 / base as f64;
        lift = lift_segment(&ders, s_prev, s_next, lift, 0)?;
        s_prev = s_next;
    }
    let closing = dot(&start, &lift);
    if closing.abs() < 0.9 {
        return Err(ScanError::LiftStepTooCoarse { t: t_max });
    }
    Ok(u8::from(closing < 0.0))
}

fn lift_segment(ders: &[FloatPoly], a: f64, b: f64, from: Vec<f64>, depth: usize) -> Result<Vec<f64>, ScanError> {
    let mut next = real_jet_direction(ders, b.tan())?;
    let c = dot(&from, &next);
    if c.abs() >= 0.9 {
        if c < 0.0 {
            next.iter_mut().for_each(|x| *x = -*x);
        }
        return Ok(next);
    }
    if depth >= MAX_REFINE {
        return Err(ScanError::LiftStepTooCoarse { t: b.tan() });
    }
    let mid = 0.5 * (a + b);
    let half = lift_segment(ders, a, mid, from, depth + 1)?;
    lift_segment(ders, mid, b, half, depth + 1)
}

/// Largest deviation `|jet(conj f)(conj z) - conj(jet(f)(z))|` over the grid.
pub fn theta_equivariance_check(f: &FloatPoly, n: usize, cfg: &ScanConfig) -> f64 {
    let g = f.conj();
    cfg.grid
        .iter()
        .flat_map(|&z| {
            let lhs = g.jet(z.conj(), n);
            let rhs = f.jet(z, n);
            lhs.into_iter()
                .zip(rhs)
                .map(|(a, b)| (a - b.conj()).norm())
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

/// Random monic member of `SP^d_n` with root separation at least
/// `separation`, roots in the disk of radius `radius`.
pub fn random_member<R: Rng>(rng: &mut R, d: usize, n: usize, separation: f64, radius: f64) -> FloatPoly {
    FloatPoly::from_roots(&random::separated_roots(rng, d, n, separation, radius))
}
