//! Pointwise Hamiltonian formalism on coordinate patches, in floating point.
//!
//! An [`ExactPatch`] is a box in `Rⁿ` carrying a `V`-valued potential
//! `θ: x ↦ k × n matrix`; its form `ω = -dθ` is evaluated by central
//! differences. On top of that: Hamiltonian fields (`-ι_X ω = df`), brackets
//! `{f, f'} = -ω(X_f, X_{f'})`, moment maps `μ(x)(ξ) = θ_x(ξ̲_x)` of actions
//! preserving `θ`, the section `x ↦ (x, θ_x)` into the canonical patch, and
//! fiber derivatives of `V`-valued Lagrangians.
//!
//! Callbacks must be pure; they may be evaluated concurrently.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{ensure_dim, Error, Result};
use crate::exactla::Matrix;
use crate::exec::{self, Execution};
use crate::liealg::{exp_so3, hat, log_so3};
use crate::polycore::VForm;
use crate::random::trial_rng;

pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Relative threshold for Hamiltonian-ness, scaled by `1 + ‖df‖`.
pub const HAMILTONIAN_RTOL: f64 = 1e-6;
pub const LIE_DERIVATIVE_TOL: f64 = 1e-5;
pub const MOMENT_TOL: f64 = 1e-5;
pub const HESSIAN_RANK_TOL: f64 = 1e-8;
/// Step for the mixed second differences of fiber derivatives.
pub const SECOND_DIFF_STEP: f64 = 1e-4;
/// Outer step when differentiating `ω` itself (closedness audits).
pub const CLOSEDNESS_STEP: f64 = 1e-3;

pub type Point = DVector<f64>;

type PotentialFn = dyn Fn(&Point) -> DMatrix<f64> + Send + Sync;
type FieldFn = dyn Fn(&Point) -> DVector<f64> + Send + Sync;
type LagrangianFn = dyn Fn(&DVector<f64>, &DVector<f64>) -> DVector<f64> + Send + Sync;

/// A smooth callback `x ↦ vector`: either a `V`-valued function or a tangent
/// vector field, depending on use.
#[derive(Clone)]
pub struct PointField(Arc<FieldFn>);

impl PointField {
    pub fn new(f: impl Fn(&Point) -> DVector<f64> + Send + Sync + 'static) -> Self {
        PointField(Arc::new(f))
    }

    pub fn eval(&self, x: &Point) -> DVector<f64> {
        (self.0)(x)
    }

    fn eval_checked(&self, x: &Point) -> Result<DVector<f64>> {
        let v = self.eval(x);
        finite(&v, x)?;
        Ok(v)
    }
}

impl fmt::Debug for PointField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PointField(..)")
    }
}

fn finite<'a>(values: impl IntoIterator<Item = &'a f64>, x: &Point) -> Result<()> {
    if values.into_iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(x.iter().copied().collect()))
    }
}

/// A `V`-valued form at one point, as `k` skew `n × n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericForm {
    pub components: Vec<DMatrix<f64>>,
}

impl NumericForm {
    pub fn from_exact(form: &VForm) -> Self {
        NumericForm { components: form.components().iter().map(matrix_to_f64).collect() }
    }

    pub fn dim_u(&self) -> usize {
        self.components.first().map_or(0, |c| c.nrows())
    }

    pub fn dim_v(&self) -> usize {
        self.components.len()
    }

    pub fn eval(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.components.len(), self.components.iter().map(|c| u.dot(&(c * v))))
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &NumericForm) -> f64 {
        if self.components.len() != other.components.len() || self.dim_u() != other.dim_u() {
            return f64::INFINITY;
        }
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).abs().max())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().map(|c| c.abs().max()).fold(0.0, f64::max)
    }

    /// Numerical rank of the stacked `kn × n` matrix.
    pub fn stacked_rank(&self, tol: f64) -> usize {
        numeric_rank(&self.stacked(), tol)
    }

    fn stacked(&self) -> DMatrix<f64> {
        let n = self.dim_u();
        let mut m = DMatrix::zeros(n * self.components.len(), n);
        for (c, comp) in self.components.iter().enumerate() {
            m.view_mut((c * n, 0), (n, n)).copy_from(comp);
        }
        m
    }
}

pub fn matrix_to_f64(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_f64().unwrap_or(f64::NAN))
}

fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max().max(1.0);
    sv.iter().filter(|s| **s > tol * top).count()
}

/// A coordinate box with a `V`-valued potential.
#[derive(Clone)]
pub struct ExactPatch {
    name: String,
    dim_m: usize,
    dim_v: usize,
    theta: Arc<PotentialFn>,
    domain: Vec<(f64, f64)>,
    pub fd_step: f64,
    pub richardson: bool,
    pub tolerance_scale: f64,
}

impl fmt::Debug for ExactPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactPatch")
            .field("name", &self.name)
            .field("dim_m", &self.dim_m)
            .field("dim_v", &self.dim_v)
            .field("fd_step", &self.fd_step)
            .field("richardson", &self.richardson)
            .finish()
    }
}

impl ExactPatch {
    pub fn new(
        name: impl Into<String>,
        dim_m: usize,
        dim_v: usize,
        domain: Vec<(f64, f64)>,
        theta: impl Fn(&Point) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        ensure_dim(dim_m, domain.len())?;
        if dim_v == 0 {
            return Err(Error::Malformed("a patch needs dim V ≥ 1".into()));
        }
        if domain.iter().any(|(a, b)| !(a < b)) {
            return Err(Error::Malformed("empty domain interval".into()));
        }
        Ok(ExactPatch {
            name: name.into(),
            dim_m,
            dim_v,
            theta: Arc::new(theta),
            domain,
            fd_step: DEFAULT_FD_STEP,
            richardson: false,
            tolerance_scale: 1.0,
        })
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn with_tolerance_scale(mut self, scale: f64) -> Self {
        self.tolerance_scale = scale;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.len() == self.dim_m && x.iter().zip(&self.domain).all(|(v, (a, b))| *a <= *v && *v <= *b)
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        ensure_dim(self.dim_m, x.len())?;
        finite(x.iter(), x)
    }

    /// `θ_x` as a `k × n` matrix.
    pub fn theta_at(&self, x: &Point) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let t = (self.theta)(x);
        if t.nrows() != self.dim_v || t.ncols() != self.dim_m {
            return Err(Error::DimensionMismatch { expected: self.dim_v * self.dim_m, found: t.len() });
        }
        finite(t.iter(), x)?;
        Ok(t)
    }

    /// `∂_a θ` for each coordinate `a`.
    pub fn dtheta(&self, x: &Point) -> Result<Vec<DMatrix<f64>>> {
        (0..self.dim_m)
            .map(|a| directional(|y| self.theta_at(y), x, &unit(self.dim_m, a), self.fd_step, self.richardson))
            .collect()
    }

    /// `(-dθ)_c(e_a, e_b) = -(∂_a θ_{cb} - ∂_b θ_{ca})` before symmetrization.
    pub fn omega_raw(&self, x: &Point) -> Result<NumericForm> {
        let d = self.dtheta(x)?;
        let n = self.dim_m;
        let components = (0..self.dim_v)
            .map(|c| DMatrix::from_fn(n, n, |a, b| -(d[a][(c, b)] - d[b][(c, a)])))
            .collect();
        Ok(NumericForm { components })
    }

    /// `ω = -dθ` at `x`, exactly skew.
    pub fn omega_at(&self, x: &Point) -> Result<NumericForm> {
        let raw = self.omega_raw(x)?;
        Ok(NumericForm {
            components: raw.components.iter().map(|m| (m - m.transpose()) * 0.5).collect(),
        })
    }

    /// Largest entry of the symmetric part of the raw differences.
    pub fn symmetric_defect(&self, x: &Point) -> Result<f64> {
        let raw = self.omega_raw(x)?;
        Ok(raw.components.iter().map(|m| (m + m.transpose()).abs().max() / 2.0).fold(0.0, f64::max))
    }

    /// Largest `|∂_a ω_{bc} + ∂_b ω_{ca} + ∂_c ω_{ab}|` at `x`.
    pub fn closedness_defect(&self, x: &Point) -> Result<f64> {
        let n = self.dim_m;
        let d = (0..n)
            .map(|a| {
                directional(
                    |y| Ok(NumericForm::stacked(&self.omega_at(y)?)),
                    x,
                    &unit(n, a),
                    CLOSEDNESS_STEP,
                    false,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let mut worst: f64 = 0.0;
        for comp in 0..self.dim_v {
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        let at = |m: &DMatrix<f64>, i: usize, j: usize| m[(comp * n + i, j)];
                        let s = at(&d[a], b, c) + at(&d[b], c, a) + at(&d[c], a, b);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Jacobian `k × n` of a `V`-valued function.
    pub fn differential(&self, f: &PointField, x: &Point) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        let cols = (0..self.dim_m)
            .map(|a| {
                directional(|y| f.eval_checked(y).map(|v| DMatrix::from_column_slice(v.len(), 1, v.as_slice())), x, &unit(self.dim_m, a), self.fd_step, self.richardson)
            })
            .collect::<Result<Vec<_>>>()?;
        let k = cols.first().map_or(self.dim_v, |c| c.nrows());
        ensure_dim(self.dim_v, k)?;
        Ok(DMatrix::from_fn(k, self.dim_m, |c, a| cols[a][(c, 0)]))
    }

    /// Points of a shifted Halton sequence in the domain box.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Point> {
        sample_box(&self.domain, count, seed)
    }
}

fn unit(n: usize, a: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[a] = 1.0;
    v
}

/// Central difference of `f` along `dir`, optionally with one Richardson step.
fn directional<F>(f: F, x: &Point, dir: &DVector<f64>, h: f64, richardson: bool) -> Result<DMatrix<f64>>
where
    F: Fn(&Point) -> Result<DMatrix<f64>>,
{
    let central = |h: f64| -> Result<DMatrix<f64>> {
        let plus = f(&(x + dir * h))?;
        let minus = f(&(x - dir * h))?;
        Ok((plus - minus) / (2.0 * h))
    };
    let coarse = central(h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = central(h / 2.0)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

const PRIMES: [u32; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % b) as f64 * inv;
        i /= b;
        inv /= base as f64;
    }
    out
}

/// Halton points with a seeded Cranley–Patterson rotation, mapped into the
/// interior of the box (a margin keeps stencils inside).
pub fn sample_box(domain: &[(f64, f64)], count: usize, seed: u64) -> Vec<Point> {
    let mut rng = trial_rng(seed, u64::MAX);
    let shift: Vec<f64> = domain.iter().map(|_| rng.random::<f64>()).collect();
    (0..count)
        .map(|i| {
            DVector::from_iterator(
                domain.len(),
                domain.iter().enumerate().map(|(d, (a, b))| {
                    let u = (radical_inverse(i as u64 + 1, PRIMES[d % PRIMES.len()]) + shift[d]).fract();
                    let margin = 0.05 * (b - a);
                    a + margin + u * (b - a - 2.0 * margin)
                }),
            )
        })
        .collect()
}

/// Random vector with entries in `[-1, 1]`, from a seeded stream.
pub fn sample_vector(n: usize, seed: u64, i: usize) -> DVector<f64> {
    let mut rng = trial_rng(seed, i as u64);
    DVector::from_fn(n, |_, _| rng.random_range(-1.0..=1.0))
}

// ---------------------------------------------------------------------------
// built-in patches

/// Index of `φ_{cj}` among the coordinates `(q₁..qₙ, φ₁₁..φₖₙ)`.
pub fn phi_index(n: usize, c: usize, j: usize) -> usize {
    n + c * n + j
}

/// `Hom(TQ, V)` over `Q = Rⁿ` with `θ_{(q,φ)}(δq, δφ) = φ·δq`.
pub fn canonical_theta(n: usize, k: usize) -> Result<ExactPatch> {
    if n == 0 || k == 0 {
        return Err(Error::Malformed("canonical patch needs n, k ≥ 1".into()));
    }
    let dim = n + n * k;
    ExactPatch::new(format!("canonical:{n},{k}"), dim, k, vec![(-1.0, 1.0); dim], move |x| {
        let mut t = DMatrix::zeros(k, dim);
        for c in 0..k {
            for j in 0..n {
                t[(c, j)] = x[phi_index(n, c, j)];
            }
        }
        t
    })
}

/// A constant potential (so `ω = 0`).
pub fn constant_theta(value: DMatrix<f64>) -> Result<ExactPatch> {
    let (k, n) = value.shape();
    ExactPatch::new(format!("constant:{n},{k}"), n, k, vec![(-1.0, 1.0); n], move |_| value.clone())
}

fn so3_jacobian(x: &Vector3<f64>, sign: f64) -> Matrix3<f64> {
    let t = x.norm();
    let k = hat(x);
    let (a, b) = if t < 1e-4 {
        let t2 = t * t;
        (0.5 - t2 / 24.0, 1.0 / 6.0 - t2 / 120.0)
    } else {
        ((1.0 - t.cos()) / (t * t), (t - t.sin()) / (t * t * t))
    };
    Matrix3::identity() + k * (sign * a) + k * k * b
}

/// Right Jacobian of `exp` on `so(3)`: `exp(x)⁻¹ d exp_x(v) = (J_r(x) v)^`.
pub fn so3_right_jacobian(x: &Vector3<f64>) -> Matrix3<f64> {
    so3_jacobian(x, -1.0)
}

/// Left Jacobian: `d exp_x(v) exp(x)⁻¹ = (J_l(x) v)^`.
pub fn so3_left_jacobian(x: &Vector3<f64>) -> Matrix3<f64> {
    so3_jacobian(x, 1.0)
}

fn vec3(x: &Point) -> Vector3<f64> {
    Vector3::new(x[0], x[1], x[2])
}

/// `SO(3)` near the identity in exponential coordinates, with the
/// Maurer–Cartan potential `θ_x = J_r(x)`.
pub fn so3_patch() -> ExactPatch {
    ExactPatch::new("so3", 3, 3, vec![(-1.0, 1.0); 3], |x| {
        let j = so3_right_jacobian(&vec3(x));
        DMatrix::from_fn(3, 3, |r, c| j[(r, c)])
    })
    .expect("static patch")
}

/// Rigid-body configurations, identified with `SO(3)` through the reference
/// configuration `q₀ = id`.
pub fn rigid_body_patch() -> ExactPatch {
    let mut p = so3_patch();
    p.name = "rigidbody".into();
    p
}

/// `canonical:n,k`, `so3`, or `rigidbody`.
pub fn builtin_patch(name: &str) -> Result<ExactPatch> {
    match name {
        "so3" => Ok(so3_patch()),
        "rigidbody" => Ok(rigid_body_patch()),
        _ => {
            let rest = name
                .strip_prefix("canonical:")
                .ok_or_else(|| Error::Malformed(format!("unknown patch `{name}`")))?;
            let (n, k) = rest
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Malformed(format!("expected canonical:n,k, got `{name}`")))?;
            canonical_theta(n, k)
        }
    }
}

/// Fundamental field of left multiplication by `exp(tξ)` in exponential
/// coordinates: `ξ̲_x = J_l(x)⁻¹ ξ`.
pub fn so3_generator(xi: Vector3<f64>) -> PointField {
    PointField::new(move |x| {
        let j = so3_left_jacobian(&vec3(x));
        let v = j.try_inverse().map(|ji| ji * xi).unwrap_or(Vector3::from_element(f64::NAN));
        DVector::from_column_slice(v.as_slice())
    })
}

/// Lift of the translation `∂q_j` to the canonical patch.
pub fn canonical_translation(n: usize, k: usize, j: usize) -> PointField {
    PointField::new(move |_| {
        let mut v = DVector::zeros(n + n * k);
        v[j] = 1.0;
        v
    })
}

/// Lift of the rotation `q ↦ (-q₂, q₁)` of `Q = R²` to `Hom(TQ, V)`:
/// `φ̇ = -φ J`.
pub fn canonical_rotation(k: usize) -> PointField {
    let n = 2;
    PointField::new(move |x| {
        let mut v = DVector::zeros(n + n * k);
        v[0] = -x[1];
        v[1] = x[0];
        for c in 0..k {
            let (p1, p2) = (x[phi_index(n, c, 0)], x[phi_index(n, c, 1)]);
            // (φJ)_{c,:} = (p2, -p1)
            v[phi_index(n, c, 0)] = -p2;
            v[phi_index(n, c, 1)] = p1;
        }
        v
    })
}

/// Exact `μ(x)(ξ) = exp(x)ᵀ ξ` on the `SO(3)` patch.
pub fn so3_moment_exact(x: &Point, xi: &Vector3<f64>) -> Vector3<f64> {
    exp_so3(&vec3(x)).transpose() * xi
}

// ---------------------------------------------------------------------------
// Hamiltonian fields and brackets

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSolve {
    /// Minimal-norm least-squares solution of `-ι_X ω = df`.
    pub field: DVector<f64>,
    pub residual: f64,
    pub threshold: f64,
    /// Numerical rank of the stacked `kn × n` system.
    pub rank: usize,
    pub differential: DMatrix<f64>,
}

impl HamiltonianSolve {
    pub fn is_hamiltonian(&self) -> bool {
        self.residual <= self.threshold
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank < self.field.len()
    }
}

/// Solves `ω_c X = (df_c)ᵀ` for all components at once.
pub fn hamiltonian_field(p: &ExactPatch, f: &PointField, x: &Point) -> Result<HamiltonianSolve> {
    let omega = p.omega_at(x)?;
    let df = p.differential(f, x)?;
    let n = p.dim_m;
    let a = omega.stacked();
    let b = DVector::from_iterator(n * p.dim_v, (0..p.dim_v).flat_map(|c| (0..n).map(move |j| (c, j))).map(|(c, j)| df[(c, j)]));
    let svd = a.clone().svd(true, true);
    let top = svd.singular_values.max().max(1.0);
    let eps = 1e-8 * top;
    let rank = svd.singular_values.iter().filter(|s| **s > eps).count();
    let field = svd.solve(&b, eps).map_err(|e| Error::Inconsistent(e.into()))?;
    let residual = (&a * &field - &b).norm();
    let threshold = HAMILTONIAN_RTOL * p.tolerance_scale * (1.0 + df.norm());
    Ok(HamiltonianSolve { field, residual, threshold, rank, differential: df })
}

fn require_hamiltonian(s: HamiltonianSolve) -> Result<HamiltonianSolve> {
    if s.is_hamiltonian() {
        Ok(s)
    } else {
        Err(Error::NotHamiltonian { residual: s.residual, threshold: s.threshold })
    }
}

/// `{f, f'}(x) = -ω_x(X_f, X_{f'})`.
pub fn poisson_bracket(p: &ExactPatch, f: &PointField, g: &PointField, x: &Point) -> Result<DVector<f64>> {
    let xf = require_hamiltonian(hamiltonian_field(p, f, x)?)?;
    let xg = require_hamiltonian(hamiltonian_field(p, g, x)?)?;
    Ok(-p.omega_at(x)?.eval(&xf.field, &xg.field))
}

/// `(L_X θ)_{cb} = Σ_a X_a ∂_a θ_{cb} + Σ_a θ_{ca} ∂_b X_a`.
pub fn lie_derivative(p: &ExactPatch, xfield: &PointField, x: &Point) -> Result<DMatrix<f64>> {
    let n = p.dim_m;
    let xv = xfield.eval_checked(x)?;
    ensure_dim(n, xv.len())?;
    let theta = p.theta_at(x)?;
    let dtheta = p.dtheta(x)?;
    let dx = (0..n)
        .map(|b| {
            directional(
                |y| xfield.eval_checked(y).map(|v| DMatrix::from_column_slice(v.len(), 1, v.as_slice())),
                x,
                &unit(n, b),
                p.fd_step,
                p.richardson,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = DMatrix::zeros(p.dim_v, n);
    for a in 0..n {
        out += &dtheta[a] * xv[a];
    }
    for b in 0..n {
        // column b gets θ · ∂_b X
        let col = &theta * &dx[b];
        for c in 0..p.dim_v {
            out[(c, b)] += col[(c, 0)];
        }
    }
    Ok(out)
}

/// `μ_θ(x)(ξ) = θ_x(ξ̲_x)` for generators preserving `θ`.
#[derive(Clone, Debug)]
pub struct MomentMap {
    patch: ExactPatch,
    generators: Vec<PointField>,
    /// Largest `‖L_ξ̲ θ‖` seen while validating.
    pub max_lie_derivative: f64,
    /// Largest moment-identity defect seen while validating.
    pub max_identity_defect: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleOptions {
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { samples: 100, seed: 0, execution: Execution::default() }
    }
}

/// Builds `μ_θ` after checking `L_ξ̲ θ = 0` and
/// `⟨dμ·X, ξ⟩ = ω(ξ̲, X)` at sampled points.
pub fn moment_from_potential(p: &ExactPatch, generators: Vec<PointField>, opts: &SampleOptions) -> Result<MomentMap> {
    let mut m = MomentMap { patch: p.clone(), generators, max_lie_derivative: 0.0, max_identity_defect: 0.0 };
    let points = p.sample_points(opts.samples, opts.seed);
    let lie = exec::map_slice(opts.execution, &points, |x| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for g in &m.generators {
            worst = worst.max(lie_derivative(p, g, x)?.norm());
        }
        Ok(worst)
    });
    for l in lie {
        m.max_lie_derivative = m.max_lie_derivative.max(l?);
    }
    if m.max_lie_derivative > LIE_DERIVATIVE_TOL * p.tolerance_scale {
        return Err(Error::PotentialNotPreserved(m.max_lie_derivative));
    }
    m.max_identity_defect = m.audit(opts)?;
    if m.max_identity_defect > MOMENT_TOL * p.tolerance_scale {
        return Err(Error::Inconsistent(format!("moment identity defect {:.3e}", m.max_identity_defect)));
    }
    Ok(m)
}

impl MomentMap {
    pub fn generators(&self) -> &[PointField] {
        &self.generators
    }

    /// `k × r` matrix whose column `j` is `θ_x(ξ̲_j)`.
    pub fn eval(&self, x: &Point) -> Result<DMatrix<f64>> {
        let theta = self.patch.theta_at(x)?;
        let cols = self
            .generators
            .iter()
            .map(|g| Ok(&theta * g.eval_checked(x)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(DMatrix::from_fn(self.patch.dim_v, cols.len(), |c, j| cols[j][c]))
    }

    /// `max_j ‖dμ_j·X - ω(ξ̲_j, X)‖` at `x`.
    pub fn identity_defect(&self, x: &Point, tangent: &DVector<f64>) -> Result<f64> {
        let p = &self.patch;
        let omega = p.omega_at(x)?;
        let dmu = directional(|y| self.eval(y), x, tangent, p.fd_step, p.richardson)?;
        let mut worst: f64 = 0.0;
        for (j, g) in self.generators.iter().enumerate() {
            let rhs = omega.eval(&g.eval_checked(x)?, tangent);
            worst = worst.max((dmu.column(j) - rhs).norm());
        }
        Ok(worst)
    }

    /// Worst identity defect over sampled points and tangent vectors.
    pub fn audit(&self, opts: &SampleOptions) -> Result<f64> {
        let points = self.patch.sample_points(opts.samples, opts.seed);
        let n = self.patch.dim_m;
        let defects = exec::map_indices(opts.execution, points.len(), |i| {
            self.identity_defect(&points[i], &sample_vector(n, opts.seed ^ 0x5eed, i))
        });
        defects.into_iter().try_fold(0.0_f64, |acc, d| Ok(acc.max(d?)))
    }
}

// ---------------------------------------------------------------------------
// local embedding

/// The section `x ↦ (x, θ_x)` into the canonical patch over the same
/// coordinates.
#[derive(Clone, Debug)]
pub struct LocalEmbedding {
    source: ExactPatch,
    target: ExactPatch,
}

pub fn local_embed(p: &ExactPatch) -> Result<LocalEmbedding> {
    Ok(LocalEmbedding { source: p.clone(), target: canonical_theta(p.dim_m, p.dim_v)? })
}

impl LocalEmbedding {
    pub fn target(&self) -> &ExactPatch {
        &self.target
    }

    pub fn map(&self, x: &Point) -> Result<Point> {
        let n = self.source.dim_m;
        let k = self.source.dim_v;
        let t = self.source.theta_at(x)?;
        let mut y = DVector::zeros(n + n * k);
        y.rows_mut(0, n).copy_from(x);
        for c in 0..k {
            for j in 0..n {
                y[phi_index(n, c, j)] = t[(c, j)];
            }
        }
        Ok(y)
    }

    pub fn jacobian(&self, x: &Point) -> Result<DMatrix<f64>> {
        let n = self.source.dim_m;
        let cols = (0..n)
            .map(|a| {
                directional(
                    |y| self.map(y).map(|v| DMatrix::from_column_slice(v.len(), 1, v.as_slice())),
                    x,
                    &unit(n, a),
                    self.source.fd_step,
                    self.source.richardson,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = cols[0].nrows();
        Ok(DMatrix::from_fn(rows, n, |r, a| cols[a][(r, 0)]))
    }

    /// Pullback of the (constant) canonical form along the section.
    pub fn pullback_at(&self, x: &Point) -> Result<NumericForm> {
        let j = self.jacobian(x)?;
        let canon = self.target.omega_at(&self.map(x)?)?;
        Ok(NumericForm { components: canon.components.iter().map(|c| j.transpose() * c * &j).collect() })
    }

    /// Largest entrywise gap between the pullback and `ω` at `x`.
    pub fn defect_at(&self, x: &Point) -> Result<f64> {
        Ok(self.pullback_at(x)?.distance(&self.source.omega_at(x)?))
    }
}

// ---------------------------------------------------------------------------
// fiber derivative

/// A `V`-valued Lagrangian `L(q, v)` on `TRⁿ`.
#[derive(Clone)]
pub struct Lagrangian {
    pub n: usize,
    pub k: usize,
    f: Arc<LagrangianFn>,
}

impl fmt::Debug for Lagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lagrangian(n = {}, k = {})", self.n, self.k)
    }
}

impl Lagrangian {
    pub fn new(n: usize, k: usize, f: impl Fn(&DVector<f64>, &DVector<f64>) -> DVector<f64> + Send + Sync + 'static) -> Self {
        Lagrangian { n, k, f: Arc::new(f) }
    }

    fn at(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        let q = z.rows(0, self.n).into_owned();
        let v = z.rows(self.n, self.n).into_owned();
        let out = (self.f)(&q, &v);
        ensure_dim(self.k, out.len())?;
        finite(out.iter(), z)?;
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberDerivative {
    /// `𝔽L(q, v) = ∂L/∂v` as a `k × n` matrix.
    pub momentum: DMatrix<f64>,
    /// Jacobian `(n + nk) × 2n` of `(q, v) ↦ (q, ∂_v L)`.
    pub jacobian: DMatrix<f64>,
    /// `ω_L = 𝔽L^* ω` on `T_{(q,v)} TQ`.
    pub omega: NumericForm,
    pub rank: usize,
}

/// Fiber derivative of `L` at `(q, v)` and the pulled-back form.
///
/// Errors with [`Error::RankDeficient`] unless the Jacobian has rank `2n`.
pub fn fiber_derivative(l: &Lagrangian, q: &DVector<f64>, v: &DVector<f64>, tolerance_scale: f64) -> Result<FiberDerivative> {
    let n = l.n;
    ensure_dim(n, q.len())?;
    ensure_dim(n, v.len())?;
    let mut z = DVector::zeros(2 * n);
    z.rows_mut(0, n).copy_from(q);
    z.rows_mut(n, n).copy_from(v);
    let h = SECOND_DIFF_STEP;
    let e = |i: usize| unit(2 * n, i) * h;

    let mut momentum = DMatrix::zeros(l.k, n);
    for j in 0..n {
        let d = (l.at(&(&z + e(n + j)))? - l.at(&(&z - e(n + j)))?) / (2.0 * h);
        momentum.set_column(j, &d);
    }

    // ∂²L / ∂z_a ∂v_j by mixed central differences
    let mut jac = DMatrix::zeros(n + n * l.k, 2 * n);
    for a in 0..n {
        jac[(a, a)] = 1.0;
    }
    for a in 0..2 * n {
        for j in 0..n {
            let (ea, ej) = (e(a), e(n + j));
            let d = (l.at(&(&z + &ea + &ej))? - l.at(&(&z + &ea - &ej))? - l.at(&(&z - &ea + &ej))?
                + l.at(&(&z - &ea - &ej))?)
                / (4.0 * h * h);
            for c in 0..l.k {
                jac[(phi_index(n, c, j), a)] = d[c];
            }
        }
    }
    let rank = numeric_rank(&jac, HESSIAN_RANK_TOL * tolerance_scale);
    if rank < 2 * n {
        return Err(Error::RankDeficient { rank, expected: 2 * n });
    }
    let canon = NumericForm::from_exact(&crate::polycore::canonical_model(n, l.k)?);
    let omega = NumericForm { components: canon.components.iter().map(|c| jac.transpose() * c * &jac).collect() };
    Ok(FiberDerivative { momentum, jacobian: jac, omega, rank })
}

/// Checks left-invariance of the Maurer–Cartan potential:
/// `θ_{hg}((λ_h)_* v) = θ_g(v)`, returning the largest defect.
pub fn so3_left_invariance_defect(x: &Vector3<f64>, h: &Matrix3<f64>, v: &Vector3<f64>) -> f64 {
    let g = exp_so3(x);
    let y = log_so3(&(h * g));
    let jl_y = so3_left_jacobian(&y);
    let w = match jl_y.try_inverse() {
        Some(inv) => inv * h * so3_left_jacobian(x) * v,
        None => return f64::INFINITY,
    };
    (so3_right_jacobian(&y) * w - so3_right_jacobian(x) * v).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::canonical_model;

    fn pt(v: &[f64]) -> Point {
        DVector::from_column_slice(v)
    }

    fn coord(i: usize, k: usize) -> PointField {
        // k-vector with x_i in the first slot
        PointField::new(move |x| {
            let mut v = DVector::zeros(k);
            v[0] = x[i];
            v
        })
    }

    #[test]
    fn canonical_omega_matches_model() {
        let p = canonical_theta(1, 1).unwrap();
        let w = p.omega_at(&pt(&[0.3, -0.2])).unwrap();
        assert!(w.distance(&NumericForm { components: vec![DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])] }) < 1e-8);
        let p = canonical_theta(2, 2).unwrap();
        let x = pt(&[0.1, 0.2, 0.3, -0.4, 0.5, 0.6]);
        let model = NumericForm::from_exact(&canonical_model(2, 2).unwrap());
        assert!(p.omega_at(&x).unwrap().distance(&model) < 1e-7);
        assert!(p.symmetric_defect(&x).unwrap() < 1e-8);
    }

    #[test]
    fn constant_potential_has_zero_form() {
        let p = constant_theta(DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])).unwrap();
        assert!(p.omega_at(&pt(&[0.1, 0.2, 0.3])).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite_potential() {
        let p = ExactPatch::new("bad", 1, 1, vec![(-1.0, 1.0)], |x| DMatrix::from_element(1, 1, x[0].sqrt())).unwrap();
        assert!(matches!(p.omega_at(&pt(&[0.0])), Err(Error::NonFinite(_))));
    }

    #[test]
    fn momentum_field_and_bracket() {
        let p = canonical_theta(1, 1).unwrap();
        let x = pt(&[0.2, 0.7]);
        let q = coord(0, 1);
        let pp = coord(1, 1);
        let s = hamiltonian_field(&p, &pp, &x).unwrap();
        assert!(s.is_hamiltonian());
        // -ι_X(dq∧dp) = dp forces X = -∂q
        assert!((s.field.clone() - pt(&[-1.0, 0.0])).norm() < 1e-6);
        let b = poisson_bracket(&p, &q, &pp, &x).unwrap();
        assert!((b[0] + 1.0).abs() < 1e-6);
        assert!(poisson_bracket(&p, &q, &q, &x).unwrap().norm() < 1e-9);
    }

    #[test]
    fn base_functions_have_vertical_fields() {
        let p = canonical_theta(2, 2).unwrap();
        let f = PointField::new(|x| pt(&[x[0] * x[1], (x[0]).sin()]));
        for x in p.sample_points(10, 3) {
            let s = hamiltonian_field(&p, &f, &x).unwrap();
            assert!(s.is_hamiltonian());
            assert!(s.field[0].abs() < 1e-6 && s.field[1].abs() < 1e-6);
        }
    }

    #[test]
    fn not_every_function_is_hamiltonian() {
        let p = canonical_theta(1, 2).unwrap();
        let f = PointField::new(|x| pt(&[0.0, x[2]]));
        let s = hamiltonian_field(&p, &f, &pt(&[0.1, 0.2, 0.3])).unwrap();
        assert!(s.residual > 1e-3 && !s.is_hamiltonian());
        assert!((s.residual - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        let g = coord(0, 2);
        assert!(matches!(poisson_bracket(&p, &f, &g, &pt(&[0.1, 0.2, 0.3])), Err(Error::NotHamiltonian { .. })));
    }

    #[test]
    fn degenerate_forms_report_rank() {
        let p = constant_theta(DMatrix::from_row_slice(1, 2, &[1.0, 0.0])).unwrap();
        let f = PointField::new(|_| pt(&[0.0]));
        let s = hamiltonian_field(&p, &f, &pt(&[0.0, 0.0])).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.is_degenerate() && s.field.norm() == 0.0);
    }

    #[test]
    fn bracket_bilinearity() {
        let p = canonical_theta(2, 1).unwrap();
        let f = PointField::new(|x| pt(&[x[0] * x[2] + x[1]]));
        let g = PointField::new(|x| pt(&[x[3] * x[3]]));
        let h = PointField::new(|x| pt(&[x[0] + 2.0 * x[2]]));
        let gh = PointField::new(|x| pt(&[x[3] * x[3] + x[0] + 2.0 * x[2]]));
        for x in p.sample_points(5, 1) {
            let lhs = poisson_bracket(&p, &f, &gh, &x).unwrap();
            let rhs = poisson_bracket(&p, &f, &g, &x).unwrap() + poisson_bracket(&p, &f, &h, &x).unwrap();
            assert!((lhs - rhs).norm() < 1e-6);
        }
    }

    #[test]
    fn translation_moment_is_the_fiber_coordinate() {
        for k in 1..=3 {
            let p = canonical_theta(1, k).unwrap();
            let mu = moment_from_potential(&p, vec![canonical_translation(1, k, 0)], &SampleOptions::default()).unwrap();
            let x = pt(&[0.3, 0.1, -0.2, 0.4][..1 + k]);
            let m = mu.eval(&x).unwrap();
            for c in 0..k {
                assert!((m[(c, 0)] - x[1 + c]).abs() < 1e-12);
            }
        }
        let p = canonical_theta(1, 1).unwrap();
        let zero = PointField::new(|_| DVector::zeros(2));
        let mu = moment_from_potential(&p, vec![zero], &SampleOptions::default()).unwrap();
        assert_eq!(mu.eval(&pt(&[0.5, 0.5])).unwrap()[(0, 0)], 0.0);
    }

    #[test]
    fn rotation_moment_identity() {
        let p = canonical_theta(2, 2).unwrap();
        let mu = moment_from_potential(&p, vec![canonical_rotation(2)], &SampleOptions::default()).unwrap();
        assert!(mu.max_identity_defect < MOMENT_TOL);
    }

    #[test]
    fn non_invariant_action_is_rejected() {
        let p = canonical_theta(1, 1).unwrap();
        // dilation of q without the compensating fiber rescaling
        let g = PointField::new(|x| pt(&[x[0], 0.0]));
        assert!(matches!(moment_from_potential(&p, vec![g], &SampleOptions::default()), Err(Error::PotentialNotPreserved(_))));
    }

    #[test]
    fn so3_moment_matches_group_formula() {
        let p = so3_patch();
        let gens = (0..3).map(|i| so3_generator(Vector3::ith(i, 1.0))).collect();
        let mu = moment_from_potential(&p, gens, &SampleOptions::default()).unwrap();
        for x in p.sample_points(20, 2) {
            let m = mu.eval(&x).unwrap();
            for i in 0..3 {
                let exact = so3_moment_exact(&x, &Vector3::ith(i, 1.0));
                assert!((m.column(i) - exact).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn so3_form_at_identity_is_cross_product() {
        let w = so3_patch().omega_at(&pt(&[0.0, 0.0, 0.0])).unwrap();
        assert!(w.distance(&NumericForm::from_exact(&VForm::cross_product())) < 1e-8);
    }

    #[test]
    fn so3_bracket_of_moments() {
        let p = so3_patch();
        let mu = |xi: Vector3<f64>| PointField::new(move |x| DVector::from_column_slice(so3_moment_exact(x, &xi).as_slice()));
        let (a, b) = (Vector3::new(1.0, 0.5, 0.0), Vector3::new(0.0, -0.3, 1.0));
        for x in p.sample_points(10, 4) {
            let s = hamiltonian_field(&p, &mu(a), &x).unwrap();
            // the moment component for ξ is Hamiltonian with field -ξ̲
            assert!((s.field + so3_generator(a).eval(&x)).norm() < 1e-6);
            let br = poisson_bracket(&p, &mu(a), &mu(b), &x).unwrap();
            let expected = so3_moment_exact(&x, &a.cross(&b));
            assert!((br + DVector::from_column_slice(expected.as_slice())).norm() < 1e-4);
        }
    }

    #[test]
    fn closedness() {
        for p in [canonical_theta(2, 1).unwrap(), so3_patch()] {
            for x in p.sample_points(5, 0) {
                assert!(p.closedness_defect(&x).unwrap() < 1e-4);
            }
        }
    }

    #[test]
    fn left_invariance() {
        for i in 0..20 {
            let x = Vector3::from_column_slice(sample_vector(3, 1, i).as_slice()) * 0.8;
            let h = exp_so3(&(Vector3::from_column_slice(sample_vector(3, 2, i).as_slice()) * 0.8));
            let v = Vector3::from_column_slice(sample_vector(3, 3, i).as_slice());
            assert!(so3_left_invariance_defect(&x, &h, &v) < 1e-9);
        }
    }

    #[test]
    fn local_embeddings() {
        let canon = canonical_theta(1, 2).unwrap();
        let e = local_embed(&canon).unwrap();
        assert_eq!(e.target().dim_m(), 3 + 3 * 2);
        for x in canon.sample_points(5, 0) {
            assert!(e.defect_at(&x).unwrap() < 1e-7);
        }
        let so3 = so3_patch();
        let e = local_embed(&so3).unwrap();
        for x in so3.sample_points(5, 0) {
            assert!(e.defect_at(&x).unwrap() < 1e-5);
        }
        let c = constant_theta(DMatrix::from_row_slice(1, 2, &[1.0, -1.0])).unwrap();
        let e = local_embed(&c).unwrap();
        let x = pt(&[0.2, 0.4]);
        assert!(e.pullback_at(&x).unwrap().max_abs() < 1e-9);
        assert_eq!(e.map(&x).unwrap().rows(2, 2), pt(&[1.0, -1.0]));
    }

    #[test]
    fn fiber_derivatives() {
        let kinetic = Lagrangian::new(1, 1, |_, v| pt(&[0.5 * v[0] * v[0]]));
        let fd = fiber_derivative(&kinetic, &pt(&[0.3]), &pt(&[0.7]), 1.0).unwrap();
        assert!((fd.momentum[(0, 0)] - 0.7).abs() < 1e-6);
        let standard = NumericForm { components: vec![DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])] };
        assert!(fd.omega.distance(&standard) < 1e-6);

        let two = Lagrangian::new(1, 2, |q, v| pt(&[0.5 * v[0] * v[0], q[0] * v[0]]));
        let fd = fiber_derivative(&two, &pt(&[0.4]), &pt(&[-0.2]), 1.0).unwrap();
        assert_eq!(fd.omega.stacked_rank(1e-8), 2);

        let linear = Lagrangian::new(1, 1, |_, v| pt(&[v[0]]));
        assert!(matches!(fiber_derivative(&linear, &pt(&[0.0]), &pt(&[1.0]), 1.0), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn richardson_is_at_least_as_accurate() {
        let p = so3_patch().with_richardson(true);
        let e = local_embed(&p).unwrap();
        assert!(e.defect_at(&pt(&[0.3, -0.5, 0.2])).unwrap() < 1e-8);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin_patch("canonical:2,3").unwrap().dim_m(), 8);
        assert_eq!(builtin_patch("rigidbody").unwrap().name(), "rigidbody");
        assert!(builtin_patch("canonical:2").is_err());
        assert!(builtin_patch("torus").is_err());
    }

    #[test]
    fn halton_points_stay_inside() {
        let p = canonical_theta(2, 2).unwrap();
        let pts = p.sample_points(200, 9);
        assert!(pts.iter().all(|x| p.contains(x)));
        assert_eq!(pts, p.sample_points(200, 9));
        assert_ne!(pts, p.sample_points(200, 10));
    }
}
