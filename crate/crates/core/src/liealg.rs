//! Lie algebras as coefficient systems, and SO(3) group-level checks.
//!
//! A [`LieAlgebra`] is stored by its structure constants `c^k_{ij}` with
//! `[e_i, e_j] = Σ_k c^k_{ij} e_k`; indices are 0-based. The bracket itself is
//! a `𝔤`-valued form on `𝔤` once the center vanishes.
//!
//! The numeric half works with `SO(3)` in floating point, identifying `so(3)`
//! with `R³` through the hat map.

use nalgebra::{Matrix3, Vector3};
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{ensure_dim, Error, Result};
use crate::exactla::{kernel, quotient, unit_vector, Matrix, Scalar, Subspace, Vector};
use crate::exec::{self, Execution};
use crate::polycore::{self, LinearReduction, VForm};
use crate::random::trial_rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `constants[i][j][k] = c^k_{ij}`.
    constants: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// Checks antisymmetry and the Jacobi identity exactly.
    pub fn from_constants(dim: usize, constants: Vec<Vec<Vector>>) -> Result<Self> {
        ensure_dim(dim, constants.len())?;
        for row in &constants {
            ensure_dim(dim, row.len())?;
            for v in row {
                ensure_dim(dim, v.len())?;
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if constants[i][j][k] != -constants[j][i][k].clone() {
                        return Err(Error::StructureConstants(format!(
                            "antisymmetry at c^{k}_{{{i}{j}}}"
                        )));
                    }
                }
            }
        }
        let g = LieAlgebra { dim, constants };
        for i in 0..dim {
            for j in (i + 1)..dim {
                for l in (j + 1)..dim {
                    let (ei, ej, el) = (unit_vector(dim, i), unit_vector(dim, j), unit_vector(dim, l));
                    let a = g.bracket(&ei, &g.bracket(&ej, &el)?)?;
                    let b = g.bracket(&ej, &g.bracket(&el, &ei)?)?;
                    let c = g.bracket(&el, &g.bracket(&ei, &ej)?)?;
                    let sum = crate::exactla::add_vectors(&crate::exactla::add_vectors(&a, &b), &c);
                    if !crate::exactla::is_zero_vector(&sum) {
                        return Err(Error::StructureConstants(format!("the Jacobi identity at ({i}, {j}, {l})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds the constants from brackets `[e_i, e_j] = v`; the opposite
    /// order is filled in, and unlisted pairs commute.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut constants: Vec<Vec<Option<Vector>>> = vec![vec![None; dim]; dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Malformed(format!("basis index out of range in [e{i}, e{j}]")));
            }
            ensure_dim(dim, v.len())?;
            let neg: Vector = v.iter().map(|x| -x.clone()).collect();
            for (a, b, w) in [(i, j, v.clone()), (j, i, neg)] {
                match &constants[a][b] {
                    Some(old) if *old != w => {
                        return Err(Error::StructureConstants(format!("conflicting entries for [e{i}, e{j}]")));
                    }
                    _ => constants[a][b] = Some(w),
                }
            }
        }
        let constants = constants
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_else(|| vec![Scalar::zero(); dim])).collect())
            .collect();
        Self::from_constants(dim, constants)
    }

    fn from_int_brackets(dim: usize, brackets: &[(usize, usize, &[i64])]) -> Self {
        let b: Vec<_> = brackets
            .iter()
            .map(|(i, j, v)| (*i, *j, v.iter().map(|x| Scalar::from_integer((*x).into())).collect()))
            .collect();
        Self::from_brackets(dim, &b).expect("valid built-in algebra")
    }

    /// `so(3)` with `[e_i, e_j] = ε_{ijk} e_k`.
    pub fn so3() -> Self {
        Self::from_int_brackets(3, &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (2, 0, &[0, 1, 0])])
    }

    /// `sl(2)` in the basis `(h, e, f)`.
    pub fn sl2() -> Self {
        Self::from_int_brackets(3, &[(0, 1, &[0, 2, 0]), (0, 2, &[0, 0, -2]), (1, 2, &[1, 0, 0])])
    }

    /// Heisenberg algebra `[e_0, e_1] = e_2`.
    pub fn heisenberg() -> Self {
        Self::from_int_brackets(3, &[(0, 1, &[0, 0, 1])])
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, &[]).expect("abelian")
    }

    /// `𝔤 ⊕ 𝔥` with the basis of `𝔤` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let n = self.dim + other.dim;
        let mut constants = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (off, g) in [(0, self), (self.dim, other)] {
            for i in 0..g.dim {
                for j in 0..g.dim {
                    for k in 0..g.dim {
                        constants[off + i][off + j][off + k] = g.constants[i][j][k].clone();
                    }
                }
            }
        }
        LieAlgebra { dim: n, constants }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "so3" => Some(Self::so3()),
            "sl2" => Some(Self::sl2()),
            "heisenberg" => Some(Self::heisenberg()),
            "so3xso3" => Some(Self::so3().direct_sum(&Self::so3())),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[i][j][k]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.dim, x.len())?;
        ensure_dim(self.dim, y.len())?;
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        *o += &coeff * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `ad_x` as a matrix, `(ad_x)_{kj} = Σ_i x_i c^k_{ij}`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        ensure_dim(self.dim, x.len())?;
        let cols = (0..self.dim)
            .map(|j| self.bracket(x, &unit_vector(self.dim, j)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.dim, &cols)
    }

    /// Smallest subalgebra containing `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vector]) -> Result<Subspace> {
        let mut s = Subspace::span(self.dim, gens.to_vec())?;
        loop {
            let vs = s.vectors().to_vec();
            let mut brackets = vs.clone();
            for (a, x) in vs.iter().enumerate() {
                for y in &vs[a + 1..] {
                    brackets.push(self.bracket(x, y)?);
                }
            }
            let next = Subspace::span(self.dim, brackets)?;
            if next.dim() == s.dim() {
                return Ok(s);
            }
            s = next;
        }
    }

    pub fn is_subalgebra(&self, a: &Subspace) -> Result<bool> {
        Ok(self.generated_subalgebra(a.vectors())?.dim() == a.dim())
    }

    /// Whether all brackets of elements of `a` vanish.
    pub fn is_abelian(&self, a: &Subspace) -> Result<bool> {
        ensure_dim(self.dim, a.ambient_dim())?;
        let vs = a.vectors();
        for (i, x) in vs.iter().enumerate() {
            for y in &vs[i + 1..] {
                if !crate::exactla::is_zero_vector(&self.bracket(x, y)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `𝔷(𝔤) = ∩ᵢ ker ad_{e_i}`.
pub fn center(g: &LieAlgebra) -> Subspace {
    centralizer(g, &Subspace::full(g.dim)).expect("dimensions agree")
}

/// `𝔠_𝔤(𝔞) = {x : [a, x] = 0 ∀ a ∈ 𝔞}`.
pub fn centralizer(g: &LieAlgebra, a: &Subspace) -> Result<Subspace> {
    ensure_dim(g.dim, a.ambient_dim())?;
    let ads = a.vectors().iter().map(|v| g.ad(v)).collect::<Result<Vec<_>>>()?;
    Ok(kernel(&Matrix::vstack(g.dim, &ads)?))
}

/// The bracket as a `𝔤`-valued form on `𝔤`: component `i` is `(c^i_{jk})_{jk}`.
pub fn bracket_form(g: &LieAlgebra) -> Result<VForm> {
    let z = center(g);
    if !z.is_zero() {
        return Err(Error::NonzeroCenter(z.dim()));
    }
    let comps = (0..g.dim)
        .map(|i| Matrix::from_fn(g.dim, g.dim, |j, k| g.constants[j][k][i].clone()))
        .collect();
    VForm::new(g.dim, comps)
}

/// Linear reduction of the bracket form by `𝔞`, checked against
/// `𝔠_𝔤(𝔞) / (𝔞 ∩ 𝔠_𝔤(𝔞))` computed from `ad` directly.
pub fn lie_reduce(g: &LieAlgebra, a: &Subspace) -> Result<LinearReduction> {
    let form = bracket_form(g)?;
    let red = polycore::linear_reduce(&form, a)?;
    let c = centralizer(g, a)?;
    let direct = quotient(&c, &a.intersect(&c)?)?;
    if red.carrier.ambient() != &c || red.dim() != direct.dim() {
        return Err(Error::Inconsistent("reduction differs from the centralizer quotient".into()));
    }
    Ok(red)
}

// ---------------------------------------------------------------------------
// SO(3)

/// Group-relation tolerance for `SO(3)` elements and equivariance checks.
pub const GROUP_TOLERANCE: f64 = 1e-9;
/// Tolerance for closed-form rotation identities.
pub const ROTATION_TOLERANCE: f64 = 1e-12;

pub fn hat(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

pub fn vee(m: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(m[(2, 1)], m[(0, 2)], m[(1, 0)])
}

/// Rodrigues' formula for `exp(v̂)`.
pub fn exp_so3(v: &Vector3<f64>) -> Matrix3<f64> {
    let theta = v.norm();
    let k = hat(v);
    let (a, b) = if theta < 1e-6 {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0 + t2 * t2 / 120.0, 0.5 - t2 / 24.0 + t2 * t2 / 720.0)
    } else {
        (theta.sin() / theta, (1.0 - theta.cos()) / (theta * theta))
    };
    Matrix3::identity() + k * a + k * k * b
}

/// Principal logarithm (rotation vector with angle in `[0, π]`).
pub fn log_so3(r: &Matrix3<f64>) -> Vector3<f64> {
    let cos = (r.trace() - 1.0) / 2.0;
    let w = vee(&(r - r.transpose())) / 2.0;
    let theta = w.norm().atan2(cos);
    if theta < 1e-8 {
        return w;
    }
    if std::f64::consts::PI - theta < 1e-6 {
        // axis from the symmetric part r + I = 2 n nᵀ (near θ = π)
        let s = (r + Matrix3::identity()) / 2.0;
        let (i, _) = (0..3).map(|i| (i, s[(i, i)])).fold((0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
        let mut n: Vector3<f64> = s.column(i).into();
        n /= n.norm();
        if n.dot(&w) < 0.0 {
            n = -n;
        }
        return n * theta;
    }
    w * (theta / w.norm())
}

/// Element of `SO(3)` in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixGroupElement {
    matrix: Matrix3<f64>,
}

impl MatrixGroupElement {
    /// Accepts `m` if `‖mᵀm - I‖` and `|det m - 1|` are within
    /// `GROUP_TOLERANCE · tolerance_scale`.
    pub fn new(matrix: Matrix3<f64>, tolerance_scale: f64) -> Result<Self> {
        let defect = group_defect(&matrix);
        if !(defect <= GROUP_TOLERANCE * tolerance_scale) {
            return Err(Error::GroupRelation(defect));
        }
        Ok(MatrixGroupElement { matrix })
    }

    pub fn identity() -> Self {
        MatrixGroupElement { matrix: Matrix3::identity() }
    }

    pub fn exp(v: &Vector3<f64>) -> Self {
        MatrixGroupElement { matrix: exp_so3(v) }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn inverse(&self) -> Self {
        MatrixGroupElement { matrix: self.matrix.transpose() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        MatrixGroupElement { matrix: self.matrix * other.matrix }
    }
}

fn group_defect(m: &Matrix3<f64>) -> f64 {
    let orth = (m.transpose() * m - Matrix3::identity()).norm();
    let det = (m.determinant() - 1.0).abs();
    if orth.is_finite() && det.is_finite() {
        orth.max(det)
    } else {
        f64::INFINITY
    }
}

/// `Ad_g ξ = (g ξ̂ g⁻¹)^∨`.
pub fn adjoint(g: &MatrixGroupElement, xi: &Vector3<f64>) -> Vector3<f64> {
    vee(&(g.matrix * hat(xi) * g.matrix.transpose()))
}

/// Moment map of left translation, `μ(g)(ξ) = Ad_{g⁻¹} ξ`.
pub fn maurer_cartan_moment(g: &MatrixGroupElement, xi: &Vector3<f64>) -> Vector3<f64> {
    adjoint(&g.inverse(), xi)
}

/// Haar-distributed rotation: QR of a Gaussian matrix with the signs of
/// `diag R` made positive, then one column flipped if the determinant is
/// negative.
pub fn haar_sample<R: Rng>(rng: &mut R) -> MatrixGroupElement {
    let a = Matrix3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..3 {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    MatrixGroupElement { matrix: q }
}

/// Sample `i` of a seeded Haar run; independent of execution order.
pub fn haar_sample_indexed(seed: u64, i: usize) -> MatrixGroupElement {
    haar_sample(&mut trial_rng(seed, i as u64))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingOptions {
    pub samples: usize,
    pub seed: u64,
    pub tolerance_scale: f64,
    pub execution: Execution,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { samples: 1000, seed: 0, tolerance_scale: 1.0, execution: Execution::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArnoldReport {
    pub fixed_points_found: usize,
    pub samples: usize,
    /// Smallest `‖exp(tξ) g - g‖_F` over the samples.
    pub min_displacement: f64,
}

/// Counts sampled `g` fixed by left translation with `exp(tξ)`.
pub fn arnold_counterexample(xi: &Vector3<f64>, t: f64, opts: &SamplingOptions) -> Result<ArnoldReport> {
    if !xi.iter().all(|x| x.is_finite()) || !t.is_finite() {
        return Err(Error::NonFinite(vec![xi.x, xi.y, xi.z, t]));
    }
    let tol = GROUP_TOLERANCE * opts.tolerance_scale;
    let shift = exp_so3(&(xi * t));
    if (shift - Matrix3::identity()).norm() < tol {
        return Err(Error::Vacuous("exp(tξ) is the identity".into()));
    }
    let displacements = exec::map_indices(opts.execution, opts.samples, |i| {
        let g = haar_sample_indexed(opts.seed, i).matrix;
        (shift * g - g).norm()
    });
    Ok(ArnoldReport {
        fixed_points_found: displacements.iter().filter(|d| **d < tol).count(),
        samples: opts.samples,
        min_displacement: displacements.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityReport {
    pub on_sphere: bool,
    /// Largest `|‖μ(g)ξ‖ - ‖ξ‖|` over the samples.
    pub max_radius_defect: f64,
    /// `‖ξ‖ - ‖(p + q)/2‖` for the pair of image points with the shortest
    /// midpoint.
    pub midpoint_gap: f64,
    pub pair: Option<(Vector3<f64>, Vector3<f64>)>,
}

impl ConvexityReport {
    /// The image is certified non-convex: everything on the sphere and some
    /// midpoint strictly inside.
    pub fn certifies_nonconvexity(&self) -> bool {
        self.on_sphere && self.midpoint_gap > 1e-6
    }
}

/// Samples the image `{μ(g)(ξ)}` and looks for a chord leaving the sphere.
pub fn convexity_counterexample(xi: &Vector3<f64>, opts: &SamplingOptions) -> Result<ConvexityReport> {
    if !xi.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite(vec![xi.x, xi.y, xi.z]));
    }
    let radius = xi.norm();
    if radius == 0.0 {
        return Err(Error::Vacuous("ξ = 0 has a one-point image".into()));
    }
    let points = exec::map_indices(opts.execution, opts.samples, |i| {
        maurer_cartan_moment(&haar_sample_indexed(opts.seed, i), xi)
    });
    let max_radius_defect = points.iter().map(|p| (p.norm() - radius).abs()).fold(0.0, f64::max);
    let best = exec::map_indices(opts.execution, points.len(), |i| {
        let p = points[i];
        points[i + 1..]
            .iter()
            .map(|q| (((p + q) / 2.0).norm(), *q))
            .fold(None, |acc: Option<(f64, Vector3<f64>)>, cur| match acc {
                Some(a) if a.0 <= cur.0 => Some(a),
                _ => Some(cur),
            })
            .map(|(m, q)| (m, p, q))
    });
    let best = best.into_iter().flatten().fold(None, |acc: Option<(f64, Vector3<f64>, Vector3<f64>)>, cur| {
        match acc {
            Some(a) if a.0 <= cur.0 => Some(a),
            _ => Some(cur),
        }
    });
    let (midpoint_gap, pair) = match best {
        Some((m, p, q)) => (radius - m, Some((p, q))),
        None => (0.0, None),
    };
    Ok(ConvexityReport {
        on_sphere: max_radius_defect <= GROUP_TOLERANCE * opts.tolerance_scale,
        max_radius_defect,
        midpoint_gap,
        pair,
    })
}

/// Membership in the zero-shifted level set of the moment map of `H ⊆ G`
/// acting by left translation, where `H` is the connected subgroup with Lie
/// algebra spanned by `h_gens`: `Ad_{g⁻¹} ξ = ξ` for every generator.
pub fn in_reduction_level(g: &MatrixGroupElement, h_gens: &[Vector3<f64>], tolerance_scale: f64) -> bool {
    let tol = GROUP_TOLERANCE * tolerance_scale;
    h_gens.iter().all(|xi| (maurer_cartan_moment(g, xi) - xi).norm() <= tol * (1.0 + xi.norm()))
}

/// Whether `g` commutes with `exp(ξ)` for every generator.
pub fn commutes_with_generators(g: &MatrixGroupElement, h_gens: &[Vector3<f64>], tolerance_scale: f64) -> bool {
    let tol = GROUP_TOLERANCE * tolerance_scale;
    h_gens.iter().all(|xi| {
        let h = exp_so3(xi);
        (g.matrix * h - h * g.matrix).norm() <= tol * (1.0 + xi.norm())
    })
}
