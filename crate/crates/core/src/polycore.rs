//! V-symplectic vector spaces over `Q`.
//!
//! A [`VForm`] is a `Qᵏ`-valued alternating bilinear form on `Qⁿ`, stored as
//! its `k` skew component matrices. On top of it live the polysymplectic
//! orthogonal, the isotropic/coisotropic/Lagrangian/polysymplectic
//! classification, coefficient maps `V → V'`, the canonical model
//! `U ⊕ Hom(U, V)`, the embedding `u ↦ u - ½ ι_u ω` into it, and linear
//! reduction `A^ω / (A ∩ A^ω)`.

use num_traits::{One, Zero};

use crate::error::{ensure_dim, Error, Result};
use crate::exactla::{
    self, add_vectors, int, kernel, quotient, ratio, DisplayRow, Matrix, QuotientSpace, Scalar,
    Subspace, Vector,
};

/// `V`-valued alternating bilinear form, `V ≅ Qᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VForm {
    dim_u: usize,
    components: Vec<Matrix>,
}

impl VForm {
    /// Validates that there is at least one component and that each is an
    /// exactly skew `n × n` matrix.
    pub fn new(dim_u: usize, components: Vec<Matrix>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Malformed("a form needs at least one component".into()));
        }
        for (i, c) in components.iter().enumerate() {
            ensure_dim(dim_u, c.rows())?;
            ensure_dim(dim_u, c.cols())?;
            if !c.is_skew() {
                return Err(Error::NotSkew(i));
            }
        }
        Ok(VForm { dim_u, components })
    }

    /// The standard symplectic form on `Q²` (`ω(e1, e2) = 1`).
    pub fn standard_symplectic() -> Self {
        VForm::new(2, vec![Matrix::from_i64(&[&[0, 1], &[-1, 0]])]).expect("skew")
    }

    /// The cross product on `Q³` with `e1 × e2 = e3`.
    pub fn cross_product() -> Self {
        let comps = (0..3)
            .map(|i| Matrix::from_fn(3, 3, |j, k| int(levi_civita(i, j, k))))
            .collect();
        VForm::new(3, comps).expect("skew")
    }

    /// Stacks the components of forms on the same space (`⊕ᵢ ωᵢ`).
    pub fn direct_sum(forms: &[VForm]) -> Result<Self> {
        let n = forms.first().map(|f| f.dim_u).ok_or_else(|| Error::Malformed("empty sum".into()))?;
        let mut comps = Vec::new();
        for f in forms {
            ensure_dim(n, f.dim_u)?;
            comps.extend(f.components.iter().cloned());
        }
        VForm::new(n, comps)
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Single-component form `ωᵢ`.
    pub fn component_form(&self, i: usize) -> VForm {
        VForm { dim_u: self.dim_u, components: vec![self.components[i].clone()] }
    }

    /// `ω(u, v) ∈ Qᵏ`.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.dim_u, u.len())?;
        ensure_dim(self.dim_u, v.len())?;
        self.components.iter().map(|c| c.bilinear(u, v)).collect()
    }

    /// `ι_u ω` as a `k × n` matrix: row `i` is `uᵀ ωᵢ`.
    pub fn flat(&self, u: &[Scalar]) -> Result<Matrix> {
        ensure_dim(self.dim_u, u.len())?;
        let rows = self.components.iter().map(|c| c.vec_mul(u)).collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.dim_u, rows)
    }

    /// `∩ᵢ ker ωᵢ`.
    pub fn degeneracy_kernel(&self) -> Subspace {
        let stacked = Matrix::vstack(self.dim_u, &self.components).expect("square components");
        kernel(&stacked)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracy_kernel().is_zero()
    }

    /// Pullback along a linear map given as a `dim_u × m` matrix.
    pub fn pullback(&self, map: &Matrix) -> Result<VForm> {
        ensure_dim(self.dim_u, map.rows())?;
        let mt = map.transpose();
        let comps = self
            .components
            .iter()
            .map(|c| Ok(&(&mt * c) * map))
            .collect::<Result<Vec<_>>>()?;
        VForm::new(map.cols(), comps)
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

pub fn flat(omega: &VForm, u: &[Scalar]) -> Result<Matrix> {
    omega.flat(u)
}

pub fn is_nondegenerate(omega: &VForm) -> bool {
    omega.is_nondegenerate()
}

/// Polysymplectic orthogonal `A^ω = {v : ω(a, v) = 0 ∀ a ∈ A}`, i.e. the
/// intersection of `ker ι_a ω` over a basis of `A`.
pub fn orthogonal(omega: &VForm, a: &Subspace) -> Result<Subspace> {
    ensure_dim(omega.dim_u, a.ambient_dim())?;
    let flats = a.vectors().iter().map(|v| omega.flat(v)).collect::<Result<Vec<_>>>()?;
    let stacked = Matrix::vstack(omega.dim_u, &flats)?;
    Ok(kernel(&stacked))
}

/// Isotropic/coisotropic/Lagrangian/polysymplectic flags of a subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceClass {
    pub isotropic: bool,
    pub coisotropic: bool,
    pub lagrangian: bool,
    pub polysymplectic: bool,
}

impl SubspaceClass {
    /// `"lagrangian"` when Lagrangian, otherwise the set flags joined by `+`,
    /// or `"none"`.
    pub fn label(&self) -> String {
        if self.lagrangian {
            return "lagrangian".into();
        }
        let mut parts = Vec::new();
        if self.isotropic {
            parts.push("isotropic");
        }
        if self.coisotropic {
            parts.push("coisotropic");
        }
        if self.polysymplectic {
            parts.push("polysymplectic");
        }
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join("+")
        }
    }
}

pub fn classify(omega: &VForm, a: &Subspace) -> Result<SubspaceClass> {
    let orth = orthogonal(omega, a)?;
    let isotropic = orth.contains(a)?;
    let coisotropic = a.contains(&orth)?;
    Ok(SubspaceClass {
        isotropic,
        coisotropic,
        lagrangian: isotropic && coisotropic,
        polysymplectic: a.intersect(&orth)?.is_zero(),
    })
}

/// A linear map `f: V → V'` given as a `k' × k` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMap {
    matrix: Matrix,
}

impl CoefficientMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() == 0 {
            return Err(Error::Malformed("coefficient map with empty target".into()));
        }
        Ok(CoefficientMap { matrix })
    }

    pub fn identity(k: usize) -> Self {
        CoefficientMap { matrix: Matrix::identity(k) }
    }

    /// Projection `Qᵏ → Q` onto coordinate `i`.
    pub fn coordinate(k: usize, i: usize) -> Self {
        CoefficientMap { matrix: Matrix::from_fn(1, k, |_, j| if j == i { Scalar::one() } else { Scalar::zero() }) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.matrix.rows()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&self.matrix)
    }
}

/// `f ∘ ω` (components recombined by the rows of `f`) and its degeneracy
/// kernel `∩ᵢ ker (f∘ω)ᵢ`.
pub fn apply_coefficient_map(f: &CoefficientMap, omega: &VForm) -> Result<(VForm, Subspace)> {
    ensure_dim(omega.dim_v(), f.source_dim())?;
    let n = omega.dim_u;
    let comps = (0..f.target_dim())
        .map(|r| {
            let mut acc = Matrix::zeros(n, n);
            for (c, comp) in omega.components.iter().enumerate() {
                let coeff = f.matrix.get(r, c);
                if !coeff.is_zero() {
                    acc = acc.add(&comp.scale(coeff))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let reduced = VForm::new(n, comps)?;
    let ker = reduced.degeneracy_kernel();
    Ok((reduced, ker))
}

/// Whether the surjection `f` is a reduction of coefficients of `ω`, i.e.
/// whether `f ∘ ω` stays nondegenerate.
pub fn check_reduction_candidate(omega: &VForm, f: &CoefficientMap) -> Result<bool> {
    ensure_dim(omega.dim_v(), f.source_dim())?;
    let rank = f.matrix.rank();
    if rank < f.target_dim() {
        return Err(Error::NotSurjective { rank, target: f.target_dim() });
    }
    let (_, ker) = apply_coefficient_map(f, omega)?;
    Ok(ker.is_zero())
}

/// Coordinate of `φ_{ij}` (row `i` of `V`, column `j` of `U`) in the canonical
/// model `Q^{n + nk}` ordered `(u₁..uₙ, φ₁₁..φₖₙ)`.
pub fn canonical_phi_index(n: usize, i: usize, j: usize) -> usize {
    n + i * n + j
}

/// `ω(u + φ, u' + φ') = φ'(u) - φ(u')` on `U ⊕ Hom(U, V)`, `U = Qⁿ`, `V = Qᵏ`.
pub fn canonical_model(n: usize, k: usize) -> Result<VForm> {
    if n == 0 || k == 0 {
        return Err(Error::Malformed("canonical model needs n, k ≥ 1".into()));
    }
    let dim = n + n * k;
    let comps = (0..k)
        .map(|c| {
            let mut m = Matrix::zeros(dim, dim);
            for j in 0..n {
                let p = canonical_phi_index(n, c, j);
                m.set(j, p, Scalar::one());
                m.set(p, j, -Scalar::one());
            }
            m
        })
        .collect();
    VForm::new(dim, comps)
}

/// Embeds a subspace of `U` into the canonical model (zero `Hom` part).
pub fn canonical_u_subspace(n: usize, k: usize, a: &Subspace) -> Result<Subspace> {
    ensure_dim(n, a.ambient_dim())?;
    let dim = n + n * k;
    let vs = a
        .vectors()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(dim, Scalar::zero());
            w
        })
        .collect();
    Subspace::span(dim, vs)
}

/// The `Hom(U, V)` factor of the canonical model.
pub fn canonical_hom_factor(n: usize, k: usize) -> Subspace {
    Subspace::coordinate_span(n + n * k, &(n..n + n * k).collect::<Vec<_>>())
}

/// Directions `φ_v = v ⊗ e₁*` for a basis `v` of `ker f`: maps with values in
/// `ker f`, which `f ∘ ω` cannot detect on the canonical model.
pub fn irreducibility_witness(n: usize, k: usize, f: &CoefficientMap) -> Result<Vec<Vector>> {
    ensure_dim(k, f.source_dim())?;
    Ok(f.kernel()
        .vectors()
        .iter()
        .map(|v| {
            let mut w = exactla::zero_vector(n + n * k);
            for (i, vi) in v.iter().enumerate() {
                w[canonical_phi_index(n, i, 0)] = vi.clone();
            }
            w
        })
        .collect())
}

/// The map `u ↦ u - ½ ι_u ω` into `U ⊕ Hom(U, V)` as an `(n + nk) × n`
/// matrix; the canonical form pulls back to `ω` along it.
pub fn universal_embed(omega: &VForm) -> Result<Matrix> {
    if !omega.is_nondegenerate() {
        return Err(Error::Degenerate("universal embedding needs a nondegenerate form".into()));
    }
    let n = omega.dim_u;
    let k = omega.dim_v();
    let half = ratio(-1, 2);
    let mut m = Matrix::zeros(n + n * k, n);
    for l in 0..n {
        m.set(l, l, Scalar::one());
        for (c, comp) in omega.components.iter().enumerate() {
            for j in 0..n {
                // φ_u(e_j) = -½ ω(u, e_j)
                m.set(canonical_phi_index(n, c, j), l, &half * comp.get(l, j));
            }
        }
    }
    Ok(m)
}

/// `A^ω / (A ∩ A^ω)` with the descended form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearReduction {
    pub carrier: QuotientSpace,
    /// The form evaluated on the carrier's section representatives.
    pub reduced_form: VForm,
    /// Kernel of `reduced_form`, in section coordinates.
    pub kernel: Subspace,
    pub nondegenerate: bool,
}

impl LinearReduction {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

/// Reduces `ω` by `A`.
///
/// The kernel of the reduced form is cross-checked against the image of
/// `A^{ωω} ∩ A^ω` in the quotient, and the form is re-evaluated on
/// representatives shifted by `A ∩ A^ω`; a mismatch in either is reported as
/// [`Error::Inconsistent`].
pub fn linear_reduce(omega: &VForm, a: &Subspace) -> Result<LinearReduction> {
    let orth = orthogonal(omega, a)?;
    let isotropic_part = a.intersect(&orth)?;
    let carrier = quotient(&orth, &isotropic_part)?;
    let section = carrier.section();
    let reduced_form = omega.pullback(section)?;

    let reps = carrier.section_vectors();
    for b in isotropic_part.vectors() {
        for (i, s) in reps.iter().enumerate() {
            let shifted = add_vectors(s, b);
            for t in &reps[i..] {
                if omega.eval(&shifted, t)? != omega.eval(s, t)? {
                    return Err(Error::Inconsistent(format!(
                        "reduced form depends on the representative {}",
                        DisplayRow(s)
                    )));
                }
            }
        }
    }

    let kernel = reduced_form.degeneracy_kernel();
    let double = orthogonal(omega, &orth)?.intersect(&orth)?;
    let image = double
        .vectors()
        .iter()
        .map(|v| carrier.coordinates(v))
        .collect::<Result<Vec<_>>>()?;
    let image = Subspace::span(carrier.dim(), image)?;
    if image != kernel {
        return Err(Error::Inconsistent("reduced kernel differs from (A^ωω ∩ A^ω)/(A ∩ A^ω)".into()));
    }
    let nondegenerate = kernel.is_zero();
    Ok(LinearReduction { carrier, reduced_form, kernel, nondegenerate })
}
