//! Abelian gauge theory on Δ-complexes, exactly.
//!
//! Cochains on a [`DeltaComplex`] carry the alternating-sum coboundary and the
//! Alexander–Whitney cup product. The cup of 1-cochains, read in `C²/B²`,
//! is a `C²/B²`-valued form on `C¹`; gauge transformations `A ↦ A + dγ`
//! act on it with moment map `μ(A)(f) = [dA ∪ f]`, and reduction lands on
//! `H¹` with the cup pairing into `H²`.
//!
//! A Δ-complex is stored by its face maps: `faces[p][s][i]` is the index of
//! the `i`-th face (vertex `i` deleted) of the `p`-simplex `s`. This admits
//! identifications, such as the one-vertex tori.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    self, column_space, is_zero_vector, kernel, quotient, unit_vector, zero_vector, Matrix, QuotientSpace, Scalar,
    Subspace, Vector,
};
use crate::polycore::VForm;

pub const MAX_DIMENSION: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    /// `faces[p][s]` lists the `p + 1` faces of `p`-simplex `s` (empty for
    /// vertices).
    faces: Vec<Vec<Vec<usize>>>,
    /// Vertex tuples, when the complex was given that way.
    tuples: Option<Vec<Vec<Vec<usize>>>>,
}

impl DeltaComplex {
    /// Builds a complex from explicit face indices, checking ranges and the
    /// simplicial identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn from_faces(vertex_count: usize, faces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut all = vec![vec![Vec::new(); vertex_count]];
        all.extend(faces);
        let c = DeltaComplex { faces: all, tuples: None };
        c.validate()?;
        Ok(c)
    }

    /// Builds a complex from ordered vertex tuples per degree; face `i` of a
    /// tuple is the tuple with entry `i` removed, which must occur exactly
    /// once one degree down.
    pub fn from_vertex_tuples(tuples: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if tuples.is_empty() {
            return Err(Error::InvalidComplex("no vertices".into()));
        }
        let mut faces = Vec::with_capacity(tuples.len());
        for (p, level) in tuples.iter().enumerate() {
            let mut level_faces = Vec::with_capacity(level.len());
            for t in level {
                if t.len() != p + 1 {
                    return Err(Error::InvalidComplex(format!("{p}-simplex {t:?} needs {} vertices", p + 1)));
                }
                if p == 0 {
                    level_faces.push(Vec::new());
                    continue;
                }
                let mut fs = Vec::with_capacity(p + 1);
                for i in 0..=p {
                    let mut face = t.clone();
                    face.remove(i);
                    let hits: Vec<usize> =
                        tuples[p - 1].iter().enumerate().filter(|(_, u)| **u == face).map(|(j, _)| j).collect();
                    match hits.as_slice() {
                        [j] => fs.push(*j),
                        [] => return Err(Error::InvalidComplex(format!("face {face:?} of {t:?} is missing"))),
                        _ => return Err(Error::InvalidComplex(format!("face {face:?} of {t:?} is ambiguous"))),
                    }
                }
                level_faces.push(fs);
            }
            faces.push(level_faces);
        }
        let c = DeltaComplex { faces, tuples: Some(tuples) };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.faces.len() > MAX_DIMENSION + 1 {
            return Err(Error::InvalidComplex(format!("dimension above {MAX_DIMENSION}")));
        }
        if self.faces[0].is_empty() {
            return Err(Error::InvalidComplex("no vertices".into()));
        }
        for p in 1..self.faces.len() {
            for (s, fs) in self.faces[p].iter().enumerate() {
                if fs.len() != p + 1 {
                    return Err(Error::InvalidComplex(format!("{p}-simplex {s} has {} faces", fs.len())));
                }
                if let Some(bad) = fs.iter().find(|f| **f >= self.faces[p - 1].len()) {
                    return Err(Error::InvalidComplex(format!("{p}-simplex {s} has face index {bad} out of range")));
                }
                if p >= 2 {
                    for j in 0..=p {
                        for i in 0..j {
                            let lhs = self.faces[p - 1][fs[j]][i];
                            let rhs = self.faces[p - 1][fs[i]][j - 1];
                            if lhs != rhs {
                                return Err(Error::InvalidComplex(format!(
                                    "{p}-simplex {s} violates d_{i} d_{j} = d_{} d_{i}",
                                    j - 1
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Top degree `D`.
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn count(&self, p: usize) -> usize {
        self.faces.get(p).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn faces(&self, p: usize) -> &[Vec<usize>] {
        &self.faces[p]
    }

    pub fn vertex_tuples(&self) -> Option<&[Vec<Vec<usize>>]> {
        self.tuples.as_deref()
    }

    /// Face `d_i` of `p`-simplex `s`.
    pub fn face(&self, p: usize, s: usize, i: usize) -> usize {
        self.faces[p][s][i]
    }

    /// `(v₀ … v_r)` face of a `p`-simplex, by deleting the last vertex.
    fn front(&self, mut p: usize, mut s: usize, r: usize) -> usize {
        while p > r {
            s = self.faces[p][s][p];
            p -= 1;
        }
        s
    }

    /// `(v_{p-r} … v_p)` face, by deleting the first vertex.
    fn back(&self, mut p: usize, mut s: usize, r: usize) -> usize {
        while p > r {
            s = self.faces[p][s][0];
            p -= 1;
        }
        s
    }

    /// Matrix of `d: Cᵖ → Cᵖ⁺¹`.
    pub fn coboundary_matrix(&self, p: usize) -> Result<Matrix> {
        if p >= self.dim() {
            return Err(Error::TopDegree(self.dim()));
        }
        let mut m = Matrix::zeros(self.count(p + 1), self.count(p));
        for (s, fs) in self.faces[p + 1].iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                let sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                let cur = m.get(s, *f).clone();
                m.set(s, *f, cur + sign);
            }
        }
        Ok(m)
    }

    // ---- built-ins

    /// Two vertices joined by one edge.
    pub fn interval() -> Self {
        Self::from_vertex_tuples(vec![vec![vec![0], vec![1]], vec![vec![0, 1]]]).expect("valid")
    }

    /// Boundary of the `(d + 1)`-simplex on sorted vertex tuples.
    fn simplex_boundary(d: usize) -> Self {
        let verts = d + 2;
        let mut levels = Vec::new();
        for p in 0..=d {
            let mut level = Vec::new();
            for mask in 0u32..(1 << verts) {
                if mask.count_ones() as usize == p + 1 {
                    level.push((0..verts).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>());
                }
            }
            level.sort();
            levels.push(level);
        }
        Self::from_vertex_tuples(levels).expect("valid")
    }

    /// `S²` as the boundary of the 3-simplex.
    pub fn sphere2() -> Self {
        Self::simplex_boundary(2)
    }

    /// `S³` as the boundary of the 4-simplex.
    pub fn sphere3() -> Self {
        Self::simplex_boundary(3)
    }

    /// The one-vertex `d`-torus: the Freudenthal triangulation of the unit
    /// cube with opposite faces identified.
    pub fn torus(d: usize) -> Result<Self> {
        Self::torus_grid(d, 1)
    }

    /// The `d`-torus `(R/mZ)^d` triangulated by translated Freudenthal cubes:
    /// a `p`-simplex is a base vertex with a sequence of `p` disjoint nonempty
    /// coordinate sets (the steps between consecutive vertices).
    pub fn torus_grid(d: usize, m: usize) -> Result<Self> {
        if d == 0 || d > MAX_DIMENSION || m == 0 {
            return Err(Error::InvalidComplex(format!("torus ({d}, {m}) unsupported")));
        }
        let full = (1u32 << d) - 1;
        let vertices = m.pow(d as u32);
        let mut steps: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
        for p in 1..=d {
            let mut next = Vec::new();
            for prev in &steps[p - 1] {
                let used = prev.iter().fold(0, |a, b| a | b);
                for step in 1..=full {
                    if step & used == 0 {
                        let mut s = prev.clone();
                        s.push(step);
                        next.push(s);
                    }
                }
            }
            next.sort();
            steps.push(next);
        }
        let shift = |v: usize, step: u32| -> usize {
            let mut out = 0;
            let mut place = 1;
            let mut rest = v;
            for axis in 0..d {
                let mut c = rest % m;
                rest /= m;
                if step >> axis & 1 == 1 {
                    c = (c + 1) % m;
                }
                out += c * place;
                place *= m;
            }
            out
        };
        let index = |p: usize, base: usize, s: &[u32]| base * steps[p].len() + steps[p].binary_search(&s.to_vec()).expect("face present");
        let mut faces = Vec::new();
        for p in 1..=d {
            let mut level = Vec::with_capacity(vertices * steps[p].len());
            for base in 0..vertices {
                for s in &steps[p] {
                    let fs = (0..=p)
                        .map(|i| {
                            if i == 0 {
                                index(p - 1, shift(base, s[0]), &s[1..])
                            } else if i == p {
                                index(p - 1, base, &s[..p - 1])
                            } else {
                                let mut f = s[..i - 1].to_vec();
                                f.push(s[i - 1] | s[i]);
                                f.extend_from_slice(&s[i + 1..]);
                                index(p - 1, base, &f)
                            }
                        })
                        .collect();
                    level.push(fs);
                }
            }
            faces.push(level);
        }
        Self::from_faces(vertices, faces)
    }

    pub fn torus2() -> Self {
        Self::torus(2).expect("valid")
    }

    pub fn torus3() -> Self {
        Self::torus(3).expect("valid")
    }

    /// A named complex; `torusD:M` is the `M^D`-vertex grid torus.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "interval" => Some(Self::interval()),
            "sphere2" => Some(Self::sphere2()),
            "sphere3" => Some(Self::sphere3()),
            "torus2" => Some(Self::torus2()),
            "torus3" => Some(Self::torus3()),
            _ => {
                let (d, m) = name.strip_prefix("torus")?.split_once(':')?;
                Self::torus_grid(d.parse().ok()?, m.parse().ok()?).ok()
            }
        }
    }

    pub const BUILTINS: [&'static str; 5] = ["interval", "sphere2", "sphere3", "torus2", "torus3"];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vector,
}

impl Cochain {
    pub fn new(complex: &DeltaComplex, degree: usize, values: Vector) -> Result<Self> {
        if degree > complex.dim() {
            return Err(Error::DegreeOverflow(degree, complex.dim()));
        }
        crate::error::ensure_dim(complex.count(degree), values.len())?;
        Ok(Cochain { degree, values })
    }

    pub fn zero(complex: &DeltaComplex, degree: usize) -> Self {
        Cochain { degree, values: zero_vector(complex.count(degree)) }
    }

    pub fn constant(complex: &DeltaComplex, value: Scalar) -> Self {
        Cochain { degree: 0, values: vec![value; complex.count(0)] }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.values)
    }

    fn check(&self, complex: &DeltaComplex) -> Result<()> {
        if self.degree > complex.dim() {
            return Err(Error::DegreeOverflow(self.degree, complex.dim()));
        }
        crate::error::ensure_dim(complex.count(self.degree), self.values.len())
    }
}

/// `(dc)(σ) = Σᵢ (-1)ⁱ c(dᵢ σ)`.
pub fn coboundary(complex: &DeltaComplex, c: &Cochain) -> Result<Cochain> {
    c.check(complex)?;
    let m = complex.coboundary_matrix(c.degree)?;
    Ok(Cochain { degree: c.degree + 1, values: m.mul_vec(&c.values)? })
}

/// `(α ∪ β)(σ) = α(front_p σ) · β(back_q σ)`.
pub fn cup(complex: &DeltaComplex, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    a.check(complex)?;
    b.check(complex)?;
    let (p, q) = (a.degree, b.degree);
    let r = p + q;
    if r > complex.dim() {
        return Err(Error::DegreeOverflow(r, complex.dim()));
    }
    let values = (0..complex.count(r))
        .map(|s| {
            let x = &a.values[complex.front(r, s, p)];
            if x.is_zero() {
                return Scalar::zero();
            }
            x * &b.values[complex.back(r, s, q)]
        })
        .collect();
    Ok(Cochain { degree: r, values })
}

/// `Zᵖ`, `Bᵖ` and a section of `Zᵖ/Bᵖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub degree: usize,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Columns of `section()` are the chosen representatives.
    pub harmonic: QuotientSpace,
}

impl CohomologyPresentation {
    pub fn betti(&self) -> usize {
        self.harmonic.dim()
    }

    pub fn harmonic_section(&self) -> &Matrix {
        self.harmonic.section()
    }

    pub fn representatives(&self) -> Vec<Vector> {
        self.harmonic.section_vectors()
    }

    /// Class of a cocycle in the chosen basis.
    pub fn class_of(&self, c: &[Scalar]) -> Result<Vector> {
        self.harmonic.coordinates(c)
    }
}

pub fn cohomology(complex: &DeltaComplex, p: usize) -> Result<CohomologyPresentation> {
    let dim = complex.dim();
    if p > dim {
        return Err(Error::DegreeOverflow(p, dim));
    }
    let n = complex.count(p);
    let cocycles = if p == dim { Subspace::full(n) } else { kernel(&complex.coboundary_matrix(p)?) };
    let coboundaries = if p == 0 { Subspace::zero(n) } else { column_space(&complex.coboundary_matrix(p - 1)?) };
    let harmonic = quotient(&cocycles, &coboundaries)?;
    Ok(CohomologyPresentation { degree: p, cocycles, coboundaries, harmonic })
}

pub fn betti_numbers(complex: &DeltaComplex) -> Result<Vec<usize>> {
    (0..=complex.dim()).map(|p| Ok(cohomology(complex, p)?.betti())).collect()
}

/// Precomputed data for the `C²/B²`-valued form on `C¹`.
#[derive(Clone, Debug)]
pub struct GaugeComplex {
    complex: DeltaComplex,
    d0: Matrix,
    d1: Option<Matrix>,
    /// `C²/B²`; zero-dimensional when there are no 2-simplices.
    c2_mod_b2: QuotientSpace,
    /// `T[a][b]` = coset coordinates of `e_a ∪ e_b`, built on first use.
    tensor: OnceLock<Vec<Vec<Vector>>>,
}

/// Value of the discrete form on a pair of 1-cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscOmega {
    /// Coordinates of `[α ∪ β]` in `C²/B²`.
    pub coset: Vector,
    /// Canonical representative (the section applied to `coset`).
    pub representative: Vector,
    /// Whether `α∪β + β∪α ∈ B²`.
    pub skew_certified: bool,
}

impl GaugeComplex {
    pub fn new(complex: &DeltaComplex) -> Result<Self> {
        if complex.dim() < 1 {
            return Err(Error::InvalidComplex("gauge fields need edges".into()));
        }
        let d0 = complex.coboundary_matrix(0)?;
        let d1 = complex.coboundary_matrix(1).ok();
        let n2 = complex.count(2);
        let b2 = column_space(&d1.clone().unwrap_or_else(|| Matrix::zeros(0, complex.count(1))));
        let c2_mod_b2 = quotient(&Subspace::full(n2), &b2)?;
        Ok(GaugeComplex { complex: complex.clone(), d0, d1, c2_mod_b2, tensor: OnceLock::new() })
    }

    fn tensor(&self) -> &[Vec<Vector>] {
        self.tensor.get_or_init(|| {
            let n1 = self.complex.count(1);
            let basis: Vec<Cochain> = (0..n1).map(|a| Cochain { degree: 1, values: unit_vector(n1, a) }).collect();
            basis
                .iter()
                .map(|ea| basis.iter().map(|eb| self.coset_of(&self.cup11(ea, eb)).expect("C² vector")).collect())
                .collect()
        })
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    /// `dim C²/B²`.
    pub fn coset_dim(&self) -> usize {
        self.c2_mod_b2.dim()
    }

    pub fn c2_mod_b2(&self) -> &QuotientSpace {
        &self.c2_mod_b2
    }

    fn cup11(&self, a: &Cochain, b: &Cochain) -> Vector {
        if self.complex.dim() < 2 {
            return Vec::new();
        }
        cup(&self.complex, a, b).expect("degrees checked").values
    }

    fn coset_of(&self, c2: &[Scalar]) -> Result<Vector> {
        if self.complex.dim() < 2 {
            return Ok(Vec::new());
        }
        self.c2_mod_b2.coordinates(c2)
    }

    fn one_cochain(&self, v: &[Scalar]) -> Result<Cochain> {
        Cochain::new(&self.complex, 1, v.to_vec())
    }

    pub fn d0(&self, f: &[Scalar]) -> Result<Vector> {
        self.d0.mul_vec(f)
    }

    /// `d: C¹ → C²`, or the zero map when there are no 2-simplices.
    pub fn d1(&self, a: &[Scalar]) -> Result<Vector> {
        match &self.d1 {
            Some(m) => m.mul_vec(a),
            None => {
                crate::error::ensure_dim(self.complex.count(1), a.len())?;
                Ok(Vec::new())
            }
        }
    }

    pub fn omega(&self, a: &[Scalar], b: &[Scalar]) -> Result<DiscOmega> {
        let (ca, cb) = (self.one_cochain(a)?, self.one_cochain(b)?);
        let ab = self.cup11(&ca, &cb);
        let ba = self.cup11(&cb, &ca);
        let coset = self.coset_of(&ab)?;
        let sum = self.coset_of(&exactla::add_vectors(&ab, &ba))?;
        let representative =
            if self.complex.dim() < 2 { Vec::new() } else { self.c2_mod_b2.section().mul_vec(&coset)? };
        Ok(DiscOmega { coset, representative, skew_certified: is_zero_vector(&sum) })
    }

    /// Matrix (`dim C²/B² × #vertices`) of `f ↦ [dA ∪ f]`.
    pub fn gauge_moment(&self, a: &[Scalar]) -> Result<Matrix> {
        let da = self.d1(a)?;
        let q = self.coset_dim();
        let n0 = self.complex.count(0);
        let mut m = Matrix::zeros(q, n0);
        if q == 0 {
            return Ok(m);
        }
        let da = Cochain { degree: 2, values: da };
        for j in 0..n0 {
            let f = Cochain { degree: 0, values: unit_vector(n0, j) };
            let col = self.coset_of(&cup(&self.complex, &da, &f)?.values)?;
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, j, v);
            }
        }
        Ok(m)
    }

    /// For every vertex `f`: the linear maps `α ↦ [dα ∪ f]` and
    /// `α ↦ ω(α, df)` agree on `C¹`.
    pub fn moment_identity_holds(&self) -> Result<bool> {
        let n0 = self.complex.count(0);
        let n1 = self.complex.count(1);
        for j in 0..n0 {
            let df = self.d0(&unit_vector(n0, j))?;
            for a in 0..n1 {
                let e = unit_vector(n1, a);
                let lhs = self.gauge_moment(&e)?;
                let lhs: Vector = (0..lhs.rows()).map(|r| lhs.get(r, j).clone()).collect();
                if lhs != self.omega(&e, &df)?.coset {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `{A : [dA ∪ f] = 0 for every vertex f}`.
    pub fn moment_zero_set(&self) -> Result<MomentZeroSet> {
        let n1 = self.complex.count(1);
        let q = self.coset_dim();
        let cocycles = cohomology(&self.complex, 1)?.cocycles;
        if q == 0 {
            let zero_set = Subspace::full(n1);
            return Ok(MomentZeroSet { equals_z1: zero_set == cocycles, zero_set, cocycles });
        }
        let cols = (0..n1)
            .map(|a| {
                let m = self.gauge_moment(&unit_vector(n1, a))?;
                Ok((0..m.cols()).flat_map(|j| (0..q).map(move |r| (r, j))).map(|(r, j)| m.get(r, j).clone()).collect())
            })
            .collect::<Result<Vec<Vector>>>()?;
        let zero_set = kernel(&Matrix::from_columns(q * self.complex.count(0), &cols)?);
        Ok(MomentZeroSet { equals_z1: zero_set == cocycles, zero_set, cocycles })
    }

    /// `{β : ω(α, β) = 0 ∀ α ∈ S}`.
    pub fn right_orthogonal(&self, s: &Subspace) -> Result<Subspace> {
        self.orthogonal(s, true)
    }

    /// `{α : ω(α, β) = 0 ∀ β ∈ S}`.
    pub fn left_orthogonal(&self, s: &Subspace) -> Result<Subspace> {
        self.orthogonal(s, false)
    }

    fn orthogonal(&self, s: &Subspace, right: bool) -> Result<Subspace> {
        let n1 = self.complex.count(1);
        crate::error::ensure_dim(n1, s.ambient_dim())?;
        let q = self.coset_dim();
        let tensor = self.tensor();
        let mut rows = Vec::new();
        for v in s.vectors() {
            for r in 0..q {
                let row = (0..n1)
                    .map(|b| {
                        let mut acc = Scalar::zero();
                        for (a, va) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            let t = if right { &tensor[a][b][r] } else { &tensor[b][a][r] };
                            acc += va * t;
                        }
                        acc
                    })
                    .collect();
                rows.push(row);
            }
        }
        Ok(kernel(&Matrix::from_rows(n1, rows)?))
    }

    /// Kernel of the form on `C¹` (both sides), measured not assumed.
    pub fn degeneracy_kernel(&self) -> Result<Subspace> {
        let full = Subspace::full(self.complex.count(1));
        self.right_orthogonal(&full)?.intersect(&self.left_orthogonal(&full)?)
    }

    pub fn reduce(&self) -> Result<GaugeReduction> {
        reduce_gauge_with(self)
    }

    pub fn lagrangian_check(&self) -> Result<LagrangianReport> {
        lagrangian_check_with(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentZeroSet {
    pub zero_set: Subspace,
    pub cocycles: Subspace,
    pub equals_z1: bool,
}

pub fn omega_disc(complex: &DeltaComplex, a: &Cochain, b: &Cochain) -> Result<DiscOmega> {
    if a.degree != 1 || b.degree != 1 {
        return Err(Error::Malformed("omega_disc takes 1-cochains".into()));
    }
    GaugeComplex::new(complex)?.omega(&a.values, &b.values)
}

pub fn gauge_moment(complex: &DeltaComplex, a: &Cochain) -> Result<Matrix> {
    if a.degree != 1 {
        return Err(Error::Malformed("gauge fields are 1-cochains".into()));
    }
    GaugeComplex::new(complex)?.gauge_moment(&a.values)
}

pub fn moment_zero_set(complex: &DeltaComplex) -> Result<MomentZeroSet> {
    GaugeComplex::new(complex)?.moment_zero_set()
}

/// `H¹` with the cup pairing into `H²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeReduction {
    pub h1: CohomologyPresentation,
    /// `None` when the complex has no 2-simplices.
    pub h2: Option<CohomologyPresentation>,
    /// `pairing[r]` is the `b₁ × b₁` matrix of the `r`-th `H²` coordinate of
    /// `hᵢ ∪ hⱼ` on the chosen representatives.
    pub pairing: Vec<Matrix>,
}

impl GaugeReduction {
    pub fn carrier_dim(&self) -> usize {
        self.h1.betti()
    }

    /// The pairing as an `H²`-valued form on `H¹`, if `H² ≠ 0`.
    pub fn pairing_form(&self) -> Option<VForm> {
        VForm::new(self.carrier_dim(), self.pairing.clone()).ok()
    }

    /// `H²` coordinates of `[α ∪ β]` for arbitrary cocycles.
    pub fn pair_classes(&self, complex: &DeltaComplex, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
        let h2 = match &self.h2 {
            Some(h) => h,
            None => return Ok(Vec::new()),
        };
        let c = cup(complex, &Cochain::new(complex, 1, a.to_vec())?, &Cochain::new(complex, 1, b.to_vec())?)?;
        h2.class_of(&c.values)
    }

    /// `Σ aᵢ bⱼ pairing[r]ᵢⱼ` for class coordinates `a`, `b`.
    pub fn evaluate(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vector> {
        self.pairing.iter().map(|m| m.bilinear(a, b)).collect()
    }
}

pub fn reduce_gauge(complex: &DeltaComplex) -> Result<GaugeReduction> {
    GaugeComplex::new(complex)?.reduce()
}

fn reduce_gauge_with(g: &GaugeComplex) -> Result<GaugeReduction> {
    let complex = &g.complex;
    let h1 = cohomology(complex, 1)?;
    if complex.dim() < 2 {
        return Ok(GaugeReduction { h1, h2: None, pairing: Vec::new() });
    }
    let h2 = cohomology(complex, 2)?;
    let reps = h1.representatives();
    let m = reps.len();
    let cochains: Vec<Cochain> = reps.iter().map(|v| Cochain { degree: 1, values: v.clone() }).collect();
    let mut pairing = vec![Matrix::zeros(m, m); h2.betti()];
    for i in 0..m {
        for j in 0..m {
            let c = cup(complex, &cochains[i], &cochains[j])?;
            for (r, v) in h2.class_of(&c.values)?.into_iter().enumerate() {
                pairing[r].set(i, j, v);
            }
        }
    }
    // shifting a representative by B¹ moves the cup by B² only
    let b1 = h1.coboundaries.vectors().to_vec();
    for b in &b1 {
        let bc = Cochain { degree: 1, values: b.clone() };
        for h in &cochains {
            for c in [cup(complex, &bc, h)?, cup(complex, h, &bc)?] {
                if !h2.coboundaries.contains_vector(&c.values) {
                    return Err(Error::Inconsistent("cup pairing depends on the representative".into()));
                }
            }
        }
    }
    Ok(GaugeReduction { h1, h2: Some(h2), pairing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    pub h2_trivial: bool,
    pub z1_dim: usize,
    /// `None` when `H² ≠ 0` (the check is skipped).
    pub z1_is_lagrangian: Option<bool>,
    pub orthogonal_dim: Option<usize>,
    pub orthogonal: Option<Subspace>,
}

pub fn lagrangian_check(complex: &DeltaComplex) -> Result<LagrangianReport> {
    GaugeComplex::new(complex)?.lagrangian_check()
}

fn lagrangian_check_with(g: &GaugeComplex) -> Result<LagrangianReport> {
    let complex = &g.complex;
    let z1 = cohomology(complex, 1)?.cocycles;
    let h2_trivial = complex.dim() < 2 || cohomology(complex, 2)?.betti() == 0;
    if !h2_trivial {
        return Ok(LagrangianReport {
            h2_trivial,
            z1_dim: z1.dim(),
            z1_is_lagrangian: None,
            orthogonal_dim: None,
            orthogonal: None,
        });
    }
    let orth = g.right_orthogonal(&z1)?;
    Ok(LagrangianReport {
        h2_trivial,
        z1_dim: z1.dim(),
        z1_is_lagrangian: Some(orth == z1),
        orthogonal_dim: Some(orth.dim()),
        orthogonal: Some(orth),
    })
}
