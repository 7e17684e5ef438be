//! Problem documents: JSON with a `kind` tag and kind-specific fields.
//!
//! Exact entries are integers or `"p/q"` strings; numeric entries (patch
//! points and functions) are JSON numbers.

use polysym::discgauge::DeltaComplex;
use polysym::exactla::{self, Matrix, Scalar, Vector};
use polysym::liealg::LieAlgebra;
use polysym::polycore::{self, VForm};
use polysym::{Error, Result};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Form(FormDoc),
    Lie(LieDoc),
    Patch(PatchDoc),
    Complex(ComplexDoc),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormDoc {
    pub form: Vec<Matrix>,
    pub subspace: Option<Vec<Vector>>,
    pub coefficient_map: Option<Matrix>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieDoc {
    pub dim: usize,
    /// `(i, j, k, c)`: the `e_k` coefficient of `[e_i, e_j]` is `c`.
    pub constants: Vec<(usize, usize, usize, Scalar)>,
    pub subspace: Option<Vec<Vector>>,
    pub xi: Option<[f64; 3]>,
    pub t: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    /// `f(x) = A x + b`.
    Affine { linear: Vec<Vec<f64>>, constant: Vec<f64> },
    /// `x ↦ exp(x)ᵀ ξ` on the SO(3) patch.
    Moment([f64; 3]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatchDoc {
    pub patch: String,
    pub point: Option<Vec<f64>>,
    pub functions: Vec<FunctionSpec>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ComplexSpec {
    Simplices(Vec<Vec<Vec<usize>>>),
    Faces { vertices: usize, faces: Vec<Vec<Vec<usize>>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexDoc {
    pub complex: ComplexSpec,
    pub alpha: Option<Vector>,
    pub beta: Option<Vector>,
    pub seed: Option<u64>,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Form(_) => "form",
            Document::Lie(_) => "lie",
            Document::Patch(_) => "patch",
            Document::Complex(_) => "complex",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Document::Form(d) => d.seed,
            Document::Lie(d) => d.seed,
            Document::Patch(d) => d.seed,
            Document::Complex(d) => d.seed,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Malformed(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_value(&value)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = Obj::new(v, "document")?;
        let kind = obj.required("kind")?;
        let kind = kind.as_str().ok_or_else(|| field_error("kind", "expected a string"))?;
        let seed = obj.optional("seed").map(|v| as_u64(v, "seed")).transpose()?;
        let doc = match kind {
            "form" => {
                obj.only(&["kind", "seed", "form", "subspace", "coefficient_map"])?;
                let form = as_list(obj.required("form")?, "form")?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| as_matrix(m, &format!("form[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let subspace = obj.optional("subspace").map(|v| as_vectors(v, "subspace")).transpose()?;
                let coefficient_map =
                    obj.optional("coefficient_map").map(|v| as_matrix(v, "coefficient_map")).transpose()?;
                Document::Form(FormDoc { form, subspace, coefficient_map, seed })
            }
            "lie" => {
                obj.only(&["kind", "seed", "dim", "constants", "subspace", "xi", "t"])?;
                let dim = as_usize(obj.required("dim")?, "dim")?;
                let constants = as_list(obj.optional("constants").unwrap_or(&Value::Array(vec![])), "constants")?
                    .iter()
                    .enumerate()
                    .map(|(n, entry)| {
                        let path = format!("constants[{n}]");
                        let parts = as_list(entry, &path)?;
                        if parts.len() != 4 {
                            return Err(field_error(&path, "expected [i, j, k, c]"));
                        }
                        Ok((
                            as_usize(&parts[0], &format!("{path}[0]"))?,
                            as_usize(&parts[1], &format!("{path}[1]"))?,
                            as_usize(&parts[2], &format!("{path}[2]"))?,
                            as_scalar(&parts[3], &format!("{path}[3]"))?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let subspace = obj.optional("subspace").map(|v| as_vectors(v, "subspace")).transpose()?;
                let xi = obj.optional("xi").map(|v| as_vec3(v, "xi")).transpose()?;
                let t = obj.optional("t").map(|v| as_f64(v, "t")).transpose()?;
                Document::Lie(LieDoc { dim, constants, subspace, xi, t, seed })
            }
            "patch" => {
                obj.only(&["kind", "seed", "patch", "point", "functions"])?;
                let patch = obj.required("patch")?.as_str().ok_or_else(|| field_error("patch", "expected a string"))?;
                let point = obj.optional("point").map(|v| as_f64_list(v, "point")).transpose()?;
                let functions = as_list(obj.optional("functions").unwrap_or(&Value::Array(vec![])), "functions")?
                    .iter()
                    .enumerate()
                    .map(|(i, f)| as_function(f, &format!("functions[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Document::Patch(PatchDoc { patch: patch.to_string(), point, functions, seed })
            }
            "complex" => {
                obj.only(&["kind", "seed", "simplices", "vertices", "faces", "alpha", "beta"])?;
                let complex = match (obj.optional("simplices"), obj.optional("faces")) {
                    (Some(s), None) => ComplexSpec::Simplices(as_index_levels(s, "simplices")?),
                    (None, Some(f)) => ComplexSpec::Faces {
                        vertices: as_usize(obj.required("vertices")?, "vertices")?,
                        faces: as_index_levels(f, "faces")?,
                    },
                    _ => return Err(field_error("simplices", "give exactly one of `simplices` or `faces`")),
                };
                let alpha = obj.optional("alpha").map(|v| as_vector(v, "alpha")).transpose()?;
                let beta = obj.optional("beta").map(|v| as_vector(v, "beta")).transpose()?;
                Document::Complex(ComplexDoc { complex, alpha, beta, seed })
            }
            other => return Err(field_error("kind", &format!("unknown kind `{other}`"))),
        };
        Ok(doc)
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind()));
        match self {
            Document::Form(d) => {
                m.insert("form".into(), Value::Array(d.form.iter().map(matrix_value).collect()));
                if let Some(s) = &d.subspace {
                    m.insert("subspace".into(), vectors_value(s));
                }
                if let Some(f) = &d.coefficient_map {
                    m.insert("coefficient_map".into(), matrix_value(f));
                }
            }
            Document::Lie(d) => {
                m.insert("dim".into(), json!(d.dim));
                let c: Vec<Value> =
                    d.constants.iter().map(|(i, j, k, c)| json!([i, j, k, scalar_value(c)])).collect();
                m.insert("constants".into(), Value::Array(c));
                if let Some(s) = &d.subspace {
                    m.insert("subspace".into(), vectors_value(s));
                }
                if let Some(xi) = d.xi {
                    m.insert("xi".into(), json!(xi));
                }
                if let Some(t) = d.t {
                    m.insert("t".into(), json!(t));
                }
            }
            Document::Patch(d) => {
                m.insert("patch".into(), json!(d.patch));
                if let Some(p) = &d.point {
                    m.insert("point".into(), json!(p));
                }
                let fs: Vec<Value> = d
                    .functions
                    .iter()
                    .map(|f| match f {
                        FunctionSpec::Affine { linear, constant } => json!({ "linear": linear, "constant": constant }),
                        FunctionSpec::Moment(xi) => json!({ "moment": xi }),
                    })
                    .collect();
                m.insert("functions".into(), Value::Array(fs));
            }
            Document::Complex(d) => {
                match &d.complex {
                    ComplexSpec::Simplices(s) => {
                        m.insert("simplices".into(), json!(s));
                    }
                    ComplexSpec::Faces { vertices, faces } => {
                        m.insert("vertices".into(), json!(vertices));
                        m.insert("faces".into(), json!(faces));
                    }
                }
                if let Some(a) = &d.alpha {
                    m.insert("alpha".into(), vector_value(a));
                }
                if let Some(b) = &d.beta {
                    m.insert("beta".into(), vector_value(b));
                }
            }
        }
        if let Some(s) = self.seed() {
            m.insert("seed".into(), json!(s));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }
}

impl FormDoc {
    pub fn vform(&self) -> Result<VForm> {
        let n = self.form.first().map_or(0, Matrix::rows);
        VForm::new(n, self.form.clone())
    }
}

impl LieDoc {
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let mut brackets: Vec<(usize, usize, Vector)> = Vec::new();
        for (i, j, k, c) in &self.constants {
            if *k >= self.dim {
                return Err(Error::Malformed(format!("basis index e{k} out of range")));
            }
            match brackets.iter_mut().find(|(a, b, _)| a == i && b == j) {
                Some((_, _, v)) => v[*k] += c,
                None => {
                    let mut v = exactla::zero_vector(self.dim);
                    v[*k] = c.clone();
                    brackets.push((*i, *j, v));
                }
            }
        }
        LieAlgebra::from_brackets(self.dim, &brackets)
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = g.constant(i, j, k);
                    if *c != exactla::int(0) {
                        constants.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        LieDoc { dim: n, constants, subspace: None, xi: None, t: None, seed: None }
    }
}

impl ComplexDoc {
    pub fn complex(&self) -> Result<DeltaComplex> {
        match &self.complex {
            ComplexSpec::Simplices(s) => DeltaComplex::from_vertex_tuples(s.clone()),
            ComplexSpec::Faces { vertices, faces } => DeltaComplex::from_faces(*vertices, faces.clone()),
        }
    }

    pub fn from_complex(c: &DeltaComplex) -> Self {
        let complex = match c.vertex_tuples() {
            Some(t) => ComplexSpec::Simplices(t.to_vec()),
            None => ComplexSpec::Faces { vertices: c.count(0), faces: (1..=c.dim()).map(|p| c.faces(p).to_vec()).collect() },
        };
        ComplexDoc { complex, alpha: None, beta: None, seed: None }
    }
}

// ---------------------------------------------------------------------------
// built-in documents

pub const FORM_BUILTINS: [&str; 3] = ["cross", "symplectic", "canonical:N,K"];
pub const LIE_BUILTINS: [&str; 4] = ["so3", "sl2", "heisenberg", "so3xso3"];
pub const PATCH_BUILTINS: [&str; 3] = ["canonical:N,K", "so3", "rigidbody"];
pub const COMPLEX_BUILTINS: [&str; 6] = ["interval", "sphere2", "sphere3", "torus2", "torus3", "torusD:M"];

fn parse_pair(text: &str) -> Option<(usize, usize)> {
    let (a, b) = text.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn builtin_form(name: &str) -> Result<Document> {
    let w = match name {
        "cross" => VForm::cross_product(),
        "symplectic" => VForm::standard_symplectic(),
        _ => {
            let (n, k) = name
                .strip_prefix("canonical:")
                .and_then(parse_pair)
                .ok_or_else(|| unknown_builtin(name, &FORM_BUILTINS))?;
            polycore::canonical_model(n, k)?
        }
    };
    Ok(Document::Form(FormDoc { form: w.components().to_vec(), subspace: None, coefficient_map: None, seed: None }))
}

pub fn builtin_lie(name: &str) -> Result<Document> {
    let g = LieAlgebra::by_name(name).ok_or_else(|| unknown_builtin(name, &LIE_BUILTINS))?;
    Ok(Document::Lie(LieDoc::from_algebra(&g)))
}

pub fn builtin_patch(name: &str) -> Result<Document> {
    let functions = match name {
        "so3" | "rigidbody" => vec![FunctionSpec::Moment([1.0, 0.0, 0.0]), FunctionSpec::Moment([0.0, 1.0, 0.0])],
        _ => {
            let (n, k) = name
                .strip_prefix("canonical:")
                .and_then(parse_pair)
                .filter(|&(n, k)| n > 0 && k > 0)
                .ok_or_else(|| unknown_builtin(name, &PATCH_BUILTINS))?;
            let m = n + n * k;
            // (φ_{c,1})_c, which is Hamiltonian for every k, and q₁·e₁
            let momenta = (0..k)
                .map(|c| (0..m).map(|j| if j == polysym::pointham::phi_index(n, c, 0) { 1.0 } else { 0.0 }).collect())
                .collect();
            let position = (0..k).map(|c| (0..m).map(|j| if c == 0 && j == 0 { 1.0 } else { 0.0 }).collect()).collect();
            vec![
                FunctionSpec::Affine { linear: momenta, constant: vec![0.0; k] },
                FunctionSpec::Affine { linear: position, constant: vec![0.0; k] },
            ]
        }
    };
    Ok(Document::Patch(PatchDoc { patch: name.to_string(), point: None, functions, seed: None }))
}

pub fn builtin_complex(name: &str) -> Result<Document> {
    let c = DeltaComplex::builtin(name).ok_or_else(|| unknown_builtin(name, &COMPLEX_BUILTINS))?;
    Ok(Document::Complex(ComplexDoc::from_complex(&c)))
}

fn unknown_builtin(name: &str, known: &[&str]) -> Error {
    Error::Malformed(format!("unknown builtin `{name}` (known: {})", known.join(", ")))
}

// ---------------------------------------------------------------------------
// field readers

fn field_error(path: &str, msg: &str) -> Error {
    Error::Malformed(format!("field `{path}`: {msg}"))
}

struct Obj<'a> {
    map: &'a Map<String, Value>,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self> {
        v.as_object().map(|map| Obj { map }).ok_or_else(|| field_error(path, "expected an object"))
    }

    fn required(&self, key: &str) -> Result<&'a Value> {
        self.map.get(key).ok_or_else(|| field_error(key, "missing"))
    }

    fn optional(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key).filter(|v| !v.is_null())
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(field_error(k, "unknown field")),
            None => Ok(()),
        }
    }
}

fn as_list<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_error(path, "expected an array"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| field_error(path, "expected a nonnegative integer"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    as_u64(v, path).map(|x| x as usize)
}

fn as_f64(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| field_error(path, "expected a number"))
}

fn as_f64_list(v: &Value, path: &str) -> Result<Vec<f64>> {
    as_list(v, path)?.iter().enumerate().map(|(i, x)| as_f64(x, &format!("{path}[{i}]"))).collect()
}

fn as_vec3(v: &Value, path: &str) -> Result<[f64; 3]> {
    let xs = as_f64_list(v, path)?;
    xs.try_into().map_err(|_| field_error(path, "expected 3 numbers"))
}

fn as_scalar(v: &Value, path: &str) -> Result<Scalar> {
    if let Some(i) = v.as_i64() {
        return Ok(exactla::int(i));
    }
    match v.as_str() {
        Some(s) => exactla::parse_scalar(s).map_err(|_| field_error(path, &format!("cannot parse `{s}` as p/q"))),
        None => Err(field_error(path, "expected an integer or a \"p/q\" string")),
    }
}

fn as_vector(v: &Value, path: &str) -> Result<Vector> {
    as_list(v, path)?.iter().enumerate().map(|(i, x)| as_scalar(x, &format!("{path}[{i}]"))).collect()
}

fn as_vectors(v: &Value, path: &str) -> Result<Vec<Vector>> {
    as_list(v, path)?.iter().enumerate().map(|(i, x)| as_vector(x, &format!("{path}[{i}]"))).collect()
}

fn as_matrix(v: &Value, path: &str) -> Result<Matrix> {
    let rows = as_vectors(v, path)?;
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(field_error(&format!("{path}[{i}]"), &format!("expected {cols} entries")));
    }
    Matrix::from_rows(cols, rows)
}

fn as_index_levels(v: &Value, path: &str) -> Result<Vec<Vec<Vec<usize>>>> {
    as_list(v, path)?
        .iter()
        .enumerate()
        .map(|(p, level)| {
            as_list(level, &format!("{path}[{p}]"))?
                .iter()
                .enumerate()
                .map(|(s, t)| {
                    let tp = format!("{path}[{p}][{s}]");
                    as_list(t, &tp)?.iter().enumerate().map(|(i, x)| as_usize(x, &format!("{tp}[{i}]"))).collect()
                })
                .collect()
        })
        .collect()
}

fn as_function(v: &Value, path: &str) -> Result<FunctionSpec> {
    let obj = Obj::new(v, path)?;
    if let Some(xi) = obj.optional("moment") {
        obj.only(&["moment"])?;
        return Ok(FunctionSpec::Moment(as_vec3(xi, &format!("{path}.moment"))?));
    }
    obj.only(&["linear", "constant"])?;
    let lp = format!("{path}.linear");
    let linear: Vec<Vec<f64>> = as_list(obj.required("linear").map_err(|_| field_error(&lp, "missing"))?, &lp)?
        .iter()
        .enumerate()
        .map(|(i, r)| as_f64_list(r, &format!("{lp}[{i}]")))
        .collect::<Result<_>>()?;
    let constant = match obj.optional("constant") {
        Some(c) => as_f64_list(c, &format!("{path}.constant"))?,
        None => vec![0.0; linear.len()],
    };
    if constant.len() != linear.len() {
        return Err(field_error(&format!("{path}.constant"), "length differs from the number of rows of `linear`"));
    }
    Ok(FunctionSpec::Affine { linear, constant })
}

fn scalar_value(s: &Scalar) -> Value {
    if s.is_integer() {
        if let Ok(i) = i64::try_from(s.to_integer()) {
            return json!(i);
        }
    }
    json!(s.to_string())
}

fn vector_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

fn vectors_value(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_value(v)).collect())
}

fn matrix_value(m: &Matrix) -> Value {
    vectors_value(&m.row_vectors())
}
