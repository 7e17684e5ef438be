//! Ordered key–value reports with a text and a line-delimited rendering.

use std::fmt::Write;

use polysym::exactla::{Matrix, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Value(String),
    List(Vec<String>),
    Section(Report),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Entry)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), Entry::Value(value.to_string())));
        self
    }

    pub fn list(&mut self, key: &str, items: Vec<String>) -> &mut Self {
        self.entries.push((key.to_string(), Entry::List(items)));
        self
    }

    pub fn section(&mut self, key: &str, r: Report) -> &mut Self {
        self.entries.push((key.to_string(), Entry::Section(r)));
        self
    }

    pub fn subspace(&mut self, key: &str, s: &Subspace) -> &mut Self {
        let mut r = Report::new();
        r.value("dim", s.dim());
        r.list("basis", s.vectors().iter().map(|v| vector(v)).collect());
        self.section(key, r)
    }

    pub fn matrix(&mut self, key: &str, m: &Matrix) -> &mut Self {
        self.list(key, m.row_vectors().iter().map(|v| vector(v)).collect())
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, e)| e)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.text_into(&mut out, 0);
        out
    }

    fn text_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        for (k, e) in &self.entries {
            match e {
                Entry::Value(v) => writeln!(out, "{pad}{k}: {v}").unwrap(),
                Entry::List(items) if items.is_empty() => writeln!(out, "{pad}{k}: (none)").unwrap(),
                Entry::List(items) => {
                    writeln!(out, "{pad}{k}:").unwrap();
                    for it in items {
                        writeln!(out, "{pad}  - {it}").unwrap();
                    }
                }
                Entry::Section(r) => {
                    writeln!(out, "{pad}{k}:").unwrap();
                    r.text_into(out, depth + 1);
                }
            }
        }
    }

    /// One `path<TAB>value` line per leaf; list items get `path.N`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        self.machine_into(&mut out, "");
        out
    }

    fn machine_into(&self, out: &mut String, prefix: &str) {
        for (k, e) in &self.entries {
            let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            match e {
                Entry::Value(v) => writeln!(out, "{path}\t{v}").unwrap(),
                Entry::List(items) => {
                    writeln!(out, "{path}.len\t{}", items.len()).unwrap();
                    for (i, it) in items.iter().enumerate() {
                        writeln!(out, "{path}.{i}\t{it}").unwrap();
                    }
                }
                Entry::Section(r) => r.machine_into(out, &path),
            }
        }
    }
}

pub fn vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub const DECIMALS: usize = 8;

pub fn float(x: f64) -> String {
    let s = format!("{x:.DECIMALS$}");
    // avoid printing -0.00000000
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn floats<'a>(xs: impl IntoIterator<Item = &'a f64>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| float(*x)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn float_rows(m: &nalgebra::DMatrix<f64>) -> Vec<String> {
    (0..m.nrows()).map(|i| floats(m.row(i).iter())).collect()
}
