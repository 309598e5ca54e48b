//! Intersection theory on dual graphs of smooth rational curves.
//!
//! A [`DualGraph`] is either a configuration of (-2)-curves, read off from
//! its edges, or an explicit basis with a Gram matrix plus a list of named
//! curve classes. Divisors are integer vectors over the graph labels.

mod data;

pub use data::{builtin_graph, divisor_table, DivisorRow, BUILTIN_GRAPHS};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ade::{self, AdeType};
use crate::lattice::{two_elementary_invariants, Lattice, LatticeError, TwoElementaryInvariants};

#[derive(Debug, Error)]
pub enum DivisorError {
    #[error("graph format error at {location}: {msg}")]
    Format { location: String, msg: String },
    #[error("cannot read graph file: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown curve label `{0}`")]
    UnknownLabel(String),
    #[error("cannot parse divisor `{0}`")]
    BadDivisor(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("permutation is not an involutive isometry: {0}")]
    InvalidInvolution(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn format_err(location: impl Into<String>, msg: impl Into<String>) -> DivisorError {
    DivisorError::Format {
        location: location.into(),
        msg: msg.into(),
    }
}

/// JSON layout of a graph file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub lattice: String,
    pub curves: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String, i64)>,
    #[serde(default)]
    pub notes: String,
    /// Explicit Gram matrix for a basis that is not made of curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    /// Named classes, each a linear combination of the labels.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, String>,
    /// Classes (labels or names) known to be smooth rational curves.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curve_classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub coefficients: Vec<i64>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Self {
        Self { coefficients: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coefficients[i] = 1;
        d
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coefficients: self.coefficients.iter().zip(&o.coefficients).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| a * k).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    pub lattice: String,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub notes: String,
    index: HashMap<String, usize>,
    classes: BTreeMap<String, DivisorClass>,
    curves: Vec<(String, DivisorClass)>,
    explicit_basis: bool,
}

impl DualGraph {
    pub fn from_file_struct(f: GraphFile) -> Result<Self, DivisorError> {
        let n = f.curves.len();
        if n == 0 {
            return Err(format_err("curves", "no curves"));
        }
        let mut index = HashMap::new();
        for (i, c) in f.curves.iter().enumerate() {
            if index.insert(c.clone(), i).is_some() {
                return Err(format_err(format!("curves[{i}]"), format!("duplicate label `{c}`")));
            }
        }
        let explicit_basis = f.gram.is_some();
        let gram = match f.gram {
            Some(g) => {
                if g.len() != n || g.iter().any(|r| r.len() != n) {
                    return Err(format_err("gram", format!("expected a {n}x{n} matrix")));
                }
                for i in 0..n {
                    for j in 0..i {
                        if g[i][j] != g[j][i] {
                            return Err(format_err(format!("gram[{i}][{j}]"), "matrix is not symmetric"));
                        }
                    }
                }
                g
            }
            None => {
                let mut g = vec![vec![0i64; n]; n];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = -2;
                }
                for (k, (a, b, w)) in f.edges.iter().enumerate() {
                    let loc = format!("edges[{k}]");
                    let i = *index.get(a).ok_or_else(|| format_err(&loc, format!("unknown curve `{a}`")))?;
                    let j = *index.get(b).ok_or_else(|| format_err(&loc, format!("unknown curve `{b}`")))?;
                    if i == j {
                        return Err(format_err(&loc, "self-loop would change the diagonal"));
                    }
                    if *w < 0 {
                        return Err(format_err(&loc, format!("negative intersection {w}")));
                    }
                    // repeated edges keep the larger weight
                    let v = g[i][j].max(*w);
                    g[i][j] = v;
                    g[j][i] = v;
                }
                g
            }
        };
        let mut graph = Self {
            lattice: f.lattice,
            labels: f.curves,
            gram,
            notes: f.notes,
            index,
            classes: BTreeMap::new(),
            curves: Vec::new(),
            explicit_basis,
        };
        for (name, expr) in &f.classes {
            let d = graph.parse_divisor(expr)?;
            graph.classes.insert(name.clone(), d);
        }
        graph.curves = if f.curve_classes.is_empty() {
            graph
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), DivisorClass::unit(n, i)))
                .collect()
        } else {
            f.curve_classes
                .iter()
                .map(|c| Ok((c.clone(), graph.parse_divisor(c)?)))
                .collect::<Result<_, DivisorError>>()?
        };
        Ok(graph)
    }

    pub fn from_json(s: &str) -> Result<Self, DivisorError> {
        let f: GraphFile = serde_json::from_str(s)?;
        Self::from_file_struct(f)
    }

    /// Builds a graph from an already-assembled matrix; used to re-check user input.
    pub fn from_matrix(lattice: &str, labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self, DivisorError> {
        let n = labels.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(format_err(format!("row {i}"), "wrong length"));
            }
            if row[i] != -2 {
                return Err(format_err(format!("({i}, {i})"), format!("diagonal entry {} is not -2", row[i])));
            }
            for j in 0..n {
                if row[j] != gram[j][i] {
                    return Err(format_err(format!("({i}, {j})"), "matrix is not symmetric"));
                }
                if i != j && row[j] < 0 {
                    return Err(format_err(format!("({i}, {j})"), "negative off-diagonal entry"));
                }
            }
        }
        let f = GraphFile {
            lattice: lattice.into(),
            curves: labels.clone(),
            edges: Vec::new(),
            notes: String::new(),
            gram: Some(gram),
            classes: BTreeMap::new(),
            curve_classes: labels,
        };
        let mut g = Self::from_file_struct(f)?;
        g.explicit_basis = false;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_index(&self, l: &str) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// The curve classes nefness is tested against.
    pub fn curves(&self) -> &[(String, DivisorClass)] {
        &self.curves
    }

    /// Parses `2A1+A3-A4`, `3f1+3f2-e1` or a named class. Coefficients are integers.
    pub fn parse_divisor(&self, s: &str) -> Result<DivisorClass, DivisorError> {
        let bad = || DivisorError::BadDivisor(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut out = DivisorClass::zero(self.len());
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            }
            let k = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let coef: i64 = if k == 0 { 1 } else { rest[..k].parse().map_err(|_| bad())? };
            rest = rest.get(k..).ok_or_else(bad)?;
            rest = rest.strip_prefix('*').unwrap_or(rest);
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let name = &rest[..end];
            if name.is_empty() {
                return Err(bad());
            }
            let d = if let Some(i) = self.label_index(name) {
                DivisorClass::unit(self.len(), i)
            } else if let Some(c) = self.classes.get(name) {
                c.clone()
            } else {
                return Err(DivisorError::UnknownLabel(name.to_string()));
            };
            out = out.add(&d.scale(sign * coef));
            rest = &rest[end..];
        }
        Ok(out)
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, DivisorError> {
        let n = self.len();
        for d in [a, b] {
            if d.coefficients.len() != n {
                return Err(DivisorError::Dimension(d.coefficients.len(), n));
            }
        }
        let mut s = 0;
        for (i, x) in a.coefficients.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coefficients.iter().enumerate() {
                s += x * self.gram[i][j] * y;
            }
        }
        Ok(s)
    }

    pub fn square(&self, a: &DivisorClass) -> Result<i64, DivisorError> {
        self.pair(a, a)
    }

    /// NS lattice generated by all labels (radical quotient of the intersection matrix).
    pub fn ns_lattice(&self) -> Result<Lattice, DivisorError> {
        let amb = Lattice::new(self.gram.clone())?;
        let gens: Vec<Vec<i64>> = (0..self.len()).map(|i| DivisorClass::unit(self.len(), i).coefficients).collect();
        Ok(amb.lattice_from_generators(&gens)?)
    }

    /// Whether the listed curves are the complete set of (-2)-curves we trust for nefness.
    pub fn nefness_is_certificate(&self) -> bool {
        !self.explicit_basis && self.ns_lattice().map(|l| l.rank() >= 14).unwrap_or(false)
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<DualGraph, DivisorError> {
    let s = std::fs::read_to_string(path)?;
    DualGraph::from_json(&s)
}

pub fn pair(g: &DualGraph, a: &DivisorClass, b: &DivisorClass) -> Result<i64, DivisorError> {
    g.pair(a, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct NefResult {
    pub nef: bool,
    /// First curve with negative intersection.
    pub witness: Option<(String, i64)>,
    /// True only when the graph lists every (-2)-curve; otherwise the test is necessary-only.
    pub certificate: bool,
}

pub fn is_nef_against_listed(g: &DualGraph, d: &DivisorClass) -> Result<NefResult, DivisorError> {
    for (name, c) in g.curves() {
        let x = g.pair(d, c)?;
        if x < 0 {
            return Ok(NefResult {
                nef: false,
                witness: Some((name.clone(), x)),
                certificate: g.nefness_is_certificate(),
            });
        }
    }
    Ok(NefResult {
        nef: true,
        witness: None,
        certificate: g.nefness_is_certificate(),
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckList {
    pub items: Vec<(String, bool)>,
}

impl CheckList {
    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    pub fn ok(&self) -> bool {
        self.items.iter().all(|(_, b)| *b)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|(_, b)| !*b).map(|(n, _)| n.as_str()).collect()
    }
}

impl fmt::Display for CheckList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "{} checks ok", self.items.len())
        } else {
            write!(f, "failed: {}", self.failures().join(", "))
        }
    }
}

/// Checks `H^2 = 4`, `H.a = H.b = 0`, `H = D2 + sum w_j b_j`, `D2^2 = 2`, `(H - sum a)^2 = 2`.
pub fn verify_polarization_decomposition(
    g: &DualGraph,
    h: &DivisorClass,
    d2: &DivisorClass,
    a_set: &[DivisorClass],
    b_set: &[DivisorClass],
    weights_b: Option<&[i64]>,
) -> Result<CheckList, DivisorError> {
    let mut out = CheckList::default();
    let ones = vec![1; b_set.len()];
    let w = weights_b.unwrap_or(&ones);
    if w.len() != b_set.len() {
        return Err(DivisorError::Dimension(w.len(), b_set.len()));
    }
    out.push("H^2 = 4", g.square(h)? == 4);
    for (i, a) in a_set.iter().enumerate() {
        out.push(format!("H.a{} = 0", i + 1), g.pair(h, a)? == 0);
    }
    for (j, b) in b_set.iter().enumerate() {
        out.push(format!("H.b{} = 0", j + 1), g.pair(h, b)? == 0);
    }
    let mut sum = d2.clone();
    for (b, k) in b_set.iter().zip(w) {
        sum = sum.add(&b.scale(*k));
    }
    out.push("H = D2 + sum b", &sum == h);
    out.push("D2^2 = 2", g.square(d2)? == 2);
    let mut hp = h.clone();
    for a in a_set {
        hp = hp.sub(a);
    }
    out.push("(H - sum a)^2 = 2", g.square(&hp)? == 2);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChainType {
    Ade(Vec<AdeType>),
    NotAde(String),
}

impl fmt::Display for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainType::Ade(ts) => write!(f, "{}", ade::format_config(ts)),
            ChainType::NotAde(r) => write!(f, "not-ADE ({r})"),
        }
    }
}

impl ChainType {
    /// The single Dynkin type of a connected configuration.
    pub fn single(&self) -> Option<AdeType> {
        match self {
            ChainType::Ade(ts) if ts.len() == 1 => Some(ts[0]),
            _ => None,
        }
    }
}

/// Dynkin type of the configuration spanned by the given classes.
pub fn chain_type(g: &DualGraph, subset: &[DivisorClass]) -> Result<ChainType, DivisorError> {
    if subset.is_empty() {
        return Ok(ChainType::NotAde("empty set".into()));
    }
    let m = subset
        .iter()
        .map(|a| subset.iter().map(|b| g.pair(a, b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match ade::recognize(&m) {
        Ok(ts) => ChainType::Ade(ts),
        Err(r) => ChainType::NotAde(r),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NsReport {
    pub expected: TwoElementaryInvariants,
    pub computed: Option<TwoElementaryInvariants>,
    pub error: Option<String>,
    pub pass: bool,
}

/// Compares the invariants of the lattice generated by all curve classes with `expected`.
pub fn ns_check(g: &DualGraph, expected: TwoElementaryInvariants) -> NsReport {
    let computed = g
        .ns_lattice()
        .map_err(|e| e.to_string())
        .and_then(|l| two_elementary_invariants(&l).map_err(|e| e.to_string()));
    match computed {
        Ok(t) => NsReport {
            expected,
            computed: Some(t),
            error: None,
            pass: t == expected,
        },
        Err(e) => NsReport {
            expected,
            computed: None,
            error: Some(format!("transcription suspect: {e}")),
            pass: false,
        },
    }
}

/// `perm[i]` is the image of label `i`. True iff `d` is constant on orbits.
pub fn check_involution_invariance(g: &DualGraph, perm: &[usize], d: &DivisorClass) -> Result<bool, DivisorError> {
    let n = g.len();
    if perm.len() != n || d.coefficients.len() != n {
        return Err(DivisorError::Dimension(perm.len(), n));
    }
    for (i, &p) in perm.iter().enumerate() {
        if p >= n || perm[p] != i {
            return Err(DivisorError::InvalidInvolution(format!("label {} does not map back", g.labels[i])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if g.gram[perm[i]][perm[j]] != g.gram[i][j] {
                return Err(DivisorError::InvalidInvolution(format!(
                    "{}.{} is not preserved",
                    g.labels[i], g.labels[j]
                )));
            }
        }
    }
    Ok((0..n).all(|i| d.coefficients[perm[i]] == d.coefficients[i]))
}

/// Reads a permutation given as label pairs, e.g. `[["e1", "e2"]]`; unlisted labels are fixed.
pub fn permutation_from_pairs(g: &DualGraph, pairs: &[(String, String)]) -> Result<Vec<usize>, DivisorError> {
    let mut p: Vec<usize> = (0..g.len()).collect();
    for (a, b) in pairs {
        let i = g.label_index(a).ok_or_else(|| DivisorError::UnknownLabel(a.clone()))?;
        let j = g.label_index(b).ok_or_else(|| DivisorError::UnknownLabel(b.clone()))?;
        p[i] = j;
        p[j] = i;
    }
    Ok(p)
}
