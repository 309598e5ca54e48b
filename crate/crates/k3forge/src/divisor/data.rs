//! Shipped graph files and the nef / exceptional divisor table.

use serde::Deserialize;

use super::{DivisorClass, DivisorError, DualGraph};

/// `(name, expected (rho, ell, delta), json)`.
pub const BUILTIN_GRAPHS: &[(&str, (usize, usize, u8), &str)] = &[
    ("rho10_basis", (10, 8, 1), include_str!("../../data/graphs/rho10_basis.json")),
    ("rho10_HN", (10, 6, 0), include_str!("../../data/graphs/rho10_HN.json")),
    ("rho11", (11, 7, 1), include_str!("../../data/graphs/rho11.json")),
    ("rho12", (12, 6, 1), include_str!("../../data/graphs/rho12.json")),
    ("rho13", (13, 5, 1), include_str!("../../data/graphs/rho13.json")),
    ("rho14_40", (14, 4, 0), include_str!("../../data/graphs/rho14_40.json")),
    ("rho14_41", (14, 4, 1), include_str!("../../data/graphs/rho14_41.json")),
    ("rho15", (15, 3, 1), include_str!("../../data/graphs/rho15.json")),
    ("rho16", (16, 2, 1), include_str!("../../data/graphs/rho16.json")),
    ("rho17", (17, 1, 1), include_str!("../../data/graphs/rho17.json")),
    ("rho18", (18, 0, 0), include_str!("../../data/graphs/rho18.json")),
];

const DIVISORS_JSON: &str = include_str!("../../data/divisors.json");

pub fn builtin_graph(name: &str) -> Result<DualGraph, DivisorError> {
    let (_, _, src) = BUILTIN_GRAPHS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| DivisorError::UnknownLabel(name.to_string()))?;
    DualGraph::from_json(src)
}

/// One row of the divisor data: the square-two class and, where the
/// quartic model exists, the exceptional sets over its two singular points.
#[derive(Clone, Debug, Deserialize)]
pub struct DivisorRow {
    pub graph: String,
    pub d2: String,
    #[serde(default)]
    pub b_set: Vec<String>,
    #[serde(default)]
    pub a_set: Vec<String>,
    #[serde(default)]
    pub b_weights: Option<Vec<i64>>,
    #[serde(default)]
    pub a_set_printed: Option<Vec<String>>,
    #[serde(default)]
    pub notes: String,
}

impl DivisorRow {
    pub fn classes(g: &DualGraph, xs: &[String]) -> Result<Vec<DivisorClass>, DivisorError> {
        xs.iter().map(|s| g.parse_divisor(s)).collect()
    }

    /// `H = D2 + sum w_j b_j`.
    pub fn polarization(&self, g: &DualGraph) -> Result<DivisorClass, DivisorError> {
        let mut h = g.parse_divisor(&self.d2)?;
        let bs = Self::classes(g, &self.b_set)?;
        for (k, b) in bs.iter().enumerate() {
            let w = self.b_weights.as_ref().map(|w| w[k]).unwrap_or(1);
            h = h.add(&b.scale(w));
        }
        Ok(h)
    }
}

pub fn divisor_table() -> Vec<DivisorRow> {
    serde_json::from_str(DIVISORS_JSON).expect("shipped divisor table parses")
}
