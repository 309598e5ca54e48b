//! The twelve 2-elementary lattices with automorphism group `(Z/2)^2` and
//! their canonical frames.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct LatticeRow {
    /// Short label, `"<rho> (<ell>,<delta>)"`.
    pub label: &'static str,
    pub rho: usize,
    pub ell: usize,
    pub delta: u8,
    /// First entry is the primary presentation, the rest are listed isometric forms.
    pub forms: &'static [&'static str],
    /// Root type of the alternate fibration's trivial lattice, if there is a Jacobian fibration.
    pub k_root: Option<&'static str>,
    /// Mordell-Weil group of the frame: `"Z/2"`, `"trivial"` or none.
    pub w: Option<&'static str>,
}

const ROWS: &[LatticeRow] = &[
    LatticeRow {
        label: "9 (9,1)",
        rho: 9,
        ell: 9,
        delta: 1,
        forms: &["H(2)+A1^7"],
        k_root: None,
        w: None,
    },
    LatticeRow {
        label: "10 (8,1)",
        rho: 10,
        ell: 8,
        delta: 1,
        forms: &["H+A1^8"],
        k_root: Some("8A1"),
        w: Some("trivial"),
    },
    LatticeRow {
        label: "10 (6,0)",
        rho: 10,
        ell: 6,
        delta: 0,
        forms: &["H(2)+D4^2", "H+N"],
        k_root: Some("8A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "11 (7,1)",
        rho: 11,
        ell: 7,
        delta: 1,
        forms: &["H+D4+A1^5"],
        k_root: Some("9A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "12 (6,1)",
        rho: 12,
        ell: 6,
        delta: 1,
        forms: &["H+D6+A1^4", "H+D4^2+A1^2"],
        k_root: Some("D4+6A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "13 (5,1)",
        rho: 13,
        ell: 5,
        delta: 1,
        forms: &["H+E7+A1^4", "H+D8+A1^3", "H+D6+D4+A1"],
        k_root: Some("D6+5A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "14 (4,0)",
        rho: 14,
        ell: 4,
        delta: 0,
        forms: &["H+D8+D4"],
        k_root: Some("E7+5A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "14 (4,1)",
        rho: 14,
        ell: 4,
        delta: 1,
        forms: &["H+E8+A1^4", "H+D10+A1^2", "H+E7+D4+A1", "H+D6^2"],
        k_root: Some("D8+4A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "15 (3,1)",
        rho: 15,
        ell: 3,
        delta: 1,
        forms: &["H+D12+A1", "H+E8+D4+A1", "H+E7+D6"],
        k_root: Some("D10+3A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "16 (2,1)",
        rho: 16,
        ell: 2,
        delta: 1,
        forms: &["H+D14", "H+E8+D6", "H+E7+E7"],
        k_root: Some("D12+2A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "17 (1,1)",
        rho: 17,
        ell: 1,
        delta: 1,
        forms: &["H+E8+E7"],
        k_root: Some("D14+A1"),
        w: Some("Z/2"),
    },
    LatticeRow {
        label: "18 (0,0)",
        rho: 18,
        ell: 0,
        delta: 0,
        forms: &["H+E8+E8"],
        k_root: Some("D16"),
        w: Some("Z/2"),
    },
];

pub fn lattice_catalog() -> &'static [LatticeRow] {
    ROWS
}

impl LatticeRow {
    pub fn find(label: &str) -> Option<&'static LatticeRow> {
        ROWS.iter().find(|r| r.label == label)
    }

    /// Rows with a frame carrying a 2-torsion section, keyed by `(rho, delta)`.
    pub fn framed() -> impl Iterator<Item = &'static LatticeRow> {
        ROWS.iter().filter(|r| r.w == Some("Z/2"))
    }
}
