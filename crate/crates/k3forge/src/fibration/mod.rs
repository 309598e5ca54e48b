//! Jacobian elliptic fibrations over P^1 with coefficients homogeneous in `(u, v)`.
//!
//! A model is `Y^2 = X^3 + A X^2 + B X + C` with `deg A, B, C = 2k, 4k, 6k`;
//! `k = 2` is the K3 case and `k = 1` a rational elliptic surface.

mod frames;
mod genus_one;
mod kodaira;
mod pencils;

pub use frames::{expected_v_discriminant_order, frame_instance, FrameInstance};
pub use genus_one::{connell_j, pencil_fibration, quartic_to_weierstrass, GenusOneModel, MarkedPoint};
pub use kodaira::{fiber_configuration, Fiber, FiberConfiguration, Kodaira, Place};
pub use pencils::{even_eight_pencil, rank10_pencil, PencilInstance};

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{q, qi, MultiPoly, PolyError, RationalFunction, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibrationError {
    #[error("{what} must be homogeneous of degree {expected} in u, v")]
    Degree { what: String, expected: u32 },
    #[error("degenerate model: {0}")]
    Degenerate(String),
    #[error("model has no 2-torsion section at X = Y = 0")]
    NoTwoTorsion,
    #[error("valuations (f: {vf:?}, g: {vg:?}, disc: {vd}) match no Kodaira type")]
    UnknownKodaira { vf: Option<u32>, vg: Option<u32>, vd: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("no valid instance for {label} after {attempts} attempts")]
    Search { label: String, attempts: u32 },
    #[error("model file: {0}")]
    Format(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
    /// Degree scale: `A, B, C` have degrees `2k, 4k, 6k`.
    pub k: u32,
}

fn is_form(p: &MultiPoly, d: u32) -> bool {
    p.is_zero() || (p.vars().iter().all(|x| x == "u" || x == "v") && p.homogeneous_degree_in(&["u", "v"]) == Some(d))
}

fn check_form(what: &str, p: &MultiPoly, d: u32) -> Result<(), FibrationError> {
    if is_form(p, d) {
        Ok(())
    } else {
        Err(FibrationError::Degree {
            what: what.into(),
            expected: d,
        })
    }
}

/// `b8 = a4^2/4 - v^2 b6''`.
pub fn build_b8(a4: &MultiPoly, b6pp: &MultiPoly) -> Result<MultiPoly, FibrationError> {
    check_form("a4", a4, 4)?;
    check_form("b6''", b6pp, 6)?;
    let v = MultiPoly::var("v");
    Ok((a4 * a4).scale(&q(1, 4)) - &(&v * &v) * b6pp)
}

/// Serialized form: every coefficient in the polynomial text format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(default)]
    pub k: Option<u32>,
}

impl WeierstrassModel {
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly, k: u32) -> Result<Self, FibrationError> {
        check_form("A", &a, 2 * k)?;
        check_form("B", &b, 4 * k)?;
        check_form("C", &c, 6 * k)?;
        let m = Self { a, b, c, k };
        if m.discriminant().is_zero() {
            return Err(FibrationError::Degenerate("discriminant vanishes identically".into()));
        }
        Ok(m)
    }

    /// `Y^2 = X (X^2 + a4 X + b8)`, carrying the 2-torsion section `X = Y = 0`.
    pub fn build_alternate(a4: &MultiPoly, b8: &MultiPoly) -> Result<Self, FibrationError> {
        Self::new(a4.clone(), b8.clone(), MultiPoly::zero(), 2)
    }

    /// Reads `{"A": .., "B": .., "C": ..}`; `k` defaults to 2.
    pub fn from_json(src: &str) -> Result<Self, FibrationError> {
        let f: ModelFile = serde_json::from_str(src).map_err(|e| FibrationError::Format(e.to_string()))?;
        Self::new(f.a.parse()?, f.b.parse()?, f.c.parse()?, f.k.unwrap_or(2))
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
            k: Some(self.k),
        }
    }

    /// Standard discriminant of `y^2 = x^3 + a2 x^2 + a4 x + a6`.
    pub fn discriminant(&self) -> MultiPoly {
        let b2 = self.a.scale(&qi(4));
        let b4 = self.b.scale(&qi(2));
        let b6 = self.c.scale(&qi(4));
        let b8 = (&self.a * &self.c).scale(&qi(4)) - &self.b * &self.b;
        let t1 = &(&b2 * &b2) * &b8;
        let t2 = (&(&b4 * &b4) * &b4).scale(&qi(8));
        let t3 = (&b6 * &b6).scale(&qi(27));
        let t4 = (&(&b2 * &b4) * &b6).scale(&qi(9));
        -t1 - t2 - t3 + t4
    }

    /// `(f, g)` of the short form `y^2 = x^3 + f x + g` after `x -> x - A/3`.
    pub fn short_form(&self) -> (MultiPoly, MultiPoly) {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let a2 = a * a;
        let f = b - &a2.scale(&q(1, 3));
        let g = c - &(a * b).scale(&q(1, 3)) + (&a2 * a).scale(&q(2, 27));
        (f, g)
    }

    /// `4 f^3 + 27 g^2`; equals `-Δ / 16`.
    pub fn short_discriminant(&self) -> MultiPoly {
        let (f, g) = self.short_form();
        (&(&f * &f) * &f).scale(&qi(4)) + (&g * &g).scale(&qi(27))
    }

    /// `j = 6912 f^3 / (4 f^3 + 27 g^2)`.
    pub fn j_invariant(&self) -> Result<RationalFunction, FibrationError> {
        let (f, _) = self.short_form();
        let num = (&(&f * &f) * &f).scale(&qi(6912));
        Ok(RationalFunction::new(num, self.short_discriminant())?)
    }

    pub fn has_two_torsion_at_origin(&self) -> bool {
        self.c.is_zero()
    }

    /// Quotient by translation by the 2-torsion section:
    /// `y^2 = x (x^2 - 2A x + (A^2 - 4B))`.
    pub fn two_isogeny(&self) -> Result<Self, FibrationError> {
        if !self.has_two_torsion_at_origin() {
            return Err(FibrationError::NoTwoTorsion);
        }
        let a = self.a.scale(&qi(-2));
        let b = &self.a * &self.a - self.b.scale(&qi(4));
        Self::new(a, b, MultiPoly::zero(), self.k)
    }

    /// Substitutes `(u, v) -> (m00 u + m01 v, m10 u + m11 v)`.
    pub fn change_coordinates(&self, m: [[i64; 2]; 2]) -> Result<Self, FibrationError> {
        let u = MultiPoly::var("u");
        let v = MultiPoly::var("v");
        let mut map = HashMap::new();
        map.insert("u", u.scale(&qi(m[0][0])) + v.scale(&qi(m[0][1])));
        map.insert("v", u.scale(&qi(m[1][0])) + v.scale(&qi(m[1][1])));
        Self::new(self.a.compose(&map), self.b.compose(&map), self.c.compose(&map), self.k)
    }
}

/// `Some(r)` when both models have the same `j` and `Δ(m1) = r Δ(m2)` for a
/// nonzero constant `r`, i.e. they agree up to a constant twist.
pub fn isomorphic_over_closure(m1: &WeierstrassModel, m2: &WeierstrassModel) -> Result<Option<Scalar>, FibrationError> {
    if !m1.j_invariant()?.equals(&m2.j_invariant()?) {
        return Ok(None);
    }
    let d1 = m1.discriminant();
    let d2 = m2.discriminant();
    let r = d1.leading_coefficient() / d2.leading_coefficient();
    if r.is_zero() || d1 != d2.scale(&r) {
        return Ok(None);
    }
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn alternate_discriminant_matches_closed_form() {
        let mut s = Sampler::new(11, 20);
        for _ in 0..3 {
            let a4 = s.form("u", "v", 4);
            let b8 = s.form("u", "v", 8);
            let m = WeierstrassModel::build_alternate(&a4, &b8).unwrap();
            let oracle = (&(&b8 * &b8) * &(&a4 * &a4 - b8.scale(&qi(4)))).scale(&qi(16));
            assert_eq!(m.discriminant(), oracle);
            assert_eq!(m.discriminant(), m.short_discriminant().scale(&qi(-16)));
            assert_eq!(m.discriminant().homogeneous_degree_in(&["u", "v"]), Some(24));
        }
    }

    #[test]
    fn discriminant_matches_resultant_oracle() {
        // Δ = -16 Res_x(h, h') for monic cubic h, up to the sign convention Res(h, h') = -disc(h)
        let m = WeierstrassModel::new(p("u*v"), p("u^4 - 3*v^4"), p("u^5*v + 2*v^6"), 1).unwrap();
        let x = MultiPoly::var("X");
        let h = &(&x * &x) * &x + &(&m.a * &(&x * &x)) + &(&m.b * &x) + m.c.clone();
        let disc = crate::poly::discriminant_univariate(&h, "X").unwrap();
        assert_eq!(m.discriminant(), disc.scale(&qi(16)));
    }

    #[test]
    fn degenerate_and_degree_errors() {
        assert!(matches!(
            WeierstrassModel::new(p("u^4"), MultiPoly::zero(), MultiPoly::zero(), 2),
            Err(FibrationError::Degenerate(_))
        ));
        assert!(matches!(
            WeierstrassModel::build_alternate(&p("u^3"), &p("v^8")),
            Err(FibrationError::Degree { .. })
        ));
        let a4 = p("u^4 + v^4");
        let sq = (&a4 * &a4).scale(&q(1, 4));
        assert!(matches!(
            WeierstrassModel::build_alternate(&a4, &sq),
            Err(FibrationError::Degenerate(_))
        ));
    }

    #[test]
    fn b8_examples() {
        assert_eq!(build_b8(&MultiPoly::zero(), &p("u^6")).unwrap(), p("-u^6*v^2"));
        assert_eq!(build_b8(&p("2*u^2*v^2"), &MultiPoly::zero()).unwrap(), p("u^4*v^4"));
        assert!(build_b8(&p("u^3"), &p("u^6")).is_err());
        let mut s = Sampler::new(2, 20);
        let b8 = build_b8(&s.form("u", "v", 4), &s.form("u", "v", 6)).unwrap();
        let a4 = s.form("u", "v", 4);
        let m = WeierstrassModel::build_alternate(&a4, &b8).unwrap();
        let ob = b8.valuation_in("v").unwrap();
        assert!(m.discriminant().valuation_in("v").unwrap() >= 2 * ob);
    }

    #[test]
    fn two_isogeny_matches_dual_form() {
        let mut s = Sampler::new(5, 20);
        let a4 = s.form("u", "v", 4);
        let b6 = s.form("u", "v", 6);
        let b8 = build_b8(&a4, &b6).unwrap();
        let m = WeierstrassModel::build_alternate(&a4, &b8).unwrap();
        let iso = m.two_isogeny().unwrap();
        let v = MultiPoly::var("v");
        let dual = WeierstrassModel::build_alternate(&-&a4, &(&(&v * &v) * &b6)).unwrap();
        let r = isomorphic_over_closure(&iso, &dual).unwrap();
        // x -> 2x, a twist by 2: the ratio is 2^12 / 2^6
        assert_eq!(r, Some(qi(64)));
        // dual of the dual returns to j(m)
        let back = iso.two_isogeny().unwrap();
        assert!(back.j_invariant().unwrap().equals(&m.j_invariant().unwrap()));
        let with_c = WeierstrassModel::new(a4.clone(), b8.clone(), s.form("u", "v", 12), 2).unwrap();
        assert_eq!(with_c.two_isogeny(), Err(FibrationError::NoTwoTorsion));
    }

    #[test]
    fn isogeny_with_vanishing_a4() {
        let b8 = p("u^8 - 3*u^3*v^5 + v^8");
        let m = WeierstrassModel::build_alternate(&MultiPoly::zero(), &b8).unwrap();
        let iso = m.two_isogeny().unwrap();
        assert_eq!(iso.b, b8.scale(&qi(-4)));
        assert!(iso.a.is_zero());
        // j = 1728 on both sides
        let j = iso.j_invariant().unwrap();
        assert!(j.equals(&RationalFunction::poly(MultiPoly::int(1728))));
    }

    #[test]
    fn model_file_round_trip() {
        let m = WeierstrassModel::build_alternate(&p("u^4 + v^4"), &p("u^7*v - v^8")).unwrap();
        let txt = serde_json::to_string(&m.to_file()).unwrap();
        assert_eq!(WeierstrassModel::from_json(&txt).unwrap(), m);
        assert!(WeierstrassModel::from_json("{\"A\": \"u^4\"}").is_err());
    }
}
