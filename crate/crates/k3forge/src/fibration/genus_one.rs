//! Genus-one quartic models `y^2 = q(s)` over Q(t) and their Jacobians.

use std::collections::HashMap;

use num_traits::Zero;

use super::{FibrationError, WeierstrassModel};
use crate::poly::{qi, MultiPoly, Scalar};

/// A rational point `(s, y)` on the quartic, polynomial in the parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub s: MultiPoly,
    pub y: MultiPoly,
}

/// `y^2 = a s^4 + b s^3 + c s^2 + d s + e` with `a, ..., e` polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusOneModel {
    pub quartic: MultiPoly,
    pub point: Option<MarkedPoint>,
}

/// Values of `t` used for the internal j checks.
const CHECK_POINTS: [i64; 5] = [2, -3, 5, 7, -11];

impl GenusOneModel {
    pub fn new(quartic: MultiPoly, point: Option<MarkedPoint>) -> Result<Self, FibrationError> {
        if quartic.vars().iter().any(|x| x != "s" && x != "t") || quartic.degree_in("s") > 4 {
            return Err(FibrationError::Domain(
                "quartic must have degree <= 4 in s and involve only s, t".into(),
            ));
        }
        if let Some(pt) = &point {
            let mut m = HashMap::new();
            m.insert("s", pt.s.clone());
            if quartic.compose(&m) != &pt.y * &pt.y {
                return Err(FibrationError::Domain("marked point is not on the quartic".into()));
            }
        }
        Ok(Self { quartic, point })
    }

    /// `[a, b, c, d, e]`, highest power of `s` first.
    pub fn coefficients(&self) -> [MultiPoly; 5] {
        let mut cs = self.quartic.coefficients_in("s");
        cs.resize(5, MultiPoly::zero());
        [cs[4].clone(), cs[3].clone(), cs[2].clone(), cs[1].clone(), cs[0].clone()]
    }

    /// Classical invariants `I = 12ae - 3bd + c^2`, `J = 72ace + 9bcd - 27ad^2 - 27b^2e - 2c^3`.
    pub fn invariants(&self) -> (MultiPoly, MultiPoly) {
        let [a, b, c, d, e] = self.coefficients();
        let i = (&a * &e).scale(&qi(12)) - (&b * &d).scale(&qi(3)) + &c * &c;
        let j = (&(&a * &c) * &e).scale(&qi(72)) + (&(&b * &c) * &d).scale(&qi(9))
            - (&(&a * &d) * &d).scale(&qi(27))
            - (&(&b * &b) * &e).scale(&qi(27))
            - (&(&c * &c) * &c).scale(&qi(2));
        (i, j)
    }

    pub fn specialize(&self, t0: &Scalar) -> GenusOneModel {
        GenusOneModel {
            quartic: self.quartic.eval_var("t", t0.clone()),
            point: self.point.as_ref().map(|p| MarkedPoint {
                s: p.s.eval_var("t", t0.clone()),
                y: p.y.eval_var("t", t0.clone()),
            }),
        }
    }

    /// `j` of a constant-coefficient model from its invariants.
    pub fn j_scalar(&self) -> Result<Scalar, FibrationError> {
        let (i, j) = self.invariants();
        let (i, j) = match (i.as_constant(), j.as_constant()) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(FibrationError::Domain("model still depends on t".into())),
        };
        let den = qi(4) * &i * &i * &i - &j * &j;
        if den.is_zero() {
            return Err(FibrationError::Degenerate("quartic has a repeated root".into()));
        }
        Ok(qi(6912) * &i * &i * &i / den)
    }
}

fn general_j(a1: &Scalar, a2: &Scalar, a3: &Scalar, a4: &Scalar, a6: &Scalar) -> Result<Scalar, FibrationError> {
    let b2 = a1 * a1 + qi(4) * a2;
    let b4 = qi(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + qi(4) * a6;
    let b8 = a1 * a1 * a6 + qi(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - qi(24) * &b4;
    let disc = -(&b2 * &b2 * &b8) - qi(8) * &b4 * &b4 * &b4 - qi(27) * &b6 * &b6 + qi(9) * &b2 * &b4 * &b6;
    if disc.is_zero() {
        return Err(FibrationError::Degenerate("singular cubic".into()));
    }
    Ok(&c4 * &c4 * &c4 / disc)
}

/// `j` through the explicit reduction at the marked point: move it to `s = 0`, so
/// `y^2 = a s^4 + b s^3 + c s^2 + d s + q^2` with `q != 0`, then
/// `a1 = d/q, a2 = c - d^2/(4q^2), a3 = 2qb, a4 = -4q^2 a, a6 = a2 a4`.
pub fn connell_j(g: &GenusOneModel) -> Result<Scalar, FibrationError> {
    let pt = g.point.as_ref().ok_or_else(|| FibrationError::Domain("no marked point".into()))?;
    let (s0, y0) = match (pt.s.as_constant().or_else(|| pt.s.is_zero().then(Scalar::zero)), pt.y.as_constant()) {
        (Some(s0), Some(y0)) => (s0, y0),
        _ => return Err(FibrationError::Domain("specialize before the scalar reduction".into())),
    };
    if y0.is_zero() {
        return Err(FibrationError::Domain("marked point is a branch point".into()));
    }
    let mut m = HashMap::new();
    m.insert("s", MultiPoly::var("s") + MultiPoly::constant(s0));
    let shifted = GenusOneModel {
        quartic: g.quartic.compose(&m),
        point: None,
    };
    let cs = shifted.coefficients();
    let sc: Vec<Scalar> = cs
        .iter()
        .map(|c| {
            c.as_constant()
                .or_else(|| c.is_zero().then(Scalar::zero))
                .ok_or_else(|| FibrationError::Domain("model still depends on t".into()))
        })
        .collect::<Result<_, _>>()?;
    let (a, b, c, d) = (&sc[0], &sc[1], &sc[2], &sc[3]);
    let qq = &y0;
    let a1 = d / qq;
    let a2 = c - d * d / (qi(4) * qq * qq);
    let a3 = qi(2) * qq * b;
    let a4 = -(qi(4) * qq * qq * a);
    let a6 = &a2 * &a4;
    general_j(&a1, &a2, &a3, &a4, &a6)
}

/// Homogenizes a polynomial in `t` to a binary form of degree `deg` via `t = u/v`.
fn homogenize(p: &MultiPoly, deg: u32) -> MultiPoly {
    let cs = p.coefficients_in("t");
    let mut out = MultiPoly::zero();
    for (i, c) in cs.iter().enumerate() {
        let c = c.as_constant().unwrap_or_else(Scalar::zero);
        out = out + MultiPoly::monomial(&["u", "v"], &[i as u32, deg - i as u32], c);
    }
    out
}

/// Jacobian `Y^2 = X^3 - 27 I X - 27 J` over `P^1_t`, homogenized with the smallest
/// `k` that fits `I` and `J`; non-minimal places are left to the Kodaira step.
pub fn quartic_to_weierstrass(g: &GenusOneModel) -> Result<WeierstrassModel, FibrationError> {
    let (i, j) = g.invariants();
    let disc = (&(&i * &i) * &i).scale(&qi(4)) - &j * &j;
    if disc.is_zero() {
        return Err(FibrationError::Degenerate("quartic is not squarefree over Q(t)".into()));
    }
    let di = i.degree_in("t");
    let dj = j.degree_in("t");
    let k = (0..).find(|k| di <= 4 * k && dj <= 6 * k).unwrap();
    let b = homogenize(&i, 4 * k).scale(&qi(-27));
    let c = homogenize(&j, 6 * k).scale(&qi(-27));
    let model = WeierstrassModel::new(MultiPoly::zero(), b, c, k)?;
    if g.point.is_some() {
        for t0 in CHECK_POINTS {
            let t0 = qi(t0);
            let sp = g.specialize(&t0);
            let (Ok(j1), Ok(j2)) = (connell_j(&sp), sp.j_scalar()) else {
                continue;
            };
            if j1 != j2 {
                return Err(FibrationError::Domain(format!("j mismatch at t = {t0}")));
            }
        }
    }
    Ok(model)
}

/// Restricts `y^2 = C Q` to the lines through a singular point `p` of the
/// branch sextic, such as a common point of `C` and `Q` or a node of `Q`.
/// Points of the line are `p + s (e_i + t e_j)`; the sextic vanishes to order
/// two at `s = 0`, and dividing by `s^2` leaves a quartic in `s`.
pub fn pencil_fibration(c: &MultiPoly, qf: &MultiPoly, base: &[Scalar; 3]) -> Result<GenusOneModel, FibrationError> {
    let names = ["u", "v", "w"];
    for (what, f, d) in [("conic", c, 2), ("quartic", qf, 4)] {
        if f.vars().iter().any(|x| !names.contains(&x.as_str())) || f.homogeneous_degree_in(&names) != Some(d) || f.is_zero() {
            return Err(FibrationError::Domain(format!("{what} must be a ternary form of degree {d}")));
        }
    }
    if base.iter().all(|x| x.is_zero()) {
        return Err(FibrationError::Domain("base point is zero".into()));
    }
    let k = base.iter().position(|x| !x.is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let s = MultiPoly::var("s");
    let t = MultiPoly::var("t");
    let mut m = HashMap::new();
    for (idx, name) in names.iter().enumerate() {
        let mut e = MultiPoly::constant(base[idx].clone());
        if idx == others[0] {
            e = e + s.clone();
        } else if idx == others[1] {
            e = e + &s * &t;
        }
        m.insert(*name, e);
    }
    let f = &c.compose(&m) * &qf.compose(&m);
    let cs = f.coefficients_in("s");
    if cs.len() < 3 || !cs[0].is_zero() || !cs[1].is_zero() {
        return Err(FibrationError::Domain("sextic is not singular at the base point".into()));
    }
    let quartic = MultiPoly::from_coefficients_in("s", &cs[2..]);
    GenusOneModel::new(quartic, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::fiber_configuration;
    use crate::random::Sampler;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn drop_w_power(f: MultiPoly, d: u32) -> MultiPoly {
        let c = f.coefficient(&[("w", d)]);
        f - MultiPoly::monomial(&["w"], &[d], c)
    }

    #[test]
    fn quartic_with_point_at_zero() {
        let g = GenusOneModel::new(
            p("s^4 + 1"),
            Some(MarkedPoint {
                s: MultiPoly::zero(),
                y: MultiPoly::one(),
            }),
        )
        .unwrap();
        assert_eq!(g.j_scalar().unwrap(), qi(1728));
        assert_eq!(connell_j(&g).unwrap(), qi(1728));
        let m = quartic_to_weierstrass(&g).unwrap();
        assert_eq!(m.k, 0);
    }

    #[test]
    fn connell_agrees_with_invariants() {
        let mut s = Sampler::new(17, 20);
        let mut checked = 0;
        for _ in 0..20 {
            let (a, b, c, d) = (s.small(), s.small(), s.small(), s.small());
            let y0 = s.nonzero_small();
            let s0 = s.small();
            // put the point at s = s0 by shifting a quartic through (0, y0)
            let base = MultiPoly::from_coefficients_in(
                "s",
                &[
                    MultiPoly::constant(&y0 * &y0),
                    MultiPoly::constant(d),
                    MultiPoly::constant(c),
                    MultiPoly::constant(b),
                    MultiPoly::constant(a),
                ],
            );
            let mut m = HashMap::new();
            m.insert("s", MultiPoly::var("s") - MultiPoly::constant(s0.clone()));
            let quartic = base.compose(&m);
            let g = GenusOneModel::new(
                quartic,
                Some(MarkedPoint {
                    s: MultiPoly::constant(s0),
                    y: MultiPoly::constant(y0),
                }),
            )
            .unwrap();
            if let (Ok(j1), Ok(j2)) = (connell_j(&g), g.j_scalar()) {
                assert_eq!(j1, j2);
                checked += 1;
            }
        }
        assert!(checked >= 15);
    }

    #[test]
    fn reducible_quartic_rejected() {
        let g = GenusOneModel::new(p("(s^2 + t)^2"), None).unwrap();
        assert!(matches!(quartic_to_weierstrass(&g), Err(FibrationError::Degenerate(_))));
        assert!(GenusOneModel::new(
            p("s^4 + 1"),
            Some(MarkedPoint {
                s: MultiPoly::zero(),
                y: p("2")
            })
        )
        .is_err());
    }

    #[test]
    fn pencil_rejects_point_off_branch() {
        let c = p("w^2 - u*v");
        let qf = p("w^4 + u^4 - v^4");
        assert!(pencil_fibration(&c, &qf, &[qi(1), qi(1), qi(1)]).is_err());
    }

    #[test]
    fn even_eight_pencil() {
        // conic and quartic through [0:0:1]
        let mut s = Sampler::new(31, 20);
        let c = drop_w_power(s.ternary_form(2), 2);
        let qf = drop_w_power(s.ternary_form(4), 4);
        let g = pencil_fibration(&c, &qf, &[qi(0), qi(0), qi(1)]).unwrap();
        let m = quartic_to_weierstrass(&g).unwrap();
        let conf = fiber_configuration(&m).unwrap();
        assert_eq!(conf.summary(), "7I2+10I1");
        assert_eq!(conf.euler_sum(), 24);
        assert_eq!(conf.mw_rank(9), 0);
    }
}
