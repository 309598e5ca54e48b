//! Exact verification of explicit birational maps between the models, and
//! the catalogue of maps and coefficient identities used by the suite.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::models::{build_s_hn, CoverEquation, Rank10Params};
use super::{derive_prime_parameters, PrimeParams, SurfaceError, PRIME_LABELS};
use crate::fibration::{pencil_fibration, quartic_to_weierstrass, WeierstrassModel};
use crate::poly::{q, qi, substitute, MultiPoly, RationalFunction, RationalMap, Scalar};
use crate::random::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapVerdict {
    pub holds: bool,
    /// Normal form of the pulled-back numerator modulo the source.
    pub residual: MultiPoly,
    /// `num = cofactor * source` when the division is exact.
    pub cofactor: Option<MultiPoly>,
}

/// Pulls the target equation back along `map` and reduces the numerator
/// modulo the source equation.
pub fn verify_map(map: &RationalMap, source: &CoverEquation, target: &MultiPoly) -> Result<MapVerdict, SurfaceError> {
    for v in target.vars() {
        if map.component(v).is_none() {
            return Err(SurfaceError::Domain(format!("map does not cover target variable `{v}`")));
        }
    }
    let pulled = substitute(target, map)?;
    let residual = source.reduce(pulled.num());
    let holds = residual.is_zero();
    let cofactor = if holds { pulled.num().div_exact(&source.defining()) } else { None };
    Ok(MapVerdict { holds, residual, cofactor })
}

/// Checks that every component of a self-map equals the coordinate of the
/// same name on the source, modulo the source equation.
pub fn verify_identity(map: &RationalMap, source: &CoverEquation) -> Result<MapVerdict, SurfaceError> {
    let mut residual = MultiPoly::zero();
    for (name, f) in map.target_vars.iter().zip(&map.components) {
        let diff = f.num() - &(&MultiPoly::var(name) * f.den());
        let r = source.reduce(&diff);
        if !r.is_zero() {
            residual = r;
            break;
        }
    }
    Ok(MapVerdict {
        holds: residual.is_zero(),
        residual,
        cofactor: None,
    })
}

fn poly(p: MultiPoly) -> RationalFunction {
    RationalFunction::poly(p)
}

fn ratio(n: MultiPoly, d: MultiPoly) -> Result<RationalFunction, SurfaceError> {
    Ok(RationalFunction::new(n, d)?)
}

fn var(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

/// Weierstrass equation `Y^2 = X (X^2 + a4 X + b8)` in the chart `Z = 1`.
pub fn weierstrass_cover(a4: &MultiPoly, b8: &MultiPoly) -> CoverEquation {
    let x = var("X");
    CoverEquation {
        y: "Y".into(),
        lead: MultiPoly::one(),
        rhs: &x * &(&x * &x + a4 * &x + b8.clone()),
    }
}

// ---------------------------------------------------------------- map builders

/// From `Y^2 = X (X^2 + a4 X + c3 d5)` over `(U, V)` to `y^2 = w (c3 w^2 + a4 w + d5)`:
/// `(u, v, w, y) = (c3 U, c3 V, X, c3^2 Y)`.
pub fn hn_forward(c3: &MultiPoly) -> RationalMap {
    let c3u = c3.rename(&HashMap::from([("u", "U"), ("v", "V")]));
    RationalMap::new(
        &["U", "V", "X", "Y"],
        vec![
            ("u", poly(&c3u * &var("U"))),
            ("v", poly(&c3u * &var("V"))),
            ("w", poly(var("X"))),
            ("y", poly(&(&c3u * &c3u) * &var("Y"))),
        ],
    )
}

/// Inverse direction: `X = c3 w`, `Y = c3 y`, `(U, V) = (u, v)`.
pub fn hn_backward(c3: &MultiPoly) -> RationalMap {
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("U", poly(var("u"))),
            ("V", poly(var("v"))),
            ("X", poly(c3 * &var("w"))),
            ("Y", poly(c3 * &var("y"))),
        ],
    )
}

/// Between two factorizations `c3 d5 = c3' d5'`: `u' = c3' u`, `v' = c3' v`,
/// `w' = c3 w`, `y' = c3 c3'^2 y`.
pub fn hn_refactorization(c3: &MultiPoly, c3t: &MultiPoly) -> RationalMap {
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(c3t * &var("u"))),
            ("v", poly(c3t * &var("v"))),
            ("w", poly(c3 * &var("w"))),
            ("y", poly(&(c3 * &(c3t * c3t)) * &var("y"))),
        ],
    )
}

/// Quartic to rank ten double sextic: `w' = y`, `y' = y^2 w - c2 w - e3/2`.
pub fn k_to_s(r: &Rank10Params) -> RationalMap {
    let (w, y) = (var("w"), var("y"));
    let eta = &(&(&y * &y) * &w) - &(&r.c2 * &w) - r.e3.scale(&q(1, 2));
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![("u", poly(var("u"))), ("v", poly(var("v"))), ("w", poly(y)), ("y", poly(eta))],
    )
}

/// Inverse: `w' = (y + e3/2)/(w^2 - c2)`, `y' = w`.
pub fn s_to_k(r: &Rank10Params) -> Result<RationalMap, SurfaceError> {
    let (w, y) = (var("w"), var("y"));
    let wk = ratio(&y + &r.e3.scale(&q(1, 2)), &(&w * &w) - &r.c2)?;
    Ok(RationalMap::new(
        &["u", "v", "w", "y"],
        vec![("u", poly(var("u"))), ("v", poly(var("v"))), ("w", wk), ("y", poly(w))],
    ))
}

/// Partner to quartic: `y' = y / C`.
pub fn sprime_to_k(c: &MultiPoly) -> Result<RationalMap, SurfaceError> {
    Ok(RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(var("v"))),
            ("w", poly(var("w"))),
            ("y", ratio(var("y"), c.clone())?),
        ],
    ))
}

/// Quartic to partner: `y' = C y`.
pub fn k_to_sprime(c: &MultiPoly) -> RationalMap {
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(var("v"))),
            ("w", poly(var("w"))),
            ("y", poly(c * &var("y"))),
        ],
    )
}

/// Direct map from the rank ten double sextic `(u, v, w, y)` to the partner,
/// with `m = u v c2 + d4`:
/// `D = 2 e3 y - 2 m w^2 + 2 c2 m - e3^2`,
/// `w' = -(2 m y - 2 u v e3 w^2 + (u v c2 - d4) e3) / D`,
/// `y' = 2 (u v e3^2 - m^2) w / D`.
pub fn s_to_sprime(r: &Rank10Params) -> Result<RationalMap, SurfaceError> {
    let (w, y) = (var("w"), var("y"));
    let uv = &var("u") * &var("v");
    let m = &(&uv * &r.c2) + &r.d4;
    let w2 = &w * &w;
    let d = (&r.e3 * &y).scale(&qi(2)) - (&m * &w2).scale(&qi(2)) + (&r.c2 * &m).scale(&qi(2)) - &r.e3 * &r.e3;
    let nw = -((&m * &y).scale(&qi(2)) - (&(&uv * &r.e3) * &w2).scale(&qi(2)) + &(&(&uv * &r.c2) - &r.d4) * &r.e3);
    let ny = (&(&(&uv * &r.e3) * &r.e3) - &(&m * &m)).scale(&qi(2)) * w;
    Ok(RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(var("v"))),
            ("w", ratio(nw, d.clone())?),
            ("y", ratio(ny, d)?),
        ],
    ))
}

/// Quartic to the double sextic written in the shifted coordinate
/// `y' = y_S + e3/2`: `w' = y`, `y' = (y^2 - c2) w`.
pub fn quartic_to_shifted_sextic(c2: &MultiPoly) -> RationalMap {
    let (w, y) = (var("w"), var("y"));
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(var("v"))),
            ("w", poly(y.clone())),
            ("y", poly(&(&(&y * &y) - c2) * &w)),
        ],
    )
}

/// Shifted rank ten sextic: `(y - e3/2)^2 = u v w^4 - a4 w^2 + b6''`.
pub fn shifted_rank10_equation(r: &Rank10Params) -> MultiPoly {
    let (w, y) = (var("w"), var("y"));
    let ys = &y - &r.e3.scale(&q(1, 2));
    let uv = &var("u") * &var("v");
    &ys * &ys - (&uv * &w.pow(4) - &r.a4() * &w.pow(2) + r.b6pp())
}

/// Alternate fibration to `y^2 = v^2 w^4 - 2 a4 w^2 + 4 b6''`:
/// `w = Y / (v X)`, `y = Y^2/(v X^2) - (2 X + a4)/v`.
pub fn alternate_to_canonical(a4: &MultiPoly) -> Result<RationalMap, SurfaceError> {
    let (x, yy, v) = (var("X"), var("Y"), var("v"));
    let w = ratio(yy.clone(), &v * &x)?;
    // common denominator v X^2
    let num = &(&yy * &yy) - &(&(&x.scale(&qi(2)) + a4) * &(&x * &x));
    let y = ratio(num, &v * &(&x * &x))?;
    Ok(RationalMap::new(
        &["u", "v", "X", "Y"],
        vec![("u", poly(var("u"))), ("v", poly(v)), ("w", w), ("y", y)],
    ))
}

/// Back: `X = -(v y + a4 - v^2 w^2)/2`, `Y = v w X`.
pub fn canonical_to_alternate(a4: &MultiPoly) -> RationalMap {
    let (w, y, v) = (var("w"), var("y"), var("v"));
    let x = -(&(&v * &y) + a4 - &(&(&v * &v) * &(&w * &w))).scale(&q(1, 2));
    let yy = &(&v * &w) * &x;
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![("u", poly(var("u"))), ("v", poly(v)), ("X", poly(x)), ("Y", poly(yy))],
    )
}

/// The double sextic reached by `alternate_to_canonical`.
pub fn twisted_canonical(a4: &MultiPoly, b6pp: &MultiPoly) -> MultiPoly {
    let (w, v) = (var("w"), var("v"));
    &(&v * &v) * &w.pow(4) - (a4 * &w.pow(2)).scale(&qi(2)) + b6pp.scale(&qi(4))
}

/// `P = c2 v^2 - h0 e3 v + h0^2 d4`, the cofactor with `b8 = d4 P`.
pub fn prime_cofactor(p: &PrimeParams) -> MultiPoly {
    let v = var("v");
    &(&p.c2 * &(&v * &v)) - &(&p.e3 * &v).scale(&p.h0) + p.d4.scale(&(&p.h0 * &p.h0))
}

/// Alternate fibration to the partner `y^2 = w (v + h0 w) Q`:
/// `w = v X / (P - h0 X)`, `y = v P Y / (P - h0 X)^2`.
pub fn alternate_to_partner(p: &PrimeParams) -> Result<RationalMap, SurfaceError> {
    let (x, yy, v) = (var("X"), var("Y"), var("v"));
    let pp = prime_cofactor(p);
    let den = &pp - &x.scale(&p.h0);
    Ok(RationalMap::new(
        &["u", "v", "X", "Y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(v.clone())),
            ("w", ratio(&v * &x, den.clone())?),
            ("y", ratio(&(&v * &pp) * &yy, &den * &den)?),
        ],
    ))
}

/// Back: `X = P w / (v + h0 w)`, `Y = P v y / (v + h0 w)^2`.
pub fn partner_to_alternate(p: &PrimeParams) -> Result<RationalMap, SurfaceError> {
    let (w, y, v) = (var("w"), var("y"), var("v"));
    let pp = prime_cofactor(p);
    let den = &v + &w.scale(&p.h0);
    Ok(RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(var("u"))),
            ("v", poly(v.clone())),
            ("X", ratio(&pp * &w, den.clone())?),
            ("Y", ratio(&(&pp * &v) * &y, &den * &den)?),
        ],
    ))
}

/// For `h0 = 0` and `c2 d4 = c2' d4'`: `u' = c2' u`, `v' = c2' v`, `w' = c2 w`,
/// `y' = c2 c2'^2 y`.
pub fn h0_refactorization(c2: &MultiPoly, c2t: &MultiPoly) -> RationalMap {
    RationalMap::new(
        &["u", "v", "w", "y"],
        vec![
            ("u", poly(c2t * &var("u"))),
            ("v", poly(c2t * &var("v"))),
            ("w", poly(c2 * &var("w"))),
            ("y", poly(&(c2 * &(c2t * c2t)) * &var("y"))),
        ],
    )
}

// ---------------------------------------------------------- coefficient rules

/// Coefficients of `c0 W^3 + c2 W^2 + c4 W + c6` after `W -> f0 W + f2`.
pub fn shift_coefficients(c: &[MultiPoly; 4], f0: &Scalar, f2: &MultiPoly) -> [MultiPoly; 4] {
    let [c0, c2, c4, c6] = c;
    let f0p = MultiPoly::constant(f0.clone());
    let f2s = f2 * f2;
    [
        c0.scale(&(f0 * f0 * f0)),
        &(c2 + &(c0 * f2).scale(&qi(3))) * &(&f0p * &f0p),
        &(&(c4 + &(c2 * f2).scale(&qi(2))) + &(c0 * &f2s).scale(&qi(3))) * &f0p,
        c6 + &(c4 * f2) + &(c2 * &f2s) + &(c0 * &(&f2s * f2)),
    ]
}

fn cubic_in(c: &[MultiPoly; 4], w: &MultiPoly) -> MultiPoly {
    let w2 = w * w;
    &(&c[0] * &(&w2 * w)) + &(&c[1] * &w2) + &(&c[2] * w) + c[3].clone()
}

/// Residual of the shift rules: substitute and compare with the displayed
/// coefficients.
pub fn shift_rule_residual(c: &[MultiPoly; 4], f0: &Scalar, f2: &MultiPoly) -> MultiPoly {
    let w = var("W");
    let direct = cubic_in(c, &(&w.scale(f0) + f2));
    direct - cubic_in(&shift_coefficients(c, f0, f2), &w)
}

/// `(c2, c4, c6)` from `alpha0..alpha4` and `c0`.
pub fn relats_coefficients(alphas: &[MultiPoly; 5], c0: &Scalar) -> Result<[MultiPoly; 3], SurfaceError> {
    if c0.is_zero() {
        return Err(SurfaceError::Domain("c0 must be nonzero".into()));
    }
    let [a0, a1, a2, a3, a4] = alphas;
    let c2 = a2.clone();
    let c4 = (&(a1 * a3) - &(a0 * a4).scale(&qi(4))).scale(&c0.recip());
    let c6 = (&(&(a0 * &(a3 * a3)) + &(&(a1 * a1) * a4)) - &(&(a0 * a2) * a4).scale(&qi(4))).scale(&(c0 * c0).recip());
    Ok([c2, c4, c6])
}

/// Expands `-det(M) / (2 c0)^2` and compares with `c0 w^6 + c2 w^4 + c4 w^2 + c6`.
pub fn verify_relats_and_determinant(alphas: &[MultiPoly; 5], c0: &Scalar) -> Result<MultiPoly, SurfaceError> {
    let [c2, c4, c6] = relats_coefficients(alphas, c0)?;
    let [a0, a1, a2, a3, a4] = alphas;
    let w2 = var("w").pow(2);
    let c0w2 = w2.scale(c0);
    let m = [
        [a0.scale(&qi(4)), a1.clone(), c0w2.scale(&qi(-2))],
        [a1.clone(), &c0w2 + a2, a3.clone()],
        [c0w2.scale(&qi(-2)), a3.clone(), a4.scale(&qi(4))],
    ];
    let det = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
        - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])))
        + &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    let lhs = det.scale(&(-(qi(4) * c0 * c0).recip()));
    let rhs = w2.pow(3).scale(c0) + &c2 * &w2.pow(2) + &c4 * &w2 + c6;
    Ok(lhs - rhs)
}

// ---------------------------------------------------------------- catalogue

#[derive(Clone, Debug, Serialize)]
pub struct MapCheck {
    pub id: String,
    pub anchor: &'static str,
    pub instance: usize,
    pub holds: bool,
    pub detail: String,
}

type CheckFn = fn(&mut Sampler) -> Result<(bool, String), SurfaceError>;

/// `(id, anchor, check)` for every catalogued map or identity.
pub const MAP_CATALOG: &[(&str, &str, CheckFn)] = &[
    ("hn_forward", "alternate fibration to the H+N double sextic", check_hn_forward),
    (
        "hn_backward",
        "H+N double sextic back to the alternate fibration",
        check_hn_backward,
    ),
    (
        "hn_refactorization",
        "H+N sextic under a change of factorization b8 = c3 d5",
        check_hn_refactorization,
    ),
    ("rank10_k_to_s", "rank 10 quartic K to the double sextic S", check_k_to_s),
    ("rank10_s_to_k", "rank 10 double sextic S to the quartic K", check_s_to_k),
    ("rank10_sprime_to_k", "rank 10 partner S' to the quartic K", check_sprime_to_k),
    (
        "rank10_s_to_sprime",
        "rank 10 double sextic S to the partner S' (direct formula)",
        check_s_to_sprime,
    ),
    (
        "rank10_composite",
        "rank 10 chain S' -> K -> S -> K -> S' is the identity",
        check_rank10_composite,
    ),
    (
        "shifted_sextic",
        "quartic K to the shifted double sextic S",
        check_quartic_to_shifted_sextic,
    ),
    (
        "alternate_to_canonical",
        "alternate fibration to the canonical double sextic",
        check_alternate_to_canonical,
    ),
    (
        "canonical_to_alternate",
        "canonical double sextic to the alternate fibration",
        check_canonical_to_alternate,
    ),
    (
        "birational_composite",
        "canonical sextic and alternate fibration maps are inverse",
        check_alternate_composite,
    ),
    (
        "alternate_to_partner",
        "alternate fibration to the partner S'",
        check_alternate_to_partner,
    ),
    (
        "partner_to_alternate",
        "partner S' to the alternate fibration",
        check_partner_to_alternate,
    ),
    (
        "h0_refactorization",
        "partner S' with h0 = 0 under a change of factorization",
        check_h0_refactorization,
    ),
    (
        "shift_rules",
        "weight-two shift W -> f0 W + f2 of the relation coefficients",
        check_shift_rules,
    ),
    ("relats_determinant", "relation coefficients and the determinant form", check_relats),
    (
        "params_closure",
        "parameter derivation closes the loop with the fibration",
        check_params_closure,
    ),
];

pub fn map_catalog(seed: u64, instances: usize) -> Vec<MapCheck> {
    let mut out = Vec::new();
    for (id, anchor, f) in MAP_CATALOG {
        for i in 0..instances {
            let mut s = Sampler::derived(seed.wrapping_add(i as u64), 20, id);
            let (holds, detail) = match f(&mut s) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            out.push(MapCheck {
                id: id.to_string(),
                anchor,
                instance: i,
                holds,
                detail,
            });
        }
    }
    out
}

fn verdict(v: MapVerdict) -> (bool, String) {
    if v.holds {
        let c = v
            .cofactor
            .map(|c| format!("cofactor with {} terms", c.num_terms()))
            .unwrap_or_else(|| "in the ideal".into());
        (true, format!("residual 0, {c}"))
    } else {
        (false, format!("residual with {} terms", v.residual.num_terms()))
    }
}

fn sample_hn(s: &mut Sampler) -> (MultiPoly, MultiPoly, MultiPoly) {
    (s.form("u", "v", 3), s.form("u", "v", 4), s.form("u", "v", 5))
}

fn check_hn_forward(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let (c3, a4, d5) = sample_hn(s);
    let ren = HashMap::from([("u", "U"), ("v", "V")]);
    let source = weierstrass_cover(&a4.rename(&ren), &(&c3 * &d5).rename(&ren));
    let target = build_s_hn(&c3, &a4, &d5)?.equation();
    Ok(verdict(verify_map(&hn_forward(&c3), &source, &target)?))
}

fn check_hn_backward(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let (c3, a4, d5) = sample_hn(s);
    let source = build_s_hn(&c3, &a4, &d5)?.cover();
    let ren = HashMap::from([("u", "U"), ("v", "V")]);
    let target = weierstrass_cover(&a4.rename(&ren), &(&c3 * &d5).rename(&ren)).defining();
    Ok(verdict(verify_map(&hn_backward(&c3), &source, &target)?))
}

fn check_hn_refactorization(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    // c3 = l q, d5 = r k and c3' = l r, d5' = q k
    let (l, qf, r, k) = (s.form("u", "v", 1), s.form("u", "v", 2), s.form("u", "v", 2), s.form("u", "v", 3));
    let a4 = s.form("u", "v", 4);
    let (c3, d5, c3t, d5t) = (&l * &qf, &r * &k, &l * &r, &qf * &k);
    let source = build_s_hn(&c3, &a4, &d5)?.cover();
    let target = build_s_hn(&c3t, &a4, &d5t)?.equation();
    Ok(verdict(verify_map(&hn_refactorization(&c3, &c3t), &source, &target)?))
}

fn rank10(s: &mut Sampler) -> Rank10Params {
    Rank10Params::sample(s)
}

fn check_k_to_s(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    Ok(verdict(verify_map(&k_to_s(&r), &r.k()?.cover(), &r.s()?.equation())?))
}

fn check_s_to_k(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    Ok(verdict(verify_map(&s_to_k(&r)?, &r.s()?.cover(), &r.k()?.equation())?))
}

fn check_sprime_to_k(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    let k = r.k()?;
    Ok(verdict(verify_map(&sprime_to_k(&k.c)?, &k.partner().cover(), &k.equation())?))
}

fn check_s_to_sprime(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    Ok(verdict(verify_map(
        &s_to_sprime(&r)?,
        &r.s()?.cover(),
        &r.k()?.partner().equation(),
    )?))
}

fn check_rank10_composite(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    let k = r.k()?;
    let chain = k_to_sprime(&k.c).after(&s_to_k(&r)?.after(&k_to_s(&r).after(&sprime_to_k(&k.c)?)?)?)?;
    Ok(verdict(verify_identity(&chain, &k.partner().cover())?))
}

fn check_quartic_to_shifted_sextic(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let r = rank10(s);
    Ok(verdict(verify_map(
        &quartic_to_shifted_sextic(&r.c2),
        &r.k()?.cover(),
        &shifted_rank10_equation(&r),
    )?))
}

fn sample_prime(s: &mut Sampler) -> Result<PrimeParams, SurfaceError> {
    let label = PRIME_LABELS[s.int(0, PRIME_LABELS.len() as i64 - 1) as usize];
    PrimeParams::sample(label, s)
}

fn check_alternate_to_canonical(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let p = sample_prime(s)?;
    let source = weierstrass_cover(&p.a4(), &p.b8());
    Ok(verdict(verify_map(
        &alternate_to_canonical(&p.a4())?,
        &source,
        &(var("y").pow(2) - twisted_canonical(&p.a4(), &p.b6pp())),
    )?))
}

fn check_canonical_to_alternate(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let p = sample_prime(s)?;
    let source = CoverEquation::double_cover("y", twisted_canonical(&p.a4(), &p.b6pp()))?;
    let target = weierstrass_cover(&p.a4(), &p.b8()).defining();
    Ok(verdict(verify_map(&canonical_to_alternate(&p.a4()), &source, &target)?))
}

fn check_alternate_composite(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let p = sample_prime(s)?;
    let a4 = p.a4();
    let back = canonical_to_alternate(&a4).after(&alternate_to_canonical(&a4)?)?;
    let there = alternate_to_canonical(&a4)?.after(&canonical_to_alternate(&a4))?;
    let w = verify_identity(&back, &weierstrass_cover(&a4, &p.b8()))?;
    let sx = verify_identity(&there, &CoverEquation::double_cover("y", twisted_canonical(&a4, &p.b6pp()))?)?;
    Ok((w.holds && sx.holds, format!("W->S->W {}, S->W->S {}", w.holds, sx.holds)))
}

fn generic_prime(s: &mut Sampler) -> PrimeParams {
    PrimeParams {
        h0: s.nonzero_small(),
        c2: s.form("u", "v", 2),
        e3: s.form("u", "v", 3),
        d4: s.form("u", "v", 4),
    }
}

fn check_alternate_to_partner(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let p = generic_prime(s);
    let source = weierstrass_cover(&p.a4(), &p.b8());
    Ok(verdict(verify_map(&alternate_to_partner(&p)?, &source, &p.sprime()?.equation())?))
}

fn check_partner_to_alternate(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let p = generic_prime(s);
    let target = weierstrass_cover(&p.a4(), &p.b8()).defining();
    Ok(verdict(verify_map(&partner_to_alternate(&p)?, &p.sprime()?.cover(), &target)?))
}

fn check_h0_refactorization(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    // c2 = l1 l2, d4 = l3 k3 and c2' = l1 l3, d4' = l2 k3
    let (l1, l2, l3, k3) = (s.form("u", "v", 1), s.form("u", "v", 1), s.form("u", "v", 1), s.form("u", "v", 3));
    let e3 = s.form("u", "v", 3);
    let (c2, d4, c2t, d4t) = (&l1 * &l2, &l3 * &k3, &l1 * &l3, &l2 * &k3);
    let src = PrimeParams::new(Scalar::zero(), c2.clone(), e3.clone(), d4)?;
    let tgt = PrimeParams::new(Scalar::zero(), c2t.clone(), e3, d4t)?;
    Ok(verdict(verify_map(
        &h0_refactorization(&c2, &c2t),
        &src.sprime()?.cover(),
        &tgt.sprime()?.equation(),
    )?))
}

fn check_shift_rules(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let c = [
        MultiPoly::constant(s.nonzero_small()),
        s.form("u", "v", 2),
        s.form("u", "v", 4),
        s.form("u", "v", 6),
    ];
    let f0 = s.nonzero_small();
    let f2 = s.form("u", "v", 2);
    let r = shift_rule_residual(&c, &f0, &f2);
    Ok((r.is_zero(), format!("residual terms {}", r.num_terms())))
}

fn check_relats(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let alphas = [
        s.form("u", "v", 0),
        s.form("u", "v", 1),
        s.form("u", "v", 2),
        s.form("u", "v", 3),
        s.form("u", "v", 4),
    ];
    let c0 = s.nonzero_small();
    let r = verify_relats_and_determinant(&alphas, &c0)?;
    Ok((r.is_zero(), format!("residual terms {}", r.num_terms())))
}

/// Derives `(h0, c2, e3, d4)` back from `(a4, b6'', d4)`, rebuilds the
/// partner sextic and compares the `j`-invariant of the pencil of lines
/// through `[0:0:1]` with that of the alternate fibration.
fn check_params_closure(s: &mut Sampler) -> Result<(bool, String), SurfaceError> {
    let label = PRIME_LABELS[s.int(0, PRIME_LABELS.len() as i64 - 1) as usize];
    let p = PrimeParams::sample(label, s)?;
    let back = derive_prime_parameters(&p.a4(), &p.b6pp(), &p.d4, label)?;
    let same = back == p && back.factorization_residual().is_zero();
    let sp = p.sprime()?;
    let fib = |e: crate::fibration::FibrationError| SurfaceError::Domain(e.to_string());
    let g = pencil_fibration(&sp.c, &sp.q, &[qi(0), qi(0), qi(1)]).map_err(fib)?;
    let pencil = quartic_to_weierstrass(&g).map_err(fib)?;
    // the pencil parameter is v/u, the Weierstrass coordinate u/v
    let alt = WeierstrassModel::build_alternate(&p.a4(), &p.b8())
        .and_then(|m| m.change_coordinates([[0, 1], [1, 0]]))
        .map_err(fib)?;
    let j_ok = pencil.j_invariant().map_err(fib)?.equals(&alt.j_invariant().map_err(fib)?);
    Ok((same && j_ok, format!("{label}: round trip {same}, j match {j_ok}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_holds() {
        for c in map_catalog(1, 1) {
            assert!(c.holds, "{} {}: {}", c.id, c.instance, c.detail);
        }
    }

    #[test]
    fn wrong_maps_fail() {
        let mut s = Sampler::new(8, 20);
        let p = generic_prime(&mut s);
        // the untwisted canonical sextic is not the target of alternate_to_canonical
        let plain = var("y").pow(2) - p.s().unwrap().branch;
        let v = verify_map(
            &alternate_to_canonical(&p.a4()).unwrap(),
            &weierstrass_cover(&p.a4(), &p.b8()),
            &plain,
        )
        .unwrap();
        assert!(!v.holds);
        // printed reading of the H+N refactorization, with c3 and c3' exchanged
        let (l, qf, r, k) = (s.form("u", "v", 1), s.form("u", "v", 2), s.form("u", "v", 2), s.form("u", "v", 3));
        let a4 = s.form("u", "v", 4);
        let (c3, d5, c3t, d5t) = (&l * &qf, &r * &k, &l * &r, &qf * &k);
        let source = build_s_hn(&c3, &a4, &d5).unwrap().cover();
        let target = build_s_hn(&c3t, &a4, &d5t).unwrap().equation();
        assert!(!verify_map(&hn_refactorization(&c3t, &c3), &source, &target).unwrap().holds);
        assert!(verify_map(&hn_refactorization(&c3, &c3t), &source, &target).unwrap().holds);
    }

    #[test]
    fn printed_sign_of_direct_map_fails() {
        let mut s = Sampler::new(12, 20);
        let r = Rank10Params::sample(&mut s);
        let good = s_to_sprime(&r).unwrap();
        // flip the sign of the w^2 term in the numerator of w'
        let (w, y) = (var("w"), var("y"));
        let uv = &var("u") * &var("v");
        let m = &(&uv * &r.c2) + &r.d4;
        let w2 = &w * &w;
        let nw_printed = -((&m * &y).scale(&qi(2)) + (&(&uv * &r.e3) * &w2).scale(&qi(2)) - &(&(&uv * &r.c2) - &r.d4) * &r.e3);
        let mut bad = good.clone();
        let idx = bad.target_vars.iter().position(|t| t == "w").unwrap();
        bad.components[idx] = RationalFunction::new(nw_printed, good.components[idx].den().clone()).unwrap();
        let source = r.s().unwrap().cover();
        let target = r.k().unwrap().partner().equation();
        assert!(verify_map(&good, &source, &target).unwrap().holds);
        assert!(!verify_map(&bad, &source, &target).unwrap().holds);
    }

    #[test]
    fn relats_special_cases() {
        let mut s = Sampler::new(4, 20);
        let z = MultiPoly::zero();
        let alphas = [s.form("u", "v", 0), z.clone(), s.form("u", "v", 2), z, s.form("u", "v", 4)];
        let c0 = qi(3);
        let [_, c4, _] = relats_coefficients(&alphas, &c0).unwrap();
        assert_eq!(c4, (&alphas[0] * &alphas[4]).scale(&q(-4, 3)));
        assert!(verify_relats_and_determinant(&alphas, &c0).unwrap().is_zero());
        assert!(relats_coefficients(&alphas, &qi(0)).is_err());
    }

    #[test]
    fn partner_relation() {
        let mut s = Sampler::new(6, 20);
        let r = Rank10Params::sample(&mut s);
        let k = r.k().unwrap();
        assert!(verify_map(&k_to_sprime(&k.c), &k.cover(), &k.partner().equation()).unwrap().holds);
    }
}
