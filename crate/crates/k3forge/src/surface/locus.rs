//! Singular loci of the branch curves and of the quartic, certified by
//! elimination.
//!
//! A plane system `G_1 = ... = G_k = 0` is projected from a generic point
//! with resultants; the squarefree projection is then split by gcd
//! computations over `Q[t]/(m)`, so every common zero is found exactly even
//! when it is not rational.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::models::{DoubleSexticModel, QuarticModel};
use super::SurfaceError;
use crate::poly::{qi, MultiPoly, Scalar, UniPoly};
use crate::random::Sampler;

const UVW: [&str; 3] = ["u", "v", "w"];
const PROJECTION_ATTEMPTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    /// Every singular point is accounted for.
    Complete,
    /// Elimination degenerated, typically along a multiple component.
    Partial,
}

/// A cluster of conjugate singular points. `rational` is set when the
/// cluster is a single rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusPoint {
    #[serde(serialize_with = "ser_point")]
    pub rational: Option<Vec<Scalar>>,
    /// Number of geometric points in the cluster.
    pub count: usize,
}

fn ser_point<S: serde::Serializer>(p: &Option<Vec<Scalar>>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(xs) => s.collect_str(&format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":"))),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularLocusReport {
    pub certificate: Certificate,
    /// Expected points and whether each is singular on the model.
    #[serde(skip)]
    pub expected: Vec<(Vec<Scalar>, bool)>,
    pub unexpected: Vec<LocusPoint>,
}

impl SingularLocusReport {
    /// Complete certificate, every expected point singular, nothing else.
    pub fn is_exact(&self) -> bool {
        self.certificate == Certificate::Complete && self.expected.iter().all(|(_, ok)| *ok) && self.unexpected.is_empty()
    }

    pub fn unexpected_count(&self) -> usize {
        self.unexpected.iter().map(|p| p.count).sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub enum LocusModel<'a> {
    Sextic(&'a DoubleSexticModel),
    Quartic(&'a QuarticModel),
}

impl<'a> From<&'a DoubleSexticModel> for LocusModel<'a> {
    fn from(m: &'a DoubleSexticModel) -> Self {
        LocusModel::Sextic(m)
    }
}

impl<'a> From<&'a QuarticModel> for LocusModel<'a> {
    fn from(m: &'a QuarticModel) -> Self {
        LocusModel::Quartic(m)
    }
}

/// Singular points of a double sextic (points `[u:v:w]` of the branch curve)
/// or of a quartic `y^2 C = Q` (points `[u:v:w:y]`), compared with `expected`.
pub fn branch_singular_locus<'a>(model: impl Into<LocusModel<'a>>, expected: &[Vec<Scalar>]) -> Result<SingularLocusReport, SurfaceError> {
    match model.into() {
        LocusModel::Sextic(s) => plane_curve_locus(&s.branch, expected),
        LocusModel::Quartic(k) => quartic_locus(k, expected),
    }
}

fn gradient(f: &MultiPoly, vars: &[&str]) -> Vec<MultiPoly> {
    vars.iter().map(|x| f.derivative(x)).collect()
}

fn eval_at(f: &MultiPoly, vars: &[&str], p: &[Scalar]) -> Result<Scalar, SurfaceError> {
    let at: HashMap<&str, Scalar> = vars.iter().copied().zip(p.iter().cloned()).collect();
    Ok(f.eval(&at)?)
}

fn singular_at(f: &MultiPoly, vars: &[&str], p: &[Scalar]) -> Result<bool, SurfaceError> {
    if p.len() != vars.len() || p.iter().all(|x| x.is_zero()) {
        return Err(SurfaceError::Domain(format!("expected a point with {} coordinates", vars.len())));
    }
    if !eval_at(f, vars, p)?.is_zero() {
        return Ok(false);
    }
    for g in gradient(f, vars) {
        if !eval_at(&g, vars, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_point(a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Plane curve `f(u, v, w) = 0`: common zeros of the three partials.
pub fn plane_curve_locus(f: &MultiPoly, expected: &[Vec<Scalar>]) -> Result<SingularLocusReport, SurfaceError> {
    let mut exp = Vec::new();
    for p in expected {
        exp.push((p.clone(), singular_at(f, &UVW, p)?));
    }
    let hints: Vec<Vec<Scalar>> = expected.to_vec();
    let Some(clusters) = common_zeros(&gradient(f, &UVW), &hints)? else {
        return Ok(SingularLocusReport {
            certificate: Certificate::Partial,
            expected: exp,
            unexpected: vec![],
        });
    };
    let unexpected = clusters
        .into_iter()
        .filter(|c| {
            !c.rational
                .as_ref()
                .map(|r| expected.iter().any(|e| same_point(e, r)))
                .unwrap_or(false)
        })
        .map(|c| LocusPoint {
            rational: c.rational,
            count: c.count,
        })
        .collect();
    Ok(SingularLocusReport {
        certificate: Certificate::Complete,
        expected: exp,
        unexpected,
    })
}

/// Singular points of `y^2 C = Q`: the vertex `[0:0:0:1]`, the points
/// `[x:0]` over singular points of `Q = 0`, and the points `[x:y]` with `x`
/// on `C = Q = 0`, `grad Q = y^2 grad C` and `y != 0`.
fn quartic_locus(k: &QuarticModel, expected: &[Vec<Scalar>]) -> Result<SingularLocusReport, SurfaceError> {
    let vars4 = ["u", "v", "w", "y"];
    let eq = k.equation();
    let mut exp = Vec::new();
    for p in expected {
        exp.push((p.clone(), singular_at(&eq, &vars4, p)?));
    }
    let is_expected = |p: &[Scalar]| expected.iter().any(|e| same_point(e, p));
    let mut unexpected = Vec::new();
    let vertex = vec![qi(0), qi(0), qi(0), qi(1)];
    if !is_expected(&vertex) {
        unexpected.push(LocusPoint {
            rational: Some(vertex),
            count: 1,
        });
    }
    let hints: Vec<Vec<Scalar>> = expected
        .iter()
        .filter(|p| p.len() == 4 && !p[..3].iter().all(Zero::is_zero))
        .map(|p| p[..3].to_vec())
        .collect();
    let partial = || SingularLocusReport {
        certificate: Certificate::Partial,
        expected: exp.clone(),
        unexpected: vec![],
    };

    let gq = gradient(&k.q, &UVW);
    let Some(sing_q) = common_zeros(&gq, &hints)? else {
        return Ok(partial());
    };
    for c in sing_q {
        let lifted = c.rational.map(|mut x| {
            x.push(qi(0));
            x
        });
        if !lifted.as_ref().map(|p| is_expected(p)).unwrap_or(false) {
            unexpected.push(LocusPoint {
                rational: lifted,
                count: c.count,
            });
        }
    }

    let gc = gradient(&k.c, &UVW);
    let mut tangency = vec![k.c.clone(), k.q.clone()];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        tangency.push(&gc[i] * &gq[j] - &gc[j] * &gq[i]);
    }
    let Some(tan) = common_zeros(&tangency, &hints)? else {
        return Ok(partial());
    };
    // points where grad Q also vanishes have y = 0 and were counted above
    let mut with_grad = tangency.clone();
    with_grad.extend(gq.iter().cloned());
    let Some(flat) = common_zeros(&with_grad, &hints)? else {
        return Ok(partial());
    };
    for c in tan {
        if let Some(x) = &c.rational {
            if flat.iter().any(|f| f.rational.as_ref().map(|r| same_point(r, x)).unwrap_or(false)) {
                continue;
            }
            // y^2 = lambda with grad Q = lambda grad C
            let (i, gci) = gc
                .iter()
                .enumerate()
                .map(|(i, g)| (i, eval_at(g, &UVW, x)))
                .find(|(_, v)| v.as_ref().map(|v| !v.is_zero()).unwrap_or(true))
                .ok_or_else(|| SurfaceError::Domain("conic singular at a tangency point".into()))?;
            let lambda = eval_at(&gq[i], &UVW, x)? / gci?;
            match rational_sqrt(&lambda) {
                Some(r) => {
                    for y in [r.clone(), -r] {
                        let mut p = x.clone();
                        p.push(y);
                        if !is_expected(&p) {
                            unexpected.push(LocusPoint {
                                rational: Some(p),
                                count: 1,
                            });
                        }
                    }
                }
                None => unexpected.push(LocusPoint { rational: None, count: 2 }),
            }
        } else {
            let removed: usize = flat.iter().filter(|f| f.rational.is_none()).map(|f| f.count).sum();
            let n = c.count.saturating_sub(removed);
            if n > 0 {
                unexpected.push(LocusPoint {
                    rational: None,
                    count: 2 * n,
                });
            }
        }
    }
    Ok(SingularLocusReport {
        certificate: Certificate::Complete,
        expected: exp,
        unexpected,
    })
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Scalar::new(n, d))
}

#[derive(Clone, Debug)]
pub struct Cluster {
    pub rational: Option<Vec<Scalar>>,
    pub count: usize,
}

/// Common zeros of homogeneous `polys` in `u, v, w`, as clusters; `None`
/// when the elimination degenerates for every projection tried. Clusters
/// over the `hints` are split off so they come out as rational points.
pub fn common_zeros(polys: &[MultiPoly], hints: &[Vec<Scalar>]) -> Result<Option<Vec<Cluster>>, SurfaceError> {
    let polys: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(Some(vec![]));
    }
    if polys.len() < 2 {
        return Ok(None);
    }
    let mut s = Sampler::new(0x5eed, 3);
    for attempt in 0..PROJECTION_ATTEMPTS {
        let t = if attempt == 0 {
            vec![vec![qi(1), qi(0), qi(1)], vec![qi(2), qi(1), qi(-1)], vec![qi(-1), qi(3), qi(1)]]
        } else {
            random_matrix(&mut s)
        };
        if let Some(res) = try_projection(&polys, hints, &t)? {
            return Ok(res);
        }
    }
    Ok(None)
}

fn random_matrix(s: &mut Sampler) -> Vec<Vec<Scalar>> {
    loop {
        let t: Vec<Vec<Scalar>> = (0..3).map(|_| (0..3).map(|_| s.small()).collect()).collect();
        if !det3(&t).is_zero() {
            return t;
        }
    }
}

fn det3(t: &[Vec<Scalar>]) -> Scalar {
    &t[0][0] * (&t[1][1] * &t[2][2] - &t[1][2] * &t[2][1]) - &t[0][1] * (&t[1][0] * &t[2][2] - &t[1][2] * &t[2][0])
        + &t[0][2] * (&t[1][0] * &t[2][1] - &t[1][1] * &t[2][0])
}

/// Solves `t x = p` by Cramer's rule.
fn solve3(t: &[Vec<Scalar>], p: &[Scalar]) -> Vec<Scalar> {
    let d = det3(t);
    (0..3)
        .map(|k| {
            let m: Vec<Vec<Scalar>> = (0..3)
                .map(|i| (0..3).map(|j| if j == k { p[i].clone() } else { t[i][j].clone() }).collect())
                .collect();
            det3(&m) / &d
        })
        .collect()
}

/// `Ok(None)` asks for another projection; `Ok(Some(None))` is a genuine degeneration.
#[allow(clippy::type_complexity)]
fn try_projection(polys: &[&MultiPoly], hints: &[Vec<Scalar>], t: &[Vec<Scalar>]) -> Result<Option<Option<Vec<Cluster>>>, SurfaceError> {
    // (u, v, w) = t (a, 1, z), with a renamed to `t`
    let mut sub = HashMap::new();
    let (a, z) = (MultiPoly::var("t"), MultiPoly::var("z"));
    for (i, name) in UVW.iter().enumerate() {
        sub.insert(*name, a.scale(&t[i][0]) + MultiPoly::constant(t[i][1].clone()) + z.scale(&t[i][2]));
    }
    let centre: Vec<Scalar> = (0..3).map(|i| t[i][2].clone()).collect();
    let mut local = Vec::new();
    for p in polys {
        let d = p.total_degree().unwrap_or(0);
        if eval_at(p, &UVW, &centre)?.is_zero() {
            return Ok(None);
        }
        let g = p.compose(&sub);
        debug_assert_eq!(g.degree_in("z"), d);
        local.push(g);
    }
    // no common zero on the line at infinity a : b = 1 : 0
    let mut line = UniPoly::new(vec![]);
    for p in polys {
        let mut at_inf = HashMap::new();
        for (i, name) in UVW.iter().enumerate() {
            at_inf.insert(*name, MultiPoly::constant(t[i][0].clone()) + z.scale(&t[i][2]));
        }
        let (h, _) = UniPoly::from_multi(&p.compose(&at_inf))?;
        line = line.gcd(&h);
    }
    if line.is_zero() || !line.is_constant() {
        return Ok(None);
    }
    let mut hint_t = Vec::new();
    for h in hints {
        let c = solve3(t, h);
        if c[1].is_zero() {
            return Ok(None);
        }
        hint_t.push(&c[0] / &c[1]);
    }

    let mut r: Option<UniPoly> = None;
    'pairs: for i in 0..local.len() {
        for j in i + 1..local.len() {
            let u = resultant_in_z(&local[i], &local[j])?;
            r = Some(match r {
                None => u,
                Some(prev) if u.is_zero() => prev,
                Some(prev) if prev.is_zero() => u,
                Some(prev) => prev.gcd(&u),
            });
            if r.as_ref().map(|r| !r.is_zero() && r.is_constant()).unwrap_or(false) {
                break 'pairs;
            }
        }
    }
    let r = r.unwrap_or_default();
    if r.is_zero() {
        return Ok(Some(None));
    }
    if r.is_constant() {
        return Ok(Some(Some(vec![])));
    }
    let mut pieces = Vec::new();
    let mut rest = r.squarefree_part()?;
    for h in &hint_t {
        if rest.eval(h).is_zero() {
            let lin = UniPoly::new(vec![-h.clone(), Scalar::one()]);
            rest = rest.div_exact(&lin).expect("root divides");
            if !pieces.contains(&lin) {
                pieces.push(lin);
            }
        }
    }
    if !rest.is_constant() {
        pieces.push(rest);
    }
    let zpolys: Vec<Vec<UniPoly>> = local.iter().map(in_z).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for m in pieces {
        for (m, g) in split_gcd(m, &zpolys) {
            let g = squarefree_over(&m, g);
            let dz = g.len() - 1;
            if dz == 0 {
                continue;
            }
            let rational = if m.degree() == Some(1) && dz == 1 {
                let t0 = -m.coeffs()[0].clone() / &m.coeffs()[1];
                let z0 = -g[0].eval(&t0) / g[1].eval(&t0);
                let local_pt = [t0, qi(1), z0];
                Some(
                    (0..3)
                        .map(|i| (0..3).map(|j| &t[i][j] * &local_pt[j]).fold(Scalar::zero(), |a, b| a + b))
                        .collect(),
                )
            } else {
                None
            };
            out.push(Cluster {
                rational,
                count: m.degree().unwrap_or(0) * dz,
            });
        }
    }
    Ok(Some(Some(out)))
}

/// Univariate resultant by the Euclidean recurrence.
fn uni_resultant(a: &UniPoly, b: &UniPoly) -> Scalar {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Scalar::zero();
    };
    if n == 0 {
        return num_traits::pow(b.lc(), m);
    }
    let (_, r) = a.div_rem(b).expect("nonzero divisor");
    let Some(k) = r.degree() else {
        return Scalar::zero();
    };
    let sign = if m * n % 2 == 1 { -Scalar::one() } else { Scalar::one() };
    sign * num_traits::pow(b.lc(), m - k) * uni_resultant(b, &r)
}

/// `Res_z(f, g)` as a polynomial in `t`, by evaluation at `deg f * deg g + 1`
/// integers and interpolation; both have constant leading coefficient in `z`,
/// so the degree bound holds.
fn resultant_in_z(f: &MultiPoly, g: &MultiPoly) -> Result<UniPoly, SurfaceError> {
    let bound = (f.total_degree().unwrap_or(0) * g.total_degree().unwrap_or(0)) as i64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..=bound {
        let c = qi(k - bound / 2);
        let (a, _) = UniPoly::from_multi(&f.eval_var("t", c.clone()))?;
        let (b, _) = UniPoly::from_multi(&g.eval_var("t", c.clone()))?;
        xs.push(c);
        ys.push(uni_resultant(&a, &b));
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::new(vec![dd[n - 1].clone()]);
    for i in (0..n - 1).rev() {
        p = p
            .mul(&UniPoly::new(vec![-xs[i].clone(), Scalar::one()]))
            .add(&UniPoly::new(vec![dd[i].clone()]));
    }
    p
}

fn in_z(g: &MultiPoly) -> Result<Vec<UniPoly>, SurfaceError> {
    g.coefficients_in("z").iter().map(|c| Ok(UniPoly::from_multi(c)?.0)).collect()
}

/// Polynomials in `z` over `Q[t]/(m)`, lowest coefficient first.
type ZPoly = Vec<UniPoly>;

enum Step<T> {
    Done(T),
    Split(UniPoly),
}

fn reduce(m: &UniPoly, p: &[UniPoly]) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|c| c.div_rem(m).expect("nonzero modulus").1).collect();
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn inverse_mod(c: &UniPoly, m: &UniPoly) -> Step<UniPoly> {
    // extended Euclid on (c, m)
    let (mut r0, mut r1) = (m.clone(), c.clone());
    let (mut s0, mut s1) = (UniPoly::new(vec![]), UniPoly::one());
    while !r1.is_zero() {
        let (qt, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s = s0.sub(&qt.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.is_constant() {
        let inv = s0.scale(&(Scalar::one() / r0.lc()));
        Step::Done(inv.div_rem(m).expect("nonzero modulus").1)
    } else {
        Step::Split(r0.monic())
    }
}

fn make_monic(m: &UniPoly, p: ZPoly) -> Step<ZPoly> {
    let Some(lc) = p.last() else {
        return Step::Done(p);
    };
    match inverse_mod(lc, m) {
        Step::Done(inv) => Step::Done(reduce(m, &p.iter().map(|c| c.mul(&inv)).collect::<Vec<_>>())),
        Step::Split(g) => Step::Split(g),
    }
}

fn rem_z(m: &UniPoly, a: ZPoly, b: &ZPoly) -> ZPoly {
    // b is monic
    let mut a = a;
    let db = b.len() - 1;
    while a.len() > db && !a.is_empty() {
        let shift = a.len() - 1 - db;
        let c = a.last().unwrap().clone();
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = a[shift + k].sub(&c.mul(bk));
        }
        a = reduce(m, &a);
    }
    a
}

fn gcd_z(m: &UniPoly, a: ZPoly, b: ZPoly) -> Step<ZPoly> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        b = match make_monic(m, b) {
            Step::Done(b) => b,
            Step::Split(g) => return Step::Split(g),
        };
        let r = rem_z(m, a, &b);
        a = b;
        b = r;
    }
    make_monic(m, a)
}

/// Gcd of all `polys` over each factor of `m` met along the way.
fn split_gcd(m: UniPoly, polys: &[Vec<UniPoly>]) -> Vec<(UniPoly, ZPoly)> {
    let mut queue = vec![m];
    let mut out = Vec::new();
    'next: while let Some(m) = queue.pop() {
        let mut g: ZPoly = reduce(&m, &polys[0]);
        for p in &polys[1..] {
            match gcd_z(&m, g, reduce(&m, p)) {
                Step::Done(x) => g = x,
                Step::Split(f) => {
                    let other = m.div_exact(&f).expect("factor of the modulus");
                    queue.push(f);
                    queue.push(other.monic());
                    continue 'next;
                }
            }
        }
        match make_monic(&m, g) {
            Step::Done(g) => out.push((m, g)),
            Step::Split(f) => {
                let other = m.div_exact(&f).expect("factor of the modulus");
                queue.push(f);
                queue.push(other.monic());
            }
        }
    }
    out
}

/// Removes repeated factors in `z` when that is cheap to decide; splitting
/// is avoided by falling back to the input.
fn squarefree_over(m: &UniPoly, g: ZPoly) -> ZPoly {
    if g.len() <= 2 {
        return g;
    }
    let dg: ZPoly = reduce(
        m,
        &g.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&qi(k as i64)))
            .collect::<Vec<_>>(),
    );
    match gcd_z(m, g.clone(), dg) {
        Step::Done(h) if h.len() > 1 => match div_z(m, &g, &h) {
            Some(q) => q,
            None => g,
        },
        _ => g,
    }
}

fn div_z(m: &UniPoly, a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    // b monic
    let db = b.len() - 1;
    let mut a = a.clone();
    let mut q = vec![UniPoly::new(vec![]); a.len().saturating_sub(db)];
    while a.len() > db {
        let shift = a.len() - 1 - db;
        let c = a.last().unwrap().clone();
        q[shift] = c.clone();
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = a[shift + k].sub(&c.mul(bk));
        }
        a = reduce(m, &a);
    }
    a.is_empty().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::models::{build_k, build_s_canonical, build_s_rank9};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn pt(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn smooth_and_nodal_cubics() {
        let r = plane_curve_locus(&p("u^3 + v^3 + w^3"), &[]).unwrap();
        assert!(r.is_exact());
        // node at [0:0:1]
        let r = plane_curve_locus(&p("v^2*w - u^3 - u^2*w"), &[pt(&[0, 0, 1])]).unwrap();
        assert!(r.is_exact(), "{r:?}");
        let r = plane_curve_locus(&p("v^2*w - u^3 - u^2*w"), &[]).unwrap();
        assert_eq!(r.unexpected.len(), 1);
        assert_eq!(
            r.unexpected[0].rational.as_ref().map(|x| same_point(x, &pt(&[0, 0, 1]))),
            Some(true)
        );
    }

    #[test]
    fn irrational_singular_points_are_counted() {
        // two conics meeting in four points with irrational coordinates
        let f = p("(u^2 + v^2 - 3*w^2)*(u^2 - 2*v^2 + w^2)");
        let r = plane_curve_locus(&f, &[]).unwrap();
        assert_eq!(r.certificate, Certificate::Complete);
        assert_eq!(r.unexpected_count(), 4);
    }

    #[test]
    fn double_line_is_partial() {
        let r = plane_curve_locus(&p("u^2*(u + v + w)"), &[]).unwrap();
        assert_eq!(r.certificate, Certificate::Partial);
        assert!(!r.is_exact());
    }

    #[test]
    fn rank9_sextic_smooth_and_planted_node() {
        let c2 = p("u^2 - 3*u*v + 2*v^2");
        let c4 = p("u^4 + 2*u^3*v - v^4");
        let c6 = p("u^6 - u^5*v + 3*u*v^5 + 2*v^6 - 5*u^3*v^3");
        let s = build_s_rank9(&qi(1), &c2, &c4, &c6).unwrap();
        assert!(branch_singular_locus(&s, &[]).unwrap().is_exact());
        // all coefficients vanish to order two at [1:0:0]
        let s = build_s_rank9(&qi(1), &p("v^2 + u*v"), &p("u^2*v^2 + v^4"), &p("u^4*v^2 - u*v^5 + v^6")).unwrap();
        let r = branch_singular_locus(&s, &[]).unwrap();
        assert!(!r.is_exact());
        assert!(r
            .unexpected
            .iter()
            .any(|x| x.rational.as_ref().map(|r| same_point(r, &pt(&[1, 0, 0]))).unwrap_or(false)));
        assert!(branch_singular_locus(&s, &[pt(&[1, 0, 0])]).unwrap().expected[0].1);
    }

    #[test]
    fn canonical_point() {
        let s = build_s_canonical(&p("u^4 - 2*u*v^3 + 3*v^4"), &p("u^6 + u^2*v^4 - v^6 + 2*u^5*v")).unwrap();
        let r = branch_singular_locus(&s, &[pt(&[0, 0, 1])]).unwrap();
        assert!(r.is_exact(), "{r:?}");
    }

    #[test]
    fn quartic_vertex_and_tangency() {
        let k = build_k(&p("w^2 - u*v"), &p("u^4 + v^4 + w^4 - 3*u*v*w^2 + u^3*w")).unwrap();
        let r = branch_singular_locus(&k, &[pt(&[0, 0, 0, 1])]).unwrap();
        assert!(r.is_exact(), "{r:?}");
        // C and Q tangent at [1:0:0] with grad Q = grad C there
        let k = build_k(&p("w^2 - u*v"), &p("(w^2 - u*v)*(u^2 + v^2 + w^2) + v^2*(u^2 + 2*w^2 + v^2)")).unwrap();
        let r = branch_singular_locus(&k, &[pt(&[0, 0, 0, 1])]).unwrap();
        for y in [1, -1] {
            let x = pt(&[1, 0, 0, y]);
            assert!(singular_at(&k.equation(), &["u", "v", "w", "y"], &x).unwrap());
            assert!(
                r.unexpected
                    .iter()
                    .any(|q| q.rational.as_ref().map(|r| same_point(r, &x)).unwrap_or(false)),
                "{r:?}"
            );
        }
    }

    #[test]
    fn interpolated_resultant_matches_sylvester() {
        let f = p("z^3 + t*z + t^2 - 1");
        let g = p("z^2 - t*z + 3*t");
        let direct = UniPoly::from_multi(&crate::poly::resultant(&f, &g, "z").unwrap()).unwrap().0;
        assert_eq!(resultant_in_z(&f, &g).unwrap(), direct);
    }

    #[test]
    fn gcd_over_split_modulus() {
        // m = (t - 1)(t - 2); z - t and z - 1 share a root only over t = 1
        let m = UniPoly::from_ints(&[2, -3, 1]);
        let a = vec![UniPoly::from_ints(&[0, -1]), UniPoly::one()];
        let b = vec![UniPoly::from_ints(&[-1]), UniPoly::one()];
        let out = split_gcd(m, &[a, b]);
        let with_root: Vec<_> = out.iter().filter(|(_, g)| g.len() > 1).collect();
        assert_eq!(with_root.len(), 1);
        assert_eq!(with_root[0].0, UniPoly::from_ints(&[-1, 1]));
    }
}
