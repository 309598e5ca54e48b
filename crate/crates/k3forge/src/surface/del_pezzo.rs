//! The degree one del Pezzo surface through eight plane points, its
//! weighted sextic relation, and the rank nine double sextic it produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::models::{build_s_rank9, DoubleSexticModel};
use super::SurfaceError;
use crate::poly::{MultiPoly, Scalar, UniPoly};
use crate::random::Sampler;

const XYZ: [&str; 3] = ["x", "y", "z"];

/// Monomials of degree `d` in `x, y, z`, as exponent vectors.
fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn mono(e: &[u32; 3]) -> MultiPoly {
    MultiPoly::monomial(&XYZ, e, Scalar::one())
}

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(row.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

/// Basis of the nullspace of `rows` (each of length `n`), by fraction-free
/// row reduction over Z with rows kept primitive.
pub(crate) fn kernel(rows: Vec<Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        // smallest pivot keeps the numbers down
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].magnitude().bits())
        else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = prow[c].gcd(&row[c]);
            let (a, b) = (&prow[c] / &g, &row[c] / &g);
            let next: Vec<BigInt> = row.iter().zip(prow.iter()).map(|(x, y)| &a * x - &b * y).collect();
            *row = primitive(next);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -Scalar::new(rows[i][f].clone(), rows[i][pc].clone());
            }
            v
        })
        .collect()
}

fn point_map(p: &[Scalar; 3]) -> std::collections::HashMap<&'static str, Scalar> {
    XYZ.iter().copied().zip(p.iter().cloned()).collect()
}

/// Forms of degree `d` in `x, y, z` vanishing to order `mult[i]` at `points[i]`.
pub fn linear_system(d: u32, points: &[[Scalar; 3]], mult: &[u32]) -> Result<Vec<MultiPoly>, SurfaceError> {
    if points.len() != mult.len() {
        return Err(SurfaceError::Domain("one multiplicity per point".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if p.iter().all(Zero::is_zero) {
            return Err(SurfaceError::Domain("the zero vector is not a point".into()));
        }
        if points[..i].iter().any(|q| same_point(p, q)) {
            return Err(SurfaceError::Domain("points must be distinct".into()));
        }
    }
    let ms = monomials(d);
    let mut rows = Vec::new();
    for (p, &m) in points.iter().zip(mult) {
        if m == 0 {
            continue;
        }
        // all derivatives of order m - 1 vanish at p
        let at = point_map(p);
        for alpha in monomials(m - 1) {
            let row = ms
                .iter()
                .map(|e| {
                    let mut f = mono(e);
                    for (k, var) in XYZ.iter().enumerate() {
                        for _ in 0..alpha[k] {
                            f = f.derivative(var);
                        }
                    }
                    f.eval(&at).expect("all variables assigned")
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(ms.iter().map(mono).collect());
    }
    Ok(kernel(rows, ms.len())
        .into_iter()
        .map(|v| ms.iter().zip(v).fold(MultiPoly::zero(), |acc, (e, c)| acc + mono(e).scale(&c)))
        .collect())
}

fn same_point(a: &[Scalar; 3], b: &[Scalar; 3]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Coefficient vector of `f` on the monomials of degree `d`.
fn coords(f: &MultiPoly, d: u32) -> Vec<Scalar> {
    monomials(d)
        .iter()
        .map(|e| f.coefficient(&[("x", e[0]), ("y", e[1]), ("z", e[2])]))
        .collect()
}

fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let n = vectors.first().map(|v| v.len()).unwrap_or(0);
    // rank of the matrix with these rows = n - dim kernel of it
    n - kernel(vectors.to_vec(), n).len()
}

/// Checks the classical conditions: no three points on a line, no six on
/// a conic, no cubic through all eight that is singular at one of them.
pub fn check_general_position(points: &[[Scalar; 3]]) -> Result<(), SurfaceError> {
    let n = points.len();
    let sub_rank = |idx: &[usize], d: u32| {
        let rows: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&i| {
                let at = point_map(&points[i]);
                monomials(d).iter().map(|e| mono(e).eval(&at).expect("assigned")).collect()
            })
            .collect();
        rank(&rows)
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if sub_rank(&[i, j, k], 1) < 3 {
                    return Err(SurfaceError::Genericity(format!("points {i}, {j}, {k} are collinear")));
                }
            }
        }
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() == 6 {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if sub_rank(&idx, 2) < 6 {
                return Err(SurfaceError::Genericity(format!("points {idx:?} lie on a conic")));
            }
        }
    }
    for i in 0..n {
        let mut m = vec![1; n];
        m[i] = 2;
        if !linear_system(3, points, &m)?.is_empty() {
            return Err(SurfaceError::Genericity(format!(
                "a cubic through all points is singular at point {i}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelPezzoModel {
    #[serde(skip)]
    pub points: Vec<[Scalar; 3]>,
    #[serde(serialize_with = "ser_poly")]
    pub u: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub v: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub w: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub r: MultiPoly,
    #[serde(serialize_with = "ser_scalar")]
    pub c0: Scalar,
    /// `c2, c4, c6` as binary forms in `u, v`.
    #[serde(serialize_with = "ser_polys")]
    pub c: [MultiPoly; 3],
}

fn ser_poly<S: serde::Serializer>(x: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_polys<S: serde::Serializer>(x: &[MultiPoly; 3], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut q = s.serialize_seq(Some(3))?;
    for p in x {
        q.serialize_element(&p.to_string())?;
    }
    q.end()
}

/// Binary forms of degree `d` in `U, V`, highest power of `U` first.
fn binary_monomials(d: u32) -> Vec<(u32, u32)> {
    (0..=d).rev().map(|a| (a, d - a)).collect()
}

fn eval_binary(cs: &[Scalar], d: u32, names: (&str, &str)) -> MultiPoly {
    let terms = binary_monomials(d)
        .into_iter()
        .zip(cs)
        .map(|((a, b), c)| (vec![a, b], c.clone()))
        .collect();
    MultiPoly::from_terms(&[names.0, names.1], terms)
}

fn power_products(u: &MultiPoly, v: &MultiPoly, d: u32) -> Vec<MultiPoly> {
    binary_monomials(d).into_iter().map(|(a, b)| &u.pow(a) * &v.pow(b)).collect()
}

impl DelPezzoModel {
    /// `R^2 - (c0 W^3 + c2 W^2 + c4 W + c6)` with `U, V, W, R` substituted.
    pub fn identity_residual(&self) -> MultiPoly {
        let mut m = std::collections::HashMap::new();
        m.insert("u", self.u.clone());
        m.insert("v", self.v.clone());
        let c: Vec<MultiPoly> = self.c.iter().map(|p| p.compose(&m)).collect();
        let w2 = &self.w * &self.w;
        let rhs = &(&w2 * &self.w).scale(&self.c0) + &(&(&c[0] * &w2) + &(&(&c[1] * &self.w) + &c[2]));
        &(&self.r * &self.r) - &rhs
    }

    /// The double sextic `y^2 = c0 w^6 + c2 w^4 + c4 w^2 + c6`.
    pub fn sextic_model(&self) -> Result<DoubleSexticModel, SurfaceError> {
        build_s_rank9(&self.c0, &self.c[0], &self.c[1], &self.c[2])
    }
}

/// Builds the del Pezzo model through eight points in general position.
pub fn del_pezzo_model(points: &[[Scalar; 3]]) -> Result<DelPezzoModel, SurfaceError> {
    if points.len() != 8 {
        return Err(SurfaceError::Domain(format!("need eight points, got {}", points.len())));
    }
    check_general_position(points)?;
    let dims = [(3, 1, 2), (6, 2, 4), (9, 3, 7)];
    let mut systems = Vec::new();
    for (d, m, expected) in dims {
        let basis = linear_system(d, points, &[m; 8])?;
        if basis.len() != expected {
            return Err(SurfaceError::Genericity(format!(
                "degree {d} system has dimension {}, expected {expected}",
                basis.len()
            )));
        }
        systems.push(basis);
    }
    let (u, v) = (systems[0][0].primitive(), systems[0][1].primitive());
    let quad = power_products(&u, &v, 2);
    // W = 0 must be a general member so that its genus two curve is smooth
    let mut s = Sampler::new(0, 5);
    for _ in 0..W_ATTEMPTS {
        let w = systems[1]
            .iter()
            .fold(MultiPoly::zero(), |acc, b| acc + b.scale(&s.small()))
            .primitive();
        if !outside_span(&w, &quad, 6) {
            continue;
        }
        let mut cub = power_products(&u, &v, 3);
        cub.push(&u * &w);
        cub.push(&v * &w);
        let r = pick_outside(&systems[2], &cub, 9)?.primitive();
        let model = relation(points, u.clone(), v.clone(), w, r)?;
        if genus2_fixed_curve_check(&model.sextic_model()?) {
            return Ok(model);
        }
    }
    Err(SurfaceError::Genericity(format!(
        "no sextic W among {W_ATTEMPTS} draws has a smooth genus two curve"
    )))
}

const W_ATTEMPTS: usize = 32;

/// Solves for the weighted sextic relation and completes the square in `R`.
fn relation(points: &[[Scalar; 3]], u: MultiPoly, v: MultiPoly, w: MultiPoly, r: MultiPoly) -> Result<DelPezzoModel, SurfaceError> {
    // general weighted sextic: R^2, R W {U,V}, R {cubics}, W^3, W^2 {quadrics}, W {quartics}, sextics
    let mut cols: Vec<MultiPoly> = vec![&r * &r];
    cols.extend(power_products(&u, &v, 1).iter().map(|m| &(&r * &w) * m));
    cols.extend(power_products(&u, &v, 3).iter().map(|m| &r * m));
    let w2 = &w * &w;
    cols.push(&w2 * &w);
    cols.extend(power_products(&u, &v, 2).iter().map(|m| &w2 * m));
    cols.extend(power_products(&u, &v, 4).iter().map(|m| &w * m));
    cols.extend(power_products(&u, &v, 6));
    let n = cols.len();
    let cvecs: Vec<Vec<Scalar>> = cols.iter().map(|f| coords(f, 18)).collect();
    let rows: Vec<Vec<Scalar>> = (0..cvecs[0].len()).map(|i| cvecs.iter().map(|c| c[i].clone()).collect()).collect();
    let ker = kernel(rows, n);
    if ker.len() != 1 {
        return Err(SurfaceError::Solver(format!("expected a single relation, found {}", ker.len())));
    }
    let k = &ker[0];
    if k[0].is_zero() {
        return Err(SurfaceError::Solver("relation does not involve R^2".into()));
    }
    // normalize to R^2 + R (a1 W + a3) = c0 W^3 + c2 W^2 + c4 W + c6
    let k: Vec<Scalar> = k.iter().map(|x| x / &k[0]).collect();
    let names = ("u", "v");
    let a1 = eval_binary(&k[1..3], 1, names);
    let a3 = eval_binary(&k[3..7], 3, names);
    let neg = |xs: &[Scalar]| xs.iter().map(|x| -x.clone()).collect::<Vec<_>>();
    let c0 = -k[7].clone();
    let c2 = eval_binary(&neg(&k[8..11]), 2, names);
    let c4 = eval_binary(&neg(&k[11..16]), 4, names);
    let c6 = eval_binary(&neg(&k[16..23]), 6, names);
    if c0.is_zero() {
        return Err(SurfaceError::Solver("the relation has c0 = 0".into()));
    }
    // complete the square: R' = R + (a1 W + a3)/2
    let half = Scalar::new(1.into(), 2.into());
    let (h1, h3) = (a1.scale(&half), a3.scale(&half));
    let c2n = &c2 + &(&h1 * &h1);
    let c4n = &c4 + &(&h1 * &h3).scale(&Scalar::from_integer(2.into()));
    let c6n = &c6 + &(&h3 * &h3);
    let mut sub = std::collections::HashMap::new();
    sub.insert("u", u.clone());
    sub.insert("v", v.clone());
    let r2 = &r + &(&(&h1.compose(&sub) * &w) + &h3.compose(&sub));
    let model = DelPezzoModel {
        points: points.to_vec(),
        u,
        v,
        w,
        r: r2,
        c0,
        c: [c2n, c4n, c6n],
    };
    let res = model.identity_residual();
    if !res.is_zero() {
        return Err(SurfaceError::Residual {
            what: "weighted sextic relation".into(),
            residual: res.to_string(),
        });
    }
    Ok(model)
}

fn outside_span(f: &MultiPoly, known: &[MultiPoly], d: u32) -> bool {
    let kv: Vec<Vec<Scalar>> = known.iter().map(|g| coords(g, d)).collect();
    let mut all = kv.clone();
    all.push(coords(f, d));
    rank(&all) > rank(&kv)
}

/// First basis element outside the span of `known`.
fn pick_outside(basis: &[MultiPoly], known: &[MultiPoly], d: u32) -> Result<MultiPoly, SurfaceError> {
    let kv: Vec<Vec<Scalar>> = known.iter().map(|f| coords(f, d)).collect();
    let r0 = rank(&kv);
    for b in basis {
        let mut all = kv.clone();
        all.push(coords(b, d));
        if rank(&all) > r0 {
            return Ok(b.clone());
        }
    }
    Err(SurfaceError::Genericity(format!(
        "degree {d} system is spanned by products of lower ones"
    )))
}

/// Eight random points of bounded height in general position.
pub fn random_points(s: &mut Sampler, retries: usize) -> Result<Vec<[Scalar; 3]>, SurfaceError> {
    for _ in 0..retries {
        let pts: Vec<[Scalar; 3]> = (0..8)
            .map(|_| {
                let p = s.point(3);
                [
                    Scalar::from_integer(p[0].into()),
                    Scalar::from_integer(p[1].into()),
                    Scalar::from_integer(p[2].into()),
                ]
            })
            .collect();
        if pts.iter().any(|p| p.iter().all(Zero::is_zero)) {
            continue;
        }
        if (0..8).any(|i| (0..i).any(|j| same_point(&pts[i], &pts[j]))) {
            continue;
        }
        if check_general_position(&pts).is_ok() {
            return Ok(pts);
        }
    }
    Err(SurfaceError::Search(format!(
        "no eight points in general position in {retries} draws"
    )))
}

/// `(c0, c2, c4, c6)` of a branch even in `w`, when it has that shape.
pub fn rank9_coefficients(s: &DoubleSexticModel) -> Option<(Scalar, [MultiPoly; 3])> {
    let cs = s.branch.coefficients_in("w");
    let get = |k: usize| cs.get(k).cloned().unwrap_or_else(MultiPoly::zero);
    if [1, 3, 5].iter().any(|&k| !get(k).is_zero()) || cs.len() > 7 {
        return None;
    }
    let c0 = get(6).as_constant().or_else(|| get(6).is_zero().then(Scalar::zero))?;
    Some((c0, [get(4), get(2), get(0)]))
}

/// `c0 p2^3 + c2 p2^2 + c4 p2 + c6 = q3^2`: the conic `w^2 = p2` meets the
/// branch with even multiplicity everywhere.
pub fn verify_tangent_conic(p2: &MultiPoly, q3: &MultiPoly, sextic: &DoubleSexticModel) -> bool {
    let Some((c0, [c2, c4, c6])) = rank9_coefficients(sextic) else {
        return false;
    };
    let deg_ok = |p: &MultiPoly, d| super::check_binary_form("", p, d).is_ok() && !p.is_zero();
    if !deg_ok(p2, 2) || !deg_ok(q3, 3) {
        return false;
    }
    let p22 = p2 * p2;
    let lhs = &(&(&p22 * p2).scale(&c0) + &(&c2 * &p22)) + &(&(&c4 * p2) + &c6);
    lhs == q3 * q3
}

/// The fixed curve `y^2 = c6(u, v)` is a smooth genus two curve exactly when
/// the binary sextic `c6` has six distinct roots.
pub fn genus2_fixed_curve_check(model: &DoubleSexticModel) -> bool {
    let Some((_, [_, _, c6])) = rank9_coefficients(model) else {
        return false;
    };
    if c6.is_zero() || super::check_binary_form("c6", &c6, 6).is_err() {
        return false;
    }
    let k = c6.valuation_in("v").unwrap_or(0);
    let Ok((r, _)) = UniPoly::from_multi(&c6.eval_var("v", Scalar::one())) else {
        return false;
    };
    k <= 1 && r.is_squarefree()
}
