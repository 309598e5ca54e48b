//! Recognition of simple surface singularities from local equations.
//!
//! A germ `f(x, y, z)` with a critical point at the origin is brought to
//! `sum l_i x_i^2 + g(rest)` by completing squares on truncated power
//! series, and the residual `g` in one or two variables is read off by the
//! classical jet tests.

pub mod rdp;

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

pub use crate::ade::AdeType;
use crate::poly::{MultiPoly, PolyError, Scalar, UniPoly};

pub use rdp::{classify_point, classify_rdp_row, rdp_rows, rdp_suite, RdpCell, RdpCheck, RdpRow};

/// Default jet order; raised once to [`MAX_TRUNCATION`] when inconclusive.
pub const DEFAULT_TRUNCATION: u32 = 20;
pub const MAX_TRUNCATION: u32 = 24;

const LOCAL: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error("point is not on the surface (value {0})")]
    NotOnSurface(String),
    #[error("point is a smooth point of the surface")]
    NotSingular,
    #[error("chart variable `{0}` is zero at the point")]
    BadChart(String),
    #[error("germ needs {0} local variables")]
    Arity(usize),
    #[error("Hessian corank {0}: not a simple double point")]
    NotAde(usize),
    #[error("not a simple singularity: {0}")]
    Modal(String),
    #[error("jet of order {0} does not determine the type; raise the truncation order")]
    Inconclusive(u32),
    #[error("model construction failed: {0}")]
    Model(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Local equation at the origin of `x, y, z`, known up to `truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGerm {
    pub f: MultiPoly,
    pub truncation: u32,
}

impl LocalGerm {
    /// Accepts a polynomial in `x, y, z` vanishing with its gradient at 0.
    pub fn new(f: MultiPoly, truncation: u32) -> Result<Self, SingularityError> {
        if f.vars().iter().any(|v| !LOCAL.contains(&v.as_str())) {
            return Err(SingularityError::Arity(3));
        }
        let f = f.truncate(&LOCAL, truncation);
        if !f.constant_term().is_zero() {
            return Err(SingularityError::NotOnSurface(f.constant_term().to_string()));
        }
        if !f.homogeneous_part(&LOCAL, 1).is_zero() {
            return Err(SingularityError::NotSingular);
        }
        Ok(Self { f, truncation })
    }
}

/// Affine equation of `model` at `point`. The coordinates named in `vars`
/// are matched to `point`; the chart sets `vars[chart] = 1`, which requires
/// `point[chart] = 1` (normalize the point first). The remaining three
/// coordinates become `x, y, z` centred at the point.
pub fn localize(
    model: &MultiPoly,
    vars: [&str; 4],
    point: [Scalar; 4],
    chart: usize,
    truncation: u32,
) -> Result<LocalGerm, SingularityError> {
    if !point[chart].is_one() {
        return Err(SingularityError::BadChart(vars[chart].into()));
    }
    let mut m: HashMap<&str, MultiPoly> = HashMap::new();
    m.insert(vars[chart], MultiPoly::one());
    let mut k = 0;
    for i in 0..4 {
        if i == chart {
            continue;
        }
        m.insert(vars[i], MultiPoly::var(LOCAL[k]) + MultiPoly::constant(point[i].clone()));
        k += 1;
    }
    // fresh names first, so that a model already using x, y, z is safe
    let tmp: Vec<String> = (0..4).map(|i| format!("_loc{i}")).collect();
    let ren: HashMap<&str, &str> = vars.iter().copied().zip(tmp.iter().map(|s| s.as_str())).collect();
    let renamed = model.rename(&ren);
    let m2: HashMap<&str, MultiPoly> = vars.iter().enumerate().map(|(i, v)| (tmp[i].as_str(), m[v].clone())).collect();
    LocalGerm::new(renamed.compose(&m2), truncation)
}

/// Symmetric matrix of the quadratic part: `q = x^T M x`.
fn quadratic_matrix(f: &MultiPoly) -> Vec<Vec<Scalar>> {
    let q2 = f.homogeneous_part(&LOCAL, 2);
    let mut m = vec![vec![Scalar::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                m[i][i] = q2.coefficient(&[(LOCAL[i], 2)]);
            } else {
                m[i][j] = q2.coefficient(&[(LOCAL[i], 1), (LOCAL[j], 1)]) / Scalar::from_integer(2.into());
            }
        }
    }
    m
}

/// Linear substitution `old_i = sum_j t[i][j] new_j` applied to `f`.
fn linear_change(f: &MultiPoly, t: &[Vec<Scalar>], vars: &[&str]) -> MultiPoly {
    let tmp: Vec<String> = (0..vars.len()).map(|i| format!("_lin{i}")).collect();
    let ren: HashMap<&str, &str> = vars.iter().copied().zip(tmp.iter().map(|s| s.as_str())).collect();
    let g = f.rename(&ren);
    let mut m = HashMap::new();
    for (i, name) in tmp.iter().enumerate() {
        let mut img = MultiPoly::zero();
        for (j, v) in vars.iter().enumerate() {
            if !t[i][j].is_zero() {
                img = img + MultiPoly::var(v).scale(&t[i][j]);
            }
        }
        m.insert(name.as_str(), img);
    }
    g.compose(&m)
}

/// Congruence diagonalization: returns `T` with `T^T M T` diagonal, nonzero
/// entries first, and the diagonal.
fn diagonalize(mut m: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let n = m.len();
    let mut t: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    // column ops on T mirror simultaneous row/column ops on M
    let add_col = |m: &mut Vec<Vec<Scalar>>, t: &mut Vec<Vec<Scalar>>, dst: usize, src: usize, c: &Scalar| {
        for row in t.iter_mut() {
            let x = &row[src] * c;
            row[dst] += x;
        }
        for r in 0..n {
            let x = &m[r][src] * c;
            m[r][dst] += x;
        }
        for col in 0..n {
            let x = &m[src][col] * c;
            m[dst][col] += x;
        }
    };
    let swap = |m: &mut Vec<Vec<Scalar>>, t: &mut Vec<Vec<Scalar>>, a: usize, b: usize| {
        if a == b {
            return;
        }
        m.swap(a, b);
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in t.iter_mut() {
            row.swap(a, b);
        }
    };
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                swap(&mut m, &mut t, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !m[i][j].is_zero())
            {
                add_col(&mut m, &mut t, i, j, &Scalar::one());
                swap(&mut m, &mut t, k, i);
            } else {
                break;
            }
        }
        let p = m[k][k].clone();
        for j in k + 1..n {
            if !m[k][j].is_zero() {
                let c = -(&m[k][j] / &p);
                add_col(&mut m, &mut t, j, k, &c);
            }
        }
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (t, d)
}

/// Solves `d f / d x_i = 0` for the nondegenerate variables as power series
/// in the others and returns `f` restricted to that critical locus.
fn split_off(f: &MultiPoly, lambdas: &[(usize, Scalar)], rest: &[&str], n: u32) -> MultiPoly {
    let elim: Vec<&str> = lambdas.iter().map(|(i, _)| LOCAL[*i]).collect();
    let partials: Vec<MultiPoly> = lambdas
        .iter()
        .map(|(i, l)| {
            let x = MultiPoly::var(LOCAL[*i]);
            f.derivative(LOCAL[*i]) - x.scale(&(l * Scalar::from_integer(2.into())))
        })
        .collect();
    let mut sol: Vec<MultiPoly> = vec![MultiPoly::zero(); elim.len()];
    // each pass fixes at least one more order
    for _ in 0..=n {
        let next: Vec<MultiPoly> = partials
            .iter()
            .zip(lambdas)
            .map(|(h, (_, l))| substitute_series(h, &elim, &sol, n).scale(&(-(Scalar::from_integer(2.into()) * l).recip())))
            .collect();
        if next == sol {
            break;
        }
        sol = next;
    }
    let g = substitute_series(f, &elim, &sol, n);
    debug_assert!(g.vars().iter().all(|v| rest.contains(&v.as_str())));
    g
}

/// `p` with `vars[i]` replaced by the series `vals[i]`, truncated at order `n`.
fn substitute_series(p: &MultiPoly, vars: &[&str], vals: &[MultiPoly], n: u32) -> MultiPoly {
    let mut powers: Vec<Vec<MultiPoly>> = Vec::new();
    for (v, s) in vars.iter().zip(vals) {
        let d = p.degree_in(v) as usize;
        let mut pw = vec![MultiPoly::one()];
        for k in 1..=d {
            let next = pw[k - 1].mul_truncated(s, n);
            pw.push(next);
        }
        powers.push(pw);
    }
    let mut out = MultiPoly::zero();
    let names = p.vars().to_vec();
    for (e, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for (k, name) in names.iter().enumerate() {
            if e[k] == 0 {
                continue;
            }
            match vars.iter().position(|v| v == name) {
                Some(i) => t = t.mul_truncated(&powers[i][e[k] as usize], n),
                None => t = t.mul_truncated(&MultiPoly::monomial(&[name.as_str()], &[e[k]], Scalar::one()), n),
            }
            if t.is_zero() {
                break;
            }
        }
        out = out + t;
    }
    out
}

/// `var -> var + shift` on a truncated series.
fn shift_var(g: &MultiPoly, var: &str, shift: &MultiPoly, n: u32) -> MultiPoly {
    let img = MultiPoly::var(var) + shift.clone();
    substitute_series(g, &[var], &[img], n)
}

pub fn classify(g: &LocalGerm) -> Result<AdeType, SingularityError> {
    match classify_at(g, g.truncation) {
        Err(SingularityError::Inconclusive(_)) if g.truncation < MAX_TRUNCATION => classify_at(g, MAX_TRUNCATION),
        r => r,
    }
}

fn classify_at(g: &LocalGerm, n: u32) -> Result<AdeType, SingularityError> {
    let (t, d) = diagonalize(quadratic_matrix(&g.f));
    let f = linear_change(&g.f, &t, &LOCAL).truncate(&LOCAL, n);
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    match rank {
        3 => Ok(AdeType::A(1)),
        2 => {
            let lambdas = vec![(0, d[0].clone()), (1, d[1].clone())];
            let h = split_off(&f, &lambdas, &["z"], n);
            let k = h.valuation_in("z").ok_or(SingularityError::Inconclusive(n))?;
            if k < 3 {
                return Err(SingularityError::Modal(format!("residual of order {k} after splitting")));
            }
            Ok(AdeType::A(k - 1))
        }
        1 => {
            let h = split_off(&f, &[(0, d[0].clone())], &["y", "z"], n);
            classify_binary(&h.rename(&HashMap::from([("y", "p"), ("z", "q")])), n)
        }
        r => Err(SingularityError::NotAde(3 - r)),
    }
}

/// Residual `h(p, q)` of order at least three.
fn classify_binary(h: &MultiPoly, n: u32) -> Result<AdeType, SingularityError> {
    let pq = ["p", "q"];
    let mut h = h.clone();
    let mut cubic = h.homogeneous_part(&pq, 3);
    if cubic.is_zero() {
        return Err(SingularityError::Modal("cubic part vanishes".into()));
    }
    // make the p^3 coefficient nonzero
    let mut c = 0i64;
    while cubic.coefficient(&[("p", 3)]).is_zero() {
        c += 1;
        let t = vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::from_integer(c.into()), Scalar::one()],
        ];
        // p = p', q = c p' + q'
        h = linear_change(&h, &t, &pq);
        cubic = h.homogeneous_part(&pq, 3);
    }
    let coeffs: Vec<Scalar> = (0..=3).map(|i| cubic.coefficient(&[("p", i), ("q", 3 - i)])).collect();
    let g3 = UniPoly::new(coeffs);
    let parts = g3.squarefree_decomposition()?;
    // parts[k] holds the factors of multiplicity k + 1
    let root = |u: &UniPoly| -> Scalar { -(&u.coeffs()[0] / &u.coeffs()[1]) };
    if parts.len() <= 1 || parts[1..].iter().all(|x| x.degree() == Some(0)) {
        return Ok(AdeType::D(4));
    }
    if parts.len() >= 3 && parts[2].degree() == Some(1) {
        let r = root(&parts[2]);
        // p = P + r q
        let t = vec![vec![Scalar::one(), r], vec![Scalar::zero(), Scalar::one()]];
        let h = linear_change(&h, &t, &pq).truncate(&pq, n);
        return classify_e(&h, n);
    }
    let r = root(&parts[1]);
    let s = root(&parts[0]);
    // P = p - r q, Q = p - s q, so q = (P - Q)/(s - r) and p = P + r q
    let inv = (&s - &r).recip();
    let t = vec![vec![Scalar::one() + &r * &inv, -(&r * &inv)], vec![inv.clone(), -inv]];
    let h = linear_change(&h, &t, &pq).truncate(&pq, n);
    classify_d(h, n)
}

/// `h = a p^2 q + ...`: removes `p q^j` terms by shifts of `p`, then the
/// lowest pure power `q^m` gives `D_{m+1}`.
fn classify_d(mut h: MultiPoly, n: u32) -> Result<AdeType, SingularityError> {
    let a = h.coefficient(&[("p", 2), ("q", 1)]);
    debug_assert!(!a.is_zero());
    for j in 2..n {
        let c = h.coefficient(&[("p", 1), ("q", j)]);
        if c.is_zero() {
            continue;
        }
        let alpha = -(c / (Scalar::from_integer(2.into()) * &a));
        h = shift_var(&h, "p", &MultiPoly::monomial(&["q"], &[j - 1], alpha), n);
    }
    let m = (4..=n)
        .find(|&m| !h.coefficient(&[("q", m)]).is_zero())
        .ok_or(SingularityError::Inconclusive(n))?;
    Ok(AdeType::D(m + 1))
}

/// `h = a p^3 + ...`: the `q^4`, `p q^3`, `q^5` tests.
fn classify_e(h: &MultiPoly, n: u32) -> Result<AdeType, SingularityError> {
    let mut h = h.clone();
    // p -> p + alpha q^2 clears p^2 q^2 without touching the test monomials
    let a = h.coefficient(&[("p", 3)]);
    let b = h.coefficient(&[("p", 2), ("q", 2)]);
    if !b.is_zero() {
        let alpha = -(b / (Scalar::from_integer(3.into()) * &a));
        h = shift_var(&h, "p", &MultiPoly::monomial(&["q"], &[2], alpha), n);
    }
    if !h.coefficient(&[("q", 4)]).is_zero() {
        Ok(AdeType::E(6))
    } else if !h.coefficient(&[("p", 1), ("q", 3)]).is_zero() {
        Ok(AdeType::E(7))
    } else if !h.coefficient(&[("q", 5)]).is_zero() {
        Ok(AdeType::E(8))
    } else {
        Err(SingularityError::Modal("beyond E8".into()))
    }
}
