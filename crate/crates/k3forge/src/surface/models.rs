//! Double sextics `y^2 = F(u, v, w)`, quartics `y^2 C = Q` and their double
//! sextic partners `y^2 = C Q`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::{check_binary_form, SurfaceError};
use crate::poly::{qi, MultiPoly, Scalar, UniPoly};
use crate::random::Sampler;

const UVW: [&str; 3] = ["u", "v", "w"];

/// `lead * y^2 = rhs` with `lead` and `rhs` free of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEquation {
    pub y: String,
    pub lead: MultiPoly,
    pub rhs: MultiPoly,
}

impl CoverEquation {
    pub fn new(y: &str, lead: MultiPoly, rhs: MultiPoly) -> Result<Self, SurfaceError> {
        if lead.is_zero() || lead.contains_var(y) || rhs.contains_var(y) {
            return Err(SurfaceError::Domain(format!("`{y}` must occur only through {y}^2")));
        }
        Ok(Self { y: y.into(), lead, rhs })
    }

    pub fn double_cover(y: &str, rhs: MultiPoly) -> Result<Self, SurfaceError> {
        Self::new(y, MultiPoly::one(), rhs)
    }

    pub fn defining(&self) -> MultiPoly {
        let y = MultiPoly::var(&self.y);
        &(&self.lead * &(&y * &y)) - &self.rhs
    }

    /// Normal form modulo the defining equation, after clearing powers of
    /// `lead`: zero exactly when `p` lies in the (prime) ideal of the model.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let cs = p.coefficients_in(&self.y);
        if cs.len() <= 2 {
            return p.clone();
        }
        let top = (cs.len() as u32 - 1) / 2;
        let mut lead_pw = vec![MultiPoly::one()];
        let mut rhs_pw = vec![MultiPoly::one()];
        for k in 1..=top as usize {
            lead_pw.push(&lead_pw[k - 1] * &self.lead);
            rhs_pw.push(&rhs_pw[k - 1] * &self.rhs);
        }
        let y = MultiPoly::var(&self.y);
        let mut even = MultiPoly::zero();
        let mut odd = MultiPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let h = k / 2;
            let t = &(c * &lead_pw[top as usize - h]) * &rhs_pw[h];
            if k % 2 == 0 {
                even = even + t;
            } else {
                odd = odd + t;
            }
        }
        even + &odd * &y
    }
}

fn ternary(what: &str, p: &MultiPoly, d: u32) -> Result<(), SurfaceError> {
    let ok = !p.is_zero() && p.vars().iter().all(|x| UVW.contains(&x.as_str())) && p.homogeneous_degree_in(&UVW) == Some(d);
    if ok {
        Ok(())
    } else {
        Err(SurfaceError::Degree {
            what: what.into(),
            expected: d,
        })
    }
}

/// `y^2 = F(u, v, w)` in `P(1,1,1,3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleSexticModel {
    #[serde(serialize_with = "ser_poly")]
    pub branch: MultiPoly,
}

fn ser_poly<S: serde::Serializer>(x: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl DoubleSexticModel {
    pub fn new(branch: MultiPoly) -> Result<Self, SurfaceError> {
        ternary("branch sextic", &branch, 6)?;
        Ok(Self { branch })
    }

    pub fn equation(&self) -> MultiPoly {
        self.cover().defining()
    }

    pub fn cover(&self) -> CoverEquation {
        CoverEquation {
            y: "y".into(),
            lead: MultiPoly::one(),
            rhs: self.branch.clone(),
        }
    }
}

fn w() -> MultiPoly {
    MultiPoly::var("w")
}

/// `c0 w^6 + c2 w^4 + c4 w^2 + c6`.
pub fn build_s_rank9(c0: &Scalar, c2: &MultiPoly, c4: &MultiPoly, c6: &MultiPoly) -> Result<DoubleSexticModel, SurfaceError> {
    if c0.is_zero() {
        return Err(SurfaceError::Domain("c0 must be nonzero".into()));
    }
    check_binary_form("c2", c2, 2)?;
    check_binary_form("c4", c4, 4)?;
    check_binary_form("c6", c6, 6)?;
    let w2 = w().pow(2);
    DoubleSexticModel::new(w().pow(6).scale(c0) + c2 * &w2.pow(2) + c4 * &w2 + c6.clone())
}

/// `w (c3 w^2 + a4 w + d5)`.
pub fn build_s_hn(c3: &MultiPoly, a4: &MultiPoly, d5: &MultiPoly) -> Result<DoubleSexticModel, SurfaceError> {
    check_binary_form("c3", c3, 3)?;
    check_binary_form("a4", a4, 4)?;
    check_binary_form("d5", d5, 5)?;
    DoubleSexticModel::new(&w() * &(c3 * &w().pow(2) + a4 * &w() + d5.clone()))
}

/// `u v w^4 - a4 w^2 + b6''`.
pub fn build_s_rank10(a4: &MultiPoly, b6pp: &MultiPoly) -> Result<DoubleSexticModel, SurfaceError> {
    check_binary_form("a4", a4, 4)?;
    check_binary_form("b6''", b6pp, 6)?;
    let uv = MultiPoly::var("u") * MultiPoly::var("v");
    DoubleSexticModel::new(&uv * &w().pow(4) - a4 * &w().pow(2) + b6pp.clone())
}

/// `v^2 w^4 - a4 w^2 + b6''`.
pub fn build_s_canonical(a4: &MultiPoly, b6pp: &MultiPoly) -> Result<DoubleSexticModel, SurfaceError> {
    check_binary_form("a4", a4, 4)?;
    check_binary_form("b6''", b6pp, 6)?;
    if b6pp.is_zero() {
        return Err(SurfaceError::Domain("b6'' must be nonzero".into()));
    }
    let v2 = MultiPoly::var("v").pow(2);
    DoubleSexticModel::new(&v2 * &w().pow(4) - a4 * &w().pow(2) + b6pp.clone())
}

/// `y^2 C = Q` in `P^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticModel {
    #[serde(serialize_with = "ser_poly")]
    pub c: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q: MultiPoly,
}

/// `y^2 = C Q`; related to the quartic by `y' = C y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SprimeModel {
    #[serde(serialize_with = "ser_poly")]
    pub c: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub q: MultiPoly,
}

/// True when the restriction of `f` to a line is a constant times a square
/// for each of a few fixed lines; a non-square form always fails one of them.
fn looks_like_square(f: &MultiPoly) -> Result<bool, SurfaceError> {
    for (a, b) in [(3, 5), (-7, 2), (11, -4)] {
        let mut m = HashMap::new();
        m.insert("u", MultiPoly::var("t"));
        m.insert("v", MultiPoly::one());
        m.insert("w", MultiPoly::var("t").scale(&qi(a)) + MultiPoly::int(b));
        let r = f.compose(&m);
        if r.is_zero() {
            continue;
        }
        let (p, _) = UniPoly::from_multi(&r)?;
        let parts = p.squarefree_decomposition()?;
        if parts.iter().step_by(2).any(|x| !x.is_constant()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_pair(c: &MultiPoly, q: &MultiPoly) -> Result<(), SurfaceError> {
    ternary("conic", c, 2)?;
    ternary("quartic", q, 4)?;
    if looks_like_square(&(c * q))? {
        return Err(SurfaceError::Domain("C Q is a square; the branch curve degenerates".into()));
    }
    Ok(())
}

pub fn build_k(c: &MultiPoly, q: &MultiPoly) -> Result<QuarticModel, SurfaceError> {
    check_pair(c, q)?;
    Ok(QuarticModel {
        c: c.clone(),
        q: q.clone(),
    })
}

pub fn build_sprime(c: &MultiPoly, q: &MultiPoly) -> Result<SprimeModel, SurfaceError> {
    check_pair(c, q)?;
    Ok(SprimeModel {
        c: c.clone(),
        q: q.clone(),
    })
}

impl QuarticModel {
    pub fn cover(&self) -> CoverEquation {
        CoverEquation {
            y: "y".into(),
            lead: self.c.clone(),
            rhs: self.q.clone(),
        }
    }

    pub fn equation(&self) -> MultiPoly {
        self.cover().defining()
    }

    pub fn partner(&self) -> SprimeModel {
        SprimeModel {
            c: self.c.clone(),
            q: self.q.clone(),
        }
    }
}

impl SprimeModel {
    pub fn cover(&self) -> CoverEquation {
        CoverEquation {
            y: "y".into(),
            lead: MultiPoly::one(),
            rhs: &self.c * &self.q,
        }
    }

    pub fn equation(&self) -> MultiPoly {
        self.cover().defining()
    }

    pub fn partner(&self) -> QuarticModel {
        QuarticModel {
            c: self.c.clone(),
            q: self.q.clone(),
        }
    }
}

/// Data `(c2, e3, d4)` of the Picard rank ten quartic with `C = w^2 - u v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank10Params {
    #[serde(serialize_with = "ser_poly")]
    pub c2: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub e3: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub d4: MultiPoly,
}

impl Rank10Params {
    pub fn sample(s: &mut Sampler) -> Self {
        Self {
            c2: s.form("u", "v", 2),
            e3: s.form("u", "v", 3),
            d4: s.form("u", "v", 4),
        }
    }

    /// Adjusts the `u^4` coefficient of `d4` so that `Q` passes through
    /// `[1 : w0^2 : w0]`, a point of the conic.
    pub fn through_conic_point(mut self, w0: &Scalar) -> Self {
        let at: HashMap<&str, Scalar> = [("u", qi(1)), ("v", w0 * w0), ("w", w0.clone())].into_iter().collect();
        let val = self.quartic().eval(&at).expect("all variables assigned");
        self.d4 = &self.d4 - &MultiPoly::monomial(&["u"], &[4], val);
        self
    }

    pub fn is_general(&self) -> bool {
        super::params::general_binary_forms(&[&self.c2, &self.e3, &self.d4, &self.a4(), &self.b6pp()])
    }

    pub fn conic() -> MultiPoly {
        w().pow(2) - MultiPoly::var("u") * MultiPoly::var("v")
    }

    pub fn quartic(&self) -> MultiPoly {
        &self.c2 * &w().pow(2) + &self.e3 * &w() + self.d4.clone()
    }

    /// `a4 = u v c2 - d4`.
    pub fn a4(&self) -> MultiPoly {
        &(MultiPoly::var("u") * MultiPoly::var("v")) * &self.c2 - self.d4.clone()
    }

    /// `b6'' = e3^2/4 - c2 d4`.
    pub fn b6pp(&self) -> MultiPoly {
        (&self.e3 * &self.e3).scale(&crate::poly::q(1, 4)) - &self.c2 * &self.d4
    }

    pub fn k(&self) -> Result<QuarticModel, SurfaceError> {
        build_k(&Self::conic(), &self.quartic())
    }

    pub fn s(&self) -> Result<DoubleSexticModel, SurfaceError> {
        build_s_rank10(&self.a4(), &self.b6pp())
    }
}

impl super::PrimeParams {
    pub fn k(&self) -> Result<QuarticModel, SurfaceError> {
        build_k(&self.conic(), &self.quartic())
    }

    pub fn sprime(&self) -> Result<SprimeModel, SurfaceError> {
        build_sprime(&self.conic(), &self.quartic())
    }

    pub fn s(&self) -> Result<DoubleSexticModel, SurfaceError> {
        build_s_canonical(&self.a4(), &self.b6pp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn builders_check_degrees() {
        assert!(build_s_rank9(&qi(1), &p("u^2"), &p("u^4"), &p("u^6 + v^6")).is_ok());
        assert!(build_s_rank9(&qi(0), &p("u^2"), &p("u^4"), &p("u^6")).is_err());
        assert!(matches!(
            build_s_hn(&p("u^2"), &p("u^4"), &p("v^5")),
            Err(SurfaceError::Degree { .. })
        ));
        assert!(build_s_canonical(&p("u^4"), &MultiPoly::zero()).is_err());
        assert_eq!(
            build_s_canonical(&p("u^4"), &p("v^6")).unwrap().branch,
            p("v^2*w^4 - u^4*w^2 + v^6")
        );
        assert_eq!(build_s_rank10(&p("u^4"), &p("v^6")).unwrap().branch, p("u*v*w^4 - u^4*w^2 + v^6"));
    }

    #[test]
    fn square_branch_rejected() {
        let c = p("w^2 - u*v");
        assert!(build_k(&c, &(&c * &c)).is_ok());
        assert!(build_sprime(&c, &(&c * &p("u^2 + 3*v^2 - w^2"))).is_ok());
        assert!(matches!(build_k(&c, &(&c * &p("(u + w)^2"))), Err(SurfaceError::Domain(_))));
        assert!(matches!(build_k(&c, &p("u^3")), Err(SurfaceError::Degree { .. })));
    }

    #[test]
    fn reduce_clears_the_lead() {
        let k = build_k(&p("w^2 - u*v"), &p("u^4 + v^4 + w^4")).unwrap();
        let e = k.cover();
        assert!(e.reduce(&e.defining()).is_zero());
        let y = MultiPoly::var("y");
        assert!(e.reduce(&(&e.defining() * &(&y * &y))).is_zero());
        assert!(!e.reduce(&(&y * &y)).is_zero());
    }

    #[test]
    fn rank10_base_point() {
        let mut s = Sampler::new(2, 20);
        let w0 = qi(3);
        let r = Rank10Params::sample(&mut s).through_conic_point(&w0);
        let at: HashMap<&str, Scalar> = [("u", qi(1)), ("v", qi(9)), ("w", qi(3))].into_iter().collect();
        assert!(r.quartic().eval(&at).unwrap().is_zero());
        assert!(Rank10Params::conic().eval(&at).unwrap().is_zero());
    }
}
