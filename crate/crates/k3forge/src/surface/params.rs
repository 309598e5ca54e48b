//! The data `(h0, c2, e3, d4)` behind the quartic and double sextic models of
//! Picard rank 11 and higher, and the alternate fibration they induce.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::SurfaceError;
use crate::poly::{q, MultiPoly, Scalar, UniPoly};
use crate::random::Sampler;

/// Labels of the families handled through `(h0, c2, e3, d4)`.
pub const PRIME_LABELS: &[&str] = &[
    "11 (7,1)", "12 (6,1)", "13 (5,1)", "14 (4,0)", "14 (4,1)", "15 (3,1)", "16 (2,1)", "17 (1,1)", "18 (0,0)",
];

/// Imposed `v`-orders of `(c2, e3, d4)` and whether `h0` is nonzero.
pub fn vanishing_orders(label: &str) -> Option<(u32, u32, u32, bool)> {
    Some(match label {
        "11 (7,1)" => (0, 0, 0, true),
        "12 (6,1)" => (0, 0, 0, false),
        "13 (5,1)" => (0, 0, 1, false),
        "14 (4,0)" => (0, 1, 1, false),
        "14 (4,1)" => (0, 0, 2, false),
        "15 (3,1)" => (0, 0, 3, false),
        "16 (2,1)" => (1, 0, 3, false),
        "17 (1,1)" => (1, 0, 4, false),
        "18 (0,0)" => (2, 0, 4, false),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeParams {
    #[serde(serialize_with = "ser_scalar")]
    pub h0: Scalar,
    #[serde(serialize_with = "ser_poly")]
    pub c2: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub e3: MultiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub d4: MultiPoly,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn ser_poly<S: serde::Serializer>(x: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn uv() -> (MultiPoly, MultiPoly) {
    (MultiPoly::var("u"), MultiPoly::var("v"))
}

impl PrimeParams {
    pub fn new(h0: Scalar, c2: MultiPoly, e3: MultiPoly, d4: MultiPoly) -> Result<Self, SurfaceError> {
        for (name, p, d) in [("c2", &c2, 2), ("e3", &e3, 3), ("d4", &d4, 4)] {
            super::check_binary_form(name, p, d)?;
        }
        Ok(Self { h0, c2, e3, d4 })
    }

    /// Random instance with the vanishing orders of `label`.
    pub fn sample(label: &str, s: &mut Sampler) -> Result<Self, SurfaceError> {
        let (oc, oe, od, h) = vanishing_orders(label).ok_or_else(|| SurfaceError::UnknownFamily(label.into()))?;
        let h0 = if h { s.nonzero_small() } else { Scalar::zero() };
        Ok(Self {
            h0,
            c2: s.form_with_order("u", "v", 2, "v", oc),
            e3: s.form_with_order("u", "v", 3, "v", oe),
            d4: s.form_with_order("u", "v", 4, "v", od),
        })
    }

    /// `c2, e3, d4` and the cofactor `d4'` general beyond the imposed orders.
    pub fn is_general(&self) -> bool {
        let d4p = self.d4_prime();
        let mut forms = vec![&self.c2, &self.e3, &self.d4];
        if !self.h0.is_zero() {
            forms.push(&d4p);
        }
        general_binary_forms(&forms)
    }

    /// `a4 = v e3 - 2 h0 d4`.
    pub fn a4(&self) -> MultiPoly {
        let (_, v) = uv();
        &v * &self.e3 - self.d4.scale(&(q(2, 1) * &self.h0))
    }

    /// `b6'' = e3^2/4 - c2 d4`.
    pub fn b6pp(&self) -> MultiPoly {
        (&self.e3 * &self.e3).scale(&q(1, 4)) - &self.c2 * &self.d4
    }

    /// `b8 = a4^2/4 - v^2 b6''`.
    pub fn b8(&self) -> MultiPoly {
        let (_, v) = uv();
        let a4 = self.a4();
        (&a4 * &a4).scale(&q(1, 4)) - &(&v * &v) * &self.b6pp()
    }

    /// The cofactor `d4' = b8 / d4`.
    pub fn d4_prime(&self) -> MultiPoly {
        let (_, v) = uv();
        &(&v * &v) * &self.c2 - self.d4.scale(&(&self.h0 * &self.h0)) - self.a4().scale(&self.h0)
    }

    /// Conic `w (v + h0 w)`.
    pub fn conic(&self) -> MultiPoly {
        let w = MultiPoly::var("w");
        let (_, v) = uv();
        &w * &(&v + &w.scale(&self.h0))
    }

    /// Quartic `c2 w^2 + e3 w + d4`.
    pub fn quartic(&self) -> MultiPoly {
        let w = MultiPoly::var("w");
        &(&self.c2 * &(&w * &w)) + &(&self.e3 * &w) + &self.d4
    }

    /// Residual of `b8 - d4 d4'`; zero by construction.
    pub fn factorization_residual(&self) -> MultiPoly {
        self.b8() - &self.d4 * &self.d4_prime()
    }
}

fn coeff_u_power(p: &MultiPoly, d: u32, k: u32) -> Scalar {
    p.coefficient(&[("u", d - k), ("v", k)])
}

/// Recovers `(h0, c2, e3, d4)` from `(a4, b6'')` and a degree-four factor `d4` of
/// `b8 = a4^2/4 - v^2 b6''`. Needs `d4(1,0) != 0` unless `a4(1,0) = 0`; the
/// orders of `label` are enforced.
pub fn derive_prime_parameters(a4: &MultiPoly, b6pp: &MultiPoly, d4: &MultiPoly, label: &str) -> Result<PrimeParams, SurfaceError> {
    super::check_binary_form("a4", a4, 4)?;
    super::check_binary_form("b6''", b6pp, 6)?;
    super::check_binary_form("d4", d4, 4)?;
    let (oc, oe, od, _) = vanishing_orders(label).ok_or_else(|| SurfaceError::UnknownFamily(label.into()))?;
    let (_, v) = uv();
    let b8 = (a4 * a4).scale(&q(1, 4)) - &(&v * &v) * b6pp;
    let d4p = b8
        .div_exact(d4)
        .ok_or_else(|| SurfaceError::Search("d4 does not divide b8".into()))?;
    let delta0 = coeff_u_power(d4, 4, 0);
    let alpha0 = coeff_u_power(a4, 4, 0);
    // h0 = 0 exactly when alpha0 = 0; only then may d4(1,0) vanish
    let h0 = if alpha0.is_zero() {
        Scalar::zero()
    } else if delta0.is_zero() {
        return Err(SurfaceError::Domain("d4(1,0) = 0 while a4(1,0) != 0".into()));
    } else {
        -&alpha0 / (q(2, 1) * &delta0)
    };
    let num_e = a4 + &d4.scale(&(q(2, 1) * &h0));
    let num_c = &d4p + &d4.scale(&(&h0 * &h0)) + a4.scale(&h0);
    let e3 = num_e
        .div_exact(&v)
        .ok_or_else(|| SurfaceError::Search("a4 + 2 h0 d4 not divisible by v".into()))?;
    let v2 = &v * &v;
    let c2 = num_c
        .div_exact(&v2)
        .ok_or_else(|| SurfaceError::Search("d4' + h0^2 d4 + h0 a4 not divisible by v^2".into()))?;
    let ord = |p: &MultiPoly| p.valuation_in("v").unwrap_or(u32::MAX);
    if ord(&c2) < oc || ord(&e3) < oe || ord(d4) < od {
        return Err(SurfaceError::Search(format!("vanishing orders of {label} not met")));
    }
    let out = PrimeParams::new(h0, c2, e3, d4.clone())?;
    if !(out.a4() == *a4 && out.b8() == b8) {
        return Err(SurfaceError::Residual {
            what: "params identity".into(),
            residual: (out.b8() - b8).to_string(),
        });
    }
    Ok(out)
}

/// The part of a nonzero binary form prime to `v`, at `v = 1`.
fn v_free_part(p: &MultiPoly) -> Option<UniPoly> {
    let k = p.valuation_in("v")?;
    let (_, v) = uv();
    let r = p.div_exact(&v.pow(k))?.eval_var("v", Scalar::one());
    UniPoly::from_multi(&r).ok().map(|(u, _)| u)
}

/// True when each form is nonzero and, once the powers of `v` are divided
/// out, squarefree and coprime to the others. This is the open condition
/// used for "general" instances.
pub fn general_binary_forms(forms: &[&MultiPoly]) -> bool {
    let Some(parts) = forms.iter().map(|p| v_free_part(p)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    parts.iter().all(|p| p.is_squarefree()) && (0..parts.len()).all(|i| (i + 1..parts.len()).all(|j| parts[i].gcd(&parts[j]).is_constant()))
}

/// `(delta'_0, delta'_1, h0)` from the leading coefficients of `a4` and `d4`.
pub fn leading_cofactor_coefficients(a4: &MultiPoly, d4: &MultiPoly) -> Result<(Scalar, Scalar, Scalar), SurfaceError> {
    let (a0, a1) = (coeff_u_power(a4, 4, 0), coeff_u_power(a4, 4, 1));
    let (d0, d1) = (coeff_u_power(d4, 4, 0), coeff_u_power(d4, 4, 1));
    if d0.is_zero() {
        return Err(SurfaceError::Domain("d4(1,0) = 0".into()));
    }
    let dp0 = &a0 * &a0 / (q(4, 1) * &d0);
    let dp1 = &a0 * (q(2, 1) * &a1 * &d0 - &a0 * &d1) / (q(4, 1) * &d0 * &d0);
    let h0 = -&a0 / (q(2, 1) * &d0);
    Ok((dp0, dp1, h0))
}

/// Substitutes `u -> uu, v -> vv` in a form.
pub fn pull(p: &MultiPoly, uu: &MultiPoly, vv: &MultiPoly) -> MultiPoly {
    let mut m = HashMap::new();
    m.insert("u", uu.clone());
    m.insert("v", vv.clone());
    p.compose(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_identity_and_round_trip() {
        for label in PRIME_LABELS {
            let mut s = Sampler::derived(1, 20, label);
            let p = PrimeParams::sample(label, &mut s).unwrap();
            assert!(p.factorization_residual().is_zero(), "{label}");
            let back = derive_prime_parameters(&p.a4(), &p.b6pp(), &p.d4, label).unwrap();
            assert_eq!(back, p, "{label}");
        }
    }

    #[test]
    fn h0_vanishes_iff_alpha0_does() {
        let mut s = Sampler::new(3, 20);
        let p = PrimeParams::sample("12 (6,1)", &mut s).unwrap();
        assert!(coeff_u_power(&p.a4(), 4, 0).is_zero());
        let v = MultiPoly::var("v");
        assert_eq!(p.b8(), &(&(&v * &v) * &p.c2) * &p.d4);
        let p11 = PrimeParams::sample("11 (7,1)", &mut s).unwrap();
        assert!(!coeff_u_power(&p11.a4(), 4, 0).is_zero());
    }

    #[test]
    fn b8_orders_follow_the_table() {
        for (label, m) in [("14 (4,1)", 4), ("15 (3,1)", 5), ("16 (2,1)", 6), ("17 (1,1)", 7), ("18 (0,0)", 8)] {
            let mut s = Sampler::derived(2, 20, label);
            let p = PrimeParams::sample(label, &mut s).unwrap();
            assert_eq!(p.b8().valuation_in("v"), Some(m), "{label}");
        }
    }

    #[test]
    fn leading_cofactors_match_the_quotient() {
        let mut s = Sampler::new(9, 20);
        let p = PrimeParams::sample("11 (7,1)", &mut s).unwrap();
        let (dp0, dp1, h0) = leading_cofactor_coefficients(&p.a4(), &p.d4).unwrap();
        let dp = p.d4_prime();
        assert_eq!(h0, p.h0);
        assert_eq!(dp0, coeff_u_power(&dp, 4, 0));
        assert_eq!(dp1, coeff_u_power(&dp, 4, 1));
    }

    #[test]
    fn rejects_bad_factor() {
        let mut s = Sampler::new(4, 20);
        let p = PrimeParams::sample("11 (7,1)", &mut s).unwrap();
        let u = MultiPoly::var("u");
        let bogus = u.pow(4) + MultiPoly::var("v").pow(4).scale(&q(7, 3));
        assert!(derive_prime_parameters(&p.a4(), &p.b6pp(), &bogus, "11 (7,1)").is_err());
        let v4 = MultiPoly::var("v").pow(4);
        assert!(derive_prime_parameters(&p.a4(), &p.b6pp(), &v4, "11 (7,1)").is_err());
    }
}
