//! Genus-one pencils of lines through a singular point of a branch sextic
//! `C Q = 0`, taken to Weierstrass form.

use serde::Serialize;

use super::{fiber_configuration, pencil_fibration, quartic_to_weierstrass, FiberConfiguration, FibrationError};
use crate::poly::{qi, MultiPoly, Scalar};
use crate::random::Sampler;
use crate::surface::Rank10Params;

#[derive(Clone, Debug, Serialize)]
pub struct PencilInstance {
    pub family: &'static str,
    pub seed: u64,
    pub rho: u32,
    pub configuration: FiberConfiguration,
    pub summary: String,
    pub mw_rank: i64,
    /// Draws needed to get a nondegenerate pencil.
    pub attempts: u32,
}

fn drop_power(f: MultiPoly, var: &str, d: u32) -> MultiPoly {
    let c = f.coefficient(&[(var, d)]);
    f - MultiPoly::monomial(&[var], &[d], c)
}

fn finish(family: &'static str, seed: u64, rho: u32, attempts: u32, conf: FiberConfiguration) -> PencilInstance {
    PencilInstance {
        family,
        seed,
        rho,
        summary: conf.summary(),
        mw_rank: conf.mw_rank(rho),
        configuration: conf,
        attempts,
    }
}

fn retrying<T>(retries: u32, mut f: impl FnMut() -> Result<T, FibrationError>) -> Result<(T, u32), FibrationError> {
    let mut last = FibrationError::Domain("no draws".into());
    for attempt in 1..=retries {
        match f() {
            Ok(x) => return Ok((x, attempt)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// A random conic and quartic through `[0:0:1]`, so the branch sextic has a
/// node there; lines through it give the even-eight fibration of the rank nine
/// quartic model.
pub fn even_eight_pencil(seed: u64, retries: u32) -> Result<PencilInstance, FibrationError> {
    let mut s = Sampler::derived(seed, 20, "even eight pencil");
    let (conf, attempts) = retrying(retries, || {
        let c = drop_power(s.ternary_form(2), "w", 2);
        let qf = drop_power(s.ternary_form(4), "w", 4);
        let g = pencil_fibration(&c, &qf, &[qi(0), qi(0), qi(1)])?;
        fiber_configuration(&quartic_to_weierstrass(&g)?)
    })?;
    Ok(finish("even eight", seed, 9, attempts, conf))
}

/// The rank ten quartic with `Q` forced through the conic point
/// `[1 : w0^2 : w0]`, fibred by the lines through that point.
pub fn rank10_pencil(seed: u64, retries: u32) -> Result<PencilInstance, FibrationError> {
    let mut s = Sampler::derived(seed, 20, "rank ten pencil");
    let (conf, attempts) = retrying(retries, || {
        let w0: Scalar = s.nonzero_small();
        let r = Rank10Params::sample(&mut s).through_conic_point(&w0);
        let g = pencil_fibration(&Rank10Params::conic(), &r.quartic(), &[qi(1), &w0 * &w0, w0.clone()])?;
        fiber_configuration(&quartic_to_weierstrass(&g)?)
    })?;
    Ok(finish("rank ten", seed, 10, attempts, conf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_ten_pencil_configuration() {
        let p = rank10_pencil(1, 8).unwrap();
        assert_eq!(p.summary, "8I2+8I1");
        assert_eq!(p.mw_rank, 0);
        assert_eq!(p.configuration.euler_sum(), 24);
    }

    #[test]
    fn even_eight_configuration() {
        let p = even_eight_pencil(1, 8).unwrap();
        assert_eq!(p.summary, "7I2+10I1");
        assert_eq!(p.mw_rank, 0);
    }
}
