//! Forced instances of the alternate fibration for every framed row.

use serde::Serialize;

use super::{fiber_configuration, FiberConfiguration, FibrationError, Kodaira, Place, WeierstrassModel};
use crate::ade::parse_config;
use crate::lattice::LatticeRow;
use crate::random::Sampler;
use crate::surface::PrimeParams;

/// `ord_v` of the discriminant forced by the construction of each row.
pub fn expected_v_discriminant_order(label: &str) -> Option<u32> {
    Some(match label {
        "10 (6,0)" => 0,
        "11 (7,1)" => 2,
        "14 (4,0)" => 9,
        "12 (6,1)" | "13 (5,1)" | "14 (4,1)" | "15 (3,1)" | "16 (2,1)" | "17 (1,1)" | "18 (0,0)" => {
            let rho: u32 = label[..2].parse().ok()?;
            2 * (rho - 10) + 2
        }
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameInstance {
    pub label: String,
    #[serde(skip)]
    pub model: WeierstrassModel,
    pub configuration: FiberConfiguration,
    pub root_config: String,
    pub expected: String,
    /// Samples drawn until the genericity checks passed.
    pub attempts: u32,
}

impl FrameInstance {
    pub fn matches(&self) -> bool {
        parse_config(&self.root_config).ok() == parse_config(&self.expected).ok()
            && self.configuration.euler_sum() == 24
            && self.configuration.mw_two_torsion
    }
}

fn sample_model(label: &str, s: &mut Sampler) -> Result<WeierstrassModel, FibrationError> {
    if label == "10 (6,0)" {
        return WeierstrassModel::build_alternate(&s.form("u", "v", 4), &s.form("u", "v", 8));
    }
    let p = PrimeParams::sample(label, s).map_err(|e| FibrationError::Domain(e.to_string()))?;
    WeierstrassModel::build_alternate(&p.a4(), &p.b8())
}

/// Draws alternate fibrations for `row` until the discriminant has exactly the
/// forced order at `v = 0` and only `I1` and `I2` fibers elsewhere. Gives up
/// after `retry_cap` draws.
pub fn frame_instance(row: &LatticeRow, s: &mut Sampler, retry_cap: u32) -> Result<FrameInstance, FibrationError> {
    let expected = row
        .k_root
        .ok_or_else(|| FibrationError::Domain(format!("{} has no alternate fibration", row.label)))?;
    let want_v = expected_v_discriminant_order(row.label)
        .ok_or_else(|| FibrationError::Domain(format!("no forced construction for {}", row.label)))?;
    let want = parse_config(expected).map_err(FibrationError::Domain)?;
    let want_rank: u32 = want.iter().map(|t| t.rank()).sum();
    for attempt in 1..=retry_cap {
        let Ok(model) = sample_model(row.label, s) else { continue };
        if model.discriminant().valuation_in("v") != Some(want_v) {
            continue;
        }
        let Ok(conf) = fiber_configuration(&model) else { continue };
        // general members have only the forced fiber at v = 0 plus I1 and I2 fibers;
        // two I1 colliding into an I2 or II marks a special member
        let generic = conf
            .fibers
            .iter()
            .all(|f| f.place == Place::VZero || matches!(f.kodaira, Kodaira::I(1) | Kodaira::I(2)))
            && conf.trivial_rank() <= want_rank
            && conf.euler_sum() == 24;
        if !generic {
            continue;
        }
        let root_config = conf.root_config();
        return Ok(FrameInstance {
            label: row.label.to_string(),
            model,
            configuration: conf,
            root_config,
            expected: expected.to_string(),
            attempts: attempt,
        });
    }
    Err(FibrationError::Search {
        label: row.label.to_string(),
        attempts: retry_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_framed_row_matches() {
        for row in LatticeRow::framed() {
            let mut s = Sampler::derived(1, 20, row.label);
            let inst = frame_instance(row, &mut s, 32).unwrap();
            assert!(inst.matches(), "{}: {} vs {}", row.label, inst.root_config, inst.expected);
        }
    }

    #[test]
    fn eighteen_is_i12_star() {
        let row = LatticeRow::find("18 (0,0)").unwrap();
        let inst = frame_instance(row, &mut Sampler::new(5, 20), 32).unwrap();
        assert_eq!(inst.configuration.count_of(Kodaira::IStar(12)), 1);
        assert_eq!(inst.configuration.summary(), "I12*+6I1");
    }

    #[test]
    fn fourteen_40_is_e7() {
        let row = LatticeRow::find("14 (4,0)").unwrap();
        let inst = frame_instance(row, &mut Sampler::new(2, 20), 32).unwrap();
        assert_eq!(inst.configuration.summary(), "III*+5I2+5I1");
    }

    #[test]
    fn unframed_row_rejected() {
        let row = LatticeRow::find("10 (8,1)").unwrap();
        assert!(frame_instance(row, &mut Sampler::new(1, 20), 4).is_err());
    }
}
