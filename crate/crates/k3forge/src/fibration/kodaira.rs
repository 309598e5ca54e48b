//! Kodaira fiber types from valuations, place by place.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{FibrationError, WeierstrassModel};
use crate::ade::{format_config, AdeType};
use crate::poly::{gcd_free_basis, qi, MultiPoly, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    pub fn euler(&self) -> u32 {
        match *self {
            Kodaira::I(n) => n,
            Kodaira::IStar(n) => n + 6,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    /// Root lattice spanned by the fiber components missing the zero section.
    pub fn root(&self) -> Option<AdeType> {
        match *self {
            Kodaira::I(n) if n >= 2 => Some(AdeType::A(n - 1)),
            Kodaira::IStar(n) => Some(AdeType::D(n + 4)),
            Kodaira::III => Some(AdeType::A(1)),
            Kodaira::IV => Some(AdeType::A(2)),
            Kodaira::IVStar => Some(AdeType::E(6)),
            Kodaira::IIIStar => Some(AdeType::E(7)),
            Kodaira::IIStar => Some(AdeType::E(8)),
            _ => None,
        }
    }

    /// Type from the valuations of `f`, `g` (`None` for a vanishing coefficient)
    /// and of `4f^3 + 27g^2` at a minimal place.
    pub fn from_valuations(vf: Option<u32>, vg: Option<u32>, vd: u32) -> Result<Option<Kodaira>, FibrationError> {
        if vd == 0 {
            return Ok(None);
        }
        if vf == Some(0) {
            return Ok(Some(Kodaira::I(vd)));
        }
        let t = match vd {
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            _ if vd >= 6 && vf == Some(2) && vg == Some(3) => Kodaira::IStar(vd - 6),
            6 => Kodaira::IStar(0),
            8 => Kodaira::IVStar,
            9 => Kodaira::IIIStar,
            10 => Kodaira::IIStar,
            _ => return Err(FibrationError::UnknownKodaira { vf, vg, vd }),
        };
        Ok(Some(t))
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Where a fiber sits: `v = 0`, or the roots of a squarefree polynomial in `u` (with `v = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    VZero,
    Roots(MultiPoly),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::VZero => write!(f, "v = 0"),
            Place::Roots(p) => write!(f, "{p} = 0"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fiber {
    pub place: Place,
    pub kodaira: Kodaira,
    /// Number of geometric fibers (degree of the place).
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberConfiguration {
    pub fibers: Vec<Fiber>,
    pub mw_two_torsion: bool,
    /// Minimal reductions applied, summed over geometric places.
    pub reductions: u32,
}

impl FiberConfiguration {
    pub fn counts(&self) -> BTreeMap<Kodaira, usize> {
        let mut m = BTreeMap::new();
        for f in &self.fibers {
            *m.entry(f.kodaira).or_insert(0) += f.count;
        }
        m
    }

    pub fn count_of(&self, k: Kodaira) -> usize {
        self.counts().get(&k).copied().unwrap_or(0)
    }

    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(|f| f.kodaira.euler() * f.count as u32).sum()
    }

    pub fn root_types(&self) -> Vec<AdeType> {
        let mut out = Vec::new();
        for f in &self.fibers {
            if let Some(r) = f.kodaira.root() {
                out.extend(std::iter::repeat_n(r, f.count));
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn root_config(&self) -> String {
        format_config(&self.root_types())
    }

    pub fn trivial_rank(&self) -> u32 {
        self.root_types().iter().map(|r| r.rank()).sum()
    }

    /// Shioda-Tate: `rank MW = rho - 2 - sum of fiber root ranks`.
    pub fn mw_rank(&self, rho: u32) -> i64 {
        rho as i64 - 2 - self.trivial_rank() as i64
    }

    /// Like `8I2+8I1`: larger Euler numbers first.
    pub fn summary(&self) -> String {
        let mut items: Vec<(Kodaira, usize)> = self.counts().into_iter().collect();
        items.sort_by(|(a, _), (b, _)| b.euler().cmp(&a.euler()).then(b.cmp(a)));
        if items.is_empty() {
            return "smooth".into();
        }
        items
            .iter()
            .map(|(k, n)| if *n == 1 { k.to_string() } else { format!("{n}{k}") })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for FiberConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (euler {}, 2-torsion {})",
            self.summary(),
            self.euler_sum(),
            self.mw_two_torsion
        )
    }
}

fn ge(x: Option<u32>, n: u32) -> bool {
    x.is_none_or(|x| x >= n)
}

/// Strips `(4, 6, 12)` from the valuations while the place is not minimal.
fn minimalize(mut vf: Option<u32>, mut vg: Option<u32>, mut vd: u32) -> (Option<u32>, Option<u32>, u32, u32) {
    let mut r = 0;
    while ge(vf, 4) && ge(vg, 6) && vd >= 12 {
        vf = vf.map(|x| x - 4);
        vg = vg.map(|x| x - 6);
        vd -= 12;
        r += 1;
    }
    (vf, vg, vd, r)
}

fn dehomogenize(p: &MultiPoly) -> Result<UniPoly, FibrationError> {
    let d = p.eval_var("v", qi(1));
    Ok(UniPoly::from_multi(&d)?.0)
}

/// Splits the places of bad reduction with a gcd-free basis of `f, g, Δ`
/// (no factoring over Q) and reads off Kodaira types from valuations.
pub fn fiber_configuration(m: &WeierstrassModel) -> Result<FiberConfiguration, FibrationError> {
    let (f, g) = m.short_form();
    let d = m.short_discriminant();
    if d.is_zero() {
        return Err(FibrationError::Degenerate("discriminant vanishes identically".into()));
    }
    let mut fibers = Vec::new();
    let mut reductions = 0;

    let (vf, vg, vd, r) = minimalize(f.valuation_in("v"), g.valuation_in("v"), d.valuation_in("v").unwrap());
    reductions += r;
    if let Some(k) = Kodaira::from_valuations(vf, vg, vd)? {
        fibers.push(Fiber {
            place: Place::VZero,
            kodaira: k,
            count: 1,
        });
    }

    let du = dehomogenize(&d)?;
    if !du.is_constant() {
        let mut inputs = vec![du];
        let fi = if f.is_zero() {
            None
        } else {
            inputs.push(dehomogenize(&f)?);
            Some(inputs.len() - 1)
        };
        let gi = if g.is_zero() {
            None
        } else {
            inputs.push(dehomogenize(&g)?);
            Some(inputs.len() - 1)
        };
        let basis = gcd_free_basis(&inputs)?;
        for (j, b) in basis.basis.iter().enumerate() {
            let vd = basis.exponents[0][j];
            if vd == 0 {
                continue;
            }
            let vf = fi.map(|i| basis.exponents[i][j]);
            let vg = gi.map(|i| basis.exponents[i][j]);
            let (vf, vg, vd, r) = minimalize(vf, vg, vd);
            let deg = b.degree().unwrap_or(0);
            reductions += r * deg as u32;
            if let Some(k) = Kodaira::from_valuations(vf, vg, vd)? {
                fibers.push(Fiber {
                    place: Place::Roots(b.to_multi("u")),
                    kodaira: k,
                    count: deg,
                });
            }
        }
    }
    Ok(FiberConfiguration {
        fibers,
        mw_two_torsion: m.has_two_torsion_at_origin(),
        reductions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::random::Sampler;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_table() {
        let k = |vf, vg, vd| Kodaira::from_valuations(vf, vg, vd).unwrap();
        assert_eq!(k(Some(0), Some(0), 0), None);
        assert_eq!(k(Some(0), Some(0), 5), Some(Kodaira::I(5)));
        assert_eq!(k(Some(1), Some(1), 2), Some(Kodaira::II));
        assert_eq!(k(Some(1), Some(2), 3), Some(Kodaira::III));
        assert_eq!(k(Some(2), Some(2), 4), Some(Kodaira::IV));
        assert_eq!(k(Some(2), Some(3), 6), Some(Kodaira::IStar(0)));
        assert_eq!(k(None, Some(3), 6), Some(Kodaira::IStar(0)));
        assert_eq!(k(Some(2), Some(3), 18), Some(Kodaira::IStar(12)));
        assert_eq!(k(Some(3), Some(4), 8), Some(Kodaira::IVStar));
        assert_eq!(k(Some(3), Some(5), 9), Some(Kodaira::IIIStar));
        assert_eq!(k(Some(4), Some(5), 10), Some(Kodaira::IIStar));
        assert!(Kodaira::from_valuations(Some(3), Some(5), 11).is_err());
    }

    #[test]
    fn euler_and_roots() {
        assert_eq!(Kodaira::IStar(12).root(), Some(AdeType::D(16)));
        assert_eq!(Kodaira::IStar(12).euler(), 18);
        assert_eq!(Kodaira::I(1).root(), None);
        assert_eq!(Kodaira::IIIStar.root(), Some(AdeType::E(7)));
        assert_eq!(Kodaira::IStar(3).to_string(), "I3*");
    }

    #[test]
    fn generic_alternate_fibration() {
        let mut s = Sampler::new(21, 20);
        let m = WeierstrassModel::build_alternate(&s.form("u", "v", 4), &s.form("u", "v", 8)).unwrap();
        let c = fiber_configuration(&m).unwrap();
        assert_eq!(c.summary(), "8I2+8I1");
        assert_eq!(c.euler_sum(), 24);
        assert!(c.mw_two_torsion);
        assert_eq!(c.root_config(), "8A1");
    }

    #[test]
    fn rational_elliptic_surface_sums_to_twelve() {
        let mut s = Sampler::new(4, 20);
        let m = WeierstrassModel::new(s.form("u", "v", 2), s.form("u", "v", 4), s.form("u", "v", 6), 1).unwrap();
        let c = fiber_configuration(&m).unwrap();
        assert_eq!(c.euler_sum(), 12);
        assert_eq!(c.summary(), "12I1");
    }

    #[test]
    fn non_minimal_place_is_reduced() {
        // k = 3 model with u^4 | B and u^6 | C: one reduction at u = 0 brings it back to a K3
        let mut s = Sampler::new(6, 20);
        let f = p("u^4") * s.form("u", "v", 8);
        let g = p("u^6") * s.form("u", "v", 12);
        let m = WeierstrassModel::new(MultiPoly::zero(), f, g, 3).unwrap();
        let c = fiber_configuration(&m).unwrap();
        assert_eq!(c.reductions, 1);
        assert_eq!(c.euler_sum() + 12 * c.reductions, 36);
    }

    #[test]
    fn coordinate_change_invariance() {
        let mut s = Sampler::new(8, 20);
        let p12 = crate::surface::PrimeParams::sample("12 (6,1)", &mut s).unwrap();
        let m = WeierstrassModel::build_alternate(&p12.a4(), &p12.b8()).unwrap();
        let c0 = fiber_configuration(&m).unwrap();
        for mat in [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, 1], [1, 0]], [[1, 0], [3, 1]]] {
            let c = fiber_configuration(&m.change_coordinates(mat).unwrap()).unwrap();
            assert_eq!(c.counts(), c0.counts());
        }
    }

    #[test]
    fn forced_twelve_has_d4_at_infinity() {
        let mut s = Sampler::new(3, 20);
        let p12 = crate::surface::PrimeParams::sample("12 (6,1)", &mut s).unwrap();
        let m = WeierstrassModel::build_alternate(&p12.a4(), &p12.b8()).unwrap();
        let c = fiber_configuration(&m).unwrap();
        let at_v = c.fibers.iter().find(|f| f.place == Place::VZero).unwrap();
        assert_eq!(at_v.kodaira, Kodaira::IStar(0));
        assert_eq!(c.root_config(), "D4+6A1");
        assert_eq!(c.mw_rank(12), 0);
    }
}
