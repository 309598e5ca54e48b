//! Discriminant groups, discriminant forms and the 2-elementary invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{intmat, Lattice, LatticeError};

/// Lengths beyond this use generators and pairwise sums for the parity bit.
pub const FULL_ENUMERATION_MAX_LENGTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than one, each dividing the next.
    pub cyclic_orders: Vec<BigInt>,
    /// Generators of `L^/L` in lattice coordinates.
    pub generators: Vec<Vec<BigRational>>,
    /// `q_values[i][i] = q(g_i)`, `q_values[i][j] = q(g_i + g_j)`, all in `[0, 2)`.
    pub q_values: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.cyclic_orders.iter().fold(BigInt::one(), |a, b| a * b)
    }

    pub fn length(&self) -> usize {
        self.cyclic_orders.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoElementaryInvariants {
    pub rho: usize,
    pub ell: usize,
    pub delta: u8,
}

/// Reduces a rational into `[0, 2)`.
pub fn mod2(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let k = (x / &two).floor();
    x - k * two
}

fn norm_mod2(l: &Lattice, x: &[BigRational]) -> BigRational {
    mod2(&l.pair_q(x, x))
}

pub fn discriminant_form(l: &Lattice) -> Result<DiscriminantGroup, LatticeError> {
    let n = l.rank();
    let (_, d, v) = intmat::smith(&l.big_gram());
    let diag: Vec<BigInt> = (0..n).map(|i| d[i][i].clone()).collect();
    if diag.iter().any(|x| x.is_zero()) {
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        return Err(LatticeError::RankDeficient { rank, dim: n });
    }
    let mut orders = Vec::new();
    let mut gens = Vec::new();
    for (i, di) in diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        orders.push(di.clone());
        gens.push((0..n).map(|r| BigRational::new(v[r][i].clone(), di.clone())).collect::<Vec<_>>());
    }
    let k = gens.len();
    let mut q = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let s: Vec<BigRational> = gens[i]
                .iter()
                .zip(&gens[j])
                .map(|(a, b)| if i == j { a.clone() } else { a + b })
                .collect();
            let val = norm_mod2(l, &s);
            q[i][j] = val.clone();
            q[j][i] = val;
        }
    }
    Ok(DiscriminantGroup {
        cyclic_orders: orders,
        generators: gens,
        q_values: q,
    })
}

pub fn two_elementary_invariants(l: &Lattice) -> Result<TwoElementaryInvariants, LatticeError> {
    let dg = discriminant_form(l)?;
    let two = BigInt::from(2);
    if let Some(bad) = dg.cyclic_orders.iter().find(|d| **d != two) {
        return Err(LatticeError::NotTwoElementary(bad.clone()));
    }
    let ell = dg.length();
    let integral = |x: &BigRational| x.is_integer();
    let delta_zero = if ell <= FULL_ENUMERATION_MAX_LENGTH {
        (0u32..(1u32 << ell)).all(|mask| {
            let mut x = vec![BigRational::zero(); l.rank()];
            for (b, g) in dg.generators.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (xi, gi) in x.iter_mut().zip(g) {
                        *xi += gi;
                    }
                }
            }
            integral(&norm_mod2(l, &x))
        })
    } else {
        dg.q_values.iter().flatten().all(integral)
    };
    Ok(TwoElementaryInvariants {
        rho: l.rank(),
        ell,
        delta: if delta_zero { 0 } else { 1 },
    })
}

/// Compares `(rho, ell, delta)` of two even hyperbolic 2-elementary lattices.
pub fn same_two_elementary_class(a: &Lattice, b: &Lattice) -> Result<bool, LatticeError> {
    for l in [a, b] {
        let (p, m) = l.signature()?;
        if p != 1 {
            return Err(LatticeError::NotHyperbolic(p, m));
        }
    }
    Ok(two_elementary_invariants(a)? == two_elementary_invariants(b)?)
}

#[cfg(test)]
mod tests {
    use super::super::parse_lattice;
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a1_form() {
        let dg = discriminant_form(&Lattice::a(1).unwrap()).unwrap();
        assert_eq!(dg.cyclic_orders, vec![BigInt::from(2)]);
        // q(e/2) = -1/2 = 3/2 mod 2
        assert_eq!(dg.q_values[0][0], q(3, 2));
    }

    #[test]
    fn unimodular_and_h2() {
        assert!(discriminant_form(&Lattice::e(8).unwrap()).unwrap().cyclic_orders.is_empty());
        let h2 = Lattice::hyperbolic_plane().rescale(2).unwrap();
        let dg = discriminant_form(&h2).unwrap();
        assert_eq!(dg.cyclic_orders.len(), 2);
        assert!(dg.q_values.iter().flatten().all(|x| x.is_integer()));
        assert_eq!(two_elementary_invariants(&h2).unwrap().delta, 0);
    }

    #[test]
    fn non_two_elementary() {
        let a2 = Lattice::a(2).unwrap();
        assert_eq!(two_elementary_invariants(&a2), Err(LatticeError::NotTwoElementary(BigInt::from(3))));
    }

    #[test]
    fn catalog_triples() {
        let t = |s: &str| {
            let t = two_elementary_invariants(&parse_lattice(s).unwrap()).unwrap();
            (t.rho, t.ell, t.delta)
        };
        assert_eq!(t("H+E8+E8"), (18, 0, 0));
        assert_eq!(t("H(2)+A1^7"), (9, 9, 1));
        assert_eq!(t("H+D8+D4"), (14, 4, 0));
    }

    #[test]
    fn class_comparison() {
        let l = |s: &str| parse_lattice(s).unwrap();
        assert!(same_two_elementary_class(&l("H(2)+D4^2"), &l("H+N")).unwrap());
        assert!(same_two_elementary_class(&l("H+E7+A1^4"), &l("H+D6+D4+A1")).unwrap());
        assert!(!same_two_elementary_class(&l("H+A1^8"), &l("H+N")).unwrap());
        assert_eq!(same_two_elementary_class(&l("E8"), &l("H")), Err(LatticeError::NotHyperbolic(0, 8)));
    }

    #[test]
    fn order_matches_det() {
        for s in ["A2", "A4+D5", "E6+A1^3", "H(2)+D4"] {
            let l = parse_lattice(s).unwrap();
            let dg = discriminant_form(&l).unwrap();
            assert_eq!(dg.order(), num_traits::Signed::abs(&l.det()), "{s}");
        }
    }

    #[test]
    fn mod2_range() {
        assert_eq!(mod2(&q(-1, 2)), q(3, 2));
        assert_eq!(mod2(&q(5, 1)), q(1, 1));
        assert_eq!(mod2(&q(2, 1)), q(0, 1));
    }
}
