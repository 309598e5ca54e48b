use std::collections::HashMap;

use k3forge::poly::*;
use proptest::prelude::*;

fn poly_in(vars: &'static [&'static str], max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -9i64..10, 1i64..4), 0..max_terms).prop_map(move |ts| {
        ts.into_iter()
            .fold(MultiPoly::zero(), |acc, (e, a, b)| acc + MultiPoly::monomial(vars, &e, q(a, b)))
    })
}

fn xyz() -> impl Strategy<Value = MultiPoly> {
    poly_in(&["x", "y", "z"], 3, 6)
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..7, 1..=max_deg + 1).prop_map(|cs| UniPoly::from_ints(&cs))
}

fn nonzero_uni(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    uni(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distributive(p in xyz(), r in xyz(), s in xyz()) {
        prop_assert_eq!(&(&p + &r) * &s, &(&p * &s) + &(&r * &s));
    }

    #[test]
    fn print_then_parse(p in xyz()) {
        let back: MultiPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn substitution_is_multiplicative(p in xyz(), r in xyz(), a in poly_in(&["s", "t"], 2, 4), b in poly_in(&["s", "t"], 2, 4)) {
        // x -> a, y -> b / (1 + s^2), z -> s - t
        let den: MultiPoly = "1 + s^2".parse().unwrap();
        let m = RationalMap::new(
            &["s", "t"],
            vec![
                ("x", RationalFunction::poly(a)),
                ("y", RationalFunction::new(b, den).unwrap()),
                ("z", RationalFunction::poly("s - t".parse().unwrap())),
            ],
        );
        let lhs = substitute(&(&p * &r), &m).unwrap();
        let rhs = substitute(&p, &m).unwrap().mul(&substitute(&r, &m).unwrap());
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn cover_reduction_is_idempotent(p in poly_in(&["x", "y"], 5, 6), f in poly_in(&["x"], 4, 4)) {
        let once = reduce_double_cover(&p, "y", &f).unwrap();
        prop_assert!(once.degree_in("y") <= 1);
        prop_assert_eq!(reduce_double_cover(&once, "y", &f).unwrap(), once.clone());
        // p and its reduction agree on the cover: the difference is a multiple of y^2 - f
        let rule = MultiPoly::var("y").pow(2) - f.clone();
        let (_, rem) = (&p - &once).div_rem_in("y", &rule).unwrap();
        prop_assert!(rem.is_zero());
    }

    #[test]
    fn resultant_sign_rule(p in poly_in(&["x", "t"], 3, 5), r in poly_in(&["x", "t"], 3, 5)) {
        let (dp, dr) = (p.degree_in("x"), r.degree_in("x"));
        prop_assume!(dp > 0 && dr > 0);
        let a = resultant(&p, &r, "x").unwrap();
        let b = resultant(&r, &p, "x").unwrap();
        let sign = if (dp * dr) % 2 == 0 { qi(1) } else { qi(-1) };
        prop_assert_eq!(a, b.scale(&sign));
    }

    #[test]
    fn gcd_contains_planted_factor(g in nonzero_uni(3), a in nonzero_uni(3), b in nonzero_uni(3)) {
        let (p, r) = (a.mul(&g), b.mul(&g));
        let d = p.gcd(&r);
        prop_assert!(d.div_exact(&g).is_some());
        prop_assert!(p.div_exact(&d).is_some());
        prop_assert!(r.div_exact(&d).is_some());
        // the cofactors are coprime
        let (x, y) = (p.div_exact(&d).unwrap(), r.div_exact(&d).unwrap());
        prop_assert!(x.gcd(&y).is_constant());
    }

    #[test]
    fn gcd_free_basis_reconstructs(ps in prop::collection::vec(nonzero_uni(4), 1..4)) {
        prop_assume!(ps.iter().all(|p| !p.is_constant()));
        let gb = gcd_free_basis(&ps).unwrap();
        for (i, p) in ps.iter().enumerate() {
            let prod = gb.basis.iter().zip(&gb.exponents[i]).fold(UniPoly::one(), |acc, (b, &e)| acc.mul(&b.pow(e)));
            prop_assert_eq!(prod.monic(), p.monic());
        }
        for i in 0..gb.basis.len() {
            prop_assert!(gb.basis[i].is_squarefree());
            for j in 0..i {
                prop_assert!(gb.basis[i].gcd(&gb.basis[j]).is_constant());
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(p in xyz(), r in xyz(), x in -5i64..6, y in -5i64..6, z in -5i64..6) {
        let at: HashMap<&str, Scalar> = [("x", qi(x)), ("y", qi(y)), ("z", qi(z))].into_iter().collect();
        prop_assert_eq!((&p * &r).eval(&at).unwrap(), p.eval(&at).unwrap() * r.eval(&at).unwrap());
    }
}

#[test]
fn resultant_of_linear_forms() {
    // Res_x(p, r) = r(root of p) for monic linear p
    let p: MultiPoly = "x - 3*t".parse().unwrap();
    let r: MultiPoly = "x + t^2".parse().unwrap();
    assert_eq!(resultant(&p, &r, "x").unwrap(), "3*t + t^2".parse::<MultiPoly>().unwrap());
}
