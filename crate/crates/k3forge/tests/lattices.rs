use k3forge::lattice::intmat::{self, IntMatrix};
use k3forge::lattice::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const PIECES: &[&str] = &["H", "A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8", "<2>", "<-2>", "<-4>", "H(2)"];

fn lattice_expr() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(PIECES), 1..4).prop_map(|ps| ps.join("+"))
}

/// Product of elementary row operations, hence determinant one.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = intmat::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let rj = u[j].clone();
        for (x, y) in u[i].iter_mut().zip(rj) {
            *x += y * c;
        }
    }
    u
}

fn triple(t: TwoElementaryInvariants) -> (usize, usize, u8) {
    (t.rho, t.ell, t.delta)
}

#[test]
fn catalog_presentations_agree() {
    for row in lattice_catalog() {
        for form in row.forms {
            let t = two_elementary_invariants(&parse_lattice(form).unwrap()).unwrap();
            assert_eq!(triple(t), (row.rho, row.ell, row.delta), "{} {form}", row.label);
        }
        if row.forms.len() > 1 {
            let a = parse_lattice(row.forms[0]).unwrap();
            for form in &row.forms[1..] {
                assert!(same_two_elementary_class(&a, &parse_lattice(form).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn catalog_lattices_are_hyperbolic() {
    for row in lattice_catalog() {
        let l = parse_lattice(row.forms[0]).unwrap();
        assert_eq!(l.signature().unwrap(), (1, row.rho - 1), "{}", row.label);
    }
}

#[test]
fn different_classes_are_told_apart() {
    let a = parse_lattice("H+D4+A1^5").unwrap();
    let b = parse_lattice("H+A1^9").unwrap();
    assert!(!same_two_elementary_class(&a, &b).unwrap());
    // A2 has discriminant Z/3, not 2-elementary
    assert!(two_elementary_invariants(&parse_lattice("H+A2").unwrap()).is_err());
}

#[test]
fn glue_halves_the_determinant() {
    let l = parse_lattice("A1^8").unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let o = l.overlattice_from_glue(&vec![half; 8]).unwrap();
    assert_eq!(o.det(), l.det() / BigInt::from(4));
    assert_eq!(discriminant_form(&o).unwrap().length(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn determinant_is_multiplicative(a in lattice_expr(), b in lattice_expr()) {
        let (la, lb) = (parse_lattice(&a).unwrap(), parse_lattice(&b).unwrap());
        prop_assert_eq!(la.sum(&lb).det(), la.det() * lb.det());
    }

    #[test]
    fn discriminant_order_is_det(a in lattice_expr()) {
        let l = parse_lattice(&a).unwrap();
        let d = discriminant_form(&l).unwrap();
        prop_assert_eq!(d.order(), l.det().abs());
    }

    #[test]
    fn doubling_a_unimodular_lattice(k in 0usize..3, with_h in any::<bool>()) {
        let mut l = Lattice::e(8).unwrap().power(k);
        if with_h || k == 0 {
            l = l.sum(&Lattice::hyperbolic_plane());
        }
        let t = two_elementary_invariants(&l.rescale(2).unwrap()).unwrap();
        prop_assert_eq!(t.ell, l.rank());
        prop_assert_eq!(t.delta, 0);
    }

    #[test]
    fn invariants_ignore_the_basis(a in lattice_expr(), ops in prop::collection::vec((0usize..40, 0usize..40, -2i64..3), 0..8)) {
        let l = parse_lattice(&a).unwrap();
        prop_assume!(two_elementary_invariants(&l).is_ok());
        let u = unimodular(l.rank(), &ops);
        let m = l.change_basis(&u).unwrap();
        prop_assert_eq!(m.det(), l.det());
        prop_assert_eq!(two_elementary_invariants(&m).unwrap(), two_elementary_invariants(&l).unwrap());
    }

    #[test]
    fn glue_index_two(n in 1usize..4) {
        // half the sum of four orthogonal roots has norm -2, so the glue is even and has index two
        let l = Lattice::a(1).unwrap().power(4 * n);
        let half = BigRational::new(1.into(), 2.into());
        let w: Vec<BigRational> = (0..4 * n).map(|i| if i < 4 { half.clone() } else { BigRational::zero() }).collect();
        let o = l.overlattice_from_glue(&w).unwrap();
        prop_assert_eq!(o.det().abs() * BigInt::from(4), l.det().abs());
    }
}
