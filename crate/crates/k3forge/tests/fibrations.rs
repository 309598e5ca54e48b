use k3forge::fibration::*;
use k3forge::lattice::LatticeRow;
use k3forge::poly::{squarefree_part, MultiPoly};
use k3forge::random::Sampler;
use proptest::prelude::*;

fn alternate(seed: u64) -> WeierstrassModel {
    let mut s = Sampler::new(seed, 20);
    WeierstrassModel::build_alternate(&s.form("u", "v", 4), &s.form("u", "v", 8)).unwrap()
}

/// Number of distinct roots of a binary form on P^1.
fn distinct_roots(p: &MultiPoly) -> u32 {
    let d = p.total_degree().unwrap();
    let affine = p.eval_var("v", k3forge::poly::qi(1));
    let at_infinity = u32::from(affine.degree_in("u") < d);
    squarefree_part(&affine).unwrap().degree_in("u") + at_infinity
}

#[test]
fn forced_frames_over_five_seeds() {
    for row in LatticeRow::framed() {
        for seed in 1..=5 {
            let inst = frame_instance(row, &mut Sampler::derived(seed, 20, row.label), 32).unwrap();
            assert!(inst.matches(), "{} seed {seed}: {}", row.label, inst.configuration);
        }
    }
}

#[test]
fn pencils_over_five_seeds() {
    for seed in 1..=5 {
        let e = even_eight_pencil(seed, 32).unwrap();
        assert_eq!((e.summary.as_str(), e.mw_rank), ("7I2+10I1", 0), "seed {seed}");
        let r = rank10_pencil(seed, 32).unwrap();
        assert_eq!((r.summary.as_str(), r.mw_rank), ("8I2+8I1", 0), "seed {seed}");
    }
}

#[test]
fn rational_elliptic_surface_has_euler_twelve() {
    let mut s = Sampler::new(7, 20);
    let m = WeierstrassModel::new(s.form("u", "v", 2), s.form("u", "v", 4), s.form("u", "v", 6), 1).unwrap();
    let c = fiber_configuration(&m).unwrap();
    assert_eq!(c.euler_sum(), 12);
    assert_eq!(c.summary(), "12I1");
}

#[test]
fn model_file_roundtrip() {
    let m = alternate(3);
    let src = serde_json::to_string(&m.to_file()).unwrap();
    assert_eq!(WeierstrassModel::from_json(&src).unwrap(), m);
    assert!(WeierstrassModel::from_json("{\"A\": \"u\", \"B\": \"0\", \"C\": \"0\"}").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generic_alternate_counts(seed in any::<u64>()) {
        let m = alternate(seed);
        let conf = fiber_configuration(&m).unwrap();
        prop_assert_eq!(conf.euler_sum(), 24);
        prop_assert!(conf.mw_two_torsion);
        // I2 over the roots of b8, I1 over the roots of a4^2 - 4 b8
        let i1 = &m.a * &m.a - m.b.scale(&k3forge::poly::qi(4));
        prop_assert_eq!(conf.count_of(Kodaira::I(2)) as u32, distinct_roots(&m.b));
        prop_assert_eq!(conf.count_of(Kodaira::I(1)) as u32, distinct_roots(&i1));
        prop_assert_eq!(conf.summary(), "8I2+8I1");
    }

    #[test]
    fn isogeny_twice_keeps_j(seed in any::<u64>()) {
        let m = alternate(seed);
        let back = m.two_isogeny().unwrap().two_isogeny().unwrap();
        prop_assert!(back.j_invariant().unwrap().equals(&m.j_invariant().unwrap()));
    }

    #[test]
    fn configuration_ignores_unimodular_changes(seed in any::<u64>(), a in -3i64..4, b in -3i64..4) {
        // [[1, a], [b, 1 + a b]] has determinant one
        let m = alternate(seed);
        let n = m.change_coordinates([[1, a], [b, 1 + a * b]]).unwrap();
        prop_assert_eq!(fiber_configuration(&m).unwrap().counts(), fiber_configuration(&n).unwrap().counts());
    }

    #[test]
    fn alternate_discriminant_shape(seed in any::<u64>()) {
        let m = alternate(seed);
        let (a4, b8) = (&m.a, &m.b);
        let want = (&(b8 * b8) * &(a4 * a4 - b8.scale(&k3forge::poly::qi(4)))).scale(&k3forge::poly::qi(16));
        prop_assert_eq!(m.discriminant(), want);
    }
}
