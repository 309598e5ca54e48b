use k3forge::ade::AdeType;
use k3forge::divisor::{builtin_graph, chain_type, divisor_table, DivisorRow};
use k3forge::poly::{qi, MultiPoly, Scalar};
use k3forge::random::Sampler;
use k3forge::singularity::*;
use proptest::prelude::*;

fn graph_of(label: &str) -> &'static str {
    match label {
        "10 (8,1)" => "rho10_basis",
        "11 (7,1)" => "rho11",
        "12 (6,1)" => "rho12",
        "13 (5,1)" => "rho13",
        "14 (4,0)" => "rho14_40",
        "14 (4,1)" => "rho14_41",
        "15 (3,1)" => "rho15",
        "16 (2,1)" => "rho16",
        "17 (1,1)" => "rho17",
        "18 (0,0)" => "rho18",
        _ => "",
    }
}

#[test]
fn every_row_over_five_seeds() {
    let checks = rdp_suite(1, 5);
    assert_eq!(checks.len(), rdp_rows().len() * 5 * 3);
    let bad: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn exceptional_sets_match_the_types() {
    // the curves over p2 and p1 span exactly the Dynkin type found on K
    let table = divisor_table();
    for row in rdp_rows().iter().filter(|r| r.rho >= 10) {
        let name = graph_of(row.label);
        let g = builtin_graph(name).unwrap();
        let d = table.iter().find(|d| d.graph == name).unwrap();
        for (set, cell) in [(&d.b_set, row.k_at_p2), (&d.a_set, row.k_at_p1)] {
            let RdpCell::Ade(t) = cell else { panic!("{name}") };
            let classes = DivisorRow::classes(&g, set).unwrap();
            assert_eq!(classes.len() as u32, t.rank(), "{name}");
            assert_eq!(chain_type(&g, &classes).unwrap().single(), Some(t), "{name}");
        }
    }
}

fn germ(s: &str) -> LocalGerm {
    LocalGerm::new(s.parse().unwrap(), DEFAULT_TRUNCATION).unwrap()
}

#[test]
fn normal_form_dictionary() {
    assert_eq!(classify(&germ("x^2 + y^2 + z^2")), Ok(AdeType::A(1)));
    assert_eq!(classify(&germ("z^2 + x^3 - x*y^2")), Ok(AdeType::D(4)));
    assert_eq!(classify(&germ("z^2 + x^2*y + y^6")), Ok(AdeType::D(7)));
    assert_eq!(classify(&germ("z^2 + x^3 + y^4")), Ok(AdeType::E(6)));
    assert_eq!(classify(&germ("z^2 + x^3 + x*y^3")), Ok(AdeType::E(7)));
    assert_eq!(classify(&germ("z^2 + x^3 + y^5")), Ok(AdeType::E(8)));
}

#[test]
fn localize_rejects_points_off_the_model() {
    let f: MultiPoly = "y^2 - u*v*w^4 + u^4*w^2 - v^6".parse().unwrap();
    let off = [qi(1), qi(1), qi(1), qi(0)];
    assert!(matches!(
        localize(&f, ["u", "v", "w", "y"], off, 2, 20),
        Err(SingularityError::NotOnSurface(_))
    ));
    let g = localize(&f, ["u", "v", "w", "y"], [qi(0), qi(0), qi(1), qi(0)], 2, 20).unwrap();
    assert_eq!(classify(&g), Ok(AdeType::A(1)));
}

fn order_poly(k: u32, seed: u64) -> MultiPoly {
    // z^k times a unit, plus higher terms
    let mut s = Sampler::new(seed, 9);
    let z = MultiPoly::var("z");
    let mut g = z.pow(k).scale(&s.nonzero_small());
    for e in k + 1..k + 4 {
        g = g + z.pow(e).scale(&s.small());
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_variable_residual_gives_a_k(k in 2u32..15, seed in any::<u64>()) {
        let f = MultiPoly::var("x").pow(2) + MultiPoly::var("y").pow(2) + order_poly(k, seed);
        prop_assert_eq!(classify(&LocalGerm::new(f, DEFAULT_TRUNCATION).unwrap()), Ok(AdeType::A(k - 1)));
    }

    #[test]
    fn linear_changes_preserve_the_type(k in 1u32..12, a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        // x -> x + a y + b z, y -> y + c z is unipotent, hence invertible
        let (x, y, z) = (MultiPoly::var("x"), MultiPoly::var("y"), MultiPoly::var("z"));
        let f = x.pow(2) + y.pow(2) + z.pow(k + 1);
        let mut m = std::collections::HashMap::new();
        m.insert("x", &x + &y.scale(&Scalar::from_integer(a.into())) + z.scale(&Scalar::from_integer(b.into())));
        m.insert("y", &y + &z.scale(&Scalar::from_integer(c.into())));
        let g = f.compose(&m);
        prop_assert_eq!(classify(&LocalGerm::new(g, DEFAULT_TRUNCATION).unwrap()), Ok(AdeType::A(k)));
    }

    #[test]
    fn curve_double_covers(n in 1u32..9, c in 1i64..6) {
        // y^2 = x^2 - c z^(n+1) is the double cover of an A_n curve germ
        let f: MultiPoly = format!("y^2 - x^2 + {c}*z^{}", n + 1).parse().unwrap();
        prop_assert_eq!(classify(&LocalGerm::new(f, DEFAULT_TRUNCATION).unwrap()), Ok(AdeType::A(n)));
    }
}
