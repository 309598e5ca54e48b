use k3forge::ade::AdeType;
use k3forge::divisor::*;
use k3forge::lattice::TwoElementaryInvariants;

fn triple((rho, ell, delta): (usize, usize, u8)) -> TwoElementaryInvariants {
    TwoElementaryInvariants { rho, ell, delta }
}

#[test]
fn every_shipped_graph_generates_its_lattice() {
    for (name, t, _) in BUILTIN_GRAPHS {
        let g = builtin_graph(name).unwrap();
        let r = ns_check(&g, triple(*t));
        assert!(r.pass, "{name}: {:?}", r);
    }
}

#[test]
fn corrupted_graph_is_caught() {
    // drop one thick edge from the rank 15 configuration
    let src = BUILTIN_GRAPHS.iter().find(|g| g.0 == "rho15").unwrap().2;
    let mut f: GraphFile = serde_json::from_str(src).unwrap();
    let k = f.edges.iter().position(|e| e.2 == 2).unwrap();
    f.edges.remove(k);
    let g = DualGraph::from_file_struct(f).unwrap();
    assert!(!ns_check(&g, triple((15, 3, 1))).pass);
}

#[test]
fn nef_divisors_have_square_two() {
    for row in divisor_table() {
        let g = builtin_graph(&row.graph).unwrap();
        let d = g.parse_divisor(&row.d2).unwrap();
        assert_eq!(g.square(&d).unwrap(), 2, "{}", row.graph);
        let n = is_nef_against_listed(&g, &d).unwrap();
        assert!(n.nef, "{}: {:?}", row.graph, n.witness);
        assert_eq!(n.certificate, g.ns_lattice().unwrap().rank() >= 14 && row.graph != "rho10_basis");
    }
}

#[test]
fn polarization_decompositions() {
    for row in divisor_table().into_iter().filter(|r| !r.b_set.is_empty()) {
        let g = builtin_graph(&row.graph).unwrap();
        let h = row.polarization(&g).unwrap();
        let d2 = g.parse_divisor(&row.d2).unwrap();
        let a = DivisorRow::classes(&g, &row.a_set).unwrap();
        let b = DivisorRow::classes(&g, &row.b_set).unwrap();
        let r = verify_polarization_decomposition(&g, &h, &d2, &a, &b, row.b_weights.as_deref()).unwrap();
        assert!(r.ok(), "{}: {r}", row.graph);
        assert!(is_nef_against_listed(&g, &h).unwrap().nef, "{}", row.graph);
    }
}

#[test]
fn wrong_weights_fail() {
    let row = divisor_table().into_iter().find(|r| r.graph == "rho18").unwrap();
    let g = builtin_graph("rho18").unwrap();
    let h = row.polarization(&g).unwrap();
    let d2 = g.parse_divisor(&row.d2).unwrap();
    let a = DivisorRow::classes(&g, &row.a_set).unwrap();
    let b = DivisorRow::classes(&g, &row.b_set).unwrap();
    let r = verify_polarization_decomposition(&g, &h, &d2, &a, &b, None).unwrap();
    assert!(!r.ok());
}

#[test]
fn exceptional_sets_are_dynkin_chains() {
    let expect = [
        ("rho11", "A1", "A3"),
        ("rho12", "A3", "A3"),
        ("rho13", "A3", "A5"),
        ("rho14_40", "A3", "A7"),
        ("rho14_41", "A3", "A7"),
        ("rho15", "A3", "A9"),
        ("rho16", "A5", "A9"),
        ("rho17", "A5", "A11"),
        ("rho18", "E6", "A11"),
    ];
    for (name, p2, p1) in expect {
        let row = divisor_table().into_iter().find(|r| r.graph == name).unwrap();
        let g = builtin_graph(name).unwrap();
        let b = DivisorRow::classes(&g, &row.b_set).unwrap();
        let a = DivisorRow::classes(&g, &row.a_set).unwrap();
        assert_eq!(
            chain_type(&g, &b).unwrap().single(),
            Some(p2.parse::<AdeType>().unwrap()),
            "{name} b"
        );
        assert_eq!(
            chain_type(&g, &a).unwrap().single(),
            Some(p1.parse::<AdeType>().unwrap()),
            "{name} a"
        );
    }
}

#[test]
fn basis_polarization() {
    let g = builtin_graph("rho10_basis").unwrap();
    let d2 = g.parse_divisor("3f1+3f2-e1-e2-e3-e4-e5-e6-e7-e8").unwrap();
    let b = vec![g.parse_divisor("e8").unwrap()];
    let a = vec![g.parse_divisor("f2-f1").unwrap()];
    let h = d2.add(&b[0]);
    assert!(verify_polarization_decomposition(&g, &h, &d2, &a, &b, None).unwrap().ok());
}

#[test]
fn pair_is_symmetric_and_bilinear() {
    let g = builtin_graph("rho16").unwrap();
    let n = g.len();
    let mk = |seed: i64| DivisorClass {
        coefficients: (0..n as i64).map(|i| (i * seed + 3) % 7 - 3).collect(),
    };
    let (x, y, z) = (mk(2), mk(5), mk(11));
    assert_eq!(g.pair(&x, &y).unwrap(), g.pair(&y, &x).unwrap());
    assert_eq!(g.pair(&x.add(&y), &z).unwrap(), g.pair(&x, &z).unwrap() + g.pair(&y, &z).unwrap());
    assert!(matches!(g.pair(&x, &DivisorClass::zero(3)), Err(DivisorError::Dimension(3, _))));
}
