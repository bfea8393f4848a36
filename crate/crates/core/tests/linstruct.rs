use compforms::catalog::{family, structures, ParamSpec};
use compforms::linstruct::{
    block_compose, coord_names, verify_pair_closure, verify_triple_closure, ExtractionRecipe,
    LinearStructure, PairOutcome, StructureJson,
};
use compforms::polyring::{Int, PolyMatrix, Polynomial};

fn matrix(s: &LinearStructure, prefix: &str) -> PolyMatrix {
    let names = coord_names(prefix, s.coords());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    s.instantiate(&refs).unwrap()
}

fn assert_rows(m: &PolyMatrix, rows: &[&[&str]]) {
    assert_eq!(m.order(), rows.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let expected = Polynomial::parse(m.vars(), text).unwrap();
            assert_eq!(m.get(i, j), &expected, "entry ({}, {})", i + 1, j + 1);
        }
    }
}

fn pair_closed(s: &LinearStructure) -> bool {
    let r = ExtractionRecipe::find(s).unwrap();
    matches!(verify_pair_closure(s, &r).unwrap(), PairOutcome::Closed(_))
}

fn triple_only(s: &LinearStructure) -> bool {
    let r = ExtractionRecipe::find(s).unwrap();
    match verify_triple_closure(s, &r).unwrap() {
        Ok(cert) => cert.is_triple_only(),
        Err(_) => false,
    }
}

#[test]
fn lifted_quadratics_give_the_4x4_matrix() {
    let outer = structures::quadratic("p", "q").unwrap();
    let inner = structures::quadratic("m", "n").unwrap();
    let s = block_compose(&outer, &inner).unwrap();
    assert_rows(
        &matrix(&s, "x"),
        &[
            &["x1", "x2", "x3", "x4"],
            &["-n*x2", "x1 + m*x2", "-n*x4", "x3 + m*x4"],
            &["-q*x3", "-q*x4", "x1 + p*x3", "x2 + p*x4"],
            &["q*n*x4", "-q*(x3 + m*x4)", "-n*x2 - p*n*x4", "x1 + m*x2 + p*(x3 + m*x4)"],
        ],
    );
}

#[test]
fn lifted_cubic_gives_the_6x6_block_matrix() {
    let fam = family("sextic6x6", &ParamSpec::Symbolic).unwrap();
    let p = matrix(fam.structure.as_ref().unwrap(), "x");
    let table = p.vars().clone();
    let cubic = structures::cubic(["lambda1", "lambda2", "lambda3", "lambda4", "lambda5"]).unwrap();
    let vars = |names: [&str; 3]| {
        names
            .iter()
            .map(|n| Polynomial::var(&table, n).unwrap())
            .collect::<Vec<_>>()
    };
    let a1 = cubic.instantiate_at(&table, &vars(["x1", "x2", "x3"])).unwrap();
    let a2 = cubic.instantiate_at(&table, &vars(["x4", "x5", "x6"])).unwrap();
    let q = Polynomial::var(&table, "q").unwrap();
    let pp = Polynomial::var(&table, "p").unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(p.get(i, j), a1.get(i, j));
            assert_eq!(p.get(i, j + 3), a2.get(i, j));
            assert_eq!(p.get(i + 3, j), &(-&q.checked_mul(a2.get(i, j)).unwrap()));
            let br = a1.get(i, j).checked_add(&pp.checked_mul(a2.get(i, j)).unwrap()).unwrap();
            assert_eq!(p.get(i + 3, j + 3), &br);
        }
    }
}

#[test]
fn threefold8_inner_block_matches() {
    let inner = block_compose(
        &structures::quadratic("p", "q").unwrap(),
        &structures::trace_free("t", "m", "n").unwrap(),
    )
    .unwrap();
    assert_rows(
        &matrix(&inner, "x"),
        &[
            &["t*x1", "x2", "t*x3", "x4"],
            &["m*x1 + n*x2", "-t*x1", "m*x3 + n*x4", "-t*x3"],
            &["-q*t*x3", "-q*x4", "t*x1 + p*t*x3", "x2 + p*x4"],
            &["-q*(m*x3 + n*x4)", "q*t*x3", "m*x1 + n*x2 + p*(m*x3 + n*x4)", "-t*x1 - p*t*x3"],
        ],
    );
}

#[test]
fn threefold8_example_matrix() {
    let fam = family(
        "threefold8x8",
        &ParamSpec::Values([3, -1, 0, -3, 0, -14, 1].iter().map(|&v| Int::from(v)).collect()),
    )
    .unwrap();
    assert_rows(
        &matrix(fam.structure.as_ref().unwrap(), "x"),
        &[
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"],
            &["3*x1 - x2", "-x1", "3*x3 - x4", "-x3", "3*x5 - x6", "-x5", "3*x7 - x8", "-x7"],
            &["3*x3", "3*x4", "x1", "x2", "3*x7", "3*x8", "x5", "x6"],
            &["9*x3 - 3*x4", "-3*x3", "3*x1 - x2", "-x1", "9*x7 - 3*x8", "-3*x7", "3*x5 - x6", "-x5"],
            &["14*x5", "14*x6", "14*x7", "14*x8", "x1", "x2", "x3", "x4"],
            &["42*x5 - 14*x6", "-14*x5", "42*x7 - 14*x8", "-14*x7", "3*x1 - x2", "-x1", "3*x3 - x4", "-x3"],
            &["42*x7", "42*x8", "14*x5", "14*x6", "3*x3", "3*x4", "x1", "x2"],
            &["126*x7 - 42*x8", "-42*x7", "42*x5 - 14*x6", "-14*x5", "9*x3 - 3*x4", "-3*x3", "3*x1 - x2", "-x1"],
        ],
    );
}

#[test]
fn lifting_closed_structures_stays_closed() {
    let quad = structures::quadratic("p", "q").unwrap();
    let inner = structures::quadratic("m", "n").unwrap();
    assert!(pair_closed(&quad) && pair_closed(&inner));
    assert!(pair_closed(&block_compose(&quad, &inner).unwrap()));

    let cubic = structures::cubic(["l1", "l2", "l3", "l4", "l5"]).unwrap();
    assert!(pair_closed(&cubic));
    assert!(pair_closed(&block_compose(&quad, &cubic).unwrap()));

    let circ = structures::circulant3().unwrap();
    let split = structures::split_quadratic("q").unwrap();
    assert!(pair_closed(&block_compose(&split, &circ).unwrap()));
}

#[test]
fn a_triple_only_factor_makes_the_lift_triple_only() {
    let tf = structures::trace_free("t", "b", "c").unwrap();
    assert!(!pair_closed(&tf));
    assert!(triple_only(&tf));

    for name in ["threefold4x4", "threefold8x8"] {
        let fam = family(name, &ParamSpec::Symbolic).unwrap();
        let s = fam.structure.as_ref().unwrap();
        assert!(!pair_closed(s), "{name}");
        assert!(triple_only(s), "{name}");
    }
}

#[test]
fn pairwise_failures_are_span_failures() {
    for s in [
        structures::trace_free("t", "b", "c").unwrap(),
        family("threefold4x4", &ParamSpec::Symbolic).unwrap().structure.unwrap(),
        family("threefold8x8", &ParamSpec::Symbolic).unwrap().structure.unwrap(),
    ] {
        let r = ExtractionRecipe::find(&s).unwrap();
        match verify_pair_closure(&s, &r).unwrap() {
            PairOutcome::NotClosed(nc) => assert!(nc.residual.is_some()),
            PairOutcome::Closed(_) => panic!("pairwise product closed"),
        }
    }
}

#[test]
fn block_compose_rejects_shared_parameters() {
    let a = structures::quadratic("p", "q").unwrap();
    assert!(block_compose(&a, &a).is_err());
    let renamed = a
        .rename_params(&[("p".into(), "p2".into()), ("q".into(), "q2".into())])
        .unwrap();
    let lifted = block_compose(&a, &renamed).unwrap();
    assert_eq!((lifted.order(), lifted.coords()), (4, 4));
}

#[test]
fn structure_json_round_trip() {
    let fam = family("quartic4x4", &ParamSpec::Symbolic).unwrap();
    let s = fam.structure.unwrap();
    let text = serde_json::to_string(&StructureJson::from(&s)).unwrap();
    let back: StructureJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_structure().unwrap(), s);
}
