use num_bigint::BigInt;
use proptest::prelude::*;

use compforms::catalog::{family, FormFamily, ParamSpec};
use compforms::dioph::{
    brute_force_search, check_monotone_positive, designated_coords, generate_sequence,
    generate_with, is_solution, simultaneous_is_solution, update_matrix, ArgOrder, DiophError,
    Mode, SequenceSpec, SolutionVec, Violation,
};
use compforms::polyring::Int;

fn numeric(name: &str, v: &[i64]) -> FormFamily {
    family(name, &ParamSpec::Values(v.iter().map(|&x| Int::from(x)).collect())).unwrap()
}

fn sv(v: &[i64]) -> SolutionVec {
    SolutionVec::from_i64(v)
}

fn sv_str(v: &[&str]) -> SolutionVec {
    SolutionVec::new(v.iter().map(|s| s.parse().unwrap()).collect())
}

fn matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

const QUARTIC: [i64; 4] = [5, -23, 2, -7];
const OCTIC: [i64; 6] = [0, -5, 0, -3, 0, -14];
const THREEFOLD4: [i64; 6] = [-1, -4, 1, -1, 1, 1];
const THREEFOLD8: [i64; 7] = [3, -1, 0, -3, 0, -14, 1];

fn pairwise(step: &[i64]) -> Mode {
    Mode::Pairwise { step: sv(step) }
}

fn triple(h: usize, step: &[i64]) -> Mode {
    Mode::Triple {
        fixed1: SolutionVec::unit(h),
        fixed2: sv(step),
        order: ArgOrder::XYZ,
    }
}

#[test]
fn membership_examples() {
    let q = numeric("quartic4x4", &QUARTIC);
    assert!(is_solution(&q, &sv(&[6, 2, 3, 1])).unwrap());
    assert!(is_solution(&q, &sv(&[1, 0, 0, 0])).unwrap());
    assert!(!is_solution(&q, &sv(&[2, 0, 0, 0])).unwrap());
    let o = numeric("octic8x8", &OCTIC);
    assert!(is_solution(&o, &sv(&[4, 2, 2, 1, 14, 7, 8, 4])).unwrap());
    assert!(matches!(
        is_solution(&q, &sv(&[1, 0])),
        Err(DiophError::DimensionMismatch { expected: 4, found: 2 })
    ));
    let symbolic = family("quartic4x4", &ParamSpec::Symbolic).unwrap();
    assert!(matches!(
        is_solution(&symbolic, &sv(&[1, 0, 0, 0])),
        Err(DiophError::SymbolicParams(_))
    ));
}

#[test]
fn simultaneous_membership() {
    let three = BigInt::from(3);
    assert!(simultaneous_is_solution(&three, &sv(&[2, 1, 3, -1, 3, -4])).unwrap());
    assert!(simultaneous_is_solution(&three, &sv(&[1, 0, 0, 0, 0, 0])).unwrap());
    // The Pell part holds but the quartic part does not.
    let v = sv(&[2, 1, 0, 0, 0, 0]);
    assert!(!simultaneous_is_solution(&three, &v).unwrap());
    let fam = numeric("sextic_uv", &[3]);
    let values = fam.eval_components(&v.coords).unwrap();
    assert_eq!(values[0], BigInt::from(1));
    assert_ne!(values[1], BigInt::from(1));
}

#[test]
fn quartic_sequence() {
    let spec = SequenceSpec {
        family: "quartic4x4".into(),
        params: QUARTIC.iter().map(|&v| Int::from(v)).collect(),
        seed: sv(&[6, 2, 3, 1]),
        mode: pairwise(&[6, 2, 3, 1]),
        count: 4,
    };
    let seq = generate_sequence(&spec).unwrap();
    assert_eq!(
        seq.solutions,
        vec![
            sv(&[6, 2, 3, 1]),
            sv(&[352, 121, 192, 66]),
            sv(&[22336, 7680, 12215, 4200]),
            sv(&[1420011, 488257, 776628, 267036]),
        ]
    );
    assert!(seq.verified);
    let (inc, pos) = designated_coords("quartic4x4", 4);
    assert!(check_monotone_positive(&seq.solutions, &inc, &pos).holds());
}

#[test]
fn sextic_system_sequence() {
    let fam = numeric("sextic_uv", &[3]);
    let step = [2, 1, 3, -1, 3, -4];
    let seq = generate_with(&fam, &sv(&step), &pairwise(&step), 4).unwrap();
    assert_eq!(
        seq.solutions,
        vec![
            sv(&[2, 1, 3, -1, 3, -4]),
            sv(&[7, 4, 67, 20, 20, -30]),
            sv(&[26, 15, 459, 525, -255, 459]),
            sv(&[97, 56, -6240, 3640, -7224, 12577]),
        ]
    );
    for v in &seq.solutions {
        let values = fam.eval_components(&v.coords).unwrap();
        assert!(values.iter().all(|x| *x == BigInt::from(1)));
    }
    let (inc, pos) = designated_coords("sextic_uv", 6);
    assert_eq!((inc.as_slice(), pos.as_slice()), (&[0, 1][..], &[0, 1][..]));
    assert!(check_monotone_positive(&seq.solutions, &inc, &pos).holds());
}

#[test]
fn octic_sequence() {
    let fam = numeric("octic8x8", &OCTIC);
    let step = [4, 2, 2, 1, 14, 7, 8, 4];
    let seq = generate_with(&fam, &sv(&step), &pairwise(&step), 4).unwrap();
    assert_eq!(seq.solutions[1], sv(&[12285, 5460, 7092, 3152, 468, 208, 270, 120]));
    assert_eq!(seq.solutions[2].coords[0], BigInt::from(578740));
    assert_eq!(seq.solutions[2].coords[7], BigInt::from(188496));
    assert_eq!(seq.solutions[3].coords[0], BigInt::from(612075793));
    assert_eq!(seq.solutions[3].coords[7], BigInt::from(11797344));
}

#[test]
fn threefold4_sequence() {
    let fam = numeric("threefold4x4", &THREEFOLD4);
    let step = [21, 8, 33, 13];
    let seq = generate_with(&fam, &sv(&step), &triple(4, &step), 4).unwrap();
    assert_eq!(
        seq.solutions,
        vec![
            sv(&[21, 8, 33, 13]),
            sv(&[2462, 961, 3983, 1555]),
            sv(&[294753, 115068, 476920, 186184]),
            sv(&[35291917, 13777548, 57103521, 22292541]),
        ]
    );
    assert_eq!(seq.order.as_deref(), Some("xyz"));
}

#[test]
fn threefold8_sequence() {
    let fam = numeric("threefold8x8", &THREEFOLD8);
    let step = [2, 6, 1, 3, 7, 21, 4, 12];
    let seq = generate_with(&fam, &sv(&step), &triple(8, &step), 4).unwrap();
    assert_eq!(seq.solutions[1], sv(&[13650, 45045, 7880, 26004, 520, 1716, 300, 990]));
    assert_eq!(seq.solutions[2].coords[0], BigInt::from(1660070));
    assert_eq!(seq.solutions[2].coords[7], BigInt::from(3991680));
    assert_eq!(
        seq.solutions[3],
        sv_str(&[
            "4520236757", "14929326951", "2609759880", "8619450840",
            "337438200", "1114482600", "194820028", "643446804",
        ])
    );
}

#[test]
fn update_matrices_match_the_printed_ones() {
    let q = numeric("quartic4x4", &QUARTIC);
    assert_eq!(
        update_matrix(&q, &pairwise(&[6, 2, 3, 1])).unwrap(),
        matrix(&[&[6, 46, 21, 161], &[2, 16, 7, 56], &[3, 23, 12, 92], &[1, 8, 4, 32]])
    );
    let uv = numeric("sextic_uv", &[3]);
    assert_eq!(
        update_matrix(&uv, &pairwise(&[2, 1, 3, -1, 3, -4])).unwrap(),
        matrix(&[
            &[2, 3, 0, 0, 0, 0],
            &[1, 2, 0, 0, 0, 0],
            &[3, -3, 0, 0, 12, -7],
            &[-1, -4, 4, 7, 7, 0],
            &[3, 3, -4, -7, 0, -4],
            &[-4, -3, 7, 12, 0, 7],
        ])
    );
    let o = numeric("octic8x8", &OCTIC);
    assert_eq!(
        update_matrix(&o, &pairwise(&[4, 2, 2, 1, 14, 7, 8, 4])).unwrap(),
        matrix(&[
            &[4, 10, 6, 15, 196, 490, 336, 840],
            &[2, 4, 3, 6, 98, 196, 168, 336],
            &[2, 5, 4, 10, 112, 280, 196, 490],
            &[1, 2, 2, 4, 56, 112, 98, 196],
            &[14, 35, 24, 60, 4, 10, 6, 15],
            &[7, 14, 12, 24, 2, 4, 3, 6],
            &[8, 20, 14, 35, 2, 5, 4, 10],
            &[4, 8, 7, 14, 1, 2, 2, 4],
        ])
    );
    let t4 = numeric("threefold4x4", &THREEFOLD4);
    assert_eq!(
        update_matrix(&t4, &triple(4, &[21, 8, 33, 13])).unwrap(),
        matrix(&[&[21, 32, 33, 52], &[8, 13, 13, 20], &[33, 52, 54, 84], &[13, 20, 21, 33]])
    );
    let t8 = numeric("threefold8x8", &THREEFOLD8);
    assert_eq!(
        update_matrix(&t8, &triple(8, &[2, 6, 1, 3, 7, 21, 4, 12])).unwrap(),
        matrix(&[
            &[2, 6, 3, 9, 98, 294, 168, 504],
            &[6, 20, 9, 30, 294, 980, 504, 1680],
            &[1, 3, 2, 6, 56, 168, 98, 294],
            &[3, 10, 6, 20, 168, 560, 294, 980],
            &[7, 21, 12, 36, 2, 6, 3, 9],
            &[21, 70, 36, 120, 6, 20, 9, 30],
            &[4, 12, 7, 21, 1, 3, 2, 6],
            &[12, 40, 21, 70, 3, 10, 6, 20],
        ])
    );
}

#[test]
fn argument_order_is_respected() {
    let fam = numeric("threefold4x4", &THREEFOLD4);
    let step = [21, 8, 33, 13];
    let zyx = Mode::Triple {
        fixed1: SolutionVec::unit(4),
        fixed2: sv(&step),
        order: ArgOrder::parse("zyx").unwrap(),
    };
    let seq = generate_with(&fam, &sv(&step), &zyx, 3).unwrap();
    for v in &seq.solutions {
        assert!(is_solution(&fam, v).unwrap());
    }
    let m = update_matrix(&fam, &zyx).unwrap();
    let next: Vec<BigInt> = m
        .iter()
        .map(|row| row.iter().zip(&seq.solutions[1].coords).map(|(a, b)| a * b).sum())
        .collect();
    assert_eq!(next, seq.solutions[2].coords);
}

#[test]
fn sequence_errors() {
    let fam = numeric("quartic4x4", &QUARTIC);
    assert!(matches!(
        generate_with(&fam, &sv(&[2, 0, 0, 0]), &pairwise(&[6, 2, 3, 1]), 2),
        Err(DiophError::SeedNotSolution(_))
    ));
    assert!(matches!(
        generate_with(&fam, &sv(&[6, 2, 3, 1]), &pairwise(&[1, 1, 0, 0]), 2),
        Err(DiophError::StepNotSolution(_))
    ));
}

#[test]
fn sequence_json_shape() {
    let fam = numeric("quartic4x4", &QUARTIC);
    let seq = generate_with(&fam, &sv(&[6, 2, 3, 1]), &pairwise(&[6, 2, 3, 1]), 2).unwrap();
    let v: serde_json::Value = serde_json::to_value(&seq).unwrap();
    assert_eq!(v["family"], "quartic4x4");
    assert_eq!(v["params"], serde_json::json!(["5", "-23", "2", "-7"]));
    assert_eq!(v["mode"], "pairwise");
    assert_eq!(v["solutions"][1], serde_json::json!(["352", "121", "192", "66"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn monotone_violations_are_reported() {
    let e = SolutionVec::unit(4);
    let r = check_monotone_positive(&[e.clone(), e], &[0], &[0]);
    assert_eq!(r.violation, Some(Violation::NotIncreasing { index: 1, coord: 0 }));
    let r = check_monotone_positive(&[sv(&[1, 0, 0, 0])], &[0], &[0, 1]);
    assert_eq!(r.violation, Some(Violation::NotPositive { index: 0, coord: 1 }));
}

/// `det` of the 4x4 lifted matrix at integer entries, by cofactor expansion.
fn det4(m: [[i128; 4]; 4]) -> i128 {
    fn minor(m: &[Vec<i128>]) -> i128 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let sub: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * minor(&sub)
            })
            .sum()
    }
    minor(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn quartic_oracle(p: [i128; 4], x: [i128; 4]) -> i128 {
    let [m, n, pp, q] = p;
    let [x1, x2, x3, x4] = x;
    det4([
        [x1, x2, x3, x4],
        [-n * x2, x1 + m * x2, -n * x4, x3 + m * x4],
        [-q * x3, -q * x4, x1 + pp * x3, x2 + pp * x4],
        [q * n * x4, -q * (x3 + m * x4), -n * x2 - pp * n * x4, x1 + m * x2 + pp * (x3 + m * x4)],
    ])
}

#[test]
fn brute_force_matches_independent_enumeration() {
    let fam = numeric("quartic4x4", &QUARTIC);
    let found = brute_force_search(&fam, 6, &BigInt::from(1)).unwrap();
    let mut oracle = Vec::new();
    for a in -6..=6 {
        for b in -6..=6 {
            for c in -6..=6 {
                for d in -6..=6 {
                    if quartic_oracle([5, -23, 2, -7], [a, b, c, d]) == 1 {
                        oracle.push(sv(&[a as i64, b as i64, c as i64, d as i64]));
                    }
                }
            }
        }
    }
    assert_eq!(found, oracle);
    assert!(found.contains(&sv(&[1, 0, 0, 0])));
    assert!(found.contains(&sv(&[6, 2, 3, 1])));
}

#[test]
fn brute_force_edge_cases() {
    let fam = numeric("quartic4x4", &QUARTIC);
    assert!(brute_force_search(&fam, 0, &BigInt::from(1)).unwrap().is_empty());
    let t4 = numeric("threefold4x4", &THREEFOLD4);
    assert!(brute_force_search(&t4, 1, &BigInt::from(1))
        .unwrap()
        .contains(&sv(&[1, 0, 0, 0])));
    let o = numeric("octic8x8", &OCTIC);
    assert!(matches!(
        brute_force_search(&o, 20, &BigInt::from(1)),
        Err(DiophError::SearchSpaceTooLarge { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn catalog_quartic_agrees_with_oracle(
        p in prop::array::uniform4(-9i128..=9),
        x in prop::array::uniform4(-40i128..=40),
    ) {
        let fam = numeric("quartic4x4", &p.map(|v| v as i64));
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        prop_assert_eq!(fam.eval(&v).unwrap(), BigInt::from(quartic_oracle(p, x)));
    }

    #[test]
    fn products_of_solutions_are_solutions(k in 1usize..4, j in 1usize..4) {
        let fam = numeric("quartic4x4", &QUARTIC);
        let seq = generate_with(&fam, &sv(&[6, 2, 3, 1]), &pairwise(&[6, 2, 3, 1]), 4).unwrap();
        let map = fam.pair_map.as_ref().unwrap();
        let z = map.apply(&[&seq.solutions[k].coords, &seq.solutions[j].coords]).unwrap();
        prop_assert!(is_solution(&fam, &SolutionVec::new(z)).unwrap());
    }
}
