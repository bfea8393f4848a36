//! Criteria 1-7, one line each. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;

use compforms::catalog::printed::{self, parse_form};
use compforms::catalog::{family, structures, FormFamily, ParamSpec};
use compforms::compose::{
    check_associativity, identity_element, invert, verify_family, verify_threefold_genuineness,
    IdentityCheck, Method, MethodChoice,
};
use compforms::dioph::{
    brute_force_search, generate_with, ArgOrder, Mode, SolutionVec,
};
use compforms::linstruct::{
    block_compose, coord_names, verify_pair_closure, verify_triple_closure, ExtractionRecipe,
    LinearStructure, PairOutcome,
};
use compforms::polyring::{Int, PolyMatrix, Polynomial, VarTable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sym(name: &str) -> FormFamily {
    family(name, &ParamSpec::Symbolic).unwrap()
}

fn numeric(name: &str, v: &[i64]) -> FormFamily {
    family(name, &ParamSpec::Values(v.iter().map(|&x| Int::from(x)).collect())).unwrap()
}

fn sv(v: &[i64]) -> SolutionVec {
    SolutionVec::from_i64(v)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Direct => "direct",
        Method::Structural => "structural",
    }
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for name in ["quad2x2", "cubic3x3", "quartic4x4", "sextic6x6", "sextic_circulant", "octic8x8"] {
        let r = verify_family(&sym(name), 2, MethodChoice::Auto).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{name}: nonzero residual {:?}", r.checks);
        notes.push(format!("{name} ({})", method_name(r.method)));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    for name in ["threefold_quadratic", "threefold4x4", "threefold8x8"] {
        let r = verify_family(&sym(name), 3, MethodChoice::Auto).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{name}: triple identity fails");
        ensure!(r.checks.len() == 3, "{name}: expected three argument orders");
    }
    let q = verify_family(&sym("threefold_quadratic"), 3, MethodChoice::Direct)
        .map_err(|e| e.to_string())?;
    ensure!(q.passed(), "quadratic triple law fails under direct expansion");

    let mut pair_structures = vec![structures::trace_free("t", "b", "c").unwrap()];
    for name in ["threefold4x4", "threefold8x8"] {
        pair_structures.push(sym(name).structure.unwrap());
    }
    for s in &pair_structures {
        let r = ExtractionRecipe::find(s).unwrap();
        match verify_pair_closure(s, &r).unwrap() {
            PairOutcome::NotClosed(nc) => {
                ensure!(nc.residual.is_some(), "pairwise failure is not a span failure")
            }
            PairOutcome::Closed(_) => return Err("pairwise product closed".into()),
        }
    }

    let ints = |v: &[i64]| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>();
    let r4 = verify_threefold_genuineness(&sym("threefold4x4"), &ints(&[0, 1, 0, 2, 0, 0]))
        .map_err(|e| e.to_string())?;
    let t4 = VarTable::new(coord_names("x", 4)).unwrap();
    ensure!(r4 == Polynomial::parse(&t4, "4*x4^4").unwrap(), "reduction gave {r4}");
    let r8 = verify_threefold_genuineness(&sym("threefold8x8"), &ints(&[0, 2, 0, 0, 0, 0, 0]))
        .map_err(|e| e.to_string())?;
    let t8 = VarTable::new(coord_names("x", 8)).unwrap();
    ensure!(r8 == Polynomial::parse(&t8, "16*x2^8").unwrap(), "reduction gave {r8}");
    Ok("three argument orders each; pairwise NotInSpan x3; reductions 4*x4^4, 16*x2^8".into())
}

fn criterion_3() -> Outcome {
    let q = sym("quartic4x4");
    ensure!(
        q.form == parse_form(&q.table, printed::QUARTIC_FORM).unwrap(),
        "quartic determinant differs from the transcription"
    );
    let s = sym("sextic6x6");
    ensure!(s.form.term_count() == 11926, "sextic has {} terms", s.form.term_count());
    let c = sym("sextic_circulant");
    let f1 = parse_form(&c.table, printed::CIRCULANT_F1).unwrap();
    let f2 = parse_form(&c.table, printed::CIRCULANT_F2).unwrap();
    ensure!(c.form == f1.checked_mul(&f2).unwrap(), "circulant determinant does not factor");
    Ok("quartic form, 11926 sextic terms, circulant det = f1*f2".into())
}

fn check_sequence(fam: &FormFamily, seed: &[i64], mode: Mode, expected: &[Vec<&str>]) -> Result<(), String> {
    let seq = generate_with(fam, &sv(seed), &mode, expected.len()).map_err(|e| e.to_string())?;
    for (i, (got, want)) in seq.solutions.iter().zip(expected).enumerate() {
        for (j, w) in want.iter().enumerate() {
            if *w == "_" {
                continue;
            }
            ensure!(
                got.coords[j] == w.parse::<BigInt>().unwrap(),
                "{}: iterate {i} is {got}",
                fam.name()
            );
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let row = |s: &'static str| s.split(',').collect::<Vec<_>>();
    check_sequence(
        &numeric("quartic4x4", &[5, -23, 2, -7]),
        &[6, 2, 3, 1],
        Mode::Pairwise { step: sv(&[6, 2, 3, 1]) },
        &[
            row("6,2,3,1"),
            row("352,121,192,66"),
            row("22336,7680,12215,4200"),
            row("1420011,488257,776628,267036"),
        ],
    )?;
    check_sequence(
        &numeric("sextic_uv", &[3]),
        &[2, 1, 3, -1, 3, -4],
        Mode::Pairwise { step: sv(&[2, 1, 3, -1, 3, -4]) },
        &[
            row("2,1,3,-1,3,-4"),
            row("7,4,67,20,20,-30"),
            row("26,15,459,525,-255,459"),
            row("97,56,-6240,3640,-7224,12577"),
        ],
    )?;
    check_sequence(
        &numeric("octic8x8", &[0, -5, 0, -3, 0, -14]),
        &[4, 2, 2, 1, 14, 7, 8, 4],
        Mode::Pairwise { step: sv(&[4, 2, 2, 1, 14, 7, 8, 4]) },
        &[
            row("4,2,2,1,14,7,8,4"),
            row("12285,5460,7092,3152,468,208,270,120"),
            row("578740,_,_,_,_,_,_,188496"),
            row("612075793,_,_,_,_,_,_,11797344"),
        ],
    )?;
    let triple = |h: usize, step: &[i64]| Mode::Triple {
        fixed1: SolutionVec::unit(h),
        fixed2: sv(step),
        order: ArgOrder::XYZ,
    };
    check_sequence(
        &numeric("threefold4x4", &[-1, -4, 1, -1, 1, 1]),
        &[21, 8, 33, 13],
        triple(4, &[21, 8, 33, 13]),
        &[
            row("21,8,33,13"),
            row("2462,961,3983,1555"),
            row("294753,115068,476920,186184"),
            row("35291917,13777548,57103521,22292541"),
        ],
    )?;
    check_sequence(
        &numeric("threefold8x8", &[3, -1, 0, -3, 0, -14, 1]),
        &[2, 6, 1, 3, 7, 21, 4, 12],
        triple(8, &[2, 6, 1, 3, 7, 21, 4, 12]),
        &[
            row("2,6,1,3,7,21,4,12"),
            row("13650,45045,7880,26004,520,1716,300,990"),
            row("1660070,_,_,_,_,_,_,3991680"),
            row("4520236757,_,_,_,_,_,_,643446804"),
        ],
    )?;
    Ok("quartic, sextic system, octic, threefold4x4, threefold8x8".into())
}

fn criterion_5() -> Outcome {
    for name in ["quartic4x4", "octic8x8"] {
        let fam = sym(name);
        identity_element(&fam).map_err(|e| e.to_string())?;
        let a = check_associativity(fam.pair_map.as_ref().unwrap()).map_err(|e| e.to_string())?;
        ensure!(a == IdentityCheck::Zero, "{name}: map is not associative");
    }
    for (name, params, x) in [
        ("quartic4x4", vec![5, -23, 2, -7], vec![6, 2, 3, 1]),
        ("octic8x8", vec![0, -5, 0, -3, 0, -14], vec![4, 2, 2, 1, 14, 7, 8, 4]),
    ] {
        let fam = numeric(name, &params);
        let x = big(&x);
        let inv = invert(&fam, &x).map_err(|e| e.to_string())?;
        let e = fam.pair_map.as_ref().unwrap().apply(&[&x, &inv]).unwrap();
        ensure!(e == SolutionVec::unit(fam.dim()).coords, "{name}: x * x^-1 = {e:?}");
    }
    let fam = numeric("quartic4x4", &[5, -23, 2, -7]);
    let inv = invert(&fam, &big(&[6, 2, 3, 1])).unwrap();
    let table = sym("quartic4x4").table;
    let point = big(&[5, -23, 2, -7, 6, 2, 3, 1]);
    let printed: Vec<BigInt> = printed::QUARTIC_INVERSE
        .iter()
        .map(|t| parse_form(&table, t).unwrap().eval_slice(&point))
        .collect();
    ensure!(inv == printed, "inverse {inv:?} differs from the formulas {printed:?}");
    Ok(format!(
        "identity, associativity, inverse round trips; inverse of (6, 2, 3, 1) = {}",
        SolutionVec::new(inv)
    ))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
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
            sign * m[0][j] * det_i128(&sub)
        })
        .sum()
}

fn criterion_6() -> Outcome {
    let fam = numeric("quartic4x4", &[5, -23, 2, -7]);
    let found = brute_force_search(&fam, 6, &BigInt::from(1)).map_err(|e| e.to_string())?;
    let (m, n, p, q) = (5i128, -23i128, 2i128, -7i128);
    let mut oracle = Vec::new();
    for a in -6i128..=6 {
        for b in -6i128..=6 {
            for c in -6i128..=6 {
                for d in -6i128..=6 {
                    let mat = vec![
                        vec![a, b, c, d],
                        vec![-n * b, a + m * b, -n * d, c + m * d],
                        vec![-q * c, -q * d, a + p * c, b + p * d],
                        vec![q * n * d, -q * (c + m * d), -n * b - p * n * d, a + m * b + p * (c + m * d)],
                    ];
                    if det_i128(&mat) == 1 {
                        oracle.push(sv(&[a as i64, b as i64, c as i64, d as i64]));
                    }
                }
            }
        }
    }
    ensure!(found == oracle, "search found {} points, oracle {}", found.len(), oracle.len());
    ensure!(found.contains(&sv(&[1, 0, 0, 0])), "(1, 0, 0, 0) missing");
    ensure!(found.contains(&sv(&[6, 2, 3, 1])), "(6, 2, 3, 1) missing");
    Ok(format!("{} solutions in the box of radius 6", found.len()))
}

fn instantiate(s: &LinearStructure) -> PolyMatrix {
    let names = coord_names("x", s.coords());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    s.instantiate(&refs).unwrap()
}

fn pair_closed(s: &LinearStructure) -> bool {
    let r = ExtractionRecipe::find(s).unwrap();
    matches!(verify_pair_closure(s, &r).unwrap(), PairOutcome::Closed(_))
}

fn triple_only(s: &LinearStructure) -> bool {
    let r = ExtractionRecipe::find(s).unwrap();
    matches!(verify_triple_closure(s, &r).unwrap(), Ok(c) if c.is_triple_only())
}

fn criterion_7() -> Outcome {
    let outer = structures::quadratic("p", "q").unwrap();
    let inner = structures::quadratic("m", "n").unwrap();
    let m44 = instantiate(&block_compose(&outer, &inner).unwrap());
    let rows = [
        ["x1", "x2", "x3", "x4"],
        ["-n*x2", "x1 + m*x2", "-n*x4", "x3 + m*x4"],
        ["-q*x3", "-q*x4", "x1 + p*x3", "x2 + p*x4"],
        ["q*n*x4", "-q*(x3 + m*x4)", "-n*x2 - p*n*x4", "x1 + m*x2 + p*(x3 + m*x4)"],
    ];
    for (i, row) in rows.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let e = Polynomial::parse(m44.vars(), text).unwrap();
            ensure!(m44.get(i, j) == &e, "4x4 entry ({}, {}) is {}", i + 1, j + 1, m44.get(i, j));
        }
    }

    let cubic = structures::cubic(["lambda1", "lambda2", "lambda3", "lambda4", "lambda5"]).unwrap();
    let p66 = instantiate(&block_compose(&outer, &cubic).unwrap());
    let t = p66.vars().clone();
    let coords = |r: std::ops::Range<usize>| {
        r.map(|i| Polynomial::var(&t, &format!("x{i}")).unwrap()).collect::<Vec<_>>()
    };
    let a1 = cubic.instantiate_at(&t, &coords(1..4)).unwrap();
    let a2 = cubic.instantiate_at(&t, &coords(4..7)).unwrap();
    let q = Polynomial::var(&t, "q").unwrap();
    let p = Polynomial::var(&t, "p").unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let blocks = [
                (i, j, a1.get(i, j).clone()),
                (i, j + 3, a2.get(i, j).clone()),
                (i + 3, j, -q.checked_mul(a2.get(i, j)).unwrap()),
                (i + 3, j + 3, a1.get(i, j).checked_add(&p.checked_mul(a2.get(i, j)).unwrap()).unwrap()),
            ];
            for (r, c, e) in blocks {
                ensure!(p66.get(r, c) == &e, "6x6 entry ({}, {}) differs", r + 1, c + 1);
            }
        }
    }

    ensure!(pair_closed(&outer) && pair_closed(&inner) && pair_closed(&cubic), "bases not closed");
    ensure!(pair_closed(&block_compose(&outer, &inner).unwrap()), "4x4 lift not closed");
    ensure!(pair_closed(&block_compose(&outer, &cubic).unwrap()), "6x6 lift not closed");
    for name in ["threefold4x4", "threefold8x8"] {
        let s = sym(name).structure.unwrap();
        ensure!(triple_only(&s), "{name} is not triple-only");
    }
    Ok("4x4 and 6x6 lifts entrywise; closure preserved; trace-free factor gives triple-only".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("symbolic pairwise identities", criterion_1),
        ("three-fold identities and reductions", criterion_2),
        ("form cross-checks", criterion_3),
        ("solution sequences", criterion_4),
        ("group law", criterion_5),
        ("search oracle", criterion_6),
        ("block lifting", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
