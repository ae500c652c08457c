//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach stdout.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use peirce_core::cli::run_from_args;
use peirce_core::{
    check_conditions, enumerate_reverse_derivable_maps, find_idempotents, witness_revalidate,
    Component, ConditionId, ConditionSet, MapSource, MapTable, Mode, PeirceDecomposition,
    SearchConfig,
};

fn catalog_map(r: &std::sync::Arc<peirce_core::Ring>, name: &str) -> MapTable {
    MapTable::build(r.clone(), &MapSource::Catalog { name: name.into() }).unwrap()
}

fn within(limit: Duration, label: &str, start: Instant) {
    let t = start.elapsed();
    assert!(t < limit, "{label} took {t:?}, limit {limit:?}");
}

fn ac1_example_fixtures() {
    let start = Instant::now();
    let eg1 = ring("eg1", &[5]);
    let c = catalog_map(&eg1, "eg1_map").classify().unwrap();
    assert!(c.reverse_derivation.pass && !c.additive.pass);

    let eg3 = ring("eg3", &[5]);
    let lambda = catalog_map(&eg3, "lambda").classify().unwrap();
    assert!(lambda.reverse_derivation.pass && lambda.additive.pass && !lambda.derivation.pass);
    let phi = catalog_map(&eg3, "phi").classify().unwrap();
    assert!(phi.derivation.pass && phi.additive.pass && !phi.reverse_derivation.pass);

    let eg2 = ring("eg2", &[]);
    let delta = catalog_map(&eg2, "eg2_map").classify().unwrap();
    assert!(delta.additive.pass && delta.reverse_derivation.pass);
    let e = idx(&eg2, &[3, 0]);
    assert!(find_idempotents(&eg2)
        .unwrap()
        .iter()
        .any(|i| i.index == e && i.nontrivial));
    assert!(witness_revalidate(&eg2, e, ConditionId::Thm1I, idx(&eg2, &[2, 4])).unwrap());
    within(Duration::from_secs(5), "fixtures", start);
}

fn test_rings() -> Vec<std::sync::Arc<peirce_core::Ring>> {
    vec![
        ring("zn", &[2]),
        ring("zn", &[3]),
        ring("zn", &[4]),
        ring("zn", &[6]),
        ring("zn", &[8]),
        ring("product", &[2, 2]),
        ring("product", &[2, 2, 2]),
        ring("eg1", &[2]),
        ring("eg3", &[2]),
        ring("matrix", &[2, 2]),
    ]
}

fn ac2_forced_values() {
    for r in test_rings() {
        assert!(r.order() <= 16);
        let res = enumerate_reverse_derivable_maps(&r, &SearchConfig::csp()).unwrap();
        assert!(res.complete);
        let n = r.order();
        for m in &res.maps {
            assert_eq!(m.get(0), 0, "{}", r.name());
            if let Some(u) = r.unit_index() {
                assert_eq!(m.get(u), 0, "{}", r.name());
            }
            for x in 0..n {
                for y in 0..n {
                    let psi = m.psi(x, y);
                    for t in 0..n {
                        assert_eq!(r.mul(t, psi), m.psi(r.mul(x, t), r.mul(y, t)));
                        assert_eq!(r.mul(psi, t), m.psi(r.mul(t, x), r.mul(t, y)));
                    }
                }
            }
        }
    }
}

fn ac3_oracle_equivalence() {
    for (name, params) in [
        ("zn", vec![2]),
        ("zn", vec![3]),
        ("zn", vec![4]),
        ("product", vec![2, 2]),
        ("eg1", vec![2]),
    ] {
        let r = ring(name, &params);
        let start = Instant::now();
        let csp = enumerate_reverse_derivable_maps(&r, &SearchConfig::csp()).unwrap();
        within(Duration::from_secs(1), "csp", start);
        let start = Instant::now();
        let oracle = enumerate_reverse_derivable_maps(&r, &SearchConfig::oracle()).unwrap();
        within(Duration::from_secs(120), "oracle", start);
        assert!(csp.complete && oracle.complete);
        let a: BTreeSet<Vec<usize>> = csp.maps.iter().map(table_of).collect();
        let b: BTreeSet<Vec<usize>> = oracle.maps.iter().map(table_of).collect();
        assert_eq!(a, b, "{}", r.name());
    }
}

fn ac4_vacuity() {
    for (r, e) in [
        (ring("eg2", &[]), vec![3, 0]),
        (ring("matrix", &[2, 2]), vec![1, 0, 0, 0]),
    ] {
        let e = idx(&r, &e);
        let f = r.sub(r.unit_index().unwrap(), e);
        for (set, id) in [
            (ConditionSet::Thm1, ConditionId::Thm1I),
            (ConditionSet::Thm2, ConditionId::Thm2I),
        ] {
            let report = check_conditions(&r, e, set, Mode::All).unwrap();
            assert!(!report.item("i").unwrap().pass);
            assert!(witness_revalidate(&r, e, id, f).unwrap());
        }
    }
}

fn ac5_ei_satisfiable() {
    let r = ring("matrix", &[2, 2]);
    let report = check_conditions(&r, idx(&r, &[1, 0, 0, 0]), ConditionSet::Ei, Mode::All).unwrap();
    assert_eq!(report.items.len(), 6);
    assert!(report.items.iter().all(|i| i.pass) && report.overall);
}

fn ac6_no_nonzero_additive_on_m2z2() {
    let start = Instant::now();
    let r = ring("matrix", &[2, 2]);
    let res = enumerate_reverse_derivable_maps(&r, &SearchConfig::csp()).unwrap();
    assert!(res.complete);
    for m in &res.maps {
        if satisfies_additivity(&r, m) {
            assert!(m.is_zero());
        }
    }
    within(Duration::from_secs(300), "M2(Z2) search", start);
}

fn satisfies_additivity(r: &peirce_core::Ring, m: &MapTable) -> bool {
    (0..r.order()).all(|x| (0..r.order()).all(|y| m.get(r.add(x, y)) == r.add(m.get(x), m.get(y))))
}

fn ac7_peirce_structure() {
    for (r, e) in [
        (ring("matrix", &[2, 2]), vec![1, 0, 0, 0]),
        (ring("eg2", &[]), vec![3, 0]),
    ] {
        let e = idx(&r, &e);
        let d = PeirceDecomposition::new(r.clone(), e).unwrap();
        let comps: Vec<Vec<usize>> = (0..4).map(|c| component(&r, e, c)).collect();
        for (c, set) in Component::ALL.iter().zip(&comps) {
            assert_eq!(d.component(*c), set.as_slice());
        }
        assert_eq!(comps.iter().map(Vec::len).product::<usize>(), r.order());
        let ij = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for (a, &(i, j)) in ij.iter().enumerate() {
            for (b, &(k, l)) in ij.iter().enumerate() {
                for &x in &comps[a] {
                    for &y in &comps[b] {
                        let p = r.mul(x, y);
                        if j == k {
                            assert!(comps[i * 2 + l].binary_search(&p).is_ok());
                        } else {
                            assert_eq!(p, 0);
                        }
                    }
                }
            }
        }
        assert!(d.check_multiplication_rule().pass);
        assert!(d.report().direct);
    }
}

fn ac8_component_conclusions() {
    let r = ring("matrix", &[2, 2]);
    let e = idx(&r, &[1, 0, 0, 0]);
    let d = PeirceDecomposition::new(r.clone(), e).unwrap();
    let comps: Vec<Vec<usize>> = (0..4).map(|c| component(&r, e, c)).collect();
    let names = ["R11", "R12", "R21", "R22"];
    let pos = |n: &str| names.iter().position(|k| *k == n).unwrap();
    let res = enumerate_reverse_derivable_maps(&r, &SearchConfig::csp()).unwrap();
    assert!(res.complete);
    for m in &res.maps {
        if m.get(e) == 0 {
            for (from, to) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
                for &x in &comps[from] {
                    assert!(comps[to].binary_search(&m.get(x)).is_ok());
                }
            }
        }
        let additive = |xs: &[usize], ys: &[usize]| {
            xs.iter().all(|&x| {
                ys.iter()
                    .all(|&y| m.get(r.add(x, y)) == r.add(m.get(x), m.get(y)))
            })
        };
        let report = m.verify_structure(&d).unwrap();
        for item in report
            .items
            .iter()
            .filter(|i| i.status == peirce_core::maps::Status::Pass)
        {
            let id = item.id.as_str();
            let ok = if id == "image_of_idempotent_is_zero" {
                m.get(e) == 0
            } else if id == "additive_on_eR" {
                let left: Vec<usize> = comps[0]
                    .iter()
                    .flat_map(|&a| comps[1].iter().map(move |&b| (a, b)))
                    .map(|(a, b)| r.add(a, b))
                    .collect();
                additive(&left, &left)
            } else if let Some(rest) = id.strip_prefix("maps_") {
                let (a, b) = rest.split_once("_into_").unwrap();
                comps[pos(a)]
                    .iter()
                    .all(|&x| comps[pos(b)].binary_search(&m.get(x)).is_ok())
            } else if let Some(rest) = id.strip_prefix("additive_on_") {
                let (a, b) = rest.split_once("_plus_").unwrap_or((rest, rest));
                additive(&comps[pos(a)], &comps[pos(b)])
            } else {
                panic!("unknown item {id}")
            };
            assert!(ok, "{id}");
        }
    }
}

fn ac9_determinism() {
    let commands: &[&[&str]] = &[
        &["demo", "all"],
        &["ring", "verify", "--catalog", "matrix", "2", "2"],
        &["ring", "idempotents", "--catalog", "eg2"],
        &["ring", "peirce", "--catalog", "eg2", "--idempotent", "3,0"],
        &["ring", "center", "--catalog", "matrix", "2", "2"],
        &[
            "map",
            "classify",
            "--catalog",
            "eg3",
            "5",
            "--map",
            "lambda",
        ],
        &[
            "map",
            "structure",
            "--catalog",
            "matrix",
            "2",
            "2",
            "--map",
            "zero",
            "--idempotent",
            "1,0,0,0",
        ],
        &[
            "conditions",
            "check",
            "--catalog",
            "eg2",
            "--idempotent",
            "3,0",
            "--set",
            "thm1",
        ],
        &[
            "conditions",
            "check",
            "--catalog",
            "matrix",
            "2",
            "2",
            "--idempotent",
            "1,0,0,0",
            "--set",
            "ei",
        ],
        &[
            "search",
            "maps",
            "--catalog",
            "eg1",
            "2",
            "--mode",
            "oracle",
        ],
        &["search", "nonadditive", "--catalog", "eg1", "2"],
        &[
            "search",
            "theorem",
            "--catalog",
            "matrix",
            "2",
            "2",
            "--idempotent",
            "1,0,0,0",
        ],
        &[
            "search",
            "theorem",
            "--catalog",
            "eg2",
            "--idempotent",
            "3,0",
            "--max-ring-size",
            "36",
        ],
    ];
    for args in commands {
        let argv = || {
            std::iter::once("peirce-lab")
                .chain(args.iter().copied())
                .chain(["--format", "json"])
        };
        let a = run_from_args(argv());
        let b = run_from_args(argv());
        assert!(a.stderr.is_empty(), "{args:?}: {}", a.stderr);
        serde_json::from_str::<serde_json::Value>(&a.stdout).expect("valid JSON");
        assert_eq!(a, b, "{args:?}");
    }
}

fn main() {
    let criteria: [(&str, &str, fn()); 9] = [
        (
            "AC1",
            "example fixtures classify as stated",
            ac1_example_fixtures,
        ),
        (
            "AC2",
            "forced values and psi identities on every solution",
            ac2_forced_values,
        ),
        (
            "AC3",
            "csp and oracle enumerations coincide",
            ac3_oracle_equivalence,
        ),
        (
            "AC4",
            "first items of thm1/thm2 fail with 1-e as witness",
            ac4_vacuity,
        ),
        (
            "AC5",
            "all six ei conditions hold on M2(Z2) with E11",
            ac5_ei_satisfiable,
        ),
        (
            "AC6",
            "M2(Z2) has no nonzero additive reverse derivable map",
            ac6_no_nonzero_additive_on_m2z2,
        ),
        (
            "AC7",
            "Peirce directness and multiplication rule",
            ac7_peirce_structure,
        ),
        (
            "AC8",
            "component conclusions hold and re-verify",
            ac8_component_conclusions,
        ),
        (
            "AC9",
            "repeated JSON reports are byte-identical",
            ac9_determinism,
        ),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, what, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {id} {what} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("[FAIL] {id} {what} ({secs:.2}s): {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
