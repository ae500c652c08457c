use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peirce-lab"))
        .args(args)
        .env_remove("PEIRCE_LAB_MAX_RING_SIZE")
        .output()
        .expect("spawn peirce-lab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let v = serde_json::from_str(&stdout(&o))
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

#[test]
fn demo_json_matches_golden_files() {
    for which in ["eg1", "eg2", "eg3", "all"] {
        let o = run(&["demo", which, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let got = stdout(&o);
        let path = golden_path(&format!("demo_{which}"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &got).unwrap();
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "demo {which} drifted from {}", path.display());
    }
}

#[test]
fn demo_eg2_text_output() {
    let o = run(&["demo", "eg2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("idempotent (3,0) nontrivial: yes"));
    assert!(text.contains("thm1(i) FAIL (witness"));
    assert!(text.contains("additive reverse derivable: yes"));
}

#[test]
fn zn6_idempotents() {
    let (code, v) = json(&["ring", "idempotents", "--catalog", "zn", "6"]);
    assert_eq!(code, 0);
    let els: Vec<u64> = v["idempotents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["element"][0].as_u64().unwrap())
        .collect();
    assert_eq!(els, vec![0, 1, 3, 4]);
    let text = stdout(&run(&["ring", "idempotents", "--catalog", "zn", "6"]));
    assert!(text.contains("idempotents: {(0), (1), (3), (4)}"));
}

#[test]
fn lambda_classification() {
    let (code, v) = json(&[
        "map",
        "classify",
        "--catalog",
        "eg3",
        "5",
        "--map",
        "lambda",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["reverse_derivation"]["pass"], true);
    assert_eq!(v["classification"]["derivation"]["pass"], false);
}

#[test]
fn text_and_json_verdicts_agree() {
    let cases: &[&[&str]] = &[
        &["ring", "verify", "--catalog", "matrix", "2", "2"],
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
            "conditions",
            "check",
            "--catalog",
            "matrix",
            "2",
            "2",
            "--idempotent",
            "1,0,0,0",
            "--set",
            "thm2",
        ],
        &[
            "map",
            "structure",
            "--catalog",
            "eg2",
            "--map",
            "eg2_map",
            "--idempotent",
            "3,0",
        ],
        &[
            "map",
            "classify",
            "--catalog",
            "eg1",
            "5",
            "--expr",
            "vars m,n,p : (m, n*p, -p)",
        ],
    ];
    for args in cases {
        let (jcode, v) = json(args);
        let t = run(args);
        assert_eq!(t.status.code(), Some(jcode), "{args:?}");
        let text = stdout(&t);
        // Count PASS/FAIL verdicts on both sides.
        let fails_text = text.matches("FAIL").count();
        let fails_json = count_failures(&v);
        assert_eq!(fails_text, fails_json, "{args:?}\n{text}");
    }
}

fn count_failures(v: &Value) -> usize {
    match v {
        Value::Object(map) => {
            let own = match (map.get("pass"), map.get("status"), map.get("overall")) {
                (Some(Value::Bool(false)), _, _) => 1,
                (_, Some(Value::String(s)), _) if s == "fail" => 1,
                _ => 0,
            };
            let overall = matches!(map.get("overall"), Some(Value::Bool(false))) as usize;
            own + overall
                + map
                    .iter()
                    .filter(|(k, _)| *k != "overall")
                    .map(|(_, x)| count_failures(x))
                    .sum::<usize>()
        }
        Value::Array(xs) => xs.iter().map(count_failures).sum(),
        _ => 0,
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["ring", "verify", "--catalog", "eg2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "conditions",
            "check",
            "--catalog",
            "eg2",
            "--idempotent",
            "3,0",
            "--set",
            "thm1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(run(&["ring", "verify"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "ring",
            "verify",
            "--catalog",
            "zn",
            "6",
            "--ring-file",
            "x.json"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["ring", "verify", "--ring-file", "/does/not/exist.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "maps", "--catalog", "eg2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["ring", "peirce", "--catalog", "eg1", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "nonadditive", "--catalog", "eg1", "2"])
            .status
            .code(),
        Some(1),
        "a witness was found"
    );
    let guarded = Command::new(env!("CARGO_BIN_EXE_peirce-lab"))
        .args(["ring", "verify", "--catalog", "zn", "50"])
        .env("PEIRCE_LAB_MAX_RING_SIZE", "10")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(3));
}

#[test]
fn ring_and_map_files() {
    let dir = std::env::temp_dir().join(format!("peirce-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ring = dir.join("z2xz2.json");
    std::fs::write(
        &ring,
        r#"{"name": "Z2xZ2", "moduli": [2, 2], "mul": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "unit": [1, 1]}"#,
    )
    .unwrap();
    let map = dir.join("map.json");
    std::fs::write(
        &map,
        r#"{"type": "table", "entries": [[[0,0],[0,0]], [[0,1],[0,0]], [[1,0],[0,0]], [[1,1],[0,0]]]}"#,
    )
    .unwrap();
    let r = ring.to_str().unwrap();
    let (code, v) = json(&[
        "map",
        "classify",
        "--ring-file",
        r,
        "--map-file",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["additive"]["pass"], true);
    let (code, v) = json(&["ring", "center", "--ring-file", r]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 4);

    std::fs::write(&map, r#"{"type": "table", "entries": []}"#).unwrap();
    let o = run(&[
        "map",
        "classify",
        "--ring-file",
        r,
        "--map-file",
        map.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&ring, "{not json").unwrap();
    assert_eq!(
        run(&["ring", "verify", "--ring-file", r]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn repeated_json_runs_are_identical() {
    let cmds: &[&[&str]] = &[
        &["demo", "all", "--format", "json"],
        &[
            "search",
            "theorem",
            "--catalog",
            "matrix",
            "2",
            "2",
            "--idempotent",
            "1,0,0,0",
            "--format",
            "json",
        ],
        &[
            "search",
            "maps",
            "--catalog",
            "eg1",
            "2",
            "--mode",
            "oracle",
            "--format",
            "json",
        ],
    ];
    for args in cmds {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
