use std::ffi::CString;
use std::sync::Once;

use peirce_lab::peirce_lab;
use pyo3::prelude::*;

static INIT: Once = Once::new();

fn run(code: &str) {
    INIT.call_once(|| {
        pyo3::append_to_inittab!(peirce_lab);
        Python::initialize();
    });
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn ring_and_map_round_trip() {
    run(r#"
import peirce_lab as pl
r = pl.Ring.catalog("eg2")
assert r.order == 36 and r.unit == [1, 0]
assert r.add([3, 0], [4, 0]) == [1, 0]
f = pl.Map(r, catalog="eg2_map")
c = f.classify()
assert c["additive"]["pass"] and c["reverse_derivation"]["pass"]
assert f([2, 5]) == [0, 5]
s = f.structure([3, 0])
assert s["items"][0]["id"] == "image_of_idempotent_is_zero"
"#);
}

#[test]
fn errors_map_to_python_exceptions() {
    run(r#"
import peirce_lab as pl
try:
    pl.Ring.catalog("nope")
except pl.PeirceError as e:
    assert "nope" in str(e)
else:
    raise AssertionError
try:
    pl.Map(pl.Ring.catalog("eg2"), catalog="lambda")
except pl.PeirceError:
    pass
else:
    raise AssertionError
assert issubclass(pl.GuardError, pl.PeirceError)
"#);
}

#[test]
fn search_reports_are_dicts() {
    run(r#"
import peirce_lab as pl
rep = pl.Ring.catalog("zn", [4]).search(mode="oracle")
assert rep["complete"] and rep["verdict"]["solutions"] == len(rep["maps"])
assert all(m["map"]["type"] == "table" for m in rep["maps"])
"#);
}
