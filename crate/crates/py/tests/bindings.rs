use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyModule;

fn run(code: &str) {
    Python::attach(|py| {
        let m = PyModule::new(py, "normlab_py").unwrap();
        normlab_py::register(&m).unwrap();
        py.import("sys").unwrap().getattr("modules").unwrap().set_item("normlab_py", &m).unwrap();
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn constants_and_reports() {
    run(r#"
import json, math
import normlab_py as nl
e, s, r = nl.regular_polygon(3).constants()
assert abs(e - 1.0) < 1e-9 and s == r
rep = nl.sharp_hexagon(1.0).smoothness([0.0, 2.0])
assert abs(rep.eps - 1.0) < 1e-12 and not rep.is_smooth
assert json.loads(rep.to_json())["eps"] == rep.eps
sq = nl.Space('{"type":"lp","p":"inf","dim":2}')
assert sq.rho([1.0, 1.0], [1.0, 0.0]) == (1.0, 0.0)
assert sq.support_set([1.0, 1.0]) in ([[1.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [1.0, 0.0]])
"#);
}

#[test]
fn errors_map_to_python_exceptions() {
    run(r#"
import normlab_py as nl
try:
    nl.Space({"type": "lp", "p": 2.0, "dim": 2}).constants()
    raise AssertionError("expected CapabilityError")
except nl.CapabilityError:
    pass
try:
    nl.regular_polygon(4).norm([1.0, 2.0, 3.0])
    raise AssertionError("expected ValueError")
except ValueError:
    pass
try:
    nl.run_suite("nope")
    raise AssertionError("expected ValueError")
except ValueError:
    pass
"#);
}
