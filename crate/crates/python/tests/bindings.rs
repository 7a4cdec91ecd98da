//! Drives the module through an embedded interpreter, so the bindings are
//! exercised by `cargo test` without building a wheel.

use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = wrap_pymodule!(pymubkit::pymubkit)(py);
        let globals = PyDict::new(py);
        globals.set_item("pymubkit", m).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("python code raised");
        }
    });
}

#[test]
fn mub_set_round_trip() {
    run(c"
s = pymubkit.MubSet(5)
assert len(s) == 6 and s.verify().passed
assert pymubkit.verify_json(s.to_json()).pairs_checked == 15
assert pymubkit.MubSet.from_json(s.to_json()).to_json() == s.to_json()
");
}

#[test]
fn errors_become_value_error() {
    run(c"
for bad in [lambda: pymubkit.MubSet(0), lambda: pymubkit.MubSet(4, 'sideways'),
            lambda: pymubkit.verify_json('{'), lambda: pymubkit.plane(6)]:
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError('no error')
");
}

#[test]
fn bell_and_geometry() {
    run(c"
f = pymubkit.BellFamily(3)
assert f.passed and f.layers == 3 and len(f) == 27
lines, iso = pymubkit.lifted_fano_plane()
assert iso
assert pymubkit.hensel_lift([1, 1, 0, 0, 1]) == [1, 3, 2, 0, 1]
");
}
