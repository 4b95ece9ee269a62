use std::ffi::CString;
use std::sync::Once;

use ::bkp::bkp as module;
use pyo3::prelude::*;

fn init() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| {
        pyo3::append_to_inittab!(module);
        Python::initialize();
    });
}

fn run(code: &str) {
    init();
    let code = CString::new(code).unwrap();
    Python::attach(|py| py.run(&code, None, None)).unwrap_or_else(|e| panic!("{e}"));
}

#[test]
fn tau_matches_oracle() {
    run(r#"
import bkp
p = bkp.Provider.spin_hurwitz(2, 2)
for mu in ["1", "2,1", [3, 1], [4, 2, 1]]:
    assert bkp.tau_coeff(p, mu) == bkp.oracle_coeff(p, mu)
t = bkp.Provider.trivial(2)
assert bkp.tau_coeff(t, [2, 1]) == bkp.oracle_coeff(t, [2, 1])
assert bkp.tau_coeff(t, [2, 1]).coeff(3, 1) == 0
"#);
}

#[test]
fn exact_fractions() {
    run(r#"
import bkp
from fractions import Fraction
h = bkp.hurwitz_single(1, 2, 2)
assert h.terms() == [((0, 0), Fraction(1, 2)), ((0, 1), Fraction(1, 6)), ((0, 2), Fraction(1, 36))]
assert str(bkp.specialize_delta("2,1")) == "1/6*p^3"
"#);
}

#[test]
fn reports_and_errors() {
    run(r#"
import bkp
p = bkp.Provider.completed_cycles(2, 2)
r = bkp.verify_wave(p, 2, 10, 4)
assert r["suite"] == "wave" and r["status"] == "pass"
try:
    bkp.verify_ks(2, 2, 5, 3)
    raise AssertionError
except ValueError as e:
    assert "insufficient window" in str(e)
try:
    bkp.Provider.spin_hurwitz(3, 2)
    raise AssertionError
except ValueError:
    pass
"#);
}
