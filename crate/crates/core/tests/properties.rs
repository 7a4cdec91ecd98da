mod common;

const CASES: u32 = 1000;

#[test]
fn cyclotomic_ring_axioms() {
    common::cyclotomic_ring_axioms(CASES).unwrap();
}

#[test]
fn conjugation_is_an_involutive_automorphism() {
    common::conjugation_involution(CASES).unwrap();
}

#[test]
fn abs_squared_is_multiplicative() {
    common::abs_squared_multiplicative(CASES).unwrap();
}

#[test]
fn field_trace_is_linear_and_balanced() {
    common::trace_linearity_and_balance(CASES).unwrap();
}

#[test]
fn frobenius_is_an_automorphism() {
    common::frobenius_laws(CASES).unwrap();
}

#[test]
fn frobenius_exhaustive_small_rings() {
    for m in 1..=4 {
        assert!(common::ring_frobenius_exhaustive(m), "m = {m}");
    }
}

#[test]
fn tensor_products_preserve_orthonormality_and_unbiasedness() {
    common::tensor_preservation(CASES).unwrap();
}
