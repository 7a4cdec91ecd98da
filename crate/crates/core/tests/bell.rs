use mubkit::entangle::{
    bell_basis, bell_composite, bell_even, bell_family, bell_odd, partial_trace_first,
    partial_trace_second, verify_bell_family, verify_bell_family_at_level, BellCheck,
    RootConvention,
};
use mubkit::Error;

#[test]
fn families_verify_for_small_dimensions() {
    for d in 2..=8 {
        let f = bell_family(d, 128).unwrap();
        let r = verify_bell_family(&f);
        assert!(r.passed, "d={d}: {:?}", r.failures.first());
        assert_eq!(r.states, f.iter().count());
    }
}

#[test]
fn fourier_bell_basis_has_d_squared_states() {
    let f = bell_basis(5).unwrap();
    assert_eq!(f.iter().count(), 25);
    let r = verify_bell_family(&f);
    assert!(r.passed && r.maximally_entangled);
}

#[test]
fn reduced_states_are_maximally_mixed() {
    let f = bell_even(2).unwrap();
    for s in f.iter() {
        assert!(partial_trace_first(&s.vector).unwrap().is_maximally_mixed());
        assert!(partial_trace_second(&s.vector)
            .unwrap()
            .is_maximally_mixed());
    }
}

#[test]
fn layer_counts() {
    assert_eq!(bell_even(2).unwrap().layers(), 4);
    assert_eq!(
        bell_odd(3, 1, RootConvention::Characteristic)
            .unwrap()
            .layers(),
        3
    );
    // d = 6: one layer per non-computational basis of the 3-element set.
    assert_eq!(bell_composite(6).unwrap().layers(), 2);
}

#[test]
fn dimension_root_convention_breaks_d9() {
    // With ω_9 in place of ω_3 the odd field form loses orthonormality for
    // m > 1; for m = 1 both conventions coincide.
    let ok = bell_odd(3, 1, RootConvention::Dimension).unwrap();
    assert!(verify_bell_family(&ok).passed);
    let f = bell_odd(3, 2, RootConvention::Dimension).unwrap();
    let r = verify_bell_family(&f);
    assert!(!r.passed);
    assert!(r.failures.iter().any(|x| x.check == BellCheck::Orthonormal));
    assert!(verify_bell_family(&bell_odd(3, 2, RootConvention::Characteristic).unwrap()).passed);
}

#[test]
fn wrong_sector_level_is_reported() {
    let f = bell_even(2).unwrap();
    let r = verify_bell_family_at_level(&f, 2);
    assert!(!r.passed);
    assert!(!r.unbiased_within_h);
}

#[test]
fn invalid_dimensions() {
    assert!(matches!(
        bell_family(1, 128),
        Err(Error::InvalidDimension(1))
    ));
    assert!(matches!(
        bell_family(500, 128),
        Err(Error::DimensionTooLarge { .. })
    ));
}
