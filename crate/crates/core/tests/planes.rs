use mubkit::geometry::{
    fano_from_gf8, find_isomorphism, is_isomorphism, lifted_fano, projective_plane,
    verify_plane_axioms, IncidencePlane,
};
use mubkit::RingContext;

#[test]
fn desarguesian_planes_satisfy_the_axioms() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let plane = projective_plane(q).unwrap();
        let r = verify_plane_axioms(&plane);
        let n = (q * q + q + 1) as usize;
        assert!(r.passed, "q={q}: {:?}", r.failure);
        assert_eq!((r.points, r.lines, r.order), (n, n, Some(q as usize)));
    }
    assert!(projective_plane(6).is_err());
}

#[test]
fn fano_and_lifted_plane_are_isomorphic() {
    let fano = fano_from_gf8();
    assert!(verify_plane_axioms(&fano).passed);
    let lifted = lifted_fano(&RingContext::new(3).unwrap()).unwrap();
    assert_eq!(lifted.table.len(), 7);
    let map = find_isomorphism(&lifted.plane, &fano).expect("isomorphic");
    assert!(is_isomorphism(&lifted.plane, &fano, &map));
    assert!(find_isomorphism(&fano, &projective_plane(2).unwrap()).is_some());
    assert!(lifted_fano(&RingContext::new(2).unwrap()).is_err());
}

#[test]
fn broken_plane_is_rejected() {
    let fano = fano_from_gf8();
    let mut lines = fano.lines.clone();
    lines.pop();
    let broken = IncidencePlane::new(fano.points.clone(), lines);
    let r = verify_plane_axioms(&broken);
    assert!(!r.passed);
    assert!(r.failure.is_some());
    assert!(find_isomorphism(&broken, &fano).is_none());
}
