use mubkit::mub::{mub_set, Construction, DEFAULT_CAP};
use mubkit::pauli::{
    clock_op, diagonalizes, eigenvalue, mat_mul, operator_family, pauli_mub_correspondence,
    shift_op,
};
use mubkit::{CyclotomicInt, ExactMatrix};

#[test]
fn commutation_relation() {
    for d in 2..=7 {
        let (x, z) = (shift_op(d), clock_op(d));
        let zx = mat_mul(&z, &x).unwrap();
        let xz = mat_mul(&x, &z).unwrap();
        // Z X = ω X Z
        let w = CyclotomicInt::root_of_unity(d as u32, 1);
        let rows: Vec<Vec<CyclotomicInt>> = xz
            .numerator_rows()
            .iter()
            .map(|r| r.iter().map(|e| e * &w).collect())
            .collect();
        assert_eq!(zx, ExactMatrix::from_rows(rows).unwrap(), "d={d}");
        assert_eq!(x.pow(d as u32), ExactMatrix::identity(d));
        assert_eq!(z.pow(d as u32), ExactMatrix::identity(d));
    }
}

#[test]
fn perfect_matching_for_small_primes() {
    for p in [2, 3, 5, 7, 11] {
        let r = pauli_mub_correspondence(p).unwrap();
        assert!(r.passed, "p={p}");
        assert_eq!(r.matching.as_ref().unwrap().len() as u64, p + 1);
        assert_eq!(r.eigenvalues_are_pth_roots(), p != 2, "p={p}");
    }
    assert!(pauli_mub_correspondence(4).is_err());
}

#[test]
fn computational_basis_diagonalizes_only_z() {
    let set = mub_set(5, Construction::Auto, DEFAULT_CAP).unwrap();
    let ops = operator_family(5);
    let hits: Vec<_> = ops
        .iter()
        .filter(|op| diagonalizes(&op.matrix, &set.bases[0]))
        .map(|op| op.label.clone())
        .collect();
    assert_eq!(hits, ["Z"]);
    let v = &set.bases[0].vectors[2];
    assert_eq!(
        eigenvalue(&clock_op(5), v),
        Some(CyclotomicInt::root_of_unity(5, 2))
    );
    assert_eq!(eigenvalue(&shift_op(5), v), None);
}
