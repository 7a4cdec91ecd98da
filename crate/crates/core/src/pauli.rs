//! Shift and clock operators and their eigenbases.
//!
//! `X|n⟩ = |n+1 mod d⟩`, `Z|n⟩ = ω_d^n |n⟩`. For a prime `p` the eigenbases
//! of `Z, X, XZ, …, XZ^{p−1}` are a complete set of MUBs; the pairing with the
//! constructed bases is found by matching rather than assumed.

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::mub::{mub_set, Basis, Construction, MubSet, StateVector, DEFAULT_CAP};

/// Cyclic shift `X_d`.
pub fn shift_op(d: usize) -> ExactMatrix {
    let rows = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| CyclotomicInt::from_integer(1, i64::from(i == (j + 1) % d)))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("square")
}

/// Clock `Z_d = diag(1, ω_d, …, ω_d^{d−1})`.
pub fn clock_op(d: usize) -> ExactMatrix {
    ExactMatrix::diagonal(
        (0..d)
            .map(|n| CyclotomicInt::root_of_unity(d as u32, n as i64))
            .collect(),
    )
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.checked_mul(b)
}

pub fn mat_apply(a: &ExactMatrix, v: &StateVector) -> Result<StateVector> {
    a.apply(v)
}

/// Whether `U·v` is a scalar multiple of `v`: with `w = U_num·v` and `i` the
/// first nonzero index of `v`, checks `w_j·v_i = w_i·v_j` for all `j`.
pub fn is_eigenvector(u: &ExactMatrix, v: &StateVector) -> bool {
    if u.rows() != u.cols() || u.cols() != v.dim() {
        return false;
    }
    let Some(i) = v.entries().iter().position(|e| !e.is_zero()) else {
        return false;
    };
    let w = u.apply_numerator(v.entries());
    let order = w[0].order();
    let vi = v.entries()[i].rescale_order(order).expect("lcm order");
    let wi = &w[i];
    w.iter().zip(v.entries()).all(|(wj, vj)| {
        let vj = vj.rescale_order(order).expect("lcm order");
        wj * &vi == wi * &vj
    })
}

/// The eigenvalue of `v` under `U` when `U` has no prefactor and the first
/// nonzero entry of `v` is a root of unity.
pub fn eigenvalue(u: &ExactMatrix, v: &StateVector) -> Option<CyclotomicInt> {
    if !is_eigenvector(u, v) || !u.denominator().eq(&1.into()) || u.radicand() != 1 {
        return None;
    }
    let i = v.entries().iter().position(|e| !e.is_zero())?;
    let vi = &v.entries()[i];
    let k = vi.as_root_of_unity()?;
    let w = u.apply_numerator(v.entries());
    let inv = CyclotomicInt::root_of_unity(vi.order(), -(k as i64));
    let order = crate::cyclotomic::common_order(w[i].order(), inv.order());
    Some(w[i].rescale_order(order).ok()? * inv.rescale_order(order).ok()?)
}

/// `U·v = λ·v` for every vector of `B`.
pub fn diagonalizes(u: &ExactMatrix, b: &Basis) -> bool {
    !b.vectors.is_empty() && b.vectors.iter().all(|v| is_eigenvector(u, v))
}

/// A labelled member of the operator family.
#[derive(Clone, Debug)]
pub struct PauliOperator {
    pub label: String,
    pub matrix: ExactMatrix,
}

/// `Z` followed by `X Z^k` for `k = 0 … d−1`.
pub fn operator_family(d: usize) -> Vec<PauliOperator> {
    let x = shift_op(d);
    let z = clock_op(d);
    let mut ops = vec![PauliOperator {
        label: "Z".into(),
        matrix: z.clone(),
    }];
    for k in 0..d {
        let label = match k {
            0 => "X".to_string(),
            1 => "XZ".to_string(),
            _ => format!("XZ^{k}"),
        };
        ops.push(PauliOperator {
            label,
            matrix: x.checked_mul(&z.pow(k as u32)).expect("square"),
        });
    }
    ops
}

#[derive(Clone, Debug)]
pub struct MatchedPair {
    pub basis: usize,
    pub operator: String,
    /// Eigenvalue of each basis vector, in vector order.
    pub eigenvalues: Vec<CyclotomicInt>,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub p: u64,
    pub operators: Vec<String>,
    /// `table[basis][operator]`: whether the basis diagonalizes the operator.
    pub table: Vec<Vec<bool>>,
    /// The matching, when a perfect one exists.
    pub matching: Option<Vec<MatchedPair>>,
    pub passed: bool,
}

impl CorrespondenceReport {
    /// Every matched eigenvalue satisfies `λ^p = 1`.
    pub fn eigenvalues_are_pth_roots(&self) -> bool {
        self.matching.as_ref().is_some_and(|m| {
            m.iter()
                .flat_map(|pair| &pair.eigenvalues)
                .all(|l| l.pow(self.p).is_one())
        })
    }
}

/// Matches the `p+1` constructed bases with the operators `{Z, XZ^k}`.
pub fn pauli_mub_correspondence(p: u64) -> Result<CorrespondenceReport> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let set = mub_set(p, Construction::Auto, DEFAULT_CAP)?;
    Ok(correspondence_for(&set, p))
}

/// Matching report for an arbitrary set in prime dimension `p`.
pub fn correspondence_for(set: &MubSet, p: u64) -> CorrespondenceReport {
    let ops = operator_family(p as usize);
    let table: Vec<Vec<bool>> = set
        .bases
        .iter()
        .map(|b| ops.iter().map(|op| diagonalizes(&op.matrix, b)).collect())
        .collect();
    let matching = perfect_matching(&table).map(|assign| {
        assign
            .into_iter()
            .enumerate()
            .map(|(bi, oi)| MatchedPair {
                basis: bi,
                operator: ops[oi].label.clone(),
                eigenvalues: set.bases[bi]
                    .vectors
                    .iter()
                    .map(|v| eigenvalue(&ops[oi].matrix, v).expect("matched eigenvector"))
                    .collect(),
            })
            .collect::<Vec<_>>()
    });
    CorrespondenceReport {
        p,
        operators: ops.iter().map(|o| o.label.clone()).collect(),
        passed: matching.is_some() && set.bases.len() == ops.len(),
        table,
        matching,
    }
}

/// Perfect matching of rows to columns via augmenting paths.
fn perfect_matching(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let rows = adj.len();
    let cols = adj.first().map_or(0, Vec::len);
    if rows != cols {
        return None;
    }
    let mut col_owner: Vec<Option<usize>> = vec![None; cols];
    fn augment(
        r: usize,
        adj: &[Vec<bool>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..adj[r].len() {
            if adj[r][c] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|r2| augment(r2, adj, seen, owner)) {
                    owner[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    for r in 0..rows {
        let mut seen = vec![false; cols];
        if !augment(r, adj, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut assign = vec![0; rows];
    for (c, r) in col_owner.iter().enumerate() {
        assign[r.expect("perfect")] = c;
    }
    Some(assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::fourier_basis;

    fn int(c: i64) -> CyclotomicInt {
        CyclotomicInt::from_integer(1, c)
    }

    #[test]
    fn qubit_paulis() {
        let sx = ExactMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let sz = ExactMatrix::diagonal(vec![int(1), int(-1)]);
        assert_eq!(shift_op(2), sx);
        assert_eq!(clock_op(2), sz);
        let i = CyclotomicInt::root_of_unity(4, 1);
        let sy = ExactMatrix::from_rows(vec![
            vec![CyclotomicInt::zero(4), -i.clone()],
            vec![i.clone(), CyclotomicInt::zero(4)],
        ])
        .unwrap();
        assert_eq!(sx.checked_mul(&sz).unwrap().scale_by(&i), sy);
    }

    #[test]
    fn shift_moves_basis_vectors() {
        let v = StateVector::basis_vector(3, 0);
        let w = mat_apply(&shift_op(3), &v).unwrap();
        assert_eq!(w, StateVector::basis_vector(3, 1));
        let id = ExactMatrix::identity(3);
        assert_eq!(mat_apply(&id, &w).unwrap(), w);
    }

    #[test]
    fn fourier_eigenvalues_of_shift() {
        for d in 2..7 {
            let f = fourier_basis(d);
            assert!(diagonalizes(&shift_op(d), &f));
            for (k, v) in f.vectors.iter().enumerate() {
                let l = eigenvalue(&shift_op(d), v).unwrap();
                let expected = CyclotomicInt::root_of_unity(d as u32, -(k as i64));
                let order = crate::cyclotomic::common_order(l.order(), expected.order());
                assert_eq!(
                    l.rescale_order(order).unwrap(),
                    expected.rescale_order(order).unwrap()
                );
            }
        }
        assert!(!diagonalizes(&clock_op(2), &fourier_basis(2)));
        assert!(diagonalizes(&clock_op(5), &Basis::computational(5)));
    }

    #[test]
    fn matching_is_found_for_small_primes() {
        let r = pauli_mub_correspondence(3).unwrap();
        assert!(r.passed);
        assert!(r.eigenvalues_are_pth_roots());
        assert!(pauli_mub_correspondence(4).is_err());
    }

    #[test]
    fn matching_rejects_non_square_tables() {
        assert!(perfect_matching(&[vec![true, true]]).is_none());
        assert!(perfect_matching(&[vec![true, false], vec![true, false]]).is_none());
        assert_eq!(
            perfect_matching(&[vec![true, true], vec![true, false]]),
            Some(vec![1, 0])
        );
    }
}
