//! Generalized Bell bases and exact partial traces.
//!
//! Every family here has the shape `Σ_n v[n] |n, n+h⟩` where `v` runs over a
//! "layer" basis (Fourier, ring, field or tensor construction) and `n+h` is
//! taken mod `d`. Two-particle states use the flat index `n·d + n′`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith;
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::finite_field::{elements_by_code, FieldContext};
use crate::matrix::ExactMatrix;
use crate::mub::{
    field_exponent, fourier_basis, mub_composite_capped, mub_even_capped,
    mub_odd_prime_power_capped, Basis, BasisLabel, Route, StateVector, DEFAULT_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellState {
    pub h: usize,
    /// Layer (partial basis) index.
    pub a: usize,
    /// Vector index within the layer.
    pub b: usize,
    pub vector: StateVector,
}

/// `states[h][a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellFamily {
    pub dim: usize,
    pub route: Route,
    pub layer_labels: Vec<String>,
    pub states: Vec<Vec<Vec<BellState>>>,
}

impl BellFamily {
    pub fn layers(&self) -> usize {
        self.layer_labels.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BellState> {
        self.states.iter().flatten().flatten()
    }

    pub fn state(&self, h: usize, a: usize, b: usize) -> &BellState {
        &self.states[h][a][b]
    }
}

/// `Σ_n v[n] |n, (n+h) mod d⟩`.
pub fn entangle_vector(v: &StateVector, h: usize) -> StateVector {
    let d = v.dim();
    let zero = CyclotomicInt::zero(v.order());
    let mut entries = vec![zero; d * d];
    for (n, x) in v.entries().iter().enumerate() {
        entries[n * d + (n + h) % d] = x.clone();
    }
    StateVector::new(entries, v.scale_sq())
}

/// Family whose layer `a` at shift `h` entangles the vectors of `layers[a]`.
pub fn family_from_layers(d: usize, layers: &[Basis], route: Route) -> Result<BellFamily> {
    if layers.iter().any(|l| l.dim() != d || l.vectors.len() != d) {
        return Err(Error::DimensionMismatch(format!(
            "layers must hold {d} vectors of dimension {d}"
        )));
    }
    let states = (0..d)
        .map(|h| {
            layers
                .iter()
                .enumerate()
                .map(|(a, layer)| {
                    layer
                        .vectors
                        .iter()
                        .enumerate()
                        .map(|(b, v)| BellState {
                            h,
                            a,
                            b,
                            vector: entangle_vector(v, h),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(BellFamily {
        dim: d,
        route,
        layer_labels: layers
            .iter()
            .map(|l| {
                l.label
                    .parameter
                    .clone()
                    .unwrap_or_else(|| l.label.route.to_string())
            })
            .collect(),
        states,
    })
}

fn check_dim(d: u64, cap: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if d > cap {
        return Err(Error::DimensionTooLarge { dim: d, cap });
    }
    Ok(())
}

/// `|B_{h,k}⟩ = Σ_n ω_d^{kn} |n, n+h⟩ / √d` (one layer; `b = k`).
pub fn bell_basis(d: usize) -> Result<BellFamily> {
    check_dim(d as u64, DEFAULT_CAP)?;
    family_from_layers(d, &[fourier_basis(d)], Route::Fourier)
}

/// Ring form: layer `a ∈ T_m`, vector `b ∈ T_m`, amplitude `i^{tr[(a+2b)n]}`.
pub fn bell_even(m: u32) -> Result<BellFamily> {
    bell_even_capped(m, DEFAULT_CAP)
}

pub fn bell_even_capped(m: u32, cap: u64) -> Result<BellFamily> {
    let set = mub_even_capped(m, cap)?;
    family_from_layers(set.dim, &set.bases[1..], Route::Ring)
}

/// Root of unity carrying the field trace in [`bell_odd`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootConvention {
    /// `ω_p^{tr(…)}`, consistent with the single-particle MUB formula.
    #[default]
    Characteristic,
    /// `ω_d^{tr(…)}` with `d = p^m` and the trace read as an integer in `0..p`.
    Dimension,
}

/// Field form for odd `p`: amplitude `ω^{tr[(a·n + b)·n]}`.
pub fn bell_odd(p: u64, m: u32, convention: RootConvention) -> Result<BellFamily> {
    bell_odd_capped(p, m, convention, DEFAULT_CAP)
}

pub fn bell_odd_capped(p: u64, m: u32, convention: RootConvention, cap: u64) -> Result<BellFamily> {
    match convention {
        RootConvention::Characteristic => {
            let set = mub_odd_prime_power_capped(p, m, cap)?;
            family_from_layers(set.dim, &set.bases[1..], Route::Field)
        }
        RootConvention::Dimension => {
            // validates p, m and the cap
            let set = mub_odd_prime_power_capped(p, m, cap)?;
            let d = set.dim;
            let ctx = FieldContext::new(p as u32, m as usize)?;
            let elements = elements_by_code(&ctx);
            let layers: Vec<Basis> = elements
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    let vectors = elements
                        .iter()
                        .map(|b| {
                            let exps: Vec<i64> = elements
                                .iter()
                                .map(|n| field_exponent(a, b, n) as i64)
                                .collect();
                            StateVector::from_phases(d as u32, &exps, d as u64)
                        })
                        .collect();
                    Basis::new(
                        vectors,
                        BasisLabel {
                            index: ai + 1,
                            route: Route::Field,
                            parameter: Some(format!("a={a}")),
                        },
                    )
                })
                .collect();
            family_from_layers(d, &layers, Route::Field)
        }
    }
}

/// Tensor form: the non-computational bases of the composite MUB set as
/// layers (`min_i p_i^{e_i}` of them). For a prime power this is the full
/// prime-power family.
pub fn bell_composite(d: u64) -> Result<BellFamily> {
    bell_composite_capped(d, DEFAULT_CAP)
}

pub fn bell_composite_capped(d: u64, cap: u64) -> Result<BellFamily> {
    check_dim(d, cap)?;
    let set = mub_composite_capped(d, cap)?;
    family_from_layers(set.dim, &set.bases[1..], set.provenance.route)
}

/// Refined family for any `d ≥ 2`: ring, field (`ω_p`) or tensor form.
pub fn bell_family(d: u64, cap: u64) -> Result<BellFamily> {
    check_dim(d, cap)?;
    match arith::prime_power(d) {
        Some((2, m)) => bell_even_capped(m, cap),
        Some((p, m)) => bell_odd_capped(p, m, RootConvention::Characteristic, cap),
        None => bell_composite_capped(d, cap),
    }
}

fn split_square(n: usize) -> Result<usize> {
    let d = (n as f64).sqrt().round() as usize;
    if d * d == n {
        Ok(d)
    } else {
        Err(Error::DimensionMismatch(format!(
            "{n} is not a perfect square; supply the split explicitly"
        )))
    }
}

/// `ρ₁ = tr₂ |v⟩⟨v|` for a state of a `left × right` system.
pub fn partial_trace_second_split(
    v: &StateVector,
    left: usize,
    right: usize,
) -> Result<ExactMatrix> {
    reduced(v, left, right, true)
}

/// `ρ₂ = tr₁ |v⟩⟨v|` for a state of a `left × right` system.
pub fn partial_trace_first_split(
    v: &StateVector,
    left: usize,
    right: usize,
) -> Result<ExactMatrix> {
    reduced(v, left, right, false)
}

/// `tr₂ |v⟩⟨v|` for a state of dimension `d²`.
pub fn partial_trace_second(v: &StateVector) -> Result<ExactMatrix> {
    let d = split_square(v.dim())?;
    reduced(v, d, d, true)
}

/// `tr₁ |v⟩⟨v|` for a state of dimension `d²`.
pub fn partial_trace_first(v: &StateVector) -> Result<ExactMatrix> {
    let d = split_square(v.dim())?;
    reduced(v, d, d, false)
}

fn reduced(v: &StateVector, left: usize, right: usize, keep_left: bool) -> Result<ExactMatrix> {
    if left * right != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{left}x{right} split of a vector of dimension {}",
            v.dim()
        )));
    }
    let e = v.entries();
    let at = |kept: usize, traced: usize| {
        if keep_left {
            &e[kept * right + traced]
        } else {
            &e[traced * right + kept]
        }
    };
    let (kept, traced) = if keep_left {
        (left, right)
    } else {
        (right, left)
    };
    let order = v.order();
    let mut rows = vec![vec![CyclotomicInt::zero(order); kept]; kept];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for t in 0..traced {
                let (x, y) = (at(i, t), at(j, t));
                if !x.is_zero() && !y.is_zero() {
                    *cell = &*cell + &(x * &y.conjugate());
                }
            }
        }
    }
    ExactMatrix::from_rows_scaled(rows, BigInt::from(v.scale_sq()), 1)
}

/// Which structural check a failing state pair violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellCheck {
    /// Same `h` and layer: must be orthonormal.
    Orthonormal,
    /// Same `h`, different layers: `|overlap|² = 1/d_s`.
    Unbiased,
    /// Different `h`: overlap must vanish.
    Orthogonal,
    /// Reduced state is not `I/d`.
    Entangled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellFailure {
    pub check: BellCheck,
    pub left: (usize, usize, usize),
    pub right: (usize, usize, usize),
    pub value: CyclotomicInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellReport {
    pub dim: usize,
    pub states: usize,
    /// Each layer's `d²` states (over all `h`, `b`) are orthonormal.
    pub orthonormal: bool,
    pub maximally_entangled: bool,
    pub unbiased_within_h: bool,
    pub orthogonal_across_h: bool,
    pub failures: Vec<BellFailure>,
    pub passed: bool,
}

/// Checks every state pair and every reduced state, with sector level `d_s = d`.
pub fn verify_bell_family(f: &BellFamily) -> BellReport {
    verify_bell_family_at_level(f, f.dim as u64)
}

/// As [`verify_bell_family`] with the within-`h` overlap level `1/√d_s`.
pub fn verify_bell_family_at_level(f: &BellFamily, level: u64) -> BellReport {
    let states: Vec<&BellState> = f.iter().collect();
    let n = states.len();
    let mut failures: Vec<BellFailure> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let states = &states;
            (i..n).filter_map(move |j| check_pair(states[i], states[j], level))
        })
        .collect();
    let entangle_failures: Vec<BellFailure> = states
        .par_iter()
        .filter_map(|s| {
            let rho = partial_trace_second(&s.vector).ok()?;
            (!rho.is_maximally_mixed()).then(|| BellFailure {
                check: BellCheck::Entangled,
                left: (s.h, s.a, s.b),
                right: (s.h, s.a, s.b),
                value: rho.trace_numerator(),
            })
        })
        .collect();
    failures.extend(entangle_failures);
    let has = |c: BellCheck| failures.iter().any(|x| x.check == c);
    BellReport {
        dim: f.dim,
        states: n,
        orthonormal: !has(BellCheck::Orthonormal),
        maximally_entangled: !has(BellCheck::Entangled),
        unbiased_within_h: !has(BellCheck::Unbiased),
        orthogonal_across_h: !has(BellCheck::Orthogonal),
        passed: failures.is_empty(),
        failures,
    }
}

fn check_pair(x: &BellState, y: &BellState, level: u64) -> Option<BellFailure> {
    let raw = x.vector.inner_product_raw(&y.vector);
    let (check, ok) = if x.h != y.h {
        (BellCheck::Orthogonal, raw.is_zero())
    } else if x.a != y.a {
        let st = BigInt::from(x.vector.scale_sq()) * BigInt::from(y.vector.scale_sq());
        let lhs = raw
            .abs_squared()
            .as_integer()
            .map(|v| v * BigInt::from(level));
        (BellCheck::Unbiased, lhs == Some(st))
    } else if x.b == y.b {
        (
            BellCheck::Orthonormal,
            raw.as_integer() == Some(BigInt::from(x.vector.scale_sq())),
        )
    } else {
        (BellCheck::Orthonormal, raw.is_zero())
    };
    (!ok).then_some(BellFailure {
        check,
        left: (x.h, x.a, x.b),
        right: (y.h, y.a, y.b),
        value: raw,
    })
}
