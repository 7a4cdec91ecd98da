//! Mutually unbiased bases: constructions and exact verification.
//!
//! A [`StateVector`] stores raw cyclotomic entries together with an integer
//! `scale_sq = s`, standing for the normalized vector `entries / √s`. Two
//! vectors `u` (scale `s`) and `v` (scale `t`) in dimension `d` have overlap
//! of modulus `1/√d` exactly when `d · |⟨u|v⟩_raw|² = s·t`, an identity in the
//! cyclotomic integers. No floating point is involved anywhere.
//!
//! Routes:
//! * computational and Fourier bases for any `d`;
//! * the qubit gate triple `(I, H, HS)`;
//! * odd prime powers `p^m` through the field trace: vector `b` of basis `a`
//!   has entry `ω_p^{tr[(a·n + b)·n]}` at position `n`;
//! * powers of two through GR(4^m): entry `i^{tr[(a + 2b)·n]}`, with `a`, `b`,
//!   `n` running over the Teichmüller set;
//! * tensor products of prime-power sets for composite `d`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::{common_order, CyclotomicInt};
use crate::error::{Error, Result};
use crate::finite_field::{elements_by_code, FieldContext, FieldElement};
use crate::galois_ring::{teichmuller_set, RingContext, RingElement};
use crate::matrix::ExactMatrix;

/// Default bound on the dimension of constructed sets.
pub const DEFAULT_CAP: u64 = 128;

/// A vector `entries / √scale_sq` with entries in one cyclotomic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVector {
    scale_sq: u64,
    entries: Vec<CyclotomicInt>,
}

impl StateVector {
    /// Entries are promoted to their common cyclotomic order.
    pub fn new(entries: Vec<CyclotomicInt>, scale_sq: u64) -> Self {
        assert!(scale_sq > 0, "scale_sq must be positive");
        let order = entries
            .iter()
            .map(CyclotomicInt::order)
            .fold(1, common_order);
        let entries = entries
            .into_iter()
            .map(|e| e.rescale_order(order).expect("lcm order"))
            .collect();
        StateVector { scale_sq, entries }
    }

    /// Computational basis vector `|k⟩` in dimension `d`.
    pub fn basis_vector(d: usize, k: usize) -> Self {
        let entries = (0..d)
            .map(|n| CyclotomicInt::from_integer(1, i64::from(n == k)))
            .collect();
        StateVector {
            scale_sq: 1,
            entries,
        }
    }

    /// Vector whose entry `n` is `ζ_order^{exponents[n]}`.
    pub fn from_phases(order: u32, exponents: &[i64], scale_sq: u64) -> Self {
        let entries = exponents
            .iter()
            .map(|&e| CyclotomicInt::root_of_unity(order, e))
            .collect();
        StateVector { scale_sq, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn scale_sq(&self) -> u64 {
        self.scale_sq
    }

    pub fn entries(&self) -> &[CyclotomicInt] {
        &self.entries
    }

    pub fn order(&self) -> u32 {
        self.entries.first().map_or(1, CyclotomicInt::order)
    }

    pub fn rescale_order(&self, order: u32) -> Result<Self> {
        Ok(StateVector {
            scale_sq: self.scale_sq,
            entries: self
                .entries
                .iter()
                .map(|e| e.rescale_order(order))
                .collect::<Result<_>>()?,
        })
    }

    /// `Σ conj(self_n) · other_n` on raw entries, in the common order.
    pub fn inner_product_raw(&self, other: &StateVector) -> CyclotomicInt {
        assert_eq!(
            self.dim(),
            other.dim(),
            "inner product of unequal dimensions"
        );
        let order = common_order(self.order(), other.order());
        // Accumulate Σ conj(a)·b as exponent sums and reduce once at the end;
        // conj(ζ^i)·ζ^j = ζ^{j−i}.
        let n = order as usize;
        let mut sums = vec![0i64; n];
        let mut wide: Option<Vec<BigInt>> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let a = a.rescale_order(order).expect("lcm order");
            let b = b.rescale_order(order).expect("lcm order");
            let small = |x: &CyclotomicInt| -> Option<Vec<i64>> {
                x.coeffs()
                    .iter()
                    .map(|c| c.to_i64().filter(|v| v.abs() < 1 << 16))
                    .collect()
            };
            match (small(&a), small(&b), wide.as_mut()) {
                (Some(ca), Some(cb), None) => {
                    for (i, &x) in ca.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (j, &y) in cb.iter().enumerate() {
                            if y != 0 {
                                sums[(j + n - i) % n] += x * y;
                            }
                        }
                    }
                }
                _ => {
                    let w =
                        wide.get_or_insert_with(|| sums.iter().map(|&v| BigInt::from(v)).collect());
                    for (i, x) in a.coeffs().iter().enumerate() {
                        for (j, y) in b.coeffs().iter().enumerate() {
                            w[(j + n - i) % n] += x * y;
                        }
                    }
                }
            }
        }
        match wide {
            Some(w) => CyclotomicInt::from_exponent_sums(order, &w),
            None => CyclotomicInt::from_exponent_counts(order, &sums),
        }
    }

    /// `⟨v|v⟩_raw == scale_sq`.
    pub fn is_normalized(&self) -> bool {
        self.inner_product_raw(self).as_integer() == Some(BigInt::from(self.scale_sq))
    }

    /// Every entry has squared modulus exactly 1.
    pub fn is_unimodular(&self) -> bool {
        self.entries.iter().all(|e| e.abs_squared().is_one())
    }

    /// Multiplies by the inverse of the first nonzero entry when that entry is a
    /// root of unity of the vector's order, so the first nonzero entry becomes 1.
    pub fn normalize_phase(&self) -> Self {
        let Some(first) = self.entries.iter().find(|e| !e.is_zero()) else {
            return self.clone();
        };
        match first.as_root_of_unity() {
            Some(0) | None => self.clone(),
            Some(k) => {
                let inv = CyclotomicInt::root_of_unity(first.order(), -(k as i64));
                StateVector {
                    scale_sq: self.scale_sq,
                    entries: self.entries.iter().map(|e| e * &inv).collect(),
                }
            }
        }
    }

    pub fn scale_entries(&self, c: &CyclotomicInt) -> Self {
        let order = common_order(self.order(), c.order());
        let c = c.rescale_order(order).expect("lcm order");
        StateVector {
            scale_sq: self.scale_sq,
            entries: self
                .entries
                .iter()
                .map(|e| e.rescale_order(order).expect("lcm order") * &c)
                .collect(),
        }
    }

    /// `self ⊗ other`, entry `(x, y)` at flat index `x·dim(other) + y`.
    pub fn tensor(&self, other: &StateVector) -> Self {
        let order = common_order(self.order(), other.order());
        let a = self.rescale_order(order).expect("lcm order");
        let b = other.rescale_order(order).expect("lcm order");
        let mut entries = Vec::with_capacity(a.dim() * b.dim());
        for x in &a.entries {
            for y in &b.entries {
                entries.push(x * y);
            }
        }
        StateVector {
            scale_sq: self.scale_sq * other.scale_sq,
            entries,
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        if self.scale_sq == 1 {
            write!(f, "({})", cells.join(", "))
        } else {
            write!(f, "(1/√{}) ({})", self.scale_sq, cells.join(", "))
        }
    }
}

/// Which construction produced a basis or set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Computational,
    Fourier,
    Gates,
    Field,
    Ring,
    Tensor,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Computational => "computational",
            Route::Fourier => "fourier",
            Route::Gates => "gates",
            Route::Field => "field",
            Route::Ring => "ring",
            Route::Tensor => "tensor",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    /// Position of the basis in its set (0 is the computational basis).
    pub index: usize,
    pub route: Route,
    /// Construction parameter, e.g. the field or ring element `a`.
    pub parameter: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub vectors: Vec<StateVector>,
    pub label: BasisLabel,
}

impl Basis {
    pub fn new(vectors: Vec<StateVector>, label: BasisLabel) -> Self {
        Basis { vectors, label }
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, StateVector::dim)
    }

    pub fn computational(d: usize) -> Self {
        Basis {
            vectors: (0..d).map(|k| StateVector::basis_vector(d, k)).collect(),
            label: BasisLabel {
                index: 0,
                route: Route::Computational,
                parameter: None,
            },
        }
    }

    /// Rows of `m` as basis vectors; `m`'s prefactor becomes the vectors' scale.
    pub fn from_matrix_rows(m: &ExactMatrix, label: BasisLabel) -> Result<Self> {
        let d = m.denominator();
        let scale = d * d * BigInt::from(m.radicand());
        let scale = scale
            .to_u64()
            .ok_or_else(|| Error::DimensionMismatch("scale overflow".into()))?;
        let vectors = m
            .numerator_rows()
            .into_iter()
            .map(|row| StateVector::new(row, scale))
            .collect();
        Ok(Basis { vectors, label })
    }

    /// Matrix whose rows are the basis vectors (requires a common scale).
    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let s = self.common_scale().ok_or_else(|| {
            Error::DimensionMismatch("basis vectors have different scales".into())
        })?;
        ExactMatrix::from_rows_scaled(
            self.vectors.iter().map(|v| v.entries().to_vec()).collect(),
            BigInt::one(),
            s,
        )
    }

    pub fn common_scale(&self) -> Option<u64> {
        let s = self.vectors.first()?.scale_sq();
        self.vectors.iter().all(|v| v.scale_sq() == s).then_some(s)
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.label.index = index;
        self
    }
}

/// Shape of the dimension a set was built for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimensionClass {
    Trivial,
    PrimePower { p: u64, m: u32 },
    Composite { factors: Vec<(u64, u32)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub class: DimensionClass,
    pub route: Route,
    /// Moduli and lift polynomials used, in human-readable form.
    pub moduli: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubSet {
    pub dim: usize,
    pub bases: Vec<Basis>,
    pub provenance: Provenance,
}

impl MubSet {
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Smallest cyclotomic order holding every entry.
    pub fn order(&self) -> u32 {
        self.bases
            .iter()
            .flat_map(|b| &b.vectors)
            .map(StateVector::order)
            .fold(1, common_order)
    }
}

fn dimension_class(d: u64) -> DimensionClass {
    match arith::factorize(d).as_slice() {
        [] => DimensionClass::Trivial,
        [(p, m)] => DimensionClass::PrimePower { p: *p, m: *m },
        f => DimensionClass::Composite {
            factors: f.to_vec(),
        },
    }
}

fn check_cap(d: u64, cap: u64) -> Result<()> {
    if d > cap {
        Err(Error::DimensionTooLarge { dim: d, cap })
    } else {
        Ok(())
    }
}

/// `|θ_k⟩ = Σ_n ω_d^{kn} |n⟩ / √d`.
pub fn fourier_basis(d: usize) -> Basis {
    assert!(d >= 1, "dimension must be positive");
    let vectors = (0..d)
        .map(|k| {
            let exps: Vec<i64> = (0..d).map(|n| ((k * n) % d) as i64).collect();
            StateVector::from_phases(d as u32, &exps, d as u64)
        })
        .collect();
    Basis {
        vectors,
        label: BasisLabel {
            index: 1,
            route: Route::Fourier,
            parameter: None,
        },
    }
}

/// Computational and Fourier bases (two MUBs in every dimension).
pub fn mub_fourier(d: usize) -> Result<MubSet> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut bases = vec![Basis::computational(d)];
    if d > 1 {
        bases.push(fourier_basis(d));
    }
    Ok(MubSet {
        dim: d,
        bases,
        provenance: Provenance {
            class: dimension_class(d as u64),
            route: Route::Fourier,
            moduli: Vec::new(),
        },
    })
}

/// The qubit gates `(I, H, HS)` with `S = diag(1, i)`.
pub fn qubit_gate_bases() -> [ExactMatrix; 3] {
    let one = || CyclotomicInt::one(4);
    let i = CyclotomicInt::root_of_unity(4, 1);
    let identity = ExactMatrix::identity(2);
    let h = ExactMatrix::from_rows_scaled(
        vec![vec![one(), one()], vec![one(), -one()]],
        BigInt::one(),
        2,
    )
    .expect("2x2");
    let s = ExactMatrix::diagonal(vec![one(), i]);
    let hs = h.checked_mul(&s).expect("2x2");
    [identity, h, hs]
}

/// The three qubit MUBs read off the rows of `I`, `H` and `HS`.
pub fn mub_gates() -> MubSet {
    let bases = qubit_gate_bases()
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let label = BasisLabel {
                index,
                route: if index == 0 {
                    Route::Computational
                } else {
                    Route::Gates
                },
                parameter: Some(["I", "H", "HS"][index].to_string()),
            };
            Basis::from_matrix_rows(m, label).expect("small scale")
        })
        .collect();
    MubSet {
        dim: 2,
        bases,
        provenance: Provenance {
            class: DimensionClass::PrimePower { p: 2, m: 1 },
            route: Route::Gates,
            moduli: Vec::new(),
        },
    }
}

/// Exponent `tr[(a·n + b)·n]` for field elements.
pub fn field_exponent(a: &FieldElement, b: &FieldElement, n: &FieldElement) -> u32 {
    (&(&(a * n) + b) * n).trace()
}

/// Complete set of `p^m + 1` MUBs for odd `p` from the field trace.
///
/// Positions `n`, basis labels `a` and vector labels `b` all enumerate
/// GF(p^m) in code order (coefficient digits base p; the integers when m = 1).
pub fn mub_odd_prime_power(p: u64, m: u32) -> Result<MubSet> {
    mub_odd_prime_power_capped(p, m, DEFAULT_CAP)
}

pub fn mub_odd_prime_power_capped(p: u64, m: u32, cap: u64) -> Result<MubSet> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::RouteNotApplicable {
            route: "field".into(),
            dim: 2u64.pow(m),
        });
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let d = p
        .checked_pow(m)
        .ok_or(Error::DimensionTooLarge { dim: u64::MAX, cap })?;
    check_cap(d, cap)?;
    let ctx = FieldContext::new(p as u32, m as usize)?;
    let elements = elements_by_code(&ctx);
    let mut bases = vec![Basis::computational(d as usize)];
    let built: Vec<Basis> = elements
        .par_iter()
        .enumerate()
        .map(|(ai, a)| {
            let vectors = elements
                .iter()
                .map(|b| {
                    let exps: Vec<i64> = elements
                        .iter()
                        .map(|n| field_exponent(a, b, n) as i64)
                        .collect();
                    StateVector::from_phases(p as u32, &exps, d).normalize_phase()
                })
                .collect();
            Basis {
                vectors,
                label: BasisLabel {
                    index: ai + 1,
                    route: Route::Field,
                    parameter: Some(format!("a={a}")),
                },
            }
        })
        .collect();
    bases.extend(built);
    Ok(MubSet {
        dim: d as usize,
        bases,
        provenance: Provenance {
            class: DimensionClass::PrimePower { p, m },
            route: Route::Field,
            moduli: vec![format!("GF({d}) = Z_{p}[x]/({})", modulus_text(&ctx))],
        },
    })
}

fn modulus_text(ctx: &Arc<FieldContext>) -> String {
    let coeffs = ctx.modulus();
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        terms.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join(" + ")
}

/// Exponent `tr[(a + 2b)·n]` in GR(4^m).
pub fn ring_exponent(a: &RingElement, b: &RingElement, n: &RingElement) -> u32 {
    (&(a + &b.scale(2)) * n).trace()
}

/// Complete set of `2^m + 1` MUBs from GR(4^m).
///
/// Positions `n`, basis labels `a` and vector labels `b` enumerate the
/// Teichmüller set in order `(0, 1, ξ, …, ξ^{2^m−2})`.
pub fn mub_even(m: u32) -> Result<MubSet> {
    mub_even_capped(m, DEFAULT_CAP)
}

pub fn mub_even_capped(m: u32, cap: u64) -> Result<MubSet> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let d = 1u64
        .checked_shl(m)
        .filter(|&d| d != 0 && m < 32)
        .ok_or(Error::DimensionTooLarge { dim: u64::MAX, cap })?;
    check_cap(d, cap)?;
    let ctx = RingContext::new(m as usize)?;
    let t = teichmuller_set(&ctx);
    let mut bases = vec![Basis::computational(d as usize)];
    let built: Vec<Basis> = t
        .par_iter()
        .enumerate()
        .map(|(ai, a)| {
            let vectors = t
                .iter()
                .map(|b| {
                    let exps: Vec<i64> = t.iter().map(|n| ring_exponent(a, b, n) as i64).collect();
                    StateVector::from_phases(4, &exps, d).normalize_phase()
                })
                .collect();
            Basis {
                vectors,
                label: BasisLabel {
                    index: ai + 1,
                    route: Route::Ring,
                    parameter: Some(format!("a={a}")),
                },
            }
        })
        .collect();
    bases.extend(built);
    Ok(MubSet {
        dim: d as usize,
        bases,
        provenance: Provenance {
            class: DimensionClass::PrimePower { p: 2, m },
            route: Route::Ring,
            moduli: vec![format!(
                "GR(4^{m}) = Z_4[x]/({})",
                ctx.basic_primitive_string()
            )],
        },
    })
}

/// Full set for a prime power, routed by characteristic.
pub fn mub_prime_power(p: u64, m: u32, cap: u64) -> Result<MubSet> {
    if p == 2 {
        mub_even_capped(m, cap)
    } else {
        mub_odd_prime_power_capped(p, m, cap)
    }
}

/// `A ⊗ B`: vector `(i, j)` lands at position `i·|B| + j`.
pub fn tensor_product(a: &Basis, b: &Basis) -> Basis {
    let vectors = a
        .vectors
        .iter()
        .flat_map(|x| b.vectors.iter().map(move |y| x.tensor(y)))
        .collect();
    let parameter = match (&a.label.parameter, &b.label.parameter) {
        (None, None) => None,
        (x, y) => Some(format!(
            "{} ⊗ {}",
            x.as_deref().unwrap_or("·"),
            y.as_deref().unwrap_or("·")
        )),
    };
    Basis {
        vectors,
        label: BasisLabel {
            index: a.label.index,
            route: if a.label.route == Route::Computational && b.label.route == Route::Computational
            {
                Route::Computational
            } else {
                Route::Tensor
            },
            parameter,
        },
    }
}

/// MUBs for any `d ≥ 2`: the full prime-power set when `d = p^m`, otherwise
/// `min_i p_i^{e_i} + 1` bases `B^{(k)} = ⊗_i B_i^{(k)}` built from each
/// factor's complete set (factors in increasing prime order).
pub fn mub_composite(d: u64) -> Result<MubSet> {
    mub_composite_capped(d, DEFAULT_CAP)
}

pub fn mub_composite_capped(d: u64, cap: u64) -> Result<MubSet> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    check_cap(d, cap)?;
    let factors = arith::factorize(d);
    if let [(p, m)] = factors.as_slice() {
        return mub_prime_power(*p, *m, cap);
    }
    mub_tensor(d, cap)
}

/// Tensor route applied to any `d`; with a single prime-power factor it is
/// that factor's complete set.
pub fn mub_tensor(d: u64, cap: u64) -> Result<MubSet> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    check_cap(d, cap)?;
    let factors = arith::factorize(d);
    let sets = factors
        .iter()
        .map(|&(p, m)| mub_prime_power(p, m, cap))
        .collect::<Result<Vec<_>>>()?;
    let smallest = factors
        .iter()
        .map(|&(p, m)| p.pow(m))
        .min()
        .expect("d >= 2") as usize;
    let bases = (0..=smallest)
        .map(|k| {
            let mut it = sets.iter().map(|s| s.bases[k].clone());
            let first = it.next().expect("at least one factor");
            it.fold(first, |acc, b| tensor_product(&acc, &b))
                .with_index(k)
        })
        .collect();
    let mut moduli = Vec::new();
    for s in &sets {
        moduli.extend(s.provenance.moduli.iter().cloned());
    }
    Ok(MubSet {
        dim: d as usize,
        bases,
        provenance: Provenance {
            class: dimension_class(d),
            route: Route::Tensor,
            moduli,
        },
    })
}

/// Construction selector used by [`mub_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Construction {
    #[default]
    Auto,
    Fourier,
    Gates,
    Field,
    Ring,
    Tensor,
}

/// Builds a MUB set for `d` by the requested route.
pub fn mub_set(d: u64, construction: Construction, cap: u64) -> Result<MubSet> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check_cap(d, cap)?;
    let not_applicable = |route: &str| Error::RouteNotApplicable {
        route: route.into(),
        dim: d,
    };
    match construction {
        Construction::Auto if d == 1 => mub_fourier(1),
        Construction::Auto => mub_composite_capped(d, cap),
        Construction::Fourier => mub_fourier(d as usize),
        Construction::Gates if d == 2 => Ok(mub_gates()),
        Construction::Gates => Err(not_applicable("gates")),
        Construction::Field => match arith::prime_power(d) {
            Some((p, m)) if p != 2 => mub_odd_prime_power_capped(p, m, cap),
            _ => Err(not_applicable("field")),
        },
        Construction::Ring => match arith::prime_power(d) {
            Some((2, m)) => mub_even_capped(m, cap),
            _ => Err(not_applicable("ring")),
        },
        Construction::Tensor => mub_tensor(d, cap),
    }
}

/// A failing vector pair with its raw inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub left: usize,
    pub right: usize,
    pub value: CyclotomicInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub left: usize,
    pub right: usize,
    pub passed: bool,
    /// `s·t` is not divisible by `d`, so no overlap can have modulus `1/√d`.
    pub structural_failure: bool,
    pub failure: Option<PairFailure>,
}

/// Whether every cross overlap between `a` and `b` has modulus exactly `1/√d`,
/// i.e. `d · |⟨u|v⟩_raw|² = s_u · s_v` for all vector pairs.
pub fn verify_unbiased_pair(a: &Basis, b: &Basis) -> PairCheck {
    let mut check = PairCheck {
        left: a.label.index,
        right: b.label.index,
        passed: true,
        structural_failure: false,
        failure: None,
    };
    let d = a.dim();
    if d != b.dim() {
        check.passed = false;
        check.structural_failure = true;
        return check;
    }
    for (i, u) in a.vectors.iter().enumerate() {
        for (j, v) in b.vectors.iter().enumerate() {
            let st = u.scale_sq() as u128 * v.scale_sq() as u128;
            if !st.is_multiple_of(d as u128) {
                check.passed = false;
                check.structural_failure = true;
                return check;
            }
            let target = BigInt::from(st / d as u128);
            let raw = u.inner_product_raw(v);
            if raw.abs_squared().as_integer() != Some(target) {
                check.passed = false;
                check.failure = Some(PairFailure {
                    left: i,
                    right: j,
                    value: raw,
                });
                return check;
            }
        }
    }
    check
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub index: usize,
    pub passed: bool,
    pub failure: Option<PairFailure>,
}

/// `⟨u_i|u_j⟩_raw = δ_ij · s_i` for all vectors, and exactly `d` of them.
pub fn verify_orthonormal(b: &Basis) -> BasisCheck {
    let mut check = BasisCheck {
        index: b.label.index,
        passed: b.vectors.len() == b.dim(),
        failure: None,
    };
    for (i, u) in b.vectors.iter().enumerate() {
        for (j, v) in b.vectors.iter().enumerate().skip(i) {
            let raw = u.inner_product_raw(v);
            let ok = if i == j {
                raw.as_integer() == Some(BigInt::from(u.scale_sq()))
            } else {
                raw.is_zero()
            };
            if !ok {
                check.passed = false;
                check.failure = Some(PairFailure {
                    left: i,
                    right: j,
                    value: raw,
                });
                return check;
            }
        }
    }
    check
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubReport {
    pub dim: usize,
    pub bases: Vec<BasisCheck>,
    pub pairs: Vec<PairCheck>,
    pub passed: bool,
}

impl MubReport {
    pub fn failed_pairs(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.passed)
    }
}

/// Orthonormality of every basis and unbiasedness of every pair of bases.
pub fn verify_mub_set(set: &MubSet) -> MubReport {
    let bases: Vec<BasisCheck> = set.bases.par_iter().map(verify_orthonormal).collect();
    let n = set.bases.len();
    let index_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pairs: Vec<PairCheck> = index_pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut c = verify_unbiased_pair(&set.bases[i], &set.bases[j]);
            c.left = i;
            c.right = j;
            c
        })
        .collect();
    let passed = bases.iter().all(|b| b.passed)
        && pairs.iter().all(|p| p.passed)
        && set.bases.iter().all(|b| b.dim() == set.dim);
    MubReport {
        dim: set.dim,
        bases,
        pairs,
        passed,
    }
}

/// `S = Σ_{n ∈ GF(p^m)} ω_p^{tr[(a·n + b)·n]}`.
pub fn weil_sum(a: &FieldElement, b: &FieldElement) -> CyclotomicInt {
    let ctx = a.context();
    let p = ctx.characteristic();
    let mut counts = vec![0i64; p as usize];
    for n in elements_by_code(ctx) {
        counts[field_exponent(a, b, &n) as usize] += 1;
    }
    CyclotomicInt::from_exponent_counts(p, &counts)
}

/// `Θ = Σ_b λ_b |v_b⟩⟨v_b|` with exact rational eigenvalue labels.
#[derive(Clone, Debug)]
pub struct PhaseOperator {
    pub dim: usize,
    pub eigenvalues: Vec<BigRational>,
    pub basis: Basis,
    pub matrix: ExactMatrix,
}

/// Phase operator with labels `λ_b = b`.
pub fn phase_operator_default(basis: &Basis) -> Result<PhaseOperator> {
    let labels: Vec<BigRational> = (0..basis.vectors.len())
        .map(|b| BigRational::from_integer(BigInt::from(b)))
        .collect();
    phase_operator(basis, &labels)
}

pub fn phase_operator(basis: &Basis, eigenvalues: &[BigRational]) -> Result<PhaseOperator> {
    let d = basis.dim();
    if eigenvalues.len() != basis.vectors.len() || basis.vectors.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} eigenvalues for a basis of {} vectors in dimension {d}",
            eigenvalues.len(),
            basis.vectors.len()
        )));
    }
    let s = basis
        .common_scale()
        .ok_or_else(|| Error::DimensionMismatch("basis vectors have different scales".into()))?;
    let common_den = eigenvalues
        .iter()
        .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let order = basis
        .vectors
        .iter()
        .map(StateVector::order)
        .fold(1, common_order);
    let mut rows = vec![vec![CyclotomicInt::zero(order); d]; d];
    for (v, lambda) in basis.vectors.iter().zip(eigenvalues) {
        let weight = lambda.numer() * (&common_den / lambda.denom());
        if weight.is_zero() {
            continue;
        }
        let v = v.rescale_order(order)?;
        let conj: Vec<CyclotomicInt> = v.entries().iter().map(CyclotomicInt::conjugate).collect();
        for (i, x) in v.entries().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let wx = x.scale(&weight);
            for (j, y) in conj.iter().enumerate() {
                if !y.is_zero() {
                    rows[i][j] = &rows[i][j] + &(&wx * y);
                }
            }
        }
    }
    let matrix = ExactMatrix::from_rows_scaled(rows, common_den * BigInt::from(s), 1)?;
    Ok(PhaseOperator {
        dim: d,
        eigenvalues: eigenvalues.to_vec(),
        basis: basis.clone(),
        matrix,
    })
}

impl PhaseOperator {
    /// `Θ v_b = λ_b v_b` for every `b`.
    pub fn check_eigenpairs(&self) -> bool {
        let den = self.matrix.denominator();
        if self.matrix.radicand() != 1 {
            return false;
        }
        self.basis
            .vectors
            .iter()
            .zip(&self.eigenvalues)
            .all(|(v, lambda)| {
                // (M v)/D = (p/q) v  <=>  q·M v = D·p·v
                let mv = self.matrix.apply_numerator(v.entries());
                let q = lambda.denom();
                let dp = den * lambda.numer();
                mv.iter().zip(v.entries()).all(|(lhs, x)| {
                    let rhs = x.rescale_order(lhs.order()).expect("lcm order");
                    lhs.scale(q) == rhs.scale(&dp)
                })
            })
    }

    /// Whether the sum of the eigenprojectors is the identity.
    pub fn resolves_identity(&self) -> bool {
        let ones = vec![BigRational::one(); self.dim];
        phase_operator(&self.basis, &ones)
            .map(|op| op.matrix == ExactMatrix::identity(self.dim))
            .unwrap_or(false)
    }
}
