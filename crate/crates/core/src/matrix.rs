//! Exact matrices over the cyclotomic integers with a scalar prefactor
//! `1 / (denominator · √radicand)`.
//!
//! Gate matrices such as `H = (1/√2)[[1, 1], [1, −1]]`, the Pauli shift and
//! clock operators, reduced density matrices and phase operators all fit this
//! shape. Values are kept normalized (square-free radicand, no common factor
//! between the entries and the denominator), so structural equality is value
//! equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{common_order, CyclotomicInt};
use crate::error::{Error, Result};
use crate::mub::StateVector;

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CyclotomicInt>,
    denominator: BigInt,
    radicand: u64,
}

impl ExactMatrix {
    /// Builds a matrix from row vectors sharing one cyclotomic order.
    pub fn from_rows(rows: Vec<Vec<CyclotomicInt>>) -> Result<Self> {
        Self::from_rows_scaled(rows, BigInt::one(), 1)
    }

    /// Matrix with value `rows / (denominator · √radicand)`.
    pub fn from_rows_scaled(
        rows: Vec<Vec<CyclotomicInt>>,
        denominator: BigInt,
        radicand: u64,
    ) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        if !denominator.is_positive() || radicand == 0 {
            return Err(Error::DimensionMismatch(
                "matrix scale must be positive".into(),
            ));
        }
        let order = rows
            .iter()
            .flatten()
            .map(CyclotomicInt::order)
            .fold(1, common_order);
        let entries = rows
            .into_iter()
            .flatten()
            .map(|e| e.rescale_order(order).expect("lcm order"))
            .collect();
        let mut m = ExactMatrix {
            rows: r,
            cols: c,
            order,
            entries,
            denominator,
            radicand,
        };
        m.normalize();
        Ok(m)
    }

    pub fn identity(d: usize) -> Self {
        Self::diagonal((0..d).map(|_| CyclotomicInt::one(1)).collect())
    }

    pub fn diagonal(diag: Vec<CyclotomicInt>) -> Self {
        let d = diag.len();
        let order = diag.iter().map(CyclotomicInt::order).fold(1, common_order);
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            v.rescale_order(order).expect("lcm order")
                        } else {
                            CyclotomicInt::zero(order)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("square")
    }

    fn normalize(&mut self) {
        // pull square factors out of the radicand
        let mut k = 2u64;
        while k * k <= self.radicand {
            while self.radicand.is_multiple_of(k * k) {
                self.radicand /= k * k;
                self.denominator *= k;
            }
            k += 1;
        }
        let g = self
            .entries
            .iter()
            .fold(self.denominator.clone(), |g, e| g.gcd(&e.content()));
        if !g.is_one() && !g.is_zero() {
            for e in &mut self.entries {
                *e = e.div_integer(&g).expect("gcd divides");
            }
            self.denominator /= &g;
        }
        if self.entries.iter().all(CyclotomicInt::is_zero) {
            self.denominator = BigInt::one();
            self.radicand = 1;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Numerator entry at `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicInt {
        &self.entries[i * self.cols + j]
    }

    pub fn numerator_rows(&self) -> Vec<Vec<CyclotomicInt>> {
        self.entries
            .chunks(self.cols.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn rescale_order(&self, order: u32) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.rescale_order(order))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            order,
            entries,
            ..self.clone()
        })
    }

    /// Multiplies every entry by a cyclotomic scalar.
    pub fn scale_by(&self, c: &CyclotomicInt) -> Self {
        let order = common_order(self.order, c.order());
        let c = c.rescale_order(order).expect("lcm order");
        let this = self.rescale_order(order).expect("lcm order");
        let mut m = ExactMatrix {
            entries: this.entries.iter().map(|e| e * &c).collect(),
            ..this
        };
        m.normalize();
        m
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let order = common_order(self.order, other.order);
        let a = self.rescale_order(order)?;
        let b = other.rescale_order(order)?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = CyclotomicInt::zero(order);
                for k in 0..a.cols {
                    let x = a.entry(i, k);
                    let y = b.entry(k, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc + x * y;
                    }
                }
                entries.push(acc);
            }
        }
        let mut m = ExactMatrix {
            rows: a.rows,
            cols: b.cols,
            order,
            entries,
            denominator: &a.denominator * &b.denominator,
            radicand: a.radicand * b.radicand,
        };
        m.normalize();
        Ok(m)
    }

    /// `self · v`. The result carries the combined normalization in its `scale_sq`.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let raw = self.apply_numerator(v.entries());
        // 1/(D √r) · 1/√s = 1/√(D² r s)
        let d2 = &self.denominator * &self.denominator;
        let scale = d2 * BigInt::from(self.radicand) * BigInt::from(v.scale_sq());
        let scale: u64 = scale
            .try_into()
            .map_err(|_| Error::DimensionMismatch("normalization overflow".into()))?;
        Ok(StateVector::new(raw, scale))
    }

    /// Numerator product with a raw entry vector, in the common order.
    pub fn apply_numerator(&self, v: &[CyclotomicInt]) -> Vec<CyclotomicInt> {
        let order = v
            .iter()
            .map(CyclotomicInt::order)
            .fold(self.order, common_order);
        let a = self.rescale_order(order).expect("lcm order");
        let v: Vec<CyclotomicInt> = v
            .iter()
            .map(|x| x.rescale_order(order).expect("lcm order"))
            .collect();
        (0..self.rows)
            .map(|i| {
                let mut acc = CyclotomicInt::zero(order);
                for (k, x) in v.iter().enumerate() {
                    let e = a.entry(i, k);
                    if !e.is_zero() && !x.is_zero() {
                        acc = acc + e * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("square");
        }
        acc
    }

    pub fn conjugate_transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).conjugate());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            ..self.clone()
        }
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conjugate_transpose()
    }

    /// Whether the value equals `(1/d)·I`.
    pub fn is_maximally_mixed(&self) -> bool {
        self.rows == self.cols
            && self.radicand == 1
            && self.denominator == BigInt::from(self.rows)
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Trace numerator when the trace is a rational integer multiple of the
    /// prefactor; `trace = numerator / (denominator·√radicand)`.
    pub fn trace_numerator(&self) -> CyclotomicInt {
        (0..self.rows.min(self.cols)).fold(CyclotomicInt::zero(self.order), |acc, i| {
            acc + self.entry(i, i)
        })
    }

    fn prefactor(&self) -> String {
        match (self.denominator.is_one(), self.radicand) {
            (true, 1) => String::new(),
            (true, r) => format!("(1/√{r}) "),
            (false, 1) => format!("(1/{}) ", self.denominator),
            (false, r) => format!("(1/({}√{r})) ", self.denominator),
        }
    }
}

/// Value equality: entries are compared in the common cyclotomic order.
impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if (self.rows, self.cols, self.radicand) != (other.rows, other.cols, other.radicand)
            || self.denominator != other.denominator
        {
            return false;
        }
        let order = common_order(self.order, other.order);
        self.entries.iter().zip(&other.entries).all(|(a, b)| {
            a.rescale_order(order).expect("lcm order") == b.rescale_order(order).expect("lcm order")
        })
    }
}

impl Eq for ExactMatrix {}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.prefactor())?;
        for (i, row) in self.numerator_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(order: u32, k: i64) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(order, k)
    }

    fn n(v: i64) -> CyclotomicInt {
        CyclotomicInt::from_integer(1, v)
    }

    #[test]
    fn normalization_extracts_squares_and_content() {
        let m = ExactMatrix::from_rows_scaled(vec![vec![n(2), n(4)]], BigInt::from(1), 8).unwrap();
        // (1/√8)[2, 4] = (1/√2)[1, 2]
        assert_eq!(m.radicand(), 2);
        assert_eq!(m.denominator(), &BigInt::one());
        assert_eq!(m.entry(0, 1), &n(2));
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let h = ExactMatrix::from_rows_scaled(
            vec![vec![n(1), n(1)], vec![n(1), n(-1)]],
            BigInt::one(),
            2,
        )
        .unwrap();
        assert_eq!(h.checked_mul(&h).unwrap(), ExactMatrix::identity(2));
        assert_eq!(h.to_string(), "(1/√2) [[1, 1], [1, -1]]");
    }

    #[test]
    fn mixed_orders_are_promoted() {
        let a = ExactMatrix::diagonal(vec![c(3, 1), n(1)]);
        let b = ExactMatrix::diagonal(vec![c(4, 1), n(1)]);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.entry(0, 0), &c(12, 7));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(a.checked_mul(&b).is_err());
    }
}
