//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_N]`.
//!
//! Elements are kept in the power basis `{ζ^0, …, ζ^{φ(N)-1}}`, always reduced
//! modulo the N-th cyclotomic polynomial, so two elements of the same order are
//! equal exactly when their coefficient vectors agree. Every amplitude, inner
//! product and operator entry in the crate is one of these.
//!
//! Operations require equal orders. Mixing orders is an explicit step through
//! [`CyclotomicInt::rescale_order`] or [`align`], never an implicit promotion.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] += BigInt::one();
        Self::new(c)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a divisor whose leading coefficient is ±1.
    pub fn div_rem_unit(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        assert!(
            lead.abs().is_one(),
            "divisor must have unit leading coefficient"
        );
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending-degree rendering in `x`, e.g. `x^4 - x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

type Cache<T> = OnceLock<RwLock<HashMap<u32, Arc<T>>>>;

fn cached<T>(cache: &'static Cache<T>, key: u32, build: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = map.read().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    // Filling twice is harmless: the value is a pure function of the key.
    let v = Arc::new(build());
    map.write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert(v)
        .clone()
}

static PHI_CACHE: Cache<IntPolynomial> = OnceLock::new();
static TABLE_CACHE: Cache<OrderTable> = OnceLock::new();

/// The N-th cyclotomic polynomial Φ_N, by exact division of `x^N - 1` by Φ_d
/// over the proper divisors d of N.
pub fn cyclotomic_polynomial(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    (*cyclotomic_polynomial_shared(n)).clone()
}

fn cyclotomic_polynomial_shared(n: u32) -> Arc<IntPolynomial> {
    cached(&PHI_CACHE, n, || {
        let mut num = IntPolynomial::x_pow_minus_one(n as usize);
        for d in arith::divisors(n as u64) {
            if d == n as u64 {
                continue;
            }
            let (q, r) = num.div_rem_unit(&cyclotomic_polynomial_shared(d as u32));
            debug_assert!(r.is_zero());
            num = q;
        }
        num
    })
}

/// Canonical coordinates of ζ_N^k for every k in `0..N`.
#[derive(Debug)]
struct OrderTable {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn order_table(n: u32) -> Arc<OrderTable> {
    cached(&TABLE_CACHE, n, || {
        let modulus = cyclotomic_polynomial_shared(n);
        let phi = modulus.degree().expect("nonzero");
        let low: Vec<i64> = modulus.coeffs()[..phi]
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then fold x^phi = -(low part of Φ_N)
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, l) in cur.iter_mut().zip(&low) {
                    *c = c
                        .checked_sub(top.checked_mul(*l).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        OrderTable { phi, powers }
    })
}

/// An element of `Z[ζ_N]` in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = order_table(order).phi;
        CyclotomicInt {
            order,
            coeffs: vec![BigInt::zero(); phi],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, c: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c.into();
        z
    }

    /// ζ_N^{k mod N}.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let n = order as i64;
        let k = k.rem_euclid(n) as usize;
        let table = order_table(order);
        CyclotomicInt {
            order,
            coeffs: table.powers[k].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Builds `Σ sums[k] ζ^k`, where `sums` is indexed by exponent (any length;
    /// exponents are taken mod N).
    pub fn from_exponent_sums(order: u32, sums: &[BigInt]) -> Self {
        let table = order_table(order);
        let n = order as usize;
        let mut folded: Vec<BigInt> = vec![BigInt::zero(); n];
        for (k, c) in sums.iter().enumerate() {
            if !c.is_zero() {
                folded[k % n] += c;
            }
        }
        Self::reduce_folded(order, &table, folded)
    }

    /// Builds `Σ counts[k] ζ^k` from small integer multiplicities.
    pub fn from_exponent_counts(order: u32, counts: &[i64]) -> Self {
        let table = order_table(order);
        let mut coeffs = vec![0i64; table.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (dst, src) in coeffs.iter_mut().zip(&table.powers[k % order as usize]) {
                *dst += c * src;
            }
        }
        CyclotomicInt {
            order,
            coeffs: coeffs.into_iter().map(BigInt::from).collect(),
        }
    }

    /// Accepts a polynomial in ζ of any degree and reduces it.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigInt>) -> Self {
        Self::from_exponent_sums(order, &coeffs)
    }

    fn reduce_folded(order: u32, table: &OrderTable, folded: Vec<BigInt>) -> Self {
        let phi = table.phi;
        let mut out: Vec<BigInt> = vec![BigInt::zero(); phi];
        for (k, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += c;
            } else {
                for (dst, &src) in out.iter_mut().zip(&table.powers[k]) {
                    if src != 0 {
                        *dst += &c * src;
                    }
                }
            }
        }
        CyclotomicInt { order, coeffs: out }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(|c| c.is_one())
    }

    /// The rational integer `c` when the element is `c·ζ^0`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The exponent `k` with `self == ζ_N^k`, if any.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        (0..self.order).find(|&k| *self == Self::root_of_unity(self.order, k as i64))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(CyclotomicInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order as usize;
        let table = order_table(self.order);
        if let Some(c) = self.as_integer() {
            return Ok(other.scale(&c));
        }
        if let Some(c) = other.as_integer() {
            return Ok(self.scale(&c));
        }
        let mut folded: Vec<BigInt> = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    folded[(i + j) % n] += a * b;
                }
            }
        }
        Ok(Self::reduce_folded(self.order, &table, folded))
    }

    /// Multiplication by a rational integer.
    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division by a rational integer, `None` if some coefficient is not divisible.
    pub fn div_integer(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CyclotomicInt {
            order: self.order,
            coeffs: out,
        })
    }

    /// gcd of all coefficients (zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation, `ζ ↦ ζ^{N-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.order as usize;
        let mut folded: Vec<BigInt> = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[(n - i) % n] += c;
            }
        }
        Self::reduce_folded(self.order, &order_table(self.order), folded)
    }

    /// The same number written in order `target`, via `ζ_N = ζ_M^{M/N}`.
    pub fn rescale_order(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::NotADivisor {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut folded: Vec<BigInt> = vec![BigInt::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                folded[i * step] += c;
            }
        }
        Ok(Self::reduce_folded(target, &order_table(target), folded))
    }

    /// `a · conj(a)`, a totally real element; a rational integer whenever `|a|²` is.
    pub fn abs_squared(&self) -> Self {
        self * &self.conjugate()
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Parses the text grammar produced by `Display`, e.g. `1 - 2*z12^3`.
    ///
    /// Every monomial must use the variable `z{order}`; exponents at or above
    /// φ(order) are accepted and reduced.
    pub fn parse(text: &str, order: u32) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("{msg} in {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        let var = format!("z{order}");
        let mut sums: Vec<BigInt> = vec![BigInt::zero(); order as usize];
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected '+' or '-'"));
            }
            let end = compact[pos..]
                .find(['+', '-'])
                .map_or(compact.len(), |i| pos + i);
            let term = &compact[pos..end];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (Some(c), Some(m)),
                None if term.starts_with('z') => (None, Some(term)),
                None => (Some(term), None),
            };
            let coef = match coef {
                Some(c) => c.parse::<BigInt>().map_err(|_| err("bad coefficient"))?,
                None => BigInt::one(),
            };
            let exp = match mono {
                None => 0usize,
                Some(m) => {
                    let (v, e) = match m.split_once('^') {
                        Some((v, e)) => (v, e.parse::<usize>().map_err(|_| err("bad exponent"))?),
                        None => (m, 1),
                    };
                    if v != var {
                        return Err(err("unexpected variable"));
                    }
                    e
                }
            };
            sums[exp % order as usize] += sign * coef;
            pos = end;
        }
        Ok(Self::from_exponent_sums(order, &sums))
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z{}", self.order)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicInt> for &CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CyclotomicInt> for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CyclotomicInt> for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

/// Smallest order in which both operands can be written.
pub fn common_order(a: u32, b: u32) -> u32 {
    arith::lcm(a, b)
}

/// Rescales both operands to their common order.
pub fn align(a: &CyclotomicInt, b: &CyclotomicInt) -> (CyclotomicInt, CyclotomicInt) {
    let n = common_order(a.order, b.order);
    (
        a.rescale_order(n).expect("lcm is a multiple"),
        b.rescale_order(n).expect("lcm is a multiple"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: u32, k: i64) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(order, k)
    }

    fn int(order: u32, c: i64) -> CyclotomicInt {
        CyclotomicInt::from_integer(order, c)
    }

    /// Oracle: plain schoolbook division of x^N - 1 by every Φ_d, d | N, d < N,
    /// using the textbook product formula instead of the memoized recursion.
    fn phi_by_mobius(n: u32) -> IntPolynomial {
        fn mobius(mut n: u64) -> i32 {
            let mut sign = 1;
            let mut p = 2;
            while p * p <= n {
                if n.is_multiple_of(p) {
                    n /= p;
                    if n.is_multiple_of(p) {
                        return 0;
                    }
                    sign = -sign;
                }
                p += 1;
            }
            if n > 1 {
                sign = -sign;
            }
            sign
        }
        let mut num = IntPolynomial::from_i64(&[1]);
        let mut den = IntPolynomial::from_i64(&[1]);
        for d in arith::divisors(n as u64) {
            let f = IntPolynomial::x_pow_minus_one(d as usize);
            match mobius(n as u64 / d) {
                1 => num = num.mul(&f),
                -1 => den = den.mul(&f),
                _ => {}
            }
        }
        let (q, r) = num.div_rem_unit(&den);
        assert!(r.is_zero());
        q
    }

    #[test]
    fn cyclotomic_polynomial_small_cases() {
        assert_eq!(cyclotomic_polynomial(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(
            cyclotomic_polynomial(4),
            IntPolynomial::from_i64(&[1, 0, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPolynomial::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic_polynomial(12).to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn cyclotomic_polynomial_agrees_with_mobius_product() {
        for n in 1..=105 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi, phi_by_mobius(n), "Φ_{n}");
            assert_eq!(phi.degree().unwrap() as u64, arith::euler_phi(n as u64));
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(2, 1), int(2, -1));
        assert_eq!(z(4, 1).coeffs(), &[BigInt::from(0), BigInt::from(1)]);
        assert!(z(3, 3).is_one());
        assert!(z(7, 0).is_one());
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn ring_operations() {
        assert!((int(3, 1) + z(3, 1) + z(3, 2)).is_zero());
        assert_eq!(z(4, 1) * z(4, 1), int(4, -1));
        // ζ_12^6 reduced by Φ_12 = x^4 - x^2 + 1
        assert_eq!(z(12, 3) * z(12, 3), int(12, -1));
        assert_eq!(z(12, 6), int(12, -1));
    }

    #[test]
    #[should_panic(expected = "order mismatch")]
    fn mixing_orders_panics() {
        let _ = z(3, 1) + z(4, 1);
    }

    #[test]
    fn checked_ops_report_mismatch() {
        assert_eq!(
            z(3, 1).checked_mul(&z(4, 1)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4, 1).conjugate(), -z(4, 1));
        // 1 + ζ_3 ↦ 1 + ζ_3^2 = -ζ_3
        assert_eq!((int(3, 1) + z(3, 1)).conjugate(), -z(3, 1));
        assert_eq!(int(7, -5).conjugate(), int(7, -5));
    }

    #[test]
    fn rescaling() {
        assert_eq!(int(2, -1).rescale_order(4).unwrap(), z(4, 2));
        assert_eq!(z(3, 1).rescale_order(12).unwrap(), z(12, 4));
        assert_eq!(z(4, 1).rescale_order(12).unwrap(), z(12, 3));
        assert_eq!(
            z(4, 1).rescale_order(6),
            Err(Error::NotADivisor { from: 4, to: 6 })
        );
    }

    #[test]
    fn abs_squared_values() {
        let a = int(3, 1) + z(3, 1).scale(&BigInt::from(2));
        assert_eq!(a.abs_squared(), int(3, 3));
        assert_eq!(z(4, 1).abs_squared(), int(4, 1));
        assert!(CyclotomicInt::zero(5).abs_squared().is_zero());
    }

    #[test]
    fn integer_detection() {
        assert_eq!(CyclotomicInt::zero(6).as_integer(), Some(BigInt::zero()));
        assert_eq!(
            (int(3, 1) + z(3, 1) + z(3, 2)).as_integer(),
            Some(BigInt::zero())
        );
        assert_eq!(z(3, 1).as_integer(), None);
        assert_eq!(z(12, 7).as_root_of_unity(), Some(7));
        assert_eq!(int(12, 2).as_root_of_unity(), None);
    }

    #[test]
    fn text_rendering_round_trips() {
        let a = int(12, 1) - z(12, 3).scale(&BigInt::from(2));
        assert_eq!(a.to_string(), "1 - 2*z12^3");
        assert_eq!(CyclotomicInt::parse("1 - 2*z12^3", 12).unwrap(), a);
        assert_eq!((-z(4, 1)).to_string(), "-z4");
        assert_eq!(CyclotomicInt::zero(3).to_string(), "0");
        assert_eq!(CyclotomicInt::parse("z3^2", 3).unwrap(), z(3, 2));
        assert!(CyclotomicInt::parse("1 + z4", 3).is_err());
        assert!(CyclotomicInt::parse("", 3).is_err());
    }

    #[test]
    fn exponent_counts_match_sum_of_powers() {
        let counts = [2i64, 0, 1, 3, 0, 1];
        let by_counts = CyclotomicInt::from_exponent_counts(6, &counts);
        let by_sum = counts
            .iter()
            .enumerate()
            .fold(CyclotomicInt::zero(6), |acc, (k, &c)| {
                acc + z(6, k as i64).scale(&BigInt::from(c))
            });
        assert_eq!(by_counts, by_sum);
    }
}
