//! The Galois rings GR(4^m) = Z_4[x]/(h(x)) and small quotient rings Z_n[x]/(f).
//!
//! GR(4^m) is built from a primitive binary polynomial by Hensel lifting it to
//! the basic primitive polynomial `h` over Z_4. Its residue class ξ of `x` has
//! order 2^m − 1, and every element splits uniquely as `a + 2b` with `a, b` in
//! the Teichmüller set `T_m = (0, 1, ξ, …, ξ^{2^m−2})`. Frobenius and trace are
//! defined through that splitting.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::finite_field::{find_modulus, power_label, tuple_string, zp, FieldContext};

fn decode4(code: u32, m: usize) -> Vec<u32> {
    zp::decode(code, 4, m)
}

fn encode4(c: &[u32]) -> u32 {
    zp::encode(c, 4)
}

/// Remainder of `a` by a monic `f` over Z_n (n need not be prime).
fn rem_monic(a: &[u32], f: &[u32], n: u32) -> Vec<u32> {
    let df = f.len() - 1;
    let mut r: Vec<u32> = a.iter().map(|c| c % n).collect();
    while r.len() > df {
        let k = r.len() - 1;
        let c = r[k];
        if c != 0 {
            for (j, &fc) in f.iter().enumerate() {
                let idx = k - df + j;
                r[idx] = ((r[idx] as u64 + (n - c) as u64 * fc as u64) % n as u64) as u32;
            }
        }
        r.pop();
    }
    r.resize(df, 0);
    r
}

fn mul_mod(a: &[u32], b: &[u32], f: &[u32], n: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % n as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    rem_monic(&out, f, n)
}

/// Hensel lift of a primitive binary polynomial to the basic primitive
/// polynomial over Z_4 (coefficients ascending, in `0..4`).
///
/// With `h2 = e − d` split into even- and odd-power parts, the lift `g`
/// satisfies `g(x²) = ±(e(x)² − d(x)²)`; the sign is the one making `g` monic.
pub fn hensel_lift(h2: &[u32]) -> Result<Vec<u32>> {
    let h2 = zp::trim(h2.to_vec());
    if h2.len() < 2 || h2.iter().any(|&c| c > 1) || h2.last() != Some(&1) {
        return Err(Error::InvalidModulus(
            "expected a monic binary polynomial of degree >= 1".into(),
        ));
    }
    let m = h2.len() - 1;
    let ctx = FieldContext::with_modulus(2, h2.clone())?;
    if !x_is_primitive(&ctx) {
        return Err(Error::InvalidModulus(format!(
            "{} is not primitive over Z_2",
            zp::render(&h2)
        )));
    }
    let even: Vec<i64> = h2
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { 0 })
        .collect();
    let odd: Vec<i64> = h2
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { 0 })
        .collect();
    let square = |p: &[i64]| {
        let mut out = vec![0i64; 2 * p.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let e2 = square(&even);
    let d2 = square(&odd);
    let diff: Vec<i64> = e2.iter().zip(&d2).map(|(a, b)| a - b).collect();
    debug_assert!(diff.iter().skip(1).step_by(2).all(|&c| c == 0));
    let mut g: Vec<i64> = diff.iter().step_by(2).copied().collect();
    g.truncate(m + 1);
    if g[m] < 0 {
        g.iter_mut().for_each(|c| *c = -*c);
    }
    debug_assert_eq!(g[m], 1);
    Ok(g.into_iter().map(|c| c.rem_euclid(4) as u32).collect())
}

/// Whether the residue class of x has order p^m − 1.
fn x_is_primitive(ctx: &Arc<FieldContext>) -> bool {
    let x = if ctx.degree() == 1 {
        crate::finite_field::FieldElement::from_coeffs(ctx, &[(2 - ctx.modulus()[0]) % 2])
    } else {
        crate::finite_field::FieldElement::from_coeffs(ctx, &[0, 1])
    };
    let order = (ctx.size() - 1) as u64;
    if x.is_zero() {
        return false;
    }
    arith::divisors(order)
        .into_iter()
        .find(|&k| x.pow(k).code() == 1)
        == Some(order)
}

/// GR(4^m) with its Teichmüller set and decomposition table.
#[derive(Debug)]
pub struct RingContext {
    m: usize,
    h: Vec<u32>,
    size: u32,
    teichmuller: Vec<u32>,
    /// For every element code, the Teichmüller indices `(a, b)` with element = a + 2b.
    decompose: Vec<(u16, u16)>,
    teich_index: Vec<Option<u16>>,
}

impl RingContext {
    /// GR(4^m) lifted from the default binary modulus of [`find_modulus`].
    pub fn new(m: usize) -> Result<Arc<Self>> {
        let h2 = find_modulus(2, m)?;
        Self::from_binary(&h2)
    }

    /// GR(4^m) lifted from a given primitive binary polynomial.
    pub fn from_binary(h2: &[u32]) -> Result<Arc<Self>> {
        Self::from_basic_primitive(hensel_lift(h2)?)
    }

    /// GR(4^m) over an explicit basic primitive polynomial (ascending, over Z_4).
    pub fn from_basic_primitive(h: Vec<u32>) -> Result<Arc<Self>> {
        let h = zp::trim(h);
        if h.len() < 2 || h.last() != Some(&1) || h.iter().any(|&c| c > 3) {
            return Err(Error::InvalidModulus(
                "expected a monic polynomial over Z_4 of degree >= 1".into(),
            ));
        }
        let m = h.len() - 1;
        let h2: Vec<u32> = h.iter().map(|c| c % 2).collect();
        let field = FieldContext::with_modulus(2, h2)?;
        if !x_is_primitive(&field) {
            return Err(Error::InvalidModulus("h mod 2 is not primitive".into()));
        }
        let size = 4u32
            .checked_pow(m as u32)
            .ok_or_else(|| Error::InvalidModulus("ring too large".into()))?;
        let r = (1u32 << m) - 1;
        // h must divide x^r - 1 over Z_4
        let mut xr = vec![0u32; r as usize + 1];
        xr[0] = 3;
        xr[r as usize] += 1;
        if rem_monic(&xr, &h, 4).iter().any(|&c| c != 0) {
            return Err(Error::InvalidModulus(format!(
                "{} does not divide x^{r} - 1 over Z_4",
                zp::render(&h)
            )));
        }
        let xi = rem_monic(&[0, 1], &h, 4);
        let mut teichmuller = vec![0u32];
        let mut cur = rem_monic(&[1], &h, 4);
        for _ in 0..r {
            teichmuller.push(encode4(&cur));
            cur = mul_mod(&cur, &xi, &h, 4);
        }
        if encode4(&cur) != 1 {
            return Err(Error::InvalidModulus("ξ^(2^m-1) != 1".into()));
        }
        let mut teich_index = vec![None; size as usize];
        for (i, &t) in teichmuller.iter().enumerate() {
            if teich_index[t as usize].replace(i as u16).is_some() {
                return Err(Error::InvalidModulus(
                    "powers of ξ are not pairwise distinct".into(),
                ));
            }
        }
        let mut decompose = vec![(u16::MAX, u16::MAX); size as usize];
        for (ia, &a) in teichmuller.iter().enumerate() {
            for (ib, &b) in teichmuller.iter().enumerate() {
                let sum: Vec<u32> = decode4(a, m)
                    .iter()
                    .zip(decode4(b, m))
                    .map(|(x, y)| (x + 2 * y) % 4)
                    .collect();
                let slot = &mut decompose[encode4(&sum) as usize];
                if slot.0 != u16::MAX {
                    return Err(Error::InvalidModulus(
                        "Teichmüller decomposition is not unique".into(),
                    ));
                }
                *slot = (ia as u16, ib as u16);
            }
        }
        Ok(Arc::new(RingContext {
            m,
            h,
            size,
            teichmuller,
            decompose,
            teich_index,
        }))
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Ascending coefficients of the basic primitive polynomial over Z_4.
    pub fn basic_primitive(&self) -> &[u32] {
        &self.h
    }

    /// The basic primitive polynomial with coefficients in `{-1, 0, 1, 2}`, as
    /// it is customarily written (e.g. `x^3 + 2x^2 + x - 1`).
    pub fn basic_primitive_string(&self) -> String {
        let mut terms = Vec::new();
        for (k, &c) in self.h.iter().enumerate().rev() {
            let c = if c == 3 { -1i32 } else { c as i32 };
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let mag = c.unsigned_abs();
            let body = match (mag, k) {
                (_, 0) => mag.to_string(),
                (1, _) => mono,
                _ => format!("{mag}{mono}"),
            };
            if terms.is_empty() {
                terms.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
            }
        }
        terms.join(" ")
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        let s: Vec<u32> = decode4(a, self.m)
            .iter()
            .zip(decode4(b, self.m))
            .map(|(x, y)| (x + y) % 4)
            .collect();
        encode4(&s)
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        encode4(&mul_mod(
            &decode4(a, self.m),
            &decode4(b, self.m),
            &self.h,
            4,
        ))
    }

    fn scale_code(&self, k: u32, a: u32) -> u32 {
        let s: Vec<u32> = decode4(a, self.m).iter().map(|x| x * k % 4).collect();
        encode4(&s)
    }
}

/// An element of GR(4^m).
#[derive(Clone)]
pub struct RingElement {
    ctx: Arc<RingContext>,
    code: u32,
}

impl RingElement {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Self::from_code(ctx, 0)
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::from_coeffs(ctx, &[1])
    }

    pub fn from_code(ctx: &Arc<RingContext>, code: u32) -> Self {
        assert!(code < ctx.size, "code {code} outside GR(4^{})", ctx.m);
        RingElement {
            ctx: ctx.clone(),
            code,
        }
    }

    /// Reduces an arbitrary coefficient vector (ascending) modulo 4 and h.
    pub fn from_coeffs(ctx: &Arc<RingContext>, coeffs: &[u32]) -> Self {
        Self::from_code(ctx, encode4(&rem_monic(coeffs, &ctx.h, 4)))
    }

    /// The `k`-th entry of the Teichmüller list (index 0 is zero, index j+1 is ξ^j).
    pub fn teichmuller(ctx: &Arc<RingContext>, k: usize) -> Self {
        Self::from_code(ctx, ctx.teichmuller[k])
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    /// Ascending coefficients over Z_4, length m.
    pub fn coeffs(&self) -> Vec<u32> {
        decode4(self.code, self.ctx.m)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    /// Position in the Teichmüller list, if the element belongs to it.
    pub fn teichmuller_index(&self) -> Option<usize> {
        self.ctx.teich_index[self.code as usize].map(usize::from)
    }

    fn with_code(&self, code: u32) -> Self {
        RingElement {
            ctx: self.ctx.clone(),
            code,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.h == other.ctx.h {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_code(self.ctx.add_codes(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_code(self.ctx.mul_codes(self.code, other.code)))
    }

    /// Multiplication by a rational integer.
    pub fn scale(&self, k: u32) -> Self {
        self.with_code(self.ctx.scale_code(k % 4, self.code))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = RingElement::one(&self.ctx).code;
        let mut base = self.code;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ctx.mul_codes(acc, base);
            }
            base = self.ctx.mul_codes(base, base);
            e >>= 1;
        }
        self.with_code(acc)
    }

    /// The unique `(a, b)` in `T_m × T_m` with `self = a + 2b`.
    ///
    /// `a` is computed as `β^{2^m}`; `b` is read off the table of `2t`, `t ∈ T_m`,
    /// since 2 is a zero divisor and cannot be divided out.
    pub fn teichmuller_decompose(&self) -> (RingElement, RingElement) {
        let a = self.pow(1u64 << self.ctx.m);
        let diff = self - &a;
        let b = self
            .ctx
            .teichmuller
            .iter()
            .map(|&t| self.with_code(t))
            .find(|t| t.scale(2) == diff)
            .expect("β - β^(2^m) is twice a Teichmüller element");
        debug_assert_eq!(
            self.ctx.decompose[self.code as usize],
            (
                self.ctx.teich_index[a.code as usize].expect("a in T_m"),
                self.ctx.teich_index[b.code as usize].expect("b in T_m")
            )
        );
        (a, b)
    }

    /// `σ(a + 2b) = a² + 2b²`.
    pub fn frobenius(&self) -> Self {
        let (a, b) = self.teichmuller_decompose();
        &(&a * &a) + &(&b * &b).scale(2)
    }

    /// `Σ_{k=0}^{m-1} σ^k(β)`, an element of Z_4.
    pub fn trace(&self) -> u32 {
        let mut acc = RingElement::zero(&self.ctx);
        let mut cur = self.clone();
        for _ in 0..self.ctx.m {
            acc = &acc + &cur;
            cur = cur.frobenius();
        }
        let c = acc.coeffs();
        assert!(c[1..].iter().all(|&x| x == 0), "trace left Z_4");
        c[0]
    }

    /// Coefficients reduced mod 2 (ascending).
    pub fn reduce_mod2(&self) -> Vec<u32> {
        self.coeffs().iter().map(|c| c % 2).collect()
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.ctx.h == other.ctx.h
    }
}

impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.h.hash(state);
        self.code.hash(state);
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", zp::render(&self.coeffs()))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR(4^{})[{}]", self.ctx.m, self)
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(3)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// `T_m = (0, 1, ξ, …, ξ^{2^m−2})`.
pub fn teichmuller_set(ctx: &Arc<RingContext>) -> Vec<RingElement> {
    (0..ctx.teichmuller.len())
        .map(|k| RingElement::teichmuller(ctx, k))
        .collect()
}

/// Every ring element in code order.
pub fn ring_elements(ctx: &Arc<RingContext>) -> Vec<RingElement> {
    (0..ctx.size)
        .map(|c| RingElement::from_code(ctx, c))
        .collect()
}

/// Rows indexed by `a ∈ T_m`, columns by `b ∈ T_m`, entries `a + 2b`.
pub fn decomposition_matrix(ctx: &Arc<RingContext>) -> Vec<Vec<RingElement>> {
    let t = teichmuller_set(ctx);
    t.iter()
        .map(|a| t.iter().map(|b| a + &b.scale(2)).collect())
        .collect()
}

/// One row of the Teichmüller representation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeichmullerRow {
    /// Exponent k of ξ^k; `None` for zero.
    pub power: Option<u32>,
    pub polynomial: String,
    /// Z_4 coefficients, highest degree first.
    pub z4_tuple: Vec<u32>,
    /// The same coefficients reduced mod 2, highest degree first.
    pub z2_tuple: Vec<u32>,
}

pub fn teichmuller_table(ctx: &Arc<RingContext>) -> Vec<TeichmullerRow> {
    teichmuller_set(ctx)
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let mut z4 = t.coeffs();
            z4.reverse();
            let z2 = z4.iter().map(|c| c % 2).collect();
            TeichmullerRow {
                power: i.checked_sub(1).map(|k| k as u32),
                polynomial: t.to_string(),
                z4_tuple: z4,
                z2_tuple: z2,
            }
        })
        .collect()
}

pub fn render_teichmuller_table(ctx: &Arc<RingContext>) -> String {
    let header = [
        "power of ξ".to_string(),
        "polynomial".to_string(),
        format!("{}-tuple over Z_4", ctx.m),
        format!("{}-tuple over Z_2", ctx.m),
    ];
    let rows: Vec<[String; 4]> = teichmuller_table(ctx)
        .into_iter()
        .map(|r| {
            [
                power_label("ξ", r.power),
                r.polynomial,
                tuple_string(&r.z4_tuple),
                tuple_string(&r.z2_tuple),
            ]
        })
        .collect();
    crate::render::aligned_table(&header, &rows)
}

/// Z_n[x]/(f) for a monic `f`, with explicit enumeration of its n^deg(f) elements.
///
/// Elements are ascending coefficient vectors of length `deg f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    n: u32,
    f: Vec<u32>,
}

/// Enumeration is bounded at this many elements.
pub const QUOTIENT_RING_LIMIT: u64 = 10_000;

impl QuotientRing {
    pub fn new(n: u32, f: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(format!("coefficient modulus {n}")));
        }
        let f: Vec<u32> = zp::trim(f.into_iter().map(|c| c % n).collect());
        if f.len() < 2 || f.last() != Some(&1) {
            return Err(Error::InvalidModulus(
                "f must be monic of degree >= 1".into(),
            ));
        }
        let deg = (f.len() - 1) as u32;
        if (n as u64)
            .checked_pow(deg)
            .is_none_or(|s| s > QUOTIENT_RING_LIMIT)
        {
            return Err(Error::InvalidModulus("quotient ring too large".into()));
        }
        Ok(QuotientRing { n, f })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn size(&self) -> usize {
        (self.n as usize).pow(self.degree() as u32)
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        (0..self.size() as u32)
            .map(|c| zp::decode(c, self.n, self.degree()))
            .collect()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.degree()]
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.n).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        mul_mod(a, b, &self.f, self.n)
    }

    pub fn scale(&self, k: u32, a: &[u32]) -> Vec<u32> {
        a.iter()
            .map(|x| (*x as u64 * k as u64 % self.n as u64) as u32)
            .collect()
    }

    pub fn render(&self, a: &[u32]) -> String {
        zp::render(a)
    }

    /// `{x : k·x = 0}`.
    pub fn annihilator(&self, k: u32) -> Vec<Vec<u32>> {
        let zero = self.zero();
        self.elements()
            .into_iter()
            .filter(|x| self.scale(k, x) == zero)
            .collect()
    }
}

/// The two primary components of a quotient ring over Z_n with n = q_a·q_b,
/// `S_a = {x : q_a x = 0}` and `S_b = {x : q_b x = 0}` for the prime powers
/// q_a < q_b exactly dividing n.
#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    pub s_a: Vec<Vec<u32>>,
    pub s_b: Vec<Vec<u32>>,
    /// Every element is `a + b` for exactly one pair.
    pub unique: bool,
}

pub fn sylow_decomposition(ring: &QuotientRing) -> Result<SylowDecomposition> {
    let parts = arith::factorize(ring.n as u64);
    let [(pa, ea), (pb, eb)] = parts.as_slice() else {
        return Err(Error::InvalidModulus(format!(
            "coefficient modulus {} is not a product of two prime powers",
            ring.n
        )));
    };
    let qa = pa.pow(*ea) as u32;
    let qb = pb.pow(*eb) as u32;
    let s_a = ring.annihilator(qa);
    let s_b = ring.annihilator(qb);
    let mut seen = HashSet::new();
    let mut unique = true;
    for a in &s_a {
        for b in &s_b {
            unique &= seen.insert(ring.add(a, b));
        }
    }
    unique &= seen.len() == ring.size();
    Ok(SylowDecomposition { s_a, s_b, unique })
}

/// Outcome of [`verify_subfield`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldReport {
    pub additively_closed: bool,
    pub identity: Option<Vec<u32>>,
    pub multiplicatively_closed: bool,
    pub all_invertible: bool,
    pub is_field: bool,
    /// Order of the multiplicative group when `is_field`.
    pub group_order: Option<usize>,
    pub failure: Option<String>,
}

/// Decides whether `set`, with the ring's operations, is a field in its own
/// right. The multiplicative identity is searched for inside the set, so it
/// need not be the ring's 1.
pub fn verify_subfield(set: &[Vec<u32>], ring: &QuotientRing) -> SubfieldReport {
    let members: HashSet<&Vec<u32>> = set.iter().collect();
    let zero = ring.zero();
    let mut report = SubfieldReport {
        additively_closed: true,
        identity: None,
        multiplicatively_closed: true,
        all_invertible: false,
        is_field: false,
        group_order: None,
        failure: None,
    };
    for a in set {
        for b in set {
            if !members.contains(&ring.add(a, b)) {
                report.additively_closed = false;
                report.failure = Some(format!(
                    "{} + {} leaves the set",
                    ring.render(a),
                    ring.render(b)
                ));
                return report;
            }
            if !members.contains(&ring.mul(a, b)) {
                report.multiplicatively_closed = false;
                report.failure = Some(format!(
                    "{} * {} leaves the set",
                    ring.render(a),
                    ring.render(b)
                ));
            }
        }
    }
    let nonzero: Vec<&Vec<u32>> = set.iter().filter(|x| **x != zero).collect();
    report.identity = nonzero
        .iter()
        .find(|e| set.iter().all(|x| ring.mul(e, x) == *x))
        .map(|e| (*e).clone());
    let Some(e) = report.identity.clone() else {
        report
            .failure
            .get_or_insert_with(|| "no multiplicative identity in the set".into());
        return report;
    };
    report.all_invertible = nonzero
        .iter()
        .all(|x| nonzero.iter().any(|y| ring.mul(x, y) == e));
    if !report.all_invertible {
        report
            .failure
            .get_or_insert_with(|| "some nonzero element has no inverse".into());
    }
    report.is_field = report.multiplicatively_closed && report.all_invertible;
    if report.is_field {
        report.group_order = Some(nonzero.len());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(m: usize) -> Arc<RingContext> {
        RingContext::new(m).unwrap()
    }

    fn strings(v: &[RingElement]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn lifts_of_binary_defaults() {
        assert_eq!(hensel_lift(&[1, 1, 1]).unwrap(), vec![1, 1, 1]);
        assert_eq!(hensel_lift(&[1, 1, 0, 1]).unwrap(), vec![3, 1, 2, 1]);
        assert_eq!(hensel_lift(&[1, 1, 0, 0, 1]).unwrap(), vec![1, 3, 2, 0, 1]);
        assert_eq!(gr(3).basic_primitive_string(), "x^3 + 2x^2 + x - 1");
        assert_eq!(gr(4).basic_primitive_string(), "x^4 + 2x^2 - x + 1");
    }

    #[test]
    fn lift_rejects_bad_input() {
        // x^2 + 1 = (x + 1)^2
        assert!(hensel_lift(&[1, 0, 1]).is_err());
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        assert!(hensel_lift(&[1, 1, 1, 1, 1]).is_err());
        assert!(hensel_lift(&[1, 2, 1]).is_err());
    }

    #[test]
    fn teichmuller_sets() {
        assert_eq!(strings(&teichmuller_set(&gr(2))), ["0", "1", "x", "3+3x"]);
        assert_eq!(
            strings(&teichmuller_set(&gr(3))),
            [
                "0",
                "1",
                "x",
                "x^2",
                "1+3x+2x^2",
                "2+3x+3x^2",
                "3+3x+x^2",
                "1+2x+x^2"
            ]
        );
        assert_eq!(strings(&teichmuller_set(&gr(1))), ["0", "1"]);
    }

    #[test]
    fn decompositions() {
        let ctx = gr(2);
        let beta = RingElement::from_coeffs(&ctx, &[2, 1]);
        let (a, b) = beta.teichmuller_decompose();
        assert_eq!((a.to_string(), b.to_string()), ("x".into(), "1".into()));
        let t = RingElement::from_coeffs(&ctx, &[3, 3]);
        let (a, b) = t.teichmuller_decompose();
        assert_eq!((a, b.is_zero()), (t, true));
        let z4 = gr(1);
        let (a, b) = RingElement::from_coeffs(&z4, &[3]).teichmuller_decompose();
        assert_eq!((a.to_string(), b.to_string()), ("1".into(), "1".into()));
    }

    #[test]
    fn frobenius_and_trace() {
        let ctx = gr(2);
        let x = RingElement::from_coeffs(&ctx, &[0, 1]);
        assert!(RingElement::zero(&ctx).frobenius().is_zero());
        assert_eq!(x.frobenius().to_string(), "3+3x");
        assert_eq!(RingElement::zero(&ctx).trace(), 0);
        assert_eq!(RingElement::one(&ctx).trace(), 2);
        assert_eq!(x.trace(), 3);
        for m in 1..=3 {
            let ctx = gr(m);
            for b in ring_elements(&ctx) {
                let mut cur = b.clone();
                for _ in 0..m {
                    cur = cur.frobenius();
                }
                assert_eq!(cur, b);
                let (a, t) = b.teichmuller_decompose();
                assert_eq!(&a + &t.scale(2), b);
            }
        }
    }

    #[test]
    fn decomposition_matrix_rows() {
        let rows = decomposition_matrix(&gr(2));
        assert_eq!(strings(&rows[0]), ["0", "2", "2x", "2+2x"]);
        assert_eq!(strings(&rows[3]), ["3+3x", "1+3x", "3+x", "1+x"]);
        let z4: Vec<Vec<String>> = decomposition_matrix(&gr(1))
            .iter()
            .map(|r| strings(r))
            .collect();
        assert_eq!(z4, [["0", "2"], ["1", "3"]]);
    }

    #[test]
    fn xi_has_full_order() {
        for m in 1..=4 {
            let ctx = gr(m);
            let r = (1u64 << m) - 1;
            let xi = RingElement::teichmuller(&ctx, if m == 1 { 1 } else { 2 });
            assert!(xi.pow(r) == RingElement::one(&ctx));
            for k in 1..r {
                assert!(xi.pow(k) != RingElement::one(&ctx));
            }
        }
    }

    #[test]
    fn teichmuller_reduces_onto_binary_field() {
        for m in 1..=4 {
            let ctx = gr(m);
            let images: HashSet<Vec<u32>> = teichmuller_set(&ctx)
                .iter()
                .map(RingElement::reduce_mod2)
                .collect();
            assert_eq!(images.len(), 1 << m);
        }
    }

    #[test]
    fn sylow_components_of_gr36() {
        let ring = QuotientRing::new(6, vec![1, 3, 1]).unwrap();
        let dec = sylow_decomposition(&ring).unwrap();
        let render =
            |s: &[Vec<u32>]| -> HashSet<String> { s.iter().map(|x| ring.render(x)).collect() };
        let sa: HashSet<String> = ["0", "3", "3x", "3+3x"].map(String::from).into();
        let sb: HashSet<String> = ["0", "2", "4", "2x", "4x", "2+2x", "2+4x", "4+2x", "4+4x"]
            .map(String::from)
            .into();
        assert_eq!(render(&dec.s_a), sa);
        assert_eq!(render(&dec.s_b), sb);
        assert_eq!(dec.s_a.len() * dec.s_b.len(), 36);
        assert!(dec.unique);

        let fa = verify_subfield(&dec.s_a, &ring);
        assert!(fa.is_field);
        assert_eq!(fa.group_order, Some(3));
        let fb = verify_subfield(&dec.s_b, &ring);
        assert!(fb.is_field);
        assert_eq!(fb.group_order, Some(8));
        let trivial = verify_subfield(&[ring.zero()], &ring);
        assert!(!trivial.is_field);
        assert!(trivial.identity.is_none());
    }

    #[test]
    fn sylow_needs_two_prime_powers() {
        let ring = QuotientRing::new(4, vec![1, 1, 1]).unwrap();
        assert!(sylow_decomposition(&ring).is_err());
    }
}
