//! Randomized property checks shared by the property tests and the
//! acceptance runner. Each check runs `cases` random inputs and returns the
//! first counterexample as an error string.

#![allow(dead_code)]

use std::sync::Arc;

use mubkit::finite_field::elements_by_code;
use mubkit::galois_ring::ring_elements;
use mubkit::mub::{mub_composite, tensor_product, verify_orthonormal, verify_unbiased_pair};
use mubkit::{CyclotomicInt, FieldContext, FieldElement, RingContext, RingElement};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const ORDERS: [u32; 9] = [1, 2, 3, 4, 5, 8, 9, 12, 15];
pub const FIELDS: [(u32, usize); 7] = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn finish(
    r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Random element of order `n` from small exponent-sum coefficients.
fn cyc(order: u32) -> impl Strategy<Value = CyclotomicInt> {
    prop::collection::vec(-4i64..=4, order as usize).prop_map(move |c| {
        let sums: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        CyclotomicInt::from_exponent_sums(order, &sums)
    })
}

fn cyc_triple() -> impl Strategy<Value = (CyclotomicInt, CyclotomicInt, CyclotomicInt)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

pub fn cyclotomic_ring_axioms(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&cyc_triple(), |(x, y, z)| {
        let n = x.order();
        let zero = CyclotomicInt::zero(n);
        let one = CyclotomicInt::one(n);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &zero, x.clone());
        prop_assert_eq!(&x * &one, x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
        Ok(())
    }))
}

pub fn conjugation_involution(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&cyc_triple(), |(x, y, _)| {
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        Ok(())
    }))
}

pub fn abs_squared_multiplicative(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&cyc_triple(), |(x, y, _)| {
        prop_assert_eq!((&x * &y).abs_squared(), &x.abs_squared() * &y.abs_squared());
        prop_assert_eq!(x.abs_squared().conjugate(), x.abs_squared());
        Ok(())
    }))
}

fn field_pair() -> impl Strategy<Value = (FieldElement, FieldElement, u32)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|(p, m)| {
        let ctx = FieldContext::new(p, m).expect("small field");
        let q = ctx.size();
        (0..q, 0..q, 0..p).prop_map(move |(a, b, c)| {
            (
                FieldElement::from_code(&ctx, a),
                FieldElement::from_code(&ctx, b),
                c,
            )
        })
    })
}

/// `tr(x + y) = tr x + tr y`, `tr(c·x) = c·tr x`, and every value of Z_p is
/// taken exactly `p^{m−1}` times over the field.
pub fn trace_linearity_and_balance(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&field_pair(), |(x, y, c)| {
        let ctx = x.context().clone();
        let p = ctx.characteristic();
        prop_assert_eq!((&x + &y).trace(), (x.trace() + y.trace()) % p);
        let cx = &FieldElement::from_int(&ctx, c) * &x;
        prop_assert_eq!(cx.trace(), (c * x.trace()) % p);
        let mut counts = vec![0u32; p as usize];
        for e in elements_by_code(&ctx) {
            counts[e.trace() as usize] += 1;
        }
        let expected = ctx.size() / p;
        prop_assert!(
            counts.iter().all(|&k| k == expected),
            "unbalanced: {:?}",
            counts
        );
        Ok(())
    }))
}

fn ring_pair() -> impl Strategy<Value = (RingElement, RingElement)> {
    (1usize..=4).prop_flat_map(|m| {
        let ctx: Arc<RingContext> = RingContext::new(m).expect("small ring");
        let size = ctx.size();
        (0..size, 0..size).prop_map(move |(a, b)| {
            (
                RingElement::from_code(&ctx, a),
                RingElement::from_code(&ctx, b),
            )
        })
    })
}

/// Frobenius is a ring automorphism of order m on GF(p^m) and on GR(4^m);
/// the ring trace is Z_4-linear.
pub fn frobenius_laws(cases: u32) -> Result<(), String> {
    finish(
        runner(cases).run(&(field_pair(), ring_pair()), |((x, y, _), (u, v))| {
            let m = x.context().degree();
            prop_assert_eq!((&x + &y).frobenius(), &x.frobenius() + &y.frobenius());
            prop_assert_eq!((&x * &y).frobenius(), &x.frobenius() * &y.frobenius());
            let mut z = x.clone();
            for _ in 0..m {
                z = z.frobenius();
            }
            prop_assert_eq!(&z, &x);
            prop_assert_eq!(x.frobenius(), x.pow(x.context().characteristic() as u64));

            let rm = u.context().degree();
            prop_assert_eq!((&u + &v).frobenius(), &u.frobenius() + &v.frobenius());
            prop_assert_eq!((&u * &v).frobenius(), &u.frobenius() * &v.frobenius());
            let mut w = u.clone();
            for _ in 0..rm {
                w = w.frobenius();
            }
            prop_assert_eq!(&w, &u);
            prop_assert_eq!((&u + &v).trace(), (u.trace() + v.trace()) % 4);
            Ok(())
        }),
    )
}

/// Exhaustive Frobenius check on every element of a ring (used as a sanity
/// anchor for the random version).
pub fn ring_frobenius_exhaustive(m: usize) -> bool {
    let ctx = RingContext::new(m).expect("ring");
    ring_elements(&ctx).iter().all(|u| {
        let mut w = u.clone();
        for _ in 0..m {
            w = w.frobenius();
        }
        w == *u
    })
}

/// Tensor products of orthonormal bases are orthonormal; tensor products of
/// two unbiased pairs are unbiased.
pub fn tensor_preservation(cases: u32) -> Result<(), String> {
    let sets: Vec<_> = [2u64, 3, 4, 5]
        .iter()
        .map(|&d| mub_composite(d).expect("small set"))
        .collect();
    let strategy = (
        0..sets.len(),
        0..sets.len(),
        0usize..6,
        0usize..6,
        0usize..6,
        0usize..6,
    );
    finish(runner(cases).run(&strategy, |(s, t, i, j, k, l)| {
        let (a, b) = (&sets[s], &sets[t]);
        let (i, j) = (i % a.len(), j % a.len());
        let (k, l) = (k % b.len(), l % b.len());
        let x = tensor_product(&a.bases[i], &b.bases[k]);
        prop_assert!(verify_orthonormal(&x).passed);
        if i != j && k != l {
            let y = tensor_product(&a.bases[j], &b.bases[l]);
            prop_assert!(verify_unbiased_pair(&x, &y).passed);
        }
        Ok(())
    }))
}

pub type PropertyCheck = fn(u32) -> Result<(), String>;

/// All property checks with their names.
pub fn all_properties() -> Vec<(&'static str, PropertyCheck)> {
    vec![
        ("cyclotomic ring axioms", cyclotomic_ring_axioms),
        ("conjugation involution", conjugation_involution),
        ("abs_squared multiplicativity", abs_squared_multiplicative),
        ("trace linearity and balance", trace_linearity_and_balance),
        ("Frobenius automorphism laws", frobenius_laws),
        ("tensor preservation", tensor_preservation),
    ]
}
