//! Hand-written models of the catalog monoids shared by the test targets.

#![allow(dead_code)]

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use finseries::carriers::CatalogCarrier;
use finseries::finmonoid::{MonoidElement as E, SupportDescriptor as D};

pub fn oracle_mul(c: &CatalogCarrier, a: &E, b: &E) -> Option<E> {
    match (c, a, b) {
        (CatalogCarrier::NatUsual | CatalogCarrier::NatDiscrete, E::Nat(x), E::Nat(y)) => Some(E::Nat(x + y)),
        (CatalogCarrier::IntUsual | CatalogCarrier::IntDiscrete, E::Int(x), E::Int(y)) => Some(E::Int(x + y)),
        (CatalogCarrier::PosNatMulUsual | CatalogCarrier::PosNatDivisibility, E::PosNat(x), E::PosNat(y)) => {
            Some(E::PosNat(x * y))
        }
        (CatalogCarrier::RationalGrid, E::Rat(x), E::Rat(y)) => Some(E::Rat(x + y)),
        (CatalogCarrier::FreeWords(_), E::Word(x), E::Word(y)) => Some(E::word(&format!("{x}{y}"))),
        (CatalogCarrier::Truncated(n), E::Bounded(x), E::Bounded(y)) => (x + y <= *n).then_some(E::Bounded(x + y)),
        _ => None,
    }
}

pub fn member(d: &D, e: &E) -> bool {
    match (d, e) {
        (D::Finite(s), _) => s.contains(e),
        (D::All, _) => true,
        (D::GridTail { a, n }, E::Rat(r)) => {
            let scaled = *r * Ratio::from_integer(*n as i64);
            scaled.is_integer() && scaled.to_integer() >= *a
        }
        (D::TailGe { a }, E::Int(v)) => v >= a,
        _ => false,
    }
}

pub fn words_upto(alpha: &[char], len: usize) -> Vec<E> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| alpha.iter().map(move |ch| format!("{w}{ch}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.iter().map(|w| E::word(w)).collect()
}

pub fn random_element(c: &CatalogCarrier, rng: &mut ChaCha8Rng) -> E {
    match c {
        CatalogCarrier::NatUsual | CatalogCarrier::NatDiscrete => E::Nat(rng.gen_range(0..=8)),
        CatalogCarrier::IntUsual | CatalogCarrier::IntDiscrete => E::Int(rng.gen_range(-5..=5)),
        CatalogCarrier::PosNatMulUsual | CatalogCarrier::PosNatDivisibility => E::PosNat(rng.gen_range(1..=24)),
        CatalogCarrier::RationalGrid => E::rat(rng.gen_range(-24..=24), rng.gen_range(1..=12)),
        CatalogCarrier::FreeWords(alpha) => {
            let len = rng.gen_range(0..=3);
            E::word(&(0..len).map(|_| *alpha.choose(rng).unwrap()).collect::<String>())
        }
        CatalogCarrier::Truncated(n) => E::Bounded(rng.gen_range(0..=*n)),
    }
}

pub fn random_descriptor(c: &CatalogCarrier, rng: &mut ChaCha8Rng) -> D {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..=5);
        return D::finite((0..k).map(|_| random_element(c, rng)));
    }
    match c {
        CatalogCarrier::IntUsual => D::TailGe { a: rng.gen_range(-3..=3) },
        CatalogCarrier::RationalGrid => D::GridTail {
            a: rng.gen_range(-4..=4),
            n: rng.gen_range(1..=4),
        },
        CatalogCarrier::NatDiscrete | CatalogCarrier::IntDiscrete | CatalogCarrier::PosNatDivisibility => {
            let k = rng.gen_range(0..=5);
            D::finite((0..k).map(|_| random_element(c, rng)))
        }
        _ => D::All,
    }
}

/// Elements that could be a factor of `m`, drawn from a range wide enough to
/// contain every decomposition.
pub fn candidates(c: &CatalogCarrier, d: &D, m: &E) -> Vec<E> {
    if let D::Finite(s) = d {
        return s.iter().cloned().collect();
    }
    match (c, m, d) {
        (CatalogCarrier::NatUsual, E::Nat(v), _) => (0..=*v).map(E::Nat).collect(),
        (CatalogCarrier::IntUsual, _, D::TailGe { a }) => (*a..=30).map(E::Int).collect(),
        (CatalogCarrier::PosNatMulUsual, E::PosNat(v), _) => (1..=*v).map(E::PosNat).collect(),
        (CatalogCarrier::RationalGrid, _, D::GridTail { a, n }) => {
            let n = *n as i64;
            // finite partners go down to -24, so a factor can reach 48
            (*a..=50 * n).map(|i| E::rat(i, n)).collect()
        }
        (CatalogCarrier::FreeWords(alpha), E::Word(w), _) => words_upto(alpha, w.chars().count()),
        (CatalogCarrier::Truncated(n), _, _) => (0..=*n).map(E::Bounded).collect(),
        _ => unreachable!("{c} with {d}"),
    }
}

pub fn brute_decompose(c: &CatalogCarrier, m: &E, s: &D, t: &D) -> Vec<(E, E)> {
    let mut out = Vec::new();
    for x in candidates(c, s, m) {
        for y in candidates(c, t, m) {
            if member(s, &x) && member(t, &y) && oracle_mul(c, &x, &y).as_ref() == Some(m) {
                out.push((x.clone(), y));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// μ(n) by trial-division factorization.
pub fn moebius_oracle(mut n: u64) -> i64 {
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
