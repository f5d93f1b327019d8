//! Property tests. Oracles here are written out by hand and do not call the
//! routine under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finseries::carriers::{classify_subset, increasing_subsequence, is_strict_map, CatalogCarrier, FinitePoset};
use finseries::coeff::{check_ring_axioms, Coeff, Ring};
use finseries::finmonoid::{MonoidElement as E, PartialFinitenessMonoid, SupportDescriptor as D};
use finseries::finpf::{PartialFn, SetSystem, Subset};
use finseries::selftest::{law_window, random_coeff, random_poset, random_series, sample_rings};
use finseries::{AnyRing, GenSeries};

mod common;
use common::{brute_decompose, candidates, member, oracle_mul, random_descriptor, random_element};

fn catalog(i: usize) -> CatalogCarrier {
    CatalogCarrier::catalog()[i].clone()
}

// coefficient rings

proptest! {
    #[test]
    fn ring_laws_hold_on_samples(ring_ix in 0usize..4, seed in any::<u64>()) {
        let ring = &sample_rings()[ring_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<Coeff> = (0..5).map(|_| random_coeff(ring, &mut rng)).collect();
        let bad = check_ring_axioms(ring, &samples);
        prop_assert!(bad.is_empty(), "{}", bad[0]);
    }

    #[test]
    fn rationals_compare_by_value(p in -50i64..50, q in 1i64..50, k in 1i64..20) {
        let a = BigRational::new(BigInt::from(p), BigInt::from(q));
        let b = BigRational::new(BigInt::from(p * k), BigInt::from(q * k));
        prop_assert!(AnyRing::Rationals.equal(&Coeff::Rat(a), &Coeff::Rat(b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn decomposition_matches_brute_force(ix in 0usize..9, seed in any::<u64>()) {
        let c = catalog(ix);
        let monoid = PartialFinitenessMonoid::catalog(c.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_element(&c, &mut rng);
        let s = random_descriptor(&c, &mut rng);
        let t = random_descriptor(&c, &mut rng);
        let mut got = monoid.decompose_within(&m, &s, &t).unwrap();
        got.sort();
        prop_assert_eq!(got, brute_decompose(&c, &m, &s, &t));
    }

    #[test]
    fn mul_bound_contains_every_product(ix in 0usize..9, seed in any::<u64>()) {
        let c = catalog(ix);
        let monoid = PartialFinitenessMonoid::catalog(c.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_descriptor(&c, &mut rng);
        let t = random_descriptor(&c, &mut rng);
        let bound = monoid.mul_bound(&s, &t).unwrap();
        prop_assert!(monoid.admits(&bound).is_ok());
        let probe = random_element(&c, &mut rng);
        for x in candidates(&c, &s, &probe).into_iter().filter(|x| member(&s, x)).take(40) {
            for y in candidates(&c, &t, &probe).into_iter().filter(|y| member(&t, y)).take(40) {
                if let Some(p) = oracle_mul(&c, &x, &y) {
                    prop_assert!(member(&bound, &p), "{x}·{y} = {p} escapes {bound}");
                }
            }
        }
        let union = monoid.union_bound(&s, &t).unwrap();
        for x in candidates(&c, &s, &probe).into_iter().filter(|x| member(&s, x)).take(40) {
            prop_assert!(member(&union, &x));
        }
    }

    #[test]
    fn admission_agrees_with_classification(ix in 0usize..9, kind in 0usize..4, a in -4i64..4, n in 1u64..5, seed in any::<u64>()) {
        let c = catalog(ix);
        let monoid = PartialFinitenessMonoid::catalog(c.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = match kind {
            0 => D::finite((0..3).map(|_| random_element(&c, &mut rng))),
            1 => D::All,
            2 => D::GridTail { a, n },
            _ => D::TailGe { a },
        };
        let cls = classify_subset(&c, &d);
        if let Ok(k) = &cls {
            prop_assert!(!(k.artinian && k.noetherian && k.narrow) || k.finite);
        }
        let expected = matches!(cls, Ok(k) if k.artinian && k.narrow);
        prop_assert_eq!(monoid.admits(&d).is_ok(), expected);
    }
}

#[test]
fn truncated_multiplication_is_partially_associative() {
    for n in 0..=6u64 {
        let c = CatalogCarrier::Truncated(n);
        let m = PartialFinitenessMonoid::catalog(c.clone()).unwrap();
        let els: Vec<E> = (0..=n).map(E::Bounded).collect();
        let op = |a: Option<E>, b: Option<E>| match (a, b) {
            (Some(a), Some(b)) => m.mul(&a, &b).unwrap(),
            _ => None,
        };
        for a in &els {
            assert_eq!(m.mul(&m.unit(), a).unwrap().as_ref(), Some(a));
            assert_eq!(m.mul(a, &m.unit()).unwrap().as_ref(), Some(a));
            for b in &els {
                assert_eq!(m.mul(a, b).unwrap(), oracle_mul(&c, a, b));
                for d in &els {
                    let l = op(m.mul(a, b).unwrap(), Some(d.clone()));
                    let r = op(Some(a.clone()), m.mul(b, d).unwrap());
                    assert_eq!(l, r);
                }
            }
        }
    }
}

// posets

fn lis_len(seq: &[i64], rel: impl Fn(i64, i64) -> bool) -> usize {
    let mut best = vec![1usize; seq.len()];
    for j in 0..seq.len() {
        for i in 0..j {
            if rel(seq[i], seq[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn brute_height(p: &FinitePoset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&mask| (0..n).all(|i| (0..n).all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || p.comparable(i, j))))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn longest_increasing_matches_oracle(seq in prop::collection::vec(-20i64..20, 0..14)) {
        let els: Vec<E> = seq.iter().map(|&v| E::Int(v)).collect();
        let idx = increasing_subsequence(&CatalogCarrier::IntUsual, &els);
        prop_assert!(idx.windows(2).all(|w| w[0] < w[1] && seq[w[0]] <= seq[w[1]]));
        prop_assert_eq!(idx.len(), lis_len(&seq, |a, b| a <= b));
    }

    #[test]
    fn increasing_times_decreasing_covers_distinct_sequences(set in prop::collection::btree_set(-40i64..40, 0..17), seed in any::<u64>()) {
        let mut seq: Vec<i64> = set.into_iter().collect();
        seq.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let up: Vec<E> = seq.iter().map(|&v| E::Int(v)).collect();
        let down: Vec<E> = seq.iter().rev().map(|&v| E::Int(v)).collect();
        let inc = increasing_subsequence(&CatalogCarrier::IntUsual, &up).len();
        let dec = increasing_subsequence(&CatalogCarrier::IntUsual, &down).len();
        prop_assert!(inc * dec >= seq.len());
    }

    #[test]
    fn chains_survive_order_reversal(n in 0usize..9, density in 0.0f64..1.0, seed in any::<u64>()) {
        let p = random_poset(n, density, &mut ChaCha8Rng::seed_from_u64(seed));
        let chain = p.longest_chain();
        prop_assert!(p.is_chain(&chain));
        prop_assert_eq!(chain.len(), brute_height(&p));
        prop_assert_eq!(p.dual().longest_chain().len(), chain.len());

        let anti = p.largest_antichain().unwrap();
        prop_assert!(p.is_antichain(&anti));
        prop_assert!(chain.len() * anti.len() >= n);
    }

    #[test]
    fn strict_maps_compose(sizes in (1usize..4, 1usize..4, 1usize..4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poset(sizes.0, 0.5, &mut rng);
        let q = random_poset(sizes.1, 0.5, &mut rng);
        let r = random_poset(sizes.2, 0.5, &mut rng);
        let all_maps = |from: usize, to: usize| -> Vec<Vec<usize>> {
            (0..to.pow(from as u32))
                .map(|mut k| (0..from).map(|_| { let v = k % to; k /= to; v }).collect())
                .collect()
        };
        let fs: Vec<_> = all_maps(p.len(), q.len()).into_iter().filter(|f| is_strict_map(f, &p, &q)).collect();
        let gs: Vec<_> = all_maps(q.len(), r.len()).into_iter().filter(|g| is_strict_map(g, &q, &r)).collect();
        for f in &fs {
            for g in &gs {
                let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                prop_assert!(is_strict_map(&gf, &p, &r));
            }
        }
    }
}

// finite finiteness spaces

fn family(n: usize, bits: u64) -> Vec<Subset> {
    (0..1u64 << n).filter(|s| bits >> s & 1 == 1).map(Subset).collect()
}

fn random_fn(dom: usize, cod: usize, rng: &mut ChaCha8Rng) -> PartialFn {
    let graph = (0..dom)
        .map(|_| (cod > 0 && rng.gen_bool(0.7)).then(|| rng.gen_range(0..cod)))
        .collect();
    PartialFn::new(graph, cod).unwrap()
}

proptest! {
    #[test]
    fn perp_laws(n in 0usize..=4, u_bits in any::<u64>(), extra in any::<u64>()) {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let u = SetSystem::new(labels.clone(), family(n, u_bits)).unwrap();
        let v = SetSystem::new(labels, family(n, u_bits | extra)).unwrap();
        let up = u.perp().unwrap();
        let upp = up.perp().unwrap();
        prop_assert!(u.is_subfamily_of(&upp));
        prop_assert_eq!(&upp.perp().unwrap(), &up);
        prop_assert!(v.perp().unwrap().is_subfamily_of(&up));
        // on a finite carrier every subset meets every member finitely
        prop_assert_eq!(up.family().len(), 1usize << n);
    }

    #[test]
    fn composition_is_associative(sizes in (0usize..5, 0usize..5, 0usize..5, 0usize..5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_fn(sizes.0, sizes.1, &mut rng);
        let g = random_fn(sizes.1, sizes.2, &mut rng);
        let h = random_fn(sizes.2, sizes.3, &mut rng);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        for x in 0..sizes.0 {
            let direct = f.apply(x).and_then(|y| g.apply(y)).and_then(|z| h.apply(z));
            prop_assert_eq!(left.apply(x), direct);
        }
        prop_assert_eq!(&PartialFn::identity(sizes.0).then(&f).unwrap(), &f);
        prop_assert_eq!(&f.then(&PartialFn::identity(sizes.1)).unwrap(), &f);
    }
}

// series

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonzero_coefficients_lie_in_the_support(ix in 0usize..9, ring_ix in 0usize..4, seed in any::<u64>()) {
        let monoid = PartialFinitenessMonoid::catalog(catalog(ix)).unwrap();
        let ring = sample_rings()[ring_ix].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_series(&monoid, &ring, &mut rng);
        let g = random_series(&monoid, &ring, &mut rng);
        let fg = f.mul(&g).unwrap();
        let w = law_window(&monoid);
        for s in [&f, &g, &fg, &f.add(&g).unwrap()] {
            for (m, _) in s.terms(&w) {
                prop_assert!(member(s.support(), &m), "{m} outside {}", s.support());
            }
        }
    }

    #[test]
    fn commutative_data_gives_commuting_products(ix in 0usize..9, ring_ix in 0usize..3, seed in any::<u64>()) {
        let c = catalog(ix);
        prop_assume!(!matches!(c, CatalogCarrier::FreeWords(_)));
        let monoid = PartialFinitenessMonoid::catalog(c).unwrap();
        let ring = sample_rings()[ring_ix].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_series(&monoid, &ring, &mut rng);
        let g = random_series(&monoid, &ring, &mut rng);
        prop_assert!(f.mul(&g).unwrap().agree_on(&g.mul(&f).unwrap(), &law_window(&monoid)));
    }
}

/// `{0..=n}` with total addition capped at `n`, as a plain table monoid.
fn capped_monoid(n: usize) -> PartialFinitenessMonoid {
    let labels = (0..=n).map(|i| i.to_string()).collect();
    let table = (0..=n).map(|a| (0..=n).map(|b| Some((a + b).min(n))).collect()).collect();
    PartialFinitenessMonoid::from_table(labels, table, 0, FinitePoset::chain(n + 1)).unwrap()
}

/// Capped total addition is itself associative, so convolution over it is
/// associative as well. What the partial formulation adds is strictness:
/// capped addition is not a strict pomonoid (see the embedding examples).
#[test]
fn capped_total_addition_still_convolves_associatively() {
    let n = 3;
    let m = capped_monoid(n);
    let r = AnyRing::Integers;
    let all = D::finite((0..=n).map(E::Index));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let series = |rng: &mut ChaCha8Rng| {
        let mut terms: Vec<(E, Coeff)> = Vec::new();
        for i in 0..=n {
            if rng.gen_bool(0.6) {
                terms.push((E::Index(i), random_coeff(&r, rng)));
            }
        }
        GenSeries::from_terms(m.clone(), r.clone(), terms).unwrap()
    };
    let mut checked = 0;
    for _ in 0..200 {
        let (f, g, h) = (series(&mut rng), series(&mut rng), series(&mut rng));
        let l = f.mul(&g).unwrap().mul(&h).unwrap();
        let rr = f.mul(&g.mul(&h).unwrap()).unwrap();
        for e in m.enumerate(&all, &finseries::Window::upto(n as i64)).unwrap() {
            assert_eq!(l.coeff(&e), rr.coeff(&e));
            checked += 1;
        }
    }
    assert_eq!(checked, 200 * (n + 1));
    // the partial truncation and the capped variant differ at T·T³
    let t = |i| GenSeries::monomial(m.clone(), r.clone(), E::Index(i), r.one()).unwrap();
    assert_eq!(t(1).mul(&t(3)).unwrap().coeff(&E::Index(3)), r.one());
}
