//! Worked examples for every module, each checked against a small
//! independent computation rather than the library's own helpers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use finseries::carriers::{
    classify_subset, embed_finite_pomonoid, increasing_subsequence, is_strict_map, is_strict_pomonoid, CatalogCarrier,
    FinitePomonoid, FinitePoset,
};
use finseries::coeff::{
    check_ring_axioms, commutativity_witness, IntMatrices2, Integers, IntegersMod, Mat2, Rationals, Ring,
};
use finseries::finmonoid::{MonoidElement as E, PartialFinitenessMonoid, SupportDescriptor as D, Window};
use finseries::series::{builtins, GenSeries};
use finseries::AnyRing;

fn monoid(c: CatalogCarrier) -> PartialFinitenessMonoid {
    PartialFinitenessMonoid::catalog(c).unwrap()
}

fn words() -> CatalogCarrier {
    CatalogCarrier::FreeWords(vec!['x', 'y'])
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

// coefficient rings

#[test]
fn integer_samples_satisfy_ring_laws() {
    let samples: Vec<BigInt> = (-2..=2).map(int).collect();
    assert!(check_ring_axioms(&Integers, &samples).is_empty());
}

#[test]
fn all_residues_mod_6_satisfy_ring_laws() {
    let r = IntegersMod::new(6).unwrap();
    let samples: Vec<BigInt> = (0..6).map(int).collect();
    assert!(check_ring_axioms(&r, &samples).is_empty());
}

#[test]
fn matrix_units_do_not_commute() {
    let e12 = Mat2::unit(0, 1);
    let e21 = Mat2::unit(1, 0);
    let samples = vec![e12.clone(), e21.clone(), Mat2::from_i64([1, 2, 3, 4])];
    assert!(check_ring_axioms(&IntMatrices2, &samples).is_empty());

    let (a, b) = commutativity_witness(&IntMatrices2, &samples).expect("witness");
    assert_ne!(IntMatrices2.mul(&a, &b), IntMatrices2.mul(&b, &a));

    // row-by-column oracle: e12·e21 = e11, e21·e12 = e22
    assert_eq!(IntMatrices2.mul(&e12, &e21), Mat2::from_i64([1, 0, 0, 0]));
    assert_eq!(IntMatrices2.mul(&e21, &e12), Mat2::from_i64([0, 0, 0, 1]));
}

#[test]
fn rationals_normalize_canonically() {
    let a = BigRational::new(int(2), int(4));
    let b = BigRational::new(int(-3), int(-6));
    assert!(Rationals.equal(&a, &b));
    assert_eq!(a, b);
}

// carriers

#[test]
fn classification_examples() {
    use CatalogCarrier as C;
    let nat_all = classify_subset(&C::NatUsual, &D::All).unwrap();
    assert!(nat_all.artinian && !nat_all.noetherian && nat_all.narrow && !nat_all.finite);

    assert!(!classify_subset(&C::PosNatDivisibility, &D::All).unwrap().narrow);

    let grid = classify_subset(&C::RationalGrid, &D::GridTail { a: -3, n: 2 }).unwrap();
    assert!(grid.artinian && !grid.noetherian && grid.narrow && !grid.finite);

    let fin = classify_subset(&C::NatUsual, &D::finite([E::Nat(0), E::Nat(5), E::Nat(7)])).unwrap();
    assert!(fin.artinian && fin.noetherian && fin.narrow && fin.finite);
}

/// All chains of a finite poset, by subset enumeration.
fn brute_longest_chain(p: &FinitePoset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|i| (0..n).all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || p.leq(i, j) || p.leq(j, i)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn brute_largest_antichain(p: &FinitePoset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|i| (0..n).all(|j| i == j || mask >> i & 1 == 0 || mask >> j & 1 == 0 || !p.leq(i, j)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[test]
fn chain_examples() {
    let anti = FinitePoset::antichain(3);
    assert_eq!(anti.longest_chain().len(), 1);

    let abc = FinitePoset::from_relation(vec!["a".into(), "b".into(), "c".into()], |i, j| i <= j).unwrap();
    let labels: Vec<&str> = abc.longest_chain().iter().map(|&i| abc.label(i)).collect();
    assert_eq!(labels, ["a", "b", "c"]);

    let d12 = FinitePoset::divisors(12);
    let chain = d12.longest_chain();
    assert!(d12.is_chain(&chain));
    assert_eq!(chain.len(), 4);
    assert_eq!(brute_longest_chain(&d12), 4);
}

#[test]
fn antichain_examples() {
    assert_eq!(FinitePoset::chain(4).largest_antichain().unwrap().len(), 1);
    assert_eq!(FinitePoset::antichain(4).largest_antichain().unwrap().len(), 4);

    let d36 = FinitePoset::divisors(36);
    let a = d36.largest_antichain().unwrap();
    assert!(d36.is_antichain(&a));
    assert_eq!(a.len(), 3);
    assert_eq!(brute_largest_antichain(&d36), 3);
}

/// Quadratic longest-subsequence oracle under `leq`, strictly increasing in
/// the sense `leq(a, b) && a != b`, or equal values for discrete orders.
fn lis_oracle(seq: &[i64], related: impl Fn(i64, i64) -> bool) -> usize {
    let mut best = vec![1usize; seq.len()];
    for j in 0..seq.len() {
        for i in 0..j {
            if related(seq[i], seq[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn check_subsequence(c: &CatalogCarrier, seq: &[E], idx: &[usize]) {
    assert!(idx.windows(2).all(|w| w[0] < w[1]));
    assert!(idx.windows(2).all(|w| c.leq(&seq[w[0]], &seq[w[1]])));
}

#[test]
fn increasing_subsequence_examples() {
    let raw = [3, 1, 4, 1, 5, 9, 2, 6];
    let seq: Vec<E> = raw.iter().map(|&v| E::Nat(v as u64)).collect();
    let idx = increasing_subsequence(&CatalogCarrier::NatUsual, &seq);
    check_subsequence(&CatalogCarrier::NatUsual, &seq, &idx);
    assert_eq!(idx.len(), 4);
    assert_eq!(lis_oracle(&raw, |a, b| a < b), 4);

    let raw = [3, 1, 3, 3];
    let seq: Vec<E> = raw.iter().map(|&v| E::Nat(v as u64)).collect();
    let idx = increasing_subsequence(&CatalogCarrier::NatDiscrete, &seq);
    check_subsequence(&CatalogCarrier::NatDiscrete, &seq, &idx);
    assert_eq!(idx.len(), 3);
    assert_eq!(lis_oracle(&raw, |a, b| a == b), 3);

    let seq: Vec<E> = (1..=5).rev().map(E::Int).collect();
    assert_eq!(increasing_subsequence(&CatalogCarrier::IntUsual, &seq).len(), 1);
}

#[test]
fn strict_map_examples() {
    let p = FinitePoset::divisors(12);
    let id: Vec<usize> = (0..p.len()).collect();
    assert!(is_strict_map(&id, &p, &p));

    let two = FinitePoset::chain(2);
    assert!(!is_strict_map(&[0, 0], &two, &two));

    let d6 = FinitePoset::divisors(6);
    let d12 = FinitePoset::divisors(12);
    let double: Vec<usize> = d6
        .labels()
        .iter()
        .map(|l| d12.index_of(&(l.parse::<u64>().unwrap() * 2).to_string()).unwrap())
        .collect();
    assert!(is_strict_map(&double, &d6, &d12));
    // exhaustive pair check: a | b, a ≠ b implies 2a | 2b, 2a ≠ 2b
    for i in 0..d6.len() {
        for j in 0..d6.len() {
            if d6.lt(i, j) {
                assert!(d12.lt(double[i], double[j]));
            }
        }
    }
}

#[test]
fn strict_pomonoid_examples() {
    assert!(is_strict_pomonoid(&FinitePomonoid::cyclic_discrete(5)));
    assert!(is_strict_pomonoid(&FinitePomonoid::trivial()));

    let max = FinitePomonoid::new(FinitePoset::chain(2), vec![vec![0, 1], vec![1, 1]], 0).unwrap();
    assert!(!is_strict_pomonoid(&max));
    // exhaustive triple check: 0 < 1 yet max(0,1) = max(1,1)
    assert_eq!(max.op(0, 1), max.op(1, 1));
}

#[test]
fn embedding_examples() {
    let triv = embed_finite_pomonoid(&FinitePomonoid::trivial()).unwrap();
    let u = triv.unit();
    let s = D::finite([u.clone()]);
    assert_eq!(triv.decompose_within(&u, &s, &s).unwrap(), vec![(u.clone(), u)]);

    let capped = FinitePomonoid::capped_addition(3);
    // 2 < 3 but 2+1 = 3 = 3+1
    assert_eq!(capped.op(2, 1), capped.op(3, 1));
    assert!(embed_finite_pomonoid(&capped).is_err());

    let z3 = embed_finite_pomonoid(&FinitePomonoid::cyclic_discrete(3)).unwrap();
    let all = D::finite((0..3).map(E::Index));
    let pairs = z3.decompose_within(&E::Index(0), &all, &all).unwrap();
    // Cayley scan: a + b ≡ 0 (mod 3)
    let expected: Vec<(E, E)> = (0..3)
        .flat_map(|a| (0..3).filter(move |b| (a + b) % 3 == 0).map(move |b| (E::Index(a), E::Index(b))))
        .collect();
    assert_eq!(pairs, expected);
    assert_eq!(pairs.len(), 3);
}

// finiteness monoids

#[test]
fn partial_multiplication_examples() {
    let t2 = monoid(CatalogCarrier::Truncated(2));
    assert_eq!(t2.mul(&E::Bounded(1), &E::Bounded(1)).unwrap(), Some(E::Bounded(2)));
    assert_eq!(t2.mul(&E::Bounded(1), &E::Bounded(2)).unwrap(), None);

    let w = monoid(words());
    assert_eq!(w.mul(&E::word("xy"), &E::word("yx")).unwrap(), Some(E::word("xyyx")));

    let q = monoid(CatalogCarrier::RationalGrid);
    assert_eq!(q.mul(&E::rat(1, 2), &E::rat(1, 3)).unwrap(), Some(E::rat(5, 6)));
}

#[test]
fn decomposition_examples() {
    let nat = monoid(CatalogCarrier::NatUsual);
    let got = nat.decompose_within(&E::Nat(3), &D::All, &D::All).unwrap();
    let want: Vec<(E, E)> = (0..=3u64).map(|i| (E::Nat(i), E::Nat(3 - i))).collect();
    assert_eq!(got, want);

    let w = monoid(words());
    let got = w.decompose_within(&E::word("xyz"), &D::All, &D::All);
    // z is outside the alphabet {x, y}
    assert!(got.is_err());
    let w3 = monoid(CatalogCarrier::FreeWords(vec!['x', 'y', 'z']));
    let got: BTreeSet<(E, E)> = w3
        .decompose_within(&E::word("xyz"), &D::All, &D::All)
        .unwrap()
        .into_iter()
        .collect();
    let want: BTreeSet<(E, E)> = (0..=3).map(|k| (E::word(&"xyz"[..k]), E::word(&"xyz"[k..]))).collect();
    assert_eq!(got, want);

    let pn = monoid(CatalogCarrier::PosNatMulUsual);
    let got = pn.decompose_within(&E::PosNat(12), &D::All, &D::All).unwrap();
    let want: Vec<(E, E)> = (1..=12u64).filter(|d| 12 % d == 0).map(|d| (E::PosNat(d), E::PosNat(12 / d))).collect();
    assert_eq!(got, want);
    assert_eq!(got.len(), 6);
}

#[test]
fn puiseux_decomposition_follows_the_numerator_bound() {
    let q = monoid(CatalogCarrier::RationalGrid);
    let (a, n, b, m) = (-2i64, 2u64, 1i64, 3u64);
    let (c, p) = (7i64, 6i64);
    let got = q
        .decompose_within(&E::rat(c, p), &D::GridTail { a, n }, &D::GridTail { a: b, n: m })
        .unwrap();
    // i ≥ a, j ≥ b, i·m·p + j·n·p = n·m·c
    let (n, m) = (n as i64, m as i64);
    let mut want = Vec::new();
    for i in a..=100 {
        let rest = n * m * c - i * m * p;
        if rest % (n * p) == 0 && rest / (n * p) >= b {
            want.push((E::rat(i, n), E::rat(rest / (n * p), m)));
        }
    }
    assert_eq!(got, want);
    let hi = (n * m * c - b * n * p).div_euclid(m * p);
    assert!(got.iter().all(|(x, _)| match x {
        E::Rat(r) => (a..=hi).contains(&(r * n).to_integer()),
        _ => false,
    }));
}

#[test]
fn mul_bound_examples() {
    let q = monoid(CatalogCarrier::RationalGrid);
    let got = q.mul_bound(&D::GridTail { a: 1, n: 2 }, &D::GridTail { a: -1, n: 3 }).unwrap();
    assert_eq!(got, D::GridTail { a: 1, n: 6 });

    let nat = monoid(CatalogCarrier::NatUsual);
    let got = nat
        .mul_bound(&D::finite([E::Nat(2), E::Nat(3)]), &D::finite([E::Nat(10)]))
        .unwrap();
    assert_eq!(got, D::finite([E::Nat(12), E::Nat(13)]));

    let t2 = monoid(CatalogCarrier::Truncated(2));
    assert_eq!(t2.mul_bound(&D::All, &D::All).unwrap(), D::All);
}

#[test]
fn union_bound_examples() {
    let q = monoid(CatalogCarrier::RationalGrid);
    let s = D::GridTail { a: 1, n: 2 };
    let t = D::GridTail { a: 1, n: 3 };
    let u = q.union_bound(&s, &t).unwrap();
    assert_eq!(u, D::GridTail { a: 2, n: 6 });
    // both tails embed: small elements of s and t lie in u
    for i in 1..20 {
        assert!(q.contains(&u, &E::rat(i, 2)));
        assert!(q.contains(&u, &E::rat(i, 3)));
    }

    let nat = monoid(CatalogCarrier::NatUsual);
    assert_eq!(
        nat.union_bound(&D::finite([E::Nat(1)]), &D::finite([E::Nat(2)])).unwrap(),
        D::finite([E::Nat(1), E::Nat(2)])
    );
    assert_eq!(nat.union_bound(&D::All, &D::finite([E::Nat(7)])).unwrap(), D::All);
}

#[test]
fn enumerate_examples() {
    let nat = monoid(CatalogCarrier::NatUsual);
    assert_eq!(
        nat.enumerate(&D::All, &Window::upto(3)).unwrap(),
        (0..=3).map(E::Nat).collect::<Vec<_>>()
    );

    let q = monoid(CatalogCarrier::RationalGrid);
    assert_eq!(
        q.enumerate(&D::GridTail { a: -1, n: 2 }, &Window::upto(1)).unwrap(),
        vec![E::rat(-1, 2), E::rat(0, 1), E::rat(1, 2), E::rat(1, 1)]
    );

    let w = monoid(words());
    assert_eq!(
        w.enumerate(&D::All, &Window::upto(1)).unwrap(),
        vec![E::word(""), E::word("x"), E::word("y")]
    );
}

// series

fn nat_int() -> (PartialFinitenessMonoid, AnyRing) {
    (monoid(CatalogCarrier::NatUsual), AnyRing::Integers)
}

fn c(v: i64) -> finseries::Coeff {
    finseries::Coeff::Int(int(v))
}

#[test]
fn from_terms_examples() {
    let (m, r) = nat_int();
    let zero = GenSeries::from_terms(m.clone(), r.clone(), []).unwrap();
    assert_eq!(zero.support(), &D::empty());
    assert_eq!(zero.render(&Window::upto(5)), "0");

    let p = GenSeries::from_terms(m, r, [(E::Nat(0), c(1)), (E::Nat(1), c(-1))]).unwrap();
    assert_eq!(p.render(&Window::upto(3)), "1 + (-1)·T^1");

    let t2 = monoid(CatalogCarrier::Truncated(2));
    let s = GenSeries::from_terms(t2, AnyRing::Integers, [(E::Bounded(2), c(5))]).unwrap();
    assert_eq!(s.coeff(&E::Bounded(2)), c(5));
    assert_eq!(s.coeff(&E::Bounded(1)), c(0));
}

#[test]
fn unit_series_examples() {
    let (m, r) = nat_int();
    assert_eq!(GenSeries::unit_series(m, r).render(&Window::upto(4)), "1");

    let pn = monoid(CatalogCarrier::PosNatMulUsual);
    let e = GenSeries::unit_series(pn, AnyRing::Integers);
    for n in 1..=30u64 {
        assert_eq!(e.coeff(&E::PosNat(n)), c(i64::from(n == 1)));
    }

    let w = monoid(words());
    let e = GenSeries::unit_series(w.clone(), AnyRing::Integers);
    for x in w.window_elements(&Window::upto(3)) {
        assert_eq!(e.coeff(&x), c(i64::from(x == E::word(""))));
    }
}

#[test]
fn addition_examples() {
    let (m, r) = nat_int();
    let f = GenSeries::from_terms(m.clone(), r.clone(), [(E::Nat(0), c(1)), (E::Nat(1), c(-1))]).unwrap();
    let zero = GenSeries::zero(m.clone(), r.clone());
    let w = Window::upto(6);
    assert!(f.add(&zero).unwrap().agree_on(&f, &w));
    assert!(f.add(&f.neg()).unwrap().agree_on(&zero, &w));

    let t = GenSeries::monomial(m.clone(), r.clone(), E::Nat(1), c(1)).unwrap();
    assert!(f.add(&t).unwrap().agree_on(&GenSeries::unit_series(m, r), &w));
}

#[test]
fn geometric_square_counts_splits() {
    let (m, r) = nat_int();
    let g = builtins::geometric(m, r).unwrap();
    let g2 = g.mul(&g).unwrap();
    // truncated polynomial oracle: (1 + T + … + T^5)² up to degree 5
    let mut poly = [0i64; 6];
    for i in 0..6 {
        for j in 0..6 - i {
            poly[i + j] += 1;
        }
    }
    for (k, want) in poly.iter().enumerate() {
        assert_eq!(g2.coeff(&E::Nat(k as u64)), c(*want));
    }
    assert_eq!(poly[5], 6);
}

fn divisor_count(n: u64) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as i64
}

#[test]
fn dirichlet_examples() {
    let z = builtins::zeta(AnyRing::Integers);
    let zz = z.mul(&z).unwrap();
    assert_eq!(zz.coeff(&E::PosNat(6)), c(divisor_count(6)));
    assert_eq!(divisor_count(6), 4);

    let zzz = zz.mul(&z).unwrap();
    // ordered triples with product 4
    let mut triples = 0;
    for a in 1..=4u64 {
        for b in 1..=4u64 {
            for d in 1..=4u64 {
                triples += i64::from(a * b * d == 4);
            }
        }
    }
    assert_eq!(triples, 6);
    assert_eq!(zzz.coeff(&E::PosNat(4)), c(triples));
}

#[test]
fn truncated_product_vanishes_past_the_cap() {
    let t2 = monoid(CatalogCarrier::Truncated(2));
    let r = AnyRing::Integers;
    let t = GenSeries::monomial(t2.clone(), r.clone(), E::Bounded(1), c(1)).unwrap();
    let tt = GenSeries::monomial(t2, r, E::Bounded(2), c(1)).unwrap();
    assert_eq!(t.mul(&tt).unwrap().render(&Window::upto(2)), "0");
}

#[test]
fn word_products_do_not_commute() {
    let w = monoid(words());
    let r = AnyRing::Integers;
    let f = GenSeries::monomial(w.clone(), r.clone(), E::word("x"), c(1)).unwrap();
    let g = GenSeries::monomial(w.clone(), r, E::word("y"), c(1)).unwrap();
    let fg = f.mul(&g).unwrap();
    let gf = g.mul(&f).unwrap();
    let nonzero = |s: &GenSeries<AnyRing>| -> Vec<E> {
        s.terms(&Window::upto(3)).into_iter().map(|(m, _)| m).collect()
    };
    assert_eq!(nonzero(&fg), vec![E::word("xy")]);
    assert_eq!(nonzero(&gf), vec![E::word("yx")]);
}

#[test]
fn coefficient_examples() {
    let (m, r) = nat_int();
    let one = GenSeries::unit_series(m.clone(), r.clone());
    assert_eq!(one.coeff(&m.unit()), c(1));
    let zero = GenSeries::zero(m, r);
    for k in 0..10 {
        assert_eq!(zero.coeff(&E::Nat(k)), c(0));
    }
}

#[test]
fn telescoping_agrees_with_one() {
    let (m, r) = nat_int();
    let one_minus_t = GenSeries::from_terms(m.clone(), r.clone(), [(E::Nat(0), c(1)), (E::Nat(1), c(-1))]).unwrap();
    let g = builtins::geometric(m.clone(), r.clone()).unwrap();
    let prod = one_minus_t.mul(&g).unwrap();
    let w = Window::upto(50);
    assert!(prod.agree_on(&prod, &w));
    assert!(prod.agree_on(&GenSeries::unit_series(m, r), &w));
}

/// μ(n) by trial-division factorization.
fn moebius_oracle(mut n: u64) -> i64 {
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

#[test]
fn zeta_times_explicit_moebius_is_the_unit() {
    let pn = monoid(CatalogCarrier::PosNatMulUsual);
    let r = AnyRing::Integers;
    let mu = GenSeries::from_terms(pn.clone(), r.clone(), (1..=200).map(|n| (E::PosNat(n), c(moebius_oracle(n))))).unwrap();
    let prod = builtins::zeta(r.clone()).mul(&mu).unwrap();
    assert!(prod.agree_on(&GenSeries::unit_series(pn, r), &Window::upto(200)));
}

#[test]
fn puiseux_render_orders_exponents() {
    let q = monoid(CatalogCarrier::RationalGrid);
    let r = AnyRing::Rationals;
    let one = finseries::Coeff::Rat(BigRational::from_integer(int(1)));
    let s = GenSeries::from_terms(q, r, [(E::rat(1, 2), one.clone()), (E::rat(1, 3), one)]).unwrap();
    let text = s.render(&Window::upto(1));
    let third = text.find("1/3").unwrap();
    let half = text.find("1/2").unwrap();
    assert!(third < half, "{text}");
}
