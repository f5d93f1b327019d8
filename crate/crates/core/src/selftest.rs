//! A compact version of every module's property checks, runnable from the
//! command line. Also hosts the seeded generators shared by the test suites.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carriers::{
    classify_subset, embed_finite_pomonoid, is_strict_map, CatalogCarrier, FinitePomonoid, FinitePoset,
};
use crate::coeff::{check_ring_axioms, commutativity_witness, AnyRing, Coeff, Mat2, Ring};
use crate::finmonoid::{MonoidElement, PartialFinitenessMonoid, SupportDescriptor, Window};
use crate::finpf::{check_category, VerifyConfig};
use crate::series::{builtins, GenSeries};

/// The four coefficient rings used throughout the checks.
pub fn sample_rings() -> Vec<AnyRing> {
    vec![
        AnyRing::Integers,
        AnyRing::Rationals,
        AnyRing::parse("mod:6").expect("valid modulus"),
        AnyRing::IntMatrices2,
    ]
}

/// A small random coefficient.
pub fn random_coeff(ring: &AnyRing, rng: &mut impl Rng) -> Coeff {
    let mut small = || BigInt::from(rng.gen_range(-3i64..=3));
    match ring {
        AnyRing::Integers => Coeff::Int(small()),
        AnyRing::Rationals => {
            let p = small();
            Coeff::Rat(BigRational::new(p, BigInt::from(rng.gen_range(1i64..=3))))
        }
        AnyRing::IntegersMod(_) => ring.coerce(Coeff::Int(small())).expect("integer residue"),
        AnyRing::IntMatrices2 => Coeff::Mat(Mat2([small(), small(), small(), small()])),
    }
}

/// Window on which series laws are compared for each carrier.
pub fn law_window(monoid: &PartialFinitenessMonoid) -> Window {
    match monoid.carrier() {
        Some(CatalogCarrier::IntUsual | CatalogCarrier::IntDiscrete) => Window::between(-4, 4),
        Some(CatalogCarrier::RationalGrid) => Window::between(-2, 2).with_max_den(6),
        Some(CatalogCarrier::PosNatMulUsual | CatalogCarrier::PosNatDivisibility) => Window::upto(36),
        Some(CatalogCarrier::FreeWords(_)) => Window::upto(3),
        _ => Window::upto(6),
    }
}

/// Window from which explicit exponents are drawn.
fn generator_window(monoid: &PartialFinitenessMonoid) -> Window {
    match monoid.carrier() {
        Some(CatalogCarrier::IntUsual | CatalogCarrier::IntDiscrete) => Window::between(-2, 2),
        Some(CatalogCarrier::RationalGrid) => Window::between(-1, 1).with_max_den(3),
        Some(CatalogCarrier::PosNatMulUsual | CatalogCarrier::PosNatDivisibility) => Window::upto(6),
        Some(CatalogCarrier::FreeWords(_)) => Window::upto(2),
        _ => Window::upto(3),
    }
}

/// An infinite support admitted by the carrier, if it has one.
fn random_infinite_support(monoid: &PartialFinitenessMonoid, rng: &mut impl Rng) -> Option<SupportDescriptor> {
    let d = match monoid.carrier()? {
        CatalogCarrier::RationalGrid => SupportDescriptor::GridTail {
            a: rng.gen_range(-2..=1),
            n: rng.gen_range(1..=3),
        },
        CatalogCarrier::IntUsual => SupportDescriptor::TailGe {
            a: rng.gen_range(-2..=0),
        },
        _ => SupportDescriptor::All,
    };
    monoid.admits(&d).ok().map(|_| d)
}

/// A random series: either a few explicit terms or, when the carrier admits
/// an infinite support, a lazily defined pseudo-random series on it.
pub fn random_series(monoid: &PartialFinitenessMonoid, ring: &AnyRing, rng: &mut ChaCha8Rng) -> GenSeries<AnyRing> {
    if rng.gen_bool(0.4) {
        if let Some(support) = random_infinite_support(monoid, rng) {
            let salt: u64 = rng.gen();
            let r = ring.clone();
            return GenSeries::from_fn(monoid.clone(), ring.clone(), support, move |m| {
                let mut h = DefaultHasher::new();
                (salt, m).hash(&mut h);
                random_coeff(&r, &mut ChaCha8Rng::seed_from_u64(h.finish()))
            })
            .expect("admitted support");
        }
    }
    let pool = monoid.window_elements(&generator_window(monoid));
    let k = rng.gen_range(0..=4.min(pool.len()));
    let terms: Vec<_> = pool
        .choose_multiple(rng, k)
        .map(|m| (m.clone(), random_coeff(ring, rng)))
        .collect();
    GenSeries::from_terms(monoid.clone(), ring.clone(), terms).expect("distinct window elements")
}

/// Associativity, both distributive laws and the two unit laws for `triples`
/// random triples, compared on the law window.
pub fn check_series_laws(
    monoid: &PartialFinitenessMonoid,
    ring: &AnyRing,
    triples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let w = law_window(monoid);
    let one = GenSeries::unit_series(monoid.clone(), ring.clone());
    let err = |e: crate::series::SeriesError| e.to_string();
    for t in 0..triples {
        let f = random_series(monoid, ring, rng);
        let g = random_series(monoid, ring, rng);
        let h = random_series(monoid, ring, rng);
        let checks = [
            ("associativity", f.mul(&g).map_err(err)?.mul(&h).map_err(err)?, f.mul(&g.mul(&h).map_err(err)?).map_err(err)?),
            (
                "left distributivity",
                f.mul(&g.add(&h).map_err(err)?).map_err(err)?,
                f.mul(&g).map_err(err)?.add(&f.mul(&h).map_err(err)?).map_err(err)?,
            ),
            (
                "right distributivity",
                f.add(&g).map_err(err)?.mul(&h).map_err(err)?,
                f.mul(&h).map_err(err)?.add(&g.mul(&h).map_err(err)?).map_err(err)?,
            ),
            ("left unit", one.mul(&f).map_err(err)?, f.clone()),
            ("right unit", f.mul(&one).map_err(err)?, f.clone()),
        ];
        for (law, lhs, rhs) in checks {
            if let Some(m) = lhs.first_disagreement(&rhs, &w) {
                return Err(format!(
                    "{law} fails over {} with {} at {m} (triple {t})",
                    monoid.name(),
                    ring.name()
                ));
            }
        }
    }
    Ok(())
}

/// Descriptors tried against every carrier in the classification checks.
pub fn descriptor_catalog(carrier: &CatalogCarrier) -> Vec<SupportDescriptor> {
    let m = PartialFinitenessMonoid::catalog(carrier.clone()).expect("catalog carrier");
    let some: Vec<MonoidElement> = m.window_elements(&Window::between(0, 2)).into_iter().take(3).collect();
    vec![
        SupportDescriptor::empty(),
        SupportDescriptor::finite(some),
        SupportDescriptor::All,
        SupportDescriptor::GridTail { a: 0, n: 1 },
        SupportDescriptor::GridTail { a: 1, n: 2 },
        SupportDescriptor::GridTail { a: -3, n: 3 },
        SupportDescriptor::TailGe { a: -2 },
        SupportDescriptor::TailGe { a: 5 },
    ]
}

/// Finiteness lemma and admission agreement over the descriptor catalog.
pub fn check_classification() -> Result<usize, String> {
    let mut checked = 0;
    for c in CatalogCarrier::catalog() {
        let m = PartialFinitenessMonoid::catalog(c.clone()).expect("catalog carrier");
        for d in descriptor_catalog(&c) {
            checked += 1;
            let cls = classify_subset(&c, &d);
            if let Ok(k) = &cls {
                if k.artinian && k.noetherian && k.narrow && !k.finite {
                    return Err(format!("{d} on {} breaks the finiteness lemma", c.name()));
                }
            }
            let expected = matches!(&cls, Ok(k) if k.artinian && k.narrow);
            if m.admits(&d).is_ok() != expected {
                return Err(format!("admission of {d} on {} disagrees with classification", c.name()));
            }
        }
    }
    Ok(checked)
}

/// A random partial order on `n` points: a random DAG, transitively closed.
pub fn random_poset(n: usize, density: f64, rng: &mut impl Rng) -> FinitePoset {
    let mut rel = vec![vec![false; n]; n];
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for i in 0..n {
        rel[perm[i]][perm[i]] = true;
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel[perm[i]][perm[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::from_relation(labels, |i, j| rel[i][j]).expect("closed DAG is a partial order")
}

/// Brute-force decompositions of `m` inside finite `s × t`.
fn brute_decompose(
    monoid: &PartialFinitenessMonoid,
    m: &MonoidElement,
    s: &[MonoidElement],
    t: &[MonoidElement],
) -> Vec<(MonoidElement, MonoidElement)> {
    let mut out = Vec::new();
    for a in s {
        for b in t {
            if monoid.mul(a, b).ok().flatten().as_ref() == Some(m) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs every module's checks with a fixed seed.
pub fn run(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    let mut failures = 0;
    let mut record = |name: &str, r: Result<String, String>| match r {
        Ok(detail) => lines.push(format!("PASS {name}: {detail}")),
        Err(e) => {
            failures += 1;
            lines.push(format!("FAIL {name}: {e}"));
        }
    };

    record("coeff ring axioms", {
        let mut bad = None;
        for ring in sample_rings() {
            let samples: Vec<Coeff> = (0..6).map(|_| random_coeff(&ring, &mut rng)).collect();
            if let Some(v) = check_ring_axioms(&ring, &samples).first() {
                bad = Some(format!("{} fails {} at {:?}", ring.name(), v.law, v.witness));
                break;
            }
        }
        bad.map_or(Ok("4 rings".into()), Err)
    });

    record("coeff noncommutativity", {
        let samples = [Coeff::Mat(Mat2::unit(0, 1)), Coeff::Mat(Mat2::unit(1, 0))];
        match commutativity_witness(&AnyRing::IntMatrices2, &samples) {
            Some((a, b)) => Ok(format!("{a}·{b} ≠ {b}·{a}")),
            None => Err("matrix units commute".into()),
        }
    });

    record("carriers classification", check_classification().map(|n| format!("{n} descriptors")));

    record("carriers chain × antichain ≥ |P|", {
        let mut res = Ok("40 posets".to_string());
        for _ in 0..40 {
            let n = rng.gen_range(1..=9);
            let p = random_poset(n, rng.gen_range(0.1..0.7), &mut rng);
            let chain = p.longest_chain();
            let anti = p.largest_antichain().expect("small poset");
            if !p.is_chain(&chain) || !p.is_antichain(&anti) || chain.len() * anti.len() < n {
                res = Err(format!("chain {chain:?}, antichain {anti:?} on {n} points"));
                break;
            }
        }
        res
    });

    record("carriers strict maps compose", {
        let (p, q, r) = (FinitePoset::chain(3), FinitePoset::divisors(12), FinitePoset::chain(6));
        let mut composed = 0;
        let mut res = Ok(());
        for _ in 0..400 {
            let f: Vec<usize> = (0..p.len()).map(|_| rng.gen_range(0..q.len())).collect();
            let g: Vec<usize> = (0..q.len()).map(|_| rng.gen_range(0..r.len())).collect();
            if is_strict_map(&f, &p, &q) && is_strict_map(&g, &q, &r) {
                composed += 1;
                let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                if !is_strict_map(&gf, &p, &r) {
                    res = Err(format!("{gf:?} not strict"));
                }
            }
        }
        res.map(|_| format!("{composed} strict pairs"))
    });

    record("carriers strict pomonoids", {
        let capped = FinitePomonoid::capped_addition(3);
        let cyclic = FinitePomonoid::cyclic_discrete(4);
        if capped.is_strict() || embed_finite_pomonoid(&capped).is_ok() {
            Err("capped addition accepted as strict".into())
        } else if embed_finite_pomonoid(&cyclic).is_err() {
            Err("discrete cyclic monoid rejected".into())
        } else {
            Ok("capped addition rejected, discrete ℤ/4 embedded".into())
        }
    });

    record("finmonoid decomposition", {
        let mut res = Ok(0usize);
        'outer: for c in CatalogCarrier::catalog() {
            let m = PartialFinitenessMonoid::catalog(c).expect("catalog carrier");
            let pool = m.window_elements(&generator_window(&m));
            for _ in 0..20 {
                let s: Vec<_> = pool.choose_multiple(&mut rng, 4).cloned().collect();
                let t: Vec<_> = pool.choose_multiple(&mut rng, 4).cloned().collect();
                let (ds, dt) = (SupportDescriptor::finite(s.clone()), SupportDescriptor::finite(t.clone()));
                for target in m.window_elements(&law_window(&m)).iter().take(60) {
                    let mut got = m.decompose_within(target, &ds, &dt).expect("finite supports");
                    got.sort();
                    if got != brute_decompose(&m, target, &s, &t) {
                        res = Err(format!("{} at {target}", m.name()));
                        break 'outer;
                    }
                    *res.as_mut().expect("still ok") += 1;
                }
            }
        }
        res.map(|n| format!("{n} instances"))
    });

    record("series ring laws", {
        let mut res = Ok(());
        for c in CatalogCarrier::catalog() {
            let m = PartialFinitenessMonoid::catalog(c).expect("catalog carrier");
            if let Err(e) = check_series_laws(&m, &AnyRing::Integers, 4, &mut rng) {
                res = Err(e);
                break;
            }
        }
        res.map(|_| "9 carriers".into())
    });

    record("series builtins", {
        let nat = PartialFinitenessMonoid::catalog(CatalogCarrier::NatUsual).expect("catalog");
        let w = Window::upto(12);
        let ring = AnyRing::Integers;
        let one_minus_t = GenSeries::from_terms(
            nat.clone(),
            ring.clone(),
            [(MonoidElement::Nat(0), ring.one()), (MonoidElement::Nat(1), ring.from_int(-1))],
        )
        .expect("two terms");
        let inv = one_minus_t
            .mul(&builtins::geometric(nat.clone(), ring.clone()).expect("ℕ admits All"))
            .expect("same monoid");
        let zeta = builtins::zeta(ring.clone());
        let d = zeta.mul(&zeta).expect("same monoid");
        let unit = zeta.mul(&builtins::moebius(ring.clone(), 60).expect("bound ≥ 1")).expect("same monoid");
        let divisors = |n: u64| (1..=n).filter(|k| n.is_multiple_of(*k)).count() as i64;
        if inv.render(&w) != "1" {
            Err(format!("(1 - T)·geometric = {}", inv.render(&w)))
        } else if let Some(n) = (1..=60u64).find(|&n| d.coeff(&MonoidElement::PosNat(n)) != ring.from_int(divisors(n))) {
            Err(format!("ζ² differs from the divisor count at {n}"))
        } else if unit.render(&Window::upto(60)) != "1" {
            Err("ζ·μ is not the unit".into())
        } else {
            Ok("geometric, ζ², ζ·μ".into())
        }
    });

    record("finpf category", {
        let cfg = VerifyConfig {
            max_size: 2,
            ..VerifyConfig::default()
        };
        match check_category(&cfg, seed) {
            Ok(rep) if rep.holds() => Ok(format!("{} families", rep.lines.len())),
            Ok(rep) => Err(rep.failures.join("; ")),
            Err(e) => Err(e.to_string()),
        }
    });

    SelftestReport { lines, failures }
}
