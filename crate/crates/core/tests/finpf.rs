//! Finite finiteness spaces: constructions checked against direct counting.

use std::collections::BTreeSet;

use finseries::finpf::{
    associator, coequalizer, coproduct, equalizer, equalizer_witness, internal_hom, is_morphism, left_unitor,
    product, product_witness, product_witness_with, symmetry, verify_universal, FinSpace, PartialFn, SetSystem,
    Subset, UniversalFailure, VerifyConfig, DEFAULT_HOM_BOUND,
};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn pf(graph: &[Option<usize>], cod: usize) -> PartialFn {
    PartialFn::new(graph.to_vec(), cod).unwrap()
}

#[test]
fn perp_of_anything_finite_is_everything() {
    let s = SetSystem::new(labels(&["a", "b"]), [Subset::singleton(0)]).unwrap();
    let p = s.perp().unwrap();
    let all: BTreeSet<Subset> = (0..4).map(Subset).collect();
    assert_eq!(p.family(), &all);

    let empty = SetSystem::new(vec![], [Subset(0)]).unwrap();
    let all: BTreeSet<Subset> = [Subset(0)].into_iter().collect();
    assert_eq!(empty.perp().unwrap().family(), &all);

    assert_eq!(p.perp().unwrap().perp().unwrap(), p);
}

#[test]
fn morphism_examples() {
    let x = SetSystem::powerset(labels(&["a", "b"])).unwrap();
    assert!(is_morphism(&PartialFn::identity(2), &x, &x));
    assert!(is_morphism(&PartialFn::empty(2, 2), &x, &x));

    // codomain only knows ∅ and {c}; b ↦ d sends {b} outside it
    let y = SetSystem::new(labels(&["c", "d"]), [Subset(0), Subset::singleton(0)]).unwrap();
    let f = pf(&[Some(0), Some(1)], 2);
    assert!(!y.contains(f.image(Subset::singleton(1))));
    assert!(!is_morphism(&f, &x, &y));
}

#[test]
fn equalizer_examples() {
    let x = FinSpace::new(labels(&["a", "b"]));
    let f = pf(&[Some(0), Some(0)], 1);

    let e = equalizer(&x, &f, &f).unwrap();
    assert_eq!(e.space.size(), 2);
    assert_eq!(e.inclusion, PartialFn::identity(2));

    let g = pf(&[Some(0), None], 1);
    let e = equalizer(&x, &f, &g).unwrap();
    assert_eq!(e.space.labels(), ["a"]);
    assert_eq!(e.inclusion.graph(), [Some(0)]);

    let none = PartialFn::empty(2, 1);
    assert_eq!(equalizer(&x, &none, &none).unwrap().space.size(), 2);
}

#[test]
fn product_examples() {
    let x = FinSpace::new(labels(&["x"]));
    let y = FinSpace::new(labels(&["y"]));
    let p = product(&[x.clone(), y]);
    let got: BTreeSet<&str> = p.space.labels().iter().map(String::as_str).collect();
    assert_eq!(got, ["(x,⋆)", "(⋆,y)", "(x,y)"].into_iter().collect());

    assert_eq!(product(&[]).space.size(), 0);

    let p = product(&[x, FinSpace::zero()]);
    assert_eq!(p.space.labels(), ["(x,⋆)"]);

    // (|X|+1)(|Y|+1) − 1 tuples with at least one non-⋆ entry
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(product(&[FinSpace::sized(a), FinSpace::sized(b)]).space.size(), (a + 1) * (b + 1) - 1);
        }
    }
}

#[test]
fn coproduct_examples() {
    let one = || FinSpace::sized(1);
    assert_eq!(coproduct(&[one(), one()]).space.size(), 2);

    let a = FinSpace::sized(3);
    let c = coproduct(&[FinSpace::zero(), a]);
    assert_eq!(c.space.size(), 3);
    assert!(c.injections[1].is_bijection());

    let c = coproduct(&[one(), one(), one()]);
    let hit: BTreeSet<usize> = c.injections.iter().filter_map(|j| j.apply(0)).collect();
    assert_eq!(hit, (0..3).collect());
}

#[test]
fn coequalizer_examples() {
    let y = FinSpace::new(labels(&["y1", "y2"]));

    let q = coequalizer(&y, &pf(&[Some(0)], 2), &pf(&[Some(1)], 2)).unwrap();
    assert_eq!(q.space.size(), 1);
    assert_eq!(q.quotient.graph(), [Some(0), Some(0)]);

    let q = coequalizer(&y, &pf(&[Some(0)], 2), &pf(&[None], 2)).unwrap();
    assert_eq!(q.space.size(), 1);
    assert_eq!(q.quotient.apply(0), None);
    assert_eq!(q.quotient.apply(1), Some(0));

    let f = pf(&[Some(1)], 2);
    let q = coequalizer(&y, &f, &f).unwrap();
    assert!(q.quotient.is_bijection());
}

#[test]
fn hom_sizes() {
    for (x, y, want) in [(1, 1, 1), (2, 1, 3), (1, 2, 2), (2, 2, 8), (0, 3, 0)] {
        let h = internal_hom(&FinSpace::sized(x), &FinSpace::sized(y), DEFAULT_HOM_BOUND).unwrap();
        assert_eq!(h.size(), want);
        assert_eq!(h.size(), (y + 1).pow(x as u32) - 1);
    }
    assert!(internal_hom(&FinSpace::sized(12), &FinSpace::sized(3), DEFAULT_HOM_BOUND).is_err());
}

#[test]
fn evaluation_examples() {
    let h = internal_hom(&FinSpace::sized(1), &FinSpace::sized(1), DEFAULT_HOM_BOUND).unwrap();
    assert_eq!(h.ev().graph(), [Some(0)]);

    let h = internal_hom(&FinSpace::sized(2), &FinSpace::sized(2), DEFAULT_HOM_BOUND).unwrap();
    let ev = h.ev();
    for (fi, f) in h.maps.iter().enumerate() {
        for x in 0..2 {
            assert_eq!(ev.apply(fi * 2 + x), f.apply(x));
        }
    }
    let dom_total: usize = h.maps.iter().map(|f| f.domain().len()).sum();
    assert_eq!(ev.domain().len(), dom_total);
    // each of the 2 points is defined in 2·3 of the 9 partial maps
    assert_eq!(dom_total, 12);
}

#[test]
fn curry_examples() {
    let h = internal_hom(&FinSpace::sized(1), &FinSpace::sized(1), DEFAULT_HOM_BOUND).unwrap();
    assert!(h.curry(1, &PartialFn::empty(1, 1)).unwrap().is_nowhere_defined());
    assert_eq!(h.curry(1, &pf(&[Some(0)], 1)).unwrap().graph(), [Some(0)]);

    for x in 0..=2 {
        for y in 0..=2 {
            let h = internal_hom(&FinSpace::sized(x), &FinSpace::sized(y), DEFAULT_HOM_BOUND).unwrap();
            for z in 0..=2 {
                let mut seen = BTreeSet::new();
                let mut count = 0u64;
                for g in PartialFn::all(z * x, y) {
                    let c = h.curry(z, &g).unwrap();
                    assert_eq!(h.uncurry(&c).unwrap(), g);
                    seen.insert(c.graph().to_vec());
                    count += 1;
                }
                assert_eq!(seen.len() as u64, count);
                assert_eq!(count, PartialFn::all(z, h.size()).count() as u64);
                for c in PartialFn::all(z, h.size()) {
                    assert_eq!(h.curry(z, &h.uncurry(&c).unwrap()).unwrap(), c);
                }
            }
        }
    }
}

#[test]
fn empty_space_is_a_zero_object() {
    for n in 0..=3 {
        assert_eq!(PartialFn::all(0, n).count(), 1);
        let out: Vec<PartialFn> = PartialFn::all(n, 0).collect();
        assert_eq!(out.len(), 1);
        assert!(out[0].is_nowhere_defined());
    }
}

#[test]
fn coherence_maps_are_bijections() {
    for x in 0..=2 {
        assert!(left_unitor(x).is_bijection());
        for y in 0..=2 {
            let s = symmetry(x, y);
            assert!(s.is_bijection());
            assert_eq!(s.then(&symmetry(y, x)).unwrap(), PartialFn::identity(x * y));
            for z in 0..=2 {
                assert!(associator(x, y, z).is_bijection());
            }
        }
    }
}

#[test]
fn universal_property_examples() {
    let cfg = VerifyConfig::default();

    let f = pf(&[Some(1), None, Some(0)], 2);
    let g = pf(&[Some(1), Some(0), None], 2);
    let r = verify_universal(&equalizer_witness(&f, &g).unwrap(), &cfg).unwrap();
    assert!(r.holds(), "{:?}", r.failures);

    let r = verify_universal(&product_witness(&[2, 2]), &cfg).unwrap();
    assert!(r.holds());
    assert!(r.cones > 0);

    let r = verify_universal(&product_witness_with(&[1, 1], true), &cfg).unwrap();
    assert!(!r.holds());
    assert!(r
        .failures
        .iter()
        .any(|f| matches!(f, UniversalFailure::NotUnique { count, .. } if *count >= 2)));
}
