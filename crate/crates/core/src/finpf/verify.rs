use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::closed::{associator, internal_hom, symmetry, DEFAULT_HOM_BOUND};
use super::limits::{coequalizer, coproduct, equalizer, product_with};
use super::morphism::PartialFn;
use super::space::{FinSpace, SetSystem, Subset};
use super::FinPfError;

/// Bounds for the exhaustive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest input carrier accepted.
    pub max_size: usize,
    /// Test objects `Z` range over sizes `0..=probe_size`.
    pub probe_size: usize,
    /// Parallel pairs checked per size combination; `None` checks all.
    pub pair_cap: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_size: 3,
            probe_size: 3,
            pair_cap: Some(500),
        }
    }
}

/// A candidate (co)limit: the object is implicit in the sizes of the maps.
#[derive(Debug, Clone)]
pub enum Witness {
    Equalizer {
        f: PartialFn,
        g: PartialFn,
        inclusion: PartialFn,
    },
    Product {
        factors: Vec<usize>,
        apex: usize,
        projections: Vec<PartialFn>,
    },
    Coproduct {
        summands: Vec<usize>,
        apex: usize,
        injections: Vec<PartialFn>,
    },
    Coequalizer {
        f: PartialFn,
        g: PartialFn,
        quotient: PartialFn,
    },
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::Equalizer { .. } => "equalizer",
            Witness::Product { .. } => "product",
            Witness::Coproduct { .. } => "coproduct",
            Witness::Coequalizer { .. } => "coequalizer",
        }
    }

    fn input_sizes(&self) -> Vec<usize> {
        match self {
            Witness::Equalizer { f, .. } | Witness::Coequalizer { f, .. } => vec![f.dom(), f.cod()],
            Witness::Product { factors, .. } => factors.clone(),
            Witness::Coproduct { summands, .. } => summands.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalFailure {
    /// The witness itself is not a cone (or cocone).
    NotACone,
    NoMediator { probe: usize, cone: String },
    NotUnique { probe: usize, cone: String, count: usize },
}

impl fmt::Display for UniversalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalFailure::NotACone => write!(f, "witness does not commute"),
            UniversalFailure::NoMediator { probe, cone } => {
                write!(f, "no mediating map from a test object of size {probe} for {cone}")
            }
            UniversalFailure::NotUnique { probe, cone, count } => {
                write!(f, "{count} mediating maps from a test object of size {probe} for {cone}")
            }
        }
    }
}

const KEPT_FAILURES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    pub construction: &'static str,
    pub cones: u64,
    pub candidates: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<UniversalFailure>,
}

impl UniversalReport {
    fn new(construction: &'static str) -> Self {
        UniversalReport {
            construction,
            cones: 0,
            candidates: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, f: UniversalFailure) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(f);
        }
    }

    /// Records the mediator count for one cone.
    fn tally(&mut self, probe: usize, count: usize, cone: impl FnOnce() -> String) {
        self.cones += 1;
        match count {
            1 => {}
            0 => self.fail(UniversalFailure::NoMediator { probe, cone: cone() }),
            count => self.fail(UniversalFailure::NotUnique {
                probe,
                cone: cone(),
                count,
            }),
        }
    }
}

/// Calls `visit` with every partial function `dom ⇀ cod` as a graph slice.
fn for_each_graph(dom: usize, cod: usize, mut visit: impl FnMut(&[Option<usize>])) {
    let mut g = vec![None; dom];
    loop {
        visit(&g);
        let mut carry = true;
        for v in g.iter_mut() {
            match v {
                None if cod > 0 => {
                    *v = Some(0);
                    carry = false;
                    break;
                }
                Some(y) if *y + 1 < cod => {
                    *y += 1;
                    carry = false;
                    break;
                }
                _ => *v = None,
            }
        }
        if carry {
            return;
        }
    }
}

fn graphs(dom: usize, cod: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    for_each_graph(dom, cod, |g| out.push(g.to_vec()));
    out
}

fn show(g: &[Option<usize>]) -> String {
    let parts: Vec<String> = g
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| format!("{x}↦{y}")))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// `(b ∘ a)(x)` on raw graphs.
fn compose_at(a: &[Option<usize>], b: &[Option<usize>], x: usize) -> Option<usize> {
    a[x].and_then(|y| b[y])
}

/// Cartesian product of index ranges, visiting each choice vector.
fn for_each_choice(lens: &[usize], mut visit: impl FnMut(&[usize])) {
    if lens.contains(&0) {
        return;
    }
    let mut idx = vec![0; lens.len()];
    loop {
        visit(&idx);
        let mut carry = true;
        for (i, l) in idx.iter_mut().zip(lens) {
            if *i + 1 < *l {
                *i += 1;
                carry = false;
                break;
            }
            *i = 0;
        }
        if carry {
            return;
        }
    }
}

/// Exhaustively checks the universal property of `w` against every test
/// object of size at most `config.probe_size`.
pub fn verify_universal(w: &Witness, config: &VerifyConfig) -> Result<UniversalReport, FinPfError> {
    if let Some(&size) = w.input_sizes().iter().find(|&&s| s > config.max_size) {
        return Err(FinPfError::TooLarge {
            size,
            bound: config.max_size,
        });
    }
    let mut rep = UniversalReport::new(w.name());
    match w {
        Witness::Equalizer { f, g, inclusion: e } => {
            if f.dom() != g.dom() || f.cod() != g.cod() || e.cod() != f.dom() {
                return Err(FinPfError::NotParallel);
            }
            if e.then_unchecked(f) != e.then_unchecked(g) {
                rep.fail(UniversalFailure::NotACone);
            }
            let (x, apex) = (f.dom(), e.dom());
            for z in 0..=config.probe_size {
                for_each_graph(z, x, |h| {
                    let equalizes = (0..z).all(|i| compose_at(h, f.graph(), i) == compose_at(h, g.graph(), i));
                    if !equalizes {
                        return;
                    }
                    let mut count = 0;
                    for_each_graph(z, apex, |k| {
                        rep.candidates += 1;
                        if (0..z).all(|i| compose_at(k, e.graph(), i) == h[i]) {
                            count += 1;
                        }
                    });
                    rep.tally(z, count, || show(h));
                });
            }
        }
        Witness::Coequalizer { f, g, quotient: q } => {
            if f.dom() != g.dom() || f.cod() != g.cod() || q.dom() != f.cod() {
                return Err(FinPfError::NotParallel);
            }
            if f.then_unchecked(q) != g.then_unchecked(q) {
                rep.fail(UniversalFailure::NotACone);
            }
            let (y, apex) = (f.cod(), q.cod());
            for z in 0..=config.probe_size {
                for_each_graph(y, z, |h| {
                    let coequalizes = (0..f.dom()).all(|i| compose_at(f.graph(), h, i) == compose_at(g.graph(), h, i));
                    if !coequalizes {
                        return;
                    }
                    let mut count = 0;
                    for_each_graph(apex, z, |k| {
                        rep.candidates += 1;
                        if (0..y).all(|i| compose_at(q.graph(), k, i) == h[i]) {
                            count += 1;
                        }
                    });
                    rep.tally(z, count, || show(h));
                });
            }
        }
        Witness::Product {
            factors,
            apex,
            projections,
        } => {
            if projections.len() != factors.len()
                || projections.iter().zip(factors).any(|(p, &n)| p.dom() != *apex || p.cod() != n)
            {
                return Err(FinPfError::NotParallel);
            }
            for z in 0..=config.probe_size {
                let legs: Vec<Vec<Vec<Option<usize>>>> = factors.iter().map(|&n| graphs(z, n)).collect();
                let lens: Vec<usize> = legs.iter().map(Vec::len).collect();
                for_each_choice(&lens, |choice| {
                    let mut count = 0;
                    for_each_graph(z, *apex, |k| {
                        rep.candidates += 1;
                        let ok = projections.iter().zip(choice).enumerate().all(|(i, (p, &c))| {
                            let leg = &legs[i][c];
                            (0..z).all(|t| compose_at(k, p.graph(), t) == leg[t])
                        });
                        if ok {
                            count += 1;
                        }
                    });
                    rep.tally(z, count, || {
                        let parts: Vec<String> = choice.iter().enumerate().map(|(i, &c)| show(&legs[i][c])).collect();
                        parts.join(" × ")
                    });
                });
            }
        }
        Witness::Coproduct {
            summands,
            apex,
            injections,
        } => {
            if injections.len() != summands.len()
                || injections.iter().zip(summands).any(|(s, &n)| s.cod() != *apex || s.dom() != n)
            {
                return Err(FinPfError::NotParallel);
            }
            for z in 0..=config.probe_size {
                let legs: Vec<Vec<Vec<Option<usize>>>> = summands.iter().map(|&n| graphs(n, z)).collect();
                let lens: Vec<usize> = legs.iter().map(Vec::len).collect();
                for_each_choice(&lens, |choice| {
                    let mut count = 0;
                    for_each_graph(*apex, z, |k| {
                        rep.candidates += 1;
                        let ok = injections.iter().zip(choice).enumerate().all(|(i, (s, &c))| {
                            let leg = &legs[i][c];
                            (0..s.dom()).all(|t| compose_at(s.graph(), k, t) == leg[t])
                        });
                        if ok {
                            count += 1;
                        }
                    });
                    rep.tally(z, count, || {
                        let parts: Vec<String> = choice.iter().enumerate().map(|(i, &c)| show(&legs[i][c])).collect();
                        parts.join(" + ")
                    });
                });
            }
        }
    }
    Ok(rep)
}

pub fn equalizer_witness(f: &PartialFn, g: &PartialFn) -> Result<Witness, FinPfError> {
    let e = equalizer(&FinSpace::sized(f.dom()), f, g)?;
    Ok(Witness::Equalizer {
        f: f.clone(),
        g: g.clone(),
        inclusion: e.inclusion,
    })
}

pub fn coequalizer_witness(f: &PartialFn, g: &PartialFn) -> Result<Witness, FinPfError> {
    let q = coequalizer(&FinSpace::sized(f.cod()), f, g)?;
    Ok(Witness::Coequalizer {
        f: f.clone(),
        g: g.clone(),
        quotient: q.quotient,
    })
}

pub fn product_witness(factors: &[usize]) -> Witness {
    product_witness_with(factors, false)
}

/// With `keep_all_star`, the all-⋆ tuple stays in the carrier; the result
/// is not a product.
pub fn product_witness_with(factors: &[usize], keep_all_star: bool) -> Witness {
    let spaces: Vec<FinSpace> = factors.iter().map(|&n| FinSpace::sized(n)).collect();
    let p = product_with(&spaces, keep_all_star);
    Witness::Product {
        factors: factors.to_vec(),
        apex: p.space.size(),
        projections: p.projections,
    }
}

pub fn coproduct_witness(summands: &[usize]) -> Witness {
    let spaces: Vec<FinSpace> = summands.iter().map(|&n| FinSpace::sized(n)).collect();
    let c = coproduct(&spaces);
    Witness::Coproduct {
        summands: summands.to_vec(),
        apex: c.space.size(),
        injections: c.injections,
    }
}

/// Outcome of [`check_category`]: one line per family of checks.
#[derive(Debug, Clone, Default)]
pub struct CategoryReport {
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl CategoryReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn section(&mut self, name: &str, checked: u64, failures: Vec<String>) {
        let status = if failures.is_empty() { "ok" } else { "FAILED" };
        self.lines.push(format!("{name}: {checked} checked, {status}"));
        self.failures.extend(failures.into_iter().map(|f| format!("{name}: {f}")));
    }
}

fn parallel_pairs(
    x: usize,
    y: usize,
    cap: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Vec<(PartialFn, PartialFn)> {
    let fs: Vec<PartialFn> = PartialFn::all(x, y).collect();
    let n = fs.len() * fs.len();
    let pick = |i: usize| (fs[i / fs.len()].clone(), fs[i % fs.len()].clone());
    match cap {
        Some(c) if c < n => {
            let mut idx = sample(rng, n, c).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(pick).collect()
        }
        _ => (0..n).map(pick).collect(),
    }
}

/// Runs the full battery of category-level checks on all spaces up to
/// `config.max_size`: zero object, category laws, (co)limits, monoidal
/// coherence, currying and perp laws.
pub fn check_category(config: &VerifyConfig, seed: u64) -> Result<CategoryReport, FinPfError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CategoryReport::default();
    let n = config.max_size;

    // zero object
    let mut fails = Vec::new();
    for a in 0..=n {
        let into = PartialFn::all(0, a).count();
        let out = PartialFn::all(a, 0).count();
        if into != 1 || out != 1 {
            fails.push(format!("|hom(∅,{a})| = {into}, |hom({a},∅)| = {out}"));
        }
    }
    rep.section("zero object", n as u64 + 1, fails);

    // category laws on all composable triples with sizes ≤ min(n, 2)
    let m = n.min(2);
    let mut fails = Vec::new();
    let mut checked = 0u64;
    for a in 0..=m {
        for b in 0..=m {
            for f in PartialFn::all(a, b) {
                if f.then_unchecked(&PartialFn::identity(b)) != f || PartialFn::identity(a).then_unchecked(&f) != f {
                    fails.push(format!("identity law fails for {f}"));
                }
                for c in 0..=m {
                    for g in PartialFn::all(b, c) {
                        let fg = f.then_unchecked(&g);
                        for d in 0..=m {
                            for h in PartialFn::all(c, d) {
                                checked += 1;
                                if fg.then_unchecked(&h) != f.then_unchecked(&g.then_unchecked(&h)) {
                                    fails.push(format!("associativity fails for {f}, {g}, {h}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.section("category laws", checked, fails);

    // every partial function between finite spaces is a morphism
    let mut fails = Vec::new();
    let mut checked = 0u64;
    for a in 0..=n {
        let sa = FinSpace::sized(a).set_system()?;
        for b in 0..=n {
            let sb = FinSpace::sized(b).set_system()?;
            for f in PartialFn::all(a, b) {
                checked += 1;
                if !super::morphism::is_morphism(&f, &sa, &sb) {
                    fails.push(format!("{f} rejected"));
                }
            }
        }
    }
    rep.section("morphisms", checked, fails);

    let run = |rep: &mut CategoryReport, name: &str, ws: Vec<Witness>| -> Result<(), FinPfError> {
        let mut fails = Vec::new();
        let mut cones = 0;
        for w in &ws {
            let r = verify_universal(w, config)?;
            cones += r.cones;
            fails.extend(r.failures.iter().map(|f| f.to_string()));
        }
        rep.section(name, cones, fails);
        Ok(())
    };

    let mut eqs = Vec::new();
    let mut coeqs = Vec::new();
    for x in 0..=n {
        for y in 0..=n {
            for (f, g) in parallel_pairs(x, y, config.pair_cap, &mut rng) {
                eqs.push(equalizer_witness(&f, &g)?);
                coeqs.push(coequalizer_witness(&f, &g)?);
            }
        }
    }
    run(&mut rep, "equalizers", eqs)?;
    run(&mut rep, "coequalizers", coeqs)?;

    let mut prods = vec![product_witness(&[])];
    let mut coprods = vec![coproduct_witness(&[])];
    for a in 0..=n {
        prods.push(product_witness(&[a]));
        coprods.push(coproduct_witness(&[a]));
        for b in 0..=n {
            prods.push(product_witness(&[a, b]));
            coprods.push(coproduct_witness(&[a, b]));
        }
    }
    run(&mut rep, "products", prods)?;
    run(&mut rep, "coproducts", coprods)?;

    // monoidal coherence as carrier bijections
    let mut fails = Vec::new();
    let mut checked = 0;
    for a in 0..=n {
        for b in 0..=n {
            checked += 1;
            let s = symmetry(a, b);
            if !s.is_bijection() || s.then_unchecked(&symmetry(b, a)) != PartialFn::identity(a * b) {
                fails.push(format!("symmetry {a}⊗{b}"));
            }
            for c in 0..=n {
                checked += 1;
                if !associator(a, b, c).is_bijection() {
                    fails.push(format!("associator {a}⊗{b}⊗{c}"));
                }
            }
        }
        if FinSpace::unit().tensor(&FinSpace::sized(a)).size() != a {
            fails.push(format!("unit ⊗ {a}"));
        }
    }
    rep.section("tensor coherence", checked, fails);

    // curry: hom(Z⊗X, Y) ≅ hom(Z, X⊸Y)
    let m = n.min(2);
    let mut fails = Vec::new();
    let mut checked = 0;
    for z in 0..=m {
        for x in 0..=m {
            for y in 0..=m {
                checked += 1;
                let hom = internal_hom(&FinSpace::sized(x), &FinSpace::sized(y), DEFAULT_HOM_BOUND)?;
                let mut seen = std::collections::HashSet::new();
                let mut count = 0u64;
                for g in PartialFn::all(z * x, y) {
                    count += 1;
                    let h = hom.curry(z, &g)?;
                    if hom.uncurry(&h)? != g {
                        fails.push(format!("uncurry ∘ curry ≠ id at {g}"));
                    }
                    seen.insert(h);
                }
                let target = PartialFn::count(z, hom.size()).unwrap_or(0);
                if count != target || seen.len() as u64 != target {
                    fails.push(format!("curry not bijective for |Z|={z}, |X|={x}, |Y|={y}"));
                }
                let ev = hom.ev();
                let dom_total: usize = hom.maps.iter().map(|f| f.domain().len()).sum();
                if ev.domain().len() != dom_total {
                    fails.push(format!("|dom ev| ≠ Σ|dom f| for |X|={x}, |Y|={y}"));
                }
            }
        }
    }
    rep.section("currying", checked, fails);

    let (checked, fails) = check_perp_laws(n.min(3) + 1, 200, &mut rng)?;
    rep.section("perp laws", checked, fails);

    Ok(rep)
}

/// `U ⊆ U^⊥⊥`, `U^⊥⊥⊥ = U^⊥`, and `U ⊆ V ⇒ V^⊥ ⊆ U^⊥` on random families.
pub fn check_perp_laws(max_carrier: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<(u64, Vec<String>), FinPfError> {
    use rand::Rng;
    let mut fails = Vec::new();
    for _ in 0..samples {
        let n = rng.gen_range(0..=max_carrier);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let subsets = 1u64 << n;
        let fam_u: Vec<Subset> = (0..subsets).filter(|_| rng.gen_bool(0.3)).map(Subset).collect();
        let extra: Vec<Subset> = (0..subsets).filter(|_| rng.gen_bool(0.3)).map(Subset).collect();
        let u = SetSystem::new(labels.clone(), fam_u.iter().copied())?;
        let v = SetSystem::new(labels, fam_u.into_iter().chain(extra))?;
        let up = u.perp()?;
        let upp = up.perp()?;
        if !u.is_subfamily_of(&upp) {
            fails.push(format!("U ⊄ U⊥⊥ on a carrier of size {n}"));
        }
        if upp.perp()? != up {
            fails.push(format!("U⊥⊥⊥ ≠ U⊥ on a carrier of size {n}"));
        }
        if !v.perp()?.is_subfamily_of(&up) {
            fails.push(format!("perp not antitone on a carrier of size {n}"));
        }
    }
    Ok((samples as u64, fails))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            max_size: 2,
            probe_size: 2,
            pair_cap: Some(16),
        }
    }

    #[test]
    fn binary_product_is_universal() {
        let r = verify_universal(&product_witness(&[1, 2]), &quick()).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert!(r.cones > 0);
    }

    #[test]
    fn corrupted_product_is_rejected() {
        let r = verify_universal(&product_witness_with(&[1, 1], true), &quick()).unwrap();
        assert!(!r.holds());
        assert!(r
            .failures
            .iter()
            .any(|f| matches!(f, UniversalFailure::NotUnique { count: 2, .. })));
    }

    #[test]
    fn size_bound_enforced() {
        assert!(matches!(
            verify_universal(&product_witness(&[3]), &quick()),
            Err(FinPfError::TooLarge { size: 3, bound: 2 })
        ));
    }

    #[test]
    fn wrong_coequalizer_is_rejected() {
        // identity quotient of f = {0↦0}, g = {0↦1} does not coequalize
        let f = PartialFn::new(vec![Some(0)], 2).unwrap();
        let g = PartialFn::new(vec![Some(1)], 2).unwrap();
        let w = Witness::Coequalizer {
            f,
            g,
            quotient: PartialFn::identity(2),
        };
        let r = verify_universal(&w, &quick()).unwrap();
        assert!(r.failures.contains(&UniversalFailure::NotACone));
    }

    #[test]
    fn category_battery_small() {
        let rep = check_category(&quick(), 7).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures);
        assert_eq!(rep.lines.len(), 10);
    }
}
