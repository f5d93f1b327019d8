use super::morphism::PartialFn;
use super::space::{FinSpace, SetSystem, Subset};
use super::FinPfError;

fn check_parallel(f: &PartialFn, g: &PartialFn) -> Result<(), FinPfError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(FinPfError::NotParallel);
    }
    Ok(())
}

/// `E = {x : f(x) = g(x)}`, where both sides undefined counts as equal.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub space: FinSpace,
    pub inclusion: PartialFn,
}

pub fn equalizer(x: &FinSpace, f: &PartialFn, g: &PartialFn) -> Result<Equalizer, FinPfError> {
    check_parallel(f, g)?;
    if f.dom() != x.size() {
        return Err(FinPfError::NotParallel);
    }
    let kept: Vec<usize> = (0..x.size()).filter(|&i| f.apply(i) == g.apply(i)).collect();
    let space = FinSpace::new(kept.iter().map(|&i| x.label(i).to_string()).collect());
    let inclusion = PartialFn::from_graph_unchecked(kept.into_iter().map(Some).collect(), x.size());
    Ok(Equalizer { space, inclusion })
}

impl Equalizer {
    /// The unique `k` with `e ∘ k = h`, when `h` equalizes.
    pub fn mediator(&self, h: &PartialFn) -> Option<PartialFn> {
        let graph = h
            .graph()
            .iter()
            .map(|y| match y {
                None => Ok(None),
                Some(y) => self.inclusion.graph().iter().position(|e| *e == Some(*y)).map(Some).ok_or(()),
            })
            .collect::<Result<Vec<_>, ()>>()
            .ok()?;
        Some(PartialFn::from_graph_unchecked(graph, self.space.size()))
    }
}

/// Tuples over `X_i ⊔ {⋆}` except the all-⋆ tuple.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: FinSpace,
    pub tuples: Vec<Vec<Option<usize>>>,
    pub projections: Vec<PartialFn>,
}

pub fn product(factors: &[FinSpace]) -> Product {
    product_with(factors, false)
}

/// Like [`product`], but when `keep_all_star` is set the all-⋆ tuple is
/// retained. That object is not a product; it exists so the universal
/// property checker can be shown to reject it.
pub fn product_with(factors: &[FinSpace], keep_all_star: bool) -> Product {
    let mut tuples = Vec::new();
    let mut digits = vec![0usize; factors.len()];
    loop {
        let t: Vec<Option<usize>> = digits.iter().map(|&d| d.checked_sub(1)).collect();
        if keep_all_star || t.iter().any(Option::is_some) {
            tuples.push(t);
        }
        let mut carry = true;
        for (d, f) in digits.iter_mut().zip(factors) {
            if *d < f.size() {
                *d += 1;
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            break;
        }
    }
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t
                .iter()
                .zip(factors)
                .map(|(c, f)| c.map_or("⋆".to_string(), |i| f.label(i).to_string()))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let projections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| PartialFn::from_graph_unchecked(tuples.iter().map(|t| t[i]).collect(), f.size()))
        .collect();
    Product {
        space: FinSpace::new(labels),
        tuples,
        projections,
    }
}

impl Product {
    /// `z ↦ (f_1(z), …, f_n(z))`, undefined when every leg is.
    pub fn pairing(&self, legs: &[PartialFn]) -> Result<PartialFn, FinPfError> {
        if legs.len() != self.projections.len() {
            return Err(FinPfError::Invalid("one leg per factor expected".into()));
        }
        let dom = legs.first().map_or(0, PartialFn::dom);
        if legs.iter().any(|l| l.dom() != dom) {
            return Err(FinPfError::NotParallel);
        }
        let graph = (0..dom)
            .map(|z| {
                let t: Vec<Option<usize>> = legs.iter().map(|l| l.apply(z)).collect();
                if t.iter().all(Option::is_none) {
                    None
                } else {
                    self.tuples.iter().position(|u| *u == t)
                }
            })
            .collect();
        Ok(PartialFn::from_graph_unchecked(graph, self.space.size()))
    }
}

/// Disjoint union with its injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub space: FinSpace,
    pub offsets: Vec<usize>,
    pub injections: Vec<PartialFn>,
}

pub fn coproduct(summands: &[FinSpace]) -> Coproduct {
    let total: usize = summands.iter().map(FinSpace::size).sum();
    let mut labels = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(summands.len());
    let mut injections = Vec::with_capacity(summands.len());
    for (i, s) in summands.iter().enumerate() {
        let off = labels.len();
        offsets.push(off);
        labels.extend(s.labels().iter().map(|l| format!("{i}:{l}")));
        injections.push(PartialFn::from_graph_unchecked((off..off + s.size()).map(Some).collect(), total));
    }
    Coproduct {
        space: FinSpace::new(labels),
        offsets,
        injections,
    }
}

impl Coproduct {
    /// `[f_1, …, f_n]`, acting as `f_i` on the `i`-th summand.
    pub fn copairing(&self, legs: &[PartialFn]) -> Result<PartialFn, FinPfError> {
        if legs.len() != self.injections.len() {
            return Err(FinPfError::Invalid("one leg per summand expected".into()));
        }
        let cod = legs.first().map_or(0, PartialFn::cod);
        if legs.iter().any(|l| l.cod() != cod) {
            return Err(FinPfError::NotParallel);
        }
        let graph = legs.iter().flat_map(|l| l.graph().iter().copied()).collect();
        Ok(PartialFn::from_graph_unchecked(graph, cod))
    }
}

/// The three stages of the coequalizer of `f, g : X ⇀ Y`.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    /// Q1: classes of the least equivalence with `f(x) ~ g(x)` on `Dom f ∩ Dom g`.
    pub classes: Vec<Vec<usize>>,
    /// Class of each point of `Y`.
    pub class_of: Vec<usize>,
    /// Q2: classes hit by `f` or `g` where the other side is undefined.
    pub removed: Vec<usize>,
    /// Q3: classes surviving the finiteness filter, in order.
    pub kept: Vec<usize>,
    pub space: FinSpace,
    /// `q = q3 ∘ q2 ∘ q1 : Y ⇀ Q3`.
    pub quotient: PartialFn,
}

pub fn coequalizer(y: &FinSpace, f: &PartialFn, g: &PartialFn) -> Result<Coequalizer, FinPfError> {
    check_parallel(f, g)?;
    if f.cod() != y.size() {
        return Err(FinPfError::NotParallel);
    }
    let n = y.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for x in 0..f.dom() {
        if let (Some(a), Some(b)) = (f.apply(x), g.apply(x)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[i] = root_class[r];
        classes[root_class[r]].push(i);
    }

    let mut removed = Vec::new();
    for x in 0..f.dom() {
        let hit = match (f.apply(x), g.apply(x)) {
            (Some(a), None) | (None, Some(a)) => Some(class_of[a]),
            _ => None,
        };
        if let Some(c) = hit {
            if !removed.contains(&c) {
                removed.push(c);
            }
        }
    }
    removed.sort_unstable();

    let y_sys: SetSystem = y.set_system()?;
    let kept: Vec<usize> = (0..classes.len())
        .filter(|c| !removed.contains(c))
        .filter(|&c| y_sys.perp_contains(Subset::from_indices(classes[c].iter().copied())))
        .collect();

    let labels = kept
        .iter()
        .map(|&c| {
            let parts: Vec<&str> = classes[c].iter().map(|&i| y.label(i)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let quotient = PartialFn::from_graph_unchecked(
        (0..n).map(|i| kept.iter().position(|&c| c == class_of[i])).collect(),
        kept.len(),
    );
    Ok(Coequalizer {
        classes,
        class_of,
        removed,
        kept,
        space: FinSpace::new(labels),
        quotient,
    })
}

impl Coequalizer {
    /// The unique `k` with `k ∘ q = h`, when `h ∘ f = h ∘ g`.
    pub fn mediator(&self, h: &PartialFn) -> Option<PartialFn> {
        let graph = self
            .kept
            .iter()
            .map(|&c| {
                let vals: Vec<Option<usize>> = self.classes[c].iter().map(|&i| h.apply(i)).collect();
                if vals.windows(2).all(|w| w[0] == w[1]) {
                    Ok(vals[0])
                } else {
                    Err(())
                }
            })
            .collect::<Result<Vec<_>, ()>>()
            .ok()?;
        let k = PartialFn::from_graph_unchecked(graph, h.cod());
        (self.quotient.then_unchecked(&k) == *h).then_some(k)
    }
}
