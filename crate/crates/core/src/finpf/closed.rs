use std::collections::HashMap;

use super::morphism::PartialFn;
use super::space::{is_finite, FinSpace, SetSystem, Subset};
use super::FinPfError;

pub const DEFAULT_HOM_BOUND: u64 = 4096;

/// The internal hom `X ⊸ Y`: nonempty partial functions `X ⇀ Y`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub maps: Vec<PartialFn>,
    pub space: FinSpace,
    index: HashMap<Vec<Option<usize>>, usize>,
    dom: usize,
    cod: usize,
}

/// Builds `X ⊸ Y`. Fails when `(|Y|+1)^|X| − 1` exceeds `bound`.
pub fn internal_hom(x: &FinSpace, y: &FinSpace, bound: u64) -> Result<HomSpace, FinPfError> {
    let total = match PartialFn::count(x.size(), y.size()).map(|c| c - 1) {
        Some(c) if c <= bound => c,
        other => {
            return Err(FinPfError::TooLarge {
                size: other.map_or(usize::MAX, |c| c as usize),
                bound: bound as usize,
            })
        }
    };
    let maps: Vec<PartialFn> = PartialFn::all(x.size(), y.size())
        .filter(|f| !f.is_nowhere_defined())
        .collect();
    debug_assert_eq!(maps.len() as u64, total);
    let labels = maps
        .iter()
        .map(|f| {
            let parts: Vec<String> = f
                .graph()
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| format!("{}↦{}", x.label(i), y.label(v))))
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let index = maps.iter().enumerate().map(|(i, f)| (f.graph().to_vec(), i)).collect();
    Ok(HomSpace {
        maps,
        space: FinSpace::new(labels),
        index,
        dom: x.size(),
        cod: y.size(),
    })
}

impl HomSpace {
    pub fn size(&self) -> usize {
        self.maps.len()
    }

    pub fn position(&self, f: &PartialFn) -> Option<usize> {
        self.index.get(f.graph()).copied()
    }

    /// `ev : (X ⊸ Y) ⊗ X ⇀ Y`, `ev(f, x) = f(x)`.
    pub fn ev(&self) -> PartialFn {
        let graph = self.maps.iter().flat_map(|f| f.graph().iter().copied()).collect();
        PartialFn::from_graph_unchecked(graph, self.cod)
    }

    /// `g : Z ⊗ X ⇀ Y` to `h : Z ⇀ (X ⊸ Y)` with `h(z) = g(z, −)` when that
    /// is nonempty and undefined otherwise.
    pub fn curry(&self, z: usize, g: &PartialFn) -> Result<PartialFn, FinPfError> {
        if g.cod() != self.cod || g.dom() != z * self.dom {
            return Err(FinPfError::NotComposable {
                left: g.dom(),
                right: z * self.dom,
            });
        }
        let graph = (0..z)
            .map(|zi| {
                let slice = &g.graph()[zi * self.dom..(zi + 1) * self.dom];
                if slice.iter().all(Option::is_none) {
                    None
                } else {
                    self.index.get(slice).copied()
                }
            })
            .collect();
        Ok(PartialFn::from_graph_unchecked(graph, self.size()))
    }

    /// Inverse of [`HomSpace::curry`]: `(z, x) ↦ h(z)(x)`.
    pub fn uncurry(&self, h: &PartialFn) -> Result<PartialFn, FinPfError> {
        if h.cod() != self.size() {
            return Err(FinPfError::NotComposable {
                left: h.cod(),
                right: self.size(),
            });
        }
        let graph = h
            .graph()
            .iter()
            .flat_map(|f| (0..self.dom).map(move |x| f.and_then(|f| self.maps[f].apply(x))))
            .collect();
        Ok(PartialFn::from_graph_unchecked(graph, self.cod))
    }
}

/// Truth values of the three conditions on a subset `w` of the hom carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomConditions {
    /// `∪_{f ∈ w} f(u) ∈ V` for every `u ∈ U`.
    pub image_union: bool,
    /// For `u ∈ U`, `v' ∈ V^⊥`: `{f ∈ w : f(u) ∩ v' ≠ ∅}` is finite.
    pub finitary: bool,
    /// For `u ∈ U`, `y ∈ Y`: `{f ∈ w : y ∈ f(u)}` is finite.
    pub pointwise_finitary: bool,
}

/// Evaluates the hom-structure conditions for `w` (a set of maps `X ⇀ Y`)
/// against arbitrary, possibly restricted, families on `X` and `Y`.
pub fn hom_conditions(src: &SetSystem, dst: &SetSystem, w: &[PartialFn]) -> Result<HomConditions, FinPfError> {
    if w.iter().any(|f| f.dom() != src.size() || f.cod() != dst.size()) {
        return Err(FinPfError::NotParallel);
    }
    let dst_perp = dst.perp()?;
    let image_union = src
        .family()
        .iter()
        .all(|&u| dst.contains(w.iter().fold(Subset::EMPTY, |acc, f| acc.union(f.image(u)))));
    let finitary = src.family().iter().all(|&u| {
        dst_perp.family().iter().all(|&v2| {
            let hits = w.iter().enumerate().filter(|(_, f)| !f.image(u).intersect(v2).is_empty());
            is_finite(Subset::from_indices(hits.map(|(i, _)| i)))
        })
    });
    let pointwise_finitary = src.family().iter().all(|&u| {
        (0..dst.size()).all(|y| {
            let hits = w.iter().enumerate().filter(|(_, f)| f.image(u).contains(y));
            is_finite(Subset::from_indices(hits.map(|(i, _)| i)))
        })
    });
    Ok(HomConditions {
        image_union,
        finitary,
        pointwise_finitary,
    })
}

/// Associativity `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)` as a map of pair indices.
pub fn associator(x: usize, y: usize, z: usize) -> PartialFn {
    let graph = (0..x * y * z)
        .map(|i| {
            let (xy, c) = (i / z, i % z);
            let (a, b) = (xy / y, xy % y);
            Some(a * (y * z) + b * z + c)
        })
        .collect();
    PartialFn::from_graph_unchecked(graph, x * y * z)
}

/// Symmetry `X ⊗ Y → Y ⊗ X`.
pub fn symmetry(x: usize, y: usize) -> PartialFn {
    let graph = (0..x * y).map(|i| Some((i % y) * x + i / y)).collect();
    PartialFn::from_graph_unchecked(graph, x * y)
}

/// Left unitor `I ⊗ X → X`.
pub fn left_unitor(x: usize) -> PartialFn {
    PartialFn::identity(x)
}
