use std::fmt;

use super::space::{SetSystem, Subset};
use super::FinPfError;

/// A partial function between finite carriers `{0..dom} ⇀ {0..cod}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialFn {
    cod: usize,
    graph: Vec<Option<usize>>,
}

impl PartialFn {
    pub fn new(graph: Vec<Option<usize>>, cod: usize) -> Result<Self, FinPfError> {
        if let Some(y) = graph.iter().flatten().find(|&&y| y >= cod) {
            return Err(FinPfError::Invalid(format!("value {y} outside a codomain of size {cod}")));
        }
        Ok(PartialFn { cod, graph })
    }

    pub(crate) fn from_graph_unchecked(graph: Vec<Option<usize>>, cod: usize) -> Self {
        debug_assert!(graph.iter().flatten().all(|&y| y < cod));
        PartialFn { cod, graph }
    }

    pub fn identity(n: usize) -> Self {
        PartialFn::from_graph_unchecked((0..n).map(Some).collect(), n)
    }

    /// The nowhere-defined function, the zero morphism.
    pub fn empty(dom: usize, cod: usize) -> Self {
        PartialFn::from_graph_unchecked(vec![None; dom], cod)
    }

    pub fn dom(&self) -> usize {
        self.graph.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn graph(&self) -> &[Option<usize>] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.graph[x]
    }

    pub fn is_nowhere_defined(&self) -> bool {
        self.graph.iter().all(Option::is_none)
    }

    pub fn domain(&self) -> Subset {
        Subset::from_indices((0..self.dom()).filter(|&x| self.graph[x].is_some()))
    }

    pub fn image(&self, u: Subset) -> Subset {
        Subset::from_indices(u.iter().filter_map(|x| self.graph[x]))
    }

    pub fn preimage(&self, v: Subset) -> Subset {
        Subset::from_indices((0..self.dom()).filter(|&x| self.graph[x].is_some_and(|y| v.contains(y))))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PartialFn) -> Result<PartialFn, FinPfError> {
        if self.cod != next.dom() {
            return Err(FinPfError::NotComposable {
                left: self.cod,
                right: next.dom(),
            });
        }
        Ok(self.then_unchecked(next))
    }

    pub(crate) fn then_unchecked(&self, next: &PartialFn) -> PartialFn {
        let graph = self.graph.iter().map(|y| y.and_then(|y| next.graph[y])).collect();
        PartialFn::from_graph_unchecked(graph, next.cod)
    }

    /// `f ⊗ g` on pair carriers, defined where both components are.
    pub fn tensor(&self, other: &PartialFn) -> PartialFn {
        let mut graph = Vec::with_capacity(self.dom() * other.dom());
        for a in &self.graph {
            for b in &other.graph {
                graph.push(match (a, b) {
                    (Some(a), Some(b)) => Some(a * other.cod + b),
                    _ => None,
                });
            }
        }
        PartialFn::from_graph_unchecked(graph, self.cod * other.cod)
    }

    /// Whether this is a total bijection.
    pub fn is_bijection(&self) -> bool {
        if self.dom() != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod];
        for y in &self.graph {
            match y {
                Some(y) if !seen[*y] => seen[*y] = true,
                _ => return false,
            }
        }
        true
    }

    /// Every partial function `{0..dom} ⇀ {0..cod}`; there are `(cod+1)^dom`.
    pub fn all(dom: usize, cod: usize) -> AllPartialFns {
        AllPartialFns {
            cod,
            digits: vec![0; dom],
            done: false,
        }
    }

    pub fn count(dom: usize, cod: usize) -> Option<u64> {
        (cod as u64 + 1).checked_pow(dom as u32)
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| format!("{x}↦{y}")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Odometer over partial functions. Digit 0 is "undefined", digit `k` maps to `k-1`.
pub struct AllPartialFns {
    cod: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for AllPartialFns {
    type Item = PartialFn;

    fn next(&mut self) -> Option<PartialFn> {
        if self.done {
            return None;
        }
        let graph = self.digits.iter().map(|&d| d.checked_sub(1)).collect();
        let out = PartialFn::from_graph_unchecked(graph, self.cod);
        self.done = true;
        for d in self.digits.iter_mut() {
            if *d < self.cod {
                *d += 1;
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Which morphism condition failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    Shape,
    /// `f(u) ∉ V` for this `u`.
    Image(Subset),
    /// `f⁻¹{y} ∉ U^⊥`.
    Fiber(usize),
}

/// Checks `f(u) ∈ V` for every `u ∈ U` and `f⁻¹{y} ∈ U^⊥` for every `y`.
pub fn morphism_violation(f: &PartialFn, src: &SetSystem, dst: &SetSystem) -> Option<MorphismViolation> {
    if f.dom() != src.size() || f.cod() != dst.size() {
        return Some(MorphismViolation::Shape);
    }
    if let Some(&u) = src.family().iter().find(|&&u| !dst.contains(f.image(u))) {
        return Some(MorphismViolation::Image(u));
    }
    (0..f.cod())
        .find(|&y| !src.perp_contains(f.preimage(Subset::singleton(y))))
        .map(MorphismViolation::Fiber)
}

pub fn is_morphism(f: &PartialFn, src: &SetSystem, dst: &SetSystem) -> bool {
    morphism_violation(f, src, dst).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn enumerates_all_partial_functions() {
        assert_eq!(PartialFn::all(2, 2).count(), 9);
        assert_eq!(PartialFn::all(0, 5).count(), 1);
        assert_eq!(PartialFn::all(3, 0).count(), 1);
        assert_eq!(PartialFn::count(3, 3), Some(64));
        let distinct: std::collections::HashSet<_> = PartialFn::all(3, 2).collect();
        assert_eq!(distinct.len(), 27);
    }

    #[test]
    fn composition_and_identity() {
        let f = PartialFn::new(vec![Some(1), None], 2).unwrap();
        let g = PartialFn::new(vec![None, Some(0)], 3).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.graph(), &[Some(0), None]);
        assert_eq!(f.then(&PartialFn::identity(2)).unwrap(), f);
        assert!(g.then(&f).is_err());
        assert!(PartialFn::new(vec![Some(2)], 2).is_err());
    }

    #[test]
    fn morphism_conditions() {
        let x = SetSystem::powerset(labels(2)).unwrap();
        let y = SetSystem::powerset(labels(1)).unwrap();
        assert!(is_morphism(&PartialFn::empty(2, 1), &x, &y));
        assert!(is_morphism(&PartialFn::identity(2), &x, &x));

        // a restricted target family that misses the image of the full set
        let v = SetSystem::new(labels(2), [Subset::EMPTY, Subset::singleton(0)]).unwrap();
        let swap = PartialFn::new(vec![Some(1), Some(0)], 2).unwrap();
        assert_eq!(
            morphism_violation(&swap, &x, &v),
            Some(MorphismViolation::Image(Subset::singleton(0)))
        );
        assert!(!is_morphism(&PartialFn::identity(1), &x, &y));
    }
}
