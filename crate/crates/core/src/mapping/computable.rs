use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::ApproxMap;
use crate::basis::{FinitePresentation, Presentation, Token};
use crate::ideal::LazyIdeal;

/// A mapping between presented bases given by a decidable relation on
/// indices. Its graph is enumerated by dovetailing.
pub trait ComputableMap: Send + Sync {
    fn source(&self) -> &Arc<dyn Presentation>;
    fn target(&self) -> &Arc<dyn Presentation>;
    fn relates(&self, i: usize, j: usize) -> bool;
}

type Relation = dyn Fn(usize, usize) -> bool + Send + Sync;

/// A computable map given by a closure over indices.
#[derive(Clone)]
pub struct FnMap {
    source: Arc<dyn Presentation>,
    target: Arc<dyn Presentation>,
    rel: Arc<Relation>,
}

impl FnMap {
    pub fn new<F>(source: Arc<dyn Presentation>, target: Arc<dyn Presentation>, rel: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Send + Sync + 'static,
    {
        FnMap {
            source,
            target,
            rel: Arc::new(rel),
        }
    }

    /// The identity `i I j ⟺ π_j ⊑ π_i`.
    pub fn identity(p: Arc<dyn Presentation>) -> Self {
        let q = p.clone();
        FnMap::new(p.clone(), p, move |i, j| q.leq(j, i))
    }
}

impl fmt::Debug for FnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .finish()
    }
}

impl ComputableMap for FnMap {
    fn source(&self) -> &Arc<dyn Presentation> {
        &self.source
    }

    fn target(&self) -> &Arc<dyn Presentation> {
        &self.target
    }

    fn relates(&self, i: usize, j: usize) -> bool {
        (self.rel)(i, j)
    }
}

/// A finite approximable map read through presentations of its bases.
#[derive(Debug, Clone)]
pub struct PresentedMap {
    map: ApproxMap,
    from: FinitePresentation,
    to: FinitePresentation,
    source: Arc<dyn Presentation>,
    target: Arc<dyn Presentation>,
}

impl PresentedMap {
    pub fn new(map: ApproxMap, from: FinitePresentation, to: FinitePresentation) -> Self {
        let source: Arc<dyn Presentation> = Arc::new(from.clone());
        let target: Arc<dyn Presentation> = Arc::new(to.clone());
        PresentedMap {
            map,
            from,
            to,
            source,
            target,
        }
    }

    /// Presents both bases in token order.
    pub fn natural(map: &ApproxMap) -> Self {
        let from = FinitePresentation::natural(map.source().clone());
        let to = FinitePresentation::natural(map.target().clone());
        PresentedMap::new(map.clone(), from, to)
    }

    pub fn map(&self) -> &ApproxMap {
        &self.map
    }

    pub fn source_token(&self, i: usize) -> Token {
        self.from.token(i)
    }

    pub fn target_token(&self, j: usize) -> Token {
        self.to.token(j)
    }

    pub fn source_index(&self, t: Token) -> usize {
        self.from.index_of(t)
    }
}

impl ComputableMap for PresentedMap {
    fn source(&self) -> &Arc<dyn Presentation> {
        &self.source
    }

    fn target(&self) -> &Arc<dyn Presentation> {
        &self.target
    }

    fn relates(&self, i: usize, j: usize) -> bool {
        self.map.relates(self.from.token(i), self.to.token(j))
    }
}

/// Pairs `(i,j)` at dovetail level `level`, ordered by `i` then `j`.
fn level_pairs(level: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=level).flat_map(move |i| {
        let js = if i == level { 0..=level } else { level..=level };
        js.map(move |j| (i, j))
    })
}

/// The first `fuel` related pairs in the order max(i,j), then i, then j.
///
/// At most `fuel·(fuel+1)` levels are scanned, so sparse graphs may yield
/// fewer than `fuel` pairs. Outputs for increasing fuel are prefixes of
/// each other.
pub fn enumerate_graph(f: &dyn ComputableMap, fuel: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if fuel == 0 {
        return out;
    }
    let cap = fuel * (fuel + 1);
    let end = match (f.source().len(), f.target().len()) {
        (Some(n), Some(m)) => cap.min(n.max(m)),
        _ => cap,
    };
    for level in 0..end {
        for (i, j) in level_pairs(level) {
            if f.source().in_range(i) && f.target().in_range(j) && f.relates(i, j) {
                out.push((i, j));
                if out.len() == fuel {
                    return out;
                }
            }
        }
    }
    out
}

/// Every related pair with both indices below `levels`, in dovetail order.
pub fn graph_levels(f: &dyn ComputableMap, levels: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for level in 0..levels {
        for (i, j) in level_pairs(level) {
            if f.source().in_range(i) && f.target().in_range(j) && f.relates(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Applies a computable map to a lazy ideal. At fuel `n` the result holds
/// every `j` related to an index of `x` at fuel `n`, within `n` levels.
pub fn apply_lazy(f: Arc<dyn ComputableMap>, x: &LazyIdeal) -> LazyIdeal {
    let x = x.clone();
    let target = f.target().clone();
    LazyIdeal::new(target, move |fuel| {
        let inputs = x.at(fuel);
        graph_levels(f.as_ref(), fuel)
            .into_iter()
            .filter(|(i, _)| inputs.contains(i))
            .map(|(_, j)| j)
            .collect::<BTreeSet<usize>>()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisRef;
    use crate::fixtures;
    use crate::mapping::{compose, compose_relational};

    #[test]
    fn dovetail_order() {
        let pairs: Vec<_> = (0..3).flat_map(level_pairs).collect();
        assert_eq!(
            pairs,
            vec![
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
                (0, 2),
                (1, 2),
                (2, 0),
                (2, 1),
                (2, 2)
            ]
        );
    }

    #[test]
    fn identity_graph_prefixes() {
        let b: BasisRef = Arc::new(fixtures::example_strings());
        let p: Arc<dyn Presentation> = Arc::new(FinitePresentation::natural(b));
        let id = FnMap::identity(p.clone());
        assert!(enumerate_graph(&id, 0).is_empty());
        let three = enumerate_graph(&id, 3);
        assert_eq!(three.len(), 3);
        for &(i, j) in &three {
            assert!(p.leq(j, i));
        }
        assert_eq!(three, vec![(0, 0), (1, 0), (1, 1)]);
        for fuel in 0..12 {
            let a = enumerate_graph(&id, fuel);
            let b = enumerate_graph(&id, fuel + 1);
            assert_eq!(&b[..a.len()], &a[..]);
        }
    }

    #[test]
    fn composite_graph_within_relational_composite() {
        let b: BasisRef = Arc::new(fixtures::example_strings());
        let f =
            ApproxMap::finite_step_closure_labels(&b, &b, &[("0⊥", "1⊥"), ("1⊥", "00")]).unwrap();
        let g =
            ApproxMap::finite_step_closure_labels(&b, &b, &[("1⊥", "11"), ("0⊥", "0⊥")]).unwrap();
        let gf = compose(&g, &f).unwrap();
        let full = compose_relational(&g, &f).unwrap();
        let pm = PresentedMap::natural(&gf);
        for fuel in 0..40 {
            for (i, j) in enumerate_graph(&pm, fuel) {
                assert!(full.relates(pm.source_token(i), pm.target_token(j)));
            }
        }
        assert_eq!(enumerate_graph(&pm, 1000).len(), full.len());
        assert!(b.len() > 0);
    }

    #[test]
    fn lazy_application() {
        let p: Arc<dyn Presentation> = Arc::new(crate::constructors::StreamPresentation);
        let id: Arc<dyn ComputableMap> = Arc::new(FnMap::identity(p.clone()));
        let x = LazyIdeal::principal(p, 6);
        let y = apply_lazy(id, &x);
        for fuel in 0..12 {
            assert!(y.at(fuel).is_subset(&x.at(fuel)));
            assert!(y.at(fuel).is_subset(&y.at(fuel + 1)));
        }
        assert_eq!(y.at(12), x.at(12));
    }
}
