//! Graphs as finite multisets of connected components.

use std::collections::BTreeMap;

use crate::canon::{canonical_labeling, CanonicalKey, DEFAULT_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on the total vertex count of a realized family.
pub const DEFAULT_MAX_REALIZED_VERTICES: usize = 1 << 16;

/// Connected components of `g` up to isomorphism, with multiplicities.
///
/// Components are returned in canonical labeling, ordered by key.
pub fn connected_components(g: &Graph) -> Result<Vec<(Graph, usize)>> {
    Ok(GraphFamily::of(g)?
        .iter()
        .map(|(_, c, m)| (c.clone(), m))
        .collect())
}

/// Splits `g` into its components, each renumbered densely, without
/// canonicalizing them.
pub fn split_components(g: &Graph) -> Vec<Graph> {
    let (label, count) = g.component_labels();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        members[c].push(v);
    }
    members.iter().map(|vs| g.induced(vs)).collect()
}

/// A finite-support multiset of connected graphs, keyed by canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GraphFamily {
    components: BTreeMap<CanonicalKey, (Graph, usize)>,
    bound: Option<usize>,
}

impl GraphFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of(g: &Graph) -> Result<Self> {
        let mut family = GraphFamily::new();
        for c in split_components(g) {
            family.insert(&c, 1)?;
        }
        Ok(family)
    }

    /// Adds `multiplicity` copies of the connected graph `component`.
    pub fn insert(&mut self, component: &Graph, multiplicity: usize) -> Result<()> {
        if !component.is_connected() {
            return Err(Error::InvalidGraph(
                "family members must be connected".to_string(),
            ));
        }
        if multiplicity == 0 {
            return Ok(());
        }
        let labeling = canonical_labeling(component, DEFAULT_MAX_VERTICES)?;
        let entry = self
            .components
            .entry(labeling.key)
            .or_insert_with(|| (component.permuted(&labeling.position), 0));
        entry.1 += multiplicity;
        Ok(())
    }

    pub fn insert_key(&mut self, key: CanonicalKey, component: Graph, multiplicity: usize) {
        if multiplicity > 0 {
            self.components.entry(key).or_insert((component, 0)).1 += multiplicity;
        }
    }

    /// Declared degree bound when this family stands for a truncated
    /// infinite family.
    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn set_bound(&mut self, bound: Option<usize>) {
        self.bound = bound;
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of distinct isomorphism classes.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// Total number of components, counted with multiplicity.
    pub fn component_count(&self) -> usize {
        self.components.values().map(|(_, m)| m).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.components
            .values()
            .map(|(g, m)| g.vertex_count() * m)
            .sum()
    }

    pub fn multiplicity(&self, key: &CanonicalKey) -> usize {
        self.components.get(key).map_or(0, |(_, m)| *m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Graph, usize)> {
        self.components.iter().map(|(k, (g, m))| (k, g, *m))
    }

    /// Multiset union.
    pub fn union(&self, other: &GraphFamily) -> GraphFamily {
        let mut out = self.clone();
        for (k, g, m) in other.iter() {
            out.insert_key(k.clone(), g.clone(), m);
        }
        out.bound = match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        out
    }

    /// The disjoint union of all members.
    pub fn realize(&self) -> Result<Graph> {
        self.realize_with_limit(DEFAULT_MAX_REALIZED_VERTICES)
    }

    pub fn realize_with_limit(&self, limit: usize) -> Result<Graph> {
        let total = self.vertex_count();
        if total > limit {
            return Err(Error::SizeLimitExceeded(format!(
                "realizing {total} vertices (limit {limit})"
            )));
        }
        let mut g = Graph::empty();
        for (_, c, m) in self.iter() {
            g = g.disjoint_union(&c.copies(m));
        }
        Ok(g)
    }

    /// Whether `self` and `other` have the same components, ignoring bounds.
    pub fn same_components(&self, other: &GraphFamily) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|((ka, (_, ma)), (kb, (_, mb)))| ka == kb && ma == mb)
    }
}

/// The component multiset of `g`.
pub fn family_of(g: &Graph) -> Result<GraphFamily> {
    GraphFamily::of(g)
}

pub fn realize(f: &GraphFamily) -> Result<Graph> {
    f.realize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn components_of_simple_unions() {
        let k2 = Graph::complete(2);
        let g = k2.copies(2).disjoint_union(&Graph::edgeless(1));
        let comps = connected_components(&g).unwrap();
        let mut mults: Vec<(usize, usize)> =
            comps.iter().map(|(c, m)| (c.vertex_count(), *m)).collect();
        mults.sort();
        assert_eq!(mults, vec![(1, 1), (2, 2)]);
        assert!(connected_components(&Graph::empty()).unwrap().is_empty());
        assert_eq!(connected_components(&Graph::path(3)).unwrap().len(), 1);
    }

    #[test]
    fn roots_are_inherited() {
        let g = Graph::path(2)
            .disjoint_union(&Graph::path(2))
            .with_roots(&[0])
            .unwrap();
        let f = GraphFamily::of(&g).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.component_count(), 2);
    }

    #[test]
    fn realize_roundtrip() {
        let g = Graph::cycle(4)
            .disjoint_union(&Graph::complete(2).copies(2))
            .disjoint_union(&Graph::edgeless(1));
        let f = family_of(&g).unwrap();
        assert_eq!(f.component_count(), 4);
        let back = realize(&f).unwrap();
        assert!(is_isomorphic(&back, &g).unwrap());
        assert_eq!(realize(&GraphFamily::new()).unwrap().vertex_count(), 0);
    }

    #[test]
    fn realize_respects_limit() {
        let mut f = GraphFamily::new();
        f.insert(&Graph::complete(3), 10).unwrap();
        assert!(matches!(
            f.realize_with_limit(20),
            Err(Error::SizeLimitExceeded(_))
        ));
    }

    #[test]
    fn insert_rejects_disconnected() {
        let mut f = GraphFamily::new();
        assert!(f.insert(&Graph::edgeless(2), 1).is_err());
    }
}
