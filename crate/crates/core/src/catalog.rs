//! Enumeration of small graphs up to isomorphism.
//!
//! Graphs on `k + 1` vertices are produced from representatives on `k`
//! vertices by attaching a new vertex to every subset of the old ones
//! (and, for looped classes, with or without a loop), then deduplicated
//! by canonical key. Every graph arises this way from the graph obtained
//! by deleting its last vertex, so the enumeration is complete.

use std::collections::BTreeMap;

use crate::canon::{canonical_labeling, CanonicalKey, DEFAULT_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::Product;

/// Hard cap on catalog size; beyond this the enumeration is impractical.
pub const MAX_CATALOG_VERTICES: usize = 9;

/// All graphs on exactly `k` vertices for each `k <= max`, up to isomorphism,
/// as canonical representatives sorted by key.
pub fn all_graphs(max: usize, loops: bool) -> Result<Vec<Vec<(CanonicalKey, Graph)>>> {
    if max > MAX_CATALOG_VERTICES {
        return Err(Error::SizeLimitExceeded(format!(
            "graph catalog up to {max} vertices (limit {MAX_CATALOG_VERTICES})"
        )));
    }
    let mut levels: Vec<Vec<(CanonicalKey, Graph)>> = Vec::with_capacity(max + 1);
    let mut empty = Graph::empty();
    empty.set_allows_loops(loops);
    levels.push(vec![(canon(&empty)?, empty)]);
    for k in 0..max {
        let mut next: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
        for (_, base) in &levels[k] {
            for mask in 0u32..(1 << k) {
                for looped in [false, true] {
                    if looped && !loops {
                        continue;
                    }
                    let g = extend(base, mask, looped);
                    let l = canonical_labeling(&g, DEFAULT_MAX_VERTICES)?;
                    next.entry(l.key).or_insert_with(|| g.permuted(&l.position));
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

fn canon(g: &Graph) -> Result<CanonicalKey> {
    Ok(canonical_labeling(g, DEFAULT_MAX_VERTICES)?.key)
}

fn extend(base: &Graph, mask: u32, looped: bool) -> Graph {
    let k = base.vertex_count();
    let mut g = Graph::edgeless(k + 1);
    g.set_allows_loops(base.allows_loops());
    for (u, v) in base.edges() {
        g.add_edge_unchecked(u, v);
    }
    for u in 0..k {
        if mask >> u & 1 == 1 {
            g.add_edge_unchecked(u, k);
        }
    }
    if looped {
        g.add_edge_unchecked(k, k);
    }
    g
}

/// Which root sets a catalog decorates its graphs with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Roots {
    None,
    NonEmpty,
    Single,
}

/// All decorations of `g` with root sets of the given pattern, up to
/// isomorphism.
pub fn root_decorations(g: &Graph, pattern: Roots) -> Result<Vec<(CanonicalKey, Graph)>> {
    let n = g.vertex_count();
    let mut out: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    let masks: Vec<u64> = match pattern {
        Roots::None => vec![0],
        Roots::NonEmpty => (1u64..(1 << n)).collect(),
        Roots::Single => (0..n).map(|v| 1u64 << v).collect(),
    };
    for mask in masks {
        let roots: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let r = g.clone().with_roots(&roots)?;
        let l = canonical_labeling(&r, DEFAULT_MAX_VERTICES)?;
        out.entry(l.key).or_insert_with(|| r.permuted(&l.position));
    }
    Ok(out.into_iter().collect())
}

/// Connected graphs in the factorization domain of `op`, by vertex count.
///
/// Index `k` lists the domain graphs on `k` vertices, sorted by key.
#[derive(Clone, Debug)]
pub struct DomainCatalog {
    op: Product,
    levels: Vec<Vec<(CanonicalKey, Graph)>>,
}

impl DomainCatalog {
    pub fn build(op: Product, max: usize) -> Result<Self> {
        let loops = op == Product::Direct;
        let base = all_graphs(max, loops)?;
        let pattern = match op {
            Product::Hierarchical => Roots::NonEmpty,
            Product::RootedHierarchical => Roots::Single,
            _ => Roots::None,
        };
        let mut levels = Vec::with_capacity(max + 1);
        for (k, level) in base.into_iter().enumerate() {
            let mut out: Vec<(CanonicalKey, Graph)> = Vec::new();
            if k == 0 {
                levels.push(out);
                continue;
            }
            for (key, g) in level {
                if !g.is_connected() {
                    continue;
                }
                if op == Product::Direct && g.is_bipartite() {
                    continue;
                }
                if pattern == Roots::None {
                    out.push((key, g));
                } else {
                    out.extend(root_decorations(&g, pattern)?);
                }
            }
            out.sort_by(|a, b| a.0.cmp(&b.0));
            levels.push(out);
        }
        Ok(DomainCatalog { op, levels })
    }

    pub fn op(&self) -> Product {
        self.op
    }

    pub fn max_vertices(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[(CanonicalKey, Graph)] {
        self.levels.get(k).map_or(&[], |l| l.as_slice())
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
