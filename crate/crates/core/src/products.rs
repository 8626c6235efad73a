//! Graph products and powers.
//!
//! Every product places the pair `(i, j)` at vertex `i * |V(h)| + j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::split_components;
use crate::graph::Graph;

/// Cap on the vertex count of a computed product.
pub const DEFAULT_MAX_PRODUCT_VERTICES: usize = 1 << 14;

/// Product selector, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Product {
    Cartesian,
    Hierarchical,
    RootedHierarchical,
    Strong,
    Direct,
    Lex,
    ModLex,
}

impl Product {
    pub const ALL: [Product; 7] = [
        Product::Cartesian,
        Product::Hierarchical,
        Product::RootedHierarchical,
        Product::Strong,
        Product::Direct,
        Product::Lex,
        Product::ModLex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Product::Cartesian => "cartesian",
            Product::Hierarchical => "hierarchical",
            Product::RootedHierarchical => "rooted-hierarchical",
            Product::Strong => "strong",
            Product::Direct => "direct",
            Product::Lex => "lex",
            Product::ModLex => "modlex",
        }
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, Product::Cartesian | Product::Strong | Product::Direct)
    }

    /// Whether the product distributes over disjoint union on both sides
    /// (on its domain).
    pub fn is_distributive(self) -> bool {
        self != Product::Lex
    }

    /// The neutral element of the product on its domain.
    pub fn neutral(self) -> Graph {
        match self {
            Product::Hierarchical | Product::RootedHierarchical => Graph::rooted_k1(),
            Product::Direct => Graph::looped_k1(),
            _ => Graph::edgeless(1),
        }
    }

    pub fn apply(self, a: &Graph, b: &Graph) -> Result<Graph> {
        match self {
            Product::Cartesian => Ok(cartesian(a, b)),
            Product::Hierarchical => hierarchical(a, b),
            Product::RootedHierarchical => rooted_hierarchical(a, b),
            Product::Strong => strong(a, b),
            Product::Direct => Ok(direct(a, b)),
            Product::Lex => Ok(lexicographic(a, b)),
            Product::ModLex => Ok(modified_lexicographic(a, b)),
        }
    }

    /// Rejects operands outside the product's domain.
    pub fn check_operand(self, g: &Graph) -> Result<()> {
        match self {
            Product::Hierarchical => check_rooted_components(g, false),
            Product::RootedHierarchical => check_rooted_components(g, true),
            Product::Strong if g.loop_count() > 0 => Err(Error::LoopsNotAllowed),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Product {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Product::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown product `{s}`")))
    }
}

fn check_rooted_components(g: &Graph, single: bool) -> Result<()> {
    let (label, count) = g.component_labels();
    let mut roots = vec![0usize; count];
    for r in g.roots() {
        roots[label[r]] += 1;
    }
    for r in roots {
        if r == 0 {
            return Err(if single {
                Error::NotSinglyRooted
            } else {
                Error::EmptyRootSet
            });
        }
        if single && r != 1 {
            return Err(Error::NotSinglyRooted);
        }
    }
    Ok(())
}

fn product_order(a: &Graph, b: &Graph) -> usize {
    a.vertex_count() * b.vertex_count()
}

fn blank_product(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::edgeless(product_order(a, b));
    g.set_allows_loops(a.allows_loops() || b.allows_loops());
    g
}

/// Edges of the hierarchical product on the given root set of `b`.
fn hierarchical_edges(a: &Graph, b: &Graph, out: &mut Graph) {
    let m = b.vertex_count();
    let b_edges: Vec<_> = b.edges().collect();
    let b_roots: Vec<_> = b.roots().collect();
    for i in 0..a.vertex_count() {
        for &(h, h2) in &b_edges {
            out.add_edge_unchecked(i * m + h, i * m + h2);
        }
    }
    for (g, g2) in a.edges() {
        for &h in &b_roots {
            out.add_edge_unchecked(g * m + h, g2 * m + h);
        }
    }
}

/// Generalized rooted hierarchical product `a ⊓ b` with root set `U × V`.
pub fn hierarchical(a: &Graph, b: &Graph) -> Result<Graph> {
    check_rooted_components(a, false)?;
    check_rooted_components(b, false)?;
    Ok(hierarchical_unchecked(a, b))
}

pub(crate) fn hierarchical_unchecked(a: &Graph, b: &Graph) -> Graph {
    let mut out = blank_product(a, b);
    hierarchical_edges(a, b, &mut out);
    let m = b.vertex_count();
    for g in a.roots() {
        for h in b.roots() {
            out.set_root(g * m + h);
        }
    }
    out
}

/// The hierarchical product restricted to singly rooted components.
pub fn rooted_hierarchical(a: &Graph, b: &Graph) -> Result<Graph> {
    check_rooted_components(a, true)?;
    check_rooted_components(b, true)?;
    Ok(hierarchical_unchecked(a, b))
}

/// Cartesian product: the hierarchical product of fully rooted operands
/// with the roots erased afterwards.
pub fn cartesian(a: &Graph, b: &Graph) -> Graph {
    let a = a.clone().with_all_roots();
    let b = b.clone().with_all_roots();
    hierarchical_unchecked(&a, &b).without_roots()
}

fn direct_edges(a: &Graph, b: &Graph, out: &mut Graph) {
    let m = b.vertex_count();
    let b_edges: Vec<_> = b.edges().collect();
    for (g, g2) in a.edges() {
        for &(h, h2) in &b_edges {
            out.add_edge_unchecked(g * m + h, g2 * m + h2);
            out.add_edge_unchecked(g * m + h2, g2 * m + h);
        }
    }
}

/// Direct (tensor) product on graphs that may carry loops.
pub fn direct(a: &Graph, b: &Graph) -> Graph {
    let mut out = blank_product(a, b);
    direct_edges(a, b, &mut out);
    out
}

/// Strong product of loopless graphs: Cartesian edges plus direct edges.
pub fn strong(a: &Graph, b: &Graph) -> Result<Graph> {
    if a.loop_count() > 0 || b.loop_count() > 0 {
        return Err(Error::LoopsNotAllowed);
    }
    let mut out = cartesian(a, b);
    direct_edges(a, b, &mut out);
    out.set_allows_loops(false);
    Ok(out)
}

/// Lexicographic product `a ∘ b`.
pub fn lexicographic(a: &Graph, b: &Graph) -> Graph {
    let mut out = blank_product(a, b);
    let m = b.vertex_count();
    for i in 0..a.vertex_count() {
        for (h, h2) in b.edges() {
            out.add_edge_unchecked(i * m + h, i * m + h2);
        }
    }
    for (g, g2) in a.edges() {
        for h in 0..m {
            for h2 in 0..m {
                out.add_edge_unchecked(g * m + h, g2 * m + h2);
            }
        }
    }
    out
}

/// Modified lexicographic product: the disjoint union of `A_i ∘ B_j` over
/// all pairs of components. Equals the lexicographic product on connected
/// operands.
pub fn modified_lexicographic(a: &Graph, b: &Graph) -> Graph {
    let a_parts = split_components(a);
    let b_parts = split_components(b);
    let mut out = Graph::empty();
    for ap in &a_parts {
        for bp in &b_parts {
            out = out.disjoint_union(&lexicographic(ap, bp));
        }
    }
    out.set_allows_loops(a.allows_loops() || b.allows_loops());
    out
}

/// Left-associated `n`-fold product of `g` with itself.
pub fn power(g: &Graph, n: usize, op: Product) -> Result<Graph> {
    power_with_limit(g, n, op, DEFAULT_MAX_PRODUCT_VERTICES)
}

pub fn power_with_limit(g: &Graph, n: usize, op: Product, limit: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidGraph(
            "power exponent must be positive".into(),
        ));
    }
    op.check_operand(g)?;
    let total = (g.vertex_count() as u128).checked_pow(n as u32);
    if total.map_or(true, |t| t > limit as u128) {
        return Err(Error::SizeLimitExceeded(format!(
            "power {n} of a graph with {} vertices (limit {limit})",
            g.vertex_count()
        )));
    }
    let mut acc = g.clone();
    for _ in 1..n {
        acc = op.apply(&acc, g)?;
    }
    Ok(acc)
}

/// Adds a loop at every vertex, the bridge from strong to direct products.
pub fn add_loops(g: &Graph) -> Graph {
    g.clone().with_loops_everywhere()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn iso(a: &Graph, b: &Graph) -> bool {
        is_isomorphic(a, b).unwrap()
    }

    fn k2_rooted_end() -> Graph {
        Graph::complete(2).with_roots(&[0]).unwrap()
    }

    #[test]
    fn hierarchical_of_rooted_edges_is_p4() {
        let p = hierarchical(&k2_rooted_end(), &k2_rooted_end()).unwrap();
        assert_eq!(p.edge_count(), 3);
        let p4 = Graph::path(4).with_roots(&[1]).unwrap();
        assert!(iso(&p, &p4));
        assert!(p.is_connected());
    }

    #[test]
    fn hierarchical_neutral_and_errors() {
        let g = Graph::path(3).with_roots(&[0, 2]).unwrap();
        let k1 = Graph::rooted_k1();
        assert!(iso(&hierarchical(&g, &k1).unwrap(), &g));
        assert!(iso(&hierarchical(&k1, &g).unwrap(), &g));
        assert_eq!(hierarchical(&Graph::path(3), &k1), Err(Error::EmptyRootSet));
        assert_eq!(rooted_hierarchical(&g, &k1), Err(Error::NotSinglyRooted));
    }

    #[test]
    fn cartesian_examples() {
        let k2 = Graph::complete(2);
        assert!(iso(&cartesian(&k2, &k2), &Graph::cycle(4)));
        assert_eq!(cartesian(&Graph::path(2), &Graph::path(3)).edge_count(), 7);
        assert!(iso(
            &cartesian(&Graph::path(3), &Graph::edgeless(1)),
            &Graph::path(3)
        ));
        assert_eq!(
            cartesian(&k2.clone().with_roots(&[0]).unwrap(), &k2).root_count(),
            0
        );
    }

    #[test]
    fn strong_and_direct_examples() {
        let k2 = Graph::complete(2);
        assert!(iso(&strong(&k2, &k2).unwrap(), &Graph::complete(4)));
        assert!(iso(&direct(&k2, &k2), &k2.copies(2)));
        let c3 = Graph::complete(3);
        let c9 = direct(&c3, &c3);
        assert_eq!(c9.vertex_count(), 9);
        assert_eq!(c9.edge_count(), 18);
        assert!(c9.is_connected());
        assert_eq!(direct(&c3, &c3).loop_count(), 0);
        let p3 = Graph::path(3);
        assert!(iso(&direct(&p3, &Graph::looped_k1()), &p3));
        assert_eq!(
            strong(&Graph::looped_k1(), &k2),
            Err(Error::LoopsNotAllowed)
        );
        let via_loops = direct(&add_loops(&p3), &add_loops(&k2)).strip_loops();
        assert!(iso(&via_loops, &strong(&p3, &k2).unwrap()));
    }

    #[test]
    fn lexicographic_examples() {
        let k2 = Graph::complete(2);
        let two = Graph::edgeless(2);
        assert!(iso(&lexicographic(&k2, &two), &Graph::cycle(4)));
        let modlex = modified_lexicographic(&k2, &two);
        assert!(iso(&modlex, &k2.copies(2)));
        assert_eq!(lexicographic(&k2, &two).edge_count(), 4);
        let p3 = Graph::path(3);
        assert!(iso(
            &modified_lexicographic(&p3, &k2),
            &lexicographic(&p3, &k2)
        ));
    }

    #[test]
    fn power_examples() {
        let k2 = Graph::complete(2);
        assert!(iso(
            &power(&k2, 2, Product::Cartesian).unwrap(),
            &Graph::cycle(4)
        ));
        assert!(iso(&power(&k2, 1, Product::Strong).unwrap(), &k2));
        let rooted = power(&k2_rooted_end(), 3, Product::RootedHierarchical).unwrap();
        assert_eq!(rooted.vertex_count(), 8);
        assert_eq!(rooted.edge_count(), 7);
        assert!(rooted.is_connected());
        assert!(matches!(
            power_with_limit(&Graph::complete(4), 8, Product::Cartesian, 1000),
            Err(Error::SizeLimitExceeded(_))
        ));
    }

    #[test]
    fn selector_names_roundtrip() {
        for p in Product::ALL {
            assert_eq!(p.name().parse::<Product>().unwrap(), p);
        }
        assert!("tensor".parse::<Product>().is_err());
    }
}
