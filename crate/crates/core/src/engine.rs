//! Graph families as series over a prime registry, and the graph-level
//! roots and cancellation that follow.

use crate::error::{Error, Result};
use crate::factor::PrimeRegistry;
use crate::family::GraphFamily;
use crate::graph::Graph;
use crate::products::Product;
use crate::series::{NatSeries, Series, Side};

/// The component family of `g` as seen by `op`: roots are dropped for
/// products that ignore them.
pub fn family_for(g: &Graph, op: Product) -> Result<GraphFamily> {
    match op {
        Product::Hierarchical | Product::RootedHierarchical => GraphFamily::of(g),
        _ => GraphFamily::of(&g.clone().without_roots()),
    }
}

/// The series `Σ f_m · factor(m)` of a family.
///
/// With `bound = Some(d)`, a component of degree above `d` is an error
/// rather than being dropped silently.
pub fn encode(f: &GraphFamily, reg: &PrimeRegistry, bound: Option<usize>) -> Result<NatSeries> {
    let mut terms = Vec::with_capacity(f.len());
    for (_, g, m) in f.iter() {
        let mono = reg.factor(g)?;
        if let Some(d) = bound {
            if mono.degree() > d {
                return Err(Error::TruncationExceeded {
                    degree: mono.degree(),
                    bound: d,
                });
            }
        }
        terms.push((mono, m as u64));
    }
    Ok(Series::from_terms(reg.id(), bound, terms))
}

/// The family with `c` components isomorphic to the realization of `m`
/// for every term `c·m`.
pub fn decode(s: &NatSeries, reg: &PrimeRegistry) -> Result<GraphFamily> {
    if s.registry() != reg.id() {
        return Err(Error::RegistryMismatch);
    }
    let mut f = GraphFamily::new();
    for (m, &c) in s.terms() {
        let g = reg.realize(m)?;
        f.insert(&g, usize::try_from(c).expect("multiplicity fits in usize"))?;
    }
    f.set_bound(s.bound());
    Ok(f)
}

/// The family `g` with `g^n ≅ h`.
pub fn graph_nth_root(h: &GraphFamily, n: usize, reg: &PrimeRegistry) -> Result<GraphFamily> {
    let s = encode(h, reg, h.bound())?;
    decode(&s.nth_root(n)?, reg)
}

/// The family `a` with `a · c ≅ p` (`Side::Right`) or `c · a ≅ p`
/// (`Side::Left`).
pub fn graph_cancel(
    p: &GraphFamily,
    c: &GraphFamily,
    side: Side,
    reg: &PrimeRegistry,
) -> Result<GraphFamily> {
    let bound = match (p.bound(), c.bound()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let ps = encode(p, reg, bound)?;
    let cs = encode(c, reg, bound)?;
    decode(&ps.cancel(&cs, side)?, reg)
}

/// The product family `a · b`, computed through the series.
pub fn graph_product(a: &GraphFamily, b: &GraphFamily, reg: &PrimeRegistry) -> Result<GraphFamily> {
    let s = encode(a, reg, None)?.mul(&encode(b, reg, None)?)?;
    decode(&s, reg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::family::family_of;
    use crate::graph::Graph;
    use crate::products::{power, rooted_hierarchical, Product};

    fn cart() -> PrimeRegistry {
        PrimeRegistry::build(Product::Cartesian, 4).unwrap()
    }

    fn sample() -> Graph {
        // (K2 + K1)^2 = C4 + 2 K2 + K1
        Graph::cycle(4)
            .disjoint_union(&Graph::complete(2).copies(2))
            .disjoint_union(&Graph::edgeless(1))
    }

    #[test]
    fn encode_example() {
        let reg = cart();
        let s = encode(&family_of(&sample()).unwrap(), &reg, None).unwrap();
        assert_eq!(s.to_string(), "1 + 2*y0 + y0^2");
        assert!(encode(&GraphFamily::new(), &reg, None).unwrap().is_zero());
        let k1 = encode(&family_of(&Graph::edgeless(1)).unwrap(), &reg, None).unwrap();
        assert_eq!(k1.to_string(), "1");
        assert!(matches!(
            encode(&family_of(&sample()).unwrap(), &reg, Some(1)),
            Err(Error::TruncationExceeded {
                degree: 2,
                bound: 1
            })
        ));
    }

    #[test]
    fn decode_examples() {
        let reg = cart();
        let one = NatSeries::one(reg.id(), None);
        let f = decode(&one, &reg).unwrap();
        assert_eq!(f.component_count(), 1);
        assert_eq!(f.vertex_count(), 1);
        let sq = NatSeries::parse("y0^2", reg.id(), None).unwrap();
        let c4 = decode(&sq, &reg).unwrap();
        assert!(c4.same_components(&family_of(&Graph::cycle(4)).unwrap()));
        let other = NatSeries::parse("y0", crate::monomial::RegistryId(1), None).unwrap();
        assert!(matches!(decode(&other, &reg), Err(Error::RegistryMismatch)));
    }

    #[test]
    fn roots_and_nonexistence() {
        let reg = cart();
        let h = family_of(&sample()).unwrap();
        let g = graph_nth_root(&h, 2, &reg).unwrap();
        let expected = family_of(&Graph::complete(2).disjoint_union(&Graph::edgeless(1))).unwrap();
        assert!(g.same_components(&expected));
        assert!(graph_nth_root(&h, 1, &reg).unwrap().same_components(&h));
        let two_k2 = family_of(&Graph::complete(2).copies(2)).unwrap();
        assert!(matches!(
            graph_nth_root(&two_k2, 2, &reg),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn cancellation() {
        let reg = PrimeRegistry::build(Product::RootedHierarchical, 4).unwrap();
        let a = Graph::complete(2)
            .with_roots(&[0])
            .unwrap()
            .disjoint_union(&Graph::rooted_k1());
        let c = Graph::path(3).with_roots(&[1]).unwrap();
        let p = rooted_hierarchical(&a, &c).unwrap();
        let (pf, cf, af) = (
            family_of(&p).unwrap(),
            family_of(&c).unwrap(),
            family_of(&a).unwrap(),
        );
        assert!(graph_cancel(&pf, &cf, Side::Right, &reg)
            .unwrap()
            .same_components(&af));
        let q = rooted_hierarchical(&c, &a).unwrap();
        let qf = family_of(&q).unwrap();
        assert!(graph_cancel(&qf, &cf, Side::Left, &reg)
            .unwrap()
            .same_components(&af));
        let k1 = family_of(&Graph::rooted_k1()).unwrap();
        assert!(graph_cancel(&pf, &k1, Side::Right, &reg)
            .unwrap()
            .same_components(&pf));
        assert!(matches!(
            graph_cancel(&pf, &GraphFamily::new(), Side::Right, &reg),
            Err(Error::ZeroDivisor)
        ));

        let creg = cart();
        let k2 = family_of(&Graph::complete(2)).unwrap();
        let c4 = family_of(&Graph::cycle(4)).unwrap();
        assert!(matches!(
            graph_cancel(&k2, &c4, Side::Right, &creg),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn product_through_series() {
        let reg = cart();
        let a = family_of(&Graph::complete(2).disjoint_union(&Graph::path(3))).unwrap();
        let prod = graph_product(&a, &a, &reg).unwrap();
        let direct = power(&a.realize().unwrap(), 2, Product::Cartesian).unwrap();
        assert_eq!(
            canonical_form(&prod.realize().unwrap()).unwrap(),
            canonical_form(&direct).unwrap()
        );
    }
}
