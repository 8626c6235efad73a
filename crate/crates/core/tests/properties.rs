use graphprod::grf::{parse_grf, render_grf, GrfBlock};
use graphprod::{Graph, IntSeries, Letter, Monomial, NatSeries, RegistryId, Series, Side};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    (any::<bool>(), 0u32..3).prop_map(|(y, r)| if y { Letter::y(r) } else { Letter::x(r) })
}

fn monomial(max: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(letter(), 0..=max).prop_map(Monomial::from_letters)
}

fn nat_series() -> impl Strategy<Value = NatSeries> {
    prop::collection::vec((monomial(3), 1u64..4), 0..5)
        .prop_map(|t| Series::from_terms(RegistryId::FREE, None, t))
}

fn int_series() -> impl Strategy<Value = IntSeries> {
    prop::collection::vec((monomial(3), -3i64..4), 0..5)
        .prop_map(|t| Series::from_terms(RegistryId::FREE, None, t))
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..6, any::<bool>(), any::<u64>(), any::<u8>()).prop_map(|(n, loops, bits, roots)| {
        let mut edges = Vec::new();
        let mut i = 0;
        for u in 0..n {
            for v in u..n {
                if (u != v || loops) && bits >> i & 1 == 1 {
                    edges.push((u, v));
                }
                i += 1;
            }
        }
        let g = if loops {
            Graph::from_edges_with_loops(n, &edges).unwrap()
        } else {
            Graph::from_edges(n, &edges).unwrap()
        };
        let r: Vec<usize> = (0..n).filter(|v| roots >> v & 1 == 1).collect();
        g.with_roots(&r).unwrap()
    })
}

proptest! {
    #[test]
    fn monomial_text_roundtrip(m in monomial(6)) {
        let back: Monomial = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn monomial_monoid_laws(a in monomial(4), b in monomial(4), c in monomial(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&Monomial::one()), a.clone());
        prop_assert_eq!(Monomial::one().mul(&a), a.clone());
        prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
    }

    #[test]
    fn monomial_quotients(a in monomial(4), b in monomial(4)) {
        let ab = a.mul(&b);
        prop_assert_eq!(ab.right_quotient(&b), Some(a.clone()));
        prop_assert_eq!(ab.left_quotient(&a), Some(b.clone()));
        prop_assert!(ab.divisors().contains(&(a, b)));
    }

    #[test]
    fn monomial_roots(a in monomial(4), n in 1usize..4) {
        prop_assert_eq!(a.pow(n).nth_root(n), Some(a));
    }

    #[test]
    fn series_text_roundtrip(f in int_series()) {
        let back: IntSeries = Series::parse(&f.to_string(), RegistryId::FREE, None).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn series_cancel_roundtrip(a in int_series(), c in int_series()) {
        prop_assume!(!c.is_zero());
        prop_assert_eq!(a.mul(&c).unwrap().cancel(&c, Side::Right).unwrap(), a.clone());
        prop_assert_eq!(c.mul(&a).unwrap().cancel(&c, Side::Left).unwrap(), a);
    }

    #[test]
    fn series_root_roundtrip(f in nat_series(), n in 1usize..4) {
        prop_assert_eq!(f.pow(n).nth_root(n).unwrap(), f);
    }

    #[test]
    fn grf_roundtrip(graphs in prop::collection::vec((graph(), 1usize..4), 1..4)) {
        let blocks: Vec<GrfBlock> = graphs
            .into_iter()
            .enumerate()
            .map(|(i, (graph, multiplicity))| GrfBlock { name: format!("g{i}"), multiplicity, graph })
            .collect();
        prop_assert_eq!(parse_grf(&render_grf(&blocks)).unwrap(), blocks);
    }
}
