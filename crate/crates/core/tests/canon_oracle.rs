//! Canonical keys checked against isomorphism by trying every permutation.

use graphprod::laws::{self, gen};
use graphprod::{canonical_form, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn brute_isomorphic(a: &Graph, b: &Graph, perms: &[Vec<usize>]) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    perms.iter().any(|p| {
        (0..n).all(|u| {
            a.is_root(u) == b.is_root(p[u])
                && (u..n).all(|v| a.has_edge(u, v) == b.has_edge(p[u], p[v]))
        })
    })
}

/// Every graph on `n` vertices with edge set drawn from the bits of a mask.
fn all_simple(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn class_count(graphs: &[Graph], perms: &[Vec<usize>]) -> usize {
    let mut reps: Vec<&Graph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| brute_isomorphic(r, g, perms)) {
            reps.push(g);
        }
    }
    reps.len()
}

#[test]
fn eleven_graphs_on_four_vertices() {
    let graphs = all_simple(4);
    let keys: std::collections::BTreeSet<_> =
        graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
    assert_eq!(keys.len(), 11);
    assert_eq!(class_count(&graphs, &permutations(4)), 11);
}

#[test]
fn rooted_and_looped_classes_match_brute_force() {
    let perms = permutations(3);
    let mut graphs = Vec::new();
    for g in all_simple(3) {
        for roots in 0u32..8 {
            let r: Vec<usize> = (0..3).filter(|v| roots >> v & 1 == 1).collect();
            let rooted = g.clone().with_roots(&r).unwrap();
            for loops in 0u32..8 {
                let mut edges: Vec<_> = rooted.edges().collect();
                edges.extend((0..3).filter(|v| loops >> v & 1 == 1).map(|v| (v, v)));
                graphs.push(
                    Graph::from_edges_with_loops(3, &edges)
                        .unwrap()
                        .with_roots(&r)
                        .unwrap(),
                );
            }
        }
    }
    let keys: std::collections::BTreeSet<_> =
        graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
    assert_eq!(keys.len(), class_count(&graphs, &perms));
}

#[test]
fn random_pairs_agree_with_brute_force() {
    let mut rng = laws::rng(17);
    let perms: Vec<Vec<Vec<usize>>> = (0..=6).map(permutations).collect();
    for _ in 0..3000 {
        let n = rng.gen_range(1..=6);
        let loops = rng.gen_bool(0.3);
        let a = gen::graph(&mut rng, n, loops);
        let a = decorate_roots(&mut rng, a);
        // half the time compare against a relabelled copy, otherwise against
        // an unrelated graph of the same size
        let b = if rng.gen_bool(0.5) {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            a.permuted(&p)
        } else {
            let b = gen::graph(&mut rng, n, loops);
            decorate_roots(&mut rng, b)
        };
        let same_key = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        assert_eq!(same_key, brute_isomorphic(&a, &b, &perms[n]), "{a:?} {b:?}");
    }
}

fn decorate_roots(rng: &mut laws::TestRng, g: Graph) -> Graph {
    let r: Vec<usize> = (0..g.vertex_count())
        .filter(|_| rng.gen_bool(0.3))
        .collect();
    g.with_roots(&r).unwrap()
}
