//! Canonical labeling of (rooted, looped) graphs.
//!
//! Individualization-refinement: the initial ordered partition groups
//! vertices by color (root flag, loop flag), equitable refinement splits
//! cells by neighbor counts, and a depth-first search individualizes
//! vertices of the first smallest non-singleton cell. The canonical
//! labeling is the leaf whose relabeled adjacency matrix is smallest.
//! Automorphisms discovered between equivalent leaves prune sibling
//! subtrees, which keeps highly symmetric products (hypercubes, complete
//! graphs, lexicographic powers) tractable.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{iter_bits, set_bit, Graph};

/// Default cap on vertices for canonicalization of a single graph.
pub const DEFAULT_MAX_VERTICES: usize = 128;

/// Bytes identifying the isomorphism class of a rooted, possibly looped graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Vertex count encoded in the key.
    pub fn vertex_count(&self) -> usize {
        u32::from_le_bytes(self.0[..4].try_into().unwrap()) as usize
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// A canonical labeling: `position[v]` is the canonical index of vertex `v`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub position: Vec<usize>,
    pub key: CanonicalKey,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalKey> {
    canonical_form_with_limit(g, DEFAULT_MAX_VERTICES)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalKey> {
    canonical_labeling(g, limit).map(|l| l.key)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.root_count() != b.root_count()
        || a.loop_count() != b.loop_count()
    {
        // still enforce the size contract
        check_size(a, DEFAULT_MAX_VERTICES)?;
        check_size(b, DEFAULT_MAX_VERTICES)?;
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// The graph relabeled into canonical order.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let l = canonical_labeling(g, DEFAULT_MAX_VERTICES)?;
    Ok(g.permuted(&l.position))
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::SizeLimitExceeded(format!(
            "canonical form of a graph with {} vertices (limit {limit})",
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn canonical_labeling(g: &Graph, limit: usize) -> Result<Labeling> {
    check_size(g, limit)?;
    let n = g.vertex_count();
    let colors: Vec<u8> = (0..n)
        .map(|v| (g.is_root(v) as u8) << 1 | g.has_loop(v) as u8)
        .collect();
    let mut search = Search::new(g, &colors);
    let root = search.initial_partition();
    let mut path = Vec::new();
    search.run(root, &mut path);
    let best = search.best.expect("search visits at least one leaf");

    let mut position = vec![0; n];
    for (p, &v) in best.lab.iter().enumerate() {
        position[v] = p;
    }
    let key = encode_key(n, &colors, &best.lab, &best.cert, search.words);
    Ok(Labeling { position, key })
}

fn encode_key(n: usize, colors: &[u8], lab: &[usize], cert: &[u64], words: usize) -> CanonicalKey {
    let mut bytes = Vec::with_capacity(4 + n + n * n / 16 + 1);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend(lab.iter().map(|&v| colors[v]));
    let mut acc = 0u8;
    let mut filled = 0;
    for p in 0..n {
        let row = &cert[p * words..(p + 1) * words];
        for q in p + 1..n {
            acc = acc << 1 | (row[q / 64] >> (q % 64) & 1) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    CanonicalKey(bytes)
}

/// Ordered partition stored nauty-style: cells are contiguous runs of `lab`.
#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// For each position, the start of the cell containing it.
    start: Vec<usize>,
    /// Cell length, valid at cell start positions.
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell(&self, s: usize) -> &[usize] {
        &self.lab[s..s + self.len[s]]
    }

    /// Start of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let l = self.len[s];
            if l > 1 && best.map_or(true, |b| l < self.len[b]) {
                best = Some(s);
            }
            s += l;
        }
        best
    }

    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.start[p];
        let l = self.len[s];
        let front = self.lab[s];
        self.lab.swap(s, p);
        self.pos[v] = s;
        self.pos[front] = p;
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for q in s + 1..s + l {
            self.start[q] = s + 1;
        }
        self.cells += 1;
        s
    }
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    n: usize,
    words: usize,
    colors: &'g [u8],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, colors: &'g [u8]) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            n,
            words: g.words(),
            colors,
            first: None,
            best: None,
            generators: Vec::new(),
        }
    }

    fn initial_partition(&self) -> Partition {
        let n = self.n;
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| self.colors[v]);
        let mut pos = vec![0; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
        }
        let mut start = vec![0; n];
        let mut len = vec![0; n];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let c = self.colors[lab[s]];
            let mut e = s;
            while e < n && self.colors[lab[e]] == c {
                start[e] = s;
                e += 1;
            }
            len[s] = e - s;
            cells += 1;
            s = e;
        }
        let mut part = Partition {
            lab,
            pos,
            start,
            len,
            cells,
        };
        let mut queue = Vec::new();
        let mut s = 0;
        while s < n {
            queue.push(s);
            s += part.len[s];
        }
        self.refine(&mut part, queue);
        part
    }

    fn cell_bits(&self, part: &Partition, s: usize) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for &v in part.cell(s) {
            set_bit(&mut bits, v);
        }
        bits
    }

    /// Equitable refinement driven by a queue of splitter cells.
    fn refine(&self, part: &mut Partition, initial: Vec<usize>) {
        let n = self.n;
        let mut in_queue = vec![false; n.max(1)];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in initial {
            in_queue[s] = true;
            queue.push_back(s);
        }
        let mut counts: Vec<(u32, usize)> = Vec::with_capacity(n);
        while let Some(ws) = queue.pop_front() {
            in_queue[ws] = false;
            if part.is_discrete() {
                break;
            }
            let wbits = self.cell_bits(part, ws);
            let mut s = 0;
            while s < n {
                let l = part.len[s];
                if l == 1 {
                    s += 1;
                    continue;
                }
                counts.clear();
                for &v in &part.lab[s..s + l] {
                    let row = self.g.row(v);
                    let c: u32 = row
                        .iter()
                        .zip(&wbits)
                        .map(|(a, b)| (a & b).count_ones())
                        .sum();
                    counts.push((c, v));
                }
                if counts.iter().all(|&(c, _)| c == counts[0].0) {
                    s += l;
                    continue;
                }
                counts.sort_unstable();
                for (i, &(_, v)) in counts.iter().enumerate() {
                    part.lab[s + i] = v;
                    part.pos[v] = s + i;
                }
                // split into runs of equal count
                let mut runs: Vec<(usize, usize)> = Vec::new();
                let mut i = 0;
                while i < l {
                    let mut j = i;
                    while j < l && counts[j].0 == counts[i].0 {
                        j += 1;
                    }
                    runs.push((s + i, j - i));
                    i = j;
                }
                for &(rs, rl) in &runs {
                    part.len[rs] = rl;
                    for q in rs..rs + rl {
                        part.start[q] = rs;
                    }
                }
                part.cells += runs.len() - 1;
                if in_queue[s] {
                    for &(rs, _) in &runs[1..] {
                        in_queue[rs] = true;
                        queue.push_back(rs);
                    }
                } else {
                    let largest = runs
                        .iter()
                        .enumerate()
                        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(rs, _)) in runs.iter().enumerate() {
                        if i != largest {
                            in_queue[rs] = true;
                            queue.push_back(rs);
                        }
                    }
                }
                s += l;
            }
        }
    }

    fn certificate(&self, part: &Partition) -> Vec<u64> {
        let w = self.words;
        let mut cert = vec![0u64; self.n * w];
        for (p, &v) in part.lab.iter().enumerate() {
            let row = &mut cert[p * w..(p + 1) * w];
            for u in iter_bits(self.g.row(v)) {
                set_bit(row, part.pos[u]);
            }
        }
        cert
    }

    /// Returns `Some(d)` to abandon everything below depth `d + 1`.
    fn run(&mut self, part: Partition, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        let Some(target) = part.target_cell() else {
            return self.leaf(&part, path);
        };
        let mut children: Vec<usize> = part.cell(target).to_vec();
        children.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in children {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, path) {
                continue;
            }
            let mut child = part.clone();
            let s = child.individualize(v);
            self.refine(&mut child, vec![s]);
            path.push(v);
            let jump = self.run(child, path);
            path.pop();
            explored.push(v);
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Option<usize> {
        let cert = self.certificate(part);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                cert,
                lab: part.lab.clone(),
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let gen = automorphism(&part.lab, &first.lab);
            let d = divergence(path, &first.path);
            self.generators.push(gen);
            return Some(d);
        }
        let best = self.best.as_ref().unwrap();
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let gen = automorphism(&part.lab, &best.lab);
                let d = divergence(path, &best.path);
                self.generators.push(gen);
                Some(d)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    cert,
                    lab: part.lab.clone(),
                    path: path.to_vec(),
                });
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gen in &self.generators {
            if path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// The permutation mapping `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gen = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b;
    }
    gen
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        g.permuted(&perm)
    }

    #[test]
    fn path_labelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn roots_distinguish() {
        let end = Graph::path(3).with_roots(&[0]).unwrap();
        let mid = Graph::path(3).with_roots(&[1]).unwrap();
        let other_end = Graph::path(3).with_roots(&[2]).unwrap();
        assert_ne!(canonical_form(&end).unwrap(), canonical_form(&mid).unwrap());
        assert_eq!(
            canonical_form(&end).unwrap(),
            canonical_form(&other_end).unwrap()
        );
        let two = Graph::path(3).with_roots(&[0, 1]).unwrap();
        assert!(!is_isomorphic(&end, &two).unwrap());
    }

    #[test]
    fn loops_distinguish() {
        let a = Graph::from_edges_with_loops(2, &[(0, 1), (0, 0)]).unwrap();
        let b = Graph::from_edges_with_loops(2, &[(0, 1)]).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = Graph::path(12);
        assert!(matches!(
            canonical_form_with_limit(&g, 10),
            Err(Error::SizeLimitExceeded(_))
        ));
    }

    #[test]
    fn empty_graph_has_a_key() {
        assert_eq!(canonical_form(&Graph::empty()).unwrap().vertex_count(), 0);
    }

    #[test]
    fn symmetric_graphs_are_relabel_invariant() {
        // Petersen graph
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Graph::from_edges(10, &edges).unwrap();
        let k = canonical_form(&petersen).unwrap();
        for seed in 0..5 {
            assert_eq!(canonical_form(&shuffled(&petersen, seed)).unwrap(), k);
        }
        let k64 = Graph::complete(64);
        assert_eq!(
            canonical_form(&k64).unwrap(),
            canonical_form(&shuffled(&k64, 3)).unwrap()
        );
    }

    #[test]
    fn canonical_graph_is_a_relabeling() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)])
            .unwrap()
            .with_roots(&[4])
            .unwrap();
        let c = canonical_graph(&g).unwrap();
        assert_eq!(canonical_graph(&shuffled(&g, 9)).unwrap(), c);
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&g).unwrap());
    }
}
