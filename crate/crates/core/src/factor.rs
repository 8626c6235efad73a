//! Prime registries and factorization of connected graphs.
//!
//! A [`PrimeRegistry`] lists the prime connected graphs of a product up to
//! a vertex bound as monoid letters. Factorization searches normal-form
//! words over those letters, pruned by invariants that every product
//! transforms predictably (vertex, edge, loop and root counts), and checks
//! each surviving word by building it and comparing canonical keys.
//!
//! An independent route, [`DivisorOracle`], enumerates candidate factor
//! pairs from the graph catalog directly.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::canon::{canonical_labeling, CanonicalKey, DEFAULT_MAX_VERTICES};
use crate::catalog::{DomainCatalog, MAX_CATALOG_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{Kind, Letter, Monomial, RegistryId};
use crate::products::{Product, DEFAULT_MAX_PRODUCT_VERTICES};

/// Default vertex bound for registry primes.
pub const DEFAULT_REGISTRY_BOUND: usize = 6;

/// Counts that determine the counts of a product: vertices, non-loop
/// edges, loops, roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Stats {
    n: i64,
    e: i64,
    l: i64,
    r: i64,
}

impl Stats {
    fn of(g: &Graph) -> Stats {
        let l = g.loop_count() as i64;
        Stats {
            n: g.vertex_count() as i64,
            e: g.edge_count() as i64 - l,
            l,
            r: g.root_count() as i64,
        }
    }

    /// Counts of `a · b` for connected operands.
    fn combine(op: Product, a: Stats, b: Stats) -> Stats {
        let n = a.n * b.n;
        let (e, l, r) = match op {
            Product::Cartesian => (a.n * b.e + a.e * b.n, 0, 0),
            Product::Hierarchical | Product::RootedHierarchical => {
                (a.n * b.e + a.e * b.r, 0, a.r * b.r)
            }
            Product::Strong => (a.n * b.e + a.e * b.n + 2 * a.e * b.e, 0, 0),
            Product::Direct => (2 * a.e * b.e + a.l * b.e + a.e * b.l, a.l * b.l, 0),
            Product::Lex | Product::ModLex => (a.e * b.n * b.n + a.n * b.e, 0, 0),
        };
        Stats { n, e, l, r }
    }

    /// All `b` with `combine(op, a, b) == t` that could belong to a
    /// connected graph in the domain.
    fn solve_right(op: Product, a: Stats, t: Stats) -> Vec<Stats> {
        if a.n == 0 || t.n % a.n != 0 {
            return Vec::new();
        }
        let n = t.n / a.n;
        let mut out = Vec::new();
        let mut push = |e_num: i64, denom: i64, l: i64, r: i64| {
            if denom > 0 && e_num >= 0 && e_num % denom == 0 {
                out.push(Stats {
                    n,
                    e: e_num / denom,
                    l,
                    r,
                });
            }
        };
        match op {
            Product::Cartesian => push(t.e - a.e * n, a.n, 0, 0),
            Product::Hierarchical | Product::RootedHierarchical => {
                if a.r > 0 && t.r % a.r == 0 {
                    let r = t.r / a.r;
                    push(t.e - a.e * r, a.n, 0, r);
                }
            }
            Product::Strong => push(t.e - a.e * n, a.n + 2 * a.e, 0, 0),
            Product::Direct => {
                let loops: Vec<i64> = if a.l > 0 {
                    if t.l % a.l == 0 {
                        vec![t.l / a.l]
                    } else {
                        vec![]
                    }
                } else if t.l == 0 {
                    (0..=n).collect()
                } else {
                    vec![]
                };
                for l in loops {
                    push(t.e - a.e * l, 2 * a.e + a.l, l, 0);
                }
            }
            Product::Lex | Product::ModLex => push(t.e - a.e * n * n, a.n, 0, 0),
        }
        out.retain(|s| s.plausible(op));
        out
    }

    fn plausible(&self, op: Product) -> bool {
        if self.n == 1 {
            return *self == Stats::of(&op.neutral());
        }
        let roots_ok = match op {
            Product::Hierarchical => self.r >= 1 && self.r <= self.n,
            Product::RootedHierarchical => self.r == 1,
            _ => self.r == 0,
        };
        roots_ok
            && self.e >= self.n - 1
            && self.e <= self.n * (self.n - 1) / 2
            && self.l <= self.n
            && (op == Product::Direct || self.l == 0)
    }
}

/// Whether a prime is a commuting or non-commuting generator under `op`.
pub fn classify(p: &Graph, op: Product) -> Kind {
    match op {
        Product::Cartesian | Product::Strong | Product::Direct => Kind::Y,
        Product::Hierarchical if p.is_fully_rooted() => Kind::Y,
        _ => Kind::X,
    }
}

/// Checks that `g` is a connected graph in the factorization domain of
/// `op` and brings it into the form used by the catalog (roots dropped
/// for unrooted products, loops allowed for the direct product).
pub fn normalize_component(g: &Graph, op: Product) -> Result<Graph> {
    if !g.is_connected() {
        return Err(Error::InvalidGraph("expected a connected graph".into()));
    }
    match op {
        Product::Lex => Err(Error::UnsupportedDomain(
            "the lexicographic product is not left-distributive; use modlex".into(),
        )),
        Product::Direct => {
            if g.is_bipartite() {
                return Err(Error::UnsupportedDomain(
                    "the direct product factors uniquely only non-bipartite graphs".into(),
                ));
            }
            let mut h = g.clone().without_roots();
            h.set_allows_loops(true);
            Ok(h)
        }
        _ if g.loop_count() > 0 => Err(Error::LoopsNotAllowed),
        Product::Hierarchical if g.root_count() == 0 => Err(Error::EmptyRootSet),
        Product::RootedHierarchical if g.root_count() != 1 => Err(Error::NotSinglyRooted),
        Product::Hierarchical | Product::RootedHierarchical => Ok(g.clone()),
        _ => Ok(g.clone().without_roots()),
    }
}

fn key_of(g: &Graph) -> Result<CanonicalKey> {
    Ok(canonical_labeling(g, DEFAULT_MAX_VERTICES)?.key)
}

fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    g.edge_count() - g.loop_count() == n * (n - 1) / 2
}

#[derive(Clone, Debug)]
struct Prime {
    letter: Letter,
    key: CanonicalKey,
    graph: Graph,
    stats: Stats,
}

/// The prime connected graphs of a product up to a vertex bound, as
/// letters of the monoid `[Y] * <X>`.
///
/// Within a kind, letters are ranked by vertex count and then canonical
/// key, so a letter keeps its rank when the bound grows.
#[derive(Clone, Debug)]
pub struct PrimeRegistry {
    op: Product,
    bound: usize,
    id: RegistryId,
    y: Vec<Prime>,
    x: Vec<Prime>,
    index: HashMap<CanonicalKey, Letter>,
}

impl PrimeRegistry {
    pub fn build(op: Product, bound: usize) -> Result<Self> {
        if op == Product::Lex {
            return Err(Error::UnsupportedDomain(
                "the lexicographic product is not left-distributive; use modlex".into(),
            ));
        }
        let catalog = DomainCatalog::build(op, bound)?;
        let mut composite: HashSet<CanonicalKey> = HashSet::new();
        for na in 2..=bound {
            for nb in 2..=bound / na {
                for (_, a) in catalog.level(na) {
                    for (_, b) in catalog.level(nb) {
                        composite.insert(key_of(&op.apply(a, b)?)?);
                    }
                }
            }
        }
        let mut primes: Vec<(Kind, usize, CanonicalKey, Graph)> = Vec::new();
        for k in 2..=bound {
            for (key, g) in catalog.level(k) {
                if !composite.contains(key) {
                    primes.push((classify(g, op), k, key.clone(), g.clone()));
                }
            }
        }
        primes.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let mut reg = PrimeRegistry {
            op,
            bound,
            id: RegistryId::FREE,
            y: Vec::new(),
            x: Vec::new(),
            index: HashMap::new(),
        };
        for (kind, _, key, graph) in primes {
            let list = match kind {
                Kind::Y => &mut reg.y,
                Kind::X => &mut reg.x,
            };
            let letter = Letter {
                kind,
                rank: list.len() as u32,
            };
            reg.index.insert(key.clone(), letter);
            list.push(Prime {
                letter,
                stats: Stats::of(&graph),
                key,
                graph,
            });
        }
        reg.id = RegistryId(fnv1a(format!("{}\n{}", op, reg.dump()).as_bytes()));
        Ok(reg)
    }

    pub fn op(&self) -> Product {
        self.op
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn id(&self) -> RegistryId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.y.len() + self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn primes(&self) -> impl Iterator<Item = &Prime> {
        self.y.iter().chain(&self.x)
    }

    fn entry(&self, l: Letter) -> Option<&Prime> {
        match l.kind {
            Kind::Y => self.y.get(l.rank as usize),
            Kind::X => self.x.get(l.rank as usize),
        }
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.primes().map(|p| p.letter)
    }

    pub fn prime(&self, l: Letter) -> Option<&Graph> {
        self.entry(l).map(|p| &p.graph)
    }

    pub fn key(&self, l: Letter) -> Option<&CanonicalKey> {
        self.entry(l).map(|p| &p.key)
    }

    pub fn letter_of(&self, key: &CanonicalKey) -> Option<Letter> {
        self.index.get(key).copied()
    }

    /// One line per letter: `<kind> <rank> <vertex_count> <key-hex>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in self.primes() {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                p.letter.kind.symbol(),
                p.letter.rank,
                p.graph.vertex_count(),
                p.key.to_hex()
            );
        }
        out
    }

    /// The connected graph a monomial stands for.
    pub fn realize(&self, m: &Monomial) -> Result<Graph> {
        let mut size = 1usize;
        let mut acc = self.op.neutral();
        for &l in m.letters() {
            let p = self
                .prime(l)
                .ok_or_else(|| Error::InvalidGraph(format!("letter {l} is not in the registry")))?;
            size = size.saturating_mul(p.vertex_count());
            if size > DEFAULT_MAX_PRODUCT_VERTICES {
                return Err(Error::SizeLimitExceeded(format!(
                    "monomial {m} realizes to more than {DEFAULT_MAX_PRODUCT_VERTICES} vertices"
                )));
            }
            acc = self.op.apply(&acc, p)?;
        }
        Ok(acc)
    }

    /// The monomial of the connected graph `g`.
    pub fn factor(&self, g: &Graph) -> Result<Monomial> {
        let g = normalize_component(g, self.op)?;
        let key = key_of(&g)?;
        if g.vertex_count() == 1 {
            return if key == key_of(&self.op.neutral())? {
                Ok(Monomial::one())
            } else {
                Err(Error::UnsupportedDomain(
                    "single vertex outside the domain".into(),
                ))
            };
        }
        let mut found = BTreeSet::new();
        if let Some(&l) = self.index.get(&key) {
            found.insert(Monomial::letter(l));
        }
        let target = Target {
            key,
            degrees: degree_sequence(&g),
        };
        let mut word = Vec::new();
        self.search(&target, Stats::of(&g), &mut word, &mut found)?;
        if self.op == Product::ModLex {
            let complete = found
                .iter()
                .flat_map(|m: &Monomial| m.letters().to_vec())
                .any(|l| is_complete(self.prime(l).expect("registry letter")));
            if complete {
                return Err(Error::UnsupportedDomain(
                    "complete graphs factor non-uniquely under modlex".into(),
                ));
            }
        }
        match found.len() {
            1 => Ok(found.into_iter().next().expect("one element")),
            0 if g.vertex_count() > self.bound => Err(Error::SizeLimitExceeded(format!(
                "{}-vertex component has a prime factor above the registry bound {}",
                g.vertex_count(),
                self.bound
            ))),
            0 => Err(Error::InvalidGraph(
                "no factorization over the registry".into(),
            )),
            _ => Err(Error::FactorizationNotUnique(
                found
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            )),
        }
    }

    fn search(
        &self,
        target: &Target,
        rest: Stats,
        word: &mut Vec<Letter>,
        found: &mut BTreeSet<Monomial>,
    ) -> Result<()> {
        if rest.n == 1 {
            let m = Monomial::from_letters(word.iter().copied());
            if !found.contains(&m) {
                let g = self.realize(&m)?;
                if degree_sequence(&g) == target.degrees && key_of(&g)? == target.key {
                    found.insert(m);
                }
            }
            return Ok(());
        }
        let prev = word.last().copied();
        for p in self.primes() {
            // a one-letter word is the target itself, found by key lookup
            if word.is_empty() && p.stats.n == rest.n {
                continue;
            }
            if let Some(prev) = prev {
                if prev.kind == Kind::Y && p.letter.kind == Kind::Y && p.letter.rank < prev.rank {
                    continue;
                }
            }
            for next in Stats::solve_right(self.op, p.stats, rest) {
                word.push(p.letter);
                self.search(target, next, word, found)?;
                word.pop();
            }
        }
        Ok(())
    }
}

struct Target {
    key: CanonicalKey,
    degrees: Vec<usize>,
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Factors a connected graph over `reg`.
pub fn factor_connected(g: &Graph, op: Product, reg: &PrimeRegistry) -> Result<Monomial> {
    if reg.op() != op {
        return Err(Error::RegistryMismatch);
    }
    reg.factor(g)
}

/// Factor pairs found by enumerating candidate graphs from the catalog.
#[derive(Clone, Debug)]
pub struct DivisorOracle {
    op: Product,
    catalog: DomainCatalog,
    neutral: CanonicalKey,
}

impl DivisorOracle {
    /// Oracle for inputs of up to `2 * max_factor` vertices.
    pub fn new(op: Product, max_factor: usize) -> Result<Self> {
        if op == Product::Lex {
            return Err(Error::UnsupportedDomain(
                "lexicographic factorization".into(),
            ));
        }
        let neutral = key_of(&op.neutral())?;
        Ok(DivisorOracle {
            op,
            catalog: DomainCatalog::build(op, max_factor)?,
            neutral,
        })
    }

    /// All ordered pairs `(a, b)` up to isomorphism with `a · b ≅ g`,
    /// including the trivial ones.
    pub fn divisor_pairs(&self, g: &Graph) -> Result<Vec<(Graph, Graph)>> {
        let g = normalize_component(g, self.op)?;
        let n = g.vertex_count();
        if n / 2 > self.catalog.max_vertices() {
            return Err(Error::SizeLimitExceeded(format!(
                "divisor enumeration for {n} vertices needs factors up to {} vertices",
                n / 2
            )));
        }
        let key = key_of(&g)?;
        let unit = self.op.neutral();
        if key == self.neutral {
            return Ok(vec![(unit.clone(), unit)]);
        }
        let target = Stats::of(&g);
        let mut out = vec![(unit.clone(), g.clone())];
        for na in (2..n).filter(|d| n % d == 0) {
            for (_, a) in self.catalog.level(na) {
                let sa = Stats::of(a);
                for (_, b) in self.catalog.level(n / na) {
                    if Stats::combine(self.op, sa, Stats::of(b)) != target {
                        continue;
                    }
                    if key_of(&self.op.apply(a, b)?)? == key {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        out.push((g, unit));
        Ok(out)
    }

    /// Whether `g` has at least two vertices and only trivial factor pairs.
    pub fn is_prime(&self, g: &Graph) -> Result<bool> {
        Ok(g.vertex_count() >= 2 && self.divisor_pairs(g)?.len() == 2)
    }

    /// Every ordered sequence of primes whose product is `g`.
    pub fn factorizations(&self, g: &Graph) -> Result<Vec<Vec<Graph>>> {
        let mut memo = HashMap::new();
        self.factorizations_memo(g, &mut memo)
    }

    fn factorizations_memo(
        &self,
        g: &Graph,
        memo: &mut HashMap<CanonicalKey, Vec<Vec<Graph>>>,
    ) -> Result<Vec<Vec<Graph>>> {
        let key = key_of(&normalize_component(g, self.op)?)?;
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let pairs = self.divisor_pairs(g)?;
        let mut out = Vec::new();
        if key == self.neutral {
            out.push(Vec::new());
        } else if pairs.len() == 2 {
            out.push(vec![pairs[1].0.clone()]);
        } else {
            for (a, b) in &pairs[1..pairs.len() - 1] {
                if !self.is_prime(a)? {
                    continue;
                }
                for mut rest in self.factorizations_memo(b, memo)? {
                    rest.insert(0, a.clone());
                    out.push(rest);
                }
            }
        }
        memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Ordered factor pairs of `g` under `op`; see [`DivisorOracle`].
pub fn divisor_pairs(g: &Graph, op: Product) -> Result<Vec<(Graph, Graph)>> {
    DivisorOracle::new(op, (g.vertex_count() / 2).min(MAX_CATALOG_VERTICES))?.divisor_pairs(g)
}

pub fn is_prime(g: &Graph, op: Product) -> Result<bool> {
    DivisorOracle::new(op, (g.vertex_count() / 2).min(MAX_CATALOG_VERTICES))?.is_prime(g)
}
