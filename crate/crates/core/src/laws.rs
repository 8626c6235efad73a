//! Randomized property checks for products, the monomial order, series and
//! the graph-level engine, plus the generators they draw from.
//!
//! Each check returns a [`CheckReport`] with the number of cases tried and
//! failed, so callers can print or assert on it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::canon::is_isomorphic;
use crate::engine::{encode, family_for as family, graph_cancel, graph_nth_root};
use crate::error::{Error, Result};
use crate::factor::PrimeRegistry;
use crate::graph::Graph;
use crate::monomial::{Letter, Monomial, RegistryId};
use crate::products::{power, Product};
use crate::series::{IntSeries, NatSeries, Series, Side};

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    pub example: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    /// Records a fallible case; an error counts as a failure.
    pub fn record_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}: {e}", describe())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} ({} cases, {} failures)",
            self.name, self.cases, self.failures
        )?;
        if let Some(e) = &self.example {
            write!(f, ": {e}")?;
        }
        Ok(())
    }
}

pub mod gen {
    //! Random graphs, families, monomials and series.

    use super::*;

    /// A uniformly random graph on `n` vertices (loops only if `loops`).
    pub fn graph(rng: &mut TestRng, n: usize, loops: bool) -> Graph {
        let mut g = Graph::edgeless(n);
        g.set_allows_loops(loops);
        for u in 0..n {
            for v in u..n {
                if (u != v || loops) && rng.gen_bool(0.5) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// A random connected graph: a random tree plus random extra edges.
    pub fn connected(rng: &mut TestRng, n: usize, loops: bool) -> Graph {
        let mut g = Graph::edgeless(n);
        g.set_allows_loops(loops);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let parent = order[rng.gen_range(0..i)];
            g.add_edge_unchecked(parent, order[i]);
        }
        let density = rng.gen_range(0.0..0.6);
        for u in 0..n {
            for v in u..n {
                if (u != v || loops) && rng.gen_bool(density) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Adds roots as `op` requires: a random nonempty set per component
    /// for the hierarchical product, one per component for the rooted one.
    pub fn decorate(rng: &mut TestRng, g: Graph, op: Product) -> Graph {
        let (label, count) = g.component_labels();
        let mut roots = Vec::new();
        for c in 0..count {
            let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| label[v] == c).collect();
            match op {
                Product::Hierarchical => {
                    let chosen: Vec<usize> = members
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect();
                    if chosen.is_empty() {
                        roots.push(*members.choose(rng).expect("nonempty component"));
                    } else {
                        roots.extend(chosen);
                    }
                }
                Product::RootedHierarchical => {
                    roots.push(*members.choose(rng).expect("nonempty component"))
                }
                _ => {}
            }
        }
        g.with_roots(&roots).expect("roots in range")
    }

    /// A random graph (possibly disconnected) in the domain of `op`.
    pub fn operand(rng: &mut TestRng, op: Product, n: usize) -> Graph {
        let g = graph(rng, n, op == Product::Direct);
        decorate(rng, g, op)
    }

    /// A random connected graph in the factorization domain of `op`.
    pub fn component(rng: &mut TestRng, op: Product, max_n: usize) -> Graph {
        loop {
            let n = rng.gen_range(1..=max_n);
            let g = connected(rng, n, op == Product::Direct);
            if op == Product::Direct && g.is_bipartite() {
                continue;
            }
            return decorate(rng, g, op);
        }
    }

    /// A random family of up to `max_components` components that `reg`
    /// can factor. Components outside the unique-factorization domain
    /// (complete factors under modlex) are redrawn.
    pub fn family(
        rng: &mut TestRng,
        reg: &PrimeRegistry,
        max_components: usize,
        max_n: usize,
    ) -> Graph {
        let count = rng.gen_range(1..=max_components);
        let mut g = Graph::empty();
        for _ in 0..count {
            loop {
                let c = component(rng, reg.op(), max_n);
                match reg.factor(&c) {
                    Err(Error::UnsupportedDomain(_)) => continue,
                    _ => {
                        g = g.disjoint_union(&c);
                        break;
                    }
                }
            }
        }
        g.set_allows_loops(reg.op() == Product::Direct);
        g
    }

    /// A random monomial of degree at most `max_degree` over `ny` commuting
    /// and `nx` non-commuting letters.
    pub fn monomial(rng: &mut TestRng, max_degree: usize, ny: u32, nx: u32) -> Monomial {
        let d = rng.gen_range(0..=max_degree);
        Monomial::from_letters((0..d).map(|_| {
            let i = rng.gen_range(0..ny + nx);
            if i < ny {
                Letter::y(i)
            } else {
                Letter::x(i - ny)
            }
        }))
    }

    /// A random integer series with up to `max_terms` terms.
    pub fn int_series(rng: &mut TestRng, max_terms: usize, max_degree: usize) -> IntSeries {
        let k = rng.gen_range(0..=max_terms);
        Series::from_terms(
            RegistryId::FREE,
            None,
            (0..k).map(|_| (monomial(rng, max_degree, 2, 2), rng.gen_range(-4i64..=4))),
        )
    }

    pub fn nat_series(rng: &mut TestRng, max_terms: usize, max_degree: usize) -> NatSeries {
        let k = rng.gen_range(0..=max_terms);
        Series::from_terms(
            RegistryId::FREE,
            None,
            (0..k).map(|_| (monomial(rng, max_degree, 2, 2), rng.gen_range(0u64..=4))),
        )
    }
}

fn iso(a: &Graph, b: &Graph) -> Result<bool> {
    is_isomorphic(a, b)
}

/// Identity, associativity, distributivity, commutativity, vertex counts
/// and connectivity for one product.
pub fn product_laws(op: Product, rng: &mut TestRng, iters: usize) -> Vec<CheckReport> {
    let mut counts = CheckReport::new(format!("{op}: vertex counts multiply"));
    let mut identity = CheckReport::new(format!("{op}: neutral element"));
    let mut assoc = CheckReport::new(format!("{op}: associativity"));
    let mut left = CheckReport::new(format!("{op}: left distributivity"));
    let mut right = CheckReport::new(format!("{op}: right distributivity"));
    let mut comm = CheckReport::new(format!("{op}: commutativity"));
    let mut conn = CheckReport::new(format!("{op}: connected iff factors connected"));
    let e = op.neutral();
    for _ in 0..iters {
        let [a, b, c] = [0; 3].map(|_| {
            let n = rng.gen_range(1..=3);
            gen::operand(rng, op, n)
        });
        let show = || format!("a={a:?} b={b:?} c={c:?}");
        let ab = op.apply(&a, &b);
        if let Ok(ab) = &ab {
            counts.record(
                ab.vertex_count() == a.vertex_count() * b.vertex_count(),
                show,
            );
        }
        identity.record_result(
            (|| Ok(iso(&op.apply(&e, &a)?, &a)? && iso(&op.apply(&a, &e)?, &a)?))(),
            show,
        );
        assoc.record_result(
            (|| {
                let l = op.apply(&op.apply(&a, &b)?, &c)?;
                let r = op.apply(&a, &op.apply(&b, &c)?)?;
                iso(&l, &r)
            })(),
            show,
        );

        let [x, y, z] = [0; 3].map(|_| {
            let n = rng.gen_range(1..=5);
            gen::operand(rng, op, n)
        });
        let show = || format!("x={x:?} y={y:?} z={z:?}");
        let yz = y.disjoint_union(&z);
        if op != Product::Lex {
            left.record_result(
                (|| {
                    let l = op.apply(&x, &yz)?;
                    let r = op.apply(&x, &y)?.disjoint_union(&op.apply(&x, &z)?);
                    iso(&l, &r)
                })(),
                show,
            );
        }
        right.record_result(
            (|| {
                let l = op.apply(&yz, &x)?;
                let r = op.apply(&y, &x)?.disjoint_union(&op.apply(&z, &x)?);
                iso(&l, &r)
            })(),
            show,
        );
        if op.is_commutative() {
            comm.record_result((|| iso(&op.apply(&x, &y)?, &op.apply(&y, &x)?))(), show);
        }
        if matches!(
            op,
            Product::Hierarchical | Product::Cartesian | Product::Strong
        ) {
            conn.record_result(
                (|| {
                    let p = op.apply(&x, &y)?;
                    Ok(p.is_connected() == (x.is_connected() && y.is_connected()))
                })(),
                show,
            );
        }
    }
    [counts, identity, assoc, left, right, comm, conn]
        .into_iter()
        .filter(|r| r.cases > 0)
        .collect()
}

/// `K2 ∘ 2K1` is connected while `K2 ∘ K1 + K2 ∘ K1` is not.
pub fn lex_left_distributivity_fails() -> Result<bool> {
    let k2 = Graph::complete(2);
    let k1 = Graph::edgeless(1);
    let l = Product::Lex.apply(&k2, &k1.copies(2))?;
    let r = Product::Lex.apply(&k2, &k1)?.copies(2);
    Ok(!iso(&l, &r)?)
}

/// Order laws for monomials over three commuting and three
/// non-commuting letters.
pub fn monomial_order(rng: &mut TestRng, iters: usize) -> Vec<CheckReport> {
    let mut total = CheckReport::new("monomials: totality and antisymmetry");
    let mut trans = CheckReport::new("monomials: transitivity");
    let mut mono = CheckReport::new("monomials: strict monotonicity on both sides");
    let mut graded = CheckReport::new("monomials: degree additive, 1 minimal");
    let mut assoc = CheckReport::new("monomials: associativity and identity");
    let mut div = CheckReport::new("monomials: factors bounded by product");
    for _ in 0..iters {
        let [a, b, c] = [0; 3].map(|_| gen::monomial(rng, 4, 3, 3));
        let show = || format!("a={a} b={b} c={c}");
        let ab = a.cmp(&b);
        total.record(
            ab == b.cmp(&a).reverse() && (ab == Ordering::Equal) == (a == b),
            show,
        );
        let mut s = [&a, &b, &c];
        s.sort();
        trans.record(s[0] <= s[2] && s[0] <= s[1] && s[1] <= s[2], show);
        if ab == Ordering::Less && !c.is_one() {
            mono.record(a.mul(&c) < b.mul(&c) && c.mul(&a) < c.mul(&b), show);
        } else if ab == Ordering::Greater && !c.is_one() {
            mono.record(b.mul(&c) < a.mul(&c) && c.mul(&b) < c.mul(&a), show);
        }
        let one = Monomial::one();
        graded.record(
            a.mul(&b).degree() == a.degree() + b.degree() && (a.is_one() || a > one),
            show,
        );
        assoc.record(
            a.mul(&b).mul(&c) == a.mul(&b.mul(&c)) && a.mul(&one) == a && one.mul(&a) == a,
            show,
        );
        let m = a.mul(&b);
        div.record(a <= m && b <= m, show);
    }
    vec![total, trans, mono, graded, assoc, div]
}

/// Soundness and completeness of `divisors` against splitting every
/// rearrangement of the monomial's letters that leaves it unchanged.
pub fn divisor_completeness(rng: &mut TestRng, iters: usize, max_degree: usize) -> CheckReport {
    let mut report = CheckReport::new("monomials: divisors sound and complete");
    for _ in 0..iters {
        let m = gen::monomial(rng, max_degree, 3, 2);
        let listed = m.divisors();
        let as_set: BTreeSet<(Monomial, Monomial)> = listed.iter().cloned().collect();
        let sound = listed.iter().all(|(u, v)| u.mul(v) == m) && as_set.len() == listed.len();
        let expected = brute_force_divisors(&m);
        report.record(sound && as_set == expected, || {
            format!(
                "m={m}: {} listed, {} expected",
                as_set.len(),
                expected.len()
            )
        });
    }
    report
}

fn brute_force_divisors(m: &Monomial) -> BTreeSet<(Monomial, Monomial)> {
    let letters = m.letters().to_vec();
    let mut out = BTreeSet::new();
    let mut perm = letters.clone();
    perm.sort();
    loop {
        if Monomial::from_letters(perm.iter().copied()) == *m {
            for k in 0..=perm.len() {
                out.insert((
                    Monomial::from_letters(perm[..k].iter().copied()),
                    Monomial::from_letters(perm[k..].iter().copied()),
                ));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Semiring laws for natural-coefficient series.
pub fn series_laws(rng: &mut TestRng, iters: usize) -> CheckReport {
    let mut report = CheckReport::new("series: semiring laws");
    for _ in 0..iters {
        let [a, b, c] = [0; 3].map(|_| gen::nat_series(rng, 4, 3));
        let zero = NatSeries::zero(RegistryId::FREE, None);
        let one = NatSeries::one(RegistryId::FREE, None);
        let ok = (|| -> Result<bool> {
            Ok(a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?
                && a.add(&b)? == b.add(&a)?
                && a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?
                && a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?
                && b.add(&c)?.mul(&a)? == b.mul(&a)?.add(&c.mul(&a)?)?
                && a.mul(&zero)?.is_zero()
                && zero.mul(&a)?.is_zero()
                && a.mul(&one)? == a
                && one.mul(&a)? == a
                && a.add(&zero)? == a)
        })();
        report.record_result(ok, || format!("a={a} b={b} c={c}"));
    }
    report
}

/// Order laws for integer series, including sign-reversal under
/// multiplication by negative series.
pub fn series_order(rng: &mut TestRng, iters: usize) -> Vec<CheckReport> {
    let mut total = CheckReport::new("series: totality and transitivity");
    let mut add = CheckReport::new("series: addition is monotone");
    let mut mul = CheckReport::new("series: multiplication is monotone on both sides");
    for _ in 0..iters {
        let [a, b, c] = [0; 3].map(|_| gen::int_series(rng, 4, 3));
        let show = || format!("a={a} b={b} c={c}");
        let r = (|| -> Result<()> {
            let ab = a.compare(&b)?;
            let mut s = [&a, &b, &c];
            let mut sorted = true;
            s.sort_by(|x, y| x.compare(y).expect("same registry"));
            for (x, y) in [(0, 1), (1, 2), (0, 2)] {
                sorted &= s[x].compare(s[y])? != Ordering::Greater;
            }
            total.record(
                ab == b.compare(&a)?.reverse() && (ab == Ordering::Equal) == (a == b) && sorted,
                show,
            );
            add.record(a.add(&c)?.compare(&b.add(&c)?)? == ab, show);
            let zero = IntSeries::zero(RegistryId::FREE, None);
            let sign = c.compare(&zero)?;
            let expect = match sign {
                Ordering::Greater => ab,
                Ordering::Less => ab.reverse(),
                Ordering::Equal => Ordering::Equal,
            };
            mul.record(
                a.mul(&c)?.compare(&b.mul(&c)?)? == expect
                    && c.mul(&a)?.compare(&c.mul(&b)?)? == expect,
                show,
            );
            Ok(())
        })();
        if let Err(e) = r {
            total.record(false, || format!("{}: {e}", show()));
        }
    }
    vec![total, add, mul]
}

/// Products of nonzero integer series of degree at most `max_degree` are
/// nonzero.
pub fn domain_property(rng: &mut TestRng, iters: usize, max_degree: usize) -> CheckReport {
    let mut report = CheckReport::new("series: no zero divisors");
    let mut done = 0;
    while done < iters {
        let a = gen::int_series(rng, 5, max_degree);
        let b = gen::int_series(rng, 5, max_degree);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        done += 1;
        report.record_result(a.mul(&b).map(|p| !p.is_zero()), || format!("a={a} b={b}"));
    }
    report
}

/// `realize(factor(g)) ≅ g` for random connected graphs in the domain.
pub fn factor_roundtrip(reg: &PrimeRegistry, rng: &mut TestRng, iters: usize) -> CheckReport {
    let op = reg.op();
    let mut report = CheckReport::new(format!("{op}: factor then realize"));
    for _ in 0..iters {
        let g = gen::family(rng, reg, 1, reg.bound().min(5));
        report.record_result(
            (|| {
                let m = reg.factor(&g)?;
                let back = reg.realize(&m)?;
                iso(&back, &crate::factor::normalize_component(&g, op)?)
            })(),
            || format!("g={g:?}"),
        );
    }
    report
}

/// `encode(A · B) = encode(A) · encode(B)`.
pub fn encode_homomorphism(reg: &PrimeRegistry, rng: &mut TestRng, iters: usize) -> CheckReport {
    let op = reg.op();
    let mut report = CheckReport::new(format!("{op}: encode is multiplicative"));
    for _ in 0..iters {
        let a = gen::family(rng, reg, 3, 4);
        let b = gen::family(rng, reg, 3, 4);
        report.record_result(
            (|| {
                let ab = family(&op.apply(&a, &b)?, op)?;
                let lhs = encode(&ab, reg, None)?;
                let rhs = encode(&family(&a, op)?, reg, None)?.mul(&encode(
                    &family(&b, op)?,
                    reg,
                    None,
                )?)?;
                Ok(lhs == rhs)
            })(),
            || format!("a={a:?} b={b:?}"),
        );
    }
    report
}

/// `graph_nth_root(g^n, n) ≅ g` for `n` in 2 and 3.
pub fn root_roundtrip(reg: &PrimeRegistry, rng: &mut TestRng, iters: usize) -> CheckReport {
    let op = reg.op();
    let mut report = CheckReport::new(format!("{op}: n-th root of n-th power"));
    for i in 0..iters {
        let n = 2 + i % 2;
        let g = gen::family(rng, reg, 3, 4);
        report.record_result(
            (|| {
                let h = family(&power(&g, n, op)?, op)?;
                let root = graph_nth_root(&h, n, reg)?;
                Ok(root.same_components(&family(&g, op)?))
            })(),
            || format!("n={n} g={g:?}"),
        );
    }
    report
}

/// `graph_cancel(a · c, c) ≅ a`, on both sides for noncommutative products.
pub fn cancel_roundtrip(reg: &PrimeRegistry, rng: &mut TestRng, iters: usize) -> CheckReport {
    let op = reg.op();
    let mut report = CheckReport::new(format!("{op}: cancellation"));
    for _ in 0..iters {
        let a = gen::family(rng, reg, 3, 4);
        let c = gen::family(rng, reg, 2, 4);
        let sides: &[Side] = if op.is_commutative() {
            &[Side::Right]
        } else {
            &[Side::Right, Side::Left]
        };
        for &side in sides {
            report.record_result(
                (|| {
                    let p = match side {
                        Side::Right => op.apply(&a, &c)?,
                        Side::Left => op.apply(&c, &a)?,
                    };
                    let q = graph_cancel(&family(&p, op)?, &family(&c, op)?, side, reg)?;
                    Ok(q.same_components(&family(&a, op)?))
                })(),
                || format!("{side:?} a={a:?} c={c:?}"),
            );
        }
    }
    report
}

/// Every product that factors uniquely.
pub const FACTOR_PRODUCTS: [Product; 6] = [
    Product::Cartesian,
    Product::Hierarchical,
    Product::RootedHierarchical,
    Product::Strong,
    Product::Direct,
    Product::ModLex,
];

/// The whole suite, with `iters` cases per randomized check.
pub fn run_all(seed: u64, iters: usize) -> Result<Vec<CheckReport>> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for op in Product::ALL {
        out.extend(product_laws(op, &mut rng, iters));
    }
    let mut lex = CheckReport::new("lex: left distributivity fails on K2 and 2K1");
    lex.record_result(lex_left_distributivity_fails(), String::new);
    out.push(lex);
    out.extend(monomial_order(&mut rng, iters));
    out.push(divisor_completeness(&mut rng, iters, 6));
    out.push(series_laws(&mut rng, iters));
    out.extend(series_order(&mut rng, iters));
    out.push(domain_property(&mut rng, iters, 5));
    for op in FACTOR_PRODUCTS {
        let reg = PrimeRegistry::build(op, 4)?;
        out.push(factor_roundtrip(&reg, &mut rng, iters));
        out.push(encode_homomorphism(&reg, &mut rng, iters.min(50)));
        out.push(root_roundtrip(&reg, &mut rng, iters.min(50)));
        out.push(cancel_roundtrip(&reg, &mut rng, iters.min(50)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for r in run_all(7, 20).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn lex_counterexample() {
        assert!(lex_left_distributivity_fails().unwrap());
    }

    #[test]
    fn permutations() {
        let mut v = [1, 2, 2];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 3);
    }

    #[test]
    fn generators_respect_domains() {
        let mut r = rng(1);
        for _ in 0..50 {
            let g = gen::component(&mut r, Product::Direct, 4);
            assert!(g.is_connected() && !g.is_bipartite());
            let h = gen::component(&mut r, Product::RootedHierarchical, 4);
            assert_eq!(h.root_count(), 1);
        }
    }
}
