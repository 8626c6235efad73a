//! Formal power series `C⟨⟨[Y] * ⟨X⟩⟩⟩` over a coefficient semiring, with
//! optional truncation by degree.
//!
//! Only finitely supported (or truncated) series are represented. A series
//! with `bound = Some(d)` stands for the class of all series agreeing with
//! it in every degree `<= d`; operations on bounded series are exact up to
//! that degree.

mod coeff;
pub mod counterexample;
mod division;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use coeff::{Cardinal, Coefficient, OrderedCoefficient};
pub use division::Side;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, RegistryId};

pub type NatSeries = Series<u64>;
pub type IntSeries = Series<i64>;
pub type CardinalSeries = Series<Cardinal>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    registry: RegistryId,
    bound: Option<usize>,
    terms: BTreeMap<Monomial, C>,
}

fn meet(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn within(bound: Option<usize>, m: &Monomial) -> bool {
    bound.map_or(true, |d| m.degree() <= d)
}

impl<C: Coefficient> Series<C> {
    pub fn zero(registry: RegistryId, bound: Option<usize>) -> Self {
        Series {
            registry,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(registry: RegistryId, bound: Option<usize>) -> Self {
        Self::monomial(registry, bound, Monomial::one(), C::one())
    }

    pub fn monomial(registry: RegistryId, bound: Option<usize>, m: Monomial, c: C) -> Self {
        Self::from_terms(registry, bound, [(m, c)])
    }

    /// Sums the given terms, dropping zeros and terms above the bound.
    pub fn from_terms(
        registry: RegistryId,
        bound: Option<usize>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut s = Self::zero(registry, bound);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() || !within(self.bound, &m) {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn registry(&self) -> RegistryId {
        self.registry
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    /// The same series read against another registry.
    pub fn with_registry(mut self, registry: RegistryId) -> Self {
        self.registry = registry;
        self
    }

    /// Truncates to a (possibly smaller) bound.
    pub fn truncate(&self, bound: Option<usize>) -> Self {
        let bound = meet(self.bound, bound);
        Series {
            registry: self.registry,
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| within(bound, m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The term with the smallest monomial.
    pub fn min_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    fn check_registry(&self, other: &Self) -> Result<()> {
        if self.registry == other.registry {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_registry(other)?;
        let mut out = self.truncate(other.bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Cauchy product, truncated at the smaller bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_registry(other)?;
        let bound = meet(self.bound, other.bound);
        let mut out = Self::zero(self.registry, bound);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if bound.is_some_and(|d| a.degree() + b.degree() > d) {
                    continue;
                }
                out.add_term(a.mul(b), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// `self^n`, with `self^0 = 1`.
    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.registry, self.bound);
        for _ in 0..n {
            acc = acc.mul(self).expect("same registry");
        }
        acc
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(
            self.registry,
            self.bound,
            self.terms.iter().map(|(m, x)| (m.clone(), c.mul(x))),
        )
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(s: &str, registry: RegistryId, bound: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let mut out = Self::zero(registry, bound);
        if s == "0" {
            return Ok(out);
        }
        let mut negative = false;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (m, mut c) = parse_term::<C>(rest[..end].trim())?;
            if negative {
                c = c
                    .negated()
                    .ok_or_else(|| Error::parse(0, "negative coefficient"))?;
            }
            out.add_term(m, c);
            if end == rest.len() {
                break;
            }
            negative = rest.as_bytes()[end] == b'-';
            rest = &rest[end + 1..];
        }
        Ok(out)
    }
}

fn parse_term<C: Coefficient>(t: &str) -> Result<(Monomial, C)> {
    let bad = || Error::parse(0, format!("malformed series term `{t}`"));
    if let Some((c, m)) = t.split_once('*') {
        let c = C::parse(c.trim()).ok_or_else(bad)?;
        return Ok((m.trim().parse()?, c));
    }
    if t.starts_with(|ch: char| ch.is_ascii_digit()) || t == "w" {
        return Ok((Monomial::one(), C::parse(t).ok_or_else(bad)?));
    }
    if t.is_empty() {
        return Err(bad());
    }
    Ok((t.parse()?, C::one()))
}

impl<C: OrderedCoefficient> Series<C> {
    /// The order induced by the well-order on monomials: the series with
    /// the larger coefficient at the smallest monomial where they differ is
    /// the larger one. Bounded series are compared up to the smaller bound.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_registry(other)?;
        let bound = meet(self.bound, other.bound);
        let mut a = self
            .terms
            .iter()
            .filter(|(m, _)| within(bound, m))
            .peekable();
        let mut b = other
            .terms
            .iter()
            .filter(|(m, _)| within(bound, m))
            .peekable();
        let zero = C::zero();
        loop {
            let (ca, cb) = match (a.peek(), b.peek()) {
                (None, None) => return Ok(Ordering::Equal),
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Less => (*ca, &zero),
                    Ordering::Greater => (&zero, *cb),
                    Ordering::Equal => (*ca, *cb),
                },
                (Some((_, ca)), None) => (*ca, &zero),
                (None, Some((_, cb))) => (&zero, *cb),
            };
            match ca.cmp(cb) {
                Ordering::Equal => {
                    a.next();
                    b.next();
                }
                ord => return Ok(ord),
            }
        }
    }
}

impl Series<u64> {
    pub fn to_integer(&self) -> Series<i64> {
        Series {
            registry: self.registry,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), i64::try_from(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn to_cardinal(&self) -> Series<Cardinal> {
        Series {
            registry: self.registry,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), Cardinal::Finite(c)))
                .collect(),
        }
    }
}

impl Series<i64> {
    /// The same series over `ℕ₀`, if no coefficient is negative.
    pub fn to_natural(&self) -> Option<Series<u64>> {
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            terms.insert(m.clone(), u64::try_from(c).ok()?);
        }
        Some(Series {
            registry: self.registry,
            bound: self.bound,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (c, sign) = match c.is_negative() {
                true => (c.negated().expect("negative has a negation"), " - "),
                false => (c.clone(), " + "),
            };
            match (i, sign) {
                (0, " - ") => f.write_str("-")?,
                (0, _) => {}
                _ => f.write_str(sign)?,
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c == C::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
