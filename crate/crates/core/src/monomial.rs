//! The coproduct monoid `[Y] * <X>`: words whose runs of `Y` letters
//! commute internally while `X` letters commute with nothing.
//!
//! Elements are kept in normal form (every maximal `Y`-run sorted by rank).
//!
//! # Order
//!
//! Monomials are compared by a lexicographic combination of monoid
//! homomorphisms into strictly ordered monoids:
//!
//! 1. degree;
//! 2. the multiset of `Y` letters, where the multiset with more copies of
//!    the smallest letter on which the two differ is the smaller one;
//! 3. the word of `X` letters, lexicographically;
//! 4. for each `Y` letter in increasing rank, the word obtained by deleting
//!    every other `Y` letter, lexicographically with `y` below every `x`.
//!
//! Each component is strictly monotone under multiplication on both sides
//! and the components jointly separate monomials, so the combination is a
//! strict total order. Within one degree the first two components range
//! over well-orders and the remaining classes are finite, so it is also a
//! well-order with `1` as its minimum.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Identifies the alphabet (prime registry) a monomial's letters refer to.
///
/// `RegistryId::FREE` is the abstract alphabet used for pure algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegistryId(pub u64);

impl RegistryId {
    pub const FREE: RegistryId = RegistryId(0);
}

impl fmt::Display for RegistryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

/// Whether a generator commutes with the other commuting generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Commuting generator; ranks below every `X`.
    Y,
    /// Non-commuting generator.
    X,
}

impl Kind {
    pub fn symbol(self) -> char {
        match self {
            Kind::Y => 'y',
            Kind::X => 'x',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: Kind,
    pub rank: u32,
}

impl Letter {
    pub const fn y(rank: u32) -> Self {
        Letter {
            kind: Kind::Y,
            rank,
        }
    }

    pub const fn x(rank: u32) -> Self {
        Letter {
            kind: Kind::X,
            rank,
        }
    }

    pub fn commutes(self) -> bool {
        self.kind == Kind::Y
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.symbol(), self.rank)
    }
}

/// An element of `[Y] * <X>` in normal form.
#[derive(Clone)]
pub struct Monomial {
    word: Vec<Letter>,
    key: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::normalized(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self::normalized(vec![l])
    }

    /// Product of the given letters, in order.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut word: Vec<Letter> = letters.into_iter().collect();
        sort_y_runs(&mut word);
        Self::normalized(word)
    }

    fn normalized(word: Vec<Letter>) -> Self {
        let key = order_key(&word);
        Monomial { word, key }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        // only the run straddling the junction can be out of order
        let j = self.word.len();
        let mut lo = j;
        while lo > 0 && word[lo - 1].commutes() {
            lo -= 1;
        }
        let mut hi = j;
        while hi < word.len() && word[hi].commutes() {
            hi += 1;
        }
        word[lo..hi].sort_unstable();
        Self::normalized(word)
    }

    pub fn pow(&self, n: usize) -> Monomial {
        (0..n).fold(Monomial::one(), |acc, _| acc.mul(self))
    }

    /// Splits into `Y`-runs and the `X` letters separating them; there is
    /// always one more run than separators.
    fn runs(&self) -> (Vec<&[Letter]>, Vec<Letter>) {
        let mut runs = Vec::new();
        let mut xs = Vec::new();
        let mut start = 0;
        for (i, l) in self.word.iter().enumerate() {
            if !l.commutes() {
                runs.push(&self.word[start..i]);
                xs.push(*l);
                start = i + 1;
            }
        }
        runs.push(&self.word[start..]);
        (runs, xs)
    }

    /// All ordered pairs `(u, v)` with `u * v == self`.
    pub fn divisors(&self) -> Vec<(Monomial, Monomial)> {
        let (runs, _) = self.runs();
        let mut out = Vec::new();
        // position in `word` where run j starts
        let mut run_start = 0;
        for run in &runs {
            for part in sub_multisets(run) {
                let rest = multiset_difference(run, &part).expect("part of run");
                let mut u: Vec<Letter> = self.word[..run_start].to_vec();
                u.extend(part);
                let mut v = rest;
                v.extend_from_slice(&self.word[run_start + run.len()..]);
                out.push((Self::normalized(u), Self::normalized(v)));
            }
            run_start += run.len() + 1;
        }
        out
    }

    /// The `u` with `u * suffix == self`, if any.
    pub fn right_quotient(&self, suffix: &Monomial) -> Option<Monomial> {
        let (w_runs, w_xs) = self.runs();
        let (s_runs, s_xs) = suffix.runs();
        let k = w_xs.len();
        let j = s_xs.len();
        if j > k || w_xs[k - j..] != s_xs[..] {
            return None;
        }
        // runs after the first X of the suffix must match exactly
        for t in 1..=j {
            if w_runs[k - j + t] != s_runs[t] {
                return None;
            }
        }
        let head = multiset_difference(w_runs[k - j], s_runs[0])?;
        let mut u: Vec<Letter> = Vec::new();
        for t in 0..k - j {
            u.extend_from_slice(w_runs[t]);
            u.push(w_xs[t]);
        }
        u.extend(head);
        Some(Self::normalized(u))
    }

    /// The `u` with `prefix * u == self`, if any.
    pub fn left_quotient(&self, prefix: &Monomial) -> Option<Monomial> {
        let (w_runs, w_xs) = self.runs();
        let (p_runs, p_xs) = prefix.runs();
        let j = p_xs.len();
        if j > w_xs.len() || w_xs[..j] != p_xs[..] {
            return None;
        }
        for t in 0..j {
            if w_runs[t] != p_runs[t] {
                return None;
            }
        }
        let tail = multiset_difference(w_runs[j], p_runs[j])?;
        let mut u: Vec<Letter> = tail;
        for t in j..w_xs.len() {
            u.push(w_xs[t]);
            u.extend_from_slice(w_runs[t + 1]);
        }
        Some(Self::normalized(u))
    }

    /// The unique `u` with `u^n == self`, if it exists.
    pub fn nth_root(&self, n: usize) -> Option<Monomial> {
        assert!(n >= 1, "root index must be positive");
        if self.degree() % n != 0 {
            return None;
        }
        let d = self.degree() / n;
        self.divisors()
            .into_iter()
            .filter(|(u, _)| u.degree() == d)
            .map(|(u, _)| u)
            .find(|u| u.pow(n) == *self)
    }
}

fn sort_y_runs(word: &mut [Letter]) {
    let mut start = 0;
    for i in 0..=word.len() {
        if i == word.len() || !word[i].commutes() {
            word[start..i].sort_unstable();
            start = i + 1;
        }
    }
}

/// `a \ b` for sorted multisets, `None` unless `b ⊆ a`.
fn multiset_difference(a: &[Letter], b: &[Letter]) -> Option<Vec<Letter>> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(b.len()));
    let mut j = 0;
    for &l in a {
        if j < b.len() && b[j] == l {
            j += 1;
        } else {
            out.push(l);
        }
    }
    (j == b.len()).then_some(out)
}

/// All sub-multisets of a sorted run, each sorted.
fn sub_multisets(run: &[Letter]) -> Vec<Vec<Letter>> {
    let mut groups: Vec<(Letter, usize)> = Vec::new();
    for &l in run {
        match groups.last_mut() {
            Some((g, c)) if *g == l => *c += 1,
            _ => groups.push((l, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (l, c) in groups {
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for base in &out {
            for take in 0..=c {
                let mut v = base.clone();
                v.extend(std::iter::repeat(l).take(take));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn order_key(word: &[Letter]) -> Vec<u32> {
    let deg = word.len();
    let mut ys: Vec<u32> = word
        .iter()
        .filter(|l| l.commutes())
        .map(|l| l.rank)
        .collect();
    ys.sort_unstable();
    let mut key = Vec::with_capacity(2 * deg + 1);
    key.push(deg as u32);
    key.extend_from_slice(&ys);
    key.extend(std::iter::repeat(u32::MAX).take(deg - ys.len()));
    key.extend(word.iter().filter(|l| !l.commutes()).map(|l| l.rank));
    ys.dedup();
    for &y in &ys {
        for l in word {
            match l.kind {
                Kind::Y if l.rank == y => key.push(0),
                Kind::Y => {}
                Kind::X => key.push(l.rank.saturating_add(1)),
            }
        }
    }
    key
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.word.len() {
            let mut j = i + 1;
            while j < self.word.len() && self.word[j] == self.word[i] {
                j += 1;
            }
            write!(f, "{}", self.word[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        if s.is_empty() {
            return Err(Error::parse(0, "empty monomial"));
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut letters = Vec::new();
        let number = |i: &mut usize| -> Result<u32> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            s[start..*i]
                .parse()
                .map_err(|_| Error::parse(0, format!("expected a number in monomial `{s}`")))
        };
        while i < bytes.len() {
            let kind = match bytes[i] {
                b'y' => Kind::Y,
                b'x' => Kind::X,
                c => {
                    return Err(Error::parse(
                        0,
                        format!("unexpected `{}` in monomial `{s}`", c as char),
                    ))
                }
            };
            i += 1;
            let rank = number(&mut i)?;
            let mut times = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                times = number(&mut i)?;
                if times == 0 {
                    return Err(Error::parse(0, "zero exponent in monomial"));
                }
            }
            letters.extend(std::iter::repeat(Letter { kind, rank }).take(times as usize));
        }
        Ok(Monomial::from_letters(letters))
    }
}
