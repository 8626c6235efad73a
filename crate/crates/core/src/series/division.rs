//! Cancellation and `n`-th roots of series, both computed term by term in
//! increasing monomial order.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{meet, within, OrderedCoefficient, Series};
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Which side the known factor sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Solve `f * c = p` for `f`.
    Right,
    /// Solve `c * f = p` for `f`.
    Left,
}

type Terms = BTreeMap<Monomial, i128>;

fn add_into(r: &mut Terms, m: Monomial, c: i128) {
    match r.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if c != 0 {
                v.insert(c);
            }
        }
    }
}

fn to_terms<C: OrderedCoefficient>(s: &Series<C>, cap: Option<usize>) -> Terms {
    s.terms
        .iter()
        .filter(|(m, _)| within(cap, m))
        .map(|(m, &c)| (m.clone(), c.to_i128()))
        .collect()
}

fn mul_terms(a: &Terms, b: &Terms, cap: Option<usize>) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if cap.is_some_and(|d| ma.degree() + mb.degree() > d) {
                continue;
            }
            add_into(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

fn from_terms<C: OrderedCoefficient>(
    like: &Series<C>,
    bound: Option<usize>,
    terms: Terms,
) -> Result<Series<C>> {
    let mut out = Series::zero(like.registry, bound);
    for (m, c) in terms {
        out.add_term(m, C::from_i128(c).ok_or(Error::NotDivisible)?);
    }
    Ok(out)
}

impl<C: OrderedCoefficient> Series<C> {
    /// Solves `f * c = self` (or `c * f = self`) for `f`.
    ///
    /// Fails with `ZeroDivisor` for `c = 0` and with `NotDivisible` when no
    /// solution with coefficients in `C` exists.
    pub fn cancel(&self, c: &Series<C>, side: Side) -> Result<Series<C>> {
        self.check_registry(c)?;
        let (cm, c0) = match c.min_term() {
            Some((m, &c0)) => (m.clone(), c0.to_i128()),
            None => return Err(Error::ZeroDivisor),
        };
        let bound = meet(self.bound, c.bound);
        // for unbounded inputs the quotient cannot exceed the dividend's degree
        let cap = bound.or(self.max_degree());
        let cterms = to_terms(c, cap);
        let mut residual = to_terms(self, cap);
        let mut f = Terms::new();
        while let Some((w, &rw)) = residual.iter().next() {
            let u = match side {
                Side::Right => w.right_quotient(&cm),
                Side::Left => w.left_quotient(&cm),
            }
            .ok_or(Error::NotDivisible)?;
            if rw % c0 != 0 {
                return Err(Error::NotDivisible);
            }
            let q = rw / c0;
            let single: Terms = [(u.clone(), q)].into_iter().collect();
            let step = match side {
                Side::Right => mul_terms(&single, &cterms, cap),
                Side::Left => mul_terms(&cterms, &single, cap),
            };
            for (m, v) in step {
                add_into(&mut residual, m, -v);
            }
            add_into(&mut f, u, q);
        }
        let f = from_terms(self, bound, f)?;
        let check = match side {
            Side::Right => f.mul(c)?,
            Side::Left => c.mul(&f)?,
        };
        if bound.is_none() && check != *self {
            return Err(Error::NotDivisible);
        }
        if check.truncate(bound) != self.truncate(bound) {
            return Err(Error::NotDivisible);
        }
        Ok(f)
    }
}

/// The exact integer `n`-th root of `v`, if any.
pub fn exact_root(v: u64, n: u32) -> Option<u64> {
    if n == 1 || v < 2 {
        return Some(v);
    }
    let (mut lo, mut hi) = (1u64, 1u64 << (64 / n + 1).min(63));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match mid.checked_pow(n) {
            Some(p) if p <= v => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (lo.checked_pow(n) == Some(v)).then_some(lo)
}

impl Series<u64> {
    /// The `f` with nonnegative coefficients and `f^n = self`.
    ///
    /// Fails with `NoRoot` when no such series exists (up to the bound).
    pub fn nth_root(&self, n: usize) -> Result<Series<u64>> {
        if n == 0 {
            return Err(Error::NoRoot("root index must be positive".into()));
        }
        if n == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        let (w0, &h0) = self.min_term().expect("nonzero");
        let a0 = w0.nth_root(n).ok_or_else(|| {
            Error::NoRoot(format!("minimal monomial {w0} has no root of order {n}"))
        })?;
        let c0 = exact_root(h0, n as u32).ok_or_else(|| {
            Error::NoRoot(format!("minimal coefficient {h0} has no root of order {n}"))
        })?;
        let cap = self.bound.or(self.max_degree());
        let target = to_terms(self, cap);
        let powers: Vec<Monomial> = (0..n).map(|i| a0.pow(i)).collect();
        let mut f: Terms = [(a0, c0 as i128)].into_iter().collect();
        let root = extend_root(&target, &mut f, &powers, c0 as i128, n, cap)
            .ok_or_else(|| Error::NoRoot("no series with nonnegative coefficients".into()))?;
        let root = from_terms(self, self.bound, root)
            .map_err(|_| Error::NoRoot("negative coefficient".into()))?;
        let check = root.pow(n);
        let ok = match self.bound {
            Some(_) => check.truncate(self.bound) == *self,
            None => check == *self,
        };
        if ok {
            Ok(root)
        } else {
            Err(Error::NoRoot("no exact root".into()))
        }
    }
}

fn power_terms(f: &Terms, n: usize, cap: Option<usize>) -> Terms {
    let mut acc: Terms = [(Monomial::one(), 1)].into_iter().collect();
    for _ in 0..n {
        acc = mul_terms(&acc, f, cap);
    }
    acc
}

/// Depth-first extension of the known part `f` of the root: the minimal
/// monomial of the residual determines the next term up to the choice of
/// which factor of the `n`-fold product it comes from.
fn extend_root(
    target: &Terms,
    f: &mut Terms,
    powers: &[Monomial],
    c0: i128,
    n: usize,
    cap: Option<usize>,
) -> Option<Terms> {
    let mut residual = target.clone();
    for (m, v) in power_terms(f, n, cap) {
        add_into(&mut residual, m, -v);
    }
    let (w, &rw) = match residual.iter().next() {
        None => return Some(f.clone()),
        Some(t) => t,
    };
    if rw < 0 {
        return None;
    }
    let last = f.keys().next_back().expect("nonempty").clone();
    let mut candidates: Vec<Monomial> = Vec::new();
    for i in 0..n {
        let b = w
            .left_quotient(&powers[i])
            .and_then(|u| u.right_quotient(&powers[n - 1 - i]));
        if let Some(b) = b {
            if b > last && !candidates.contains(&b) {
                candidates.push(b);
            }
        }
    }
    candidates.sort();
    for b in candidates {
        let k = (0..n)
            .filter(|&i| powers[i].mul(&b).mul(&powers[n - 1 - i]) == *w)
            .count() as i128;
        let denom = k * c0.pow(n as u32 - 1);
        if rw % denom != 0 {
            continue;
        }
        f.insert(b.clone(), rw / denom);
        if let Some(root) = extend_root(target, f, powers, c0, n, cap) {
            return Some(root);
        }
        f.remove(&b);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::RegistryId;
    use crate::series::{IntSeries, NatSeries};

    fn nat(s: &str) -> NatSeries {
        Series::parse(s, RegistryId::FREE, None).unwrap()
    }

    #[test]
    fn integer_roots() {
        assert_eq!(exact_root(27, 3), Some(3));
        assert_eq!(exact_root(28, 3), None);
        assert_eq!(exact_root(0, 5), Some(0));
        assert_eq!(exact_root(u64::MAX, 1), Some(u64::MAX));
        assert_eq!(exact_root(1 << 62, 2), Some(1 << 31));
        assert_eq!(exact_root(1 << 63, 63), Some(2));
    }

    #[test]
    fn cancel_both_sides() {
        let a = nat("1 + x0 + 2*y1");
        let c = nat("x1 + y0");
        let p = a.mul(&c).unwrap();
        assert_eq!(p.cancel(&c, Side::Right).unwrap(), a);
        let q = c.mul(&a).unwrap();
        assert_eq!(q.cancel(&c, Side::Left).unwrap(), a);
    }

    #[test]
    fn cancel_errors() {
        let c = nat("x1 + y0");
        assert!(matches!(
            nat("x0").cancel(&nat("0"), Side::Right),
            Err(Error::ZeroDivisor)
        ));
        assert!(matches!(
            nat("x0").cancel(&c, Side::Right),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            nat("3*y0").cancel(&nat("2*y0"), Side::Right),
            Err(Error::NotDivisible)
        ));
        // the integer quotient 1 - y0 is not natural
        let p = nat("1 + y0^2").to_integer();
        let c = nat("1 + y0").to_integer();
        assert!(p.cancel(&c, Side::Right).is_err());
        let z: IntSeries = Series::parse("1 - y0^2", RegistryId::FREE, None).unwrap();
        let q = z.cancel(&c, Side::Right).unwrap();
        assert_eq!(q.to_string(), "1 - y0");
        assert!(q.to_natural().is_none());
    }

    #[test]
    fn roots() {
        let f = nat("2 + x0 + y1^2 + 3*x1y0");
        for n in 1..=3 {
            assert_eq!(f.pow(n).nth_root(n).unwrap(), f);
        }
        let g = nat("y0 + x1");
        assert_eq!(g.pow(2).nth_root(2).unwrap(), g);
        assert!(nat("y0 + x1").nth_root(2).is_err());
        assert!(nat("2*y0^2").nth_root(2).is_err());
        assert_eq!(nat("0").nth_root(3).unwrap(), nat("0"));
    }

    #[test]
    fn bounded_root() {
        let h: NatSeries = Series::parse("1 + 2*y0 + y0^2", RegistryId::FREE, Some(1)).unwrap();
        let r = h.nth_root(2).unwrap();
        assert_eq!(r.to_string(), "1 + y0");
    }

    #[test]
    fn worked_examples() {
        let p = nat("1 + x0").mul(&nat("1 + x1")).unwrap();
        assert_eq!(
            p.cancel(&nat("1 + x1"), Side::Right).unwrap(),
            nat("1 + x0")
        );
        let f = nat("3 + y0x1");
        assert_eq!(
            f.mul(&nat("1"))
                .unwrap()
                .cancel(&nat("1"), Side::Right)
                .unwrap(),
            f
        );
        assert!(matches!(
            nat("y0").cancel(&nat("1 + y0"), Side::Right),
            Err(Error::NotDivisible)
        ));
        assert_eq!(nat("1 + 2*y0 + y0^2").nth_root(2).unwrap(), nat("1 + y0"));
        assert_eq!(nat("y0^2").nth_root(2).unwrap(), nat("y0"));
        let sq = nat("x0 + x1").pow(2);
        assert_eq!(sq.nth_root(2).unwrap(), nat("x0 + x1"));
        assert!(matches!(nat("1 + y0").nth_root(2), Err(Error::NoRoot(_))));
    }

    /// Every series of degree at most one with coefficients below 3 over
    /// `y0`: none squares to `1 + y0`.
    #[test]
    fn no_square_root_by_search() {
        let target = nat("1 + y0");
        for a in 0..3u64 {
            for b in 0..3u64 {
                let f = nat(&format!("{a} + {b}*y0"));
                assert_ne!(f.pow(2), target);
            }
        }
    }
}
