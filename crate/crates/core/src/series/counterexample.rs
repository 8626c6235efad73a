//! Over cardinal coefficients neither square roots nor additive
//! cancellation are unique.
//!
//! With `g` a commuting generator, every series
//! `H_s = ω·g + Σ_{d≥2} s_d·g^d` with positive `s_d` squares to
//! `ω·g² + ω·g³ + …`, whatever the sequence `s`.

use super::{Cardinal, CardinalSeries, Coefficient, Series};
use crate::monomial::{Letter, Monomial, RegistryId};

/// The multiple `n` in the check `ω·g + g = ω·g + n·g`.
pub const ADDITIVE_WITNESS: u64 = 5;

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub bound: usize,
    pub h_a: CardinalSeries,
    pub h_b: CardinalSeries,
    pub square_a: CardinalSeries,
    pub square_b: CardinalSeries,
    /// `ω·g + g`.
    pub sum_one: CardinalSeries,
    /// `ω·g + n·g` with `n = ADDITIVE_WITNESS`.
    pub sum_n: CardinalSeries,
}

impl CounterexampleReport {
    pub fn series_differ(&self) -> bool {
        self.h_a != self.h_b
    }

    pub fn squares_agree(&self) -> bool {
        self.square_a == self.square_b
    }

    pub fn cancellation_fails(&self) -> bool {
        self.sum_one == self.sum_n
    }

    /// Whether every coefficient of the square from degree 2 up to the
    /// bound is `ω`.
    pub fn squares_saturated(&self) -> bool {
        (2..=self.bound).all(|d| self.square_a.coefficient(&generator().pow(d)) == Cardinal::Omega)
            && self.square_a.terms().count() == self.bound.saturating_sub(1)
    }
}

fn generator() -> Monomial {
    Monomial::letter(Letter::y(0))
}

/// `ω·g + Σ_{d=2..bound} s_d·g^d`; `seq[0]` is `s_2`, and a short sequence
/// is extended by repeating its last entry (or `1` if empty).
pub fn h_series(bound: usize, seq: &[u64]) -> CardinalSeries {
    let g = generator();
    let mut terms = vec![(g.clone(), Cardinal::Omega)];
    for d in 2..=bound {
        let s = seq.get(d - 2).or(seq.last()).copied().unwrap_or(1);
        terms.push((g.pow(d), Cardinal::Finite(s)));
    }
    Series::from_terms(RegistryId::FREE, Some(bound), terms)
}

pub fn demo_counterexample(bound: usize, seq_a: &[u64], seq_b: &[u64]) -> CounterexampleReport {
    let h_a = h_series(bound, seq_a);
    let h_b = h_series(bound, seq_b);
    let square_a = h_a.mul(&h_a).expect("same registry");
    let square_b = h_b.mul(&h_b).expect("same registry");
    let g = generator();
    let omega_g = Series::monomial(RegistryId::FREE, Some(bound), g.clone(), Cardinal::Omega);
    let one_g = Series::monomial(RegistryId::FREE, Some(bound), g.clone(), Cardinal::one());
    let n_g = Series::monomial(
        RegistryId::FREE,
        Some(bound),
        g,
        Cardinal::Finite(ADDITIVE_WITNESS),
    );
    CounterexampleReport {
        bound,
        sum_one: omega_g.add(&one_g).expect("same registry"),
        sum_n: omega_g.add(&n_g).expect("same registry"),
        h_a,
        h_b,
        square_a,
        square_b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_sequences_same_square() {
        let r = demo_counterexample(6, &[1], &[2, 3, 4, 5, 6]);
        assert!(r.series_differ());
        assert!(r.squares_agree());
        assert!(r.squares_saturated());
        assert!(r.cancellation_fails());
        assert_eq!(
            r.square_a.to_string(),
            "w*y0^2 + w*y0^3 + w*y0^4 + w*y0^5 + w*y0^6"
        );
    }

    #[test]
    fn identical_sequences() {
        let r = demo_counterexample(5, &[3, 1], &[3, 1, 1]);
        assert!(!r.series_differ());
    }

    #[test]
    fn bound_two() {
        let r = demo_counterexample(2, &[1], &[7]);
        assert_eq!(r.square_a.len(), 1);
        assert_eq!(r.square_a.to_string(), "w*y0^2");
    }
}
