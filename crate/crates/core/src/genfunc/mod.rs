//! Generating functions `A_{s,t}(x)` as truncated power series.

mod series;
mod solve;
mod system;

pub use series::CoeffSeries;
pub use solve::{solve_series, solve_symmetric, solve_system, SeriesFamily};
pub use system::{build_system, Equation, SystemOfEquations, Term, Unknown};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::counting::catalan;

/// Truncation order used by the acceptance runs and CLI defaults.
pub const DEFAULT_ORDER: usize = 64;

/// `C(y) = sum Cat_n y^n` to the given order.
pub fn catalan_series(order: usize) -> CoeffSeries {
    CoeffSeries::from_ints((0..order as u64).map(|n| BigInt::from(catalan(n))))
}

/// `M(x) = 1/(1 - l x) * C(u d x^2 / (1 - l x)^2)`.
pub fn rank1_closed_form_series(u: u64, l: u64, d: u64, order: usize) -> CoeffSeries {
    let one_minus_lx = CoeffSeries::from_ints([BigInt::one(), -BigInt::from(l)]).padded(order);
    let inv = one_minus_lx
        .reciprocal()
        .expect("1 - l x is a unit");
    let ud = BigRational::from_integer(BigInt::from(u) * d);
    let g = (&inv * &inv).shift(2).scale(&ud);
    let c = catalan_series(order)
        .compose(&g)
        .expect("inner series has no constant term");
    &inv * &c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::WeightSpec;

    fn ints(s: &CoeffSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn catalan_values_and_identity() {
        let c = catalan_series(6);
        assert_eq!(ints(&c), [1, 1, 2, 5, 14, 42]);
        let c = catalan_series(30);
        // 1 - C + y C^2 = 0
        let lhs = &(&CoeffSeries::one(30) - &c) + &(&c * &c).shift(1);
        assert!(lhs.is_zero());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ints(&rank1_closed_form_series(1, 1, 1, 7)), [1, 1, 2, 4, 9, 21, 51]);
        assert_eq!(ints(&rank1_closed_form_series(1, 0, 1, 7)), [1, 0, 1, 0, 2, 0, 5]);
        assert_eq!(ints(&rank1_closed_form_series(4, 3, 2, 1)), [1]);
    }

    #[test]
    fn closed_form_matches_solver() {
        for (u, l, d) in [(2, 1, 3), (1, 4, 1), (3, 0, 2), (5, 5, 5)] {
            let spec = WeightSpec::rank1(u, l, d);
            let fam = solve_series(&spec, 25);
            assert_eq!(&rank1_closed_form_series(u, l, d, 25), fam.get(0, 0).unwrap());
        }
    }
}
