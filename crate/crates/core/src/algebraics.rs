//! Algebraic equations `sum_i a_i(x) y^i = 0` satisfied by power series,
//! found by exact linear algebra on truncated series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraicError;
use crate::genfunc::{solve_series, CoeffSeries};
use crate::linalg::{IntMatrix, Method};
use crate::paths::WeightSpec;
use crate::poly::IntPoly;

/// Minimum number of withheld coefficients used to reject spurious fits.
pub const MIN_GUARD: usize = 8;

/// A nonzero bivariate integer polynomial `P(x, y) = sum_i a_i(x) y^i`,
/// stored normalized:
///
/// * any common power of `y` (and of `x`) is divided out,
/// * the integer content is 1,
/// * the lowest coefficient of `a_0` is positive (so `a_0(0) = 1` whenever
///   the equation admits it).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicEquation {
    coeffs: Vec<IntPoly>,
}

impl AlgebraicEquation {
    /// Normalizes `coeffs` (`coeffs[i]` multiplies `y^i`); `None` when all
    /// are zero.
    pub fn new(mut coeffs: Vec<IntPoly>) -> Option<Self> {
        while coeffs.last().is_some_and(IntPoly::is_zero) {
            coeffs.pop();
        }
        let lead_y = coeffs.iter().position(|p| !p.is_zero())?;
        coeffs.drain(..lead_y);
        let x_val = coeffs.iter().filter_map(IntPoly::valuation).min().unwrap_or(0);
        let content = coeffs
            .iter()
            .fold(BigInt::zero(), |g, p| g.gcd(&p.content()));
        let low = &coeffs[0].coeffs()[coeffs[0].valuation().expect("nonzero")];
        let divisor = if low.is_negative() { -content } else { content };
        let coeffs = coeffs
            .iter()
            .map(|p| p.exact_div(&divisor).unshift(x_val))
            .collect();
        Some(AlgebraicEquation { coeffs })
    }

    pub fn y_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All `a_i(x)`, `i = 0..=y_degree`.
    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &IntPoly {
        &self.coeffs[i]
    }

    /// Largest x-degree over all coefficients.
    pub fn x_degree(&self) -> usize {
        self.coeffs.iter().filter_map(IntPoly::degree).max().unwrap_or(0)
    }

    /// Bivariate product, normalized.
    pub fn multiply(&self, other: &AlgebraicEquation) -> AlgebraicEquation {
        let mut out = vec![IntPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        AlgebraicEquation::new(out).expect("product of nonzero polynomials")
    }

    /// `P(x, F(x))` modulo the order of `series`.
    pub fn residual(&self, series: &CoeffSeries) -> CoeffSeries {
        let order = series.order();
        if let Some(f) = series.to_integers() {
            // Integer Horner; avoids normalizing rationals at every step.
            let mut acc = vec![BigInt::zero(); order];
            for a in self.coeffs.iter().rev() {
                acc = mul_trunc(&acc, &f, order);
                for (k, c) in a.coeffs().iter().enumerate().take(order) {
                    acc[k] += c;
                }
            }
            return CoeffSeries::from_ints(acc);
        }
        let mut acc = CoeffSeries::zero(order);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * series) + &CoeffSeries::from_poly(a, order);
        }
        acc
    }
}

/// First `order` coefficients of `a * b`.
fn mul_trunc(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let terms = a.coeffs().iter().filter(|c| !c.is_zero()).count();
            let negate = a.coeffs().iter().all(|c| !c.is_positive());
            let body = if negate { -a.clone() } else { a.clone() };
            let ypow = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            let poly = body.to_string_in("x");
            let term = match (i, terms, poly.as_str()) {
                (0, _, _) => poly,
                (_, _, "1") => ypow,
                (_, 1, _) => format!("{poly}*{ypow}"),
                _ => format!("({poly})*{ypow}"),
            };
            match (first, negate) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => f.write_str(&term)?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Shape of the per-coefficient x-degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ansatz {
    /// `deg a_i <= i`.
    Triangular,
    /// `deg a_i <= b` for every `i`.
    Uniform(usize),
}

impl Ansatz {
    fn bound(self, i: usize) -> usize {
        match self {
            Ansatz::Triangular => i,
            Ansatz::Uniform(b) => b,
        }
    }

    /// Number of unknown coefficients at y-degree `d`.
    pub fn unknowns(self, d: usize) -> usize {
        (0..=d).map(|i| self.bound(i) + 1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessReport {
    pub equation: Option<AlgebraicEquation>,
    pub max_y_degree: usize,
    /// Ansatz that produced the equation, or the last one tried.
    pub ansatz: Ansatz,
    /// Coefficients used to set up the linear system.
    pub fitted_order: usize,
    /// Order at which the returned equation was checked.
    pub verification_order: usize,
}

impl GuessReport {
    pub fn found(&self) -> bool {
        self.equation.is_some()
    }
}

/// `sum_i a_i(x) F^i ≡ 0 mod x^order`; `false` if `series` is known to
/// fewer than `order` coefficients.
pub fn verify_algebraic_equation(eq: &AlgebraicEquation, series: &CoeffSeries, order: usize) -> bool {
    if series.order() < order {
        return false;
    }
    eq.residual(&series.truncate(order)).is_zero()
}

/// Searches y-degrees `1..=max_y_deg` for an annihilating polynomial.
///
/// With `max_x_deg = None` the triangular ansatz is tried first and the
/// uniform bound `max_y_deg` is used as fallback; `Some(b)` uses only the
/// uniform bound `b`. The last `guard` coefficients (at least
/// [`MIN_GUARD`]) never enter the linear system and are used to reject
/// spurious solutions.
pub fn guess_algebraic_equation(
    series: &CoeffSeries,
    max_y_deg: usize,
    max_x_deg: Option<usize>,
    guard: usize,
) -> Result<GuessReport, AlgebraicError> {
    let guard = guard.max(MIN_GUARD);
    let plans: Vec<Ansatz> = match max_x_deg {
        None => vec![Ansatz::Triangular, Ansatz::Uniform(max_y_deg)],
        Some(b) => vec![Ansatz::Uniform(b)],
    };
    let required = plans[0].unknowns(max_y_deg) + guard;
    if series.order() < required {
        return Err(AlgebraicError::InsufficientOrder {
            required,
            available: series.order(),
        });
    }
    let order = series.order();
    let powers = series_powers(series, max_y_deg);
    let mut last = plans[0];
    for ansatz in plans {
        // The fallback may need more coefficients than the series holds;
        // only the degrees that fit are searched.
        last = ansatz;
        for d in 1..=max_y_deg {
            if ansatz.unknowns(d) + guard > order {
                break;
            }
            if let Some(eq) = solve_degree(&powers, d, ansatz, order - guard, order) {
                return Ok(GuessReport {
                    equation: Some(eq),
                    max_y_degree: max_y_deg,
                    ansatz,
                    fitted_order: order - guard,
                    verification_order: order,
                });
            }
        }
    }
    Ok(GuessReport {
        equation: None,
        max_y_degree: max_y_deg,
        ansatz: last,
        fitted_order: order - guard,
        verification_order: order,
    })
}

/// `true` iff no nonzero solution exists at y-degree `d` with the given
/// ansatz using all coefficients of `series`.
pub fn no_solution_at_degree(series: &CoeffSeries, d: usize, ansatz: Ansatz) -> bool {
    let powers = series_powers(series, d);
    build_matrix(&powers, d, ansatz, series.order()).nullity_upper_bound() == 0
}

fn series_powers(series: &CoeffSeries, d: usize) -> Vec<CoeffSeries> {
    let order = series.order();
    if let Some(f) = series.to_integers() {
        let mut powers = vec![CoeffSeries::one(order).to_integers().expect("integral")];
        for i in 1..=d {
            let next = mul_trunc(&powers[i - 1], &f, order);
            powers.push(next);
        }
        return powers.into_iter().map(CoeffSeries::from_ints).collect();
    }
    let mut powers = vec![CoeffSeries::one(order)];
    for i in 1..=d {
        let next = &powers[i - 1] * series;
        powers.push(next);
    }
    powers
}

/// Row `k` holds the coefficient of `x^k` in `x^j F^i` for each unknown
/// `(i, j)`, scaled to clear denominators.
fn build_matrix(powers: &[CoeffSeries], d: usize, ansatz: Ansatz, rows: usize) -> IntMatrix {
    let cols: Vec<(usize, usize)> = (0..=d)
        .flat_map(|i| (0..=ansatz.bound(i)).map(move |j| (i, j)))
        .collect();
    let mut m = IntMatrix::new(cols.len());
    for k in 0..rows {
        let row: Vec<BigRational> = cols
            .iter()
            .map(|&(i, j)| {
                if j > k {
                    BigRational::zero()
                } else {
                    powers[i].coeff(k - j).clone()
                }
            })
            .collect();
        let lcm = row
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        m.push_row(
            row.iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
    }
    m
}

fn solve_degree(
    powers: &[CoeffSeries],
    d: usize,
    ansatz: Ansatz,
    rows: usize,
    verify_order: usize,
) -> Option<AlgebraicEquation> {
    let m = build_matrix(powers, d, ansatz, rows);
    if m.nullity_upper_bound() == 0 {
        return None;
    }
    let series = &powers[1];
    m.nullspace(Method::Auto).into_iter().find_map(|v| {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut it = v.into_iter();
        for i in 0..=d {
            coeffs.push(IntPoly::new(it.by_ref().take(ansatz.bound(i) + 1).collect()));
        }
        let eq = AlgebraicEquation::new(coeffs)?;
        // The y-power strip keeps the equation valid, so only a real
        // degree-d annihilator is reported here.
        (eq.y_degree() == d && verify_algebraic_equation(&eq, series, verify_order)).then_some(eq)
    })
}

/// `y_degree = 2^r`, `a_0 = 1` and `deg a_i <= i` for every `i`.
pub fn check_shape_conjecture(eq: &AlgebraicEquation, rank: usize) -> bool {
    let Some(target) = u32::try_from(rank).ok().and_then(|r| 1usize.checked_shl(r)) else {
        return false;
    };
    eq.y_degree() == target
        && eq.coeff(0) == &IntPoly::one()
        && eq
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, a)| a.degree().is_none_or(|deg| deg <= i))
}

/// A published all-ones equation. `printed = removed_factor * reduced`;
/// only rank 2 carries a nontrivial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedEquation {
    pub rank: usize,
    pub printed: AlgebraicEquation,
    pub reduced: AlgebraicEquation,
    pub removed_factor: AlgebraicEquation,
}

/// `c * x^k * prod(factors)`, each factor given by ascending coefficients.
fn xf(c: i64, k: usize, factors: &[&[i64]]) -> IntPoly {
    let polys: Vec<IntPoly> = factors.iter().map(|f| IntPoly::from_i64(f)).collect();
    IntPoly::product(&polys).scale(&BigInt::from(c)).shift(k)
}

fn equation(coeffs: Vec<IntPoly>) -> AlgebraicEquation {
    AlgebraicEquation::new(coeffs).expect("nonzero transcription")
}

/// The general-weight rank-2 sextic with the weights substituted.
pub fn rank2_general_sextic(u1: u64, u2: u64, l: u64, d1: u64, d2: u64) -> AlgebraicEquation {
    let b = |v: u64| BigInt::from(v);
    let (u1, u2, l, d1, d2) = (b(u1), b(u2), b(l), b(d1), b(d2));
    let p = |c: &[BigInt]| IntPoly::new(c.to_vec());
    let z = BigInt::zero;
    let q = &u2 * &d2;
    let diff = &q - &u1 * &d1;
    let a0 = IntPoly::one();
    let a1 = p(&[-BigInt::one(), l.clone()]);
    let a2 = p(&[z(), z(), -diff.clone()]);
    let a3 = p(&[
        z(),
        z(),
        BigInt::from(2) * &q,
        &u1 * &u1 * &d2 + &u2 * &d1 * &d1 - BigInt::from(2) * &l * &q,
    ]);
    let a4 = p(&[z(), z(), z(), z(), -&q * &diff]);
    let a5 = a1.scale(&(&q * &q)).shift(4);
    let a6 = IntPoly::monomial(&q * &q * &q, 6);
    equation(vec![a0, a1, a2, a3, a4, a5, a6])
}

/// Published equation for the all-ones weights of the given rank.
pub fn published_equation(rank: usize) -> Result<PublishedEquation, AlgebraicError> {
    let one = equation(vec![IntPoly::one()]);
    let simple = |printed: AlgebraicEquation| PublishedEquation {
        rank,
        reduced: printed.clone(),
        printed,
        removed_factor: one.clone(),
    };
    match rank {
        1 => Ok(simple(equation(vec![
            xf(1, 0, &[]),
            xf(1, 0, &[&[-1, 1]]),
            xf(1, 2, &[]),
        ]))),
        2 => {
            let quartic = equation(vec![
                xf(1, 0, &[]),
                xf(-1, 0, &[&[1, 1]]),
                xf(1, 1, &[&[2, 1]]),
                xf(-1, 2, &[&[1, 1]]),
                xf(1, 4, &[]),
            ]);
            let sextic = rank2_general_sextic(1, 1, 1, 1, 1);
            let factor = equation(vec![xf(1, 0, &[]), xf(2, 1, &[]), xf(1, 2, &[])]);
            Ok(PublishedEquation {
                rank,
                printed: sextic,
                reduced: quartic,
                removed_factor: factor,
            })
        }
        3 => Ok(simple(equation(vec![
            xf(1, 0, &[]),
            xf(-1, 0, &[&[1, 1]]),
            xf(2, 1, &[]),
            IntPoly::zero(),
            xf(1, 2, &[&[1, -2]]),
            IntPoly::zero(),
            xf(2, 5, &[]),
            xf(-1, 6, &[&[1, 1]]),
            xf(1, 8, &[]),
        ]))),
        4 => {
            let xm1: &[i64] = &[-1, 1];
            let xp1: &[i64] = &[1, 1];
            let xm2: &[i64] = &[-2, 1];
            let xp2: &[i64] = &[2, 1];
            Ok(simple(equation(vec![
                xf(1, 0, &[]),
                xf(1, 0, &[xm1]),
                xf(-2, 1, &[]),
                xf(-1, 1, &[xp2, xm1]),
                xf(-1, 2, &[xm2, xp2]),
                xf(1, 2, &[xm1]),
                xf(1, 3, &[xm2, xp1, xp1]),
                xf(1, 4, &[xp1, xm1, xm1]),
                xf(-1, 5, &[&[-4, -3, 2]]),
                xf(1, 6, &[xp1, xm1, xm1]),
                xf(1, 7, &[xm2, xp1, xp1]),
                xf(1, 8, &[xm1]),
                xf(-1, 10, &[xm2, xp2]),
                xf(-1, 11, &[xp2, xm1]),
                xf(-2, 13, &[]),
                xf(1, 14, &[xm1]),
                xf(1, 16, &[]),
            ])))
        }
        r => Err(AlgebraicError::UnsupportedRank(r)),
    }
}

/// Substitutes numeric weights into the general rank-2 sextic and checks it
/// against the solved series modulo `x^order`.
pub fn rank2_general_equation_check(u1: u64, u2: u64, l: u64, d1: u64, d2: u64, order: usize) -> bool {
    let spec = WeightSpec::new(vec![u1, u2], l, vec![d1, d2]).expect("rank-2 spec");
    let series = solve_series(&spec, order).into_a00();
    verify_algebraic_equation(&rank2_general_sextic(u1, u2, l, d1, d2), &series, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::catalan_series;

    fn all_ones_series(rank: usize, order: usize) -> CoeffSeries {
        solve_series(&WeightSpec::all_ones(rank), order).into_a00()
    }

    #[test]
    fn normalization() {
        // -2y(1 - y) -> 1 - y after stripping y and the content
        let eq = AlgebraicEquation::new(vec![
            IntPoly::zero(),
            IntPoly::from_i64(&[-2]),
            IntPoly::from_i64(&[2]),
        ])
        .unwrap();
        assert_eq!(eq.coeffs(), &[IntPoly::from_i64(&[1]), IntPoly::from_i64(&[-1])]);
        assert!(AlgebraicEquation::new(vec![IntPoly::zero(); 3]).is_none());
    }

    #[test]
    fn display_layout() {
        let e = published_equation(2).unwrap().reduced;
        assert_eq!(
            e.to_string(),
            "1 - (x + 1)*y + (x^2 + 2*x)*y^2 - (x^3 + x^2)*y^3 + x^4*y^4"
        );
        assert_eq!(published_equation(1).unwrap().printed.to_string(), "1 + (x - 1)*y + x^2*y^2");
    }

    #[test]
    fn catalan_guess() {
        let rep = guess_algebraic_equation(&catalan_series(40), 2, None, 8).unwrap();
        let eq = rep.equation.unwrap();
        let expected = equation(vec![xf(1, 0, &[]), xf(-1, 0, &[]), xf(1, 1, &[])]);
        assert_eq!(eq, expected);
    }

    #[test]
    fn rank1_and_rank2_guess() {
        for r in 1..=2 {
            let s = all_ones_series(r, 60);
            let rep = guess_algebraic_equation(&s, 1 << r, None, 8).unwrap();
            assert_eq!(rep.equation.unwrap(), published_equation(r).unwrap().reduced);
        }
    }

    #[test]
    fn insufficient_order() {
        let s = all_ones_series(2, 12);
        assert!(matches!(
            guess_algebraic_equation(&s, 4, None, 8),
            Err(AlgebraicError::InsufficientOrder { required: 23, available: 12 })
        ));
    }

    #[test]
    fn published_verify_and_shape() {
        for r in 1..=4 {
            let p = published_equation(r).unwrap();
            let s = all_ones_series(r, 60);
            assert!(verify_algebraic_equation(&p.printed, &s, 60), "rank {r}");
            assert!(verify_algebraic_equation(&p.reduced, &s, 60), "rank {r}");
            assert!(check_shape_conjecture(&p.reduced, r));
            assert_eq!(p.removed_factor.multiply(&p.reduced), p.printed);
        }
        assert!(matches!(published_equation(5), Err(AlgebraicError::UnsupportedRank(5))));
    }

    #[test]
    fn wrong_series_rejected() {
        let e1 = published_equation(1).unwrap().reduced;
        assert!(!verify_algebraic_equation(&e1, &all_ones_series(2, 20), 20));
        assert!(!check_shape_conjecture(&e1, 2));
    }

    #[test]
    fn sextic_transcription() {
        let s = published_equation(2).unwrap().printed;
        let expected = equation(vec![
            xf(1, 0, &[]),
            xf(1, 0, &[&[-1, 1]]),
            IntPoly::zero(),
            xf(2, 2, &[]),
            IntPoly::zero(),
            xf(1, 4, &[&[-1, 1]]),
            xf(1, 6, &[]),
        ]);
        assert_eq!(s, expected);
    }

    #[test]
    fn general_sextic() {
        assert!(rank2_general_equation_check(1, 1, 1, 1, 1, 40));
        assert!(rank2_general_equation_check(2, 1, 1, 3, 2, 40));
        assert!(rank2_general_equation_check(3, 0, 2, 5, 0, 40));
        assert_eq!(
            rank2_general_sextic(3, 0, 2, 5, 0),
            equation(vec![
                IntPoly::one(),
                IntPoly::from_i64(&[-1, 2]),
                IntPoly::monomial(BigInt::from(15), 2),
            ])
        );
    }

    #[test]
    fn lower_degrees_have_no_solution() {
        let s = all_ones_series(2, 60);
        for d in 1..4 {
            assert!(no_solution_at_degree(&s, d, Ansatz::Triangular));
        }
    }
}
