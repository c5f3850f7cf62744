//! Linear recurrences with polynomial coefficients.
//!
//! A [`Recurrence`] of order `k` stores `p_0(n), .., p_k(n)` with the forward
//! convention `sum_i p_i(n) * m_{n+i} = 0` for all `n >= 0`. Stored relations
//! are normalized (content 1, `p_k` with positive leading coefficient), so
//! two relations are proportional exactly when they are equal.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::RecurrenceError;
use crate::linalg::{IntMatrix, Method};
use crate::poly::IntPoly;

/// Terms withheld from the linear solve and used only for rejection.
pub const DEFAULT_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeff_polys: Vec<IntPoly>,
}

impl Recurrence {
    /// Normalizes the relation; `None` if every polynomial is zero.
    pub fn new(mut coeff_polys: Vec<IntPoly>) -> Option<Self> {
        while coeff_polys.last().is_some_and(IntPoly::is_zero) {
            coeff_polys.pop();
        }
        let lead = coeff_polys.last()?.leading_coeff()?.clone();
        let g = coeff_polys
            .iter()
            .fold(BigInt::zero(), |g, p| g.gcd(&p.content()));
        let g = if lead.is_negative() { -g } else { g };
        Some(Recurrence {
            coeff_polys: coeff_polys.iter().map(|p| p.exact_div(&g)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeff_polys.len() - 1
    }

    /// Maximum degree of the coefficient polynomials.
    pub fn degree(&self) -> usize {
        self.coeff_polys
            .iter()
            .filter_map(IntPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn coeff_polys(&self) -> &[IntPoly] {
        &self.coeff_polys
    }

    /// Number of terms `m_n .. m_{n+k}` the relation links.
    pub fn term_count(&self) -> usize {
        self.coeff_polys.len()
    }

    /// `sum_i p_i(n) * terms[n + i]`.
    pub fn residual_at(&self, terms: &[BigInt], n: usize) -> BigInt {
        let nn = BigInt::from(n);
        self.coeff_polys
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, p)| acc + p.eval(&nn) * &terms[n + i])
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeff_polys.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let idx = if i == 0 { "n".to_string() } else { format!("n+{i}") };
            write!(f, "({})*m_{{{idx}}}", p.to_string_in("n"))?;
        }
        f.write_str(" = 0")
    }
}

/// Every relation of the given shape satisfied at every applicable index.
pub fn verify_recurrence(rec: &Recurrence, terms: &[BigInt]) -> bool {
    let k = rec.order();
    if terms.len() <= k {
        return true;
    }
    (0..terms.len() - k).all(|n| rec.residual_at(terms, n).is_zero())
}

/// Extends `seeds` to `target_len` terms by solving for `m_{n+k}`.
pub fn apply_recurrence(
    rec: &Recurrence,
    seeds: &[BigInt],
    target_len: usize,
) -> Result<Vec<BigInt>, RecurrenceError> {
    let k = rec.order();
    if seeds.len() < k {
        return Err(RecurrenceError::NotEnoughSeeds {
            required: k,
            available: seeds.len(),
        });
    }
    let mut out: Vec<BigInt> = seeds.to_vec();
    let lead = &rec.coeff_polys[k];
    while out.len() < target_len {
        let n = out.len() - k;
        let nn = BigInt::from(n);
        let pk = lead.eval(&nn);
        if pk.is_zero() {
            return Err(RecurrenceError::SingularLeadingCoefficient(n));
        }
        let rest = rec.coeff_polys[..k]
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, p)| acc + p.eval(&nn) * &out[n + i]);
        let (q, r) = (-rest).div_rem(&pk);
        if !r.is_zero() {
            return Err(RecurrenceError::NonIntegralStep { n: n + k });
        }
        out.push(q);
    }
    out.truncate(target_len.max(seeds.len().min(target_len)));
    Ok(out)
}

/// Minimum number of terms for an `(order, degree)` search box with `guard`
/// withheld terms.
pub fn required_terms(max_order: usize, max_degree: usize, guard: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + guard
}

/// Cells of the `(order, degree)` grid in scan order: increasing
/// `order + degree`, then increasing order.
pub fn scan_cells(max_order: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (1..=max_order)
        .flat_map(|k| (0..=max_degree).map(move |d| (k, d)))
        .collect();
    cells.sort_by(|a, b| match (a.0 + a.1).cmp(&(b.0 + b.1)) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    cells
}

fn build_matrix(terms: &[BigInt], order: usize, degree: usize, rows: usize) -> IntMatrix {
    let ncols = (order + 1) * (degree + 1);
    let mut m = IntMatrix::new(ncols);
    for n in 0..rows {
        let nn = BigInt::from(n);
        let mut powers = Vec::with_capacity(degree + 1);
        let mut p = BigInt::from(1);
        for _ in 0..=degree {
            powers.push(p.clone());
            p *= &nn;
        }
        let mut row = Vec::with_capacity(ncols);
        for i in 0..=order {
            for pw in &powers {
                row.push(pw * &terms[n + i]);
            }
        }
        m.push_row(row);
    }
    m
}

fn vector_to_recurrence(v: &[BigInt], order: usize, degree: usize) -> Option<Recurrence> {
    let polys = v
        .chunks(degree + 1)
        .take(order + 1)
        .map(|c| IntPoly::new(c.to_vec()))
        .collect();
    Recurrence::new(polys)
}

/// Kernel of the system for one `(order, degree)` cell using the first
/// `rows` indices, as normalized relations.
fn solve_cell(terms: &[BigInt], order: usize, degree: usize, rows: usize, method: Method) -> Vec<Recurrence> {
    let m = build_matrix(terms, order, degree, rows);
    if m.nullity_upper_bound() == 0 {
        return Vec::new();
    }
    m.nullspace(method)
        .iter()
        .filter_map(|v| vector_to_recurrence(v, order, degree))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessOptions {
    pub guard: usize,
    pub method: Method,
}

impl Default for GuessOptions {
    fn default() -> Self {
        GuessOptions {
            guard: DEFAULT_GUARD,
            method: Method::Auto,
        }
    }
}

/// First relation in scan order (see [`scan_cells`]) that holds on all
/// `terms`, fitted on all but the last `guard` of them.
pub fn guess_recurrence(
    terms: &[BigInt],
    max_order: usize,
    max_degree: usize,
) -> Result<Option<Recurrence>, RecurrenceError> {
    guess_recurrence_with(terms, max_order, max_degree, GuessOptions::default())
}

pub fn guess_recurrence_with(
    terms: &[BigInt],
    max_order: usize,
    max_degree: usize,
    opts: GuessOptions,
) -> Result<Option<Recurrence>, RecurrenceError> {
    let required = required_terms(max_order, max_degree, opts.guard);
    if terms.len() < required {
        return Err(RecurrenceError::InsufficientTerms {
            required,
            available: terms.len(),
        });
    }
    for (k, d) in scan_cells(max_order, max_degree) {
        let rows = terms.len() - k - opts.guard;
        let candidates = solve_cell(terms, k, d, rows, opts.method);
        if candidates.is_empty() {
            continue;
        }
        if let Some(r) = candidates.iter().find(|r| verify_recurrence(r, terms)) {
            return Ok(Some(r.clone()));
        }
        // The training kernel had spurious directions; refit on everything.
        let full = solve_cell(terms, k, d, terms.len() - k, opts.method);
        if let Some(r) = full.into_iter().find(|r| verify_recurrence(r, terms)) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Outcome of an exhaustive `(order, degree)` grid scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub terms_used: usize,
    pub order_bound: usize,
    pub degree_bound: usize,
    /// Cells admitting a relation that holds on every term, in scan order.
    pub verified_cells: Vec<(usize, usize)>,
    /// First verified cell in scan order.
    pub smallest: Option<(usize, usize)>,
    /// Minimal order over all verified cells.
    pub min_order: Option<usize>,
    /// Smallest degree admitting a relation of order `min_order`.
    pub degree_at_min_order: Option<usize>,
    /// A relation realizing `(min_order, degree_at_min_order)`.
    pub recurrence: Option<Recurrence>,
}

impl MinimalityReport {
    /// `min_order + 1`.
    pub fn observed_term_count(&self) -> Option<usize> {
        self.min_order.map(|k| k + 1)
    }
}

/// Scans every cell of the grid; `threads > 1` splits cells across scoped
/// threads. The report does not depend on the thread count.
pub fn minimality_scan(
    terms: &[BigInt],
    order_bound: usize,
    degree_bound: usize,
    threads: usize,
) -> Result<MinimalityReport, RecurrenceError> {
    let required = required_terms(order_bound, degree_bound, DEFAULT_GUARD);
    if terms.len() < required {
        return Err(RecurrenceError::InsufficientTerms {
            required,
            available: terms.len(),
        });
    }
    let cells = scan_cells(order_bound, degree_bound);
    let check = |&(k, d): &(usize, usize)| -> Option<Recurrence> {
        solve_cell(terms, k, d, terms.len() - k, Method::Auto)
            .into_iter()
            .find(|r| verify_recurrence(r, terms))
    };
    let results: Vec<Option<Recurrence>> = if threads <= 1 {
        cells.iter().map(check).collect()
    } else {
        let chunk = cells.len().div_ceil(threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = cells
                .chunks(chunk.max(1))
                .map(|c| s.spawn(move || c.iter().map(check).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    };

    let verified: Vec<((usize, usize), Recurrence)> = cells
        .iter()
        .copied()
        .zip(results)
        .filter_map(|(c, r)| r.map(|r| (c, r)))
        .collect();
    let min_cell = verified
        .iter()
        .min_by_key(|((k, d), _)| (*k, *d))
        .map(|(c, r)| (*c, r.clone()));
    Ok(MinimalityReport {
        terms_used: terms.len(),
        order_bound,
        degree_bound,
        smallest: verified.first().map(|(c, _)| *c),
        verified_cells: verified.iter().map(|(c, _)| *c).collect(),
        min_order: min_cell.as_ref().map(|((k, _), _)| *k),
        degree_at_min_order: min_cell.as_ref().map(|((_, d), _)| *d),
        recurrence: min_cell.map(|(_, r)| r),
    })
}

/// Published relations, transcribed into the forward convention.
pub mod published {
    use super::Recurrence;
    use crate::poly::IntPoly;
    use num_bigint::BigInt;

    /// `(n+2) m_n = l(2n+1) m_{n-1} + (4ud - l^2)(n-1) m_{n-2}` shifted by two:
    /// `(n+4) m_{n+2} - l(2n+5) m_{n+1} - (4ud - l^2)(n+1) m_n = 0`.
    pub fn rank1(u: u64, l: u64, d: u64) -> Recurrence {
        let disc = BigInt::from(4u64 * u * d) - BigInt::from(l * l);
        let l = BigInt::from(l);
        let p0 = IntPoly::linear(1).scale(&-disc);
        let p1 = IntPoly::from_i64(&[5, 2]).scale(&-l);
        let p2 = IntPoly::linear(4);
        Recurrence::new(vec![p0, p1, p2]).expect("nonzero relation")
    }

    /// The classical Motzkin numbers.
    pub fn motzkin() -> Recurrence {
        rank1(1, 1, 1)
    }

    /// The 7-term relation for the all-ones rank-2 numbers, coefficients as
    /// printed (products of the printed factors).
    pub fn prodinger_rank2() -> Recurrence {
        let lin = IntPoly::linear;
        let c = |v: i64| IntPoly::from_i64(&[v]);
        let p0 = IntPoly::product(&[c(625), lin(3), lin(2), lin(1)]);
        let p1 = IntPoly::product(&[c(-125), lin(3), lin(2), IntPoly::from_i64(&[27, 7])]);
        let p2 = IntPoly::product(&[c(-50), lin(3), IntPoly::from_i64(&[23, 24, 5])]);
        let p3 = IntPoly::from_i64(&[41890, 30860, 7540, 610]);
        let p4 = -IntPoly::from_i64(&[6844, 5151, 1214, 91]);
        let p5 = -IntPoly::product(&[lin(7), IntPoly::from_i64(&[976, 301, 23])]);
        let p6 = IntPoly::product(&[c(2), IntPoly::from_i64(&[13, 2]), lin(8), lin(7)]);
        Recurrence::new(vec![p0, p1, p2, p3, p4, p5, p6]).expect("nonzero relation")
    }
}
