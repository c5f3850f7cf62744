use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::SeriesError;
use crate::genfunc::series::CoeffSeries;
use crate::genfunc::system::{build_system, Equation, SystemOfEquations, Term, Unknown};
use crate::paths::WeightSpec;

/// Solved generating functions `A_{i,j}`, `0 <= i, j < r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesFamily {
    rank: usize,
    order: usize,
    series: BTreeMap<(usize, usize), CoeffSeries>,
}

impl SeriesFamily {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CoeffSeries> {
        self.series.get(&(i, j))
    }

    /// `A_{0,0}`, the generating function of `m_n`.
    pub fn a00(&self) -> &CoeffSeries {
        &self.series[&(0, 0)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &CoeffSeries)> {
        self.series.iter()
    }

    pub fn into_a00(mut self) -> CoeffSeries {
        self.series.remove(&(0, 0)).expect("A_{0,0} is always present")
    }

    /// Every coefficient of every series is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.series.values().all(CoeffSeries::is_nonnegative_integral)
    }
}

/// Solves the first-return system (no symmetry reduction) modulo `x^order`.
pub fn solve_series(spec: &WeightSpec, order: usize) -> SeriesFamily {
    let system = build_system(spec, false).expect("the unreduced system always builds");
    let family = solve_system(&system, order).expect("first-return systems are acyclic");
    debug_assert!(family.is_nonnegative_integral(), "non-integral generating function");
    family
}

/// Solves the symmetric reduction (all-ones weights only).
pub fn solve_symmetric(rank: usize, order: usize) -> SeriesFamily {
    let system = build_system(&WeightSpec::all_ones(rank), true).expect("all-ones spec");
    solve_system(&system, order).expect("first-return systems are acyclic")
}

/// Coefficient-wise solution of `lhs = constant + sum(terms)`.
///
/// Coefficient `k` of every unknown is computed from coefficients `< k`
/// (terms carrying a power of `x`) and from coefficient `k` of unknowns
/// that appear without a power of `x`; the latter are evaluated first.
/// One pass over `k = 0..order` therefore yields the unique solution. The
/// recursion never divides, so the work is done over the integers.
pub fn solve_system(system: &SystemOfEquations, order: usize) -> Result<SeriesFamily, SeriesError> {
    let eqs = system.equations();
    let index: HashMap<Unknown, usize> = eqs.iter().enumerate().map(|(k, e)| (e.lhs, k)).collect();
    let eval_order = evaluation_order(eqs, &index)?;

    let mut vals: Vec<Vec<BigInt>> = vec![Vec::with_capacity(order); eqs.len()];
    for k in 0..order {
        for &e in &eval_order {
            let eq = &eqs[e];
            let mut v = if k == 0 { eq.constant.clone() } else { BigInt::zero() };
            for t in &eq.terms {
                term_coeff(t, k, &index, &vals, &mut v);
            }
            vals[e].push(v);
        }
    }

    let mut series = BTreeMap::new();
    for (eq, coeffs) in eqs.iter().zip(vals) {
        let s = CoeffSeries::from_ints(coeffs);
        if system.is_symmetric() && eq.lhs.i != eq.lhs.j {
            series.insert((eq.lhs.j, eq.lhs.i), s.clone());
        }
        series.insert((eq.lhs.i, eq.lhs.j), s);
    }
    Ok(SeriesFamily {
        rank: system.rank(),
        order,
        series,
    })
}

/// Topological order over the same-coefficient (`x^0`) dependencies.
fn evaluation_order(eqs: &[Equation], index: &HashMap<Unknown, usize>) -> Result<Vec<usize>, SeriesError> {
    let deps: Vec<Vec<usize>> = eqs
        .iter()
        .map(|eq| {
            eq.terms
                .iter()
                .filter(|t| t.x_power == 0)
                .flat_map(|t| t.factors.iter().map(|f| index[f]))
                .collect()
        })
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; eqs.len()];
    let mut out = Vec::with_capacity(eqs.len());
    fn visit(
        v: usize,
        deps: &[Vec<usize>],
        state: &mut [u8],
        out: &mut Vec<usize>,
        eqs: &[Equation],
    ) -> Result<(), SeriesError> {
        match state[v] {
            2 => return Ok(()),
            1 => {
                let u = eqs[v].lhs;
                return Err(SeriesError::CyclicSystem(format!("A_{{{},{}}}", u.i, u.j)));
            }
            _ => {}
        }
        state[v] = 1;
        for &w in &deps[v] {
            visit(w, deps, state, out, eqs)?;
        }
        state[v] = 2;
        out.push(v);
        Ok(())
    }
    for v in 0..eqs.len() {
        visit(v, &deps, &mut state, &mut out, eqs)?;
    }
    Ok(out)
}

/// Adds coefficient `k` of `term` to `acc`.
fn term_coeff(
    term: &Term,
    k: usize,
    index: &HashMap<Unknown, usize>,
    vals: &[Vec<BigInt>],
    acc: &mut BigInt,
) {
    if k < term.x_power {
        return;
    }
    let m = k - term.x_power;
    let c = &term.coeff;
    match term.factors.as_slice() {
        [] => {
            if m == 0 {
                *acc += c;
            }
        }
        [f] => {
            let v = &vals[index[f]][m];
            if !v.is_zero() {
                *acc += c * v;
            }
        }
        [f, g] => {
            let (a, b) = (&vals[index[f]], &vals[index[g]]);
            let mut s = BigInt::zero();
            for i in 0..=m {
                let (x, y) = (&a[i], &b[m - i]);
                if !x.is_zero() && !y.is_zero() {
                    s += x * y;
                }
            }
            *acc += c * s;
        }
        factors => {
            let mut prod: Vec<BigInt> = vals[index[&factors[0]]][..=m].to_vec();
            for f in &factors[1..] {
                prod = convolve_prefix(&prod, &vals[index[f]], m);
            }
            *acc += c * &prod[m];
        }
    }
}

/// Coefficients `0..=m` of `a * b`.
fn convolve_prefix(a: &[BigInt], b: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    for (i, x) in a.iter().enumerate().take(m + 1) {
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_paths_dp;
    use num_rational::BigRational;

    #[test]
    fn table_one_from_series() {
        let fam = solve_series(&WeightSpec::all_ones(2), 11);
        let expected = [1, 1, 3, 9, 32, 120, 473, 1925, 8034, 34188, 147787];
        assert_eq!(fam.a00(), &CoeffSeries::from_ints(expected));
        assert_eq!(fam.get(0, 1).unwrap().coeff(1), &BigRational::from_integer(1.into()));
        assert_eq!(fam.get(0, 1).unwrap().coeff(0), &BigRational::zero());
    }

    #[test]
    fn table_two_from_series() {
        let fam = solve_series(&WeightSpec::all_ones(3), 11);
        let expected = [1, 1, 4, 16, 78, 404, 2208, 12492, 72589, 430569, 2596471];
        assert_eq!(fam.a00(), &CoeffSeries::from_ints(expected));
    }

    #[test]
    fn every_entry_matches_dp() {
        let spec = WeightSpec::new(vec![2, 1, 1], 3, vec![1, 2, 2]).unwrap();
        let fam = solve_series(&spec, 12);
        for ((i, j), s) in fam.iter() {
            for n in 0..12 {
                let dp = count_paths_dp(&spec, n, *i as u64, *j as u64);
                assert_eq!(s.coeff(n), &BigRational::from_integer(BigInt::from(dp)));
            }
        }
    }

    #[test]
    fn symmetric_matches_full() {
        for r in 1..=4 {
            let full = solve_series(&WeightSpec::all_ones(r), 20);
            let sym = solve_symmetric(r, 20);
            assert_eq!(full, sym);
        }
    }

    #[test]
    fn residuals_vanish() {
        let spec = WeightSpec::new(vec![1, 3], 2, vec![2, 1]).unwrap();
        let sys = build_system(&spec, false).unwrap();
        let fam = solve_system(&sys, 20).unwrap();
        assert!(sys.residuals(&fam).iter().all(CoeffSeries::is_zero));
    }

    #[test]
    fn general_products_and_cycles() {
        // y = 1 + x y^3  (ternary trees: 1, 1, 3, 12, 55)
        let y = Unknown::new(0, 0);
        let eq = Equation {
            lhs: y,
            constant: 1.into(),
            terms: vec![Term {
                coeff: 1.into(),
                x_power: 1,
                factors: vec![y, y, y],
            }],
        };
        let sys = SystemOfEquations::from_equations(1, vec![eq.clone()]);
        let fam = solve_system(&sys, 5).unwrap();
        assert_eq!(fam.a00(), &CoeffSeries::from_ints([1, 1, 3, 12, 55]));

        let cyclic = Equation {
            terms: vec![Term {
                coeff: 1.into(),
                x_power: 0,
                factors: vec![y],
            }],
            ..eq
        };
        let sys = SystemOfEquations::from_equations(1, vec![cyclic]);
        assert!(matches!(solve_system(&sys, 3), Err(SeriesError::CyclicSystem(_))));
    }
}
