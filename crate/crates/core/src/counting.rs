//! Exact weighted path counts.
//!
//! `count_paths_dp(spec, n, s, t)` is `|A_{s,t}(n)|` counted with weights:
//! every path contributes the product of its step weights, which equals the
//! number of its colorings.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_traits::{One, Pow, Zero};

use crate::error::{CountError, RecurrenceError};
use crate::paths::WeightSpec;
use crate::recurrence::{self, published};

/// Weighted number of paths of length `n` from height `s` to height `t`.
pub fn count_paths_dp(spec: &WeightSpec, n: usize, s: u64, t: u64) -> BigUint {
    let r = spec.rank() as u64;
    let n64 = n as u64;
    if s.abs_diff(t) > r * n64 {
        return BigUint::zero();
    }
    let moves: Vec<(i64, BigUint)> = spec
        .present_displacements()
        .into_iter()
        .map(|d| (i64::from(d), BigUint::from(spec.weight(d))))
        .collect();
    // Heights above min(s + r*i, t + r*(n - i)) cannot reach t in time.
    let cap = |i: u64| (s + r * i).min(t + r * (n64 - i)) as usize;
    let mut cur = vec![BigUint::zero(); cap(0) + 1];
    cur[s as usize] = BigUint::one();
    for i in 1..=n64 {
        let hmax = cap(i);
        let mut next = vec![BigUint::zero(); hmax + 1];
        for (h, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (d, w) in &moves {
                let nh = h as i64 + d;
                if nh >= 0 && nh as usize <= hmax {
                    next[nh as usize] += c * w;
                }
            }
        }
        cur = next;
    }
    cur.get(t as usize).cloned().unwrap_or_default()
}

/// The rank-`r` weighted sequence `m_0, .., m_{terms-1}` (paths 0 -> 0).
pub fn motzkin_sequence(spec: &WeightSpec, terms: usize) -> Vec<BigUint> {
    let table = CountTable::build(spec, terms.saturating_sub(1), 0);
    (0..terms).map(|n| table.entry(n, 0, 0).clone()).collect()
}

/// All counts `|A_{s,t}(n)|` for `n <= n_max` and `s, t <= max_height`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    spec: WeightSpec,
    n_max: usize,
    max_height: u64,
    entries: BTreeMap<(usize, u64, u64), BigUint>,
}

impl CountTable {
    pub fn build(spec: &WeightSpec, n_max: usize, max_height: u64) -> Self {
        Self::build_with_slack(spec, n_max, max_height, 0)
    }

    /// As [`CountTable::build`], keeping `slack` extra heights above the
    /// pruning cap. The entries do not depend on `slack`.
    pub fn build_with_slack(spec: &WeightSpec, n_max: usize, max_height: u64, slack: usize) -> Self {
        let r = spec.rank() as u64;
        let moves: Vec<(i64, BigUint)> = spec
            .present_displacements()
            .into_iter()
            .map(|d| (i64::from(d), BigUint::from(spec.weight(d))))
            .collect();
        let mut entries = BTreeMap::new();
        for s in 0..=max_height {
            let cap = |i: usize| {
                let i = i as u64;
                (s + r * i).min(max_height + r * (n_max as u64 - i)) as usize + slack
            };
            let mut cur = vec![BigUint::zero(); cap(0) + 1];
            cur[s as usize] = BigUint::one();
            for n in 0..=n_max {
                if n > 0 {
                    let hmax = cap(n);
                    let mut next = vec![BigUint::zero(); hmax + 1];
                    for (h, c) in cur.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (d, w) in &moves {
                            let nh = h as i64 + d;
                            if nh >= 0 && nh as usize <= hmax {
                                next[nh as usize] += c * w;
                            }
                        }
                    }
                    cur = next;
                }
                for t in 0..=max_height {
                    let v = cur.get(t as usize).cloned().unwrap_or_default();
                    entries.insert((n, s, t), v);
                }
            }
        }
        CountTable {
            spec: spec.clone(),
            n_max,
            max_height,
            entries,
        }
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn max_height(&self) -> u64 {
        self.max_height
    }

    /// Panics if `(n, s, t)` is outside the table bounds.
    pub fn entry(&self, n: usize, s: u64, t: u64) -> &BigUint {
        self.entries
            .get(&(n, s, t))
            .unwrap_or_else(|| panic!("({n}, {s}, {t}) outside the count table"))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, u64, u64), &BigUint)> {
        self.entries.iter()
    }
}

pub fn catalan(n: u64) -> BigUint {
    binomial(BigUint::from(2 * n), BigUint::from(n)) / BigUint::from(n + 1)
}

/// `sum_j Cat_j * C(n, 2j) * (u d)^j * l^(n - 2j)`.
pub fn rank1_explicit(u: u64, l: u64, d: u64, n: usize) -> BigUint {
    let ud = BigUint::from(u) * d;
    let l = BigUint::from(l);
    (0..=n / 2)
        .map(|j| {
            catalan(j as u64)
                * binomial(BigUint::from(n), BigUint::from(2 * j))
                * Pow::pow(&ud, j as u32)
                * Pow::pow(&l, (n - 2 * j) as u32)
        })
        .fold(BigUint::zero(), |a, b| a + b)
}

/// First `count` terms of `(n+2) m_n = l(2n+1) m_{n-1} + (4ud - l^2)(n-1) m_{n-2}`
/// from `m_0 = 1`, `m_1 = l`.
pub fn rank1_recurrence_seq(u: u64, l: u64, d: u64, count: usize) -> Result<Vec<BigUint>, CountError> {
    let (u, l, d) = (BigInt::from(u), BigInt::from(l), BigInt::from(d));
    let disc = BigInt::from(4) * &u * &d - &l * &l;
    let mut m: Vec<BigInt> = vec![BigInt::one(), l.clone()];
    for n in 2..count {
        let nn = BigInt::from(n);
        let rhs: BigInt = &l * (BigInt::from(2 * n + 1)) * &m[n - 1]
            + &disc * (&nn - 1) * &m[n - 2];
        let (q, rem) = rhs.div_rem(&(&nn + 2));
        if !rem.is_zero() {
            return Err(CountError::NonIntegralStep { n });
        }
        m.push(q);
    }
    m.truncate(count);
    Ok(m.into_iter()
        .map(|v| v.to_biguint().expect("counts are nonnegative"))
        .collect())
}

/// The all-ones rank-2 sequence extended by the published 7-term relation,
/// seeded with `m_0..m_5` from the dynamic program.
pub fn rank2_prodinger_seq(count: usize) -> Result<Vec<BigUint>, CountError> {
    let spec = WeightSpec::all_ones(2);
    let seeds: Vec<BigInt> = motzkin_sequence(&spec, 6.min(count))
        .into_iter()
        .map(BigInt::from)
        .collect();
    if count <= 6 {
        return Ok(seeds.into_iter().map(|v| v.to_biguint().unwrap()).collect());
    }
    let rec = published::prodinger_rank2();
    let seq = recurrence::apply_recurrence(&rec, &seeds, count).map_err(|e| match e {
        RecurrenceError::NonIntegralStep { n } => CountError::NonIntegralStep { n },
        other => unreachable!("7-term relation has a nonvanishing leading term: {other}"),
    })?;
    Ok(seq
        .into_iter()
        .map(|v| v.to_biguint().expect("counts are nonnegative"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_paths;

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn table_spot_values() {
        assert_eq!(count_paths_dp(&WeightSpec::all_ones(2), 4, 0, 0), BigUint::from(32u32));
        assert_eq!(count_paths_dp(&WeightSpec::all_ones(3), 5, 0, 0), BigUint::from(404u32));
        assert_eq!(
            count_paths_dp(&WeightSpec::all_ones(4), 10, 0, 0),
            BigUint::from(22_791_189u32)
        );
        for h in 0..4 {
            assert_eq!(count_paths_dp(&WeightSpec::rank1(3, 2, 5), 0, h, h), BigUint::one());
        }
        assert!(count_paths_dp(&WeightSpec::all_ones(1), 0, 0, 1).is_zero());
        assert!(count_paths_dp(&WeightSpec::all_ones(1), 2, 0, 3).is_zero());
    }

    #[test]
    fn explicit_rank1() {
        assert_eq!(rank1_explicit(1, 1, 1, 4), BigUint::from(9u32));
        assert_eq!(rank1_explicit(3, 4, 5, 0), BigUint::one());
        assert_eq!(rank1_explicit(1, 2, 1, 2), BigUint::from(5u32));
    }

    #[test]
    fn recurrence_rank1() {
        assert_eq!(rank1_recurrence_seq(1, 1, 1, 5).unwrap(), nums(&[1, 1, 2, 4, 9]));
        assert_eq!(rank1_recurrence_seq(1, 2, 1, 4).unwrap(), nums(&[1, 2, 5, 14]));
        let spec = WeightSpec::rank1(2, 1, 3);
        let dp: Vec<BigUint> = (0..3).map(|n| count_paths_dp(&spec, n, 0, 0)).collect();
        assert_eq!(rank1_recurrence_seq(2, 1, 3, 3).unwrap(), dp);
    }

    #[test]
    fn prodinger_rank2() {
        let seq = rank2_prodinger_seq(11).unwrap();
        assert_eq!(
            seq,
            nums(&[1, 1, 3, 9, 32, 120, 473, 1925, 8034, 34188, 147787])
        );
        // seven table entries m_1..m_7 end in 1925
        assert_eq!(rank2_prodinger_seq(8).unwrap()[7], BigUint::from(1925u32));
        let long = rank2_prodinger_seq(13).unwrap();
        assert_eq!(long[12], count_paths_dp(&WeightSpec::all_ones(2), 12, 0, 0));
    }

    #[test]
    fn dp_matches_enumeration_small() {
        let spec = WeightSpec::new(vec![2, 1], 3, vec![1, 2]).unwrap();
        for n in 0..=5 {
            for (s, t) in [(0, 0), (1, 0), (0, 2), (2, 1)] {
                let e = enumerate_paths(&spec, n, s, t, true).unwrap().len();
                assert_eq!(count_paths_dp(&spec, n, s, t), BigUint::from(e));
            }
        }
    }

    #[test]
    fn table_agrees_with_point_queries_and_slack() {
        let spec = WeightSpec::new(vec![1, 1, 1], 1, vec![1, 1, 1]).unwrap();
        let t = CountTable::build(&spec, 9, 3);
        let wide = CountTable::build_with_slack(&spec, 9, 3, 7);
        assert_eq!(t.entries, wide.entries);
        for n in 0..=9 {
            for s in 0..=3 {
                for e in 0..=3 {
                    assert_eq!(t.entry(n, s, e), &count_paths_dp(&spec, n, s, e));
                }
            }
        }
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<BigUint> = (0..6).map(catalan).collect();
        assert_eq!(c, nums(&[1, 1, 2, 5, 14, 42]));
    }
}
