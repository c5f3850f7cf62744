//! Exact integer nullspaces.
//!
//! Two independent routes compute the same canonical basis:
//!
//! * [`Method::FractionFree`]: Bareiss elimination over the integers
//!   followed by rational back substitution.
//! * [`Method::Multimodular`]: row reduction modulo word-sized primes,
//!   Chinese remaindering and rational reconstruction, accepted only after
//!   the reconstructed vectors are checked exactly against the integer
//!   matrix.
//!
//! The canonical basis has one vector per non-pivot column `f` of the
//! reduced row echelon form (in increasing `f`), scaled to a primitive
//! integer vector whose entry at `f` is positive. Its first vector therefore
//! has the lexicographically smallest support among all kernel vectors,
//! which is what the guessers rely on.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Column count above which [`Method::Auto`] switches to the multimodular route.
pub const AUTO_MULTIMODULAR_COLUMNS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    FractionFree,
    Multimodular,
    #[default]
    Auto,
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { rows, ncols }
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// `true` iff `self * v == 0`.
    pub fn annihilates(&self, v: &[BigInt]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    }

    /// Canonical nullspace basis (see the module docs).
    pub fn nullspace(&self, method: Method) -> Vec<Vec<BigInt>> {
        match method {
            Method::FractionFree => nullspace_fraction_free(self),
            Method::Multimodular => {
                nullspace_multimodular(self).unwrap_or_else(|| nullspace_fraction_free(self))
            }
            Method::Auto => {
                if self.ncols > AUTO_MULTIMODULAR_COLUMNS {
                    self.nullspace(Method::Multimodular)
                } else {
                    nullspace_fraction_free(self)
                }
            }
        }
    }

    /// Dimension of the kernel modulo a large prime.
    ///
    /// This is an upper bound on the rational nullity, so a zero here proves
    /// the integer kernel is trivial.
    pub fn nullity_upper_bound(&self) -> usize {
        let p = primes()[0];
        let (pivots, _) = rref_mod(self, p);
        self.ncols - pivots.len()
    }
}

// ---------------------------------------------------------------------------
// Fraction-free route

fn nullspace_fraction_free(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let ncols = m.ncols;
    let mut a: Vec<Vec<BigInt>> = m.rows.clone();
    let nrows = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                // Bareiss: the division by the previous pivot is exact.
                debug_assert!((&v % &prev).is_zero());
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let rank = pivots.len();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        // Solve U[:, pivots] z = -U[:, f], free variable f = 1, other free = 0.
        let mut x: Vec<BigRational> = vec![BigRational::zero(); ncols];
        x[f] = BigRational::one();
        for i in (0..rank).rev() {
            let pc = pivots[i];
            let mut s = BigRational::zero();
            for j in pc + 1..ncols {
                if !a[i][j].is_zero() && !x[j].is_zero() {
                    s += &x[j] * BigRational::from_integer(a[i][j].clone());
                }
            }
            x[pc] = -s / BigRational::from_integer(a[i][pc].clone());
        }
        basis.push(primitive_from_rationals(&x, f));
    }
    basis
}

/// Clears denominators, removes content and makes entry `f` positive.
fn primitive_from_rationals(x: &[BigRational], f: usize) -> Vec<BigInt> {
    let den = x
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut v: Vec<BigInt> = x.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v[f].is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

// ---------------------------------------------------------------------------
// Multimodular route

const MAX_PRIMES: usize = 96;

fn nullspace_multimodular(m: &IntMatrix) -> Option<Vec<Vec<BigInt>>> {
    let ncols = m.ncols;
    // Accumulated state for the best pivot pattern seen so far.
    let mut best_pivots: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();

    for &p in primes().iter().take(MAX_PRIMES) {
        let (pivots, basis) = rref_mod(m, p);
        if pivots.len() == ncols {
            return Some(Vec::new());
        }
        match &best_pivots {
            Some(bp) if better_pivots(bp, &pivots) => continue,
            Some(bp) if *bp == pivots => {
                let pb = BigInt::from(p);
                for (acc, v) in residues.iter_mut().flat_map(|r| r.iter_mut()).zip(basis.iter().flatten()) {
                    *acc = crt_pair(acc, &modulus, &BigInt::from(*v), &pb);
                }
                modulus *= pb;
            }
            _ => {
                best_pivots = Some(pivots.clone());
                residues = basis
                    .iter()
                    .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
                    .collect();
                modulus = BigInt::from(p);
            }
        }

        let pivots = best_pivots.as_ref().unwrap();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        let mut candidate = Vec::with_capacity(residues.len());
        for (res, &f) in residues.iter().zip(&free) {
            let rats: Option<Vec<BigRational>> =
                res.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
            match rats {
                Some(q) => candidate.push(primitive_from_rationals(&q, f)),
                None => break,
            }
        }
        if candidate.len() == residues.len() && candidate.iter().all(|v| m.annihilates(v)) {
            return Some(candidate);
        }
    }
    None
}

/// `a` is at least as good as `b`: more pivots, or the same count with a
/// lexicographically smaller pivot list (reduction mod an unlucky prime
/// can only lose or delay pivots).
fn better_pivots(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

fn crt_pair(a: &BigInt, m: &BigInt, b: &BigInt, p: &BigInt) -> BigInt {
    // x = a + m * ((b - a) * m^{-1} mod p)
    let minv = mod_inverse(&m.mod_floor(p), p);
    let t = ((b - a).mod_floor(p) * minv).mod_floor(p);
    a + m * t
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

/// Wang's rational reconstruction with balanced bounds.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    if x.is_zero() {
        return 0;
    }
    let (sign, digits) = x.to_u64_digits();
    // Horner over 64-bit limbs, most significant first.
    let mut acc: u128 = 0;
    let p128 = p as u128;
    for &d in digits.iter().rev() {
        acc = ((acc << 64) | d as u128) % p128;
    }
    let r = acc as u64;
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Reduced row echelon form mod `p`; returns the pivot columns and the
/// residues of the canonical kernel basis (entry `f` equal to 1).
fn rref_mod(m: &IntMatrix, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let ncols = m.ncols;
    let mut a: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|row| row.iter().map(|x| reduce_mod(x, p)).collect())
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in &mut a[r][c..] {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    let s = mul_mod(f, pivot_row[j], p);
                    row[j] = if row[j] >= s { row[j] - s } else { row[j] + p - s };
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let e = a[i][f];
                v[pc] = if e == 0 { 0 } else { p - e };
            }
            v
        })
        .collect();
    (pivots, basis)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Descending primes just below 2^62.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}
