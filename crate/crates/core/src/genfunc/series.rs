use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;

/// Power series in `x` known modulo `x^order`, with exact rational
/// coefficients.
///
/// Binary operations on series of different orders truncate to the smaller
/// order, so no result ever claims more precision than its inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeries {
    coeffs: Vec<BigRational>,
}

impl CoeffSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        CoeffSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        CoeffSeries {
            coeffs: vec![BigRational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c * x^k` truncated at `order`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        CoeffSeries {
            coeffs: coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    /// A polynomial viewed as a series of the given order.
    pub fn from_poly(poly: &crate::poly::IntPoly, order: usize) -> Self {
        Self::from_ints((0..order).map(|k| poly.coeff(k)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`. Panics for `k >= order`: beyond the truncation
    /// the coefficient is unknown, not zero.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        CoeffSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        CoeffSeries { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g)`; requires `g(0) = 0`.
    pub fn compose(&self, g: &CoeffSeries) -> Result<Self, SeriesError> {
        if g.order() > 0 && !g.coeffs[0].is_zero() {
            return Err(SeriesError::ComposeConstantTerm);
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        // Horner: only the first `order` coefficients of self can matter.
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().take(order).rev() {
            acc = &acc * &g;
            if order > 0 {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse by Newton iteration `y <- y (2 - f y)`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let mut y = Self::monomial(self.coeffs[0].recip(), 0, 1);
        let mut prec = 1;
        while prec < order {
            prec = (2 * prec).min(order);
            let f = self.truncate(prec);
            let y_ext = y.padded(prec);
            let fy = &f * &y_ext;
            let two_minus = &Self::monomial(BigRational::from_integer(2.into()), 0, prec) - &fy;
            y = &y_ext * &two_minus;
        }
        Ok(y)
    }

    pub fn div(&self, rhs: &CoeffSeries) -> Result<Self, SeriesError> {
        Ok(self * &rhs.reciprocal()?)
    }

    /// Pads with zero coefficients up to `order`. Only meaningful when the
    /// padding is exact (a polynomial) or about to be recomputed.
    pub fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, BigRational::zero());
        CoeffSeries { coeffs }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for CoeffSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order())
    }
}

impl Add for &CoeffSeries {
    type Output = CoeffSeries;
    fn add(self, rhs: &CoeffSeries) -> CoeffSeries {
        CoeffSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CoeffSeries {
    type Output = CoeffSeries;
    fn sub(self, rhs: &CoeffSeries) -> CoeffSeries {
        CoeffSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CoeffSeries {
    type Output = CoeffSeries;
    fn mul(self, rhs: &CoeffSeries) -> CoeffSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        CoeffSeries { coeffs }
    }
}

impl Neg for &CoeffSeries {
    type Output = CoeffSeries;
    fn neg(self) -> CoeffSeries {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CoeffSeries {
            type Output = CoeffSeries;
            fn $m(self, rhs: CoeffSeries) -> CoeffSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
