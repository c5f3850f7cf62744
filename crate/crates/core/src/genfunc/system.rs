use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;
use crate::genfunc::series::CoeffSeries;
use crate::genfunc::SeriesFamily;
use crate::paths::WeightSpec;
use crate::poly::IntPoly;

/// The unknown `A_{i,j}` (or `B_{i,j}` in the symmetric reduction, where
/// only `i >= j` is used).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unknown {
    pub i: usize,
    pub j: usize,
}

impl Unknown {
    pub fn new(i: usize, j: usize) -> Self {
        Unknown { i, j }
    }
}

/// `coeff * x^x_power * prod(factors)`; factors are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub x_power: usize,
    pub factors: Vec<Unknown>,
}

/// `lhs = constant + sum(terms)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Unknown,
    pub constant: BigInt,
    pub terms: Vec<Term>,
}

impl Equation {
    /// `rhs - lhs` grouped by monomial in the unknowns, each with its
    /// polynomial coefficient in `x`.
    pub fn residual_form(&self) -> BTreeMap<Vec<Unknown>, IntPoly> {
        let mut out: BTreeMap<Vec<Unknown>, IntPoly> = BTreeMap::new();
        let mut add = |k: Vec<Unknown>, p: IntPoly| {
            let e = out.entry(k).or_default();
            *e = &*e + &p;
        };
        if !self.constant.is_zero() {
            add(Vec::new(), IntPoly::constant(self.constant.clone()));
        }
        for t in &self.terms {
            add(t.factors.clone(), IntPoly::monomial(t.coeff.clone(), t.x_power));
        }
        add(vec![self.lhs], -IntPoly::one());
        out.retain(|_, p| !p.is_zero());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemOfEquations {
    rank: usize,
    symmetric: bool,
    equations: Vec<Equation>,
}

impl SystemOfEquations {
    /// A hand-written system of `lhs = rhs` equations (one per unknown).
    pub fn from_equations(rank: usize, equations: Vec<Equation>) -> Self {
        SystemOfEquations {
            rank,
            symmetric: false,
            equations,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn unknowns(&self) -> Vec<Unknown> {
        self.equations.iter().map(|e| e.lhs).collect()
    }

    pub fn equation_for(&self, u: Unknown) -> Option<&Equation> {
        self.equations.iter().find(|e| e.lhs == u)
    }

    /// `rhs - lhs` of every equation evaluated with series arithmetic.
    pub fn residuals(&self, family: &SeriesFamily) -> Vec<CoeffSeries> {
        let order = family.order();
        let get = |u: &Unknown| family.get(u.i, u.j).expect("family covers the system");
        self.equations
            .iter()
            .map(|eq| {
                let mut acc = CoeffSeries::monomial(eq.constant.clone().into(), 0, order);
                for t in &eq.terms {
                    let mut prod = CoeffSeries::monomial(t.coeff.clone().into(), t.x_power, order);
                    for f in &t.factors {
                        prod = &prod * get(f);
                    }
                    acc = &acc + &prod;
                }
                &acc - get(&eq.lhs)
            })
            .collect()
    }

    fn symbol(&self) -> &'static str {
        if self.symmetric {
            "B"
        } else {
            "A"
        }
    }
}

impl fmt::Display for SystemOfEquations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.symbol();
        let name = |u: &Unknown| format!("{sym}_{{{},{}}}", u.i, u.j);
        for eq in &self.equations {
            let mut rhs: Vec<String> = Vec::new();
            if !eq.constant.is_zero() {
                rhs.push(eq.constant.to_string());
            }
            for t in &eq.terms {
                let mut parts: Vec<String> = Vec::new();
                if !t.coeff.abs().is_one() {
                    parts.push(t.coeff.abs().to_string());
                }
                match t.x_power {
                    0 => {}
                    1 => parts.push("x".into()),
                    k => parts.push(format!("x^{k}")),
                }
                let mut k = 0;
                while k < t.factors.len() {
                    let mut e = 1;
                    while k + e < t.factors.len() && t.factors[k + e] == t.factors[k] {
                        e += 1;
                    }
                    parts.push(if e == 1 {
                        name(&t.factors[k])
                    } else {
                        format!("{}^{e}", name(&t.factors[k]))
                    });
                    k += e;
                }
                if parts.is_empty() {
                    parts.push("1".into());
                }
                let body = parts.join("*");
                rhs.push(if t.coeff.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            }
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
            writeln!(f, "{} = {}", name(&eq.lhs), rhs.replace("+ -", "- "))?;
        }
        Ok(())
    }
}

fn canonical(u: Unknown, symmetric: bool) -> Unknown {
    if symmetric && u.i < u.j {
        Unknown::new(u.j, u.i)
    } else {
        u
    }
}

struct Builder {
    symmetric: bool,
    constant: BigInt,
    terms: BTreeMap<(usize, Vec<Unknown>), BigInt>,
}

impl Builder {
    fn new(symmetric: bool) -> Self {
        Builder {
            symmetric,
            constant: BigInt::zero(),
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, coeff: u64, x_power: usize, factors: &[Unknown]) {
        if coeff == 0 {
            return;
        }
        let mut f: Vec<Unknown> = factors.iter().map(|&u| canonical(u, self.symmetric)).collect();
        f.sort_unstable();
        *self.terms.entry((x_power, f)).or_default() += BigInt::from(coeff);
    }

    fn finish(self, lhs: Unknown) -> Equation {
        Equation {
            lhs,
            constant: self.constant,
            terms: self
                .terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((x_power, factors), coeff)| Term {
                    coeff,
                    x_power,
                    factors,
                })
                .collect(),
        }
    }
}

/// The first-return system for `A_{i,j}`, `0 <= i, j < r`:
///
/// ```text
/// A_{0,0} = 1 + l x A_{0,0} + x^2 A_{0,0} sum_{p,q} u_p d_q A_{p-1,q-1}
/// A_{0,j} = x A_{0,0} sum_p u_p A_{p-1,j-1}                        (j >= 1)
/// A_{i,j} = A_{i-1,j-1} + x A_{0,j} sum_q d_q A_{i-1,q-1}          (i >= 1)
/// ```
///
/// with `A_{s,t} = 0` whenever an index is negative. With `symmetric` the
/// identification `B_{i,j} = B_{j,i}` keeps only `i >= j`, and the equation
/// for `B_{a,b}` is the one for `A_{b,a}`.
pub fn build_system(spec: &WeightSpec, symmetric: bool) -> Result<SystemOfEquations, SeriesError> {
    if symmetric && !spec.is_all_ones() {
        return Err(SeriesError::SymmetryRequiresAllOnes);
    }
    let r = spec.rank();
    let a = Unknown::new;
    let a00 = a(0, 0);
    let mut equations = Vec::new();

    // The reduced system keeps the equations with i >= j and renames
    // A_{p,q} with p < q to B_{q,p}.
    let targets: Vec<Unknown> = (0..r)
        .flat_map(|i| (0..r).filter(move |&j| !symmetric || j <= i).map(move |j| a(i, j)))
        .collect();

    for lhs in targets {
        let mut b = Builder::new(symmetric);
        let (i, j) = (lhs.i, lhs.j);
        if i == 0 && j == 0 {
            b.constant = BigInt::one();
            b.add(spec.level(), 1, &[a00]);
            for p in 1..=r {
                for q in 1..=r {
                    b.add(spec.up(p) * spec.down(q), 2, &[a00, a(p - 1, q - 1)]);
                }
            }
        } else if i == 0 {
            for p in 1..=r {
                b.add(spec.up(p), 1, &[a00, a(p - 1, j - 1)]);
            }
        } else {
            if j >= 1 {
                b.add(1, 0, &[a(i - 1, j - 1)]);
            }
            for q in 1..=r {
                b.add(spec.down(q), 1, &[a(0, j), a(i - 1, q - 1)]);
            }
        }
        equations.push(b.finish(lhs));
    }

    Ok(SystemOfEquations {
        rank: r,
        symmetric,
        equations,
    })
}
