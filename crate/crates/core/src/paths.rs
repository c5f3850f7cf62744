//! Colored Motzkin paths of arbitrary rank.
//!
//! A step is encoded by its vertical displacement (`+j` for `U_j`, `0` for
//! the level step, `-j` for `D_j`) and a 1-based color index bounded by the
//! weight of that step type. Weight zero means the step type is absent.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::PathError;

/// Default maximum path length accepted by [`enumerate_paths`].
pub const DEFAULT_MAX_LENGTH: usize = 12;
/// Default cap on the number of paths [`enumerate_paths`] may materialize.
pub const DEFAULT_MAX_PATHS: u64 = 1_000_000;

/// Rank plus integer weights `(u_1..u_r, l, d_1..d_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    up: Vec<u64>,
    level: u64,
    down: Vec<u64>,
}

impl WeightSpec {
    pub fn new(up: Vec<u64>, level: u64, down: Vec<u64>) -> Result<Self, PathError> {
        if up.is_empty() {
            return Err(PathError::InvalidSpec("rank must be at least 1".into()));
        }
        if up.len() != down.len() {
            return Err(PathError::InvalidSpec(format!(
                "{} up weights but {} down weights",
                up.len(),
                down.len()
            )));
        }
        Ok(WeightSpec { up, level, down })
    }

    /// Rank `r` with every weight equal to 1 (the non-colored paths).
    pub fn all_ones(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        WeightSpec {
            up: vec![1; rank],
            level: 1,
            down: vec![1; rank],
        }
    }

    pub fn rank1(u: u64, l: u64, d: u64) -> Self {
        WeightSpec {
            up: vec![u],
            level: l,
            down: vec![d],
        }
    }

    pub fn rank(&self) -> usize {
        self.up.len()
    }

    /// `u_j`, 1-based.
    pub fn up(&self, j: usize) -> u64 {
        self.up[j - 1]
    }

    /// `d_j`, 1-based.
    pub fn down(&self, j: usize) -> u64 {
        self.down[j - 1]
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn up_weights(&self) -> &[u64] {
        &self.up
    }

    pub fn down_weights(&self) -> &[u64] {
        &self.down
    }

    /// Weight of the step with the given displacement; zero outside `[-r, r]`.
    pub fn weight(&self, displacement: i32) -> u64 {
        let r = self.rank() as i32;
        match displacement {
            0 => self.level,
            d if d > 0 && d <= r => self.up[(d - 1) as usize],
            d if d < 0 && -d <= r => self.down[(-d - 1) as usize],
            _ => 0,
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.level == 1 && self.up.iter().chain(&self.down).all(|&w| w == 1)
    }

    /// Displacements with nonzero weight, ascending.
    pub fn present_displacements(&self) -> Vec<i32> {
        let r = self.rank() as i32;
        (-r..=r).filter(|&d| self.weight(d) > 0).collect()
    }
}

/// Grammar `u_1,..,u_r;l;d_1,..,d_r`.
impl FromStr for WeightSpec {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let groups: Vec<&str> = s.split(';').collect();
        if groups.len() != 3 {
            return Err(PathError::InvalidSpec(format!(
                "expected `ups;level;downs`, got {s:?}"
            )));
        }
        let list = |g: &str| -> Result<Vec<u64>, PathError> {
            g.split(',')
                .map(|w| {
                    w.trim()
                        .parse::<u64>()
                        .map_err(|_| PathError::InvalidSpec(format!("bad weight {w:?}")))
                })
                .collect()
        };
        let up = list(groups[0])?;
        let level = groups[1]
            .trim()
            .parse::<u64>()
            .map_err(|_| PathError::InvalidSpec(format!("bad level weight {:?}", groups[1])))?;
        let down = list(groups[2])?;
        WeightSpec::new(up, level, down)
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{};{}", join(&self.up), self.level, join(&self.down))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub displacement: i32,
    /// 1-based.
    pub color: u32,
}

impl Step {
    pub fn new(displacement: i32, color: u32) -> Self {
        Step {
            displacement,
            color,
        }
    }

    pub fn is_up(&self) -> bool {
        self.displacement > 0
    }

    pub fn is_down(&self) -> bool {
        self.displacement < 0
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.displacement > 0 {
            write!(f, "+{}:{}", self.displacement, self.color)
        } else {
            write!(f, "{}:{}", self.displacement, self.color)
        }
    }
}

/// A path that never goes below height zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPath {
    spec: Arc<WeightSpec>,
    steps: Vec<Step>,
    start_height: u64,
}

impl ColoredPath {
    pub fn new(
        spec: Arc<WeightSpec>,
        steps: Vec<Step>,
        start_height: u64,
    ) -> Result<Self, PathError> {
        let mut h = start_height as i64;
        for (i, s) in steps.iter().enumerate() {
            let w = spec.weight(s.displacement);
            if w == 0 {
                return Err(PathError::InvalidPath(format!(
                    "step {i} has displacement {} which has weight 0",
                    s.displacement
                )));
            }
            if s.color == 0 || u64::from(s.color) > w {
                return Err(PathError::InvalidPath(format!(
                    "step {i} color {} outside 1..={w}",
                    s.color
                )));
            }
            h += i64::from(s.displacement);
            if h < 0 {
                return Err(PathError::InvalidPath(format!("height negative after step {i}")));
            }
        }
        Ok(ColoredPath {
            spec,
            steps,
            start_height,
        })
    }

    /// Parses the compact text form `+1:1,0:1,-1:2` (empty string = empty path).
    pub fn parse(spec: Arc<WeightSpec>, text: &str, start_height: u64) -> Result<Self, PathError> {
        let text = text.trim();
        let steps = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|tok| {
                    let (d, c) = tok
                        .trim()
                        .split_once(':')
                        .ok_or_else(|| PathError::InvalidPath(format!("bad step {tok:?}")))?;
                    let d: i32 = d
                        .trim_start_matches('+')
                        .parse()
                        .map_err(|_| PathError::InvalidPath(format!("bad displacement {d:?}")))?;
                    let c: u32 = c
                        .parse()
                        .map_err(|_| PathError::InvalidPath(format!("bad color {c:?}")))?;
                    Ok(Step::new(d, c))
                })
                .collect::<Result<Vec<_>, PathError>>()?
        };
        ColoredPath::new(spec, steps, start_height)
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<WeightSpec> {
        &self.spec
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start_height(&self) -> u64 {
        self.start_height
    }

    pub fn end_height(&self) -> u64 {
        self.heights().last().copied().unwrap_or(self.start_height)
    }

    /// Height after each step.
    pub fn heights(&self) -> Vec<u64> {
        let mut h = self.start_height as i64;
        self.steps
            .iter()
            .map(|s| {
                h += i64::from(s.displacement);
                h as u64
            })
            .collect()
    }

    /// The same displacement sequence with every color reset to 1.
    pub fn uncolored(&self) -> ColoredPath {
        ColoredPath {
            spec: self.spec.clone(),
            steps: self
                .steps
                .iter()
                .map(|s| Step::new(s.displacement, 1))
                .collect(),
            start_height: self.start_height,
        }
    }
}

impl fmt::Display for ColoredPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Guard bounds for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumGuard {
    pub max_length: usize,
    pub max_paths: u64,
}

impl Default for EnumGuard {
    fn default() -> Self {
        EnumGuard {
            max_length: DEFAULT_MAX_LENGTH,
            max_paths: DEFAULT_MAX_PATHS,
        }
    }
}

/// Every path of length `n` from height `s` to height `t`, in lexicographic
/// order of (displacement, color) per step.
///
/// With `colored == false` each displacement sequence appears once with all
/// colors set to 1.
pub fn enumerate_paths(
    spec: &WeightSpec,
    n: usize,
    s: u64,
    t: u64,
    colored: bool,
) -> Result<Vec<ColoredPath>, PathError> {
    enumerate_paths_guarded(spec, n, s, t, colored, EnumGuard::default())
}

pub fn enumerate_paths_guarded(
    spec: &WeightSpec,
    n: usize,
    s: u64,
    t: u64,
    colored: bool,
    guard: EnumGuard,
) -> Result<Vec<ColoredPath>, PathError> {
    if n > guard.max_length {
        return Err(PathError::GuardExceeded(format!(
            "length {n} exceeds the enumeration limit {}",
            guard.max_length
        )));
    }
    let moves: Vec<(i32, u64)> = spec
        .present_displacements()
        .into_iter()
        .map(|d| (d, if colored { spec.weight(d) } else { 1 }))
        .collect();
    let r = spec.rank() as u64;
    let max_h = (s.max(t) + r * n as u64) as usize;

    // completions[k][h]: ways to finish at t from height h in k steps.
    let mut completions: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_h + 1]; n + 1];
    if (t as usize) <= max_h {
        completions[0][t as usize] = BigUint::one();
    }
    for k in 1..=n {
        for h in 0..=max_h {
            let mut acc = BigUint::zero();
            for &(d, w) in &moves {
                let nh = h as i64 + i64::from(d);
                if nh < 0 || nh as usize > max_h {
                    continue;
                }
                let c = &completions[k - 1][nh as usize];
                if !c.is_zero() {
                    acc += c * w;
                }
            }
            completions[k][h] = acc;
        }
    }
    let total = completions[n][s as usize].clone();
    if total > BigUint::from(guard.max_paths) {
        return Err(PathError::GuardExceeded(format!(
            "{total} paths exceed the enumeration cap {}",
            guard.max_paths
        )));
    }

    if total.is_zero() {
        return Ok(Vec::new());
    }
    let spec = Arc::new(spec.clone());
    let mut out = Vec::with_capacity(total.try_into().unwrap_or(0usize));
    let mut stack: Vec<Step> = Vec::with_capacity(n);
    let ctx = Dfs {
        moves: &moves,
        completions: &completions,
        max_h,
    };
    ctx.walk(n, s as usize, &mut stack, &mut |steps| {
        out.push(ColoredPath {
            spec: spec.clone(),
            steps: steps.to_vec(),
            start_height: s,
        });
    });
    Ok(out)
}

struct Dfs<'a> {
    moves: &'a [(i32, u64)],
    completions: &'a [Vec<BigUint>],
    max_h: usize,
}

impl Dfs<'_> {
    fn walk(&self, left: usize, h: usize, stack: &mut Vec<Step>, emit: &mut impl FnMut(&[Step])) {
        if left == 0 {
            emit(stack);
            return;
        }
        for &(d, w) in self.moves {
            let nh = h as i64 + i64::from(d);
            if nh < 0 || nh as usize > self.max_h || self.completions[left - 1][nh as usize].is_zero()
            {
                continue;
            }
            for c in 1..=w as u32 {
                stack.push(Step::new(d, c));
                self.walk(left - 1, nh as usize, stack, emit);
                stack.pop();
            }
        }
    }
}

/// Product of the spec weights of the path's step types (colors ignored).
pub fn path_weight(path: &ColoredPath) -> BigUint {
    path.steps
        .iter()
        .fold(BigUint::one(), |acc, s| acc * path.spec.weight(s.displacement))
}

/// Up/down positions matched like parentheses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairMatching {
    pub pairs: Vec<(usize, usize)>,
}

fn require_rank_one_balanced(path: &ColoredPath) -> Result<(), PathError> {
    if path.spec.rank() != 1 {
        return Err(PathError::NotRankOne(path.spec.rank()));
    }
    if path.end_height() != path.start_height {
        return Err(PathError::UnbalancedPath(format!(
            "starts at height {} but ends at {}",
            path.start_height,
            path.end_height()
        )));
    }
    Ok(())
}

/// Pairs each up-step with the first down-step to its right at the same
/// height. Pairs are listed by up-step position.
pub fn find_pairs(path: &ColoredPath) -> Result<PairMatching, PathError> {
    require_rank_one_balanced(path)?;
    let mut open: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (i, s) in path.steps.iter().enumerate() {
        if s.is_up() {
            open.push(i);
        } else if s.is_down() {
            let u = open.pop().ok_or_else(|| {
                PathError::UnbalancedPath(format!("down-step {i} has no matching up-step"))
            })?;
            pairs.push((u, i));
        }
    }
    if let Some(u) = open.first() {
        return Err(PathError::UnbalancedPath(format!("up-step {u} is never closed")));
    }
    pairs.sort_unstable();
    Ok(PairMatching { pairs })
}

/// The `(u, l, d) -> (1, l, u*d)` recoloring: in every pair the up-step gets
/// color 1 and the down-step gets color `(c_up - 1) * d + c_down`.
pub fn recolor_bijection(path: &ColoredPath) -> Result<ColoredPath, PathError> {
    let matching = find_pairs(path)?;
    let spec = path.spec();
    let (u, l, d) = (spec.up(1), spec.level(), spec.down(1));
    let target = Arc::new(WeightSpec::rank1(1, l, u * d));
    let mut steps = path.steps.clone();
    for &(iu, id) in &matching.pairs {
        let cu = u64::from(path.steps[iu].color);
        let cd = u64::from(path.steps[id].color);
        steps[iu].color = 1;
        steps[id].color = ((cu - 1) * d + cd) as u32;
    }
    Ok(ColoredPath {
        spec: target,
        steps,
        start_height: path.start_height,
    })
}

/// Inverse of [`recolor_bijection`]; `original` supplies the split of `u*d`.
pub fn recolor_inverse(path: &ColoredPath, original: &WeightSpec) -> Result<ColoredPath, PathError> {
    if original.rank() != 1 {
        return Err(PathError::NotRankOne(original.rank()));
    }
    let (u, l, d) = (original.up(1), original.level(), original.down(1));
    let expected = WeightSpec::rank1(1, l, u * d);
    if *path.spec() != expected {
        return Err(PathError::InvalidSpec(format!(
            "path spec {} is not the recolored spec {expected}",
            path.spec()
        )));
    }
    let matching = find_pairs(path)?;
    let mut steps = path.steps.clone();
    for &(iu, id) in &matching.pairs {
        let c = u64::from(path.steps[id].color);
        let cu = c.div_ceil(d);
        steps[iu].color = cu as u32;
        steps[id].color = (c - (cu - 1) * d) as u32;
    }
    ColoredPath::new(Arc::new(original.clone()), steps, path.start_height)
}
