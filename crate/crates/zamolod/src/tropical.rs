//! Tropical T-system over exact rationals: evolution, periodicity,
//! delta-labeling degree oracles, mutation coloring, and the mutation-count
//! harness for the root-count conjecture.

use crate::biagram::DynkinBiagram;
use crate::exchange::Color;
use crate::tsystem::populated;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TropError {
    #[error("labeling length {0} does not match n = {1}")]
    LabelingLength(usize, usize),
    #[error("bad rational token `{0}`")]
    BadRational(String),
    #[error("states are not consecutive (t = {0} then {1})")]
    NotConsecutive(i64, i64),
}

/// A populated layer of the tropical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalState {
    pub t: i64,
    pub values: BTreeMap<usize, Rat>,
}

/// Which side of the max realized a mutation; ties are kept separate so
/// non-generic labelings are visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationColor {
    Gamma,
    Delta,
    Tie,
}

/// Initial layers `t_k(0) = t_k(1) = lambda_k`.
pub fn initial_states(
    bg: &DynkinBiagram,
    lambda: &[Rat],
) -> Result<(TropicalState, TropicalState), TropError> {
    if lambda.len() != bg.n() {
        return Err(TropError::LabelingLength(lambda.len(), bg.n()));
    }
    let mut s0 = TropicalState {
        t: 0,
        values: BTreeMap::new(),
    };
    let mut s1 = TropicalState {
        t: 1,
        values: BTreeMap::new(),
    };
    for k in 0..bg.n() {
        if populated(bg.eps()[k], 0) {
            s0.values.insert(k, lambda[k].clone());
        } else {
            s1.values.insert(k, lambda[k].clone());
        }
    }
    Ok((s0, s1))
}

/// One tropical step with per-vertex mutation colors.
pub fn trop_step(
    bg: &DynkinBiagram,
    prev: &TropicalState,
    cur: &TropicalState,
) -> Result<(TropicalState, Vec<(usize, MutationColor)>), TropError> {
    if cur.t != prev.t + 1 {
        return Err(TropError::NotConsecutive(prev.t, cur.t));
    }
    let n = bg.n();
    let t_next = cur.t + 1;
    let mut out = TropicalState {
        t: t_next,
        values: BTreeMap::new(),
    };
    let mut colors = Vec::new();
    for k in 0..n {
        if !populated(bg.eps()[k], t_next) {
            continue;
        }
        let mut gsum = Rat::zero();
        let mut dsum = Rat::zero();
        for i in 0..n {
            if bg.gamma()[i][k] != 0 {
                gsum += Rat::from(BigInt::from(bg.gamma()[i][k])) * &cur.values[&i];
            }
            if bg.delta()[i][k] != 0 {
                dsum += Rat::from(BigInt::from(bg.delta()[i][k])) * &cur.values[&i];
            }
        }
        let color = match gsum.cmp(&dsum) {
            std::cmp::Ordering::Greater => MutationColor::Gamma,
            std::cmp::Ordering::Less => MutationColor::Delta,
            std::cmp::Ordering::Equal => MutationColor::Tie,
        };
        let m = gsum.max(dsum);
        out.values.insert(k, m - &prev.values[&k]);
        colors.push((k, color));
    }
    Ok((out, colors))
}

/// Trajectory layers `0..=steps` with the mutation colors of each computed
/// entry, keyed by `(t, vertex)`.
pub fn trop_evolve(
    bg: &DynkinBiagram,
    lambda: &[Rat],
    steps: usize,
) -> Result<(Vec<TropicalState>, BTreeMap<(i64, usize), MutationColor>), TropError> {
    let (s0, s1) = initial_states(bg, lambda)?;
    let mut states = vec![s0, s1];
    let mut colors = BTreeMap::new();
    while states.len() <= steps {
        let m = states.len();
        let (next, cols) = trop_step(bg, &states[m - 2], &states[m - 1])?;
        for (k, c) in cols {
            colors.insert((next.t, k), c);
        }
        states.push(next);
    }
    states.truncate(steps + 1);
    Ok((states, colors))
}

/// Smallest `N <= max_n` with the two-layer state matching the initials.
pub fn trop_period(
    bg: &DynkinBiagram,
    lambda: &[Rat],
    max_n: u64,
) -> Result<Option<u64>, TropError> {
    let (s0, s1) = initial_states(bg, lambda)?;
    let mut prev = s0.clone();
    let mut cur = s1.clone();
    for big_n in 1..=max_n {
        for _ in 0..2 {
            let (next, _) = trop_step(bg, &prev, &cur)?;
            prev = cur;
            cur = next;
        }
        if prev.values == s0.values && cur.values == s1.values {
            return Ok(Some(big_n));
        }
    }
    Ok(None)
}

/// The standard basis labeling `delta_i`.
pub fn delta_labeling(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Tropical trajectories from every `delta_i`, with the summed degree
/// labelings `a_j^i` over one common period and their total `nu`.
pub struct DeltaOracle {
    /// `trajectories[i][t].values[j] = t_j^{delta_i}(t)`
    pub trajectories: Vec<Vec<TropicalState>>,
    /// common period used for the sums
    pub period: u64,
    /// `a[i][j] = sum_k t_j^{delta_i}(2k + eta_j)`
    pub a: Vec<Vec<Rat>>,
    /// `nu_j = sum_i a[i][j]`
    pub nu: Vec<Rat>,
}

/// Run the tropical system from each `delta_i`; `max_n` bounds the period
/// search (the catalog uses `h_gamma + h_delta` plus slack).
pub fn delta_labelings_oracle(
    bg: &DynkinBiagram,
    max_n: u64,
) -> Result<Option<DeltaOracle>, TropError> {
    let n = bg.n();
    let mut periods = Vec::with_capacity(n);
    for i in 0..n {
        match trop_period(bg, &delta_labeling(n, i), max_n)? {
            Some(p) => periods.push(p),
            None => return Ok(None),
        }
    }
    let lcm = periods
        .iter()
        .fold(1u64, |acc, &p| num_integer::lcm(acc, p));
    let steps = (2 * lcm + 1) as usize;
    let mut trajectories = Vec::with_capacity(n);
    for i in 0..n {
        let (states, _) = trop_evolve(bg, &delta_labeling(n, i), steps)?;
        trajectories.push(states);
    }
    let eta = |j: usize| match bg.eps()[j] {
        Color::White => 0usize,
        Color::Black => 1usize,
    };
    let mut a = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Rat::zero();
            for k in 0..lcm {
                s += trajectories[i][2 * k as usize + eta(j)].values[&j].clone();
            }
            a[i][j] = s;
        }
    }
    let mut nu = vec![Rat::zero(); n];
    for j in 0..n {
        for i in 0..n {
            nu[j] += a[i][j].clone();
        }
    }
    Ok(Some(DeltaOracle {
        trajectories,
        period: lcm,
        a,
        nu,
    }))
}

/// Mutation-count totals over one full period of `periods` exchange steps
/// starting right after the initial layers.
pub fn count_mutations(
    bg: &DynkinBiagram,
    lambda: &[Rat],
    period: u64,
) -> Result<(u64, u64, u64), TropError> {
    let steps = (2 * period + 1) as usize;
    let (_, colors) = trop_evolve(bg, lambda, steps)?;
    let (mut g, mut d, mut tie) = (0, 0, 0);
    for ((t, _), c) in &colors {
        if *t < 2 || *t > 2 * period as i64 + 1 {
            continue;
        }
        match c {
            MutationColor::Gamma => g += 1,
            MutationColor::Delta => d += 1,
            MutationColor::Tie => tie += 1,
        }
    }
    Ok((g, d, tie))
}

/// Parse a comma-separated rational labeling, or `eK` for a basis vector.
pub fn parse_lambda(s: &str, n: usize) -> Result<Vec<Rat>, TropError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('e') {
        if let Ok(k) = rest.parse::<usize>() {
            if k >= 1 && k <= n {
                return Ok(delta_labeling(n, k - 1));
            }
            return Err(TropError::BadRational(format!(
                "e{k} out of range for n = {n}"
            )));
        }
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(TropError::LabelingLength(parts.len(), n));
    }
    parts
        .iter()
        .map(|tok| {
            let tok = tok.trim();
            let parse_int = |x: &str| {
                x.parse::<BigInt>()
                    .map_err(|_| TropError::BadRational(tok.into()))
            };
            if let Some((num, den)) = tok.split_once('/') {
                Ok(Rat::new(parse_int(num.trim())?, parse_int(den.trim())?))
            } else {
                Ok(Rat::from(parse_int(tok)?))
            }
        })
        .collect()
}

/// Seeded random rational labelings with numerators in [-20, 20] and
/// denominators in [1, 10].
pub fn random_lambda(n: usize, rng: &mut impl rand::Rng) -> Vec<Rat> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-20..=20);
            let den: i64 = rng.gen_range(1..=10);
            Rat::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Render the evolution as rows `t = 0..rows-1`, one column per vertex,
/// with blanks at unpopulated cells.
pub fn format_table(bg: &DynkinBiagram, states: &[TropicalState]) -> String {
    let n = bg.n();
    let mut out = String::new();
    let fmt = |r: &Rat| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    let mut widths = vec![2; n];
    for s in states {
        for (&k, v) in &s.values {
            widths[k] = widths[k].max(fmt(v).len());
        }
    }
    let twidth = states
        .iter()
        .map(|s| s.t.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2);
    out.push_str(&format!("{:>tw$} ", "t", tw = twidth));
    for (k, w) in widths.iter().enumerate() {
        out.push_str(&format!(" {:>w$}", format!("k{}", k + 1), w = *w));
    }
    out.push('\n');
    for s in states {
        out.push_str(&format!("{:>tw$} ", s.t, tw = twidth));
        for (k, w) in widths.iter().enumerate() {
            match s.values.get(&k) {
                Some(v) => out.push_str(&format!(" {:>w$}", fmt(v), w = *w)),
                None => out.push_str(&format!(" {:>w$}", "", w = *w)),
            }
        }
        out.push('\n');
    }
    out
}
