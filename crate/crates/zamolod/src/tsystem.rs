//! Exact birational T-system evolution under the split condition,
//! periodicity detection, and per-variable degree bookkeeping.

use crate::biagram::DynkinBiagram;
use crate::exchange::Color;
use crate::laurent::{LaurentError, LaurentPoly};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TsysError {
    #[error("laurent arithmetic: {0}")]
    Laurent(#[from] LaurentError),
    #[error("desk-scale guard: {0}")]
    DeskScale(String),
    #[error("states are not consecutive (t = {0} then {1})")]
    NotConsecutive(i64, i64),
}

/// A populated layer of the split T-system: entries exist only for the
/// vertices whose color matches the parity of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TState {
    pub t: i64,
    pub values: BTreeMap<usize, LaurentPoly>,
}

/// Whether vertex color `eps` carries a value at time `t`.
pub fn populated(eps: Color, t: i64) -> bool {
    match eps {
        Color::White => t.rem_euclid(2) == 0,
        Color::Black => t.rem_euclid(2) == 1,
    }
}

/// The two seed layers `T_k(0) = T_k(1) = x_k`.
pub fn initial_states(bg: &DynkinBiagram) -> (TState, TState) {
    let n = bg.n();
    let mut s0 = TState {
        t: 0,
        values: BTreeMap::new(),
    };
    let mut s1 = TState {
        t: 1,
        values: BTreeMap::new(),
    };
    for k in 0..n {
        let x = LaurentPoly::var(n, k);
        if populated(bg.eps()[k], 0) {
            s0.values.insert(k, x);
        } else {
            s1.values.insert(k, x);
        }
    }
    (s0, s1)
}

const MAX_RANK: usize = 16;
const MAX_TERMS: usize = 1_000_000;

/// One exchange step: every vertex populated at `cur.t + 1` gets
/// `(Gamma-monomial + Delta-monomial) / T_k(t-1)`, divided exactly.
/// An `InexactDivision` here means the Laurent phenomenon was violated,
/// i.e. an implementation bug.
pub fn step(bg: &DynkinBiagram, prev: &TState, cur: &TState) -> Result<TState, TsysError> {
    if cur.t != prev.t + 1 {
        return Err(TsysError::NotConsecutive(prev.t, cur.t));
    }
    let n = bg.n();
    if n > MAX_RANK {
        return Err(TsysError::DeskScale(format!(
            "rank {n} exceeds the birational limit {MAX_RANK}; use the tropical system"
        )));
    }
    let t_next = cur.t + 1;
    let mut out = TState {
        t: t_next,
        values: BTreeMap::new(),
    };
    for k in 0..n {
        if !populated(bg.eps()[k], t_next) {
            continue;
        }
        let mut gprod = LaurentPoly::one(n);
        let mut dprod = LaurentPoly::one(n);
        for i in 0..n {
            for _ in 0..bg.gamma()[i][k] {
                gprod = gprod.mul(&cur.values[&i])?;
            }
            for _ in 0..bg.delta()[i][k] {
                dprod = dprod.mul(&cur.values[&i])?;
            }
        }
        let num = gprod.add(&dprod)?;
        let val = num.exact_div(&prev.values[&k])?;
        if val.num_terms() > MAX_TERMS {
            return Err(TsysError::DeskScale(format!(
                "entry T_{}({t_next}) has {} terms",
                k + 1,
                val.num_terms()
            )));
        }
        out.values.insert(k, val);
    }
    Ok(out)
}

/// Layers `0..=steps` of the trajectory.
pub fn evolve(bg: &DynkinBiagram, steps: usize) -> Result<Vec<TState>, TsysError> {
    let (s0, s1) = initial_states(bg);
    let mut states = vec![s0, s1];
    while states.len() <= steps {
        let next = {
            let m = states.len();
            step(bg, &states[m - 2], &states[m - 1])?
        };
        states.push(next);
    }
    states.truncate(steps + 1);
    Ok(states)
}

/// Residual of the defining relation at layer `t`:
/// `T_k(t+1) T_k(t-1) - (Gamma-monomial + Delta-monomial)` must vanish.
pub fn exchange_relation_residual(
    bg: &DynkinBiagram,
    states: &[TState],
    t: usize,
) -> Result<bool, TsysError> {
    let n = bg.n();
    for (&k, next) in &states[t + 1].values {
        let mut gprod = LaurentPoly::one(n);
        let mut dprod = LaurentPoly::one(n);
        for i in 0..n {
            for _ in 0..bg.gamma()[i][k] {
                gprod = gprod.mul(&states[t].values[&i])?;
            }
            for _ in 0..bg.delta()[i][k] {
                dprod = dprod.mul(&states[t].values[&i])?;
            }
        }
        let lhs = next.mul(&states[t - 1].values[&k])?;
        let rhs = gprod.add(&dprod)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `N <= max_n` with layers `(2N, 2N+1)` equal to `(0, 1)`.
/// Determinism of the second-order recurrence makes the two-layer match
/// sufficient.
pub fn detect_period(bg: &DynkinBiagram, max_n: u64) -> Result<Option<u64>, TsysError> {
    let (s0, s1) = initial_states(bg);
    let mut prev = s0.clone();
    let mut cur = s1.clone();
    for big_n in 1..=max_n {
        for _ in 0..2 {
            let next = step(bg, &prev, &cur)?;
            prev = cur;
            cur = next;
        }
        if prev.values == s0.values && cur.values == s1.values {
            return Ok(Some(big_n));
        }
    }
    Ok(None)
}

/// Extremal degrees of `x_i` across one layer: `j -> (deg_max, deg_min)`.
pub fn degree_matrix(states: &[TState], i: usize, t: usize) -> BTreeMap<usize, (i32, i32)> {
    let mut out = BTreeMap::new();
    for (&j, p) in &states[t].values {
        let hi = p.deg_max(i).expect("trajectory entries are nonzero");
        let lo = p.deg_min(i).expect("trajectory entries are nonzero");
        out.insert(j, (hi, lo));
    }
    out
}
