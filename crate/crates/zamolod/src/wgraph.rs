//! I-labeled graphs, Hecke generator matrices over a formal square root of
//! q, the Chebyshev-style polynomial test for dihedral cells, and the
//! four-labeling construction of product cells from admissible biagrams.

use crate::biagram::DynkinBiagram;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WgraphError {
    #[error("tau propagation conflict at vertex {0}")]
    PropagationConflict(usize),
    #[error("seed tau {0:?} is not one of the admitted labelings")]
    BadSeed(Vec<u8>),
    #[error("relation {relation} fails at matrix entry ({row},{col}): {lhs} != {rhs}")]
    RelationFailure {
        relation: String,
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
}

/// Integer polynomials in one variable `v` with `q = v^2`; coefficients
/// indexed by degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VPoly {
    pub coeffs: Vec<BigInt>,
}

impl VPoly {
    pub fn zero() -> VPoly {
        VPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> VPoly {
        let c = c.into();
        if c.is_zero() {
            VPoly::zero()
        } else {
            VPoly { coeffs: vec![c] }
        }
    }

    /// `c * v^k`
    pub fn term(c: impl Into<BigInt>, k: usize) -> VPoly {
        let c = c.into();
        if c.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        VPoly { coeffs }
    }

    /// `q = v^2`
    pub fn q() -> VPoly {
        VPoly::term(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> VPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, o: &VPoly) -> VPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(o.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        VPoly { coeffs }.trim()
    }

    pub fn neg(&self) -> VPoly {
        VPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &VPoly) -> VPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &VPoly) -> VPoly {
        if self.is_zero() || o.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        VPoly { coeffs }.trim()
    }

    /// Coefficient of `v^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*v")?,
                _ => write!(f, "{c}*v^{k}")?,
            }
        }
        Ok(())
    }
}

type PolyMatrix = Vec<Vec<VPoly>>;

fn zeros(n: usize) -> PolyMatrix {
    vec![vec![VPoly::zero(); n]; n]
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

fn mat_sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].sub(&b[i][j]);
        }
    }
    out
}

fn first_nonzero(m: &PolyMatrix) -> Option<(usize, usize)> {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// The polynomial family with `phi_0 = 0`, `phi_1 = 1`,
/// `phi_{r+1}(t) = t phi_r(t) - phi_{r-1}(t)`; degree `p - 1` with roots
/// `2 cos(k pi / p)`.
pub fn phi(p: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![];
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    if p == 0 {
        return prev;
    }
    for _ in 1..p {
        // next = t * cur - prev
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

pub fn phi_eval_f64(p: usize, x: f64) -> f64 {
    // Evaluate through the recurrence itself; the monomial expansion
    // cancels catastrophically near the roots.
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    for _ in 1..p {
        (prev, cur) = (cur, x * cur - prev);
    }
    if p == 0 {
        0.0
    } else {
        cur
    }
}

/// Evaluate `phi_p` at an integer matrix via the recurrence
/// `M_{r+1} = m M_r - M_{r-1}`.
pub fn phi_matrix(m: &[Vec<i64>], p: usize) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let big = |x: i64| BigInt::from(x);
    let mut prev = vec![vec![BigInt::zero(); n]; n];
    let mut cur: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for _ in 1..p {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for k in 0..n {
                    s += big(m[i][k]) * &cur[k][j];
                }
                next[i][j] = s - &prev[i][j];
            }
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn strongly_connected(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    if n == 0 {
        return false;
    }
    let reach = |forward: bool| -> usize {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let edge = if forward { m[i][j] != 0 } else { m[j][i] != 0 };
                if edge && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().filter(|&&x| x).count()
    };
    reach(true) == n && reach(false) == n
}

/// Dihedral-cell test: a strongly connected nonnegative adjacency matrix is
/// an `I_2(p)` cell exactly when `phi_p` annihilates it.
pub fn is_i2p_cell(adjacency: &[Vec<i64>], p: usize) -> bool {
    if !strongly_connected(adjacency) {
        return false;
    }
    phi_matrix(adjacency, p)
        .iter()
        .flatten()
        .all(|x| x.is_zero())
}

/// An I-labeled graph over generators 1..4 (or 1..2) with polynomial edge
/// weights and tau-invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct CellGraph {
    pub n: usize,
    pub m: PolyMatrix,
    pub tau: Vec<BTreeSet<u8>>,
}

impl CellGraph {
    /// Reduced: no edge from `u` into a vertex whose tau contains `tau(u)`.
    pub fn is_reduced(&self) -> bool {
        for u in 0..self.n {
            for v in 0..self.n {
                if !self.m[u][v].is_zero() && self.tau[u].is_subset(&self.tau[v]) {
                    return false;
                }
            }
        }
        true
    }

    /// The Hecke generator `T_i` as a matrix acting on column vectors:
    /// entry `(w, u)` is the coefficient of `w` in `T_i(u)`.
    pub fn hecke_generator(&self, i: u8) -> PolyMatrix {
        let mut t = zeros(self.n);
        for u in 0..self.n {
            if !self.tau[u].contains(&i) {
                t[u][u] = VPoly::q();
            } else {
                t[u][u] = VPoly::constant(-1);
                for w in 0..self.n {
                    if w != u && !self.tau[w].contains(&i) && !self.m[u][w].is_zero() {
                        t[w][u] = t[w][u].add(&VPoly::term(1, 1).mul(&self.m[u][w]));
                    }
                }
            }
        }
        t
    }
}

/// Build the product cell for an admissible biagram: the seed tau at
/// vertex 0 propagates over red edges by the 1<->2 swap and over blue
/// edges by the 3<->4 swap. When one side is trivial the seed uses the
/// corresponding degenerate labelings and only the live side propagates.
pub fn build_product_cell(bg: &DynkinBiagram, seed_tau: &[u8]) -> Result<CellGraph, WgraphError> {
    let n = bg.n();
    let seed: BTreeSet<u8> = seed_tau.iter().copied().collect();
    let gamma_trivial = bg.gamma().iter().flatten().all(|&x| x == 0);
    let delta_trivial = bg.delta().iter().flatten().all(|&x| x == 0);
    let admitted: Vec<BTreeSet<u8>> = if delta_trivial && !gamma_trivial {
        [vec![1u8], vec![2], vec![1, 3, 4], vec![2, 3, 4]]
    } else if gamma_trivial && !delta_trivial {
        [vec![3u8], vec![4], vec![1, 2, 3], vec![1, 2, 4]]
    } else {
        [vec![1u8, 3], vec![2, 3], vec![1, 4], vec![2, 4]]
    }
    .into_iter()
    .map(|v| v.into_iter().collect())
    .collect();
    if !admitted.contains(&seed) {
        return Err(WgraphError::BadSeed(seed_tau.to_vec()));
    }

    let swap = |s: &BTreeSet<u8>, a: u8, b: u8| -> BTreeSet<u8> {
        s.iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect()
    };

    let mut tau: Vec<Option<BTreeSet<u8>>> = vec![None; n];
    tau[0] = Some(seed);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let tu = tau[u].clone().unwrap();
        for v in 0..n {
            let via_gamma = bg.gamma()[u][v] != 0;
            let via_delta = bg.delta()[u][v] != 0;
            if !via_gamma && !via_delta {
                continue;
            }
            let expected = if via_gamma {
                swap(&tu, 1, 2)
            } else {
                swap(&tu, 3, 4)
            };
            match &tau[v] {
                None => {
                    tau[v] = Some(expected);
                    queue.push_back(v);
                }
                Some(existing) => {
                    if *existing != expected {
                        return Err(WgraphError::PropagationConflict(v));
                    }
                }
            }
        }
    }
    let tau: Vec<BTreeSet<u8>> = tau
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or(WgraphError::PropagationConflict(v)))
        .collect::<Result<_, _>>()?;

    let mut m = zeros(n);
    for u in 0..n {
        for v in 0..n {
            let w = bg.gamma()[u][v] + bg.delta()[u][v];
            if w != 0 {
                m[u][v] = VPoly::constant(w);
            }
        }
    }
    Ok(CellGraph { n, m, tau })
}

/// Outcome of the full relation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeReport {
    pub relations_checked: Vec<String>,
}

fn check_zero(m: &PolyMatrix, relation: &str) -> Result<(), WgraphError> {
    if let Some((i, j)) = first_nonzero(m) {
        return Err(WgraphError::RelationFailure {
            relation: relation.to_string(),
            row: i,
            col: j,
            lhs: m[i][j].to_string(),
            rhs: "0".to_string(),
        });
    }
    Ok(())
}

fn alternating(a: &PolyMatrix, b: &PolyMatrix, len: usize) -> PolyMatrix {
    let mut out: Option<PolyMatrix> = None;
    for k in 0..len {
        let factor = if k % 2 == 0 { a } else { b };
        out = Some(match out {
            None => factor.clone(),
            Some(acc) => mat_mul(&acc, factor),
        });
    }
    out.expect("braid length is at least 1")
}

/// Check the quadratic relations, the four cross commutators, and the two
/// braid relations of `I_2(p) x I_2(q)` on the generator matrices built
/// from the cell.
pub fn verify_hecke_relations(
    cell: &CellGraph,
    p: usize,
    q_order: usize,
) -> Result<HeckeReport, WgraphError> {
    let n = cell.n;
    let ts: Vec<PolyMatrix> = (1..=4).map(|i| cell.hecke_generator(i)).collect();
    let mut checked = Vec::new();
    let qpoly = VPoly::q();
    // (T_i - q)(T_i + 1) = 0  <=>  T_i^2 = (q - 1) T_i + q I.
    for (idx, t) in ts.iter().enumerate() {
        let tt = mat_mul(t, t);
        let mut rhs = zeros(n);
        let qm1 = qpoly.sub(&VPoly::constant(1));
        for i in 0..n {
            for j in 0..n {
                rhs[i][j] = qm1.mul(&t[i][j]);
            }
            rhs[i][i] = rhs[i][i].add(&qpoly);
        }
        check_zero(&mat_sub(&tt, &rhs), &format!("quadratic T{}", idx + 1))?;
        checked.push(format!("quadratic T{}", idx + 1));
    }
    // Cross commutators between the two dihedral factors.
    for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        let ab = mat_mul(&ts[a], &ts[b]);
        let ba = mat_mul(&ts[b], &ts[a]);
        check_zero(
            &mat_sub(&ab, &ba),
            &format!("commutator [T{},T{}]", a + 1, b + 1),
        )?;
        checked.push(format!("commutator [T{},T{}]", a + 1, b + 1));
    }
    // Braid relations: alternating products of the dihedral orders.
    let b12 = mat_sub(
        &alternating(&ts[0], &ts[1], p),
        &alternating(&ts[1], &ts[0], p),
    );
    check_zero(&b12, &format!("braid (T1 T2 ...)_{p}"))?;
    checked.push(format!("braid (T1 T2 ...)_{p}"));
    let b34 = mat_sub(
        &alternating(&ts[2], &ts[3], q_order),
        &alternating(&ts[3], &ts[2], q_order),
    );
    check_zero(&b34, &format!("braid (T3 T4 ...)_{q_order}"))?;
    checked.push(format!("braid (T3 T4 ...)_{q_order}"));
    Ok(HeckeReport {
        relations_checked: checked,
    })
}
