//! Bipartite skew-symmetrizable exchange matrices and their mutations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Vertex color of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "w")]
    White,
    #[serde(rename = "b")]
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExchangeError {
    #[error("vertex index {0} out of range (n = {1})")]
    IndexOutOfRange(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry b[{0}][{0}] is nonzero")]
    NonzeroDiagonal(usize),
    #[error("matrix is not bipartite for the given coloring: b[{0}][{1}] != 0 with equal colors")]
    NotBipartite(usize, usize),
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("support graph has an odd cycle; no bipartition exists")]
    OddCycle,
    #[error("eps length {0} does not match n = {1}")]
    EpsLength(usize, usize),
}

/// A bipartite skew-symmetrizable integer matrix with its coloring.
///
/// Entries are arbitrary-precision: catalog weights stay below 3 but mutation
/// of user input can grow them. The bipartition is stored, not inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<Vec<BigInt>>,
    eps: Vec<Color>,
}

/// The unsigned/signed splitting `B = gamma_signed + delta_signed`,
/// `gamma = |gamma_signed|`, `delta = |delta_signed|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDecomposition {
    pub gamma_signed: Vec<Vec<BigInt>>,
    pub delta_signed: Vec<Vec<BigInt>>,
    pub gamma: Vec<Vec<BigInt>>,
    pub delta: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct ExchangeJson {
    n: usize,
    b: Vec<Vec<i64>>,
    eps: Vec<Color>,
}

impl ExchangeMatrix {
    /// Validating constructor: square, zero diagonal, bipartite under `eps`,
    /// and skew-symmetrizable (checked constructively via `find_symmetrizer`).
    pub fn new(b: Vec<Vec<BigInt>>, eps: Vec<Color>) -> Result<Self, ExchangeError> {
        let n = b.len();
        if b.iter().any(|row| row.len() != n) {
            return Err(ExchangeError::NotSquare);
        }
        if eps.len() != n {
            return Err(ExchangeError::EpsLength(eps.len(), n));
        }
        let m = ExchangeMatrix { n, b, eps };
        for i in 0..n {
            if !m.b[i][i].is_zero() {
                return Err(ExchangeError::NonzeroDiagonal(i));
            }
        }
        m.check_bipartite()?;
        if m.find_symmetrizer().is_none() {
            return Err(ExchangeError::NotSkewSymmetrizable);
        }
        Ok(m)
    }

    pub fn from_i64(b: &[Vec<i64>], eps: Vec<Color>) -> Result<Self, ExchangeError> {
        let big = b
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(big, eps)
    }

    /// Internal constructor for values produced by operations that preserve
    /// skew-symmetrizability (mutation, folding).
    pub(crate) fn from_parts(b: Vec<Vec<BigInt>>, eps: Vec<Color>) -> Self {
        let n = b.len();
        ExchangeMatrix { n, b, eps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Vec<Vec<BigInt>> {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.b[i][j]
    }

    pub fn eps(&self) -> &[Color] {
        &self.eps
    }

    pub fn check_bipartite(&self) -> Result<(), ExchangeError> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.eps[i] == self.eps[j] && !self.b[i][j].is_zero() {
                    return Err(ExchangeError::NotBipartite(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_bipartite(&self) -> bool {
        self.check_bipartite().is_ok()
    }

    /// 2-color the support graph; fails on odd cycles. Vertex 0 is white.
    pub fn infer_bipartition(b: &[Vec<BigInt>]) -> Result<Vec<Color>, ExchangeError> {
        let n = b.len();
        let mut color: Vec<Option<Color>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Color::White);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let ci = color[i].unwrap();
                for j in 0..n {
                    if b[i][j].is_zero() && b[j][i].is_zero() {
                        continue;
                    }
                    match color[j] {
                        None => {
                            color[j] = Some(ci.flip());
                            queue.push_back(j);
                        }
                        Some(cj) if cj == ci => return Err(ExchangeError::OddCycle),
                        _ => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Matrix mutation at vertex `k` (0-based). An involution.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ExchangeError> {
        if k >= self.n {
            return Err(ExchangeError::IndexOutOfRange(k, self.n));
        }
        let n = self.n;
        let mut out = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    out[i][j] = -&self.b[i][j];
                } else if self.b[i][k].is_positive() && self.b[k][j].is_positive() {
                    out[i][j] = &self.b[i][j] + &self.b[i][k] * &self.b[k][j];
                } else if self.b[i][k].is_negative() && self.b[k][j].is_negative() {
                    out[i][j] = &self.b[i][j] - &self.b[i][k] * &self.b[k][j];
                }
            }
        }
        Ok(ExchangeMatrix::from_parts(out, self.eps.clone()))
    }

    /// Composite mutation at every vertex of one color. Requires `self`
    /// bipartite, which makes the per-vertex order irrelevant.
    pub fn bipartite_mutate(&self, color: Color) -> Result<ExchangeMatrix, ExchangeError> {
        self.check_bipartite()?;
        let mut m = self.clone();
        for k in 0..self.n {
            if self.eps[k] == color {
                m = m.mutate(k)?;
            }
        }
        Ok(m)
    }

    /// `true` iff both bipartite mutations negate the matrix.
    pub fn is_recurrent(&self) -> Result<bool, ExchangeError> {
        let neg: Vec<Vec<BigInt>> = self
            .b
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        let w = self.bipartite_mutate(Color::White)?;
        if w.b != neg {
            return Ok(false);
        }
        let k = self.bipartite_mutate(Color::Black)?;
        Ok(k.b == neg)
    }

    /// Split `B` into the signed red/blue parts according to the coloring.
    pub fn decompose(&self) -> SignedDecomposition {
        let n = self.n;
        let zero = || vec![vec![BigInt::zero(); n]; n];
        let (mut gs, mut ds) = (zero(), zero());
        for i in 0..n {
            for j in 0..n {
                let b = &self.b[i][j];
                if b.is_zero() {
                    continue;
                }
                let head_white = self.eps[i] == Color::White && self.eps[j] == Color::Black;
                // Gamma takes entries positive from white rows (and their
                // negative black-row mirrors); Delta takes the rest.
                let in_gamma = (b.is_positive() && head_white) || (b.is_negative() && !head_white);
                if in_gamma {
                    gs[i][j] = b.clone();
                } else {
                    ds[i][j] = b.clone();
                }
            }
        }
        let abs = |m: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            m.iter()
                .map(|r| r.iter().map(|x| x.abs()).collect())
                .collect()
        };
        SignedDecomposition {
            gamma: abs(&gs),
            delta: abs(&ds),
            gamma_signed: gs,
            delta_signed: ds,
        }
    }

    /// Rebuild the signed matrix from unsigned `(gamma, delta)` and a coloring.
    pub fn recompose(gamma: &[Vec<i64>], delta: &[Vec<i64>], eps: &[Color]) -> Vec<Vec<BigInt>> {
        let n = gamma.len();
        let mut b = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if gamma[i][j] != 0 {
                    let sign: i64 = if eps[i] == Color::White { 1 } else { -1 };
                    b[i][j] = BigInt::from(sign * gamma[i][j]);
                } else if delta[i][j] != 0 {
                    let sign: i64 = if eps[i] == Color::Black { 1 } else { -1 };
                    b[i][j] = BigInt::from(sign * delta[i][j]);
                }
            }
        }
        b
    }

    /// A positive vector `c` with `c_i b_ij = -c_j b_ji`, normalized so the
    /// minimum entry is 1, or `None` if no such vector exists.
    ///
    /// Ratio constraints are propagated breadth-first over the support graph
    /// and every pair is verified afterwards, so the result is a certificate.
    pub fn find_symmetrizer(&self) -> Option<Vec<BigRational>> {
        let n = self.n;
        let mut c: Vec<Option<BigRational>> = vec![None; n];
        for start in 0..n {
            if c[start].is_some() {
                continue;
            }
            c[start] = Some(BigRational::one());
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let ci = c[i].clone().unwrap();
                for j in 0..n {
                    if self.b[i][j].is_zero() && self.b[j][i].is_zero() {
                        continue;
                    }
                    // c_i b_ij = -c_j b_ji forces c_j = -c_i b_ij / b_ji.
                    if self.b[j][i].is_zero() || self.b[i][j].is_zero() {
                        return None;
                    }
                    let cj = -(ci.clone()
                        * BigRational::new(self.b[i][j].clone(), self.b[j][i].clone()));
                    if cj <= BigRational::zero() {
                        return None;
                    }
                    match &c[j] {
                        None => {
                            c[j] = Some(cj);
                            queue.push_back(j);
                        }
                        Some(prev) => {
                            if *prev != cj {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        let c: Vec<BigRational> = c.into_iter().map(|x| x.unwrap()).collect();
        // Verify every pair.
        for i in 0..n {
            for j in 0..n {
                let lhs = &c[i] * BigRational::from(self.b[i][j].clone());
                let rhs = -(&c[j] * BigRational::from(self.b[j][i].clone()));
                if lhs != rhs {
                    return None;
                }
            }
        }
        let min = c.iter().min().cloned()?;
        Some(c.into_iter().map(|x| x / min.clone()).collect())
    }

    pub fn to_json(&self) -> Result<serde_json::Value, ExchangeError> {
        let b: Vec<Vec<i64>> = self
            .b
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        use num_traits::ToPrimitive;
                        x.to_i64().ok_or(ExchangeError::NotSkewSymmetrizable)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ExchangeError::NotSquare)?;
        Ok(serde_json::json!({ "n": self.n, "b": b, "eps": self.eps }))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let parsed: ExchangeJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        if parsed.b.len() != parsed.n {
            return Err(format!(
                "matrix has {} rows, expected n = {}",
                parsed.b.len(),
                parsed.n
            ));
        }
        Self::from_i64(&parsed.b, parsed.eps).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The five-vertex bipartite recurrent sample (B3 bowtie_1 G2).
    pub fn sample_b() -> ExchangeMatrix {
        let b = vec![
            vec![0, -1, 0, 0, 1],
            vec![1, 0, 1, -1, 0],
            vec![0, -2, 0, 0, 2],
            vec![0, 3, 0, 0, -3],
            vec![-1, 0, -1, 1, 0],
        ];
        let eps = vec![
            Color::Black,
            Color::White,
            Color::Black,
            Color::Black,
            Color::White,
        ];
        ExchangeMatrix::from_i64(&b, eps).unwrap()
    }

    #[test]
    fn mutate_a2_flips_signs() {
        let m =
            ExchangeMatrix::from_i64(&[vec![0, 1], vec![-1, 0]], vec![Color::White, Color::Black])
                .unwrap();
        let got = m.mutate(0).unwrap();
        assert_eq!(got.entry(0, 1), &BigInt::from(-1));
        assert_eq!(got.entry(1, 0), &BigInt::from(1));
    }

    #[test]
    fn mutation_is_involution() {
        let m = sample_b();
        for k in 0..5 {
            assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m);
        }
    }

    #[test]
    fn white_mutation_keeps_black_block_zero() {
        let m = sample_b();
        let w = m.bipartite_mutate(Color::White).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if m.eps()[i] == Color::Black && m.eps()[j] == Color::Black {
                    assert!(w.entry(i, j).is_zero(), "entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn white_order_independence() {
        let m = sample_b();
        // White vertices are 1 and 4 (0-based); mutate in both orders.
        let a = m.mutate(1).unwrap().mutate(4).unwrap();
        let b = m.mutate(4).unwrap().mutate(1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_is_recurrent_and_negates() {
        let m = sample_b();
        let w = m.bipartite_mutate(Color::White).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(w.entry(i, j), &(-m.entry(i, j)));
            }
        }
        assert!(m.is_recurrent().unwrap());
        let double = w.bipartite_mutate(Color::Black).unwrap();
        assert_eq!(double, m);
    }

    #[test]
    fn decompose_splits_the_sample() {
        let m = sample_b();
        let d = m.decompose();
        let gamma_signed = vec![
            vec![0, -1, 0, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![0, -2, 0, 0, 0],
            vec![0, 0, 0, 0, -3],
            vec![0, 0, 0, 1, 0],
        ];
        let delta_signed = vec![
            vec![0, 0, 0, 0, 1],
            vec![0, 0, 0, -1, 0],
            vec![0, 0, 0, 0, 2],
            vec![0, 3, 0, 0, 0],
            vec![-1, 0, -1, 0, 0],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(
                    d.gamma_signed[i][j],
                    BigInt::from(gamma_signed[i][j]),
                    "gamma ({i},{j})"
                );
                assert_eq!(
                    d.delta_signed[i][j],
                    BigInt::from(delta_signed[i][j]),
                    "delta ({i},{j})"
                );
                assert_eq!(
                    &d.gamma_signed[i][j] + &d.delta_signed[i][j],
                    *m.entry(i, j),
                    "sum ({i},{j})"
                );
                assert!(d.gamma[i][j].is_zero() || d.delta[i][j].is_zero());
            }
        }
    }

    #[test]
    fn decompose_zero_matrix() {
        let m =
            ExchangeMatrix::from_i64(&[vec![0, 0], vec![0, 0]], vec![Color::White, Color::Black])
                .unwrap();
        let d = m.decompose();
        assert!(d.gamma_signed.iter().flatten().all(|x| x.is_zero()));
        assert!(d.delta_signed.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn recompose_inverts_decompose() {
        let m = sample_b();
        let d = m.decompose();
        let to_i64 = |mm: &Vec<Vec<BigInt>>| -> Vec<Vec<i64>> {
            use num_traits::ToPrimitive;
            mm.iter()
                .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
                .collect()
        };
        let b = ExchangeMatrix::recompose(&to_i64(&d.gamma), &to_i64(&d.delta), m.eps());
        assert_eq!(&b, m.entries());
    }

    #[test]
    fn symmetrizer_on_skew_symmetric_is_ones() {
        let m =
            ExchangeMatrix::from_i64(&[vec![0, 1], vec![-1, 0]], vec![Color::White, Color::Black])
                .unwrap();
        let c = m.find_symmetrizer().unwrap();
        assert!(c.iter().all(|x| x.is_one()));
    }

    #[test]
    fn symmetrizer_of_the_sample() {
        // b_23 = 1, b_32 = -2 forces c_2 = 2 c_3.
        let m = sample_b();
        let c = m.find_symmetrizer().unwrap();
        assert_eq!(c[1], c[2].clone() * BigRational::from(BigInt::from(2)));
        assert_eq!(*c.iter().min().unwrap(), BigRational::one());
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(
                    &c[i] * BigRational::from(m.entry(i, j).clone()),
                    -(&c[j] * BigRational::from(m.entry(j, i).clone()))
                );
            }
        }
    }

    #[test]
    fn sign_violating_matrix_has_no_symmetrizer() {
        // [[0,1],[1,0]] needs c1 = -c2, impossible with positive entries.
        let b = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        let m = ExchangeMatrix::from_parts(b, vec![Color::White, Color::Black]);
        assert!(m.find_symmetrizer().is_none());
        assert!(ExchangeMatrix::new(m.b.clone(), m.eps.clone()).is_err());
    }

    #[test]
    fn infer_bipartition_rejects_odd_cycles() {
        let tri = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)],
        ];
        assert_eq!(
            ExchangeMatrix::infer_bipartition(&tri),
            Err(ExchangeError::OddCycle)
        );
        let path = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(0)],
        ];
        let eps = ExchangeMatrix::infer_bipartition(&path).unwrap();
        assert_eq!(eps, vec![Color::White, Color::Black, Color::White]);
    }
}
