//! Sparse multivariate Laurent polynomials over big integers.
//!
//! These are the state entries of the birational T-system. Terms are kept in
//! a `BTreeMap` keyed by exponent vector, so equal polynomials always have
//! identical term maps and serialization is canonical.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Errors from Laurent arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    /// The divisor does not divide the dividend in the Laurent ring. Inside
    /// the T-system loop this signals a violated Laurent phenomenon, i.e. a bug.
    #[error("inexact division")]
    InexactDivision,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("exponent overflow on variable x{}", .0 + 1)]
    ExponentOverflow(usize),
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A sparse Laurent polynomial in `nvars` variables.
///
/// Invariant: no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The single variable `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(
            nvars,
            &{
                let mut e = vec![0; nvars];
                e[i] = 1;
                e
            },
            1,
        )
    }

    pub fn monomial(nvars: usize, exps: &[i32], c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    /// `prod_i x_i^{exps_i}` for a nonnegative integer weight vector.
    pub fn monomial_from_exponents(exps: &[i32]) -> Self {
        Self::monomial(exps.len(), exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check_nvars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = Vec::with_capacity(self.nvars);
                for i in 0..self.nvars {
                    let s = ea[i]
                        .checked_add(eb[i])
                        .ok_or(LaurentError::ExponentOverflow(i))?;
                    e.push(s);
                }
                let entry = out.terms.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Multiply by the monomial `c * x^exps`.
    pub fn mul_monomial(&self, exps: &[i32], c: &BigInt) -> Result<Self, LaurentError> {
        if c.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut out = Self::zero(self.nvars);
        for (e, k) in &self.terms {
            let mut ne = Vec::with_capacity(self.nvars);
            for i in 0..self.nvars {
                ne.push(
                    e[i].checked_add(exps[i])
                        .ok_or(LaurentError::ExponentOverflow(i))?,
                );
            }
            out.terms.insert(ne, k * c);
        }
        Ok(out)
    }

    /// Componentwise minimum exponent over all terms (the monomial content shift).
    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![0i32; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                m.copy_from_slice(e);
                first = false;
            } else {
                for i in 0..self.nvars {
                    m[i] = m[i].min(e[i]);
                }
            }
        }
        m
    }

    /// Exact division in the Laurent ring. Errors with `InexactDivision`
    /// when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        if other.is_zero() {
            return Err(LaurentError::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Shift both into the polynomial subring (all exponents >= 0).
        let sa = self.min_exponents();
        let sb = other.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let pa = self.mul_monomial(&neg(&sa), &BigInt::from(1))?;
        let pb = other.mul_monomial(&neg(&sb), &BigInt::from(1))?;

        // Long division by the lex-leading term of pb.
        let (lt_e, lt_c) = pb
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = pa;
        let mut quot = Self::zero(self.nvars);
        let mut steps: u64 = 0;
        while !rem.is_zero() {
            steps += 1;
            if steps > 10_000_000 {
                return Err(LaurentError::InexactDivision);
            }
            let (re, rc) = rem
                .terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            let mut te = Vec::with_capacity(self.nvars);
            for i in 0..self.nvars {
                let d = re[i] - lt_e[i];
                if d < 0 {
                    return Err(LaurentError::InexactDivision);
                }
                te.push(d);
            }
            let (tc, tr) = {
                use num_integer::Integer;
                rc.div_rem(&lt_c)
            };
            if !tr.is_zero() {
                return Err(LaurentError::InexactDivision);
            }
            let t = Self::monomial(self.nvars, &te, tc);
            quot = quot.add(&t)?;
            rem = rem.sub(&t.mul(&pb)?)?;
        }
        // Undo the shifts: self/other = x^(sa - sb) * (pa/pb).
        let mut shift = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            shift.push(sa[i] - sb[i]);
        }
        quot.mul_monomial(&shift, &BigInt::from(1))
    }

    /// Maximal degree of variable `i` (0-based) over all terms.
    pub fn deg_max(&self, i: usize) -> Result<i32, LaurentError> {
        self.terms
            .keys()
            .map(|e| e[i])
            .max()
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Minimal degree of variable `i` (0-based) over all terms.
    pub fn deg_min(&self, i: usize) -> Result<i32, LaurentError> {
        self.terms
            .keys()
            .map(|e| e[i])
            .min()
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Evaluate at a strictly positive point. Each term is computed in the
    /// log domain so very large degrees do not overflow prematurely.
    pub fn eval_positive(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars);
        debug_assert!(point.iter().all(|&x| x > 0.0));
        let logs: Vec<f64> = point.iter().map(|x| x.ln()).collect();
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut lt = big_ln_abs(c);
            for i in 0..self.nvars {
                lt += f64::from(e[i]) * logs[i];
            }
            let mag = lt.exp();
            acc += if c.is_negative() { -mag } else { mag };
        }
        acc
    }

    /// `max_terms(lambda . exponent)` — the tropicalization of this polynomial
    /// at the rational point `lambda` (sup over the Newton polytope).
    pub fn trop_sup(
        &self,
        lambda: &[num_rational::BigRational],
    ) -> Option<num_rational::BigRational> {
        self.terms
            .keys()
            .map(|e| {
                let mut s = num_rational::BigRational::zero();
                for i in 0..self.nvars {
                    s += lambda[i].clone() * num_rational::BigRational::from(BigInt::from(e[i]));
                }
                s
            })
            .max()
    }
}

fn big_ln_abs(c: &BigInt) -> f64 {
    let a = c.magnitude();
    if let Some(f) = a.to_f64() {
        if f.is_finite() && f > 0.0 {
            return f.ln();
        }
    }
    // Huge coefficient: ln(mantissa * 2^k) with a 64-bit mantissa window.
    let bits = a.bits();
    let shift = bits.saturating_sub(53);
    let top = (a >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

impl fmt::Display for LaurentPoly {
    /// Text form `3*x1^2*x4^-1 + x2` with terms in descending lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| e[i] != 0)
                .map(|i| {
                    if e[i] == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e[i])
                    }
                })
                .collect();
            use num_traits::One;
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parse the `Display` text form back into a polynomial.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, LaurentError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut out = Self::zero(nvars);
        // Split into signed terms.
        let norm = s.replace(" - ", " + -");
        for raw in norm.split(" + ") {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(LaurentError::Parse("empty term".into()));
            }
            let (neg, body) = match raw.strip_prefix('-') {
                Some(b) => (true, b.trim()),
                None => (false, raw),
            };
            let mut coeff: Option<BigInt> = None;
            let mut exps = vec![0i32; nvars];
            for factor in body.split('*') {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx_s, exp_s) = match rest.split_once('^') {
                        Some((a, b)) => (a, Some(b)),
                        None => (rest, None),
                    };
                    let idx: usize = idx_s
                        .parse()
                        .map_err(|_| LaurentError::Parse(format!("bad variable `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(LaurentError::Parse(format!("variable x{idx} out of range")));
                    }
                    let exp: i32 = match exp_s {
                        Some(t) => t
                            .parse()
                            .map_err(|_| LaurentError::Parse(format!("bad exponent `{factor}`")))?,
                        None => 1,
                    };
                    exps[idx - 1] = exps[idx - 1]
                        .checked_add(exp)
                        .ok_or(LaurentError::ExponentOverflow(idx - 1))?;
                } else {
                    let c: BigInt = factor
                        .parse()
                        .map_err(|_| LaurentError::Parse(format!("bad coefficient `{factor}`")))?;
                    coeff = Some(coeff.map_or(c.clone(), |old| old * &c));
                }
            }
            let mut c = coeff.unwrap_or_else(|| BigInt::from(1));
            if neg {
                c = -c;
            }
            out = out.add(&Self::monomial(nvars, &exps, c))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(4, i)
    }

    #[test]
    fn product_of_conjugates() {
        // (x1 + x2)(x1 - x2) = x1^2 - x2^2
        let p = x(0).add(&x(1)).unwrap();
        let q = x(0).sub(&x(1)).unwrap();
        let got = p.mul(&q).unwrap();
        let want = LaurentPoly::monomial(4, &[2, 0, 0, 0], 1)
            .sub(&LaurentPoly::monomial(4, &[0, 2, 0, 0], 1))
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn monomial_division_always_exact() {
        // (x1*x3^2 + x4^3) / x2 is the monomial-shifted binomial.
        let num = LaurentPoly::monomial(4, &[1, 0, 2, 0], 1)
            .add(&LaurentPoly::monomial(4, &[0, 0, 0, 3], 1))
            .unwrap();
        let got = num.exact_div(&x(1)).unwrap();
        let want = LaurentPoly::monomial(4, &[1, -1, 2, 0], 1)
            .add(&LaurentPoly::monomial(4, &[0, -1, 0, 3], 1))
            .unwrap();
        assert_eq!(got, want);
        assert_eq!(got.mul(&x(1)).unwrap(), num);
    }

    #[test]
    fn degrees_of_exchange_binomial() {
        let p = LaurentPoly::monomial(4, &[1, 0, 2, 0], 1)
            .add(&LaurentPoly::monomial(4, &[0, 0, 0, 3], 1))
            .unwrap();
        assert_eq!(p.deg_max(0).unwrap(), 1);
        assert_eq!(p.deg_min(0).unwrap(), 0);
        assert_eq!(p.deg_max(3).unwrap(), 3);
        let m = LaurentPoly::monomial(4, &[0, -5, 0, 0], 7);
        assert_eq!(m.deg_max(1).unwrap(), -5);
        assert_eq!(m.deg_min(1).unwrap(), -5);
    }

    #[test]
    fn eval_at_ones_is_coefficient_sum() {
        let p = LaurentPoly::monomial(4, &[1, -2, 2, 0], 3)
            .add(&LaurentPoly::monomial(4, &[0, 0, 0, 3], -5))
            .unwrap()
            .add(&LaurentPoly::constant(4, 9))
            .unwrap();
        let v = p.eval_positive(&[1.0; 4]);
        assert!((v - 7.0).abs() < 1e-12);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = LaurentPoly::monomial(4, &[2, 0, 0, -1], 3)
            .add(&x(1))
            .unwrap();
        assert_eq!(p.to_string(), "3*x1^2*x4^-1 + x2");
        assert_eq!(LaurentPoly::parse(&p.to_string(), 4).unwrap(), p);
        let q = LaurentPoly::parse("-x3^-2 + 4 - 2*x1*x2", 4).unwrap();
        assert_eq!(q.coeff(&[0, 0, -2, 0]), BigInt::from(-1));
        assert_eq!(q.coeff(&[1, 1, 0, 0]), BigInt::from(-2));
        assert_eq!(q.coeff(&[0, 0, 0, 0]), BigInt::from(4));
        assert_eq!(LaurentPoly::parse(&q.to_string(), 4).unwrap(), q);
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = LaurentPoly::zero(3);
        assert_eq!(z.deg_max(0), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn inexact_division_detected() {
        let p = x(0).add(&x(1)).unwrap();
        let q = x(0).add(&LaurentPoly::constant(4, 1)).unwrap();
        assert_eq!(p.exact_div(&q), Err(LaurentError::InexactDivision));
        let two = LaurentPoly::constant(4, 2);
        assert_eq!(
            x(0).add(&x(1)).unwrap().exact_div(&two),
            Err(LaurentError::InexactDivision)
        );
    }
}
