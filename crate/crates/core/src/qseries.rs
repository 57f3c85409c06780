//! Truncated power series in q with coefficients in Q[t].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coef::{binomial, parse_rational, rational_to_f64, rational_to_short, rational_to_string, Rational};
use crate::error::{Error, Result};

/// Dense polynomial in t; trailing zeros are trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TPoly(Vec<Rational>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn one() -> Self {
        TPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = TPoly(vec![c]);
        p.trim();
        p
    }

    /// `c t^deg`.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        let mut p = TPoly(v);
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = TPoly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.0.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add_term(&mut self, deg: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if self.0.len() <= deg {
            self.0.resize(deg + 1, Rational::zero());
        }
        self.0[deg] += c;
        self.trim();
    }

    pub fn add_assign(&mut self, other: &TPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        self.trim();
    }

    pub fn add_scaled(&mut self, other: &TPoly, r: &Rational) {
        if r.is_zero() {
            return;
        }
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * r;
        }
        self.trim();
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(v)
    }

    pub fn scale(&self, r: &Rational) -> TPoly {
        TPoly::from_coeffs(self.0.iter().map(|c| c * r).collect())
    }

    pub fn neg(&self) -> TPoly {
        TPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + rational_to_f64(c))
    }

    /// Sparse `(t_deg, "num/den")` pairs.
    pub fn to_pairs(&self) -> Vec<(usize, String)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, rational_to_string(c)))
            .collect()
    }

    pub fn from_pairs(pairs: &[(usize, String)]) -> Result<Self> {
        let mut p = TPoly::zero();
        for (d, s) in pairs {
            p.add_term(*d, &parse_rational(s)?);
        }
        Ok(p)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{}", rational_to_short(&mag))?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", rational_to_short(&mag))?,
                (_, true) => write!(f, "t^{d}")?,
                (_, false) => write!(f, "{}*t^{d}", rational_to_short(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Power series `Σ_{n ≤ N} c_n q^n` with `c_n ∈ Q[t]`, exact modulo `q^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<TPoly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![TPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, TPoly::one())
    }

    pub fn constant(order: usize, c: TPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Series with rational (t-free) coefficients `c_0, c_1, ...`.
    pub fn from_rationals(order: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[n] = TPoly::constant(c.clone());
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<TPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant coefficient");
        QSeries { coeffs }
    }

    /// The truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &TPoly {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let order = order.min(self.order());
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// `self += r t^t_deg q^shift * other`, truncating at `self`'s order.
    pub fn add_shifted(&mut self, other: &QSeries, shift: usize, t_deg: usize, r: &Rational) {
        if r.is_zero() {
            return;
        }
        let top = self.order().min(other.order() + shift);
        for n in shift..=top {
            let src = &other.coeffs[n - shift];
            if src.is_zero() {
                continue;
            }
            let shifted = if t_deg == 0 { src.clone() } else { src.mul(&TPoly::monomial(t_deg, Rational::one())) };
            self.coeffs[n].add_scaled(&shifted, r);
        }
    }

    pub fn add_assign(&mut self, other: &QSeries) {
        let top = self.order().min(other.order());
        self.coeffs.truncate(top + 1);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
    }

    pub fn scale_tpoly(&self, c: &TPoly) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn scale(&self, r: &Rational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul_series(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut out = QSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j].add_assign(&a.mul(b));
            }
        }
        out
    }

    /// Substitutes a rational value for t.
    pub fn subst_t(&self, t: &Rational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| TPoly::constant(c.eval(t))).collect() }
    }

    /// Sums the truncated series at numeric `q` and `t`.
    pub fn eval_f64(&self, q: f64, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * q + c.eval_f64(t))
    }

    /// First q-power where the two series differ, compared up to the
    /// smaller of the two orders.
    pub fn first_difference(&self, other: &QSeries) -> Option<(usize, TPoly, TPoly)> {
        let order = self.order().min(other.order());
        (0..=order)
            .find(|&n| self.coeffs[n] != other.coeffs[n])
            .map(|n| (n, self.coeffs[n].clone(), other.coeffs[n].clone()))
    }

    /// `(1 - q)^e`.
    pub fn one_minus_q_pow(order: usize, e: u32) -> QSeries {
        let mut s = QSeries::zero(order);
        for j in 0..=(e as usize).min(order) {
            let mut c = Rational::from_integer(binomial(e as u64, j as u64));
            if j % 2 == 1 {
                c = -c;
            }
            s.coeffs[j] = TPoly::constant(c);
        }
        s
    }

    pub fn to_json_value(&self) -> QSeriesJson {
        QSeriesJson { order: self.order(), coeffs: self.coeffs.iter().map(TPoly::to_pairs).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series serialize")
    }

    pub fn from_json_value(v: &QSeriesJson) -> Result<Self> {
        if v.coeffs.len() != v.order + 1 {
            return Err(Error::Serde(format!("expected {} coefficients, found {}", v.order + 1, v.coeffs.len())));
        }
        let coeffs = v.coeffs.iter().map(|p| TPoly::from_pairs(p)).collect::<Result<Vec<_>>>()?;
        Ok(QSeries { coeffs })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: QSeriesJson = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }
}

/// `{"N": int, "coeffs": [[[t_deg, "num/den"], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    #[serde(rename = "N")]
    pub order: usize,
    pub coeffs: Vec<Vec<(usize, String)>>,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let qpart = match n {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{n}"),
            };
            let nonzero: Vec<_> = c.coeffs().iter().enumerate().filter(|(_, r)| !r.is_zero()).collect();
            let single_const = nonzero.len() == 1 && nonzero[0].0 == 0;
            let (neg, body) = if single_const {
                let r = nonzero[0].1;
                let mag = r.abs();
                let body = match (n, mag.is_one()) {
                    (0, _) => rational_to_short(&mag),
                    (_, true) => qpart.clone(),
                    (_, false) => format!("{}*{qpart}", rational_to_short(&mag)),
                };
                (r.is_negative(), body)
            } else if n == 0 {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{qpart}"))
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            write!(f, "0")?;
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &-rhs
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(TPoly::neg).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_series(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::{rat, rat_int};

    fn ints(order: usize, v: &[i64]) -> QSeries {
        QSeries::from_rationals(order, &v.iter().map(|&n| rat_int(n)).collect::<Vec<_>>())
    }

    #[test]
    fn ring_operations() {
        let a = ints(3, &[1, 1]);
        let b = ints(3, &[1, -1]);
        assert_eq!(&a * &b, ints(3, &[1, 0, -1]));
        assert_eq!(&a + &QSeries::zero(3), a);
        assert_eq!(&a * &QSeries::one(3), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = ints(5, &[1, 2, 3, 4, 5, 6]);
        let b = ints(3, &[1]);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn t_coefficients() {
        let t = TPoly::monomial(1, rat_int(1));
        let s = QSeries::constant(2, t.clone());
        let sq = &s * &s;
        assert_eq!(sq.coeff(0), &TPoly::monomial(2, rat_int(1)));
        assert_eq!(sq.subst_t(&rat(1, 2)).coeff(0), &TPoly::constant(rat(1, 4)));
    }

    #[test]
    fn display() {
        assert_eq!(ints(4, &[0, 1, 1, -1, 2]).to_string(), "q + q^2 - q^3 + 2*q^4 + O(q^5)");
        let mut s = QSeries::zero(3);
        s.add_shifted(&QSeries::one(3), 2, 1, &rat_int(-3));
        s.add_shifted(&QSeries::one(3), 2, 0, &rat_int(1));
        assert_eq!(s.to_string(), "(1 - 3*t)*q^2 + O(q^4)");
        assert_eq!(QSeries::zero(2).to_string(), "0 + O(q^3)");
    }

    #[test]
    fn json_round_trip() {
        let mut s = ints(3, &[0, 1, -2]);
        s.add_shifted(&QSeries::one(3), 3, 2, &rat(5, 7));
        let j = s.to_json();
        assert_eq!(j, r#"{"N":3,"coeffs":[[],[[0,"1/1"]],[[0,"-2/1"]],[[2,"5/7"]]]}"#);
        assert_eq!(QSeries::from_json(&j).unwrap(), s);
        assert!(QSeries::from_json(r#"{"N":3,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn first_difference_is_minimal() {
        let a = ints(5, &[1, 2, 3, 4]);
        let b = ints(5, &[1, 2, 0, 0]);
        let (n, l, r) = a.first_difference(&b).unwrap();
        assert_eq!(n, 2);
        assert_eq!(l, TPoly::constant(rat_int(3)));
        assert!(r.is_zero());
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn one_minus_q_powers() {
        assert_eq!(QSeries::one_minus_q_pow(4, 2), ints(4, &[1, -2, 1]));
        assert_eq!(QSeries::one_minus_q_pow(1, 3), ints(1, &[1, -3]));
    }
}
