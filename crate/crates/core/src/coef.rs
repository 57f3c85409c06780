//! Exact coefficients: rationals and the bivariate polynomial ring Q[h, t].
//!
//! `h` stands for the formal deformation parameter (written ħ in the
//! literature) and `t` for the interpolation parameter.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `num/den` (denominator always present).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a rational compactly: `3`, `-1/2`.
pub fn rational_to_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num`, `num/den`, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("invalid rational `{s}`") };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exponent pair `(deg_h, deg_t)`.
pub type Monomial = (u32, u32);

/// Sparse element of Q[h, t]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoefPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl CoefPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn monomial(deg_h: u32, deg_t: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_h, deg_t), c);
        }
        Self { terms }
    }

    /// The symbol h.
    pub fn h() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    /// The symbol t.
    pub fn t() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Returns the constant value if this polynomial has no h or t dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, deg_h: u32, deg_t: u32) -> Rational {
        self.terms.get(&(deg_h, deg_t)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_h(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CoefPoly, scale: &CoefPoly) {
        for (m1, c1) in &scale.terms {
            for (m2, c2) in &other.terms {
                self.add_term((m1.0 + m2.0, m1.1 + m2.1), &(c1 * c2));
            }
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, h: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b), c) in &self.terms {
            acc += c * num_traits::pow(h.clone(), *a as usize) * num_traits::pow(t.clone(), *b as usize);
        }
        acc
    }

    pub fn eval_f64(&self, h: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|((a, b), c)| rational_to_f64(c) * h.powi(*a as i32) * t.powi(*b as i32))
            .sum()
    }

    /// Substitutes `t := value`, keeping h symbolic.
    pub fn subst_t(&self, value: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term((*a, 0), &(c * num_traits::pow(value.clone(), *b as usize)));
        }
        out
    }

    /// Substitutes `t := s` for a polynomial `s` in Q[h, t].
    pub fn subst_t_poly(&self, s: &CoefPoly) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let mono = Self::monomial(*a, 0, c.clone());
            out += &(&mono * &s.pow(*b));
        }
        out
    }

    pub fn subst_h(&self, value: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term((0, *b), &(c * num_traits::pow(value.clone(), *a as usize)));
        }
        out
    }

    /// Substitutes h := 1 - q. The result maps `(q_power, t_power)` to a
    /// rational, expanding each h^a by the binomial theorem.
    pub fn subst_h_one_minus_q(&self) -> BTreeMap<(u32, u32), Rational> {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for j in 0..=*a {
                let mut term = c * Rational::from_integer(binomial(*a as u64, j as u64));
                if j % 2 == 1 {
                    term = -term;
                }
                let e = out.entry((j, *b)).or_insert_with(Rational::zero);
                *e += term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Triples `(deg_h, deg_t, "num/den")` in ascending order.
    pub fn to_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms.iter().map(|((a, b), c)| (*a, *b, rational_to_string(c))).collect()
    }

    pub fn from_triples(triples: &[(u32, u32, String)]) -> Result<Self> {
        let mut out = Self::zero();
        for (a, b, s) in triples {
            out.add_term((*a, *b), &parse_rational(s)?);
        }
        Ok(out)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge numerators and denominators: scale down by bit length first
        let n = r.numer();
        let d = r.denom();
        let shift = (n.bits().max(d.bits())).saturating_sub(900) as usize;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<Rational> for CoefPoly {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl From<i64> for CoefPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl AddAssign<&CoefPoly> for CoefPoly {
    fn add_assign(&mut self, rhs: &CoefPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl Add for &CoefPoly {
    type Output = CoefPoly;
    fn add(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoefPoly {
    type Output = CoefPoly;
    fn add(mut self, rhs: CoefPoly) -> CoefPoly {
        self += &rhs;
        self
    }
}

impl Sub for &CoefPoly {
    type Output = CoefPoly;
    fn sub(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Sub for CoefPoly {
    type Output = CoefPoly;
    fn sub(self, rhs: CoefPoly) -> CoefPoly {
        &self - &rhs
    }
}

impl Neg for &CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        CoefPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        -&self
    }
}

impl Mul for &CoefPoly {
    type Output = CoefPoly;
    fn mul(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = CoefPoly::zero();
        out.add_scaled(rhs, self);
        out
    }
}

impl Mul for CoefPoly {
    type Output = CoefPoly;
    fn mul(self, rhs: CoefPoly) -> CoefPoly {
        &self * &rhs
    }
}

impl fmt::Debug for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Graded-lex order on `(deg_h, deg_t)`: total degree first, then h-degree.
fn graded_key(m: &Monomial) -> (u32, u32, u32) {
    (m.0 + m.1, m.0, m.1)
}

impl CoefPoly {
    /// Terms sorted in graded-lex order, the order used for rendering.
    pub fn graded_terms(&self) -> Vec<(Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(m, _)| graded_key(m));
        v
    }
}

/// Renders as e.g. `1 - 2*t + 3/2*h^1*t^2`; exponents are always explicit.
impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.graded_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(rational_to_short(&mag));
            }
            if a > 0 {
                factors.push(format!("h^{a}"));
            }
            if b > 0 {
                factors.push(format!("t^{b}"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Rational gcd-normalisation is handled by `num_rational`; this checks it.
pub fn is_normalized(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
