//! Sparse elements of the noncommutative algebra Q[h, t]<x, y>.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::coef::{CoefPoly, Rational};
use crate::error::{Error, Result};
use crate::word::{Comp, Word};

/// A finite sum of words with `CoefPoly` coefficients. The empty word is
/// the unit; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: HashMap<Word, CoefPoly>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn scalar(c: CoefPoly) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, CoefPoly::one())
    }

    pub fn term(w: Word, c: CoefPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn x() -> Self {
        Self::word(Word::x())
    }

    pub fn y() -> Self {
        Self::word(Word::y())
    }

    pub fn z(k: u32) -> Self {
        Self::word(Word::z(k))
    }

    /// The word `z_{k_1} ... z_{k_l}`.
    pub fn zs(parts: &[u32]) -> Self {
        Self::word(Word::from_comp(parts))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> CoefPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Unordered iteration over the stored terms.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &CoefPoly)> {
        self.terms.iter()
    }

    /// Terms in length-lex word order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &CoefPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, w: Word, c: &CoefPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &NcPoly, scale: &CoefPoly) {
        if scale.is_zero() {
            return;
        }
        let unit = scale.is_one();
        for (w, c) in &other.terms {
            if unit {
                self.add_term(w.clone(), c);
            } else {
                self.add_term(w.clone(), &(c * scale));
            }
        }
    }

    pub fn scale(&self, c: &CoefPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> NcPoly {
        self.scale(&CoefPoly::constant(r.clone()))
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..e {
            acc = acc.concat(self);
        }
        acc
    }

    /// Left multiplication by a single word.
    pub fn prepend_word(&self, w: &Word) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())).collect() }
    }

    /// Right multiplication by a single word.
    pub fn append_word(&self, w: &Word) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect() }
    }

    /// Extends a word-level map linearly.
    pub fn map_linear<F>(&self, mut f: F) -> NcPoly
    where
        F: FnMut(&Word) -> NcPoly,
    {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn try_map_linear<F>(&self, mut f: F) -> Result<NcPoly>
    where
        F: FnMut(&Word) -> Result<NcPoly>,
    {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> NcPoly
    where
        F: FnMut(&CoefPoly) -> CoefPoly,
    {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    pub fn subst_t(&self, value: &Rational) -> NcPoly {
        self.map_coeffs(|c| c.subst_t(value))
    }

    pub fn subst_h(&self, value: &Rational) -> NcPoly {
        self.map_coeffs(|c| c.subst_h(value))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn all_in_h1(&self) -> bool {
        self.terms.keys().all(Word::in_h1)
    }

    pub fn all_in_h0(&self) -> bool {
        self.terms.keys().all(Word::in_h0)
    }

    /// Every word nonempty and ending in `y`.
    pub fn all_in_hy(&self) -> bool {
        self.terms.keys().all(|w| !w.is_empty() && w.in_h1())
    }

    pub fn require_h1(&self) -> Result<()> {
        match self.terms.keys().find(|w| !w.in_h1()) {
            Some(w) => Err(Error::Domain { word: w.to_string(), space: "H^1" }),
            None => Ok(()),
        }
    }

    pub fn require_h0(&self) -> Result<()> {
        match self.terms.keys().find(|w| !w.in_h0()) {
            Some(w) => Err(Error::Domain { word: w.to_string(), space: "H^0" }),
            None => Ok(()),
        }
    }

    pub fn require_hy(&self) -> Result<()> {
        match self.terms.keys().find(|w| w.is_empty() || !w.in_h1()) {
            Some(w) => Err(Error::Domain { word: w.to_string(), space: "H y" }),
            None => Ok(()),
        }
    }

    /// Terms as z-letter strings; fails outside H^1.
    pub fn to_comp_terms(&self) -> Result<Vec<(Comp, &CoefPoly)>> {
        self.terms
            .iter()
            .map(|(w, c)| {
                w.to_comp()
                    .map(|comp| (comp, c))
                    .ok_or_else(|| Error::Domain { word: w.to_string(), space: "H^1" })
            })
            .collect()
    }

    /// Set of values `weight + deg_h` over all (word, monomial) pairs.
    pub fn gradings(&self) -> std::collections::BTreeSet<usize> {
        let mut out = std::collections::BTreeSet::new();
        for (w, c) in &self.terms {
            for ((a, _), _) in c.terms() {
                out.insert(w.weight() + a as usize);
            }
        }
        out
    }

    /// Renders words as z-letter products (`z2z1`); H^1 only.
    pub fn to_z_string(&self) -> Option<String> {
        let mut parts = Vec::new();
        for (w, c) in self.sorted_terms() {
            parts.push((w.to_z_string()?, c));
        }
        Some(render_terms(parts))
    }

    pub fn to_records(&self) -> Vec<WordRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| WordRecord { word: w.to_string(), coeff: c.to_triples() })
            .collect()
    }

    pub fn from_records(records: &[WordRecord]) -> Result<Self> {
        let mut out = NcPoly::zero();
        for r in records {
            let w: Word = r.word.parse()?;
            out.add_term(w, &CoefPoly::from_triples(&r.coeff)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let records: Vec<WordRecord> = serde_json::from_str(s)?;
        Self::from_records(&records)
    }
}

/// One serialized term: `{"word": "xyy", "coeff": [[deg_h, deg_t, "num/den"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRecord {
    pub word: String,
    pub coeff: Vec<(u32, u32, String)>,
}

fn render_terms(terms: Vec<(String, &CoefPoly)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let (neg, body) = match (c.as_constant(), w.as_str()) {
            (Some(r), word) => {
                let neg = r < Rational::from_integer(0.into());
                let mag = if neg { -r } else { r };
                let body = if word == "1" {
                    crate::coef::rational_to_short(&mag)
                } else if mag == Rational::from_integer(1.into()) {
                    word.to_string()
                } else {
                    format!("{}*{word}", crate::coef::rational_to_short(&mag))
                };
                (neg, body)
            }
            (None, "1") => (false, format!("({c})")),
            (None, word) => (false, format!("({c})*{word}")),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms().into_iter().map(|(w, c)| (w.to_string(), c)).collect();
        write!(f, "{}", render_terms(terms))
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Word> for NcPoly {
    fn from(w: Word) -> Self {
        NcPoly::word(w)
    }
}

impl From<CoefPoly> for NcPoly {
    fn from(c: CoefPoly) -> Self {
        NcPoly::scalar(c)
    }
}

impl AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }
}

impl SubAssign<&NcPoly> for NcPoly {
    fn sub_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), &-c);
        }
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(mut self, rhs: NcPoly) -> NcPoly {
        self += &rhs;
        self
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(mut self, rhs: NcPoly) -> NcPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

/// Concatenation.
impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.concat(rhs)
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        self.concat(&rhs)
    }
}
