//! Tensor powers of H with the `⋄` bimodule action, and the cyclic
//! operators `C_{n,t}`, `M_n` and `ρ_{n,t} = M_n C_{n,t}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coef::{binomial, CoefPoly, Rational};
use crate::error::{Error, Result};
use crate::maps::gamma_with;
use crate::ncpoly::NcPoly;
use crate::word::{Index, Letter, Word};

/// A finite sum of `(n+1)`-fold tensors of words.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    arity: usize,
    terms: HashMap<Vec<Word>, CoefPoly>,
}

impl TensorElem {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: HashMap::new() }
    }

    /// The pure tensor `p_1 ⊗ ... ⊗ p_k`, expanded multilinearly.
    pub fn pure(slots: &[NcPoly]) -> Self {
        let mut acc: Vec<(Vec<Word>, CoefPoly)> = vec![(Vec::new(), CoefPoly::one())];
        for p in slots {
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (ws, c) in &acc {
                for (w, d) in p.sorted_terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * d));
                }
            }
            acc = next;
        }
        let mut out = Self::zero(slots.len());
        for (ws, c) in acc {
            out.add_term(ws, &c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Word>, &CoefPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: &CoefPoly) {
        assert_eq!(slots.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
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

    pub fn add_scaled(&mut self, other: &TensorElem, scale: &CoefPoly) {
        for (ws, c) in &other.terms {
            self.add_term(ws.clone(), &(c * scale));
        }
    }

    /// Sorted terms: slot tuples compared slot by slot in length-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<Word>, &CoefPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn to_records(&self) -> Vec<TensorRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(ws, c)| TensorRecord { slots: ws.iter().map(Word::to_string).collect(), coeff: c.to_triples() })
            .collect()
    }

    pub fn from_records(arity: usize, records: &[TensorRecord]) -> Result<Self> {
        let mut out = Self::zero(arity);
        for r in records {
            if r.slots.len() != arity {
                return Err(Error::Serde(format!("expected {arity} slots, got {}", r.slots.len())));
            }
            let slots = r.slots.iter().map(|s| s.parse()).collect::<Result<Vec<Word>>>()?;
            out.add_term(slots, &CoefPoly::from_triples(&r.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub slots: Vec<String>,
    pub coeff: Vec<(u32, u32, String)>,
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(ws, c)| {
                let slots: Vec<String> = ws.iter().map(Word::to_string).collect();
                format!("({c})*[{}]", slots.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `a ⋄ (w_1 ⊗ ... ⊗ w_{n+1}) = w_1 ⊗ ... ⊗ a w_{n+1}`.
pub fn diamond_left(a: &NcPoly, t: &TensorElem) -> TensorElem {
    let last = t.arity - 1;
    let mut out = TensorElem::zero(t.arity);
    for (ws, c) in &t.terms {
        for (w, d) in a.iter() {
            let mut slots = ws.clone();
            slots[last] = w.concat(&slots[last]);
            out.add_term(slots, &(c * d));
        }
    }
    out
}

/// `(w_1 ⊗ ... ⊗ w_{n+1}) ⋄ b = w_1 b ⊗ ... ⊗ w_{n+1}`.
pub fn diamond_right(t: &TensorElem, b: &NcPoly) -> TensorElem {
    let mut out = TensorElem::zero(t.arity);
    for (ws, c) in &t.terms {
        for (w, d) in b.iter() {
            let mut slots = ws.clone();
            slots[0] = slots[0].concat(w);
            out.add_term(slots, &(c * d));
        }
    }
    out
}

/// `M_n`: multiplies the slots together in order.
pub fn m_map(t: &TensorElem) -> NcPoly {
    let mut out = NcPoly::zero();
    for (ws, c) in &t.terms {
        let mut w = Word::empty();
        for s in ws {
            w = w.concat(s);
        }
        out.add_term(w, c);
    }
    out
}

/// `C_{n,s}(x) = x ⊗ ((1-s)x + y - h s)^{⊗(n-1)} ⊗ y`.
pub fn c_of_x(n: usize, s: &CoefPoly) -> Result<TensorElem> {
    if n < 1 {
        return Err(Error::BadArity(n));
    }
    let one_minus_s = &CoefPoly::one() - s;
    let middle = NcPoly::x().scale(&one_minus_s) + NcPoly::y() - NcPoly::scalar(&CoefPoly::h() * s);
    let mut slots = vec![NcPoly::x()];
    slots.extend(std::iter::repeat_n(middle, n - 1));
    slots.push(NcPoly::y());
    Ok(TensorElem::pure(&slots))
}

/// `C_{n,s}` extended by the Leibniz rule
/// `C(vw) = C(v) ⋄ γ^{-1}(w) + γ^{-1}(v) ⋄ C(w)`, expanded letter by letter.
pub fn c_map_with(n: usize, w: &NcPoly, s: &CoefPoly) -> Result<TensorElem> {
    let base = c_of_x(n, s)?;
    let neg_s = -s;
    let mut out = TensorElem::zero(n + 1);
    for (word, coeff) in w.iter() {
        let letters = word.letters();
        for (i, &l) in letters.iter().enumerate() {
            let prefix = gamma_with(&NcPoly::word(word.slice(0, i)), &neg_s);
            let suffix = gamma_with(&NcPoly::word(word.slice(i + 1, letters.len())), &neg_s);
            let term = diamond_left(&prefix, &diamond_right(&base, &suffix));
            let sign = match l {
                Letter::X => coeff.clone(),
                Letter::Y => -coeff,
            };
            out.add_scaled(&term, &sign);
        }
    }
    Ok(out)
}

pub fn c_map(n: usize, w: &NcPoly) -> Result<TensorElem> {
    c_map_with(n, w, &CoefPoly::t())
}

pub fn rho_map_with(n: usize, w: &NcPoly, s: &CoefPoly) -> Result<NcPoly> {
    Ok(m_map(&c_map_with(n, w, s)?))
}

/// `ρ_{n,t} = M_n C_{n,t}`.
pub fn rho_map(n: usize, w: &NcPoly) -> Result<NcPoly> {
    rho_map_with(n, w, &CoefPoly::t())
}

/// `Σ_i sgn(u_i) x γ^{-1}(u_{i+1} ... u_l u_1 ... u_{i-1}) y`, which equals
/// `ρ_{1,s}(u_1 ... u_l)`.
pub fn rho1_closed_form_with(word: &Word, s: &CoefPoly) -> Result<NcPoly> {
    if word.is_empty() {
        return Err(Error::Domain { word: word.to_string(), space: "nonempty words" });
    }
    let l = word.len();
    let neg_s = -s;
    let mut out = NcPoly::zero();
    for (i, &u) in word.letters().iter().enumerate() {
        let rotated = word.slice(i + 1, l).concat(&word.slice(0, i));
        let middle = gamma_with(&NcPoly::word(rotated), &neg_s);
        let term = middle.prepend_word(&Word::x()).append_word(&Word::y());
        match u {
            Letter::X => out += &term,
            Letter::Y => out -= &term,
        }
    }
    Ok(out)
}

pub fn rho1_closed_form(word: &Word) -> Result<NcPoly> {
    rho1_closed_form_with(word, &CoefPoly::t())
}

/// `γ(z_{k_1} ... z_{k_l}) - t^l x^{k-l} (x + h)^l`.
pub fn csf_preimage(idx: &Index) -> Result<NcPoly> {
    csf_preimage_with(idx, &CoefPoly::t())
}

pub fn csf_preimage_with(idx: &Index, s: &CoefPoly) -> Result<NcPoly> {
    if idx.is_all_ones() {
        return Err(Error::AllOnes(idx.to_string()));
    }
    let l = idx.depth() as u32;
    let k = idx.weight();
    let gamma = gamma_with(&NcPoly::zs(idx.parts()), s);
    let x_plus_h = NcPoly::x() + NcPoly::scalar(CoefPoly::h());
    let tail = NcPoly::x().pow(k - l).concat(&x_plus_h.pow(l)).scale(&s.pow(l));
    Ok(gamma - tail)
}

/// The kernel element `ρ_{1,t}(γ(z_{k_1} ... z_{k_l}) - t^l x^{k-l}(x+h)^l)`.
pub fn csf_kernel_element(idx: &Index) -> Result<NcPoly> {
    csf_kernel_element_with(idx, &CoefPoly::t())
}

pub fn csf_kernel_element_with(idx: &Index, s: &CoefPoly) -> Result<NcPoly> {
    rho_map_with(1, &csf_preimage_with(idx, s)?, s)
}

/// The same kernel element written out term by term:
/// `Σ_i Σ_j z_{k_i-j} z_{k_{i+1}} ... z_{k_{i-1}} z_{j+1}
///  - (1-t) Σ_i z_{k_i+1} z_{k_{i+1}} ... z_{k_{i-1}}
///  - t^l Σ_i (k-i) C(l,i) h^i z_{k-i+1}`.
pub fn csf_kernel_explicit(idx: &Index) -> Result<NcPoly> {
    if idx.is_all_ones() {
        return Err(Error::AllOnes(idx.to_string()));
    }
    let ks = idx.parts();
    let l = ks.len();
    let k = idx.weight();
    let t = CoefPoly::t();
    let mut out = NcPoly::zero();
    for i in 0..l {
        let rotated: Vec<u32> = ks[i..].iter().chain(&ks[..i]).copied().collect();
        let ki = rotated[0];
        for j in 0..ki.saturating_sub(1) {
            let mut parts = vec![ki - j];
            parts.extend_from_slice(&rotated[1..]);
            parts.push(j + 1);
            out += &NcPoly::zs(&parts);
        }
        let mut parts = vec![ki + 1];
        parts.extend_from_slice(&rotated[1..]);
        out.add_scaled(&NcPoly::zs(&parts), &(&t - &CoefPoly::one()));
    }
    let tl = t.pow(l as u32);
    for i in 0..=l as u32 {
        let c = Rational::from_integer(binomial(l as u64, i as u64) * (k - i));
        let coeff = &CoefPoly::monomial(i, 0, c) * &tl;
        out.add_scaled(&NcPoly::z(k - i + 1), &-coeff);
    }
    Ok(out)
}

/// All distinct cyclic rotations, in order of first appearance.
pub fn cyclic_rotations(word: &Word) -> Result<Vec<Word>> {
    if word.is_empty() {
        return Err(Error::Domain { word: word.to_string(), space: "nonempty words" });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..word.len() {
        let r = word.rotate_left(i);
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    Ok(out)
}
