//! Products on H^1: the join `∘+` and its action, Hoffman's harmonic
//! product `*`, the modified harmonic product `*+`, the interpolated
//! product `*^t_h`, and the circled products on H y.

use std::collections::HashMap;
use std::rc::Rc;

use crate::coef::CoefPoly;
use crate::error::{Error, Result};
use crate::ncpoly::NcPoly;
use crate::word::{Comp, Word};

/// `z_i ∘+ z_j = z_{i+j} + h z_{i+j-1}`.
pub fn join_plus(i: u32, j: u32) -> NcPoly {
    let mut out = NcPoly::z(i + j);
    out.add_term(Word::z(i + j - 1), &CoefPoly::h());
    out
}

/// Decomposes an element of the z-span into `(k, coefficient)` pairs.
fn z_letters(a: &NcPoly) -> Result<Vec<(u32, CoefPoly)>> {
    a.iter()
        .map(|(w, c)| match w.to_comp() {
            Some(comp) if comp.len() == 1 => Ok((comp[0], c.clone())),
            _ => Err(Error::NotInZ(a.to_string())),
        })
        .collect()
}

/// The product `∘+` on the span of z-letters, extended bilinearly.
pub fn circ_plus(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    let la = z_letters(a)?;
    let lb = z_letters(b)?;
    let mut out = NcPoly::zero();
    for (i, ci) in &la {
        for (j, cj) in &lb {
            out.add_scaled(&join_plus(*i, *j), &(ci * cj));
        }
    }
    Ok(out)
}

/// Action of `a ∘+ -` on a single z-string: `a ∘+ 1 = 0` and
/// `a ∘+ (z_j w) = (a ∘+ z_j) w`.
fn circ_on_comp(letters: &[(u32, CoefPoly)], comp: &[u32]) -> NcPoly {
    let Some((&first, rest)) = comp.split_first() else {
        return NcPoly::zero();
    };
    let tail = Word::from_comp(rest);
    let mut out = NcPoly::zero();
    for (i, c) in letters {
        out.add_term(Word::z(i + first).concat(&tail), c);
        out.add_term(Word::z(i + first - 1).concat(&tail), &(c * &CoefPoly::h()));
    }
    out
}

/// The z-module action of `a` on `w ∈ H^1`.
pub fn circ_action(a: &NcPoly, w: &NcPoly) -> Result<NcPoly> {
    let letters = z_letters(a)?;
    let mut out = NcPoly::zero();
    for (comp, c) in w.to_comp_terms()? {
        out.add_scaled(&circ_on_comp(&letters, &comp), c);
    }
    Ok(out)
}

/// `(z_i ∘+ z_j) ∘+ P` applied to an already-computed polynomial.
pub(crate) fn double_circ_action(i: u32, j: u32, p: &NcPoly) -> NcPoly {
    let letters = [(i + j, CoefPoly::one()), (i + j - 1, CoefPoly::h())];
    let mut out = NcPoly::zero();
    for (w, c) in p.iter() {
        let comp = w.to_comp().expect("product results stay in H^1");
        out.add_scaled(&circ_on_comp(&letters, &comp), c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// Hoffman's `*`, join `z_i z_j -> z_{i+j}`.
    Harmonic,
    /// `*+`, join `z_i ∘+ z_j`.
    HarmonicPlus,
    /// `*^t_h`.
    THarmonic,
}

/// Quasi-shuffle products with a memo table keyed by word pairs.
///
/// Not `Sync`; parallel drivers hold one engine per worker.
pub struct ProductEngine {
    t: CoefPoly,
    one_minus_2t: CoefPoly,
    t2_minus_t: CoefPoly,
    memo: HashMap<(ProductKind, Comp, Comp), Rc<NcPoly>>,
}

impl Default for ProductEngine {
    fn default() -> Self {
        Self::new(CoefPoly::t())
    }
}

impl ProductEngine {
    /// `t` is the interpolation parameter used by `*^t_h`.
    pub fn new(t: CoefPoly) -> Self {
        let one_minus_2t = &CoefPoly::one() - &(&t + &t);
        let t2_minus_t = &(&t * &t) - &t;
        Self { t, one_minus_2t, t2_minus_t, memo: HashMap::new() }
    }

    pub fn t(&self) -> &CoefPoly {
        &self.t
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn product(&mut self, kind: ProductKind, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        let lhs = u.to_comp_terms()?;
        let rhs = v.to_comp_terms()?;
        let mut out = NcPoly::zero();
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                let p = self.on_words(kind, a, b);
                out.add_scaled(&p, &(*ca * *cb));
            }
        }
        Ok(out)
    }

    pub fn star(&mut self, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        self.product(ProductKind::Harmonic, u, v)
    }

    pub fn star_plus(&mut self, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        self.product(ProductKind::HarmonicPlus, u, v)
    }

    pub fn t_star(&mut self, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        self.product(ProductKind::THarmonic, u, v)
    }

    /// `z_i u ⊛ z_j v = z_{i+j} (u *+ v)` on H y.
    pub fn circledast(&mut self, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        u.require_hy()?;
        v.require_hy()?;
        let lhs = u.to_comp_terms()?;
        let rhs = v.to_comp_terms()?;
        let mut out = NcPoly::zero();
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                let inner = self.on_words(ProductKind::HarmonicPlus, &a[1..], &b[1..]);
                let head = Word::z(a[0] + b[0]);
                out.add_scaled(&inner.prepend_word(&head), &(*ca * *cb));
            }
        }
        Ok(out)
    }

    fn on_words(&mut self, kind: ProductKind, u: &[u32], v: &[u32]) -> Rc<NcPoly> {
        if u.is_empty() {
            return Rc::new(NcPoly::word(Word::from_comp(v)));
        }
        if v.is_empty() {
            return Rc::new(NcPoly::word(Word::from_comp(u)));
        }
        let key = (kind, Comp::from_slice(u), Comp::from_slice(v));
        if let Some(p) = self.memo.get(&key) {
            return Rc::clone(p);
        }
        let (i, j) = (u[0], v[0]);
        let mut out = self.on_words(kind, &u[1..], v).prepend_word(&Word::z(i));
        out += &self.on_words(kind, u, &v[1..]).prepend_word(&Word::z(j));
        let rest = self.on_words(kind, &u[1..], &v[1..]);
        match kind {
            ProductKind::Harmonic => out += &rest.prepend_word(&Word::z(i + j)),
            ProductKind::HarmonicPlus => {
                out += &rest.prepend_word(&Word::z(i + j));
                out.add_scaled(&rest.prepend_word(&Word::z(i + j - 1)), &CoefPoly::h());
            }
            ProductKind::THarmonic => {
                let mut joined = rest.prepend_word(&Word::z(i + j));
                joined.add_scaled(&rest.prepend_word(&Word::z(i + j - 1)), &CoefPoly::h());
                out.add_scaled(&joined, &self.one_minus_2t);
                out.add_scaled(&double_circ_action(i, j, &rest), &self.t2_minus_t);
            }
        }
        let out = Rc::new(out);
        self.memo.insert(key, Rc::clone(&out));
        out
    }
}

pub fn harmonic_star(u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
    ProductEngine::default().star(u, v)
}

pub fn harmonic_star_plus(u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
    ProductEngine::default().star_plus(u, v)
}

pub fn t_harmonic(u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
    ProductEngine::default().t_star(u, v)
}

pub fn circledast(u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
    ProductEngine::default().circledast(u, v)
}
