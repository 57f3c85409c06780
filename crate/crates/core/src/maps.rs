//! Linear and multiplicative maps on H: the interpolation map `S^s_h`
//! and its inverse, the automorphisms `γ^s_h` and `φ`, the conjugated
//! map `φ^t_h`, the derivation `∂1`, and left multiplication by `x`.

use std::collections::HashMap;
use std::rc::Rc;

use crate::coef::CoefPoly;
use crate::error::Result;
use crate::ncpoly::NcPoly;
use crate::products::{circ_action, ProductEngine};
use crate::word::{Comp, Letter, Word};

/// `S(1) = 1`, `S(a w) = a S(w) + s (a ∘+ S(w))` for z-letters `a`.
///
/// The map is defined on H^1 only; words ending in `x` are rejected.
pub struct SMap {
    s: CoefPoly,
    memo: HashMap<Comp, Rc<NcPoly>>,
}

impl SMap {
    pub fn new(s: CoefPoly) -> Self {
        Self { s, memo: HashMap::new() }
    }

    pub fn param(&self) -> &CoefPoly {
        &self.s
    }

    pub fn apply(&mut self, w: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (comp, c) in w.to_comp_terms()? {
            let img = self.on_comp(&comp);
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    pub fn on_comp(&mut self, comp: &[u32]) -> Rc<NcPoly> {
        if let Some(p) = self.memo.get(comp) {
            return Rc::clone(p);
        }
        let out = match comp.split_first() {
            None => NcPoly::one(),
            Some((&a, rest)) => {
                let tail = self.on_comp(rest);
                let mut out = tail.prepend_word(&Word::z(a));
                if !self.s.is_zero() {
                    let merged = circ_action(&NcPoly::z(a), &tail).expect("S maps H^1 into H^1");
                    out.add_scaled(&merged, &self.s);
                }
                out
            }
        };
        let out = Rc::new(out);
        self.memo.insert(Comp::from_slice(comp), Rc::clone(&out));
        out
    }
}

/// Inverse of `S^s_h` by triangular solve on depth.
///
/// `S = I + R` where `R` strictly lowers depth, hence
/// `S^{-1}(w) = w - S^{-1}(R(w))` terminates.
pub struct SInverse {
    forward: SMap,
    memo: HashMap<Comp, Rc<NcPoly>>,
}

impl SInverse {
    pub fn new(s: CoefPoly) -> Self {
        Self { forward: SMap::new(s), memo: HashMap::new() }
    }

    pub fn apply(&mut self, w: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (comp, c) in w.to_comp_terms()? {
            let img = self.on_comp(&comp);
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    fn on_comp(&mut self, comp: &[u32]) -> Rc<NcPoly> {
        if let Some(p) = self.memo.get(comp) {
            return Rc::clone(p);
        }
        let word = Word::from_comp(comp);
        let mut lower = (*self.forward.on_comp(comp)).clone();
        lower.add_term(word.clone(), &-CoefPoly::one());
        let mut out = NcPoly::word(word);
        for (w, c) in lower.iter() {
            let sub = w.to_comp().expect("S preserves H^1");
            debug_assert!(sub.len() < comp.len(), "remainder must lower depth");
            let img = self.on_comp(&sub);
            out.add_scaled(&img, &-c);
        }
        let out = Rc::new(out);
        self.memo.insert(Comp::from_slice(comp), Rc::clone(&out));
        out
    }
}

pub fn s_map(w: &NcPoly, s: &CoefPoly) -> Result<NcPoly> {
    SMap::new(s.clone()).apply(w)
}

/// `S^t_h` with the symbolic parameter `t`.
pub fn s_map_t(w: &NcPoly) -> Result<NcPoly> {
    s_map(w, &CoefPoly::t())
}

/// `(S^t_h)^{-1}` computed as `S^{-t}_h`; in debug builds the result is
/// cross-checked against the triangular solve.
pub fn s_inverse(w: &NcPoly) -> Result<NcPoly> {
    let fast = s_map(w, &-CoefPoly::t())?;
    debug_assert_eq!(fast, s_inverse_triangular(w, &CoefPoly::t())?);
    Ok(fast)
}

pub fn s_inverse_triangular(w: &NcPoly, s: &CoefPoly) -> Result<NcPoly> {
    SInverse::new(s.clone()).apply(w)
}

/// Applies a multiplicative map given by the images of `x` and `y`.
pub fn apply_letter_map(w: &NcPoly, image_x: &NcPoly, image_y: &NcPoly) -> NcPoly {
    let mut cache: HashMap<Word, NcPoly> = HashMap::new();
    w.map_linear(|word| {
        if let Some(p) = cache.get(word) {
            return p.clone();
        }
        let mut acc = NcPoly::one();
        for &l in word.letters() {
            acc = acc.concat(match l {
                Letter::X => image_x,
                Letter::Y => image_y,
            });
        }
        cache.insert(word.clone(), acc.clone());
        acc
    })
}

/// `x ↦ x`, `y ↦ s x + y + h s`.
pub fn gamma_with(w: &NcPoly, s: &CoefPoly) -> NcPoly {
    let y_img = NcPoly::x().scale(s) + NcPoly::y() + NcPoly::scalar(&CoefPoly::h() * s);
    apply_letter_map(w, &NcPoly::x(), &y_img)
}

pub fn gamma_map(w: &NcPoly) -> NcPoly {
    gamma_with(w, &CoefPoly::t())
}

/// `x ↦ x`, `y ↦ y - t x - h t`.
pub fn gamma_inverse(w: &NcPoly) -> NcPoly {
    gamma_with(w, &-CoefPoly::t())
}

/// `x ↦ x + y`, `y ↦ -y`.
pub fn phi_map(w: &NcPoly) -> NcPoly {
    apply_letter_map(w, &(NcPoly::x() + NcPoly::y()), &-NcPoly::y())
}

/// `φ^t_h = -(S^t_h)^{-1} φ S^t_h` on H^1.
pub fn phi_t_map(w: &NcPoly) -> Result<NcPoly> {
    let mut maps = InterpMaps::new(CoefPoly::t());
    maps.phi_t(w)
}

/// The derivation with `∂1(x) = xy`, `∂1(y) = -xy`.
pub fn d1_derivation(w: &NcPoly) -> NcPoly {
    let xy: Word = Word::from_letters([Letter::X, Letter::Y]);
    w.map_linear(|word| {
        let mut out = NcPoly::zero();
        let letters = word.letters();
        for (i, &l) in letters.iter().enumerate() {
            let prefix = word.slice(0, i);
            let suffix = word.slice(i + 1, letters.len());
            let term = prefix.concat(&xy).concat(&suffix);
            let sign = match l {
                Letter::X => CoefPoly::one(),
                Letter::Y => -CoefPoly::one(),
            };
            out.add_term(term, &sign);
        }
        out
    })
}

pub fn left_mult_x(w: &NcPoly) -> NcPoly {
    w.prepend_word(&Word::x())
}

/// The maps above bundled with their memo tables for a fixed parameter.
pub struct InterpMaps {
    t: CoefPoly,
    s: SMap,
    s_neg: SMap,
    products: ProductEngine,
}

impl InterpMaps {
    pub fn new(t: CoefPoly) -> Self {
        Self { s: SMap::new(t.clone()), s_neg: SMap::new(-&t), products: ProductEngine::new(t.clone()), t }
    }

    pub fn t(&self) -> &CoefPoly {
        &self.t
    }

    pub fn products(&mut self) -> &mut ProductEngine {
        &mut self.products
    }

    pub fn s(&mut self, w: &NcPoly) -> Result<NcPoly> {
        self.s.apply(w)
    }

    pub fn s_inv(&mut self, w: &NcPoly) -> Result<NcPoly> {
        self.s_neg.apply(w)
    }

    pub fn phi_t(&mut self, w: &NcPoly) -> Result<NcPoly> {
        let sw = self.s(w)?;
        Ok(-self.s_inv(&phi_map(&sw))?)
    }

    /// `u ⊛^t v = S^{-1}(S(u) ⊛ S(v))`.
    pub fn t_circledast(&mut self, u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
        u.require_hy()?;
        v.require_hy()?;
        let su = self.s(u)?;
        let sv = self.s(v)?;
        let prod = self.products.circledast(&su, &sv)?;
        self.s_inv(&prod)
    }

    pub fn gamma(&self, w: &NcPoly) -> NcPoly {
        gamma_with(w, &self.t)
    }

    pub fn gamma_inv(&self, w: &NcPoly) -> NcPoly {
        gamma_with(w, &-&self.t)
    }
}

pub fn t_circledast(u: &NcPoly, v: &NcPoly) -> Result<NcPoly> {
    InterpMaps::new(CoefPoly::t()).t_circledast(u, v)
}

/// `(-t x + y - h t)^{i-1} y`, the image of `y^i` under `(S^t_h)^{-1}`.
pub fn shifted_y_power(i: u32, t: &CoefPoly) -> NcPoly {
    assert!(i >= 1);
    let base = NcPoly::x().scale(&-t) + NcPoly::y() - NcPoly::scalar(&CoefPoly::h() * t);
    base.pow(i - 1).concat(&NcPoly::y())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::rat_int;

    fn z(k: u32) -> NcPoly {
        NcPoly::z(k)
    }

    fn zs(p: &[u32]) -> NcPoly {
        NcPoly::zs(p)
    }

    fn t() -> CoefPoly {
        CoefPoly::t()
    }

    fn h() -> CoefPoly {
        CoefPoly::h()
    }

    fn w(s: &str) -> NcPoly {
        NcPoly::word(s.parse().unwrap())
    }

    #[test]
    fn s_map_examples() {
        assert_eq!(s_map_t(&z(2)).unwrap(), z(2));
        assert_eq!(s_map_t(&zs(&[2, 3])).unwrap(), zs(&[2, 3]) + (z(5) + z(4).scale(&h())).scale(&t()));
        assert_eq!(s_map_t(&zs(&[1, 1])).unwrap(), zs(&[1, 1]) + (z(2) + z(1).scale(&h())).scale(&t()));
        assert_eq!(s_map_t(&NcPoly::one()).unwrap(), NcPoly::one());
        assert!(s_map_t(&NcPoly::x()).is_err());
    }

    #[test]
    fn s_inverse_examples() {
        assert_eq!(s_inverse(&z(2)).unwrap(), z(2));
        assert_eq!(s_inverse(&zs(&[2, 3])).unwrap(), zs(&[2, 3]) - (z(5) + z(4).scale(&h())).scale(&t()));
        for i in 1..=4u32 {
            let yi = NcPoly::y().pow(i);
            assert_eq!(s_inverse(&yi).unwrap(), shifted_y_power(i, &t()), "y^{i}");
            assert_eq!(s_inverse_triangular(&yi, &t()).unwrap(), shifted_y_power(i, &t()));
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_map(&NcPoly::y()), NcPoly::x().scale(&t()) + NcPoly::y() + NcPoly::scalar(&h() * &t()));
        assert_eq!(gamma_map(&w("xy")), w("xx").scale(&t()) + w("xy") + w("x").scale(&(&h() * &t())));
        let p = w("xyyx") + w("yy").scale(&h());
        assert_eq!(gamma_inverse(&gamma_map(&p)), p);
        assert_eq!(gamma_map(&gamma_inverse(&p)), p);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_map(&NcPoly::y()), -NcPoly::y());
        assert_eq!(phi_map(&w("xy")), -w("xy") - w("yy"));
        let p = w("xxyx") + w("y").scale(&t());
        assert_eq!(phi_map(&phi_map(&p)), p);
    }

    #[test]
    fn phi_t_examples() {
        assert_eq!(phi_t_map(&NcPoly::y()).unwrap(), NcPoly::y());
        let want = z(2) + zs(&[1, 1]) - (z(2) + z(1).scale(&h())).scale(&t());
        assert_eq!(phi_t_map(&z(2)).unwrap(), want);
        let p = zs(&[2, 1, 1]);
        let at_zero = phi_t_map(&p).unwrap().subst_t(&rat_int(0));
        assert_eq!(at_zero, -phi_map(&p));
    }

    #[test]
    fn d1_examples() {
        assert_eq!(d1_derivation(&NcPoly::x()), w("xy"));
        assert_eq!(d1_derivation(&NcPoly::y()), -w("xy"));
        assert_eq!(d1_derivation(&z(2)), zs(&[2, 1]) - z(3));
        assert!(d1_derivation(&NcPoly::one()).is_zero());
    }

    #[test]
    fn left_mult_examples() {
        assert_eq!(left_mult_x(&NcPoly::y()), w("xy"));
        assert_eq!(left_mult_x(&NcPoly::one()), NcPoly::x());
    }

    #[test]
    fn t_circledast_examples() {
        let y = NcPoly::y();
        assert_eq!(t_circledast(&y, &y).unwrap(), z(2));
        // S(z1 z1) = z1 z1 + t(z2 + h z1); ⊛ with y, then S^{-1}
        let mut maps = InterpMaps::new(t());
        let manual = {
            let s = zs(&[1, 1]) + (z(2) + z(1).scale(&h())).scale(&t());
            let prod = crate::products::circledast(&s, &y).unwrap();
            s_inverse_triangular(&prod, &t()).unwrap()
        };
        assert_eq!(maps.t_circledast(&zs(&[1, 1]), &y).unwrap(), manual);
        // by hand: z1z1 ⊛ y = z2 z1, z2 ⊛ y = z3, z1 ⊛ y = z2
        // S^{-1}(z2 z1 + t z3 + h t z2) = z2 z1
        assert_eq!(manual, zs(&[2, 1]));
    }
}
