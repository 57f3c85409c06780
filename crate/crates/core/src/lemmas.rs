//! Exhaustive symbolic checks of the structural identities behind the
//! relations: how S interacts with `∘+`, `γ`, `*+`, the cyclic operators
//! and left multiplication by x.

use rayon::prelude::*;
use serde_json::{json, Map};

use crate::coef::CoefPoly;
use crate::cyclic::{cyclic_rotations, rho_map_with};
use crate::error::Result;
use crate::maps::{gamma_with, left_mult_x, InterpMaps};
use crate::ncpoly::NcPoly;
use crate::products::{circ_action, circ_plus};
use crate::relations::VerificationReport;
use crate::word::{words_up_to, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `S(a ∘+ w) = a ∘+ S(w)`.
    SCircPlus,
    /// `S(wy) = γ(w) y`.
    SGamma,
    /// `γ(z_k)v *+ z_l w` expansion.
    GammaLeft,
    /// `S(z_k v) *+ z_l w` expansion.
    SLeft,
    /// `x^k v *+ γ(z_l)w` expansion.
    GammaRight,
    /// `γ(z_k)v *+ γ(z_l)w` expansion.
    GammaBoth,
    /// `v *^t w = S^{-1}(S v *+ S w)`.
    TStarConjugate,
    /// `ρ_{n,0} = S ρ_{n,t}`.
    RhoSpecialization,
    /// `ρ_{1,t}` is constant on cyclic classes.
    RhoCyclic,
    /// `S L_x = L_x S`.
    SLeftX,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::SCircPlus,
        Lemma::SGamma,
        Lemma::GammaLeft,
        Lemma::SLeft,
        Lemma::GammaRight,
        Lemma::GammaBoth,
        Lemma::TStarConjugate,
        Lemma::RhoSpecialization,
        Lemma::RhoCyclic,
        Lemma::SLeftX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::SCircPlus => "s-circ-plus",
            Lemma::SGamma => "s-gamma",
            Lemma::GammaLeft => "gamma-left",
            Lemma::SLeft => "s-left",
            Lemma::GammaRight => "gamma-right",
            Lemma::GammaBoth => "gamma-both",
            Lemma::TStarConjugate => "tstar-conjugate",
            Lemma::RhoSpecialization => "rho-specialization",
            Lemma::RhoCyclic => "rho-cyclic",
            Lemma::SLeftX => "s-left-x",
        }
    }

    /// Words quantified freely; three-word statements use one less letter.
    fn free_words(self) -> usize {
        match self {
            Lemma::GammaRight => 3,
            _ => 2,
        }
    }
}

/// Range of the integer parameters `k, l, p`.
const MAX_LETTER: u32 = 3;

fn h1_words(max_len: usize) -> Vec<Word> {
    words_up_to(max_len).into_iter().filter(Word::in_h1).collect()
}

fn hy_words(max_len: usize) -> Vec<Word> {
    h1_words(max_len).into_iter().filter(|w| !w.is_empty()).collect()
}

fn w(word: &Word) -> NcPoly {
    NcPoly::word(word.clone())
}

struct Checker {
    maps: InterpMaps,
    t: CoefPoly,
    cases: usize,
    mismatch: Option<String>,
}

impl Checker {
    fn check(&mut self, label: impl FnOnce() -> String, lhs: &NcPoly, rhs: &NcPoly) {
        self.cases += 1;
        if self.mismatch.is_none() && lhs != rhs {
            self.mismatch = Some(format!("{}: difference {}", label(), lhs - rhs));
        }
    }

    fn star_plus(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.maps.products().star_plus(a, b)
    }

    fn gz(&self, k: u32) -> NcPoly {
        gamma_with(&NcPoly::z(k), &self.t)
    }
}

fn run(lemma: Lemma, max_weight: usize) -> Result<VerificationReport> {
    let t = CoefPoly::t();
    let mut c = Checker { maps: InterpMaps::new(t.clone()), t: t.clone(), cases: 0, mismatch: None };
    let wt = max_weight + 2 - lemma.free_words();
    let one_minus_t = &CoefPoly::one() - &t;
    let ks = 1..=MAX_LETTER;
    match lemma {
        Lemma::SCircPlus => {
            for a in 1..=4 {
                for word in h1_words(wt) {
                    let za = NcPoly::z(a);
                    let lhs = c.maps.s(&circ_action(&za, &w(&word))?)?;
                    let sw = c.maps.s(&w(&word))?;
                    let rhs = circ_action(&za, &sw)?;
                    c.check(|| format!("a=z{a} w={word}"), &lhs, &rhs);
                }
            }
        }
        Lemma::SGamma => {
            for word in words_up_to(wt) {
                let wy = w(&word.concat(&Word::y()));
                let lhs = c.maps.s(&wy)?;
                let rhs = gamma_with(&w(&word), &t).append_word(&Word::y());
                c.check(|| format!("w={word}"), &lhs, &rhs);
            }
        }
        Lemma::GammaLeft => {
            for k in ks.clone() {
                for l in ks.clone() {
                    for v in hy_words(wt) {
                        for ww in h1_words(wt) {
                            let (pv, pw) = (w(&v), w(&ww));
                            let gk = c.gz(k);
                            let zl_w = NcPoly::z(l).concat(&pw);
                            let lhs = c.star_plus(&gk.concat(&pv), &zl_w)?;
                            let mut rhs = gk.concat(&c.star_plus(&pv, &zl_w)?);
                            rhs += &NcPoly::z(l).concat(&c.star_plus(&gk.concat(&pv), &pw)?);
                            let join = circ_plus(&NcPoly::z(k), &NcPoly::z(l))?;
                            rhs += &join.concat(&c.star_plus(&pv, &pw)?).scale(&one_minus_t);
                            c.check(|| format!("k={k} l={l} v={v} w={ww}"), &lhs, &rhs);
                        }
                    }
                }
            }
        }
        Lemma::SLeft => {
            for k in ks.clone() {
                for l in ks.clone() {
                    for v in h1_words(wt) {
                        for ww in h1_words(wt) {
                            let (pv, pw) = (w(&v), w(&ww));
                            let s_zkv = c.maps.s(&NcPoly::z(k).concat(&pv))?;
                            let sv = c.maps.s(&pv)?;
                            let zl_w = NcPoly::z(l).concat(&pw);
                            let lhs = c.star_plus(&s_zkv, &zl_w)?;
                            let mut rhs = c.gz(k).concat(&c.star_plus(&sv, &zl_w)?);
                            rhs += &NcPoly::z(l).concat(&c.star_plus(&s_zkv, &pw)?);
                            let join = circ_plus(&NcPoly::z(k), &NcPoly::z(l))?;
                            rhs += &join.concat(&c.star_plus(&sv, &pw)?).scale(&one_minus_t);
                            c.check(|| format!("k={k} l={l} v={v} w={ww}"), &lhs, &rhs);
                        }
                    }
                }
            }
        }
        Lemma::GammaRight => {
            for k in 0..=MAX_LETTER {
                for l in ks.clone() {
                    for p in ks.clone() {
                        for big_v in h1_words(wt) {
                            for ww in hy_words(wt) {
                                let (pbv, pw) = (w(&big_v), w(&ww));
                                let v = NcPoly::z(p).concat(&pbv);
                                let xkv = NcPoly::x().pow(k).concat(&v);
                                let gl = c.gz(l);
                                let gl_w = gl.concat(&pw);
                                let lhs = c.star_plus(&xkv, &gl_w)?;
                                let mut rhs = NcPoly::z(k + p).concat(&c.star_plus(&pbv, &gl_w)?);
                                rhs += &gl.concat(&c.star_plus(&xkv, &pw)?);
                                let join = circ_plus(&NcPoly::z(k + p), &NcPoly::z(l))?;
                                rhs += &join.concat(&c.star_plus(&pbv, &pw)?).scale(&one_minus_t);
                                c.check(|| format!("k={k} l={l} p={p} V={big_v} w={ww}"), &lhs, &rhs);
                            }
                        }
                    }
                }
            }
        }
        Lemma::GammaBoth => {
            for k in ks.clone() {
                for l in ks.clone() {
                    for v in hy_words(wt) {
                        for ww in hy_words(wt) {
                            let (pv, pw) = (w(&v), w(&ww));
                            let (gk, gl) = (c.gz(k), c.gz(l));
                            let lhs = c.star_plus(&gk.concat(&pv), &gl.concat(&pw))?;
                            let mut rhs = gk.concat(&c.star_plus(&pv, &gl.concat(&pw))?);
                            rhs += &gl.concat(&c.star_plus(&gk.concat(&pv), &pw)?);
                            let xk = NcPoly::x().pow(k) + NcPoly::x().pow(k - 1).scale(&CoefPoly::h());
                            let join = circ_plus(&NcPoly::z(k), &NcPoly::z(l))?;
                            let factor = join.scale(&one_minus_t) - xk.concat(&gl).scale(&t);
                            rhs += &factor.concat(&c.star_plus(&pv, &pw)?);
                            c.check(|| format!("k={k} l={l} v={v} w={ww}"), &lhs, &rhs);
                        }
                    }
                }
            }
        }
        Lemma::TStarConjugate => {
            for v in h1_words(wt) {
                for ww in h1_words(wt) {
                    let (pv, pw) = (w(&v), w(&ww));
                    let lhs = c.maps.products().t_star(&pv, &pw)?;
                    let sv = c.maps.s(&pv)?;
                    let sw = c.maps.s(&pw)?;
                    let prod = c.star_plus(&sv, &sw)?;
                    let rhs = c.maps.s_inv(&prod)?;
                    c.check(|| format!("v={v} w={ww}"), &lhs, &rhs);
                }
            }
        }
        Lemma::RhoSpecialization => {
            let zero = CoefPoly::zero();
            for n in 1..=3 {
                for word in words_up_to(wt) {
                    let pw = w(&word);
                    let rho_t = rho_map_with(n, &pw, &t)?;
                    let rebuilt = rho_map_with(n, &pw, &zero)?;
                    let substituted = rho_t.subst_t(&crate::coef::rat_int(0));
                    c.check(|| format!("n={n} w={word} (t=0 routes)"), &rebuilt, &substituted);
                    let rhs = c.maps.s(&rho_t)?;
                    c.check(|| format!("n={n} w={word}"), &rebuilt, &rhs);
                }
            }
        }
        Lemma::RhoCyclic => {
            for word in words_up_to(wt).into_iter().filter(|w| !w.is_empty()) {
                let base = rho_map_with(1, &w(&word), &t)?;
                for r in cyclic_rotations(&word)?.into_iter().skip(1) {
                    let other = rho_map_with(1, &w(&r), &t)?;
                    c.check(|| format!("{word} ~ {r}"), &base, &other);
                }
            }
        }
        Lemma::SLeftX => {
            for word in hy_words(wt) {
                let pw = w(&word);
                let lhs = c.maps.s(&left_mult_x(&pw))?;
                let rhs = left_mult_x(&c.maps.s(&pw)?);
                c.check(|| format!("w={word}"), &lhs, &rhs);
            }
        }
    }
    let mut params = Map::new();
    params.insert("maxWeight".into(), json!(wt));
    params.insert("cases".into(), json!(c.cases));
    Ok(VerificationReport::symbolic(lemma.name(), params, c.mismatch))
}

/// Checks a single identity over all words of at most `max_weight` letters
/// (one letter fewer when three words are quantified).
pub fn verify_lemma(lemma: Lemma, max_weight: usize) -> Result<VerificationReport> {
    run(lemma, max_weight)
}

/// Runs every identity; reports come back in [`Lemma::ALL`] order.
pub fn verify_lemma_suite(max_weight: usize) -> Result<Vec<VerificationReport>> {
    Lemma::ALL.par_iter().map(|&l| run(l, max_weight)).collect()
}
