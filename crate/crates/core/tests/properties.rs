use proptest::prelude::*;
use tqmzv::coef::{rat, rat_int};
use tqmzv::cyclic::{c_map, rho1_closed_form, rho_map};
use tqmzv::maps::{d1_derivation, gamma_map, phi_map, phi_t_map, s_inverse_triangular, s_map, s_map_t};
use tqmzv::products::{circledast, ProductEngine};
use tqmzv::word::{index_from_word, word_from_index};
use tqmzv::zeta::Evaluator;
use tqmzv::{CoefPoly, Index, Letter, NcPoly, Word};

fn coef() -> impl Strategy<Value = CoefPoly> {
    prop::collection::vec(((0u32..2, 0u32..2), -3i64..=3), 1..3).prop_map(|terms| {
        let mut c = CoefPoly::zero();
        for (m, n) in terms {
            c.add_term(m, &rat_int(n));
        }
        c
    })
}

fn h1_word(max_weight: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=3, 0..=max_weight as usize).prop_map(move |mut parts| {
        while parts.iter().sum::<u32>() > max_weight {
            parts.pop();
        }
        Word::from_comp(&parts)
    })
}

fn any_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len)
        .prop_map(|bits| Word::from_letters(bits.into_iter().map(|b| if b { Letter::Y } else { Letter::X })))
}

fn poly_of(words: impl Strategy<Value = Word>) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((words, coef()), 0..3).prop_map(|terms| {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    })
}

fn h1_poly(max_weight: u32) -> impl Strategy<Value = NcPoly> {
    poly_of(h1_word(max_weight))
}

fn hy_word(max_weight: u32) -> impl Strategy<Value = Word> {
    h1_word(max_weight).prop_filter("nonempty", |w| !w.is_empty())
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn coefficient_ring(a in coef(), b in coef(), c in coef()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn concatenation_monoid(p in poly_of(any_word(3)), q in poly_of(any_word(2)), r in poly_of(any_word(2))) {
        prop_assert_eq!(p.concat(&q).concat(&r), p.concat(&q.concat(&r)));
        prop_assert_eq!(NcPoly::one().concat(&p), p.clone());
        prop_assert_eq!(p.concat(&NcPoly::one()), p.clone());
        prop_assert_eq!(p.concat(&(&q + &r)), &p.concat(&q) + &p.concat(&r));
    }

    #[test]
    fn weight_depth_additive(u in h1_word(6), v in h1_word(6)) {
        let uv = u.concat(&v);
        prop_assert_eq!(uv.weight(), u.weight() + v.weight());
        prop_assert_eq!(uv.depth(), u.depth() + v.depth());
        if !u.is_empty() {
            prop_assert_eq!(word_from_index(&index_from_word(&u).unwrap()), u);
        }
    }

    #[test]
    fn products_commute(u in h1_poly(5), v in h1_poly(5)) {
        let mut e = ProductEngine::default();
        prop_assert_eq!(e.star(&u, &v).unwrap(), e.star(&v, &u).unwrap());
        prop_assert_eq!(e.star_plus(&u, &v).unwrap(), e.star_plus(&v, &u).unwrap());
        prop_assert_eq!(e.t_star(&u, &v).unwrap(), e.t_star(&v, &u).unwrap());
    }

    #[test]
    fn products_associate(u in h1_word(5), v in h1_word(4), w in h1_word(3)) {
        let mut e = ProductEngine::default();
        let (u, v, w) = (NcPoly::word(u), NcPoly::word(v), NcPoly::word(w));
        let uv = e.star(&u, &v).unwrap();
        let vw = e.star(&v, &w).unwrap();
        prop_assert_eq!(e.star(&uv, &w).unwrap(), e.star(&u, &vw).unwrap());
        let uv = e.star_plus(&u, &v).unwrap();
        let vw = e.star_plus(&v, &w).unwrap();
        prop_assert_eq!(e.star_plus(&uv, &w).unwrap(), e.star_plus(&u, &vw).unwrap());
        let uv = e.t_star(&u, &v).unwrap();
        let vw = e.t_star(&v, &w).unwrap();
        prop_assert_eq!(e.t_star(&uv, &w).unwrap(), e.t_star(&u, &vw).unwrap());
    }

    #[test]
    fn specialization_tower(u in h1_poly(5), v in h1_poly(5)) {
        let mut sym = ProductEngine::default();
        let mut at0 = ProductEngine::new(CoefPoly::zero());
        let zero = rat_int(0);
        prop_assert_eq!(sym.t_star(&u, &v).unwrap().subst_t(&zero), at0.t_star(&u.subst_t(&zero), &v.subst_t(&zero)).unwrap());
        prop_assert_eq!(at0.t_star(&u, &v).unwrap(), at0.star_plus(&u, &v).unwrap());
        prop_assert_eq!(sym.star_plus(&u, &v).unwrap().subst_h(&zero), sym.star(&u.subst_h(&zero), &v.subst_h(&zero)).unwrap());
    }

    #[test]
    fn tstar_is_conjugated_star_plus(u in h1_poly(5), v in h1_poly(5)) {
        let mut e = ProductEngine::default();
        let lhs = e.t_star(&u, &v).unwrap();
        let su = s_map_t(&u).unwrap();
        let sv = s_map_t(&v).unwrap();
        let rhs = s_map(&e.star_plus(&su, &sv).unwrap(), &-CoefPoly::t()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_parameter_group(w in h1_poly(6), a in -2i64..=2, b in 1i64..=3) {
        let sa = CoefPoly::constant(rat(a, b));
        let t = CoefPoly::t();
        let composed = s_map(&s_map(&w, &sa).unwrap(), &t).unwrap();
        prop_assert_eq!(composed, s_map(&w, &(&sa + &t)).unwrap());
        let fwd = s_map_t(&w).unwrap();
        prop_assert_eq!(s_map(&fwd, &-&t).unwrap(), w.clone());
        prop_assert_eq!(s_inverse_triangular(&w, &t).unwrap(), s_map(&w, &-&t).unwrap());
    }

    #[test]
    fn phi_involutions(w in poly_of(any_word(6)), v in h1_poly(5)) {
        prop_assert_eq!(phi_map(&phi_map(&w)), w);
        prop_assert_eq!(phi_t_map(&phi_t_map(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn letter_maps_multiplicative(u in any_word(4), v in any_word(4)) {
        let (pu, pv) = (NcPoly::word(u.clone()), NcPoly::word(v.clone()));
        let uv = NcPoly::word(u.concat(&v));
        prop_assert_eq!(gamma_map(&uv), gamma_map(&pu).concat(&gamma_map(&pv)));
        prop_assert_eq!(phi_map(&uv), phi_map(&pu).concat(&phi_map(&pv)));
        prop_assert_eq!(d1_derivation(&uv), &d1_derivation(&pu).concat(&pv) + &pu.concat(&d1_derivation(&pv)));
    }

    #[test]
    fn grading_preserved(w in h1_word(6), dh in 0u32..2, dt in 0u32..2) {
        let p = NcPoly::term(w.clone(), CoefPoly::monomial(dh, dt, rat_int(1)));
        let g = w.weight() + dh as usize;
        let single = |q: &NcPoly| q.is_zero() || q.gradings().into_iter().eq([g]);
        prop_assert!(single(&s_map_t(&p).unwrap()));
        prop_assert!(single(&gamma_map(&p)));
        prop_assert!(single(&phi_t_map(&p).unwrap()));
        let d = d1_derivation(&p);
        prop_assert!(d.is_zero() || d.gradings().into_iter().eq([g + 1]));
    }

    #[test]
    fn circledast_lands_in_h0(u in hy_word(4), v in hy_word(4)) {
        let p = circledast(&NcPoly::word(u), &NcPoly::word(v)).unwrap();
        prop_assert!(p.all_in_h0());
    }

    #[test]
    fn cyclic_operator_shape(w in any_word(6), n in 1usize..=3) {
        let c = c_map(n, &NcPoly::word(w.clone())).unwrap();
        prop_assert_eq!(c.arity(), n + 1);
        if !w.is_empty() {
            prop_assert_eq!(rho_map(1, &NcPoly::word(w.clone())).unwrap(), rho1_closed_form(&w).unwrap());
        }
    }

    #[test]
    fn truncation_stable(parts in prop::collection::vec(1u32..=3, 1..=3), first in 2u32..=3, n in 0usize..=12) {
        let mut parts = parts;
        parts[0] = first;
        let idx = Index::new(parts).unwrap();
        let ev = Evaluator::new();
        let long = ev.zeta_q_t(&idx, n + 5).unwrap();
        prop_assert_eq!(long.truncate(n), ev.zeta_q_t(&idx, n).unwrap());
    }
}

#[test]
fn cyclic_operator_kills_unit() {
    for n in 1..=3 {
        let c = c_map(n, &NcPoly::one()).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.arity(), n + 1);
    }
}
