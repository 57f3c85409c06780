//! Exact q-series evaluation of ζ_q, ζ_q⋆, the interpolated ζ_q^t and the
//! evaluation map on words.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::DiskCache;
use crate::coef::{binomial, CoefPoly, Rational};
use crate::error::Result;
use crate::maps::SMap;
use crate::ncpoly::NcPoly;
use crate::qseries::{QSeries, TPoly};
use crate::word::Index;

/// Integer series truncated at a fixed length; the DP only ever adds and
/// subtracts, so exact integers suffice.
type IntSeries = Vec<BigInt>;

fn int_to_qseries(v: &[BigInt]) -> QSeries {
    QSeries::from_coeffs(v.iter().map(|c| TPoly::constant(Rational::from_integer(c.clone()))).collect())
}

/// Multiplies in place by `(1 - q)^k / (1 - q^m)^k`.
fn apply_inv_bracket(a: &mut IntSeries, m: usize, k: u32) {
    for _ in 0..k {
        for n in (1..a.len()).rev() {
            let prev = a[n - 1].clone();
            a[n] -= prev;
        }
    }
    for _ in 0..k {
        for n in m..a.len() {
            let prev = a[n - m].clone();
            a[n] += prev;
        }
    }
}

/// `(1-q)^k / (1-q^m)^k` to order N, expanded as
/// `(1-q)^k Σ_r C(k-1+r, r) q^{mr}`.
pub fn inv_qbracket_pow(m: usize, k: u32, order: usize) -> QSeries {
    assert!(m >= 1 && k >= 1, "bracket exponent and argument are positive");
    let mut geo = vec![BigInt::zero(); order + 1];
    for r in 0..=order / m {
        geo[m * r] = binomial(k as u64 - 1 + r as u64, r as u64);
    }
    let pre = QSeries::one_minus_q_pow(order, k);
    &pre * &int_to_qseries(&geo)
}

fn zeta_dp(parts: &[u32], order: usize, star: bool) -> IntSeries {
    let len = order + 1;
    // g[m] holds G_{j+1}(m) for the level below the current one.
    let mut below: Vec<IntSeries> = {
        let mut one = vec![BigInt::zero(); len];
        one[0] = BigInt::one();
        vec![one; len]
    };
    for &k in parts.iter().rev() {
        let mut cur: Vec<IntSeries> = Vec::with_capacity(len);
        cur.push(vec![BigInt::zero(); len]);
        for m in 1..len {
            let mut next = cur[m - 1].clone();
            let shift = (k as usize - 1) * m;
            if shift < len {
                let src = if star { &below[m] } else { &below[m - 1] };
                let mut term: IntSeries = src[..len - shift].to_vec();
                apply_inv_bracket(&mut term, m, k);
                for (n, c) in term.into_iter().enumerate() {
                    if !c.is_zero() {
                        next[n + shift] += c;
                    }
                }
            }
            cur.push(next);
        }
        below = cur;
    }
    below.pop().expect("order + 1 levels")
}

fn check_admissible(idx: &Index) -> Result<()> {
    idx.require_admissible()
}

/// `ζ_q(k_1, ..., k_l)` exactly modulo `q^{N+1}`.
pub fn zeta_q(idx: &Index, order: usize) -> Result<QSeries> {
    check_admissible(idx)?;
    Ok(int_to_qseries(&zeta_dp(idx.parts(), order, false)))
}

/// `ζ_q⋆` (non-strict summation) exactly modulo `q^{N+1}`.
pub fn zeta_q_star(idx: &Index, order: usize) -> Result<QSeries> {
    check_admissible(idx)?;
    Ok(int_to_qseries(&zeta_dp(idx.parts(), order, true)))
}

/// All indices obtained by filling each gap of `parts` with `,`, `+` or
/// `-1+`, together with their weight and depth deficits `(k - wt, l - dep)`.
pub fn fillers(parts: &[u32]) -> Vec<(Index, u32, u32)> {
    let k: u32 = parts.iter().sum();
    let l = parts.len() as u32;
    let mut out = Vec::new();
    let mut stack: Vec<u32> = vec![parts[0]];
    fn rec(rest: &[u32], stack: &mut Vec<u32>, k: u32, l: u32, out: &mut Vec<(Index, u32, u32)>) {
        let Some((&next, tail)) = rest.split_first() else {
            let wt: u32 = stack.iter().sum();
            let idx = Index::new(stack.clone()).expect("fillers keep parts positive");
            out.push((idx, k - wt, l - stack.len() as u32));
            return;
        };
        stack.push(next);
        rec(tail, stack, k, l, out);
        stack.pop();
        let last = stack.len() - 1;
        stack[last] += next;
        rec(tail, stack, k, l, out);
        stack[last] -= 1;
        rec(tail, stack, k, l, out);
        stack[last] += 1;
        stack[last] -= next;
    }
    rec(&parts[1..], &mut stack, k, l, &mut out);
    out
}

/// Thread-safe evaluator memoizing `ζ_q` by `(index, N)`, optionally backed
/// by an advisory on-disk cache.
#[derive(Default)]
pub struct Evaluator {
    memo: Mutex<HashMap<(Vec<u32>, usize), Arc<QSeries>>>,
    disk: Option<DiskCache>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_disk_cache(disk: DiskCache) -> Self {
        Evaluator { memo: Mutex::default(), disk: Some(disk) }
    }

    /// Uses the directory named by [`crate::cache::CACHE_ENV`] if set.
    pub fn from_env() -> Self {
        match DiskCache::from_env() {
            Some(d) => Self::with_disk_cache(d),
            None => Self::new(),
        }
    }

    pub fn zeta_q(&self, idx: &Index, order: usize) -> Result<Arc<QSeries>> {
        check_admissible(idx)?;
        let key = (idx.parts().to_vec(), order);
        if let Some(s) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(Arc::clone(s));
        }
        let series = match self.disk.as_ref().and_then(|d| d.get(idx, order)) {
            Some(s) => s,
            None => {
                let s = int_to_qseries(&zeta_dp(idx.parts(), order, false));
                if let Some(d) = &self.disk {
                    d.put(idx, &s);
                }
                s
            }
        };
        let series = Arc::new(series);
        self.memo.lock().expect("memo lock").insert(key, Arc::clone(&series));
        Ok(series)
    }

    pub fn zeta_q_star(&self, idx: &Index, order: usize) -> Result<QSeries> {
        zeta_q_star(idx, order)
    }

    /// `ζ_q^t` by summing over all fillers.
    pub fn zeta_q_t(&self, idx: &Index, order: usize) -> Result<QSeries> {
        check_admissible(idx)?;
        let mut out = QSeries::zero(order);
        for (p, dw, dd) in fillers(idx.parts()) {
            let z = self.zeta_q(&p, order)?;
            for j in 0..=dw as usize {
                let mut c = Rational::from_integer(binomial(dw as u64, j as u64));
                if j % 2 == 1 {
                    c = -c;
                }
                out.add_shifted(&z, j, dd as usize, &c);
            }
        }
        Ok(out)
    }

    /// Evaluates words as plain `ζ_q` with `h := 1 - q` in the coefficients.
    pub fn z0_eval(&self, p: &NcPoly, order: usize) -> Result<QSeries> {
        p.require_h0()?;
        let mut out = QSeries::zero(order);
        for (comp, coef) in p.to_comp_terms()? {
            let z = if comp.is_empty() {
                Arc::new(QSeries::one(order))
            } else {
                self.zeta_q(&Index::new(comp.to_vec())?, order)?
            };
            add_coef_times(&mut out, &z, coef);
        }
        Ok(out)
    }

    /// `Z_q^t(P)`: applies the interpolation map and then [`Self::z0_eval`].
    pub fn z_eval(&self, p: &NcPoly, order: usize) -> Result<QSeries> {
        self.z_eval_with(p, order, &mut SMap::new(CoefPoly::t()))
    }

    /// As [`Self::z_eval`], reusing the memo of `s` (whose parameter may be a
    /// specialized value of t).
    pub fn z_eval_with(&self, p: &NcPoly, order: usize, s: &mut SMap) -> Result<QSeries> {
        p.require_h0()?;
        let image = s.apply(p)?;
        self.z0_eval(&image, order)
    }

    /// Word-wise evaluation through [`Self::zeta_q_t`], without the
    /// interpolation map.
    pub fn z_eval_direct(&self, p: &NcPoly, order: usize) -> Result<QSeries> {
        p.require_h0()?;
        let mut out = QSeries::zero(order);
        for (comp, coef) in p.to_comp_terms()? {
            let z = if comp.is_empty() {
                QSeries::one(order)
            } else {
                self.zeta_q_t(&Index::new(comp.to_vec())?, order)?
            };
            add_coef_times(&mut out, &z, coef);
        }
        Ok(out)
    }
}

/// `out += f(coef) * z` where `f` sends h to 1 - q.
fn add_coef_times(out: &mut QSeries, z: &QSeries, coef: &CoefPoly) {
    for ((qpow, tdeg), r) in coef.subst_h_one_minus_q() {
        out.add_shifted(z, qpow as usize, tdeg as usize, &r);
    }
}

/// `ζ_q^t` with a fresh evaluator.
pub fn zeta_q_t_direct(idx: &Index, order: usize) -> Result<QSeries> {
    Evaluator::new().zeta_q_t(idx, order)
}

/// `Z_q^t(P)` with a fresh evaluator.
pub fn z_eval(p: &NcPoly, order: usize) -> Result<QSeries> {
    Evaluator::new().z_eval(p, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::rat_int;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn ints(order: usize, v: &[i64]) -> QSeries {
        QSeries::from_rationals(order, &v.iter().map(|&n| rat_int(n)).collect::<Vec<_>>())
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(inv_qbracket_pow(1, 1, 5), QSeries::one(5));
        assert_eq!(inv_qbracket_pow(2, 1, 3), ints(3, &[1, -1, 1, -1]));
        assert_eq!(inv_qbracket_pow(2, 2, 3), ints(3, &[1, -2, 3, -4]));
    }

    #[test]
    fn zeta_two() {
        assert_eq!(zeta_q(&idx("2"), 4).unwrap(), ints(4, &[0, 1, 1, -1, 2]));
    }

    #[test]
    fn non_admissible_rejected() {
        assert!(zeta_q(&idx("1,2"), 5).is_err());
        assert!(zeta_q_star(&idx("1"), 5).is_err());
        assert!(zeta_q_t_direct(&idx("1,1"), 5).is_err());
    }

    #[test]
    fn depth_one_star_agrees() {
        for k in 2..=4 {
            let i = Index::new(vec![k]).unwrap();
            assert_eq!(zeta_q(&i, 15).unwrap(), zeta_q_star(&i, 15).unwrap());
        }
    }

    #[test]
    fn fillers_of_two_one() {
        let f: Vec<String> = fillers(&[2, 1]).iter().map(|(p, dw, dd)| format!("{p}/{dw}/{dd}")).collect();
        assert_eq!(f, ["2,1/0/0", "3/0/1", "2/1/1"]);
        assert_eq!(fillers(&[2, 1, 3]).len(), 9);
    }

    #[test]
    fn evaluator_routes_agree_on_z2z1() {
        let ev = Evaluator::new();
        let p = NcPoly::zs(&[2, 1]);
        let a = ev.z_eval(&p, 10).unwrap();
        let b = ev.z_eval_direct(&p, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, ev.zeta_q_t(&idx("2,1"), 10).unwrap());
    }

    #[test]
    fn h_becomes_one_minus_q() {
        let ev = Evaluator::new();
        let p = NcPoly::zs(&[2]).scale(&CoefPoly::h());
        let expect = &QSeries::one_minus_q_pow(8, 1) * &zeta_q(&idx("2"), 8).unwrap();
        assert_eq!(ev.z_eval(&p, 8).unwrap(), expect);
        assert_eq!(ev.z_eval(&NcPoly::one(), 3).unwrap(), QSeries::one(3));
    }

    #[test]
    fn z_eval_rejects_words_outside_h0() {
        let ev = Evaluator::new();
        assert!(ev.z_eval(&NcPoly::zs(&[1, 2]), 5).is_err());
        assert!(ev.z_eval(&NcPoly::x(), 5).is_err());
    }
}
