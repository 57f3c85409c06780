//! Naive enumeration oracle shared by the integration tests.

use num_bigint::BigInt;
use num_traits::Zero;
use tqmzv::coef::Rational;
use tqmzv::QSeries;

pub type Series = Vec<BigInt>;

pub fn mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / [m]` by inverting `1 + q + ... + q^{m-1}` term by term.
pub fn inv_bracket(m: usize, len: usize) -> Series {
    let mut b = vec![BigInt::zero(); len];
    b[0] = BigInt::from(1);
    for n in 1..len {
        let mut acc = BigInt::zero();
        for i in 1..m.min(n + 1) {
            acc -= &b[n - i];
        }
        b[n] = acc;
    }
    b
}

/// Sum over all tuples `m_1 > m_2 > ... ≥ 1` (or `≥` when `star`) with
/// `m_1 ≤ N`, every summand expanded separately.
pub fn brute(parts: &[u32], order: usize, star: bool) -> QSeries {
    let len = order + 1;
    let mut total = vec![BigInt::zero(); len];
    fn rec(parts: &[u32], bound: usize, star: bool, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if chosen.len() == parts.len() {
            f(chosen);
            return;
        }
        let top = if chosen.is_empty() { bound } else if star { chosen[chosen.len() - 1] } else { chosen[chosen.len() - 1] - 1 };
        for m in 1..=top {
            chosen.push(m);
            rec(parts, bound, star, chosen, f);
            chosen.pop();
        }
    }
    rec(parts, order, star, &mut Vec::new(), &mut |ms: &[usize]| {
        let shift: usize = parts.iter().zip(ms).map(|(&k, &m)| (k as usize - 1) * m).sum();
        if shift >= len {
            return;
        }
        let mut term = vec![BigInt::zero(); len];
        term[shift] = BigInt::from(1);
        for (&k, &m) in parts.iter().zip(ms) {
            let inv = inv_bracket(m, len);
            for _ in 0..k {
                term = mul(&term, &inv, len);
            }
        }
        for (a, b) in total.iter_mut().zip(term) {
            *a += b;
        }
    });
    QSeries::from_rationals(order, &total.into_iter().map(Rational::from_integer).collect::<Vec<_>>())
}
