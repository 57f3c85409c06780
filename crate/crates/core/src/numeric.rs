//! Floating-point summation of the defining series, for spot checks only.

use crate::coef::CoefPoly;
use crate::error::{Error, Result};
use crate::maps::SMap;
use crate::ncpoly::NcPoly;
use crate::word::Index;
use crate::zeta::fillers;

const MAX_TERMS: usize = 50_000_000;

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::QOutOfRange(q))
    }
}

/// Sums `Σ_{m_1 > ... > m_l}` (or `≥` when `star`) until the estimated tail
/// of the outer sum drops below `eps`.
fn dp_f64(parts: &[u32], q: f64, eps: f64, star: bool) -> f64 {
    let l = parts.len();
    // g[j] = G_{j}(m) for j = 0..l, g[l] = 1.
    let mut g = vec![0.0; l + 1];
    g[l] = 1.0;
    let mut prev_term = f64::INFINITY;
    let mut qm = 1.0;
    for _ in 0..MAX_TERMS {
        qm *= q;
        let ratio = (1.0 - q) / (1.0 - qm);
        let old = g.clone();
        let mut outer = 0.0;
        for j in (0..l).rev() {
            let k = parts[j] as i32;
            let a = qm.powi(k - 1) * ratio.powi(k);
            let inner = if star { g[j + 1] } else { old[j + 1] };
            let term = a * inner;
            g[j] += term;
            if j == 0 {
                outer = term;
            }
        }
        if outer > 0.0 && outer < prev_term {
            let rho = outer / prev_term;
            if outer * rho / (1.0 - rho) < eps && outer < eps {
                break;
            }
        }
        prev_term = outer;
    }
    g[0]
}

pub fn zeta_q_f64(idx: &Index, q: f64, eps: f64) -> Result<f64> {
    check_q(q)?;
    idx.require_admissible()?;
    Ok(dp_f64(idx.parts(), q, eps, false))
}

pub fn zeta_q_star_f64(idx: &Index, q: f64, eps: f64) -> Result<f64> {
    check_q(q)?;
    idx.require_admissible()?;
    Ok(dp_f64(idx.parts(), q, eps, true))
}

/// `ζ_q^t` at numeric `(q, t)` via the filler expansion.
pub fn zeta_q_t_f64(idx: &Index, q: f64, t: f64, eps: f64) -> Result<f64> {
    check_q(q)?;
    idx.require_admissible()?;
    Ok(fillers(idx.parts())
        .iter()
        .map(|(p, dw, dd)| (1.0 - q).powi(*dw as i32) * t.powi(*dd as i32) * dp_f64(p.parts(), q, eps, false))
        .sum())
}

/// `Z_q^t(P)` at numeric `(q, t)`: the interpolation map is applied
/// symbolically, then each word is summed with `h = 1 - q`.
pub fn numeric_eval(p: &NcPoly, q: f64, t: f64, eps: f64) -> Result<f64> {
    check_q(q)?;
    p.require_h0()?;
    let image = SMap::new(CoefPoly::t()).apply(p)?;
    let mut total = 0.0;
    for (comp, coef) in image.to_comp_terms()? {
        let c = coef.eval_f64(1.0 - q, t);
        if comp.is_empty() {
            total += c;
        } else {
            total += c * dp_f64(&comp, q, eps, false);
        }
    }
    Ok(total)
}
