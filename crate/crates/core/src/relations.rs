//! Verifiers for the relation families among interpolated q-MZVs: exact
//! series comparisons that produce [`VerificationReport`]s.

use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::coef::{binomial, rational_to_string, CoefPoly, Rational};
use crate::cyclic::{csf_kernel_element_with, rho_map_with};
use crate::error::{Error, Result};
use crate::maps::{d1_derivation, shifted_y_power, InterpMaps, SMap};
use crate::ncpoly::NcPoly;
use crate::qseries::{QSeries, TPoly};
use crate::word::{hy_words_up_to, Index, Word};
use crate::zeta::Evaluator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First q-power at which the two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstDiff {
    #[serde(rename = "qPower")]
    pub q_power: usize,
    pub lhs: Vec<(usize, String)>,
    pub rhs: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relation: String,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(rename = "firstDiff")]
    pub first_diff: Option<FirstDiff>,
    /// For symbolic checks, the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mismatch: Option<String>,
}

impl VerificationReport {
    /// Compares two series up to the smaller order.
    pub fn compare(relation: &str, params: Map<String, Value>, lhs: &QSeries, rhs: &QSeries) -> Self {
        let first_diff = lhs.first_difference(rhs).map(|(n, l, r)| FirstDiff {
            q_power: n,
            lhs: l.to_pairs(),
            rhs: r.to_pairs(),
        });
        VerificationReport {
            relation: relation.into(),
            params,
            status: if first_diff.is_none() { Status::Pass } else { Status::Fail },
            first_diff,
            mismatch: None,
        }
    }

    pub fn symbolic(relation: &str, params: Map<String, Value>, mismatch: Option<String>) -> Self {
        VerificationReport {
            relation: relation.into(),
            params,
            status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
            first_diff: None,
            mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialize")
    }

    pub fn from_json_line(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn first_diff_tpolys(&self) -> Option<(usize, TPoly, TPoly)> {
        let d = self.first_diff.as_ref()?;
        Some((d.q_power, TPoly::from_pairs(&d.lhs).ok()?, TPoly::from_pairs(&d.rhs).ok()?))
    }
}

/// Default verification order for an instance of the given weight.
pub fn default_order(weight: usize) -> usize {
    weight + 12
}

/// Runs relation checks with the interpolation parameter either symbolic
/// (`t`) or specialized to a rational value before any construction.
pub struct Verifier {
    ev: Arc<Evaluator>,
    t: CoefPoly,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Verifier {
    pub fn new() -> Self {
        Self::with_evaluator(Arc::new(Evaluator::new()), CoefPoly::t())
    }

    /// Specializes `t` to `value` from the start.
    pub fn at(value: Rational) -> Self {
        Self::with_evaluator(Arc::new(Evaluator::new()), CoefPoly::constant(value))
    }

    pub fn with_evaluator(ev: Arc<Evaluator>, t: CoefPoly) -> Self {
        Verifier { ev, t }
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    pub fn t(&self) -> &CoefPoly {
        &self.t
    }

    fn symbolic_t(&self) -> bool {
        self.t == CoefPoly::t()
    }

    fn params(&self, mut p: Map<String, Value>, order: usize) -> Map<String, Value> {
        p.insert("N".into(), json!(order));
        let t = match self.t.as_constant() {
            Some(c) => rational_to_string(&c),
            None => "t".into(),
        };
        p.insert("t".into(), json!(t));
        p
    }

    fn maps(&self) -> InterpMaps {
        InterpMaps::new(self.t.clone())
    }

    /// `Z_q^t(P)` under this verifier's parameter.
    pub fn z(&self, p: &NcPoly, order: usize, s: &mut SMap) -> Result<QSeries> {
        self.ev.z_eval_with(p, order, s)
    }

    /// `ζ_q^t(idx)`: the filler sum when t is symbolic, otherwise the
    /// interpolation map with t already specialized.
    pub fn zeta_t(&self, idx: &Index, order: usize) -> Result<QSeries> {
        if self.symbolic_t() {
            self.ev.zeta_q_t(idx, order)
        } else {
            self.ev.z_eval_with(&NcPoly::zs(idx.parts()), order, &mut SMap::new(self.t.clone()))
        }
    }

    /// Both sides of the Kawashima-type relation for given `m, v, w`.
    pub fn kawashima_sides(&self, m: u32, v: &NcPoly, w: &NcPoly, order: usize) -> Result<(QSeries, QSeries)> {
        if m < 1 {
            return Err(Error::InvalidIndex("m must be at least 1".into()));
        }
        v.require_hy()?;
        w.require_hy()?;
        let mut maps = self.maps();
        let mut s = SMap::new(self.t.clone());
        let phi_v = maps.phi_t(v)?;
        let phi_w = maps.phi_t(w)?;
        let mut lhs = QSeries::zero(order);
        for i in 1..m {
            let j = m - i;
            let a = maps.t_circledast(&phi_v, &shifted_y_power(i, &self.t))?;
            let b = maps.t_circledast(&phi_w, &shifted_y_power(j, &self.t))?;
            lhs.add_assign(&(&self.z(&a, order, &mut s)? * &self.z(&b, order, &mut s)?));
        }
        let sv = maps.s(v)?;
        let sw = maps.s(w)?;
        let prod = maps.products().star(&sv, &sw)?;
        let inner = maps.s_inv(&prod)?;
        let phi = maps.phi_t(&inner)?;
        let arg = maps.t_circledast(&phi, &shifted_y_power(m, &self.t))?;
        let rhs = -&self.z(&arg, order, &mut s)?;
        Ok((lhs, rhs))
    }

    pub fn kawashima(&self, m: u32, v: &NcPoly, w: &NcPoly, order: usize) -> Result<VerificationReport> {
        let (lhs, rhs) = self.kawashima_sides(m, v, w, order)?;
        let mut p = Map::new();
        p.insert("m".into(), json!(m));
        p.insert("v".into(), json!(v.to_string()));
        p.insert("w".into(), json!(w.to_string()));
        Ok(VerificationReport::compare("kawashima", self.params(p, order), &lhs, &rhs))
    }

    /// Both sides of the cyclic sum formula, each value computed by
    /// [`Self::zeta_t`].
    pub fn cyclic_sum_sides(&self, idx: &Index, order: usize) -> Result<(QSeries, QSeries)> {
        if idx.is_all_ones() {
            return Err(Error::AllOnes(idx.to_string()));
        }
        let ks = idx.parts();
        let l = ks.len();
        let k = idx.weight();
        let mut lhs = QSeries::zero(order);
        let mut rhs = QSeries::zero(order);
        let one_minus_t = TPoly::from_coeffs(vec![Rational::one(), -Rational::one()]);
        for i in 0..l {
            let rot: Vec<u32> = ks[i..].iter().chain(&ks[..i]).copied().collect();
            for j in 0..rot[0].saturating_sub(1) {
                let mut parts = vec![rot[0] - j];
                parts.extend_from_slice(&rot[1..]);
                parts.push(j + 1);
                lhs.add_assign(&self.zeta_t(&Index::new(parts)?, order)?);
            }
            let mut parts = vec![rot[0] + 1];
            parts.extend_from_slice(&rot[1..]);
            rhs.add_assign(&self.scale_t_poly(&self.zeta_t(&Index::new(parts)?, order)?, &one_minus_t));
        }
        let tl = TPoly::monomial(l, Rational::one());
        for i in 0..=l as u32 {
            let z = self.zeta_t(&Index::new(vec![k - i + 1])?, order)?;
            let c = Rational::from_integer(binomial(l as u64, i as u64) * (k - i));
            let mut term = QSeries::zero(order);
            term.add_shifted_one_minus_q(&z, i, &c);
            rhs.add_assign(&self.scale_t_poly(&term, &tl));
        }
        Ok((lhs, rhs))
    }

    /// Multiplies by a polynomial in t, specializing it first when t is fixed.
    fn scale_t_poly(&self, s: &QSeries, c: &TPoly) -> QSeries {
        match self.t.as_constant() {
            Some(v) if !self.symbolic_t() => s.scale(&c.eval(&v)),
            _ => s.scale_tpoly(c),
        }
    }

    pub fn cyclic_sum(&self, idx: &Index, order: usize) -> Result<VerificationReport> {
        let (lhs, rhs) = self.cyclic_sum_sides(idx, order)?;
        let p = index_params(idx);
        Ok(VerificationReport::compare("csf", self.params(p, order), &lhs, &rhs))
    }

    /// The cyclic sum formula as vanishing of the kernel element.
    pub fn cyclic_sum_symbolic(&self, idx: &Index, order: usize) -> Result<VerificationReport> {
        let elem = csf_kernel_element_with(idx, &self.t)?;
        let value = self.z(&elem, order, &mut SMap::new(self.t.clone()))?;
        let p = index_params(idx);
        Ok(VerificationReport::compare("csf-kernel", self.params(p, order), &value, &QSeries::zero(order)))
    }

    /// `S^{-1} ∂_1 S(z_{k_1} ... z_{k_l})`.
    pub fn hoffman_element(&self, idx: &Index) -> Result<NcPoly> {
        idx.require_admissible()?;
        let mut maps = self.maps();
        let s = maps.s(&NcPoly::zs(idx.parts()))?;
        maps.s_inv(&d1_derivation(&s))
    }

    pub fn hoffman(&self, idx: &Index, order: usize) -> Result<VerificationReport> {
        let elem = self.hoffman_element(idx)?;
        let value = self.z(&elem, order, &mut SMap::new(self.t.clone()))?;
        let p = index_params(idx);
        Ok(VerificationReport::compare("hoffman", self.params(p, order), &value, &QSeries::zero(order)))
    }

    /// Both sides of the displayed Hoffman-type expansion, with every term
    /// mentioning `k_{i+1}` restricted to `i ≤ l - 1`.
    pub fn hoffman_expansion_sides(&self, idx: &Index, order: usize) -> Result<(QSeries, QSeries)> {
        idx.require_admissible()?;
        let ks = idx.parts();
        let l = ks.len();
        let t = TPoly::monomial(1, Rational::one());
        let t_t_minus_1 = TPoly::from_coeffs(vec![Rational::from_integer(0.into()), -Rational::one(), Rational::one()]);
        let mut lhs = QSeries::zero(order);
        let mut rhs = QSeries::zero(order);
        let replaced = |i: usize, mid: &[u32], skip: usize| -> Result<Index> {
            let mut v = ks[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&ks[i + skip..]);
            Index::new(v)
        };
        let full = self.zeta_t(idx, order)?;
        for i in 0..l {
            let ki = ks[i];
            for j in 0..ki.saturating_sub(1) {
                lhs.add_assign(&self.zeta_t(&replaced(i, &[ki - j, j + 1], 1)?, order)?);
            }
            let delta = u32::from(i == l - 1);
            let coef = TPoly::from_coeffs(vec![Rational::one(), Rational::from_integer((ki as i64 - 2 + delta as i64).into())]);
            rhs.add_assign(&self.scale_t_poly(&self.zeta_t(&replaced(i, &[ki + 1], 1)?, order)?, &coef));
            // (1-q) t (k_i - 1) ζ(k)
            let mut term = QSeries::zero(order);
            term.add_shifted_one_minus_q(&full, 1, &Rational::from_integer((ki as i64 - 1).into()));
            rhs.add_assign(&self.scale_t_poly(&term, &t));
            if i + 1 < l {
                let merged = self.zeta_t(&replaced(i, &[ki + ks[i + 1] + 1], 2)?, order)?;
                rhs.add_assign(&self.scale_t_poly(&merged, &t_t_minus_1));
                let merged = self.zeta_t(&replaced(i, &[ki + ks[i + 1]], 2)?, order)?;
                let mut term = QSeries::zero(order);
                term.add_shifted_one_minus_q(&merged, 1, &Rational::one());
                rhs.add_assign(&self.scale_t_poly(&term, &t_t_minus_1));
            }
        }
        Ok((lhs, rhs))
    }

    pub fn hoffman_expansion(&self, idx: &Index, order: usize) -> Result<VerificationReport> {
        let (lhs, rhs) = self.hoffman_expansion_sides(idx, order)?;
        let mut p = index_params(idx);
        p.insert("reading".into(), json!("i<=l-1"));
        Ok(VerificationReport::compare("hoffman-expansion", self.params(p, order), &lhs, &rhs))
    }

    /// `Z_q^t(ρ_{n,t}(w)) = 0` for `w` in Ȟ¹.
    pub fn kernel(&self, w: &Word, n: usize, order: usize) -> Result<VerificationReport> {
        if !w.in_h1_check() {
            return Err(Error::Domain { word: w.to_string(), space: "H^1 minus powers of y" });
        }
        let elem = rho_map_with(n, &NcPoly::word(w.clone()), &self.t)?;
        let value = self.z(&elem, order, &mut SMap::new(self.t.clone()))?;
        let mut p = Map::new();
        p.insert("word".into(), json!(w.to_string()));
        p.insert("n".into(), json!(n));
        Ok(VerificationReport::compare("kernel", self.params(p, order), &value, &QSeries::zero(order)))
    }
}

fn index_params(idx: &Index) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("index".into(), json!(idx.to_string()));
    p
}

impl QSeries {
    /// `self += c (1 - q)^e other`.
    fn add_shifted_one_minus_q(&mut self, other: &QSeries, e: u32, c: &Rational) {
        for j in 0..=e as usize {
            let mut b = Rational::from_integer(binomial(e as u64, j as u64)) * c;
            if j % 2 == 1 {
                b = -b;
            }
            self.add_shifted(other, j, 0, &b);
        }
    }
}

/// Orders used by the grid drivers: a fixed value or `weight + 12`.
#[derive(Clone, Copy, Debug)]
pub enum Order {
    Fixed(usize),
    ByWeight,
}

impl Order {
    pub fn resolve(self, weight: usize) -> usize {
        match self {
            Order::Fixed(n) => n,
            Order::ByWeight => default_order(weight),
        }
    }
}

/// All indices of weight ≤ `max_weight` and depth ≤ `max_depth`, except
/// all-ones indices.
pub fn csf_indices(max_weight: u32, max_depth: usize) -> Vec<Index> {
    (1..=max_weight)
        .flat_map(Index::compositions)
        .filter(|i| i.depth() <= max_depth && !i.is_all_ones())
        .collect()
}

/// Words of `H y` with at most `max_weight` letters, ordered length-lex.
pub fn hy_words(max_weight: usize) -> Vec<Word> {
    hy_words_up_to(max_weight)
}

/// One checkable relation instance; the grid drivers enumerate these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Kawashima { m: u32, v: Word, w: Word },
    Csf(Index),
    CsfKernel(Index),
    Hoffman(Index),
    HoffmanExpansion(Index),
    Kernel { w: Word, n: usize },
}

impl Instance {
    /// The weight that [`Order::ByWeight`] sees.
    pub fn weight(&self) -> usize {
        match self {
            Instance::Kawashima { m, v, w } => v.weight() + w.weight() + *m as usize,
            Instance::Csf(i) | Instance::CsfKernel(i) | Instance::Hoffman(i) | Instance::HoffmanExpansion(i) => {
                i.weight() as usize
            }
            Instance::Kernel { w, n } => w.weight() + n,
        }
    }

    pub fn run(&self, v: &Verifier, order: Order) -> Result<VerificationReport> {
        let n = order.resolve(self.weight());
        match self {
            Instance::Kawashima { m, v: a, w: b } => {
                v.kawashima(*m, &NcPoly::word(a.clone()), &NcPoly::word(b.clone()), n)
            }
            Instance::Csf(i) => v.cyclic_sum(i, n),
            Instance::CsfKernel(i) => v.cyclic_sum_symbolic(i, n),
            Instance::Hoffman(i) => v.hoffman(i, n),
            Instance::HoffmanExpansion(i) => v.hoffman_expansion(i, n),
            Instance::Kernel { w, n: k } => v.kernel(w, *k, n),
        }
    }
}

/// Runs instances in parallel; reports keep the input order.
pub fn run_instances(v: &Verifier, instances: &[Instance], order: Order) -> Result<Vec<VerificationReport>> {
    instances.par_iter().map(|i| i.run(v, order)).collect()
}

/// Kawashima instances for each `m` and each ordered pair of `H y` words.
pub fn kawashima_instances(ms: &[u32], max_weight: usize) -> Vec<Instance> {
    let words = hy_words(max_weight);
    let mut out = Vec::new();
    for &m in ms {
        for a in &words {
            for b in &words {
                out.push(Instance::Kawashima { m, v: a.clone(), w: b.clone() });
            }
        }
    }
    out
}

/// Cyclic sum formula instances, each checked directly and through the
/// kernel element.
pub fn csf_instances(max_weight: u32, max_depth: usize) -> Vec<Instance> {
    csf_indices(max_weight, max_depth)
        .into_iter()
        .flat_map(|i| [Instance::Csf(i.clone()), Instance::CsfKernel(i)])
        .collect()
}

/// Hoffman-type instances for admissible indices: kernel route and the
/// displayed expansion.
pub fn hoffman_instances(max_weight: u32, max_depth: usize) -> Vec<Instance> {
    Index::admissible_up_to(max_weight)
        .into_iter()
        .filter(|i| i.depth() <= max_depth)
        .flat_map(|i| [Instance::Hoffman(i.clone()), Instance::HoffmanExpansion(i)])
        .collect()
}

/// Kernel instances for all words of Ȟ¹ up to `max_weight` letters.
pub fn kernel_instances(max_weight: usize, ns: &[usize]) -> Vec<Instance> {
    let words: Vec<Word> = hy_words(max_weight).into_iter().filter(Word::in_h1_check).collect();
    ns.iter().flat_map(|&n| words.iter().map(move |w| Instance::Kernel { w: w.clone(), n })).collect()
}

pub fn kawashima_grid(v: &Verifier, ms: &[u32], max_weight: usize, order: Order) -> Result<Vec<VerificationReport>> {
    run_instances(v, &kawashima_instances(ms, max_weight), order)
}

pub fn csf_grid(v: &Verifier, max_weight: u32, max_depth: usize, order: Order) -> Result<Vec<VerificationReport>> {
    run_instances(v, &csf_instances(max_weight, max_depth), order)
}

pub fn hoffman_grid(v: &Verifier, max_weight: u32, max_depth: usize, order: Order) -> Result<Vec<VerificationReport>> {
    run_instances(v, &hoffman_instances(max_weight, max_depth), order)
}

pub fn kernel_grid(v: &Verifier, max_weight: usize, ns: &[usize], order: Order) -> Result<Vec<VerificationReport>> {
    run_instances(v, &kernel_instances(max_weight, ns), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::rat;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn csf_depth_one() {
        let v = Verifier::new();
        let (lhs, rhs) = v.cyclic_sum_sides(&idx("2"), 20).unwrap();
        assert_eq!(lhs, v.evaluator().zeta_q_t(&idx("2,1"), 20).unwrap());
        assert_eq!(lhs, rhs);
        assert!(v.cyclic_sum(&idx("2,1"), 20).unwrap().passed());
        assert!(v.cyclic_sum_symbolic(&idx("3"), 20).unwrap().passed());
        assert!(matches!(v.cyclic_sum(&idx("1,1"), 10), Err(Error::AllOnes(_))));
    }

    #[test]
    fn hoffman_examples() {
        let v = Verifier::new();
        let expect = crate::cyclic::csf_kernel_explicit(&idx("2")).unwrap();
        assert_eq!(v.hoffman_element(&idx("2")).unwrap(), expect);
        for i in ["2", "3", "2,1"] {
            assert!(v.hoffman(&idx(i), 20).unwrap().passed(), "{i}");
            assert!(v.hoffman_expansion(&idx(i), 20).unwrap().passed(), "{i}");
        }
    }

    #[test]
    fn kernel_examples() {
        let v = Verifier::new();
        assert!(v.kernel(&"xy".parse().unwrap(), 1, 20).unwrap().passed());
        assert!(v.kernel(&"xyy".parse().unwrap(), 1, 20).unwrap().passed());
        assert!(v.kernel(&"xy".parse().unwrap(), 2, 15).unwrap().passed());
        assert!(v.kernel(&"yy".parse().unwrap(), 1, 5).is_err());
    }

    #[test]
    fn kawashima_small() {
        let v = Verifier::new();
        let y = NcPoly::y();
        for m in 1..=2 {
            let r = v.kawashima(m, &y, &y, 15).unwrap();
            assert!(r.passed(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn failing_report_pinpoints_first_power() {
        let a = QSeries::from_rationals(5, &[rat(1, 1), rat(2, 1), rat(3, 1)]);
        let b = QSeries::from_rationals(5, &[rat(1, 1), rat(2, 1), rat(4, 1)]);
        let r = VerificationReport::compare("demo", Map::new(), &a, &b);
        assert_eq!(r.status, Status::Fail);
        let line = r.to_json_line();
        assert_eq!(
            line,
            r#"{"relation":"demo","params":{},"status":"fail","firstDiff":{"qPower":2,"lhs":[[0,"3/1"]],"rhs":[[0,"4/1"]]}}"#
        );
        assert_eq!(VerificationReport::from_json_line(&line).unwrap(), r);
    }

    #[test]
    fn specialized_parameter_agrees_with_substitution() {
        let sym = Verifier::new();
        for c in [rat(0, 1), rat(1, 1), rat(2, 1), rat(-1, 2)] {
            let at = Verifier::at(c.clone());
            let (l1, r1) = sym.cyclic_sum_sides(&idx("2,1"), 12).unwrap();
            let (l2, r2) = at.cyclic_sum_sides(&idx("2,1"), 12).unwrap();
            assert_eq!(l1.subst_t(&c), l2);
            assert_eq!(r1.subst_t(&c), r2);
            assert!(at.hoffman(&idx("3"), 12).unwrap().passed());
        }
    }
}
