//! Membership-query learning of one-parameter families by binary search for
//! an indifference point.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::interval::Interval;
use crate::models::{ChoicePair, DiscountModel, Plan};

/// Answers preference queries for a hidden model and counts them.
#[derive(Debug, Clone)]
pub struct Oracle {
    model: DiscountModel,
    queries: usize,
}

impl Oracle {
    pub fn new(model: DiscountModel) -> Result<Self> {
        model.validate()?;
        Ok(Oracle { model, queries: 0 })
    }

    pub fn ask(&mut self, pair: &ChoicePair) -> Result<u8> {
        let l = self.model.prefers(pair)?;
        self.queries += 1;
        Ok(l)
    }

    pub fn query_count(&self) -> usize {
        self.queries
    }

    pub fn model(&self) -> &DiscountModel {
        &self.model
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MqFamily {
    Exponential,
    Hyperbolic,
}

/// Periods `t1`, `t2` with ratio `g_t1 / g_t2` of weights, its bound `m`,
/// inverse-Lipschitz constant `c` and inverse on `domain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MqAdapter {
    pub family: MqFamily,
    pub t: usize,
    pub t1: usize,
    pub t2: usize,
    pub m: f64,
    pub c: f64,
    pub domain: Interval,
}

impl MqAdapter {
    /// Ratio `delta`: `t1 = 2`, `t2 = 1`, `M = C = 1`.
    pub fn exponential(t: usize) -> Result<Self> {
        if t < 2 {
            return domain("T must be at least 2");
        }
        Ok(MqAdapter { family: MqFamily::Exponential, t, t1: 2, t2: 1, m: 1.0, c: 1.0, domain: Interval::open(0.0, 1.0)? })
    }

    /// Ratio `(1 + 2 alpha) / (1 + alpha)` on `(0, A]`: `M = (1 + 2A)/(1 + A)`,
    /// `C = (1 + A)^2`.
    pub fn hyperbolic(t: usize, a_max: f64) -> Result<Self> {
        if t < 2 {
            return domain("T must be at least 2");
        }
        if !(a_max > 0.0 && a_max.is_finite()) {
            return domain("alpha bound must be positive");
        }
        Ok(MqAdapter {
            family: MqFamily::Hyperbolic,
            t,
            t1: 1,
            t2: 2,
            m: (1.0 + 2.0 * a_max) / (1.0 + a_max),
            c: (1.0 + a_max).powi(2),
            domain: Interval::new(0.0, a_max, false, true)?,
        })
    }

    pub fn ratio(&self, p: f64) -> f64 {
        match self.family {
            MqFamily::Exponential => p,
            MqFamily::Hyperbolic => (1.0 + 2.0 * p) / (1.0 + p),
        }
    }

    /// Parameter with the given ratio, clamped to the closure of the domain.
    pub fn ratio_inverse(&self, r: f64) -> f64 {
        let p = match self.family {
            MqFamily::Exponential => r,
            MqFamily::Hyperbolic => (r - 1.0) / (2.0 - r),
        };
        p.clamp(self.domain.lo, self.domain.hi)
    }

    /// `ceil(log2(M C / eps)) + 1`.
    pub fn query_budget(&self, eps: f64) -> usize {
        (self.m * self.c / eps).log2().ceil().max(0.0) as usize + 1
    }

    pub fn model(&self, p: f64) -> DiscountModel {
        match self.family {
            MqFamily::Exponential => DiscountModel::Exponential { delta: p },
            MqFamily::Hyperbolic => DiscountModel::Hyperbolic { alpha: p },
        }
    }
}

/// Binary search for `b` with `g_t2 b = g_t1 rho`, querying
/// `(rho e_t1, b e_t2)` on the bracket `[0, M rho]` until it is at most `eta`
/// wide. Label 1 (tie included) means the indifference point is at least `b`.
pub fn indifference_search(oracle: &mut Oracle, adapter: &MqAdapter, rho: f64, eta: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return domain("rho must be positive");
    }
    if !(eta > 0.0) {
        return domain("eta must be positive");
    }
    if adapter.t1.max(adapter.t2) > adapter.t {
        return Err(Error::Arity { expected: adapter.t1.max(adapter.t2), got: adapter.t });
    }
    let x = Plan::unit(adapter.t, adapter.t1, rho)?;
    let (mut lo, mut hi) = (0.0, adapter.m * rho);
    while hi - lo > eta {
        let b = 0.5 * (lo + hi);
        let pair = ChoicePair::new(x.clone(), Plan::unit(adapter.t, adapter.t2, b)?)?;
        if oracle.ask(&pair)? == 1 {
            lo = b;
        } else {
            hi = b;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parameter estimate within `eps` of the oracle's, from
/// `ceil(log2(M C / eps))` queries.
pub fn mq_learn(oracle: &mut Oracle, adapter: &MqAdapter, eps: f64, rho: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return domain("eps must be positive");
    }
    let eta = rho * eps / adapter.c;
    let b = indifference_search(oracle, adapter, rho, eta)?;
    Ok(adapter.ratio_inverse(b / rho))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MqRecord {
    pub family: String,
    pub truth: f64,
    pub eps: f64,
    pub param_h: f64,
    pub abs_err: f64,
    pub queries: usize,
    pub seed: u64,
}

pub const MQ_CSV_HEADER: &str = "family,truth,eps,param_h,abs_err,queries,seed";

pub fn write_mq_csv(rows: &[MqRecord], mut sink: impl Write) -> Result<()> {
    writeln!(sink, "{MQ_CSV_HEADER}")?;
    for r in rows {
        writeln!(sink, "{},{},{},{},{},{},{}", r.family, r.truth, r.eps, r.param_h, r.abs_err, r.queries, r.seed)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ed_search_example() {
        let a = MqAdapter::exponential(2).unwrap();
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.64 }).unwrap();
        let eta = 2f64.powi(-10);
        let b = indifference_search(&mut o, &a, 1.0, eta).unwrap();
        assert!((b - 0.64).abs() <= eta);
        assert!(o.query_count() <= 11);
    }

    #[test]
    fn ed_learn_example() {
        let a = MqAdapter::exponential(3).unwrap();
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.37 }).unwrap();
        let d = mq_learn(&mut o, &a, 1e-3, 1.0).unwrap();
        assert!((d - 0.37).abs() <= 1e-3);
        assert!(o.query_count() <= 11);
        assert_eq!(a.query_budget(1e-3), 11);
    }

    #[test]
    fn hd_learn_example() {
        let a = MqAdapter::hyperbolic(2, 4.0).unwrap();
        assert!((a.m - 1.8).abs() < 1e-15 && a.c == 25.0);
        let mut o = Oracle::new(DiscountModel::Hyperbolic { alpha: 1.5 }).unwrap();
        let h = mq_learn(&mut o, &a, 1e-3, 1.0).unwrap();
        assert!((h - 1.5).abs() <= 1e-3);
        assert!(o.query_count() <= a.query_budget(1e-3));
    }

    #[test]
    fn boundary_and_coarse_precision() {
        let a = MqAdapter::exponential(2).unwrap();
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.999_999 }).unwrap();
        let b = indifference_search(&mut o, &a, 1.0, 1e-3).unwrap();
        assert!((b - 1.0).abs() <= 1e-3);
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.2 }).unwrap();
        let b = indifference_search(&mut o, &a, 1.0, 1.0).unwrap();
        assert_eq!((b, o.query_count()), (0.5, 0));
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.2 }).unwrap();
        let d = mq_learn(&mut o, &a, 2.0, 1.0).unwrap();
        assert!((d - 0.2).abs() <= 2.0);
    }

    #[test]
    fn tie_counts_as_preferred() {
        // delta = 0.5 with b = 0.5 is an exact tie.
        let mut o = Oracle::new(DiscountModel::Exponential { delta: 0.5 }).unwrap();
        let pair = ChoicePair::from_vecs(vec![0.0, 1.0], vec![0.5, 0.0]).unwrap();
        assert_eq!(o.ask(&pair).unwrap(), 1);
        assert_eq!(o.query_count(), 1);
    }
}
