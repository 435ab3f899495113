//! Active learning of exponential discounting under the root-uniform
//! distribution: parity and ball analytics, Monte Carlo disagreement mass and
//! disagreement coefficient, and a CAL simulation on interval version spaces.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{open_unit, sample_mu_roots, RngSeed};
use crate::error::{domain, Result};
use crate::interval::{Interval, IntervalSet};
use crate::models::{diff_polynomial, monomial_basis, ChoicePair, DiscountModel, LabeledDataset};
use crate::pac::consistent_param_set;
use crate::polynomial::{Polynomial, SturmSequence};
use crate::sgn;

/// Monte Carlo samples per RNG substream.
pub const MC_CHUNK: usize = 1 << 16;

/// Ratio contributed by radii above one half.
pub const TAIL_RATIO: f64 = 2.0;

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return domain("T must be at least 2");
    }
    Ok(())
}

/// Probability that `T - 1` uniform roots put an odd number between two
/// parameters at distance `dist`: `(1 - (1 - 2 dist)^(T-1)) / 2`.
pub fn parity_prob(dist: f64, t: usize) -> Result<f64> {
    check_t(t)?;
    if !(0.0..=1.0).contains(&dist) {
        return domain(format!("distance must lie in [0, 1], got {dist}"));
    }
    Ok((1.0 - (1.0 - 2.0 * dist).powi(t as i32 - 1)) / 2.0)
}

/// `(R1, R2)`: parameters within `R1` of `delta`, or (for even `T - 1`) at
/// least `R2` away, lie in the ball of radius `R`.
pub fn ball_radius_bounds(r: f64, t: usize) -> Result<(f64, f64)> {
    check_t(t)?;
    if !(r > 0.0 && r <= 0.5) {
        return domain(format!("radius must lie in (0, 1/2], got {r}"));
    }
    let s = (1.0 - 2.0 * r).powf(1.0 / (t - 1) as f64);
    Ok(((1.0 - s) / 2.0, (1.0 + s) / 2.0))
}

/// Closed-form disagreement mass of the radius-`R` ball: `2R` for odd
/// `T - 1`, and `1 - 2^(T-1) (1 - 2R)` clamped to `[0, 1]` for even `T - 1`.
pub fn disagreement_mass_analytic(r: f64, t: usize) -> Result<f64> {
    check_t(t)?;
    if !(r > 0.0 && r <= 0.5) {
        return domain(format!("radius must lie in (0, 1/2], got {r}"));
    }
    if (t - 1) % 2 == 1 {
        Ok(2.0 * r)
    } else {
        Ok((1.0 - 2f64.powi(t as i32 - 1) * (1.0 - 2.0 * r)).clamp(0.0, 1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl MassEstimate {
    fn from_count(hits: u64, n: usize) -> Self {
        let p = hits as f64 / n as f64;
        MassEstimate { estimate: p, stderr: (p * (1.0 - p) / n as f64).sqrt(), samples: n }
    }
}

/// Sums `f` over `n` draws of `T - 1` uniform roots, in fixed chunks on
/// fixed substreams so the total does not depend on the thread count.
fn mc_sum<F>(t: usize, n: usize, seed: RngSeed, width: usize, f: F) -> Vec<u64>
where
    F: Fn(&[f64], &mut [u64]) + Sync,
{
    let chunks = n.div_ceil(MC_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seed.substream(c as u64).rng();
            let len = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut acc = vec![0u64; width];
            let mut roots = vec![0.0; t - 1];
            for _ in 0..len {
                for r in roots.iter_mut() {
                    *r = open_unit(&mut rng);
                }
                f(&roots, &mut acc);
            }
            acc
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn check_mc(delta: f64, n: usize) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("delta must lie in (0, 1), got {delta}"));
    }
    if n == 0 {
        return domain("need at least one sample");
    }
    Ok(())
}

/// Hit counts of the disagreement region for every radius in `grid`.
fn mass_counts(delta: f64, t: usize, grid: &[f64], n: usize, seed: RngSeed) -> Result<Vec<u64>> {
    let radii = grid.iter().map(|&r| ball_radius_bounds(r, t)).collect::<Result<Vec<_>>>()?;
    let even = (t - 1).is_multiple_of(2);
    Ok(mc_sum(t, n, seed, radii.len(), |roots, acc| {
        let (mut near, mut far) = (f64::INFINITY, 0.0f64);
        for &r in roots {
            let d = (r - delta).abs();
            near = near.min(d);
            far = far.max(d);
        }
        for (a, &(r1, r2)) in acc.iter_mut().zip(&radii) {
            if near <= r1 || (even && far >= r2) {
                *a += 1;
            }
        }
    }))
}

/// Fraction of root-uniform draws with a root in `[delta - R1, delta + R1]`,
/// or (even `T - 1`) in `(0, delta - R2] U [delta + R2, 1)`.
pub fn estimate_disagreement_mass_mc(delta: f64, r: f64, t: usize, n: usize, seed: RngSeed) -> Result<MassEstimate> {
    check_t(t)?;
    check_mc(delta, n)?;
    let c = mass_counts(delta, t, &[r], n, seed)?;
    Ok(MassEstimate::from_count(c[0], n))
}

/// Fraction of draws with an odd number of roots strictly between `delta`
/// and `gamma`.
pub fn estimate_parity_mc(delta: f64, gamma: f64, t: usize, n: usize, seed: RngSeed) -> Result<MassEstimate> {
    check_t(t)?;
    check_mc(delta, n)?;
    check_mc(gamma, n)?;
    let (lo, hi) = (delta.min(gamma), delta.max(gamma));
    let c = mc_sum(t, n, seed, 1, |roots, acc| {
        let k = roots.iter().filter(|&&r| r > lo && r < hi).count();
        acc[0] += (k % 2) as u64;
    });
    Ok(MassEstimate::from_count(c[0], n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub delta: f64,
    pub t: usize,
    pub r_grid: Vec<f64>,
    pub mass_estimates: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Largest `mass / R` over the grid.
    pub ratio_sup: f64,
    pub argmax_r: f64,
    /// `sup_{R > 1/2} mass / R`, fixed analytically.
    pub tail_sup: f64,
    /// `max(ratio_sup, tail_sup)`.
    pub theta: f64,
    pub mc_samples: usize,
}

/// Monte Carlo disagreement coefficient. One sample set serves the whole grid.
pub fn estimate_theta(delta: f64, t: usize, r_grid: &[f64], n: usize, seed: RngSeed) -> Result<ThetaReport> {
    check_t(t)?;
    check_mc(delta, n)?;
    if r_grid.is_empty() {
        return domain("empty radius grid");
    }
    let counts = mass_counts(delta, t, r_grid, n, seed)?;
    let est: Vec<MassEstimate> = counts.iter().map(|&c| MassEstimate::from_count(c, n)).collect();
    let ratios: Vec<f64> = est.iter().zip(r_grid).map(|(e, r)| e.estimate / r).collect();
    let (k, &ratio_sup) = ratios
        .iter()
        .enumerate()
        .reduce(|a, b| if b.1 > a.1 { b } else { a })
        .expect("nonempty grid");
    Ok(ThetaReport {
        delta,
        t,
        r_grid: r_grid.to_vec(),
        mass_estimates: est.iter().map(|e| e.estimate).collect(),
        standard_errors: est.iter().map(|e| e.stderr).collect(),
        ratios,
        ratio_sup,
        argmax_r: r_grid[k],
        tail_sup: TAIL_RATIO,
        theta: ratio_sup.max(TAIL_RATIO),
        mc_samples: n,
    })
}

pub const THETA_CSV_HEADER: &str = "T,delta,R,mass,stderr,ratio";

pub fn write_theta_csv(rep: &ThetaReport, mut sink: impl Write) -> Result<()> {
    writeln!(sink, "{THETA_CSV_HEADER}")?;
    for k in 0..rep.r_grid.len() {
        writeln!(
            sink,
            "{},{},{},{},{},{}",
            rep.t, rep.delta, rep.r_grid[k], rep.mass_estimates[k], rep.standard_errors[k], rep.ratios[k]
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalState {
    pub version_space: IntervalSet,
    pub labels_used: usize,
    pub points_seen: usize,
}

/// CAL over exponential discount factors in `(0, 1)`.
#[derive(Debug, Clone)]
pub struct CalLearner {
    t: usize,
    basis: Vec<Polynomial>,
    state: CalState,
}

impl CalLearner {
    pub fn new(t: usize) -> Result<Self> {
        check_t(t)?;
        Ok(CalLearner {
            t,
            basis: monomial_basis(t),
            state: CalState {
                version_space: IntervalSet::from_interval(Interval::open(0.0, 1.0)?),
                labels_used: 0,
                points_seen: 0,
            },
        })
    }

    pub fn state(&self) -> &CalState {
        &self.state
    }

    /// Whether the version space disagrees on the sign of `p`.
    pub fn in_disagreement(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(false);
        }
        let sturm = SturmSequence::new(p)?;
        let mut seen = [false; 2];
        for iv in self.state.version_space.intervals() {
            let at_hi = usize::from(p.eval(iv.hi) == 0.0);
            if sturm.count(iv.lo, iv.hi).saturating_sub(at_hi) > 0 {
                return Ok(true);
            }
            seen[sgn(p.eval(iv.mid())) as usize] = true;
            if iv.lo_closed {
                seen[sgn(p.eval(iv.lo)) as usize] = true;
            }
            if iv.hi_closed {
                seen[sgn(p.eval(iv.hi)) as usize] = true;
            }
            if seen[0] && seen[1] {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Processes one stream point; `label` is consulted only when the point
    /// lies in the disagreement region. Returns whether it was queried.
    pub fn observe(&mut self, pair: &ChoicePair, label: impl FnOnce(&ChoicePair) -> Result<u8>) -> Result<bool> {
        self.state.points_seen += 1;
        let p = diff_polynomial(&self.basis, pair)?;
        if !self.in_disagreement(&p)? {
            return Ok(false);
        }
        let l = label(pair)?;
        self.state.labels_used += 1;
        let ds = LabeledDataset::new(self.t, vec![pair.clone()], vec![l])?;
        let region = consistent_param_set(&self.basis, &ds, Interval::open(0.0, 1.0)?)?;
        self.state.version_space = self.state.version_space.intersect(&region);
        Ok(true)
    }

    /// Midpoint of the widest version-space interval.
    pub fn hypothesis(&self) -> Option<f64> {
        self.state.version_space.widest().map(Interval::mid)
    }

    /// Largest distance from the hypothesis to any version-space point.
    pub fn radius(&self) -> Option<f64> {
        let h = self.hypothesis()?;
        let (lo, hi) = self.state.version_space.hull()?;
        Some((h - lo).max(hi - h))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalConfig {
    pub true_delta: f64,
    pub t: usize,
    pub eps: f64,
    pub max_points: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalOutcome {
    pub state: CalState,
    pub hypothesis: f64,
    /// Largest distance from the hypothesis to the version space.
    pub radius: f64,
    /// Total version-space length.
    pub raw_length: f64,
    /// `parity_prob(radius, T)`: worst-case disagreement mass of the hypothesis.
    pub converted_mass: f64,
    /// Whether the halting rule fired before `max_points`.
    pub halted: bool,
    /// Held-out disagreement with the truth on `10 ceil(1/eps)` fresh points.
    pub err: f64,
}

/// Streams root-uniform points labeled by exponential discounting with
/// `true_delta`, querying only inside the disagreement region. Halts once
/// every parameter left in the version space disagrees with the hypothesis on
/// at most `eps` mass, i.e. `parity_prob(radius, T) <= eps`.
pub fn cal_run(cfg: &CalConfig) -> Result<CalOutcome> {
    cal_run_observed(cfg, |_| {})
}

/// [`cal_run`] with a callback after every stream point.
pub fn cal_run_observed(cfg: &CalConfig, mut observe: impl FnMut(&CalState)) -> Result<CalOutcome> {
    if !(cfg.true_delta > 0.0 && cfg.true_delta < 1.0) {
        return domain(format!("true delta must lie in (0, 1), got {}", cfg.true_delta));
    }
    if !(cfg.eps > 0.0 && cfg.eps < 1.0) {
        return domain(format!("eps must lie in (0, 1), got {}", cfg.eps));
    }
    let truth = DiscountModel::Exponential { delta: cfg.true_delta };
    let mut learner = CalLearner::new(cfg.t)?;
    let seed = RngSeed::new(cfg.seed);
    let mut rng = seed.rng();
    let done = |l: &CalLearner| -> Result<bool> {
        match l.radius() {
            Some(r) => Ok(parity_prob(r.min(1.0), cfg.t)? <= cfg.eps),
            None => Err(crate::Error::NoConsistentHypothesis("version space became empty".into())),
        }
    };
    let mut halted = done(&learner)?;
    while !halted && learner.state.points_seen < cfg.max_points {
        let pair = sample_mu_roots(cfg.t, &mut rng).to_pair();
        if learner.observe(&pair, |p| truth.prefers(p))? {
            halted = done(&learner)?;
        }
        observe(&learner.state);
    }
    let hypothesis = learner.hypothesis().expect("checked nonempty");
    let radius = learner.radius().expect("checked nonempty");
    let h = DiscountModel::Exponential { delta: hypothesis };
    let n_test = crate::pac::test_set_size(cfg.eps);
    let mut test_rng = seed.substream(1).rng();
    let mut wrong = 0usize;
    for _ in 0..n_test {
        let p = sample_mu_roots(cfg.t, &mut test_rng).to_pair();
        if h.prefers(&p)? != truth.prefers(&p)? {
            wrong += 1;
        }
    }
    Ok(CalOutcome {
        raw_length: learner.state.version_space.total_length(),
        converted_mass: parity_prob(radius.min(1.0), cfg.t)?,
        state: learner.state,
        hypothesis,
        radius,
        halted,
        err: wrong as f64 / n_test as f64,
    })
}

pub const CAL_CSV_HEADER: &str = "T,true_delta,eps,points_seen,labels_used,err,seed";

pub fn write_cal_csv(rows: &[(CalConfig, CalOutcome)], mut sink: impl Write) -> Result<()> {
    writeln!(sink, "{CAL_CSV_HEADER}")?;
    for (c, o) in rows {
        writeln!(
            sink,
            "{},{},{},{},{},{},{}",
            c.t, c.true_delta, c.eps, o.state.points_seen, o.state.labels_used, o.err, c.seed
        )?;
    }
    Ok(())
}

/// `theta log2(1/eps) (d max(log2 theta, 1) + log2(log2(1/eps) / conf))`,
/// constant 1; a reference shape, not a certified label count.
pub fn cal_bound(eps: f64, conf: f64, vc_d: f64, theta: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return domain(format!("eps must lie in (0, 1), got {eps}"));
    }
    if !(conf > 0.0 && conf < 1.0) {
        return domain(format!("confidence parameter must lie in (0, 1), got {conf}"));
    }
    if !(vc_d >= 1.0) {
        return domain("VC dimension must be at least 1");
    }
    if !(theta >= 1.0) {
        return domain("theta must be at least 1");
    }
    let l = (1.0 / eps).log2();
    Ok(theta * l * (vc_d * theta.log2().max(1.0) + (l / conf).log2()))
}
