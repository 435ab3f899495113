//! Consistent-hypothesis learning for the one-parameter families (ED, HD,
//! polynomial weights) and the two-parameter `(beta, delta)` families, sample
//! complexity reference curves, and learning-curve experiments.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{sample_dataset, PairSource, RngSeed};
use crate::error::{domain, Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::models::{diff_polynomial, hd_cleared_polynomials, monomial_basis, ChoicePair, DiscountModel, LabeledDataset};
use crate::polynomial::{merged_breakpoints, Breakpoints, Polynomial, COLLISION_TOL};
use crate::sgn;

pub const DEFAULT_ALPHA_MAX: f64 = 16.0;
pub const DEFAULT_U_MAX: f64 = 1e3;

/// A learnable family together with its parameter domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    Exponential,
    Hyperbolic { alpha_max: f64 },
    PolyWeights { q: Vec<Polynomial>, domain: Interval },
    QuasiHyperbolic,
    BetaPolyWeights { q: Vec<Polynomial>, domain: Interval },
    TableDiscount,
}

impl Family {
    pub fn hyperbolic() -> Self {
        Family::Hyperbolic { alpha_max: DEFAULT_ALPHA_MAX }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Exponential => "ed",
            Family::Hyperbolic { .. } => "hd",
            Family::PolyWeights { .. } => "pw",
            Family::QuasiHyperbolic => "qhd",
            Family::BetaPolyWeights { .. } => "bpw",
            Family::TableDiscount => "table",
        }
    }

    /// Weight basis `Q_1..Q_T`.
    pub fn basis(&self, t: usize) -> Result<Vec<Polynomial>> {
        match self {
            Family::Exponential | Family::QuasiHyperbolic => Ok(monomial_basis(t)),
            Family::Hyperbolic { .. } => hd_cleared_polynomials(t),
            Family::PolyWeights { q, .. } | Family::BetaPolyWeights { q, .. } => {
                if q.len() != t {
                    return Err(Error::Arity { expected: q.len(), got: t });
                }
                Ok(q.clone())
            }
            Family::TableDiscount => Err(Error::Unsupported("discount tables have no polynomial basis".into())),
        }
    }

    /// Domain of the (discount) parameter.
    pub fn domain(&self) -> Result<Interval> {
        match self {
            Family::Exponential | Family::QuasiHyperbolic => Interval::open(0.0, 1.0),
            Family::Hyperbolic { alpha_max } => Interval::new(0.0, *alpha_max, false, true),
            Family::PolyWeights { domain, .. } | Family::BetaPolyWeights { domain, .. } => Ok(*domain),
            Family::TableDiscount => Err(Error::Unsupported("discount tables have no scalar parameter".into())),
        }
    }

    pub fn has_beta(&self) -> bool {
        matches!(self, Family::QuasiHyperbolic | Family::BetaPolyWeights { .. })
    }

    /// The model with discount parameter `p` (and `beta` for two-parameter families).
    pub fn model(&self, t: usize, p: f64, beta: f64) -> Result<DiscountModel> {
        Ok(match self {
            Family::Exponential => DiscountModel::Exponential { delta: p },
            Family::Hyperbolic { .. } => DiscountModel::Hyperbolic { alpha: p },
            Family::PolyWeights { .. } => DiscountModel::PolyWeights { q: self.basis(t)?, delta: p },
            Family::QuasiHyperbolic => DiscountModel::QuasiHyperbolic { beta, delta: p },
            Family::BetaPolyWeights { .. } => DiscountModel::BetaPolyWeights { q: self.basis(t)?, beta, delta: p },
            Family::TableDiscount => return Err(Error::Unsupported("no parametric hypothesis for tables".into())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub hypothesis: DiscountModel,
    pub consistent_region: IntervalSet,
    pub training_error: f64,
    pub cells_examined: usize,
}

/// Breakpoints for consistency search: collisions are first retried with a
/// tighter tolerance, then merged.
pub(crate) fn search_breakpoints(polys: &[Polynomial], dom: &Interval) -> Result<Breakpoints> {
    match merged_breakpoints(polys, dom.lo, dom.hi, COLLISION_TOL, true) {
        Err(Error::BreakpointCollision { .. }) => {}
        other => return other,
    }
    match merged_breakpoints(polys, dom.lo, dom.hi, 1e-12, true) {
        Err(Error::BreakpointCollision { .. }) => merged_breakpoints(polys, dom.lo, dom.hi, 1e-12, false),
        other => other,
    }
}

/// Builds the difference polynomials; `None` marks an identically zero one.
fn diff_polys(q: &[Polynomial], pairs: &[ChoicePair]) -> Result<Vec<Option<Polynomial>>> {
    pairs
        .iter()
        .map(|p| diff_polynomial(q, p).map(|d| (!d.is_zero()).then_some(d)))
        .collect()
}

/// Assembles a region from per-cell and per-point membership; cell `k` is
/// `(bounds[k], bounds[k + 1])` and `point_in[k]` covers `bounds[k]`.
fn assemble(bounds: &[f64], cell_in: &[bool], point_in: &[bool]) -> IntervalSet {
    let ivs = cell_in
        .iter()
        .enumerate()
        .filter(|(_, &inc)| inc)
        .filter(|(k, _)| bounds[*k] < bounds[k + 1])
        .map(|(k, _)| Interval { lo: bounds[k], hi: bounds[k + 1], lo_closed: point_in[k], hi_closed: point_in[k + 1] })
        .collect();
    IntervalSet::from_intervals(ivs)
}

/// Parameters in `domain` reproducing every label of `ds` under the basis `q`.
///
/// Breakpoints are included when every label holds there with `sgn(0) = 1`;
/// an inconsistent dataset yields the empty set.
pub fn consistent_param_set(q: &[Polynomial], ds: &LabeledDataset, dom: Interval) -> Result<IntervalSet> {
    Ok(consistent_param_set_counted(q, ds, dom)?.0)
}

fn consistent_param_set_counted(q: &[Polynomial], ds: &LabeledDataset, dom: Interval) -> Result<(IntervalSet, usize)> {
    if ds.is_empty() {
        return domain("consistency search needs a nonempty dataset");
    }
    if q.len() != ds.t() {
        return Err(Error::Arity { expected: q.len(), got: ds.t() });
    }
    let mut polys = Vec::new();
    let mut labels = Vec::new();
    for (p, l) in diff_polys(q, ds.pairs())?.into_iter().zip(ds.labels()) {
        match p {
            Some(p) => {
                polys.push(p);
                labels.push(*l);
            }
            None if *l == 0 => return Ok((IntervalSet::empty(), 0)),
            None => {}
        }
    }
    if polys.is_empty() {
        return Ok((IntervalSet::from_interval(dom), 1));
    }
    let bp = search_breakpoints(&polys, &dom)?;
    let mut bounds = Vec::with_capacity(bp.points.len() + 2);
    bounds.push(dom.lo);
    bounds.extend_from_slice(&bp.points);
    bounds.push(dom.hi);
    let cells = bounds.len() - 1;

    let matches_at = |x: f64, vanish: &[usize]| {
        polys.iter().zip(&labels).enumerate().all(|(j, (p, &l))| {
            let s = if vanish.contains(&j) { 1 } else { sgn(p.eval(x)) };
            s == l
        })
    };
    let cell_in: Vec<bool> = (0..cells).map(|k| matches_at(0.5 * (bounds[k] + bounds[k + 1]), &[])).collect();
    let mut point_in = vec![false; cells + 1];
    point_in[0] = dom.lo_closed && matches_at(dom.lo, &[]);
    point_in[cells] = dom.hi_closed && matches_at(dom.hi, &[]);
    for k in 1..cells {
        // Points only matter next to an included cell.
        if cell_in[k - 1] || cell_in[k] {
            point_in[k] = matches_at(bounds[k], &bp.vanishing[k - 1]);
        }
    }
    Ok((assemble(&bounds, &cell_in, &point_in), cells))
}

/// Fits ED, HD or polynomial-weight data: the midpoint of the widest
/// consistent interval.
pub fn fit_single_param(family: &Family, ds: &LabeledDataset) -> Result<FitReport> {
    if family.has_beta() || matches!(family, Family::TableDiscount) {
        return Err(Error::Unsupported(format!("{} is not a single-parameter family", family.name())));
    }
    let q = family.basis(ds.t())?;
    let (region, cells) = consistent_param_set_counted(&q, ds, family.domain()?)?;
    let Some(widest) = region.widest() else {
        return Err(Error::NoConsistentHypothesis(format!(
            "no {} parameter reproduces all {} labels",
            family.name(),
            ds.len()
        )));
    };
    let hypothesis = family.model(ds.t(), widest.mid(), 0.5)?;
    let training_error = ds.error_of(&hypothesis)?;
    Ok(FitReport { hypothesis, consistent_region: region, training_error, cells_examined: cells })
}

/// Search settings for the two-parameter fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSearch {
    /// Upper end of `u = 1/beta - 1`.
    pub u_max: f64,
}

impl Default for BetaSearch {
    fn default() -> Self {
        BetaSearch { u_max: DEFAULT_U_MAX }
    }
}

/// Constraint `A(delta) + u B` against a label.
struct Linear {
    a: Polynomial,
    b: f64,
    label: u8,
}

/// Feasible `u` interval at `delta` as `(lo, hi)`; `None` when some
/// `u`-independent constraint fails.
fn u_window(cons: &[Linear], delta: f64, u_max: f64) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (0.0f64, u_max);
    for c in cons {
        let av = c.a.eval(delta);
        if c.b == 0.0 {
            if sgn(av) != c.label {
                return None;
            }
            continue;
        }
        let tau = -av / c.b;
        // label 1 wants A + uB >= 0, label 0 wants A + uB < 0. Closedness
        // only matters for empty-interior windows, which are discarded.
        if (c.label == 1) == (c.b > 0.0) {
            lo = lo.max(tau);
        } else {
            hi = hi.min(tau);
        }
    }
    Some((lo, hi))
}

/// Fits `(beta, delta)` for the `(1/beta - 1)`-shifted weight families.
///
/// With `u = 1/beta - 1` every labeled pair is a half-plane in `u` at fixed
/// `delta`. The feasible `u` window can only change where two thresholds
/// cross, a threshold reaches `0` or `u_max`, or a `u`-free constraint changes
/// sign; all of those are roots of polynomials in `delta`. Sampling one `delta`
/// per resulting cell therefore finds a feasible point whenever the feasible
/// set has interior. The hypothesis takes the cell with the widest window and
/// the window's midpoint.
pub fn fit_beta_delta(q: &[Polynomial], ds: &LabeledDataset, dom: Interval, cfg: &BetaSearch) -> Result<FitReport> {
    if ds.is_empty() {
        return domain("fit needs a nonempty dataset");
    }
    if !(cfg.u_max > 0.0) {
        return domain("u_max must be positive");
    }
    let mut cons = Vec::with_capacity(ds.len());
    for (p, l) in diff_polys(q, ds.pairs())?.into_iter().zip(ds.labels()) {
        match p {
            Some(a) => {
                let b = a.eval(0.0);
                cons.push(Linear { a, b, label: *l });
            }
            None if *l == 0 => {
                return Err(Error::NoConsistentHypothesis("a label-0 pair has identical plans".into()));
            }
            None => {}
        }
    }
    let make = |delta: f64, beta: f64| DiscountModel::BetaPolyWeights { q: q.to_vec(), beta, delta };

    if cons.iter().all(|c| c.b == 0.0) {
        let (region, cells) = consistent_param_set_counted(q, ds, dom)?;
        let Some(w) = region.widest() else {
            return Err(Error::NoConsistentHypothesis("no delta reproduces the labels".into()));
        };
        let hypothesis = make(w.mid(), 0.5);
        let training_error = ds.error_of(&hypothesis)?;
        return Ok(FitReport { hypothesis, consistent_region: region, training_error, cells_examined: cells });
    }

    let mut events: Vec<Polynomial> = Vec::new();
    for (i, c) in cons.iter().enumerate() {
        events.push(c.a.clone());
        if c.b != 0.0 {
            events.push(c.a.add_scaled(&Polynomial::constant(c.b), cfg.u_max));
            for d in cons[..i].iter().filter(|d| d.b != 0.0) {
                events.push(c.a.scaled(d.b).add_scaled(&d.a, -c.b));
            }
        }
    }
    let mut points: Vec<f64> = Vec::new();
    for e in events.iter().filter(|e| !e.is_zero()) {
        points.extend(e.isolate_roots_in(dom.lo, dom.hi, 1e-13)?);
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut bounds = Vec::with_capacity(points.len() + 2);
    bounds.push(dom.lo);
    bounds.extend(points);
    bounds.push(dom.hi);
    let cells = bounds.len() - 1;

    let windows: Vec<Option<(f64, f64)>> = (0..cells)
        .into_par_iter()
        .map(|k| {
            let mid = 0.5 * (bounds[k] + bounds[k + 1]);
            u_window(&cons, mid, cfg.u_max).filter(|(lo, hi)| lo < hi)
        })
        .collect();
    let best = windows
        .iter()
        .enumerate()
        .filter_map(|(k, w)| w.map(|(lo, hi)| (k, lo, hi)))
        .reduce(|a, b| if b.2 - b.1 > a.2 - a.1 { b } else { a });
    let Some((k, lo, hi)) = best else {
        return Err(Error::NoConsistentHypothesis(format!("no feasible (beta, delta) among {cells} cells")));
    };
    let delta = 0.5 * (bounds[k] + bounds[k + 1]);
    let u = 0.5 * (lo + hi);
    let hypothesis = make(delta, 1.0 / (1.0 + u));
    let cell_in: Vec<bool> = windows.iter().map(Option::is_some).collect();
    let region = assemble(&bounds, &cell_in, &vec![false; cells + 1]);
    let training_error = ds.error_of(&hypothesis)?;
    Ok(FitReport { hypothesis, consistent_region: region, training_error, cells_examined: cells })
}

/// Dispatches to the fit for `family`. An empty dataset yields the domain
/// midpoint (and `beta = 1/2`).
pub fn fit(family: &Family, ds: &LabeledDataset) -> Result<FitReport> {
    let t = ds.t();
    let dom = family.domain()?;
    if ds.is_empty() {
        let hypothesis = family.model(t, dom.mid(), 0.5)?;
        return Ok(FitReport {
            hypothesis,
            consistent_region: IntervalSet::from_interval(dom),
            training_error: 0.0,
            cells_examined: 1,
        });
    }
    if !family.has_beta() {
        return fit_single_param(family, ds);
    }
    let mut rep = fit_beta_delta(&family.basis(t)?, ds, dom, &BetaSearch::default())?;
    if let (Family::QuasiHyperbolic, DiscountModel::BetaPolyWeights { beta, delta, .. }) = (family, &rep.hypothesis) {
        rep.hypothesis = DiscountModel::QuasiHyperbolic { beta: *beta, delta: *delta };
    }
    Ok(rep)
}

fn check_bound_args(eps: f64, conf: f64, vc_d: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return domain(format!("eps must lie in (0, 1), got {eps}"));
    }
    if !(conf > 0.0 && conf < 1.0) {
        return domain(format!("confidence parameter must lie in (0, 1), got {conf}"));
    }
    if !(vc_d >= 1.0) {
        return domain(format!("VC dimension must be at least 1, got {vc_d}"));
    }
    Ok(())
}

/// `(1/eps)(d log2(1/eps) + log2(1/conf))`; constant 1, reference shape only.
pub fn blumer_bound(eps: f64, conf: f64, vc_d: f64) -> Result<f64> {
    check_bound_args(eps, conf, vc_d)?;
    Ok((vc_d * (1.0 / eps).log2() + (1.0 / conf).log2()) / eps)
}

/// `(1/eps)(d + log2(1/conf))`; constant 1, reference shape only.
pub fn hanneke_bound(eps: f64, conf: f64, vc_d: f64) -> Result<f64> {
    check_bound_args(eps, conf, vc_d)?;
    Ok((vc_d + (1.0 / conf).log2()) / eps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub family: Family,
    pub truth: DiscountModel,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub eps_test: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub family: String,
    pub t: usize,
    pub dist: String,
    pub size: usize,
    pub trial: usize,
    pub err: f64,
    pub seed: u64,
}

/// Number of held-out pairs used per trial.
pub fn test_set_size(eps_test: f64) -> usize {
    10 * (1.0 / eps_test).ceil() as usize
}

/// Held-out disagreement rate of `h` against `truth` on fresh pairs.
pub fn holdout_error(
    h: &DiscountModel,
    truth: &DiscountModel,
    dist: &dyn PairSource,
    n: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<f64> {
    let mut wrong = 0usize;
    for _ in 0..n {
        let p = dist.sample(rng);
        if h.prefers(&p)? != truth.prefers(&p)? {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / n as f64)
}

/// Runs every `(size, trial)` on its own RNG substream; output is ordered by
/// size then trial regardless of scheduling.
pub fn learning_curve(cfg: &CurveConfig, dist: &dyn PairSource) -> Result<Vec<CurveRecord>> {
    if !(cfg.eps_test > 0.0 && cfg.eps_test < 1.0) {
        return domain("eps_test must lie in (0, 1)");
    }
    cfg.truth.validate()?;
    let t = dist.t();
    let jobs: Vec<(usize, usize)> =
        cfg.sizes.iter().flat_map(|&s| (0..cfg.trials).map(move |k| (s, k))).collect();
    let root = RngSeed::new(cfg.seed);
    let n_test = test_set_size(cfg.eps_test);
    jobs.par_iter()
        .map(|&(size, trial)| {
            let mut rng = root.substream(size as u64).substream(trial as u64).rng();
            let ds = sample_dataset(dist, &cfg.truth, size, &mut rng)?;
            let rep = fit(&cfg.family, &ds)?;
            let err = holdout_error(&rep.hypothesis, &cfg.truth, dist, n_test, &mut rng)?;
            Ok(CurveRecord { family: cfg.family.name().into(), t, dist: dist.name(), size, trial, err, seed: cfg.seed })
        })
        .collect()
}

pub const CURVE_CSV_HEADER: &str = "family,T,dist,size,trial,err,seed";

pub fn write_curve_csv(records: &[CurveRecord], mut sink: impl Write) -> Result<()> {
    writeln!(sink, "{CURVE_CSV_HEADER}")?;
    for r in records {
        writeln!(sink, "{},{},{},{},{},{},{}", r.family, r.t, r.dist, r.size, r.trial, r.err, r.seed)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::open(0.0, 1.0).unwrap()
    }

    /// Pairs over T = 2 whose monomial difference polynomial is `delta - r`.
    fn root_pair(r: f64) -> ChoicePair {
        ChoicePair::from_vecs(vec![-r, 1.0], vec![0.0, 0.0]).unwrap()
    }

    fn ds(roots: &[f64], labels: &[u8]) -> LabeledDataset {
        LabeledDataset::new(2, roots.iter().map(|&r| root_pair(r)).collect(), labels.to_vec()).unwrap()
    }

    #[test]
    fn consistent_set_examples() {
        let q = monomial_basis(2);
        let s = consistent_param_set(&q, &ds(&[0.5], &[1]), unit()).unwrap();
        assert_eq!(s.intervals().len(), 1);
        let iv = s.intervals()[0];
        assert!((iv.lo - 0.5).abs() < 1e-12 && iv.hi == 1.0 && iv.lo_closed && !iv.hi_closed);

        let s = consistent_param_set(&q, &ds(&[0.25, 0.75], &[1, 0]), unit()).unwrap();
        let iv = s.intervals()[0];
        assert!((iv.lo - 0.25).abs() < 1e-12 && (iv.hi - 0.75).abs() < 1e-12);
        assert!(iv.lo_closed && !iv.hi_closed);

        assert!(consistent_param_set(&q, &ds(&[0.75, 0.25], &[1, 0]), unit()).unwrap().is_empty());
    }

    #[test]
    fn zero_difference() {
        let q = monomial_basis(2);
        let same = ChoicePair::from_vecs(vec![1.0, 2.0], vec![1.0, 2.0]).unwrap();
        let d1 = LabeledDataset::new(2, vec![same.clone()], vec![1]).unwrap();
        assert_eq!(consistent_param_set(&q, &d1, unit()).unwrap().total_length(), 1.0);
        let d0 = LabeledDataset::new(2, vec![same], vec![0]).unwrap();
        assert!(consistent_param_set(&q, &d0, unit()).unwrap().is_empty());
    }

    #[test]
    fn fit_examples() {
        let rep = fit_single_param(&Family::Exponential, &ds(&[0.25, 0.75], &[1, 0])).unwrap();
        match rep.hypothesis {
            DiscountModel::Exponential { delta } => assert!((delta - 0.5).abs() < 1e-12),
            ref h => panic!("unexpected {h:?}"),
        }
        assert_eq!(rep.training_error, 0.0);
        let flipped = ds(&[0.25, 0.75, 0.5], &[1, 0, 0]);
        let flipped = LabeledDataset::new(2, flipped.pairs().to_vec(), vec![1, 1, 0]).unwrap();
        assert!(matches!(fit_single_param(&Family::Exponential, &flipped), Err(Error::NoConsistentHypothesis(_))));
    }

    #[test]
    fn hd_domain_is_closed_at_cap() {
        // 1 * x_1 vs 0 is preferred for every alpha: region (0, alpha_max].
        let p = ChoicePair::from_vecs(vec![1.0, 0.0], vec![0.0, 0.0]).unwrap();
        let d = LabeledDataset::new(2, vec![p], vec![1]).unwrap();
        let rep = fit_single_param(&Family::hyperbolic(), &d).unwrap();
        let iv = rep.consistent_region.intervals()[0];
        assert!(iv.hi == DEFAULT_ALPHA_MAX && iv.hi_closed && !iv.lo_closed);
    }

    #[test]
    fn beta_fit_single_pair() {
        // diff (1, -1), label 1: feasible iff 1/beta - delta >= 0.
        let p = ChoicePair::from_vecs(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let d = LabeledDataset::new(2, vec![p.clone()], vec![1]).unwrap();
        let rep = fit_beta_delta(&monomial_basis(2), &d, unit(), &BetaSearch::default()).unwrap();
        assert_eq!(rep.training_error, 0.0);
        let spot = DiscountModel::QuasiHyperbolic { beta: 0.5, delta: 0.5 };
        assert_eq!(spot.prefers(&p).unwrap(), 1);
    }

    #[test]
    fn beta_fit_without_first_period_reduces_to_delta() {
        let pairs = vec![
            ChoicePair::from_vecs(vec![0.0, -0.25, 1.0], vec![0.0; 3]).unwrap(),
            ChoicePair::from_vecs(vec![0.0, -0.75, 1.0], vec![0.0; 3]).unwrap(),
        ];
        let d = LabeledDataset::new(3, pairs, vec![1, 0]).unwrap();
        let rep = fit_beta_delta(&monomial_basis(3), &d, unit(), &BetaSearch::default()).unwrap();
        match rep.hypothesis {
            DiscountModel::BetaPolyWeights { beta, delta, .. } => {
                assert_eq!(beta, 0.5);
                assert!((delta - 0.5).abs() < 1e-12);
            }
            ref h => panic!("unexpected {h:?}"),
        }
    }

    #[test]
    fn bound_examples() {
        assert!((blumer_bound(0.1, 0.1, 3.0).unwrap() - 132.877).abs() < 1e-3);
        assert!((hanneke_bound(0.1, 0.1, 3.0).unwrap() - 63.219).abs() < 1e-3);
        assert!(blumer_bound(0.05, 0.1, 3.0).unwrap() > blumer_bound(0.1, 0.1, 3.0).unwrap());
        assert!(hanneke_bound(0.05, 0.1, 3.0).unwrap() > hanneke_bound(0.1, 0.1, 3.0).unwrap());
        assert!(blumer_bound(0.0, 0.1, 3.0).is_err());
        assert!(hanneke_bound(0.1, 0.1, 0.5).is_err());
    }
}
