//! Shattering: brute-force checks, the explicit shattered sets for discount
//! tables and polynomial-weight families, and the sign-combination count that
//! caps shatterable set sizes.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{rat, realized_sign_vectors, RatPoly, Rational};
use crate::models::{diff_polynomial, ChoicePair, DiscountModel, LabeledDataset};
use crate::pac::{fit_beta_delta, search_breakpoints, BetaSearch, Family};
use crate::polynomial::{partition_impl, span_solve, Polynomial};
use crate::sgn;

/// Largest point count accepted by the labeling enumeration.
pub const ENUMERATION_LIMIT: usize = 20;

/// Outcome of a shattering check. `witnesses[mask]` realizes the labeling
/// whose bit `i` is the label of point `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterReport {
    pub n: usize,
    pub shattered: bool,
    pub witnesses: Vec<Option<DiscountModel>>,
}

fn labels_of(mask: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

fn check_guard(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { n, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Whether `family` realizes all `2^n` labelings of `points`.
///
/// One-parameter families partition the domain once and read every realized
/// labeling off the cells; two-parameter families run the `(beta, delta)` fit
/// per labeling; discount tables use the chain construction. Every witness is
/// re-checked with [`DiscountModel::prefers`] and dropped if it fails.
pub fn is_shattered(points: &[ChoicePair], family: &Family) -> Result<ShatterReport> {
    let n = points.len();
    check_guard(n)?;
    let Some(t) = points.first().map(ChoicePair::t) else {
        return Ok(ShatterReport { n: 0, shattered: true, witnesses: vec![None] });
    };
    if let Some(p) = points.iter().find(|p| p.t() != t) {
        return Err(Error::Arity { expected: t, got: p.t() });
    }
    let total = 1usize << n;
    let candidates: Vec<Option<DiscountModel>> = match family {
        Family::TableDiscount => (0..total)
            .into_par_iter()
            .map(|m| Ok(table_witness(points, &labels_of(m, n))?.map(|d| DiscountModel::TableDiscount { d })))
            .collect::<Result<_>>()?,
        f if f.has_beta() => {
            let q = f.basis(t)?;
            let dom = f.domain()?;
            (0..total)
                .into_par_iter()
                .map(|m| {
                    let ds = LabeledDataset::new(t, points.to_vec(), labels_of(m, n))?;
                    match fit_beta_delta(&q, &ds, dom, &BetaSearch::default()) {
                        Ok(rep) => Ok(Some(rep.hypothesis)),
                        Err(Error::NoConsistentHypothesis(_)) => Ok(None),
                        Err(e) => Err(e),
                    }
                })
                .collect::<Result<_>>()?
        }
        f => single_param_witnesses(points, f, t)?,
    };
    let witnesses: Vec<Option<DiscountModel>> = candidates
        .into_iter()
        .enumerate()
        .map(|(m, w)| {
            w.filter(|w| {
                points
                    .iter()
                    .enumerate()
                    .all(|(i, p)| w.prefers(p).ok() == Some(((m >> i) & 1) as u8))
            })
        })
        .collect();
    let shattered = witnesses.iter().all(Option::is_some);
    Ok(ShatterReport { n, shattered, witnesses })
}

/// Cell midpoints of the family's sign partition, one per realized labeling
/// (the widest cell wins).
fn single_param_witnesses(points: &[ChoicePair], family: &Family, t: usize) -> Result<Vec<Option<DiscountModel>>> {
    let q = family.basis(t)?;
    let dom = family.domain()?;
    let mut polys = Vec::new();
    let mut members = Vec::new();
    let mut fixed_mask = 0usize;
    for (i, p) in points.iter().enumerate() {
        let d = diff_polynomial(&q, p)?;
        if d.is_zero() {
            fixed_mask |= 1 << i;
        } else {
            polys.push(d);
            members.push(i);
        }
    }
    let mut bounds = vec![dom.lo];
    if !polys.is_empty() {
        bounds.extend(search_breakpoints(&polys, &dom)?.points);
    }
    bounds.push(dom.hi);
    let mut best: HashMap<usize, (f64, f64)> = HashMap::new();
    for w in bounds.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let mut mask = fixed_mask;
        for (p, &i) in polys.iter().zip(&members) {
            mask |= usize::from(sgn(p.eval(mid))) << i;
        }
        let width = w[1] - w[0];
        let e = best.entry(mask).or_insert((width, mid));
        if width > e.0 {
            *e = (width, mid);
        }
    }
    (0..1usize << points.len())
        .map(|m| best.get(&m).map(|&(_, mid)| family.model(t, mid, 0.5)).transpose())
        .collect()
}

/// `(i, j, a, b)` for a pair of the form `x = a e_i`, `y = b e_j`.
fn chain_form(p: &ChoicePair) -> Option<(usize, usize, f64, f64)> {
    let nz = |v: &[f64]| {
        let mut it = v.iter().enumerate().filter(|(_, &c)| c != 0.0);
        let first = it.next()?;
        it.next().is_none().then_some((first.0, *first.1))
    };
    let (i, a) = nz(p.x.payoffs())?;
    let (j, b) = nz(p.y.payoffs())?;
    Some((i, j, a, b))
}

/// A strictly decreasing table in `(0, 1)` realizing `labels`, built period
/// by period: `D(1) = 0.9`, then `D(i+1) = D(i) a/b` when label 1 needs it,
/// the midpoint of `(D(i) a/b, D(i))` for label 0, and `0.9 D(i)` otherwise.
///
/// Only pairs `x = a e_i`, `y = b e_(i+1)` with `a, b > 0` and distinct `i`
/// are supported. Returns `None` when the labeling is infeasible.
pub fn table_witness(points: &[ChoicePair], labels: &[u8]) -> Result<Option<Vec<f64>>> {
    let Some(t) = points.first().map(ChoicePair::t) else {
        return domain("table witness needs at least one pair");
    };
    let mut step: Vec<Option<(f64, f64, u8)>> = vec![None; t - 1];
    for (p, &l) in points.iter().zip(labels) {
        let unsupported = || Error::Unsupported("discount-table feasibility needs pairs a e_i vs b e_(i+1)".into());
        let (i, j, a, b) = chain_form(p).ok_or_else(unsupported)?;
        if j != i + 1 || !(a > 0.0 && b > 0.0) || step[i].is_some() {
            return Err(unsupported());
        }
        step[i] = Some((a, b, l));
    }
    let mut d = vec![0.9];
    for s in step {
        let prev = *d.last().expect("nonempty");
        let next = match s {
            None => 0.9 * prev,
            Some((a, b, 1)) => {
                let r = a / b;
                if r >= 1.0 {
                    0.9 * prev
                } else {
                    // Largest float keeping a D(i) >= b D(i+1).
                    let mut v = r * prev;
                    while a * prev < b * v {
                        v = v.next_down();
                    }
                    v
                }
            }
            Some((a, b, _)) => {
                let r = a / b;
                if r >= 1.0 {
                    return Ok(None);
                }
                0.5 * (r * prev + prev)
            }
        };
        if !(next > 0.0 && next < prev) {
            return Ok(None);
        }
        d.push(next);
    }
    Ok(Some(d))
}

/// Standard reflected Gray code: entry `i` is the 1-based position flipped
/// between vertices `i` and `i + 1`.
pub fn gray_code_flips(n: usize) -> Result<Vec<usize>> {
    if !(1..=ENUMERATION_LIMIT).contains(&n) {
        return domain(format!("gray code length must lie in 1..={ENUMERATION_LIMIT}, got {n}"));
    }
    Ok((1usize..1 << n).map(|i| i.trailing_zeros() as usize + 1).collect())
}

/// Size `floor(log2(T - 1))` of the explicit shattered set.
pub fn theorem3_size(t: usize) -> Result<usize> {
    if t < 3 {
        return domain("the polynomial-weight construction needs T >= 3");
    }
    Ok((usize::BITS - 1 - (t - 1).leading_zeros()) as usize)
}

/// `P_k = prod_{i : b_i = k} (delta - r_i)` for the Gray flips `b`.
fn root_groups<R: Clone>(n: usize, roots: &[R]) -> Result<Vec<Vec<R>>> {
    if roots.len() != (1 << n) - 1 {
        return domain(format!("need {} roots, got {}", (1 << n) - 1, roots.len()));
    }
    let flips = gray_code_flips(n)?;
    let mut groups = vec![Vec::new(); n];
    for (r, b) in roots.iter().zip(flips) {
        groups[b - 1].push(r.clone());
    }
    Ok(groups)
}

/// Polynomials `P_1..P_n` whose sign vectors over `(0, 1)` walk every vertex
/// of the cube. Default roots are `i / 2^n`.
pub fn theorem3_polys(t: usize, roots: Option<&[f64]>) -> Result<Vec<Polynomial>> {
    let n = theorem3_size(t)?;
    let default: Vec<f64> = (1..1usize << n).map(|i| i as f64 / (1u64 << n) as f64).collect();
    let roots = roots.unwrap_or(&default);
    if roots.windows(2).any(|w| !(w[0] < w[1])) || roots.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return domain("roots must be strictly ascending in (0, 1)");
    }
    root_groups(n, roots)?
        .into_iter()
        .map(|g| Polynomial::from_roots(&g, 1.0))
        .collect()
}

/// Pairs `(f^k, 0)` with `sum_t Q_t f^k_t = P_k`, in `f64`.
pub fn theorem3_points(t: usize, q: &[Polynomial], roots: Option<&[f64]>) -> Result<Vec<ChoicePair>> {
    if q.len() != t {
        return Err(Error::Arity { expected: t, got: q.len() });
    }
    theorem3_polys(t, roots)?
        .iter()
        .map(|p| ChoicePair::from_vecs(span_solve(q, p)?, vec![0.0; t]))
        .collect()
}

/// Plans `x^i = (1 - eps) e_i`, `y^i = e_(i+1)`.
pub fn prop1_points(t: usize, eps: f64) -> Result<Vec<ChoicePair>> {
    if !(eps > 0.0 && eps < 1.0) {
        return domain(format!("eps must lie in (0, 1), got {eps}"));
    }
    if t < 2 {
        return domain("T must be at least 2");
    }
    (1..t)
        .map(|i| ChoicePair::from_vecs(unit(t, i, 1.0 - eps), unit(t, i + 1, 1.0)))
        .collect()
}

fn unit(t: usize, i: usize, v: f64) -> Vec<f64> {
    let mut e = vec![0.0; t];
    e[i - 1] = v;
    e
}

/// Weight bases that have an exact-arithmetic counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactBasis {
    /// `Q_t = delta^(t-1)` (exponential discounting).
    Monomial,
    /// `Q_t = prod_{l != t} (1 + l alpha)` (hyperbolic discounting).
    HdCleared,
}

impl ExactBasis {
    pub fn name(self) -> &'static str {
        match self {
            ExactBasis::Monomial => "ed",
            ExactBasis::HdCleared => "hd",
        }
    }

    pub fn polys(self, t: usize) -> Vec<RatPoly> {
        match self {
            ExactBasis::Monomial => (0..t).map(RatPoly::monomial).collect(),
            ExactBasis::HdCleared => (1..=t)
                .map(|k| {
                    (1..=t).filter(|&l| l != k).fold(RatPoly::new(vec![rat(1, 1)]), |acc, l| {
                        acc.mul(&RatPoly::new(vec![rat(1, 1), rat(l as i64, 1)]))
                    })
                })
                .collect(),
        }
    }

    pub fn f64_polys(self, t: usize) -> Result<Vec<Polynomial>> {
        match self {
            ExactBasis::Monomial => Ok(crate::models::monomial_basis(t)),
            ExactBasis::HdCleared => crate::models::hd_cleared_polynomials(t),
        }
    }

    /// Uncleared model weights at parameter `p`: `p^(t-1)` or `1/(1 + t p)`.
    pub fn weights(self, t: usize, p: &Rational) -> Vec<Rational> {
        match self {
            ExactBasis::Monomial => {
                let mut w = Vec::with_capacity(t);
                let mut acc = Rational::one();
                for _ in 0..t {
                    w.push(acc.clone());
                    acc *= p;
                }
                w
            }
            ExactBasis::HdCleared => {
                (1..=t).map(|k| (Rational::one() + rat(k as i64, 1) * p).recip()).collect()
            }
        }
    }

    /// Coefficients of `target` in this basis. The cleared hyperbolic basis
    /// is a Lagrange basis at the nodes `-1/t`, so `f_t = P(-1/t) / Q_t(-1/t)`.
    pub fn solve(self, t: usize, target: &RatPoly) -> Result<Vec<Rational>> {
        if target.degree().is_some_and(|d| d >= t) {
            return domain("target degree must be at most T - 1");
        }
        match self {
            ExactBasis::Monomial => {
                let mut f = target.coeffs().to_vec();
                f.resize(t, Rational::zero());
                Ok(f)
            }
            ExactBasis::HdCleared => (1..=t)
                .map(|k| {
                    let node = rat(-1, k as i64);
                    let qk = (1..=t)
                        .filter(|&l| l != k)
                        .fold(Rational::one(), |acc, l| acc * (Rational::one() + rat(l as i64, 1) * &node));
                    Ok(target.eval(&node) / qk)
                })
                .collect(),
        }
    }
}

/// Exact counterpart of [`theorem3_polys`]; default roots `i / 2^n`.
pub fn theorem3_polys_exact(t: usize, roots: Option<Vec<Rational>>) -> Result<Vec<RatPoly>> {
    let n = theorem3_size(t)?;
    let roots = roots.unwrap_or_else(|| (1..1i64 << n).map(|i| rat(i, 1 << n)).collect());
    let (zero, one) = (Rational::zero(), Rational::one());
    if roots.windows(2).any(|w| w[0] >= w[1]) || roots.iter().any(|r| *r <= zero || *r >= one) {
        return domain("roots must be strictly ascending in (0, 1)");
    }
    root_groups(n, &roots)?
        .into_iter()
        .map(|g| RatPoly::from_roots(&g, &one))
        .collect()
}

/// Exact plans `f^k` (each paired with the zero plan).
pub fn theorem3_points_exact(t: usize, basis: ExactBasis, roots: Option<Vec<Rational>>) -> Result<Vec<Vec<Rational>>> {
    theorem3_polys_exact(t, roots)?.iter().map(|p| basis.solve(t, p)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactShatterReport {
    pub n: usize,
    pub shattered: bool,
    /// `witnesses[mask]`: parameter realizing the labeling, verified exactly.
    pub witnesses: Vec<Option<Rational>>,
}

/// Exact shattering check of plans `f^k` (against the zero plan) over the
/// open parameter interval `(lo, hi)`.
///
/// Realized sign vectors come from exact root isolation of `sum_t Q_t f_t`;
/// each witness is then re-checked on the uncleared model weights.
pub fn is_shattered_exact(
    plans: &[Vec<Rational>],
    basis: ExactBasis,
    lo: &Rational,
    hi: &Rational,
) -> Result<ExactShatterReport> {
    let n = plans.len();
    check_guard(n)?;
    let Some(t) = plans.first().map(Vec::len) else {
        return Ok(ExactShatterReport { n: 0, shattered: true, witnesses: vec![None] });
    };
    let q = basis.polys(t);
    let mut polys = Vec::with_capacity(n);
    for f in plans {
        if f.len() != t {
            return Err(Error::Arity { expected: t, got: f.len() });
        }
        let p = q.iter().zip(f).fold(RatPoly::zero(), |acc, (qt, ft)| acc.add_scaled(qt, ft));
        if p.is_zero() {
            return Ok(ExactShatterReport { n, shattered: false, witnesses: vec![None; 1 << n] });
        }
        polys.push(p);
    }
    let mut witnesses: Vec<Option<Rational>> = vec![None; 1 << n];
    for v in realized_sign_vectors(&polys, lo, hi)? {
        if !v.exact_witness {
            continue;
        }
        let mask = v.signs.iter().enumerate().fold(0usize, |m, (i, &s)| m | (usize::from(s) << i));
        if witnesses[mask].is_some() {
            continue;
        }
        let w = basis.weights(t, &v.witness);
        let ok = plans.iter().enumerate().all(|(i, f)| {
            let val = w.iter().zip(f).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            u8::from(!val.is_negative()) == ((mask >> i) & 1) as u8
        });
        if ok {
            witnesses[mask] = Some(v.witness);
        }
    }
    let shattered = witnesses.iter().all(Option::is_some);
    Ok(ExactShatterReport { n, shattered, witnesses })
}

/// `(n^2 + n) d + n + 1`: sign vectors reachable by `n` degree-`d`
/// polynomials under a common vertical shift.
pub fn sign_combination_bound(n: u64, d: u64) -> u128 {
    let (n, d) = (n as u128, d as u128);
    (n * n + n) * d + n + 1
}

/// Largest `n` with `(n^2 + n) d + n + 1 >= 2^n`.
pub fn max_shatterable_n(d: u64) -> u64 {
    (1..127u32)
        .filter(|&n| sign_combination_bound(n as u64, d) >= 1u128 << n)
        .max()
        .unwrap_or(0) as u64
}

fn real_line_bound(polys: &[Polynomial]) -> f64 {
    polys.iter().filter(|p| !p.is_zero()).map(Polynomial::cauchy_bound).fold(1.0, f64::max) + 1.0
}

/// Distinct full-dimensional sign vectors of `P_i + u P_i(0)` over the real line.
pub fn realized_vectors_fixed_shift(polys: &[Polynomial], u: f64) -> Result<usize> {
    let shifted: Vec<Polynomial> = polys
        .iter()
        .map(|p| {
            let s = p.add_scaled(&Polynomial::constant(p.eval(0.0)), u);
            if s.is_zero() { Polynomial::constant(1.0) } else { s }
        })
        .collect();
    let b = real_line_bound(&shifted);
    Ok(partition_impl(&shifted, -b, b, 1e-12, false)?.distinct_cell_vectors())
}

/// Distinct full-dimensional sign vectors of `P_i(delta) + u P_i(0)` over
/// `(delta, u)` in the plane.
///
/// The arrangement only changes at `delta` where two thresholds
/// `-P_i(delta)/P_i(0)` coincide or a shift-free member changes sign; one
/// `delta` per resulting cell, with every `u` gap, covers all regions.
pub fn realized_vectors_shift_sweep(polys: &[Polynomial]) -> Result<usize> {
    if polys.len() > 64 {
        return domain("at most 64 polynomials");
    }
    let b0: Vec<f64> = polys.iter().map(|p| p.eval(0.0)).collect();
    let mut events: Vec<Polynomial> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        if b0[i] == 0.0 {
            events.push(p.clone());
        }
        for j in 0..i {
            if b0[i] != 0.0 && b0[j] != 0.0 {
                events.push(p.scaled(b0[j]).add_scaled(&polys[j], -b0[i]));
            }
        }
    }
    events.retain(|e| !e.is_zero());
    let bound = real_line_bound(&events).max(real_line_bound(polys));
    let mut pts: Vec<f64> = Vec::new();
    for e in &events {
        pts.extend(e.isolate_roots_in(-bound, bound, 1e-13)?);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut bounds = vec![-bound];
    bounds.extend(pts);
    bounds.push(bound);

    let mut seen: HashSet<u64> = HashSet::new();
    for w in bounds.windows(2) {
        let delta = 0.5 * (w[0] + w[1]);
        let vals: Vec<f64> = polys.iter().map(|p| p.eval(delta)).collect();
        // u -> -infinity.
        let mut mask = 0u64;
        let mut thresholds: Vec<(f64, usize)> = Vec::new();
        for (i, (&v, &b)) in vals.iter().zip(&b0).enumerate() {
            let on = if b == 0.0 { sgn(v) == 1 } else { b < 0.0 };
            if on {
                mask |= 1 << i;
            }
            if b != 0.0 {
                thresholds.push((-v / b, i));
            }
        }
        thresholds.sort_by(|a, b| a.0.total_cmp(&b.0));
        seen.insert(mask);
        let mut k = 0;
        while k < thresholds.len() {
            let tau = thresholds[k].0;
            while k < thresholds.len() && thresholds[k].0 == tau {
                mask ^= 1 << thresholds[k].1;
                k += 1;
            }
            seen.insert(mask);
        }
    }
    Ok(seen.len())
}

pub const SHATTER_CSV_HEADER: &str = "T,family,n,shattered,seconds";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterRow {
    pub t: usize,
    pub family: String,
    pub n: usize,
    pub shattered: bool,
    pub seconds: f64,
}

pub fn write_shatter_csv(rows: &[ShatterRow], mut sink: impl Write) -> Result<()> {
    writeln!(sink, "{SHATTER_CSV_HEADER}")?;
    for r in rows {
        writeln!(sink, "{},{},{},{},{}", r.t, r.family, r.n, r.shattered, r.seconds)?;
    }
    Ok(())
}
