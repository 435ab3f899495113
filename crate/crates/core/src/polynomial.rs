//! Dense univariate polynomials over `f64`.
//!
//! Coefficients are stored in ascending degree: `coeffs[k]` multiplies `x^k`.
//! Root counting uses Sturm chains; a floating chain is used when it is well
//! conditioned and an exact integer chain (built from the exact binary values
//! of the coefficients) otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{rat_from_f64, IntSturm, RatPoly};
use crate::sgn;

/// Trailing coefficients with magnitude at or below this are dropped.
pub const TRIM_TOL: f64 = 1e-12;
/// Default distance under which roots of different polynomials collide.
pub const COLLISION_TOL: f64 = 1e-9;
/// Largest degree accepted by the Sturm kernel.
pub const MAX_DEGREE: usize = 64;
/// Condition-number ceiling for [`span_solve`].
pub const SPAN_COND_LIMIT: f64 = 1e12;

const STURM_TRIM: f64 = 1e-11;
const STURM_GUARD: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().is_some_and(|c| c.abs() <= TRIM_TOL) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `scale * prod (x - r)`, coefficients built as signed elementary symmetric sums.
    pub fn from_roots(roots: &[f64], scale: f64) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() {
            return domain("from_roots: scale must be finite and nonzero");
        }
        let mut c = Vec::with_capacity(roots.len() + 1);
        c.push(scale);
        for &r in roots {
            c.push(0.0);
            for k in (1..c.len()).rev() {
                c[k] = c[k - 1] - r * c[k];
            }
            c[0] *= -r;
        }
        Ok(Polynomial { coeffs: c })
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scaled(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Polynomial, k: f64) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, 0.0);
        for (ci, oi) in c.iter_mut().zip(&other.coeffs) {
            *ci += k * oi;
        }
        Polynomial::new(c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }

    /// Every real root lies in `(-bound, bound)`.
    pub fn cauchy_bound(&self) -> f64 {
        match self.coeffs.split_last() {
            None => 0.0,
            Some((lc, rest)) => 1.0 + rest.iter().fold(0.0f64, |m, c| m.max((c / lc).abs())),
        }
    }

    pub fn sturm(&self) -> Result<SturmSequence> {
        SturmSequence::new(self)
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_roots_in(&self, a: f64, b: f64) -> Result<usize> {
        check_interval(a, b)?;
        Ok(self.sturm()?.count(a, b))
    }

    /// One approximation (within `tol`) per distinct root in `(a, b)`, ascending.
    pub fn isolate_roots_in(&self, a: f64, b: f64, tol: f64) -> Result<Vec<f64>> {
        check_interval(a, b)?;
        if !(tol > 0.0) {
            return domain("isolate_roots_in: tol must be positive");
        }
        Ok(self.sturm()?.isolate(a, b, tol))
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::EmptyInterval { lo: a, hi: b });
    }
    Ok(())
}

#[derive(Debug, Clone)]
enum Chain {
    Float(Vec<Polynomial>),
    Exact(IntSturm),
}

/// Sturm chain of a nonzero polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    poly: Polynomial,
    chain: Chain,
}

impl SturmSequence {
    pub fn new(p: &Polynomial) -> Result<Self> {
        let Some(deg) = p.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        if deg > MAX_DEGREE {
            return domain(format!("degree {deg} exceeds the Sturm kernel cap {MAX_DEGREE}"));
        }
        if p.coeffs.iter().any(|c| !c.is_finite()) {
            return domain("non-finite coefficient");
        }
        let chain = match float_chain(p) {
            Some(c) => Chain::Float(c),
            None => Chain::Exact(IntSturm::new(&RatPoly::from_f64(p)?.to_int_poly())?),
        };
        Ok(SturmSequence { poly: p.clone(), chain })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.chain, Chain::Exact(_))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn variations(&self, x: f64) -> usize {
        match &self.chain {
            Chain::Float(c) => count_variations(c.iter().map(|p| p.eval(x))),
            Chain::Exact(s) => s.variations(&rat_from_f64(x).expect("finite evaluation point")),
        }
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: f64, b: f64) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Roots in `(a, b)`; see [`Polynomial::isolate_roots_in`].
    pub fn isolate(&self, a: f64, b: f64, tol: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut stack = vec![(a, b, self.variations(a), self.variations(b))];
        while let Some((lo, hi, vlo, vhi)) = stack.pop() {
            let c = vlo.saturating_sub(vhi);
            if c == 0 {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                out.push(mid);
                continue;
            }
            if c == 1 {
                let (flo, fhi) = (self.poly.eval(lo), self.poly.eval(hi));
                if fhi == 0.0 {
                    out.push(hi);
                    continue;
                }
                if flo != 0.0 && (flo < 0.0) != (fhi < 0.0) {
                    out.push(bisect_sign_change(&self.poly, lo, hi, flo, tol));
                    continue;
                }
            }
            let vm = self.variations(mid);
            stack.push((mid, hi, vm, vhi));
            stack.push((lo, mid, vlo, vm));
        }
        out.retain(|&r| r > a && r < b);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

fn bisect_sign_change(p: &Polynomial, mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let neg_lo = flo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn count_variations(values: impl Iterator<Item = f64>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for v in values {
        let s = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn normalized(p: Polynomial) -> Polynomial {
    let m = p.max_abs_coeff();
    if m > 0.0 {
        Polynomial { coeffs: p.coeffs.iter().map(|c| c / m).collect() }
    } else {
        p
    }
}

/// Floating Sturm chain with every member scaled to unit max-norm. Returns
/// `None` when cancellation makes the chain untrustworthy.
fn float_chain(p: &Polynomial) -> Option<Vec<Polynomial>> {
    let p0 = normalized(p.clone());
    if p0.degree() == Some(0) {
        return Some(vec![p0]);
    }
    if p0.coeffs.last().is_some_and(|lc| lc.abs() < STURM_GUARD) {
        return None;
    }
    let p1 = normalized(p0.derivative());
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2].coeffs, &chain[n - 1].coeffs);
        let db = b.len() - 1;
        let mut r = a.clone();
        for k in (db..r.len()).rev() {
            let q = r[k] / b[db];
            for (j, bj) in b.iter().enumerate() {
                r[k - db + j] -= q * bj;
            }
        }
        r.truncate(db);
        while r.last().is_some_and(|c| c.abs() <= STURM_TRIM) {
            r.pop();
        }
        if r.is_empty() {
            // A common factor with the derivative (or cancellation that looks like one).
            return None;
        }
        let next = Polynomial { coeffs: r.iter().map(|c| -c).collect() };
        let m = next.max_abs_coeff();
        if m < STURM_GUARD || next.coeffs.last().is_some_and(|lc| lc.abs() < STURM_GUARD * m) {
            return None;
        }
        let next = normalized(next);
        let done = next.degree() == Some(0);
        chain.push(next);
        if done {
            return Some(chain);
        }
    }
}

/// Sorted breakpoints of a polynomial family on an interval, with the members
/// vanishing at each breakpoint.
#[derive(Debug, Clone)]
pub(crate) struct Breakpoints {
    pub points: Vec<f64>,
    pub vanishing: Vec<Vec<usize>>,
}

/// Merged roots of `polys` in `(a, b)`. Roots closer than `tol` are merged;
/// with `strict`, merging roots of different members is an error instead.
pub(crate) fn merged_breakpoints(
    polys: &[Polynomial],
    a: f64,
    b: f64,
    tol: f64,
    strict: bool,
) -> Result<Breakpoints> {
    check_interval(a, b)?;
    if !(tol > 0.0) {
        return domain("collision tolerance must be positive");
    }
    let iso = (tol * 1e-3).clamp(1e-15, 1e-12);
    let mut events: Vec<(f64, usize)> = Vec::new();
    for (j, p) in polys.iter().enumerate() {
        for r in p.isolate_roots_in(a, b, iso)? {
            events.push((r, j));
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut points = Vec::new();
    let mut vanishing: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < events.len() {
        let mut k = i + 1;
        while k < events.len() && events[k].0 - events[k - 1].0 <= tol {
            k += 1;
        }
        let group = &events[i..k];
        let mut members: Vec<usize> = group.iter().map(|e| e.1).collect();
        members.sort_unstable();
        members.dedup();
        let at = group.iter().map(|e| e.0).sum::<f64>() / group.len() as f64;
        if strict && members.len() > 1 {
            return Err(Error::BreakpointCollision { at, tol });
        }
        points.push(at);
        vanishing.push(members);
        i = k;
    }
    Ok(Breakpoints { points, vanishing })
}

/// Partition of an interval into cells on which every member of a polynomial
/// family has constant sign (`sgn(0) = 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignPartition {
    pub lo: f64,
    pub hi: f64,
    pub breakpoints: Vec<f64>,
    /// `cell_signs[i][j]`: sign of member `j` on cell `i`.
    pub cell_signs: Vec<Vec<u8>>,
    /// Members vanishing at each breakpoint.
    pub vanishing: Vec<Vec<usize>>,
}

impl SignPartition {
    pub fn cells(&self) -> usize {
        self.cell_signs.len()
    }

    /// Cell `i` as `(lo, hi)`.
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 { self.lo } else { self.breakpoints[i - 1] };
        let hi = self.breakpoints.get(i).copied().unwrap_or(self.hi);
        (lo, hi)
    }

    /// Sign vector exactly at breakpoint `i`.
    pub fn breakpoint_signs(&self, i: usize) -> Vec<u8> {
        let mut v = self.cell_signs[i].clone();
        for &j in &self.vanishing[i] {
            v[j] = 1;
        }
        v
    }

    pub fn distinct_cell_vectors(&self) -> usize {
        let mut v = self.cell_signs.clone();
        v.sort();
        v.dedup();
        v.len()
    }
}

/// Sign partition of `(a, b)` for a family of nonzero polynomials.
///
/// Fails with [`Error::BreakpointCollision`] when roots of different members
/// lie within `tol`; callers may retry with a smaller tolerance.
pub fn sign_partition(polys: &[Polynomial], a: f64, b: f64, tol: f64) -> Result<SignPartition> {
    partition_impl(polys, a, b, tol, true)
}

pub(crate) fn partition_impl(
    polys: &[Polynomial],
    a: f64,
    b: f64,
    tol: f64,
    strict: bool,
) -> Result<SignPartition> {
    if polys.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let bp = merged_breakpoints(polys, a, b, tol, strict)?;
    let mut bounds = Vec::with_capacity(bp.points.len() + 2);
    bounds.push(a);
    bounds.extend_from_slice(&bp.points);
    bounds.push(b);
    let signs_at = |x: f64| polys.iter().map(|p| sgn(p.eval(x))).collect::<Vec<u8>>();
    let raw: Vec<Vec<u8>> = bounds.windows(2).map(|w| signs_at(0.5 * (w[0] + w[1]))).collect();

    let mut breakpoints = Vec::new();
    let mut vanishing = Vec::new();
    let mut cell_signs = vec![raw[0].clone()];
    for (i, cell) in raw.iter().enumerate().skip(1) {
        // Even-multiplicity roots leave every sign unchanged; no breakpoint.
        if cell_signs.last() == Some(cell) {
            continue;
        }
        breakpoints.push(bp.points[i - 1]);
        vanishing.push(bp.vanishing[i - 1].clone());
        cell_signs.push(cell.clone());
    }
    Ok(SignPartition { lo: a, hi: b, breakpoints, cell_signs, vanishing })
}

/// Coefficients `f` with `sum_t f_t Q_t = P`, by a `T x T` solve on the
/// coefficient matrix after column equilibration.
pub fn span_solve(basis: &[Polynomial], target: &Polynomial) -> Result<Vec<f64>> {
    use nalgebra::{DMatrix, DVector};

    let t = basis.len();
    if t == 0 {
        return domain("span_solve: empty basis");
    }
    if basis.iter().chain([target]).any(|q| q.degree().is_some_and(|d| d >= t)) {
        return domain("span_solve: degrees must be at most T - 1");
    }
    let mut m = DMatrix::<f64>::from_fn(t, t, |k, j| basis[j].coeffs.get(k).copied().unwrap_or(0.0));
    let mut col_scale = vec![1.0; t];
    for (j, s) in col_scale.iter_mut().enumerate() {
        let norm = m.column(j).amax();
        if norm == 0.0 {
            return Err(Error::SingularBasis { condition: f64::INFINITY });
        }
        *s = 1.0 / norm;
        m.column_mut(j).scale_mut(*s);
    }
    let sv = m.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= SPAN_COND_LIMIT) {
        return Err(Error::SingularBasis { condition });
    }
    let rhs = DVector::from_fn(t, |k, _| target.coeffs.get(k).copied().unwrap_or(0.0));
    let y = m
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularBasis { condition })?;
    let residual = (&m * &y - &rhs).amax();
    // Normwise backward error of the LU solution.
    if !(residual <= 1e-9 * (m.amax() * y.amax() + rhs.amax())) {
        return Err(Error::SingularBasis { condition });
    }
    Ok(y.iter().zip(&col_scale).map(|(v, s)| v * s).collect())
}

/// `sum_t f_t Q_t`.
pub fn combine(basis: &[Polynomial], f: &[f64]) -> Polynomial {
    basis
        .iter()
        .zip(f)
        .fold(Polynomial::zero(), |acc, (q, &ft)| acc.add_scaled(q, ft))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-0.5, 1.0]).eval(0.5), 0.0);
        assert_eq!(Polynomial::zero().eval(0.7), 0.0);
        // (x - 1/4)(x - 3/4) expanded by hand
        assert_eq!(p(&[0.1875, -1.0, 1.0]).eval(0.25), 0.0);
    }

    #[test]
    fn trims_leading_noise() {
        let q = p(&[1.0, 2.0, 1e-13]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0.0, 1e-14]).is_zero());
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(Polynomial::from_roots(&[0.5], 1.0).unwrap().coeffs(), &[-0.5, 1.0]);
        assert_eq!(Polynomial::from_roots(&[], 3.0).unwrap().coeffs(), &[3.0]);
        let q = Polynomial::from_roots(&[0.25, 0.75], 1.0).unwrap();
        assert_eq!(q.coeffs(), &[0.1875, -1.0, 1.0]);
        assert_eq!(q.eval(0.25), 0.0);
        assert_eq!(q.eval(0.75), 0.0);
        assert!(Polynomial::from_roots(&[0.5], 0.0).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(p(&[-0.5, 1.0]).count_roots_in(0.0, 1.0).unwrap(), 1);
        assert_eq!(p(&[1.0, 1.0]).count_roots_in(0.0, 1.0).unwrap(), 0);
        assert_eq!(p(&[0.1875, -1.0, 1.0]).count_roots_in(0.0, 1.0).unwrap(), 2);
        assert_eq!(Polynomial::zero().count_roots_in(0.0, 1.0), Err(Error::ZeroPolynomial));
        assert!(p(&[1.0]).count_roots_in(1.0, 1.0).is_err());
    }

    #[test]
    fn count_collapses_multiplicity() {
        // (x - 0.5)^2 (x - 0.25)
        let q = Polynomial::from_roots(&[0.5, 0.5, 0.25], 1.0).unwrap();
        assert_eq!(q.count_roots_in(0.0, 1.0).unwrap(), 2);
        let roots = q.isolate_roots_in(0.0, 1.0, 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.25).abs() < 1e-9 && (roots[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn isolate_examples() {
        let r = p(&[-0.5, 1.0]).isolate_roots_in(0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5).abs() <= 1e-12);
        let r = p(&[0.1875, -1.0, 1.0]).isolate_roots_in(0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - 0.25).abs() <= 1e-12 && (r[1] - 0.75).abs() <= 1e-12);
        assert!(p(&[1.0]).isolate_roots_in(0.0, 1.0, 1e-12).unwrap().is_empty());
    }

    #[test]
    fn sign_partition_examples() {
        let one = sign_partition(&[p(&[-0.5, 1.0])], 0.0, 1.0, COLLISION_TOL).unwrap();
        assert_eq!(one.breakpoints.len(), 1);
        assert!((one.breakpoints[0] - 0.5).abs() < 1e-12);
        assert_eq!(one.cell_signs, vec![vec![0], vec![1]]);

        let two = sign_partition(&[p(&[-0.5, 1.0]), p(&[0.1875, -1.0, 1.0])], 0.0, 1.0, COLLISION_TOL).unwrap();
        assert_eq!(two.breakpoints.len(), 3);
        for (got, want) in two.breakpoints.iter().zip([0.25, 0.5, 0.75]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(two.cell_signs, vec![vec![0, 1], vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(two.breakpoint_signs(1), vec![1, 0]);
    }

    #[test]
    fn sign_partition_rejects_zero_and_collisions() {
        assert_eq!(
            sign_partition(&[Polynomial::zero()], 0.0, 1.0, COLLISION_TOL),
            Err(Error::ZeroPolynomial)
        );
        let a = p(&[-0.5, 1.0]);
        let b = p(&[-0.5 - 1e-11, 1.0]);
        assert!(matches!(
            sign_partition(&[a.clone(), b.clone()], 0.0, 1.0, COLLISION_TOL),
            Err(Error::BreakpointCollision { .. })
        ));
        assert!(sign_partition(&[a, b], 0.0, 1.0, 1e-13).is_ok());
    }

    #[test]
    fn even_multiplicity_root_is_not_a_breakpoint() {
        let sq = Polynomial::from_roots(&[0.5, 0.5], 1.0).unwrap();
        let part = sign_partition(&[sq], 0.0, 1.0, COLLISION_TOL).unwrap();
        assert!(part.breakpoints.is_empty());
        assert_eq!(part.cell_signs, vec![vec![1]]);
    }

    #[test]
    fn span_solve_examples() {
        let basis: Vec<_> = (0..4).map(Polynomial::monomial).collect();
        let f = span_solve(&basis, &p(&[0.1875, -1.0, 1.0])).unwrap();
        assert_eq!(f, vec![0.1875, -1.0, 1.0, 0.0]);

        let hd = [p(&[1.0, 2.0]), p(&[1.0, 1.0])];
        let f = span_solve(&hd, &p(&[0.0, 1.0])).unwrap();
        assert!((f[0] - 1.0).abs() < 1e-12 && (f[1] + 1.0).abs() < 1e-12);

        let dup = [p(&[1.0, 1.0]), p(&[1.0, 1.0])];
        assert!(matches!(span_solve(&dup, &p(&[0.0, 1.0])), Err(Error::SingularBasis { .. })));
    }

    #[test]
    fn exact_fallback_handles_repeated_roots() {
        let q = Polynomial::from_roots(&[0.3, 0.3, 0.3, 0.7], 1.0).unwrap();
        let s = q.sturm().unwrap();
        assert!(s.is_exact());
        assert_eq!(s.count(0.0, 1.0), 2);
    }
}
