//! Discount families, plans and the choice rule.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polynomial::{Polynomial, MAX_DEGREE};
use crate::sgn;

/// Payoffs over `T >= 2` periods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Plan(Vec<f64>);

impl Plan {
    pub fn new(payoffs: Vec<f64>) -> Result<Self> {
        if payoffs.len() < 2 {
            return domain(format!("a plan needs at least 2 periods, got {}", payoffs.len()));
        }
        if payoffs.iter().any(|v| !v.is_finite()) {
            return domain("plan payoffs must be finite");
        }
        Ok(Plan(payoffs))
    }

    pub fn zeros(t: usize) -> Result<Self> {
        Plan::new(vec![0.0; t])
    }

    /// `scale * e_t` with 1-based `t`.
    pub fn unit(t_len: usize, t: usize, scale: f64) -> Result<Self> {
        if t == 0 || t > t_len {
            return domain(format!("period {t} outside 1..={t_len}"));
        }
        let mut v = vec![0.0; t_len];
        v[t - 1] = scale;
        Plan::new(v)
    }

    pub fn payoffs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoicePair {
    pub x: Plan,
    pub y: Plan,
}

impl ChoicePair {
    pub fn new(x: Plan, y: Plan) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Arity { expected: x.len(), got: y.len() });
        }
        Ok(ChoicePair { x, y })
    }

    pub fn from_vecs(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        ChoicePair::new(Plan::new(x)?, Plan::new(y)?)
    }

    pub fn t(&self) -> usize {
        self.x.len()
    }

    /// `x - y`.
    pub fn diff(&self) -> Vec<f64> {
        self.x.0.iter().zip(&self.y.0).map(|(a, b)| a - b).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    t: usize,
    pairs: Vec<ChoicePair>,
    labels: Vec<u8>,
}

impl LabeledDataset {
    pub fn new(t: usize, pairs: Vec<ChoicePair>, labels: Vec<u8>) -> Result<Self> {
        if t < 2 {
            return domain("T must be at least 2");
        }
        if pairs.len() != labels.len() {
            return domain(format!("{} pairs but {} labels", pairs.len(), labels.len()));
        }
        if let Some(p) = pairs.iter().find(|p| p.t() != t) {
            return Err(Error::Arity { expected: t, got: p.t() });
        }
        if labels.iter().any(|&l| l > 1) {
            return domain("labels must be 0 or 1");
        }
        Ok(LabeledDataset { t, pairs, labels })
    }

    pub fn empty(t: usize) -> Result<Self> {
        LabeledDataset::new(t, Vec::new(), Vec::new())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn pairs(&self) -> &[ChoicePair] {
        &self.pairs
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChoicePair, u8)> {
        self.pairs.iter().zip(self.labels.iter().copied())
    }

    /// Fraction of pairs on which `m` disagrees with the stored label.
    pub fn error_of(&self, m: &DiscountModel) -> Result<f64> {
        if self.is_empty() {
            return Ok(0.0);
        }
        let mut wrong = 0usize;
        for (p, l) in self.iter() {
            if m.prefers(p)? != l {
                wrong += 1;
            }
        }
        Ok(wrong as f64 / self.len() as f64)
    }
}

/// A preference parameterization. Weights follow the `delta^(t-1)`
/// normalization; QHD uses the `(1/beta - 1)` shift form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum DiscountModel {
    Exponential { delta: f64 },
    Hyperbolic { alpha: f64 },
    QuasiHyperbolic { beta: f64, delta: f64 },
    TableDiscount { d: Vec<f64> },
    PolyWeights { q: Vec<Polynomial>, delta: f64 },
    BetaPolyWeights { q: Vec<Polynomial>, beta: f64, delta: f64 },
}

fn in_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        domain(format!("{name} must lie in (0, 1), got {v}"))
    }
}

fn check_basis(q: &[Polynomial]) -> Result<()> {
    if q.len() < 2 {
        return domain("a weight basis needs at least 2 polynomials");
    }
    if q.iter().any(|p| p.degree().is_some_and(|d| d > MAX_DEGREE)) {
        return domain(format!("basis degree exceeds {MAX_DEGREE}"));
    }
    Ok(())
}

impl DiscountModel {
    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            DiscountModel::Exponential { delta } => in_unit("delta", *delta),
            DiscountModel::Hyperbolic { alpha } => {
                if *alpha > 0.0 && alpha.is_finite() {
                    Ok(())
                } else {
                    domain(format!("alpha must be positive, got {alpha}"))
                }
            }
            DiscountModel::QuasiHyperbolic { beta, delta } => {
                in_unit("beta", *beta)?;
                in_unit("delta", *delta)
            }
            DiscountModel::TableDiscount { d } => {
                if d.len() < 2 {
                    return domain("a discount table needs at least 2 entries");
                }
                for &v in d {
                    in_unit("D(t)", v)?;
                }
                if d.windows(2).any(|w| w[1] >= w[0]) {
                    return domain("D must be strictly decreasing");
                }
                Ok(())
            }
            DiscountModel::PolyWeights { q, delta } => {
                check_basis(q)?;
                if delta.is_finite() {
                    Ok(())
                } else {
                    domain("delta must be finite")
                }
            }
            DiscountModel::BetaPolyWeights { q, beta, delta } => {
                check_basis(q)?;
                in_unit("beta", *beta)?;
                if delta.is_finite() {
                    Ok(())
                } else {
                    domain("delta must be finite")
                }
            }
        }
    }

    /// Fixed horizon for table and basis models; `None` when any `T` works.
    pub fn arity(&self) -> Option<usize> {
        match self {
            DiscountModel::TableDiscount { d } => Some(d.len()),
            DiscountModel::PolyWeights { q, .. } | DiscountModel::BetaPolyWeights { q, .. } => Some(q.len()),
            _ => None,
        }
    }

    /// Per-period weights `w` with payoff `w . x`.
    pub fn weights(&self, t: usize) -> Result<Vec<f64>> {
        if t < 2 {
            return domain("T must be at least 2");
        }
        if let Some(a) = self.arity() {
            if a != t {
                return Err(Error::Arity { expected: a, got: t });
            }
        }
        Ok(match self {
            DiscountModel::Exponential { delta } => powers(*delta, t),
            DiscountModel::Hyperbolic { alpha } => (1..=t).map(|k| 1.0 / (1.0 + k as f64 * alpha)).collect(),
            DiscountModel::QuasiHyperbolic { beta, delta } => {
                let mut w = powers(*delta, t);
                w[0] = 1.0 / beta;
                w
            }
            DiscountModel::TableDiscount { d } => d.clone(),
            DiscountModel::PolyWeights { q, delta } => q.iter().map(|p| p.eval(*delta)).collect(),
            DiscountModel::BetaPolyWeights { q, beta, delta } => {
                let u = 1.0 / beta - 1.0;
                q.iter().map(|p| p.eval(*delta) + u * p.eval(0.0)).collect()
            }
        })
    }

    /// 1 iff `x` is weakly preferred to `y`.
    pub fn prefers(&self, pair: &ChoicePair) -> Result<u8> {
        let w = self.weights(pair.t())?;
        let v: f64 = w.iter().zip(pair.diff()).map(|(w, f)| w * f).sum();
        Ok(sgn(v))
    }

    /// Short family tag used in file headers.
    pub fn family_name(&self) -> &'static str {
        match self {
            DiscountModel::Exponential { .. } => "ed",
            DiscountModel::Hyperbolic { .. } => "hd",
            DiscountModel::QuasiHyperbolic { .. } => "qhd",
            DiscountModel::TableDiscount { .. } => "table",
            DiscountModel::PolyWeights { .. } => "pw",
            DiscountModel::BetaPolyWeights { .. } => "bpw",
        }
    }
}

fn powers(delta: f64, t: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(t);
    let mut p = 1.0;
    for _ in 0..t {
        w.push(p);
        p *= delta;
    }
    w
}

/// `Q_t(delta) = delta^(t-1)`.
pub fn monomial_basis(t: usize) -> Vec<Polynomial> {
    (0..t).map(Polynomial::monomial).collect()
}

/// `Q_t(alpha) = prod_{l != t} (1 + l alpha)`: the hyperbolic weights with
/// denominators cleared.
pub fn hd_cleared_polynomials(t: usize) -> Result<Vec<Polynomial>> {
    if t < 2 {
        return domain("T must be at least 2");
    }
    Ok((1..=t)
        .map(|k| {
            (1..=t)
                .filter(|&l| l != k)
                .fold(Polynomial::constant(1.0), |acc, l| acc.mul(&Polynomial::new(vec![1.0, l as f64])))
        })
        .collect())
}

/// `sum_t Q_t (x_t - y_t)`.
pub fn diff_polynomial(q: &[Polynomial], pair: &ChoicePair) -> Result<Polynomial> {
    if q.len() != pair.t() {
        return Err(Error::Arity { expected: q.len(), got: pair.t() });
    }
    Ok(q
        .iter()
        .zip(pair.diff())
        .fold(Polynomial::zero(), |acc, (qt, f)| if f == 0.0 { acc } else { acc.add_scaled(qt, f) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(x: &[f64], y: &[f64]) -> ChoicePair {
        ChoicePair::from_vecs(x.to_vec(), y.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn weight_examples() {
        let w = DiscountModel::Exponential { delta: 0.5 }.weights(3).unwrap();
        assert!(close(&w, &[1.0, 0.5, 0.25]));
        let w = DiscountModel::Hyperbolic { alpha: 1.0 }.weights(3).unwrap();
        assert!(close(&w, &[0.5, 1.0 / 3.0, 0.25]));
        let w = DiscountModel::QuasiHyperbolic { beta: 0.5, delta: 0.5 }.weights(3).unwrap();
        assert!(close(&w, &[2.0, 0.5, 0.25]));
    }

    #[test]
    fn arity_checked() {
        let m = DiscountModel::TableDiscount { d: vec![0.9, 0.8] };
        assert_eq!(m.weights(3), Err(Error::Arity { expected: 2, got: 3 }));
        assert!(m.prefers(&pair(&[1.0, 0.0, 0.0], &[0.0; 3])).is_err());
    }

    #[test]
    fn prefers_examples() {
        let m = DiscountModel::Exponential { delta: 0.5 };
        assert_eq!(m.prefers(&pair(&[1.0, 0.0], &[0.0, 1.9])).unwrap(), 1);
        assert_eq!(m.prefers(&pair(&[0.0, 1.9], &[1.0, 0.0])).unwrap(), 0);
        assert_eq!(m.prefers(&pair(&[0.3, 0.7], &[0.3, 0.7])).unwrap(), 1);
    }

    #[test]
    fn diff_polynomial_examples() {
        let q = monomial_basis(2);
        assert_eq!(diff_polynomial(&q, &pair(&[-0.5, 1.0], &[0.0, 0.0])).unwrap().coeffs(), &[-0.5, 1.0]);
        assert!(diff_polynomial(&q, &pair(&[2.0, 1.0], &[2.0, 1.0])).unwrap().is_zero());
        let hd = hd_cleared_polynomials(2).unwrap();
        assert_eq!(diff_polynomial(&hd, &pair(&[0.0, 1.0], &[0.0, 0.0])).unwrap().coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn hd_cleared_examples() {
        let q = hd_cleared_polynomials(2).unwrap();
        assert_eq!(q[0].coeffs(), &[1.0, 2.0]);
        assert_eq!(q[1].coeffs(), &[1.0, 1.0]);
        let q = hd_cleared_polynomials(3).unwrap();
        assert_eq!(q[0].coeffs(), &[1.0, 5.0, 6.0]);
        assert!(hd_cleared_polynomials(1).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(DiscountModel::TableDiscount { d: vec![0.9, 0.81, 0.75] }.validate().is_ok());
        assert!(DiscountModel::TableDiscount { d: vec![0.9, 0.9] }.validate().is_err());
        assert!(DiscountModel::TableDiscount { d: vec![1.0, 0.5] }.validate().is_err());
    }

    #[test]
    fn serde_tagged() {
        let m = DiscountModel::QuasiHyperbolic { beta: 0.5, delta: 0.9 };
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"family":"QuasiHyperbolic","beta":0.5,"delta":0.9}"#);
        assert_eq!(serde_json::from_str::<DiscountModel>(&s).unwrap(), m);
    }
}
