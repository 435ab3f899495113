//! Synthetic choice data: the root-uniform distribution, Gaussian pairs,
//! labeling and the line-oriented dataset format.

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::models::{ChoicePair, DiscountModel, LabeledDataset, Plan};
use crate::polynomial::Polynomial;

/// Seed plus stream id; equal values give identical draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed { seed, stream: 0 }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream);
        r
    }

    /// Independent child stream `k`; children of distinct parents or distinct
    /// `k` do not collide in practice.
    pub fn substream(&self, k: u64) -> RngSeed {
        RngSeed { seed: self.seed, stream: splitmix64(splitmix64(self.stream) ^ k) }
    }
}

/// Anything that can draw choice pairs of a fixed horizon from an RNG.
pub trait PairSource: Sync {
    fn t(&self) -> usize;
    fn sample(&self, rng: &mut ChaCha8Rng) -> ChoicePair;
    fn name(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DistributionSpec {
    /// Difference polynomial `s * prod (delta - r_i)` with i.i.d. uniform roots
    /// and a uniform random sign.
    MuRootUniform { t: usize },
    /// Both plans with i.i.d. `N(0, sigma^2)` payoffs.
    GaussianPairs { t: usize, sigma: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DistributionSpec::MuRootUniform { t } if *t < 2 => domain("T must be at least 2"),
            DistributionSpec::GaussianPairs { t, .. } if *t < 2 => domain("T must be at least 2"),
            DistributionSpec::GaussianPairs { sigma, .. } if !(*sigma > 0.0 && sigma.is_finite()) => {
                domain("sigma must be positive")
            }
            _ => Ok(()),
        }
    }
}

impl PairSource for DistributionSpec {
    fn t(&self) -> usize {
        match self {
            DistributionSpec::MuRootUniform { t } | DistributionSpec::GaussianPairs { t, .. } => *t,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> ChoicePair {
        match self {
            DistributionSpec::MuRootUniform { t } => sample_mu_roots(*t, rng).to_pair(),
            DistributionSpec::GaussianPairs { t, sigma } => {
                let n = Normal::new(0.0, *sigma).expect("validated sigma");
                let x: Vec<f64> = (0..*t).map(|_| n.sample(rng)).collect();
                let y: Vec<f64> = (0..*t).map(|_| n.sample(rng)).collect();
                ChoicePair::from_vecs(x, y).expect("T >= 2")
            }
        }
    }

    fn name(&self) -> String {
        match self {
            DistributionSpec::MuRootUniform { .. } => "mu".into(),
            DistributionSpec::GaussianPairs { sigma, .. } => format!("gaussian({sigma})"),
        }
    }
}

/// One draw from the root-uniform distribution before conversion to plans.
#[derive(Debug, Clone, PartialEq)]
pub struct MuDraw {
    pub roots: Vec<f64>,
    pub sign: f64,
}

impl MuDraw {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_roots(&self.roots, self.sign).expect("sign is +-1")
    }

    /// `x` carries the polynomial's coefficients, `y = 0`.
    pub fn to_pair(&self) -> ChoicePair {
        let mut x = self.polynomial().coeffs().to_vec();
        x.resize(self.roots.len() + 1, 0.0);
        let t = x.len();
        ChoicePair::new(Plan::new(x).expect("T >= 2"), Plan::zeros(t).expect("T >= 2")).expect("equal lengths")
    }
}

/// Uniform on the open interval `(0, 1)`.
pub fn open_unit(rng: &mut impl Rng) -> f64 {
    loop {
        let r: f64 = rng.random();
        if r > 0.0 {
            return r;
        }
    }
}

pub fn sample_mu_roots(t: usize, rng: &mut impl Rng) -> MuDraw {
    let roots = (1..t).map(|_| open_unit(rng)).collect();
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    MuDraw { roots, sign }
}

pub fn sample_mu_pair(t: usize, rng: &mut impl Rng) -> Result<ChoicePair> {
    if t < 2 {
        return domain("T must be at least 2");
    }
    Ok(sample_mu_roots(t, rng).to_pair())
}

pub fn label_dataset(m: &DiscountModel, t: usize, pairs: Vec<ChoicePair>) -> Result<LabeledDataset> {
    let labels = pairs.iter().map(|p| m.prefers(p)).collect::<Result<Vec<u8>>>()?;
    LabeledDataset::new(t, pairs, labels)
}

/// `n` pairs from `dist` labeled by `m`.
pub fn sample_dataset(
    dist: &dyn PairSource,
    m: &DiscountModel,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<LabeledDataset> {
    let pairs = (0..n).map(|_| dist.sample(rng)).collect();
    label_dataset(m, dist.t(), pairs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetHeader {
    #[serde(rename = "T")]
    pub t: usize,
    pub seed: u64,
    pub dist: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    x: Vec<f64>,
    y: Vec<f64>,
    label: u8,
}

pub fn write_dataset(ds: &LabeledDataset, header: &DatasetHeader, mut sink: impl Write) -> Result<()> {
    if header.t != ds.t() {
        return Err(Error::Arity { expected: header.t, got: ds.t() });
    }
    let io = |e: serde_json::Error| Error::Io(e.to_string());
    serde_json::to_writer(&mut sink, header).map_err(io)?;
    sink.write_all(b"\n")?;
    for (p, label) in ds.iter() {
        let rec = Record { x: p.x.payoffs().to_vec(), y: p.y.payoffs().to_vec(), label };
        serde_json::to_writer(&mut sink, &rec).map_err(io)?;
        sink.write_all(b"\n")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn read_dataset(source: impl BufRead) -> Result<(DatasetHeader, LabeledDataset)> {
    let mut lines = source.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (n, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let header: DatasetHeader =
        serde_json::from_str(&first?).map_err(|e| Error::Parse { line: n, msg: e.to_string() })?;
    if header.t < 2 {
        return Err(Error::Schema { line: n, msg: "T must be at least 2".into() });
    }
    let (mut pairs, mut labels) = (Vec::new(), Vec::new());
    for (line, text) in lines {
        let rec: Record = serde_json::from_str(&text?).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if rec.label > 1 {
            return Err(Error::Parse { line, msg: format!("label must be 0 or 1, got {}", rec.label) });
        }
        if rec.x.len() != header.t || rec.y.len() != header.t {
            return Err(Error::Schema {
                line,
                msg: format!("expected {} periods, got |x| = {}, |y| = {}", header.t, rec.x.len(), rec.y.len()),
            });
        }
        let pair = ChoicePair::from_vecs(rec.x, rec.y).map_err(|e| Error::Schema { line, msg: e.to_string() })?;
        pairs.push(pair);
        labels.push(rec.label);
    }
    let ds = LabeledDataset::new(header.t, pairs, labels)?;
    Ok((header, ds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{diff_polynomial, monomial_basis};

    #[test]
    fn mu_pair_recovers_polynomial() {
        let d = MuDraw { roots: vec![0.5], sign: 1.0 };
        let p = d.to_pair();
        assert_eq!(p.x.payoffs(), &[-0.5, 1.0]);
        assert_eq!(p.y.payoffs(), &[0.0, 0.0]);
        let mut rng = RngSeed::new(3).rng();
        for _ in 0..200 {
            let pair = sample_mu_pair(5, &mut rng).unwrap();
            let poly = diff_polynomial(&monomial_basis(5), &pair).unwrap();
            assert_eq!(poly.count_roots_in(0.0, 1.0).unwrap(), 4);
        }
    }

    #[test]
    fn labeling_examples() {
        let pair = MuDraw { roots: vec![0.5], sign: 1.0 }.to_pair();
        let hi = label_dataset(&DiscountModel::Exponential { delta: 0.6 }, 2, vec![pair.clone()]).unwrap();
        let lo = label_dataset(&DiscountModel::Exponential { delta: 0.4 }, 2, vec![pair]).unwrap();
        assert_eq!(hi.labels(), &[1]);
        assert_eq!(lo.labels(), &[0]);
        assert!(label_dataset(&DiscountModel::Exponential { delta: 0.4 }, 2, vec![]).unwrap().is_empty());
    }

    #[test]
    fn substreams_differ_and_repeat() {
        let s = RngSeed::new(9);
        let a: u64 = s.substream(1).rng().random();
        let b: u64 = s.substream(2).rng().random();
        let a2: u64 = s.substream(1).rng().random();
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let mut rng = RngSeed::new(11).rng();
        let dist = DistributionSpec::GaussianPairs { t: 4, sigma: 1.0 };
        let ds = sample_dataset(&dist, &DiscountModel::Hyperbolic { alpha: 0.7 }, 100, &mut rng).unwrap();
        let header = DatasetHeader { t: 4, seed: 11, dist: dist.name(), config: None };
        let mut buf = Vec::new();
        write_dataset(&ds, &header, &mut buf).unwrap();
        let (h2, ds2) = read_dataset(&buf[..]).unwrap();
        assert_eq!(h2, header);
        assert_eq!(ds2, ds);
        let mut buf2 = Vec::new();
        write_dataset(&ds2, &h2, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
        assert!(String::from_utf8(buf).unwrap().starts_with(r#"{"T":4,"seed":11,"dist":"gaussian(1)"}"#));
    }

    #[test]
    fn malformed_records() {
        let bad_label = "{\"T\":2,\"seed\":0,\"dist\":\"mu\"}\n{\"x\":[1,0],\"y\":[0,0],\"label\":2}\n";
        assert!(matches!(read_dataset(bad_label.as_bytes()), Err(Error::Parse { line: 2, .. })));
        let bad_len = "{\"T\":2,\"seed\":0,\"dist\":\"mu\"}\n{\"x\":[1,0],\"y\":[0,0],\"label\":1}\n{\"x\":[1,0,3],\"y\":[0,0,0],\"label\":1}\n";
        assert!(matches!(read_dataset(bad_len.as_bytes()), Err(Error::Schema { line: 3, .. })));
        let garbage = "{\"T\":2,\"seed\":0,\"dist\":\"mu\"}\nnot json\n";
        assert!(matches!(read_dataset(garbage.as_bytes()), Err(Error::Parse { line: 2, .. })));
    }
}
