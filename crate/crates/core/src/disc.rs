//! Sequences in the open unit disc and their Carleson analysis.
//!
//! Points are stored together with their boundary gap `1 − |λ|`. For points
//! produced by generators such as `1 − α⁻ᵏ` the gap is known exactly even
//! when `λ` itself rounds to `1.0`, and every quantity that degenerates at
//! the boundary (`1 − |λ|²`, pseudo-hyperbolic distances, ratio tests) is
//! evaluated from the gap.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default minimum pseudo-hyperbolic distance between two points.
pub const DEFAULT_SEPARATION: f64 = 1e-14;

/// How a sequence was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `λ_k = 1 − α⁻ᵏ`, `k = 1..`.
    Geometric {
        alpha: f64,
    },
    /// `λ_k = 1 − (k+1)^(−p)`, `k = 1..`.
    InversePower {
        exponent: f64,
    },
    Explicit,
    /// Result of a [`Transform`] applied to another sequence.
    Transformed,
}

/// A point of the disc with its gap to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DiscPoint {
    value: Complex64,
    /// Unit direction; `1` for the origin.
    dir: Complex64,
    /// `1 − |value|`, in `(0, 1]`.
    gap: f64,
}

impl DiscPoint {
    fn from_value(value: Complex64) -> Result<Self> {
        let r = value.norm();
        if !r.is_finite() || r >= 1.0 {
            return Err(Error::Domain(format!(
                "{value} is not in the open unit disc (|λ| = {r})"
            )));
        }
        let dir = if r == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            value / r
        };
        Ok(Self {
            value,
            dir,
            gap: 1.0 - r,
        })
    }

    /// Point `(1 − gap)·dir` with an exactly known gap.
    fn from_gap(dir: Complex64, gap: f64) -> Result<Self> {
        if !(gap > 0.0 && gap <= 1.0) {
            return Err(Error::Domain(format!(
                "boundary gap {gap} must lie in (0, 1]"
            )));
        }
        Ok(Self {
            value: dir * (1.0 - gap),
            dir,
            gap,
        })
    }

    /// `1 − |λ|²`, computed without cancellation.
    fn co_norm_sqr(&self) -> f64 {
        self.gap * (2.0 - self.gap)
    }
}

/// `a − b` and `1 − ā·b` evaluated through directions and gaps.
fn difference_and_denominator(a: &DiscPoint, b: &DiscPoint) -> (Complex64, Complex64) {
    let du = a.dir - b.dir;
    let diff = du - a.dir * a.gap + b.dir * b.gap;
    let w = a.dir.conj() * b.dir;
    let cross = a.dir.re * b.dir.im - a.dir.im * b.dir.re;
    // ā·b = (1 − s)·w with s = g_a + g_b − g_a·g_b.
    let s = a.gap + b.gap - a.gap * b.gap;
    let denom = Complex64::new(0.5 * du.norm_sqr() + s * w.re, -(1.0 - s) * cross);
    (diff, denom)
}

fn point_distance(a: &DiscPoint, b: &DiscPoint) -> f64 {
    let (diff, denom) = difference_and_denominator(a, b);
    if diff.norm() == 0.0 {
        return 0.0;
    }
    diff.norm() / denom.norm()
}

/// `ln d(a, b)`; uses `1 − d² = (1−|a|²)(1−|b|²)/|1−āb|²` when `d` is near 1.
fn point_log_distance(a: &DiscPoint, b: &DiscPoint) -> f64 {
    let (diff, denom) = difference_and_denominator(a, b);
    let denom_sq = denom.norm_sqr();
    let complement = a.co_norm_sqr() * b.co_norm_sqr() / denom_sq;
    if complement < 0.5 {
        0.5 * (-complement).ln_1p()
    } else {
        (diff.norm() / denom_sq.sqrt()).ln()
    }
}

/// Pseudo-hyperbolic distance `|a − b| / |1 − ā·b|` of two points in the disc.
pub fn pseudo_hyperbolic_distance(a: Complex64, b: Complex64) -> Result<f64> {
    let a = DiscPoint::from_value(a)?;
    let b = DiscPoint::from_value(b)?;
    Ok(point_distance(&a, &b))
}

/// Finite truncation `{λ_1, …, λ_K}` of a sequence in the open unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscSequence {
    points: Vec<DiscPoint>,
    generator: Option<Generator>,
}

impl DiscSequence {
    /// Builds a sequence from explicit values with the default separation.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        Self::with_separation(values, DEFAULT_SEPARATION)
    }

    /// Builds a sequence whose points are pairwise at pseudo-hyperbolic
    /// distance at least `separation`.
    pub fn with_separation(values: Vec<Complex64>, separation: f64) -> Result<Self> {
        let points = values
            .into_iter()
            .map(DiscPoint::from_value)
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(points, Some(Generator::Explicit), separation)
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Points `1 − g_k` on the positive axis, given their gaps `g_k`.
    pub fn from_gaps(gaps: &[f64], generator: Option<Generator>) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let points = gaps
            .iter()
            .map(|&g| DiscPoint::from_gap(one, g))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(points, generator, DEFAULT_SEPARATION)
    }

    fn from_points(
        points: Vec<DiscPoint>,
        generator: Option<Generator>,
        separation: f64,
    ) -> Result<Self> {
        if separation.is_nan() || separation < 0.0 {
            return Err(Error::Domain(format!(
                "separation tolerance {separation} must be non-negative"
            )));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d = point_distance(&points[i], &points[j]);
                if d < separation || d == 0.0 {
                    return Err(Error::NotSeparated {
                        first: i,
                        second: j,
                        distance: d,
                        tolerance: separation,
                    });
                }
            }
        }
        Ok(Self { points, generator })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn value(&self, k: usize) -> Complex64 {
        self.points[k].value
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value).collect()
    }

    /// Boundary gaps `1 − |λ_k|`.
    pub fn gaps(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.gap).collect()
    }

    /// `1 − |λ_k|²` for every point.
    pub fn co_norms_sqr(&self) -> Vec<f64> {
        self.points.iter().map(DiscPoint::co_norm_sqr).collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.value.norm())
            .fold(0.0, f64::max)
    }

    /// True when every value is real, positive and strictly increasing.
    pub fn is_positive_increasing(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.value.im == 0.0 && p.value.re > 0.0)
            && self.points.windows(2).all(|w| w[1].gap < w[0].gap)
    }

    /// Distance between points `i` and `j` of the sequence.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        point_distance(&self.points[i], &self.points[j])
    }

    /// `1 − conj(λ_i)·λ_j`, accurate for points close to the circle.
    pub fn one_minus_conj_product(&self, i: usize, j: usize) -> Complex64 {
        difference_and_denominator(&self.points[i], &self.points[j]).1
    }

    /// First `k` points (all of them if `k` exceeds the length).
    pub fn prefix(&self, k: usize) -> Self {
        Self {
            points: self.points[..k.min(self.len())].to_vec(),
            generator: self.generator.clone(),
        }
    }
}

/// `λ_k = 1 − α⁻ᵏ` for `k = 1..=count`.
pub fn generate_geometric(alpha: f64, count: usize) -> Result<DiscSequence> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::Domain(format!(
            "geometric base α = {alpha} must exceed 1"
        )));
    }
    let gaps: Vec<f64> = (1..=count).map(|k| alpha.powi(-(k as i32))).collect();
    DiscSequence::from_gaps(&gaps, Some(Generator::Geometric { alpha }))
}

/// `λ_k = 1 − (k+1)^(−p)` for `k = 1..=count`. Carleson iff the ratio
/// test holds, which fails for every `p` since the ratios tend to 1.
pub fn generate_inverse_power(exponent: f64, count: usize) -> Result<DiscSequence> {
    if !exponent.is_finite() || exponent <= 0.0 {
        return Err(Error::Domain(format!(
            "exponent {exponent} must be positive"
        )));
    }
    let gaps: Vec<f64> = (1..=count)
        .map(|k| ((k + 1) as f64).powf(-exponent))
        .collect();
    DiscSequence::from_gaps(&gaps, Some(Generator::InversePower { exponent }))
}

/// Recipe for growing prefixes of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    Geometric { alpha: f64 },
    InversePower { exponent: f64 },
    Explicit(Vec<Complex64>),
}

impl SequenceSpec {
    /// The first `count` points.
    pub fn generate(&self, count: usize) -> Result<DiscSequence> {
        match self {
            SequenceSpec::Geometric { alpha } => generate_geometric(*alpha, count),
            SequenceSpec::InversePower { exponent } => generate_inverse_power(*exponent, count),
            SequenceSpec::Explicit(values) => {
                if count > values.len() {
                    return Err(Error::Index(format!(
                        "requested {count} points from an explicit list of {}",
                        values.len()
                    )));
                }
                DiscSequence::new(values[..count].to_vec())
            }
        }
    }
}

/// `Σ_k (1 − |λ_k|²)` over the truncation.
pub fn tail_sum(seq: &DiscSequence) -> f64 {
    seq.points.iter().map(DiscPoint::co_norm_sqr).sum()
}

/// Consecutive ratios `(1 − |λ_{k+1}|) / (1 − |λ_k|)`.
pub fn gap_ratios(seq: &DiscSequence) -> Vec<f64> {
    seq.points.windows(2).map(|w| w[1].gap / w[0].gap).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarlesonVerdict {
    /// The ratio test certifies the Carleson condition.
    CarlesonByRatio,
    /// Positive products on the truncation, no certificate either way.
    LikelyCarleson,
    /// A necessary condition is violated on the truncation.
    FailsNecessaryCondition,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CarlesonOptions {
    /// Constant `c < 1` for the ratio test.
    pub ratio_bound: Option<f64>,
    /// Set by callers that observed `tail_sum` growing without bound over
    /// longer and longer prefixes.
    pub tail_diverges: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarlesonReport {
    /// `δ_n = Π_{k≠n} d(λ_k, λ_n)`.
    pub per_index_products: Vec<f64>,
    /// `ln δ_n`; finite even where `δ_n` underflows.
    pub log_products: Vec<f64>,
    pub infimum: f64,
    /// Sup of the consecutive gap ratios; 0 for a single point.
    pub ratio_sup: f64,
    pub tail_sum: f64,
    pub verdict: CarlesonVerdict,
}

/// Truncated Carleson products with default options (no ratio bound).
pub fn carleson_products(seq: &DiscSequence) -> Result<CarlesonReport> {
    carleson_report(seq, &CarlesonOptions::default())
}

pub fn carleson_report(seq: &DiscSequence, opts: &CarlesonOptions) -> Result<CarlesonReport> {
    if seq.is_empty() {
        return Err(Error::Domain(
            "Carleson products of an empty sequence".into(),
        ));
    }
    if let Some(c) = opts.ratio_bound {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!("ratio bound {c} must lie in (0, 1)")));
        }
    }
    let k = seq.len();
    let mut log_products = vec![0.0; k];
    for i in 0..k {
        for j in i + 1..k {
            let l = point_log_distance(&seq.points[i], &seq.points[j]);
            log_products[i] += l;
            log_products[j] += l;
        }
    }
    let per_index_products: Vec<f64> = log_products.iter().map(|l| l.exp()).collect();
    let infimum = per_index_products
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let ratio_sup = gap_ratios(seq).into_iter().fold(0.0, f64::max);
    let tail = tail_sum(seq);

    let certified = opts.ratio_bound.is_some_and(|c| ratio_sup <= c);
    let ratio_unbounded = match opts.ratio_bound {
        Some(c) => ratio_sup > c,
        None => ratio_sup >= 1.0,
    };
    let verdict = if certified {
        CarlesonVerdict::CarlesonByRatio
    } else if opts.tail_diverges || (seq.is_positive_increasing() && ratio_unbounded) {
        CarlesonVerdict::FailsNecessaryCondition
    } else {
        CarlesonVerdict::LikelyCarleson
    };

    Ok(CarlesonReport {
        per_index_products,
        log_products,
        infimum,
        ratio_sup,
        tail_sum: tail,
        verdict,
    })
}

/// Modifications that preserve the Carleson condition.
#[derive(Debug, Clone, PartialEq)]
pub enum Transform {
    /// Keep the given (strictly increasing, zero-based) indices.
    Subsequence(Vec<usize>),
    /// Drop the first `n` points.
    DropPrefix(usize),
    /// `λ_k ↦ λ_k^{1/ℓ}` for real `λ_k ∈ [0, 1)`.
    RootMap(u32),
}

pub fn transform_sequence(seq: &DiscSequence, op: &Transform) -> Result<DiscSequence> {
    let points = match op {
        Transform::Subsequence(indices) => {
            if indices.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Index(
                    "subsequence indices must be strictly increasing".into(),
                ));
            }
            if let Some(&bad) = indices.iter().find(|&&i| i >= seq.len()) {
                return Err(Error::Index(format!(
                    "index {bad} out of range for length {}",
                    seq.len()
                )));
            }
            indices.iter().map(|&i| seq.points[i]).collect()
        }
        Transform::DropPrefix(n) => {
            if *n >= seq.len() {
                return Err(Error::Index(format!(
                    "cannot drop {n} points from a sequence of length {}",
                    seq.len()
                )));
            }
            seq.points[*n..].to_vec()
        }
        Transform::RootMap(ell) => {
            if *ell == 0 {
                return Err(Error::Domain("root order must be at least 1".into()));
            }
            seq.points
                .iter()
                .map(|p| root_point(p, *ell))
                .collect::<Result<Vec<_>>>()?
        }
    };
    DiscSequence::from_points(points, Some(Generator::Transformed), DEFAULT_SEPARATION)
}

fn root_point(p: &DiscPoint, ell: u32) -> Result<DiscPoint> {
    let x = p.value;
    if x.im != 0.0 || x.re < 0.0 {
        return Err(Error::Domain(format!(
            "root map needs real values in [0, 1), got {x}"
        )));
    }
    if ell == 1 {
        return Ok(*p);
    }
    let one = Complex64::new(1.0, 0.0);
    if x.re == 0.0 {
        return DiscPoint::from_gap(one, 1.0);
    }
    let inv = 1.0 / ell as f64;
    let value = if ell == 2 {
        x.re.sqrt()
    } else {
        x.re.powf(inv)
    };
    // 1 − x^{1/ℓ} = −expm1(ln(1 − g)/ℓ), accurate for x near 1.
    let gap = if value < 0.5 {
        1.0 - value
    } else {
        -((-p.gap).ln_1p() * inv).exp_m1()
    };
    Ok(DiscPoint {
        value: Complex64::new(value, 0.0),
        dir: one,
        gap,
    })
}

/// Ratio of power sums relating the distance of `ℓ`-th roots to the
/// distance of the original points:
/// `d(x^{1/ℓ}, y^{1/ℓ}) = d(x, y) · root_lemma_factor(x, y, ℓ)`.
pub fn root_lemma_factor(x: f64, y: f64, ell: u32) -> Result<f64> {
    for v in [x, y] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain(format!("{v} is not in (0, 1)")));
        }
    }
    if ell == 0 {
        return Err(Error::Domain("root order must be at least 1".into()));
    }
    let inv = 1.0 / ell as f64;
    let a = x.powf(inv);
    let b = y.powf(inv);
    let ab = a * b;
    let numerator: f64 = (0..ell).map(|i| ab.powi(i as i32)).sum();
    let denominator: f64 = (0..ell)
        .map(|j| a.powi((ell - j - 1) as i32) * b.powi(j as i32))
        .sum();
    Ok(numerator / denominator)
}
