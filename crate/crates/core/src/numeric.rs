//! Floating-point checks on the robot-arm distance map.
//!
//! An arm shape is gauge-fixed with `u_1 = 1`, leaving the angles
//! `θ_2, ..., θ_n` as coordinates on the torus `W ≅ T^{n-1}`. On it
//! `f(θ) = −|Σ l_i e^{iθ_i}|²` is evaluated together with its analytic
//! gradient and Hessian, which lets the Morse indices of the collinear
//! critical points be read off numerically. A Monte-Carlo oracle estimates
//! the number of connected components of the closed-polygon set by gradient
//! ascent onto `f = 0`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{LengthVector, SubsetClass, SubsetMask};

/// Eigenvalues within `±HESSIAN_TOL · (Σ l_i)²` count as degenerate.
pub const HESSIAN_TOL: f64 = 1e-7;

/// Largest `n` accepted by the Monte-Carlo component oracle.
pub const SAMPLING_MAX_LINKS: usize = 7;

/// Fewest closed configurations the component oracle will draw conclusions from.
pub const MIN_SURVIVORS: usize = 50;

const ASCENT_MAX_ITERS: usize = 10_000;
const ASCENT_STEP: f64 = 0.1;
const STALL_TOL: f64 = 1e-10;
const CHUNK: usize = 32;

/// Wraps an angle into `(−π, π]`, leaving in-range values untouched.
fn wrap(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Gauge-fixed arm shape: `θ_1 = 0` and the free angles `θ_2, ..., θ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmConfiguration {
    free: Vec<f64>,
}

impl ArmConfiguration {
    /// Builds a configuration from `θ_2, ..., θ_n`.
    pub fn new(free: Vec<f64>) -> Self {
        Self {
            free: free.into_iter().map(wrap).collect(),
        }
    }

    /// Builds a configuration from all `n` angles, rotating so that `θ_1 = 0`.
    pub fn from_full(angles: &[f64]) -> Self {
        let base = angles[0];
        Self::new(angles[1..].iter().map(|t| t - base).collect())
    }

    pub fn n(&self) -> usize {
        self.free.len() + 1
    }

    /// Free coordinates `θ_2, ..., θ_n`.
    pub fn free_angles(&self) -> &[f64] {
        &self.free
    }

    /// Angle of link `i` (1-based); `θ_1` is always 0.
    pub fn theta(&self, i: usize) -> f64 {
        if i == 1 {
            0.0
        } else {
            self.free[i - 2]
        }
    }

    pub fn full_angles(&self) -> Vec<f64> {
        std::iter::once(0.0)
            .chain(self.free.iter().copied())
            .collect()
    }

    /// Flat-torus distance between two configurations.
    pub fn torus_distance(&self, other: &Self) -> f64 {
        self.free
            .iter()
            .zip(&other.free)
            .map(|(a, b)| {
                let d = (a - b).abs() % (2.0 * PI);
                let d = d.min(2.0 * PI - d);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// True iff every link is parallel or anti-parallel to the first.
    pub fn is_collinear(&self) -> bool {
        self.free.iter().all(|&t| t == 0.0 || t == PI)
    }
}

/// End point `(X, Y) = Σ l_i (cos θ_i, sin θ_i)` of the arm.
fn end_point(lengths: &LengthVector, config: &ArmConfiguration) -> (f64, f64) {
    (1..=lengths.n()).fold((0.0, 0.0), |(x, y), i| {
        let l = lengths.length(i) as f64;
        let t = config.theta(i);
        (x + l * t.cos(), y + l * t.sin())
    })
}

/// `f(θ) = −|Σ l_i u_i|²`.
pub fn f_arm(lengths: &LengthVector, config: &ArmConfiguration) -> f64 {
    let (x, y) = end_point(lengths, config);
    -(x * x + y * y)
}

/// Analytic gradient with respect to `θ_2, ..., θ_n`:
/// `∂f/∂θ_k = 2 l_k (X sin θ_k − Y cos θ_k)`.
pub fn grad_f(lengths: &LengthVector, config: &ArmConfiguration) -> Vec<f64> {
    let (x, y) = end_point(lengths, config);
    (2..=lengths.n())
        .map(|k| {
            let l = lengths.length(k) as f64;
            let t = config.theta(k);
            2.0 * l * (x * t.sin() - y * t.cos())
        })
        .collect()
}

/// Analytic Hessian in the free angles:
/// `∂²f/∂θ_j∂θ_k = −2 l_j l_k cos(θ_j − θ_k)` off the diagonal and
/// `2 l_k (X cos θ_k + Y sin θ_k − l_k)` on it.
pub fn hessian(lengths: &LengthVector, config: &ArmConfiguration) -> DMatrix<f64> {
    let (x, y) = end_point(lengths, config);
    let dim = lengths.n() - 1;
    DMatrix::from_fn(dim, dim, |r, c| {
        let (j, k) = (r + 2, c + 2);
        let (lj, lk) = (lengths.length(j) as f64, lengths.length(k) as f64);
        let (tj, tk) = (config.theta(j), config.theta(k));
        if j == k {
            2.0 * lk * (x * tk.cos() + y * tk.sin() - lk)
        } else {
            -2.0 * lj * lk * (tj - tk).cos()
        }
    })
}

/// Hessian by central differences of the analytic gradient.
pub fn hessian_finite_difference(
    lengths: &LengthVector,
    config: &ArmConfiguration,
    step: f64,
) -> DMatrix<f64> {
    let dim = lengths.n() - 1;
    let mut h = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        let shifted = |delta: f64| {
            let mut free = config.free.clone();
            free[c] += delta;
            grad_f(lengths, &ArmConfiguration { free })
        };
        let (plus, minus) = (shifted(step), shifted(-step));
        for r in 0..dim {
            h[(r, c)] = (plus[r] - minus[r]) / (2.0 * step);
        }
    }
    (&h + h.transpose()) * 0.5
}

/// The collinear configuration `p_J`: links in `J` point along `u_1`, the
/// rest point the opposite way. When `1 ∉ J` the representative of `p_{CJ}`
/// (the same point of `W`) is returned.
pub fn collinear_config(subset: SubsetMask) -> ArmConfiguration {
    let forward = if subset.contains(1) {
        subset
    } else {
        subset.complement()
    };
    ArmConfiguration {
        free: (2..=subset.n())
            .map(|i| if forward.contains(i) { 0.0 } else { PI })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HessianMethod {
    Analytic,
    FiniteDifference,
}

/// Number of negative Hessian eigenvalues at `p_J` for a long subset `J`.
pub fn morse_index_numeric(lengths: &LengthVector, subset: SubsetMask) -> Result<usize> {
    morse_index_numeric_with(lengths, subset, HessianMethod::Analytic)
}

pub fn morse_index_numeric_with(
    lengths: &LengthVector,
    subset: SubsetMask,
    method: HessianMethod,
) -> Result<usize> {
    if subset.n() != lengths.n() {
        return Err(Error::Precondition("subset built for a different n".into()));
    }
    let class = lengths.classify_subset(subset);
    if class != SubsetClass::Long {
        return Err(Error::Precondition(format!(
            "subset {subset} is {class:?}, Morse indices are defined for long subsets"
        )));
    }
    let config = collinear_config(subset);
    let h = match method {
        HessianMethod::Analytic => hessian(lengths, &config),
        HessianMethod::FiniteDifference => hessian_finite_difference(lengths, &config, 1e-4),
    };
    let scale = (lengths.total() as f64).powi(2);
    let threshold = HESSIAN_TOL * scale;
    let eigen = SymmetricEigen::new(h);
    let mut negative = 0;
    for &ev in eigen.eigenvalues.iter() {
        if ev.abs() <= threshold {
            return Err(Error::DegenerateHessian {
                eigenvalue: ev,
                threshold,
            });
        }
        if ev < 0.0 {
            negative += 1;
        }
    }
    Ok(negative)
}

/// Complex conjugation `θ_i ↦ −θ_i`; `u_1 = 1` is fixed, so the gauge is kept.
pub fn apply_involution(config: &ArmConfiguration) -> ArmConfiguration {
    ArmConfiguration {
        free: config.free.iter().map(|&t| wrap(-t)).collect(),
    }
}

/// How a single gradient-ascent run ended.
#[derive(Debug, Clone, PartialEq)]
enum Ascent {
    Closed(ArmConfiguration),
    /// Gradient vanished below the closure level: a critical point of `f`.
    Stalled,
    Exhausted,
}

fn ascend(lengths: &LengthVector, mut config: ArmConfiguration, closure_tol: f64) -> Ascent {
    let scale = (lengths.total() as f64).powi(2);
    let step = ASCENT_STEP / scale;
    let target = -closure_tol * closure_tol;
    for _ in 0..ASCENT_MAX_ITERS {
        if f_arm(lengths, &config) >= target {
            return Ascent::Closed(config);
        }
        let grad = grad_f(lengths, &config);
        if grad.iter().all(|g| g.abs() <= STALL_TOL * scale) {
            return Ascent::Stalled;
        }
        for (t, g) in config.free.iter_mut().zip(&grad) {
            *t = wrap(*t + step * g);
        }
    }
    if f_arm(lengths, &config) >= target {
        Ascent::Closed(config)
    } else {
        Ascent::Exhausted
    }
}

/// Outcome of the Monte-Carlo sampling of closed configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub samples: usize,
    /// Closed configurations reached, in deterministic order.
    pub closed: Vec<ArmConfiguration>,
    pub stalled: usize,
    pub exhausted: usize,
}

/// Draws uniform configurations and ascends `f` from each until it closes
/// up to `closure_tol`. Sample `s` uses the random stream of its block of
/// 32, so results depend on the seed only.
pub fn sample_closed_configurations(
    lengths: &LengthVector,
    samples: usize,
    closure_tol: f64,
    seed: u64,
) -> Result<SampleReport> {
    if lengths.n() > SAMPLING_MAX_LINKS {
        return Err(Error::Budget {
            what: "sample_components",
            detail: format!("n = {} exceeds {SAMPLING_MAX_LINKS}", lengths.n()),
        });
    }
    let dim = lengths.n() - 1;
    let chunks = samples.div_ceil(CHUNK);
    let outcomes: Vec<Vec<Ascent>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = CHUNK.min(samples - chunk * CHUNK);
            (0..count)
                .map(|_| {
                    let free = (0..dim).map(|_| rng.gen_range(-PI..PI)).collect();
                    ascend(lengths, ArmConfiguration::new(free), closure_tol)
                })
                .collect()
        })
        .collect();

    let mut report = SampleReport {
        samples,
        closed: Vec::new(),
        stalled: 0,
        exhausted: 0,
    };
    for outcome in outcomes.into_iter().flatten() {
        match outcome {
            Ascent::Closed(c) => report.closed.push(c),
            Ascent::Stalled => report.stalled += 1,
            Ascent::Exhausted => report.exhausted += 1,
        }
    }
    Ok(report)
}

/// Connected components of the graph linking closed configurations that
/// lie within `link_radius` of each other on the flat torus.
pub fn count_clusters(points: &[ArmConfiguration], link_radius: f64) -> usize {
    let mut uf = UnionFind::<usize>::new(points.len());
    let edges: Vec<(usize, usize)> = (0..points.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            (a + 1..points.len())
                .filter(move |&b| points[a].torus_distance(&points[b]) <= link_radius)
                .map(move |b| (a, b))
        })
        .collect();
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut roots: Vec<usize> = (0..points.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Monte-Carlo estimate of the number of connected components of `M_ℓ`.
///
/// Returns 0 when no run closes up and at least [`MIN_SURVIVORS`] runs
/// stall at a critical point strictly below the closure level (every
/// ascent is trapped at a maximum of `f` below 0, so `M_ℓ` is empty).
pub fn sample_components(
    lengths: &LengthVector,
    samples: usize,
    closure_tol: f64,
    link_radius: f64,
    seed: u64,
) -> Result<usize> {
    let report = sample_closed_configurations(lengths, samples, closure_tol, seed)?;
    let survivors = report.closed.len();
    if survivors >= MIN_SURVIVORS {
        Ok(count_clusters(&report.closed, link_radius))
    } else if survivors == 0 && report.stalled >= MIN_SURVIVORS {
        Ok(0)
    } else {
        Err(Error::Inconclusive { survivors, samples })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[u64]) -> LengthVector {
        LengthVector::new(v.to_vec()).unwrap()
    }

    fn mask(n: usize, idx: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, idx).unwrap()
    }

    #[test]
    fn f_arm_examples() {
        let zero4 = ArmConfiguration::new(vec![0.0; 3]);
        assert_eq!(f_arm(&lv(&[1, 1, 1, 1]), &zero4), -16.0);
        let pentagon = lv(&[3, 2, 2, 1, 1]);
        assert_eq!(
            f_arm(&pentagon, &ArmConfiguration::new(vec![0.0; 4])),
            -81.0
        );
        let p12 = collinear_config(mask(5, &[1, 2]));
        assert!((f_arm(&pentagon, &p12) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_representatives() {
        assert_eq!(
            collinear_config(SubsetMask::full(5)).full_angles(),
            vec![0.0; 5]
        );
        let expected = vec![0.0, 0.0, PI, PI, PI];
        assert_eq!(collinear_config(mask(5, &[1, 2])).full_angles(), expected);
        assert_eq!(
            collinear_config(mask(5, &[3, 4, 5])).full_angles(),
            expected
        );
        assert!(collinear_config(mask(5, &[2, 4])).is_collinear());
    }

    #[test]
    fn gradient_vanishes_at_long_collinear_points() {
        let l = lv(&[3, 2, 2, 1, 1]);
        let scale = (l.total() as f64).powi(2);
        for m in l.all_masks().unwrap() {
            if l.classify_subset(m) == SubsetClass::Long {
                let g = grad_f(&l, &collinear_config(m));
                assert!(g.iter().all(|x| x.abs() <= 1e-9 * scale), "{m}");
            }
        }
    }

    #[test]
    fn gradient_vanishes_on_closed_polygon() {
        // Unit square: angles 0, π/2, π, 3π/2.
        let l = lv(&[1, 1, 1, 1]);
        let c = ArmConfiguration::new(vec![PI / 2.0, PI, -PI / 2.0]);
        assert!(f_arm(&l, &c).abs() < 1e-24);
        assert!(grad_f(&l, &c).iter().all(|g| g.abs() < 1e-12));
    }

    #[test]
    fn morse_index_examples() {
        let l = lv(&[3, 2, 2, 1, 1]);
        assert_eq!(morse_index_numeric(&l, SubsetMask::full(5)).unwrap(), 0);
        assert_eq!(morse_index_numeric(&l, mask(5, &[1, 2])).unwrap(), 3);
        assert_eq!(
            morse_index_numeric(&lv(&[1, 1, 1, 9]), mask(4, &[4])).unwrap(),
            3
        );
        assert_eq!(
            morse_index_numeric_with(&l, mask(5, &[1, 2]), HessianMethod::FiniteDifference)
                .unwrap(),
            3
        );
        assert!(matches!(
            morse_index_numeric(&l, mask(5, &[1])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            morse_index_numeric(&lv(&[1, 1, 2]), mask(3, &[3])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn involution_examples() {
        let zero = ArmConfiguration::new(vec![0.0; 2]);
        assert_eq!(apply_involution(&zero), zero);
        let c = ArmConfiguration::new(vec![1.0, -2.0]);
        assert_eq!(apply_involution(&c).free_angles(), &[-1.0, 2.0]);
        let fixed = collinear_config(mask(4, &[1, 3]));
        assert_eq!(apply_involution(&fixed), fixed);
        assert_ne!(apply_involution(&c), c);
    }

    #[test]
    fn wrap_is_exact_in_range() {
        for t in [-3.0, -1.0, 0.5, PI, 2.0] {
            assert_eq!(wrap(t), t);
        }
        assert_eq!(wrap(-PI), PI);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn torus_distance_wraps() {
        let a = ArmConfiguration::new(vec![3.0, 0.0]);
        let b = ArmConfiguration::new(vec![-3.0, 0.0]);
        assert!((a.torus_distance(&b) - (2.0 * PI - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let l = lv(&[3, 2, 2, 1, 1]);
        let a = sample_closed_configurations(&l, 100, 1e-3, 7).unwrap();
        let b = sample_closed_configurations(&l, 100, 1e-3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.closed.len() + a.stalled + a.exhausted, 100);
    }

    #[test]
    fn sampling_budget() {
        let l = LengthVector::equilateral(8).unwrap();
        assert!(matches!(
            sample_components(&l, 10, 1e-3, 0.5, 1),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn too_few_samples_is_inconclusive() {
        let l = lv(&[3, 2, 2, 1, 1]);
        assert!(matches!(
            sample_components(&l, 20, 1e-3, 0.5, 1),
            Err(Error::Inconclusive { .. })
        ));
    }
}
