//! Globally adaptive Gauss–Kronrod quadrature (G10/K21 pair) with interval
//! bisection, plus a fixed composite Gauss–Legendre rule used to cross-check
//! converged results on the final adaptive mesh.
//!
//! The integrand may be vector valued (`[f64; N]`) so that several moments
//! share one mesh; convergence requires every component to meet its
//! tolerance, measured against the integral of the component's absolute
//! value.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1]; odd indices are the Gauss-10 nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_977_280_508,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadSettings {
    pub rel_tol: f64,
    /// Absolute floor on the per-component error budget.
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// The range is first split into this many equal pieces.
    pub initial_intervals: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_intervals: 50_000,
            initial_intervals: 1,
        }
    }
}

impl QuadSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_initial_intervals(mut self, n: usize) -> Self {
        self.initial_intervals = n.max(1);
        self
    }
}

#[derive(Debug, Clone)]
pub struct QuadOutcome<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    /// Integral of |f_i|, the scale the relative tolerance refers to.
    pub abs_value: [f64; N],
    /// Final intervals, sorted by left endpoint.
    pub mesh: Vec<(f64, f64)>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    abs_value: [f64; N],
    priority: f64,
}

impl<const N: usize> PartialEq for Piece<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Piece<N> {}
impl<const N: usize> PartialOrd for Piece<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Piece<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by position so the refinement order is deterministic
        self.priority
            .total_cmp(&other.priority)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One G10/K21 application: (Kronrod value, |K − G|, Kronrod integral of |f|).
fn gk21<const N: usize, F>(f: &mut F, a: f64, b: f64) -> ([f64; N], [f64; N], [f64; N])
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kron = [0.0; N];
    let mut gauss = [0.0; N];
    let mut kabs = [0.0; N];

    let fc = f(center);
    for i in 0..N {
        kron[i] = WGK[10] * fc[i];
        kabs[i] = WGK[10] * fc[i].abs();
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for i in 0..N {
            let s = f1[i] + f2[i];
            kron[i] += WGK[j] * s;
            kabs[i] += WGK[j] * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                gauss[i] += WG[j / 2] * s;
            }
        }
    }
    let mut err = [0.0; N];
    for i in 0..N {
        kron[i] *= half;
        gauss[i] *= half;
        kabs[i] *= half.abs();
        err[i] = (kron[i] - gauss[i]).abs();
    }
    (kron, err, kabs)
}

fn tolerances<const N: usize>(abs_total: &[f64; N], s: &QuadSettings) -> [f64; N] {
    let mut tol = [0.0; N];
    for i in 0..N {
        tol[i] = s.abs_tol.max(s.rel_tol * abs_total[i]);
    }
    tol
}

fn priority<const N: usize>(err: &[f64; N], tol: &[f64; N]) -> f64 {
    err.iter()
        .zip(tol)
        .map(|(e, t)| e / t.max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Adaptive integration of a vector-valued integrand over `[a, b]`.
pub fn integrate_vec<const N: usize, F>(
    f: F,
    a: f64,
    b: f64,
    settings: &QuadSettings,
) -> Result<QuadOutcome<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    let m = settings.initial_intervals.max(1);
    let mut breaks: Vec<f64> = (0..m).map(|k| a + (b - a) * k as f64 / m as f64).collect();
    breaks.push(b);
    integrate_vec_breaks(f, &breaks, settings)
}

/// Geometrically graded breakpoints on `[a, b]` clustered at `towards`
/// (either `a` or `b`): the piece touching `towards` has width `first`, each
/// further piece is twice as wide.
pub fn graded_breaks(a: f64, b: f64, towards: f64, first: f64) -> Vec<f64> {
    let len = (b - a).abs();
    let mut offsets = vec![0.0];
    let mut w = first.abs().max(len * 1e-15);
    let mut d = 0.0;
    while d + w < len {
        d += w;
        offsets.push(d);
        w *= 2.0;
    }
    offsets.push(len);
    let mut breaks: Vec<f64> = if towards == a {
        offsets.iter().map(|o| a + o).collect()
    } else {
        offsets.iter().map(|o| b - o).collect()
    };
    breaks.sort_by(f64::total_cmp);
    if let Some(first) = breaks.first_mut() {
        *first = a.min(b);
    }
    if let Some(last) = breaks.last_mut() {
        *last = a.max(b);
    }
    breaks.dedup();
    breaks
}

/// Adaptive integration over `[breaks[0], breaks[last]]` starting from the
/// given (increasing) breakpoints.
pub fn integrate_vec_breaks<const N: usize, F>(
    mut f: F,
    breaks: &[f64],
    settings: &QuadSettings,
) -> Result<QuadOutcome<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    if breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "need at least two finite breakpoints".into(),
        ));
    }
    if breaks.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter(
            "breakpoints must be increasing".into(),
        ));
    }
    let a = breaks[0];
    let b = breaks[breaks.len() - 1];
    if a == b {
        return Ok(QuadOutcome {
            value: [0.0; N],
            error: [0.0; N],
            abs_value: [0.0; N],
            mesh: vec![(a, b)],
            evaluations: 0,
        });
    }

    let mut evaluations = 0;
    let mut pieces = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo == hi {
            continue;
        }
        let (value, error, abs_value) = gk21(&mut f, lo, hi);
        evaluations += 21;
        pieces.push(Piece {
            a: lo,
            b: hi,
            value,
            error,
            abs_value,
            priority: 0.0,
        });
    }

    let sum = |ps: &[Piece<N>], pick: fn(&Piece<N>) -> &[f64; N]| {
        let mut out = [0.0; N];
        for p in ps {
            for (o, v) in out.iter_mut().zip(pick(p)) {
                *o += v;
            }
        }
        out
    };

    let abs_total = sum(&pieces, |p| &p.abs_value);
    let tol = tolerances(&abs_total, settings);
    let mut heap = BinaryHeap::new();
    for mut p in pieces {
        p.priority = priority(&p.error, &tol);
        heap.push(p);
    }
    // pieces too narrow to bisect further
    let mut frozen: Vec<Piece<N>> = Vec::new();

    loop {
        let all: Vec<Piece<N>> = heap.iter().chain(frozen.iter()).copied().collect();
        let err_total = sum(&all, |p| &p.error);
        let abs_total = sum(&all, |p| &p.abs_value);
        let tol = tolerances(&abs_total, settings);
        let converged = err_total.iter().zip(&tol).all(|(e, t)| e <= t);

        if converged || heap.is_empty() || heap.len() + frozen.len() >= settings.max_intervals {
            if !converged {
                let value = sum(&all, |p| &p.value);
                let worst = (0..N)
                    .max_by(|&i, &j| (err_total[i] / tol[i]).total_cmp(&(err_total[j] / tol[j])))
                    .unwrap_or(0);
                return Err(Error::Quadrature {
                    a,
                    b,
                    estimate: value.get(worst).copied().unwrap_or(0.0),
                    error: err_total.get(worst).copied().unwrap_or(0.0),
                });
            }
            let mut mesh_pieces = all;
            mesh_pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = sum(&mesh_pieces, |p| &p.value);
            let abs_value = sum(&mesh_pieces, |p| &p.abs_value);
            return Ok(QuadOutcome {
                value,
                error: err_total,
                abs_value,
                mesh: mesh_pieces.iter().map(|p| (p.a, p.b)).collect(),
                evaluations,
            });
        }

        // Refine a batch of the worst pieces before re-summing.
        let batch = (heap.len() / 8).clamp(1, 64);
        for _ in 0..batch {
            let Some(worst) = heap.pop() else { break };
            let mid = 0.5 * (worst.a + worst.b);
            let width = worst.b - worst.a;
            if width.abs() <= 8.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
                frozen.push(worst);
                continue;
            }
            for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
                let (value, error, abs_value) = gk21(&mut f, lo, hi);
                evaluations += 21;
                heap.push(Piece {
                    a: lo,
                    b: hi,
                    value,
                    error,
                    abs_value,
                    priority: priority(&error, &tol),
                });
            }
        }
    }
}

/// Adaptive integration of a scalar integrand.
pub fn integrate<F>(mut f: F, a: f64, b: f64, settings: &QuadSettings) -> Result<QuadOutcome<1>>
where
    F: FnMut(f64) -> f64,
{
    integrate_vec(move |x| [f(x)], a, b, settings)
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n <= 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Fixed composite Gauss–Legendre rule: every mesh interval is split into
/// `splits` equal parts and integrated with an `order`-point rule.
pub fn integrate_fixed<F>(mut f: F, mesh: &[(f64, f64)], order: usize, splits: usize) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (x, w) = gauss_legendre(order);
    let splits = splits.max(1);
    let mut total = 0.0;
    for &(a, b) in mesh {
        let step = (b - a) / splits as f64;
        for k in 0..splits {
            let lo = a + step * k as f64;
            let c = lo + 0.5 * step;
            let h = 0.5 * step;
            total += h * x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| wi * f(c + h * xi))
                .sum::<f64>();
        }
    }
    total
}
