//! Numerical building blocks shared by the physics modules.

pub mod dd;
pub mod minimize;
pub mod quadrature;
pub mod roots;

pub use dd::DoubleDouble;
pub use quadrature::{
    graded_breaks, integrate, integrate_vec, integrate_vec_breaks, QuadOutcome, QuadSettings,
};
pub use roots::{brent, BrentSettings};

/// `n` points spaced evenly between `lo` and `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
            v[n - 1] = hi;
            v
        }
    }
}

/// `n` points spaced evenly in log between `lo` and `hi` inclusive (both > 0).
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut v: Vec<f64> = linspace(a, b, n).into_iter().map(f64::exp).collect();
    if n > 0 {
        v[0] = lo;
        v[n - 1] = hi;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_endpoints() {
        let g = logspace(0.1, 100.0, 20);
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[19], 100.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }
}
