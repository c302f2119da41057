//! Brent's bracketing root finder (inverse quadratic interpolation with
//! bisection fallback), after the scipy `brentq` formulation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct BrentSettings {
    pub xtol: f64,
    pub rtol: f64,
    pub max_iter: usize,
}

impl Default for BrentSettings {
    fn default() -> Self {
        Self {
            xtol: 1e-14,
            rtol: 4.0 * f64::EPSILON,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[xa, xb]`. `f(xa)` and `f(xb)` must differ in sign.
pub fn brent<F>(mut f: F, xa: f64, xb: f64, s: &BrentSettings) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut xpre = xa;
    let mut xcur = xb;
    let mut fpre = f(xpre);
    let mut fcur = f(xcur);
    let (mut xblk, mut fblk) = (0.0, 0.0);
    let (mut spre, mut scur) = (0.0, 0.0);

    if !(fpre.is_finite() && fcur.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite function value at bracket ends: f({xa}) = {fpre}, f({xb}) = {fcur}"
        )));
    }
    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    if fpre.signum() == fcur.signum() {
        return Err(Error::NoRootInBracket { lo: xa, hi: xb });
    }

    for _ in 0..s.max_iter {
        if fpre != 0.0 && fcur != 0.0 && fpre.signum() != fcur.signum() {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = 0.5 * (s.xtol + s.rtol * xcur.abs());
        let sbis = 0.5 * (xblk - xcur);
        if fcur == 0.0 || sbis.abs() < delta {
            return Ok(xcur);
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
        if !fcur.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite function value at x = {xcur}"
            )));
        }
    }
    Err(Error::RootNotConverged {
        iterations: s.max_iter,
    })
}
