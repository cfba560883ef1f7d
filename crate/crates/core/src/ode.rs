//! Dormand–Prince 5(4) integrator with adaptive step control.
//!
//! Fixed-size states (`[f64; N]`) keep the hot loop allocation free. The
//! integrator stops with [`OdeError::BlowUp`] as soon as any component
//! exceeds the configured ceiling, which is how finite-time escape to
//! infinity is detected.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OdeError {
    #[error("solution exceeded the blow-up ceiling at t = {t}")]
    BlowUp { t: f64 },
    #[error("step size underflow at t = {t}")]
    StepTooSmall { t: f64 },
    #[error("step limit reached at t = {t}")]
    StepLimit { t: f64 },
}

impl OdeError {
    pub fn time(&self) -> f64 {
        match *self {
            OdeError::BlowUp { t } | OdeError::StepTooSmall { t } | OdeError::StepLimit { t } => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSettings {
    pub rtol: f64,
    pub atol: f64,
    pub ceiling: f64,
    pub max_steps: usize,
    pub h_max: f64,
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            ceiling: 1e6,
            max_steps: 1_000_000,
            h_max: 0.1,
        }
    }
}

impl OdeSettings {
    pub fn with_rtol(mut self, rtol: f64) -> Self {
        self.rtol = rtol;
        self
    }

    pub fn with_atol(mut self, atol: f64) -> Self {
        self.atol = atol;
        self
    }

    pub fn with_ceiling(mut self, ceiling: f64) -> Self {
        self.ceiling = ceiling;
        self
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

fn exceeds<const N: usize>(y: &[f64; N], ceiling: f64) -> bool {
    y.iter().any(|v| !v.is_finite() || v.abs() > ceiling)
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 > t0`, calling `observer` after
/// every accepted step (and once at `t0`). Returns the state at `t1`.
pub fn integrate<const N: usize, F, O>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    settings: &OdeSettings,
    mut observer: O,
) -> Result<[f64; N], OdeError>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    O: FnMut(f64, &[f64; N]),
{
    let mut t = t0;
    let mut y = y0;
    observer(t, &y);
    if t1 <= t0 {
        return Ok(y);
    }
    if exceeds(&y, settings.ceiling) {
        return Err(OdeError::BlowUp { t });
    }
    let mut k1 = f(t, &y);
    let span = t1 - t0;
    let mut h = initial_step(&y, &k1, settings).min(span).min(settings.h_max);
    let mut steps = 0usize;

    while t < t1 {
        if steps >= settings.max_steps {
            return Err(OdeError::StepLimit { t });
        }
        steps += 1;
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &combine(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &combine(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &combine(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &combine(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &combine(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = combine(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = f(t + h, &y_new);

        let mut err = 0.0;
        let mut finite = true;
        for i in 0..N {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = settings.atol + settings.rtol * y[i].abs().max(y_new[i].abs());
            let r = e / sc;
            finite &= r.is_finite() && y_new[i].is_finite();
            err += r * r;
        }
        let err = (err / N as f64).sqrt();

        if finite && err <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            k1 = k7;
            observer(t, &y);
            if exceeds(&y, settings.ceiling) {
                return Err(OdeError::BlowUp { t });
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h * factor).min(settings.h_max);
        } else {
            // a trial state past the ceiling is as good as a blow-up
            if !finite && exceeds(&y_new, settings.ceiling) && h < 1e-6 * span {
                return Err(OdeError::BlowUp { t });
            }
            let factor = if finite { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
            h *= factor;
        }
        if h < 1e-15 * t.abs().max(span) {
            let rate = (0..N)
                .map(|i| k1[i].abs() / y[i].abs().max(settings.atol))
                .fold(0.0, f64::max);
            // logarithmic growth this fast means the step collapsed into an escape
            return if exceeds(&y, settings.ceiling * 1e-3) || !finite || rate * span > 1e10 {
                Err(OdeError::BlowUp { t })
            } else {
                Err(OdeError::StepTooSmall { t })
            };
        }
    }
    Ok(y)
}

fn initial_step<const N: usize>(y: &[f64; N], dy: &[f64; N], s: &OdeSettings) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for i in 0..N {
        let sc = s.atol + s.rtol * y[i].abs();
        d0 += (y[i] / sc).powi(2);
        d1 += (dy[i] / sc).powi(2);
    }
    let (d0, d1) = ((d0 / N as f64).sqrt(), (d1 / N as f64).sqrt());
    if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        (0.01 * d0 / d1).max(1e-10)
    }
}
