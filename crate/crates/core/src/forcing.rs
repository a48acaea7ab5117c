// SPDX-License-Identifier: Apache-2.0

//! Driving-force laws. Every value returned here is a force per unit mass
//! of the oscillator, i.e. an acceleration.

use crate::error::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Series truncation used when none is given.
pub const DEFAULT_SAWTOOTH_TERMS: u32 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum ForceModel {
    Zero,
    Constant { f0: f64 },
    Tmafm(Tmafm),
    Sawtooth(Sawtooth),
    Tabulated(Tabulated),
}

/// Tapping-mode AFM cantilever drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tmafm {
    /// Tip-sample force.
    pub f_ext: f64,
    /// Cantilever spring constant.
    pub k: f64,
    /// Rest position of the cantilever base.
    pub d0: f64,
    /// Drive amplitude.
    pub a0: f64,
    pub omega_d: f64,
    pub m_eff: f64,
}

/// Truncated Fourier sine series of a periodic ramp with period
/// `2π/omega_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sawtooth {
    pub f0: f64,
    pub m: f64,
    pub omega_d: f64,
    pub n_terms: u32,
}

impl Sawtooth {
    pub fn period(&self) -> f64 {
        TAU / self.omega_d
    }
}

/// Piecewise-linear force through strictly increasing sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    samples: Vec<(f64, f64)>,
}

impl Tabulated {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidForce(
                "tabulated force needs at least two samples".into(),
            ));
        }
        if samples
            .iter()
            .any(|(t, f)| !t.is_finite() || !f.is_finite())
        {
            return Err(Error::InvalidForce("non-finite tabulated sample".into()));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidForce(
                "tabulated sample times must be strictly increasing".into(),
            ));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn start(&self) -> f64 {
        self.samples[0].0
    }

    pub fn end(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let (start, end) = (self.start(), self.end());
        if !(start..=end).contains(&t) {
            return Err(Error::OutOfRange { t, start, end });
        }
        // first sample with time > t, clamped so the last interval is used at t == end
        let upper = self
            .samples
            .partition_point(|&(ts, _)| ts <= t)
            .clamp(1, self.samples.len() - 1);
        let (t0, f0) = self.samples[upper - 1];
        let (t1, f1) = self.samples[upper];
        let s = (t - t0) / (t1 - t0);
        Ok(f0 + s * (f1 - f0))
    }
}

impl ForceModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidForce(what.to_string()));
        match self {
            ForceModel::Zero | ForceModel::Tabulated(_) => Ok(()),
            ForceModel::Constant { f0 } if !f0.is_finite() => bad("f0 must be finite"),
            ForceModel::Constant { .. } => Ok(()),
            ForceModel::Tmafm(p) => {
                if !(p.m_eff.is_finite() && p.m_eff > 0.0) {
                    bad("m_eff must be positive")
                } else if !(p.omega_d.is_finite() && p.omega_d > 0.0) {
                    bad("omega_d must be positive")
                } else if ![p.f_ext, p.k, p.d0, p.a0].iter().all(|v| v.is_finite()) {
                    bad("TMAFM parameters must be finite")
                } else {
                    Ok(())
                }
            }
            ForceModel::Sawtooth(s) => {
                if !(s.m.is_finite() && s.m > 0.0) {
                    bad("m must be positive")
                } else if !(s.omega_d.is_finite() && s.omega_d > 0.0) {
                    bad("omega_d must be positive")
                } else if s.n_terms < 1 {
                    bad("n_terms must be at least 1")
                } else if !s.f0.is_finite() {
                    bad("f0 must be finite")
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Force per unit mass at time `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(match self {
            ForceModel::Zero => 0.0,
            ForceModel::Constant { f0 } => *f0,
            ForceModel::Tmafm(p) => tmafm_force(p.f_ext, p.k, p.d0, p.a0, p.omega_d, p.m_eff, t),
            ForceModel::Sawtooth(s) => sawtooth_series(s.f0, s.m, s.omega_d, s.n_terms, t),
            ForceModel::Tabulated(tab) => return tab.eval(t),
        })
    }
}

/// `[F_ext + k (D0 - a0 sin(omega_d t))] / m_eff`
pub fn tmafm_force(f_ext: f64, k: f64, d0: f64, a0: f64, omega_d: f64, m_eff: f64, t: f64) -> f64 {
    (f_ext + k * (d0 - a0 * (omega_d * t).sin())) / m_eff
}

/// Partial sum `f0/(π m) Σ_{n=1}^{N} (-1)^{n+1} sin(n omega_d t) / n`.
///
/// Terms are added in increasing `n`, so results are reproducible bit for
/// bit and exactly odd in `t`.
pub fn sawtooth_series(f0: f64, m: f64, omega_d: f64, n_terms: u32, t: f64) -> f64 {
    let mut sum = 0.0;
    for n in 1..=n_terms {
        let nf = f64::from(n);
        let term = ((nf * omega_d) * t).sin() / nf;
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    f0 / (PI * m) * sum
}

/// Exact periodic ramp `f0 t_w / (m τ)` with `t_w` the time reduced into
/// `(-τ/2, τ/2]`.
pub fn sawtooth_ramp(f0: f64, m: f64, omega_d: f64, t: f64) -> f64 {
    let tau = TAU / omega_d;
    let wrapped = t - tau * (t / tau - 0.5).ceil();
    f0 * wrapped / (m * tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_laws() {
        assert_eq!(ForceModel::Zero.eval(123.0).unwrap(), 0.0);
        assert_eq!(ForceModel::Constant { f0: 0.3 }.eval(7.0).unwrap(), 0.3);
        let tab = ForceModel::Tabulated(Tabulated::new(vec![(0.0, 0.0), (1.0, 2.0)]).unwrap());
        assert_eq!(tab.eval(0.5).unwrap(), 1.0);
        assert_eq!(tab.eval(1.0).unwrap(), 2.0);
        assert_eq!(tab.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_out_of_range() {
        let tab = Tabulated::new(vec![(0.0, 0.0), (1.0, 2.0), (2.0, -1.0)]).unwrap();
        assert!(matches!(tab.eval(2.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(tab.eval(-0.1), Err(Error::OutOfRange { .. })));
        assert_eq!(tab.eval(1.5).unwrap(), 0.5);
    }

    #[test]
    fn tabulated_rejects_unsorted() {
        assert!(Tabulated::new(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(Tabulated::new(vec![(1.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(Tabulated::new(vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn tmafm_examples() {
        let f = tmafm_force(0.3, 0.5, 0.5, 0.3, 0.3, 1.0, 0.0);
        assert!((f - 0.55).abs() < 1e-15);
        let f = tmafm_force(0.0, 1.0, 0.0, 1.0, 1.0, 1.0, PI / 2.0);
        assert_eq!(f, -1.0);
        let f = tmafm_force(0.3, 0.5, 0.5, 0.3, 0.3, 1.0, TAU / 0.3);
        assert!((f - 0.55).abs() < 1e-12);
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth_series(1.0, 1.0, 3.0, 17, 0.0), 0.0);
        let s = sawtooth_series(1.0, 1.0, TAU, 1000, 0.25);
        assert!((s - 0.25).abs() < 1e-3, "{s}");
        let s = sawtooth_series(1.0, 1.0, TAU, 1000, -0.25);
        assert!((s + 0.25).abs() < 1e-3, "{s}");
    }

    #[test]
    fn ramp_examples() {
        assert_eq!(sawtooth_ramp(1.0, 1.0, TAU, 0.25), 0.25);
        assert!((sawtooth_ramp(1.0, 1.0, TAU, 1.25) - 0.25).abs() < 1e-15);
        assert_eq!(sawtooth_ramp(2.0, 1.0, 1.2, 0.0), 0.0);
        // right edge belongs to the interval, left edge wraps to it
        assert!((sawtooth_ramp(1.0, 1.0, TAU, 0.5) - 0.5).abs() < 1e-15);
        assert!((sawtooth_ramp(1.0, 1.0, TAU, -0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn invalid_models() {
        let saw = Sawtooth {
            f0: 1.0,
            m: 1.0,
            omega_d: 1.0,
            n_terms: 0,
        };
        assert!(ForceModel::Sawtooth(saw).validate().is_err());
        let tm = Tmafm {
            f_ext: 0.0,
            k: 1.0,
            d0: 0.0,
            a0: 1.0,
            omega_d: 1.0,
            m_eff: 0.0,
        };
        assert!(ForceModel::Tmafm(tm).validate().is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sawtooth_is_odd(t in -50.0f64..50.0, wd in 0.1f64..10.0, n in 1u32..300) {
            prop_assert_eq!(sawtooth_series(1.3, 0.7, wd, n, -t), -sawtooth_series(1.3, 0.7, wd, n, t));
        }

        #[test]
        fn sawtooth_is_periodic(t in -2.0f64..2.0, n in 1u32..1000) {
            let tau = 1.0;
            let a = sawtooth_series(1.0, 1.0, TAU, n, t);
            let b = sawtooth_series(1.0, 1.0, TAU, n, t + tau);
            prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", a, b);
        }

        #[test]
        fn tmafm_stays_in_range(t in 0.0f64..100.0, a0 in 0.0f64..2.0, k in 0.0f64..3.0) {
            let (f_ext, d0, m_eff) = (0.3, 0.5, 1.7);
            let f = tmafm_force(f_ext, k, d0, a0, 0.7, m_eff, t);
            let lo = (f_ext + k * (d0 - a0)) / m_eff;
            let hi = (f_ext + k * (d0 + a0)) / m_eff;
            prop_assert!(f >= lo - 1e-12 && f <= hi + 1e-12);
        }
    }
}
