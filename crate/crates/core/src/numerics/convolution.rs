// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::forcing::ForceModel;
use crate::model::Oscillator;

/// Running state of the particular solution
///
/// ```text
/// Q_p(t) = (1/ω) ∫_0^t f(t') e^{-γ(t-t')/2} sin(ω(t-t')) dt'
/// ```
///
/// Expanding `sin(ω(t-t'))` with the angle-difference identity leaves two
/// integrals that depend on `t'` only,
///
/// ```text
/// S_c(t) = ∫_0^t f(t') e^{γt'/2} cos(ωt') dt'
/// S_s(t) = ∫_0^t f(t') e^{γt'/2} sin(ωt') dt'
/// ```
///
/// so advancing from `t` to `t + h` costs one Simpson panel instead of a
/// full re-integration. Each panel of width `h` has nodes at `h/2`
/// spacing.
///
/// The factors `e^{γt'/2}` grow inside the sums and are cancelled by
/// `e^{-γt/2}` in [`value`](Self::value); double precision is comfortable
/// up to `γt ≈ 50`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionAccumulator {
    s_c: f64,
    s_s: f64,
    panels: u64,
    h: f64,
    gamma: f64,
    omega: f64,
    // integrand (cos, sin) at t_last, reused as the left node of the next panel
    left: Option<(f64, f64)>,
}

impl ConvolutionAccumulator {
    /// Empty accumulator at `t = 0` with panel width `h`.
    pub fn new(osc: &Oscillator, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::NonPositive {
                name: "h",
                value: h,
            });
        }
        Ok(Self {
            s_c: 0.0,
            s_s: 0.0,
            panels: 0,
            h,
            gamma: osc.gamma(),
            omega: osc.omega(),
            left: None,
        })
    }

    pub fn s_c(&self) -> f64 {
        self.s_c
    }

    pub fn s_s(&self) -> f64 {
        self.s_s
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn t_last(&self) -> f64 {
        self.panels as f64 * self.h
    }

    fn integrand(&self, force: &ForceModel, t: f64) -> Result<(f64, f64)> {
        let weight = force.eval(t)? * (0.5 * self.gamma * t).exp();
        let (sin, cos) = (self.omega * t).sin_cos();
        Ok((weight * cos, weight * sin))
    }

    /// Adds `count` Simpson panels.
    pub fn advance(&mut self, force: &ForceModel, count: u64) -> Result<()> {
        for _ in 0..count {
            let a = self.t_last();
            let left = match self.left {
                Some(v) => v,
                None => self.integrand(force, a)?,
            };
            let mid = self.integrand(force, (self.panels as f64 + 0.5) * self.h)?;
            let right = self.integrand(force, (self.panels + 1) as f64 * self.h)?;
            let w = self.h / 6.0;
            self.s_c += w * (left.0 + 4.0 * mid.0 + right.0);
            self.s_s += w * (left.1 + 4.0 * mid.1 + right.1);
            self.panels += 1;
            self.left = Some(right);
        }
        Ok(())
    }

    /// Advances to `t_new`, which must lie a whole number of panels ahead.
    pub fn extend_to(&mut self, force: &ForceModel, t_new: f64) -> Result<()> {
        let t_last = self.t_last();
        let k = ((t_new - t_last) / self.h).round();
        let mismatch = Error::GridMismatch {
            t: t_new,
            t_last,
            step: self.h,
        };
        if !k.is_finite() || k < 0.0 {
            return Err(mismatch);
        }
        let target = (self.panels + k as u64) as f64 * self.h;
        if (target - t_new).abs() > lattice_tol(self.h, t_new) {
            return Err(mismatch);
        }
        self.advance(force, k as u64)
    }

    /// Particular solution and its velocity at `t`, which must equal the
    /// accumulator time.
    ///
    /// The velocity is the exact derivative of the integral: the boundary
    /// term carries `sin(0)` and vanishes, leaving
    /// `-γ/2 Q_p + e^{-γt/2} (cos(ωt) S_c + sin(ωt) S_s)`.
    pub fn value(&self, t: f64) -> Result<(f64, f64)> {
        let t_last = self.t_last();
        if (t - t_last).abs() > lattice_tol(self.h, t) {
            return Err(Error::StaleAccumulator { t, t_last });
        }
        let t = t_last;
        let envelope = (-0.5 * self.gamma * t).exp();
        let (sin, cos) = (self.omega * t).sin_cos();
        let q = envelope / self.omega * (sin * self.s_c - cos * self.s_s);
        let qdot = -0.5 * self.gamma * q + envelope * (cos * self.s_c + sin * self.s_s);
        Ok((q, qdot))
    }
}

fn lattice_tol(h: f64, t: f64) -> f64 {
    1e-9 * h.max(f64::EPSILON * t.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OscillatorParams;
    use std::f64::consts::PI;

    fn osc(omega0: f64, gamma: f64) -> Oscillator {
        OscillatorParams::new(1.0, omega0, gamma, 1.0)
            .validate()
            .unwrap()
    }

    #[test]
    fn zero_force_stays_zero() {
        let o = osc(1.0, 0.1);
        let mut acc = ConvolutionAccumulator::new(&o, 0.01).unwrap();
        acc.extend_to(&ForceModel::Zero, 5.0).unwrap();
        assert_eq!((acc.s_c(), acc.s_s()), (0.0, 0.0));
        assert_eq!(acc.value(5.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn empty_integral_at_origin() {
        let o = osc(1.0, 0.1);
        let acc = ConvolutionAccumulator::new(&o, 0.01).unwrap();
        assert_eq!(acc.value(0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn undamped_constant_force_half_period() {
        let o = osc(1.0, 0.0);
        let n = 2000u64;
        let mut acc = ConvolutionAccumulator::new(&o, PI / n as f64).unwrap();
        acc.advance(&ForceModel::Constant { f0: 1.0 }, n).unwrap();
        assert!(acc.s_c().abs() < 1e-10, "{}", acc.s_c());
        assert!((acc.s_s() - 2.0).abs() < 1e-10, "{}", acc.s_s());
    }

    #[test]
    fn damped_constant_force_unit_time() {
        // omega = 1 exactly requires omega0^2 = 1 + gamma^2/4
        let o = osc(1.01f64.sqrt(), 0.2);
        let mut acc = ConvolutionAccumulator::new(&o, 1e-3).unwrap();
        acc.extend_to(&ForceModel::Constant { f0: 1.0 }, 1.0)
            .unwrap();
        // mpmath quad
        let (sc, ss) = (0.880_873_168_668_941, 0.490_960_921_452_212_76);
        assert!(((acc.s_c() - sc) / sc).abs() < 1e-8);
        assert!(((acc.s_s() - ss) / ss).abs() < 1e-8);
    }

    #[test]
    fn off_lattice_requests_fail() {
        let o = osc(1.0, 0.1);
        let mut acc = ConvolutionAccumulator::new(&o, 0.1).unwrap();
        let f = ForceModel::Constant { f0: 1.0 };
        assert!(matches!(
            acc.extend_to(&f, 0.25),
            Err(Error::GridMismatch { .. })
        ));
        acc.extend_to(&f, 0.3).unwrap();
        assert!(matches!(
            acc.extend_to(&f, 0.1),
            Err(Error::GridMismatch { .. })
        ));
        assert!(matches!(
            acc.value(0.4),
            Err(Error::StaleAccumulator { .. })
        ));
        assert!(acc.value(0.3).is_ok());
    }

    #[test]
    fn extend_is_incremental() {
        let o = osc(1.3, 0.2);
        let f = ForceModel::Constant { f0: 0.7 };
        let mut stepwise = ConvolutionAccumulator::new(&o, 0.01).unwrap();
        for i in 1..=300 {
            stepwise.extend_to(&f, i as f64 * 0.01).unwrap();
        }
        let mut once = ConvolutionAccumulator::new(&o, 0.01).unwrap();
        once.extend_to(&f, 3.0).unwrap();
        assert_eq!(stepwise, once);
    }
}
