// SPDX-License-Identifier: Apache-2.0

//! Numerical kernels: the incremental Duhamel-integral accumulator used by
//! the classical solution, and an RK4 integrator kept as an independent
//! oracle for the equation of motion.

mod convolution;
mod rk4;

pub use convolution::ConvolutionAccumulator;
pub use rk4::{rk4_integrate, OdeState};
