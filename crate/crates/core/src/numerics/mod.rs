//! Exact scalars: rationals, the cubic extension Q(t), and verified real
//! enclosures for the trigonometric side of the path closed form.

pub mod approx;
pub mod cubic;
pub mod rational;

pub use approx::{acos_lambda, default_precision, pi, ApproxReal, DEFAULT_PRECISION};
pub use cubic::{cubic_arith, CubicNumber, CubicOp, CubicValue};
pub use rational::{int, parse, rat, simplest_between, within, BigRational};
