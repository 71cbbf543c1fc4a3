//! Exact scalars: arbitrary-precision rationals and numbers `p + q sqrt(D)`.

mod quad;
pub mod rational;

pub use quad::QuadNum;
pub use rational::{int, parse_rational, rat, to_decimal, to_f64, Rational};
