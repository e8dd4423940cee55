//! Exact rationals, continued fractions, convergent tables and the slow
//! Euclidean algorithm.

mod alpha;
mod convergents;
mod decimal;
mod euclid;
mod rational;

pub use alpha::{AlphaKind, AlphaSpec, Proxy};
pub use convergents::{
    cf_expand, cf_expand_ratio, convergent_table, ConvergentRow, ConvergentTable, Intermediate,
    Need, PROXY_EXTRA_BLOCKS,
};
pub use decimal::Decimal;
pub use euclid::{simple_rows, slow_euclid, EuclidRow, SimpleRow, SlowEuclidTrace};
pub use rational::{ceil, floor, int, rat, to_f64, Rational};
