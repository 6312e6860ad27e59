//! Exact computation of the regulator maps `R_{2,m}` on 1-cycles of the
//! cubical additive higher Chow complex, with the residue, divisor,
//! differential-form and boundary machinery behind them.

pub mod arith;
pub mod cli;
pub mod cycles;
pub mod forms;
pub mod geometry;
pub mod regulator;
pub mod series;
pub mod text;
