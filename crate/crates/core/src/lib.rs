//! Two-player Tower of Hanoi: rules, sequence notation, explicit strategies,
//! closed-form results and exhaustive solvers.

pub mod construct;
pub mod game;
pub mod notation;
pub mod score;
pub mod scoreforms;
pub mod solve;

pub use game::{Disk, EndingCondition, GameConfig, GameError, GameState, Move, Peg, Position};
pub use notation::{parse, replay, NotationError, ReplayReport, SeqExpr};
pub use score::{format_rational, parse_rational, Rational, Weights};
