//! Closed-form verdicts, score formulas and minimal-move tables.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::{
    canonical_board, minimal_transfer, return_transfer, scoring_certificate, short_return,
    two_disk_family, ConstructError,
};
use crate::game::{EndingCondition, GameConfig, GameError, Peg};
use crate::notation::SeqExpr;
use crate::score::{floor_int, format_rational, Rational};

pub use crate::score::Weights;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    FirstWin,
    SecondWin,
    Draw,
    Tie,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::FirstWin => "FirstWin",
            Outcome::SecondWin => "SecondWin",
            Outcome::Draw => "Draw",
            Outcome::Tie => "Tie",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A move count that may be unbounded.
pub type Bound = Option<u64>;

fn bound_json(b: Bound) -> Value {
    match b {
        Some(v) => json!(v),
        None => json!("inf"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinMovesResult {
    pub lower: Bound,
    pub upper: Bound,
    pub exact: bool,
}

impl MinMovesResult {
    pub fn exactly(v: Bound) -> Self {
        MinMovesResult {
            lower: v,
            upper: v,
            exact: true,
        }
    }

    pub fn between(lower: u64, upper: Bound) -> Self {
        MinMovesResult {
            lower: Some(lower),
            upper,
            exact: upper == Some(lower),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"lower": bound_json(self.lower), "upper": bound_json(self.upper), "exact": self.exact})
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Option<SeqExpr>,
    pub predicted_delta: Option<Rational>,
    pub bounds: MinMovesResult,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "outcome": self.outcome.as_str(),
            "delta": self.predicted_delta.as_ref().map(format_rational),
            "certificate": self.certificate.as_ref().map(|c| c.to_string()),
            "bounds": self.bounds.to_json(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoringInvariants {
    pub beta1: Rational,
    pub beta2: Rational,
    pub beta3: Rational,
    pub gamma: Rational,
    pub parity: u8,
}

impl ScoringInvariants {
    pub fn to_json(&self) -> Value {
        json!({
            "beta1": format_rational(&self.beta1),
            "beta2": format_rational(&self.beta2),
            "beta3": format_rational(&self.beta3),
            "gamma": format_rational(&self.gamma),
            "parity": self.parity,
        })
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Score difference of the minimal transfer from peg 1 to peg 3.
pub fn delta_minimal_13(n: u8, w: &Weights) -> Rational {
    if n % 2 == 1 {
        w.w13
    } else {
        w.w12 + w.w23 - w.w13
    }
}

/// Score difference of either minimal return of the tower to peg 1.
pub fn delta_minimal_11(n: u8, w: &Weights) -> Rational {
    if n % 2 == 1 {
        int(3) * w.w23 - w.w12 - w.w13
    } else {
        w.w12 + w.w13 - w.w23
    }
}

/// Score difference of the short return (largest disk out to peg 2 and back).
pub fn delta_short_return(n: u8, w: &Weights) -> Rational {
    int(2) * delta_minimal_13(n - 1, w) - int(3) * w.w12 + w.w13 + w.w23
}

/// Length of the shortest game that returns the tower with the largest disk moved.
pub fn return_length(n: u8) -> u64 {
    if n >= 3 {
        pow2(n) + 7
    } else {
        pow2(n + 1) - 1
    }
}

pub fn invariants_of(n: u8, w: &Weights) -> ScoringInvariants {
    let beta3 = if n % 2 == 1 {
        w.w13.max(w.w12)
    } else {
        (w.w12 + w.w23 - w.w13).max(w.w13 + w.w23 - w.w12)
    };
    ScoringInvariants {
        beta1: delta_minimal_13(n, w),
        beta2: delta_minimal_11(n, w),
        beta3,
        gamma: w.sum() - int(3) * w.min(),
        parity: n % 2,
    }
}

fn pow2(n: u8) -> u64 {
    1u64 << n
}

fn check_three(cfg: &GameConfig) -> Result<(), FormError> {
    if cfg.pegs() != 3 {
        return Err(FormError::Unsupported(
            "scoring play is defined on three pegs".into(),
        ));
    }
    Ok(())
}

/// Least number of moves in a won normal-play game.
pub fn min_moves_normal(cfg: &GameConfig) -> MinMovesResult {
    let n = cfg.disks();
    let ec = cfg.ending();
    if cfg.pegs() == 3 {
        let v = match ec {
            EndingCondition::ToPeg | EndingCondition::AnyLargest => pow2(n) - 1,
            EndingCondition::ReturnLargest => return_length(n),
            EndingCondition::ReturnSmallest => 7,
            EndingCondition::AnySmallest => {
                if n <= 2 {
                    pow2(n) - 1
                } else {
                    7
                }
            }
        };
        return MinMovesResult::exactly(Some(v));
    }
    let any = matches!(
        ec,
        EndingCondition::AnyLargest | EndingCondition::AnySmallest
    );
    let v = match n {
        1 if ec == EndingCondition::ToPeg || any => Some(1),
        2 if any => Some(3),
        _ => None,
    };
    MinMovesResult::exactly(v)
}

/// Moves of the shortest normal-play win on three pegs, as a sequence from peg 1.
fn normal_certificate(n: u8, ec: EndingCondition) -> SeqExpr {
    match ec {
        EndingCondition::ToPeg | EndingCondition::AnyLargest => minimal_transfer(n, 1, 3),
        EndingCondition::ReturnLargest if n >= 3 => short_return(n, false).expect("n >= 3"),
        EndingCondition::ReturnLargest => return_transfer(n, 1).expect("n >= 2"),
        EndingCondition::ReturnSmallest => return_transfer(2, 2).expect("two disks"),
        EndingCondition::AnySmallest => {
            if n <= 2 {
                minimal_transfer(n, 1, 3)
            } else {
                return_transfer(2, 1).expect("two disks")
            }
        }
    }
}

fn canonical(cfg: &GameConfig) -> ([Peg; 4], GameConfig) {
    canonical_board(cfg).expect("three-peg board")
}

/// Normal-play outcome with a shortest winning line where one exists.
pub fn normal_verdict(cfg: &GameConfig) -> Verdict {
    let n = cfg.disks();
    let ec = cfg.ending();
    let bounds = min_moves_normal(cfg);
    if cfg.pegs() == 3 {
        let (perm, _) = canonical(cfg);
        return Verdict {
            outcome: Outcome::FirstWin,
            certificate: Some(normal_certificate(n, ec).relabelled(&perm)),
            predicted_delta: None,
            bounds,
        };
    }
    let (start, fin) = (cfg.start_peg(), cfg.final_peg());
    let other = (1..=cfg.pegs()).find(|&p| p != start && p != fin).unwrap();
    let certificate = match (n, ec) {
        (1, EndingCondition::ToPeg) => Some(SeqExpr::atom(start, fin)),
        (1, _) => Some(SeqExpr::atom(start, other)),
        (2, EndingCondition::AnyLargest | EndingCondition::AnySmallest) => Some(SeqExpr::concat([
            SeqExpr::atom(start, other),
            SeqExpr::atom(start, fin),
            SeqExpr::atom(other, fin),
        ])),
        _ => None,
    };
    Verdict {
        outcome: if certificate.is_some() {
            Outcome::FirstWin
        } else {
            Outcome::Draw
        },
        certificate,
        predicted_delta: None,
        bounds,
    }
}

/// The five strict inequalities that decide two-disk scoring play.
pub fn two_disk_inequalities(w: &Weights) -> [bool; 5] {
    let three = int(3);
    [
        w.w12 + w.w23 > w.w13,
        three * w.w13 > w.w12 + w.w23,
        w.w13 + w.w23 > w.w12,
        three * w.w12 > w.w13 + w.w23,
        w.w12 + w.w13 > w.w23,
    ]
}

/// `(inequality index, family case, moves)` in order of preference.
fn two_disk_options(ec: EndingCondition) -> &'static [(usize, u8, u64)] {
    match ec {
        EndingCondition::ToPeg => &[(0, 1, 3), (1, 2, 5)],
        EndingCondition::ReturnLargest | EndingCondition::ReturnSmallest => &[(4, 5, 7)],
        EndingCondition::AnyLargest | EndingCondition::AnySmallest => {
            &[(0, 1, 3), (2, 4, 3), (1, 2, 5), (3, 3, 5), (4, 5, 7)]
        }
    }
}

fn two_disk_delta(case: u8, w: &Weights) -> Rational {
    let three = int(3);
    match case {
        1 => w.w12 + w.w23 - w.w13,
        2 => three * w.w13 - w.w12 - w.w23,
        3 => three * w.w12 - w.w13 - w.w23,
        4 => w.w13 + w.w23 - w.w12,
        _ => w.w12 + w.w13 - w.w23,
    }
}

/// Scoring-play outcome on three pegs.
pub fn scoring_verdict(cfg: &GameConfig, w: &Weights) -> Result<Verdict, FormError> {
    check_three(cfg)?;
    let bounds = min_moves_scoring(cfg, w)?;
    let (perm, canon_cfg) = canonical(cfg);
    let cw = w.relabelled(&perm);
    let n = cfg.disks();
    let win = |seq: SeqExpr, delta: Rational| Verdict {
        outcome: Outcome::FirstWin,
        certificate: Some(seq.relabelled(&perm)),
        predicted_delta: Some(delta),
        bounds,
    };
    let draw = Verdict {
        outcome: Outcome::Draw,
        certificate: None,
        predicted_delta: None,
        bounds,
    };
    match n {
        1 => {
            let (atom, value) = match cfg.ending() {
                EndingCondition::ToPeg => (SeqExpr::atom(1, 3), cw.w13),
                _ if cw.w12 > cw.w13 => (SeqExpr::atom(1, 2), cw.w12),
                _ => (SeqExpr::atom(1, 3), cw.w13),
            };
            let outcome = if value.is_positive() {
                Outcome::FirstWin
            } else if value.is_negative() {
                Outcome::SecondWin
            } else {
                Outcome::Tie
            };
            Ok(Verdict {
                outcome,
                certificate: Some(atom.relabelled(&perm)),
                predicted_delta: Some(value),
                bounds,
            })
        }
        2 => {
            let holds = two_disk_inequalities(&cw);
            for &(idx, case, _) in two_disk_options(canon_cfg.ending()) {
                if holds[idx] {
                    return Ok(win(two_disk_family(case, 0)?, two_disk_delta(case, &cw)));
                }
            }
            Ok(draw)
        }
        _ => {
            if w.all_equal() {
                if w.w12.is_positive() {
                    return Ok(win(normal_certificate(n, cfg.ending()), w.w12));
                }
                return Ok(draw);
            }
            let cert = scoring_certificate(cfg, w)?;
            Ok(Verdict {
                outcome: Outcome::FirstWin,
                certificate: Some(cert.seq),
                predicted_delta: Some(cert.delta),
                bounds,
            })
        }
    }
}

/// Length of a base route of `len` moves scoring `p`, topped up with pump
/// cycles worth `2 gamma` each until the score is positive.
fn pumped_len(len: u64, p: Rational, gamma: Rational) -> u64 {
    if p.is_positive() {
        len
    } else {
        len + 16 * (floor_int(&(-p / (int(2) * gamma))) + 1) as u64
    }
}

/// Upper bound for a three-disk transfer from peg 1 to `to` (2 or 3).
fn three_disk_transfer_bound(to: Peg, w: &Weights, gamma: Rational) -> u64 {
    // edge from the start peg to the target, and from the start to the spare
    let (direct, side) = if to == 3 {
        (w.w13, w.w12)
    } else {
        (w.w12, w.w13)
    };
    if direct == w.min() {
        pumped_len(7, direct, gamma)
    } else {
        let eleven = int(2) * (side + w.w23) - int(3) * direct;
        pumped_len(11, eleven, gamma).min(pumped_len(13, direct, gamma))
    }
}

/// Minimal number of moves of a won scoring game, as bounds.
pub fn min_moves_scoring(cfg: &GameConfig, w: &Weights) -> Result<MinMovesResult, FormError> {
    check_three(cfg)?;
    let (perm, canon_cfg) = canonical(cfg);
    let w = w.relabelled(&perm);
    let n = cfg.disks();
    let ec = canon_cfg.ending();
    let ineq = two_disk_inequalities(&w);
    if n == 1 {
        let v = match ec {
            EndingCondition::ToPeg => (!w.w13.is_zero()).then_some(1),
            _ => (!w.w12.max(w.w13).is_zero()).then_some(1),
        };
        return Ok(MinMovesResult::exactly(v));
    }
    if n == 2 {
        let upper = two_disk_options(ec)
            .iter()
            .filter(|(idx, _, _)| ineq[*idx])
            .map(|&(_, _, moves)| moves)
            .min();
        let lower = if matches!(
            ec,
            EndingCondition::ReturnLargest | EndingCondition::ReturnSmallest
        ) {
            7
        } else {
            3
        };
        return Ok(MinMovesResult::between(lower, upper));
    }
    if w.all_equal() {
        if w.w12.is_positive() {
            return Ok(min_moves_normal(&canon_cfg));
        }
        return Ok(MinMovesResult::exactly(None));
    }
    let inv = invariants_of(n, &w);
    let gamma = inv.gamma;
    let full = pow2(n) - 1;
    let ret = pow2(n + 1) - 1;
    let small_return = (ineq[4]).then_some(7u64);
    let three_return = int(3) * w.w23 - w.w12 - w.w13;
    let to_other = |w: &Weights| -> u64 {
        if n == 3 {
            three_disk_transfer_bound(3, w, gamma).min(three_disk_transfer_bound(2, w, gamma))
        } else {
            pumped_len(full, inv.beta3, gamma)
        }
    };
    let exceptional_lower = |beta: Rational| {
        if n == 3 && !beta.is_positive() {
            8
        } else {
            pow2(n)
        }
    };
    let mirrored = Weights::new(w.w13, w.w12, w.w23);
    let short_wins = n >= 4
        && (delta_short_return(n, &w).is_positive()
            || delta_short_return(n, &mirrored).is_positive());
    let short = short_wins.then_some(return_length(n));
    Ok(match ec {
        EndingCondition::ToPeg => {
            if inv.beta1.is_positive() {
                MinMovesResult::exactly(Some(full))
            } else {
                let upper = if n == 3 {
                    three_disk_transfer_bound(3, &w, gamma)
                } else {
                    pumped_len(full, inv.beta1, gamma)
                };
                MinMovesResult::between(exceptional_lower(inv.beta1), Some(upper))
            }
        }
        EndingCondition::ReturnLargest => {
            if n >= 4 {
                let upper = short
                    .unwrap_or(u64::MAX)
                    .min(pumped_len(ret, inv.beta2, gamma));
                MinMovesResult::between(return_length(n), Some(upper))
            } else if inv.beta2.is_positive() {
                MinMovesResult::exactly(Some(ret))
            } else {
                MinMovesResult::between(pow2(n + 1), Some(pumped_len(ret, inv.beta2, gamma)))
            }
        }
        EndingCondition::ReturnSmallest => {
            if ineq[4] {
                MinMovesResult::exactly(Some(7))
            } else if three_return.is_positive() {
                MinMovesResult::exactly(Some(15))
            } else {
                MinMovesResult::between(16, Some(pumped_len(15, three_return, gamma)))
            }
        }
        EndingCondition::AnyLargest => {
            if inv.beta3.is_positive() {
                MinMovesResult::exactly(Some(full))
            } else {
                let upper = to_other(&w)
                    .min(pumped_len(ret, inv.beta2, gamma))
                    .min(short.unwrap_or(u64::MAX));
                MinMovesResult::between(exceptional_lower(inv.beta3), Some(upper))
            }
        }
        EndingCondition::AnySmallest => {
            let upper = [
                small_return,
                Some(pumped_len(15, three_return, gamma)),
                Some(to_other(&w)),
            ]
            .into_iter()
            .flatten()
            .min();
            let unpumped =
                small_return.is_some() || three_return.is_positive() || inv.beta3.is_positive();
            MinMovesResult::between(if unpumped { 7 } else { 8 }, upper)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64, c: i64) -> Weights {
        Weights::from_ints(a, b, c)
    }

    fn cfg(n: u8, l: u8, ec: u8) -> GameConfig {
        GameConfig::new(n, l, EndingCondition::from_number(ec).unwrap()).unwrap()
    }

    #[test]
    fn transfer_score_values() {
        assert_eq!(delta_minimal_13(5, &w(1, 2, 3)), int(2));
        assert_eq!(delta_minimal_13(4, &w(1, 2, 3)), int(2));
        assert_eq!(delta_minimal_11(3, &w(1, 1, 1)), int(1));
        assert_eq!(delta_minimal_11(2, &w(1, 2, 3)), int(0));
    }

    #[test]
    fn invariants_examples() {
        let i = invariants_of(3, &w(1, 2, 3));
        assert_eq!(
            (i.beta1, i.beta2, i.beta3, i.gamma),
            (int(2), int(6), int(2), int(3))
        );
        assert_eq!(invariants_of(3, &w(4, 4, 4)).gamma, int(0));
        let i = invariants_of(4, &w(1, 2, 3));
        assert_eq!((i.beta1, i.beta2), (int(2), int(0)));
    }

    #[test]
    fn normal_table() {
        assert_eq!(
            min_moves_normal(&cfg(3, 3, 2)),
            MinMovesResult::exactly(Some(15))
        );
        assert_eq!(
            min_moves_normal(&cfg(2, 5, 5)),
            MinMovesResult::exactly(Some(3))
        );
        assert_eq!(
            min_moves_normal(&cfg(3, 4, 1)),
            MinMovesResult::exactly(None)
        );
        assert_eq!(normal_verdict(&cfg(3, 4, 1)).outcome, Outcome::Draw);
        assert_eq!(normal_verdict(&cfg(2, 4, 4)).outcome, Outcome::FirstWin);
        assert_eq!(normal_verdict(&cfg(4, 3, 1)).certificate.unwrap().len(), 15);
    }

    #[test]
    fn scoring_examples() {
        let v = scoring_verdict(&cfg(2, 3, 1), &w(1, 1, 1)).unwrap();
        assert_eq!(v.outcome, Outcome::FirstWin);
        assert_eq!(v.predicted_delta, Some(int(1)));
        assert_eq!(
            scoring_verdict(&cfg(3, 3, 4), &w(-1, -1, -1))
                .unwrap()
                .outcome,
            Outcome::Draw
        );
        assert_eq!(
            scoring_verdict(&cfg(1, 3, 1), &w(5, 0, -2))
                .unwrap()
                .outcome,
            Outcome::Tie
        );
        assert_eq!(
            scoring_verdict(&cfg(2, 3, 1), &w(0, 0, 0)).unwrap().outcome,
            Outcome::Draw
        );
    }

    #[test]
    fn scoring_bounds_examples() {
        assert_eq!(
            min_moves_scoring(&cfg(3, 3, 1), &w(1, 2, 3)).unwrap(),
            MinMovesResult::exactly(Some(7))
        );
        assert_eq!(
            min_moves_scoring(&cfg(2, 3, 2), &w(2, 2, 1)).unwrap(),
            MinMovesResult::exactly(Some(7))
        );
        let b = min_moves_scoring(&cfg(3, 3, 1), &w(0, -4, 0)).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (Some(8), Some(23), false));
    }
}
