//! Explicit move sequences for the three-peg game.
//!
//! Every sequence here is built so that the first player moves the smallest disk
//! on each odd ply, which leaves the second player exactly one legal reply on
//! each even ply. All constructions start from a tower on peg 1 unless a start
//! peg is passed explicitly; other boards are handled by relabelling pegs.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::game::{Disk, EndingCondition, GameConfig, GameError, GameState, Move, Peg, Position};
use crate::notation::{parse, replay, replay_moves, SeqExpr};
use crate::score::{floor_int, format_rational, Rational, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("target position is a complete tower, not an intermediate position")]
    NotIntermediate,
    #[error("all weights are equal; no score pump exists")]
    AllWeightsEqual,
    #[error("no even-length route to the pump position")]
    Unreachable,
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A row of the two-disk table: a sequence from the tower on peg 1 to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub sequence: &'static str,
    pub target: Position,
    pub moves: u64,
}

/// `(sequence, [peg of disk 1, peg of disk 2], length)`
const TWO_DISK_ROWS: [(&str, [Peg; 2], u64); 9] = [
    ("13-12-13-23-12-13-12", [1, 1], 7),
    ("12", [2, 1], 1),
    ("13", [3, 1], 1),
    ("13-12-13", [1, 2], 3),
    ("13-12-23", [2, 2], 3),
    ("12-13-12-23-13", [3, 2], 5),
    ("12-13-12", [1, 3], 3),
    ("13-12-13-23-12", [2, 3], 5),
    ("12-13-23", [3, 3], 3),
];

/// Odd-length routes from the two-disk tower on peg 1 to all nine positions.
pub fn table_one() -> Vec<TableRow> {
    TWO_DISK_ROWS
        .iter()
        .map(|(seq, pegs, moves)| TableRow {
            sequence: seq,
            target: Position::new(pegs.to_vec()),
            moves: *moves,
        })
        .collect()
}

fn seq(text: &str) -> SeqExpr {
    parse(text, 3).expect("built-in sequence parses")
}

fn third(a: Peg, b: Peg) -> Peg {
    6 - a - b
}

/// Permutation (indexed by canonical peg) sending 1 to `first`, 3 to `last`.
pub fn peg_map(first: Peg, last: Peg) -> [Peg; 4] {
    [0, first, third(first, last), last]
}

fn inverse(perm: &[Peg; 4]) -> [Peg; 4] {
    let mut inv = [0; 4];
    for p in 1..=3u8 {
        inv[perm[p as usize] as usize] = p;
    }
    inv
}

fn check_three_pegs(pos: &Position) -> Result<(), ConstructError> {
    if pos.pegs().any(|p| !(1..=3).contains(&p)) {
        return Err(ConstructError::Unsupported(
            "constructions use three pegs".into(),
        ));
    }
    Ok(())
}

/// Odd-length route from the tower on peg 1 to any position.
pub fn odd_transfer(target: &Position) -> Result<SeqExpr, ConstructError> {
    odd_transfer_from(1, target)
}

/// Odd-length route from the tower on `start` to `target`, by induction on the
/// largest disk: if it must move, park the rest on the third peg first.
pub fn odd_transfer_from(start: Peg, target: &Position) -> Result<SeqExpr, ConstructError> {
    let n = target.disks();
    if n < 2 {
        return Err(ConstructError::Unsupported(
            "odd transfers need at least two disks".into(),
        ));
    }
    if !(1..=3).contains(&start) {
        return Err(ConstructError::Unsupported(
            "start peg outside 1..=3".into(),
        ));
    }
    check_three_pegs(target)?;
    Ok(odd_rec(start, target.as_slice()))
}

fn odd_rec(start: Peg, target: &[Peg]) -> SeqExpr {
    let n = target.len();
    if n == 2 {
        let perm = peg_map(start, if start == 3 { 2 } else { 3 });
        let inv = inverse(&perm);
        let canon = [inv[target[0] as usize], inv[target[1] as usize]];
        let row = TWO_DISK_ROWS
            .iter()
            .find(|(_, pegs, _)| *pegs == canon)
            .expect("every two-disk position has a row");
        return seq(row.0).relabelled(&perm);
    }
    let largest = target[n - 1];
    let rest = &target[..n - 1];
    if largest == start {
        return odd_rec(start, rest);
    }
    let spare = third(start, largest);
    SeqExpr::concat([
        odd_rec(start, &vec![spare; n - 1]),
        SeqExpr::atom(start, largest),
        odd_rec(spare, rest),
    ])
}

/// Even-length route from the tower on peg 1 to an intermediate position.
pub fn even_transfer(target: &Position) -> Result<SeqExpr, ConstructError> {
    even_transfer_from(1, target)
}

/// Reaches `target` with the smallest off-peg disk displaced, then moves it home.
pub fn even_transfer_from(start: Peg, target: &Position) -> Result<SeqExpr, ConstructError> {
    check_three_pegs(target)?;
    if target.disks() < 2 {
        return Err(ConstructError::Unsupported(
            "even transfers need at least two disks".into(),
        ));
    }
    let small_peg = target.peg_of(1);
    let qd = (2..=target.disks())
        .find(|&d| target.peg_of(d) != small_peg)
        .ok_or(ConstructError::NotIntermediate)?;
    let home = target.peg_of(qd);
    let away = third(small_peg, home);
    let mut displaced = target.clone();
    displaced.set(qd, away);
    Ok(SeqExpr::concat([
        odd_transfer_from(start, &displaced)?,
        SeqExpr::atom(away, home),
    ]))
}

/// The classical `2^n - 1` move transfer.
pub fn minimal_transfer(n: u8, from: Peg, to: Peg) -> SeqExpr {
    match n {
        0 => SeqExpr::Concat(Vec::new()),
        1 => SeqExpr::atom(from, to),
        _ => {
            let via = third(from, to);
            SeqExpr::concat([
                minimal_transfer(n - 1, from, via),
                SeqExpr::atom(from, to),
                minimal_transfer(n - 1, via, to),
            ])
        }
    }
}

/// The two `2^(n+1) - 1` move algorithms that take the tower off peg 1 and back,
/// moving the largest disk. Variant 1 moves the largest disk three times,
/// variant 2 twice (returning the smaller disks in place in the middle).
pub fn return_transfer(n: u8, variant: u8) -> Result<SeqExpr, ConstructError> {
    if n < 2 {
        return Err(ConstructError::Unsupported(
            "returning a tower needs two disks".into(),
        ));
    }
    if !(1..=2).contains(&variant) {
        return Err(ConstructError::Unsupported(format!(
            "no return variant {variant}"
        )));
    }
    Ok(return_rec(n, variant))
}

fn return_rec(n: u8, variant: u8) -> SeqExpr {
    if n == 2 {
        return seq(if variant == 1 {
            "12-13-12-23-13-12-13"
        } else {
            "13-12-13-23-12-13-12"
        });
    }
    let m = n - 1;
    if variant == 1 {
        SeqExpr::concat([
            minimal_transfer(m, 1, 3),
            SeqExpr::atom(1, 2),
            minimal_transfer(m, 3, 1),
            SeqExpr::atom(2, 3),
            minimal_transfer(m, 1, 2),
            SeqExpr::atom(3, 1),
            minimal_transfer(m, 2, 1),
        ])
    } else {
        SeqExpr::concat([
            minimal_transfer(m, 1, 3),
            SeqExpr::atom(1, 2),
            return_rec(m, variant).relabelled(&[0, 3, 2, 1]),
            SeqExpr::atom(2, 1),
            minimal_transfer(m, 3, 1),
        ])
    }
}

/// Shortest return of the tower to peg 1 with the largest disk moved, for
/// `n >= 3`: `2^n + 7` moves. The largest disk steps to peg 2 (peg 3 when
/// `mirrored`) and straight back while the two smallest disks of the parked
/// tower circle once around it.
pub fn short_return(n: u8, mirrored: bool) -> Result<SeqExpr, ConstructError> {
    if n < 3 {
        return Err(ConstructError::Unsupported(
            "the short return needs three disks".into(),
        ));
    }
    let m = n - 1;
    let seq = SeqExpr::concat([
        minimal_transfer(m, 1, 3),
        SeqExpr::atom(1, 2),
        seq(TWO_DISK_ROWS[0].0).relabelled(&[0, 3, 1, 2]),
        SeqExpr::atom(2, 1),
        minimal_transfer(m, 3, 1),
    ]);
    Ok(if mirrored {
        seq.relabelled(&[0, 1, 3, 2])
    } else {
        seq
    })
}

/// The six two-disk families that end the game after `k` score-neutral cycles.
pub fn two_disk_family(case: u8, k: u64) -> Result<SeqExpr, ConstructError> {
    let a = || seq("13-12-23");
    let b = || seq("12-13-23");
    let parts = match case {
        1 => vec![
            SeqExpr::atom(1, 2),
            SeqExpr::repeat(a(), 2 * k),
            seq("13-23"),
        ],
        2 => vec![
            SeqExpr::atom(1, 3),
            SeqExpr::repeat(b(), 2 * k + 1),
            SeqExpr::atom(1, 3),
        ],
        3 => vec![
            SeqExpr::atom(1, 2),
            SeqExpr::repeat(a(), 2 * k + 1),
            SeqExpr::atom(1, 2),
        ],
        4 => vec![
            SeqExpr::atom(1, 3),
            SeqExpr::repeat(b(), 2 * k),
            seq("12-23"),
        ],
        5 => vec![
            SeqExpr::atom(1, 2),
            SeqExpr::repeat(a(), 2 * k + 1),
            seq("13-12-13"),
        ],
        6 => vec![
            SeqExpr::atom(1, 3),
            SeqExpr::repeat(b(), 2 * k + 1),
            seq("12-13-12"),
        ],
        _ => {
            return Err(ConstructError::Unsupported(format!(
                "no two-disk family {case}"
            )))
        }
    };
    Ok(SeqExpr::concat(parts))
}

/// Sixteen moves that return to a pump position with the score difference raised
/// by `2(w_ik + w_jk - 2 w_ij)`: the two smallest disks sit on `k` and the
/// smallest disk on `i` or `j` sits on `i`.
pub fn score_pump(i: Peg, j: Peg, k: Peg, variant: u8) -> Result<SeqExpr, ConstructError> {
    let mut pegs = [i, j, k];
    pegs.sort_unstable();
    if pegs != [1, 2, 3] {
        return Err(ConstructError::Unsupported(
            "pump pegs must be a permutation of 1, 2, 3".into(),
        ));
    }
    let (ik, jk, ij) = (
        SeqExpr::atom(i, k),
        SeqExpr::atom(j, k),
        SeqExpr::atom(i, j),
    );
    let body = match variant {
        1 => vec![
            ik.clone(),
            jk.clone(),
            ik.clone(),
            ij.clone(),
            jk.clone(),
            ik,
            jk,
            ij,
        ],
        2 => vec![
            jk.clone(),
            ik.clone(),
            jk.clone(),
            ij.clone(),
            ik.clone(),
            jk,
            ik,
            ij,
        ],
        _ => {
            return Err(ConstructError::Unsupported(format!(
                "no pump variant {variant}"
            )))
        }
    };
    Ok(SeqExpr::repeat(SeqExpr::Concat(body), 2))
}

pub fn pump_increment(w: &Weights, i: Peg, j: Peg, k: Peg) -> Rational {
    Rational::from_integer(2)
        * (w.edge(i, k) + w.edge(j, k) - Rational::from_integer(2) * w.edge(i, j))
}

/// Orientation `(i, j)` of the pump for edge pair `{a, b}` around `k`, if `pos`
/// is a pump position for it.
pub fn pump_orientation(pos: &Position, a: Peg, b: Peg, k: Peg) -> Option<(Peg, Peg)> {
    if pos.disks() < 3 || pos.peg_of(1) != k || pos.peg_of(2) != k {
        return None;
    }
    let qd = (3..=pos.disks()).find(|&d| pos.peg_of(d) != k)?;
    let i = pos.peg_of(qd);
    Some((i, if i == a { b } else { a }))
}

/// Pump cycles needed to lift `base` above zero.
pub fn pump_count(base: Rational, increment: Rational) -> u64 {
    if base.is_positive() {
        0
    } else {
        (floor_int(&(-base / increment)) + 1) as u64
    }
}

/// Edges `{i, j}` of minimal weight with `k` the remaining peg, lexicographic.
pub fn cheapest_edges(w: &Weights) -> Vec<(Peg, Peg, Peg)> {
    let m = w.min();
    [(1, 2, 3), (1, 3, 2), (2, 3, 1)]
        .into_iter()
        .filter(|&(i, j, _)| w.edge(i, j) == m)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyPlan {
    /// Even-length route from the start to the pump position.
    pub s1: SeqExpr,
    /// Odd-length route from the pump position to the final tower.
    pub s2_inv: SeqExpr,
    pub s3: SeqExpr,
    pub lambda: u64,
    /// Score difference of `s1` followed by `s2_inv`.
    pub base_delta: Rational,
    /// Gain of one pass through `s3`.
    pub increment: Rational,
    pub intermediate: Position,
    pub pump_pegs: (Peg, Peg, Peg),
    pub final_peg: Peg,
    pub full: SeqExpr,
    pub predicted_delta: Rational,
}

impl StrategyPlan {
    pub fn to_json(&self) -> Value {
        json!({
            "s1": self.s1.to_string(),
            "s3": self.s3.to_string(),
            "lambda": self.lambda,
            "s2_inv": self.s2_inv.to_string(),
            "base_delta": format_rational(&self.base_delta),
            "increment": format_rational(&self.increment),
            "intermediate": self.intermediate.to_string(),
            "pump_pegs": [self.pump_pegs.0, self.pump_pegs.1, self.pump_pegs.2],
            "final_peg": self.final_peg,
            "moves": self.full.len(),
            "predicted_delta": format_rational(&self.predicted_delta),
        })
    }
}

/// Peg that receives the tower when the strategy finishes.
fn strategy_final_peg(cfg: &GameConfig) -> Peg {
    match cfg.ending() {
        EndingCondition::ToPeg => cfg.final_peg(),
        EndingCondition::ReturnLargest | EndingCondition::ReturnSmallest => cfg.start_peg(),
        EndingCondition::AnyLargest | EndingCondition::AnySmallest => {
            if cfg.final_peg() != cfg.start_peg() && (1..=3).contains(&cfg.final_peg()) {
                cfg.final_peg()
            } else {
                (1..=3).find(|&p| p != cfg.start_peg()).unwrap()
            }
        }
    }
}

fn check_scoring_board(cfg: &GameConfig) -> Result<(), ConstructError> {
    if cfg.pegs() != 3 {
        return Err(ConstructError::Unsupported(
            "scoring strategies are for three pegs".into(),
        ));
    }
    if cfg.disks() < 3 {
        return Err(ConstructError::Unsupported(
            "scoring strategies need three or more disks".into(),
        ));
    }
    Ok(())
}

/// Pump position: disks 1 and 2 on `k`, disk 3 on `i`, the rest on `i` (or on
/// `j` when the largest disk would otherwise never leave the start peg).
fn pump_position(n: u8, i: Peg, j: Peg, k: Peg, start: Peg, needs_largest: bool) -> Position {
    let mut pegs = vec![k, k, i];
    let deep = if needs_largest && i == start && n >= 4 {
        j
    } else {
        i
    };
    pegs.extend(std::iter::repeat_n(deep, n as usize - 3));
    Position::new(pegs)
}

/// Winning plan `s1 · s3^λ · s2⁻¹` from the initial tower.
pub fn scoring_strategy(cfg: &GameConfig, w: &Weights) -> Result<StrategyPlan, ConstructError> {
    check_scoring_board(cfg)?;
    if w.all_equal() {
        return Err(ConstructError::AllWeightsEqual);
    }
    let (i, j, k) = cheapest_edges(w)[0];
    let fin = strategy_final_peg(cfg);
    let needs_largest = cfg.ending() == EndingCondition::ReturnLargest;
    let target = pump_position(cfg.disks(), i, j, k, cfg.start_peg(), needs_largest);
    let s1 = even_transfer_from(cfg.start_peg(), &target)?;
    build_plan(cfg, &cfg.initial_state(), w, s1, target, (i, j, k), fin)
}

/// Winning plan from an arbitrary state, provided the previous player did not
/// move the smallest disk. The route to the pump position comes from a
/// breadth-first search over the first player's choices.
pub fn scoring_strategy_from(
    cfg: &GameConfig,
    start: &GameState,
    w: &Weights,
) -> Result<StrategyPlan, ConstructError> {
    check_scoring_board(cfg)?;
    cfg.validate_state(start)?;
    if w.all_equal() {
        return Err(ConstructError::AllWeightsEqual);
    }
    if start.last_moved == Some(1) {
        return Err(ConstructError::Unsupported(
            "the previous player moved the smallest disk".into(),
        ));
    }
    let (i, j, k) = cheapest_edges(w)[0];
    let fin = strategy_final_peg(cfg);
    let needs_largest = cfg.ending() == EndingCondition::ReturnLargest && !start.largest_moved;
    let target = pump_position(cfg.disks(), i, j, k, cfg.start_peg(), needs_largest);
    let route = even_route(cfg, start, &target).ok_or(ConstructError::Unreachable)?;
    build_plan(
        cfg,
        start,
        w,
        SeqExpr::from_moves(&route),
        target,
        (i, j, k),
        fin,
    )
}

fn build_plan(
    cfg: &GameConfig,
    start: &GameState,
    w: &Weights,
    s1: SeqExpr,
    target: Position,
    (i, j, k): (Peg, Peg, Peg),
    fin: Peg,
) -> Result<StrategyPlan, ConstructError> {
    let s2_inv = odd_transfer_from(fin, &target)?.reversed();
    let base = SeqExpr::concat([s1.clone(), s2_inv.clone()]);
    let report = replay(cfg, start, &base, Some(w));
    if !report.legal || !report.terminal {
        return Err(ConstructError::Unsupported(format!(
            "base route is not a finished game (failed at ply {:?})",
            report.failed_at
        )));
    }
    let s3 = score_pump(i, j, k, 1)?;
    let increment = pump_increment(w, i, j, k);
    let lambda = pump_count(report.delta, increment);
    let full = if lambda == 0 {
        base
    } else {
        SeqExpr::concat([
            s1.clone(),
            SeqExpr::repeat(s3.clone(), lambda),
            s2_inv.clone(),
        ])
    };
    Ok(StrategyPlan {
        s1,
        s2_inv,
        s3,
        lambda,
        base_delta: report.delta,
        increment,
        intermediate: target,
        pump_pegs: (i, j, k),
        final_peg: fin,
        predicted_delta: report.delta + increment * Rational::from_integer(lambda as i64),
        full,
    })
}

/// Even-length forced route to `target`: each step is a smallest-disk move and
/// the unique reply.
fn even_route(cfg: &GameConfig, start: &GameState, target: &Position) -> Option<Vec<Move>> {
    let mut prev: HashMap<u64, (u64, Move, Move)> = HashMap::new();
    let start_idx = cfg.state_index(start);
    let mut queue = VecDeque::from([start.clone()]);
    let mut seen = std::collections::HashSet::from([start_idx]);
    let mut found = None;
    while let Some(s) = queue.pop_front() {
        if s.pos == *target {
            found = Some(cfg.state_index(&s));
            break;
        }
        let small_peg = s.pos.peg_of(1);
        for to in 1..=3 {
            let first = Move::new(small_peg, to);
            if to == small_peg || !cfg.is_legal(&s, first) {
                continue;
            }
            let mid = s.play(first);
            if cfg.is_terminal(&mid) {
                continue;
            }
            let replies = cfg.legal_moves(&mid);
            if replies.len() != 1 {
                continue;
            }
            let next = mid.play(replies[0]);
            if cfg.is_terminal(&next) {
                continue;
            }
            let idx = cfg.state_index(&next);
            if seen.insert(idx) {
                prev.insert(idx, (cfg.state_index(&s), first, replies[0]));
                queue.push_back(next);
            }
        }
    }
    let mut at = found?;
    let mut moves = Vec::new();
    while at != start_idx {
        let (p, a, b) = prev[&at];
        moves.push(b);
        moves.push(a);
        at = p;
    }
    moves.reverse();
    Some(moves)
}

/// Which branch of the three-disk exceptions a sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalCase {
    /// `w12` is the cheapest edge.
    Ec1I,
    /// `w23` is the cheapest edge.
    Ec1Ii,
}

/// Three-disk transfers from peg 1 to peg 3 that pass through a pump position
/// the minimal algorithm never visits. Variant 1 has 11 moves and scores
/// `2(w12 + w23) - 3 w13`; variant 2 has 13 moves and scores `w13`.
pub fn exceptional_n3_sequences(
    case: ExceptionalCase,
    variant: u8,
) -> Result<SeqExpr, ConstructError> {
    let (s1, s2_inv) = match (case, variant) {
        (ExceptionalCase::Ec1I, 1) => ("12-13-23-12", "23-13-12-23-12-13-23"),
        (ExceptionalCase::Ec1I, 2) => ("13-12-13-23-13-12", "23-13-12-23-12-13-23"),
        (ExceptionalCase::Ec1Ii, 1) => ("12-13-23-12-23-13-12-23", "12-13-23"),
        (ExceptionalCase::Ec1Ii, 2) => ("12-13-23-12-13-23-13-12-13-23", "12-13-23"),
        _ => {
            return Err(ConstructError::Unsupported(format!(
                "no exceptional variant {variant}"
            )))
        }
    };
    Ok(SeqExpr::concat([seq(s1), seq(s2_inv)]))
}

/// A finished winning line together with its score difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub label: String,
    pub seq: SeqExpr,
    pub delta: Rational,
}

/// Base routes (each a finished game on the canonical board: start 1, EC1 final 3).
fn scoring_bases(n: u8, ending: EndingCondition) -> Vec<(String, SeqExpr)> {
    let swap23 = [0, 1, 3, 2];
    let mut out: Vec<(String, SeqExpr)> = Vec::new();
    let to_other = |out: &mut Vec<(String, SeqExpr)>, both: bool| {
        out.push(("minimal 1->3".into(), minimal_transfer(n, 1, 3)));
        if both {
            out.push(("minimal 1->2".into(), minimal_transfer(n, 1, 2)));
        }
        if n == 3 {
            for case in [ExceptionalCase::Ec1I, ExceptionalCase::Ec1Ii] {
                for v in 1..=2 {
                    let s = exceptional_n3_sequences(case, v).unwrap();
                    if both {
                        out.push((
                            format!("exceptional {case:?}/{v} to 2"),
                            s.relabelled(&swap23),
                        ));
                    }
                    out.push((format!("exceptional {case:?}/{v} to 3"), s));
                }
            }
        }
    };
    let returns = |out: &mut Vec<(String, SeqExpr)>, disks: u8| {
        for v in 1..=2 {
            let s = return_transfer(disks, v).unwrap();
            out.push((format!("{disks}-disk return v{v}"), s.clone()));
            out.push((
                format!("{disks}-disk return v{v} mirrored"),
                s.relabelled(&swap23),
            ));
        }
        if disks >= 4 {
            for mirrored in [false, true] {
                let tag = if mirrored { " mirrored" } else { "" };
                out.push((
                    format!("{disks}-disk short return{tag}"),
                    short_return(disks, mirrored).unwrap(),
                ));
            }
        }
    };
    match ending {
        EndingCondition::ToPeg => to_other(&mut out, false),
        EndingCondition::ReturnLargest => returns(&mut out, n),
        EndingCondition::ReturnSmallest => {
            returns(&mut out, 2);
            returns(&mut out, 3);
        }
        EndingCondition::AnyLargest => {
            to_other(&mut out, true);
            returns(&mut out, n);
        }
        EndingCondition::AnySmallest => {
            to_other(&mut out, true);
            returns(&mut out, 2);
            returns(&mut out, 3);
        }
    }
    out
}

/// Turns a finished route into a win by splicing pump cycles in at the first
/// even ply that reaches a pump position for a cheapest edge pair.
fn pumped(cfg: &GameConfig, w: &Weights, base: &SeqExpr) -> Option<(SeqExpr, Rational)> {
    let atoms = base.expand();
    let report = replay_moves(cfg, &cfg.initial_state(), &atoms, Some(w));
    if !report.legal || !report.terminal {
        return None;
    }
    if report.delta.is_positive() {
        return Some((base.clone(), report.delta));
    }
    if w.all_equal() {
        return None;
    }
    let pairs = cheapest_edges(w);
    let mut state = cfg.initial_state();
    for (t, atom) in atoms.iter().enumerate() {
        if t % 2 == 0 && t > 0 {
            for &(a, b, k) in &pairs {
                if let Some((i, j)) = pump_orientation(&state.pos, a, b, k) {
                    let increment = pump_increment(w, i, j, k);
                    let lambda = pump_count(report.delta, increment);
                    let pump = score_pump(i, j, k, 1).ok()?;
                    let spliced = SeqExpr::concat([
                        SeqExpr::from_moves(&atoms[..t]),
                        SeqExpr::repeat(pump, lambda),
                        SeqExpr::from_moves(&atoms[t..]),
                    ]);
                    return Some((
                        spliced,
                        report.delta + increment * Rational::from_integer(lambda as i64),
                    ));
                }
            }
        }
        let mv = cfg.resolve_edge(&state, atom.from, atom.to)?;
        state = state.play(mv);
    }
    None
}

/// Shortest winning line among the known constructions for three or more disks
/// and weights that are not all equal.
pub fn scoring_certificate(cfg: &GameConfig, w: &Weights) -> Result<Certificate, ConstructError> {
    check_scoring_board(cfg)?;
    if w.all_equal() {
        return Err(ConstructError::AllWeightsEqual);
    }
    let (perm, canon_cfg) = canonical_board(cfg)?;
    let canon_w = w.relabelled(&perm);
    let mut best: Option<Certificate> = None;
    for (label, base) in scoring_bases(cfg.disks(), cfg.ending()) {
        if let Some((s, delta)) = pumped(&canon_cfg, &canon_w, &base) {
            if best.as_ref().is_none_or(|b| s.len() < b.seq.len()) {
                best = Some(Certificate {
                    label,
                    seq: s,
                    delta,
                });
            }
        }
    }
    let plan = scoring_strategy(&canon_cfg, &canon_w)?;
    if best
        .as_ref()
        .is_none_or(|b| plan.full.len() < b.seq.len())
    {
        best = Some(Certificate {
            label: "pump strategy".into(),
            seq: plan.full,
            delta: plan.predicted_delta,
        });
    }
    let best = best.expect("the pump strategy always yields a line");
    Ok(Certificate {
        seq: best.seq.relabelled(&perm),
        ..best
    })
}

/// Relabelling that maps the canonical board (start 1, EC1 final 3) onto `cfg`.
pub fn canonical_board(cfg: &GameConfig) -> Result<([Peg; 4], GameConfig), ConstructError> {
    if cfg.pegs() != 3 {
        return Err(ConstructError::Unsupported("three pegs only".into()));
    }
    let last = if cfg.ending() == EndingCondition::ToPeg {
        cfg.final_peg()
    } else {
        (1..=3).rev().find(|&p| p != cfg.start_peg()).unwrap()
    };
    let perm = peg_map(cfg.start_peg(), last);
    let canon = GameConfig::new(cfg.disks(), 3, cfg.ending())?;
    Ok((perm, canon))
}

/// Disk moved on each ply of a replay, for tests and diagnostics.
pub fn disks_moved(cfg: &GameConfig, start: &GameState, expr: &SeqExpr) -> Vec<Disk> {
    let mut state = start.clone();
    let mut out = Vec::new();
    for atom in expr.expand() {
        let Some(mv) = cfg.resolve_edge(&state, atom.from, atom.to) else {
            break;
        };
        out.push(state.pos.top(mv.from).unwrap());
        state = state.play(mv);
    }
    out
}

/// `true` when every weight is zero; pump arithmetic then has nothing to add.
pub fn weights_trivial(w: &Weights) -> bool {
    w.w12.is_zero() && w.w13.is_zero() && w.w23.is_zero()
}
