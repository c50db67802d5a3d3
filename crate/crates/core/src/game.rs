//! Positions, game states and the move rules of the two-player Tower of Hanoi.
//!
//! Disk 1 is the smallest and pegs are numbered from 1. A position only records
//! which peg every disk sits on; the stacking order is forced by disk size.
//! A game state adds the disk moved on the previous turn (which the current
//! player may not move) and whether the largest and smallest disks have moved.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Peg = u8;
pub type Disk = u8;

pub const MAX_PEGS: u8 = 16;
pub const MAX_DISKS: u8 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("ending condition {ending} is not applicable with {disks} disk(s)")]
    InapplicableEnding { ending: EndingCondition, disks: u8 },
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: &'static str },
    #[error("state index {index} out of range (size {size})")]
    IndexOutOfRange { index: u64, size: u64 },
    #[error("malformed state text `{text}`: {reason}")]
    StateText { text: String, reason: String },
}

/// Where the completed tower must end up for the game to finish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndingCondition {
    /// EC1: a given peg distinct from the starting peg.
    ToPeg,
    /// EC2: the starting peg, after the largest disk has moved.
    ReturnLargest,
    /// EC3: the starting peg, after the smallest disk has moved.
    ReturnSmallest,
    /// EC4: any peg, after the largest disk has moved.
    AnyLargest,
    /// EC5: any peg, after the smallest disk has moved.
    AnySmallest,
}

impl EndingCondition {
    pub const ALL: [EndingCondition; 5] = [
        EndingCondition::ToPeg,
        EndingCondition::ReturnLargest,
        EndingCondition::ReturnSmallest,
        EndingCondition::AnyLargest,
        EndingCondition::AnySmallest,
    ];

    pub fn number(self) -> u8 {
        match self {
            EndingCondition::ToPeg => 1,
            EndingCondition::ReturnLargest => 2,
            EndingCondition::ReturnSmallest => 3,
            EndingCondition::AnyLargest => 4,
            EndingCondition::AnySmallest => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        EndingCondition::ALL
            .get(n.checked_sub(1)? as usize)
            .copied()
    }

    pub fn alias(self) -> &'static str {
        match self {
            EndingCondition::ToPeg => "to-peg",
            EndingCondition::ReturnLargest => "return-largest",
            EndingCondition::ReturnSmallest => "return-smallest",
            EndingCondition::AnyLargest => "any-largest",
            EndingCondition::AnySmallest => "any-smallest",
        }
    }

    /// EC2 and EC3 need two disks: a lone disk can never be put back on the start peg.
    pub fn applicable(self, disks: u8) -> bool {
        !matches!(
            self,
            EndingCondition::ReturnLargest | EndingCondition::ReturnSmallest
        ) || disks >= 2
    }
}

impl fmt::Display for EndingCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EC{}", self.number())
    }
}

impl FromStr for EndingCondition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let digits = t.strip_prefix("ec").unwrap_or(&t);
        if let Ok(n) = digits.parse::<u8>() {
            return EndingCondition::from_number(n)
                .ok_or_else(|| format!("no ending condition {n}"));
        }
        EndingCondition::ALL
            .into_iter()
            .find(|ec| ec.alias() == t)
            .ok_or_else(|| format!("unknown ending condition `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    disks: u8,
    pegs: u8,
    ending: EndingCondition,
    start_peg: Peg,
    final_peg: Peg,
}

impl GameConfig {
    /// Start peg 1 and, for EC1, final peg 3.
    pub fn new(disks: u8, pegs: u8, ending: EndingCondition) -> Result<Self, GameError> {
        GameConfig::with_pegs(disks, pegs, ending, 1, 3)
    }

    pub fn with_pegs(
        disks: u8,
        pegs: u8,
        ending: EndingCondition,
        start_peg: Peg,
        final_peg: Peg,
    ) -> Result<Self, GameError> {
        if disks == 0 || disks > MAX_DISKS {
            return Err(GameError::InvalidConfig(format!(
                "disk count {disks} outside 1..={MAX_DISKS}"
            )));
        }
        if !(3..=MAX_PEGS).contains(&pegs) {
            return Err(GameError::InvalidConfig(format!(
                "peg count {pegs} outside 3..={MAX_PEGS}"
            )));
        }
        if !(1..=pegs).contains(&start_peg) {
            return Err(GameError::InvalidConfig(format!(
                "start peg {start_peg} outside 1..={pegs}"
            )));
        }
        if ending == EndingCondition::ToPeg {
            if !(1..=pegs).contains(&final_peg) {
                return Err(GameError::InvalidConfig(format!(
                    "final peg {final_peg} outside 1..={pegs}"
                )));
            }
            if final_peg == start_peg {
                return Err(GameError::InvalidConfig(
                    "final peg must differ from the start peg".into(),
                ));
            }
        }
        if !ending.applicable(disks) {
            return Err(GameError::InapplicableEnding { ending, disks });
        }
        let cfg = GameConfig {
            disks,
            pegs,
            ending,
            start_peg,
            final_peg,
        };
        if cfg.checked_state_count().is_none() {
            return Err(GameError::InvalidConfig(
                "state space does not fit in 64 bits".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn disks(&self) -> u8 {
        self.disks
    }

    pub fn pegs(&self) -> u8 {
        self.pegs
    }

    pub fn ending(&self) -> EndingCondition {
        self.ending
    }

    pub fn start_peg(&self) -> Peg {
        self.start_peg
    }

    /// Meaningful for EC1 only.
    pub fn final_peg(&self) -> Peg {
        self.final_peg
    }

    fn checked_position_count(&self) -> Option<u64> {
        (self.pegs as u64).checked_pow(self.disks as u32)
    }

    fn checked_state_count(&self) -> Option<u64> {
        self.checked_position_count()?
            .checked_mul(self.disks as u64 + 1)?
            .checked_mul(4)
    }

    /// `l^n`.
    pub fn position_count(&self) -> u64 {
        self.checked_position_count()
            .expect("validated at construction")
    }

    /// `l^n * (n + 1) * 4`.
    pub fn state_count(&self) -> u64 {
        self.checked_state_count()
            .expect("validated at construction")
    }

    pub fn initial_state(&self) -> GameState {
        GameState::new(
            Position::tower(self.disks, self.start_peg),
            None,
            false,
            false,
        )
    }

    /// Whether a completed tower on `peg` with the given flags ends the game.
    pub fn accepts_tower(&self, peg: Peg, largest_moved: bool, smallest_moved: bool) -> bool {
        match self.ending {
            EndingCondition::ToPeg => peg == self.final_peg,
            EndingCondition::ReturnLargest => peg == self.start_peg && largest_moved,
            EndingCondition::ReturnSmallest => peg == self.start_peg && smallest_moved,
            EndingCondition::AnyLargest => largest_moved,
            EndingCondition::AnySmallest => smallest_moved,
        }
    }

    pub fn is_terminal(&self, state: &GameState) -> bool {
        match state.pos.tower_peg() {
            Some(p) => self.accepts_tower(p, state.largest_moved, state.smallest_moved),
            None => false,
        }
    }

    /// Every legal move from `state`, ordered by `(from, to)`.
    pub fn legal_moves(&self, state: &GameState) -> Vec<Move> {
        let mut out = Vec::new();
        self.for_each_legal(state, |m| out.push(m));
        out
    }

    pub fn legal_move_count(&self, state: &GameState) -> usize {
        let mut count = 0;
        self.for_each_legal(state, |_| count += 1);
        count
    }

    fn for_each_legal(&self, state: &GameState, mut f: impl FnMut(Move)) {
        let l = self.pegs as usize;
        let n = self.disks;
        let mut tops = [0u8; MAX_PEGS as usize + 1];
        let mut counts = [0u8; MAX_PEGS as usize + 1];
        for d in (1..=n).rev() {
            let p = state.pos.peg_of(d) as usize;
            tops[p] = d;
            counts[p] += 1;
        }
        for from in 1..=l {
            let d = tops[from];
            if d == 0 || Some(d) == state.last_moved {
                continue;
            }
            for to in 1..=l {
                if to == from || (tops[to] != 0 && tops[to] < d) {
                    continue;
                }
                if counts[to] as usize + 1 == n as usize {
                    let largest = state.largest_moved || d == n;
                    let smallest = state.smallest_moved || d == 1;
                    if !self.accepts_tower(to as Peg, largest, smallest) {
                        continue;
                    }
                }
                f(Move::new(from as Peg, to as Peg));
            }
        }
    }

    pub fn is_legal(&self, state: &GameState, m: Move) -> bool {
        self.legality(state, m).is_ok()
    }

    fn legality(&self, state: &GameState, m: Move) -> Result<Disk, &'static str> {
        let l = self.pegs;
        if m.from == m.to || !(1..=l).contains(&m.from) || !(1..=l).contains(&m.to) {
            return Err("pegs must be distinct and on the board");
        }
        let d = state.pos.top(m.from).ok_or("source peg is empty")?;
        if Some(d) == state.last_moved {
            return Err("disk was moved by the previous player");
        }
        if let Some(t) = state.pos.top(m.to) {
            if t < d {
                return Err("cannot place a larger disk on a smaller one");
            }
        }
        let after = state.play(m);
        if let Some(p) = after.pos.tower_peg() {
            if !self.accepts_tower(p, after.largest_moved, after.smallest_moved) {
                return Err("tower may not be completed there");
            }
        }
        Ok(d)
    }

    /// Applies a legal move.
    pub fn apply(&self, state: &GameState, m: Move) -> Result<GameState, GameError> {
        if self.is_terminal(state) {
            return Err(GameError::IllegalMove {
                mv: m,
                reason: "game already over",
            });
        }
        self.legality(state, m)
            .map_err(|reason| GameError::IllegalMove { mv: m, reason })?;
        Ok(state.play(m))
    }

    /// The only direction in which a disk may travel along edge `{a, b}` by size,
    /// ignoring the previous-move ban and the tower rule.
    pub fn resolve_edge(&self, state: &GameState, a: Peg, b: Peg) -> Option<Move> {
        if a == b || !(1..=self.pegs).contains(&a) || !(1..=self.pegs).contains(&b) {
            return None;
        }
        match (state.pos.top(a), state.pos.top(b)) {
            (None, None) => None,
            (Some(_), None) => Some(Move::new(a, b)),
            (None, Some(_)) => Some(Move::new(b, a)),
            (Some(x), Some(y)) if x < y => Some(Move::new(a, b)),
            _ => Some(Move::new(b, a)),
        }
    }

    pub fn state_index(&self, state: &GameState) -> u64 {
        let pos = state.pos.index(self.pegs);
        let last = state.last_moved.unwrap_or(0) as u64;
        let flags = ((state.largest_moved as u64) << 1) | state.smallest_moved as u64;
        (pos * (self.disks as u64 + 1) + last) * 4 + flags
    }

    pub fn state_decode(&self, index: u64) -> Result<GameState, GameError> {
        let size = self.state_count();
        if index >= size {
            return Err(GameError::IndexOutOfRange { index, size });
        }
        let flags = index % 4;
        let rest = index / 4;
        let last = (rest % (self.disks as u64 + 1)) as u8;
        let pos = rest / (self.disks as u64 + 1);
        Ok(GameState::new(
            Position::from_index(pos, self.disks, self.pegs),
            (last != 0).then_some(last),
            flags & 2 != 0,
            flags & 1 != 0,
        ))
    }

    /// Checks that a state has the right number of disks, pegs in range and a
    /// movable last disk.
    pub fn validate_state(&self, state: &GameState) -> Result<(), GameError> {
        let bad = |reason: &str| GameError::StateText {
            text: state.to_text(self.pegs),
            reason: reason.to_string(),
        };
        if state.pos.disks() != self.disks {
            return Err(bad("disk count does not match the configuration"));
        }
        if state.pos.pegs().any(|p| p == 0 || p > self.pegs) {
            return Err(bad("peg out of range"));
        }
        if let Some(d) = state.last_moved {
            if d == 0 || d > self.disks {
                return Err(bad("last moved disk out of range"));
            }
        }
        Ok(())
    }
}

/// Peg of every disk, disk 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position(Vec<Peg>);

impl Position {
    pub fn new(peg_of: Vec<Peg>) -> Self {
        Position(peg_of)
    }

    pub fn tower(disks: u8, peg: Peg) -> Self {
        Position(vec![peg; disks as usize])
    }

    pub fn disks(&self) -> u8 {
        self.0.len() as u8
    }

    pub fn peg_of(&self, disk: Disk) -> Peg {
        self.0[disk as usize - 1]
    }

    pub fn pegs(&self) -> impl Iterator<Item = Peg> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Peg] {
        &self.0
    }

    pub fn set(&mut self, disk: Disk, peg: Peg) {
        self.0[disk as usize - 1] = peg;
    }

    /// Smallest disk on `peg`.
    pub fn top(&self, peg: Peg) -> Option<Disk> {
        self.0.iter().position(|&p| p == peg).map(|i| i as Disk + 1)
    }

    /// Disks on `peg`, top first.
    pub fn stack(&self, peg: Peg) -> Vec<Disk> {
        (1..=self.disks())
            .filter(|&d| self.peg_of(d) == peg)
            .collect()
    }

    /// The peg holding every disk, if the tower is complete.
    pub fn tower_peg(&self) -> Option<Peg> {
        let first = *self.0.first()?;
        self.0.iter().all(|&p| p == first).then_some(first)
    }

    pub fn occupied_pegs(&self) -> usize {
        let mut seen = [false; MAX_PEGS as usize + 1];
        self.0
            .iter()
            .filter(|&&p| !std::mem::replace(&mut seen[p as usize], true))
            .count()
    }

    pub fn index(&self, pegs: u8) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0u64, |acc, &p| acc * pegs as u64 + (p as u64 - 1))
    }

    pub fn from_index(mut index: u64, disks: u8, pegs: u8) -> Self {
        let mut v = Vec::with_capacity(disks as usize);
        for _ in 0..disks {
            v.push((index % pegs as u64) as Peg + 1);
            index /= pegs as u64;
        }
        Position(v)
    }

    /// Position with pegs renamed: a disk on peg `p` moves to `perm[p]`.
    pub fn relabelled(&self, perm: &[Peg]) -> Position {
        Position(self.0.iter().map(|&p| perm[p as usize]).collect())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub from: Peg,
    pub to: Peg,
}

impl Move {
    pub fn new(from: Peg, to: Peg) -> Self {
        Move { from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// A vertex of the game graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub pos: Position,
    pub last_moved: Option<Disk>,
    pub largest_moved: bool,
    pub smallest_moved: bool,
}

impl GameState {
    pub fn new(
        pos: Position,
        last_moved: Option<Disk>,
        largest_moved: bool,
        smallest_moved: bool,
    ) -> Self {
        GameState {
            pos,
            last_moved,
            largest_moved,
            smallest_moved,
        }
    }

    /// Moves the top disk of `m.from` without any legality check.
    pub fn play(&self, m: Move) -> GameState {
        let d = self.pos.top(m.from).expect("move from an empty peg");
        let mut pos = self.pos.clone();
        pos.set(d, m.to);
        GameState {
            pos,
            last_moved: Some(d),
            largest_moved: self.largest_moved || d == self.pos.disks(),
            smallest_moved: self.smallest_moved || d == 1,
        }
    }

    /// `pegs=l;disks=n;pos=p1,...,pn;last=d|-;flags=LS`
    pub fn to_text(&self, pegs: u8) -> String {
        let pos: Vec<String> = self.pos.pegs().map(|p| p.to_string()).collect();
        format!(
            "pegs={};disks={};pos={};last={};flags={}{}",
            pegs,
            self.pos.disks(),
            pos.join(","),
            self.last_moved
                .map_or_else(|| "-".to_string(), |d| d.to_string()),
            self.largest_moved as u8,
            self.smallest_moved as u8
        )
    }

    /// Parses the text form, returning the peg count alongside the state.
    pub fn from_text(text: &str) -> Result<(u8, GameState), GameError> {
        let bad = |reason: &str| GameError::StateText {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = text.trim().split(';').collect();
        let keys = ["pegs", "disks", "pos", "last", "flags"];
        if fields.len() != keys.len() {
            return Err(bad("expected five `;`-separated fields"));
        }
        let mut values = Vec::with_capacity(5);
        for (field, key) in fields.iter().zip(keys) {
            let value = field
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(&format!("expected field `{key}=`")))?;
            values.push(value);
        }
        let pegs: u8 = values[0].parse().map_err(|_| bad("bad peg count"))?;
        let disks: u8 = values[1].parse().map_err(|_| bad("bad disk count"))?;
        let pos: Vec<Peg> = values[2]
            .split(',')
            .map(|p| p.parse::<Peg>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("bad position list"))?;
        if pos.len() != disks as usize {
            return Err(bad("position length differs from disk count"));
        }
        if pos.iter().any(|&p| p == 0 || p > pegs) {
            return Err(bad("peg out of range"));
        }
        let last = match values[3] {
            "-" => None,
            d => {
                let d: Disk = d.parse().map_err(|_| bad("bad last-moved disk"))?;
                if d == 0 || d > disks {
                    return Err(bad("last-moved disk out of range"));
                }
                Some(d)
            }
        };
        let flags = values[4].as_bytes();
        if flags.len() != 2 || flags.iter().any(|b| *b != b'0' && *b != b'1') {
            return Err(bad("flags must be two binary digits"));
        }
        Ok((
            pegs,
            GameState::new(Position(pos), last, flags[0] == b'1', flags[1] == b'1'),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u8, l: u8, ec: EndingCondition) -> GameConfig {
        GameConfig::new(n, l, ec).unwrap()
    }

    fn st(pos: &[Peg], last: Option<Disk>, largest: bool, smallest: bool) -> GameState {
        GameState::new(Position::new(pos.to_vec()), last, largest, smallest)
    }

    #[test]
    fn initial_two_disk_moves() {
        let c = cfg(2, 3, EndingCondition::ToPeg);
        let moves = c.legal_moves(&c.initial_state());
        assert_eq!(moves, vec![Move::new(1, 2), Move::new(1, 3)]);
    }

    #[test]
    fn larger_disk_forced_after_small_move() {
        let c = cfg(2, 3, EndingCondition::ToPeg);
        let s = st(&[3, 1], Some(1), false, true);
        assert_eq!(c.legal_moves(&s), vec![Move::new(1, 2)]);
    }

    #[test]
    fn single_disk_cannot_complete_on_non_final_peg() {
        let c = cfg(1, 3, EndingCondition::ToPeg);
        assert_eq!(c.legal_moves(&c.initial_state()), vec![Move::new(1, 3)]);
    }

    #[test]
    fn apply_sets_last_moved_and_flags() {
        let c = cfg(2, 3, EndingCondition::ToPeg);
        let s0 = c.initial_state();
        let s1 = c.apply(&s0, Move::new(1, 3)).unwrap();
        assert_eq!(s1, st(&[3, 1], Some(1), false, true));
        let s2 = c.apply(&s1, Move::new(1, 2)).unwrap();
        assert_eq!(s2, st(&[3, 2], Some(2), true, true));
        assert!(matches!(
            c.apply(&s1, Move::new(3, 2)),
            Err(GameError::IllegalMove { .. })
        ));
    }

    #[test]
    fn terminal_conditions() {
        let ec1 = cfg(2, 3, EndingCondition::ToPeg);
        assert!(ec1.is_terminal(&st(&[3, 3], Some(1), true, true)));
        let ec2 = cfg(2, 3, EndingCondition::ReturnLargest);
        assert!(!ec2.is_terminal(&st(&[1, 1], None, false, false)));
        let ec4 = cfg(2, 3, EndingCondition::AnyLargest);
        assert!(ec4.is_terminal(&st(&[2, 2], Some(1), true, true)));
        assert!(!ec4.is_terminal(&st(&[2, 2], Some(1), false, true)));
    }

    #[test]
    fn inapplicable_endings_rejected() {
        assert!(matches!(
            GameConfig::new(1, 3, EndingCondition::ReturnLargest),
            Err(GameError::InapplicableEnding { .. })
        ));
        assert!(matches!(
            GameConfig::new(1, 3, EndingCondition::ReturnSmallest),
            Err(GameError::InapplicableEnding { .. })
        ));
        assert!(GameConfig::with_pegs(2, 3, EndingCondition::ToPeg, 2, 2).is_err());
        assert!(GameConfig::new(0, 3, EndingCondition::ToPeg).is_err());
        assert!(GameConfig::new(2, 2, EndingCondition::ToPeg).is_err());
    }

    #[test]
    fn index_layout() {
        let c1 = cfg(1, 3, EndingCondition::ToPeg);
        assert_eq!(c1.state_index(&c1.initial_state()), 0);
        let c2 = cfg(2, 3, EndingCondition::ToPeg);
        assert_eq!(c2.state_count(), 108);
        for i in 0..108 {
            let s = c2.state_decode(i).unwrap();
            assert_eq!(c2.state_index(&s), i);
        }
        assert!(matches!(
            c2.state_decode(108),
            Err(GameError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn resolve_edge_picks_size_direction() {
        let c = cfg(2, 3, EndingCondition::ToPeg);
        let s = st(&[3, 2], Some(2), true, true);
        assert_eq!(c.resolve_edge(&s, 2, 3), Some(Move::new(3, 2)));
        assert_eq!(c.resolve_edge(&s, 1, 3), Some(Move::new(3, 1)));
        assert_eq!(c.resolve_edge(&s, 1, 2), Some(Move::new(2, 1)));
    }

    #[test]
    fn text_round_trip() {
        let s = st(&[3, 1, 2], Some(1), false, true);
        let text = s.to_text(4);
        assert_eq!(text, "pegs=4;disks=3;pos=3,1,2;last=1;flags=01");
        assert_eq!(GameState::from_text(&text).unwrap(), (4, s));
        let none = st(&[1, 1], None, false, false).to_text(3);
        assert_eq!(none, "pegs=3;disks=2;pos=1,1;last=-;flags=00");
        assert!(GameState::from_text("pegs=3;disks=2;pos=1;last=-;flags=00").is_err());
        assert!(GameState::from_text("pegs=3;disks=2;pos=1,4;last=-;flags=00").is_err());
        assert!(GameState::from_text("pegs=3;disks=2;pos=1,1;last=3;flags=00").is_err());
    }

    #[test]
    fn ending_condition_names() {
        assert_eq!(
            "3".parse::<EndingCondition>().unwrap(),
            EndingCondition::ReturnSmallest
        );
        assert_eq!(
            "EC4".parse::<EndingCondition>().unwrap(),
            EndingCondition::AnyLargest
        );
        assert_eq!(
            "any-smallest".parse::<EndingCondition>().unwrap(),
            EndingCondition::AnySmallest
        );
        assert!("6".parse::<EndingCondition>().is_err());
    }
}
