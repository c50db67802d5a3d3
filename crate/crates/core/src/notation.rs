//! Move-sequence notation: `13-(12-13-23)^2-13`.
//!
//! An atom `ij` names the undirected edge between pegs `i` and `j`; the disk that
//! travels along it is whichever top disk may legally sit on the other peg, so
//! the direction is resolved against the state during replay. Reversing a
//! sequence reverses the order of its atoms and swaps their endpoints.
//!
//! Grammar (whitespace ignored, peg ids are single digits):
//!
//! ```text
//! seq  := term ('-' term)*
//! term := MOVE | '(' seq ')' '^' INT
//! MOVE := digit digit
//! ```

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::game::{GameConfig, GameState, Move, Peg};
use crate::score::{format_rational, Rational, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("peg {peg} at offset {pos} is outside 1..={pegs}")]
    PegOutOfRange { pos: usize, peg: u8, pegs: u8 },
    #[error("infinite repetition at offset {pos}; use a finite exponent")]
    InfiniteRepetition { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeqExpr {
    Atom(Peg, Peg),
    Concat(Vec<SeqExpr>),
    Repeat(Box<SeqExpr>, u64),
    Reverse(Box<SeqExpr>),
}

impl SeqExpr {
    pub fn atom(a: Peg, b: Peg) -> SeqExpr {
        SeqExpr::Atom(a, b)
    }

    pub fn concat(parts: impl IntoIterator<Item = SeqExpr>) -> SeqExpr {
        SeqExpr::Concat(parts.into_iter().collect())
    }

    pub fn repeat(body: SeqExpr, k: u64) -> SeqExpr {
        SeqExpr::Repeat(Box::new(body), k)
    }

    pub fn from_moves(moves: &[Move]) -> SeqExpr {
        SeqExpr::Concat(moves.iter().map(|m| SeqExpr::Atom(m.from, m.to)).collect())
    }

    /// Reversal; applying it twice gives back the original expression.
    pub fn reversed(&self) -> SeqExpr {
        match self {
            SeqExpr::Reverse(inner) => (**inner).clone(),
            other => SeqExpr::Reverse(Box::new(other.clone())),
        }
    }

    /// Number of moves in the expansion.
    pub fn len(&self) -> u64 {
        match self {
            SeqExpr::Atom(..) => 1,
            SeqExpr::Concat(parts) => parts.iter().map(SeqExpr::len).sum(),
            SeqExpr::Repeat(body, k) => body.len() * k,
            SeqExpr::Reverse(body) => body.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat list of atoms as `(first, second)` peg pairs.
    pub fn expand(&self) -> Vec<Move> {
        let mut out = Vec::with_capacity(self.len() as usize);
        self.expand_into(false, &mut out);
        out
    }

    fn expand_into(&self, rev: bool, out: &mut Vec<Move>) {
        match self {
            SeqExpr::Atom(a, b) => out.push(if rev {
                Move::new(*b, *a)
            } else {
                Move::new(*a, *b)
            }),
            SeqExpr::Concat(parts) => {
                if rev {
                    parts.iter().rev().for_each(|p| p.expand_into(true, out));
                } else {
                    parts.iter().for_each(|p| p.expand_into(false, out));
                }
            }
            SeqExpr::Repeat(body, k) => {
                for _ in 0..*k {
                    body.expand_into(rev, out);
                }
            }
            SeqExpr::Reverse(body) => body.expand_into(!rev, out),
        }
    }

    /// Same expression with every peg `p` renamed to `perm[p]`.
    pub fn relabelled(&self, perm: &[Peg]) -> SeqExpr {
        match self {
            SeqExpr::Atom(a, b) => SeqExpr::Atom(perm[*a as usize], perm[*b as usize]),
            SeqExpr::Concat(parts) => {
                SeqExpr::Concat(parts.iter().map(|p| p.relabelled(perm)).collect())
            }
            SeqExpr::Repeat(body, k) => SeqExpr::Repeat(Box::new(body.relabelled(perm)), *k),
            SeqExpr::Reverse(body) => SeqExpr::Reverse(Box::new(body.relabelled(perm))),
        }
    }

    fn write_text(&self, rev: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqExpr::Atom(a, b) => {
                if rev {
                    write!(f, "{b}{a}")
                } else {
                    write!(f, "{a}{b}")
                }
            }
            SeqExpr::Concat(parts) => {
                let parts: Vec<&SeqExpr> = if rev {
                    parts.iter().rev().collect()
                } else {
                    parts.iter().collect()
                };
                let mut first = true;
                for p in parts {
                    if p.is_empty() && !matches!(p, SeqExpr::Repeat(..)) {
                        continue;
                    }
                    if !first {
                        f.write_str("-")?;
                    }
                    first = false;
                    p.write_text(rev, f)?;
                }
                Ok(())
            }
            SeqExpr::Repeat(body, k) => {
                f.write_str("(")?;
                body.write_text(rev, f)?;
                write!(f, ")^{k}")
            }
            SeqExpr::Reverse(body) => body.write_text(!rev, f),
        }
    }
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(false, f)
    }
}

/// Parses a sequence over a board with `pegs` pegs (at most 9).
pub fn parse(text: &str, pegs: u8) -> Result<SeqExpr, NotationError> {
    let mut p = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        at: 0,
        end: text.len(),
        pegs,
    };
    let seq = p.seq()?;
    if let Some((pos, c)) = p.peek() {
        return Err(NotationError::Syntax {
            pos,
            msg: format!("unexpected `{c}`"),
        });
    }
    Ok(seq)
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
    pegs: u8,
}

impl Parser {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn expect(&mut self, want: char) -> Result<(), NotationError> {
        match self.bump() {
            Some((_, c)) if c == want => Ok(()),
            Some((pos, c)) => Err(NotationError::Syntax {
                pos,
                msg: format!("expected `{want}`, found `{c}`"),
            }),
            None => Err(NotationError::Syntax {
                pos: self.end,
                msg: format!("expected `{want}`, found end of input"),
            }),
        }
    }

    fn seq(&mut self) -> Result<SeqExpr, NotationError> {
        let mut terms = vec![self.term()?];
        while let Some((_, '-')) = self.peek() {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            SeqExpr::Concat(terms)
        })
    }

    fn term(&mut self) -> Result<SeqExpr, NotationError> {
        match self.peek() {
            Some((_, '(')) => {
                self.bump();
                let body = self.seq()?;
                self.expect(')')?;
                self.expect('^')?;
                let k = self.exponent()?;
                Ok(SeqExpr::Repeat(Box::new(body), k))
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let a = self.peg()?;
                let pos = self.offset();
                let b = self.peg()?;
                if a == b {
                    return Err(NotationError::Syntax {
                        pos,
                        msg: format!("move `{a}{b}` joins a peg to itself"),
                    });
                }
                Ok(SeqExpr::Atom(a, b))
            }
            Some((pos, c)) => Err(NotationError::Syntax {
                pos,
                msg: format!("expected a move or `(`, found `{c}`"),
            }),
            None => Err(NotationError::Syntax {
                pos: self.end,
                msg: "expected a move or `(`, found end of input".into(),
            }),
        }
    }

    fn peg(&mut self) -> Result<Peg, NotationError> {
        match self.bump() {
            Some((pos, c)) if c.is_ascii_digit() => {
                let peg = c as u8 - b'0';
                if peg == 0 || peg > self.pegs {
                    return Err(NotationError::PegOutOfRange {
                        pos,
                        peg,
                        pegs: self.pegs,
                    });
                }
                Ok(peg)
            }
            Some((pos, c)) => Err(NotationError::Syntax {
                pos,
                msg: format!("expected a peg digit, found `{c}`"),
            }),
            None => Err(NotationError::Syntax {
                pos: self.end,
                msg: "expected a peg digit, found end of input".into(),
            }),
        }
    }

    fn exponent(&mut self) -> Result<u64, NotationError> {
        let start = self.offset();
        match self.peek() {
            Some((pos, '∞')) => return Err(NotationError::InfiniteRepetition { pos }),
            Some((pos, 'i')) | Some((pos, 'I')) => {
                let word: String = self.chars[self.at..]
                    .iter()
                    .take(3)
                    .map(|(_, c)| c.to_ascii_lowercase())
                    .collect();
                if word == "inf" {
                    return Err(NotationError::InfiniteRepetition { pos });
                }
            }
            _ => {}
        }
        let mut digits = String::new();
        while let Some((_, c)) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(NotationError::Syntax {
                pos: start,
                msg: "expected an exponent".into(),
            });
        }
        digits.parse().map_err(|_| NotationError::Syntax {
            pos: start,
            msg: "exponent too large".into(),
        })
    }
}

/// Outcome of playing a sequence from a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub legal: bool,
    /// 1-based ply of the first move that could not be played.
    pub failed_at: Option<u64>,
    pub terminal: bool,
    /// Every even ply offered its mover exactly one legal move.
    pub forced_even_plies: bool,
    pub plies: u64,
    pub final_state: GameState,
    pub a_points: Rational,
    pub b_points: Rational,
    pub delta: Rational,
}

impl ReplayReport {
    pub fn to_json(&self, pegs: u8) -> Value {
        json!({
            "legal": self.legal,
            "failed_at": self.failed_at,
            "terminal": self.terminal,
            "forced_even_plies": self.forced_even_plies,
            "plies": self.plies,
            "final_state": self.final_state.to_text(pegs),
            "a_points": format_rational(&self.a_points),
            "b_points": format_rational(&self.b_points),
            "delta": format_rational(&self.delta),
        })
    }
}

/// Plays `expr` move by move from `start`. Odd plies score for the first player.
pub fn replay(
    cfg: &GameConfig,
    start: &GameState,
    expr: &SeqExpr,
    weights: Option<&Weights>,
) -> ReplayReport {
    replay_moves(cfg, start, &expr.expand(), weights)
}

pub fn replay_moves(
    cfg: &GameConfig,
    start: &GameState,
    atoms: &[Move],
    weights: Option<&Weights>,
) -> ReplayReport {
    let mut state = start.clone();
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut forced = true;
    let mut terminal = cfg.is_terminal(&state);
    let mut failed_at = None;
    let mut plies = 0u64;
    for (i, atom) in atoms.iter().enumerate() {
        let ply = i as u64 + 1;
        if terminal {
            failed_at = Some(ply);
            break;
        }
        let Some(mv) = cfg.resolve_edge(&state, atom.from, atom.to) else {
            failed_at = Some(ply);
            break;
        };
        if !cfg.is_legal(&state, mv) {
            failed_at = Some(ply);
            break;
        }
        if ply.is_multiple_of(2) && cfg.legal_move_count(&state) != 1 {
            forced = false;
        }
        let gain = weights.map_or_else(Rational::zero, |w| w.edge(mv.from, mv.to));
        if ply % 2 == 1 {
            a += gain;
        } else {
            b += gain;
        }
        state = state.play(mv);
        plies = ply;
        terminal = cfg.is_terminal(&state);
    }
    ReplayReport {
        legal: failed_at.is_none(),
        failed_at,
        terminal,
        forced_even_plies: forced,
        plies,
        final_state: state,
        a_points: a,
        b_points: b,
        delta: a - b,
    }
}
