//! Exhaustive oracles over the explicit game graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::minimal_transfer;
use crate::game::{GameConfig, GameError, GameState, Move, Peg, Position};
use crate::notation::{replay_moves, SeqExpr};
use crate::score::{format_rational, parse_rational, Rational, Weights};
use crate::scoreforms::{scoring_verdict, FormError, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("malformed graph document: {0}")]
    Format(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of stored vertices (or search cells).
    pub max_states: u64,
    /// Largest ply bound for scoring search.
    pub max_depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 100_000_000,
            max_depth: 40,
        }
    }
}

/// Every state of a configuration with its legal successors.
#[derive(Debug, Clone)]
pub struct GameGraph {
    cfg: GameConfig,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    moves: Vec<Move>,
    terminal: Vec<bool>,
    reachable: Vec<bool>,
}

impl GameGraph {
    pub fn cfg(&self) -> &GameConfig {
        &self.cfg
    }

    pub fn vertex_count(&self) -> usize {
        self.terminal.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn reachable_count(&self) -> usize {
        self.reachable.iter().filter(|&&r| r).count()
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.reachable[v]
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminal[v]
    }

    /// Successor vertices with the move leading to each, in move order.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = (usize, Move)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.moves[range])
            .map(|(&t, &m)| (t as usize, m))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn initial(&self) -> usize {
        self.cfg.state_index(&self.cfg.initial_state()) as usize
    }

    pub fn state(&self, v: usize) -> GameState {
        self.cfg.state_decode(v as u64).expect("vertex in range")
    }
}

pub fn build_graph(cfg: &GameConfig, budget: &Budget) -> Result<GameGraph, SolveError> {
    let size = cfg.state_count();
    if size > budget.max_states || size > u32::MAX as u64 {
        return Err(SolveError::BudgetExceeded {
            what: "state graph",
            needed: size,
            limit: budget.max_states,
        });
    }
    let size = size as usize;
    let mut offsets = Vec::with_capacity(size + 1);
    let mut targets = Vec::new();
    let mut moves = Vec::new();
    let mut terminal = vec![false; size];
    offsets.push(0);
    for (v, term) in terminal.iter_mut().enumerate() {
        let s = cfg.state_decode(v as u64)?;
        if cfg.is_terminal(&s) {
            *term = true;
        } else {
            for m in cfg.legal_moves(&s) {
                targets.push(cfg.state_index(&s.play(m)) as u32);
                moves.push(m);
            }
        }
        offsets.push(targets.len());
    }
    let mut graph = GameGraph {
        cfg: *cfg,
        offsets,
        targets,
        moves,
        terminal,
        reachable: vec![false; size],
    };
    let init = graph.initial();
    let mut queue = VecDeque::from([init]);
    graph.reachable[init] = true;
    while let Some(v) = queue.pop_front() {
        for i in graph.offsets[v]..graph.offsets[v + 1] {
            let t = graph.targets[i] as usize;
            if !graph.reachable[t] {
                graph.reachable[t] = true;
                queue.push_back(t);
            }
        }
    }
    Ok(graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    WinForMover,
    LossForMover,
    Drawn,
}

#[derive(Debug, Clone)]
pub struct Labeling {
    pub labels: Vec<Label>,
    /// Plies to the forced end under best play; `None` for drawn states.
    pub radius: Vec<Option<u32>>,
}

/// Retrograde analysis: finished or stuck states are lost for the player to
/// move; everything never labelled is drawn.
pub fn solve_normal(g: &GameGraph) -> Labeling {
    let size = g.vertex_count();
    let mut preds_count = vec![0usize; size + 1];
    for v in 0..size {
        for (t, _) in g.successors(v) {
            preds_count[t + 1] += 1;
        }
    }
    for i in 0..size {
        preds_count[i + 1] += preds_count[i];
    }
    let mut fill = preds_count.clone();
    let mut preds = vec![0u32; g.edge_count()];
    for v in 0..size {
        for (t, _) in g.successors(v) {
            preds[fill[t]] = v as u32;
            fill[t] += 1;
        }
    }
    let mut labels = vec![Label::Drawn; size];
    let mut radius = vec![None; size];
    let mut remaining: Vec<usize> = (0..size).map(|v| g.out_degree(v)).collect();
    let mut queue = VecDeque::new();
    for v in 0..size {
        if g.is_terminal(v) || g.out_degree(v) == 0 {
            labels[v] = Label::LossForMover;
            radius[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let r = radius[v].unwrap();
        for &p in &preds[preds_count[v]..preds_count[v + 1]] {
            let p = p as usize;
            if labels[p] != Label::Drawn {
                continue;
            }
            match labels[v] {
                Label::LossForMover => {
                    labels[p] = Label::WinForMover;
                    radius[p] = Some(r + 1);
                    queue.push_back(p);
                }
                _ => {
                    remaining[p] -= 1;
                    if remaining[p] == 0 {
                        labels[p] = Label::LossForMover;
                        radius[p] = Some(r + 1);
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    Labeling { labels, radius }
}

/// Length of the shortest win the first player can force from the start.
pub fn shortest_forced_win(g: &GameGraph) -> Option<u32> {
    let lab = solve_normal(g);
    let init = g.initial();
    (lab.labels[init] == Label::WinForMover).then(|| lab.radius[init].unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub bound: u32,
    pub win_found: bool,
    /// Score difference the first player can force within the bound, if every
    /// line terminates.
    pub best_delta: Option<Rational>,
    pub line: SeqExpr,
    pub line_delta: Option<Rational>,
    pub min_win_plies: Option<u32>,
}

impl SearchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "win_found": self.win_found,
            "best_delta": self.best_delta.as_ref().map(format_rational),
            "line": self.line.to_string(),
            "line_delta": self.line_delta.as_ref().map(format_rational),
            "min_win_plies": self.min_win_plies,
        })
    }
}

/// Values are "score difference from here on" with `None` for lines that do
/// not finish within the horizon; the first player ranks `None` below every
/// number, the second player prefers it.
fn better(maximizing: bool, a: Option<Rational>, b: Option<Rational>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => {
            if maximizing {
                x > y
            } else {
                x < y
            }
        }
        (Some(_), None) => maximizing,
        (None, Some(_)) => !maximizing,
        (None, None) => false,
    }
}

/// Depth-bounded minimax over scoring play from the initial state.
pub fn bounded_scoring_search(
    cfg: &GameConfig,
    w: &Weights,
    bound: u32,
    budget: &Budget,
) -> Result<SearchReport, SolveError> {
    if bound > budget.max_depth {
        return Err(SolveError::BudgetExceeded {
            what: "search depth",
            needed: bound as u64,
            limit: budget.max_depth as u64,
        });
    }
    let init = cfg.initial_state();
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut states = vec![init.clone()];
    ids.insert(cfg.state_index(&init), 0);
    let mut succ: Vec<Vec<(usize, Move, Rational)>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let s = states[i].clone();
        let mut out = Vec::new();
        if !cfg.is_terminal(&s) {
            for m in cfg.legal_moves(&s) {
                let t = s.play(m);
                let key = cfg.state_index(&t);
                let id = *ids.entry(key).or_insert_with(|| {
                    states.push(t);
                    states.len() - 1
                });
                out.push((id, m, w.edge(m.from, m.to)));
            }
            out.sort_by_key(|&(id, m, _)| (cfg.state_index(&states[id]), m));
        }
        succ.push(out);
        i += 1;
        if (states.len() as u64) * 2 * (bound as u64 + 1) > budget.max_states {
            return Err(SolveError::BudgetExceeded {
                what: "search table",
                needed: (states.len() as u64) * 2 * (bound as u64 + 1),
                limit: budget.max_states,
            });
        }
    }
    let terminal: Vec<bool> = states.iter().map(|s| cfg.is_terminal(s)).collect();
    let n = states.len();
    // layers[r][2 * state + mover]
    let mut layers: Vec<Vec<Option<Rational>>> = Vec::with_capacity(bound as usize + 1);
    let base: Vec<Option<Rational>> = (0..2 * n)
        .map(|k| terminal[k / 2].then(Rational::zero))
        .collect();
    layers.push(base);
    for r in 1..=bound as usize {
        let prev = &layers[r - 1];
        let mut cur = vec![None; 2 * n];
        for s in 0..n {
            if terminal[s] {
                cur[2 * s] = Some(Rational::zero());
                cur[2 * s + 1] = Some(Rational::zero());
                continue;
            }
            for mover in 0..2 {
                let maximizing = mover == 0;
                let mut best: Option<Option<Rational>> = None;
                for &(t, _, wt) in &succ[s] {
                    let gain = if maximizing { wt } else { -wt };
                    let v = prev[2 * t + (1 - mover)].map(|x| x + gain);
                    if best.is_none_or(|b| better(maximizing, v, b)) {
                        best = Some(v);
                    }
                }
                cur[2 * s + mover] = best.flatten();
            }
        }
        layers.push(cur);
    }
    let wins = |r: usize| layers[r][0].is_some_and(|v| v.is_positive());
    let min_win_plies = (0..=bound as usize).find(|&r| wins(r)).map(|r| r as u32);
    let depth = min_win_plies.unwrap_or(bound) as usize;
    let mut line = Vec::new();
    let (mut s, mut mover, mut r) = (0usize, 0usize, depth);
    while r > 0 && !terminal[s] {
        let maximizing = mover == 0;
        let mut pick: Option<(usize, Move, Option<Rational>)> = None;
        for &(t, m, wt) in &succ[s] {
            let gain = if maximizing { wt } else { -wt };
            let v = layers[r - 1][2 * t + (1 - mover)].map(|x| x + gain);
            if pick.is_none_or(|(_, _, b)| better(maximizing, v, b)) {
                pick = Some((t, m, v));
            }
        }
        let Some((t, m, _)) = pick else { break };
        line.push(m);
        s = t;
        mover = 1 - mover;
        r -= 1;
    }
    let rep = replay_moves(cfg, &init, &line, Some(w));
    Ok(SearchReport {
        bound,
        win_found: min_win_plies.is_some(),
        best_delta: layers[bound as usize][0],
        line: SeqExpr::from_moves(&line),
        line_delta: rep.terminal.then_some(rep.delta),
        min_win_plies,
    })
}

/// The puzzle's position graph: one vertex per position, one undirected edge
/// per single-disk move (ignoring whose turn it is).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionGraph {
    pub disks: u8,
    pub pegs: u8,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn position_graph(disks: u8, pegs: u8, budget: &Budget) -> Result<PositionGraph, SolveError> {
    let count = (pegs as u64).checked_pow(disks as u32).unwrap_or(u64::MAX);
    if count > budget.max_states {
        return Err(SolveError::BudgetExceeded {
            what: "position graph",
            needed: count,
            limit: budget.max_states,
        });
    }
    let mut labels = Vec::with_capacity(count as usize);
    let mut edges = Vec::new();
    for v in 0..count {
        let pos = Position::from_index(v, disks, pegs);
        labels.push(pos.to_string());
        for from in 1..=pegs {
            let Some(d) = pos.top(from) else { continue };
            for to in 1..=pegs {
                if to == from || pos.top(to).is_some_and(|t| t < d) {
                    continue;
                }
                let mut next = pos.clone();
                next.set(d, to);
                let u = next.index(pegs);
                if v < u {
                    edges.push((v as usize, u as usize));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(PositionGraph {
        disks,
        pegs,
        labels,
        edges,
    })
}

/// Positions visited by the minimal transfer from `from` to `to`.
fn minimal_path(disks: u8, from: Peg, to: Peg, pegs: u8) -> Vec<(usize, usize)> {
    let cfg = GameConfig::with_pegs(disks, 3, crate::game::EndingCondition::ToPeg, from, to)
        .expect("valid pegs");
    let mut state = cfg.initial_state();
    let mut out = Vec::new();
    for atom in minimal_transfer(disks, from, to).expand() {
        let m = cfg
            .resolve_edge(&state, atom.from, atom.to)
            .expect("minimal transfer resolves");
        let next = state.play(m);
        let (a, b) = (
            state.pos.index(pegs) as usize,
            next.pos.index(pegs) as usize,
        );
        out.push((a.min(b), a.max(b)));
        state = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportLevel {
    Position,
    State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportOptions {
    pub format: ExportFormat,
    pub level: ExportLevel,
    /// Mark the minimal transfer from peg 1 to peg 3 (three-peg position graphs).
    pub highlight_minimal: bool,
}

pub fn export_graph(
    cfg: &GameConfig,
    options: &ExportOptions,
    budget: &Budget,
) -> Result<String, SolveError> {
    match options.level {
        ExportLevel::Position => {
            let g = position_graph(cfg.disks(), cfg.pegs(), budget)?;
            let marked: Vec<(usize, usize)> = if options.highlight_minimal && cfg.pegs() == 3 {
                minimal_path(
                    cfg.disks(),
                    cfg.start_peg(),
                    if cfg.start_peg() == 3 { 1 } else { 3 },
                    3,
                )
            } else {
                Vec::new()
            };
            Ok(match options.format {
                ExportFormat::Dot => position_dot(&g, &marked),
                ExportFormat::Json => position_json(&g, &marked).to_string(),
            })
        }
        ExportLevel::State => {
            let g = build_graph(cfg, budget)?;
            Ok(match options.format {
                ExportFormat::Dot => state_dot(&g),
                ExportFormat::Json => state_json(&g).to_string(),
            })
        }
    }
}

fn position_dot(g: &PositionGraph, marked: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph hanoi_{}_{} {{", g.disks, g.pegs);
    let _ = writeln!(out, "  node [shape=circle];");
    for (v, label) in g.labels.iter().enumerate() {
        let _ = writeln!(out, "  {v} [label=\"{label}\"];");
    }
    for &(a, b) in &g.edges {
        if marked.contains(&(a, b)) {
            let _ = writeln!(out, "  {a} -- {b} [color=red, penwidth=2];");
        } else {
            let _ = writeln!(out, "  {a} -- {b};");
        }
    }
    out.push_str("}\n");
    out
}

fn position_json(g: &PositionGraph, marked: &[(usize, usize)]) -> Value {
    json!({
        "level": "position",
        "disks": g.disks,
        "pegs": g.pegs,
        "vertices": g.labels.iter().enumerate().map(|(i, l)| json!({"id": i, "label": l})).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "highlight": marked.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

/// Reads back the JSON form of a position graph.
pub fn position_graph_from_json(text: &str) -> Result<PositionGraph, SolveError> {
    let bad = |m: &str| SolveError::Format(m.to_string());
    let v: Value = serde_json::from_str(text).map_err(|e| SolveError::Format(e.to_string()))?;
    if v["level"] != "position" {
        return Err(bad("not a position graph"));
    }
    let num = |key: &str| v[key].as_u64().ok_or_else(|| bad(key));
    let disks = num("disks")? as u8;
    let pegs = num("pegs")? as u8;
    let labels = v["vertices"]
        .as_array()
        .ok_or_else(|| bad("vertices"))?
        .iter()
        .map(|x| {
            x["label"]
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("label"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges = v["edges"]
        .as_array()
        .ok_or_else(|| bad("edges"))?
        .iter()
        .map(|e| match (e[0].as_u64(), e[1].as_u64()) {
            (Some(a), Some(b)) => Ok((a as usize, b as usize)),
            _ => Err(bad("edge")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PositionGraph {
        disks,
        pegs,
        labels,
        edges,
    })
}

fn state_dot(g: &GameGraph) -> String {
    let pegs = g.cfg.pegs();
    let mut out = String::new();
    let _ = writeln!(out, "digraph hanoi_states_{}_{} {{", g.cfg.disks(), pegs);
    for v in (0..g.vertex_count()).filter(|&v| g.is_reachable(v)) {
        let shape = if g.is_terminal(v) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  {v} [label=\"{}\", shape={shape}];",
            g.state(v).to_text(pegs)
        );
    }
    for v in (0..g.vertex_count()).filter(|&v| g.is_reachable(v)) {
        for (t, m) in g.successors(v) {
            let _ = writeln!(out, "  {v} -> {t} [label=\"{}{}\"];", m.from, m.to);
        }
    }
    out.push_str("}\n");
    out
}

fn state_json(g: &GameGraph) -> Value {
    let pegs = g.cfg.pegs();
    let reach: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.is_reachable(v))
        .collect();
    json!({
        "level": "state",
        "disks": g.cfg.disks(),
        "pegs": pegs,
        "ending": g.cfg.ending().number(),
        "vertex_count": g.vertex_count(),
        "reachable_count": reach.len(),
        "vertices": reach.iter().map(|&v| json!({
            "id": v,
            "state": g.state(v).to_text(pegs),
            "terminal": g.is_terminal(v),
        })).collect::<Vec<_>>(),
        "edges": reach.iter().flat_map(|&v| g.successors(v).map(move |(t, m)| json!([v, t, format!("{}{}", m.from, m.to)]))).collect::<Vec<_>>(),
    })
}

/// Scoring outcome over a grid of `(w12, w13)` with `w23` fixed.
pub fn region(
    cfg: &GameConfig,
    w23: Rational,
    lo: Rational,
    hi: Rational,
    step: Rational,
) -> Result<Vec<(Rational, Rational, Outcome)>, SolveError> {
    if !step.is_positive() || hi < lo {
        return Err(SolveError::Format(
            "grid needs lo <= hi and a positive step".into(),
        ));
    }
    let mut axis = Vec::new();
    let mut x = lo;
    while x <= hi {
        axis.push(x);
        x += step;
    }
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &w12 in &axis {
        for &w13 in &axis {
            let v = scoring_verdict(cfg, &Weights::new(w12, w13, w23))?;
            out.push((w12, w13, v.outcome));
        }
    }
    Ok(out)
}

/// Parses `lo:hi:step`.
pub fn parse_grid(text: &str) -> Result<(Rational, Rational, Rational), SolveError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(SolveError::Format(format!(
            "grid `{text}` is not lo:hi:step"
        )));
    }
    let p = |s: &str| parse_rational(s).map_err(|e| SolveError::Format(e.to_string()));
    Ok((p(parts[0])?, p(parts[1])?, p(parts[2])?))
}

/// Label counts, for reports.
pub fn label_summary(g: &GameGraph, lab: &Labeling) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for v in (0..g.vertex_count()).filter(|&v| g.is_reachable(v)) {
        let key = match lab.labels[v] {
            Label::WinForMover => "win",
            Label::LossForMover => "loss",
            Label::Drawn => "drawn",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::EndingCondition;

    fn cfg(n: u8, l: u8, ec: EndingCondition) -> GameConfig {
        GameConfig::new(n, l, ec).unwrap()
    }

    #[test]
    fn small_normal_play() {
        let b = Budget::default();
        let g = build_graph(&cfg(3, 3, EndingCondition::ToPeg), &b).unwrap();
        assert_eq!(shortest_forced_win(&g), Some(7));
        let g = build_graph(&cfg(3, 4, EndingCondition::ToPeg), &b).unwrap();
        assert_eq!(shortest_forced_win(&g), None);
        assert_eq!(solve_normal(&g).labels[g.initial()], Label::Drawn);
    }

    #[test]
    fn search_examples() {
        let b = Budget::default();
        let r = bounded_scoring_search(
            &cfg(2, 3, EndingCondition::ToPeg),
            &Weights::from_ints(1, 1, 1),
            9,
            &b,
        )
        .unwrap();
        assert!(r.win_found);
        assert_eq!(r.min_win_plies, Some(3));
        assert_eq!(r.line_delta, Some(Rational::from_integer(1)));
        let r =
            bounded_scoring_search(&cfg(2, 3, EndingCondition::ToPeg), &Weights::zero(), 30, &b)
                .unwrap();
        assert!(!r.win_found);
        let r = bounded_scoring_search(
            &cfg(3, 3, EndingCondition::ToPeg),
            &Weights::from_ints(1, 2, 3),
            9,
            &b,
        )
        .unwrap();
        assert_eq!(r.min_win_plies, Some(7));
        assert_eq!(r.line_delta, Some(Rational::from_integer(2)));
    }

    #[test]
    fn hanoi_graph_sizes() {
        let b = Budget::default();
        for (n, v, e) in [(1, 3, 3), (2, 9, 12), (3, 27, 39)] {
            let g = position_graph(n, 3, &b).unwrap();
            assert_eq!((g.labels.len(), g.edges.len()), (v, e));
        }
    }

    #[test]
    fn budget_guard() {
        let tiny = Budget {
            max_states: 10,
            max_depth: 5,
        };
        assert!(matches!(
            build_graph(&cfg(3, 3, EndingCondition::ToPeg), &tiny),
            Err(SolveError::BudgetExceeded { .. })
        ));
        assert!(bounded_scoring_search(
            &cfg(2, 3, EndingCondition::ToPeg),
            &Weights::zero(),
            6,
            &tiny
        )
        .is_err());
    }
}
