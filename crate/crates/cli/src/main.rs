mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hanoi_core::construct::scoring_strategy;
use hanoi_core::notation::{parse, replay};
use hanoi_core::scoreforms::{
    invariants_of, min_moves_normal, min_moves_scoring, normal_verdict, scoring_verdict,
    MinMovesResult, Outcome,
};
use hanoi_core::solve::{
    bounded_scoring_search, build_graph, export_graph, parse_grid, region, solve_normal, Budget,
    ExportFormat, ExportLevel, ExportOptions, Label,
};
use hanoi_core::{
    format_rational, parse_rational, EndingCondition, GameConfig, GameState, Rational, Weights,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hanoi2p",
    version,
    about = "Two-player Tower of Hanoi: normal and scoring play"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-play verdict, cross-checked against the exhaustive solver.
    Solve(BoardArgs),
    /// Scoring-play verdict with a winning certificate.
    Score {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        weights: WeightArgs,
        /// Also run the bounded minimax search to this depth.
        #[arg(long)]
        search: Option<u32>,
    },
    /// Shortest forced win: formula bounds plus an oracle check for small boards.
    Minmoves {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Score-pump strategy plan.
    Strategy {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Replay a move sequence.
    Replay {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        seq: String,
        /// Starting state in `pegs=..;disks=..;pos=..;last=..;flags=..` form.
        #[arg(long)]
        state: Option<String>,
    },
    /// Export the position or state graph.
    Graph {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Level::Position)]
        level: Level,
        /// Mark the minimal transfer between the start and final pegs.
        #[arg(long)]
        highlight: bool,
    },
    /// CSV classification of a (w12, w13) grid with w23 fixed.
    Region {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        w23: Rational,
        /// `lo:hi:step`
        #[arg(long, allow_hyphen_values = true, default_value = "-5:5:1")]
        grid: String,
    },
    /// Run the fixture suite and report each item.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct BoardArgs {
    #[arg(long, default_value_t = 3)]
    disks: u8,
    #[arg(long, default_value_t = 3)]
    pegs: u8,
    /// 1-5 or to-peg, return-largest, return-smallest, any-largest, any-smallest.
    #[arg(long, default_value = "1", value_parser = ending)]
    ec: EndingCondition,
    #[arg(long, default_value_t = 1)]
    start: u8,
    /// Target peg for the to-peg ending; defaults to 3, or 2 when starting on 3.
    #[arg(long = "final")]
    final_peg: Option<u8>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    budget_states: Option<u64>,
    #[arg(long)]
    budget_depth: Option<u32>,
}

#[derive(Args, Clone)]
struct WeightArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    w12: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    w13: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    w23: Option<Rational>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Position,
    State,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn ending(s: &str) -> Result<EndingCondition, String> {
    s.parse()
}

/// A run that could not start; exits with 2.
enum Failure {
    Usage(String),
}

/// `Ok(false)` means a check failed; exits with 1.
type Run = Result<bool, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl BoardArgs {
    fn config(&self) -> Result<GameConfig, Failure> {
        let fin = self
            .final_peg
            .unwrap_or(if self.start == 3 { 2 } else { 3 });
        GameConfig::with_pegs(self.disks, self.pegs, self.ec, self.start, fin).map_err(usage)
    }

    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(s) = self.budget_states {
            b.max_states = s;
        }
        if let Some(d) = self.budget_depth {
            b.max_depth = d;
        }
        b
    }
}

impl WeightArgs {
    fn given(&self) -> Option<Result<Weights, Failure>> {
        match (self.w12, self.w13, self.w23) {
            (None, None, None) => None,
            (Some(a), Some(b), Some(c)) => Some(Ok(Weights::new(a, b, c))),
            _ => Some(Err(Failure::Usage(
                "give all of --w12, --w13 and --w23".into(),
            ))),
        }
    }

    fn required(&self) -> Result<Weights, Failure> {
        self.given().unwrap_or_else(|| {
            Err(Failure::Usage(
                "weights --w12, --w13, --w23 are required".into(),
            ))
        })
    }
}

fn emit(json: bool, value: &Value, text: &str) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("json values serialize")
        );
    } else {
        print!("{text}");
    }
}

fn bound_text(b: Option<u64>) -> String {
    b.map_or_else(|| "inf".into(), |v| v.to_string())
}

fn bounds_text(m: &MinMovesResult) -> String {
    if m.exact {
        bound_text(m.upper)
    } else {
        format!("{}..{}", bound_text(m.lower), bound_text(m.upper))
    }
}

fn board_json(c: &GameConfig) -> Value {
    json!({
        "disks": c.disks(),
        "pegs": c.pegs(),
        "ec": c.ending().number(),
        "start": c.start_peg(),
        "final": c.final_peg(),
    })
}

fn weights_json(w: &Weights) -> Value {
    json!({
        "w12": format_rational(&w.w12),
        "w13": format_rational(&w.w13),
        "w23": format_rational(&w.w23),
    })
}

fn solve(b: &BoardArgs) -> Run {
    let c = b.config()?;
    let verdict = normal_verdict(&c);
    let g = build_graph(&c, &b.budget()).map_err(usage)?;
    let lab = solve_normal(&g);
    let init = g.initial();
    let label = lab.labels[init];
    let radius = lab.radius[init];
    let expected = if verdict.outcome == Outcome::FirstWin {
        Label::WinForMover
    } else {
        Label::Drawn
    };
    let agrees = label == expected
        && (label != Label::WinForMover || radius.map(u64::from) == verdict.bounds.upper);
    let label_name = match label {
        Label::WinForMover => "win",
        Label::LossForMover => "loss",
        Label::Drawn => "drawn",
    };
    let mut text = format!("{}\n", verdict.outcome);
    if let Some(cert) = &verdict.certificate {
        text += &format!("certificate: {cert}\nmoves: {}\n", cert.len());
    }
    text += &format!(
        "oracle: {label_name}{} over {} reachable states\nagreement: {}\n",
        radius.map_or_else(String::new, |r| format!(" in {r}")),
        g.reachable_count(),
        if agrees { "yes" } else { "NO" }
    );
    let value = json!({
        "board": board_json(&c),
        "verdict": verdict.to_json(),
        "oracle": {"label": label_name, "radius": radius, "reachable": g.reachable_count()},
        "agreement": agrees,
    });
    emit(b.json, &value, &text);
    Ok(agrees)
}

fn score(b: &BoardArgs, w: &WeightArgs, search: Option<u32>) -> Run {
    let c = b.config()?;
    let w = w.required()?;
    let verdict = scoring_verdict(&c, &w).map_err(usage)?;
    let mut text = format!("{}\n", verdict.outcome);
    if let Some(d) = &verdict.predicted_delta {
        text += &format!("delta: {}\n", format_rational(d));
    }
    if let Some(cert) = &verdict.certificate {
        text += &format!("certificate: {cert}\nmoves: {}\n", cert.len());
    }
    text += &format!("bounds: {}\n", bounds_text(&verdict.bounds));
    let mut value =
        json!({"board": board_json(&c), "weights": weights_json(&w), "verdict": verdict.to_json()});
    let mut ok = true;
    if let Some(depth) = search {
        let report = bounded_scoring_search(&c, &w, depth, &b.budget()).map_err(usage)?;
        let claimed = verdict.outcome == Outcome::FirstWin;
        let reachable = verdict.bounds.upper.is_some_and(|u| u <= u64::from(depth));
        ok = if report.win_found {
            claimed
        } else {
            !(claimed && reachable)
        };
        text += &format!(
            "search to depth {depth}: {}\nagreement: {}\n",
            if report.win_found {
                "first player wins"
            } else {
                "no forced win"
            },
            if ok { "yes" } else { "NO" }
        );
        value["search"] = report.to_json();
        value["agreement"] = json!(ok);
    }
    emit(b.json, &value, &text);
    Ok(ok)
}

/// Boards small enough for the oracle check to be quick.
const ORACLE_DISKS: u8 = 4;

fn minmoves(b: &BoardArgs, w: &WeightArgs) -> Run {
    let c = b.config()?;
    let budget = b.budget();
    let small = c.disks() <= ORACLE_DISKS;
    let (table, oracle, ok, weights) = match w.given().transpose()? {
        None => {
            let table = min_moves_normal(&c);
            if small {
                let g = build_graph(&c, &budget).map_err(usage)?;
                let lab = solve_normal(&g);
                let r = lab.radius[g.initial()]
                    .filter(|_| lab.labels[g.initial()] == Label::WinForMover);
                let ok = r.map(u64::from) == table.upper;
                (table, Some(json!(r)), ok, None)
            } else {
                (table, None, true, None)
            }
        }
        Some(w) => {
            let table = min_moves_scoring(&c, &w).map_err(usage)?;
            match table.upper {
                Some(upper) if small && upper <= u64::from(budget.max_depth) => {
                    let r = bounded_scoring_search(&c, &w, upper as u32, &budget).map_err(usage)?;
                    let ok = r.min_win_plies.is_some_and(|m| {
                        table.lower.is_none_or(|lo| lo <= u64::from(m)) && u64::from(m) <= upper
                    });
                    (table, Some(json!(r.min_win_plies)), ok, Some(w))
                }
                _ => (table, None, true, Some(w)),
            }
        }
    };
    let mut text = format!("minimum moves: {}\n", bounds_text(&table));
    text += &match &oracle {
        Some(v) => format!(
            "oracle: {v}\nwithin bounds: {}\n",
            if ok { "yes" } else { "NO" }
        ),
        None => "oracle: skipped\n".into(),
    };
    let mut value = json!({"board": board_json(&c), "bounds": table.to_json(), "oracle": oracle, "agreement": ok});
    if let Some(w) = weights {
        value["weights"] = weights_json(&w);
        value["invariants"] = invariants_of(c.disks(), &w).to_json();
    }
    emit(b.json, &value, &text);
    Ok(ok)
}

fn strategy(b: &BoardArgs, w: &WeightArgs) -> Run {
    let c = b.config()?;
    let w = w.required()?;
    let plan = scoring_strategy(&c, &w).map_err(usage)?;
    let text = format!(
        "s1:     {}\ns3:     {}  x {}\ns2_inv: {}\nbase delta: {}\nincrement:  {}\npredicted delta: {}\nmoves: {}\n{}\n",
        plan.s1,
        plan.s3,
        plan.lambda,
        plan.s2_inv,
        format_rational(&plan.base_delta),
        format_rational(&plan.increment),
        format_rational(&plan.predicted_delta),
        plan.full.len(),
        plan.to_json()
    );
    emit(b.json, &plan.to_json(), &text);
    Ok(true)
}

fn replay_cmd(b: &BoardArgs, w: &WeightArgs, seq: &str, state: Option<&str>) -> Run {
    let c = b.config()?;
    let weights = w.given().transpose()?;
    let start = match state {
        None => c.initial_state(),
        Some(text) => {
            let (pegs, s) = GameState::from_text(text).map_err(usage)?;
            if pegs != c.pegs() || s.pos.disks() != c.disks() {
                return Err(Failure::Usage(format!(
                    "state `{text}` does not fit the board"
                )));
            }
            c.validate_state(&s).map_err(usage)?;
            s
        }
    };
    let expr = parse(seq, c.pegs()).map_err(usage)?;
    let rep = replay(&c, &start, &expr, weights.as_ref());
    let mut text = format!(
        "legal: {}\nmoves: {}\nterminal: {}\nforced even plies: {}\nfinal state: {}\n",
        if rep.legal { "yes" } else { "no" },
        rep.plies,
        if rep.terminal { "yes" } else { "no" },
        if rep.forced_even_plies { "yes" } else { "no" },
        rep.final_state.to_text(c.pegs())
    );
    if let Some(at) = rep.failed_at {
        text += &format!("failed at move {at}\n");
    }
    if weights.is_some() {
        text += &format!(
            "first player: {}\nsecond player: {}\ndelta: {}\n",
            format_rational(&rep.a_points),
            format_rational(&rep.b_points),
            format_rational(&rep.delta)
        );
    }
    emit(b.json, &rep.to_json(c.pegs()), &text);
    Ok(rep.legal)
}

fn graph(b: &BoardArgs, format: Format, level: Level, highlight: bool) -> Run {
    let c = b.config()?;
    let options = ExportOptions {
        format: match format {
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::Json,
        },
        level: match level {
            Level::Position => ExportLevel::Position,
            Level::State => ExportLevel::State,
        },
        highlight_minimal: highlight,
    };
    let out = export_graph(&c, &options, &b.budget()).map_err(usage)?;
    print!("{out}");
    if !out.ends_with('\n') {
        println!();
    }
    Ok(true)
}

fn region_cmd(b: &BoardArgs, w23: Rational, grid: &str) -> Run {
    let c = b.config()?;
    let (lo, hi, step) = parse_grid(grid).map_err(usage)?;
    let cells = region(&c, w23, lo, hi, step).map_err(usage)?;
    let fmt = |r: &Rational| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format_rational(r)
        }
    };
    let mut text = String::from("w12,w13,outcome\n");
    for (a, b, o) in &cells {
        text += &format!("{},{},{o}\n", fmt(a), fmt(b));
    }
    let value = json!({
        "board": board_json(&c),
        "w23": format_rational(&w23),
        "cells": cells.iter().map(|(a, b, o)| json!({"w12": format_rational(a), "w13": format_rational(b), "outcome": o.as_str()})).collect::<Vec<_>>(),
    });
    emit(b.json, &value, &text);
    Ok(true)
}

fn verify_paper(json: bool) -> Run {
    let items = verify::run();
    let failed = items.iter().filter(|i| i.result.is_err()).count();
    let mut text = String::new();
    for i in &items {
        match &i.result {
            Ok(d) => text += &format!("PASS {}: {d}\n", i.name),
            Err(d) => text += &format!("FAIL {}: {d}\n", i.name),
        }
    }
    text += &format!("{} passed, {failed} failed\n", items.len() - failed);
    let value = json!({
        "items": items.iter().map(|i| match &i.result {
            Ok(d) => json!({"name": i.name, "pass": true, "detail": d}),
            Err(d) => json!({"name": i.name, "pass": false, "detail": d}),
        }).collect::<Vec<_>>(),
        "passed": items.len() - failed,
        "failed": failed,
    });
    emit(json, &value, &text);
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(b) => solve(b),
        Command::Score {
            board,
            weights,
            search,
        } => score(board, weights, *search),
        Command::Minmoves { board, weights } => minmoves(board, weights),
        Command::Strategy { board, weights } => strategy(board, weights),
        Command::Replay {
            board,
            weights,
            seq,
            state,
        } => replay_cmd(board, weights, seq, state.as_deref()),
        Command::Graph {
            board,
            format,
            level,
            highlight,
        } => graph(board, *format, *level, *highlight),
        Command::Region { board, w23, grid } => region_cmd(board, *w23, grid),
        Command::VerifyPaper { json } => verify_paper(*json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
