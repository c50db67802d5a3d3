//! Deterministic fixture suite behind `verify-paper`.

use hanoi_core::construct::{
    exceptional_n3_sequences, minimal_transfer, pump_increment, return_transfer, score_pump,
    short_return, table_one, two_disk_family, ExceptionalCase,
};
use hanoi_core::notation::replay;
use hanoi_core::scoreforms::{
    delta_minimal_11, delta_minimal_13, delta_short_return, min_moves_normal, min_moves_scoring,
    scoring_verdict, Outcome,
};
use hanoi_core::solve::{bounded_scoring_search, build_graph, solve_normal, Budget, Label};
use hanoi_core::{parse, EndingCondition, GameConfig, GameState, Position, Rational, Weights};

pub struct Item {
    pub name: String,
    pub result: Result<String, String>,
}

fn item(name: impl Into<String>, result: Result<String, String>) -> Item {
    Item {
        name: name.into(),
        result,
    }
}

fn check(
    ok: bool,
    pass: impl Into<String>,
    fail: impl FnOnce() -> String,
) -> Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail())
    }
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn fixed_weights() -> [Weights; 4] {
    [
        Weights::new(r(3, 2), r(-2, 1), r(5, 7)),
        Weights::new(r(-1, 3), r(4, 1), r(-9, 4)),
        Weights::from_ints(2, 2, -5),
        Weights::new(r(0, 1), r(-7, 5), r(11, 3)),
    ]
}

fn config(n: u8, l: u8, ec: EndingCondition) -> GameConfig {
    GameConfig::new(n, l, ec).expect("fixture boards are valid")
}

fn table_rows(out: &mut Vec<Item>) {
    let c = config(2, 3, EndingCondition::AnySmallest);
    for (i, row) in table_one().iter().enumerate() {
        let result = parse(row.sequence, 3)
            .map_err(|e| e.to_string())
            .and_then(|seq| {
                let rep = replay(&c, &c.initial_state(), &seq, None);
                check(
                    rep.legal && rep.plies == row.moves && rep.final_state.pos == row.target,
                    format!("{} moves to {}", rep.plies, row.target),
                    || {
                        format!(
                            "legal={} plies={} final={}",
                            rep.legal, rep.plies, rep.final_state.pos
                        )
                    },
                )
            });
        out.push(item(
            format!("two-disk table row {} ({})", i + 1, row.sequence),
            result,
        ));
    }
}

fn families(out: &mut Vec<Item>) {
    let c = config(2, 3, EndingCondition::AnySmallest);
    let three = Rational::from_integer(3);
    for case in 1..=6u8 {
        let mut result = Ok(String::new());
        for w in fixed_weights() {
            let delta = match case {
                1 => w.w12 + w.w23 - w.w13,
                2 => three * w.w13 - w.w12 - w.w23,
                3 => three * w.w12 - w.w13 - w.w23,
                4 => w.w13 + w.w23 - w.w12,
                _ => w.w12 + w.w13 - w.w23,
            };
            for k in 0..4 {
                let seq = two_disk_family(case, k).map_err(|e| e.to_string());
                let verdict = seq.and_then(|s| {
                    let rep = replay(&c, &c.initial_state(), &s, Some(&w));
                    check(
                        rep.legal && rep.terminal && rep.forced_even_plies && rep.delta == delta,
                        "",
                        || format!("k={k} {w}: delta {} expected {delta}", rep.delta),
                    )
                });
                if let Err(e) = verdict {
                    result = Err(e);
                }
            }
        }
        out.push(item(
            format!("two-disk family {case}"),
            result.map(|_| "four weight triples, four repetition counts".into()),
        ));
    }
}

fn pumps(out: &mut Vec<Item>) {
    let w = Weights::new(r(-1, 1), r(2, 3), r(1, 2));
    for (i, j, k) in [
        (1, 2, 3),
        (2, 1, 3),
        (1, 3, 2),
        (3, 1, 2),
        (2, 3, 1),
        (3, 2, 1),
    ] {
        let mut result = Ok("n=3..5, both variants".to_string());
        for n in 3..=5u8 {
            let c = config(n, 3, EndingCondition::ToPeg);
            let mut pegs = vec![k, k, i];
            pegs.extend(std::iter::repeat_n(j, n as usize - 3));
            let pos = Position::new(pegs);
            let start = GameState::new(pos.clone(), Some(3), true, true);
            for v in 1..=2 {
                let Ok(s) = score_pump(i, j, k, v) else {
                    result = Err(format!("no pump variant {v}"));
                    continue;
                };
                let rep = replay(&c, &start, &s, Some(&w));
                if !(rep.legal && rep.forced_even_plies && rep.final_state.pos == pos)
                    || rep.delta != pump_increment(&w, i, j, k)
                {
                    result = Err(format!("n={n} variant {v}: delta {}", rep.delta));
                }
            }
        }
        out.push(item(format!("score pump {i}{j}{k}"), result));
    }
}

fn transfer_scores(out: &mut Vec<Item>) {
    for n in 2..=8u8 {
        let to = config(n, 3, EndingCondition::ToPeg);
        let back = config(n, 3, EndingCondition::ReturnLargest);
        let mut errors = Vec::new();
        for w in fixed_weights() {
            let rep = replay(
                &to,
                &to.initial_state(),
                &minimal_transfer(n, 1, 3),
                Some(&w),
            );
            if !rep.terminal || rep.delta != delta_minimal_13(n, &w) {
                errors.push(format!("minimal transfer {w}: {}", rep.delta));
            }
            for v in 1..=2 {
                let seq = return_transfer(n, v).expect("returns exist for two or more disks");
                let rep = replay(&back, &back.initial_state(), &seq, Some(&w));
                if !rep.terminal || rep.delta != delta_minimal_11(n, &w) {
                    errors.push(format!("return variant {v} {w}: {}", rep.delta));
                }
            }
            if n >= 3 {
                let rep = replay(
                    &back,
                    &back.initial_state(),
                    &short_return(n, false).unwrap(),
                    Some(&w),
                );
                if !rep.terminal || rep.delta != delta_short_return(n, &w) {
                    errors.push(format!("short return {w}: {}", rep.delta));
                }
            }
        }
        out.push(item(
            format!("transfer and return scores n={n}"),
            check(errors.is_empty(), "closed forms hold", || errors.join("; ")),
        ));
    }
}

/// Three-peg normal-play minimum as published: twice the transfer length for
/// the largest-disk return.
fn published_minimum(n: u8, ec: EndingCondition) -> u64 {
    match ec {
        EndingCondition::ToPeg | EndingCondition::AnyLargest => (1 << n) - 1,
        EndingCondition::ReturnLargest => (1 << (n + 1)) - 1,
        EndingCondition::ReturnSmallest => 7,
        EndingCondition::AnySmallest if n <= 2 => (1 << n) - 1,
        EndingCondition::AnySmallest => 7,
    }
}

fn normal_play(out: &mut Vec<Item>) {
    let budget = Budget::default();
    for l in [3u8, 4] {
        for n in 1..=4u8 {
            for ec in EndingCondition::ALL
                .into_iter()
                .filter(|ec| ec.applicable(n))
            {
                let c = config(n, l, ec);
                let result = build_graph(&c, &budget)
                    .map_err(|e| e.to_string())
                    .and_then(|g| {
                        let lab = solve_normal(&g);
                        let init = g.initial();
                        let radius = (lab.labels[init] == Label::WinForMover)
                            .then(|| u64::from(lab.radius[init].unwrap()));
                        let table = min_moves_normal(&c).upper;
                        check(
                            radius == table,
                            format!("oracle {}", describe(radius)),
                            || format!("oracle {} vs table {}", describe(radius), describe(table)),
                        )
                    });
                out.push(item(format!("normal play l={l} n={n} {ec}"), result));
                if l == 3 {
                    let table = min_moves_normal(&c).upper;
                    let published = published_minimum(n, ec);
                    out.push(item(
                        format!("published minimum l=3 n={n} {ec}"),
                        check(table == Some(published), format!("{published}"), || {
                            format!("oracle {} vs published {published}", describe(table))
                        }),
                    ));
                }
            }
        }
    }
}

fn describe(b: Option<u64>) -> String {
    b.map_or_else(|| "draw".into(), |v| format!("{v} moves"))
}

fn move_bounds(out: &mut Vec<Item>) {
    let weights = [
        Weights::from_ints(1, 2, 3),
        Weights::from_ints(-1, -2, -1),
        Weights::new(r(-3, 2), r(1, 4), r(-1, 1)),
        Weights::from_ints(0, -1, 2),
    ];
    for ec in EndingCondition::ALL {
        let c = config(3, 3, ec);
        for w in &weights {
            let result = min_moves_scoring(&c, w)
                .map_err(|e| e.to_string())
                .and_then(|b| {
                    let upper = b.upper.ok_or("unbounded")?;
                    let depth = upper as u32;
                    let budget = Budget {
                        max_depth: depth.max(40),
                        ..Budget::default()
                    };
                    let rep =
                        bounded_scoring_search(&c, w, depth, &budget).map_err(|e| e.to_string())?;
                    let found = rep.min_win_plies.map(u64::from);
                    check(
                        found.is_some_and(|m| b.lower.unwrap_or(0) <= m && m <= upper),
                        format!(
                            "search wins in {} within {:?}..{upper}",
                            found.unwrap_or(0),
                            b.lower.unwrap_or(0)
                        ),
                        || format!("search {found:?} outside {:?}..{upper}", b.lower),
                    )
                });
            out.push(item(format!("move bounds n=3 {ec} {w}"), result));
        }
    }
    let c = config(3, 3, EndingCondition::ToPeg);
    let w = Weights::new(r(1, 3), r(7, 5), r(-2, 1));
    let two = Rational::from_integer(2);
    for (case, v, len, delta) in [
        (
            ExceptionalCase::Ec1I,
            1,
            11,
            two * (w.w12 + w.w23) - Rational::from_integer(3) * w.w13,
        ),
        (ExceptionalCase::Ec1I, 2, 13, w.w13),
        (
            ExceptionalCase::Ec1Ii,
            1,
            11,
            two * (w.w12 + w.w23) - Rational::from_integer(3) * w.w13,
        ),
        (ExceptionalCase::Ec1Ii, 2, 13, w.w13),
    ] {
        let s = exceptional_n3_sequences(case, v).expect("both variants exist");
        let rep = replay(&c, &c.initial_state(), &s, Some(&w));
        out.push(item(
            format!("exceptional sequence {case:?} variant {v}"),
            check(
                rep.terminal && rep.plies == len && rep.delta == delta,
                format!("{len} moves"),
                || format!("{} moves, delta {}", rep.plies, rep.delta),
            ),
        ));
    }
}

fn two_disk_region(out: &mut Vec<Item>) {
    let budget = Budget::default();
    for ec in EndingCondition::ALL {
        let c = config(2, 3, ec);
        let mut bad = Vec::new();
        for a in -5..=5 {
            for b in -5..=5 {
                let w = Weights::from_ints(a, b, -3);
                let claimed = scoring_verdict(&c, &w).map(|v| v.outcome == Outcome::FirstWin);
                let found = bounded_scoring_search(&c, &w, 30, &budget).map(|s| s.win_found);
                match (claimed, found) {
                    (Ok(x), Ok(y)) if x == y => {}
                    _ => bad.push(format!("({a},{b})")),
                }
            }
        }
        out.push(item(
            format!("two-disk region w23=-3 {ec}"),
            check(bad.is_empty(), "121 points agree with search", || {
                format!("disagree at {}", bad.join(" "))
            }),
        ));
    }
}

pub fn run() -> Vec<Item> {
    let mut out = Vec::new();
    table_rows(&mut out);
    families(&mut out);
    pumps(&mut out);
    transfer_scores(&mut out);
    normal_play(&mut out);
    move_bounds(&mut out);
    two_disk_region(&mut out);
    out
}
