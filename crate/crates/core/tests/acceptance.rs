use std::process::ExitCode;

use hanoi_core::construct::{
    exceptional_n3_sequences, minimal_transfer, pump_increment, return_transfer, scoring_strategy,
    table_one, ExceptionalCase,
};
use hanoi_core::notation::{replay, replay_moves};
use hanoi_core::scoreforms::{
    delta_minimal_11, delta_minimal_13, invariants_of, min_moves_normal, min_moves_scoring,
    scoring_verdict, Outcome,
};
use hanoi_core::solve::{
    bounded_scoring_search, build_graph, export_graph, position_graph, solve_normal, Budget,
    ExportFormat, ExportLevel, ExportOptions, Label,
};
use hanoi_core::{parse, EndingCondition, GameConfig, GameState, Move, Rational, SeqExpr, Weights};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

fn random_weights(rng: &mut ChaCha8Rng) -> Weights {
    Weights::new(
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
    )
}

fn cfg(n: u8, l: u8, ec: EndingCondition) -> GameConfig {
    GameConfig::new(n, l, ec).unwrap()
}

fn table_fixtures() -> Check {
    let c = cfg(2, 3, EndingCondition::AnySmallest);
    let rows = table_one();
    let lengths: Vec<u64> = rows.iter().map(|r| r.moves).collect();
    ensure(lengths == [7, 1, 1, 3, 3, 5, 3, 5, 3], || {
        format!("lengths {lengths:?}")
    })?;
    for row in &rows {
        let seq = parse(row.sequence, 3).map_err(|e| e.to_string())?;
        let rep = replay(&c, &c.initial_state(), &seq, None);
        ensure(rep.legal, || {
            format!("{} illegal at {:?}", row.sequence, rep.failed_at)
        })?;
        ensure(rep.plies == row.moves, || {
            format!("{} has {} plies", row.sequence, rep.plies)
        })?;
        ensure(rep.final_state.pos == row.target, || {
            format!(
                "{} ends at {} not {}",
                row.sequence, rep.final_state.pos, row.target
            )
        })?;
    }
    Ok("9 rows replayed".into())
}

/// Minimal normal-play wins on three pegs as originally tabulated.
fn published_minimum(n: u8, ec: EndingCondition) -> u32 {
    match ec {
        EndingCondition::ToPeg | EndingCondition::AnyLargest => (1 << n) - 1,
        EndingCondition::ReturnLargest => (1 << (n + 1)) - 1,
        EndingCondition::ReturnSmallest => 7,
        EndingCondition::AnySmallest if n <= 2 => (1 << n) - 1,
        EndingCondition::AnySmallest => 7,
    }
}

fn three_peg_normal() -> Check {
    let budget = Budget::default();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for n in 1..=5u8 {
        for ec in EndingCondition::ALL {
            if !ec.applicable(n) {
                continue;
            }
            let c = cfg(n, 3, ec);
            let g = build_graph(&c, &budget).map_err(|e| e.to_string())?;
            let lab = solve_normal(&g);
            let init = g.initial();
            ensure(lab.labels[init] == Label::WinForMover, || {
                format!("n={n} {ec} not a first-player win")
            })?;
            let radius = lab.radius[init].unwrap();
            let library = min_moves_normal(&c).upper.map(|v| v as u32);
            ensure(library == Some(radius), || {
                format!("n={n} {ec}: oracle {radius}, library table {library:?}")
            })?;
            if radius != published_minimum(n, ec) {
                mismatches.push(format!(
                    "n={n} {ec}: oracle {radius} vs {}",
                    published_minimum(n, ec)
                ));
            }
            checked += 1;
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{checked} configurations"))
    } else {
        Err(format!(
            "published minimum differs from the oracle: {}",
            mismatches.join("; ")
        ))
    }
}

fn four_peg_normal() -> Check {
    let budget = Budget::default();
    for n in 1..=4u8 {
        for ec in EndingCondition::ALL {
            if !ec.applicable(n) {
                continue;
            }
            let c = cfg(n, 4, ec);
            let g = build_graph(&c, &budget).map_err(|e| e.to_string())?;
            let lab = solve_normal(&g);
            let init = g.initial();
            let any = matches!(
                ec,
                EndingCondition::AnyLargest | EndingCondition::AnySmallest
            );
            let expected = match n {
                1 => Some(1),
                2 if any => Some(3),
                _ => None,
            };
            let got = match lab.labels[init] {
                Label::WinForMover => lab.radius[init],
                Label::Drawn => None,
                Label::LossForMover => return Err(format!("n={n} {ec} labelled a loss")),
            };
            ensure(got == expected, || {
                format!("n={n} {ec}: got {got:?}, expected {expected:?}")
            })?;
        }
    }
    Ok("n=1..4, every ending condition".into())
}

fn transfer_scores() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for _ in 0..100 {
        let w = random_weights(&mut rng);
        for n in 2..=8u8 {
            let to = cfg(n, 3, EndingCondition::ToPeg);
            let rep = replay(
                &to,
                &to.initial_state(),
                &minimal_transfer(n, 1, 3),
                Some(&w),
            );
            ensure(rep.terminal && rep.delta == delta_minimal_13(n, &w), || {
                format!("minimal transfer n={n} {w}: {}", rep.delta)
            })?;
            let back = cfg(n, 3, EndingCondition::ReturnLargest);
            for v in 1..=2 {
                let seq = return_transfer(n, v).unwrap();
                let rep = replay(&back, &back.initial_state(), &seq, Some(&w));
                ensure(rep.terminal && rep.delta == delta_minimal_11(n, &w), || {
                    format!("return v{v} n={n} {w}: {}", rep.delta)
                })?;
            }
            count += 3;
        }
    }
    Ok(format!("{count} replays"))
}

fn two_disk_region() -> Check {
    let budget = Budget::default();
    let w23 = Rational::from_integer(-3);
    let axis: Vec<Rational> = (-10..=10).map(|k| Rational::new(k, 2)).collect();
    let mut points = 0;
    for ec in EndingCondition::ALL {
        let c = cfg(2, 3, ec);
        for &w12 in &axis {
            for &w13 in &axis {
                let w = Weights::new(w12, w13, w23);
                let verdict = scoring_verdict(&c, &w).map_err(|e| e.to_string())?;
                let search =
                    bounded_scoring_search(&c, &w, 30, &budget).map_err(|e| e.to_string())?;
                ensure(
                    (verdict.outcome == Outcome::FirstWin) == search.win_found,
                    || {
                        format!(
                            "{ec} {w}: verdict {} but search win_found={}",
                            verdict.outcome, search.win_found
                        )
                    },
                )?;
                points += 1;
            }
        }
        let corner =
            scoring_verdict(&c, &Weights::from_ints(-3, -3, -3)).map_err(|e| e.to_string())?;
        ensure(corner.outcome == Outcome::Draw, || {
            format!("{ec}: all-equal point is {}", corner.outcome)
        })?;
    }
    Ok(format!("{points} grid points agree"))
}

fn pump_strategy() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut plans = 0;
    for n in 3..=5u8 {
        for ec in EndingCondition::ALL {
            let c = cfg(n, 3, ec);
            let mut done = 0;
            while done < 25 {
                let w = random_weights(&mut rng);
                if w.all_equal() {
                    continue;
                }
                let plan = scoring_strategy(&c, &w).map_err(|e| e.to_string())?;
                let rep = replay(&c, &c.initial_state(), &plan.full, Some(&w));
                let (i, j, k) = plan.pump_pegs;
                let expected = plan.base_delta
                    + Rational::from_integer(plan.lambda as i64) * pump_increment(&w, i, j, k);
                ensure(rep.legal && rep.forced_even_plies && rep.terminal, || {
                    format!("n={n} {ec} {w}: plan does not replay cleanly")
                })?;
                ensure(
                    rep.delta == expected && rep.delta > Rational::from_integer(0),
                    || format!("n={n} {ec} {w}: delta {} expected {}", rep.delta, expected),
                )?;
                done += 1;
                plans += 1;
            }
            for alpha in [
                Rational::from_integer(-2),
                Rational::from_integer(0),
                Rational::new(3, 2),
            ] {
                let w = Weights::new(alpha, alpha, alpha);
                let v = scoring_verdict(&c, &w).map_err(|e| e.to_string())?;
                if alpha > Rational::from_integer(0) {
                    let cert = v.certificate.ok_or("missing certificate")?;
                    let rep = replay(&c, &c.initial_state(), &cert, Some(&w));
                    ensure(
                        v.outcome == Outcome::FirstWin && rep.terminal && rep.delta == alpha,
                        || {
                            format!(
                                "n={n} {ec} alpha={alpha}: {} with delta {}",
                                v.outcome, rep.delta
                            )
                        },
                    )?;
                } else {
                    ensure(v.outcome == Outcome::Draw, || {
                        format!("n={n} {ec} alpha={alpha}: {}", v.outcome)
                    })?;
                }
            }
        }
    }
    Ok(format!("{plans} plans won"))
}

fn move_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = cfg(3, 3, EndingCondition::ToPeg);
    let mut sampled = 0;
    while sampled < 10 {
        let w = random_weights(&mut rng);
        if invariants_of(3, &w).beta1 <= Rational::from_integer(0) {
            continue;
        }
        let r = bounded_scoring_search(&c, &w, 9, &Budget::default()).map_err(|e| e.to_string())?;
        ensure(r.min_win_plies == Some(7), || {
            format!("{w}: min win plies {:?}", r.min_win_plies)
        })?;
        sampled += 1;
    }
    let w = Weights::new(
        Rational::new(1, 3),
        Rational::new(7, 5),
        Rational::from_integer(-2),
    );
    let two = Rational::from_integer(2);
    let three = Rational::from_integer(3);
    for case in [ExceptionalCase::Ec1I, ExceptionalCase::Ec1Ii] {
        for (v, len, delta) in [
            (1, 11, two * (w.w12 + w.w23) - three * w.w13),
            (2, 13, w.w13),
        ] {
            let seq = exceptional_n3_sequences(case, v).map_err(|e| e.to_string())?;
            let rep = replay(&c, &c.initial_state(), &seq, Some(&w));
            ensure(
                rep.terminal && rep.plies == len && rep.delta == delta,
                || format!("{case:?} v{v}: {} plies, delta {}", rep.plies, rep.delta),
            )?;
        }
    }
    let mut bounded = 0;
    while bounded < 10 {
        let w = random_weights(&mut rng);
        if w.all_equal() || invariants_of(3, &w).beta1 > Rational::from_integer(0) {
            continue;
        }
        let bounds = min_moves_scoring(&c, &w).map_err(|e| e.to_string())?;
        let upper = bounds.upper.ok_or_else(|| format!("{w}: no upper bound"))? as u32;
        let budget = Budget {
            max_depth: upper,
            ..Budget::default()
        };
        let r = bounded_scoring_search(&c, &w, upper, &budget).map_err(|e| e.to_string())?;
        ensure(r.win_found && r.min_win_plies.unwrap() <= upper, || {
            format!("{w}: upper {upper}, search {:?}", r.min_win_plies)
        })?;
        bounded += 1;
    }
    Ok("10 exact, 4 exceptional, 10 bounded".into())
}

fn graph_export() -> Check {
    let budget = Budget::default();
    for (n, v, e) in [(1u8, 3usize, 3usize), (2, 9, 12), (3, 27, 39)] {
        let g = position_graph(n, 3, &budget).map_err(|e| e.to_string())?;
        ensure(g.labels.len() == v && g.edges.len() == e, || {
            format!(
                "n={n}: {} vertices, {} edges",
                g.labels.len(),
                g.edges.len()
            )
        })?;
        let c = cfg(n, 3, EndingCondition::ToPeg);
        let opts = ExportOptions {
            format: ExportFormat::Dot,
            level: ExportLevel::Position,
            highlight_minimal: true,
        };
        let a = export_graph(&c, &opts, &budget).map_err(|e| e.to_string())?;
        let b = export_graph(&c, &opts, &budget).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("n={n}: DOT differs between runs"))?;
    }
    Ok("3/3, 9/12, 27/39".into())
}

/// States that legal play could produce: the last mover's disk is on top,
/// finished towers only, and flags that agree with where the end disks are.
fn plausible(c: &GameConfig, s: &GameState) -> bool {
    let n = c.disks();
    let start = c.start_peg();
    if let Some(d) = s.last_moved {
        if s.pos.top(s.pos.peg_of(d)) != Some(d) {
            return false;
        }
        if (d == 1 && !s.smallest_moved) || (d == n && !s.largest_moved) {
            return false;
        }
    } else if *s != c.initial_state() {
        return false;
    }
    if (s.pos.peg_of(1) != start && !s.smallest_moved)
        || (s.pos.peg_of(n) != start && !s.largest_moved)
    {
        return false;
    }
    s.pos.tower_peg().is_none() || c.is_terminal(s)
}

fn random_seq(rng: &mut ChaCha8Rng, depth: u32) -> SeqExpr {
    let pick = if depth == 0 { 0 } else { rng.gen_range(0..4) };
    match pick {
        0 => {
            let a = rng.gen_range(1..=3u8);
            let b = [1u8, 2, 3]
                .into_iter()
                .filter(|&p| p != a)
                .nth(rng.gen_range(0..2))
                .unwrap();
            SeqExpr::atom(a, b)
        }
        1 => SeqExpr::concat(
            (0..rng.gen_range(1..4))
                .map(|_| random_seq(rng, depth - 1))
                .collect::<Vec<_>>(),
        ),
        2 => SeqExpr::repeat(random_seq(rng, depth - 1), rng.gen_range(0..3)),
        _ => random_seq(rng, depth - 1).reversed(),
    }
}

fn random_game(c: &GameConfig, rng: &mut ChaCha8Rng, plies: usize) -> Vec<Move> {
    let mut s = c.initial_state();
    let mut out = Vec::new();
    for _ in 0..plies {
        if c.is_terminal(&s) {
            break;
        }
        let moves = c.legal_moves(&s);
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.gen_range(0..moves.len())];
        s = s.play(m);
        out.push(m);
    }
    out
}

fn properties() -> Check {
    let mut states = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let boards: Vec<(u8, u8)> = (1..=6)
        .map(|n| (n, 3))
        .chain((1..=3).map(|n| (n, 4)))
        .collect();
    for (n, l) in boards {
        for ec in EndingCondition::ALL {
            if !ec.applicable(n) {
                continue;
            }
            let c = cfg(n, l, ec);
            for i in 0..c.state_count() {
                let s = c.state_decode(i).map_err(|e| e.to_string())?;
                ensure(c.state_index(&s) == i, || {
                    format!("index round trip failed at {i}")
                })?;
                let p = s.pos.index(l);
                ensure(hanoi_core::Position::from_index(p, n, l) == s.pos, || {
                    format!("position {p}")
                })?;
                if !plausible(&c, &s) || c.is_terminal(&s) {
                    continue;
                }
                states += 1;
                let moves = c.legal_moves(&s);
                for m in &moves {
                    let t = c.apply(&s, *m).map_err(|e| e.to_string())?;
                    ensure(
                        (!s.largest_moved || t.largest_moved)
                            && (!s.smallest_moved || t.smallest_moved),
                        || format!("flags dropped on {}", s.to_text(l)),
                    )?;
                    if t.pos.tower_peg().is_some() && n >= 2 {
                        ensure(t.last_moved == Some(1), || {
                            format!("tower completed by a big disk from {}", s.to_text(l))
                        })?;
                    }
                }
                if n >= 2 && s.last_moved.is_some() {
                    ensure(!moves.is_empty(), || format!("stuck at {}", s.to_text(l)))?;
                }
                if l == 3 && n >= 2 && s.last_moved == Some(1) {
                    ensure(moves.len() == 1, || {
                        format!("{} replies at {}", moves.len(), s.to_text(l))
                    })?;
                }
            }
            for _ in 0..20 {
                let e = random_seq(&mut rng, 3);
                ensure(e.reversed().reversed() == e, || {
                    format!("reverse of {e} is not an involution")
                })?;
                let mut fwd: Vec<_> = e
                    .expand()
                    .iter()
                    .map(|m| (m.from.min(m.to), m.from.max(m.to)))
                    .collect();
                let mut bwd: Vec<_> = e
                    .reversed()
                    .expand()
                    .iter()
                    .map(|m| (m.from.min(m.to), m.from.max(m.to)))
                    .collect();
                fwd.sort_unstable();
                bwd.sort_unstable();
                ensure(fwd == bwd, || format!("reversal of {e} changes edges"))?;
                let w = random_weights(&mut rng);
                let game = random_game(&c, &mut rng, 24);
                let whole = replay_moves(&c, &c.initial_state(), &game, Some(&w));
                let cut = (game.len() / 2) & !1;
                let head = replay_moves(&c, &c.initial_state(), &game[..cut], Some(&w));
                let tail = replay_moves(&c, &head.final_state, &game[cut..], Some(&w));
                ensure(
                    whole.legal && head.delta + tail.delta == whole.delta,
                    || format!("score not additive over a split game on n={n} l={l}"),
                )?;
            }
        }
    }
    Ok(format!("{states} non-terminal states checked"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("two-disk table fixtures", table_fixtures),
        ("three-peg normal play", three_peg_normal),
        ("four-peg normal play", four_peg_normal),
        ("minimal transfer and return scores", transfer_scores),
        ("two-disk scoring region", two_disk_region),
        ("score-pump strategy", pump_strategy),
        ("scoring move bounds", move_bounds),
        ("graph export", graph_export),
        ("rule properties", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS [{detail}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{detail}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
