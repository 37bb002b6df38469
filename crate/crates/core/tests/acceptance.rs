//! Acceptance criteria, one line each. Run with
//! `cargo test -p fersml --test acceptance`.
//!
//! Every criterion runs at its stated tolerance and time budget. The
//! process fails if any criterion fails, except those listed in
//! [`KNOWN_UNATTAINABLE`], which still print FAIL with the measured gap.

mod common;

use std::time::{Duration, Instant};

use fersml::assets::SAMPLE_XML;
use fersml::engine::{simulate_match, EventKind, PitchConfig};
use fersml::forcefield::{magnitude_color, ForceField};
use fersml::model::validate_document;
use fersml::pitch::{Team, HEIGHT, WIDTH};
use fersml::stats::reference::{real_goals, simulated_row};
use fersml::stats::{describe, mann_whitney, runs_test, DEFAULT_ALPHA};
use fersml::tournament::{default_teams, repeat_world_cups, simulate_world_cup};
use fersml::xml::{parse_fersml, serialize_fersml, DiagnosticKind};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot pass as stated; the reason is printed with the
/// result.
const KNOWN_UNATTAINABLE: &[&str] = &["4b"];

type Check = Result<String, String>;

/// Id, name, time budget, check.
type Criterion = (&'static str, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- 1

struct Mutation {
    label: &'static str,
    from: &'static str,
    to: &'static str,
    /// Substring the single diagnostic's message must contain.
    names: &'static str,
    kind: DiagnosticKind,
}

const fn facet(
    label: &'static str,
    from: &'static str,
    to: &'static str,
    names: &'static str,
) -> Mutation {
    Mutation {
        label,
        from,
        to,
        names,
        kind: DiagnosticKind::FacetViolation,
    }
}

const INT_1_11: &str = "integer range [1, 11]";
const INT_0_99: &str = "integer range [0, 99]";
const INT_1_100: &str = "integer range [1, 100]";
const POSITIVE: &str = "positiveInteger";
const PROB: &str = "float range [0.00, 1.00]";
const DIST: &str = "float range [0.00, 1024.00]";

const DRIBBLING_FACTOR: &str = "<dribbling>\n                    <factor name=\"ball technique\"\n                        percent=\"30\"";
const SHIELDING_FACTOR: &str = "<shielding>\n                    <factor name=\"football sense\"\n                        percent=\"30\"";
const TACKLING_FACTOR: &str = "<tackling>\n                    <factor name=\"ball technique\"\n                        percent=\"20\"";

fn mutations() -> Vec<Mutation> {
    vec![
        facet(
            "lineup player_id low",
            r#"player_id="2" squad_number="19""#,
            r#"player_id="0" squad_number="19""#,
            INT_1_11,
        ),
        facet(
            "lineup player_id high",
            r#"player_id="2" squad_number="19""#,
            r#"player_id="12" squad_number="19""#,
            INT_1_11,
        ),
        facet(
            "lineup squad_number low",
            r#"player_id="2" squad_number="19""#,
            r#"player_id="2" squad_number="-1""#,
            INT_0_99,
        ),
        facet(
            "lineup squad_number high",
            r#"player_id="2" squad_number="19""#,
            r#"player_id="2" squad_number="100""#,
            INT_0_99,
        ),
        facet(
            "person squad_number low",
            r#"<person squad_number="99">"#,
            r#"<person squad_number="-1">"#,
            INT_0_99,
        ),
        facet(
            "person squad_number high",
            r#"<person squad_number="99">"#,
            r#"<person squad_number="100">"#,
            INT_0_99,
        ),
        facet("age", "<age>99</age>", "<age>0</age>", POSITIVE),
        facet(
            "height",
            "<height>99</height>",
            "<height>0</height>",
            POSITIVE,
        ),
        facet(
            "weight",
            "<weight>99</weight>",
            "<weight>-3</weight>",
            POSITIVE,
        ),
        facet(
            "football_sense low",
            "<football_sense>97<",
            "<football_sense>0<",
            INT_1_100,
        ),
        facet(
            "football_sense high",
            "<football_sense>97<",
            "<football_sense>101<",
            INT_1_100,
        ),
        facet(
            "ball_technique low",
            "<ball_technique>92<",
            "<ball_technique>0<",
            INT_1_100,
        ),
        facet(
            "ball_technique high",
            "<ball_technique>92<",
            "<ball_technique>101<",
            INT_1_100,
        ),
        facet(
            "quickness low",
            "<quickness>87<",
            "<quickness>0<",
            INT_1_100,
        ),
        facet(
            "quickness high",
            "<quickness>87<",
            "<quickness>101<",
            INT_1_100,
        ),
        facet(
            "shutting_goal dist low",
            r#"<prob dist="5">"#,
            r#"<prob dist="-1">"#,
            DIST,
        ),
        facet(
            "shutting_goal dist high",
            r#"<prob dist="5">"#,
            r#"<prob dist="1025">"#,
            DIST,
        ),
        facet("shutting_goal prob low", "0.89", "-0.01", PROB),
        facet("shutting_goal prob high", "0.89", "1.01", PROB),
        facet(
            "gaining_ball dist low",
            r#"<prob dist="0.5">"#,
            r#"<prob dist="-0.5">"#,
            DIST,
        ),
        facet(
            "gaining_ball dist high",
            r#"<prob dist="0.5">"#,
            r#"<prob dist="1024.5">"#,
            DIST,
        ),
        facet("gaining_ball prob low", "0.64", "-0.1", PROB),
        facet("gaining_ball prob high", "0.64", "1.5", PROB),
        facet(
            "dribbling percent low",
            DRIBBLING_FACTOR,
            "<dribbling>\n<factor name=\"ball technique\" percent=\"0\"",
            INT_1_100,
        ),
        facet(
            "dribbling percent high",
            DRIBBLING_FACTOR,
            "<dribbling>\n<factor name=\"ball technique\" percent=\"101\"",
            INT_1_100,
        ),
        facet(
            "shielding percent low",
            SHIELDING_FACTOR,
            "<shielding>\n<factor name=\"football sense\" percent=\"0\"",
            INT_1_100,
        ),
        facet(
            "shielding percent high",
            SHIELDING_FACTOR,
            "<shielding>\n<factor name=\"football sense\" percent=\"101\"",
            INT_1_100,
        ),
        facet(
            "tackling percent low",
            TACKLING_FACTOR,
            "<tackling>\n<factor name=\"ball technique\" percent=\"0\"",
            INT_1_100,
        ),
        facet(
            "tackling percent high",
            TACKLING_FACTOR,
            "<tackling>\n<factor name=\"ball technique\" percent=\"101\"",
            INT_1_100,
        ),
        facet(
            "formation player_id low",
            r#"player_id="9" desc="defender""#,
            r#"player_id="0" desc="defender""#,
            INT_1_11,
        ),
        facet(
            "formation player_id high",
            r#"player_id="9" desc="defender""#,
            r#"player_id="12" desc="defender""#,
            INT_1_11,
        ),
        facet(
            "coord_x low",
            "<coord_x>845</coord_x>",
            "<coord_x>-1</coord_x>",
            "integer range [0, 1024]",
        ),
        facet(
            "coord_x high",
            "<coord_x>845</coord_x>",
            "<coord_x>1025</coord_x>",
            "integer range [0, 1024]",
        ),
        facet(
            "coord_y low",
            "<coord_y>470</coord_y>",
            "<coord_y>-1</coord_y>",
            "integer range [0, 640]",
        ),
        facet(
            "coord_y high",
            "<coord_y>470</coord_y>",
            "<coord_y>641</coord_y>",
            "integer range [0, 640]",
        ),
        facet(
            "dominant_foot enum",
            "<dominant_foot>both<",
            "<dominant_foot>north<",
            "closed token set",
        ),
        facet(
            "position enum",
            "left winger",
            "goal hanger",
            "closed token set",
        ),
        facet(
            "desc enum",
            r#"desc="central defender""#,
            r#"desc="libero""#,
            "closed token set",
        ),
        facet(
            "factor percent sum",
            r#"percent="20" />
                </dribbling>"#,
            r#"percent="71" />
                </dribbling>"#,
            "sum <= 100",
        ),
        Mutation {
            label: "order: lastname before firstname",
            from: "<firstname>Firstname</firstname>\n            <lastname>Lastname</lastname>",
            to: "<lastname>Lastname</lastname>\n            <firstname>Firstname</firstname>",
            names: "expected <firstname>",
            kind: DiagnosticKind::MissingElement,
        },
        Mutation {
            label: "closed content: extra element",
            from: "<age>99</age>",
            to: "<age>99</age><shoe_size>44</shoe_size>",
            names: "shoe_size",
            kind: DiagnosticKind::UnknownElement,
        },
        Mutation {
            label: "closed content: extra attribute",
            from: r#"<formation name="3-3-3">"#,
            to: r#"<formation name="3-3-3" style="x">"#,
            names: "style",
            kind: DiagnosticKind::UnknownElement,
        },
    ]
}

fn conformance() -> Check {
    let doc = parse_fersml(SAMPLE_XML.as_bytes()).map_err(|d| format!("sample rejected: {d:?}"))?;
    ensure(validate_document(&doc).is_valid(), || {
        "sample has findings".into()
    })?;
    let muts = mutations();
    let numeric_facets = muts
        .iter()
        .filter(|m| m.names.contains("range") || m.names == POSITIVE)
        .count();
    for m in &muts {
        assert!(SAMPLE_XML.contains(m.from), "fixture lacks {:?}", m.from);
        let xml = SAMPLE_XML.replacen(m.from, m.to, 1);
        let diags = match parse_fersml(xml.as_bytes()) {
            Ok(_) => return Err(format!("{}: accepted", m.label)),
            Err(d) => d,
        };
        ensure(diags.len() == 1, || {
            format!("{}: {} diagnostics {diags:?}", m.label, diags.len())
        })?;
        let d = &diags[0];
        ensure(d.kind == m.kind && d.message.contains(m.names), || {
            format!("{}: got {d}, want {} naming {:?}", m.label, m.kind, m.names)
        })?;
    }
    Ok(format!(
        "{} mutations ({} numeric out-of-range) each give exactly one diagnostic",
        muts.len(),
        numeric_facets
    ))
}

// ---------------------------------------------------------------- 2

fn round_trip() -> Check {
    let sample = parse_fersml(SAMPLE_XML.as_bytes()).map_err(|d| format!("{d:?}"))?;
    let again = parse_fersml(&serialize_fersml(&sample)).map_err(|d| format!("{d:?}"))?;
    ensure(again == sample, || "sample round trip differs".into())?;

    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 100,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]),
    );
    let cases = std::cell::Cell::new(0);
    runner
        .run(&common::valid_document(), |doc| {
            cases.set(cases.get() + 1);
            let back = parse_fersml(&serialize_fersml(&doc))
                .map_err(|d| proptest::test_runner::TestCaseError::fail(format!("{d:?}")))?;
            proptest::prop_assert_eq!(back, doc);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("sample plus {} generated documents", cases.get()))
}

// ---------------------------------------------------------------- 3

fn descriptive() -> Check {
    let s = describe(&simulated_row(1)).map_err(|e| e.to_string())?;
    ensure(
        (s.mean - 33.6).abs() <= 0.01 && (s.std_corrected - 6.09).abs() <= 0.01,
        || format!("mean {} s* {}", s.mean, s.std_corrected),
    )?;
    Ok(format!(
        "row 2: mean {:.4}, s* {:.4}",
        s.mean, s.std_corrected
    ))
}

// ---------------------------------------------------------------- 4

/// Frozen from the brute-force oracles in `stats_oracles.rs`.
const FROZEN_U: [f64; 8] = [48.5, 59.0, 31.5, 43.5, 54.0, 42.5, 34.0, 42.0];
const FROZEN_R: [f64; 8] = [15.0, 13.0, 14.0, 12.0, 13.0, 13.0, 12.0, 14.0];

fn hypothesis_tests() -> Check {
    let real = real_goals();
    for row in 0..8 {
        let sim = simulated_row(row);
        let mw = mann_whitney(&real, &sim, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
        let runs = runs_test(&real, &sim, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
        ensure(
            mw.statistic == FROZEN_U[row] && runs.statistic == FROZEN_R[row],
            || format!("row {}: U {} R {}", row + 1, mw.statistic, runs.statistic),
        )?;
        ensure(!mw.reject && !runs.reject, || {
            format!("row {} rejected", row + 1)
        })?;
    }
    Ok("8 rows: U and R match the oracles, neither test rejects".into())
}

/// All ways to label `m` of the pooled values as x.
fn label_splits(pool: &[f64], m: usize) -> impl Iterator<Item = (Vec<f64>, Vec<f64>)> + '_ {
    (0u32..1 << pool.len())
        .filter(move |mask| mask.count_ones() as usize == m)
        .map(move |mask| {
            let (mut x, mut y) = (Vec::new(), Vec::new());
            for (i, &v) in pool.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
            (x, y)
        })
}

fn exact_mw_p(x: &[f64], y: &[f64]) -> f64 {
    let u = |x: &[f64], y: &[f64]| {
        x.iter()
            .map(|a| y.iter().filter(|&&b| *a < b).count())
            .sum::<usize>() as f64
    };
    let centre = (x.len() * y.len()) as f64 / 2.0;
    let observed = (u(x, y) - centre).abs();
    let pool: Vec<f64> = x.iter().chain(y).copied().collect();
    let (mut hit, mut total) = (0u32, 0u32);
    for (a, b) in label_splits(&pool, x.len()) {
        total += 1;
        if (u(&a, &b) - centre).abs() >= observed - 1e-9 {
            hit += 1;
        }
    }
    f64::from(hit) / f64::from(total)
}

fn count_runs(x: &[f64], y: &[f64]) -> usize {
    let mut pool: Vec<(f64, u8)> = x
        .iter()
        .map(|&v| (v, 0))
        .chain(y.iter().map(|&v| (v, 1)))
        .collect();
    pool.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    1 + pool.windows(2).filter(|w| w[0].1 != w[1].1).count()
}

fn exact_runs_p(x: &[f64], y: &[f64]) -> f64 {
    let observed = count_runs(x, y);
    let pool: Vec<f64> = x.iter().chain(y).copied().collect();
    let (mut hit, mut total) = (0u32, 0u32);
    for (a, b) in label_splits(&pool, x.len()) {
        total += 1;
        if count_runs(&a, &b) <= observed {
            hit += 1;
        }
    }
    f64::from(hit) / f64::from(total)
}

fn exact_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst_mw, mut worst_runs) = ((0.0f64, 0usize), (0.0f64, 0usize));
    for n in 2..=7usize {
        for _ in 0..40 {
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.3).collect();
            let mw = mann_whitney(&x, &y, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
            let gap = (mw.p - exact_mw_p(&x, &y)).abs();
            if gap > worst_mw.0 {
                worst_mw = (gap, n);
            }
            let runs = runs_test(&x, &y, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
            let gap = (runs.p - exact_runs_p(&x, &y)).abs();
            if gap > worst_runs.0 {
                worst_runs = (gap, n);
            }
        }
    }
    let detail = format!(
        "max |p_normal - p_exact|: Mann-Whitney {:.4} (m=n={}), runs {:.4} (m=n={})",
        worst_mw.0, worst_mw.1, worst_runs.0, worst_runs.1
    );
    if worst_mw.0 <= 0.02 && worst_runs.0 <= 0.02 {
        Ok(detail)
    } else {
        Err(format!(
            "{detail}; the normal approximation is too coarse at these sizes (see the decisions log)"
        ))
    }
}

// ---------------------------------------------------------------- 5

fn force_field() -> Check {
    let d = [37.0, -12.0];
    for k in 1..=40 {
        let mut f = ForceField::new();
        for _ in 0..k {
            f.update_cell(100, 200, 137, 188, Team::Home)
                .map_err(|e| e.to_string())?;
        }
        let v = f.layer(Team::Home).get(100, 200);
        let expect = 1.0 - 2f64.powi(-k);
        ensure(
            (v[0] - d[0] * expect).abs() <= 1e-9 && (v[1] - d[1] * expect).abs() <= 1e-9,
            || format!("K={k}: {v:?}"),
        )?;
    }
    ensure(magnitude_color(0.0, 5.0) == Ok([0, 255, 0]), || {
        "n=0 color".into()
    })?;
    ensure(magnitude_color(5.0, 5.0) == Ok([255, 255, 0]), || {
        "n=N color".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut f = ForceField::new();
    for _ in 0..5_000 {
        let team = if rng.random::<bool>() {
            Team::Home
        } else {
            Team::Away
        };
        let p = |rng: &mut ChaCha8Rng| (rng.random_range(0..=40), rng.random_range(0..=30));
        let (lx, ly) = p(&mut rng);
        let (cx, cy) = p(&mut rng);
        f.update_cell(lx, ly, cx, cy, team)
            .map_err(|e| e.to_string())?;
    }
    let sum = f.sum_fields();
    for x in 0..=(WIDTH as usize) {
        for y in 0..=(HEIGHT as usize) {
            let (h, a) = (f.layer(Team::Home).get(x, y), f.layer(Team::Away).get(x, y));
            ensure(sum.get(x, y) == [h[0] + a[0], h[1] + a[1]], || {
                format!("sum differs at ({x}, {y})")
            })?;
        }
    }
    Ok("closed form K=1..40 within 1e-9, color endpoints exact, sum matches brute force".into())
}

// ---------------------------------------------------------------- 6

fn calibration() -> Check {
    let totals = repeat_world_cups(&default_teams(), &PitchConfig::default(), 2026, 10)
        .map_err(|e| e.to_string())?;
    let sim: Vec<f64> = totals.iter().map(|&t| f64::from(t)).collect();
    let real = real_goals();
    let mw = mann_whitney(&real, &sim, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
    let runs = runs_test(&real, &sim, DEFAULT_ALPHA).map_err(|e| e.to_string())?;
    let s = describe(&sim).map_err(|e| e.to_string())?;
    let detail = format!(
        "totals {totals:?}, mean {:.1}, Mann-Whitney p {:.3}, runs p {:.3}",
        s.mean, mw.p, runs.p
    );
    ensure(
        !mw.reject && !runs.reject && (22.0..=48.0).contains(&s.mean),
        || detail.clone(),
    )?;
    Ok(detail)
}

// ---------------------------------------------------------------- 7

fn determinism() -> Check {
    let teams = default_teams();
    let pitch = PitchConfig::default();
    for seed in 0..20 {
        let a =
            simulate_match(&teams[0], &teams[1], &pitch, seed, false).map_err(|e| e.to_string())?;
        let b =
            simulate_match(&teams[0], &teams[1], &pitch, seed, false).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("match seed {seed} differs"))?;
        let a = simulate_world_cup(&teams, &pitch, seed).map_err(|e| e.to_string())?;
        let b = simulate_world_cup(&teams, &pitch, seed).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("world cup seed {seed} differs"))?;
    }
    Ok("20 seeds: matches and world cups identical on re-run".into())
}

// ---------------------------------------------------------------- 8

fn sanity() -> Check {
    let teams = default_teams();
    let pitch = PitchConfig::default();
    let mut max_goals = 0;
    for seed in 0..100 {
        let r =
            simulate_match(&teams[0], &teams[1], &pitch, seed, false).map_err(|e| e.to_string())?;
        for t in &r.ball_trace {
            ensure(
                (0..=WIDTH).contains(&t.lx)
                    && (0..=HEIGHT).contains(&t.ly)
                    && (0..=WIDTH).contains(&t.lcx)
                    && (0..=HEIGHT).contains(&t.lcy),
                || format!("seed {seed} tick {}: out of bounds", t.tick),
            )?;
        }
        max_goals = max_goals.max(r.score.total());
        ensure(r.score.total() <= 20, || {
            format!("seed {seed}: {} goals", r.score.total())
        })?;
        for team in [Team::Home, Team::Away] {
            let has = r.events.iter().any(|e| {
                e.team == Some(team) && matches!(e.kind, EventKind::Pass | EventKind::Dribble)
            });
            ensure(has, || {
                format!("seed {seed}: no possession events for {team}")
            })?;
        }
    }
    Ok(format!(
        "100 matches in bounds, at most {max_goals} goals, both sides on the ball"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1", "conformance", Duration::from_secs(1), conformance),
        ("2", "round-trip", Duration::from_secs(5), round_trip),
        (
            "3",
            "descriptive statistics",
            Duration::from_secs(1),
            descriptive,
        ),
        (
            "4a",
            "hypothesis tests vs simulated rows",
            Duration::from_secs(10),
            hypothesis_tests,
        ),
        (
            "4b",
            "normal vs exact p, m=n<=7",
            Duration::from_secs(10),
            exact_agreement,
        ),
        ("5", "force-field math", Duration::from_secs(1), force_field),
        ("6", "calibration", Duration::from_secs(60), calibration),
        ("7", "determinism", Duration::from_secs(30), determinism),
        ("8", "engine sanity", Duration::from_secs(60), sanity),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > budget => Err(format!("{d}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id} {name}: {detail} ({took:.2?})"),
            Err(detail) => {
                let known = KNOWN_UNATTAINABLE.contains(&id);
                println!(
                    "FAIL criterion {id} {name}: {detail} ({took:.2?}){}",
                    if known { " [known, documented]" } else { "" }
                );
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
