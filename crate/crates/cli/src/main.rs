//! `fersml`: validate FerSML documents, play matches and World Cups, and
//! compare goal distributions.
//!
//! Exit codes: 0 success (or samples not rejected), 1 validation failure,
//! 2 usage or I/O error, 3 statistical rejection.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fersml::engine::{
    events_jsonl, parse_trace_csv, simulate_match, trace_csv, PitchConfig, REGULATION_TICKS,
};
use fersml::forcefield::{render, ForceField, RenderMode};
use fersml::model::FersmlDocument;
use fersml::pitch::{Team, TraceRecord};
use fersml::stats::{compare_distributions, describe, reference, TestResult, DEFAULT_ALPHA};
use fersml::tournament::{run_world_cups, ParameterSetting, BRACKET_LEN};
use fersml::xml::parse_fersml;

#[derive(Parser)]
#[command(name = "fersml", version, about = "FerSML football simulation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check documents against the FerSML grammar and facets.
    Validate {
        /// Files, or `@sample` / `@default` for the built-in documents.
        #[arg(required = true)]
        paths: Vec<String>,
    },
    /// Play one match and write events.jsonl and trace.csv.
    Match {
        home: String,
        away: String,
        #[command(flatten)]
        run: RunArgs,
        /// Play extra time and penalties if level.
        #[arg(long)]
        knockout: bool,
        /// Also write home, away and sum force fields.
        #[arg(long, value_enum)]
        render: Option<Render>,
    },
    /// Play final-eight tournaments and write goal totals and a summary.
    Worldcup {
        /// Eight team documents in bracket order; none means eight copies
        /// of the built-in default team.
        teams: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// JSON parameter setting applied to every team.
        #[arg(long)]
        setting: Option<PathBuf>,
    },
    /// Mann-Whitney and runs tests on two samples, one number per line.
    Compare {
        /// Files, or `@table1` / `@table2:ROW` (ROW 1 to 8).
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
    },
    /// Accumulate force fields from a trace.csv and render them.
    RenderField {
        trace: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Render::Heatmap)]
        render: Render,
    },
}

#[derive(Args)]
struct RunArgs {
    /// RNG seed. Without one a seed is derived from the inputs and printed.
    #[arg(long)]
    seed: Option<u64>,
    /// Regulation length in 100 ms ticks.
    #[arg(long, default_value_t = REGULATION_TICKS)]
    ticks: u32,
    #[arg(long)]
    meters_per_unit: Option<f64>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Heatmap,
    Vectors,
}

impl Render {
    fn mode(self) -> RenderMode {
        match self {
            Render::Heatmap => RenderMode::HeatmapPpm,
            Render::Vectors => RenderMode::VectorsCsv,
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Render::Heatmap => "ppm",
            Render::Vectors => "csv",
        }
    }
}

enum Failure {
    Invalid(String),
    Usage(String),
    Rejected,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Rejected => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read_input(token: &str) -> Result<Vec<u8>, Failure> {
    match token {
        "@sample" => Ok(fersml::assets::SAMPLE_XML.as_bytes().to_vec()),
        "@default" => Ok(fersml::assets::DEFAULT_TEAM_XML.as_bytes().to_vec()),
        path => fs::read(path).map_err(|e| io_err(Path::new(path), e)),
    }
}

fn load_document(token: &str) -> Result<(FersmlDocument, Vec<u8>), Failure> {
    let bytes = read_input(token)?;
    match parse_fersml(&bytes) {
        Ok(doc) => Ok((doc, bytes)),
        Err(diags) => {
            for d in &diags {
                eprintln!("{token}:{d}");
            }
            Err(Failure::Invalid(format!(
                "{token}: {} problem(s)",
                diags.len()
            )))
        }
    }
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| io_err(&path, e))
}

/// FNV-1a over the inputs, so runs without `--seed` are still reproducible.
fn derived_seed(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn pitch(run: &RunArgs) -> Result<PitchConfig, Failure> {
    let mut p = PitchConfig::with_ticks(run.ticks);
    if let Some(m) = run.meters_per_unit {
        if !(m.is_finite() && m > 0.0) {
            return Err(Failure::Usage(format!(
                "--meters-per-unit must be positive, got {m}"
            )));
        }
        p.meters_per_unit = m;
    }
    Ok(p)
}

fn cmd_validate(paths: &[String]) -> Outcome {
    let mut invalid = 0;
    for token in paths {
        let bytes = read_input(token)?;
        match parse_fersml(&bytes) {
            Ok(_) => println!("{token}: OK"),
            Err(diags) => {
                invalid += 1;
                for d in &diags {
                    println!("{token}:{d}");
                }
            }
        }
    }
    if invalid == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "{invalid} of {} file(s) invalid",
            paths.len()
        )))
    }
}

fn write_fields(trace: &[TraceRecord], out: &Path, kind: Render) -> Outcome {
    let mut field = ForceField::new();
    field
        .accumulate(trace)
        .map_err(|e| Failure::Usage(format!("trace: {e}")))?;
    let ext = kind.extension();
    for team in [Team::Home, Team::Away] {
        write(
            out,
            &format!("{team}.{ext}"),
            &render(field.layer(team), kind.mode()),
        )?;
    }
    write(
        out,
        &format!("sum.{ext}"),
        &render(&field.sum_fields(), kind.mode()),
    )
}

fn cmd_match(
    home: &str,
    away: &str,
    run: &RunArgs,
    knockout: bool,
    kind: Option<Render>,
) -> Outcome {
    let (h, hb) = load_document(home)?;
    let (a, ab) = load_document(away)?;
    let pitch = pitch(run)?;
    let seed = run
        .seed
        .unwrap_or_else(|| derived_seed(&[&hb, &ab, &pitch.regulation_ticks.to_le_bytes()]));
    println!("seed: {seed}");
    let result = simulate_match(&h, &a, &pitch, seed, knockout)
        .map_err(|e| Failure::Invalid(e.to_string()))?;

    write(&run.out, "events.jsonl", events_jsonl(&result).as_bytes())?;
    write(&run.out, "trace.csv", trace_csv(&result).as_bytes())?;
    if let Some(kind) = kind {
        write_fields(&result.ball_trace, &run.out, kind)?;
    }
    println!("{}:{}", result.score.home, result.score.away);
    if let Some(s) = result.shootout {
        println!("penalties {}:{}", s.home, s.away);
    }
    Ok(())
}

fn cmd_worldcup(teams: &[String], run: &RunArgs, count: usize, setting: Option<&Path>) -> Outcome {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let (docs, names, mut seed_parts): (Vec<FersmlDocument>, Vec<String>, Vec<Vec<u8>>) =
        if teams.is_empty() {
            let doc = fersml::assets::default_team();
            let names = (1..=BRACKET_LEN).map(|i| format!("team {i}")).collect();
            (vec![doc; BRACKET_LEN], names, vec![b"@default".to_vec()])
        } else if teams.len() == BRACKET_LEN {
            let mut docs = Vec::new();
            let mut parts = Vec::new();
            for t in teams {
                let (d, b) = load_document(t)?;
                docs.push(d);
                parts.push(b);
            }
            (docs, teams.to_vec(), parts)
        } else {
            return Err(Failure::Usage(format!(
                "worldcup needs exactly {BRACKET_LEN} teams, got {}",
                teams.len()
            )));
        };
    let mut teams: [FersmlDocument; BRACKET_LEN] = docs.try_into().expect("length checked");

    let setting = match setting {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let s: ParameterSetting = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            teams = s.apply_all(&teams);
            seed_parts.push(text.into_bytes());
            Some(s)
        }
        None => None,
    };

    let pitch = pitch(run)?;
    seed_parts.push(pitch.regulation_ticks.to_le_bytes().to_vec());
    let seed = run
        .seed
        .unwrap_or_else(|| derived_seed(&seed_parts.iter().map(Vec::as_slice).collect::<Vec<_>>()));
    println!("seed: {seed}");

    let cups =
        run_world_cups(&teams, &pitch, seed, count).map_err(|e| Failure::Invalid(e.to_string()))?;
    let totals: Vec<u32> = cups.iter().map(|c| c.total_goals).collect();
    let sample: Vec<f64> = totals.iter().map(|&t| f64::from(t)).collect();
    let stats = describe(&sample).ok();

    let summary = serde_json::json!({
        "seed": seed,
        "count": count,
        "regulation_ticks": pitch.regulation_ticks,
        "teams": names,
        "setting": setting,
        "totals": totals,
        "stats": stats,
        "world_cups": cups.iter().map(|c| serde_json::json!({
            "seed": c.seed,
            "total_goals": c.total_goals,
            "champion": names[c.champion],
            "bracket": c.bracket.iter().map(|m| serde_json::json!({
                "round": m.round,
                "home": names[m.home],
                "away": names[m.away],
                "score": m.result.score,
                "shootout": m.result.shootout,
                "seed": m.result.seed,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    for t in &totals {
        text.push_str(&format!("{t}\n"));
    }
    write(&run.out, "totals.txt", text.as_bytes())?;
    let json = serde_json::to_vec_pretty(&summary).expect("summary serializes");
    write(&run.out, "summary.json", &json)?;

    for (c, t) in cups.iter().zip(&totals) {
        println!("{} goals, champion {}", t, names[c.champion]);
    }
    if let Some(s) = stats {
        println!("mean {:.2}, s* {:.2}, n {}", s.mean, s.std_corrected, s.n);
    }
    Ok(())
}

fn load_sample(token: &str) -> Result<Vec<f64>, Failure> {
    if token == "@table1" {
        return Ok(reference::real_goals());
    }
    if let Some(row) = token.strip_prefix("@table2:") {
        return match row.parse::<usize>() {
            Ok(r @ 1..=8) => Ok(reference::simulated_row(r - 1)),
            _ => Err(Failure::Usage(format!("{token}: row must be 1 to 8"))),
        };
    }
    let path = Path::new(token);
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ => {
                return Err(Failure::Usage(format!(
                    "{token}:{}: `{line}` is not a number",
                    i + 1
                )))
            }
        }
    }
    if values.len() < 2 {
        return Err(Failure::Usage(format!(
            "{token}: need at least 2 values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn print_test(name: &str, t: &TestResult) {
    println!(
        "{name}: statistic {} z {:.4} p {:.4} {}{}",
        t.statistic,
        t.z,
        t.p,
        if t.reject { "rejected" } else { "not rejected" },
        if t.ties_present { " (ties)" } else { "" }
    );
}

fn cmd_compare(a: &str, b: &str, alpha: f64) -> Outcome {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Failure::Usage(format!(
            "--alpha must be in (0, 1), got {alpha}"
        )));
    }
    let x = load_sample(a)?;
    let y = load_sample(b)?;
    let c = compare_distributions(&x, &y, alpha).map_err(|e| Failure::Usage(e.to_string()))?;
    for (token, s) in [(a, &x), (b, &y)] {
        if let Ok(d) = describe(s) {
            println!(
                "{token}: n {} mean {:.2} s* {:.2}",
                d.n, d.mean, d.std_corrected
            );
        }
    }
    print_test("mann-whitney", &c.mann_whitney);
    print_test("runs", &c.runs);
    if c.overall_identical_not_rejected {
        println!("identical distributions not rejected at alpha {alpha}");
        Ok(())
    } else {
        println!("identical distributions rejected at alpha {alpha}");
        Err(Failure::Rejected)
    }
}

fn cmd_render_field(trace: &Path, out: &Path, kind: Render) -> Outcome {
    let text = fs::read_to_string(trace).map_err(|e| io_err(trace, e))?;
    let records =
        parse_trace_csv(&text).map_err(|e| Failure::Usage(format!("{}: {e}", trace.display())))?;
    write_fields(&records, out, kind)?;
    println!("{} ticks rendered", records.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { paths } => cmd_validate(paths),
        Command::Match {
            home,
            away,
            run,
            knockout,
            render,
        } => cmd_match(home, away, run, *knockout, *render),
        Command::Worldcup {
            teams,
            run,
            count,
            setting,
        } => cmd_worldcup(teams, run, *count, setting.as_deref()),
        Command::Compare { a, b, alpha } => cmd_compare(a, b, *alpha),
        Command::RenderField { trace, out, render } => cmd_render_field(trace, out, *render),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Invalid(m) | Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Rejected => {}
            }
            ExitCode::from(f.code())
        }
    }
}
