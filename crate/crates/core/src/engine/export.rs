use std::fmt::Write as _;

use crate::pitch::TraceRecord;

use super::MatchResult;

/// One JSON object per event, newline-terminated.
pub fn events_jsonl(result: &MatchResult) -> String {
    let mut out = String::new();
    for e in &result.events {
        // Serializing plain data into a String cannot fail.
        out.push_str(&serde_json::to_string(e).expect("event serializes"));
        out.push('\n');
    }
    out
}

/// The ball trace as CSV with header `tick,lx,ly,lcx,lcy,possession`.
pub fn trace_csv(result: &MatchResult) -> String {
    let mut out = String::with_capacity(24 * (result.ball_trace.len() + 1));
    out.push_str("tick,lx,ly,lcx,lcy,possession\n");
    for r in &result.ball_trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.tick, r.lx, r.ly, r.lcx, r.lcy, r.possession
        );
    }
    out
}

/// Reads back the output of [`trace_csv`]. Errors name the 1-based line.
pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "tick,lx,ly,lcx,lcy,possession" => {}
        _ => return Err("line 1: expected header `tick,lx,ly,lcx,lcy,possession`".into()),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| format!("line {}: {what}", i + 1);
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 6 {
            return Err(bad("expected 6 fields"));
        }
        let int = |s: &str| {
            s.parse::<i32>()
                .map_err(|_| bad(&format!("`{s}` is not an integer")))
        };
        out.push(TraceRecord {
            tick: f[0]
                .parse()
                .map_err(|_| bad(&format!("`{}` is not a tick", f[0])))?,
            lx: int(f[1])?,
            ly: int(f[2])?,
            lcx: int(f[3])?,
            lcy: int(f[4])?,
            possession: f[5].parse().map_err(|e: String| bad(&e))?,
        });
    }
    Ok(out)
}
