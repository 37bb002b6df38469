//! Mean goals per match for the default team against itself.
use fersml::assets::default_team;
use fersml::engine::{simulate_match, EventKind, PitchConfig};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let doc = default_team();
    let pitch = PitchConfig::default();
    let (mut goals, mut home, mut shots, mut tackles, mut passes) =
        (0u64, 0u64, 0usize, 0usize, 0usize);
    for seed in 0..n {
        let r = simulate_match(&doc, &doc, &pitch, seed, false).unwrap();
        goals += u64::from(r.score.total());
        home += u64::from(r.score.home);
        shots += r
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Shot)
            .count();
        tackles += r
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Tackle)
            .count();
        passes += r
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Pass)
            .count();
    }
    let n = n as f64;
    println!(
        "goals/match {:.3} home {:.3} shots {:.1} tackles {:.1} passes {:.1}",
        goals as f64 / n,
        home as f64 / n,
        shots as f64 / n,
        tackles as f64 / n,
        passes as f64 / n
    );
}
