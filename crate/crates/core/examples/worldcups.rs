//! Goal totals of repeated default World Cups, tested against the real totals.
use fersml::engine::PitchConfig;
use fersml::stats::{compare_distributions, describe, reference::real_goals, DEFAULT_ALPHA};
use fersml::tournament::{default_teams, repeat_world_cups};

fn main() {
    let base: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let reps: u64 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let teams = default_teams();
    let real = real_goals();
    let mut rejected = 0;
    for r in 0..reps {
        let totals = repeat_world_cups(&teams, &PitchConfig::default(), base + 10 * r, 10).unwrap();
        let sim: Vec<f64> = totals.iter().map(|&g| f64::from(g)).collect();
        let c = compare_distributions(&real, &sim, DEFAULT_ALPHA).unwrap();
        let s = describe(&sim).unwrap();
        if !c.overall_identical_not_rejected {
            rejected += 1;
        }
        println!(
            "{totals:?} mean {:.1} sd {:.2} mw p {:.3} runs p {:.3}",
            s.mean, s.std_corrected, c.mann_whitney.p, c.runs.p
        );
    }
    println!("rejected {rejected}/{reps}");
}
