//! Seeded, discrete-time two-team match simulation.
//!
//! One tick is 100 ms. Each side fields ten players placed by one of its
//! document's formations; the away side is mirrored through the pitch
//! centre and attacks toward `x = 0`. Every probability the match loop uses
//! comes from the two documents: skill estimates weighted by the
//! `impact_of_skills` factors decide duels, `gaining_ball` tables decide
//! whether a defender gets close enough to contest, and `shutting_goal`
//! tables decide shots.

mod duel;
mod export;
mod rng;
mod sim;
mod squad;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{LineupError, ScoreError};
use crate::pitch::{Team, TraceRecord};

pub use duel::{
    attempt_shot, goal_probability, keep_probability, resolve_duel, DuelOutcome, ShotOutcome,
};
pub use export::{events_jsonl, parse_trace_csv, trace_csv};
pub use rng::MatchRng;
pub use sim::simulate_match;
pub use squad::{
    default_gaining_ball, default_shutting_goal, place_formation, DEFAULT_SKILL, TEAM_SIZE,
};

pub use crate::model::DuelKind;

/// Milliseconds per tick.
pub const TICK_MS: u32 = 100;
/// Two halves of 45 minutes.
pub const REGULATION_TICKS: u32 = 54_000;
/// Two halves of 15 minutes, knockout matches only.
pub const EXTRA_TIME_TICKS: u32 = 18_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PitchConfig {
    /// Metres per coordinate unit; 105 m over 1024 units by default.
    pub meters_per_unit: f64,
    pub regulation_ticks: u32,
}

impl Default for PitchConfig {
    fn default() -> Self {
        PitchConfig {
            meters_per_unit: 105.0 / 1024.0,
            regulation_ticks: REGULATION_TICKS,
        }
    }
}

impl PitchConfig {
    pub const WIDTH: i32 = crate::pitch::WIDTH;
    pub const HEIGHT: i32 = crate::pitch::HEIGHT;
    pub const TICK_MS: u32 = TICK_MS;

    pub fn with_ticks(regulation_ticks: u32) -> Self {
        PitchConfig {
            regulation_ticks,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("formation `{name}` has {count} positions, exactly {TEAM_SIZE} are required")]
    WrongPlayerCount { name: String, count: usize },
    #[error("document has no formation")]
    NoFormation,
    #[error("formation `{formation}`: {source}")]
    Lineup {
        formation: String,
        #[source]
        source: LineupError,
    },
    #[error("player_id {0} is not part of the chosen formation")]
    UnknownPlayer(i64),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Kickoff,
    Pass,
    Dribble,
    Tackle,
    Shot,
    Goal,
    Turnover,
    PeriodEnd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEvent {
    pub tick: u32,
    pub kind: EventKind,
    pub team: Option<Team>,
    pub player_id: Option<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub home: u32,
    pub away: u32,
}

impl Score {
    pub fn total(self) -> u32 {
        self.home + self.away
    }

    pub fn get(self, team: Team) -> u32 {
        match team {
            Team::Home => self.home,
            Team::Away => self.away,
        }
    }

    fn bump(&mut self, team: Team) {
        match team {
            Team::Home => self.home += 1,
            Team::Away => self.away += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// Goals in regulation and extra time. Shootout kicks are not counted.
    pub score: Score,
    /// Shootout conversions, when one was needed.
    pub shootout: Option<Score>,
    /// `None` only for a drawn non-knockout match.
    pub winner: Option<Team>,
    pub events: Vec<MatchEvent>,
    pub ball_trace: Vec<TraceRecord>,
    pub seed: u64,
    pub home_formation: String,
    pub away_formation: String,
}

impl MatchResult {
    pub fn goal_events(&self, team: Team) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::Goal && e.team == Some(team))
            .count()
    }
}
