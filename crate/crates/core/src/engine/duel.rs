use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::model::{interpolate_prob, Avatar, DuelKind, FersmlDocument, ProbTable};
use crate::pitch::Team;

use super::rng::chance;
use super::squad::{build_squad, default_shutting_goal};
use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuelOutcome {
    AttackerKeeps,
    DefenderWins,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShotOutcome {
    Goal,
    Miss,
}

/// Chance that the attacker keeps the ball: `a / (a + d)`, one half when
/// both scores are zero.
pub fn keep_probability(attacker: f64, defender: f64) -> f64 {
    let (a, d) = (attacker.max(0.0), defender.max(0.0));
    if a + d == 0.0 {
        0.5
    } else {
        a / (a + d)
    }
}

pub(crate) fn duel_draw<R: Rng + ?Sized>(attacker: f64, defender: f64, rng: &mut R) -> DuelOutcome {
    if chance(rng, keep_probability(attacker, defender)) {
        DuelOutcome::AttackerKeeps
    } else {
        DuelOutcome::DefenderWins
    }
}

/// One duel between two players identified by `player_id` in their
/// documents' chosen formations. The attacker is scored with its own
/// document's factors for `duel`, the defender with its document's
/// tackling factors.
pub fn resolve_duel<R: Rng + ?Sized>(
    att_doc: &FersmlDocument,
    def_doc: &FersmlDocument,
    duel: DuelKind,
    att_id: i64,
    def_id: i64,
    rng: &mut R,
) -> Result<DuelOutcome, EngineError> {
    let att = build_squad(att_doc, Team::Home)?;
    let def = build_squad(def_doc, Team::Away)?;
    let a = att
        .by_player_id(att_id)
        .ok_or(EngineError::UnknownPlayer(att_id))?
        .score(duel);
    let d = def
        .by_player_id(def_id)
        .ok_or(EngineError::UnknownPlayer(def_id))?
        .score(DuelKind::Tackling);
    Ok(duel_draw(a, d, rng))
}

pub(crate) fn table_goal_probability(table: &ProbTable, dist_m: f64) -> f64 {
    interpolate_prob(table, dist_m).unwrap_or(0.0)
}

/// Scoring chance from `dist_m` metres, read off the shooter's
/// `shutting_goal` table (or the default table when the avatar is missing
/// or has none).
pub fn goal_probability(shooter: Option<&Avatar>, dist_m: f64) -> f64 {
    match shooter.and_then(|a| a.estimations.actions.shutting_goal.as_ref()) {
        Some(t) if !t.is_empty() => table_goal_probability(t, dist_m),
        _ => table_goal_probability(&default_shutting_goal(), dist_m),
    }
}

pub fn attempt_shot<R: Rng + ?Sized>(
    shooter: Option<&Avatar>,
    dist_m: f64,
    rng: &mut R,
) -> ShotOutcome {
    if chance(rng, goal_probability(shooter, dist_m)) {
        ShotOutcome::Goal
    } else {
        ShotOutcome::Miss
    }
}
