use std::collections::BTreeMap;

use thiserror::Error;

use super::{Coach, LineupEntry};

/// Squad numbers keyed by player id, for one play system.
pub type Lineup = BTreeMap<i64, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineupError {
    #[error("player_id {0} has no entry for this formation and no default entry")]
    UnresolvedPlayer(i64),
    #[error("player_id {player_id} has more than one applicable entry")]
    AmbiguousEntry { player_id: i64 },
}

/// Picks a squad number for every player id named in the starting team.
///
/// An entry whose `formation_name` matches wins over an entry without one;
/// entries for other formations are ignored.
pub fn resolve_lineup(coach: &Coach, formation_name: &str) -> Result<Lineup, LineupError> {
    let mut by_id: BTreeMap<i64, Vec<&LineupEntry>> = BTreeMap::new();
    for entry in &coach.starting_team {
        by_id.entry(entry.player_id).or_default().push(entry);
    }

    let mut lineup = Lineup::new();
    for (id, entries) in by_id {
        let specific: Vec<_> = entries
            .iter()
            .filter(|e| e.formation_name.as_deref() == Some(formation_name))
            .collect();
        let default: Vec<_> = entries
            .iter()
            .filter(|e| e.formation_name.is_none())
            .collect();
        let chosen = match (specific.as_slice(), default.as_slice()) {
            ([one], _) => one,
            ([], [one]) => one,
            ([], []) => return Err(LineupError::UnresolvedPlayer(id)),
            _ => return Err(LineupError::AmbiguousEntry { player_id: id }),
        };
        lineup.insert(id, chosen.squad_number);
    }
    Ok(lineup)
}
