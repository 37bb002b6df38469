use crate::model::{
    resolve_lineup, skill_weighted_score, DuelKind, FersmlDocument, Formation, PositionKind,
    ProbTable, Skills,
};
use crate::pitch::{Point, Team};

use super::EngineError;

/// Players per side.
pub const TEAM_SIZE: usize = 10;

/// Skill value used for players without an avatar.
pub const DEFAULT_SKILL: i64 = 50;

/// Shot table used when a player has none (the sample avatar's values).
pub fn default_shutting_goal() -> ProbTable {
    ProbTable::new(vec![(5.0, 0.89), (16.0, 0.84), (30.0, 0.47)])
}

/// Ball-gaining table used when a player has none (the sample avatar's values).
pub fn default_gaining_ball() -> ProbTable {
    ProbTable::new(vec![(0.5, 0.89), (1.0, 0.64), (2.0, 0.06)])
}

/// Starting coordinates for one side. Home uses the formation as written;
/// away is reflected through the pitch centre.
pub fn place_formation(
    formation: &Formation,
    side: Team,
) -> Result<[Point; TEAM_SIZE], EngineError> {
    if formation.positions.len() != TEAM_SIZE {
        return Err(EngineError::WrongPlayerCount {
            name: formation.name.clone(),
            count: formation.positions.len(),
        });
    }
    let mut out = [Point::new(0, 0); TEAM_SIZE];
    for (slot, pp) in out.iter_mut().zip(&formation.positions) {
        let p = Point::new(pp.coord_x as i32, pp.coord_y as i32);
        *slot = match side {
            Team::Home => p,
            Team::Away => p.mirrored(),
        };
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub(crate) struct PlayerProfile {
    pub player_id: i64,
    pub base: Point,
    pub quickness: i64,
    /// Indexed like [`DuelKind::ALL`].
    pub duel_score: [f64; 3],
    pub shutting_goal: ProbTable,
    pub gaining_ball: ProbTable,
}

impl PlayerProfile {
    pub fn score(&self, kind: DuelKind) -> f64 {
        self.duel_score[kind as usize]
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Squad {
    pub formation: String,
    pub players: Vec<PlayerProfile>,
    pub keeper: usize,
}

impl Squad {
    pub fn by_player_id(&self, id: i64) -> Option<&PlayerProfile> {
        self.players.iter().find(|p| p.player_id == id)
    }
}

fn usable_table(table: Option<&ProbTable>, fallback: fn() -> ProbTable) -> ProbTable {
    match table {
        Some(t) if !t.is_empty() => t.clone(),
        _ => fallback(),
    }
}

fn duel_score(doc: &FersmlDocument, skills: &Skills, kind: DuelKind) -> Result<f64, EngineError> {
    let factors = doc.simulation.impact_of_skills.for_duel(kind);
    if factors.is_empty() {
        return Ok(0.0);
    }
    Ok(skill_weighted_score(skills, factors)?)
}

fn build_for(
    doc: &FersmlDocument,
    formation: &Formation,
    side: Team,
) -> Result<Squad, EngineError> {
    let coords = place_formation(formation, side)?;
    let lineup =
        resolve_lineup(&doc.coach, &formation.name).map_err(|source| EngineError::Lineup {
            formation: formation.name.clone(),
            source,
        })?;

    let mut players = Vec::with_capacity(TEAM_SIZE);
    for (pp, base) in formation.positions.iter().zip(coords) {
        let squad_number = *lineup
            .get(&pp.player_id)
            .ok_or_else(|| EngineError::Lineup {
                formation: formation.name.clone(),
                source: crate::model::LineupError::UnresolvedPlayer(pp.player_id),
            })?;
        let avatar = doc.avatar_by_squad(squad_number);
        let skills = avatar.map_or(Skills::uniform(DEFAULT_SKILL), |a| a.estimations.skills);
        let actions = avatar.map(|a| &a.estimations.actions);
        let mut duel = [0.0; 3];
        for kind in DuelKind::ALL {
            duel[kind as usize] = duel_score(doc, &skills, kind)?;
        }
        players.push(PlayerProfile {
            player_id: pp.player_id,
            base,
            quickness: skills.quickness,
            duel_score: duel,
            shutting_goal: usable_table(
                actions.and_then(|a| a.shutting_goal.as_ref()),
                default_shutting_goal,
            ),
            gaining_ball: usable_table(
                actions.and_then(|a| a.gaining_ball.as_ref()),
                default_gaining_ball,
            ),
        });
    }

    let keeper = formation
        .positions
        .iter()
        .position(|pp| pp.desc.as_ref().and_then(|d| d.kind()) == Some(PositionKind::Keeper))
        .or_else(|| formation.positions.iter().position(|pp| pp.player_id == 1))
        .unwrap_or_else(|| {
            // Closest to the own goal line.
            let own_x = match side {
                Team::Home => 0,
                Team::Away => crate::pitch::WIDTH,
            };
            (0..players.len())
                .min_by_key(|&i| (players[i].base.x - own_x).abs())
                .unwrap_or(0)
        });

    Ok(Squad {
        formation: formation.name.clone(),
        players,
        keeper,
    })
}

/// Fields a side from the first formation that has ten positions and a
/// resolvable lineup.
pub(crate) fn build_squad(doc: &FersmlDocument, side: Team) -> Result<Squad, EngineError> {
    let mut first_err = None;
    for formation in &doc.simulation.tactics {
        match build_for(doc, formation, side) {
            Ok(squad) => return Ok(squad),
            Err(e @ EngineError::Score(_)) => return Err(e),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or(EngineError::NoFormation))
}
