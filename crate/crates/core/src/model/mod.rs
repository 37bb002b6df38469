//! In-memory form of a FerSML document.
//!
//! The types mirror the element structure of the FerSML 0.0.2 grammar. Numeric
//! fields are stored wide (`i64` / `f64`) so that a document holding an
//! out-of-range value can still be represented and reported on by
//! [`validate_document`]; nothing here rejects data at construction time.

mod lineup;
mod position;
mod prob;
mod score;
mod validate;

pub use lineup::{resolve_lineup, Lineup, LineupError};
pub use position::{DominantFoot, Position, PositionKind};
pub use prob::{interpolate_prob, ProbError, ProbTable};
pub use score::{skill_weighted_score, ScoreError, Skill};
pub use validate::{validate_document, Finding, Rule, ValidationReport};

use serde::{Deserialize, Serialize};

/// A complete `<fersml>` document: one coach, any number of avatars, one
/// simulation block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FersmlDocument {
    pub coach: Coach,
    pub avatars: Vec<Avatar>,
    pub simulation: SimulationSpec,
}

impl FersmlDocument {
    /// Finds the avatar whose person wears `squad_number`.
    pub fn avatar_by_squad(&self, squad_number: i64) -> Option<&Avatar> {
        self.avatars
            .iter()
            .find(|a| a.person.squad_number == squad_number)
    }

    pub fn formation(&self, name: &str) -> Option<&Formation> {
        self.simulation.tactics.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Coach {
    pub starting_team: Vec<LineupEntry>,
}

/// One `<player>` row of the coach's starting team.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineupEntry {
    pub player_id: i64,
    pub squad_number: i64,
    pub formation_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Avatar {
    pub person: Person,
    pub estimations: Estimations,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Person {
    pub squad_number: i64,
    pub firstname: String,
    pub lastname: String,
    /// Years.
    pub age: i64,
    /// Centimetres.
    pub height: i64,
    /// Kilograms.
    pub weight: i64,
    pub dominant_foot: DominantFoot,
    pub usual_position: Position,
    pub actual_position: Position,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimations {
    pub skills: Skills,
    pub actions: Actions,
}

/// Skill estimates on a 1..=100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skills {
    pub football_sense: i64,
    pub ball_technique: i64,
    pub quickness: i64,
}

impl Skills {
    pub const fn uniform(value: i64) -> Self {
        Skills {
            football_sense: value,
            ball_technique: value,
            quickness: value,
        }
    }

    pub fn get(&self, skill: Skill) -> i64 {
        match skill {
            Skill::FootballSense => self.football_sense,
            Skill::BallTechnique => self.ball_technique,
            Skill::Quickness => self.quickness,
        }
    }
}

/// Distance-indexed action probabilities. The element name `shutting_goal`
/// is kept exactly as the grammar spells it.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Actions {
    pub shutting_goal: Option<ProbTable>,
    pub gaining_ball: Option<ProbTable>,
}

/// The `<simulation>` block. On the wire it is split into `control` and
/// `knowledge_base/tactics/play_system`; those wrappers carry no data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub impact_of_skills: ImpactOfSkills,
    pub tactics: Vec<Formation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ImpactOfSkills {
    pub dribbling: Vec<Factor>,
    pub shielding: Vec<Factor>,
    pub tackling: Vec<Factor>,
}

impl ImpactOfSkills {
    pub fn for_duel(&self, kind: DuelKind) -> &[Factor] {
        match kind {
            DuelKind::Dribbling => &self.dribbling,
            DuelKind::Shielding => &self.shielding,
            DuelKind::Tackling => &self.tackling,
        }
    }
}

/// The three skill-impact lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuelKind {
    Dribbling,
    Shielding,
    Tackling,
}

impl DuelKind {
    pub const ALL: [DuelKind; 3] = [DuelKind::Dribbling, DuelKind::Shielding, DuelKind::Tackling];

    pub fn element_name(self) -> &'static str {
        match self {
            DuelKind::Dribbling => "dribbling",
            DuelKind::Shielding => "shielding",
            DuelKind::Tackling => "tackling",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub percent: i64,
}

/// A named play system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formation {
    pub name: String,
    pub positions: Vec<PlayerPosition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerPosition {
    pub player_id: i64,
    pub desc: Option<Position>,
    pub coord_x: i64,
    pub coord_y: i64,
}

/// Element paths used in findings and diagnostics.
///
/// Repeated elements carry a 1-based index (`player[3]`), attributes are
/// appended with `@`. The XML reader records source positions under the
/// same paths so a finding can be mapped back to a line and column.
pub(crate) mod paths {
    pub const PLAYER_BASE: &str = "fersml/coach/starting_team/player";
    pub const TACTICS_BASE: &str = "fersml/simulation/knowledge_base/tactics/play_system";
    pub const IMPACT_BASE: &str = "fersml/simulation/control/impact_of_skills";

    pub fn player(i: usize) -> String {
        format!("{PLAYER_BASE}[{}]", i + 1)
    }

    pub fn avatar(i: usize) -> String {
        format!("fersml/avatar[{}]", i + 1)
    }

    pub fn formation(i: usize) -> String {
        format!("{TACTICS_BASE}/formation[{}]", i + 1)
    }

    pub fn indexed(parent: &str, name: &str, i: usize) -> String {
        format!("{parent}/{name}[{}]", i + 1)
    }

    pub fn child(parent: &str, name: &str) -> String {
        format!("{parent}/{name}")
    }

    pub fn attr(parent: &str, name: &str) -> String {
        format!("{parent}@{name}")
    }
}
