//! The final eight of a World Cup: quarter-finals, semi-finals, the match
//! for third place and the final, all played as knockout matches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{simulate_match, EngineError, MatchResult, PitchConfig};
use crate::model::{FersmlDocument, ImpactOfSkills, Skills};
use crate::pitch::Team;

pub const BRACKET_LEN: usize = 8;

/// Bracket slot names in play order.
pub const ROUND_NAMES: [&str; BRACKET_LEN] = [
    "QF1",
    "QF2",
    "QF3",
    "QF4",
    "SF1",
    "SF2",
    "third place",
    "final",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketMatch {
    pub round: String,
    /// Indices into the team array.
    pub home: usize,
    pub away: usize,
    pub result: MatchResult,
}

impl BracketMatch {
    pub fn winner(&self) -> usize {
        match self.result.winner {
            Some(Team::Home) => self.home,
            Some(Team::Away) => self.away,
            None => unreachable!("knockout matches always have a winner"),
        }
    }

    pub fn loser(&self) -> usize {
        if self.winner() == self.home {
            self.away
        } else {
            self.home
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldCupResult {
    pub bracket: Vec<BracketMatch>,
    /// Regulation and extra-time goals over all eight matches.
    pub total_goals: u32,
    /// Index into the team array.
    pub champion: usize,
    pub seed: u64,
}

/// Seed for bracket slot `slot` of the tournament seeded with `seed`.
pub fn match_seed(seed: u64, slot: usize) -> u64 {
    // splitmix64 finaliser, so neighbouring tournament seeds do not share
    // match seeds.
    let mut z = seed
        .wrapping_mul(BRACKET_LEN as u64)
        .wrapping_add(slot as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Plays one final-eight bracket. Quarter-finals pair teams 0-1, 2-3, 4-5
/// and 6-7; the semi-finals pair the winners of QF1 and QF2, and of QF3
/// and QF4. The first-named team of each pairing plays at home.
pub fn simulate_world_cup(
    teams: &[FersmlDocument; BRACKET_LEN],
    pitch: &PitchConfig,
    seed: u64,
) -> Result<WorldCupResult, EngineError> {
    let mut bracket: Vec<BracketMatch> = Vec::with_capacity(BRACKET_LEN);
    let play =
        |bracket: &mut Vec<BracketMatch>, home: usize, away: usize| -> Result<(), EngineError> {
            let slot = bracket.len();
            let result = simulate_match(
                &teams[home],
                &teams[away],
                pitch,
                match_seed(seed, slot),
                true,
            )?;
            bracket.push(BracketMatch {
                round: ROUND_NAMES[slot].to_owned(),
                home,
                away,
                result,
            });
            Ok(())
        };

    for q in 0..4 {
        play(&mut bracket, 2 * q, 2 * q + 1)?;
    }
    let (a, b) = (bracket[0].winner(), bracket[1].winner());
    play(&mut bracket, a, b)?;
    let (a, b) = (bracket[2].winner(), bracket[3].winner());
    play(&mut bracket, a, b)?;
    let (a, b) = (bracket[4].loser(), bracket[5].loser());
    play(&mut bracket, a, b)?;
    let (a, b) = (bracket[4].winner(), bracket[5].winner());
    play(&mut bracket, a, b)?;

    let total_goals = bracket.iter().map(|m| m.result.score.total()).sum();
    let champion = bracket[BRACKET_LEN - 1].winner();
    Ok(WorldCupResult {
        bracket,
        total_goals,
        champion,
        seed,
    })
}

/// Goal totals of `count` tournaments, run `i` seeded with
/// `base_seed + i`. Runs execute in parallel; the output is in run order.
pub fn repeat_world_cups(
    teams: &[FersmlDocument; BRACKET_LEN],
    pitch: &PitchConfig,
    base_seed: u64,
    count: usize,
) -> Result<Vec<u32>, EngineError> {
    run_world_cups(teams, pitch, base_seed, count)
        .map(|v| v.into_iter().map(|wc| wc.total_goals).collect())
}

/// Like [`repeat_world_cups`] but keeps every bracket.
pub fn run_world_cups(
    teams: &[FersmlDocument; BRACKET_LEN],
    pitch: &PitchConfig,
    base_seed: u64,
    count: usize,
) -> Result<Vec<WorldCupResult>, EngineError> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| simulate_world_cup(teams, pitch, base_seed.wrapping_add(i)))
        .collect()
}

/// One "setting of parameters": overrides applied to every team before a
/// run. Absent fields leave the documents unchanged.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSetting {
    #[serde(default)]
    pub name: String,
    /// Replaces the skills of every avatar.
    #[serde(default)]
    pub skills: Option<Skills>,
    /// Replaces the duel factor lists.
    #[serde(default)]
    pub impact_of_skills: Option<ImpactOfSkills>,
}

impl ParameterSetting {
    pub fn apply(&self, doc: &FersmlDocument) -> FersmlDocument {
        let mut out = doc.clone();
        if let Some(skills) = self.skills {
            for avatar in &mut out.avatars {
                avatar.estimations.skills = skills;
            }
        }
        if let Some(impact) = &self.impact_of_skills {
            out.simulation.impact_of_skills = impact.clone();
        }
        out
    }

    pub fn apply_all(
        &self,
        teams: &[FersmlDocument; BRACKET_LEN],
    ) -> [FersmlDocument; BRACKET_LEN] {
        std::array::from_fn(|i| self.apply(&teams[i]))
    }
}

/// Eight copies of the default team.
pub fn default_teams() -> [FersmlDocument; BRACKET_LEN] {
    let doc = crate::assets::default_team();
    std::array::from_fn(|_| doc.clone())
}
