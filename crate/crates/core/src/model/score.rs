use thiserror::Error;

use super::{Factor, Skills};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Skill {
    FootballSense,
    BallTechnique,
    Quickness,
}

impl Skill {
    pub fn element_name(self) -> &'static str {
        match self {
            Skill::FootballSense => "football_sense",
            Skill::BallTechnique => "ball_technique",
            Skill::Quickness => "quickness",
        }
    }

    /// Maps a factor name onto a skill: lowercase, spaces become underscores,
    /// so `"ball technique"` names `ball_technique`.
    pub fn from_factor_name(name: &str) -> Option<Skill> {
        let key = name
            .split_whitespace()
            .collect::<Vec<_>>()
            .join("_")
            .to_lowercase();
        [Skill::FootballSense, Skill::BallTechnique, Skill::Quickness]
            .into_iter()
            .find(|s| s.element_name() == key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("factor `{0}` does not name a skill")]
    UnknownFactorName(String),
    #[error("factor list has zero total weight")]
    NoWeight,
}

/// Weighted mean of the referenced skills, normalized by the sum of the
/// factor percents (so partial weightings still land on the 1..=100 scale).
pub fn skill_weighted_score(skills: &Skills, factors: &[Factor]) -> Result<f64, ScoreError> {
    let mut weighted = 0.0;
    let mut total = 0.0;
    for factor in factors {
        let skill = Skill::from_factor_name(&factor.name)
            .ok_or_else(|| ScoreError::UnknownFactorName(factor.name.clone()))?;
        let w = factor.percent as f64;
        weighted += w * skills.get(skill) as f64;
        total += w;
    }
    if total <= 0.0 {
        return Err(ScoreError::NoWeight);
    }
    Ok(weighted / total)
}
