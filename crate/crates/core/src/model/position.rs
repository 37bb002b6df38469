use std::fmt;

use serde::{Deserialize, Serialize};

/// Collapses runs of whitespace to one space and trims both ends.
pub(crate) fn normalize_token(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The closed set of position tokens. `"full fback"` is spelled exactly as
/// the grammar has it; `"full back"` is not a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionKind {
    Keeper,
    Midfielder,
    DefensiveMidfielder,
    AttackingMidfielder,
    Winger,
    LeftWinger,
    RightWinger,
    Forward,
    DeepLyingForward,
    CentreForward,
    Striker,
    InsideForward,
    Playmaker,
    Sweeper,
    Defender,
    CentralDefender,
    CentreBack,
    WingBack,
    FullFback,
    HalfBack,
}

impl PositionKind {
    pub const ALL: [PositionKind; 20] = [
        PositionKind::Keeper,
        PositionKind::Midfielder,
        PositionKind::DefensiveMidfielder,
        PositionKind::AttackingMidfielder,
        PositionKind::Winger,
        PositionKind::LeftWinger,
        PositionKind::RightWinger,
        PositionKind::Forward,
        PositionKind::DeepLyingForward,
        PositionKind::CentreForward,
        PositionKind::Striker,
        PositionKind::InsideForward,
        PositionKind::Playmaker,
        PositionKind::Sweeper,
        PositionKind::Defender,
        PositionKind::CentralDefender,
        PositionKind::CentreBack,
        PositionKind::WingBack,
        PositionKind::FullFback,
        PositionKind::HalfBack,
    ];

    pub fn token(self) -> &'static str {
        match self {
            PositionKind::Keeper => "keeper",
            PositionKind::Midfielder => "midfielder",
            PositionKind::DefensiveMidfielder => "defensive midfielder",
            PositionKind::AttackingMidfielder => "attacking midfielder",
            PositionKind::Winger => "winger",
            PositionKind::LeftWinger => "left winger",
            PositionKind::RightWinger => "right winger",
            PositionKind::Forward => "forward",
            PositionKind::DeepLyingForward => "deep-lying forward",
            PositionKind::CentreForward => "centre forward",
            PositionKind::Striker => "striker",
            PositionKind::InsideForward => "inside forward",
            PositionKind::Playmaker => "playmaker",
            PositionKind::Sweeper => "sweeper",
            PositionKind::Defender => "defender",
            PositionKind::CentralDefender => "central defender",
            PositionKind::CentreBack => "centre back",
            PositionKind::WingBack => "wing back",
            PositionKind::FullFback => "full fback",
            PositionKind::HalfBack => "half back",
        }
    }

    /// Matches a token after whitespace normalization.
    pub fn from_token(raw: &str) -> Option<Self> {
        let norm = normalize_token(raw);
        Self::ALL.into_iter().find(|k| k.token() == norm)
    }
}

/// A position value as written in a document. Holds the normalized text so
/// that an unknown token survives long enough to be reported.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position(String);

impl Position {
    pub fn new(raw: &str) -> Self {
        Position(normalize_token(raw))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn kind(&self) -> Option<PositionKind> {
        PositionKind::from_token(&self.0)
    }
}

impl From<PositionKind> for Position {
    fn from(kind: PositionKind) -> Self {
        Position(kind.token().to_owned())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `both`, `left` or `right`; anything else is kept verbatim and flagged by
/// validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantFoot(String);

impl DominantFoot {
    pub const TOKENS: [&'static str; 3] = ["both", "left", "right"];

    pub fn new(raw: &str) -> Self {
        DominantFoot(normalize_token(raw))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_known(&self) -> bool {
        Self::TOKENS.contains(&self.0.as_str())
    }
}

impl fmt::Display for DominantFoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}
