//! Pitch geometry and the ball-trace record shared by the engine and the
//! force-field accumulator.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest x coordinate (`coord_x` facet).
pub const WIDTH: i32 = 1024;
/// Largest y coordinate (`coord_y` facet).
pub const HEIGHT: i32 = 640;

pub const CENTER: Point = Point {
    x: WIDTH / 2,
    y: HEIGHT / 2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn in_bounds(self) -> bool {
        (0..=WIDTH).contains(&self.x) && (0..=HEIGHT).contains(&self.y)
    }

    pub fn clamped(self) -> Self {
        Point {
            x: self.x.clamp(0, WIDTH),
            y: self.y.clamp(0, HEIGHT),
        }
    }

    /// Reflection through the pitch centre.
    pub fn mirrored(self) -> Self {
        Point {
            x: WIDTH - self.x,
            y: HEIGHT - self.y,
        }
    }

    pub fn dist(self, other: Point) -> f64 {
        let dx = f64::from(self.x - other.x);
        let dy = f64::from(self.y - other.y);
        // sqrt is correctly rounded everywhere; hypot is not.
        (dx * dx + dy * dy).sqrt()
    }

    pub fn dist2(self, other: Point) -> i64 {
        let dx = i64::from(self.x - other.x);
        let dy = i64::from(self.y - other.y);
        dx * dx + dy * dy
    }
}

/// Home or away. As an index (`kiLep` in the original applet) home is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Team {
    Home,
    Away,
}

impl Team {
    pub fn index(self) -> usize {
        match self {
            Team::Home => 0,
            Team::Away => 1,
        }
    }

    pub fn other(self) -> Team {
        match self {
            Team::Home => Team::Away,
            Team::Away => Team::Home,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Team::Home => "home",
            Team::Away => "away",
        }
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Team {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "home" => Ok(Team::Home),
            "away" => Ok(Team::Away),
            other => Err(format!("expected `home` or `away`, got `{other}`")),
        }
    }
}

/// Ball state at the end of one tick: position `(lx, ly)`, target
/// `(lcx, lcy)` and the team in possession.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub tick: u32,
    pub lx: i32,
    pub ly: i32,
    pub lcx: i32,
    pub lcy: i32,
    pub possession: Team,
}
