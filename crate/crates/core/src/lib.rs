//! FerSML documents and what can be done with them: validation, seeded
//! match and tournament simulation, socceral force fields, and the
//! Mann-Whitney and runs tests used to compare simulated goal totals with
//! real ones.
//!
//! ```
//! use fersml::assets::default_team;
//! use fersml::engine::{simulate_match, PitchConfig};
//!
//! let team = default_team();
//! let result = simulate_match(&team, &team, &PitchConfig::with_ticks(600), 1, false).unwrap();
//! println!("{}:{}", result.score.home, result.score.away);
//! ```

pub mod assets;
pub mod engine;
pub mod forcefield;
pub mod model;
pub mod pitch;
pub mod stats;
pub mod tournament;
pub mod xml;

/// The guide's chapters, compiled so their examples run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/documents.md")]
    mod documents {}
    #[doc = include_str!("../../../book/src/estimations.md")]
    mod estimations {}
    #[doc = include_str!("../../../book/src/matches.md")]
    mod matches {}
    #[doc = include_str!("../../../book/src/force-fields.md")]
    mod force_fields {}
    #[doc = include_str!("../../../book/src/world-cups.md")]
    mod world_cups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
