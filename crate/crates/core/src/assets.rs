//! Files shipped with the crate.

/// The 0.0.2 sample document: one coach, one avatar, one 3-3-3 play system.
///
/// Player 3 only has formation-specific entries (`4-4-2`, `4-3-3`), so this
/// document validates but cannot field its own `3-3-3` formation.
pub const SAMPLE_XML: &str = include_str!("../assets/sample.fersml.xml");

/// The sample document plus a default starting-team entry for player 3
/// (squad 10), which makes the `3-3-3` lineup resolvable. Used as the
/// default team for matches and tournaments.
pub const DEFAULT_TEAM_XML: &str = include_str!("../assets/default_team.fersml.xml");

/// Real final-eight goal totals as `year,goals`.
pub const TABLE1_CSV: &str = include_str!("../assets/table1.csv");

/// Simulated final-eight goal totals as `row,index,goals`.
pub const TABLE2_CSV: &str = include_str!("../assets/table2.csv");

pub fn sample_document() -> crate::model::FersmlDocument {
    crate::xml::parse_fersml(SAMPLE_XML.as_bytes()).expect("bundled sample is valid")
}

pub fn default_team() -> crate::model::FersmlDocument {
    crate::xml::parse_fersml(DEFAULT_TEAM_XML.as_bytes()).expect("bundled default team is valid")
}
