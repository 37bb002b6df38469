//! The FerSML 0.0.2 grammar's value constraints, hard-coded.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::paths;
use super::{Avatar, Coach, DuelKind, Factor, FersmlDocument, Formation, ProbTable};

/// The constraint a finding violates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// `xsd:integer { minInclusive maxInclusive }`
    IntRange { min: i64, max: i64 },
    /// `xsd:float { minInclusive maxInclusive }`
    FloatRange { min: f64, max: f64 },
    /// `xsd:positiveInteger`
    PositiveInteger,
    /// Value outside a closed token list.
    ClosedEnum { allowed: &'static str },
    /// Two anchors of one probability table share a distance.
    DuplicateDist,
    /// Factor percents of one skill-impact list add up to more than 100.
    PercentSum,
    /// A formation places the same player id twice.
    DuplicatePlayerId,
    /// Two starting-team entries apply to the same player id and formation.
    DuplicateLineupEntry,
    /// `formation+`: the play system is empty.
    MissingFormation,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::IntRange { min, max } => write!(f, "integer range [{min}, {max}]"),
            Rule::FloatRange { min, max } => write!(f, "float range [{min:.2}, {max:.2}]"),
            Rule::PositiveInteger => f.write_str("positiveInteger (>= 1)"),
            Rule::ClosedEnum { allowed } => write!(f, "closed token set {allowed}"),
            Rule::DuplicateDist => f.write_str("unique dist per probability table"),
            Rule::PercentSum => f.write_str("factor percents sum <= 100"),
            Rule::DuplicatePlayerId => f.write_str("unique player_id per formation"),
            Rule::DuplicateLineupEntry => {
                f.write_str("one starting_team entry per player_id and formation_name")
            }
            Rule::MissingFormation => f.write_str("at least one formation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    /// Element path, e.g. `fersml/coach/starting_team/player[3]@player_id`.
    pub path: String,
    #[serde(flatten)]
    pub rule: Rule,
    /// Offending value as text.
    pub value: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: `{}` violates {}", self.path, self.value, self.rule)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

pub const POSITIONS_RULE: &str = "Positions";
pub const FOOT_RULE: &str = "{both, left, right}";

struct Checker {
    findings: Vec<Finding>,
}

impl Checker {
    fn push(&mut self, path: String, rule: Rule, value: impl ToString) {
        self.findings.push(Finding {
            path,
            rule,
            value: value.to_string(),
        });
    }

    fn int(&mut self, path: String, value: i64, min: i64, max: i64) -> bool {
        if (min..=max).contains(&value) {
            return true;
        }
        self.push(path, Rule::IntRange { min, max }, value);
        false
    }

    fn float(&mut self, path: String, value: f64, min: f64, max: f64) {
        // NaN fails the containment test as well.
        if !(min..=max).contains(&value) {
            self.push(path, Rule::FloatRange { min, max }, value);
        }
    }

    fn positive(&mut self, path: String, value: i64) {
        if value < 1 {
            self.push(path, Rule::PositiveInteger, value);
        }
    }

    fn coach(&mut self, coach: &Coach) {
        let mut seen: BTreeMap<(i64, Option<&str>), usize> = BTreeMap::new();
        for (i, p) in coach.starting_team.iter().enumerate() {
            let base = paths::player(i);
            self.int(paths::attr(&base, "player_id"), p.player_id, 1, 11);
            self.int(paths::attr(&base, "squad_number"), p.squad_number, 0, 99);
            let key = (p.player_id, p.formation_name.as_deref());
            if seen.insert(key, i).is_some() {
                self.push(base, Rule::DuplicateLineupEntry, p.player_id);
            }
        }
    }

    fn avatar(&mut self, i: usize, avatar: &Avatar) {
        let base = paths::avatar(i);
        let person = paths::child(&base, "person");
        let p = &avatar.person;
        self.int(paths::attr(&person, "squad_number"), p.squad_number, 0, 99);
        self.positive(paths::child(&person, "age"), p.age);
        self.positive(paths::child(&person, "height"), p.height);
        self.positive(paths::child(&person, "weight"), p.weight);
        if !p.dominant_foot.is_known() {
            self.push(
                paths::child(&person, "dominant_foot"),
                Rule::ClosedEnum { allowed: FOOT_RULE },
                &p.dominant_foot,
            );
        }
        for (name, pos) in [
            ("usual_position", &p.usual_position),
            ("actual_position", &p.actual_position),
        ] {
            if pos.kind().is_none() {
                self.push(
                    paths::child(&person, name),
                    Rule::ClosedEnum {
                        allowed: POSITIONS_RULE,
                    },
                    pos,
                );
            }
        }

        let est = paths::child(&base, "estimations");
        let skills = paths::child(&est, "skills");
        let s = &avatar.estimations.skills;
        for (name, v) in [
            ("football_sense", s.football_sense),
            ("ball_technique", s.ball_technique),
            ("quickness", s.quickness),
        ] {
            self.int(paths::child(&skills, name), v, 1, 100);
        }

        let actions = paths::child(&est, "actions");
        let a = &avatar.estimations.actions;
        for (name, table) in [
            ("shutting_goal", &a.shutting_goal),
            ("gaining_ball", &a.gaining_ball),
        ] {
            if let Some(table) = table {
                self.prob_table(&paths::child(&actions, name), table);
            }
        }
    }

    fn prob_table(&mut self, base: &str, table: &ProbTable) {
        let mut prev: Option<f64> = None;
        for (j, &(dist, prob)) in table.entries().iter().enumerate() {
            let entry = paths::indexed(base, "prob", j);
            self.float(paths::attr(&entry, "dist"), dist, 0.0, 1024.0);
            self.float(entry.clone(), prob, 0.0, 1.0);
            if prev == Some(dist) {
                self.push(paths::attr(&entry, "dist"), Rule::DuplicateDist, dist);
            }
            prev = Some(dist);
        }
    }

    fn factors(&mut self, kind: DuelKind, factors: &[Factor]) {
        let base = paths::child(paths::IMPACT_BASE, kind.element_name());
        let mut all_in_range = true;
        for (j, f) in factors.iter().enumerate() {
            let path = paths::attr(&paths::indexed(&base, "factor", j), "percent");
            all_in_range &= self.int(path, f.percent, 1, 100);
        }
        // Only meaningful once each percent is individually valid.
        let sum: i64 = factors.iter().map(|f| f.percent).sum();
        if all_in_range && sum > 100 {
            self.push(base, Rule::PercentSum, sum);
        }
    }

    fn formation(&mut self, i: usize, formation: &Formation) {
        let base = paths::formation(i);
        let mut ids = BTreeSet::new();
        for (j, pp) in formation.positions.iter().enumerate() {
            let pos = paths::indexed(&base, "player_position", j);
            self.int(paths::attr(&pos, "player_id"), pp.player_id, 1, 11);
            if !ids.insert(pp.player_id) {
                self.push(
                    paths::attr(&pos, "player_id"),
                    Rule::DuplicatePlayerId,
                    pp.player_id,
                );
            }
            if let Some(desc) = &pp.desc {
                if desc.kind().is_none() {
                    self.push(
                        paths::attr(&pos, "desc"),
                        Rule::ClosedEnum {
                            allowed: POSITIONS_RULE,
                        },
                        desc,
                    );
                }
            }
            self.int(paths::child(&pos, "coord_x"), pp.coord_x, 0, 1024);
            self.int(paths::child(&pos, "coord_y"), pp.coord_y, 0, 640);
        }
    }
}

/// Checks every value constraint of the grammar plus the document-level rules
/// (unique dists, percent sums, unique formation ids, lineup ties).
/// Findings come out in document order.
pub fn validate_document(doc: &FersmlDocument) -> ValidationReport {
    let mut c = Checker {
        findings: Vec::new(),
    };
    c.coach(&doc.coach);
    for (i, avatar) in doc.avatars.iter().enumerate() {
        c.avatar(i, avatar);
    }
    for kind in DuelKind::ALL {
        c.factors(kind, doc.simulation.impact_of_skills.for_duel(kind));
    }
    if doc.simulation.tactics.is_empty() {
        c.push(
            paths::TACTICS_BASE.to_owned(),
            Rule::MissingFormation,
            "0 formations",
        );
    }
    for (i, formation) in doc.simulation.tactics.iter().enumerate() {
        c.formation(i, formation);
    }
    ValidationReport {
        findings: c.findings,
    }
}
