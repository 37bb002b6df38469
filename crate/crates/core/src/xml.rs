//! Reading and writing FerSML XML.
//!
//! `roxmltree` does the tokenizing (and refuses DTDs); the element structure
//! of the grammar is matched by hand here. Value constraints are left to
//! [`validate_document`], whose findings are mapped back to source positions.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use roxmltree::{Node, TextPos};
use serde::Serialize;

use crate::model::{
    paths, validate_document, Actions, Avatar, Coach, DominantFoot, DuelKind, Estimations, Factor,
    FersmlDocument, Formation, ImpactOfSkills, LineupEntry, Person, PlayerPosition, Position,
    ProbTable, SimulationSpec, Skills,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    MalformedXml,
    UnknownElement,
    FacetViolation,
    MissingElement,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::MalformedXml => "malformed_xml",
            DiagnosticKind::UnknownElement => "unknown_element",
            DiagnosticKind::FacetViolation => "facet_violation",
            DiagnosticKind::MissingElement => "missing_element",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub line: u32,
    pub column: u32,
    pub message: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

/// Parses and validates a FerSML document.
///
/// On success the document has no validation findings. On failure the
/// returned list is never empty.
pub fn parse_fersml(bytes: &[u8]) -> Result<FersmlDocument, Vec<ParseDiagnostic>> {
    let text = match std::str::from_utf8(bytes) {
        Ok(t) => t,
        Err(e) => {
            let (line, column) = line_col(bytes, e.valid_up_to());
            return Err(vec![ParseDiagnostic {
                line,
                column,
                message: format!("invalid UTF-8: {e}"),
                kind: DiagnosticKind::MalformedXml,
            }]);
        }
    };
    let xml = match roxmltree::Document::parse(text) {
        Ok(d) => d,
        Err(e) => {
            let pos = e.pos();
            return Err(vec![ParseDiagnostic {
                line: pos.row.max(1),
                column: pos.col.max(1),
                message: e.to_string(),
                kind: DiagnosticKind::MalformedXml,
            }]);
        }
    };

    let mut reader = Reader {
        xml: &xml,
        diags: Vec::new(),
        positions: HashMap::new(),
    };
    let doc = reader.document();
    if !reader.diags.is_empty() {
        return Err(reader.diags);
    }
    let Some(doc) = doc else {
        // Every failing path pushes a diagnostic; keep the contract regardless.
        return Err(vec![ParseDiagnostic {
            line: 1,
            column: 1,
            message: "document could not be read".into(),
            kind: DiagnosticKind::MalformedXml,
        }]);
    };

    let report = validate_document(&doc);
    if report.is_valid() {
        return Ok(doc);
    }
    Err(report
        .findings
        .iter()
        .map(|f| {
            let pos = reader.position_of(&f.path);
            ParseDiagnostic {
                line: pos.row,
                column: pos.col,
                message: f.to_string(),
                kind: DiagnosticKind::FacetViolation,
            }
        })
        .collect())
}

fn line_col(bytes: &[u8], offset: usize) -> (u32, u32) {
    let before = &bytes[..offset];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let col = offset
        - before
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1)
        + 1;
    (line as u32, col as u32)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Occurs {
    One,
    Optional,
    Many,
    OneOrMore,
}

impl Occurs {
    fn satisfied(self, n: usize) -> bool {
        match self {
            Occurs::One | Occurs::OneOrMore => n >= 1,
            Occurs::Optional | Occurs::Many => true,
        }
    }

    fn full(self, n: usize) -> bool {
        match self {
            Occurs::One | Occurs::Optional => n >= 1,
            Occurs::Many | Occurs::OneOrMore => false,
        }
    }
}

type Slots<'a, 'input> = Vec<Vec<Node<'a, 'input>>>;

struct Reader<'a, 'input> {
    xml: &'a roxmltree::Document<'input>,
    diags: Vec<ParseDiagnostic>,
    positions: HashMap<String, TextPos>,
}

impl<'a, 'input> Reader<'a, 'input> {
    fn pos(&self, offset: usize) -> TextPos {
        self.xml.text_pos_at(offset)
    }

    fn position_of(&self, path: &str) -> TextPos {
        // Fall back to the closest recorded ancestor.
        let mut p = path;
        loop {
            if let Some(pos) = self.positions.get(p) {
                return *pos;
            }
            match p.rfind(['/', '@']) {
                Some(i) => p = &p[..i],
                None => return TextPos::new(1, 1),
            }
        }
    }

    fn diag(&mut self, offset: usize, kind: DiagnosticKind, message: String) {
        let pos = self.pos(offset);
        self.diags.push(ParseDiagnostic {
            line: pos.row,
            column: pos.col,
            message,
            kind,
        });
    }

    fn record(&mut self, path: &str, node: Node) {
        let pos = self.pos(node.range().start);
        self.positions.insert(path.to_owned(), pos);
    }

    /// Matches the element children of `parent` against a sequence content
    /// model. Stops at the first ordering problem so one mistake gives one
    /// diagnostic.
    fn children(
        &mut self,
        parent: Node<'a, 'input>,
        model: &[(&str, Occurs)],
    ) -> Option<Slots<'a, 'input>> {
        let mut slots: Slots = vec![Vec::new(); model.len()];
        let mut slot = 0;
        let mut ok = true;
        for child in parent.children() {
            if child.is_text() {
                let t = child.text().unwrap_or_default();
                if !t.trim().is_empty() {
                    self.diag(
                        child.range().start,
                        DiagnosticKind::UnknownElement,
                        format!("unexpected text inside <{}>", parent.tag_name().name()),
                    );
                    ok = false;
                    break;
                }
                continue;
            }
            if !child.is_element() {
                continue;
            }
            let name = child.tag_name().name();
            if child.tag_name().namespace().is_some() {
                self.diag(
                    child.range().start,
                    DiagnosticKind::UnknownElement,
                    format!("namespaced element <{name}> is not part of FerSML"),
                );
                ok = false;
                break;
            }
            // Advance past satisfied slots until one accepts `name`.
            while slot < model.len()
                && (model[slot].0 != name || model[slot].1.full(slots[slot].len()))
                && model[slot].1.satisfied(slots[slot].len())
            {
                slot += 1;
            }
            if slot < model.len() && model[slot].0 == name && !model[slot].1.full(slots[slot].len())
            {
                slots[slot].push(child);
                continue;
            }
            let offset = child.range().start;
            if !model.iter().any(|(n, _)| *n == name) {
                self.diag(
                    offset,
                    DiagnosticKind::UnknownElement,
                    format!(
                        "unknown element <{name}> inside <{}>",
                        parent.tag_name().name()
                    ),
                );
            } else if slot < model.len() {
                self.diag(
                    offset,
                    DiagnosticKind::MissingElement,
                    format!("expected <{}> but found <{name}>", model[slot].0),
                );
            } else {
                self.diag(
                    offset,
                    DiagnosticKind::MissingElement,
                    format!(
                        "<{name}> is out of order or repeated inside <{}>",
                        parent.tag_name().name()
                    ),
                );
            }
            ok = false;
            break;
        }
        if ok {
            for (i, (name, occurs)) in model.iter().enumerate() {
                if !occurs.satisfied(slots[i].len()) {
                    self.diag(
                        parent.range().start,
                        DiagnosticKind::MissingElement,
                        format!("<{}> requires a <{name}> child", parent.tag_name().name()),
                    );
                    ok = false;
                    break;
                }
            }
        }
        ok.then_some(slots)
    }

    /// Checks the attribute set against `allowed`, returning values in the
    /// same order. Missing required attributes are reported.
    fn attributes(
        &mut self,
        node: Node<'a, 'input>,
        path: &str,
        allowed: &[(&str, bool)],
    ) -> Option<Vec<Option<&'a str>>> {
        let mut ok = true;
        let mut values = vec![None; allowed.len()];
        for attr in node.attributes() {
            let idx = allowed.iter().position(|(n, _)| *n == attr.name());
            match idx {
                Some(i) if attr.namespace().is_none() => {
                    values[i] = Some(attr.value());
                    let pos = self.pos(attr.range_value().start);
                    self.positions.insert(paths::attr(path, attr.name()), pos);
                }
                _ => {
                    self.diag(
                        attr.range().start,
                        DiagnosticKind::UnknownElement,
                        format!(
                            "unknown attribute `{}` on <{}>",
                            attr.name(),
                            node.tag_name().name()
                        ),
                    );
                    ok = false;
                }
            }
        }
        for (i, (name, required)) in allowed.iter().enumerate() {
            if *required && values[i].is_none() {
                self.diag(
                    node.range().start,
                    DiagnosticKind::MissingElement,
                    format!("<{}> requires attribute `{name}`", node.tag_name().name()),
                );
                ok = false;
            }
        }
        ok.then_some(values)
    }

    fn no_attributes(&mut self, node: Node<'a, 'input>, path: &str) -> Option<()> {
        self.attributes(node, path, &[]).map(|_| ())
    }

    /// Concatenated text of a leaf element; comments are skipped.
    fn leaf_text(&mut self, node: Node<'a, 'input>, path: &str) -> Option<String> {
        self.record(path, node);
        self.no_attributes(node, path)?;
        let mut out = String::new();
        for child in node.children() {
            if child.is_element() {
                self.diag(
                    child.range().start,
                    DiagnosticKind::UnknownElement,
                    format!(
                        "unknown element <{}> inside <{}>",
                        child.tag_name().name(),
                        node.tag_name().name()
                    ),
                );
                return None;
            }
            if child.is_text() {
                out.push_str(child.text().unwrap_or_default());
            }
        }
        Some(out)
    }

    fn int_value(&mut self, offset: usize, what: &str, raw: &str) -> Option<i64> {
        match parse_integer(raw) {
            Some(v) => Some(v),
            None => {
                self.diag(
                    offset,
                    DiagnosticKind::FacetViolation,
                    format!("{what}: `{}` is not an xsd:integer", raw.trim()),
                );
                None
            }
        }
    }

    fn float_value(&mut self, offset: usize, what: &str, raw: &str) -> Option<f64> {
        match parse_float(raw) {
            Some(v) => Some(v),
            None => {
                self.diag(
                    offset,
                    DiagnosticKind::FacetViolation,
                    format!("{what}: `{}` is not an xsd:float", raw.trim()),
                );
                None
            }
        }
    }

    fn int_leaf(&mut self, node: Node<'a, 'input>, path: &str) -> Option<i64> {
        let text = self.leaf_text(node, path)?;
        self.int_value(node.range().start, path, &text)
    }

    fn int_attr(
        &mut self,
        node: Node<'a, 'input>,
        name: &str,
        raw: &str,
        path: &str,
    ) -> Option<i64> {
        let offset = node
            .attributes()
            .find(|a| a.name() == name)
            .map_or(node.range().start, |a| a.range_value().start);
        self.int_value(offset, &paths::attr(path, name), raw)
    }

    fn document(&mut self) -> Option<FersmlDocument> {
        let root = self.xml.root_element();
        if root.tag_name().name() != "fersml" || root.tag_name().namespace().is_some() {
            self.diag(
                root.range().start,
                DiagnosticKind::UnknownElement,
                format!(
                    "root element must be <fersml>, found <{}>",
                    root.tag_name().name()
                ),
            );
            return None;
        }
        self.record("fersml", root);
        self.no_attributes(root, "fersml")?;
        let slots = self.children(
            root,
            &[
                ("coach", Occurs::One),
                ("avatar", Occurs::Many),
                ("simulation", Occurs::One),
            ],
        )?;
        let coach = self.coach(slots[0][0]);
        let avatars: Vec<_> = slots[1]
            .iter()
            .enumerate()
            .map(|(i, n)| self.avatar(i, *n))
            .collect();
        let simulation = self.simulation(slots[2][0]);
        Some(FersmlDocument {
            coach: coach?,
            avatars: avatars.into_iter().collect::<Option<_>>()?,
            simulation: simulation?,
        })
    }

    fn coach(&mut self, node: Node<'a, 'input>) -> Option<Coach> {
        let path = "fersml/coach";
        self.record(path, node);
        self.no_attributes(node, path)?;
        let slots = self.children(node, &[("starting_team", Occurs::One)])?;
        let team = slots[0][0];
        let team_path = paths::child(path, "starting_team");
        self.record(&team_path, team);
        self.no_attributes(team, &team_path)?;
        let players = self.children(team, &[("player", Occurs::Many)])?;
        let mut entries = Vec::new();
        let mut ok = true;
        for (i, &p) in players[0].iter().enumerate() {
            match self.lineup_entry(i, p) {
                Some(e) => entries.push(e),
                None => ok = false,
            }
        }
        ok.then_some(Coach {
            starting_team: entries,
        })
    }

    fn lineup_entry(&mut self, i: usize, node: Node<'a, 'input>) -> Option<LineupEntry> {
        let path = paths::player(i);
        self.record(&path, node);
        let attrs = self.attributes(
            node,
            &path,
            &[
                ("player_id", true),
                ("squad_number", true),
                ("formation_name", false),
            ],
        )?;
        self.children(node, &[])?;
        let player_id = self.int_attr(node, "player_id", attrs[0]?, &path);
        let squad_number = self.int_attr(node, "squad_number", attrs[1]?, &path);
        Some(LineupEntry {
            player_id: player_id?,
            squad_number: squad_number?,
            formation_name: attrs[2].map(str::to_owned),
        })
    }

    fn avatar(&mut self, i: usize, node: Node<'a, 'input>) -> Option<Avatar> {
        let path = paths::avatar(i);
        self.record(&path, node);
        self.no_attributes(node, &path)?;
        let slots = self.children(
            node,
            &[("person", Occurs::One), ("estimations", Occurs::One)],
        )?;
        let person = self.person(&paths::child(&path, "person"), slots[0][0]);
        let estimations = self.estimations(&paths::child(&path, "estimations"), slots[1][0]);
        Some(Avatar {
            person: person?,
            estimations: estimations?,
        })
    }

    fn person(&mut self, path: &str, node: Node<'a, 'input>) -> Option<Person> {
        self.record(path, node);
        let attrs = self.attributes(node, path, &[("squad_number", true)])?;
        let names = [
            "firstname",
            "lastname",
            "age",
            "height",
            "weight",
            "dominant_foot",
            "usual_position",
            "actual_position",
        ];
        let model: Vec<_> = names.iter().map(|n| (*n, Occurs::One)).collect();
        let slots = self.children(node, &model)?;
        let squad_number = self.int_attr(node, "squad_number", attrs[0]?, path);
        let mut texts = Vec::with_capacity(names.len());
        for (name, slot) in names.iter().zip(&slots) {
            texts.push(self.leaf_text(slot[0], &paths::child(path, name)));
        }
        let [firstname, lastname, age, height, weight, foot, usual, actual]: [Option<String>; 8] =
            texts.try_into().ok()?;
        let age = self.int_value(slots[2][0].range().start, "age", &age?);
        let height = self.int_value(slots[3][0].range().start, "height", &height?);
        let weight = self.int_value(slots[4][0].range().start, "weight", &weight?);
        Some(Person {
            squad_number: squad_number?,
            firstname: firstname?,
            lastname: lastname?,
            age: age?,
            height: height?,
            weight: weight?,
            dominant_foot: DominantFoot::new(&foot?),
            usual_position: Position::new(&usual?),
            actual_position: Position::new(&actual?),
        })
    }

    fn estimations(&mut self, path: &str, node: Node<'a, 'input>) -> Option<Estimations> {
        self.record(path, node);
        self.no_attributes(node, path)?;
        let slots = self.children(node, &[("skills", Occurs::One), ("actions", Occurs::One)])?;

        let skills_node = slots[0][0];
        let skills_path = paths::child(path, "skills");
        self.record(&skills_path, skills_node);
        self.no_attributes(skills_node, &skills_path)?;
        let s = self.children(
            skills_node,
            &[
                ("football_sense", Occurs::One),
                ("ball_technique", Occurs::One),
                ("quickness", Occurs::One),
            ],
        );
        let skills = s.and_then(|s| {
            let fs = self.int_leaf(s[0][0], &paths::child(&skills_path, "football_sense"));
            let bt = self.int_leaf(s[1][0], &paths::child(&skills_path, "ball_technique"));
            let q = self.int_leaf(s[2][0], &paths::child(&skills_path, "quickness"));
            Some(Skills {
                football_sense: fs?,
                ball_technique: bt?,
                quickness: q?,
            })
        });

        let actions_node = slots[1][0];
        let actions_path = paths::child(path, "actions");
        self.record(&actions_path, actions_node);
        self.no_attributes(actions_node, &actions_path)?;
        let a = self.children(
            actions_node,
            &[
                ("shutting_goal", Occurs::Optional),
                ("gaining_ball", Occurs::Optional),
            ],
        )?;
        let shutting_goal = a[0]
            .first()
            .map(|n| self.prob_table(&paths::child(&actions_path, "shutting_goal"), *n));
        let gaining_ball = a[1]
            .first()
            .map(|n| self.prob_table(&paths::child(&actions_path, "gaining_ball"), *n));
        Some(Estimations {
            skills: skills?,
            actions: Actions {
                shutting_goal: present(shutting_goal)?,
                gaining_ball: present(gaining_ball)?,
            },
        })
    }

    fn prob_table(&mut self, path: &str, node: Node<'a, 'input>) -> Option<ProbTable> {
        self.record(path, node);
        self.no_attributes(node, path)?;
        let slots = self.children(node, &[("prob", Occurs::Many)])?;
        let mut entries = Vec::new();
        let mut ok = true;
        for (j, &p) in slots[0].iter().enumerate() {
            let entry_path = paths::indexed(path, "prob", j);
            let attrs = self.attributes(p, &entry_path, &[("dist", true)]);
            let text = self.leaf_text_keep_attrs(p, &entry_path);
            let (Some(attrs), Some(text)) = (attrs, text) else {
                ok = false;
                continue;
            };
            let dist_offset = p
                .attributes()
                .find(|a| a.name() == "dist")
                .map_or(p.range().start, |a| a.range_value().start);
            let dist = attrs[0].and_then(|raw| self.float_value(dist_offset, "dist", raw));
            let prob = self.float_value(p.range().start, "prob", &text);
            match (dist, prob) {
                (Some(d), Some(v)) => entries.push((d, v)),
                _ => ok = false,
            }
        }
        // Sorting renumbers anchors; positions point at the table itself then.
        let sorted = entries.windows(2).all(|w| w[0].0 <= w[1].0);
        if !sorted {
            for j in 0..entries.len() {
                let entry_path = paths::indexed(path, "prob", j);
                self.positions.remove(&entry_path);
                self.positions.remove(&paths::attr(&entry_path, "dist"));
            }
        }
        ok.then(|| ProbTable::new(entries))
    }

    /// Like [`leaf_text`](Self::leaf_text) for elements that do carry
    /// attributes (checked separately by the caller).
    fn leaf_text_keep_attrs(&mut self, node: Node<'a, 'input>, path: &str) -> Option<String> {
        self.record(path, node);
        let mut out = String::new();
        for child in node.children() {
            if child.is_element() {
                self.diag(
                    child.range().start,
                    DiagnosticKind::UnknownElement,
                    format!(
                        "unknown element <{}> inside <{}>",
                        child.tag_name().name(),
                        node.tag_name().name()
                    ),
                );
                return None;
            }
            if child.is_text() {
                out.push_str(child.text().unwrap_or_default());
            }
        }
        Some(out)
    }

    fn simulation(&mut self, node: Node<'a, 'input>) -> Option<SimulationSpec> {
        let path = "fersml/simulation";
        self.record(path, node);
        self.no_attributes(node, path)?;
        let slots = self.children(
            node,
            &[("control", Occurs::One), ("knowledge_base", Occurs::One)],
        )?;
        let impact = self.control(slots[0][0]);
        let tactics = self.knowledge_base(slots[1][0]);
        Some(SimulationSpec {
            impact_of_skills: impact?,
            tactics: tactics?,
        })
    }

    fn control(&mut self, node: Node<'a, 'input>) -> Option<ImpactOfSkills> {
        let path = "fersml/simulation/control";
        self.record(path, node);
        self.no_attributes(node, path)?;
        let slots = self.children(node, &[("impact_of_skills", Occurs::One)])?;
        let impact = slots[0][0];
        self.record(paths::IMPACT_BASE, impact);
        self.no_attributes(impact, paths::IMPACT_BASE)?;
        let lists = self.children(
            impact,
            &[
                ("dribbling", Occurs::One),
                ("shielding", Occurs::One),
                ("tackling", Occurs::One),
            ],
        )?;
        let mut out = ImpactOfSkills::default();
        let mut ok = true;
        for (kind, slot) in DuelKind::ALL.into_iter().zip(&lists) {
            match self.factors(kind, slot[0]) {
                Some(f) => match kind {
                    DuelKind::Dribbling => out.dribbling = f,
                    DuelKind::Shielding => out.shielding = f,
                    DuelKind::Tackling => out.tackling = f,
                },
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn factors(&mut self, kind: DuelKind, node: Node<'a, 'input>) -> Option<Vec<Factor>> {
        let path = paths::child(paths::IMPACT_BASE, kind.element_name());
        self.record(&path, node);
        self.no_attributes(node, &path)?;
        let slots = self.children(node, &[("factor", Occurs::Many)])?;
        let mut out = Vec::new();
        let mut ok = true;
        for (j, &f) in slots[0].iter().enumerate() {
            let fpath = paths::indexed(&path, "factor", j);
            self.record(&fpath, f);
            let Some(attrs) = self.attributes(f, &fpath, &[("name", true), ("percent", true)])
            else {
                ok = false;
                continue;
            };
            if self.children(f, &[]).is_none() {
                ok = false;
                continue;
            }
            match (
                attrs[0],
                attrs[1].and_then(|raw| self.int_attr(f, "percent", raw, &fpath)),
            ) {
                (Some(name), Some(percent)) => out.push(Factor {
                    name: name.to_owned(),
                    percent,
                }),
                _ => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn knowledge_base(&mut self, node: Node<'a, 'input>) -> Option<Vec<Formation>> {
        let kb_path = "fersml/simulation/knowledge_base";
        self.record(kb_path, node);
        self.no_attributes(node, kb_path)?;
        let kb = self.children(node, &[("tactics", Occurs::One)])?;
        let tactics = kb[0][0];
        let tactics_path = paths::child(kb_path, "tactics");
        self.record(&tactics_path, tactics);
        self.no_attributes(tactics, &tactics_path)?;
        let t = self.children(tactics, &[("play_system", Occurs::One)])?;
        let play_system = t[0][0];
        self.record(paths::TACTICS_BASE, play_system);
        self.no_attributes(play_system, paths::TACTICS_BASE)?;
        let formations = self.children(play_system, &[("formation", Occurs::OneOrMore)])?;
        let parsed: Vec<_> = formations[0]
            .iter()
            .enumerate()
            .map(|(i, n)| self.formation(i, *n))
            .collect();
        parsed.into_iter().collect()
    }

    fn formation(&mut self, i: usize, node: Node<'a, 'input>) -> Option<Formation> {
        let path = paths::formation(i);
        self.record(&path, node);
        let attrs = self.attributes(node, &path, &[("name", true)])?;
        let slots = self.children(node, &[("player_position", Occurs::Many)])?;
        let mut positions = Vec::new();
        let mut ok = true;
        for (j, &pp) in slots[0].iter().enumerate() {
            match self.player_position(&paths::indexed(&path, "player_position", j), pp) {
                Some(p) => positions.push(p),
                None => ok = false,
            }
        }
        ok.then(|| Formation {
            name: attrs[0].unwrap_or_default().to_owned(),
            positions,
        })
    }

    fn player_position(&mut self, path: &str, node: Node<'a, 'input>) -> Option<PlayerPosition> {
        self.record(path, node);
        let attrs = self.attributes(node, path, &[("player_id", true), ("desc", false)])?;
        let slots = self.children(node, &[("coord_x", Occurs::One), ("coord_y", Occurs::One)])?;
        let player_id = self.int_attr(node, "player_id", attrs[0]?, path);
        let x = self.int_leaf(slots[0][0], &paths::child(path, "coord_x"));
        let y = self.int_leaf(slots[1][0], &paths::child(path, "coord_y"));
        Some(PlayerPosition {
            player_id: player_id?,
            desc: attrs[1].map(Position::new),
            coord_x: x?,
            coord_y: y?,
        })
    }
}

/// Optional element: absent is fine, present-but-broken is a failure.
fn present<T>(parsed: Option<Option<T>>) -> Option<Option<T>> {
    match parsed {
        None => Some(None),
        Some(inner) => inner.map(Some),
    }
}

/// `xsd:integer` lexical form: optional sign, then digits. Surrounding
/// whitespace is ignored.
fn parse_integer(raw: &str) -> Option<i64> {
    let t = raw.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Decimal floats with an optional exponent. `INF`/`NaN` are not accepted.
fn parse_float(raw: &str) -> Option<f64> {
    let t = raw.trim();
    if t.is_empty()
        || !t
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'+' | b'-' | b'e' | b'E'))
        || !t.bytes().any(|b| b.is_ascii_digit())
    {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn open(&mut self, name: &str, attrs: &[(&str, String)]) {
        self.indent();
        self.start_tag(name, attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        let _ = writeln!(self.out, "</{name}>");
    }

    fn empty(&mut self, name: &str, attrs: &[(&str, String)]) {
        self.indent();
        self.start_tag(name, attrs);
        self.out.push_str(" />\n");
    }

    fn leaf(&mut self, name: &str, attrs: &[(&str, String)], text: &str) {
        self.indent();
        self.start_tag(name, attrs);
        self.out.push('>');
        escape_into(&mut self.out, text, false);
        let _ = writeln!(self.out, "</{name}>");
    }

    fn start_tag(&mut self, name: &str, attrs: &[(&str, String)]) {
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            let _ = write!(self.out, " {k}=\"");
            escape_into(&mut self.out, v, true);
            self.out.push('"');
        }
    }
}

fn escape_into(out: &mut String, text: &str, attr: bool) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attr => out.push_str("&quot;"),
            // Keep attribute whitespace literal through normalization.
            '\n' if attr => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' if attr => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
}

/// Writes a document as UTF-8 XML with two-space indentation and the
/// grammar's element order.
pub fn serialize_fersml(doc: &FersmlDocument) -> Vec<u8> {
    let mut w = Writer {
        out: String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"),
        depth: 0,
    };
    w.open("fersml", &[]);

    w.open("coach", &[]);
    w.open("starting_team", &[]);
    for p in &doc.coach.starting_team {
        let mut attrs = vec![
            ("player_id", p.player_id.to_string()),
            ("squad_number", p.squad_number.to_string()),
        ];
        if let Some(f) = &p.formation_name {
            attrs.push(("formation_name", f.clone()));
        }
        w.empty("player", &attrs);
    }
    w.close("starting_team");
    w.close("coach");

    for a in &doc.avatars {
        let p = &a.person;
        w.open("avatar", &[]);
        w.open("person", &[("squad_number", p.squad_number.to_string())]);
        w.leaf("firstname", &[], &p.firstname);
        w.leaf("lastname", &[], &p.lastname);
        w.leaf("age", &[], &p.age.to_string());
        w.leaf("height", &[], &p.height.to_string());
        w.leaf("weight", &[], &p.weight.to_string());
        w.leaf("dominant_foot", &[], p.dominant_foot.as_str());
        w.leaf("usual_position", &[], p.usual_position.as_str());
        w.leaf("actual_position", &[], p.actual_position.as_str());
        w.close("person");

        let s = &a.estimations.skills;
        w.open("estimations", &[]);
        w.open("skills", &[]);
        w.leaf("football_sense", &[], &s.football_sense.to_string());
        w.leaf("ball_technique", &[], &s.ball_technique.to_string());
        w.leaf("quickness", &[], &s.quickness.to_string());
        w.close("skills");
        w.open("actions", &[]);
        let acts = &a.estimations.actions;
        for (name, table) in [
            ("shutting_goal", &acts.shutting_goal),
            ("gaining_ball", &acts.gaining_ball),
        ] {
            if let Some(t) = table {
                w.open(name, &[]);
                for &(dist, prob) in t.entries() {
                    w.leaf("prob", &[("dist", dist.to_string())], &prob.to_string());
                }
                w.close(name);
            }
        }
        w.close("actions");
        w.close("estimations");
        w.close("avatar");
    }

    w.open("simulation", &[]);
    w.open("control", &[]);
    w.open("impact_of_skills", &[]);
    for kind in DuelKind::ALL {
        w.open(kind.element_name(), &[]);
        for f in doc.simulation.impact_of_skills.for_duel(kind) {
            w.empty(
                "factor",
                &[("name", f.name.clone()), ("percent", f.percent.to_string())],
            );
        }
        w.close(kind.element_name());
    }
    w.close("impact_of_skills");
    w.close("control");
    w.open("knowledge_base", &[]);
    w.open("tactics", &[]);
    w.open("play_system", &[]);
    for f in &doc.simulation.tactics {
        w.open("formation", &[("name", f.name.clone())]);
        for pp in &f.positions {
            let mut attrs = vec![("player_id", pp.player_id.to_string())];
            if let Some(d) = &pp.desc {
                attrs.push(("desc", d.as_str().to_owned()));
            }
            w.open("player_position", &attrs);
            w.leaf("coord_x", &[], &pp.coord_x.to_string());
            w.leaf("coord_y", &[], &pp.coord_y.to_string());
            w.close("player_position");
        }
        w.close("formation");
    }
    w.close("play_system");
    w.close("tactics");
    w.close("knowledge_base");
    w.close("simulation");

    w.close("fersml");
    w.out.into_bytes()
}
