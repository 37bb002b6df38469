mod common;

use fersml::assets::{sample_document, SAMPLE_XML};
use fersml::model::{validate_document, PositionKind};
use fersml::xml::{parse_fersml, serialize_fersml, DiagnosticKind};
use proptest::prelude::*;

#[test]
fn sample_shape() {
    let doc = sample_document();
    assert_eq!(doc.coach.starting_team.len(), 12);
    assert_eq!(doc.avatars.len(), 1);
    assert_eq!(doc.simulation.tactics.len(), 1);
    let f = &doc.simulation.tactics[0];
    assert_eq!(f.name, "3-3-3");
    assert_eq!(f.positions.len(), 10);
    assert_eq!((f.positions[0].coord_x, f.positions[0].coord_y), (10, 320));
    assert_eq!(
        f.positions[0].desc.as_ref().unwrap().kind(),
        Some(PositionKind::Keeper)
    );

    let person = &doc.avatars[0].person;
    assert_eq!(
        person.usual_position.kind(),
        Some(PositionKind::AttackingMidfielder)
    );
    assert_eq!(
        person.actual_position.kind(),
        Some(PositionKind::LeftWinger)
    );
    let sg = doc.avatars[0]
        .estimations
        .actions
        .shutting_goal
        .as_ref()
        .unwrap();
    assert_eq!(sg.entries(), &[(5.0, 0.89), (16.0, 0.84), (30.0, 0.47)]);
    let gb = doc.avatars[0]
        .estimations
        .actions
        .gaining_ball
        .as_ref()
        .unwrap();
    assert_eq!(gb.entries(), &[(0.5, 0.89), (1.0, 0.64), (2.0, 0.06)]);
    assert_eq!(doc.simulation.impact_of_skills.shielding.len(), 3);
}

#[test]
fn swapped_coach_and_avatar() {
    let src = SAMPLE_XML;
    let coach_start = src.find("<coach>").unwrap();
    let coach_end = src.find("</coach>").unwrap() + "</coach>".len();
    let avatar_start = src.find("<avatar>").unwrap();
    let avatar_end = src.find("</avatar>").unwrap() + "</avatar>".len();
    let swapped = format!(
        "{}{}{}{}{}",
        &src[..coach_start],
        &src[avatar_start..avatar_end],
        &src[coach_end..avatar_start],
        &src[coach_start..coach_end],
        &src[avatar_end..]
    );
    let diags = parse_fersml(swapped.as_bytes()).unwrap_err();
    assert_eq!(diags.len(), 1, "{diags:?}");
    assert_eq!(diags[0].kind, DiagnosticKind::MissingElement);
    assert!(diags[0].message.contains("expected <coach>"));
}

#[test]
fn facet_diagnostic_points_at_attribute() {
    let xml = common::mutate_sample(
        r#"<player player_id="2" squad_number="19" />"#,
        r#"<player player_id="12" squad_number="19" />"#,
    );
    let diags = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].kind, DiagnosticKind::FacetViolation);
    assert!(diags[0].message.contains("[1, 11]"), "{}", diags[0].message);
    let line = xml
        .lines()
        .position(|l| l.contains(r#"player_id="12""#))
        .unwrap() as u32
        + 1;
    assert_eq!(diags[0].line, line);
}

#[test]
fn unknown_element_and_attribute() {
    let xml = common::mutate_sample("<age>99</age>", "<age>99</age><shoe_size>44</shoe_size>");
    let d = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::UnknownElement);

    let xml = common::mutate_sample(
        r#"<formation name="3-3-3">"#,
        r#"<formation name="3-3-3" style="x">"#,
    );
    let d = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::UnknownElement);
}

#[test]
fn missing_required_pieces() {
    let xml = common::mutate_sample("<weight>99</weight>", "");
    let d = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::MissingElement);

    let xml = common::mutate_sample(
        r#"<player player_id="1" squad_number="9" />"#,
        r#"<player player_id="1" />"#,
    );
    let d = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::MissingElement);
}

#[test]
fn non_numeric_text() {
    let xml = common::mutate_sample("<age>99</age>", "<age>old</age>");
    let d = parse_fersml(xml.as_bytes()).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::FacetViolation);
}

#[test]
fn malformed_reports_position() {
    let d = parse_fersml(b"<fersml>\n  <coach>\n</fersml>").unwrap_err();
    assert_eq!(d[0].kind, DiagnosticKind::MalformedXml);
    assert!(d[0].line >= 2);
}

#[test]
fn roundtrip_sample() {
    let doc = sample_document();
    let bytes = serialize_fersml(&doc);
    let again = parse_fersml(&bytes).unwrap();
    assert_eq!(doc, again);
    let sg = again.avatars[0]
        .estimations
        .actions
        .shutting_goal
        .as_ref()
        .unwrap();
    assert!((sg.entries()[0].1 - 0.89).abs() < 1e-9);
    // Stable output: serializing twice gives the same bytes.
    assert_eq!(bytes, serialize_fersml(&again));
}

#[test]
fn zero_avatars_roundtrip() {
    let mut doc = sample_document();
    doc.avatars.clear();
    let bytes = serialize_fersml(&doc);
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert!(!text.contains("<avatar"));
    assert_eq!(parse_fersml(&bytes).unwrap(), doc);
}

#[test]
fn two_space_indentation() {
    let text = String::from_utf8(serialize_fersml(&sample_document())).unwrap();
    assert!(text.contains("\n  <coach>\n    <starting_team>\n      <player "));
}

#[test]
fn unsorted_probs_are_sorted() {
    let xml = common::mutate_sample(r#"<prob dist="5">"#, r#"<prob dist="40">"#);
    let doc = parse_fersml(xml.as_bytes()).unwrap();
    let d: Vec<f64> = doc.avatars[0]
        .estimations
        .actions
        .shutting_goal
        .as_ref()
        .unwrap()
        .entries()
        .iter()
        .map(|e| e.0)
        .collect();
    assert_eq!(d, vec![16.0, 30.0, 40.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roundtrip_generated(doc in common::valid_document()) {
        prop_assert!(validate_document(&doc).is_valid());
        let bytes = serialize_fersml(&doc);
        let back = parse_fersml(&bytes);
        prop_assert_eq!(back, Ok(doc));
    }

    #[test]
    fn accepted_streams_validate(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        match parse_fersml(&bytes) {
            Ok(doc) => prop_assert!(validate_document(&doc).is_valid()),
            Err(d) => prop_assert!(!d.is_empty()),
        }
    }
}
