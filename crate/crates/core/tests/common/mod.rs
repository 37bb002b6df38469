#![allow(dead_code)]

use fersml::model::{
    Actions, Avatar, Coach, DominantFoot, Estimations, Factor, FersmlDocument, Formation,
    ImpactOfSkills, LineupEntry, Person, PlayerPosition, Position, PositionKind, ProbTable,
    SimulationSpec, Skills,
};
use proptest::prelude::*;

fn position() -> impl Strategy<Value = Position> {
    (0..PositionKind::ALL.len()).prop_map(|i| Position::from(PositionKind::ALL[i]))
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9 &<>\"'-]{0,12}"
}

fn prob_table() -> impl Strategy<Value = ProbTable> {
    proptest::collection::btree_map(0u32..=1_024_000, 0u32..=1000, 0..5).prop_map(|m| {
        ProbTable::new(
            m.into_iter()
                .map(|(d, p)| (d as f64 / 1000.0, p as f64 / 1000.0))
                .collect(),
        )
    })
}

fn factors() -> impl Strategy<Value = Vec<Factor>> {
    let names = ["ball technique", "quickness", "football sense"];
    proptest::collection::vec((0usize..3, 1i64..=33), 0..4).prop_map(move |v| {
        v.into_iter()
            .map(|(i, p)| Factor {
                name: names[i].to_owned(),
                percent: p,
            })
            .collect()
    })
}

fn avatar() -> impl Strategy<Value = Avatar> {
    (
        (
            0i64..=99,
            name(),
            name(),
            1i64..=120,
            1i64..=250,
            1i64..=200,
        ),
        (0usize..3, position(), position()),
        (1i64..=100, 1i64..=100, 1i64..=100),
        (
            proptest::option::of(prob_table()),
            proptest::option::of(prob_table()),
        ),
    )
        .prop_map(|(p, (foot, usual, actual), (fs, bt, q), (sg, gb))| Avatar {
            person: Person {
                squad_number: p.0,
                firstname: p.1,
                lastname: p.2,
                age: p.3,
                height: p.4,
                weight: p.5,
                dominant_foot: DominantFoot::new(DominantFoot::TOKENS[foot]),
                usual_position: usual,
                actual_position: actual,
            },
            estimations: Estimations {
                skills: Skills {
                    football_sense: fs,
                    ball_technique: bt,
                    quickness: q,
                },
                actions: Actions {
                    shutting_goal: sg,
                    gaining_ball: gb,
                },
            },
        })
}

fn formation() -> impl Strategy<Value = Formation> {
    (
        name(),
        proptest::collection::btree_map(
            1i64..=11,
            (proptest::option::of(position()), 0i64..=1024, 0i64..=640),
            0..11,
        ),
    )
        .prop_map(|(name, m)| Formation {
            name,
            positions: m
                .into_iter()
                .map(|(player_id, (desc, coord_x, coord_y))| PlayerPosition {
                    player_id,
                    desc,
                    coord_x,
                    coord_y,
                })
                .collect(),
        })
}

/// Arbitrary documents that satisfy every validation rule.
pub fn valid_document() -> impl Strategy<Value = FersmlDocument> {
    (
        proptest::collection::btree_map(
            (1i64..=11, proptest::option::of("[a-z0-9-]{1,6}")),
            0i64..=99,
            0..14,
        ),
        proptest::collection::vec(avatar(), 0..3),
        (factors(), factors(), factors()),
        proptest::collection::vec(formation(), 1..3),
    )
        .prop_map(
            |(lineup, avatars, (dribbling, shielding, tackling), tactics)| FersmlDocument {
                coach: Coach {
                    starting_team: lineup
                        .into_iter()
                        .map(|((player_id, formation_name), squad_number)| LineupEntry {
                            player_id,
                            squad_number,
                            formation_name,
                        })
                        .collect(),
                },
                avatars,
                simulation: SimulationSpec {
                    impact_of_skills: ImpactOfSkills {
                        dribbling,
                        shielding,
                        tackling,
                    },
                    tactics,
                },
            },
        )
}

/// The sample text with the first occurrence of `from` replaced by `to`.
pub fn mutate_sample(from: &str, to: &str) -> String {
    let src = fersml::assets::SAMPLE_XML;
    assert!(src.contains(from), "fixture does not contain {from:?}");
    src.replacen(from, to, 1)
}
