//! The match loop: a possession automaton advanced once per tick.
//!
//! A player in possession holds the ball briefly, then shoots, passes or
//! dribbles. When a pass or dribble arrives, the nearest opponent may get
//! close enough to contest (its `gaining_ball` table at the gap in metres),
//! and a contest is a duel. Shots are decided by the shooter's
//! `shutting_goal` table at the shooting distance.

use rand::Rng;

use crate::model::{DuelKind, FersmlDocument};
use crate::pitch::{Point, Team, TraceRecord, CENTER, HEIGHT, WIDTH};

use super::duel::{duel_draw, table_goal_probability, DuelOutcome};
use super::rng::{chance, MatchRng};
use super::squad::{build_squad, Squad, TEAM_SIZE};
use super::{
    EngineError, EventKind, MatchEvent, MatchResult, PitchConfig, Score, EXTRA_TIME_TICKS,
};

/// Ticks a carrier holds the ball before acting.
const HOLD_TICKS: std::ops::RangeInclusive<u32> = 3..=10;
/// Coordinate units per tick (one unit is about 0.1 m).
const PASS_SPEED: f64 = 22.0;
const SHOT_SPEED: f64 = 30.0;
const DRIBBLE_SPEED: f64 = 5.0;
const JOG_SPEED: f64 = 3.0;
const DRIBBLE_LEN: f64 = 70.0;
const MAX_PASS_LEN: f64 = 420.0;
const PASS_LEAD: i32 = 30;
const PASS_SHARE: f64 = 0.6;
/// Outfield block follows the ball by this fraction of its offset from the
/// centre line.
const BLOCK_SHIFT: f64 = 0.4;
const SHOT_RANGE_M: f64 = 30.0;
/// Chance of shooting per decision at point-blank range, falling linearly
/// to zero at [`SHOT_RANGE_M`].
const SHOT_APPETITE: f64 = 0.0042;
/// Half-width of the goal mouth (7.32 m) in units.
const GOAL_HALF_WIDTH: i32 = 35;
const PENALTY_DIST_M: f64 = 11.0;
const SUDDEN_DEATH_CAP: u32 = 1000;

fn sprint_speed(quickness: i64) -> f64 {
    4.0 + quickness.clamp(1, 100) as f64 / 25.0
}

fn step(from: Point, to: Point, speed: f64) -> Point {
    let d = from.dist(to);
    if d <= speed {
        return to;
    }
    let k = speed / d;
    Point::new(
        from.x + (f64::from(to.x - from.x) * k).round() as i32,
        from.y + (f64::from(to.y - from.y) * k).round() as i32,
    )
}

fn attacked_goal(team: Team) -> Point {
    match team {
        Team::Home => Point::new(WIDTH, CENTER.y),
        Team::Away => Point::new(0, CENTER.y),
    }
}

/// Distance covered toward the attacked goal.
fn progress(team: Team, p: Point) -> i32 {
    match team {
        Team::Home => p.x,
        Team::Away => WIDTH - p.x,
    }
}

fn forward(team: Team) -> i32 {
    match team {
        Team::Home => 1,
        Team::Away => -1,
    }
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    Hold { carrier: usize, until: u32 },
    Dribble { carrier: usize },
    Pass { to: usize },
    Shot { shooter: usize, goal: bool },
}

struct Side {
    squad: Squad,
    pos: Vec<Point>,
}

struct Match {
    sides: [Side; 2],
    ball: Point,
    target: Point,
    possession: Team,
    phase: Phase,
    score: Score,
    events: Vec<MatchEvent>,
    trace: Vec<TraceRecord>,
    rng: MatchRng,
    meters_per_unit: f64,
}

impl Match {
    fn side(&self, team: Team) -> &Side {
        &self.sides[team.index()]
    }

    fn player_id(&self, team: Team, i: usize) -> i64 {
        self.side(team).squad.players[i].player_id
    }

    fn event(
        &mut self,
        tick: u32,
        kind: EventKind,
        team: Option<Team>,
        player: Option<usize>,
        detail: String,
    ) {
        let player_id = team.zip(player).map(|(t, i)| self.player_id(t, i));
        self.events.push(MatchEvent {
            tick,
            kind,
            team,
            player_id,
            detail,
        });
    }

    fn hold(&mut self, tick: u32) -> u32 {
        let team = self.possession;
        tick + self.rng.team(team).random_range(HOLD_TICKS)
    }

    fn kickoff(&mut self, tick: u32, team: Team) {
        for side in &mut self.sides {
            for (p, pl) in side.pos.iter_mut().zip(&side.squad.players) {
                *p = pl.base;
            }
        }
        let side = self.side(team);
        let keeper = side.squad.keeper;
        let carrier = (0..TEAM_SIZE)
            .filter(|&i| i != keeper)
            .min_by_key(|&i| (side.pos[i].dist2(CENTER), i))
            .unwrap_or(0);
        self.sides[team.index()].pos[carrier] = CENTER;
        self.ball = CENTER;
        self.target = CENTER;
        self.possession = team;
        let until = self.hold(tick);
        self.phase = Phase::Hold { carrier, until };
        self.event(
            tick,
            EventKind::Kickoff,
            Some(team),
            Some(carrier),
            String::new(),
        );
    }

    fn carrier(&self) -> Option<usize> {
        match self.phase {
            Phase::Hold { carrier, .. } | Phase::Dribble { carrier } => Some(carrier),
            _ => None,
        }
    }

    fn move_players(&mut self) {
        let ball = self.ball;
        let shift = ((f64::from(ball.x - CENTER.x)) * BLOCK_SHIFT).round() as i32;
        let attacking = self.possession;
        let carrier = self.carrier();
        let receiver = match self.phase {
            Phase::Pass { to, .. } => Some(to),
            _ => None,
        };
        for team in [Team::Home, Team::Away] {
            let side = &mut self.sides[team.index()];
            let keeper = side.squad.keeper;
            let presser = if team == attacking {
                None
            } else {
                (0..TEAM_SIZE)
                    .filter(|&i| i != keeper)
                    .min_by_key(|&i| (side.pos[i].dist2(ball), i))
            };
            for i in 0..TEAM_SIZE {
                let pl = &side.squad.players[i];
                let here = side.pos[i];
                side.pos[i] = if team == attacking && Some(i) == carrier {
                    ball
                } else if team == attacking && Some(i) == receiver {
                    step(here, self.target, sprint_speed(pl.quickness))
                } else if Some(i) == presser {
                    step(here, ball, sprint_speed(pl.quickness))
                } else if i == keeper {
                    step(here, pl.base, JOG_SPEED)
                } else {
                    let anchor = Point::new(pl.base.x + shift, pl.base.y).clamped();
                    step(here, anchor, JOG_SPEED)
                };
            }
        }
    }

    /// Nearest opponent to the ball; lowest index wins ties.
    fn nearest_opponent(&self) -> usize {
        let side = self.side(self.possession.other());
        (0..TEAM_SIZE)
            .min_by_key(|&i| (side.pos[i].dist2(self.ball), i))
            .unwrap_or(0)
    }

    /// A contest when the ball arrives at `holder`. Returns true if the
    /// attackers keep it.
    fn contest(&mut self, tick: u32, holder: usize, kind: DuelKind) -> bool {
        let att = self.possession;
        let def = att.other();
        let j = self.nearest_opponent();
        let gap_m = self.side(def).pos[j].dist(self.ball) * self.meters_per_unit;
        let defender = &self.side(def).squad.players[j];
        let reach = table_goal_probability(&defender.gaining_ball, gap_m);
        let tackle_score = defender.score(DuelKind::Tackling);
        if !chance(self.rng.team(def), reach) {
            return true;
        }
        let a = self.side(att).squad.players[holder].score(kind);
        match duel_draw(a, tackle_score, self.rng.team(att)) {
            DuelOutcome::AttackerKeeps => true,
            DuelOutcome::DefenderWins => {
                self.event(
                    tick,
                    EventKind::Tackle,
                    Some(def),
                    Some(j),
                    format!("{gap_m:.1} m"),
                );
                self.turnover(tick, def, j, "tackle");
                false
            }
        }
    }

    fn turnover(&mut self, tick: u32, to: Team, player: usize, why: &str) {
        self.possession = to;
        self.sides[to.index()].pos[player] = self.ball;
        self.target = self.ball;
        let until = self.hold(tick);
        self.phase = Phase::Hold {
            carrier: player,
            until,
        };
        self.event(
            tick,
            EventKind::Turnover,
            Some(to),
            Some(player),
            why.to_owned(),
        );
    }

    fn decide(&mut self, tick: u32, carrier: usize) {
        let team = self.possession;
        let goal = attacked_goal(team);
        let dist_m = self.ball.dist(goal) * self.meters_per_unit;

        if dist_m <= SHOT_RANGE_M {
            let appetite = SHOT_APPETITE * (1.0 - dist_m / SHOT_RANGE_M);
            if chance(self.rng.team(team), appetite) {
                self.shoot(tick, carrier, dist_m);
                return;
            }
        }

        if chance(self.rng.team(team), PASS_SHARE) {
            if let Some(to) = self.pick_receiver(carrier) {
                let side = self.side(team);
                let lead = Point::new(side.pos[to].x + forward(team) * PASS_LEAD, side.pos[to].y);
                self.target = lead.clamped();
                self.phase = Phase::Pass { to };
                self.event(
                    tick,
                    EventKind::Pass,
                    Some(team),
                    Some(carrier),
                    format!("to {}", self.player_id(team, to)),
                );
                return;
            }
        }

        let jitter = self.rng.team(team).random_range(-40..=40);
        let ahead = Point::new(
            self.ball.x + forward(team) * DRIBBLE_LEN as i32,
            self.ball.y + jitter,
        );
        // Near the end line, cut in toward the goal instead.
        let target = if progress(team, self.ball) > WIDTH - DRIBBLE_LEN as i32 {
            step(self.ball, goal, DRIBBLE_LEN)
        } else {
            ahead.clamped()
        };
        self.target = target;
        self.phase = Phase::Dribble { carrier };
        self.event(
            tick,
            EventKind::Dribble,
            Some(team),
            Some(carrier),
            String::new(),
        );
    }

    fn pick_receiver(&mut self, carrier: usize) -> Option<usize> {
        let team = self.possession;
        let ball = self.ball;
        let (keeper, pos) = {
            let side = self.side(team);
            (side.squad.keeper, side.pos.clone())
        };
        let here = progress(team, ball);
        let mut best: Option<(i32, usize)> = None;
        for (i, p) in pos.iter().enumerate() {
            if i == carrier || i == keeper || p.dist(ball) > MAX_PASS_LEN {
                continue;
            }
            let noise = self.rng.team(team).random_range(-150..=150);
            let value = progress(team, *p) - here + noise;
            if best.is_none_or(|(v, _)| value > v) {
                best = Some((value, i));
            }
        }
        best.map(|(_, i)| i)
    }

    fn shoot(&mut self, tick: u32, shooter: usize, dist_m: f64) {
        let team = self.possession;
        let p = table_goal_probability(
            &self.side(team).squad.players[shooter].shutting_goal,
            dist_m,
        );
        let goal = chance(self.rng.team(team), p);
        let rng = self.rng.team(team);
        let y = if goal {
            CENTER.y + rng.random_range(-GOAL_HALF_WIDTH..=GOAL_HALF_WIDTH)
        } else {
            let off = rng.random_range(GOAL_HALF_WIDTH + 5..=160);
            if rng.random::<bool>() {
                CENTER.y + off
            } else {
                CENTER.y - off
            }
        };
        self.target = Point::new(attacked_goal(team).x, y.clamp(0, HEIGHT));
        self.phase = Phase::Shot { shooter, goal };
        self.event(
            tick,
            EventKind::Shot,
            Some(team),
            Some(shooter),
            format!("{dist_m:.1} m"),
        );
    }

    fn advance_ball(&mut self, tick: u32) {
        match self.phase {
            Phase::Hold { carrier, until } => {
                self.target = self.ball;
                if tick >= until {
                    self.decide(tick, carrier);
                }
                return;
            }
            Phase::Dribble { .. } => self.ball = step(self.ball, self.target, DRIBBLE_SPEED),
            Phase::Pass { .. } => self.ball = step(self.ball, self.target, PASS_SPEED),
            Phase::Shot { .. } => self.ball = step(self.ball, self.target, SHOT_SPEED),
        }
        if self.ball != self.target {
            return;
        }
        let team = self.possession;
        match self.phase {
            Phase::Hold { .. } => {}
            Phase::Dribble { carrier } => {
                if self.contest(tick, carrier, DuelKind::Dribbling) {
                    let until = self.hold(tick);
                    self.phase = Phase::Hold { carrier, until };
                }
            }
            Phase::Pass { to, .. } => {
                self.sides[team.index()].pos[to] = self.ball;
                if self.contest(tick, to, DuelKind::Shielding) {
                    let until = self.hold(tick);
                    self.phase = Phase::Hold { carrier: to, until };
                }
            }
            Phase::Shot { shooter, goal } => {
                if goal {
                    self.score.bump(team);
                    self.event(
                        tick,
                        EventKind::Goal,
                        Some(team),
                        Some(shooter),
                        String::new(),
                    );
                    self.kickoff(tick, team.other());
                } else {
                    let def = team.other();
                    let keeper = self.side(def).squad.keeper;
                    self.ball = self.side(def).squad.players[keeper].base;
                    self.turnover(tick, def, keeper, "goal kick");
                }
            }
        }
    }

    fn record(&mut self, tick: u32) {
        self.trace.push(TraceRecord {
            tick,
            lx: self.ball.x,
            ly: self.ball.y,
            lcx: self.target.x,
            lcy: self.target.y,
            possession: self.possession,
        });
    }

    /// Plays `[start, end)`; `kicks` takes the kickoff.
    fn period(&mut self, start: u32, end: u32, kicks: Team, label: &str) {
        if start >= end {
            return;
        }
        self.kickoff(start, kicks);
        for tick in start..end {
            self.move_players();
            self.advance_ball(tick);
            self.record(tick);
        }
        self.event(end - 1, EventKind::PeriodEnd, None, None, label.to_owned());
    }

    fn shootout(&mut self, tick: u32) -> Score {
        let mut tally = Score { home: 0, away: 0 };
        let order = |side: &Side| -> Vec<usize> {
            let mut v: Vec<usize> = (0..TEAM_SIZE).filter(|&i| i != side.squad.keeper).collect();
            v.sort_by_key(|&i| std::cmp::Reverse(side.squad.players[i].player_id));
            v
        };
        let orders = [order(&self.sides[0]), order(&self.sides[1])];
        let kick = |m: &mut Match, team: Team, n: usize, tally: &mut Score| {
            let kicker = orders[team.index()][n % orders[team.index()].len()];
            let p = table_goal_probability(
                &m.side(team).squad.players[kicker].shutting_goal,
                PENALTY_DIST_M,
            );
            let scored = chance(m.rng.team(team), p);
            if scored {
                tally.bump(team);
            }
            let detail = if scored {
                "penalty scored"
            } else {
                "penalty missed"
            };
            m.event(
                tick,
                EventKind::Shot,
                Some(team),
                Some(kicker),
                detail.to_owned(),
            );
        };

        for n in 0..5 {
            for team in [Team::Home, Team::Away] {
                kick(self, team, n, &mut tally);
                let left_home = 5 - (n as u32 + 1);
                let left_away = 5 - (n as u32 + u32::from(team == Team::Away));
                if tally.home + left_home < tally.away || tally.away + left_away < tally.home {
                    return tally;
                }
            }
        }
        let mut n = 5;
        while tally.home == tally.away {
            if n as u32 >= 5 + SUDDEN_DEATH_CAP {
                let team = if self.rng.shared().random::<bool>() {
                    Team::Home
                } else {
                    Team::Away
                };
                tally.bump(team);
                break;
            }
            kick(self, Team::Home, n, &mut tally);
            kick(self, Team::Away, n, &mut tally);
            n += 1;
        }
        tally
    }
}

/// Plays one match. Identical documents, configuration and seed give an
/// identical result.
///
/// With `knockout` set, a level score after regulation goes to two
/// 15-minute halves of extra time and then a penalty shootout. Shootout
/// kicks are logged as shots but never counted in [`MatchResult::score`].
pub fn simulate_match(
    home: &FersmlDocument,
    away: &FersmlDocument,
    pitch: &PitchConfig,
    seed: u64,
    knockout: bool,
) -> Result<MatchResult, EngineError> {
    let home_squad = build_squad(home, Team::Home)?;
    let away_squad = build_squad(away, Team::Away)?;
    let home_formation = home_squad.formation.clone();
    let away_formation = away_squad.formation.clone();
    let side = |squad: Squad| Side {
        pos: squad.players.iter().map(|p| p.base).collect(),
        squad,
    };

    let reg = pitch.regulation_ticks;
    let mut m = Match {
        sides: [side(home_squad), side(away_squad)],
        ball: CENTER,
        target: CENTER,
        possession: Team::Home,
        phase: Phase::Hold {
            carrier: 0,
            until: 0,
        },
        score: Score { home: 0, away: 0 },
        events: Vec::new(),
        trace: Vec::with_capacity((reg + if knockout { EXTRA_TIME_TICKS } else { 0 }) as usize),
        rng: MatchRng::new(seed),
        meters_per_unit: pitch.meters_per_unit,
    };

    let half = reg / 2;
    m.period(0, half, Team::Home, "first half");
    m.period(half, reg, Team::Away, "second half");

    let mut shootout = None;
    if knockout && m.score.home == m.score.away {
        let et_half = EXTRA_TIME_TICKS / 2;
        m.period(reg, reg + et_half, Team::Home, "extra time first half");
        m.period(
            reg + et_half,
            reg + EXTRA_TIME_TICKS,
            Team::Away,
            "extra time second half",
        );
        if m.score.home == m.score.away {
            let tick = reg + EXTRA_TIME_TICKS;
            shootout = Some(m.shootout(tick.saturating_sub(1)));
        }
    }

    let decided = shootout.unwrap_or(m.score);
    let winner = match decided.home.cmp(&decided.away) {
        std::cmp::Ordering::Greater => Some(Team::Home),
        std::cmp::Ordering::Less => Some(Team::Away),
        std::cmp::Ordering::Equal => None,
    };

    Ok(MatchResult {
        score: m.score,
        shootout,
        winner,
        events: m.events,
        ball_trace: m.trace,
        seed,
        home_formation,
        away_formation,
    })
}
