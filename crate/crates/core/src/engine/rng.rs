use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pitch::Team;

const HOME_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;
const AWAY_STREAM: u64 = 0xD1B5_4A32_D192_ED03;

/// Random streams for one match, all ChaCha8 seeded through
/// `seed_from_u64`.
///
/// Each team draws from its own stream (match seed XOR a fixed constant), so
/// a team's decisions do not shift when the other team consumes more or
/// fewer draws. The shared stream seeds with the match seed itself.
#[derive(Debug, Clone)]
pub struct MatchRng {
    home: ChaCha8Rng,
    away: ChaCha8Rng,
    shared: ChaCha8Rng,
}

impl MatchRng {
    pub fn new(seed: u64) -> Self {
        MatchRng {
            home: ChaCha8Rng::seed_from_u64(seed ^ HOME_STREAM),
            away: ChaCha8Rng::seed_from_u64(seed ^ AWAY_STREAM),
            shared: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn team(&mut self, team: Team) -> &mut ChaCha8Rng {
        match team {
            Team::Home => &mut self.home,
            Team::Away => &mut self.away,
        }
    }

    pub fn shared(&mut self) -> &mut ChaCha8Rng {
        &mut self.shared
    }
}

/// Bernoulli draw. `p <= 0` never fires, `p >= 1` always does.
pub(crate) fn chance<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    rng.random::<f64>() < p
}
