use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A list of `(dist, prob)` anchors, kept sorted by distance.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct ProbTable {
    entries: Vec<(f64, f64)>,
}

impl ProbTable {
    /// Builds a table, sorting the anchors by distance. Duplicate distances
    /// are kept so that validation can report them.
    pub fn new(mut entries: Vec<(f64, f64)>) -> Self {
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        ProbTable { entries }
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

impl From<Vec<(f64, f64)>> for ProbTable {
    fn from(entries: Vec<(f64, f64)>) -> Self {
        ProbTable::new(entries)
    }
}

impl From<ProbTable> for Vec<(f64, f64)> {
    fn from(table: ProbTable) -> Self {
        table.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbError {
    #[error("probability table has no entries")]
    EmptyTable,
}

/// Piecewise-linear lookup. Exact anchors return their probability; beyond
/// either end the nearest anchor's probability is used.
pub fn interpolate_prob(table: &ProbTable, dist: f64) -> Result<f64, ProbError> {
    let entries = table.entries();
    let (&(first_d, first_p), &(last_d, last_p)) = match (entries.first(), entries.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(ProbError::EmptyTable),
    };
    if dist <= first_d {
        return Ok(first_p);
    }
    if dist >= last_d {
        return Ok(last_p);
    }
    // first_d < dist < last_d, so a bracketing pair exists.
    let upper = entries.partition_point(|&(d, _)| d < dist);
    let (d1, p1) = entries[upper];
    if d1 == dist {
        return Ok(p1);
    }
    let (d0, p0) = entries[upper - 1];
    let t = (dist - d0) / (d1 - d0);
    Ok(p0 + t * (p1 - p0))
}
