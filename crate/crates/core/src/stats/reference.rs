//! Goal totals of the final-eight phase (quarter-finals, semi-finals,
//! third-place match, final).

/// Ten real World Cups, `(year, goals)`.
pub const REAL_WC_GOALS: [(u16, u32); 10] = [
    (1934, 27),
    (1954, 48),
    (1958, 35),
    (1966, 31),
    (1970, 34),
    (1990, 30),
    (1994, 33),
    (1998, 27),
    (2002, 22),
    (2006, 29),
];

/// Eight parameter settings, ten simulated World Cups each.
pub const SIMULATED_ROWS: [[u32; 10]; 8] = [
    [35, 27, 31, 34, 30, 22, 29, 31, 31, 31],
    [30, 26, 28, 39, 29, 44, 34, 29, 37, 40],
    [33, 30, 24, 27, 15, 26, 30, 29, 28, 31],
    [26, 33, 38, 23, 21, 27, 31, 24, 36, 35],
    [35, 27, 34, 33, 31, 24, 40, 32, 27, 32],
    [30, 37, 26, 29, 33, 33, 29, 23, 32, 24],
    [31, 23, 22, 32, 31, 27, 26, 18, 29, 38],
    [26, 36, 35, 22, 32, 14, 28, 33, 28, 30],
];

pub fn real_goals() -> Vec<f64> {
    REAL_WC_GOALS.iter().map(|&(_, g)| f64::from(g)).collect()
}

/// Row `index` (0-based) of the simulated table.
pub fn simulated_row(index: usize) -> Vec<f64> {
    SIMULATED_ROWS[index]
        .iter()
        .map(|&g| f64::from(g))
        .collect()
}
