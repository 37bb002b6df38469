//! Socceral force: per-cell averages of where the ball was heading.
//!
//! Every tick the cell under the ball is pulled halfway toward the current
//! displacement `(lcx - lx, lcy - ly)`, separately for the team in
//! possession. Repeating one displacement `d` at a fresh cell `K` times
//! leaves `d * (1 - 2^-K)` in it.

use std::fmt::Write as _;

use thiserror::Error;

use crate::pitch::{Team, TraceRecord, HEIGHT, WIDTH};

pub const GRID_WIDTH: usize = WIDTH as usize + 1;
pub const GRID_HEIGHT: usize = HEIGHT as usize + 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForceFieldError {
    #[error("coordinate ({x}, {y}) is off the pitch")]
    OutOfBounds { x: i32, y: i32 },
    #[error("bad color normalizer: n = {n}, N = {max}")]
    BadNormalizer { n: f64, max: f64 },
}

/// One 2-vector per grid cell, indexed `[x][y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorGrid {
    cells: Vec<[f64; 2]>,
}

impl Default for VectorGrid {
    fn default() -> Self {
        VectorGrid {
            cells: vec![[0.0; 2]; GRID_WIDTH * GRID_HEIGHT],
        }
    }
}

fn index(x: usize, y: usize) -> usize {
    x * GRID_HEIGHT + y
}

impl VectorGrid {
    pub fn get(&self, x: usize, y: usize) -> [f64; 2] {
        self.cells[index(x, y)]
    }

    pub fn set(&mut self, x: usize, y: usize, v: [f64; 2]) {
        self.cells[index(x, y)] = v;
    }

    /// `(x, y, vector)` for every cell, x-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, [f64; 2])> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, v)| (i / GRID_HEIGHT, i % GRID_HEIGHT, *v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.cells.iter().filter(|v| **v != [0.0, 0.0]).count()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.cells
            .iter()
            .map(|v| v[0].hypot(v[1]))
            .fold(0.0, f64::max)
    }
}

/// One vector grid per team, all zeros initially.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ForceField {
    layers: [VectorGrid; 2],
}

fn cell(x: i32, y: i32) -> Result<(usize, usize), ForceFieldError> {
    if (0..=WIDTH).contains(&x) && (0..=HEIGHT).contains(&y) {
        Ok((x as usize, y as usize))
    } else {
        Err(ForceFieldError::OutOfBounds { x, y })
    }
}

impl ForceField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn layer(&self, team: Team) -> &VectorGrid {
        &self.layers[team.index()]
    }

    /// Averages the displacement into the cell under the ball. Touches only
    /// that cell of `team`'s layer.
    pub fn update_cell(
        &mut self,
        lx: i32,
        ly: i32,
        lcx: i32,
        lcy: i32,
        team: Team,
    ) -> Result<(), ForceFieldError> {
        let (x, y) = cell(lx, ly)?;
        cell(lcx, lcy)?;
        let layer = &mut self.layers[team.index()];
        let old = layer.get(x, y);
        layer.set(
            x,
            y,
            [
                (old[0] + f64::from(lcx - lx)) / 2.0,
                (old[1] + f64::from(lcy - ly)) / 2.0,
            ],
        );
        Ok(())
    }

    /// Applies [`update_cell`](Self::update_cell) once per record, in order.
    /// Records are bounds-checked up front so a bad trace leaves the field
    /// untouched.
    pub fn accumulate(&mut self, trace: &[TraceRecord]) -> Result<(), ForceFieldError> {
        for r in trace {
            cell(r.lx, r.ly)?;
            cell(r.lcx, r.lcy)?;
        }
        for r in trace {
            self.update_cell(r.lx, r.ly, r.lcx, r.lcy, r.possession)?;
        }
        Ok(())
    }

    /// Per-cell home + away.
    pub fn sum_fields(&self) -> VectorGrid {
        let [home, away] = &self.layers;
        VectorGrid {
            cells: home
                .cells
                .iter()
                .zip(&away.cells)
                .map(|(h, a)| [h[0] + a[0], h[1] + a[1]])
                .collect(),
        }
    }
}

/// `(floor(255 n / N), 255, 0)`: green for short vectors, yellow at `N`.
pub fn magnitude_color(n: f64, max: f64) -> Result<[u8; 3], ForceFieldError> {
    if max.is_nan() || max <= 0.0 || !(0.0..=max).contains(&n) {
        return Err(ForceFieldError::BadNormalizer { n, max });
    }
    let red = (255.0 * n / max).floor().clamp(0.0, 255.0) as u8;
    Ok([red, 255, 0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Binary PPM, one pixel per cell, row `y`, column `x`.
    HeatmapPpm,
    /// `x,y,vx,vy` rows for nonzero cells.
    VectorsCsv,
}

pub fn render(grid: &VectorGrid, mode: RenderMode) -> Vec<u8> {
    match mode {
        RenderMode::HeatmapPpm => render_ppm(grid),
        RenderMode::VectorsCsv => render_csv(grid),
    }
}

fn render_ppm(grid: &VectorGrid) -> Vec<u8> {
    let max = match grid.max_magnitude() {
        m if m > 0.0 => m,
        _ => 1.0,
    };
    let mut out = format!("P6\n{GRID_WIDTH} {GRID_HEIGHT}\n255\n").into_bytes();
    out.reserve(GRID_WIDTH * GRID_HEIGHT * 3);
    for y in 0..GRID_HEIGHT {
        for x in 0..GRID_WIDTH {
            let v = grid.get(x, y);
            let n = v[0].hypot(v[1]).min(max);
            let rgb = magnitude_color(n, max).expect("n is within [0, max]");
            out.extend_from_slice(&rgb);
        }
    }
    out
}

fn render_csv(grid: &VectorGrid) -> Vec<u8> {
    let mut out = String::from("x,y,vx,vy\n");
    for (x, y, v) in grid.iter() {
        if v != [0.0, 0.0] {
            let _ = writeln!(out, "{x},{y},{},{}", v[0], v[1]);
        }
    }
    out.into_bytes()
}
