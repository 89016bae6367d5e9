//! Uniform bucket grid over a static point set.
//!
//! Points are binned into square cells stored in compressed-row form, so a
//! disk query visits only the cells overlapping the disk's bounding box.

use alloc::vec;
use alloc::vec::Vec;

use crate::process::Point;

/// Cells per axis are capped so that tiny query radii on large windows do
/// not allocate huge grids; the cell size grows instead.
const MAX_CELLS_PER_AXIS: usize = 2048;

#[derive(Debug, Clone)]
pub struct PointGrid<'a> {
    points: &'a [Point],
    x0: f64,
    y0: f64,
    cell: f64,
    cols: usize,
    rows: usize,
    // cell_start[c]..cell_start[c + 1] indexes `order` for cell c
    cell_start: Vec<u32>,
    order: Vec<u32>,
}

impl<'a> PointGrid<'a> {
    /// Builds a grid with cells of (at least) `cell_size` over the bounding
    /// box of `points`.
    pub fn new(points: &'a [Point], cell_size: f64) -> Self {
        assert!(cell_size > 0.0 && cell_size.is_finite(), "cell size must be positive");
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        if points.is_empty() {
            (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let span = (x1 - x0).max(y1 - y0);
        let cell = cell_size.max(span / MAX_CELLS_PER_AXIS as f64);
        let cols = (libm::floor((x1 - x0) / cell) as usize + 1).min(MAX_CELLS_PER_AXIS);
        let rows = (libm::floor((y1 - y0) / cell) as usize + 1).min(MAX_CELLS_PER_AXIS);

        let mut grid = Self {
            points,
            x0,
            y0,
            cell,
            cols,
            rows,
            cell_start: vec![0; cols * rows + 1],
            order: vec![0; points.len()],
        };
        let cells: Vec<usize> = points.iter().map(|p| grid.cell_of(p)).collect();
        for &c in &cells {
            grid.cell_start[c + 1] += 1;
        }
        for c in 0..cols * rows {
            grid.cell_start[c + 1] += grid.cell_start[c];
        }
        let mut fill = grid.cell_start.clone();
        for (i, &c) in cells.iter().enumerate() {
            grid.order[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        grid
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn col(&self, x: f64) -> isize {
        libm::floor((x - self.x0) / self.cell) as isize
    }

    fn row(&self, y: f64) -> isize {
        libm::floor((y - self.y0) / self.cell) as isize
    }

    fn cell_of(&self, p: &Point) -> usize {
        let c = self.col(p.x).clamp(0, self.cols as isize - 1) as usize;
        let r = self.row(p.y).clamp(0, self.rows as isize - 1) as usize;
        r * self.cols + c
    }

    fn bucket(&self, col: usize, row: usize) -> &[u32] {
        let c = row * self.cols + col;
        &self.order[self.cell_start[c] as usize..self.cell_start[c + 1] as usize]
    }

    /// True if some point lies within `radius` (inclusive) of `p`.
    pub fn any_within(&self, p: &Point, radius: f64) -> bool {
        if self.points.is_empty() {
            return false;
        }
        let r2 = radius * radius;
        let c_lo = self.col(p.x - radius).max(0);
        let c_hi = self.col(p.x + radius).min(self.cols as isize - 1);
        let r_lo = self.row(p.y - radius).max(0);
        let r_hi = self.row(p.y + radius).min(self.rows as isize - 1);
        if c_lo > c_hi || r_lo > r_hi {
            return false;
        }
        for row in r_lo as usize..=r_hi as usize {
            for col in c_lo as usize..=c_hi as usize {
                if self
                    .bucket(col, row)
                    .iter()
                    .any(|&i| self.points[i as usize].dist_sq(p) <= r2)
                {
                    return true;
                }
            }
        }
        false
    }

    /// Index and squared distance of the point nearest to `p`; ties go to
    /// the lowest index.
    pub fn nearest(&self, p: &Point) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let pc = self.col(p.x).clamp(0, self.cols as isize - 1);
        let pr = self.row(p.y).clamp(0, self.rows as isize - 1);
        let mut best: Option<(usize, f64)> = None;
        let max_ring = self.cols.max(self.rows) as isize;
        for k in 0..=max_ring {
            for row in pr - k..=pr + k {
                if row < 0 || row >= self.rows as isize {
                    continue;
                }
                let on_edge_row = row == pr - k || row == pr + k;
                let step = if on_edge_row { 1 } else { (2 * k).max(1) as usize };
                let mut col = pc - k;
                while col <= pc + k {
                    if col >= 0 && col < self.cols as isize {
                        for &i in self.bucket(col as usize, row as usize) {
                            let d = self.points[i as usize].dist_sq(p);
                            let better = match best {
                                None => true,
                                Some((bi, bd)) => d < bd || (d == bd && (i as usize) < bi),
                            };
                            if better {
                                best = Some((i as usize, d));
                            }
                        }
                    }
                    col += step as isize;
                }
            }
            // Anything in ring k + 1 or beyond is at least k cells away.
            if let Some((_, bd)) = best {
                let reach = k as f64 * self.cell;
                if bd < reach * reach {
                    break;
                }
            }
        }
        best
    }
}
