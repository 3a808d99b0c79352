//! Raster fuel-availability maps loaded from header-free CSV files.

use std::path::Path;

use crate::error::{Error, Result};

/// Default multiplier applied to raster values when sampling.
pub const DEFAULT_AVAILABILITY_SCALE: f64 = 0.725;

/// Which raster row corresponds to the top (maximum `y`) of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrder {
    /// Image convention: row 0 is the top edge.
    TopFirst,
    BottomFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuelMap {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    pub availability_scale: f64,
    /// Reject samples whose pixel index reaches the raster size, including
    /// points exactly on the upper `x` or lower `y` edge.
    pub strict: bool,
    row_order: RowOrder,
    clamped: usize,
}

impl FuelMap {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || cols == 0 {
            return Err(Error::config("fuel map must have at least one row and column"));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Format {
                path: "<memory>".into(),
                row: bad + 1,
                column: rows[bad].len() + 1,
                message: format!("expected {cols} columns, found {}", rows[bad].len()),
            });
        }
        let mut clamped = 0;
        let data = rows
            .into_iter()
            .flatten()
            .map(|v| {
                if (0.0..=1.0).contains(&v) {
                    v
                } else {
                    clamped += 1;
                    if v.is_nan() {
                        0.0
                    } else {
                        v.clamp(0.0, 1.0)
                    }
                }
            })
            .collect();
        Ok(Self {
            rows: n_rows,
            cols,
            data,
            availability_scale: DEFAULT_AVAILABILITY_SCALE,
            strict: false,
            row_order: RowOrder::TopFirst,
            clamped,
        })
    }

    pub fn uniform(rows: usize, cols: usize, value: f64) -> Result<Self> {
        Self::from_rows(vec![vec![value; cols]; rows])
    }

    /// Reads a comma-separated grid of reals, one raster row per line, no header.
    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text, &path.display().to_string())
    }

    pub fn parse_csv(text: &str, origin: &str) -> Result<Self> {
        let format_err = |row: usize, column: usize, message: String| Error::Format {
            path: origin.to_string(),
            row,
            column,
            message,
        };
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| format_err(r + 1, 0, e.to_string()))?;
            let mut row = Vec::with_capacity(record.len());
            for (c, field) in record.iter().enumerate() {
                let v: f64 = field
                    .parse()
                    .map_err(|_| format_err(r + 1, c + 1, format!("not a number: {field:?}")))?;
                row.push(v);
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(format_err(
                        r + 1,
                        row.len().min(first.len()) + 1,
                        format!("ragged row: expected {} columns, found {}", first.len(), row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(format_err(1, 1, "empty fuel map".into()));
        }
        let clamped_before = rows.iter().flatten().filter(|v| !(0.0..=1.0).contains(*v)).count();
        let map = Self::from_rows(rows)?;
        if clamped_before > 0 {
            log::warn!("{origin}: {clamped_before} fuel values outside [0, 1] were clamped");
        }
        Ok(map)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cells that were clamped into `[0, 1]` on load.
    pub fn clamped_cells(&self) -> usize {
        self.clamped
    }

    pub fn cell(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.availability_scale = scale;
        self
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// Same samples, stored with the row order reversed.
    pub fn flipped(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for r in (0..self.rows).rev() {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        Self {
            data,
            row_order: match self.row_order {
                RowOrder::TopFirst => RowOrder::BottomFirst,
                RowOrder::BottomFirst => RowOrder::TopFirst,
            },
            ..self.clone()
        }
    }

    /// Pixel `(col, row)` holding the physical point, using truncation of
    /// `scale · coordinate` with the `y` axis flipped for image row order.
    pub fn pixel(&self, x: f64, y: f64, domain: [f64; 4]) -> Result<(usize, usize)> {
        let [xa, xb, ya, yb] = domain;
        let scale_x = self.cols as f64 / (xb - xa);
        let scale_y = self.rows as f64 / (yb - ya);
        let invalid = || Error::InvalidMapCoordinates {
            x,
            y,
            col: (scale_x * (x - xa)).floor() as i64,
            row: (scale_y * (yb - y)).floor() as i64,
            cols: self.cols,
            rows: self.rows,
        };
        if !(x >= xa && x <= xb && y >= ya && y <= yb) {
            return Err(invalid());
        }
        let mut col = (scale_x * (x - xa)) as usize;
        let mut row = match self.row_order {
            RowOrder::TopFirst => (scale_y * (yb - y)) as usize,
            RowOrder::BottomFirst => {
                // Mirror of the top-first index so both orders pick the same cell.
                let top = (scale_y * (yb - y)) as usize;
                if top >= self.rows {
                    top
                } else {
                    self.rows - 1 - top
                }
            }
        };
        if col >= self.cols || row >= self.rows {
            if self.strict {
                return Err(invalid());
            }
            col = col.min(self.cols - 1);
            row = match self.row_order {
                RowOrder::TopFirst => row.min(self.rows - 1),
                RowOrder::BottomFirst if row >= self.rows => 0,
                RowOrder::BottomFirst => row,
            };
        }
        Ok((col, row))
    }

    /// Scaled availability at a physical point of `domain = [x_a, x_b, y_a, y_b]`.
    pub fn sample(&self, x: f64, y: f64, domain: [f64; 4]) -> Result<f64> {
        let (col, row) = self.pixel(x, y, domain)?;
        Ok(self.cell(row, col) * self.availability_scale)
    }
}
