//! Shape checks on sampled fields: mirror symmetry and burned-region topology.

use super::snapshot::SampledField;

/// Largest relative mismatch between a square field and its transpose and
/// both axis reflections, `max |f − f∘σ| / max |f|`.
pub fn asymmetry(field: &SampledField) -> f64 {
    let m = field.xs.len();
    assert_eq!(m, field.ys.len(), "field must be square");
    let scale = field.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for j in 0..m {
        for i in 0..m {
            let v = field.get(i, j);
            for w in [field.get(j, i), field.get(m - 1 - i, j), field.get(i, m - 1 - j)] {
                worst = worst.max((v - w).abs());
            }
        }
    }
    worst / scale
}

/// Boolean raster with the same layout as a [`SampledField`].
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl Mask {
    pub fn below(field: &SampledField, threshold: f64) -> Self {
        Self {
            width: field.xs.len(),
            height: field.ys.len(),
            cells: field.values.iter().map(|&v| v < threshold).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[j * self.width + i]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// 4-connected components of cells equal to `value`; each entry records
    /// the component size and whether it touches the raster edge.
    pub fn components(&self, value: bool) -> Vec<(usize, bool)> {
        let (w, h) = (self.width, self.height);
        let mut seen = vec![false; w * h];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..w * h {
            if seen[start] || self.cells[start] != value {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let (mut size, mut edge) = (0, false);
            while let Some(k) = stack.pop() {
                size += 1;
                let (i, j) = (k % w, k / w);
                edge |= i == 0 || j == 0 || i == w - 1 || j == h - 1;
                let mut visit = |n: usize| {
                    if !seen[n] && self.cells[n] == value {
                        seen[n] = true;
                        stack.push(n);
                    }
                };
                if i > 0 {
                    visit(k - 1);
                }
                if i + 1 < w {
                    visit(k + 1);
                }
                if j > 0 {
                    visit(k - w);
                }
                if j + 1 < h {
                    visit(k + w);
                }
            }
            out.push((size, edge));
        }
        out
    }

    /// One non-empty connected set with no enclosed holes.
    pub fn is_simply_connected(&self) -> bool {
        self.components(true).len() == 1 && self.components(false).iter().all(|&(_, edge)| edge)
    }

    /// Along each of the eight grid rays from `(ci, cj)`, the set is a prefix:
    /// once a ray leaves it, it never re-enters.
    pub fn is_star_shaped_from(&self, ci: usize, cj: usize) -> bool {
        const RAYS: [(isize, isize); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        RAYS.iter().all(|&(di, dj)| {
            let (mut i, mut j) = (ci as isize, cj as isize);
            let mut left = false;
            while i >= 0 && j >= 0 && (i as usize) < self.width && (j as usize) < self.height {
                let inside = self.get(i as usize, j as usize);
                if inside && left {
                    return false;
                }
                left |= !inside;
                i += di;
                j += dj;
            }
            true
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: usize, f: impl Fn(f64, f64) -> f64) -> SampledField {
        let xs: Vec<f64> = (0..m).map(|k| k as f64 - (m - 1) as f64 / 2.0).collect();
        let values = xs
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        SampledField {
            n_samples: m - 1,
            xs: xs.clone(),
            ys: xs,
            values,
        }
    }

    #[test]
    fn radial_field_is_symmetric() {
        let f = field(21, |x, y| (x * x + y * y).sqrt());
        assert!(asymmetry(&f) < 1e-15);
        let g = field(21, |x, y| x * x + y * y + 0.01 * x);
        assert!((asymmetry(&g) - 0.01 * 20.0 / (200.0 + 0.1)).abs() < 1e-12);
        let h = field(21, |x, y| x * x + 2.0 * y * y);
        assert!(asymmetry(&h) > 0.1);
    }

    #[test]
    fn disk_ring_and_two_blobs() {
        let disk = Mask::below(&field(31, |x, y| x * x + y * y), 36.0);
        assert!(disk.is_simply_connected());
        assert!(disk.is_star_shaped_from(15, 15));

        let ring = Mask::below(&field(31, |x, y| ((x * x + y * y).sqrt() - 8.0).abs()), 2.0);
        assert!(!ring.is_simply_connected());
        assert!(!ring.is_star_shaped_from(15, 15));

        let two = Mask::below(
            &field(31, |x, y| ((x - 8.0).powi(2) + y * y).min((x + 8.0).powi(2) + y * y)),
            9.0,
        );
        assert_eq!(two.components(true).len(), 2);
        assert!(!two.is_simply_connected());

        let empty = Mask::below(&field(5, |_, _| 1.0), 0.5);
        assert!(!empty.is_simply_connected());
        assert_eq!(empty.count(), 0);
    }
}
