use std::cmp::Ordering;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::rect::{mask_to_indices, Rectangle};

/// Largest smaller side accepted by [`max_monochromatic_rectangle`].
pub const MONO_SIDE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonochromaticRectangle {
    pub rect: Rectangle,
    pub value: bool,
    /// `area / (m * n)`, reduced.
    pub density: Ratio<u64>,
}

impl MonochromaticRectangle {
    pub fn area(&self) -> usize {
        self.rect.area()
    }
}

/// Preference among monochromatic rectangles: larger area, then value 1,
/// then lexicographically smaller row set, then column set.
fn better(a: &(Rectangle, bool), b: &(Rectangle, bool)) -> bool {
    let ord = b
        .0
        .area()
        .cmp(&a.0.area())
        .then_with(|| b.1.cmp(&a.1))
        .then_with(|| a.0.canonical_cmp(&b.0));
    ord == Ordering::Less
}

/// Largest rectangle whose cells all carry one value.
///
/// Subsets of the smaller side are enumerated and closed on the other
/// side; a maximum-area rectangle is closed in both directions, so every
/// one of them is visited.
pub fn max_monochromatic_rectangle(matrix: &BoolMatrix) -> Result<MonochromaticRectangle> {
    let (m, n) = (matrix.rows(), matrix.cols());
    let small = m.min(n);
    if small > MONO_SIDE_CAP {
        return Err(Error::ResourceLimit {
            what: "smaller matrix side for monochromatic search",
            actual: small,
            cap: MONO_SIDE_CAP,
        });
    }
    if m.max(n) > 64 {
        return Err(Error::ResourceLimit {
            what: "larger matrix side for monochromatic search",
            actual: m.max(n),
            cap: 64,
        });
    }
    let by_rows = m <= n;
    let (lines, other) = if by_rows { (m, n) } else { (n, m) };
    let other_full = if other == 64 { u64::MAX } else { (1u64 << other) - 1 };

    let mut best: Option<(Rectangle, bool)> = None;
    let mut best_area = 0usize;
    for value in [true, false] {
        // masks[k]: positions on the other side where line k holds `value`.
        let masks: Vec<u64> = (0..lines)
            .map(|k| {
                let ones = if by_rows { matrix.row_mask(k) } else { matrix.col_mask(k) };
                if value {
                    ones
                } else {
                    !ones & other_full
                }
            })
            .collect();
        for subset in 1u64..(1 << lines) {
            let size = subset.count_ones() as usize;
            if size * other < best_area {
                continue;
            }
            let mut closure = other_full;
            for (k, &mask) in masks.iter().enumerate() {
                if subset >> k & 1 == 1 {
                    closure &= mask;
                }
            }
            let area = size * closure.count_ones() as usize;
            if closure == 0 || area < best_area {
                continue;
            }
            let (rows, cols) = if by_rows {
                (subset, closure)
            } else {
                (closure, subset)
            };
            let cand = (
                Rectangle::new(mask_to_indices(rows), mask_to_indices(cols))?,
                value,
            );
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best_area = area;
                best = Some(cand);
            }
        }
    }
    let (rect, value) = best.expect("a nonempty matrix has a monochromatic cell");
    let density = Ratio::new(rect.area() as u64, (m * n) as u64);
    Ok(MonochromaticRectangle {
        rect,
        value,
        density,
    })
}
