//! Cross-intersecting set families and their matrices.
//!
//! A pair of families `S_1..S_m`, `T_1..T_n` over `[d]` corresponds to the
//! integer matrix `|S_i ∩ T_j|`, which is the sum of the `d` element
//! rectangles `{i : k ∈ S_i} x {j : k ∈ T_j}`. Conversely any list of `d`
//! rectangles defines such a pair. Turning each signed term `ε R` of a
//! decomposition of `M` into two rectangles summing to `J + ε R` yields a
//! `{u, u+1}`-cross-intersecting pair over `2u` elements, `u` the number
//! of terms.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{check_index, Error, Result};
use crate::matrix::{BoolMatrix, IntMatrix};
use crate::oracles::max_monochromatic_rectangle;
use crate::rect::{Rectangle, Sign, SignedDecomposition};

/// Two families of subsets of `{0, …, d-1}`. Families are lists, so
/// repeated members are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamilyPair {
    d: usize,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl SetFamilyPair {
    pub fn new(d: usize, left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Validation("both families need at least one set".into()));
        }
        let normalize = |sets: Vec<Vec<usize>>| -> Result<Vec<Vec<usize>>> {
            sets.into_iter()
                .map(|mut s| {
                    s.sort_unstable();
                    s.dedup();
                    if let Some(&top) = s.last() {
                        check_index("universe element", top, d)?;
                    }
                    Ok(s)
                })
                .collect()
        };
        Ok(Self {
            d,
            left: normalize(left)?,
            right: normalize(right)?,
        })
    }

    pub fn universe(&self) -> usize {
        self.d
    }

    /// The family indexing rows (`S`).
    pub fn left(&self) -> &[Vec<usize>] {
        &self.left
    }

    /// The family indexing columns (`T`).
    pub fn right(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn intersection_size(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.left[i], &self.right[j]);
        let (mut x, mut y, mut count) = (0, 0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        count
    }
}

/// Allowed intersection sizes `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionSpec(BTreeSet<usize>);

impl IntersectionSpec {
    pub fn new(values: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = values.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Validation("intersection spec must be nonempty".into()));
        }
        Ok(Self(set))
    }

    pub fn singleton(a: usize) -> Self {
        Self(BTreeSet::from([a]))
    }

    pub fn pair(a: usize, b: usize) -> Self {
        Self(BTreeSet::from([a, b]))
    }

    /// `{0, …, d}`.
    pub fn all(d: usize) -> Self {
        Self((0..=d).collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

/// `M[i][j] = |S_i ∩ T_j|`.
pub fn family_to_matrix(p: &SetFamilyPair) -> IntMatrix {
    let (m, n) = (p.left.len(), p.right.len());
    let mut out = IntMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            out.set(i, j, p.intersection_size(i, j) as i64);
        }
    }
    out
}

/// Rectangle `k` is `{i : k ∈ S_i} x {j : k ∈ T_j}`, or `None` when either
/// side is empty.
pub fn element_rectangles(p: &SetFamilyPair) -> Vec<Option<Rectangle>> {
    (0..p.d)
        .map(|k| {
            let rows = (0..p.left.len())
                .filter(|&i| p.left[i].binary_search(&k).is_ok())
                .collect();
            let cols = (0..p.right.len())
                .filter(|&j| p.right[j].binary_search(&k).is_ok())
                .collect();
            Rectangle::nonempty(rows, cols)
        })
        .collect()
}

/// One universe element per rectangle: `S_i = {k : i ∈ rows_k}`,
/// `T_j = {k : j ∈ cols_k}`.
pub fn rectangles_to_family(rects: &[Rectangle], m: usize, n: usize) -> Result<SetFamilyPair> {
    let sides: Vec<(Vec<usize>, Vec<usize>)> = rects
        .iter()
        .map(|r| (r.rows().to_vec(), r.cols().to_vec()))
        .collect();
    sides_to_family(&sides, m, n)
}

/// Like [`rectangles_to_family`], where a `None` marker is an element
/// belonging to no set.
pub fn markers_to_family(
    rects: &[Option<Rectangle>],
    m: usize,
    n: usize,
) -> Result<SetFamilyPair> {
    let sides: Vec<(Vec<usize>, Vec<usize>)> = rects
        .iter()
        .map(|r| {
            r.as_ref()
                .map_or((vec![], vec![]), |r| (r.rows().to_vec(), r.cols().to_vec()))
        })
        .collect();
    sides_to_family(&sides, m, n)
}

/// Elements given as raw `(rows, cols)` sides, either of which may be empty.
fn sides_to_family(
    sides: &[(Vec<usize>, Vec<usize>)],
    m: usize,
    n: usize,
) -> Result<SetFamilyPair> {
    let mut left = vec![Vec::new(); m];
    let mut right = vec![Vec::new(); n];
    for (k, (rows, cols)) in sides.iter().enumerate() {
        for &i in rows {
            check_index("row", i, m)?;
            left[i].push(k);
        }
        for &j in cols {
            check_index("column", j, n)?;
            right[j].push(k);
        }
    }
    SetFamilyPair::new(sides.len(), left, right)
}

/// `true` iff every `|S_i ∩ T_j|` lies in `spec`.
pub fn check_cross_intersecting(p: &SetFamilyPair, spec: &IntersectionSpec) -> bool {
    (0..p.left.len())
        .all(|i| (0..p.right.len()).all(|j| spec.contains(p.intersection_size(i, j))))
}

/// Output of [`signed_to_cross_intersecting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossIntersectingReduction {
    pub family: SetFamilyPair,
    /// Number of decomposition terms; intersections are `M[i][j] + u`.
    pub u: usize,
}

/// Replaces each term `ε_k R_k` (with `R_k = A x B`) of a decomposition of
/// `M` by the element pair `(2k, 2k+1)`:
/// `ε = +1` gives `J` and `R_k`; `ε = -1` gives `([m] \ A) x [n]` and
/// `A x ([n] \ B)`. Either way the pair sums to `J + ε R_k`, so
/// `|S_i ∩ T_j| = M[i][j] + u`. An empty-sided gadget keeps its element,
/// which then belongs to no set on the empty side.
pub fn signed_to_cross_intersecting(
    matrix: &BoolMatrix,
    dec: &SignedDecomposition,
) -> Result<CrossIntersectingReduction> {
    if !dec.verify(matrix)? {
        return Err(Error::Validation(
            "decomposition does not evaluate to the matrix".into(),
        ));
    }
    let (m, n) = (matrix.rows(), matrix.cols());
    let all_rows: Vec<usize> = (0..m).collect();
    let all_cols: Vec<usize> = (0..n).collect();
    let mut sides = Vec::with_capacity(2 * dec.len());
    for term in dec.terms() {
        let (a, b) = (term.rect.rows(), term.rect.cols());
        match term.sign {
            Sign::Plus => {
                sides.push((all_rows.clone(), all_cols.clone()));
                sides.push((a.to_vec(), b.to_vec()));
            }
            Sign::Minus => {
                let outside_a = all_rows.iter().copied().filter(|i| !a.contains(i)).collect();
                let outside_b = all_cols.iter().copied().filter(|j| !b.contains(j)).collect();
                sides.push((outside_a, all_cols.clone()));
                sides.push((a.to_vec(), outside_b));
            }
        }
    }
    let family = sides_to_family(&sides, m, n)?;
    Ok(CrossIntersectingReduction {
        family,
        u: dec.len(),
    })
}

/// Splits an `{a, b}`-valued matrix as `(b - a) B + a J` and returns `B`.
pub fn ab_to_boolean(mab: &IntMatrix, a: i64, b: i64) -> Result<BoolMatrix> {
    if a >= b {
        return Err(Error::Validation(format!("need a < b, got a = {a}, b = {b}")));
    }
    let mut entries = Vec::with_capacity(mab.entries().len());
    for (pos, &v) in mab.entries().iter().enumerate() {
        entries.push(match v {
            x if x == a => 0,
            x if x == b => 1,
            other => {
                return Err(Error::Validation(format!(
                    "entry ({}, {}) is {other}, expected {a} or {b}",
                    pos / mab.cols().max(1),
                    pos % mab.cols().max(1)
                )))
            }
        });
    }
    BoolMatrix::new(mab.rows(), mab.cols(), entries)
}

/// Subfamilies `A ⊆ S`, `B ⊆ T` with every intersection equal to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonochromaticSubfamilies {
    /// Indices into `S`.
    pub left: Vec<usize>,
    /// Indices into `T`.
    pub right: Vec<usize>,
    pub value: usize,
    /// `|A| |B| / (|S| |T|)`.
    pub density: Ratio<u64>,
}

impl MonochromaticSubfamilies {
    /// The subfamilies as a pair of their own.
    pub fn to_pair(&self, p: &SetFamilyPair) -> SetFamilyPair {
        SetFamilyPair {
            d: p.d,
            left: self.left.iter().map(|&i| p.left[i].clone()).collect(),
            right: self.right.iter().map(|&j| p.right[j].clone()).collect(),
        }
    }
}

/// Largest `{a}`- or `{b}`-cross-intersecting subfamily product of an
/// `{a, b}`-cross-intersecting pair, via the largest monochromatic
/// rectangle of its matrix.
pub fn best_monochromatic_subfamilies(
    p: &SetFamilyPair,
    a: usize,
    b: usize,
) -> Result<MonochromaticSubfamilies> {
    if a >= b {
        return Err(Error::Validation(format!("need a < b, got a = {a}, b = {b}")));
    }
    if !check_cross_intersecting(p, &IntersectionSpec::pair(a, b)) {
        return Err(Error::Validation(format!(
            "family pair is not {{{a}, {b}}}-cross-intersecting"
        )));
    }
    let boolean = ab_to_boolean(&family_to_matrix(p), a as i64, b as i64)?;
    let mono = max_monochromatic_rectangle(&boolean)?;
    Ok(MonochromaticSubfamilies {
        left: mono.rect.rows().to_vec(),
        right: mono.rect.cols().to_vec(),
        value: if mono.value { b } else { a },
        density: mono.density,
    })
}
