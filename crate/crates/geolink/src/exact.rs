//! Exact integer/rational arithmetic and lattice-vector geometry.
//!
//! Everything downstream (torus polygons, orbifold codes, quadratic forms)
//! reduces to the handful of primitives in this module. No operation here
//! ever touches floating point: angles are compared through quadrant
//! classification and cross products, areas through the shoelace formula,
//! and lattice-point counts through exact point-in-polygon tests.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator
/// (the `num_rational` constructor maintains both invariants).
pub type Rational = num_rational::BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Renders a rational as `"n"` when integral and `"num/den"` otherwise.
///
/// This is the wire format used by the CLI and by CSV matrix export; it is
/// lossless, unlike any decimal rendering.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `"n"` / `"num/den"` format produced by [`rat_to_string`].
pub fn rat_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// A vector of the integer lattice Z^2. Serialized as a plain `[x, y]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(i64, i64)", from = "(i64, i64)")]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl From<LatticeVector> for (i64, i64) {
    fn from(v: LatticeVector) -> Self {
        (v.x, v.y)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVector { x, y }
    }
}

impl LatticeVector {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn neg(&self) -> Self {
        LatticeVector::new(-self.x, -self.y)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector::new(self.x * k, self.y * k)
    }

    /// 2x2 determinant `self.x * other.y - self.y * other.x`, widened to
    /// `i128` so that products of large coordinates cannot wrap.
    pub fn cross(&self, other: &Self) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// True when the coordinates are coprime (and the vector is nonzero).
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.unsigned_abs().gcd(&self.y.unsigned_abs()) == 1
    }
}

/// Factors a nonzero lattice vector as `multiplicity * direction` with a
/// primitive direction. The direction keeps the orientation of the input.
pub fn primitive(v: &LatticeVector) -> Result<(u64, LatticeVector)> {
    if v.is_zero() {
        return Err(Error::DegenerateInput("zero vector has no direction".into()));
    }
    let g = v.x.unsigned_abs().gcd(&v.y.unsigned_abs());
    let k = g as i64;
    Ok((g, LatticeVector::new(v.x / k, v.y / k)))
}

/// Index of the half-open half-plane containing `v`: 0 for angles in
/// `[0, pi)`, 1 for `[pi, 2pi)`.
fn half_plane(v: &LatticeVector) -> u8 {
    if v.y > 0 || (v.y == 0 && v.x > 0) {
        0
    } else {
        1
    }
}

/// Total order on nonzero lattice vectors by angle in `[0, 2pi)`.
///
/// Vectors pointing in the same direction compare equal regardless of
/// length; opposite vectors are distinct. Exact: half-plane classification
/// first, cross-product sign within a half-plane.
pub fn angle_compare(u: &LatticeVector, v: &LatticeVector) -> Result<Ordering> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::DegenerateInput("zero vector has no angle".into()));
    }
    let (hu, hv) = (half_plane(u), half_plane(v));
    if hu != hv {
        return Ok(hu.cmp(&hv));
    }
    // within one half-plane the angular gap is < pi, so the sign of the
    // cross product decides: u before v exactly when u x v > 0
    Ok(0i128.cmp(&u.cross(v)))
}

/// Twice the area enclosed by a counterclockwise vertex cycle, as an exact
/// nonnegative integer. Degenerate cycles (segments, single points) give 0.
pub fn shoelace_twice_area(vertices: &[LatticeVector]) -> Result<i128> {
    if vertices.is_empty() {
        return Err(Error::DegenerateInput("polygon needs at least one vertex".into()));
    }
    let mut sum: i128 = 0;
    for (a, b) in cyclic_edges(vertices) {
        sum += a.cross(&b);
    }
    debug_assert!(sum >= 0, "vertices must be in counterclockwise order");
    Ok(sum)
}

fn cyclic_edges(vertices: &[LatticeVector]) -> impl Iterator<Item = (LatticeVector, LatticeVector)> + '_ {
    let n = vertices.len();
    (0..n).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

/// True when `p` lies on the closed segment from `a` to `b`.
fn on_segment(p: &LatticeVector, a: &LatticeVector, b: &LatticeVector) -> bool {
    let ab = LatticeVector::new(b.x - a.x, b.y - a.y);
    let ap = LatticeVector::new(p.x - a.x, p.y - a.y);
    if ab.cross(&ap) != 0 {
        return false;
    }
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Counts lattice points strictly inside and on the boundary of a convex
/// counterclockwise polygon, by scanning its bounding box with exact
/// half-plane tests. Degenerate polygons have an empty interior.
pub fn lattice_point_counts(vertices: &[LatticeVector]) -> Result<(u64, u64)> {
    if vertices.is_empty() {
        return Err(Error::DegenerateInput("polygon needs at least one vertex".into()));
    }
    let min_x = vertices.iter().map(|v| v.x).min().unwrap();
    let max_x = vertices.iter().map(|v| v.x).max().unwrap();
    let min_y = vertices.iter().map(|v| v.y).min().unwrap();
    let max_y = vertices.iter().map(|v| v.y).max().unwrap();

    let mut interior = 0u64;
    let mut boundary = 0u64;
    for x in min_x..=max_x {
        for y in min_y..=max_y {
            let p = LatticeVector::new(x, y);
            let mut on_edge = false;
            let mut strictly_left = true;
            for (a, b) in cyclic_edges(vertices) {
                if on_segment(&p, &a, &b) {
                    on_edge = true;
                    break;
                }
                let edge = LatticeVector::new(b.x - a.x, b.y - a.y);
                let to_p = LatticeVector::new(p.x - a.x, p.y - a.y);
                if edge.cross(&to_p) <= 0 {
                    strictly_left = false;
                }
            }
            if on_edge {
                boundary += 1;
            } else if strictly_left && vertices.len() >= 3 {
                interior += 1;
            }
        }
    }
    Ok((interior, boundary))
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl FormMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        FormMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        assert!(row < self.rows && col < self.cols);
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        let e = &mut self.entries[row * self.cols + col];
        *e += value;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// CSV rendering with one `"num/den"` cell per entry. Exact.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| rat_to_string(self.get(i, j))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON rendering `{"rows": r, "cols": c, "entries": [[...], ...]}`
    /// with exact `"num/den"` strings for the entries.
    pub fn to_json(&self) -> String {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rat_to_string(self.get(i, j))).collect())
            .collect();
        serde_json::to_string(&serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        }))
        .expect("serializable")
    }

    /// Parses the format produced by [`FormMatrix::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct MatrixJson {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let parsed: MatrixJson = serde_json::from_str(s)
            .map_err(|e| Error::DegenerateInput(format!("bad matrix JSON: {e}")))?;
        if parsed.entries.len() != parsed.rows
            || parsed.entries.iter().any(|r| r.len() != parsed.cols)
        {
            return Err(Error::ShapeError {
                expected: (parsed.rows, parsed.cols),
                got: (
                    parsed.entries.len(),
                    parsed.entries.first().map_or(0, |r| r.len()),
                ),
            });
        }
        let mut m = FormMatrix::zeros(parsed.rows, parsed.cols);
        for (i, row) in parsed.entries.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let value = rat_from_str(cell)
                    .ok_or_else(|| Error::DegenerateInput(format!("bad rational {cell:?}")))?;
                m.set(i, j, value);
            }
        }
        Ok(m)
    }
}

/// Exact bilinear evaluation `a^T M b`.
pub fn bilinear_eval(m: &FormMatrix, a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.len() != m.rows || b.len() != m.cols {
        return Err(Error::ShapeError {
            expected: (m.rows, m.cols),
            got: (a.len(), b.len()),
        });
    }
    let mut total = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let mut row_sum = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            row_sum += m.get(i, j) * bj;
        }
        total += ai * row_sum;
    }
    Ok(total)
}
