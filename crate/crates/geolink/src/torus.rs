//! Lattice-polygon calculus for periodic orbits of the geodesic flow on a
//! flat torus.
//!
//! A finite collection of periodic orbits is described purely by its
//! combinatorial type: how many orbits run in each rational direction. A
//! null-homologous collection closes up into a convex lattice polygon whose
//! edge vectors are the multiplicity-weighted slopes sorted by angle, and
//! every invariant computed here reads off that polygon exactly:
//!
//! * Euler characteristic of a spanning transverse surface: `-2A`,
//! * genus: the number of interior lattice points `I`,
//! * existence of a Birkhoff section bounded by the collection: `I >= 1`,
//! * linking number of two collections: `A + A' - A(union)`.
//!
//! Areas are stored doubled (`2A`) so that they stay integral; the area
//! itself is a half-integer in general. The triangle spanned by the slopes
//! `(1,0), (0,1), (-1,-1)` has `A = 1/2`, and its Euler characteristic `-1`
//! is consistent with `chi = 2 - 2g - sum(n_i) = 2 - 0 - 3`; an integrality
//! assumption on `A` would contradict that, so none is made here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    angle_compare, lattice_point_counts, primitive, shoelace_twice_area, LatticeVector,
    Rational,
};

/// A rational direction on the torus together with the number of parallel
/// orbits running in it. The direction is always primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slope {
    pub direction: LatticeVector,
    pub multiplicity: u64,
}

/// Canonical combinatorial type of an orbit collection: primitive
/// directions, pairwise distinct, sorted by angle in `[0, 2pi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCollection {
    slopes: Vec<Slope>,
}

/// Convex polygon with integer vertices, counterclockwise. A two-vertex
/// "polygon" (a segment) is allowed; it is the shadow of a collection whose
/// slopes are all parallel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolygon {
    pub vertices: Vec<LatticeVector>,
}

/// The exact invariants attached to a null-homologous collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonInvariants {
    /// Doubled polygon area `2A`.
    pub twice_area: u64,
    /// Interior lattice points `I`; equals the genus.
    pub interior: u64,
    /// Total orbit count `sum(n_i)`; equals the boundary lattice point
    /// count whenever the polygon is non-degenerate.
    pub boundary: u64,
    /// Euler characteristic `-2A` of a spanning transverse surface.
    pub euler: i64,
    /// Genus of a Birkhoff-type spanning surface; equals `interior`.
    pub genus: u64,
}

/// Which transverse surfaces a null-homologous collection bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirkhoffStatus {
    /// Always true: some translate of the polygon has the origin on its
    /// boundary, which realizes a negatively transverse surface.
    pub negative_transverse_surface: bool,
    /// True when some translate puts the origin strictly inside, i.e. when
    /// the polygon has an interior lattice point.
    pub birkhoff_section: bool,
    /// Always false: no positively transverse surface exists.
    pub positive_transverse_surface: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlopeEntry {
    Object { mult: u64, dir: LatticeVector },
    Pair(u64, LatticeVector),
}

impl TorusCollection {
    /// Builds the canonical combinatorial type from raw `(count, vector)`
    /// pairs: vectors are reduced to primitive form (absorbing their length
    /// into the multiplicity), equal directions are merged, and slopes are
    /// sorted by angle.
    pub fn canonicalize(raw: &[(u64, LatticeVector)]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let mut slopes: Vec<Slope> = Vec::new();
        for &(count, v) in raw {
            if count == 0 {
                return Err(Error::DegenerateInput("slope with zero multiplicity".into()));
            }
            let (k, dir) = primitive(&v)?;
            match slopes.iter_mut().find(|s| s.direction == dir) {
                Some(s) => s.multiplicity += count * k,
                None => slopes.push(Slope {
                    direction: dir,
                    multiplicity: count * k,
                }),
            }
        }
        slopes.sort_by(|a, b| angle_compare(&a.direction, &b.direction).expect("nonzero"));
        Ok(TorusCollection { slopes })
    }

    /// The pair of opposite lifts of a single closed geodesic of direction
    /// `u`; always null-homologous.
    pub fn symmetric_pair(u: LatticeVector) -> Result<Self> {
        Self::canonicalize(&[(1, u), (1, u.neg())])
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.slopes.iter().map(|s| s.multiplicity).sum()
    }

    /// True exactly when the multiplicity-weighted sum of the directions
    /// vanishes, i.e. when the collection is trivial in first homology.
    pub fn is_null_homologous(&self) -> bool {
        let mut x: i64 = 0;
        let mut y: i64 = 0;
        for s in &self.slopes {
            x += s.direction.x * s.multiplicity as i64;
            y += s.direction.y * s.multiplicity as i64;
        }
        x == 0 && y == 0
    }

    /// The convex lattice polygon whose j-th vertex is the j-th partial sum
    /// of the weighted slope vectors; the last vertex is the origin.
    pub fn polygon(&self) -> Result<LatticePolygon> {
        if !self.is_null_homologous() {
            return Err(Error::HomologyError);
        }
        let mut vertices = Vec::with_capacity(self.slopes.len());
        let mut acc = LatticeVector::new(0, 0);
        for s in &self.slopes {
            acc = acc.add(&s.direction.scale(s.multiplicity as i64));
            vertices.push(acc);
        }
        debug_assert_eq!(*vertices.last().unwrap(), LatticeVector::new(0, 0));
        Ok(LatticePolygon { vertices })
    }

    /// Area, lattice-point, Euler and genus data of the polygon.
    pub fn invariants(&self) -> Result<PolygonInvariants> {
        let polygon = self.polygon()?;
        let twice_area = shoelace_twice_area(&polygon.vertices)? as u64;
        let (interior, _) = lattice_point_counts(&polygon.vertices)?;
        let boundary = self.total_multiplicity();
        Ok(PolygonInvariants {
            twice_area,
            interior,
            boundary,
            euler: -(twice_area as i64),
            genus: interior,
        })
    }

    /// Multiset union of two collections. At the polygon level this is the
    /// Minkowski sum.
    pub fn union(&self, other: &Self) -> Self {
        let mut raw: Vec<(u64, LatticeVector)> = Vec::new();
        for s in self.slopes.iter().chain(other.slopes.iter()) {
            raw.push((s.multiplicity, s.direction));
        }
        Self::canonicalize(&raw).expect("union of valid collections is valid")
    }

    /// Exact linking number `A + A' - A(union)` of two null-homologous
    /// collections. Symmetric, never positive, and zero exactly when every
    /// slope of one collection is parallel to every slope of the other.
    /// Collections sharing a slope are read as disjoint parallel
    /// representatives.
    pub fn linking(&self, other: &Self) -> Result<Rational> {
        if !self.is_null_homologous() || !other.is_null_homologous() {
            return Err(Error::HomologyError);
        }
        let a1 = shoelace_twice_area(&self.polygon()?.vertices)?;
        let a2 = shoelace_twice_area(&other.polygon()?.vertices)?;
        let a12 = shoelace_twice_area(&self.union(other).polygon()?.vertices)?;
        Ok(crate::exact::rat(
            i64::try_from(a1 + a2 - a12).expect("desk-scale area"),
            2,
        ))
    }

    /// Which transverse surfaces the collection bounds. The free choice in
    /// translating the polygon means: boundary placement of the origin is
    /// always possible, interior placement exactly when `I >= 1`.
    pub fn birkhoff_status(&self) -> Result<BirkhoffStatus> {
        let inv = self.invariants()?;
        Ok(BirkhoffStatus {
            negative_transverse_surface: true,
            birkhoff_section: inv.interior >= 1,
            positive_transverse_surface: false,
        })
    }

    /// Parses the JSON schema: a list of `{"mult": n, "dir": [x, y]}`
    /// objects (bare `[n, [x, y]]` pairs are accepted too).
    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<SlopeEntry> = serde_json::from_str(s)
            .map_err(|e| Error::DegenerateInput(format!("bad collection JSON: {e}")))?;
        let raw: Vec<(u64, LatticeVector)> = entries
            .into_iter()
            .map(|e| match e {
                SlopeEntry::Object { mult, dir } => (mult, dir),
                SlopeEntry::Pair(mult, dir) => (mult, dir),
            })
            .collect();
        Self::canonicalize(&raw)
    }

    /// Canonical JSON rendering, parseable by [`TorusCollection::from_json`].
    pub fn to_json(&self) -> String {
        let entries: Vec<SlopeEntry> = self
            .slopes
            .iter()
            .map(|s| SlopeEntry::Object {
                mult: s.multiplicity,
                dir: s.direction,
            })
            .collect();
        serde_json::to_string(&entries).expect("serializable")
    }
}

/// Independent linking oracle for a pair of symmetric collections: the
/// opposite of the geometric intersection count of the two underlying
/// geodesics, `-|det(u, v)|`.
pub fn symmetric_linking_oracle(u: &LatticeVector, v: &LatticeVector) -> Result<i64> {
    if !u.is_primitive() || !v.is_primitive() {
        return Err(Error::DegenerateInput("oracle expects primitive directions".into()));
    }
    Ok(-(u.cross(v).unsigned_abs() as i64))
}

/// True when every slope of `a` is parallel (equal or opposite direction)
/// to every slope of `b`.
pub fn all_slopes_parallel(a: &TorusCollection, b: &TorusCollection) -> bool {
    a.slopes().iter().all(|sa| {
        b.slopes()
            .iter()
            .all(|sb| sa.direction.cross(&sb.direction) == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn coll(raw: &[(u64, (i64, i64))]) -> TorusCollection {
        let raw: Vec<(u64, LatticeVector)> = raw.iter().map(|&(n, (x, y))| (n, v(x, y))).collect();
        TorusCollection::canonicalize(&raw).unwrap()
    }

    fn triangle() -> TorusCollection {
        coll(&[(1, (1, 0)), (1, (0, 1)), (1, (-1, -1))])
    }

    fn square() -> TorusCollection {
        coll(&[(1, (1, 0)), (1, (0, 1)), (1, (-1, 0)), (1, (0, -1))])
    }

    #[test]
    fn canonicalize_reduces_merges_and_sorts() {
        let c = coll(&[(1, (2, 0))]);
        assert_eq!(
            c.slopes(),
            &[Slope { direction: v(1, 0), multiplicity: 2 }]
        );

        let c = coll(&[(1, (0, 1)), (1, (1, 0))]);
        assert_eq!(c.slopes()[0].direction, v(1, 0));
        assert_eq!(c.slopes()[1].direction, v(0, 1));

        let c = coll(&[(1, (1, 0)), (2, (1, 0))]);
        assert_eq!(
            c.slopes(),
            &[Slope { direction: v(1, 0), multiplicity: 3 }]
        );
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        assert!(matches!(
            TorusCollection::canonicalize(&[]),
            Err(Error::EmptyCollection)
        ));
        assert!(matches!(
            TorusCollection::canonicalize(&[(1, v(0, 0))]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn null_homology_examples() {
        assert!(coll(&[(1, (1, 0)), (1, (-1, 0))]).is_null_homologous());
        assert!(triangle().is_null_homologous());
        assert!(!coll(&[(1, (1, 0))]).is_null_homologous());
    }

    #[test]
    fn polygon_examples() {
        assert_eq!(
            triangle().polygon().unwrap().vertices,
            vec![v(1, 0), v(1, 1), v(0, 0)]
        );
        assert_eq!(
            square().polygon().unwrap().vertices,
            vec![v(1, 0), v(1, 1), v(0, 1), v(0, 0)]
        );
        assert_eq!(
            coll(&[(1, (1, 0)), (1, (-1, 0))]).polygon().unwrap().vertices,
            vec![v(1, 0), v(0, 0)]
        );
        assert!(matches!(
            coll(&[(1, (1, 0))]).polygon(),
            Err(Error::HomologyError)
        ));
    }

    #[test]
    fn invariants_examples() {
        let i = triangle().invariants().unwrap();
        assert_eq!((i.twice_area, i.interior, i.boundary), (1, 0, 3));
        assert_eq!((i.euler, i.genus), (-1, 0));

        let i = square().invariants().unwrap();
        assert_eq!((i.twice_area, i.interior, i.boundary), (2, 0, 4));
        assert_eq!((i.euler, i.genus), (-2, 0));

        let c = coll(&[(1, (1, 1)), (1, (1, -1)), (1, (-1, -1)), (1, (-1, 1))]);
        let i = c.invariants().unwrap();
        assert_eq!((i.twice_area, i.interior, i.boundary), (4, 1, 4));
        assert_eq!((i.euler, i.genus), (-4, 1));
    }

    #[test]
    fn union_examples() {
        let a = TorusCollection::symmetric_pair(v(1, 0)).unwrap();
        let b = TorusCollection::symmetric_pair(v(0, 1)).unwrap();
        let u = a.union(&b);
        assert_eq!(u.slopes().len(), 4);
        assert_eq!(
            u.polygon().unwrap().vertices,
            vec![v(1, 0), v(1, 1), v(0, 1), v(0, 0)]
        );

        let c = coll(&[(1, (1, 0))]);
        let doubled = c.union(&c);
        assert_eq!(doubled.slopes()[0].multiplicity, 2);

        let m = coll(&[(1, (1, 0))]).union(&coll(&[(2, (1, 0))]));
        assert_eq!(m.slopes()[0].multiplicity, 3);
    }

    #[test]
    fn linking_examples() {
        let a = TorusCollection::symmetric_pair(v(1, 0)).unwrap();
        let b = TorusCollection::symmetric_pair(v(0, 1)).unwrap();
        assert_eq!(a.linking(&b).unwrap(), rat_int(-1));

        let c = TorusCollection::symmetric_pair(v(1, 1)).unwrap();
        let d = TorusCollection::symmetric_pair(v(1, -1)).unwrap();
        assert_eq!(c.linking(&d).unwrap(), rat_int(-2));

        // parallel distinct orbits link trivially
        assert_eq!(a.linking(&a).unwrap(), rat_int(0));

        assert!(matches!(
            coll(&[(1, (1, 0))]).linking(&a),
            Err(Error::HomologyError)
        ));
    }

    #[test]
    fn linking_triangle_with_square() {
        // union polygon has vertices (2,0),(2,2),(1,2),(0,1),(0,0), 2A = 7,
        // so lk = (1 + 2 - 7) / 2
        assert_eq!(triangle().linking(&square()).unwrap(), rat(-2, 1));
        assert_eq!(square().linking(&triangle()).unwrap(), rat(-2, 1));
    }

    #[test]
    fn birkhoff_examples() {
        assert!(!triangle().birkhoff_status().unwrap().birkhoff_section);
        assert!(!square().birkhoff_status().unwrap().birkhoff_section);
        let c = coll(&[(1, (1, 1)), (1, (1, -1)), (1, (-1, -1)), (1, (-1, 1))]);
        let status = c.birkhoff_status().unwrap();
        assert!(status.birkhoff_section);
        assert!(status.negative_transverse_surface);
        assert!(!status.positive_transverse_surface);
        // a Birkhoff section forces genus >= 1
        assert!(c.invariants().unwrap().genus >= 1);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(symmetric_linking_oracle(&v(1, 0), &v(0, 1)).unwrap(), -1);
        assert_eq!(symmetric_linking_oracle(&v(1, 1), &v(1, -1)).unwrap(), -2);
        assert_eq!(symmetric_linking_oracle(&v(1, 0), &v(1, 0)).unwrap(), 0);
        assert!(symmetric_linking_oracle(&v(2, 2), &v(1, 0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = triangle();
        let parsed = TorusCollection::from_json(&c.to_json()).unwrap();
        assert_eq!(parsed, c);
        // bare-pair form accepted
        let parsed = TorusCollection::from_json("[[1,[1,0]],[1,[-1,0]]]").unwrap();
        assert_eq!(parsed, TorusCollection::symmetric_pair(v(1, 0)).unwrap());
    }
}
