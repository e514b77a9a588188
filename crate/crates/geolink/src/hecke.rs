//! Syllable-code calculus for the geodesic flow on hyperbolic orbifolds
//! with two cone points of orders `p`, `q` and one cusp.
//!
//! Periodic geodesics avoiding the cusp are coded by cyclic words
//! `u^{i_1} v^{j_1} ... u^{i_m} v^{j_m}` in the free product of the two
//! rotation groups, with `1 <= i_k <= p-1` and `1 <= j_k <= q-1`
//! ([`normalize`]). Two exact routes compute the linking number of a coded
//! orbit with the fiber of the cusp in the compactified unit tangent
//! bundle:
//!
//! * `pq/r` times the wheel turn of the code, with `r = pq - p - q`
//!   ([`lk_cusp`]);
//! * a homological expansion of the orbit into the horocyclic boundary
//!   orbit and the two cone-point fibers ([`lk_cusp_homology_oracle`]).
//!
//! The two routes agree for every `(p, q)` exactly when the horocyclic
//! orbit links the cusp fiber by [`HOROCYCLE_CUSP_LINKING`] = -1: writing
//! `L` for that constant, route equality for a single syllable `(i, j)`
//! reads `L + (i-1) q/r + (j-1) p/r = (q i + p j - pq)/r`, which forces
//! `L = -(pq - p - q)/r = -1`. A value of `-1/r` would agree only when
//! `r = 1` (the modular case); the disc bounded by the horocyclic orbit
//! meets the cusp fiber in a single negative point, which is the same
//! conclusion. See `horocycle_constant_is_forced` in the tests.
//!
//! For `p = 2` the module also exposes the coefficient matrix of the
//! template upper bound for pairwise linking of coded collections
//! ([`bound_matrix_p2`], [`lk_bound_p2`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, FormMatrix, LatticeVector, Rational};

/// Linking of the horocyclic boundary orbit with the cusp fiber. Forced to
/// -1 by exact agreement of the two `lk_cusp` routes for every `(p, q)`.
pub const HOROCYCLE_CUSP_LINKING: i64 = -1;

/// Orbifold parameters: cone points of orders `p >= 2` and `q >= 3`, one
/// cusp. Any such pair is hyperbolic (`1/p + 1/q < 1` holds automatically).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeParams {
    p: u32,
    q: u32,
}

impl HeckeParams {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 2 || q < 3 {
            return Err(Error::UnsupportedParams(format!(
                "need p >= 2 and q >= 3, got ({p}, {q})"
            )));
        }
        Ok(HeckeParams { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the first homology of the compactified unit tangent
    /// bundle: `r = pq - p - q >= 1`.
    pub fn r(&self) -> u32 {
        self.p * self.q - self.p - self.q
    }
}

/// One step of a code: turn `i` at the order-`p` cone point, then `j` at
/// the order-`q` cone point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(u32, u32)", from = "(u32, u32)")]
pub struct Syllable {
    pub i: u32,
    pub j: u32,
}

impl From<Syllable> for (u32, u32) {
    fn from(s: Syllable) -> Self {
        (s.i, s.j)
    }
}

impl From<(u32, u32)> for Syllable {
    fn from((i, j): (u32, u32)) -> Self {
        Syllable { i, j }
    }
}

/// Cyclic word of syllables coding a periodic geodesic. Stored in
/// canonical form: the lexicographically least rotation, so that equality
/// of values is equality of cyclic words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeckeCode {
    syllables: Vec<Syllable>,
}

impl HeckeCode {
    /// Builds a code from raw `(i, j)` syllables, checking ranges against
    /// the parameters and rotating to canonical form.
    pub fn new(params: HeckeParams, syllables: &[(u32, u32)]) -> Result<Self> {
        if syllables.is_empty() {
            return Err(Error::DegenerateInput("empty code".into()));
        }
        for &(i, j) in syllables {
            if i == 0 || i >= params.p || j == 0 || j >= params.q {
                return Err(Error::DegenerateInput(format!(
                    "syllable ({i}, {j}) out of range for (p, q) = ({}, {})",
                    params.p, params.q
                )));
            }
        }
        let syllables = syllables.iter().map(|&(i, j)| Syllable { i, j }).collect();
        Ok(HeckeCode {
            syllables: least_rotation(syllables),
        })
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// True when the code is one of the two template boundary orbits: all
    /// syllables `(1, 1)`, or all `(p-1, q-1)`. These are horocyclic, not
    /// geodesic, and are rejected by the pairwise linking bound.
    pub fn is_boundary_orbit(&self, params: HeckeParams) -> bool {
        let lo = Syllable { i: 1, j: 1 };
        let hi = Syllable { i: params.p - 1, j: params.q - 1 };
        self.syllables.iter().all(|s| *s == lo) || self.syllables.iter().all(|s| *s == hi)
    }

    /// Syllable-wise mirror `(i, j) -> (p-i, q-j)`; negates the wheel turn.
    pub fn mirror(&self, params: HeckeParams) -> Self {
        let syllables = self
            .syllables
            .iter()
            .map(|s| Syllable { i: params.p - s.i, j: params.q - s.j })
            .collect();
        HeckeCode { syllables: least_rotation(syllables) }
    }

    /// Parses `[[i, j], ...]` or `{"syllables": [[i, j], ...]}`.
    pub fn from_json(params: HeckeParams, s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wrapped {
            syllables: Vec<(u32, u32)>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum CodeJson {
            Bare(Vec<(u32, u32)>),
            Wrapped(Wrapped),
        }
        let parsed: CodeJson = serde_json::from_str(s)
            .map_err(|e| Error::DegenerateInput(format!("bad code JSON: {e}")))?;
        let raw = match parsed {
            CodeJson::Bare(v) => v,
            CodeJson::Wrapped(w) => w.syllables,
        };
        HeckeCode::new(params, &raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&serde_json::json!({ "syllables": self.syllables }))
            .expect("serializable")
    }
}

fn least_rotation(word: Vec<Syllable>) -> Vec<Syllable> {
    let n = word.len();
    let best = (0..n)
        .min_by_key(|&s| {
            let mut key = Vec::with_capacity(n);
            for t in 0..n {
                key.push(word[(s + t) % n]);
            }
            key
        })
        .unwrap_or(0);
    (0..n).map(|t| word[(best + t) % n]).collect()
}

/// Generator of the free product: `U` of order `p`, `V` of order `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gen {
    U,
    V,
}

/// Raw word in the free product, as `(generator, exponent)` letters.
/// Exponents are arbitrary integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeProductWord {
    pub letters: Vec<(Gen, i64)>,
}

impl FreeProductWord {
    /// Parses `{"p": _, "q": _, "letters": [["U", e], ["V", e], ...]}`.
    /// The embedded parameters are returned alongside the word.
    pub fn from_json(s: &str) -> Result<(Self, HeckeParams)> {
        #[derive(Deserialize)]
        struct WordJson {
            p: u32,
            q: u32,
            letters: Vec<(String, i64)>,
        }
        let parsed: WordJson = serde_json::from_str(s)
            .map_err(|e| Error::DegenerateInput(format!("bad word JSON: {e}")))?;
        let params = HeckeParams::new(parsed.p, parsed.q)?;
        let mut letters = Vec::with_capacity(parsed.letters.len());
        for (g, e) in parsed.letters {
            let gen = match g.as_str() {
                "U" | "u" => Gen::U,
                "V" | "v" => Gen::V,
                other => {
                    return Err(Error::DegenerateInput(format!("unknown generator {other:?}")))
                }
            };
            letters.push((gen, e));
        }
        Ok((FreeProductWord { letters }, params))
    }
}

/// Conjugacy class of a word in the free product, as seen by the geodesic
/// flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    /// A genuine periodic geodesic, with its cyclic code.
    Code(HeckeCode),
    /// The trivial element.
    Identity,
    /// A nontrivial torsion element (conjugate of a power of `U` or `V`);
    /// fixes a cone point instead of translating along a geodesic.
    Elliptic,
    /// A parabolic-like template boundary orbit: cyclically all `(1, 1)`
    /// or all `(p-1, q-1)`.
    BoundaryOrbit,
}

/// Cyclic normal form of a word in the free product `Z/p * Z/q`.
///
/// Exponents are reduced modulo the generator orders, trivial letters are
/// deleted, adjacent equal-generator letters are merged (cyclically), and
/// the surviving alternating word is classified.
pub fn normalize(word: &FreeProductWord, params: HeckeParams) -> Normalized {
    use std::collections::VecDeque;

    let order = |g: Gen| match g {
        Gen::U => params.p as i64,
        Gen::V => params.q as i64,
    };

    // linear reduction with a stack
    let mut stack: Vec<(Gen, i64)> = Vec::with_capacity(word.letters.len());
    for &(g, e) in &word.letters {
        let mut g = g;
        let mut e = e.rem_euclid(order(g));
        loop {
            match stack.last() {
                Some(&(top_g, top_e)) if top_g == g => {
                    stack.pop();
                    e = (top_e + e).rem_euclid(order(g));
                }
                _ => {}
            }
            if e == 0 {
                match stack.pop() {
                    Some((pg, pe)) => {
                        g = pg;
                        e = pe;
                    }
                    None => break,
                }
            } else {
                stack.push((g, e));
                break;
            }
        }
    }

    // cyclic reduction: merge matching generators across the seam
    let mut w: VecDeque<(Gen, i64)> = stack.into();
    while w.len() >= 2 {
        let front = *w.front().unwrap();
        let back = *w.back().unwrap();
        if front.0 != back.0 {
            break;
        }
        w.pop_front();
        w.pop_back();
        let e = (front.1 + back.1).rem_euclid(order(front.0));
        if e != 0 {
            w.push_front((front.0, e));
        }
    }

    match w.len() {
        0 => return Normalized::Identity,
        1 => return Normalized::Elliptic,
        _ => {}
    }
    // now strictly alternating and cyclically reduced, hence of even length
    debug_assert!(w.len() % 2 == 0);
    if w.front().unwrap().0 == Gen::V {
        let first = w.pop_front().unwrap();
        w.push_back(first);
    }
    let letters: Vec<(Gen, i64)> = w.into();
    let syllables: Vec<(u32, u32)> = letters
        .chunks(2)
        .map(|pair| (pair[0].1 as u32, pair[1].1 as u32))
        .collect();
    let code = HeckeCode::new(params, &syllables).expect("reduced exponents are in range");
    if code.is_boundary_orbit(params) {
        Normalized::BoundaryOrbit
    } else {
        Normalized::Code(code)
    }
}

/// The wheel turn of a code: `sum_k (i_k - p/2)/p + (j_k - q/2)/q`, exact
/// and invariant under rotation of the cyclic word.
pub fn wheel_turn(code: &HeckeCode, params: HeckeParams) -> Rational {
    let m = code.len() as i64;
    let (mut si, mut sj) = (0i64, 0i64);
    for s in code.syllables() {
        si += s.i as i64;
        sj += s.j as i64;
    }
    rat(si, params.p as i64) + rat(sj, params.q as i64) - rat_int(m)
}

/// Linking number of the coded orbit with the cusp fiber, through the
/// wheel turn: `pq/r * WT`.
pub fn lk_cusp(code: &HeckeCode, params: HeckeParams) -> Rational {
    let pq = params.p as i64 * params.q as i64;
    rat(pq, params.r() as i64) * wheel_turn(code, params)
}

/// Independent homological route to [`lk_cusp`]: the orbit decomposes as
/// `m` copies of the horocyclic orbit plus `sum(i_k - 1)` cone-point
/// fibers linking `q/r` each plus `sum(j_k - 1)` fibers linking `p/r`
/// each. Must agree with [`lk_cusp`] on every input.
pub fn lk_cusp_homology_oracle(code: &HeckeCode, params: HeckeParams) -> Rational {
    let m = code.len() as i64;
    let (mut su, mut sv) = (0i64, 0i64);
    for s in code.syllables() {
        su += s.i as i64 - 1;
        sv += s.j as i64 - 1;
    }
    let r = params.r() as i64;
    rat_int(m * HOROCYCLE_CUSP_LINKING)
        + rat(su * params.q as i64, r)
        + rat(sv * params.p as i64, r)
}

/// Third route for the modular case `(p, q) = (2, 3)`: the linking number
/// with the cusp fiber is the count of `j = 2` syllables minus the count
/// of `j = 1` syllables (a Rademacher-type sum).
pub fn rademacher_oracle(code: &HeckeCode, params: HeckeParams) -> Result<i64> {
    if (params.p, params.q) != (2, 3) {
        return Err(Error::UnsupportedParams(format!(
            "Rademacher oracle needs (p, q) = (2, 3), got ({}, {})",
            params.p, params.q
        )));
    }
    let plus = code.syllables().iter().filter(|s| s.j == 2).count() as i64;
    let minus = code.syllables().iter().filter(|s| s.j == 1).count() as i64;
    Ok(plus - minus)
}

/// Lens-space data of the compactified unit tangent bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensSpace {
    /// Order of the lens space (1 means the 3-sphere).
    pub order: u32,
    /// Twist parameter `p - 1`.
    pub twist: u32,
    /// The cusp fiber sits on a median torus as a torus knot of this type.
    pub cusp_fiber_torus_knot: (u32, u32),
}

/// The compactification is the lens space `L(pq-p-q, p-1)`, with the cusp
/// fiber a `(p, q)`-torus knot.
pub fn lens_space(params: HeckeParams) -> LensSpace {
    LensSpace {
        order: params.r(),
        twist: params.p - 1,
        cusp_fiber_torus_knot: (params.p, params.q),
    }
}

/// Homology classes on the median torus, in the basis of the two
/// cone-point parallels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianTorusClasses {
    /// Class of the cusp fiber: `(1, 1)`.
    pub a_z: LatticeVector,
    /// Class of the meridian disc boundary on the order-`p` side.
    pub d_p: LatticeVector,
    /// Class of the meridian disc boundary on the order-`q` side.
    pub d_q: LatticeVector,
}

/// The three classes `(1,1)`, `(p-1,-1)`, `(-1,q-1)`. The determinant of
/// the two meridians is `pq - p - q` up to sign.
pub fn median_classes(params: HeckeParams) -> MedianTorusClasses {
    MedianTorusClasses {
        a_z: LatticeVector::new(1, 1),
        d_p: LatticeVector::new(params.p as i64 - 1, -1),
        d_q: LatticeVector::new(-1, params.q as i64 - 1),
    }
}

/// Histogram of a `p = 2` code over the `q - 1` template ribbons:
/// `counts[j-1]` is the number of syllables with second entry `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCountVector {
    pub q: u32,
    pub counts: Vec<u64>,
}

pub fn arc_counts(code: &HeckeCode, params: HeckeParams) -> Result<ArcCountVector> {
    if params.p != 2 {
        return Err(Error::UnsupportedParams(format!(
            "arc counts need p = 2, got p = {}",
            params.p
        )));
    }
    let mut counts = vec![0u64; params.q as usize - 1];
    for s in code.syllables() {
        counts[s.j as usize - 1] += 1;
    }
    Ok(ArcCountVector { q: params.q, counts })
}

/// Coefficient matrix `M(q)` of the template upper bound for the linking
/// number of two `p = 2` coded collections: `Lk <= b^T M(q) b'` in the arc
/// counts `b`, `b'`.
///
/// Entry `(i, j)` (1-based, `1 <= i, j <= q-1`) collects the coefficient
/// of `b_i b'_j` in the sum of the two displayed bounds: the crossing
/// bound
///
/// ```text
/// sum_{i<j} (floor((j-i)/2) + 1)(i-1) b_i b'_j
///   + sum_{j<i} (floor((i-j)/2) + 1)(q-1-i) b_i b'_j
/// ```
///
/// and the level bound
///
/// ```text
/// sum_{j<=q/2} (-D + sum_{k<=j} (k-1) b_k) b'_j
///   + sum_{j>q/2} (-D + sum_{k>j} (q-1-k) b_k) b'_j,
///   D = sum_i (i-1)(q-1-i) b_i.
/// ```
///
/// The comparison `j <= q/2` is exact, so for even `q` the value `j = q/2`
/// falls in the first sum. Entries are reported as data: they are not all
/// negative at small `q` (the whole matrix vanishes for `q = 3, 4`), so no
/// sign is asserted here; see the sign-report test and the CLI
/// `bound-matrix` command.
pub fn bound_matrix_p2(q: u32) -> Result<FormMatrix> {
    if q < 3 {
        return Err(Error::UnsupportedParams(format!("need q >= 3, got {q}")));
    }
    let n = (q - 1) as usize;
    let qi = q as i64;
    let mut m = FormMatrix::zeros(n, n);
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            let crossing = if i < j {
                ((j - i) / 2 + 1) * (i - 1)
            } else if i > j {
                ((i - j) / 2 + 1) * (qi - 1 - i)
            } else {
                0
            };
            // level bound: -D contributes -(i-1)(q-1-i) to every column,
            // the partial sums add (i-1) for i <= j <= q/2 and (q-1-i)
            // for q/2 < j < i
            let mut level = -(i - 1) * (qi - 1 - i);
            if 2 * j <= qi {
                if i <= j {
                    level += i - 1;
                }
            } else if i > j {
                level += qi - 1 - i;
            }
            m.set(i as usize - 1, j as usize - 1, rat_int(crossing + level));
        }
    }
    Ok(m)
}

/// Evaluates the `p = 2` linking upper bound `b^T M(q) b'` for two codes.
/// Boundary-orbit codes are rejected: they are not geodesics.
pub fn lk_bound_p2(code1: &HeckeCode, code2: &HeckeCode, params: HeckeParams) -> Result<Rational> {
    if params.p != 2 {
        return Err(Error::UnsupportedParams(format!(
            "pairwise bound needs p = 2, got p = {}",
            params.p
        )));
    }
    if code1.is_boundary_orbit(params) || code2.is_boundary_orbit(params) {
        return Err(Error::DegenerateInput(
            "boundary-orbit code has no geodesic representative".into(),
        ));
    }
    let m = bound_matrix_p2(params.q)?;
    let to_rat = |c: &ArcCountVector| -> Vec<Rational> {
        c.counts.iter().map(|&n| rat_int(n as i64)).collect()
    };
    let b1 = to_rat(&arc_counts(code1, params)?);
    let b2 = to_rat(&arc_counts(code2, params)?);
    crate::exact::bilinear_eval(&m, &b1, &b2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, q: u32) -> HeckeParams {
        HeckeParams::new(p, q).unwrap()
    }

    fn code(p: u32, q: u32, sylls: &[(u32, u32)]) -> HeckeCode {
        HeckeCode::new(params(p, q), sylls).unwrap()
    }

    fn word(letters: &[(Gen, i64)]) -> FreeProductWord {
        FreeProductWord { letters: letters.to_vec() }
    }

    #[test]
    fn normalize_examples() {
        use Gen::{U, V};
        let p23 = params(2, 3);
        let p25 = params(2, 5);
        assert_eq!(
            normalize(&word(&[(U, 1), (V, 2), (U, 1), (V, 3)]), p25),
            Normalized::Code(code(2, 5, &[(1, 2), (1, 3)]))
        );
        assert_eq!(
            normalize(&word(&[(U, 3), (V, 4)]), p23),
            Normalized::BoundaryOrbit
        );
        // at (2, 3) the opposite extreme (p-1, q-1) = (1, 2) is the other
        // boundary orbit, so an all-(1,2) word is not a geodesic either
        assert_eq!(
            normalize(&word(&[(U, 1), (V, 2), (U, 1), (V, 2)]), p23),
            Normalized::BoundaryOrbit
        );
        assert_eq!(
            normalize(&word(&[(U, 1), (V, 2), (U, 1), (V, 1)]), p23),
            Normalized::Code(code(2, 3, &[(1, 2), (1, 1)]))
        );
        assert_eq!(
            normalize(&word(&[(U, 2), (V, 0), (U, 1)]), params(3, 5)),
            Normalized::Identity
        );
        assert_eq!(normalize(&word(&[(U, 2)]), params(3, 5)), Normalized::Elliptic);
        assert_eq!(
            normalize(&word(&[(V, 2), (U, 1), (V, 1)]), p23),
            Normalized::Elliptic,
            "cyclic merge v^2 u v -> v^3 u = u"
        );
    }

    #[test]
    fn normalize_is_conjugation_invariant() {
        use Gen::{U, V};
        let p = params(3, 4);
        let w = word(&[(U, 2), (V, 3), (U, 1), (V, 1)]);
        let base = normalize(&w, p);
        for conj in [vec![(U, 1)], vec![(V, 2)], vec![(U, 2), (V, 1)], vec![(V, 3), (U, 1), (V, 2)]] {
            let mut letters = conj.clone();
            letters.extend(w.letters.iter().copied());
            letters.extend(conj.iter().rev().map(|&(g, e)| (g, -e)));
            assert_eq!(normalize(&word(&letters), p), base);
        }
    }

    #[test]
    fn code_equality_is_cyclic() {
        assert_eq!(
            code(2, 3, &[(1, 2), (1, 1), (1, 2)]),
            code(2, 3, &[(1, 1), (1, 2), (1, 2)])
        );
    }

    #[test]
    fn wheel_turn_examples() {
        assert_eq!(wheel_turn(&code(2, 3, &[(1, 1)]), params(2, 3)), rat(-1, 6));
        assert_eq!(
            wheel_turn(&code(4, 5, &[(1, 1), (3, 4)]), params(4, 5)),
            rat_int(0)
        );
        assert_eq!(
            wheel_turn(&code(2, 3, &[(1, 2), (1, 2), (1, 1)]), params(2, 3)),
            rat(1, 6)
        );
    }

    #[test]
    fn wheel_turn_mirror_negates() {
        let p = params(3, 5);
        let c = code(3, 5, &[(1, 4), (2, 2), (2, 3)]);
        assert_eq!(
            wheel_turn(&c.mirror(p), p),
            -wheel_turn(&c, p)
        );
    }

    #[test]
    fn lk_cusp_examples() {
        assert_eq!(lk_cusp(&code(2, 3, &[(1, 2)]), params(2, 3)), rat_int(1));
        assert_eq!(lk_cusp(&code(3, 4, &[(1, 1)]), params(3, 4)), rat_int(-1));
        assert_eq!(
            lk_cusp(&code(4, 5, &[(1, 1), (3, 4)]), params(4, 5)),
            rat_int(0)
        );
    }

    #[test]
    fn homology_oracle_examples() {
        assert_eq!(
            lk_cusp_homology_oracle(&code(2, 3, &[(1, 2)]), params(2, 3)),
            rat_int(1)
        );
        assert_eq!(
            lk_cusp_homology_oracle(&code(3, 4, &[(1, 1)]), params(3, 4)),
            rat_int(-1)
        );
        assert_eq!(
            lk_cusp_homology_oracle(&code(2, 3, &[(1, 1)]), params(2, 3)),
            rat_int(-1)
        );
    }

    /// With the horocycle constant L, route agreement for the single
    /// syllable (1, 1) at (p, q) = (3, 4) reads L = pq/r * WT = -1, while
    /// -1/r would give -1/5. The constant is forced.
    #[test]
    fn horocycle_constant_is_forced() {
        let p34 = params(3, 4);
        let c = code(3, 4, &[(1, 1)]);
        assert_eq!(lk_cusp(&c, p34), rat_int(-1));
        let r = p34.r() as i64;
        assert_eq!(r, 5);
        assert_ne!(rat(-1, r), rat_int(HOROCYCLE_CUSP_LINKING));
        assert_eq!(lk_cusp(&c, p34), lk_cusp_homology_oracle(&c, p34));
    }

    #[test]
    fn rademacher_examples() {
        let p23 = params(2, 3);
        assert_eq!(rademacher_oracle(&code(2, 3, &[(1, 2)]), p23).unwrap(), 1);
        assert_eq!(
            rademacher_oracle(&code(2, 3, &[(1, 2), (1, 2), (1, 1)]), p23).unwrap(),
            1
        );
        assert_eq!(
            rademacher_oracle(&code(2, 3, &[(1, 1), (1, 2)]), p23).unwrap(),
            0
        );
        assert!(rademacher_oracle(&code(2, 5, &[(1, 1)]), params(2, 5)).is_err());
    }

    #[test]
    fn lens_space_examples() {
        let l = lens_space(params(2, 3));
        assert_eq!((l.order, l.twist), (1, 1)); // the 3-sphere
        assert_eq!(l.cusp_fiber_torus_knot, (2, 3));
        assert_eq!(lens_space(params(2, 7)).order, 5);
        assert_eq!(lens_space(params(2, 7)).twist, 1);
        let l = lens_space(params(3, 4));
        assert_eq!((l.order, l.twist), (5, 2));
    }

    #[test]
    fn median_classes_examples() {
        let m = median_classes(params(2, 3));
        assert_eq!(m.a_z, LatticeVector::new(1, 1));
        assert_eq!(m.d_p, LatticeVector::new(1, -1));
        assert_eq!(m.d_q, LatticeVector::new(-1, 2));

        let m = median_classes(params(3, 4));
        assert_eq!(m.d_p, LatticeVector::new(2, -1));
        assert_eq!(m.d_q, LatticeVector::new(-1, 3));
        assert_eq!(m.d_p.cross(&m.d_q), 5);

        for p in 2..=8 {
            for q in 3..=9 {
                let params = params(p, q);
                let m = median_classes(params);
                assert_eq!(m.d_p.cross(&m.d_q).unsigned_abs() as u32, params.r());
            }
        }
    }

    #[test]
    fn arc_count_examples() {
        let c = code(2, 5, &[(1, 2), (1, 4), (1, 2)]);
        assert_eq!(arc_counts(&c, params(2, 5)).unwrap().counts, vec![0, 2, 0, 1]);
        let c = code(2, 3, &[(1, 1)]);
        assert_eq!(arc_counts(&c, params(2, 3)).unwrap().counts, vec![1, 0]);
        let c = code(2, 4, &[(1, 3), (1, 3)]);
        assert_eq!(arc_counts(&c, params(2, 4)).unwrap().counts, vec![0, 0, 2]);
        assert!(arc_counts(&code(3, 4, &[(1, 1)]), params(3, 4)).is_err());
    }

    #[test]
    fn bound_matrix_shape_and_spot_values() {
        let m = bound_matrix_p2(5).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        // crossing-bound coefficient alone at q=6, (i,j)=(2,5): 2
        let q6 = bound_matrix_p2(6).unwrap();
        let level_part = -(2 - 1) * (6 - 1 - 2); // -D coefficient, j=5 > q/2, i < j adds nothing
        assert_eq!(*q6.get(1, 4), rat_int(2 + level_part));
    }

    #[test]
    fn lk_bound_rejects_boundary_orbits() {
        let p25 = params(2, 5);
        let good = code(2, 5, &[(1, 2), (1, 3)]);
        let horo = code(2, 5, &[(1, 1), (1, 1)]);
        assert!(lk_bound_p2(&good, &horo, p25).is_err());
        assert!(lk_bound_p2(&good, &good, p25).is_ok());
        assert!(lk_bound_p2(&good, &good, params(3, 5)).is_err());
    }

    #[test]
    fn lk_bound_is_bilinear_transpose() {
        let p27 = params(2, 7);
        let c1 = code(2, 7, &[(1, 2), (1, 5), (1, 3)]);
        let c2 = code(2, 7, &[(1, 4), (1, 6)]);
        let m = bound_matrix_p2(7).unwrap();
        let b1: Vec<Rational> = arc_counts(&c1, p27).unwrap().counts.iter().map(|&n| rat_int(n as i64)).collect();
        let b2: Vec<Rational> = arc_counts(&c2, p27).unwrap().counts.iter().map(|&n| rat_int(n as i64)).collect();
        let forward = lk_bound_p2(&c1, &c2, p27).unwrap();
        // against the transpose: swap the argument order
        let mut mt = FormMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                mt.set(i, j, m.get(j, i).clone());
            }
        }
        assert_eq!(forward, crate::exact::bilinear_eval(&mt, &b2, &b1).unwrap());
    }

    #[test]
    fn code_json_round_trip() {
        let p23 = params(2, 3);
        let c = code(2, 3, &[(1, 2), (1, 1)]);
        assert_eq!(HeckeCode::from_json(p23, &c.to_json()).unwrap(), c);
        assert_eq!(HeckeCode::from_json(p23, "[[1,2]]").unwrap(), code(2, 3, &[(1, 2)]));
        assert!(HeckeCode::from_json(p23, "[[1,3]]").is_err());
    }
}
