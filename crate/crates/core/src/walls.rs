//! Wall geometry in the `(b, c)` half plane.
//!
//! Two classes `v`, `w` share a phase exactly on the locus where their
//! central charges are aligned over the reals. Clearing denominators, that
//! locus is the zero set of
//!
//! ```text
//! H2 * g * (b^2 + c^2) - H2 * m * b + a = 0
//! ```
//!
//! with the three pairing minors of the slices (in doubled form)
//!
//! ```text
//! a = s2_w * d_v - s2_v * d_w
//! m = s2_w * r_v - s2_v * r_w
//! g = d_w  * r_v - d_v  * r_w
//! ```
//!
//! Depending on which minors vanish this is a semicircle centred on the
//! `b`-axis, a vertical line, the empty set, or the whole plane (exactly
//! when `(s2, d, r)` of `v` and `w` are proportional over the rationals).
//!
//! Against the shifted tangent slice `(-2, K.H, -tau)` the family of
//! semicircular walls has a rigid structure:
//!
//! * the wall of the structure sheaf is the circle with centre
//!   `-tau / (2 K.H)` and radius `tau / (2 K.H)`;
//! * every wall top lies on the hyperbola
//!   `(b + K.H / (2 H2))^2 - c^2 = delta_H / (2 H2)^2`, where `delta_H` is
//!   the polarised discriminant of the shifted tangent slice;
//! * distinct walls never cross: they are nested (same branch) or exterior
//!   disjoint (opposite branches).
//!
//! [`classify_pair`] decides the nesting relations exactly via the
//! rationalised tangency test (no square roots), and the region predicates
//! at the end cut out the strip between the vertical wall and the `c`-axis
//! and the computable inner part of the unstable region below the circle of
//! the shifted tangent object.

use crate::charge::{ChernSlice, PolarizationSlice, StabilityPoint};
use crate::ratio::{rat_to_json, Int, Rat};
use crate::surface::SurfaceNumerics;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;

/// Errors from wall-geometry computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    /// An operation defined only for semicircular walls received another
    /// kind.
    #[error("operation requires a semicircular wall, got {kind:?}")]
    NotSemicircle {
        /// Kind of the offending wall.
        kind: WallKind,
    },
    /// Point queries are undefined for the empty wall.
    #[error("point position is undefined for an empty wall")]
    EmptyWall,
    /// Point queries are undefined for the everywhere-degenerate wall.
    #[error("point position is undefined for an everywhere wall")]
    EverywhereWall,
    /// The hyperbola of tops requires a positive polarised discriminant.
    #[error("polarised discriminant {value} of the shifted tangent slice is not positive")]
    NonpositiveDiscriminant {
        /// The offending discriminant.
        value: Int,
    },
    /// The region below the tangent circle requires a positive index.
    #[error("surface index tau = {tau} is not positive")]
    NonpositiveIndex {
        /// The offending index.
        tau: Int,
    },
}

/// Kind tag of a [`WallShape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    /// No real solutions.
    Empty,
    /// A vertical line `b = b0`.
    Vertical,
    /// A semicircle centred on the `b`-axis.
    Semicircle,
    /// The whole half plane (proportional classes).
    Everywhere,
}

/// The solution locus of the wall equation for one pair of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallShape {
    /// No real solutions with `c > 0`.
    Empty,
    /// The vertical line `b = b0`.
    Vertical {
        /// Horizontal position of the line.
        b0: Rat,
    },
    /// The semicircle `(b - center)^2 + c^2 = radius_sq` with
    /// `radius_sq > 0`.
    Semicircle {
        /// Centre on the `b`-axis.
        center: Rat,
        /// Squared radius, strictly positive.
        radius_sq: Rat,
    },
    /// Every point: the two classes are proportional.
    Everywhere,
}

impl WallShape {
    /// Kind tag of this wall.
    pub fn kind(&self) -> WallKind {
        match self {
            WallShape::Empty => WallKind::Empty,
            WallShape::Vertical { .. } => WallKind::Vertical,
            WallShape::Semicircle { .. } => WallKind::Semicircle,
            WallShape::Everywhere => WallKind::Everywhere,
        }
    }

    /// Tagged JSON form, e.g.
    /// `{"kind":"semicircle","center":"-9/70","radius_sq":"81/4900"}`.
    pub fn to_json(&self) -> Value {
        match self {
            WallShape::Empty => json!({"kind": "empty"}),
            WallShape::Vertical { b0 } => json!({"kind": "vertical", "b0": rat_to_json(b0)}),
            WallShape::Semicircle { center, radius_sq } => json!({
                "kind": "semicircle",
                "center": rat_to_json(center),
                "radius_sq": rat_to_json(radius_sq),
            }),
            WallShape::Everywhere => json!({"kind": "everywhere"}),
        }
    }
}

/// The hyperbola `(b + kappa)^2 - c^2 = rhs` carrying every semicircular
/// wall top of the shifted tangent object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperbola {
    /// Horizontal shift `K.H / (2 H2)`; the centre of the hyperbola is
    /// `b = -kappa`, the position of the vertical wall.
    pub kappa: Rat,
    /// Right-hand side `delta_H / (2 H2)^2`, positive.
    pub rhs: Rat,
}

/// Parameters for the computable inner part of the unstable region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionParams {
    /// Dimension (at least 1) of the chosen subspace of first-order
    /// deformations driving the lower bound `-1 / (H2 * dimV)`.
    pub dim_v: Int,
}

impl RegionParams {
    /// Builds region parameters; `dim_v` must be at least 1.
    pub fn new(dim_v: i64) -> Option<Self> {
        (dim_v >= 1).then(|| Self {
            dim_v: Int::from(dim_v),
        })
    }
}

/// The wall between two classes: the locus where their central charges are
/// aligned, classified into the four shapes.
///
/// Returns [`WallShape::Everywhere`] exactly when the `(s2, d, r)` vectors
/// of `v` and `w` are proportional over the rationals (all three pairing
/// minors vanish); [`WallShape::Vertical`] when only the `(d, r)` minor
/// vanishes; otherwise the completed square yields a semicircle when the
/// squared radius is positive and the empty wall when it is not.
pub fn wall_between(v: &ChernSlice, w: &ChernSlice, pol: &PolarizationSlice) -> WallShape {
    let a = &w.s2 * &v.d - &v.s2 * &w.d;
    let m = &w.s2 * &v.r - &v.s2 * &w.r;
    let g = &w.d * &v.r - &v.d * &w.r;
    let h2 = pol.h2();
    if g.is_zero() {
        if m.is_zero() {
            return if a.is_zero() {
                WallShape::Everywhere
            } else {
                WallShape::Empty
            };
        }
        // H2*m*b = a.
        return WallShape::Vertical {
            b0: Rat::new(a, h2 * m),
        };
    }
    // (b - m/(2g))^2 + c^2 = (m/(2g))^2 - a/(H2*g).
    let center = Rat::new(m, &g * 2);
    let radius_sq = &(&center * &center) - &Rat::new(a, h2 * &g);
    if radius_sq.is_positive() {
        WallShape::Semicircle { center, radius_sq }
    } else {
        WallShape::Empty
    }
}

/// Position `-K.H / (2 H2)` of the vertical wall. Always negative.
pub fn vertical_wall(pol: &PolarizationSlice) -> Rat {
    Rat::new(-pol.kh().clone(), pol.h2() * 2)
}

/// Closed form of the wall between the structure sheaf and the shifted
/// tangent object: the circle with centre `-tau / (2 K.H)` and radius
/// `tau / (2 K.H)` when the index is positive, empty otherwise.
///
/// [`wall_between`] on the same pair always agrees with this; the closed
/// form exists so the two derivations can be checked against each other.
pub fn theta_circle(s: &SurfaceNumerics, pol: &PolarizationSlice) -> WallShape {
    if !s.tau.is_positive() {
        return WallShape::Empty;
    }
    let radius = Rat::new(s.tau.clone(), pol.kh() * 2);
    WallShape::Semicircle {
        center: -radius.clone(),
        radius_sq: &radius * &radius,
    }
}

/// The hyperbola of wall tops for the shifted tangent slice:
/// `kappa = K.H / (2 H2)` and `rhs = delta_H / (2 H2)^2` with
/// `delta_H = (K.H)^2 - 2 H2 tau`. Fails when `delta_H <= 0`.
pub fn hyperbola_of_tops(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
) -> Result<Hyperbola, WallError> {
    let delta_h: Int = pol.kh() * pol.kh() - pol.h2() * 2 * &s.tau;
    if !delta_h.is_positive() {
        return Err(WallError::NonpositiveDiscriminant { value: delta_h });
    }
    let two_h2: Int = pol.h2() * 2;
    Ok(Hyperbola {
        kappa: Rat::new(pol.kh().clone(), two_h2.clone()),
        rhs: Rat::new(delta_h, &two_h2 * &two_h2),
    })
}

/// Exact test that the top `(center, radius)` of a semicircular wall lies
/// on the hyperbola: `(center + kappa)^2 - radius_sq == rhs`.
pub fn top_on_hyperbola(wall: &WallShape, hyp: &Hyperbola) -> Result<bool, WallError> {
    match wall {
        WallShape::Semicircle { center, radius_sq } => {
            let shifted = center + &hyp.kappa;
            Ok(&(&shifted * &shifted) - radius_sq == hyp.rhs)
        }
        other => Err(WallError::NotSemicircle { kind: other.kind() }),
    }
}

/// Relation between two walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairClass {
    /// Same centre and radius.
    Identical,
    /// One circle strictly contains the other; `inner` is 1 or 2.
    Nested {
        /// Which argument is the inner circle (1-based).
        inner: u8,
    },
    /// Disjoint circles, neither containing the other.
    ExteriorDisjoint,
    /// The circles meet (tangency included).
    Intersecting,
    /// At least one wall is not a semicircle; the kinds are reported.
    MixedKinds {
        /// Kind of the first wall.
        first: WallKind,
        /// Kind of the second wall.
        second: WallKind,
    },
}

/// Classifies the relative position of two semicircular walls exactly.
///
/// With `dist_sq = (center1 - center2)^2`, `S = dist_sq - r1sq - r2sq` and
/// `T = 4 * r1sq * r2sq`, the circles meet iff `S^2 <= T` (the rationalised
/// form of `|r1 - r2| <= dist <= r1 + r2`); otherwise they are nested iff
/// `S < 0`, exterior disjoint iff `S > 0`. Identity is checked first; any
/// non-semicircle input is reported as [`PairClass::MixedKinds`].
pub fn classify_pair(w1: &WallShape, w2: &WallShape) -> PairClass {
    let (c1, r1sq, c2, r2sq) = match (w1, w2) {
        (
            WallShape::Semicircle {
                center: c1,
                radius_sq: r1,
            },
            WallShape::Semicircle {
                center: c2,
                radius_sq: r2,
            },
        ) => (c1, r1, c2, r2),
        _ => {
            return PairClass::MixedKinds {
                first: w1.kind(),
                second: w2.kind(),
            }
        }
    };
    if c1 == c2 && r1sq == r2sq {
        return PairClass::Identical;
    }
    let diff = c1 - c2;
    let dist_sq = &diff * &diff;
    let s = &(&dist_sq - r1sq) - r2sq;
    let t = (r1sq * r2sq) * Rat::from_integer(Int::from(4));
    if &s * &s <= t {
        return PairClass::Intersecting;
    }
    if s.is_negative() {
        PairClass::Nested {
            inner: if r1sq < r2sq { 1 } else { 2 },
        }
    } else {
        PairClass::ExteriorDisjoint
    }
}

/// Position of a stability point relative to a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointPosition {
    /// Strictly inside the circle, or strictly left of a vertical wall.
    Inside,
    /// Exactly on the wall.
    On,
    /// Strictly outside the circle, or strictly right of a vertical wall.
    Outside,
}

/// Locates a point relative to a semicircular or vertical wall.
///
/// For a semicircle the comparison is `(b - center)^2 + c^2` against
/// `radius_sq`. For a vertical wall, `Inside`/`On`/`Outside` mean left
/// of/on/right of the line (see also [`vertical_side`] for the same datum as
/// a sign). Empty and everywhere walls have no meaningful answer and are
/// rejected.
pub fn point_position(wall: &WallShape, p: &StabilityPoint) -> Result<PointPosition, WallError> {
    match wall {
        WallShape::Semicircle { center, radius_sq } => {
            let db = p.b() - center;
            let lhs = &(&db * &db) + &(p.c() * p.c());
            Ok(match lhs.cmp(radius_sq) {
                Ordering::Less => PointPosition::Inside,
                Ordering::Equal => PointPosition::On,
                Ordering::Greater => PointPosition::Outside,
            })
        }
        WallShape::Vertical { b0 } => Ok(match p.b().cmp(b0) {
            Ordering::Less => PointPosition::Inside,
            Ordering::Equal => PointPosition::On,
            Ordering::Greater => PointPosition::Outside,
        }),
        WallShape::Empty => Err(WallError::EmptyWall),
        WallShape::Everywhere => Err(WallError::EverywhereWall),
    }
}

/// Side of a vertical wall: the sign of `b - b0` (`-1` left, `0` on,
/// `+1` right). Rejects every other wall kind.
pub fn vertical_side(wall: &WallShape, p: &StabilityPoint) -> Result<i32, WallError> {
    match wall {
        WallShape::Vertical { b0 } => Ok(match p.b().cmp(b0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }),
        other => Err(WallError::NotSemicircle { kind: other.kind() }),
    }
}

/// Open strip between the vertical wall and the `c`-axis:
/// `-K.H / (2 H2) < b < 0`, both bounds strict.
pub fn in_strip(pol: &PolarizationSlice, p: &StabilityPoint) -> bool {
    &vertical_wall(pol) < p.b() && p.b().is_negative()
}

/// Computable inner part of the unstable region below the circle of the
/// shifted tangent object: strictly inside that circle, strictly left of
/// the `c`-axis, and strictly right of both `-tau / K.H` and
/// `-1 / (H2 * dimV)`.
///
/// The true region extends further left (its boundary involves a threshold
/// not computable from Chern data alone); this predicate is the sound,
/// conservative approximation using the computable lower bound. Requires a
/// positive index.
pub fn in_bun_region(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    rp: &RegionParams,
    p: &StabilityPoint,
) -> Result<bool, WallError> {
    if !s.tau.is_positive() {
        return Err(WallError::NonpositiveIndex { tau: s.tau.clone() });
    }
    if !p.b().is_negative() {
        return Ok(false);
    }
    let circle = theta_circle(s, pol);
    if point_position(&circle, p)? != PointPosition::Inside {
        return Ok(false);
    }
    let lower_slope = Rat::new(-s.tau.clone(), pol.kh().clone());
    let lower_dim = Rat::new(Int::from(-1), pol.h2() * &rp.dim_v);
    let lower = lower_slope.max(lower_dim);
    Ok(p.b() > &lower)
}
