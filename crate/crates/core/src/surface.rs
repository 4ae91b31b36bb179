//! Numerical invariants and Chern-number geography of a minimal surface of
//! general type.
//!
//! A surface enters this crate only through the pair of Chern numbers
//! `(c2, K2)` — the topological Euler number and the self-intersection of the
//! canonical class. From these the module derives:
//!
//! * `chi`   — the holomorphic Euler characteristic, via `12*chi = c2 + K2`;
//!   pairs where the right-hand side is not divisible by 12 cannot occur and
//!   are rejected.
//! * `tau`   — the signature-flavoured index `K2 - 2*c2`; the stability
//!   picture is richest when `tau > 0`.
//! * `alpha` — the Chern ratio `c2 / K2` as an exact rational.
//! * `q`     — the defect `3*c2 - K2`, i.e. the distance to the
//!   Bogomolov–Miyaoka–Yau line; `q = 4*(c2 - 3*chi)` so it is always a
//!   multiple of four.
//!
//! The geography check records which of the classical constraints on
//! `(c2, K2)` fail — positivity of both numbers, the Noether-side lower bound
//! `5*K2 >= c2 - 36`, and the Bogomolov–Miyaoka–Yau bound `K2 <= 3*c2` — and
//! raises flags for the strict-positivity of the index, for the sharper
//! ratio bound `alpha < 3/8`, for equality on the BMY line, and for the
//! narrow-defect condition `q > 0` with `4*q^2 < K2` that unlocks the
//! fibration analysis in [`crate::enumerate`].

use crate::ratio::{int_to_json, Int, Rat};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

/// Errors from constructing surface invariants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    /// The pair `(c2, K2)` cannot arise from a minimal surface of general
    /// type for an arithmetic reason, e.g. `c2 + K2` not divisible by 12 or
    /// a non-positive Chern number.
    #[error("pair (c2={c2}, K2={k2}) is not admissible: {reason}")]
    NotAdmissible {
        /// Euler number of the offending pair.
        c2: Int,
        /// Canonical self-intersection of the offending pair.
        k2: Int,
        /// What failed.
        reason: String,
    },
}

/// Derived numerical invariants of a surface with Chern numbers `(c2, K2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceNumerics {
    /// Second Chern number (topological Euler number), `>= 1`.
    pub c2: Int,
    /// Self-intersection of the canonical class, `>= 1`.
    pub k2: Int,
    /// Holomorphic Euler characteristic, `chi = (c2 + K2) / 12`.
    pub chi: Int,
    /// Index-style invariant `tau = K2 - 2*c2`.
    pub tau: Int,
    /// Chern ratio `alpha = c2 / K2` as an exact rational.
    pub alpha: Rat,
    /// Defect from the BMY line, `q = 3*c2 - K2`.
    pub q: Int,
}

/// Boolean markers attached to a geography report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GeographyFlags {
    /// `tau > 0`, equivalently `alpha < 1/2`.
    pub positive_index: bool,
    /// `alpha < 3/8`, the threshold used by the quotient sieve.
    pub alpha_lt_3_8: bool,
    /// The pair sits exactly on the BMY line `K2 = 3*c2` (so `q = 0`).
    pub bmy_boundary: bool,
    /// `q > 0` and `4*q^2 < K2`: the defect is small compared to `K2`,
    /// which activates the fibration analysis.
    pub qbound: bool,
}

/// Outcome of the geography check for one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeographyReport {
    /// True when no constraint in `violated` fails.
    pub admissible: bool,
    /// Stable identifiers of the constraints that fail, in a fixed order.
    pub violated: Vec<&'static str>,
    /// Markers that do not affect admissibility.
    pub flags: GeographyFlags,
}

/// Identifier for a failing `c2 >= 1`.
pub const VIOLATION_C2_POSITIVE: &str = "c2-at-least-1";
/// Identifier for a failing `K2 >= 1`.
pub const VIOLATION_K2_POSITIVE: &str = "k2-at-least-1";
/// Identifier for a failing Noether-side bound `5*K2 >= c2 - 36`.
pub const VIOLATION_NOETHER: &str = "noether-line";
/// Identifier for a failing BMY bound `K2 <= 3*c2`.
pub const VIOLATION_BMY: &str = "bmy-line";

/// Derives the numerical invariants of the surface with Chern numbers
/// `(c2, K2)`.
///
/// Fails with [`SurfaceError::NotAdmissible`] when either number is
/// non-positive or when `c2 + K2` is not divisible by 12 (no such surface
/// exists, since `12*chi = c2 + K2` must have an integer solution).
pub fn derive_surface(c2: &Int, k2: &Int) -> Result<SurfaceNumerics, SurfaceError> {
    let fail = |reason: &str| SurfaceError::NotAdmissible {
        c2: c2.clone(),
        k2: k2.clone(),
        reason: reason.to_string(),
    };
    if !c2.is_positive() {
        return Err(fail("c2 must be at least 1"));
    }
    if !k2.is_positive() {
        return Err(fail("K2 must be at least 1"));
    }
    let sum = c2 + k2;
    let twelve = Int::from(12);
    if (&sum % &twelve) != Int::zero() {
        return Err(fail("c2 + K2 must be divisible by 12"));
    }
    Ok(SurfaceNumerics {
        c2: c2.clone(),
        k2: k2.clone(),
        chi: sum / twelve,
        tau: k2 - c2 * 2,
        alpha: Rat::new(c2.clone(), k2.clone()),
        q: c2 * 3 - k2,
    })
}

/// Evaluates the geography constraints and flags for one surface.
///
/// The `violated` list uses the `VIOLATION_*` identifiers in declaration
/// order; `admissible` is true exactly when the list is empty. The flags are
/// informational and never affect admissibility.
pub fn check_geography(s: &SurfaceNumerics) -> GeographyReport {
    let mut violated = Vec::new();
    if !s.c2.is_positive() {
        violated.push(VIOLATION_C2_POSITIVE);
    }
    if !s.k2.is_positive() {
        violated.push(VIOLATION_K2_POSITIVE);
    }
    if &s.k2 * 5 < &s.c2 - Int::from(36) {
        violated.push(VIOLATION_NOETHER);
    }
    if s.k2 > &s.c2 * 3 {
        violated.push(VIOLATION_BMY);
    }
    let flags = GeographyFlags {
        positive_index: s.tau.is_positive(),
        // alpha < 3/8  <=>  8*c2 < 3*K2 (both sides positive by construction).
        alpha_lt_3_8: &s.c2 * 8 < &s.k2 * 3,
        bmy_boundary: s.q.is_zero(),
        qbound: s.q.is_positive() && &s.q * &s.q * 4 < s.k2,
    };
    GeographyReport {
        admissible: violated.is_empty(),
        violated,
        flags,
    }
}

/// Scans every pair `(c2, K2)` with `1 <= c2 <= c2_max`, `1 <= K2 <= 3*c2`
/// and `12 | (c2 + K2)` — the box containing all potentially admissible
/// pairs — and reports each with its geography check.
///
/// Pairs are produced in lexicographic order on `(c2, K2)`. A non-positive
/// `c2_max` yields an empty list.
pub fn scan_geography(c2_max: i64) -> Vec<(SurfaceNumerics, GeographyReport)> {
    let mut out = Vec::new();
    for c2 in 1..=c2_max.max(0) {
        for k2 in 1..=3 * c2 {
            if (c2 + k2) % 12 != 0 {
                continue;
            }
            let s = derive_surface(&Int::from(c2), &Int::from(k2))
                .expect("scan box only contains constructible pairs");
            let report = check_geography(&s);
            out.push((s, report));
        }
    }
    out
}

impl SurfaceNumerics {
    /// JSON form with stable field names: `c2`, `K2`, `chi`, `tau`,
    /// `alpha_num`, `alpha_den`, `q`.
    pub fn to_json(&self) -> Value {
        json!({
            "c2": int_to_json(&self.c2),
            "K2": int_to_json(&self.k2),
            "chi": int_to_json(&self.chi),
            "tau": int_to_json(&self.tau),
            "alpha_num": int_to_json(self.alpha.numer()),
            "alpha_den": int_to_json(self.alpha.denom()),
            "q": int_to_json(&self.q),
        })
    }
}

impl GeographyReport {
    /// JSON form with stable field names: `admissible`, `violated`, `flags`.
    pub fn to_json(&self) -> Value {
        json!({
            "admissible": self.admissible,
            "violated": self.violated,
            "flags": {
                "positive_index": self.flags.positive_index,
                "alpha_lt_3_8": self.flags.alpha_lt_3_8,
                "bmy_boundary": self.flags.bmy_boundary,
                "qbound": self.flags.qbound,
            },
        })
    }
}

/// Convenience used throughout the tests and CLI: derive and check in one
/// step from machine integers.
pub fn surface_from_i64(c2: i64, k2: i64) -> Result<SurfaceNumerics, SurfaceError> {
    derive_surface(&Int::from(c2), &Int::from(k2))
}
