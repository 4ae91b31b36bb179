//! Candidate enumeration and arithmetic filters.
//!
//! Three independent computations live here:
//!
//! * [`enumerate_wall_candidates`] lists every integral slice whose wall
//!   against the shifted tangent object crosses a chosen vertical line
//!   `b = beta0` inside the strip at height at most `cmax`, with centre to
//!   the right of the vertical wall and bounded rank. The search space per
//!   rank/degree cell is an exact rational interval in `s2`, so the
//!   enumeration is complete by construction; every emitted slice is
//!   re-checked against the direct wall predicate. A cell budget guards
//!   against runaway parameter choices.
//! * [`filter_quotient_candidate`] runs the exact arithmetic tests that a
//!   quotient of the shifted tangent object with the given full Chern data
//!   would have to pass; the verdict lists every violated test rather than
//!   stopping at the first.
//! * [`tilde_bound_check`] and [`fibration_options`] decide the small
//!   auxiliary bounds driven by the excess `q = 3 c2 - K2`.
//!
//! All arithmetic is exact; inequalities are evaluated over the rationals
//! with no rounding anywhere.
//!
//! # Stable violation identifiers
//!
//! [`filter_quotient_candidate`] reports failed tests under these fixed
//! strings (see its documentation for the inequalities):
//! `degree-positive`, `rank-at-least-2`, `degree-cap`, `tau-ch2-bound`,
//! `tau-rank-bound`, `rank-2-or-3`, `c1sq-positive`, `tau-triple-bound`,
//! `hodge-index`.

use crate::budget;
use crate::charge::{theta_shift_slice, ChernSlice, FullChern, PolarizationSlice};
use crate::ratio::{Int, Rat};
use crate::surface::{check_geography, SurfaceNumerics};
use crate::walls::{vertical_wall, wall_between, WallShape};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Errors from enumeration and filtering.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    /// An argument violated a documented precondition.
    #[error("precondition violated: {reason}")]
    PreconditionViolated {
        /// What was violated.
        reason: String,
    },
    /// The exact search region holds more cells than the configured budget.
    #[error("enumeration region holds {cells} candidates, over the budget of {cap}")]
    PrecisionBudgetExceeded {
        /// Number of integer points the region holds.
        cells: u128,
        /// Configured cap.
        cap: u64,
    },
    /// The surface does not satisfy the entry gate of the filter.
    #[error("filter gate not met: {reason}")]
    GateNotMet {
        /// Which gate condition failed.
        reason: String,
    },
    /// A rank outside the supported set was supplied.
    #[error("unsupported rank {rank}; expected 0 or 1")]
    BadRank {
        /// The offending rank.
        rank: i64,
    },
    /// The surface does not satisfy the positivity bound the operation
    /// needs.
    #[error("not applicable: {reason}")]
    NotApplicable {
        /// Why the operation does not apply.
        reason: String,
    },
}

/// Tests whether one slice is a wall candidate at the line `b = beta0`:
/// its wall against the shifted tangent object is a semicircle with centre
/// strictly right of the vertical wall, it crosses the line strictly, the
/// crossing height is at most `cmax`, and the imaginary parts at the line
/// satisfy `0 < im(v) < im(shifted tangent)`.
///
/// This is the direct form of the predicate that
/// [`enumerate_wall_candidates`] solves exactly; it is exposed so callers
/// can cross-check individual slices.
pub fn is_wall_candidate(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    beta0: &Rat,
    cmax: &Rat,
    v: &ChernSlice,
) -> bool {
    let theta = theta_shift_slice(s, pol);
    // Imaginary-part window at b = beta0 (common positive factor c dropped):
    // 0 < d - r*H2*beta0 < KH + 2*H2*beta0.
    let im_v = Rat::from_integer(v.d.clone()) - beta0 * Rat::from_integer(pol.h2() * &v.r);
    let im_w = Rat::from_integer(pol.kh().clone()) + beta0 * Rat::from_integer(pol.h2() * 2);
    if !(im_v.is_positive() && im_v < im_w) {
        return false;
    }
    let (center, radius_sq) = match wall_between(v, &theta, pol) {
        WallShape::Semicircle { center, radius_sq } => (center, radius_sq),
        _ => return false,
    };
    if center <= vertical_wall(pol) {
        return false;
    }
    let db = beta0 - &center;
    let height_sq = &radius_sq - &(&db * &db);
    height_sq.is_positive() && height_sq <= cmax * cmax
}

/// Enumerates every wall candidate at `b = beta0` with `|r| <= rmax`,
/// sorted by `(r, d, s2)`.
///
/// Preconditions: `beta0` strictly inside the strip, `cmax > 0`,
/// `rmax >= 1`. The region is cut per `(r, d)` cell into an exact rational
/// interval for `s2`; the total number of integer points is counted before
/// anything is materialised and checked against the candidate budget (see
/// [`crate::budget`]).
pub fn enumerate_wall_candidates(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    beta0: &Rat,
    cmax: &Rat,
    rmax: i64,
) -> Result<Vec<ChernSlice>, EnumerateError> {
    enumerate_wall_candidates_with_cap(s, pol, beta0, cmax, rmax, budget::cell_cap())
}

/// Exact inclusive `s2` bounds of one `(r, d)` cell of the enumeration
/// region; the audit record behind [`enumerate_wall_candidates`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellBounds {
    /// Rank of every slice in the cell.
    pub r: Int,
    /// Degree of every slice in the cell.
    pub d: Int,
    /// Smallest admissible doubled character.
    pub s2_min: Int,
    /// Largest admissible doubled character.
    pub s2_max: Int,
}

impl CellBounds {
    /// JSON form `{"r":...,"d":...,"s2_min":...,"s2_max":...}`.
    pub fn to_json(&self) -> Value {
        json!({
            "r": crate::ratio::int_to_json(&self.r),
            "d": crate::ratio::int_to_json(&self.d),
            "s2_min": crate::ratio::int_to_json(&self.s2_min),
            "s2_max": crate::ratio::int_to_json(&self.s2_max),
        })
    }
}

/// Audit report: the exact rational-interval bounds, one record per
/// nonempty `(r, d)` cell, that [`enumerate_wall_candidates`] expands.
/// Same preconditions; never subject to the candidate budget.
pub fn enumerate_cell_report(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    beta0: &Rat,
    cmax: &Rat,
    rmax: i64,
) -> Result<Vec<CellBounds>, EnumerateError> {
    derive_cells(s, pol, beta0, cmax, rmax)
}

/// [`enumerate_wall_candidates`] with an explicit candidate budget instead
/// of the process-wide configured one.
pub fn enumerate_wall_candidates_with_cap(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    beta0: &Rat,
    cmax: &Rat,
    rmax: i64,
    cap: u64,
) -> Result<Vec<ChernSlice>, EnumerateError> {
    let cells = derive_cells(s, pol, beta0, cmax, rmax)?;
    let mut total = Int::zero();
    for cell in &cells {
        total += &cell.s2_max - &cell.s2_min + 1;
    }
    if total > Int::from(cap) {
        return Err(EnumerateError::PrecisionBudgetExceeded {
            cells: total.to_u128().unwrap_or(u128::MAX),
            cap,
        });
    }

    // Expand cells in parallel; the indexed map keeps (r, d, s2) order.
    // Every condition is linear in s2, so the feasible set of a cell is an
    // interval: checking the two endpoints against the direct predicate
    // certifies every point in between without a per-candidate recheck.
    let expanded: Vec<Vec<ChernSlice>> = cells
        .par_iter()
        .map(|cell| {
            let CellBounds { r, d, s2_min, s2_max } = cell;
            for endpoint in [s2_min, s2_max] {
                let v = ChernSlice {
                    r: r.clone(),
                    d: d.clone(),
                    s2: endpoint.clone(),
                };
                assert!(
                    is_wall_candidate(s, pol, beta0, cmax, &v),
                    "interval endpoint ({r}, {d}, {endpoint}) fails the direct predicate"
                );
            }
            let mut out = Vec::with_capacity((s2_max - s2_min).to_usize().unwrap_or(0) + 1);
            let mut s2 = s2_min.clone();
            while &s2 <= s2_max {
                out.push(ChernSlice {
                    r: r.clone(),
                    d: d.clone(),
                    s2: s2.clone(),
                });
                s2 += 1;
            }
            out
        })
        .collect();
    let out: Vec<ChernSlice> = expanded.into_iter().flatten().collect();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Cuts the search region into exact `(r, d)` cells with inclusive `s2`
/// bounds. Checks all preconditions.
fn derive_cells(
    s: &SurfaceNumerics,
    pol: &PolarizationSlice,
    beta0: &Rat,
    cmax: &Rat,
    rmax: i64,
) -> Result<Vec<CellBounds>, EnumerateError> {
    if !(vertical_wall(pol) < *beta0 && beta0.is_negative()) {
        return Err(EnumerateError::PreconditionViolated {
            reason: format!(
                "beta0 = {} must lie strictly between the vertical wall {} and 0",
                beta0,
                vertical_wall(pol)
            ),
        });
    }
    if !cmax.is_positive() {
        return Err(EnumerateError::PreconditionViolated {
            reason: format!("cmax = {cmax} must be positive"),
        });
    }
    if rmax < 1 {
        return Err(EnumerateError::PreconditionViolated {
            reason: format!("rmax = {rmax} must be at least 1"),
        });
    }

    let h2 = Rat::from_integer(pol.h2().clone());
    let tau = Rat::from_integer(s.tau.clone());
    // Width of the imaginary-part window: KH + 2*H2*beta0 > 0 in the strip.
    let width = Rat::from_integer(pol.kh().clone()) + beta0 * &h2 * Rat::from_integer(Int::from(2));
    let beta_sq = beta0 * beta0;
    let cmax_sq = cmax * cmax;

    // One cell per (r, d): the exact inclusive s2 range.
    let mut cells: Vec<CellBounds> = Vec::new();
    for r in -rmax..=rmax {
        let r_int = Int::from(r);
        // Window: r*beta0*H2 < d < r*beta0*H2 + width, both strict.
        let lo = &h2 * beta0 * Rat::from_integer(r_int.clone());
        let hi = &lo + &width;
        let mut d: Int = lo.floor().to_integer() + 1;
        let d_end: Int = hi.ceil().to_integer() - 1;
        while d <= d_end {
            let g: Int = pol.kh() * &r_int + &d * 2;
            if g.is_zero() {
                d += 1;
                continue;
            }
            let g_rat = Rat::from_integer(g);
            // Thresholds for the three linear conditions, derived by
            // clearing H2*g from the crossing-height and centre formulas:
            //   crossing (height^2 > 0):    s2*width  >  t1   (sign of g)
            //   height cap (height<=cmax):  s2*width  <= t2   (sign of g)
            //   centre right of the wall:   s2        >  t3   (sign of g)
            let base = &beta_sq * &h2 * &g_rat + beta0 * &h2 * &tau * Rat::from_integer(r_int.clone())
                - &tau * Rat::from_integer(d.clone());
            let t1 = base.clone();
            let t2 = &base + &cmax_sq * &h2 * &g_rat;
            let t3 = (&tau * Rat::from_integer(r_int.clone()) * &h2
                - Rat::from_integer(pol.kh().clone()) * &g_rat)
                / (&h2 * Rat::from_integer(Int::from(2)));
            let (s2_min, s2_max) = if g_rat.is_positive() {
                let lower = (&t1 / &width).max(t3);
                let upper = &t2 / &width;
                (lower.floor().to_integer() + 1, upper.floor().to_integer())
            } else {
                let lower = &t2 / &width;
                let upper = (&t1 / &width).min(t3);
                (lower.ceil().to_integer(), upper.ceil().to_integer() - 1)
            };
            if s2_min <= s2_max {
                cells.push(CellBounds {
                    r: r_int.clone(),
                    d: d.clone(),
                    s2_min,
                    s2_max,
                });
            }
            d += 1;
        }
    }
    Ok(cells)
}

/// Which vanishing case of the filter to run: the two cases differ only in
/// the degree cap of test `degree-cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseFlag {
    /// Stronger cap: `-c1.H <= K2 / 2`.
    Nonzero,
    /// Weaker cap: `-c1.H <= K2`.
    Zero,
}

/// Outcome of [`filter_quotient_candidate`]: accepted iff no test is
/// violated; `violated` lists the identifiers of every failed test and
/// `notes` records tests that could not be decided from Chern data alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateVerdict {
    /// True iff no test failed.
    pub accepted: bool,
    /// Identifiers of the violated tests, in chain order.
    pub violated: Vec<&'static str>,
    /// Explanations for skipped or partial tests.
    pub notes: Vec<String>,
}

impl CandidateVerdict {
    /// JSON form `{"accepted":...,"violated":[...],"notes":[...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "accepted": self.accepted,
            "violated": self.violated,
            "notes": self.notes,
        })
    }
}

/// Runs the arithmetic tests a quotient of the shifted tangent object must
/// pass, for full Chern data `f` on surface `s`.
///
/// Entry gate (error, not verdict): the surface must have positive index
/// and `alpha < 3/8`. The tests, with their violation identifiers:
///
/// * `degree-positive`: `-c1.H > 0`;
/// * `rank-at-least-2`: `r >= 2`;
/// * `degree-cap`: `-c1.H <= K2/2` ([`CaseFlag::Nonzero`]) or
///   `-c1.H <= K2` ([`CaseFlag::Zero`]);
/// * `tau-ch2-bound`: `tau * (-c1.H) <= s2 * K2`;
/// * when the discriminant `c1^2 - r*s2` is nonnegative (so the data could
///   come from a slope-semistable sheaf): `tau-rank-bound`
///   (`tau * r <= -c1.H`), `rank-2-or-3` (`r` is 2 or 3), `c1sq-positive`
///   (`c1^2 > 0`); otherwise these three are skipped with a note;
/// * `tau-triple-bound`: `3*tau <= -c1.H`;
/// * `hodge-index`: `c1^2 * K2 <= (c1.H)^2`.
pub fn filter_quotient_candidate(
    s: &SurfaceNumerics,
    f: &FullChern,
    case: CaseFlag,
) -> Result<CandidateVerdict, EnumerateError> {
    if !s.tau.is_positive() {
        return Err(EnumerateError::GateNotMet {
            reason: format!("index tau = {} is not positive", s.tau),
        });
    }
    // alpha < 3/8 as 8*c2 < 3*K2, exactly.
    if &s.c2 * 8 >= &s.k2 * 3 {
        return Err(EnumerateError::GateNotMet {
            reason: format!("alpha = {}/{} is not below 3/8", s.c2, s.k2),
        });
    }

    let mut violated: Vec<&'static str> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let deg = -&f.c1h; // -c1.H, the degree against the polarisation
    if !deg.is_positive() {
        violated.push("degree-positive");
    }
    if f.r < Int::from(2) {
        violated.push("rank-at-least-2");
    }
    let cap_ok = match case {
        CaseFlag::Nonzero => &deg * 2 <= s.k2,
        CaseFlag::Zero => deg <= s.k2,
    };
    if !cap_ok {
        violated.push("degree-cap");
    }
    if &s.tau * &deg > &f.s2 * &s.k2 {
        violated.push("tau-ch2-bound");
    }
    let disc = &f.c1sq - &f.r * &f.s2;
    if disc.is_negative() {
        notes.push(format!(
            "discriminant {disc} is negative: the slope-semistability tests \
             (tau-rank-bound, rank-2-or-3, c1sq-positive) cannot apply and were skipped"
        ));
    } else {
        if &s.tau * &f.r > deg {
            violated.push("tau-rank-bound");
        }
        if f.r != Int::from(2) && f.r != Int::from(3) {
            violated.push("rank-2-or-3");
        }
        if !f.c1sq.is_positive() {
            violated.push("c1sq-positive");
        }
    }
    if &s.tau * 3 > deg {
        violated.push("tau-triple-bound");
    }
    if &f.c1sq * &s.k2 > &f.c1h * &f.c1h {
        violated.push("hodge-index");
    }
    Ok(CandidateVerdict {
        accepted: violated.is_empty(),
        violated,
        notes,
    })
}

/// Strict excess bound for a rank-0 or rank-1 twist: returns
/// `c1.K < (4 - 2*rk) * q`, where `q = 3*c2 - K2`. Other ranks are
/// rejected with [`EnumerateError::BadRank`].
pub fn tilde_bound_check(s: &SurfaceNumerics, rk: i64, c1k: &Int) -> Result<bool, EnumerateError> {
    if rk != 0 && rk != 1 {
        return Err(EnumerateError::BadRank { rank: rk });
    }
    Ok(c1k < &(&s.q * (4 - 2 * rk)))
}

/// Genus/degree pairs `(g, d)` with `g >= 2`, `d >= 2` and
/// `2*(g-1)*(d-1) <= q`, sorted by `(g, d)`.
///
/// Requires the excess bound to hold on the surface (`q > 0` and
/// `4*q^2 < K2`); otherwise [`EnumerateError::NotApplicable`].
pub fn fibration_options(s: &SurfaceNumerics) -> Result<Vec<(Int, Int)>, EnumerateError> {
    let flags = check_geography(s).flags;
    if !flags.qbound {
        return Err(EnumerateError::NotApplicable {
            reason: format!(
                "requires q > 0 and 4*q^2 < K2; got q = {}, K2 = {}",
                s.q, s.k2
            ),
        });
    }
    let mut out: Vec<(Int, Int)> = Vec::new();
    let mut g = Int::from(2);
    // 2*(g-1)*(d-1) <= q with d >= 2 needs 2*(g-1) <= q.
    while (&g - 1) * 2 <= s.q {
        let mut d = Int::from(2);
        while (&g - 1) * (&d - 1) * 2 <= s.q {
            out.push((g.clone(), d.clone()));
            d += 1;
        }
        g += 1;
    }
    Ok(out)
}

/// JSON form of one fibration option: `{"g":...,"d":...}`.
pub fn fibration_option_json(pair: &(Int, Int)) -> Value {
    json!({
        "g": crate::ratio::int_to_json(&pair.0),
        "d": crate::ratio::int_to_json(&pair.1),
    })
}
