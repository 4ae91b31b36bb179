//! Central charges, slopes and discriminant inequalities.
//!
//! The stability conditions considered here are parameterised by points
//! `(b, c)` of the upper half plane (`c > 0`). A sheaf or complex enters the
//! computation through its *Chern slice* `(r, d, s2)`:
//!
//! * `r`  — the rank `ch0`,
//! * `d`  — the polarised degree `ch1 . H`,
//! * `s2` — **twice** the second Chern character, `2*ch2`.
//!
//! Storing `2*ch2` keeps every formula integral; the factor is baked into
//! each formula below so callers never divide. Some inequality checks also
//! need `c1^2` itself, which the slice does not determine; those take a
//! [`FullChern`] with that extra component.
//!
//! The central charge at `(b, c)` for a polarisation with `H2 = H.H` is
//!
//! ```text
//! Re Z = -s2/2 + d*b - (r*H2/2)*(b^2 - c^2)
//! Im Z = (d - r*H2*b) * c
//! ```
//!
//! Phases in `(0, 1]` are compared without transcendental functions: on the
//! open upper half plane the cotangent `Re/Im` is strictly decreasing in the
//! phase, so comparisons reduce to an exact cross-multiplication, with the
//! `Im = 0, Re < 0` boundary (phase exactly 1) sorted above everything else.
//!
//! The discriminants `delta = c1^2 - r*s2` (Bogomolov) and
//! `delta_H = d^2 - H2*r*s2` (its polarised shadow, invariant under twisting
//! by rational multiples of `H`) power the unstability criteria at the end
//! of the module, including the filtration-degree bound of
//! [`miyaoka_unstable_bound`].

use crate::ratio::{int_to_json, rat_to_json, Int, Rat};
use crate::surface::SurfaceNumerics;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::ops::{Add, Neg};

/// Errors from charge computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChargeError {
    /// A slope sign was requested for a rank-zero class.
    #[error("twisted slope sign is undefined for rank zero")]
    ZeroRank,
    /// An operation requiring positive rank received rank `< 1`.
    #[error("operation requires positive rank, got {rank}")]
    NonpositiveRank {
        /// The offending rank.
        rank: Int,
    },
    /// A phase was requested for a charge outside the domain
    /// `Im > 0` or (`Im = 0` and `Re < 0`).
    #[error("charge with re={re}, im={im} lies outside the phase domain")]
    NotInUpperHalfPlane {
        /// Real part, printed as `num/den`.
        re: String,
        /// Imaginary part, printed as `num/den`.
        im: String,
    },
    /// A stability point must have `c > 0`.
    #[error("stability point must have positive vertical coordinate")]
    InvalidPoint,
    /// A polarisation slice must have `H2 >= 1` and `K.H >= 1`.
    #[error("polarisation must have positive H^2 and K.H")]
    InvalidPolarization,
    /// Full Chern data violating the Hodge index bound `c1sq*H2 <= c1H^2`
    /// cannot come from an actual divisor class.
    #[error("c1^2 * H^2 = {lhs} exceeds (c1.H)^2 = {rhs}, violating the Hodge index bound")]
    HodgeIndexViolated {
        /// `c1sq * H2`.
        lhs: Int,
        /// `c1H^2`.
        rhs: Int,
    },
    /// A hypothesis of the filtration bound fails; the list names each
    /// offending condition.
    #[error("filtration hypotheses violated: {0:?}")]
    HypothesisViolated(Vec<String>),
}

/// Chern data of a class on the `H`-slice: rank, polarised degree and twice
/// the second Chern character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernSlice {
    /// Rank `ch0`. Negative ranks are allowed (shifted objects).
    pub r: Int,
    /// Degree `ch1 . H`.
    pub d: Int,
    /// Doubled second Chern character `2*ch2`.
    pub s2: Int,
}

impl ChernSlice {
    /// Builds a slice from machine integers.
    pub fn new(r: i64, d: i64, s2: i64) -> Self {
        Self {
            r: Int::from(r),
            d: Int::from(d),
            s2: Int::from(s2),
        }
    }

    /// JSON form `{"r": .., "d": .., "s2": ..}`.
    pub fn to_json(&self) -> Value {
        json!({
            "r": int_to_json(&self.r),
            "d": int_to_json(&self.d),
            "s2": int_to_json(&self.s2),
        })
    }
}

impl Add for &ChernSlice {
    type Output = ChernSlice;
    fn add(self, rhs: &ChernSlice) -> ChernSlice {
        ChernSlice {
            r: &self.r + &rhs.r,
            d: &self.d + &rhs.d,
            s2: &self.s2 + &rhs.s2,
        }
    }
}

impl Neg for &ChernSlice {
    type Output = ChernSlice;
    fn neg(self) -> ChernSlice {
        ChernSlice {
            r: -&self.r,
            d: -&self.d,
            s2: -&self.s2,
        }
    }
}

/// Full Chern data of a sheaf where `c1^2` matters: rank, `c1^2`, `c1 . H`
/// and `2*ch2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullChern {
    /// Rank `ch0`.
    pub r: Int,
    /// Self-intersection `c1^2`.
    pub c1sq: Int,
    /// Degree `c1 . H`.
    pub c1h: Int,
    /// Doubled second Chern character `2*ch2`.
    pub s2: Int,
}

impl FullChern {
    /// Builds full Chern data from machine integers without consistency
    /// checks (use [`FullChern::new_checked`] to enforce the Hodge bound).
    pub fn new(r: i64, c1sq: i64, c1h: i64, s2: i64) -> Self {
        Self {
            r: Int::from(r),
            c1sq: Int::from(c1sq),
            c1h: Int::from(c1h),
            s2: Int::from(s2),
        }
    }

    /// Builds full Chern data and verifies the Hodge index consistency
    /// `c1sq * H2 <= (c1.H)^2` against the given polarisation.
    pub fn new_checked(
        r: Int,
        c1sq: Int,
        c1h: Int,
        s2: Int,
        pol: &PolarizationSlice,
    ) -> Result<Self, ChargeError> {
        let lhs = &c1sq * pol.h2();
        let rhs = &c1h * &c1h;
        if lhs > rhs {
            return Err(ChargeError::HodgeIndexViolated { lhs, rhs });
        }
        Ok(Self { r, c1sq, c1h, s2 })
    }

    /// The slice `(r, c1h, s2)` obtained by forgetting `c1^2`.
    pub fn slice(&self) -> ChernSlice {
        ChernSlice {
            r: self.r.clone(),
            d: self.c1h.clone(),
            s2: self.s2.clone(),
        }
    }

    /// JSON form `{"r": .., "c1sq": .., "c1H": .., "s2": ..}`.
    pub fn to_json(&self) -> Value {
        json!({
            "r": int_to_json(&self.r),
            "c1sq": int_to_json(&self.c1sq),
            "c1H": int_to_json(&self.c1h),
            "s2": int_to_json(&self.s2),
        })
    }
}

/// Chern slice with rational entries, produced by twisting an integral slice
/// by a rational multiple of the polarisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSlice {
    /// Rank (unchanged by twisting).
    pub r: Rat,
    /// Twisted degree.
    pub d: Rat,
    /// Twisted doubled second Chern character.
    pub s2: Rat,
}

/// Intersection numbers of the polarisation `H` against itself and the
/// canonical class: `H2 = H.H >= 1` and `KH = K.H >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationSlice {
    h2: Int,
    kh: Int,
}

impl PolarizationSlice {
    /// Builds a polarisation slice, validating positivity of both numbers.
    pub fn new(h2: Int, kh: Int) -> Result<Self, ChargeError> {
        if !h2.is_positive() || !kh.is_positive() {
            return Err(ChargeError::InvalidPolarization);
        }
        Ok(Self { h2, kh })
    }

    /// Builds a polarisation slice from machine integers.
    pub fn from_i64(h2: i64, kh: i64) -> Result<Self, ChargeError> {
        Self::new(Int::from(h2), Int::from(kh))
    }

    /// The canonical polarisation `H = K`: both numbers equal `K2`.
    pub fn canonical(s: &SurfaceNumerics) -> Self {
        Self {
            h2: s.k2.clone(),
            kh: s.k2.clone(),
        }
    }

    /// `H . H`.
    pub fn h2(&self) -> &Int {
        &self.h2
    }

    /// `K . H`.
    pub fn kh(&self) -> &Int {
        &self.kh
    }
}

/// A point `(b, c)` of the upper half plane of stability parameters,
/// with `c > 0` enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityPoint {
    b: Rat,
    c: Rat,
}

impl StabilityPoint {
    /// Builds a point, rejecting `c <= 0`.
    pub fn new(b: Rat, c: Rat) -> Result<Self, ChargeError> {
        if !c.is_positive() {
            return Err(ChargeError::InvalidPoint);
        }
        Ok(Self { b, c })
    }

    /// Convenience constructor from machine-integer fractions
    /// `(bn/bd, cn/cd)`.
    pub fn from_i64(bn: i64, bd: i64, cn: i64, cd: i64) -> Result<Self, ChargeError> {
        Self::new(
            Rat::new(Int::from(bn), Int::from(bd)),
            Rat::new(Int::from(cn), Int::from(cd)),
        )
    }

    /// Horizontal coordinate `b`.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// Vertical coordinate `c > 0`.
    pub fn c(&self) -> &Rat {
        &self.c
    }
}

/// Value of a central charge: exact real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeValue {
    /// Real part.
    pub re: Rat,
    /// Imaginary part.
    pub im: Rat,
}

impl ChargeValue {
    /// JSON form `{"re": "num/den", "im": "num/den"}`.
    pub fn to_json(&self) -> Value {
        json!({
            "re": rat_to_json(&self.re),
            "im": rat_to_json(&self.im),
        })
    }
}

/// The slice of the shifted tangent object: `(-2, K.H, -tau)`.
///
/// The tangent sheaf has rank 2, first Chern class `-K` and doubled second
/// Chern character `tau = K2 - 2*c2`; shifting negates all three entries.
pub fn theta_shift_slice(s: &SurfaceNumerics, pol: &PolarizationSlice) -> ChernSlice {
    ChernSlice {
        r: Int::from(-2),
        d: pol.kh.clone(),
        s2: -s.tau.clone(),
    }
}

/// Central charge of the slice `v` at the point `(b, c)`:
/// `Re = -s2/2 + d*b - (r*H2/2)(b^2 - c^2)`, `Im = (d - r*H2*b)*c`.
pub fn central_charge(v: &ChernSlice, pol: &PolarizationSlice, p: &StabilityPoint) -> ChargeValue {
    let b = &p.b;
    let c = &p.c;
    let r_h2 = Rat::from_integer(&v.r * pol.h2());
    let half = Rat::new(Int::from(1), Int::from(2));
    let d = Rat::from_integer(v.d.clone());
    let s2 = Rat::from_integer(v.s2.clone());
    let bb_cc = &(b * b) - &(c * c);
    let re = &(&(&d * b) - &(&s2 * &half)) - &(&(&r_h2 * &half) * &bb_cc);
    let im = &(&d - &(&r_h2 * b)) * c;
    ChargeValue { re, im }
}

/// Slope `d / r` of a slice, or the infinite slope for rank zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    /// Finite slope `d / r`.
    Finite(Rat),
    /// Rank-zero classes sit at slope `+infinity`.
    Infinite,
}

/// Slope of `v` for the degree form fixed by `pol` (the degree is already
/// stored in the slice, so the polarisation only fixes the convention).
pub fn mu_slope(v: &ChernSlice, _pol: &PolarizationSlice) -> Slope {
    if v.r.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(Rat::new(v.d.clone(), v.r.clone()))
    }
}

/// Sign of the twisted slope `d/r - b*H2`: `+1` when a `mu`-semistable sheaf
/// with this slice lands in the torsion-side tilt category at parameter `b`,
/// `0` on the boundary, `-1` on the free side. Rank zero is rejected.
pub fn twisted_slope_sign(
    v: &ChernSlice,
    pol: &PolarizationSlice,
    b: &Rat,
) -> Result<i32, ChargeError> {
    if v.r.is_zero() {
        return Err(ChargeError::ZeroRank);
    }
    let mu = Rat::new(v.d.clone(), v.r.clone());
    let diff = &mu - &(b * &Rat::from_integer(pol.h2().clone()));
    Ok(if diff.is_positive() {
        1
    } else if diff.is_negative() {
        -1
    } else {
        0
    })
}

fn in_phase_domain(z: &ChargeValue) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_negative())
}

/// Compares the phases of the charges of `v` and `w` at the same point,
/// exactly.
///
/// Both charges must lie in the phase domain `Im > 0` or
/// (`Im = 0`, `Re < 0`); the latter boundary has phase exactly 1 and
/// compares above every interior charge. In the interior the phase order is
/// the reverse of the cotangent order, so
/// `phase(v) > phase(w) <=> Re(v)*Im(w) < Re(w)*Im(v)`,
/// decided by exact cross-multiplication.
pub fn phase_compare(
    v: &ChernSlice,
    w: &ChernSlice,
    pol: &PolarizationSlice,
    p: &StabilityPoint,
) -> Result<Ordering, ChargeError> {
    let zv = central_charge(v, pol, p);
    let zw = central_charge(w, pol, p);
    for z in [&zv, &zw] {
        if !in_phase_domain(z) {
            return Err(ChargeError::NotInUpperHalfPlane {
                re: crate::ratio::format_rat(&z.re),
                im: crate::ratio::format_rat(&z.im),
            });
        }
    }
    let v_boundary = zv.im.is_zero();
    let w_boundary = zw.im.is_zero();
    Ok(match (v_boundary, w_boundary) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            // cot(phase) = re/im is strictly decreasing in the phase, so the
            // phase order is the reverse of the cross-multiplied order.
            let lhs = &zv.re * &zw.im;
            let rhs = &zw.re * &zv.im;
            rhs.cmp(&lhs)
        }
    })
}

/// Bogomolov discriminant `delta = c1^2 - r*s2` (`= c1^2 - 2 ch0 ch2`).
pub fn discriminant(f: &FullChern) -> Int {
    &f.c1sq - &f.r * &f.s2
}

/// Polarised discriminant `delta_H = d^2 - H2*r*s2` of a slice.
pub fn h_discriminant(v: &ChernSlice, pol: &PolarizationSlice) -> Int {
    &v.d * &v.d - pol.h2() * &v.r * &v.s2
}

/// Polarised discriminant of a rational slice.
pub fn h_discriminant_rat(v: &RationalSlice, pol: &PolarizationSlice) -> Rat {
    &(&v.d * &v.d) - &(&(&Rat::from_integer(pol.h2().clone()) * &v.r) * &v.s2)
}

/// Twists a slice by `t*H`: the rank is unchanged, the degree drops by
/// `r*t*H2` and the doubled character becomes `s2 - 2*d*t + r*t^2*H2`.
/// The polarised discriminant is invariant under this operation.
pub fn twist_by_th(v: &ChernSlice, pol: &PolarizationSlice, t: &Rat) -> RationalSlice {
    let r = Rat::from_integer(v.r.clone());
    let d = Rat::from_integer(v.d.clone());
    let s2 = Rat::from_integer(v.s2.clone());
    let h2r = Rat::from_integer(pol.h2().clone());
    let two = Rat::from_integer(Int::from(2));
    RationalSlice {
        r: r.clone(),
        d: &d - &(&(&r * t) * &h2r),
        s2: &(&s2 - &(&(&d * &two) * t)) + &(&(&r * &(t * t)) * &h2r),
    }
}

/// Bogomolov inequality test: a torsion-free sheaf of positive rank with
/// `delta < 0` is unstable. Rank `< 1` is rejected.
pub fn bogomolov_unstable(f: &FullChern) -> Result<bool, ChargeError> {
    if !f.r.is_positive() {
        return Err(ChargeError::NonpositiveRank { rank: f.r.clone() });
    }
    Ok(discriminant(f).is_negative())
}

/// Report of the filtration-degree bound test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiyaokaReport {
    /// Whether the strict bound `lhs > rhs` holds.
    pub holds: bool,
    /// `d_total^2 - H2 * r_1 * s2_total` (an exact integer).
    pub lhs: Int,
    /// Polarised discriminant of the first factor (an exact integer).
    pub rhs: Int,
    /// Explanatory notes, e.g. the equality degeneration for a one-step
    /// filtration.
    pub notes: Vec<String>,
}

/// Tests the strict degree bound satisfied by a slope filtration with
/// strictly decreasing slopes and non-negative degrees:
/// `d_total^2 - H2*r_1*s2_total > delta_H(first factor)`.
///
/// Preconditions, reported through [`ChargeError::HypothesisViolated`] when
/// they fail: every factor has positive rank and non-negative degree, the
/// factor slopes strictly decrease, and the factors sum to `total`. A
/// single-factor filtration is not an error: the bound then degenerates to
/// an equality, so the report carries `holds = false` with an explanatory
/// note.
pub fn miyaoka_unstable_bound(
    total: &ChernSlice,
    factors: &[ChernSlice],
    pol: &PolarizationSlice,
) -> Result<MiyaokaReport, ChargeError> {
    let mut violations = Vec::new();
    if factors.is_empty() {
        violations.push("filtration has no factors".to_string());
        return Err(ChargeError::HypothesisViolated(violations));
    }
    for (i, f) in factors.iter().enumerate() {
        if !f.r.is_positive() {
            violations.push(format!("factor {i} has non-positive rank"));
        }
        if f.d.is_negative() {
            violations.push(format!("factor {i} has negative degree"));
        }
    }
    for (i, pair) in factors.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if a.r.is_positive() && b.r.is_positive() {
            // d_a/r_a > d_b/r_b  <=>  d_a*r_b > d_b*r_a (ranks positive).
            if &a.d * &b.r <= &b.d * &a.r {
                violations.push(format!(
                    "slopes of factors {i} and {} do not strictly decrease",
                    i + 1
                ));
            }
        }
    }
    let sum = factors
        .iter()
        .fold(ChernSlice::new(0, 0, 0), |acc, f| &acc + f);
    if sum != *total {
        violations.push("factors do not sum to the total class".to_string());
    }
    if !violations.is_empty() {
        return Err(ChargeError::HypothesisViolated(violations));
    }
    let first = &factors[0];
    let lhs = &total.d * &total.d - pol.h2() * &first.r * &total.s2;
    let rhs = h_discriminant(first, pol);
    let mut notes = Vec::new();
    let holds = if factors.len() == 1 {
        notes.push(
            "one-step filtration: the bound degenerates to an equality and cannot witness \
             unstability"
                .to_string(),
        );
        false
    } else {
        lhs > rhs
    };
    Ok(MiyaokaReport {
        holds,
        lhs,
        rhs,
        notes,
    })
}
