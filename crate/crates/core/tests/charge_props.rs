//! Property tests for central charges, slopes, phases, twists, and the
//! discriminants.

use chamber_core::charge::{
    central_charge, h_discriminant, h_discriminant_rat, mu_slope, phase_compare,
    theta_shift_slice, twist_by_th, twisted_slope_sign, ChernSlice, FullChern, PolarizationSlice,
    Slope, StabilityPoint,
};
use chamber_core::{Int, Rat};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use std::cmp::Ordering;

fn slice_strategy() -> impl Strategy<Value = ChernSlice> {
    (-6i64..=6, -40i64..=40, -60i64..=60).prop_map(|(r, d, s2)| ChernSlice::new(r, d, s2))
}

fn pol_strategy() -> impl Strategy<Value = PolarizationSlice> {
    (1i64..=30, 1i64..=40).prop_map(|(h2, kh)| PolarizationSlice::from_i64(h2, kh).unwrap())
}

fn point_strategy() -> impl Strategy<Value = StabilityPoint> {
    // b in [-3, 3] step 1/12, c in (0, 2] step 1/12.
    (-36i64..=36, 1i64..=24).prop_map(|(bn, cn)| StabilityPoint::from_i64(bn, 12, cn, 12).unwrap())
}

proptest! {
    /// The central charge is additive in the slice.
    #[test]
    fn central_charge_is_additive(
        v in slice_strategy(),
        w in slice_strategy(),
        pol in pol_strategy(),
        p in point_strategy(),
    ) {
        let zv = central_charge(&v, &pol, &p);
        let zw = central_charge(&w, &pol, &p);
        let zsum = central_charge(&(&v + &w), &pol, &p);
        prop_assert_eq!(&zsum.re, &(&zv.re + &zw.re));
        prop_assert_eq!(&zsum.im, &(&zv.im + &zw.im));
    }

    /// im Z = (d - r*H2*b) * c with c > 0, so its sign is the twisted-slope
    /// sign times the sign of the rank (the slope divides by r).
    #[test]
    fn imaginary_part_matches_twisted_sign(
        v in slice_strategy(),
        pol in pol_strategy(),
        p in point_strategy(),
    ) {
        prop_assume!(!v.r.is_zero());
        let z = central_charge(&v, &pol, &p);
        let sign = twisted_slope_sign(&v, &pol, p.b()).unwrap();
        let r_sign = if v.r.is_positive() { 1 } else { -1 };
        let im_sign = if z.im.is_positive() {
            1
        } else if z.im.is_negative() {
            -1
        } else {
            0
        };
        prop_assert_eq!(im_sign, sign * r_sign);
    }

    /// Phase comparison is antisymmetric whenever both charges are in the
    /// domain.
    #[test]
    fn phase_comparison_is_antisymmetric(
        v in slice_strategy(),
        w in slice_strategy(),
        pol in pol_strategy(),
        p in point_strategy(),
    ) {
        let vw = phase_compare(&v, &w, &pol, &p);
        let wv = phase_compare(&w, &v, &pol, &p);
        match (vw, wv) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b.reverse()),
            (Err(_), Err(_)) => {}
            // One direction failing means some charge is out of domain, so
            // the other direction must fail too.
            (a, b) => prop_assert!(false, "asymmetric domain: {:?} vs {:?}", a, b),
        }
    }

    /// Phase comparison is reflexively Equal in the domain.
    #[test]
    fn phase_comparison_is_reflexive(
        v in slice_strategy(),
        pol in pol_strategy(),
        p in point_strategy(),
    ) {
        if let Ok(ord) = phase_compare(&v, &v, &pol, &p) {
            prop_assert_eq!(ord, Ordering::Equal);
        }
    }

    /// The polarised discriminant is invariant under twisting by t*H.
    #[test]
    fn twist_preserves_polarised_discriminant(
        v in slice_strategy(),
        pol in pol_strategy(),
        tn in -24i64..=24,
        td in 1i64..=12,
    ) {
        let t = Rat::new(Int::from(tn), Int::from(td));
        let tw = twist_by_th(&v, &pol, &t);
        let before = Rat::from_integer(h_discriminant(&v, &pol));
        prop_assert_eq!(h_discriminant_rat(&tw, &pol), before);
    }

    /// Twisting by zero is the identity on the slice.
    #[test]
    fn twist_by_zero_is_identity(v in slice_strategy(), pol in pol_strategy()) {
        let tw = twist_by_th(&v, &pol, &Rat::zero());
        prop_assert_eq!(tw.r, Rat::from_integer(v.r.clone()));
        prop_assert_eq!(tw.d, Rat::from_integer(v.d.clone()));
        prop_assert_eq!(tw.s2, Rat::from_integer(v.s2.clone()));
    }

    /// The slope is degree over rank, infinite exactly at rank zero.
    #[test]
    fn slope_is_degree_over_rank(v in slice_strategy(), pol in pol_strategy()) {
        match mu_slope(&v, &pol) {
            Slope::Infinite => prop_assert!(v.r.is_zero()),
            Slope::Finite(q) => {
                prop_assert!(!v.r.is_zero());
                prop_assert_eq!(&q * Rat::from_integer(v.r.clone()),
                                Rat::from_integer(v.d.clone()));
            }
        }
    }
}

/// The shifted tangent slice is (-2, K.H, -tau) on every admissible
/// surface in a scan window.
#[test]
fn shifted_tangent_slice_values() {
    for (s, rep) in chamber_core::surface::scan_geography(40) {
        if !rep.admissible {
            continue;
        }
        let pol = PolarizationSlice::canonical(&s);
        let theta = theta_shift_slice(&s, &pol);
        assert_eq!(theta.r, Int::from(-2));
        assert_eq!(&theta.d, pol.kh());
        assert_eq!(theta.d, s.k2);
        assert_eq!(theta.s2, -s.tau.clone());
    }
}

/// Hodge-consistency is enforced at checked construction time.
#[test]
fn checked_construction_enforces_hodge_bound() {
    let pol = PolarizationSlice::from_i64(35, 35).unwrap();
    let ok = FullChern::new_checked(
        Int::from(3),
        Int::from(24),
        Int::from(-30),
        Int::from(8),
        &pol,
    );
    assert!(ok.is_ok());
    let bad = FullChern::new_checked(
        Int::from(3),
        Int::from(30),
        Int::from(-30),
        Int::from(8),
        &pol,
    );
    assert!(bad.is_err());
}
