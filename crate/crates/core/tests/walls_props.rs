//! Property tests for wall geometry: shape classification against an
//! integer-minor oracle, the tops-on-hyperbola identity, the
//! never-crossing law, and the wall/phase-equality correspondence.

use chamber_core::charge::{phase_compare, theta_shift_slice, ChernSlice, PolarizationSlice, StabilityPoint};
use chamber_core::surface::{scan_geography, surface_from_i64, SurfaceNumerics};
use chamber_core::walls::{
    classify_pair, hyperbola_of_tops, in_bun_region, in_strip, point_position, theta_circle,
    top_on_hyperbola, vertical_side, vertical_wall, wall_between, PairClass, PointPosition,
    RegionParams, WallShape,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use std::cmp::Ordering;

fn slice_strategy() -> impl Strategy<Value = ChernSlice> {
    (-6i64..=6, -40i64..=40, -60i64..=60).prop_map(|(r, d, s2)| ChernSlice::new(r, d, s2))
}

fn pol_strategy() -> impl Strategy<Value = PolarizationSlice> {
    (1i64..=30, 1i64..=40).prop_map(|(h2, kh)| PolarizationSlice::from_i64(h2, kh).unwrap())
}

/// Positive-index surfaces for tangent-circle properties.
fn positive_index_surfaces() -> Vec<SurfaceNumerics> {
    scan_geography(40)
        .into_iter()
        .filter(|(s, rep)| rep.admissible && s.tau.is_positive())
        .map(|(s, _)| s)
        .collect()
}

/// Oracle for the everywhere case: the three 2x2 minors of
/// [(s2,d,r) of v; (s2,d,r) of w] all vanish, i.e. the vectors are
/// proportional over the rationals.
fn proportional_oracle(v: &ChernSlice, w: &ChernSlice) -> bool {
    let m1 = &v.s2 * &w.d - &w.s2 * &v.d;
    let m2 = &v.s2 * &w.r - &w.s2 * &v.r;
    let m3 = &v.d * &w.r - &w.d * &v.r;
    m1.is_zero() && m2.is_zero() && m3.is_zero()
}

proptest! {
    /// The wall of (v, w) equals the wall of (w, v).
    #[test]
    fn wall_is_symmetric(
        v in slice_strategy(),
        w in slice_strategy(),
        pol in pol_strategy(),
    ) {
        prop_assert_eq!(wall_between(&v, &w, &pol), wall_between(&w, &v, &pol));
    }

    /// Everywhere walls appear exactly for proportional class vectors.
    #[test]
    fn everywhere_iff_proportional(
        v in slice_strategy(),
        w in slice_strategy(),
        pol in pol_strategy(),
    ) {
        let is_everywhere = wall_between(&v, &w, &pol) == WallShape::Everywhere;
        prop_assert_eq!(is_everywhere, proportional_oracle(&v, &w));
    }

    /// Every semicircular wall against the shifted tangent object tops out
    /// on the hyperbola, on every positive-discriminant surface.
    #[test]
    fn semicircular_walls_top_on_the_hyperbola(
        v in slice_strategy(),
        idx in 0usize..=12,
    ) {
        let surfaces = positive_index_surfaces();
        let s = &surfaces[idx % surfaces.len()];
        let pol = PolarizationSlice::canonical(s);
        let theta = theta_shift_slice(s, &pol);
        let wall = wall_between(&v, &theta, &pol);
        if let WallShape::Semicircle { .. } = wall {
            let hyp = hyperbola_of_tops(s, &pol).unwrap();
            prop_assert!(top_on_hyperbola(&wall, &hyp).unwrap());
        }
    }

    /// Distinct semicircular walls against the same shifted tangent object
    /// never intersect.
    #[test]
    fn distinct_walls_never_cross(
        v in slice_strategy(),
        w in slice_strategy(),
        idx in 0usize..=12,
    ) {
        let surfaces = positive_index_surfaces();
        let s = &surfaces[idx % surfaces.len()];
        let pol = PolarizationSlice::canonical(s);
        let theta = theta_shift_slice(s, &pol);
        let wv = wall_between(&v, &theta, &pol);
        let ww = wall_between(&w, &theta, &pol);
        if let (WallShape::Semicircle { .. }, WallShape::Semicircle { .. }) = (&wv, &ww) {
            let class = classify_pair(&wv, &ww);
            prop_assert_ne!(class, PairClass::Intersecting);
        }
    }

    /// A point lies on the wall of (v, w) exactly when the two phases are
    /// equal there (whenever both charges are in the phase domain and the
    /// wall is a circle or a line).
    #[test]
    fn on_wall_iff_equal_phase(
        v in slice_strategy(),
        w in slice_strategy(),
        pol in pol_strategy(),
        bn in -36i64..=36,
        cn in 1i64..=24,
    ) {
        let p = StabilityPoint::from_i64(bn, 12, cn, 12).unwrap();
        let (vw, pc) = (wall_between(&v, &w, &pol), phase_compare(&v, &w, &pol, &p));
        if let (Ok(pos), Ok(ord)) = (point_position(&vw, &p), pc) {
            prop_assert_eq!(pos == PointPosition::On, ord == Ordering::Equal);
        }
    }

    /// Strip membership is equivalent to sitting strictly right of the
    /// vertical wall with b < 0.
    #[test]
    fn strip_is_bounded_by_the_vertical_wall(
        pol in pol_strategy(),
        bn in -36i64..=36,
        cn in 1i64..=24,
    ) {
        let p = StabilityPoint::from_i64(bn, 12, cn, 12).unwrap();
        let wall = WallShape::Vertical { b0: vertical_wall(&pol) };
        let expected = vertical_side(&wall, &p).unwrap() > 0 && p.b().is_negative();
        prop_assert_eq!(in_strip(&pol, &p), expected);
    }
}

/// The region below the tangent circle is contained in the circle and the
/// strip (canonical polarisation), and agrees with its defining
/// inequalities point by point.
#[test]
fn bun_region_is_inside_circle_and_strip() {
    let rp = RegionParams::new(2).unwrap();
    for s in positive_index_surfaces() {
        let pol = PolarizationSlice::canonical(&s);
        let circle = theta_circle(&s, &pol);
        for bn in -40i64..0 {
            for cn in 1i64..=8 {
                let p = StabilityPoint::from_i64(bn, 80, cn, 40).unwrap();
                let inside = in_bun_region(&s, &pol, &rp, &p).unwrap();
                if inside {
                    assert_eq!(point_position(&circle, &p).unwrap(), PointPosition::Inside);
                    assert!(in_strip(&pol, &p));
                }
            }
        }
    }
}

/// The closed-form tangent circle always matches the determinantal wall of
/// the structure sheaf, and its top sits on the hyperbola.
#[test]
fn tangent_circle_cross_derivation() {
    for s in positive_index_surfaces() {
        let pol = PolarizationSlice::canonical(&s);
        let theta = theta_shift_slice(&s, &pol);
        let closed = theta_circle(&s, &pol);
        let determinantal = wall_between(&ChernSlice::new(1, 0, 0), &theta, &pol);
        assert_eq!(closed, determinantal);
        let hyp = hyperbola_of_tops(&s, &pol).unwrap();
        assert!(top_on_hyperbola(&closed, &hyp).unwrap());
    }
}

/// Internal tangency counts as intersecting; strict containment as nested.
#[test]
fn tangency_and_containment_cases() {
    let circle = |c: i64, rsq: i64| WallShape::Semicircle {
        center: chamber_core::ratio::rat(c, 1),
        radius_sq: chamber_core::ratio::rat(rsq, 1),
    };
    // dist = 1, radii 2 and 1: internally tangent.
    assert_eq!(classify_pair(&circle(0, 4), &circle(1, 1)), PairClass::Intersecting);
    // dist = 0 with different radii: nested, smaller one inside.
    assert_eq!(
        classify_pair(&circle(0, 4), &circle(0, 9)),
        PairClass::Nested { inner: 1 }
    );
    // Far apart: exterior disjoint.
    assert_eq!(
        classify_pair(&circle(-5, 1), &circle(5, 1)),
        PairClass::ExteriorDisjoint
    );
}

/// The hand-checked running example wall values survive an end-to-end pass
/// through the integration surface.
#[test]
fn running_example_wall_values() {
    let s = surface_from_i64(13, 35).unwrap();
    let pol = PolarizationSlice::canonical(&s);
    let theta = theta_shift_slice(&s, &pol);
    match wall_between(&ChernSlice::new(1, 0, 0), &theta, &pol) {
        WallShape::Semicircle { center, radius_sq } => {
            assert_eq!(center, chamber_core::ratio::rat(-9, 70));
            assert_eq!(radius_sq, chamber_core::ratio::rat(81, 4900));
        }
        other => panic!("expected semicircle, got {other:?}"),
    }
    assert_eq!(vertical_wall(&pol), chamber_core::ratio::rat(-1, 2));
}
