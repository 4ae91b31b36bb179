//! Deterministic SVG rendering of the wall diagram in the upper half of
//! the `(b, c)` plane.
//!
//! # Pixel map
//!
//! All geometry is carried as exact rationals until the final formatting
//! step. With `M = 24` (margin in pixels), `W`/`H` the requested pixel
//! sizes, and one common scale
//!
//! ```text
//! s = min( (W - 2M) / (b_max - b_min), (H - 2M) / c_max )
//! ```
//!
//! a point `(b, c)` lands at
//!
//! ```text
//! x = M + (b - b_min) * s        y = (H - M) - c * s
//! ```
//!
//! The scale is shared by both axes so Euclidean circles stay circles and
//! can be emitted as honest `<circle>` elements. Rounding happens exactly
//! once, at emission: every coordinate is an exact rational rounded
//! half-up to hundredths of a pixel. Radii of walls are square roots of
//! rationals; their pixel value is the exactly rounded integer nearest to
//! `100 * s * sqrt(radius_sq)`, decided by integer comparisons.
//!
//! Output depends only on the inputs: no clocks, no randomness, no map
//! iteration, so identical invocations are byte-identical.

use chamber_core::ratio::floor_sqrt_rat;
use chamber_core::walls::WallShape;
use chamber_core::{Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which layers to draw.
#[derive(Debug, Clone, Copy, Default)]
pub struct LayerFlags {
    pub vertical: bool,
    pub hyperbola: bool,
    pub c_h: bool,
    pub candidates: bool,
    pub region: bool,
}

impl LayerFlags {
    /// Parses a comma-separated layer list; `Err` carries the bad name.
    pub fn parse(names: &[String]) -> Result<Self, String> {
        let mut flags = LayerFlags::default();
        for name in names {
            match name.trim() {
                "vertical" => flags.vertical = true,
                "hyperbola" => flags.hyperbola = true,
                "c_h" => flags.c_h = true,
                "candidates" => flags.candidates = true,
                "region" => flags.region = true,
                other => return Err(format!("unknown layer {other:?}")),
            }
        }
        Ok(flags)
    }
}

/// The drawing window and canvas size.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub b_min: Rat,
    pub b_max: Rat,
    pub c_max: Rat,
    pub width_px: i64,
    pub height_px: i64,
    pub layers: LayerFlags,
}

impl RenderSpec {
    /// Checks the window invariants; `Err` carries the reason.
    pub fn validate(&self) -> Result<(), String> {
        if self.b_min >= self.b_max {
            return Err("b range is empty: require b_min < b_max".into());
        }
        if !self.c_max.is_positive() {
            return Err("c_max must be positive".into());
        }
        if self.width_px < 64 || self.height_px < 64 {
            return Err("pixel sizes must be at least 64".into());
        }
        Ok(())
    }
}

/// Everything the renderer draws, already computed by the caller.
#[derive(Debug, Clone)]
pub struct Scene {
    /// Position of the vertical wall (`b` coordinate).
    pub vertical_b: Rat,
    /// The tangent circle, when the surface index is positive.
    pub c_h: Option<(Rat, Rat)>, // (centre b, radius), radius exact here
    /// Hyperbola of wall tops: (kappa, rhs) with (b + kappa)^2 - c^2 = rhs.
    pub hyperbola: Option<(Rat, Rat)>,
    /// Candidate walls to stroke (semicircles only: (centre, radius_sq)).
    pub candidates: Vec<(Rat, Rat)>,
    /// Left cut of the admissible sub-region, intersected with the
    /// tangent disc: `b` in (cut, 0).
    pub region_cut: Option<Rat>,
}

const MARGIN: i64 = 24;

struct PixelMap {
    scale: Rat,
    b_min: Rat,
    y0: Rat, // pixel y of c = 0
}

impl PixelMap {
    fn new(spec: &RenderSpec) -> Self {
        let w = Rat::from_integer(Int::from(spec.width_px - 2 * MARGIN));
        let h = Rat::from_integer(Int::from(spec.height_px - 2 * MARGIN));
        let sx = &w / &(&spec.b_max - &spec.b_min);
        let sy = &h / &spec.c_max;
        let scale = if sx <= sy { sx } else { sy };
        PixelMap {
            scale,
            b_min: spec.b_min.clone(),
            y0: Rat::from_integer(Int::from(spec.height_px - MARGIN)),
        }
    }

    fn x(&self, b: &Rat) -> Rat {
        &Rat::from_integer(Int::from(MARGIN)) + &(&(b - &self.b_min) * &self.scale)
    }

    fn y(&self, c: &Rat) -> Rat {
        &self.y0 - &(c * &self.scale)
    }
}

/// Exact half-up rounding to hundredths, emitted as `"123.45"`.
fn px(v: &Rat) -> String {
    let hundredths = (v * Rat::from_integer(Int::from(100))
        + Rat::new(Int::one(), Int::from(2)))
    .floor()
    .to_integer();
    fmt_hundredths(&hundredths)
}

fn fmt_hundredths(n: &Int) -> String {
    let neg = n.is_negative();
    let a = n.abs();
    let whole = &a / Int::from(100);
    let frac = &a % Int::from(100);
    format!(
        "{}{}.{:02}",
        if neg { "-" } else { "" },
        whole,
        frac.to_i64().unwrap_or(0)
    )
}

/// Nearest integer to `sqrt(y)` for a non-negative rational `y`, rounding
/// half up, decided exactly: `n = floor(sqrt(y))`, bumped when
/// `(2n+1)^2 <= 4y`.
fn round_sqrt(y: &Rat) -> Int {
    let n = floor_sqrt_rat(y);
    let bump: Int = &n * 2 + 1;
    if Rat::from_integer(&bump * &bump) <= y * Rat::from_integer(Int::from(4)) {
        n + 1
    } else {
        n
    }
}

/// Pixel radius string for a wall with squared radius `radius_sq`:
/// exactly rounded `100 * scale * sqrt(radius_sq)`, then placed over 100.
fn px_radius(map: &PixelMap, radius_sq: &Rat) -> String {
    let scaled = radius_sq * &(&map.scale * &map.scale)
        * Rat::from_integer(Int::from(10_000i64));
    fmt_hundredths(&round_sqrt(&scaled))
}

/// The 256 exact sample points of the right hyperbola branch
/// `(b + kappa)^2 - c^2 = rhs`, `b + kappa > 0`, covering `0 <= c <=
/// c_max`, as `(b, c)` pairs.
///
/// Parameterization: for `t > 0`, the point `x = (t + rhs/t)/2`,
/// `c = (t - rhs/t)/2` satisfies `x^2 - c^2 = rhs` identically; `t`
/// sweeps from just above `sqrt(rhs)` (the vertex, approached to within
/// `2^-20`) to just past the parameter of height `c_max`.
fn hyperbola_samples(kappa: &Rat, rhs: &Rat, c_max: &Rat) -> Vec<(Rat, Rat)> {
    let denom: Int = Int::from(1i64) << 20;
    let denom_sq = Rat::from_integer(&denom * &denom);
    // t0 >= sqrt(rhs), within 2^-20 above it.
    let t0 = {
        let scaled = rhs * &denom_sq;
        let root = floor_sqrt_rat(&scaled) + 1;
        Rat::new(root, denom.clone())
    };
    // t_max >= c_max + sqrt(c_max^2 + rhs), the parameter of height c_max.
    let t_max = {
        let scaled = &(&(c_max * c_max) + rhs) * &denom_sq;
        let root = floor_sqrt_rat(&scaled) + 1;
        &Rat::new(root, denom) + c_max
    };
    let step = &(&t_max - &t0) / &Rat::from_integer(Int::from(255));
    (0..256)
        .map(|i| {
            let t = &t0 + &(&step * &Rat::from_integer(Int::from(i)));
            let inner = rhs / &t;
            let half = Rat::new(Int::one(), Int::from(2));
            let x = &(&t + &inner) * &half;
            let c = &(&t - &inner) * &half;
            (&x - kappa, c)
        })
        .collect()
}

/// Renders the scene to a standalone SVG 1.1 document.
pub fn render(spec: &RenderSpec, scene: &Scene) -> String {
    let map = PixelMap::new(spec);
    let w = spec.width_px;
    let h = spec.height_px;
    let left = px(&map.x(&spec.b_min));
    let right = px(&map.x(&spec.b_max));
    let top = px(&map.y(&spec.c_max));
    let bottom = px(&map.y(&Rat::zero()));
    let plot_w = px(&(&map.x(&spec.b_max) - &map.x(&spec.b_min)));
    let plot_h = px(&(&map.y(&Rat::zero()) - &map.y(&spec.c_max)));

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    out.push_str(&format!(
        "<desc>wall diagram; pixel map x = {m} + (b - ({bmin})) * {s}, \
         y = {y0} - c * {s}, rationals rounded half-up to 1/100 px at \
         emission</desc>\n",
        m = MARGIN,
        bmin = chamber_core::ratio::format_rat(&map.b_min),
        s = chamber_core::ratio::format_rat(&map.scale),
        y0 = map.y0.to_integer(),
    ));
    out.push_str("<defs>\n");
    out.push_str(&format!(
        "<clipPath id=\"plot\"><rect x=\"{left}\" y=\"{top}\" \
         width=\"{plot_w}\" height=\"{plot_h}\"/></clipPath>\n"
    ));
    if spec.layers.region {
        if let Some(cut) = &scene.region_cut {
            let cut_x = px(&map.x(cut));
            // Width re-derived exactly, not from rounded strings.
            let cut_w = px(&(&map.x(&Rat::zero()) - &map.x(cut)));
            out.push_str(&format!(
                "<clipPath id=\"cut\"><rect x=\"{cut_x}\" y=\"{top}\" \
                 width=\"{cut_w}\" height=\"{plot_h}\"/></clipPath>\n"
            ));
        }
    }
    out.push_str("</defs>\n");
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n"
    ));
    out.push_str("<g clip-path=\"url(#plot)\">\n");

    // Region: the part of the tangent disc right of the cut line.
    if spec.layers.region && scene.region_cut.is_some() {
        if let Some((centre, radius)) = &scene.c_h {
            let cx = px(&map.x(centre));
            let cy = &bottom;
            let r = px(&(radius * &map.scale));
            out.push_str(&format!(
                "<g clip-path=\"url(#cut)\"><circle cx=\"{cx}\" cy=\"{cy}\" \
                 r=\"{r}\" fill=\"#2e8b57\" fill-opacity=\"0.40\" \
                 stroke=\"none\"/></g>\n"
            ));
        }
    }

    // The tangent circle, filled.
    if spec.layers.c_h {
        if let Some((centre, radius)) = &scene.c_h {
            let cx = px(&map.x(centre));
            let r = px(&(radius * &map.scale));
            out.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{bottom}\" r=\"{r}\" \
                 fill=\"#f5c86e\" fill-opacity=\"0.45\" stroke=\"#a87900\" \
                 stroke-width=\"1.5\"/>\n"
            ));
        }
    }

    // Candidate walls, stroked.
    if spec.layers.candidates {
        for (centre, radius_sq) in &scene.candidates {
            let cx = px(&map.x(centre));
            let r = px_radius(&map, radius_sq);
            out.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{bottom}\" r=\"{r}\" fill=\"none\" \
                 stroke=\"#8a2b2b\" stroke-width=\"1\"/>\n"
            ));
        }
    }

    // Right branch of the hyperbola of wall tops.
    if spec.layers.hyperbola {
        if let Some((kappa, rhs)) = &scene.hyperbola {
            let mut points = String::new();
            for (i, (b, c)) in hyperbola_samples(kappa, rhs, &spec.c_max)
                .iter()
                .enumerate()
            {
                if i > 0 {
                    points.push(' ');
                }
                points.push_str(&px(&map.x(b)));
                points.push(',');
                points.push_str(&px(&map.y(c)));
            }
            out.push_str(&format!(
                "<polyline points=\"{points}\" fill=\"none\" \
                 stroke=\"#1f5fa8\" stroke-width=\"1.5\"/>\n"
            ));
        }
    }

    // Vertical wall, dashed.
    if spec.layers.vertical {
        let x = px(&map.x(&scene.vertical_b));
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{top}\" x2=\"{x}\" y2=\"{bottom}\" \
             stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n"
        ));
    }

    out.push_str("</g>\n");
    // The b-axis, on top.
    out.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" \
         stroke=\"#000000\" stroke-width=\"1\"/>\n"
    ));
    out.push_str("</svg>\n");
    out
}

/// Extracts the stroked-candidate data from enumerated wall shapes:
/// semicircles only (walls against the shifted tangent slice always are).
pub fn candidate_circles(walls: &[WallShape]) -> Vec<(Rat, Rat)> {
    walls
        .iter()
        .filter_map(|w| match w {
            WallShape::Semicircle { center, radius_sq } => {
                Some((center.clone(), radius_sq.clone()))
            }
            _ => None,
        })
        .collect()
}
