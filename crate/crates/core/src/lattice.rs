//! The Néron–Severi intersection lattice as an explicit integer Gram matrix.
//!
//! A lattice here is a free abelian group of finite rank with a symmetric
//! integer pairing, handed over as an array-of-rows Gram matrix. For the
//! lattice of a smooth projective surface the pairing has signature
//! `(1, rank-1)`; several predicates below are only meaningful under that
//! hypothesis and verify it first.
//!
//! Everything is decided exactly:
//!
//! * [`verify_signature`] diagonalises the pairing by a rational congruence
//!   (symmetric row/column elimination) and counts signs — no eigenvalues,
//!   no floating point.
//! * [`in_positive_cone`] tests `x.x > 0` together with `x.h > 0` against a
//!   fixed ample direction `h`.
//! * [`hodge_inequality_holds`] checks the Hodge index inequality
//!   `(D.H)^2 >= D^2 * H^2`, which holds for every class when the signature
//!   is `(1, rank-1)`.
//! * [`enumerate_ball`] lists every class `M` with `0 < M.x0 <= a` and
//!   `M.M > 0`. Such classes live inside an explicit compact box: writing
//!   `M = proj + perp` for the orthogonal splitting along `x0`, the
//!   positive-definite "flipped" norm `|M|^2 = 2 (M.x0)^2 / x0^2 - M.M` is
//!   at most `2 a^2 / x0^2`, and coordinate bounds for that norm come from
//!   the diagonal of the inverse form. The search refuses to start when the
//!   box exceeds the configured cell cap (see [`crate::budget`]).
//! * [`cone_side`] reports the sign of `(2M - K).h`, the side of the
//!   mid-cone hyperplane a candidate class falls on.
//! * [`negative_semidefinite_span`] decides whether a family of classes
//!   spans a subgroup on which the pairing is negative semidefinite, again
//!   via congruent diagonalisation of the family's Gram matrix.


// Index loops keep the row/column symmetry of congruence operations and
// mirror-entry comparisons legible; iterator forms obscure them.
#![allow(clippy::needless_range_loop)]

use crate::budget::cell_cap;
use crate::ratio::{Int, Rat};
use num_traits::{Signed, ToPrimitive, Zero};

/// Errors from lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    /// A vector's length does not match the lattice rank.
    #[error("vector of length {got} does not match lattice rank {rank}")]
    DimensionMismatch {
        /// Rank of the lattice.
        rank: usize,
        /// Length of the offending vector.
        got: usize,
    },
    /// The Gram matrix is not square or not symmetric.
    #[error("gram matrix is not a symmetric square matrix: {reason}")]
    NotSymmetric {
        /// What failed.
        reason: String,
    },
    /// The reference direction has non-positive square where a positive one
    /// is required.
    #[error("ample proxy has non-positive self-intersection")]
    BadAmpleProxy,
    /// The pairing does not have signature `(1, rank-1)`, so the requested
    /// enumeration bound does not exist.
    #[error("pairing does not have hyperbolic signature (1, rank-1)")]
    NotHyperbolic,
    /// The enumeration box would visit more cells than the configured cap.
    #[error("enumeration box of {cells} cells exceeds the cap of {cap}")]
    BoundTooLarge {
        /// Estimated number of cells.
        cells: u128,
        /// Active cap.
        cap: u64,
    },
}

/// A lattice with a symmetric integer pairing, stored as its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsLattice {
    gram: Vec<Vec<Int>>,
}

impl NsLattice {
    /// Builds a lattice from an array-of-rows Gram matrix, validating that
    /// it is square, non-empty and symmetric.
    pub fn new(gram: Vec<Vec<Int>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 {
            return Err(LatticeError::NotSymmetric {
                reason: "matrix is empty".to_string(),
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::NotSymmetric {
                    reason: format!("row {i} has length {} in a rank-{n} matrix", row.len()),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric {
                        reason: format!("entries ({i},{j}) and ({j},{i}) differ"),
                    });
                }
            }
        }
        Ok(Self { gram })
    }

    /// Convenience constructor from machine integers.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Borrow of the Gram matrix rows.
    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    fn check_vec(&self, x: &[Int]) -> Result<(), LatticeError> {
        if x.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                rank: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// The intersection pairing `x.y` of two classes in coordinates.
pub fn pair(l: &NsLattice, x: &[Int], y: &[Int]) -> Result<Int, LatticeError> {
    l.check_vec(x)?;
    l.check_vec(y)?;
    let mut acc = Int::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            acc += xi * yj * &l.gram[i][j];
        }
    }
    Ok(acc)
}

/// Diagonalises a symmetric rational matrix by a congruence transformation
/// and returns the diagonal entries. The multiset of signs on the diagonal
/// is a congruence invariant (Sylvester), which is all the callers use.
fn congruent_diagonal(mut a: Vec<Vec<Rat>>) -> Vec<Rat> {
    let n = a.len();
    let swap_sym = |a: &mut Vec<Vec<Rat>>, p: usize, q: usize| {
        a.swap(p, q);
        for row in a.iter_mut() {
            row.swap(p, q);
        }
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            // Prefer bringing a nonzero diagonal entry into the pivot slot.
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
            } else {
                // All remaining diagonal entries vanish. If some off-diagonal
                // entry survives, adding its row (and column) onto the pivot
                // row creates the diagonal entry 2*a[k][j] != 0; otherwise the
                // remaining block is zero and the diagonal stays zero.
                let found = (k..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match found {
                    Some((i, j)) => {
                        for col in 0..n {
                            let add = a[j][col].clone();
                            a[i][col] += add;
                        }
                        for row in 0..n {
                            let add = a[row][j].clone();
                            a[row][i] += add;
                        }
                        if i != k {
                            swap_sym(&mut a, k, i);
                        }
                    }
                    None => break,
                }
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for col in 0..n {
                let sub = &f * &a[k][col];
                a[i][col] -= sub;
            }
            for row in 0..n {
                let sub = &f * &a[row][k];
                a[row][i] -= sub;
            }
        }
    }
    (0..n).map(|i| a[i][i].clone()).collect()
}

fn gram_as_rat(l: &NsLattice) -> Vec<Vec<Rat>> {
    l.gram
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect()
}

/// Signs on the diagonal after congruent diagonalisation:
/// `(positives, negatives, zeros)`.
fn signature_counts(l: &NsLattice) -> (usize, usize, usize) {
    let diag = congruent_diagonal(gram_as_rat(l));
    let pos = diag.iter().filter(|v| v.is_positive()).count();
    let neg = diag.iter().filter(|v| v.is_negative()).count();
    (pos, neg, diag.len() - pos - neg)
}

/// True exactly when the pairing is non-degenerate of signature
/// `(1, rank-1)`.
pub fn verify_signature(l: &NsLattice) -> bool {
    let (pos, neg, zero) = signature_counts(l);
    pos == 1 && zero == 0 && neg == l.rank() - 1
}

/// True exactly when `x.x > 0` and `x.h > 0`, i.e. `x` lies in the
/// component of the positive cone containing the ample direction `h`.
/// Requires `h.h > 0`.
pub fn in_positive_cone(l: &NsLattice, x: &[Int], h: &[Int]) -> Result<bool, LatticeError> {
    if !pair(l, h, h)?.is_positive() {
        return Err(LatticeError::BadAmpleProxy);
    }
    Ok(pair(l, x, x)?.is_positive() && pair(l, x, h)?.is_positive())
}

/// The Hodge index inequality `(d.h)^2 >= (d.d)*(h.h)` for a class `d`
/// against a direction `h` with `h.h > 0`. For a pairing of signature
/// `(1, rank-1)` this holds for every `d`.
pub fn hodge_inequality_holds(l: &NsLattice, d: &[Int], h: &[Int]) -> Result<bool, LatticeError> {
    let hh = pair(l, h, h)?;
    if !hh.is_positive() {
        return Err(LatticeError::BadAmpleProxy);
    }
    let dh = pair(l, d, h)?;
    let dd = pair(l, d, d)?;
    Ok(&dh * &dh >= dd * hh)
}

/// Rational matrix inverse by Gauss–Jordan elimination. Returns `None` when
/// the matrix is singular.
fn invert_rat(mut a: Vec<Vec<Rat>>) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::from_integer(Int::from(1))
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let s = &f * &a[col][j];
                a[r][j] -= s;
                let s = &f * &inv[col][j];
                inv[r][j] -= s;
            }
        }
    }
    Some(inv)
}

/// Enumerates every class `M` with `0 < M.x0 <= a` and `M.M > 0`, sorted
/// lexicographically by coordinates.
///
/// Requires the pairing to have signature `(1, rank-1)` and `x0.x0 > 0`;
/// then the set is finite: with `s = M.x0` and the orthogonal splitting
/// `M = (s/x0^2) x0 + perp`, the perpendicular part has `perp.perp <= 0`,
/// so the positive-definite norm `|M|^2 = 2 s^2 / x0^2 - M.M` is bounded by
/// `2 a^2 / x0^2` on the whole set. Coordinates are then bounded through the
/// diagonal of the inverse of that norm's matrix, and the resulting box is
/// scanned exactly. The scan refuses to start — [`LatticeError::BoundTooLarge`]
/// — when the box has more cells than the configured cap.
pub fn enumerate_ball(l: &NsLattice, x0: &[Int], a: &Rat) -> Result<Vec<Vec<Int>>, LatticeError> {
    l.check_vec(x0)?;
    let x0sq = pair(l, x0, x0)?;
    if !x0sq.is_positive() {
        return Err(LatticeError::BadAmpleProxy);
    }
    if !verify_signature(l) {
        return Err(LatticeError::NotHyperbolic);
    }
    if !a.is_positive() {
        return Ok(Vec::new());
    }
    let n = l.rank();
    // g*x0 as a rational column vector; the norm matrix is
    // P = 2 (g x0)(g x0)^T / x0^2 - g, positive definite by the signature.
    let gx0: Vec<Rat> = (0..n)
        .map(|i| {
            let mut acc = Int::zero();
            for (j, xj) in x0.iter().enumerate() {
                acc += &l.gram[i][j] * xj;
            }
            Rat::from_integer(acc)
        })
        .collect();
    let x0sq_rat = Rat::from_integer(x0sq.clone());
    let two = Rat::from_integer(Int::from(2));
    let p: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    &(&(&gx0[i] * &gx0[j]) * &two) / &x0sq_rat
                        - Rat::from_integer(l.gram[i][j].clone())
                })
                .collect()
        })
        .collect();
    let pinv = invert_rat(p.clone()).ok_or(LatticeError::NotHyperbolic)?;
    // Norm bound R = 2 a^2 / x0^2; coordinate bound |m_i| <= sqrt(R * Pinv_ii).
    let r_bound = &(&(a * a) * &two) / &x0sq_rat;
    let mut half_widths: Vec<Int> = Vec::with_capacity(n);
    let mut cells: u128 = 1;
    for i in 0..n {
        let lim = &r_bound * &pinv[i][i];
        if lim.is_negative() {
            return Err(LatticeError::NotHyperbolic);
        }
        let b = crate::ratio::floor_sqrt_rat(&lim);
        let width_int: Int = &b * 2 + 1;
        let width = width_int
            .to_u128()
            .ok_or(LatticeError::BoundTooLarge {
                cells: u128::MAX,
                cap: cell_cap(),
            })?;
        cells = cells.saturating_mul(width);
        half_widths.push(b);
    }
    let cap = cell_cap();
    if cells > cap as u128 {
        return Err(LatticeError::BoundTooLarge { cells, cap });
    }
    // Walk the box in lexicographic order, so the output needs no sort.
    let mut out = Vec::new();
    let mut m: Vec<Int> = half_widths.iter().map(|b| -b.clone()).collect();
    'scan: loop {
        // Exact membership: norm ball, then the degree window, then square.
        let mx0 = pair(l, &m, x0)?;
        if mx0.is_positive() && Rat::from_integer(mx0) <= *a {
            let mm = pair(l, &m, &m)?;
            let mut norm = Rat::zero();
            for (i, mi) in m.iter().enumerate() {
                if mi.is_zero() {
                    continue;
                }
                let mi_rat = Rat::from_integer(mi.clone());
                for (j, mj) in m.iter().enumerate() {
                    if mj.is_zero() {
                        continue;
                    }
                    norm += &(&mi_rat * &Rat::from_integer(mj.clone())) * &p[i][j];
                }
            }
            if norm <= r_bound && mm.is_positive() {
                out.push(m.clone());
            }
        }
        // Lexicographic successor within the box: bump the rightmost
        // coordinate that has room and reset everything after it.
        for i in (0..n).rev() {
            if m[i] < half_widths[i] {
                m[i] += 1;
                for (k, v) in m.iter_mut().enumerate().skip(i + 1) {
                    *v = -half_widths[k].clone();
                }
                continue 'scan;
            }
        }
        break;
    }
    Ok(out)
}

/// Sign of `(2M - K).h`: `+1`, `0` or `-1` according to which side of the
/// mid-cone hyperplane the class `M` falls on relative to `K`.
pub fn cone_side(l: &NsLattice, m: &[Int], k: &[Int], h: &[Int]) -> Result<i32, LatticeError> {
    l.check_vec(m)?;
    l.check_vec(k)?;
    let two_m_minus_k: Vec<Int> = m.iter().zip(k.iter()).map(|(mi, ki)| mi * 2 - ki).collect();
    let v = pair(l, &two_m_minus_k, h)?;
    Ok(if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    })
}

/// Decides whether the pairing restricted to the span of `components` is
/// negative semidefinite: the components' mutual Gram matrix is congruently
/// diagonalised and the verdict is "no positive diagonal entry".
pub fn negative_semidefinite_span(
    l: &NsLattice,
    components: &[Vec<Int>],
) -> Result<bool, LatticeError> {
    if components.is_empty() {
        return Ok(true);
    }
    let k = components.len();
    let mut gram: Vec<Vec<Rat>> = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = Rat::from_integer(pair(l, &components[i], &components[j])?);
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let diag = congruent_diagonal(gram);
    Ok(diag.iter().all(|v| !v.is_positive()))
}
