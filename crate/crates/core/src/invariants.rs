//! Local correction terms at ADE points: the rank-one a-invariant, its
//! reflexive-differentials counterpart, and local/global second Chern classes
//! of `Ω^[1](D)`.
//!
//! Conventions. `c_1(x, D̃) = -(D^s)|_x`. The fractional part entering the
//! rank-one a-invariant is `F = (⌊π^*D⌋ - π^*D)|_x`, so that
//! `a(x, O(D)) = ½ F·(⌊π^*D⌋ - K_X̃)`.

use crate::intersection::{
    canonical_pairing, product_resolution, pullback, strict_transform, QDivisor, Surface,
    SurfaceError, WeilClass,
};
use crate::rational::{frac, int, Rational};

/// Everything computed at one singular point for one divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInvariants {
    pub point: usize,
    pub a_o: Rational,
    pub a_omega: Rational,
    pub c2_local_omega_twisted: Rational,
    /// 1 when `O(D)` is locally free at the point, else 0.
    pub k_summands: u8,
    pub frac_part: QDivisor,
}

fn frac_part_at(surface: &Surface, point: usize, pb: &QDivisor) -> QDivisor {
    let over = surface.point_curves(point);
    (&pb.floor() - pb).restrict(over)
}

fn a_rank1_from_pullback(surface: &Surface, point: usize, pb: &QDivisor) -> Rational {
    let f = frac_part_at(surface, point, pb);
    if f.is_zero() {
        return int(0);
    }
    let floor = pb.floor();
    let pairing = product_resolution(surface, &f, &floor) - canonical_pairing(surface, &f);
    pairing / int(2)
}

fn is_cartier_at(surface: &Surface, point: usize, pb: &QDivisor) -> bool {
    surface
        .point_curves(point)
        .iter()
        .all(|&p| pb.coefficient(p).is_integer())
}

/// `a(x, O(D))` for a quotient singularity.
pub fn a_rank1(surface: &Surface, point: usize, d: &WeilClass) -> Result<Rational, SurfaceError> {
    surface.check_point(point)?;
    Ok(a_rank1_from_pullback(surface, point, &pullback(surface, d)))
}

fn a_omega_from_pullback(surface: &Surface, point: usize, pb: &QDivisor) -> Rational {
    // a(x, O(D + K)) = a(x, O(D)): K_X is Cartier and the resolution crepant.
    let a = a_rank1_from_pullback(surface, point, pb);
    let k = if is_cartier_at(surface, point, pb) {
        1
    } else {
        0
    };
    int(2) * a + frac(1, surface.group_order(point) as i64) - int(k)
}

/// `a(x, Ω^[1](D)) = 2 a(x, O(D)) + 1/|G| - k`.
pub fn a_omega(surface: &Surface, point: usize, d: &WeilClass) -> Result<Rational, SurfaceError> {
    surface.check_point(point)?;
    Ok(a_omega_from_pullback(surface, point, &pullback(surface, d)))
}

fn c2_local_from_pullback(surface: &Surface, point: usize, pb: &QDivisor) -> Rational {
    let c1 = -&pb.restrict(surface.point_curves(point));
    let components = surface.point_curves(point).len() as i64;
    let base = int(1 + components) - frac(1, surface.group_order(point) as i64);
    base + product_resolution(surface, &c1, &c1)
}

/// `c_2(x, Ω¹_X̃(D̃)) = 1 + #components - 1/|G| + c_1(x, D̃)²`.
pub fn c2_local_omega(
    surface: &Surface,
    point: usize,
    d: &WeilClass,
) -> Result<Rational, SurfaceError> {
    surface.check_point(point)?;
    Ok(c2_local_from_pullback(
        surface,
        point,
        &pullback(surface, d),
    ))
}

/// Global `c_2(Ω^[1](D)) = e(X̃) + K_X̃·D̃ + D̃² - Σ_x c_2(x, Ω¹_X̃(D̃))`, with
/// `e(X̃) = 12 - degree`.
pub fn c2_global_omega(surface: &Surface, d: &WeilClass) -> Rational {
    let pb = pullback(surface, d);
    c2_global_from_pullback(surface, d, &pb)
}

pub(crate) fn c2_global_from_pullback(surface: &Surface, d: &WeilClass, pb: &QDivisor) -> Rational {
    let strict = strict_transform(surface, d);
    let euler = int(12 - i64::from(surface.degree()));
    let local: Rational = (0..surface.point_count())
        .map(|x| c2_local_from_pullback(surface, x, pb))
        .sum();
    euler + canonical_pairing(surface, &strict) + product_resolution(surface, &strict, &strict)
        - local
}

/// All local terms for `D` at every singular point, in point order.
pub fn local_invariants(surface: &Surface, d: &WeilClass) -> Vec<LocalInvariants> {
    let pb = pullback(surface, d);
    local_invariants_from_pullback(surface, &pb)
}

pub(crate) fn local_invariants_from_pullback(
    surface: &Surface,
    pb: &QDivisor,
) -> Vec<LocalInvariants> {
    (0..surface.point_count())
        .map(|x| {
            let frac_part = frac_part_at(surface, x, pb);
            LocalInvariants {
                point: x,
                a_o: a_rank1_from_pullback(surface, x, pb),
                a_omega: a_omega_from_pullback(surface, x, pb),
                c2_local_omega_twisted: c2_local_from_pullback(surface, x, pb),
                k_summands: u8::from(frac_part.is_zero()),
                frac_part,
            }
        })
        .collect()
}
