//! Closed-form degrees of the singular loci of the dual of a general
//! surface in 3-space, the degeneration identity for dual degrees, and the
//! triple point balancing check for normal-crossing central fibres.

use crate::error::{Error, Result};

/// Degrees attached to a general degree-d surface in 3-space: its dual
/// surface, the bitangent and cuspidal curves of the dual, the parabolic
/// curve on the surface, and the number of triple points of the dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SalmonDegrees {
    pub dual: i64,
    pub bitangent_curve: i64,
    pub cuspidal_curve: i64,
    pub parabolic_curve: i64,
    pub triple_points: i64,
}

/// Salmon's formulas for a general degree-d surface, exact integer
/// arithmetic; the 1/2 and 1/6 prefactors are checked to divide exactly.
///
/// ```text
/// dual          = d (d-1)^2
/// bitangent     = 1/2 d (d-1) (d-2) (d^3 - d^2 + d - 12)
/// cuspidal      = 4 d (d-1) (d-2)
/// parabolic     = 4 d (d-2)
/// triple points = 1/6 d (d-2) (d^7 - 4d^6 + 7d^5 - 45d^4 + 114d^3
///                              - 111d^2 + 548d - 960)
/// ```
pub fn salmon(d: i64) -> Result<SalmonDegrees> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("salmon requires d >= 2, got {d}")));
    }
    let dual = d * (d - 1) * (d - 1);
    let bitangent_num = d * (d - 1) * (d - 2) * (d * d * d - d * d + d - 12);
    if bitangent_num % 2 != 0 {
        return Err(Error::InternalInconsistency(
            "bitangent degree not divisible by 2".into(),
        ));
    }
    let cuspidal = 4 * d * (d - 1) * (d - 2);
    let parabolic = 4 * d * (d - 2);
    let septic = d.pow(7) - 4 * d.pow(6) + 7 * d.pow(5) - 45 * d.pow(4) + 114 * d.pow(3)
        - 111 * d.pow(2)
        + 548 * d
        - 960;
    let triple_num = d * (d - 2) * septic;
    if triple_num % 6 != 0 {
        return Err(Error::InternalInconsistency(
            "triple point count not divisible by 6".into(),
        ));
    }
    Ok(SalmonDegrees {
        dual,
        bitangent_curve: bitangent_num / 2,
        cuspidal_curve: cuspidal,
        parabolic_curve: parabolic,
        triple_points: triple_num / 6,
    })
}

/// Degenerating a general degree-d surface to a union of general surfaces of
/// degrees h and d-h, the limit of the dual surface decomposes into the two
/// component duals, the dual of the intersection curve with multiplicity 2,
/// and one plane per intersection point with a general member of the pencil.
/// The degrees must add up to `d (d-1)^2`; this check doubles as a
/// regression test on the closed forms. For h = 1 the plane's dual is a
/// point and drops out, and the intersection curve is plane of degree d-1,
/// so the tally changes shape.
pub fn limit_dual_check(d: i64, h: i64) -> Result<(i64, i64, bool)> {
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "limit_dual_check requires d >= 2, got {d}"
        )));
    }
    if h < 1 || h > d - 1 {
        return Err(Error::InvalidInput(format!(
            "limit_dual_check requires 1 <= h <= d-1, got h = {h}"
        )));
    }
    let lhs = if h >= 2 {
        h * (h - 1) * (h - 1)
            + (d - h) * (d - h - 1) * (d - h - 1)
            + 2 * h * (d - h) * (d - 2)
            + d * h * (d - h)
    } else {
        (d - 1) * (d - 2) * (d - 2) + d * (d - 1) + 2 * (d - 1) * (d - 2)
    };
    let rhs = d * (d - 1) * (d - 1);
    Ok((lhs, rhs, lhs == rhs))
}

/// Data along one double curve B of a central fibre with simple normal
/// crossing support: the multiplicities of the two components through B,
/// the degrees of the normal bundles of B inside each, and for every other
/// component its multiplicity and its number of intersection points with B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCConfig {
    pub m: i64,
    pub m_prime: i64,
    pub self_q: i64,
    pub self_q_prime: i64,
    pub others: Vec<(i64, i64)>,
}

/// The triple point formula: along a double curve the weighted normal
/// degrees and the triple point contributions balance,
/// `m' B_Q^2 + m B_{Q'}^2 + sum mult(Q'') card(B . Q'') = 0`.
/// Returns the residual and whether it vanishes.
pub fn triple_point_check(cfg: &NCConfig) -> (i64, bool) {
    let residual = cfg.m_prime * cfg.self_q
        + cfg.m * cfg.self_q_prime
        + cfg
            .others
            .iter()
            .map(|&(mult, card)| mult * card)
            .sum::<i64>();
    (residual, residual == 0)
}
