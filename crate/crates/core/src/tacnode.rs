//! The versal deformation space of an m-tacnode.
//!
//! The singularity `y (y + x^m) = 0` deforms inside the (2m-1)-dimensional
//! family
//!
//! ```text
//! y^2 + y (x^m + a_{m-2} x^{m-2} + ... + a_0)
//!     + b_{m-1} x^{m-1} + ... + b_0 = 0,
//! ```
//!
//! a double cover of the x-axis branched along the fiber discriminant
//! `(x^m + a_{m-2} x^{m-2} + ... + a_0)^2 - 4 (b_{m-1} x^{m-1} + ... + b_0)`.
//! Nodes of the fiber are the double roots of that discriminant, so the node
//! structure of every deformation reduces to a square-free profile
//! computation. The locus of fibers with m nodes is the linear space b = 0;
//! the fibers with m-1 nodes sweep out a hypersurface inside it whose
//! residual curve through the origin is built from Chebyshev polynomials:
//! scaled copies of the degree-m polynomial of the first kind realize the
//! unique monic deformation splitting off the maximal number of nodes.
//!
//! For m = 2 the discriminant hypersurface is the swallowtail, computed here
//! symbolically together with its cusp locus; both are checked against their
//! closed forms, exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyarith::{MultiPoly, UniPoly};

/// A point of the versal deformation space of the m-tacnode:
/// `alpha = [a_0, ..., a_{m-2}]` and `beta = [b_0, ..., b_{m-1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersalPoint {
    m: u32,
    alpha: Vec<BigRational>,
    beta: Vec<BigRational>,
}

impl VersalPoint {
    pub fn new(m: u32, alpha: Vec<BigRational>, beta: Vec<BigRational>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!("tacnode order must be >= 2, got {m}")));
        }
        if alpha.len() != (m - 1) as usize || beta.len() != m as usize {
            return Err(Error::InvalidInput(format!(
                "versal point of order {m} needs {} alpha and {m} beta coordinates, got {} and {}",
                m - 1,
                alpha.len(),
                beta.len()
            )));
        }
        Ok(VersalPoint { m, alpha, beta })
    }

    /// The origin: the undeformed tacnode.
    pub fn origin(m: u32) -> Result<Self> {
        Self::new(
            m,
            vec![BigRational::zero(); (m - 1) as usize],
            vec![BigRational::zero(); m as usize],
        )
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[BigRational] {
        &self.beta
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.iter().all(Zero::is_zero)
    }
}

/// Double-root structure of a fiber: `double_roots` counts the multiplicity-2
/// roots of the discriminant; when `worse` is set some root has multiplicity
/// at least 3 and the fiber is not nodal, so `double_roots` is not a node
/// count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeProfile {
    pub double_roots: u32,
    pub worse: bool,
}

/// The branch divisor of the fiber over `p` as a double cover of the x-axis:
/// monic of degree 2m with no degree 2m-1 term.
pub fn fiber_discriminant(p: &VersalPoint) -> UniPoly {
    let m = p.m as usize;
    let mut a_coeffs = p.alpha.to_vec();
    a_coeffs.push(BigRational::zero()); // degree m-1 coefficient
    a_coeffs.push(BigRational::one()); // monic of degree m
    let a = UniPoly::new("x", a_coeffs);
    let b = UniPoly::new("x", p.beta.to_vec());
    let four = UniPoly::constant("x", BigRational::from(BigInt::from(4)));
    let delta = a.mul(&a).sub(&four.mul(&b));
    debug_assert_eq!(delta.degree(), Some(2 * m));
    debug_assert!(delta.leading_coeff().is_one());
    debug_assert!(delta.coeff(2 * m - 1).is_zero());
    delta
}

/// Node structure of the fiber over `p`, read off the square-free profile of
/// its discriminant.
pub fn node_profile(p: &VersalPoint) -> NodeProfile {
    profile_of(&fiber_discriminant(p))
}

fn profile_of(delta: &UniPoly) -> NodeProfile {
    let parts = delta
        .squarefree_profile()
        .expect("fiber discriminant is monic, never zero");
    let double_roots = parts
        .iter()
        .filter(|&&(mult, _)| mult == 2)
        .map(|&(_, deg)| deg as u32)
        .sum();
    let worse = parts.iter().any(|&(mult, _)| mult >= 3);
    NodeProfile { double_roots, worse }
}

/// The four Chebyshev families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
    Third,
    Fourth,
}

impl ChebyshevKind {
    pub fn from_letter(letter: &str) -> Result<Self> {
        match letter {
            "T" | "t" => Ok(Self::First),
            "U" | "u" => Ok(Self::Second),
            "V" | "v" => Ok(Self::Third),
            "W" | "w" => Ok(Self::Fourth),
            other => Err(Error::Parse(format!("unknown Chebyshev kind {other:?}"))),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Self::First => "T",
            Self::Second => "U",
            Self::Third => "V",
            Self::Fourth => "W",
        }
    }

    fn seed(self) -> UniPoly {
        match self {
            Self::First => UniPoly::from_ints("x", &[0, 1]),
            Self::Second => UniPoly::from_ints("x", &[0, 2]),
            Self::Third => UniPoly::from_ints("x", &[-1, 2]),
            Self::Fourth => UniPoly::from_ints("x", &[1, 2]),
        }
    }
}

impl fmt::Display for ChebyshevKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The n-th Chebyshev polynomial of the requested kind, by the common
/// recurrence `P_{n+1} = 2x P_n - P_{n-1}` from `P_0 = 1` and the kind's
/// degree-one seed.
pub fn chebyshev(kind: ChebyshevKind, n: u32) -> UniPoly {
    let one = UniPoly::from_ints("x", &[1]);
    if n == 0 {
        return one;
    }
    let two_x = UniPoly::from_ints("x", &[0, 2]);
    let mut prev = one;
    let mut curr = kind.seed();
    for _ in 1..n {
        let next = two_x.mul(&curr).sub(&prev);
        prev = curr;
        curr = next;
    }
    curr
}

fn rat_pow(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Exact n-th root of a rational, if it exists.
fn rational_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let numer = x.numer().abs();
    let denom = x.denom().clone();
    let rn = numer.nth_root(n);
    let rd = denom.nth_root(n);
    if rn.pow(n) != numer || rd.pow(n) != denom {
        return None;
    }
    let sign = if x.is_negative() { -rn } else { rn };
    Some(BigRational::new(sign, rd))
}

/// The scaled degree-m Chebyshev model: for a scale `s` (the square of the
/// substitution parameter), the monic polynomial with coefficients
/// `2^{1-m} [T_m]_{2h+eps} s^{l-h}` at the surviving degrees, where
/// `m = 2l + eps`. Returns the alpha coordinates `[c_0, ..., c_{m-2}]`.
fn chebyshev_alpha(m: u32, s: &BigRational) -> Vec<BigRational> {
    let t_m = chebyshev(ChebyshevKind::First, m);
    let l = m / 2;
    let eps = m % 2;
    let scale = BigRational::new(BigInt::one(), BigInt::from(2).pow(m - 1));
    let mut alpha = vec![BigRational::zero(); (m - 1) as usize];
    for h in 0..l {
        let degree = (2 * h + eps) as usize;
        alpha[degree] = &scale * t_m.coeff(degree) * rat_pow(s, l - h);
    }
    alpha
}

fn alpha_poly(m: u32, alpha: &[BigRational]) -> UniPoly {
    let mut coeffs = alpha.to_vec();
    coeffs.push(BigRational::zero());
    coeffs.push(BigRational::one());
    debug_assert_eq!(coeffs.len(), m as usize + 1);
    UniPoly::new("x", coeffs)
}

/// The monic degree-m polynomial `nu` with no degree m-1 term such that
/// `nu + gamma` and `nu - gamma` have the maximal number of double roots:
/// for odd m both have (m-1)/2, for even m they have m/2 and m/2 - 1. It is
/// the rescaled Chebyshev polynomial `u^m 2^{1-m} T_m(x/u)` with
/// `u^m = 2^{m-1} gamma`; the coefficients only involve even powers of `u`,
/// so they are rational as soon as `s = u^2` is, which is what the
/// precondition requires of `gamma`.
pub fn nu_gamma(m: u32, gamma: &BigRational) -> Result<UniPoly> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("tacnode order must be >= 2, got {m}")));
    }
    if gamma.is_zero() {
        return Err(Error::InvalidInput("gamma must be nonzero".into()));
    }
    let target = BigRational::from(BigInt::from(2).pow(m - 1)) * gamma;
    let l = m / 2;
    let s = if m % 2 == 1 {
        // odd m: the substitution parameter u itself must be rational
        let u = rational_nth_root(&target, m).ok_or_else(|| no_scaling(m, gamma))?;
        &u * &u
    } else {
        // even m: only s = u^2 must be rational, with s^l = 2^{m-1} gamma
        rational_nth_root(&target, l).ok_or_else(|| no_scaling(m, gamma))?
    };
    let alpha = chebyshev_alpha(m, &s);
    let nu = alpha_poly(m, &alpha);

    // c_{m-2} is a nonzero multiple of s
    if alpha[(m - 2) as usize].is_zero() {
        return Err(Error::InternalInconsistency(
            "subleading coefficient of the Chebyshev model vanished".into(),
        ));
    }
    verify_max_double_roots(m, &nu, gamma)?;
    Ok(nu)
}

fn no_scaling(m: u32, gamma: &BigRational) -> Error {
    Error::NonRationalScaling {
        m,
        gamma: gamma.to_string(),
        hint: format!(
            "need a rational solution of u^{m} = 2^{} * gamma (u^2 rational suffices for even m); \
             try gamma of the form u^{m} / 2^{}",
            m - 1,
            m - 1
        ),
    }
}

/// Checks the double-root pattern of `nu +- gamma` demanded of the model.
fn verify_max_double_roots(m: u32, nu: &UniPoly, gamma: &BigRational) -> Result<()> {
    let l = m / 2;
    let gamma_poly = UniPoly::constant("x", gamma.clone());
    let plus = profile_of(&nu.add(&gamma_poly));
    let minus = profile_of(&nu.sub(&gamma_poly));
    let expected = if m % 2 == 1 { (l, l) } else { (l, l - 1) };
    let ok = !plus.worse
        && !minus.worse
        && (plus.double_roots, minus.double_roots) == expected;
    if !ok {
        return Err(Error::InternalInconsistency(format!(
            "Chebyshev model at order {m}: expected double-root counts {expected:?}, \
             got ({}, {}) worse=({}, {})",
            plus.double_roots, minus.double_roots, plus.worse, minus.worse
        )));
    }
    Ok(())
}

/// The point of the one-parameter smoothing curve at parameter `t`: the
/// deformation of the m-tacnode into m-1 nodes, inside the slice
/// `b_1 = ... = b_{m-1} = 0`.
///
/// The parametrization substitutes `s = u^2 = 2t` into the Chebyshev model,
/// which keeps every coordinate rational for rational `t`: the alpha
/// coordinates scale as `t^{l-h}` and `b_0 = (t/2)^m` vanishes to order
/// exactly m in t, which is the contact order of the curve with the m-node
/// locus b = 0. For t = 0 this is the origin; for t != 0 the fiber has
/// exactly m-1 nodes.
pub fn psi_point(m: u32, t: &BigRational) -> Result<VersalPoint> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("tacnode order must be >= 2, got {m}")));
    }
    let s = BigRational::from(BigInt::from(2)) * t;
    let alpha = chebyshev_alpha(m, &s);
    let half_t = t / BigRational::from(BigInt::from(2));
    let mut beta = vec![BigRational::zero(); m as usize];
    beta[0] = rat_pow(&half_t, m);
    VersalPoint::new(m, alpha, beta)
}

const SWALLOWTAIL_VARS: &[&str] = &["a0", "b0", "b1"];

/// The discriminant hypersurface of the 2-tacnode deformation space,
/// computed symbolically as `Disc_x((x^2 + a0)^2 - 4 (b1 x + b0))` and
/// checked monomial by monomial against its closed form
/// `256 (16 a0^3 b1^2 + 16 a0^2 b0^2 - 72 a0 b0 b1^2 - 27 b1^4 - 64 b0^3)`.
pub fn swallowtail() -> Result<MultiPoly> {
    let vars = &["x", "a0", "b0", "b1"];
    let x = MultiPoly::var(vars, "x");
    let a0 = MultiPoly::var(vars, "a0");
    let b0 = MultiPoly::var(vars, "b0");
    let b1 = MultiPoly::var(vars, "b1");
    let four = MultiPoly::constant(vars, 4);
    let f = x
        .pow(2)
        .add(&a0)
        .pow(2)
        .sub(&four.mul(&b1.mul(&x).add(&b0)));
    let disc = f.discriminant("x")?;
    let disc = disc.without_var("x").ok_or_else(|| {
        Error::InternalInconsistency("eliminated variable survived the discriminant".into())
    })?;
    let expected = MultiPoly::parse(
        SWALLOWTAIL_VARS,
        "4096*a0^3*b1^2 + 4096*a0^2*b0^2 - 18432*a0*b0*b1^2 - 6912*b1^4 - 16384*b0^3",
    )
    .expect("closed form parses");
    if disc != expected {
        return Err(Error::InternalInconsistency(format!(
            "swallowtail mismatch: computed {disc}, expected {expected}"
        )));
    }
    Ok(disc)
}

/// Verifies the cusp locus of the swallowtail: under the substitution
/// `a0 = -3u^2, b0 = 3u^4, b1 = -2u^3` both generators `a0^2 - 3 b0` and
/// `4 a0^3 + 27 b1^2` vanish identically in u, and at sample parameter
/// values the evaluated generators vanish as integers.
pub fn cusp_locus_verify() -> bool {
    let g1 = MultiPoly::parse(SWALLOWTAIL_VARS, "a0^2 - 3*b0").expect("parses");
    let g2 = MultiPoly::parse(SWALLOWTAIL_VARS, "4*a0^3 + 27*b1^2").expect("parses");

    let uvar = &["u"];
    let a0 = MultiPoly::parse(uvar, "-3*u^2").expect("parses");
    let b0 = MultiPoly::parse(uvar, "3*u^4").expect("parses");
    let b1 = MultiPoly::parse(uvar, "-2*u^3").expect("parses");
    let subs: &[(&str, &MultiPoly)] = &[("a0", &a0), ("b0", &b0), ("b1", &b1)];

    let symbolic = g1.substitute(uvar, subs).is_zero() && g2.substitute(uvar, subs).is_zero();

    let samples = [0i64, 1, -1, 2, -3].into_iter().all(|u| {
        let point: &[(&str, i64)] = &[("a0", -3 * u * u), ("b0", 3 * u.pow(4)), ("b1", -2 * u.pow(3))];
        g1.eval_ints(point).is_zero() && g2.eval_ints(point).is_zero()
    });

    symbolic && samples
}

/// Outcome of one polynomial identity check.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// Difference between the two sides when the identity fails.
    pub residual: Option<UniPoly>,
}

/// Report of the factorization identities of `T_m +- 1` at split index l.
#[derive(Debug, Clone)]
pub struct ChebyshevReport {
    pub l: u32,
    pub checks: Vec<IdentityCheck>,
}

impl ChebyshevReport {
    pub fn all_corrected_hold(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.name.contains("as printed"))
            .all(|c| c.holds)
    }
}

fn check_identity(name: impl Into<String>, lhs: &UniPoly, rhs: &UniPoly) -> IdentityCheck {
    let residual = lhs.sub(rhs);
    IdentityCheck {
        name: name.into(),
        holds: residual.is_zero(),
        residual: if residual.is_zero() { None } else { Some(residual) },
    }
}

/// Verifies the four factorizations of `T_m +- 1` for `m = 2l` and
/// `m = 2l + 1`:
///
/// ```text
/// T_{2l}   + 1 = 2 T_l^2
/// T_{2l}   - 1 = 2 (x^2 - 1) U_{l-1}^2
/// T_{2l+1} + 1 = (x + 1) V_l^2
/// T_{2l+1} - 1 = (x - 1) W_l^2
/// ```
///
/// The second identity is sometimes quoted with `U_l` in place of `U_{l-1}`;
/// the degrees already cannot match, and the report includes that variant so
/// the failure is on record next to the identity that holds.
pub fn chebyshev_identity_check(l: u32) -> Result<ChebyshevReport> {
    if l < 1 {
        return Err(Error::InvalidInput("identity check needs l >= 1".into()));
    }
    let one = UniPoly::from_ints("x", &[1]);
    let two = UniPoly::from_ints("x", &[2]);
    let x_plus = UniPoly::from_ints("x", &[1, 1]);
    let x_minus = UniPoly::from_ints("x", &[-1, 1]);
    let x2_minus = UniPoly::from_ints("x", &[-1, 0, 1]);

    let t_even = chebyshev(ChebyshevKind::First, 2 * l);
    let t_odd = chebyshev(ChebyshevKind::First, 2 * l + 1);
    let t_l = chebyshev(ChebyshevKind::First, l);
    let u_lm1 = chebyshev(ChebyshevKind::Second, l - 1);
    let u_l = chebyshev(ChebyshevKind::Second, l);
    let v_l = chebyshev(ChebyshevKind::Third, l);
    let w_l = chebyshev(ChebyshevKind::Fourth, l);

    let checks = vec![
        check_identity(
            format!("T_{} + 1 = 2 T_{}^2", 2 * l, l),
            &t_even.add(&one),
            &two.mul(&t_l.pow(2)),
        ),
        check_identity(
            format!("T_{} + 1 = (x+1) V_{}^2", 2 * l + 1, l),
            &t_odd.add(&one),
            &x_plus.mul(&v_l.pow(2)),
        ),
        check_identity(
            format!("T_{} - 1 = (x-1) W_{}^2", 2 * l + 1, l),
            &t_odd.sub(&one),
            &x_minus.mul(&w_l.pow(2)),
        ),
        check_identity(
            format!("T_{} - 1 = 2 (x^2-1) U_{}^2", 2 * l, l - 1),
            &t_even.sub(&one),
            &two.mul(&x2_minus).mul(&u_lm1.pow(2)),
        ),
        check_identity(
            format!("T_{} - 1 = 2 (x^2-1) U_{}^2 (as printed)", 2 * l, l),
            &t_even.sub(&one),
            &two.mul(&x2_minus).mul(&u_l.pow(2)),
        ),
    ];
    Ok(ChebyshevReport { l, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn point(m: u32, alpha: &[(i64, i64)], beta: &[(i64, i64)]) -> VersalPoint {
        VersalPoint::new(
            m,
            alpha.iter().map(|&(n, d)| rat(n, d)).collect(),
            beta.iter().map(|&(n, d)| rat(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn chebyshev_tables() {
        let t: Vec<UniPoly> = (0..=4).map(|n| chebyshev(ChebyshevKind::First, n)).collect();
        assert_eq!(t[0], UniPoly::from_ints("x", &[1]));
        assert_eq!(t[1], UniPoly::from_ints("x", &[0, 1]));
        assert_eq!(t[2], UniPoly::from_ints("x", &[-1, 0, 2]));
        assert_eq!(t[3], UniPoly::from_ints("x", &[0, -3, 0, 4]));
        assert_eq!(t[4], UniPoly::from_ints("x", &[1, 0, -8, 0, 8]));

        let u: Vec<UniPoly> = (0..=4).map(|n| chebyshev(ChebyshevKind::Second, n)).collect();
        assert_eq!(u[0], UniPoly::from_ints("x", &[1]));
        assert_eq!(u[2], UniPoly::from_ints("x", &[-1, 0, 4]));
        assert_eq!(u[4], UniPoly::from_ints("x", &[1, 0, -12, 0, 16]));

        let v: Vec<UniPoly> = (0..=4).map(|n| chebyshev(ChebyshevKind::Third, n)).collect();
        assert_eq!(v[1], UniPoly::from_ints("x", &[-1, 2]));
        assert_eq!(v[2], UniPoly::from_ints("x", &[-1, -2, 4]));
        assert_eq!(v[3], UniPoly::from_ints("x", &[1, -4, -4, 8]));
        assert_eq!(v[4], UniPoly::from_ints("x", &[1, 4, -12, -8, 16]));

        let w: Vec<UniPoly> = (0..=4).map(|n| chebyshev(ChebyshevKind::Fourth, n)).collect();
        assert_eq!(w[1], UniPoly::from_ints("x", &[1, 2]));
        assert_eq!(w[2], UniPoly::from_ints("x", &[-1, 2, 4]));
        assert_eq!(w[3], UniPoly::from_ints("x", &[-1, -4, 4, 8]));
        assert_eq!(w[4], UniPoly::from_ints("x", &[1, -4, -12, 8, 16]));
    }

    #[test]
    fn third_and_fourth_kind_reflection() {
        // W_m(x) = (-1)^m V_m(-x); the variant without the reflection fails
        // already at m = 1.
        for m in 0..=10u32 {
            let w = chebyshev(ChebyshevKind::Fourth, m);
            let v = chebyshev(ChebyshevKind::Third, m).reflect();
            let signed = if m % 2 == 1 { v.neg() } else { v };
            assert_eq!(w, signed, "reflection relation fails at m = {m}");
        }
        let w1 = chebyshev(ChebyshevKind::Fourth, 1);
        let v1 = chebyshev(ChebyshevKind::Third, 1);
        assert_ne!(w1, v1.neg());
    }

    #[test]
    fn fiber_discriminant_examples() {
        let tacnode = point(2, &[(0, 1)], &[(0, 1), (0, 1)]);
        assert_eq!(fiber_discriminant(&tacnode), UniPoly::from_ints("x", &[0, 0, 0, 0, 1]));

        let two_nodes = point(2, &[(-1, 1)], &[(0, 1), (0, 1)]);
        assert_eq!(
            fiber_discriminant(&two_nodes),
            UniPoly::from_ints("x", &[1, 0, -2, 0, 1])
        );

        let one_node = point(2, &[(-1, 2)], &[(1, 16), (0, 1)]);
        assert_eq!(
            fiber_discriminant(&one_node),
            UniPoly::from_ints("x", &[0, 0, -1, 0, 1])
        );
    }

    #[test]
    fn node_profile_examples() {
        let two_nodes = point(2, &[(-1, 1)], &[(0, 1), (0, 1)]);
        assert_eq!(node_profile(&two_nodes), NodeProfile { double_roots: 2, worse: false });

        let one_node = point(2, &[(-1, 2)], &[(1, 16), (0, 1)]);
        assert_eq!(node_profile(&one_node), NodeProfile { double_roots: 1, worse: false });

        let tacnode = VersalPoint::origin(2).unwrap();
        assert_eq!(node_profile(&tacnode), NodeProfile { double_roots: 0, worse: true });
    }

    #[test]
    fn beta_zero_iff_square_discriminant() {
        // with beta = 0 the discriminant is a perfect square: every root has
        // even multiplicity; with generic alpha, exactly m double roots
        for m in 2..=4u32 {
            for seed in 0..6i64 {
                let alpha: Vec<BigRational> =
                    (0..m - 1).map(|i| rat(seed - 2 * i64::from(i) - 3, 1 + i64::from(i))).collect();
                let beta0 = vec![BigRational::zero(); m as usize];
                let p = VersalPoint::new(m, alpha.clone(), beta0).unwrap();
                let profile = node_profile(&p);
                let all_even = fiber_discriminant(&p)
                    .squarefree_profile()
                    .unwrap()
                    .iter()
                    .all(|&(mult, _)| mult % 2 == 0);
                assert!(all_even, "square discriminant must have even multiplicities");
                assert!(
                    profile.worse || profile.double_roots == m,
                    "m={m} seed={seed}: expected {m} nodes or worse, got {profile:?}"
                );

                // generic nonzero beta destroys the perfect square
                let mut beta = vec![BigRational::zero(); m as usize];
                beta[0] = rat(7 + seed, 5);
                let q = VersalPoint::new(m, alpha, beta).unwrap();
                let odd_part_exists = fiber_discriminant(&q)
                    .squarefree_profile()
                    .unwrap()
                    .iter()
                    .any(|&(mult, _)| mult % 2 == 1);
                assert!(odd_part_exists, "m={m} seed={seed}: unexpected perfect square");
            }
        }
    }

    #[test]
    fn nu_gamma_examples() {
        let nu = nu_gamma(2, &rat(1, 1)).unwrap();
        assert_eq!(nu, UniPoly::from_ints("x", &[-1, 0, 1]));

        let nu = nu_gamma(3, &rat(1, 4)).unwrap();
        assert_eq!(nu, UniPoly::new("x", vec![rat(0, 1), rat(-3, 4), rat(0, 1), rat(1, 1)]));

        let nu = nu_gamma(2, &rat(1, 2)).unwrap();
        assert_eq!(nu, UniPoly::new("x", vec![rat(-1, 2), rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn nu_gamma_rejects_irrational_scaling() {
        let err = nu_gamma(3, &rat(1, 1)).unwrap_err();
        assert!(matches!(err, Error::NonRationalScaling { .. }));
    }

    #[test]
    fn nu_gamma_profiles_across_orders() {
        // orders with admissible rational gamma: u = 1 gives gamma = 2^{1-m}
        for m in 2..=6u32 {
            let gamma = BigRational::new(BigInt::one(), BigInt::from(2).pow(m - 1));
            let nu = nu_gamma(m, &gamma).unwrap();
            assert_eq!(nu.degree(), Some(m as usize));
            assert!(nu.leading_coeff().is_one());
            assert!(nu.coeff(m as usize - 1).is_zero());
        }
    }

    #[test]
    fn psi_point_examples() {
        let p = psi_point(2, &rat(1, 1)).unwrap();
        assert_eq!(p.alpha(), &[rat(-1, 1)]);
        assert_eq!(p.beta(), &[rat(1, 4), rat(0, 1)]);
        assert_eq!(
            fiber_discriminant(&p),
            UniPoly::from_ints("x", &[0, 0, -2, 0, 1])
        );
        assert_eq!(node_profile(&p), NodeProfile { double_roots: 1, worse: false });

        for m in 2..=5 {
            let origin = psi_point(m, &BigRational::zero()).unwrap();
            assert_eq!(origin, VersalPoint::origin(m).unwrap());
        }

        let p = psi_point(3, &rat(1, 1)).unwrap();
        assert_eq!(node_profile(&p), NodeProfile { double_roots: 2, worse: false });
    }

    #[test]
    fn psi_point_smoothing_grid() {
        let params = [rat(1, 1), rat(1, 2), rat(2, 1), rat(-1, 1)];
        for m in 2..=5u32 {
            for t in &params {
                let p = psi_point(m, t).unwrap();
                let profile = node_profile(&p);
                assert_eq!(
                    profile,
                    NodeProfile { double_roots: m - 1, worse: false },
                    "smoothing fails at m={m}, t={t}"
                );
                // b_0 = (t/2)^m: vanishing of order exactly m in t
                let half_t = t / BigRational::from(BigInt::from(2));
                assert_eq!(p.beta()[0], rat_pow(&half_t, m));
                assert!(p.beta()[1..].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn swallowtail_closed_form() {
        let s = swallowtail().unwrap();
        assert_eq!(s.num_terms(), 5);
        assert_eq!(s.coefficient(&[3, 0, 2]), BigInt::from(4096));
        assert_eq!(s.coefficient(&[2, 2, 0]), BigInt::from(4096));
        assert_eq!(s.coefficient(&[1, 1, 2]), BigInt::from(-18432));
        assert_eq!(s.coefficient(&[0, 0, 4]), BigInt::from(-6912));
        assert_eq!(s.coefficient(&[0, 3, 0]), BigInt::from(-16384));
        assert_eq!(s.quasi_degree(&[("a0", 2), ("b0", 4), ("b1", 3)]), Some(12));
        // the two-node fiber (a0, b0, b1) = (-1, 0, 0) lies on the surface
        assert!(s.eval_ints(&[("a0", -1), ("b0", 0), ("b1", 0)]).is_zero());
    }

    #[test]
    fn cusp_locus_holds() {
        assert!(cusp_locus_verify());
    }

    #[test]
    fn chebyshev_identities_small_l() {
        let report = chebyshev_identity_check(1).unwrap();
        assert!(report.all_corrected_hold());
        // T_2 + 1 = 2 T_1^2 = 2x^2
        assert!(report.checks[0].holds);
        // T_3 - 1 = (x-1) W_1^2 = (x-1)(2x+1)^2 = 4x^3 - 3x - 1
        assert!(report.checks[2].holds);
        assert_eq!(
            chebyshev(ChebyshevKind::First, 3).sub(&UniPoly::from_ints("x", &[1])),
            UniPoly::from_ints("x", &[-1, -3, 0, 4])
        );
        // the uncorrected index leaves a nonzero residual
        let printed = report
            .checks
            .iter()
            .find(|c| c.name.contains("as printed"))
            .unwrap();
        assert!(!printed.holds);
        assert!(printed.residual.is_some());
    }

    #[test]
    fn squared_chebyshev_double_roots() {
        // T_m^2 - 1 has exactly m-1 double roots
        let one = UniPoly::from_ints("x", &[1]);
        for m in 2..=10u32 {
            let t = chebyshev(ChebyshevKind::First, m);
            let f = t.pow(2).sub(&one);
            let profile = profile_of(&f);
            assert_eq!(
                (profile.double_roots, profile.worse),
                (m - 1, false),
                "T_{m}^2 - 1"
            );
        }
    }
}
