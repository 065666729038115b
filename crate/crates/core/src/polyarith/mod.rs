//! Exact polynomial algebra: dense univariate polynomials over the
//! rationals and sparse multivariate polynomials over the integers, with
//! resultants and discriminants by fraction-free elimination of the
//! Sylvester matrix, gcd and square-free structure over characteristic 0,
//! and quasi-homogeneity checks.

mod multipoly;
mod unipoly;

pub use multipoly::MultiPoly;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// The ring operations needed by Bareiss elimination. Implemented for the
/// two coefficient domains used here (rationals, integer polynomials);
/// `exact_div` returns `None` when the division leaves a remainder, which
/// inside Bareiss indicates a bug rather than bad input.
pub(crate) trait EliminationRing: Clone {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_exact_div(&self, other: &Self) -> Option<Self>;

    fn ring_sub(&self, other: &Self) -> Self {
        self.ring_add(&other.ring_neg())
    }
}

/// Determinant by the Bareiss fraction-free algorithm. All intermediate
/// divisions are exact over any integral domain (Sylvester's identity), so
/// no fractions appear even for polynomial entries.
pub(crate) fn bareiss_determinant<R: EliminationRing>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if n == 0 {
        // the empty matrix has determinant one; callers use a sample element
        unreachable!("callers handle the empty Sylvester matrix before elimination");
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = m[0][0].ring_one();
    for k in 0..n - 1 {
        if m[k][k].is_ring_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_ring_zero()) else {
                return Ok(m[0][0].ring_zero());
            };
            m.swap(k, pivot);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k]
                    .ring_mul(&m[i][j])
                    .ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = num.ring_exact_div(&prev).ok_or_else(|| {
                    Error::InternalInconsistency(
                        "non-exact division in fraction-free elimination".into(),
                    )
                })?;
            }
            m[i][k] = m[i][k].ring_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.ring_neg() } else { det })
}

/// Resultant of two polynomials given by their coefficient sequences in the
/// eliminated variable, highest degree first, as the determinant of the
/// Sylvester matrix. Both sequences must have a nonzero leading entry.
pub(crate) fn sylvester_resultant<R: EliminationRing>(f: &[R], g: &[R]) -> Result<R> {
    let df = f.len() - 1;
    let dg = g.len() - 1;
    debug_assert!(!f[0].is_ring_zero() && !g[0].is_ring_zero());
    if df == 0 {
        return Ok(ring_pow(&f[0], dg));
    }
    if dg == 0 {
        return Ok(ring_pow(&g[0], df));
    }
    let n = df + dg;
    let zero = f[0].ring_zero();
    let mut m = vec![vec![zero; n]; n];
    for (i, row) in m.iter_mut().take(dg).enumerate() {
        for (j, c) in f.iter().enumerate() {
            row[i + j] = c.clone();
        }
    }
    for (i, row) in m.iter_mut().skip(dg).enumerate() {
        for (j, c) in g.iter().enumerate() {
            row[i + j] = c.clone();
        }
    }
    bareiss_determinant(m)
}

fn ring_pow<R: EliminationRing>(base: &R, exp: usize) -> R {
    let mut acc = base.ring_one();
    for _ in 0..exp {
        acc = acc.ring_mul(base);
    }
    acc
}

/// One parsed term: a rational coefficient and its (variable, exponent) factors.
pub(crate) type ParsedTerm = (num_rational::BigRational, Vec<(String, u32)>);

/// Shared term grammar for polynomial parsing: signed rational coefficients,
/// `^` powers, `*` optional between factors.
pub(crate) fn parse_terms(input: &str) -> Result<Vec<ParsedTerm>> {
    use num_bigint::BigInt;
    use num_traits::One;

    let mut terms = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0usize;

    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    while pos < chars.len() {
        // sign
        let mut negative = false;
        skip_ws(&mut pos);
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                negative = !negative;
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos == chars.len() {
            return Err(Error::Parse("dangling sign".into()));
        }

        let mut coeff = num_rational::BigRational::one();
        let mut factors: Vec<(String, u32)> = Vec::new();
        let mut saw_factor = false;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c == '+' || c == '-' {
                break;
            }
            if c == '*' {
                pos += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let num: BigInt = chars[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad integer: {e}")))?;
                let mut den = BigInt::one();
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(Error::Parse("missing denominator".into()));
                    }
                    den = chars[start..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad denominator: {e}")))?;
                }
                coeff *= num_rational::BigRational::new(num, den);
                saw_factor = true;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = pos;
                while pos < chars.len()
                    && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_')
                {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let mut exp = 1u32;
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(Error::Parse("missing exponent".into()));
                    }
                    exp = chars[start..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
                }
                factors.push((name, exp));
                saw_factor = true;
            } else {
                return Err(Error::Parse(format!("unexpected character {c:?}")));
            }
        }
        if !saw_factor {
            return Err(Error::Parse("empty term".into()));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, factors));
        skip_ws(&mut pos);
    }
    Ok(terms)
}
