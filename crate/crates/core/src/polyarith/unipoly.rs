//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_terms, sylvester_resultant, EliminationRing};
use crate::error::{Error, Result};

impl EliminationRing for BigRational {
    fn ring_zero(&self) -> Self {
        BigRational::zero()
    }
    fn ring_one(&self) -> Self {
        BigRational::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
}

/// A univariate polynomial with exact rational coefficients, stored densely
/// lowest degree first with a nonzero leading coefficient (or empty for the
/// zero polynomial).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var: var.into(), coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest first.
    pub fn from_ints(var: impl Into<String>, coeffs: &[i64]) -> Self {
        Self::new(
            var,
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(var: impl Into<String>) -> Self {
        UniPoly { var: var.into(), coeffs: Vec::new() }
    }

    pub fn constant(var: impl Into<String>, c: BigRational) -> Self {
        Self::new(var, vec![c])
    }

    pub fn monomial(var: impl Into<String>, coeff: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(var, coeffs)
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_var(&self, other: &UniPoly) {
        assert_eq!(
            self.var, other.var,
            "univariate arithmetic requires a common variable"
        );
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.var.clone(),
            (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var.clone());
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(self.var.clone(), coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(
            self.var.clone(),
            self.coeffs.iter().map(|k| k * c).collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> UniPoly {
        let mut acc = UniPoly::constant(self.var.clone(), BigRational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// The polynomial `f(-x)`.
    pub fn reflect(&self) -> UniPoly {
        UniPoly::new(
            self.var.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.var.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check_var(divisor);
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial("division by the zero polynomial".into()));
        }
        let dd = divisor.degree().expect("nonzero");
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / &lc;
            if !factor.is_zero() {
                quot[k - dd] = factor.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    rem[idx] = &rem[idx] - &(c * &factor);
                }
            }
            rem.pop();
        }
        Ok((
            UniPoly::new(self.var.clone(), quot),
            UniPoly::new(self.var.clone(), rem),
        ))
    }

    /// Rescales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Monic greatest common divisor over the rationals.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_var(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd(0, 0) is undefined".into()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Yun's square-free decomposition: returns `(multiplicity, degree of
    /// the multiplicity-m part)` for each multiplicity that occurs, in
    /// increasing order of multiplicity. The degrees weighted by their
    /// multiplicities add up to `deg f`.
    pub fn squarefree_profile(&self) -> Result<Vec<(u32, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial(
                "square-free profile of the zero polynomial".into(),
            ));
        }
        let f = self.monic();
        let fd = f.derivative();
        if fd.is_zero() {
            // constant polynomial
            return Ok(Vec::new());
        }
        let g = f.gcd(&fd)?;
        let mut c = f.div_rem(&g)?.0;
        let mut d = fd.div_rem(&g)?.0.sub(&c.derivative());
        let mut out = Vec::new();
        let mut mult = 1u32;
        loop {
            if c.degree() == Some(0) {
                break;
            }
            let a = c.gcd(&d)?;
            if let Some(deg) = a.degree() {
                if deg > 0 {
                    out.push((mult, deg));
                }
            }
            c = c.div_rem(&a)?.0;
            d = d.div_rem(&a)?.0.sub(&c.derivative());
            mult += 1;
        }
        debug_assert_eq!(
            out.iter().map(|&(m, d)| m as usize * d).sum::<usize>(),
            self.degree().expect("nonzero"),
            "square-free parts must account for the whole degree"
        );
        Ok(out)
    }

    /// Sylvester resultant with respect to the common variable.
    pub fn resultant(&self, other: &UniPoly) -> Result<BigRational> {
        self.check_var(other);
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("resultant of the zero polynomial".into()));
        }
        let f: Vec<BigRational> = self.coeffs.iter().rev().cloned().collect();
        let g: Vec<BigRational> = other.coeffs.iter().rev().cloned().collect();
        sylvester_resultant(&f, &g)
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigRational> {
        let n = self
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidInput("discriminant requires degree >= 1".into()))?;
        let fd = self.derivative();
        let res = if fd.is_zero() {
            BigRational::zero()
        } else {
            self.resultant(&fd)?
        };
        let signed = if (n * (n - 1) / 2) % 2 == 1 { -res } else { res };
        Ok(signed / self.leading_coeff())
    }

    /// Parses the textual grammar (rational coefficients, `^`, optional `*`).
    pub fn parse(var: &str, input: &str) -> Result<UniPoly> {
        let terms = parse_terms(input)?;
        let mut poly = UniPoly::zero(var);
        for (coeff, factors) in terms {
            let mut degree = 0u32;
            for (name, exp) in factors {
                if name != var {
                    return Err(Error::Parse(format!(
                        "unknown variable {name:?} (expected {var:?})"
                    )));
                }
                degree += exp;
            }
            poly = poly.add(&UniPoly::monomial(var, coeff, degree as usize));
        }
        Ok(poly)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            if !unit || k == 0 {
                write!(f, "{abs}")?;
            }
            if k > 0 {
                write!(f, "{}", self.var)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::add(self, rhs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::sub(self, rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::mul(self, rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::neg(self)
    }
}
