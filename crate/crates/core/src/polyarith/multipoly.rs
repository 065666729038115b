//! Sparse multivariate polynomials over the integers, ordered graded
//! lexicographically over a declared variable list.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{parse_terms, sylvester_resultant, EliminationRing};
use crate::error::{Error, Result};

/// Exponent vector parallel to the owning polynomial's variable list.
/// Ordered by total degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in several variables with exact integer coefficients. Zero
/// coefficients are never stored; two polynomials compare equal exactly when
/// their term maps over the same variable list are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = p.var_index(name).expect("variable not in list");
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(Monomial(exps), BigInt::one());
        p
    }

    /// Builds from (coefficient, exponent-vector) pairs.
    pub fn from_terms(vars: &[&str], terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(vars);
        for &(c, exps) in terms {
            assert_eq!(exps.len(), p.vars.len());
            p.add_term(Monomial(exps.to_vec()), BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order as (coefficient, exponents).
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &[u32])> {
        self.terms.iter().rev().map(|(m, c)| (c, m.0.as_slice()))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(
            self.vars, other.vars,
            "multivariate arithmetic requires a common variable list"
        );
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = Self::constant(
            &self.vars.iter().map(String::as_str).collect::<Vec<_>>(),
            1,
        );
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let idx = self.var_index(var).expect("variable not in list");
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c * BigInt::from(e));
        }
        out
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let idx = self.var_index(var).expect("variable not in list");
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// Coefficients of powers of `var`, highest first, as polynomials in the
    /// full variable list (with `var`-exponent zero).
    fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let idx = self.var_index(var).expect("variable not in list");
        let deg = self.degree_in(var).expect("nonzero polynomial") as usize;
        let mut out =
            vec![MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }; deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut exps = m.0.clone();
            exps[idx] = 0;
            out[deg - e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(divisor);
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().expect("nonzero");
                (m.clone(), c.clone())
            };
            let exps: Vec<i64> = rm
                .0
                .iter()
                .zip(&dm.0)
                .map(|(a, b)| i64::from(*a) - i64::from(*b))
                .collect();
            if exps.iter().any(|&e| e < 0) {
                return None;
            }
            let (q, r) = num_integer::div_rem(rc, dc.clone());
            if !r.is_zero() {
                return None;
            }
            let qm = Monomial(exps.iter().map(|&e| e as u32).collect());
            let mut step = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
            step.add_term(qm.clone(), q.clone());
            rem = rem.sub(&step.mul(divisor));
            quot.add_term(qm, q);
        }
        Some(quot)
    }

    /// Substitutes polynomials for variables; variables absent from the map
    /// stay themselves. All replacement polynomials must share the target
    /// variable list.
    pub fn substitute(&self, target_vars: &[&str], map: &[(&str, &MultiPoly)]) -> MultiPoly {
        let mut out = MultiPoly::zero(target_vars);
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| {
                map.iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, p)| (*p).clone())
                    .unwrap_or_else(|| MultiPoly::var(target_vars, v))
            })
            .collect();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target_vars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                term = term.mul(&img.pow(e));
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at integer values for all variables.
    pub fn eval_ints(&self, values: &[(&str, i64)]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in self.vars.iter().zip(&m.0) {
                let x = values
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|&(_, x)| x)
                    .expect("missing value for variable");
                t *= BigInt::from(x).pow(e);
            }
            acc += t;
        }
        acc
    }

    /// Sylvester resultant with respect to `var`; both inputs nonzero in it.
    pub fn resultant(&self, other: &MultiPoly, var: &str) -> Result<MultiPoly> {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("resultant of the zero polynomial".into()));
        }
        let f = self.coeffs_in(var);
        let g = other.coeffs_in(var);
        sylvester_resultant(&f, &g)
    }

    /// Discriminant with respect to `var`:
    /// `(-1)^{n(n-1)/2} Res_var(f, df/dvar) / lc_var(f)`, division exact.
    pub fn discriminant(&self, var: &str) -> Result<MultiPoly> {
        let n = self
            .degree_in(var)
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidInput("discriminant requires degree >= 1".into()))?
            as usize;
        let fd = self.derivative(var);
        if fd.is_zero() {
            return Err(Error::InvalidInput(
                "discriminant: derivative vanishes identically".into(),
            ));
        }
        let res = self.resultant(&fd, var)?;
        let signed = if (n * (n - 1) / 2) % 2 == 1 { res.neg() } else { res };
        let lc = self.coeffs_in(var).remove(0);
        signed.exact_div(&lc).ok_or_else(|| {
            Error::InternalInconsistency(
                "discriminant: leading coefficient does not divide the resultant".into(),
            )
        })
    }

    /// The common weighted degree of all monomials under the given variable
    /// weights, or `None` when the polynomial is not quasi-homogeneous.
    pub fn quasi_degree(&self, weights: &[(&str, i64)]) -> Option<i64> {
        let ws: Vec<i64> = self
            .vars
            .iter()
            .map(|v| {
                weights
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|&(_, w)| w)
                    .expect("missing weight for variable")
            })
            .collect();
        let mut degree = None;
        for m in self.terms.keys() {
            let d: i64 = m.0.iter().zip(&ws).map(|(&e, &w)| i64::from(e) * w).sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Removes a variable from the list; `None` if it actually occurs.
    pub fn without_var(&self, var: &str) -> Option<MultiPoly> {
        let idx = self.var_index(var)?;
        if self.terms.keys().any(|m| m.0[idx] != 0) {
            return None;
        }
        let mut vars = self.vars.clone();
        vars.remove(idx);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.0.clone();
                exps.remove(idx);
                (Monomial(exps), c.clone())
            })
            .collect();
        Some(MultiPoly { vars, terms })
    }

    /// Parses the textual grammar over the given variable list.
    pub fn parse(vars: &[&str], input: &str) -> Result<MultiPoly> {
        let terms = parse_terms(input)?;
        let mut poly = MultiPoly::zero(vars);
        for (coeff, factors) in terms {
            if !coeff.denom().is_one() {
                return Err(Error::Parse(format!(
                    "integer coefficients required, got {coeff}"
                )));
            }
            let mut exps = vec![0u32; vars.len()];
            for (name, exp) in factors {
                let idx = poly
                    .var_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[idx] += exp;
            }
            poly.add_term(Monomial(exps), coeff.numer().clone());
        }
        Ok(poly)
    }
}

impl EliminationRing for MultiPoly {
    fn ring_zero(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }
    fn ring_one(&self) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        MultiPoly::constant(&vars, 1)
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_exact_div(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        self.exact_div(other)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, exps) in self.terms() {
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
            let is_const = exps.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
            }
            let mut printed = !abs.is_one();
            for (v, &e) in self.vars.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VARS: &[&str] = &["a", "b", "c"];

    fn v(name: &str) -> MultiPoly {
        MultiPoly::var(VARS, name)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(VARS, n)
    }

    #[test]
    fn graded_lex_ordering() {
        // a^2 > ab > b^2 > a > b > 1 in descending graded lex
        let p = MultiPoly::parse(&["a", "b"], "1 + a + b + a^2 + a*b + b^2").unwrap();
        let order: Vec<Vec<u32>> = p.terms().map(|(_, e)| e.to_vec()).collect();
        assert_eq!(
            order,
            vec![
                vec![2, 0],
                vec![1, 1],
                vec![0, 2],
                vec![1, 0],
                vec![0, 1],
                vec![0, 0]
            ]
        );
    }

    #[test]
    fn ring_spot_checks() {
        let (a, b, cc) = (v("a"), v("b"), v("c"));
        let p1 = a.add(&b).mul(&cc);
        let p2 = a.mul(&cc).add(&b.mul(&cc));
        assert_eq!(p1, p2, "distributivity");
        let q1 = a.mul(&b).mul(&cc);
        let q2 = a.mul(&b.mul(&cc));
        assert_eq!(q1, q2, "associativity");
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&c(0)), MultiPoly::zero(VARS));
    }

    #[test]
    fn exact_division() {
        let f = v("a").pow(2).sub(&v("b").pow(2));
        let g = v("a").sub(&v("b"));
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, v("a").add(&v("b")));
        assert!(f.exact_div(&v("c")).is_none());
        assert!(c(3).exact_div(&c(2)).is_none());
        assert_eq!(c(6).exact_div(&c(2)).unwrap(), c(3));
    }

    #[test]
    fn resultant_eliminates_shared_root() {
        // Res_x(x^2 - a, x - b) = b^2 - a
        let vars = &["x", "a", "b"];
        let f = MultiPoly::parse(vars, "x^2 - a").unwrap();
        let g = MultiPoly::parse(vars, "x - b").unwrap();
        let r = f.resultant(&g, "x").unwrap();
        assert_eq!(r, MultiPoly::parse(vars, "b^2 - a").unwrap());
    }

    #[test]
    fn resultant_cusp_elimination() {
        // Res_u(2 a0 + 6 u^2, -4 b1 - 8 u^3) = 128 (4 a0^3 + 27 b1^2)
        let vars = &["u", "a0", "b1"];
        let f = MultiPoly::parse(vars, "2*a0 + 6*u^2").unwrap();
        let g = MultiPoly::parse(vars, "-4*b1 - 8*u^3").unwrap();
        let r = f.resultant(&g, "u").unwrap();
        let target = MultiPoly::parse(vars, "4*a0^3 + 27*b1^2").unwrap();
        let q = r.exact_div(&target).expect("target must divide the resultant");
        assert_eq!(q, MultiPoly::constant(vars, 128));
    }

    #[test]
    fn discriminant_of_symbolic_quadratic() {
        let vars = &["x", "b", "c"];
        let f = MultiPoly::parse(vars, "x^2 + b*x + c").unwrap();
        let d = f.discriminant("x").unwrap();
        assert_eq!(d, MultiPoly::parse(vars, "b^2 - 4*c").unwrap());
    }

    #[test]
    fn discriminant_of_reduced_quartic() {
        let vars = &["x", "a", "b", "c"];
        let f = MultiPoly::parse(vars, "x^4 + a*x^2 + b*x + c").unwrap();
        let d = f.discriminant("x").unwrap();
        let expected = MultiPoly::parse(
            vars,
            "-4*a^3*b^2 + 16*a^4*c - 27*b^4 + 144*a*b^2*c - 128*a^2*c^2 + 256*c^3",
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn quasi_degree_examples() {
        let vars = &["x", "y"];
        let p = MultiPoly::parse(vars, "x + y").unwrap();
        assert_eq!(p.quasi_degree(&[("x", 1), ("y", 1)]), Some(1));
        let q = MultiPoly::parse(vars, "x + y^2").unwrap();
        assert_eq!(q.quasi_degree(&[("x", 1), ("y", 1)]), None);
        assert_eq!(q.quasi_degree(&[("x", 2), ("y", 1)]), Some(2));
    }

    #[test]
    fn substitution_composes() {
        let vars = &["a", "b", "c"];
        let f = MultiPoly::parse(vars, "a^2 - b").unwrap();
        let u_vars = &["u"];
        let u2 = MultiPoly::parse(u_vars, "u^2").unwrap();
        let u4 = MultiPoly::parse(u_vars, "u^4").unwrap();
        let g = f.substitute(u_vars, &[("a", &u2), ("b", &u4), ("c", &MultiPoly::zero(u_vars))]);
        assert!(g.is_zero());
    }

    #[test]
    fn print_and_parse_round_trip() {
        let cases = [
            "a^2*b - 3*c + 1",
            "-a + b",
            "7",
            "a*b*c",
        ];
        for s in cases {
            let p = MultiPoly::parse(VARS, s).unwrap();
            let back = MultiPoly::parse(VARS, &p.to_string()).unwrap();
            assert_eq!(p, back, "round trip failed on {s}");
        }
    }
}
