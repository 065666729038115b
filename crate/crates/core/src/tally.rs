//! Finitely supported sequences of non-negative integers and the
//! combinatorial quantities built from them.
//!
//! A [`Tally`] records, for each contact order k >= 1, how many contact
//! points of that order occur. The derived quantities are
//!
//! - the norm `|t| = t_1 + t_2 + ...`,
//! - the weight `I t = t_1 + 2 t_2 + 3 t_3 + ...`,
//! - the power `I^t = 1^{t_1} 2^{t_2} 3^{t_3} ...`,
//! - entrywise binomial products `(s choose t) = prod_k (s_k choose t_k)`.
//!
//! These are the coefficients of the Caporaso-Harris recursion. Tallies are
//! kept in canonical form (no trailing zeros) from construction on, so that
//! equality and hashing are stable enough to serve as memoization keys.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finitely supported sequence of non-negative integers, indexed from 1.
///
/// Entry `k` (1-based) counts contact points of order `k`. The internal
/// vector is always canonical: no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tally(Vec<u32>);

impl Tally {
    /// Builds a tally from raw entries, trimming trailing zeros.
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Tally(entries)
    }

    /// The empty tally (all entries zero).
    pub fn empty() -> Self {
        Tally(Vec::new())
    }

    /// The sequence `e_k`: a single 1 in position `k` (1-based).
    pub fn unit(k: usize) -> Self {
        assert!(k >= 1, "contact orders are 1-based");
        let mut v = vec![0; k];
        v[k - 1] = 1;
        Tally(v)
    }

    /// The canonical entries, lowest order first, no trailing zeros.
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Entry at order `k` (1-based); zero beyond the stored support.
    pub fn get(&self, k: usize) -> u32 {
        assert!(k >= 1, "contact orders are 1-based");
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// Largest order with a nonzero entry, or 0 for the empty tally.
    pub fn max_order(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The norm `|t| = sum_k t_k`.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// The weight `I t = sum_k k * t_k`.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as u64 + 1) * u64::from(e))
            .sum()
    }

    /// Norm and weight in one pass.
    pub fn measures(&self) -> (u64, u64) {
        (self.norm(), self.weight())
    }

    /// The power `I^t = prod_k k^{t_k}`.
    pub fn power(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (i, &e) in self.0.iter().enumerate() {
            let k = BigUint::from(i + 1);
            for _ in 0..e {
                acc *= &k;
            }
        }
        acc
    }

    /// Entrywise comparison `self <= other`.
    pub fn le(&self, other: &Tally) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= other.get(i + 1))
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Tally) -> Tally {
        let n = self.0.len().max(other.0.len());
        Tally::new((1..=n).map(|k| self.get(k) + other.get(k)).collect())
    }

    /// Entrywise difference; fails unless `other <= self`.
    pub fn sub(&self, other: &Tally) -> Result<Tally> {
        if !other.le(self) {
            return Err(Error::TallyOrder(format!(
                "cannot subtract {other} from {self}"
            )));
        }
        let n = self.0.len();
        Ok(Tally::new(
            (1..=n).map(|k| self.get(k) - other.get(k)).collect(),
        ))
    }

    /// `self + e_k`.
    pub fn add_unit(&self, k: usize) -> Tally {
        self.add(&Tally::unit(k))
    }

    /// `self - e_k`; fails if entry `k` is zero.
    pub fn sub_unit(&self, k: usize) -> Result<Tally> {
        self.sub(&Tally::unit(k))
    }

    /// Orders `k` with a nonzero entry, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }
}

impl fmt::Display for Tally {
    /// Compact notation: a bare integer when only order-1 contacts occur,
    /// a bracketed list otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 1 {
            return write!(f, "{}", self.get(1));
        }
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tally{:?}", self.0)
    }
}

/// Parses the textual tally grammar: either a bare non-negative integer `k`
/// meaning `[k]`, or a bracketed comma list `[n1,n2,...]` (empty `[]` allowed).
pub fn parse_tally(s: &str) -> Result<Tally> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated tally list: {s:?}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Tally::empty());
        }
        let entries = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad tally entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tally::new(entries))
    } else {
        let k = s
            .parse::<u32>()
            .map_err(|e| Error::Parse(format!("bad tally {s:?}: {e}")))?;
        Ok(Tally::new(vec![k]))
    }
}

/// Binomial coefficient over arbitrary-precision integers.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Multinomial coefficient `(sum parts)! / prod parts!`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut total: u64 = 0;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Entrywise binomial product `prod_k (hi_k choose lo_k)`.
///
/// Fails when `lo` is not entrywise below `hi`; in the recursion that case is
/// a malformed term, not a zero coefficient.
pub fn choose(hi: &Tally, lo: &Tally) -> Result<BigUint> {
    if !lo.le(hi) {
        return Err(Error::TallyOrder(format!(
            "choose({hi}, {lo}): lower tally exceeds upper"
        )));
    }
    let mut acc = BigUint::one();
    for k in 1..=hi.max_order() {
        acc *= binomial(u64::from(hi.get(k)), u64::from(lo.get(k)));
    }
    Ok(acc)
}

/// Entrywise multinomial `prod_i (total_i choose parts^1_i, ..., parts^n_i, rest_i)`,
/// where `rest = total - sum parts`. Fails when the parts do not fit under
/// `total` entrywise.
pub fn choose_multi(total: &Tally, parts: &[Tally]) -> Result<BigUint> {
    let mut used = Tally::empty();
    for p in parts {
        used = used.add(p);
    }
    if !used.le(total) {
        return Err(Error::TallyOrder(format!(
            "choose_multi: parts sum {used} exceeds {total}"
        )));
    }
    let mut acc = BigUint::one();
    for k in 1..=total.max_order() {
        let mut entry_parts: Vec<u64> = parts.iter().map(|p| u64::from(p.get(k))).collect();
        entry_parts.push(u64::from(total.get(k) - used.get(k)));
        acc *= multinomial(&entry_parts);
    }
    Ok(acc)
}

/// All canonical tallies `t >= floor` (entrywise) with `weight(t) = w`, in
/// ascending lexicographic order of their entry vectors.
///
/// Every such tally is `floor + u` for a unique `u` of weight
/// `w - weight(floor)`, so the enumeration reduces to integer partitions of
/// the residual weight; entries beyond index `w` cannot occur.
pub fn enumerate_with_weight(w: u64, floor: &Tally) -> Vec<Tally> {
    let base = floor.weight();
    if base > w {
        return Vec::new();
    }
    let residual = w - base;
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    gen_partition_tallies(residual, 1, &mut current, &mut |u| {
        out.push(floor.add(&Tally::new(u.to_vec())));
    });
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn gen_partition_tallies(
    remaining: u64,
    k: u64,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    if k > remaining {
        return;
    }
    let max_count = remaining / k;
    for c in 0..=max_count {
        current.push(c as u32);
        gen_partition_tallies(remaining - c * k, k + 1, current, emit);
        current.pop();
    }
}

/// All tallies `t <= cap` (entrywise) with `weight(t) = w`, ascending
/// lexicographic order. Drives the sum over sub-tallies of the assigned
/// contact pattern.
pub fn sub_tallies_with_weight(cap: &Tally, w: u64) -> Vec<Tally> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    gen_sub_tallies(cap, w, 1, &mut current, &mut |v| {
        out.push(Tally::new(v.to_vec()));
    });
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn gen_sub_tallies(
    cap: &Tally,
    remaining: u64,
    k: usize,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    if k > cap.max_order() {
        return;
    }
    let max_count = u64::from(cap.get(k)).min(remaining / k as u64);
    for c in 0..=max_count {
        current.push(c as u32);
        gen_sub_tallies(cap, remaining - c * k as u64, k + 1, current, emit);
        current.pop();
    }
}

/// The three joint invariants of a collection of local tangency orders
/// `m_1, ..., m_n` (each >= 2), plus the branch multiplicity at the origin.
///
/// `mu = prod m_j` is the total intersection multiplicity, `lambda = lcm{m_j}`
/// the multiplicity of each local branch against the deepest stratum, and
/// `kappa = mu / lambda` the number of local branches; the divisions by
/// `lambda` and by `max m_j` are exact by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetProfile {
    pub mu: BigUint,
    pub lambda: u64,
    pub kappa: BigUint,
    pub branch_mult: u64,
}

/// Computes the sheet profile of a list of tangency orders.
pub fn sheet_profile(orders: &[u64]) -> Result<SheetProfile> {
    if orders.is_empty() {
        return Err(Error::InvalidInput("sheet_profile: empty order list".into()));
    }
    if let Some(&bad) = orders.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidInput(format!(
            "sheet_profile: order {bad} < 2"
        )));
    }
    let mut mu = BigUint::one();
    let mut lambda: u64 = 1;
    for &m in orders {
        mu *= BigUint::from(m);
        lambda = num_integer::lcm(lambda, m);
    }
    let (kappa, rem) = num_integer::div_rem(mu.clone(), BigUint::from(lambda));
    if !rem.is_zero() {
        return Err(Error::InternalInconsistency(
            "sheet_profile: lcm does not divide product".into(),
        ));
    }
    let max = *orders.iter().max().expect("non-empty");
    if !lambda.is_multiple_of(max) {
        return Err(Error::InternalInconsistency(
            "sheet_profile: max order does not divide lcm".into(),
        ));
    }
    Ok(SheetProfile {
        mu,
        lambda,
        kappa,
        branch_mult: lambda / max,
    })
}

/// A tally whose first entry corresponds to a configurable order, used for
/// tangency patterns that start at order 2 rather than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedTally {
    base: usize,
    counts: Tally,
}

impl BasedTally {
    /// Tally of higher-order tangencies: entry `i` of `counts` (1-based)
    /// counts points of order `base + i - 1`.
    pub fn with_base(base: usize, counts: Tally) -> Self {
        assert!(base >= 1);
        BasedTally { base, counts }
    }

    /// Tangency tally starting at order 2 (the usual convention for
    /// tacnode patterns).
    pub fn tacnodes(counts: Tally) -> Self {
        Self::with_base(2, counts)
    }

    pub fn count_at_order(&self, m: usize) -> u32 {
        if m < self.base {
            0
        } else {
            self.counts.get(m - self.base + 1)
        }
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.support().map(move |i| self.base + i - 1)
    }

    /// `(mu, nu)` for a tangency pattern: `mu = prod m^{t_m}` is the
    /// multiplicity with which such a configuration counts, and
    /// `nu = sum (m - 1) t_m` the number of nodes it absorbs.
    pub fn mu_nu(&self) -> (BigUint, u64) {
        let mut mu = BigUint::one();
        let mut nu: u64 = 0;
        for m in self.orders() {
            let count = u64::from(self.count_at_order(m));
            nu += (m as u64 - 1) * count;
            for _ in 0..count {
                mu *= BigUint::from(m);
            }
        }
        (mu, nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[u32]) -> Tally {
        Tally::new(entries.to_vec())
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        assert_eq!(t(&[2, 0, 0]), t(&[2]));
        assert_eq!(t(&[0, 0]), Tally::empty());
        assert_eq!(t(&[0, 1, 0]).entries(), &[0, 1]);
    }

    #[test]
    fn measures_examples() {
        assert_eq!(Tally::empty().measures(), (0, 0));
        assert_eq!(t(&[2]).measures(), (2, 2));
        // one order-2 contact point: norm 1, weight 2
        assert_eq!(t(&[0, 1]).measures(), (1, 2));
    }

    #[test]
    fn measures_ignore_trailing_zeros() {
        for entries in [vec![1, 2, 3], vec![0, 5], vec![4]] {
            let mut padded = entries.clone();
            padded.extend([0, 0, 0]);
            assert_eq!(t(&entries).measures(), t(&padded).measures());
            assert_eq!(t(&entries).power(), t(&padded).power());
        }
    }

    #[test]
    fn power_examples() {
        assert_eq!(t(&[3]).power(), BigUint::from(1u32));
        assert_eq!(t(&[0, 2]).power(), BigUint::from(4u32));
        assert_eq!(t(&[1, 1, 1]).power(), BigUint::from(6u32));
    }

    #[test]
    fn choose_examples() {
        assert_eq!(choose(&t(&[3]), &t(&[2])).unwrap(), BigUint::from(3u32));
        for tally in [t(&[1, 2]), t(&[5]), Tally::empty()] {
            assert_eq!(choose(&tally, &tally).unwrap(), BigUint::one());
        }
        assert_eq!(
            choose(&t(&[2, 1]), &t(&[1, 1])).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn choose_rejects_bad_order() {
        assert!(choose(&t(&[1]), &t(&[2])).is_err());
        assert!(choose(&t(&[1]), &t(&[0, 1])).is_err());
    }

    /// p(n) by the pentagonal-number recurrence; independent of the
    /// enumeration code it checks.
    fn partition_count(n: u64) -> u64 {
        let n = n as usize;
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for i in 1..=n {
            let mut sum = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * p[i - g1];
                if g2 <= i {
                    sum += sign * p[i - g2];
                }
                k += 1;
            }
            p[i] = sum;
        }
        p[n] as u64
    }

    #[test]
    fn enumerate_matches_partition_numbers() {
        for w in 0..=12 {
            let got = enumerate_with_weight(w, &Tally::empty());
            assert_eq!(
                got.len() as u64,
                partition_count(w),
                "partition count mismatch at weight {w}"
            );
            for tally in &got {
                assert_eq!(tally.weight(), w);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let got = enumerate_with_weight(3, &Tally::empty());
        assert_eq!(got, vec![t(&[0, 0, 1]), t(&[1, 1]), t(&[3])]);
        assert_eq!(enumerate_with_weight(0, &Tally::empty()), vec![Tally::empty()]);
        assert_eq!(enumerate_with_weight(3, &t(&[2])), vec![t(&[3])]);
    }

    #[test]
    fn enumerate_respects_floor() {
        let floor = t(&[0, 1]);
        for tally in enumerate_with_weight(6, &floor) {
            assert!(floor.le(&tally));
            assert_eq!(tally.weight(), 6);
        }
        // brute force cross-check at weight 5: filter the unrestricted list
        let all = enumerate_with_weight(5, &Tally::empty());
        let filtered: Vec<_> = all.into_iter().filter(|u| floor.le(u)).collect();
        assert_eq!(enumerate_with_weight(5, &floor), filtered);
    }

    #[test]
    fn sub_tallies_brute_force() {
        let cap = t(&[2, 1]);
        let subs = sub_tallies_with_weight(&cap, 2);
        assert_eq!(subs, vec![t(&[0, 1]), t(&[2])]);
        // total count over all weights = prod (cap_k + 1)
        let total: usize = (0..=cap.weight())
            .map(|w| sub_tallies_with_weight(&cap, w).len())
            .sum();
        assert_eq!(total, 3 * 2);
    }

    #[test]
    fn binomial_chain_identity_weight_le_6() {
        // prod C(b', b) C(b, b'') = prod C(b', b'') C(b'-b'', b-b'')
        for w in 0..=6u64 {
            for hi in enumerate_with_weight(w, &Tally::empty()) {
                for mid_w in 0..=w {
                    for mid in sub_tallies_with_weight(&hi, mid_w) {
                        for lo_w in 0..=mid_w {
                            for lo in sub_tallies_with_weight(&mid, lo_w) {
                                let lhs = choose(&hi, &mid).unwrap() * choose(&mid, &lo).unwrap();
                                let rhs = choose(&hi, &lo).unwrap()
                                    * choose(&hi.sub(&lo).unwrap(), &mid.sub(&lo).unwrap())
                                        .unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sheet_profile_examples() {
        let p = sheet_profile(&[2]).unwrap();
        assert_eq!(
            (p.mu, p.lambda, p.kappa, p.branch_mult),
            (BigUint::from(2u32), 2, BigUint::one(), 1)
        );
        let p = sheet_profile(&[2, 2]).unwrap();
        assert_eq!(
            (p.mu, p.lambda, p.kappa, p.branch_mult),
            (BigUint::from(4u32), 2, BigUint::from(2u32), 1)
        );
        let p = sheet_profile(&[2, 3]).unwrap();
        assert_eq!(
            (p.mu, p.lambda, p.kappa, p.branch_mult),
            (BigUint::from(6u32), 6, BigUint::one(), 2)
        );
    }

    #[test]
    fn sheet_profile_internal_identities() {
        for orders in [vec![2, 4], vec![3, 3, 5], vec![2, 3, 4, 6], vec![7]] {
            let p = sheet_profile(&orders).unwrap();
            assert_eq!(&p.kappa * BigUint::from(p.lambda), p.mu);
            let max = *orders.iter().max().unwrap();
            assert_eq!(p.branch_mult * max, p.lambda);
        }
    }

    #[test]
    fn sheet_profile_rejects_small_orders() {
        assert!(sheet_profile(&[]).is_err());
        assert!(sheet_profile(&[2, 1]).is_err());
    }

    #[test]
    fn mu_nu_examples() {
        let tau2 = BasedTally::tacnodes(t(&[1]));
        assert_eq!(tau2.mu_nu(), (BigUint::from(2u32), 1));
        let tau3 = BasedTally::tacnodes(t(&[0, 1]));
        assert_eq!(tau3.mu_nu(), (BigUint::from(3u32), 2));
        let none = BasedTally::tacnodes(Tally::empty());
        assert_eq!(none.mu_nu(), (BigUint::one(), 0));
    }

    #[test]
    fn parse_tally_grammar() {
        assert_eq!(parse_tally("2").unwrap(), t(&[2]));
        assert_eq!(parse_tally("[0,1]").unwrap(), t(&[0, 1]));
        assert_eq!(parse_tally("[]").unwrap(), Tally::empty());
        assert_eq!(parse_tally(" [1, 1] ").unwrap(), t(&[1, 1]));
        assert!(parse_tally("[1,").is_err());
        assert!(parse_tally("x").is_err());
    }

    #[test]
    fn display_compact_form() {
        assert_eq!(t(&[2]).to_string(), "2");
        assert_eq!(Tally::empty().to_string(), "0");
        assert_eq!(t(&[1, 1]).to_string(), "[1,1]");
    }
}
