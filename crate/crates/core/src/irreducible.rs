//! Severi degrees of irreducible curves.
//!
//! The irreducible count `N_irr^{d,delta}(alpha, beta)` satisfies the same
//! first sum as the plain recursion, while the second sum runs over all ways
//! the degree d-1 residual curve can decompose into irreducible components.
//! A decomposition is a multiset of profiles `(d_l, delta_l, alpha_l,
//! beta_l, gamma_l)`; `gamma_l` marks the unassigned contacts of component l
//! that merge with the split-off line (at least one per component, or the
//! deformation stays reducible). Writing `beta' = sum beta_l`, the
//! constraints are
//!
//! ```text
//! sum d_l = d - 1,          sum alpha_l <= alpha,
//! beta' = beta + sum gamma_l,    gamma_l != 0,
//! sum delta_l = delta + |beta' - beta| - d + 1 - sum_{h<l} d_h d_l,
//! ```
//!
//! and each summand contributes
//!
//! ```text
//! (1/sigma) multinom(n_1..n_k) multinom(alpha; alpha_1..alpha_k)
//!     prod C(beta_l, beta_l - gamma_l) prod I^{gamma_l}
//!     prod N_irr^{d_l,delta_l}(alpha_l, beta_l)
//! ```
//!
//! with `n_l = 2 d_l + g_l - 1 + |beta_l|` the component family dimensions
//! (their sum is one less than the dimension of the ambient family, which
//! is asserted for every emitted decomposition) and `sigma` the product of
//! factorials of the multiplicities of repeated profiles. The division by
//! `sigma` is exact; a remainder signals an enumeration bug.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::severi::{memo_get_irr, memo_insert_irr, memo_is_parallel, CountTable, SeveriKey};
use crate::tally::{
    choose, choose_multi, enumerate_with_weight, multinomial, sub_tallies_with_weight, Tally,
};

/// One irreducible component of a decomposition of the residual curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComponentProfile {
    pub d: u32,
    pub delta: i64,
    pub alpha: Tally,
    pub beta: Tally,
    pub gamma: Tally,
}

impl ComponentProfile {
    /// Dimension of the component's family of irreducible curves.
    pub fn family_dimension(&self) -> u64 {
        let g = SeveriKey::arithmetic_genus(self.d) - self.delta;
        let dim = 2 * i64::from(self.d) + g - 1 + self.beta.norm() as i64;
        debug_assert!(dim >= 0, "component family dimension must be non-negative");
        dim as u64
    }

    fn key(&self) -> Result<SeveriKey> {
        SeveriKey::new(self.d, self.delta, self.alpha.clone(), self.beta.clone())
    }
}

/// A multiset of component profiles, stored in non-decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub profiles: Vec<ComponentProfile>,
}

impl Decomposition {
    /// Order of the group permuting identical profiles: the product of the
    /// factorials of the run lengths.
    pub fn sigma(&self) -> BigUint {
        let mut sigma = BigUint::one();
        let mut run = 1u64;
        for w in self.profiles.windows(2) {
            if w[0] == w[1] {
                run += 1;
                sigma *= BigUint::from(run);
            } else {
                run = 1;
            }
        }
        sigma
    }

    pub fn alpha_sum(&self) -> Tally {
        self.profiles
            .iter()
            .fold(Tally::empty(), |acc, p| acc.add(&p.alpha))
    }

    pub fn gamma_sum(&self) -> Tally {
        self.profiles
            .iter()
            .fold(Tally::empty(), |acc, p| acc.add(&p.gamma))
    }
}

/// Enumerates every decomposition of the residual degree d-1 curve for
/// `key`, each multiset exactly once, in a deterministic order.
pub fn decompositions(key: &SeveriKey) -> Result<Vec<Decomposition>> {
    if key.d < 2 {
        return Err(Error::InvalidKey(format!(
            "decompositions require d >= 2, got {}",
            key.d
        )));
    }
    let mut out = Vec::new();
    let mut current: Vec<ComponentProfile> = Vec::new();
    enumerate_components(
        key,
        u64::from(key.d) - 1,
        &key.alpha,
        &key.beta,
        None,
        &mut current,
        &mut out,
    )?;
    Ok(out)
}

/// Depth-first enumeration. `remaining_degree` is the degree budget,
/// `alpha_budget` the assigned contacts still assignable, `beta_budget` the
/// unassigned contacts of the parent still to be matched by some component.
/// `min_profile` enforces the canonical non-decreasing ordering.
fn enumerate_components(
    key: &SeveriKey,
    remaining_degree: u64,
    alpha_budget: &Tally,
    beta_budget: &Tally,
    min_profile: Option<&ComponentProfile>,
    current: &mut Vec<ComponentProfile>,
    out: &mut Vec<Decomposition>,
) -> Result<()> {
    if remaining_degree == 0 {
        if !beta_budget.is_empty() {
            return Ok(());
        }
        let deco = Decomposition { profiles: current.clone() };
        if delta_sum_matches(key, &deco) {
            assert_dimension_bookkeeping(key, &deco)?;
            out.push(deco);
        }
        return Ok(());
    }
    for d_l in 1..=remaining_degree.min(u32::MAX as u64) {
        let d_l32 = d_l as u32;
        let genus_cap = SeveriKey::arithmetic_genus(d_l32);
        for delta_l in 0..=genus_cap {
            for wa in 0..=d_l.min(alpha_budget.weight()) {
                for alpha_l in sub_tallies_with_weight(alpha_budget, wa) {
                    let wb = d_l - wa;
                    // Split the component's unassigned contacts into the part
                    // matched to the parent's beta and the part gamma that
                    // merges with the line.
                    for wg in 0..wb {
                        for matched in sub_tallies_with_weight(beta_budget, wg) {
                            for gamma in enumerate_with_weight(wb - wg, &Tally::empty()) {
                                if gamma.is_empty() {
                                    continue;
                                }
                                let beta_l = matched.add(&gamma);
                                let profile = ComponentProfile {
                                    d: d_l32,
                                    delta: delta_l,
                                    alpha: alpha_l.clone(),
                                    beta: beta_l,
                                    gamma,
                                };
                                if let Some(min) = min_profile {
                                    if profile < *min {
                                        continue;
                                    }
                                }
                                current.push(profile);
                                let profile_ref = current.last().cloned().expect("just pushed");
                                enumerate_components(
                                    key,
                                    remaining_degree - d_l,
                                    &alpha_budget.sub(&profile_ref.alpha)?,
                                    &beta_budget.sub(&matched)?,
                                    Some(&profile_ref),
                                    current,
                                    out,
                                )?;
                                current.pop();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks `sum delta_l = delta + |beta' - beta| - d + 1 - sum_{h<l} d_h d_l`.
fn delta_sum_matches(key: &SeveriKey, deco: &Decomposition) -> bool {
    let gamma_norm = deco.gamma_sum().norm() as i64;
    let degrees: Vec<i64> = deco.profiles.iter().map(|p| i64::from(p.d)).collect();
    let total: i64 = degrees.iter().sum();
    let sq: i64 = degrees.iter().map(|x| x * x).sum();
    let cross = (total * total - sq) / 2;
    let target = key.delta + gamma_norm - i64::from(key.d) + 1 - cross;
    let actual: i64 = deco.profiles.iter().map(|p| p.delta).sum();
    actual == target
}

/// The component family dimensions must sum to one less than the parent's.
fn assert_dimension_bookkeeping(key: &SeveriKey, deco: &Decomposition) -> Result<()> {
    let parts: u64 = deco.profiles.iter().map(|p| p.family_dimension()).sum();
    let parent = key.dimension();
    if parent < 1 || parts != (parent - 1) as u64 {
        return Err(Error::InternalInconsistency(format!(
            "decomposition of {key} has component dimensions summing to {parts}, expected {}",
            parent - 1
        )));
    }
    Ok(())
}

/// Computes the irreducible Severi degree `N_irr^{d,delta}(alpha, beta)`.
///
/// Cutoffs: 0 when `delta < 0` or `delta > (d-1)(d-2)/2` (an irreducible
/// curve has non-negative geometric genus); for d = 1 the count is 1 exactly
/// when `delta = 0`.
pub fn count_irr(key: &SeveriKey, memo: &CountTable) -> Result<BigUint> {
    if key.delta < 0 || key.delta > SeveriKey::arithmetic_genus(key.d) {
        return Ok(BigUint::zero());
    }
    if key.d == 1 {
        return Ok(if key.delta == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    if let Some(v) = memo_get_irr(memo, key) {
        return Ok(v);
    }

    let mut first_terms: Vec<(BigUint, SeveriKey)> = Vec::new();
    for k in key.beta.support() {
        let child = SeveriKey::new(
            key.d,
            key.delta,
            key.alpha.add_unit(k),
            key.beta.sub_unit(k)?,
        )?;
        first_terms.push((BigUint::from(k), child));
    }
    let decos = decompositions(key)?;

    let total = sum_irr_terms(key, &first_terms, &decos, memo)?;
    memo_insert_irr(memo, key, total.clone());
    Ok(total)
}

#[cfg(feature = "parallel")]
fn sum_irr_terms(
    key: &SeveriKey,
    first: &[(BigUint, SeveriKey)],
    decos: &[Decomposition],
    memo: &CountTable,
) -> Result<BigUint> {
    if memo_is_parallel(memo)
        && key.d >= crate::severi::PARALLEL_DEGREE_FLOOR
        && first.len() + decos.len() > 1
    {
        let a = first
            .par_iter()
            .map(|(c, child)| Ok(c * count_irr(child, memo)?))
            .try_reduce(BigUint::zero, |x, y| Ok(x + y))?;
        let b = decos
            .par_iter()
            .map(|deco| decomposition_term(key, deco, memo))
            .try_reduce(BigUint::zero, |x, y| Ok(x + y))?;
        return Ok(a + b);
    }
    sum_irr_terms_sequential(key, first, decos, memo)
}

#[cfg(not(feature = "parallel"))]
fn sum_irr_terms(
    key: &SeveriKey,
    first: &[(BigUint, SeveriKey)],
    decos: &[Decomposition],
    memo: &CountTable,
) -> Result<BigUint> {
    sum_irr_terms_sequential(key, first, decos, memo)
}

fn sum_irr_terms_sequential(
    key: &SeveriKey,
    first: &[(BigUint, SeveriKey)],
    decos: &[Decomposition],
    memo: &CountTable,
) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for (c, child) in first {
        total += c * count_irr(child, memo)?;
    }
    for deco in decos {
        total += decomposition_term(key, deco, memo)?;
    }
    Ok(total)
}

/// The full contribution of one decomposition, including the exact division
/// by its symmetry factor.
fn decomposition_term(key: &SeveriKey, deco: &Decomposition, memo: &CountTable) -> Result<BigUint> {
    let dims: Vec<u64> = deco.profiles.iter().map(|p| p.family_dimension()).collect();
    let mut term = multinomial(&dims);

    let alpha_parts: Vec<Tally> = deco.profiles.iter().map(|p| p.alpha.clone()).collect();
    term *= choose_multi(&key.alpha, &alpha_parts)?;

    for p in &deco.profiles {
        let kept = p.beta.sub(&p.gamma)?;
        term *= choose(&p.beta, &kept)?;
        term *= p.gamma.power();
        term *= count_irr(&p.key()?, memo)?;
        if term.is_zero() {
            return Ok(term);
        }
    }

    let sigma = deco.sigma();
    let (q, r) = term.div_rem(&sigma);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "symmetry factor {sigma} does not divide the contribution of {deco:?} to {key}"
        )));
    }
    Ok(q)
}

/// Degree of a product of projective families under the joint embedding:
/// `(1/sigma) * multinom(sum dims; dims) * prod degs`, the division exact.
pub fn product_degree(components: &[(u64, BigUint)], sigma: &BigUint) -> Result<BigUint> {
    let dims: Vec<u64> = components.iter().map(|&(dim, _)| dim).collect();
    let mut num = multinomial(&dims);
    for (_, deg) in components {
        num *= deg;
    }
    let (q, r) = num.div_rem(sigma);
    if !r.is_zero() {
        return Err(Error::InvalidInput(format!(
            "symmetry order {sigma} does not divide the product degree"
        )));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::severi::count;
    use crate::tally::parse_tally;

    fn key(d: u32, delta: i64, alpha: &str, beta: &str) -> SeveriKey {
        SeveriKey::new(
            d,
            delta,
            parse_tally(alpha).unwrap(),
            parse_tally(beta).unwrap(),
        )
        .unwrap()
    }

    fn n_irr(d: u32, delta: i64, alpha: &str, beta: &str) -> BigUint {
        count_irr(&key(d, delta, alpha, beta), &CountTable::new()).unwrap()
    }

    #[test]
    fn trinodal_quartics() {
        assert_eq!(n_irr(4, 3, "2", "2"), BigUint::from(620u32));
        assert_eq!(n_irr(4, 3, "3", "1"), BigUint::from(584u32));
        assert_eq!(n_irr(4, 3, "[]", "4"), BigUint::from(620u32));
    }

    #[test]
    fn rational_cubics_all_irreducible() {
        assert_eq!(n_irr(3, 1, "[]", "3"), BigUint::from(12u32));
    }

    #[test]
    fn splitting_differences() {
        let memo = CountTable::new();
        let k22 = key(4, 3, "2", "2");
        let k31 = key(4, 3, "3", "1");
        let d22 = count(&k22, &memo).unwrap() - count_irr(&k22, &memo).unwrap();
        let d31 = count(&k31, &memo).unwrap() - count_irr(&k31, &memo).unwrap();
        assert_eq!(d22, BigUint::from(54u32));
        assert_eq!(d31, BigUint::from(52u32));
    }

    #[test]
    fn quartic_decomposition_contains_cubic_profile() {
        let decos = decompositions(&key(4, 3, "2", "2")).unwrap();
        let expected = ComponentProfile {
            d: 3,
            delta: 1,
            alpha: Tally::empty(),
            beta: parse_tally("3").unwrap(),
            gamma: parse_tally("1").unwrap(),
        };
        assert!(
            decos
                .iter()
                .any(|deco| deco.profiles.len() == 1 && deco.profiles[0] == expected),
            "missing the cubic-plus-line profile"
        );
    }

    #[test]
    fn degree_two_decompositions_are_lines() {
        for deco in decompositions(&key(2, 0, "[]", "2")).unwrap() {
            for p in &deco.profiles {
                assert_eq!(p.d, 1);
                assert_eq!(p.delta, 0);
            }
        }
    }

    /// Brute-force oracle for the decomposition enumerator at a small key:
    /// scan the full grid of candidate profile pairs/singletons and compare.
    #[test]
    fn decompositions_match_brute_force() {
        let k = key(3, 1, "1", "2");
        let fast = decompositions(&k).unwrap();

        let mut slow: Vec<Decomposition> = Vec::new();
        let all_profiles = brute_profiles(2);
        // k = 1 components of degree 2
        for p in all_profiles.iter().filter(|p| p.d == 2) {
            let deco = Decomposition { profiles: vec![p.clone()] };
            if decomposition_valid(&k, &deco) {
                slow.push(deco);
            }
        }
        // k = 2 components of degree 1 each, unordered
        let lines: Vec<_> = all_profiles.iter().filter(|p| p.d == 1).collect();
        for i in 0..lines.len() {
            for j in i..lines.len() {
                let deco = Decomposition {
                    profiles: vec![lines[i].clone(), lines[j].clone()],
                };
                if decomposition_valid(&k, &deco) {
                    slow.push(deco);
                }
            }
        }
        assert_eq!(fast.len(), slow.len());
        for deco in &slow {
            assert!(fast.contains(deco), "enumerator missed {deco:?}");
        }
    }

    fn brute_profiles(max_d: u32) -> Vec<ComponentProfile> {
        let mut out = Vec::new();
        for d in 1..=max_d {
            for delta in 0..=SeveriKey::arithmetic_genus(d) {
                for wa in 0..=u64::from(d) {
                    for alpha in enumerate_with_weight(wa, &Tally::empty()) {
                        for beta in enumerate_with_weight(u64::from(d) - wa, &Tally::empty()) {
                            for wg in 1..=beta.weight() {
                                for gamma in sub_tallies_with_weight(&beta, wg) {
                                    if gamma.is_empty() {
                                        continue;
                                    }
                                    out.push(ComponentProfile {
                                        d,
                                        delta,
                                        alpha: alpha.clone(),
                                        beta: beta.clone(),
                                        gamma,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn decomposition_valid(k: &SeveriKey, deco: &Decomposition) -> bool {
        let mut sorted = deco.profiles.clone();
        sorted.sort();
        if sorted != deco.profiles {
            return false;
        }
        let total_d: u64 = deco.profiles.iter().map(|p| u64::from(p.d)).sum();
        if total_d != u64::from(k.d) - 1 {
            return false;
        }
        if !deco.alpha_sum().le(&k.alpha) {
            return false;
        }
        let beta_matched = deco
            .profiles
            .iter()
            .fold(Tally::empty(), |acc, p| acc.add(&p.beta.sub(&p.gamma).unwrap()));
        if beta_matched != k.beta {
            return false;
        }
        delta_sum_matches(k, deco)
    }

    #[test]
    fn irreducible_never_exceeds_total() {
        let memo = CountTable::new();
        for d in 1..=4u32 {
            for delta in 0..=SeveriKey::node_cutoff(d) {
                for wa in 0..=u64::from(d) {
                    for alpha in enumerate_with_weight(wa, &Tally::empty()) {
                        for beta in enumerate_with_weight(u64::from(d) - wa, &Tally::empty()) {
                            let k = SeveriKey::new(d, delta, alpha.clone(), beta).unwrap();
                            let irr = count_irr(&k, &memo).unwrap();
                            let all = count(&k, &memo).unwrap();
                            assert!(irr <= all, "irreducible exceeds total at {k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_degree_examples() {
        let one = BigUint::one();
        // line times cubic: multinom(9; 1, 8) = 9
        assert_eq!(
            product_degree(&[(1, one.clone()), (8, one.clone())], &one).unwrap(),
            BigUint::from(9u32)
        );
        // a single factor passes through
        assert_eq!(
            product_degree(&[(5, BigUint::from(42u32))], &one).unwrap(),
            BigUint::from(42u32)
        );
        // symmetric pair of lines
        assert_eq!(
            product_degree(&[(1, one.clone()), (1, one.clone())], &BigUint::from(2u32)).unwrap(),
            one
        );
        // non-exact division is an error
        assert!(product_degree(&[(2, one.clone()), (1, one)], &BigUint::from(7u32)).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let k = key(4, 3, "[]", "4");
        let p = count_irr(&k, &CountTable::new()).unwrap();
        let s = count_irr(&k, &CountTable::sequential()).unwrap();
        assert_eq!(p, s);
    }
}
