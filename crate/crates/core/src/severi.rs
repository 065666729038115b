//! Generalized Severi degrees via the Caporaso-Harris recursion.
//!
//! `N^{d,delta}(alpha, beta)` counts degree-d plane curves with exactly
//! `delta` nodes meeting a fixed line with contact orders prescribed by
//! `alpha` (at assigned points) and `beta` (at unassigned points), through
//! the appropriate number of general points. Cutting with the hyperplane of
//! curves through a general point of the line expresses each degree as
//!
//! ```text
//! N^{d,delta}(a, b) = sum_{k: b_k > 0} k * N^{d,delta}(a + e_k, b - e_k)
//!     + sum I^{b'-b} C(b', b) C(a, a') * N^{d-1,delta'}(a', b')
//! ```
//!
//! the second sum running over `a' <= a`, `b' >= b` with
//! `I a' + I b' = d - 1` and `delta' = delta + |b' - b| - d + 1`. Every
//! child key sits in dimension exactly one lower, which `expand` asserts.
//!
//! All arithmetic is arbitrary precision; results are memoized in a
//! write-once [`CountTable`] shared between the plain and the
//! irreducible-curve recursions.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::Zero;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tally::{choose, enumerate_with_weight, sub_tallies_with_weight, Tally};

/// Identifies a generalized Severi degree: degree, node count, and the two
/// contact tallies, with `weight(alpha) + weight(beta) = d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeveriKey {
    pub d: u32,
    pub delta: i64,
    pub alpha: Tally,
    pub beta: Tally,
}

impl SeveriKey {
    /// Validates the degree/weight invariant and builds a key.
    pub fn new(d: u32, delta: i64, alpha: Tally, beta: Tally) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidKey("degree must be >= 1".into()));
        }
        let w = alpha.weight() + beta.weight();
        if w != u64::from(d) {
            return Err(Error::InvalidKey(format!(
                "weight(alpha) + weight(beta) = {w} but d = {d}"
            )));
        }
        Ok(SeveriKey { d, delta, alpha, beta })
    }

    /// Arithmetic genus of a smooth plane curve of degree d.
    pub fn arithmetic_genus(d: u32) -> i64 {
        let d = i64::from(d);
        (d - 1) * (d - 2) / 2
    }

    /// Geometric genus of the curves in this family.
    pub fn genus(&self) -> i64 {
        Self::arithmetic_genus(self.d) - self.delta
    }

    /// Dimension of the family: `2d + g - 1 + |beta|`. May be negative; the
    /// caller interprets.
    pub fn dimension(&self) -> i64 {
        2 * i64::from(self.d) + self.genus() - 1 + self.beta.norm() as i64
    }

    /// Maximal node count of a reduced degree-d curve: `d(d-1)/2`.
    pub fn node_cutoff(d: u32) -> i64 {
        let d = i64::from(d);
        d * (d - 1) / 2
    }
}

impl fmt::Display for SeveriKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N^{{{},{}}}({},{})",
            self.d, self.delta, self.alpha, self.beta
        )
    }
}

impl fmt::Debug for SeveriKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Where a recursion term comes from: trading one unassigned contact of
/// order `k` for an assigned one, or splitting off the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrigin {
    FirstSum { order: usize },
    SecondSum,
}

/// One term of the recursion: `coeff * N(child)`.
#[derive(Debug, Clone)]
pub struct ExpandTerm {
    pub coeff: BigUint,
    pub child: SeveriKey,
    pub origin: TermOrigin,
}

/// Memoization key: the Severi key plus the irreducibility flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct MemoKey {
    d: u32,
    delta: i64,
    alpha: Tally,
    beta: Tally,
    irr: bool,
}

/// Write-once memo table shared by [`count`] and
/// [`crate::irreducible::count_irr`].
///
/// A key's value is inserted at most once and never mutated; concurrent
/// duplicate computation of the same key is permitted (both computations
/// produce the same value, the first insert wins). With the `parallel`
/// feature the recursion fans its terms out over a work-stealing pool;
/// [`CountTable::sequential`] forces the single-threaded path.
pub struct CountTable {
    map: RwLock<HashMap<MemoKey, BigUint>>,
    parallel: bool,
}

impl Default for CountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CountTable {
    /// A table using the parallel recursion when the `parallel` feature is
    /// enabled, the sequential one otherwise.
    pub fn new() -> Self {
        CountTable {
            map: RwLock::new(HashMap::new()),
            parallel: cfg!(feature = "parallel"),
        }
    }

    /// A table that always uses the sequential recursion.
    pub fn sequential() -> Self {
        CountTable {
            map: RwLock::new(HashMap::new()),
            parallel: false,
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &MemoKey) -> Option<BigUint> {
        self.map.read().expect("memo lock poisoned").get(key).cloned()
    }

    fn insert(&self, key: MemoKey, value: BigUint) {
        let mut map = self.map.write().expect("memo lock poisoned");
        let prev = map.entry(key).or_insert_with(|| value.clone());
        debug_assert_eq!(*prev, value, "memo key recomputed with a different value");
    }

    /// Serializes the table as newline-delimited JSON records; values are
    /// decimal strings so no integer width is lost.
    pub fn save<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let map = self.map.read().expect("memo lock poisoned");
        let mut records: Vec<CacheRecord> = map
            .iter()
            .map(|(k, v)| CacheRecord {
                d: k.d,
                delta: k.delta,
                alpha: k.alpha.entries().to_vec(),
                beta: k.beta.entries().to_vec(),
                irr: k.irr,
                value: v.to_string(),
            })
            .collect();
        records.sort_by(|a, b| {
            (a.d, a.delta, &a.alpha, &a.beta, a.irr).cmp(&(b.d, b.delta, &b.alpha, &b.beta, b.irr))
        });
        for r in records {
            serde_json::to_writer(&mut out, &r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Loads newline-delimited JSON records, ignoring lines that fail to
    /// parse or violate the key invariant. Returns (loaded, skipped).
    pub fn load<R: BufRead>(&self, input: R) -> std::io::Result<(usize, usize)> {
        let mut loaded = 0;
        let mut skipped = 0;
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(r) => match r.into_memo_entry() {
                    Some((key, value)) => {
                        self.insert(key, value);
                        loaded += 1;
                    }
                    None => skipped += 1,
                },
                Err(_) => skipped += 1,
            }
        }
        Ok((loaded, skipped))
    }
}

/// One line of the cache file.
#[derive(Serialize, Deserialize)]
struct CacheRecord {
    d: u32,
    delta: i64,
    alpha: Vec<u32>,
    beta: Vec<u32>,
    irr: bool,
    value: String,
}

impl CacheRecord {
    fn into_memo_entry(self) -> Option<(MemoKey, BigUint)> {
        let alpha = Tally::new(self.alpha);
        let beta = Tally::new(self.beta);
        SeveriKey::new(self.d, self.delta, alpha.clone(), beta.clone()).ok()?;
        let value: BigUint = self.value.parse().ok()?;
        Some((
            MemoKey { d: self.d, delta: self.delta, alpha, beta, irr: self.irr },
            value,
        ))
    }
}

/// Dimension of the family identified by `key` (may be negative).
pub fn dimension(key: &SeveriKey) -> i64 {
    key.dimension()
}

/// Enumerates the recursion terms of `key` with nonzero coefficient, without
/// pruning children whose count happens to vanish.
///
/// Preconditions: `d >= 2` and neither node cutoff triggered. Each child is
/// checked to sit in dimension `dimension(key) - 1`.
pub fn expand(key: &SeveriKey) -> Result<Vec<ExpandTerm>> {
    if key.d < 2 {
        return Err(Error::InvalidKey(format!(
            "expand requires d >= 2, got {}",
            key.d
        )));
    }
    if key.delta < 0 || key.delta > SeveriKey::node_cutoff(key.d) {
        return Err(Error::InvalidKey(format!(
            "expand: node count {} outside [0, {}]",
            key.delta,
            SeveriKey::node_cutoff(key.d)
        )));
    }
    let terms = recursion_terms(key)?;
    for t in &terms {
        if t.child.dimension() != key.dimension() - 1 {
            return Err(Error::InternalInconsistency(format!(
                "child {} of {} has dimension {} != {}",
                t.child,
                key,
                t.child.dimension(),
                key.dimension() - 1
            )));
        }
    }
    Ok(terms)
}

fn recursion_terms(key: &SeveriKey) -> Result<Vec<ExpandTerm>> {
    let mut terms = Vec::new();

    // First sum: one unassigned contact of order k becomes assigned.
    for k in key.beta.support() {
        let child = SeveriKey::new(
            key.d,
            key.delta,
            key.alpha.add_unit(k),
            key.beta.sub_unit(k)?,
        )?;
        terms.push(ExpandTerm {
            coeff: BigUint::from(k),
            child,
            origin: TermOrigin::FirstSum { order: k },
        });
    }

    // Second sum: the line splits off, leaving a degree d-1 curve with
    // contact pattern (alpha', beta'), alpha' <= alpha, beta' >= beta.
    let d1 = u64::from(key.d) - 1;
    let alpha_weight_max = key.alpha.weight().min(d1);
    for wa in 0..=alpha_weight_max {
        for alpha_p in sub_tallies_with_weight(&key.alpha, wa) {
            for beta_p in enumerate_with_weight(d1 - wa, &key.beta) {
                let excess = beta_p.sub(&key.beta)?;
                let delta_p = key.delta + excess.norm() as i64 - i64::from(key.d) + 1;
                let coeff = excess.power()
                    * choose(&beta_p, &key.beta)?
                    * choose(&key.alpha, &alpha_p)?;
                if coeff.is_zero() {
                    continue;
                }
                let child = SeveriKey::new(key.d - 1, delta_p, alpha_p.clone(), beta_p)?;
                terms.push(ExpandTerm { coeff, child, origin: TermOrigin::SecondSum });
            }
        }
    }
    Ok(terms)
}

/// Computes the generalized Severi degree `N^{d,delta}(alpha, beta)`.
///
/// Base and cutoff cases: 0 when `delta < 0` or `delta > d(d-1)/2` (a
/// reduced degree-d curve has geometric genus >= 1 - d, bounding its node
/// count); for d = 1 the count is 1 exactly when `delta = 0` (the unique
/// line through the imposed configuration).
pub fn count(key: &SeveriKey, memo: &CountTable) -> Result<BigUint> {
    if key.delta < 0 || key.delta > SeveriKey::node_cutoff(key.d) {
        return Ok(BigUint::zero());
    }
    if key.d == 1 {
        return Ok(if key.delta == 0 {
            BigUint::from(1u32)
        } else {
            BigUint::zero()
        });
    }
    let memo_key = MemoKey {
        d: key.d,
        delta: key.delta,
        alpha: key.alpha.clone(),
        beta: key.beta.clone(),
        irr: false,
    };
    if let Some(v) = memo.get(&memo_key) {
        return Ok(v);
    }
    let terms = recursion_terms(key)?;
    let total = sum_terms(key, &terms, memo)?;
    memo.insert(memo_key, total.clone());
    Ok(total)
}

/// Below this degree a subtree is too cheap to amortize task spawning and
/// the duplicate work of racing an unfilled memo; such keys always recurse
/// sequentially.
pub(crate) const PARALLEL_DEGREE_FLOOR: u32 = 6;

#[cfg(feature = "parallel")]
fn sum_terms(key: &SeveriKey, terms: &[ExpandTerm], memo: &CountTable) -> Result<BigUint> {
    if memo.parallel && key.d >= PARALLEL_DEGREE_FLOOR && terms.len() > 1 {
        return terms
            .par_iter()
            .map(|t| Ok(&t.coeff * count(&t.child, memo)?))
            .try_reduce(BigUint::zero, |a, b| Ok(a + b));
    }
    sum_terms_sequential(terms, memo)
}

#[cfg(not(feature = "parallel"))]
fn sum_terms(key: &SeveriKey, terms: &[ExpandTerm], memo: &CountTable) -> Result<BigUint> {
    let _ = key;
    sum_terms_sequential(terms, memo)
}

fn sum_terms_sequential(terms: &[ExpandTerm], memo: &CountTable) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for t in terms {
        total += &t.coeff * count(&t.child, memo)?;
    }
    Ok(total)
}

/// Evaluates many keys against one shared memo table. With the `parallel`
/// feature and a parallel table the keys are distributed over the pool;
/// results come back in input order either way.
pub fn count_batch(keys: &[SeveriKey], memo: &CountTable) -> Result<Vec<BigUint>> {
    #[cfg(feature = "parallel")]
    if memo.parallel && keys.len() > 1 {
        return keys.par_iter().map(|k| count(k, memo)).collect();
    }
    keys.iter().map(|k| count(k, memo)).collect()
}

/// Memo-table hooks for the irreducible recursion, which shares the table
/// through the `irr` flag.
pub(crate) fn memo_get_irr(memo: &CountTable, key: &SeveriKey) -> Option<BigUint> {
    memo.get(&MemoKey {
        d: key.d,
        delta: key.delta,
        alpha: key.alpha.clone(),
        beta: key.beta.clone(),
        irr: true,
    })
}

pub(crate) fn memo_insert_irr(memo: &CountTable, key: &SeveriKey, value: BigUint) {
    memo.insert(
        MemoKey {
            d: key.d,
            delta: key.delta,
            alpha: key.alpha.clone(),
            beta: key.beta.clone(),
            irr: true,
        },
        value,
    );
}

pub(crate) fn memo_is_parallel(memo: &CountTable) -> bool {
    memo.parallel
}
