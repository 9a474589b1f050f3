//! Kostant partitions: ways of writing a positive coweight as a sum of
//! positive coroots.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cartan::{Coweight, RootSystem};
use crate::error::{Error, Result};

/// A multiset of positive coroots, stored as coroot index -> multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KostantPartition {
    mult: BTreeMap<usize, u32>,
    weight: Coweight,
    size: u64,
}

impl KostantPartition {
    pub fn empty(rank: usize) -> Self {
        KostantPartition {
            mult: BTreeMap::new(),
            weight: Coweight::zero(rank),
            size: 0,
        }
    }

    /// Builds a partition from coroot indices and multiplicities, dropping
    /// zero multiplicities.
    pub fn from_multiplicities(
        rs: &RootSystem,
        mult: impl IntoIterator<Item = (usize, u32)>,
    ) -> Result<Self> {
        let coroots = rs.positive_coroots();
        let mut out = KostantPartition::empty(rs.rank());
        for (idx, n) in mult {
            if n == 0 {
                continue;
            }
            let beta = coroots.get(idx).ok_or_else(|| {
                Error::Parse(format!("coroot index {idx} out of range"))
            })?;
            if out.mult.insert(idx, n).is_some() {
                return Err(Error::Parse(format!("coroot index {idx} listed twice")));
            }
            out.weight = &out.weight + &beta.scaled(n as i64);
            out.size += n as u64;
        }
        Ok(out)
    }

    /// Coroot index -> multiplicity, for coroots present.
    pub fn multiplicities(&self) -> &BTreeMap<usize, u32> {
        &self.mult
    }

    pub fn weight(&self) -> &Coweight {
        &self.weight
    }

    /// `|K|`, the total multiplicity.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// `R_K`, the coroot indices with nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<usize> {
        self.mult.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.mult.len()
    }

    /// All multiplicities are one.
    pub fn is_simple(&self) -> bool {
        self.mult.values().all(|&n| n == 1)
    }

    /// Multiset sum.
    pub fn merge(&self, rs: &RootSystem, other: &Self) -> Self {
        let mut mult = self.mult.clone();
        for (&i, &n) in &other.mult {
            *mult.entry(i).or_insert(0) += n;
        }
        KostantPartition {
            mult,
            weight: &self.weight + &other.weight,
            size: self.size + other.size,
        }
        .checked(rs)
    }

    fn checked(self, rs: &RootSystem) -> Self {
        debug_assert_eq!(self.recompute_weight(rs), self.weight);
        self
    }

    /// `sum n_beta * beta`, recomputed from scratch.
    pub fn recompute_weight(&self, rs: &RootSystem) -> Coweight {
        let coroots = rs.positive_coroots();
        self.mult
            .iter()
            .fold(Coweight::zero(rs.rank()), |acc, (&i, &n)| {
                &acc + &coroots[i].scaled(n as i64)
            })
    }

    /// JSON pairs `[coroot coordinates, multiplicity]` in canonical coroot
    /// order.
    pub fn to_pairs(&self, rs: &RootSystem) -> Vec<(Vec<i64>, u32)> {
        let coroots = rs.positive_coroots();
        self.mult
            .iter()
            .map(|(&i, &n)| (coroots[i].coords().to_vec(), n))
            .collect()
    }

    pub fn from_pairs(rs: &RootSystem, pairs: &[(Vec<i64>, u32)]) -> Result<Self> {
        let mut mult = Vec::with_capacity(pairs.len());
        for (coords, n) in pairs {
            let beta = Coweight::new(coords.clone());
            let idx = rs
                .coroot_index(&beta)
                .ok_or_else(|| Error::Parse(format!("{beta} is not a positive coroot")))?;
            if *n == 0 {
                return Err(Error::Parse("multiplicities must be positive".into()));
            }
            mult.push((idx, *n));
        }
        KostantPartition::from_multiplicities(rs, mult)
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        serde_json::to_value(self.to_pairs(rs)).expect("plain integers")
    }

    pub fn from_json(rs: &RootSystem, value: &serde_json::Value) -> Result<Self> {
        let pairs: Vec<(Vec<i64>, u32)> = serde_json::from_value(value.clone())?;
        KostantPartition::from_pairs(rs, &pairs)
    }
}

/// Every Kostant partition of `theta`.
///
/// Coroots are visited from the top of the canonical order down, so the
/// simple coroots come last and every branch completes.
pub fn enumerate_partitions(rs: &RootSystem, theta: &Coweight) -> Result<Vec<KostantPartition>> {
    theta.check_positive(rs.rank())?;
    let mut out = Vec::new();
    let mut mult = Vec::new();
    descend(rs, rs.positive_coroots().len(), theta.clone(), &mut mult, false, &mut out);
    Ok(out
        .into_iter()
        .map(|m| {
            KostantPartition::from_multiplicities(rs, m)
                .expect("indices from the coroot list")
                .checked(rs)
        })
        .collect())
}

/// The Kostant partitions of `theta` with every multiplicity equal to one.
pub fn enumerate_simple_partitions(
    rs: &RootSystem,
    theta: &Coweight,
) -> Result<Vec<KostantPartition>> {
    theta.check_positive(rs.rank())?;
    let mut out = Vec::new();
    let mut mult = Vec::new();
    descend(rs, rs.positive_coroots().len(), theta.clone(), &mut mult, true, &mut out);
    Ok(out
        .into_iter()
        .map(|m| {
            KostantPartition::from_multiplicities(rs, m)
                .expect("indices from the coroot list")
                .checked(rs)
        })
        .collect())
}

fn descend(
    rs: &RootSystem,
    remaining_coroots: usize,
    remaining: Coweight,
    mult: &mut Vec<(usize, u32)>,
    simple_only: bool,
    out: &mut Vec<Vec<(usize, u32)>>,
) {
    if remaining.is_zero() {
        out.push(mult.clone());
        return;
    }
    if remaining_coroots == 0 {
        return;
    }
    let idx = remaining_coroots - 1;
    let beta = &rs.positive_coroots()[idx];
    let cap = if simple_only { 1 } else { u32::MAX };
    let mut rest = remaining.clone();
    let mut n = 0u32;
    loop {
        if n > 0 {
            mult.push((idx, n));
        }
        descend(rs, idx, rest.clone(), mult, simple_only, out);
        if n > 0 {
            mult.pop();
        }
        if n == cap {
            break;
        }
        let next = &rest - beta;
        if !next.is_positive() {
            break;
        }
        rest = next;
        n += 1;
    }
}

/// Mixed-radix indexing of the box `0 <= v <= theta`.
struct BoxIndex {
    dims: Vec<usize>,
}

impl BoxIndex {
    fn new(theta: &Coweight) -> Self {
        BoxIndex {
            dims: theta.coords().iter().map(|&n| n as usize + 1).collect(),
        }
    }

    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &d)| acc * d + c as usize)
    }

    fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.dims.len()];
        for (slot, &d) in v.iter_mut().zip(&self.dims).rev() {
            *slot = (idx % d) as i64;
            idx /= d;
        }
        v
    }

    /// Offset of `beta` in flat indices, if `beta` fits in the box.
    fn offset(&self, beta: &Coweight) -> Option<usize> {
        if beta
            .coords()
            .iter()
            .zip(&self.dims)
            .any(|(&c, &d)| c as usize >= d)
        {
            return None;
        }
        Some(self.encode(beta.coords()))
    }
}

/// Coefficients of `prod_beta 1/(1 - x^beta)` (or `prod_beta (1 + x^beta)`
/// when `simple_only`) on the box below `theta`.
fn box_counts(rs: &RootSystem, theta: &Coweight, simple_only: bool) -> (BoxIndex, Vec<BigUint>) {
    let index = BoxIndex::new(theta);
    let mut dp = vec![BigUint::zero(); index.len()];
    dp[0] = BigUint::one();
    for beta in rs.positive_coroots() {
        let Some(_) = index.offset(beta) else {
            continue;
        };
        let fits = |v: &[i64]| v.iter().zip(beta.coords()).all(|(a, b)| a >= b);
        let shifted = |v: &[i64]| -> Vec<i64> { v.iter().zip(beta.coords()).map(|(a, b)| a - b).collect() };
        if simple_only {
            // 0/1 knapsack: walk downward so each coroot is used at most once.
            for flat in (0..dp.len()).rev() {
                let v = index.decode(flat);
                if fits(&v) {
                    let src = index.encode(&shifted(&v));
                    let add = dp[src].clone();
                    dp[flat] += add;
                }
            }
        } else {
            for flat in 0..dp.len() {
                let v = index.decode(flat);
                if fits(&v) {
                    let src = index.encode(&shifted(&v));
                    let add = dp[src].clone();
                    dp[flat] += add;
                }
            }
        }
    }
    (index, dp)
}

/// Number of Kostant partitions of `theta`, by the generating-function
/// recurrence rather than enumeration.
pub fn count_partitions(rs: &RootSystem, theta: &Coweight) -> Result<BigUint> {
    theta.check_positive(rs.rank())?;
    let (index, dp) = box_counts(rs, theta, false);
    Ok(dp[index.encode(theta.coords())].clone())
}

/// Number of simple Kostant partitions of `theta`.
pub fn count_simple_partitions(rs: &RootSystem, theta: &Coweight) -> Result<BigUint> {
    theta.check_positive(rs.rank())?;
    let (index, dp) = box_counts(rs, theta, true);
    Ok(dp[index.encode(theta.coords())].clone())
}

/// Memoized partition counts for one root system. A miss fills the cache
/// with the whole box below the requested coweight.
pub struct PartitionCounter<'a> {
    rs: &'a RootSystem,
    cache: RwLock<HashMap<Coweight, BigUint>>,
}

impl<'a> PartitionCounter<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        PartitionCounter {
            rs,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn count(&self, theta: &Coweight) -> Result<BigUint> {
        theta.check_positive(self.rs.rank())?;
        if let Some(hit) = self.cache.read().expect("cache lock").get(theta) {
            return Ok(hit.clone());
        }
        let (index, dp) = box_counts(self.rs, theta, false);
        let answer = dp[index.encode(theta.coords())].clone();
        let mut cache = self.cache.write().expect("cache lock");
        for (flat, value) in dp.into_iter().enumerate() {
            cache
                .entry(Coweight::new(index.decode(flat)))
                .or_insert(value);
        }
        Ok(answer)
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, RootSystemSpec};

    fn rs(series: char, rank: usize) -> RootSystem {
        build_root_system(&RootSystemSpec::series(series, rank)).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight::new(v.to_vec())
    }

    /// Brute force over all multiplicity vectors bounded by the box.
    fn brute_force(rs: &RootSystem, theta: &Coweight, simple_only: bool) -> usize {
        let coroots = rs.positive_coroots();
        let caps: Vec<i64> = coroots
            .iter()
            .map(|b| {
                let c = b
                    .coords()
                    .iter()
                    .zip(theta.coords())
                    .filter(|(&bi, _)| bi > 0)
                    .map(|(&bi, &ti)| ti / bi)
                    .min()
                    .unwrap_or(0);
                if simple_only {
                    c.min(1)
                } else {
                    c
                }
            })
            .collect();
        let mut count = 0;
        let mut n = vec![0i64; coroots.len()];
        loop {
            let sum = coroots
                .iter()
                .zip(&n)
                .fold(Coweight::zero(rs.rank()), |acc, (b, &k)| &acc + &b.scaled(k));
            if &sum == theta {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n.len() {
                    return count;
                }
                if n[i] < caps[i] {
                    n[i] += 1;
                    break;
                }
                n[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn zero_has_the_empty_partition() {
        for sys in [rs('A', 1), rs('B', 2), rs('G', 2)] {
            let zero = Coweight::zero(sys.rank());
            let parts = enumerate_partitions(&sys, &zero).unwrap();
            assert_eq!(parts, vec![KostantPartition::empty(sys.rank())]);
            assert_eq!(count_partitions(&sys, &zero).unwrap(), BigUint::one());
            assert_eq!(enumerate_simple_partitions(&sys, &zero).unwrap().len(), 1);
        }
    }

    #[test]
    fn a2_examples() {
        let a2 = rs('A', 2);
        let parts = enumerate_partitions(&a2, &cw(&[1, 1])).unwrap();
        let as_pairs: BTreeSet<Vec<(Vec<i64>, u32)>> =
            parts.iter().map(|k| k.to_pairs(&a2)).collect();
        let expected: BTreeSet<Vec<(Vec<i64>, u32)>> = [
            vec![(vec![0, 1], 1), (vec![1, 0], 1)],
            vec![(vec![1, 1], 1)],
        ]
        .into_iter()
        .collect();
        assert_eq!(as_pairs, expected);
        assert_eq!(count_partitions(&a2, &cw(&[1, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(count_partitions(&a2, &cw(&[2, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(enumerate_simple_partitions(&a2, &cw(&[1, 1])).unwrap().len(), 2);
    }

    #[test]
    fn a1_examples() {
        let a1 = rs('A', 1);
        for n in 1..6 {
            let parts = enumerate_partitions(&a1, &cw(&[n])).unwrap();
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].size(), n as u64);
            assert_eq!(parts[0].support_size(), 1);
        }
        assert!(enumerate_simple_partitions(&a1, &cw(&[2])).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_positive() {
        let a2 = rs('A', 2);
        assert!(matches!(
            enumerate_partitions(&a2, &cw(&[1, -1])),
            Err(Error::NotPositive { .. })
        ));
        assert!(count_partitions(&a2, &cw(&[-1, 0])).is_err());
        assert!(enumerate_simple_partitions(&a2, &cw(&[0, -2])).is_err());
        assert!(matches!(
            count_partitions(&a2, &cw(&[1])),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn counts_match_brute_force() {
        for sys in [rs('A', 2), rs('B', 2), rs('G', 2), rs('A', 3)] {
            for theta in Coweight::positive_up_to_height(sys.rank(), 4) {
                let enumerated = enumerate_partitions(&sys, &theta).unwrap();
                let simple = enumerate_simple_partitions(&sys, &theta).unwrap();
                assert_eq!(enumerated.len(), brute_force(&sys, &theta, false), "{theta}");
                assert_eq!(simple.len(), brute_force(&sys, &theta, true), "{theta}");
                assert_eq!(
                    count_partitions(&sys, &theta).unwrap(),
                    BigUint::from(enumerated.len())
                );
                assert_eq!(
                    count_simple_partitions(&sys, &theta).unwrap(),
                    BigUint::from(simple.len())
                );
            }
        }
    }

    #[test]
    fn partitions_are_valid_and_distinct() {
        let sys = rs('C', 3);
        for theta in Coweight::positive_up_to_height(3, 5) {
            let parts = enumerate_partitions(&sys, &theta).unwrap();
            let distinct: BTreeSet<_> = parts.iter().map(|k| k.to_pairs(&sys)).collect();
            assert_eq!(distinct.len(), parts.len());
            for k in &parts {
                assert_eq!(&k.recompute_weight(&sys), &theta);
                assert!(k.support_size() as u64 <= k.size());
                assert_eq!(k.support_size() as u64 == k.size(), k.is_simple());
            }
            let simple = enumerate_simple_partitions(&sys, &theta).unwrap();
            let simple_from_all = parts.iter().filter(|k| k.is_simple()).count();
            assert_eq!(simple.len(), simple_from_all);
        }
    }

    #[test]
    fn json_round_trip() {
        let sys = rs('G', 2);
        for theta in Coweight::positive_up_to_height(2, 4) {
            for k in enumerate_partitions(&sys, &theta).unwrap() {
                let v = k.to_json(&sys);
                assert_eq!(KostantPartition::from_json(&sys, &v).unwrap(), k);
            }
        }
        let a2 = rs('A', 2);
        let bad = serde_json::json!([[[2, 1], 1]]);
        assert!(KostantPartition::from_json(&a2, &bad).is_err());
        let text = serde_json::to_string(
            &enumerate_partitions(&a2, &cw(&[1, 1])).unwrap()[0].to_json(&a2),
        )
        .unwrap();
        assert!(text == "[[[1,1],1]]" || text == "[[[0,1],1],[[1,0],1]]");
    }

    #[test]
    fn counter_caches_whole_box() {
        let sys = rs('B', 2);
        let counter = PartitionCounter::new(&sys);
        let c = counter.count(&cw(&[2, 3])).unwrap();
        assert_eq!(c, count_partitions(&sys, &cw(&[2, 3])).unwrap());
        assert_eq!(counter.cached_len(), 12);
        assert_eq!(
            counter.count(&cw(&[1, 2])).unwrap(),
            count_partitions(&sys, &cw(&[1, 2])).unwrap()
        );
        assert_eq!(counter.cached_len(), 12);
    }

    #[test]
    fn counter_is_shareable_across_threads() {
        let sys = rs('A', 3);
        let counter = PartitionCounter::new(&sys);
        let thetas = Coweight::positive_up_to_height(3, 5);
        let results: Vec<BigUint> = std::thread::scope(|s| {
            let handles: Vec<_> = thetas
                .iter()
                .map(|t| s.spawn(|| counter.count(t).unwrap()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (t, r) in thetas.iter().zip(results) {
            assert_eq!(r, count_partitions(&sys, t).unwrap());
        }
    }

    #[test]
    fn splitting_bijection_on_a2() {
        // (K1, K2 simple) with theta1 + theta2 = theta  <->  (K, S subset of R_K)
        let sys = rs('A', 2);
        for theta in Coweight::positive_up_to_height(2, 5) {
            let lhs: BigUint = theta
                .lower_box()
                .iter()
                .map(|t1| {
                    count_partitions(&sys, t1).unwrap()
                        * count_simple_partitions(&sys, &(&theta - t1)).unwrap()
                })
                .sum();
            let rhs: BigUint = enumerate_partitions(&sys, &theta)
                .unwrap()
                .iter()
                .map(|k| BigUint::one() << k.support_size())
                .sum();
            assert_eq!(lhs, rhs, "{theta}");
        }
    }

    #[test]
    fn merge_adds_multisets() {
        let sys = rs('A', 2);
        let k1 = KostantPartition::from_multiplicities(&sys, [(0, 1), (2, 2)]).unwrap();
        let k2 = KostantPartition::from_multiplicities(&sys, [(2, 1)]).unwrap();
        let k = k1.merge(&sys, &k2);
        assert_eq!(k.multiplicities().get(&2), Some(&3));
        assert_eq!(k.size(), 4);
        assert_eq!(k.weight(), &cw(&[3, 4]));
    }
}
