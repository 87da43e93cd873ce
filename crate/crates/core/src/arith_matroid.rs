//! Abstract arithmetic matroids: rank/multiplicity oracles, duality,
//! deletion, contraction, direct sums, element classification, molecules,
//! and the exhaustive axiom verifier.
//!
//! Sublists of the ground list are index subsets stored as bitmasks, so
//! repeated vectors occupy distinct positions and multiset subtleties
//! vanish.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ground-size cap for the exhaustive axiom check.
pub const DEFAULT_AXIOM_CAP: usize = 12;

/// An index subset of the ground list, as a bitmask (bit i = element i).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(k: usize) -> Self {
        debug_assert!(k <= 32);
        if k == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << k) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u32 << i))
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, k: usize) -> Self {
        Self::full(k).minus(self)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, ascending as bitmasks.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut cur: Option<u32> = Some(0);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == mask {
                None
            } else {
                Some((out.wrapping_sub(mask)) & mask)
            };
            Some(Subset(out))
        })
    }

    /// All supersets of `self` inside `within`.
    pub fn supersets_within(self, within: Subset) -> impl Iterator<Item = Subset> {
        let base = self;
        within.minus(self).subsets().map(move |s| base.union(s))
    }

    /// Re-indexes a subset of a ground list after removing position `v`:
    /// bits above `v` shift down. `self` must not contain `v`.
    pub fn squeeze(self, v: usize) -> Subset {
        debug_assert!(!self.contains(v));
        let low = self.0 & ((1u32 << v) - 1);
        let high = self.0 >> (v + 1);
        Subset(low | high << v)
    }

    /// Inverse of [`Subset::squeeze`]: re-embeds into the larger ground
    /// list, leaving bit `v` clear.
    pub fn unsqueeze(self, v: usize) -> Subset {
        let low = self.0 & ((1u32 << v) - 1);
        let high = self.0 >> v;
        Subset(low | high << (v + 1))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// The ground list: a size plus optional distinct labels.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn unlabeled(size: usize) -> Self {
        Self { size, labels: None }
    }

    pub fn labeled(labels: Vec<String>) -> Self {
        Self {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Renders a subset with labels when available, indices otherwise.
    pub fn describe(&self, s: Subset) -> String {
        let parts: Vec<String> = s
            .iter()
            .map(|i| match &self.labels {
                Some(ls) => ls[i].clone(),
                None => i.to_string(),
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Rank and multiplicity oracle backing an [`ArithmeticMatroid`].
pub trait MatroidOracle: Send + Sync {
    fn rank(&self, a: Subset) -> usize;
    fn multiplicity(&self, a: Subset) -> BigInt;
}

/// An arithmetic matroid: a ground list with rank and multiplicity
/// oracles, either table-backed or delegating to a representation.
#[derive(Clone)]
pub struct ArithmeticMatroid {
    ground: GroundSet,
    oracle: Arc<dyn MatroidOracle>,
}

struct TableOracle {
    rank: Vec<usize>,
    mult: Vec<BigInt>,
}

impl MatroidOracle for TableOracle {
    fn rank(&self, a: Subset) -> usize {
        self.rank[a.0 as usize]
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        self.mult[a.0 as usize].clone()
    }
}

struct DualOracle {
    inner: ArithmeticMatroid,
}

impl MatroidOracle for DualOracle {
    fn rank(&self, a: Subset) -> usize {
        let k = self.inner.ground.size();
        let x = Subset::full(k);
        a.len() + self.inner.rank(x.minus(a)) - self.inner.rank(x)
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        let k = self.inner.ground.size();
        self.inner.multiplicity(a.complement(k))
    }
}

struct DeleteOracle {
    inner: ArithmeticMatroid,
    v: usize,
}

impl MatroidOracle for DeleteOracle {
    fn rank(&self, a: Subset) -> usize {
        self.inner.rank(a.unsqueeze(self.v))
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        self.inner.multiplicity(a.unsqueeze(self.v))
    }
}

struct ContractOracle {
    inner: ArithmeticMatroid,
    v: usize,
}

impl MatroidOracle for ContractOracle {
    fn rank(&self, a: Subset) -> usize {
        let lifted = a.unsqueeze(self.v).with(self.v);
        self.inner.rank(lifted) - self.inner.rank(Subset::singleton(self.v))
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        self.inner.multiplicity(a.unsqueeze(self.v).with(self.v))
    }
}

struct DirectSumOracle {
    left: ArithmeticMatroid,
    right: ArithmeticMatroid,
}

impl DirectSumOracle {
    fn split(&self, a: Subset) -> (Subset, Subset) {
        let k1 = self.left.ground.size();
        (
            a.intersect(Subset::full(k1)),
            Subset(a.0 >> k1),
        )
    }
}

impl MatroidOracle for DirectSumOracle {
    fn rank(&self, a: Subset) -> usize {
        let (l, r) = self.split(a);
        self.left.rank(l) + self.right.rank(r)
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        let (l, r) = self.split(a);
        self.left.multiplicity(l) * self.right.multiplicity(r)
    }
}

struct RestrictionOracle {
    inner: ArithmeticMatroid,
    members: Vec<usize>,
}

impl RestrictionOracle {
    fn embed(&self, a: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for i in a.iter() {
            out = out.with(self.members[i]);
        }
        out
    }
}

impl MatroidOracle for RestrictionOracle {
    fn rank(&self, a: Subset) -> usize {
        self.inner.rank(self.embed(a))
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        self.inner.multiplicity(self.embed(a))
    }
}

/// Free / torsion / proper classification of a ground element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ElementClass {
    Free,
    Torsion,
    Proper,
}

impl ArithmeticMatroid {
    /// Explicit-table matroid; tables are indexed by subset bitmask.
    pub fn from_tables(ground: GroundSet, rank: Vec<usize>, mult: Vec<BigInt>) -> Result<Self> {
        let n = 1usize << ground.size();
        if rank.len() != n {
            return Err(Error::TableSize {
                expected: n,
                got: rank.len(),
            });
        }
        if mult.len() != n {
            return Err(Error::TableSize {
                expected: n,
                got: mult.len(),
            });
        }
        for (i, m) in mult.iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::NonPositiveMultiplicity(m.to_string(), i as u32));
            }
        }
        Ok(Self {
            ground,
            oracle: Arc::new(TableOracle { rank, mult }),
        })
    }

    pub fn from_oracle(ground: GroundSet, oracle: Arc<dyn MatroidOracle>) -> Self {
        Self { ground, oracle }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn rank(&self, a: Subset) -> usize {
        self.oracle.rank(a)
    }

    pub fn multiplicity(&self, a: Subset) -> BigInt {
        self.oracle.multiplicity(a)
    }

    pub fn rank_total(&self) -> usize {
        self.rank(self.full())
    }

    /// Materializes full rank and multiplicity tables.
    pub fn to_tables(&self) -> (Vec<usize>, Vec<BigInt>) {
        let n = 1usize << self.size();
        let mut rank = Vec::with_capacity(n);
        let mut mult = Vec::with_capacity(n);
        for bits in 0..n {
            rank.push(self.rank(Subset(bits as u32)));
            mult.push(self.multiplicity(Subset(bits as u32)));
        }
        (rank, mult)
    }

    /// Table-backed copy of this matroid.
    pub fn to_explicit(&self) -> Self {
        let (rank, mult) = self.to_tables();
        Self {
            ground: self.ground.clone(),
            oracle: Arc::new(TableOracle { rank, mult }),
        }
    }

    /// The dual: `rk*(A) = |A| - rk(X) + rk(X \ A)`, `m*(A) = m(X \ A)`.
    pub fn dual(&self) -> Self {
        Self {
            ground: self.ground.clone(),
            oracle: Arc::new(DualOracle {
                inner: self.clone(),
            }),
        }
    }

    pub fn delete(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        Ok(Self {
            ground: self.minor_ground(v),
            oracle: Arc::new(DeleteOracle {
                inner: self.clone(),
                v,
            }),
        })
    }

    pub fn contract(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        Ok(Self {
            ground: self.minor_ground(v),
            oracle: Arc::new(ContractOracle {
                inner: self.clone(),
                v,
            }),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut labels = None;
        if let (Some(l), Some(r)) = (self.ground.labels(), other.ground.labels()) {
            let mut ls: Vec<String> = l.to_vec();
            ls.extend(r.iter().cloned());
            if ls.iter().collect::<std::collections::BTreeSet<_>>().len() == ls.len() {
                labels = Some(ls);
            }
        }
        let ground = match labels {
            Some(ls) => GroundSet::labeled(ls),
            None => GroundSet::unlabeled(self.size() + other.size()),
        };
        Self {
            ground,
            oracle: Arc::new(DirectSumOracle {
                left: self.clone(),
                right: other.clone(),
            }),
        }
    }

    /// Restriction to a sublist; ground indices are renumbered in order.
    pub fn restriction(&self, members: Subset) -> Self {
        let members: Vec<usize> = members.iter().collect();
        let ground = match self.ground.labels() {
            Some(ls) => GroundSet::labeled(members.iter().map(|&i| ls[i].clone()).collect()),
            None => GroundSet::unlabeled(members.len()),
        };
        Self {
            ground,
            oracle: Arc::new(RestrictionOracle {
                inner: self.clone(),
                members,
            }),
        }
    }

    pub fn classify(&self, v: usize) -> Result<ElementClass> {
        self.check_index(v)?;
        if self.rank(Subset::singleton(v)) == 0 {
            Ok(ElementClass::Torsion)
        } else if self.rank(self.full().without(v)) + 1 == self.rank_total() {
            Ok(ElementClass::Free)
        } else {
            Ok(ElementClass::Proper)
        }
    }

    pub fn is_molecule(&self) -> bool {
        (0..self.size()).all(|v| self.classify(v).unwrap() != ElementClass::Proper)
    }

    /// `mu_B(A) = sum over A <= T <= B of (-1)^{|T|-|A|} m(T)`.
    pub fn mu(&self, a: Subset, b: Subset) -> Result<BigInt> {
        if !a.is_subset_of(b) {
            return Err(Error::NotASubset { a: a.0, b: b.0 });
        }
        let mut acc = BigInt::zero();
        for t in a.supersets_within(b) {
            let term = self.multiplicity(t);
            if (t.len() - a.len()) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }

    pub fn is_basis(&self, b: Subset) -> bool {
        let r = self.rank_total();
        b.len() == r && self.rank(b) == r
    }

    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank_total();
        self.full()
            .subsets()
            .filter(|s| s.len() == r && self.rank(*s) == r)
            .collect()
    }

    /// All sublists of full rank, ascending as bitmasks.
    pub fn maximal_rank_sublists(&self) -> Vec<Subset> {
        let r = self.rank_total();
        self.full().subsets().filter(|s| self.rank(*s) == r).collect()
    }

    pub fn check_axioms(&self) -> Result<AxiomReport> {
        self.check_axioms_with_cap(DEFAULT_AXIOM_CAP)
    }

    /// Exhaustively checks the rank axioms and the five multiplicity
    /// axioms over the full power set. Quadratic-in-subsets enumeration,
    /// so the ground size is capped.
    pub fn check_axioms_with_cap(&self, cap: usize) -> Result<AxiomReport> {
        let k = self.size();
        if k > cap {
            return Err(Error::CapExceeded { size: k, cap });
        }
        let x = self.full();
        let (rank, mult) = self.to_tables();
        let rk = |s: Subset| rank[s.0 as usize];
        let m = |s: Subset| &mult[s.0 as usize];

        let mut report = AxiomReport::default();

        // Rank axioms.
        for a in x.subsets() {
            if rk(a) > a.len() {
                report.rank_witnesses.push(AxiomWitness::RankCardinality { a });
            }
        }
        for a in x.subsets() {
            for b in x.subsets() {
                if a.is_subset_of(b) && rk(a) > rk(b) {
                    report.rank_witnesses.push(AxiomWitness::RankMonotone { a, b });
                }
                if rk(a.union(b)) + rk(a.intersect(b)) > rk(a) + rk(b) {
                    report
                        .rank_witnesses
                        .push(AxiomWitness::RankSubmodular { a, b });
                }
            }
        }

        // Axioms (1) and (2): divisibility along single-element extensions.
        for a in x.subsets() {
            for v in 0..k {
                if a.contains(v) {
                    continue;
                }
                let av = a.with(v);
                if rk(av) == rk(a) {
                    if !(m(a) % m(av)).is_zero() {
                        report.witnesses[0].push(AxiomWitness::DividesDependent { a, v });
                    }
                } else if !(m(av) % m(a)).is_zero() {
                    report.witnesses[1].push(AxiomWitness::DividesIndependent { a, v });
                }
            }
        }

        // Axiom (3): for every A <= B and bipartition B \ A = F + T with
        // rk(C) = rk(A) + |C cap F| throughout, m(A) m(B) = m(A+F) m(A+T).
        // Given the rank axioms, the quantified condition is equivalent to
        // every t in T being dependent on A and F being independent over A.
        for a in x.subsets() {
            let rest_all = x.minus(a);
            for rest in rest_all.subsets() {
                let b = a.union(rest);
                for f in rest.subsets() {
                    let t = rest.minus(f);
                    let cond = t.iter().all(|ti| rk(a.with(ti)) == rk(a))
                        && rk(a.union(f)) == rk(a) + f.len();
                    if !cond {
                        continue;
                    }
                    if m(a) * m(b) != m(a.union(f)) * m(a.union(t)) {
                        report.witnesses[2].push(AxiomWitness::MoleculeProduct { a, b, f, t });
                    }
                }
            }
        }

        // Axioms (4) and (5): nonnegativity of mu and mu*.
        let dual = self.dual().to_explicit();
        for a in x.subsets() {
            for b in a.supersets_within(x) {
                if rk(a) == rk(b) {
                    let value = self.mu(a, b)?;
                    if value.is_negative() {
                        report.witnesses[3].push(AxiomWitness::NonnegativeMu { a, b, value });
                    }
                }
                if dual.rank(a) == dual.rank(b) {
                    let value = dual.mu(a, b)?;
                    if value.is_negative() {
                        report.witnesses[4].push(AxiomWitness::NonnegativeMuStar { a, b, value });
                    }
                }
            }
        }

        Ok(report)
    }

    /// Re-checks a single witness against this matroid; used to confirm
    /// that reported failures replay.
    pub fn replay_witness(&self, w: &AxiomWitness) -> bool {
        match w {
            AxiomWitness::RankCardinality { a } => self.rank(*a) > a.len(),
            AxiomWitness::RankMonotone { a, b } => {
                a.is_subset_of(*b) && self.rank(*a) > self.rank(*b)
            }
            AxiomWitness::RankSubmodular { a, b } => {
                self.rank(a.union(*b)) + self.rank(a.intersect(*b))
                    > self.rank(*a) + self.rank(*b)
            }
            AxiomWitness::DividesDependent { a, v } => {
                let av = a.with(*v);
                self.rank(av) == self.rank(*a)
                    && !(self.multiplicity(*a) % self.multiplicity(av)).is_zero()
            }
            AxiomWitness::DividesIndependent { a, v } => {
                let av = a.with(*v);
                self.rank(av) == self.rank(*a) + 1
                    && !(self.multiplicity(av) % self.multiplicity(*a)).is_zero()
            }
            AxiomWitness::MoleculeProduct { a, b, f, t } => {
                self.multiplicity(*a) * self.multiplicity(*b)
                    != self.multiplicity(a.union(*f)) * self.multiplicity(a.union(*t))
            }
            AxiomWitness::NonnegativeMu { a, b, value } => {
                self.mu(*a, *b).map_or(false, |v| &v == value && v.is_negative())
            }
            AxiomWitness::NonnegativeMuStar { a, b, value } => self
                .dual()
                .mu(*a, *b)
                .map_or(false, |v| &v == value && v.is_negative()),
        }
    }

    fn check_index(&self, v: usize) -> Result<()> {
        if v >= self.size() {
            return Err(Error::InvalidIndex {
                index: v,
                size: self.size(),
            });
        }
        Ok(())
    }

    fn minor_ground(&self, v: usize) -> GroundSet {
        match self.ground.labels() {
            Some(ls) => GroundSet::labeled(
                ls.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != v)
                    .map(|(_, l)| l.clone())
                    .collect(),
            ),
            None => GroundSet::unlabeled(self.size() - 1),
        }
    }
}

/// A concrete violation of one axiom, replayable against the matroid.
#[derive(Clone, Debug, Serialize)]
pub enum AxiomWitness {
    RankCardinality { a: Subset },
    RankMonotone { a: Subset, b: Subset },
    RankSubmodular { a: Subset, b: Subset },
    DividesDependent { a: Subset, v: usize },
    DividesIndependent { a: Subset, v: usize },
    MoleculeProduct { a: Subset, b: Subset, f: Subset, t: Subset },
    NonnegativeMu { a: Subset, b: Subset, value: BigInt },
    NonnegativeMuStar { a: Subset, b: Subset, value: BigInt },
}

/// Outcome of the exhaustive axiom check, with witnesses per failure.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub rank_witnesses: Vec<AxiomWitness>,
    /// Witnesses for multiplicity axioms (1)..(5), by index.
    pub witnesses: [Vec<AxiomWitness>; 5],
}

impl AxiomReport {
    pub fn rank_ok(&self) -> bool {
        self.rank_witnesses.is_empty()
    }

    pub fn axiom_ok(&self, i: usize) -> bool {
        self.witnesses[i - 1].is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.rank_ok() && self.witnesses.iter().all(Vec::is_empty)
    }

    /// 1-based indices of the failing multiplicity axioms.
    pub fn failing_axioms(&self) -> Vec<usize> {
        (1..=5).filter(|&i| !self.axiom_ok(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn subset_basics() {
        let s = Subset(0b1011);
        assert_eq!(s.len(), 3);
        assert!(s.contains(0) && s.contains(1) && s.contains(3));
        assert_eq!(s.complement(4), Subset(0b0100));
        assert_eq!(s.subsets().count(), 8);
        assert_eq!(Subset(0b101).squeeze(1), Subset(0b11));
        assert_eq!(Subset(0b11).unsqueeze(1), Subset(0b101));
        assert_eq!(
            Subset(0b01).supersets_within(Subset(0b111)).count(),
            4
        );
    }

    #[test]
    fn dual_examples() {
        let m = fixtures::diagonal_pair_matroid();
        let d = m.dual();
        assert_eq!(d.rank_total(), 0);
        assert_eq!(d.multiplicity(Subset::EMPTY), 2.into());
        // involution on all oracle values
        let dd = d.dual();
        for s in m.full().subsets() {
            assert_eq!(dd.rank(s), m.rank(s));
            assert_eq!(dd.multiplicity(s), m.multiplicity(s));
        }

        let m = fixtures::scaled_plane_matroid();
        // m*({c,d}) = m({a,b}) = 18
        assert_eq!(m.dual().multiplicity(Subset(0b1100)), 18.into());
    }

    #[test]
    fn classify_examples() {
        let m = fixtures::molecule_z2_z6_matroid();
        assert_eq!(m.classify(0).unwrap(), ElementClass::Free);
        assert_eq!(m.classify(1).unwrap(), ElementClass::Free);
        assert_eq!(m.classify(2).unwrap(), ElementClass::Torsion);
        assert_eq!(m.classify(3).unwrap(), ElementClass::Torsion);
        assert!(m.is_molecule());

        let m = fixtures::three_fan_matroid();
        assert_eq!(m.classify(2).unwrap(), ElementClass::Proper);
        assert!(!m.is_molecule());

        let m = fixtures::diagonal_pair_matroid();
        assert_eq!(m.classify(0).unwrap(), ElementClass::Free);
    }

    #[test]
    fn classification_duality() {
        for m in [
            fixtures::molecule_z2_z6_matroid(),
            fixtures::three_fan_matroid(),
            fixtures::scaled_plane_matroid(),
        ] {
            let d = m.dual();
            for v in 0..m.size() {
                let got = d.classify(v).unwrap();
                let expect = match m.classify(v).unwrap() {
                    ElementClass::Free => ElementClass::Torsion,
                    ElementClass::Torsion => ElementClass::Free,
                    ElementClass::Proper => ElementClass::Proper,
                };
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn duality_exchange() {
        let m = fixtures::three_fan_matroid();
        for v in 0..m.size() {
            let lhs = m.dual().delete(v).unwrap();
            let rhs = m.contract(v).unwrap().dual();
            for s in lhs.full().subsets() {
                assert_eq!(lhs.rank(s), rhs.rank(s));
                assert_eq!(lhs.multiplicity(s), rhs.multiplicity(s));
            }
        }
    }

    #[test]
    fn contract_torsion_keeps_ranks() {
        let m = fixtures::molecule_z2_z6_matroid();
        let c = m.contract(2).unwrap();
        for s in c.full().subsets() {
            assert_eq!(c.rank(s), m.rank(s.unsqueeze(2)));
        }
    }

    #[test]
    fn delete_only_element() {
        let m = fixtures::remark_axiom_fixture(1);
        let d = m.delete(0).unwrap();
        assert_eq!(d.size(), 0);
        assert_eq!(d.multiplicity(Subset::EMPTY), 3.into());
        assert!(m.delete(1).is_err());
    }

    #[test]
    fn mu_examples() {
        let m = fixtures::molecule_z2_z6_matroid();
        let x = m.full();
        assert_eq!(m.mu(Subset(0b0011), x).unwrap(), 8.into());
        assert_eq!(m.mu(Subset(0b0011), Subset(0b0011)).unwrap(), 24.into());
        assert!(m.mu(Subset(0b0100), Subset(0b0011)).is_err());

        let m = fixtures::scaled_plane_matroid();
        assert_eq!(m.mu(Subset(0b1010), m.full()).unwrap(), 45.into());
    }

    #[test]
    fn basis_mu_sum() {
        // sum of mu(T) over maximal-rank T containing a basis B is m(B)
        let m = fixtures::molecule_z2_z6_matroid();
        for b in m.bases() {
            let total: BigInt = m
                .maximal_rank_sublists()
                .into_iter()
                .filter(|t| b.is_subset_of(*t))
                .map(|t| m.mu(t, m.full()).unwrap())
                .sum();
            assert_eq!(total, m.multiplicity(b));
        }
    }

    #[test]
    fn direct_sum_oracles() {
        let m = fixtures::diagonal_pair_matroid();
        let s = m.direct_sum(&m);
        assert_eq!(s.size(), 4);
        assert_eq!(s.rank_total(), 4);
        assert_eq!(s.multiplicity(s.full()), 4.into());
        // identity on oracles when summing with the empty matroid
        let empty = fixtures::empty_matroid(1.into());
        let se = m.direct_sum(&empty);
        for sub in m.full().subsets() {
            assert_eq!(se.rank(sub), m.rank(sub));
            assert_eq!(se.multiplicity(sub), m.multiplicity(sub));
        }
    }

    #[test]
    fn axiom_fixtures_fail_exactly_their_axiom() {
        for i in 1..=5usize {
            let m = fixtures::remark_axiom_fixture(i);
            let report = m.check_axioms().unwrap();
            assert!(report.rank_ok(), "fixture {i} rank axioms");
            assert_eq!(report.failing_axioms(), vec![i], "fixture {i}");
            for w in &report.witnesses[i - 1] {
                assert!(m.replay_witness(w), "witness replay for fixture {i}");
            }
        }
    }

    #[test]
    fn valid_fixtures_pass_axioms() {
        for m in [
            fixtures::diagonal_pair_matroid(),
            fixtures::molecule_z2_z6_matroid(),
            fixtures::three_fan_matroid(),
            fixtures::scaled_plane_matroid(),
            fixtures::uniform_double_bases(),
        ] {
            let report = m.check_axioms().unwrap();
            assert!(report.all_pass());
            // dual closure and minors
            assert!(m.dual().check_axioms().unwrap().all_pass());
            for v in 0..m.size() {
                assert!(m.delete(v).unwrap().check_axioms().unwrap().all_pass());
                assert!(m.contract(v).unwrap().check_axioms().unwrap().all_pass());
            }
        }
    }

    #[test]
    fn axiom_cap_enforced() {
        let m = fixtures::empty_matroid(1.into());
        assert!(m.check_axioms_with_cap(0).is_ok());
        let m = fixtures::diagonal_pair_matroid();
        assert!(matches!(
            m.check_axioms_with_cap(1),
            Err(Error::CapExceeded { .. })
        ));
    }
}
