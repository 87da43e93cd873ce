//! External activity, the weighted lists of maximal-rank sublists, and
//! the per-basis equidistributed matchings whose activity statistics
//! rebuild the weighted Tutte polynomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith_matroid::{ArithmeticMatroid, ElementClass, Subset};
use crate::error::{Error, Result};
use crate::tutte_poly::BiPoly;

/// A total order on the ground indices; "greatest" means latest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl ElementOrder {
    /// Input order: element `i` is the `i`-th smallest.
    pub fn identity(k: usize) -> Self {
        Self::new((0..k).collect()).unwrap()
    }

    /// `seq` lists the ground indices from least to greatest.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let k = seq.len();
        let mut pos = vec![usize::MAX; k];
        for (p, &i) in seq.iter().enumerate() {
            if i >= k || pos[i] != usize::MAX {
                return Err(Error::InvalidOrder(k));
            }
            pos[i] = p;
        }
        Ok(Self { seq, pos })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    /// The elements of `b` strictly after `v`.
    pub fn after(&self, b: Subset, v: usize) -> Subset {
        let pv = self.pos[v];
        let mut out = Subset::EMPTY;
        for u in b.iter() {
            if self.pos[u] > pv {
                out = out.with(u);
            }
        }
        out
    }

    pub fn greatest_in(&self, s: Subset) -> Option<usize> {
        s.iter().max_by_key(|&i| self.pos[i])
    }

    /// Induced order after removing element `v` (indices above `v`
    /// shift down by one).
    fn without(&self, v: usize) -> Self {
        let seq = self
            .seq
            .iter()
            .filter(|&&i| i != v)
            .map(|&i| if i > v { i - 1 } else { i })
            .collect();
        Self::new(seq).unwrap()
    }
}

fn check_pair(m: &ArithmeticMatroid, b: Subset, t: Subset) -> Result<()> {
    if !m.is_basis(b) {
        return Err(Error::NotABasis(b.0));
    }
    if !b.is_subset_of(t) {
        return Err(Error::NotASubset { a: b.0, b: t.0 });
    }
    if m.rank(t) != m.rank_total() {
        return Err(Error::NotABasis(t.0));
    }
    Ok(())
}

/// The externally active elements of `t \ b`: those dependent on the
/// part of the basis following them. Rank-zero elements are always
/// active (they are dependent even on the empty tail).
pub fn active_set(
    m: &ArithmeticMatroid,
    order: &ElementOrder,
    b: Subset,
    t: Subset,
) -> Result<Subset> {
    check_pair(m, b, t)?;
    let mut out = Subset::EMPTY;
    for v in t.minus(b).iter() {
        let tail = order.after(b, v);
        if m.rank(tail.with(v)) == m.rank(tail) {
            out = out.with(v);
        }
    }
    Ok(out)
}

/// `e(b, t)`: the number of externally active elements of the pair.
pub fn external_activity(
    m: &ArithmeticMatroid,
    order: &ElementOrder,
    b: Subset,
    t: Subset,
) -> Result<usize> {
    Ok(active_set(m, order, b, t)?.len())
}

/// A maximal-rank sublist with its (positive) weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSublist {
    pub sublist: Subset,
    pub weight: BigInt,
}

/// Alternating superset sums of the multiplicity table:
/// `out[S] = sum over T >= S of (-1)^{|T|-|S|} mult[T]`.
pub(crate) fn mu_table(mult: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut f = mult.to_vec();
    for b in 0..k {
        for s in 0..1usize << k {
            if s >> b & 1 == 0 {
                let upper = f[s | 1 << b].clone();
                f[s] -= upper;
            }
        }
    }
    f
}

fn weighted_list(m: &ArithmeticMatroid) -> Vec<WeightedSublist> {
    let k = m.size();
    let (rank, mult) = m.to_tables();
    let mu = mu_table(&mult, k);
    let r = rank[(1usize << k) - 1];
    let mut out: Vec<WeightedSublist> = (0..1usize << k)
        .filter(|&s| rank[s] == r && mu[s].is_positive())
        .map(|s| WeightedSublist {
            sublist: Subset(s as u32),
            weight: mu[s].clone(),
        })
        .collect();
    out.sort_by_key(|w| (std::cmp::Reverse(w.sublist.len()), w.sublist.0));
    out
}

/// The weighted lists of maximal-rank sublists of the matroid and of
/// its dual, largest sublists first.
pub fn build_lists(m: &ArithmeticMatroid) -> (Vec<WeightedSublist>, Vec<WeightedSublist>) {
    (
        weighted_list(&m.to_explicit()),
        weighted_list(&m.dual().to_explicit()),
    )
}

/// A group of basis/sublist pairs sharing the same externally active
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub basis: Subset,
    pub active: Subset,
    pub weight: BigInt,
}

/// One matched block: `count` pairs of the primal class matched with
/// pairs of the dual class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchEntry {
    pub primal: PairClass,
    pub dual: PairClass,
    pub count: BigInt,
}

/// An equidistributed matching for one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub basis: Subset,
    pub entries: Vec<MatchEntry>,
}

impl Matching {
    pub fn total(&self) -> BigInt {
        self.entries.iter().map(|e| e.count.clone()).sum()
    }

    /// Checks that counts are positive and that the row and column sums
    /// reproduce the class weights.
    pub fn verify_marginals(&self) -> bool {
        use std::collections::BTreeMap;
        if self.entries.iter().any(|e| !e.count.is_positive()) {
            return false;
        }
        let mut rows: BTreeMap<u32, (BigInt, BigInt)> = BTreeMap::new();
        let mut cols: BTreeMap<u32, (BigInt, BigInt)> = BTreeMap::new();
        for e in &self.entries {
            let row = rows
                .entry(e.primal.active.0)
                .or_insert_with(|| (e.primal.weight.clone(), BigInt::zero()));
            if row.0 != e.primal.weight {
                return false;
            }
            row.1 += &e.count;
            let col = cols
                .entry(e.dual.active.0)
                .or_insert_with(|| (e.dual.weight.clone(), BigInt::zero()));
            if col.0 != e.dual.weight {
                return false;
            }
            col.1 += &e.count;
        }
        rows.values().chain(cols.values()).all(|(w, s)| w == s)
    }
}

/// The matching of a molecule: every maximal-rank sublist contains the
/// unique basis, all non-basis elements are rank zero (hence always
/// active), and the counts follow the proportional rule
/// `count = weight(T) * weight*(T~) / m(B)`.
pub fn molecular_matching(m: &ArithmeticMatroid, b: Subset) -> Result<Matching> {
    if !m.is_molecule() {
        return Err(Error::NotAMolecule);
    }
    if !m.is_basis(b) {
        return Err(Error::NotABasis(b.0));
    }
    let k = m.size();
    let bc = b.complement(k);
    let (primal, dual) = build_lists(m);
    let mass = m.multiplicity(b);
    let mut entries = Vec::with_capacity(primal.len() * dual.len());
    for p in &primal {
        for d in &dual {
            let product = &p.weight * &d.weight;
            let (q, rem) = num_integer::Integer::div_rem(&product, &mass);
            if !rem.is_zero() {
                return Err(Error::NonIntegralCount(format!(
                    "{}*{}/{}",
                    p.weight, d.weight, mass
                )));
            }
            entries.push(MatchEntry {
                primal: PairClass {
                    basis: b,
                    active: p.sublist.minus(b),
                    weight: p.weight.clone(),
                },
                dual: PairClass {
                    basis: bc,
                    active: d.sublist.minus(bc),
                    weight: d.weight.clone(),
                },
                count: q,
            });
        }
    }
    Ok(Matching { basis: b, entries })
}

fn greatest_proper(m: &ArithmeticMatroid, order: &ElementOrder) -> Option<usize> {
    (0..m.size())
        .filter(|&v| m.classify(v).unwrap() == ElementClass::Proper)
        .max_by_key(|&v| order.position(v))
}

fn psi_recurse(m: &ArithmeticMatroid, order: &ElementOrder, b: Subset) -> Result<Matching> {
    let Some(v) = greatest_proper(m, order) else {
        return molecular_matching(m, b);
    };
    // contract the greatest proper vector if it is in the basis,
    // delete it otherwise; either way it contributes no activity
    let (reduced, b2) = if b.contains(v) {
        (m.contract(v)?, b.without(v).squeeze(v))
    } else {
        (m.delete(v)?, b.squeeze(v))
    };
    let inner = psi_recurse(&reduced.to_explicit(), &order.without(v), b2)?;
    let k = m.size();
    let bc = b.complement(k);
    let entries = inner
        .entries
        .into_iter()
        .map(|e| MatchEntry {
            primal: PairClass {
                basis: b,
                active: e.primal.active.unsqueeze(v),
                weight: e.primal.weight,
            },
            dual: PairClass {
                basis: bc,
                active: e.dual.active.unsqueeze(v),
                weight: e.dual.weight,
            },
            count: e.count,
        })
        .collect();
    Ok(Matching { basis: b, entries })
}

/// The per-basis matching obtained by peeling off proper vectors until
/// a molecule remains, then matching proportionally. Class weights
/// agree with grouping the basis-containing maximal-rank sublists by
/// their active sets.
pub fn psi_matching(m: &ArithmeticMatroid, order: &ElementOrder, b: Subset) -> Result<Matching> {
    if order.len() != m.size() {
        return Err(Error::InvalidOrder(m.size()));
    }
    if !m.is_basis(b) {
        return Err(Error::NotABasis(b.0));
    }
    psi_recurse(&m.to_explicit(), order, b)
}

/// Rebuilds the weighted Tutte polynomial from the matchings:
/// `sum over bases, entries of count * x^|dual active| * y^|primal active|`.
pub fn mbar(m: &ArithmeticMatroid, order: &ElementOrder) -> Result<BiPoly> {
    if order.len() != m.size() {
        return Err(Error::InvalidOrder(m.size()));
    }
    let explicit = m.to_explicit();
    let mut out = BiPoly::zero();
    for b in explicit.bases() {
        let matching = psi_recurse(&explicit, order, b)?;
        for e in &matching.entries {
            out.add_term(
                e.dual.active.len() as u32,
                e.primal.active.len() as u32,
                e.count.clone(),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tutte_poly::{arithmetic_tutte_subsetsum, classical_tutte};
    use std::collections::BTreeMap;

    fn ws(items: &[(u32, i64)]) -> Vec<WeightedSublist> {
        items
            .iter()
            .map(|&(bits, w)| WeightedSublist {
                sublist: Subset(bits),
                weight: w.into(),
            })
            .collect()
    }

    #[test]
    fn external_activity_examples() {
        let m = fixtures::scaled_plane_matroid();
        let order = ElementOrder::identity(4);
        // basis {b,d} against the full list
        assert_eq!(
            external_activity(&m, &order, Subset(0b1010), Subset(0b1111)).unwrap(),
            2
        );
        assert_eq!(
            external_activity(&m, &order, Subset(0b1010), Subset(0b1010)).unwrap(),
            0
        );

        let m = fixtures::molecule_z2_z6_matroid();
        let order = ElementOrder::identity(4);
        assert_eq!(
            external_activity(&m, &order, Subset(0b0011), Subset(0b0111)).unwrap(),
            1
        );
        assert_eq!(
            external_activity(&m, &order, Subset(0b0011), Subset(0b1011)).unwrap(),
            1
        );
        // precondition violations
        assert!(external_activity(&m, &order, Subset(0b0101), Subset(0b0111)).is_err());
        assert!(external_activity(&m, &order, Subset(0b0011), Subset(0b0001)).is_err());
    }

    #[test]
    fn lists_for_molecule() {
        let (l, ls) = build_lists(&fixtures::molecule_z2_z6_matroid());
        assert_eq!(
            l,
            ws(&[(0b1111, 4), (0b0111, 4), (0b1011, 8), (0b0011, 8)])
        );
        assert_eq!(ls, ws(&[(0b1111, 6), (0b1101, 6), (0b1100, 12)]));
    }

    #[test]
    fn lists_for_trivial_multiplicity() {
        let (l, ls) = build_lists(&fixtures::fano_matroid());
        assert_eq!(l, ws(&[(0b1111111, 1)]));
        assert_eq!(ls, ws(&[(0b1111111, 1)]));
    }

    #[test]
    fn lists_for_scaled_plane() {
        let (l, ls) = build_lists(&fixtures::scaled_plane_matroid());
        assert_eq!(
            l,
            ws(&[(0b1111, 9), (0b1011, 9), (0b1110, 9), (0b1001, 18), (0b1010, 45)])
        );
        assert_eq!(
            ls,
            ws(&[
                (0b1111, 1),
                (0b0111, 11),
                (0b1011, 2),
                (0b1101, 5),
                (0b1110, 2),
                (0b0101, 55),
                (0b0110, 22),
                (0b1001, 10),
                (0b1010, 4),
                (0b1100, 10),
            ])
        );
    }

    #[test]
    fn molecular_matching_counts() {
        let m = fixtures::molecule_z2_z6_matroid();
        let b = Subset(0b0011);
        let matching = molecular_matching(&m, b).unwrap();
        assert!(matching.verify_marginals());
        assert_eq!(matching.total(), m.multiplicity(b));
        let count = |pa: u32, da: u32| -> BigInt {
            matching
                .entries
                .iter()
                .find(|e| e.primal.active.0 == pa && e.dual.active.0 == da)
                .unwrap()
                .count
                .clone()
        };
        // (X, {c,d}) and ({a,b,d}, {c,d}); actives drop the bases
        assert_eq!(count(0b1100, 0b0000), 2.into());
        assert_eq!(count(0b1100, 0b0011), 1.into());
        assert_eq!(count(0b1000, 0b0000), 4.into());
    }

    #[test]
    fn molecular_matching_preconditions() {
        let m = fixtures::three_fan_matroid();
        assert!(matches!(
            molecular_matching(&m, Subset(0b011)),
            Err(Error::NotAMolecule)
        ));
        let m = fixtures::molecule_z2_z6_matroid();
        assert!(matches!(
            molecular_matching(&m, Subset(0b0101)),
            Err(Error::NotABasis(_))
        ));
    }

    fn class_weights(matching: &Matching, primal: bool) -> BTreeMap<u32, BigInt> {
        let mut out = BTreeMap::new();
        for e in &matching.entries {
            let c = if primal { &e.primal } else { &e.dual };
            out.insert(c.active.0, c.weight.clone());
        }
        out
    }

    #[test]
    fn psi_matching_scaled_plane_basis_ad() {
        let m = fixtures::scaled_plane_matroid();
        let order = ElementOrder::identity(4);
        let b = Subset(0b1001); // {a,d}
        let matching = psi_matching(&m, &order, b).unwrap();
        assert!(matching.verify_marginals());
        assert_eq!(matching.total(), m.multiplicity(b));

        let primal = class_weights(&matching, true);
        let expect: BTreeMap<u32, BigInt> =
            [(0b0100u32, 9.into()), (0u32, 27.into())].into_iter().collect();
        assert_eq!(primal, expect);

        let dual = class_weights(&matching, false);
        let dual_by_size: BTreeMap<usize, BigInt> = {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (bits, w) in dual {
                *acc.entry(Subset(bits).len()).or_default() += w;
            }
            acc
        };
        assert_eq!(dual_by_size.get(&1), Some(&12.into()));
        assert_eq!(dual_by_size.get(&0), Some(&24.into()));

        // the basis summand of the rebuilt polynomial
        let mut summand = BiPoly::zero();
        for e in &matching.entries {
            summand.add_term(
                e.dual.active.len() as u32,
                e.primal.active.len() as u32,
                e.count.clone(),
            );
        }
        let mut expect = BiPoly::zero();
        for (i, j, c) in [(1, 1, 3), (0, 1, 6), (1, 0, 9), (0, 0, 18)] {
            expect.add_term(i, j, c.into());
        }
        assert_eq!(summand, expect);
    }

    #[test]
    fn psi_on_molecule_matches_molecular() {
        let m = fixtures::molecule_z2_z6_matroid();
        let order = ElementOrder::identity(4);
        let b = Subset(0b0011);
        let via_psi = psi_matching(&m, &order, b).unwrap();
        let direct = molecular_matching(&m, b).unwrap();
        assert_eq!(
            class_weights(&via_psi, true),
            class_weights(&direct, true)
        );
        assert_eq!(via_psi.total(), direct.total());
    }

    #[test]
    fn psi_classes_match_direct_grouping() {
        for m in [
            fixtures::scaled_plane_matroid(),
            fixtures::molecule_z2_z6_matroid(),
            fixtures::three_fan_matroid(),
        ] {
            let order = ElementOrder::identity(m.size());
            let (l, _) = build_lists(&m);
            for b in m.bases() {
                let mut groups: BTreeMap<u32, BigInt> = BTreeMap::new();
                for w in l.iter().filter(|w| b.is_subset_of(w.sublist)) {
                    let a = active_set(&m, &order, b, w.sublist).unwrap();
                    *groups.entry(a.0).or_default() += &w.weight;
                }
                let matching = psi_matching(&m, &order, b).unwrap();
                assert!(matching.verify_marginals());
                assert_eq!(class_weights(&matching, true), groups, "basis {b:?}");
            }
        }
    }

    #[test]
    fn mbar_examples() {
        let m = fixtures::scaled_plane_matroid();
        let got = mbar(&m, &ElementOrder::identity(4)).unwrap();
        let mut expect = BiPoly::zero();
        for (i, j, c) in [(2, 0, 1), (1, 0, 19), (0, 0, 88), (1, 1, 3), (0, 1, 33), (0, 2, 9)] {
            expect.add_term(i, j, c.into());
        }
        assert_eq!(got, expect);
        assert_eq!(got, arithmetic_tutte_subsetsum(&m).unwrap());
    }

    #[test]
    fn mbar_equals_subsetsum_under_reordering() {
        let orders3 = [vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]];
        let m = fixtures::three_fan_matroid();
        let p = arithmetic_tutte_subsetsum(&m).unwrap();
        for seq in orders3 {
            assert_eq!(mbar(&m, &ElementOrder::new(seq).unwrap()).unwrap(), p);
        }
        let orders4 = [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![1, 3, 0, 2]];
        for m in [
            fixtures::molecule_z2_z6_matroid(),
            fixtures::scaled_plane_matroid(),
        ] {
            let p = arithmetic_tutte_subsetsum(&m).unwrap();
            for seq in &orders4 {
                assert_eq!(mbar(&m, &ElementOrder::new(seq.clone()).unwrap()).unwrap(), p);
            }
        }
    }

    #[test]
    fn mbar_trivial_multiplicity_is_crapo() {
        let m = fixtures::fano_matroid();
        assert_eq!(
            mbar(&m, &ElementOrder::identity(7)).unwrap(),
            classical_tutte(&m).unwrap()
        );
    }

    #[test]
    fn molecule_product_form() {
        use crate::abelian_group::FgGroup;
        use crate::representation::{from_representation, Representation};
        // free parts in Z^2 and torsion parts in Z/6, multiplied
        let free = Representation::from_coords(FgGroup::free(2), &[vec![1, 2], vec![2, 0]]).unwrap();
        let torsion = Representation::from_coords(
            FgGroup::new(0, vec![6.into()]).unwrap(),
            &[vec![2], vec![3]],
        )
        .unwrap();
        let pf = arithmetic_tutte_subsetsum(&from_representation(&free)).unwrap();
        let pt = arithmetic_tutte_subsetsum(&from_representation(&torsion)).unwrap();
        let m = fixtures::molecule_z2_z6_matroid();
        let p = arithmetic_tutte_subsetsum(&m).unwrap();
        assert_eq!(p, pf.mul(&pt));
        assert_eq!(mbar(&m, &ElementOrder::identity(4)).unwrap(), p);
    }

    #[test]
    fn order_validation() {
        assert!(ElementOrder::new(vec![0, 0, 1]).is_err());
        assert!(ElementOrder::new(vec![0, 3]).is_err());
        let m = fixtures::three_fan_matroid();
        assert!(mbar(&m, &ElementOrder::identity(2)).is_err());
    }
}
