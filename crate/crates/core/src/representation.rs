//! Representations of arithmetic matroids by lists of elements in a
//! finitely generated abelian group, the Gale-style dual construction,
//! and representability obstructions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian_group::{
    lifted_matrix, quotient_presentation_lifts, saturate_ambient, subgroup_data_lifts, FgGroup,
    GroupElement,
};
use crate::arith_matroid::{ArithmeticMatroid, GroundSet, MatroidOracle, Subset};
use crate::error::Result;
use crate::exact_linalg::IntMatrix;

/// A finite list of elements in a finitely generated abelian group.
///
/// The ambient group is saturated on construction, so its free rank
/// equals the rank of the list and the empty-sublist multiplicity is the
/// torsion order of the ambient.
#[derive(Clone, Debug)]
pub struct Representation {
    group: FgGroup,
    elements: Vec<GroupElement>,
    labels: Option<Vec<String>>,
}

impl Representation {
    pub fn new(group: FgGroup, elements: Vec<GroupElement>) -> Result<Self> {
        let (group, elements) = saturate_ambient(&group, &elements)?;
        Ok(Self {
            group,
            elements,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.elements.len());
        self.labels = Some(labels);
        self
    }

    /// Convenience constructor from integer coordinate rows.
    pub fn from_coords(group: FgGroup, coords: &[Vec<i64>]) -> Result<Self> {
        let elements = coords
            .iter()
            .map(|c| group.element_from_i64(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, elements)
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Canonical coordinates of the elements as matrix columns
    /// (`dim x k`); these are the standard lifts.
    pub fn lift_columns(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.elements.iter().map(|e| e.coords().to_vec()).collect();
        IntMatrix::from_columns(self.group.dim(), &cols)
    }

    fn ground(&self) -> GroundSet {
        match &self.labels {
            Some(ls) => GroundSet::labeled(ls.clone()),
            None => GroundSet::unlabeled(self.size()),
        }
    }
}

/// Memoizing oracle computing rank and multiplicity from the lifted
/// matrix of a sublist.
struct RepOracle {
    group: FgGroup,
    columns: Vec<Vec<BigInt>>,
    cache: Mutex<HashMap<u32, (usize, BigInt)>>,
}

impl RepOracle {
    fn entry(&self, a: Subset) -> (usize, BigInt) {
        if let Some(hit) = self.cache.lock().unwrap().get(&a.0) {
            return hit.clone();
        }
        let cols: Vec<Vec<BigInt>> = a.iter().map(|i| self.columns[i].clone()).collect();
        let lifts = IntMatrix::from_columns(self.group.dim(), &cols);
        let value = subgroup_data_lifts(&self.group, &lifts);
        self.cache.lock().unwrap().insert(a.0, value.clone());
        value
    }
}

impl MatroidOracle for RepOracle {
    fn rank(&self, a: Subset) -> usize {
        self.entry(a).0
    }

    fn multiplicity(&self, a: Subset) -> BigInt {
        self.entry(a).1
    }
}

/// The arithmetic matroid of a representation: `rk` is the lattice rank
/// of the sublist, `m(A)` the index of the sublist's span in its
/// saturation.
pub fn from_representation(r: &Representation) -> ArithmeticMatroid {
    let oracle = RepOracle {
        group: r.group.clone(),
        columns: r.elements.iter().map(|e| e.coords().to_vec()).collect(),
        cache: Mutex::new(HashMap::new()),
    };
    ArithmeticMatroid::from_oracle(r.ground(), Arc::new(oracle))
}

/// The dual representation: quotient `Z^{k+s}` by the rows of the lifted
/// matrix `[A | Q]` and take the images of the first `k` basis vectors.
/// Its arithmetic matroid is the abstract dual of the original's.
pub fn gale_dual(r: &Representation) -> Representation {
    let k = r.size();
    let lifted = lifted_matrix(&r.group, &r.lift_columns());
    let ambient = FgGroup::free(lifted.cols());
    let (target, map) = quotient_presentation_lifts(&ambient, &lifted.transpose());
    let elements: Vec<GroupElement> = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); lifted.cols()];
            e[i] = BigInt::one();
            map.apply_lift(&e)
        })
        .collect();
    let dual = Representation::new(target, elements)
        .expect("quotient by the row span is already saturated");
    match &r.labels {
        Some(ls) => dual.with_labels(ls.clone()),
        None => dual,
    }
}

/// One subset where the dual construction disagrees with the abstract
/// dual (expected: none).
#[derive(Clone, Debug)]
pub struct DualMismatch {
    pub subset: Subset,
    pub abstract_rank: usize,
    pub gale_rank: usize,
    pub abstract_mult: BigInt,
    pub gale_mult: BigInt,
}

/// Exhaustively compares the Gale dual's matroid with the abstract dual.
pub fn verify_dual_iso(r: &Representation, cap: usize) -> Result<(bool, Vec<DualMismatch>)> {
    let k = r.size();
    if k > cap {
        return Err(crate::error::Error::CapExceeded { size: k, cap });
    }
    let abstract_dual = from_representation(r).dual();
    let gale = from_representation(&gale_dual(r));
    let mut mismatches = Vec::new();
    for s in Subset::full(k).subsets() {
        let ar = abstract_dual.rank(s);
        let gr = gale.rank(s);
        let am = abstract_dual.multiplicity(s);
        let gm = gale.multiplicity(s);
        if ar != gr || am != gm {
            mismatches.push(DualMismatch {
                subset: s,
                abstract_rank: ar,
                gale_rank: gr,
                abstract_mult: am,
                gale_mult: gm,
            });
        }
    }
    Ok((mismatches.is_empty(), mismatches))
}

/// GCD obstruction: in a torsion-free representable matroid, `m(A)` is
/// the GCD of the multiplicities of the maximal independent sublists of
/// `A`. Failing this rules out such a representation; passing proves
/// nothing.
pub fn is_gcd(m: &ArithmeticMatroid) -> bool {
    let full = m.full();
    for a in full.subsets() {
        let q = m.rank(a);
        let mut g = BigInt::zero();
        for i in a.subsets() {
            if i.len() == q && m.rank(i) == q {
                g = g.gcd(&m.multiplicity(i));
            }
        }
        if g != m.multiplicity(a) {
            return false;
        }
    }
    true
}

/// Torsion-free means the empty sublist has multiplicity 1.
pub fn is_torsion_free(m: &ArithmeticMatroid) -> bool {
    m.multiplicity(Subset::EMPTY).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn multiplicity_tables_match_fixtures() {
        let m = from_representation(&fixtures::molecule_z2_z6());
        let expect: [(u32, i64); 16] = [
            (0b0000, 6),
            (0b0001, 6),
            (0b0010, 12),
            (0b0100, 2),
            (0b1000, 3),
            (0b0011, 24),
            (0b0101, 2),
            (0b1001, 3),
            (0b0110, 4),
            (0b1010, 6),
            (0b1100, 1),
            (0b0111, 8),
            (0b1011, 12),
            (0b1101, 1),
            (0b1110, 2),
            (0b1111, 4),
        ];
        for (bits, v) in expect {
            assert_eq!(m.multiplicity(Subset(bits)), v.into(), "subset {bits:04b}");
        }
        assert_eq!(m.rank_total(), 2);

        let m = from_representation(&fixtures::scaled_plane());
        assert_eq!(m.multiplicity(Subset(0b1001)), 36.into()); // {a,d}
        assert_eq!(m.multiplicity(Subset(0b1010)), 72.into()); // {b,d}
        assert_eq!(m.multiplicity(Subset(0b0010)), 6.into()); // {b}
        assert_eq!(m.rank_total(), 2);
    }

    #[test]
    fn standard_basis_is_trivial() {
        let r = fixtures::standard_basis(3);
        let m = from_representation(&r);
        for s in m.full().subsets() {
            assert_eq!(m.rank(s), s.len());
            assert_eq!(m.multiplicity(s), 1.into());
        }
    }

    #[test]
    fn gale_dual_of_diagonal_pair() {
        let d = gale_dual(&fixtures::diagonal_pair());
        assert_eq!(d.group().free_rank(), 0);
        assert_eq!(d.group().torsion(), &[BigInt::from(2)]);
        let m = from_representation(&d);
        assert_eq!(m.rank_total(), 0);
        assert_eq!(m.multiplicity(Subset::EMPTY), 2.into());
        assert_eq!(m.multiplicity(Subset::full(2)), 1.into());
    }

    #[test]
    fn gale_dual_of_standard_basis_is_trivial() {
        let d = gale_dual(&fixtures::standard_basis(4));
        assert!(d.group().is_trivial());
        assert!(d.elements().iter().all(|e| e.is_zero()));
    }

    #[test]
    fn dual_iso_on_fixtures() {
        for r in [
            fixtures::diagonal_pair(),
            fixtures::molecule_z2_z6(),
            fixtures::scaled_plane(),
            fixtures::three_fan(),
        ] {
            let (ok, mism) = verify_dual_iso(&r, 12).unwrap();
            assert!(ok, "{mism:?}");
        }
    }

    #[test]
    fn double_dual_matches_original_oracles() {
        for r in [
            fixtures::diagonal_pair(),
            fixtures::molecule_z2_z6(),
            fixtures::three_fan(),
        ] {
            let orig = from_representation(&r);
            let dd = from_representation(&gale_dual(&gale_dual(&r)));
            for s in orig.full().subsets() {
                assert_eq!(orig.rank(s), dd.rank(s));
                assert_eq!(orig.multiplicity(s), dd.multiplicity(s));
            }
        }
    }

    #[test]
    fn representations_pass_axioms() {
        for r in [
            fixtures::diagonal_pair(),
            fixtures::molecule_z2_z6(),
            fixtures::scaled_plane(),
            fixtures::three_fan(),
            fixtures::hypercube_offdiag(),
        ] {
            assert!(from_representation(&r).check_axioms().unwrap().all_pass());
        }
    }

    #[test]
    fn gcd_obstruction() {
        assert!(!is_gcd(&fixtures::uniform_double_bases()));
        // representable torsion-free lists satisfy the GCD rule
        for r in [
            fixtures::diagonal_pair(),
            fixtures::scaled_plane(),
            fixtures::three_fan(),
        ] {
            let m = from_representation(&r);
            assert!(is_torsion_free(&m));
            assert!(is_gcd(&m));
        }
        assert!(is_gcd(&fixtures::fano_matroid()));
    }

    #[test]
    fn torsion_free_flag() {
        assert!(!is_torsion_free(&from_representation(
            &fixtures::molecule_z2_z6()
        )));
        assert!(is_torsion_free(&from_representation(&fixtures::three_fan())));
    }
}
