//! Shared example configurations used across the test suites and the
//! documentation: small representations with known multiplicity tables,
//! classical rank functions, and explicit tables that violate exactly
//! one multiplicity axiom each.

use num_bigint::BigInt;
use num_traits::One;

use crate::abelian_group::FgGroup;
use crate::arith_matroid::{ArithmeticMatroid, GroundSet, Subset};
use crate::representation::{from_representation, Representation};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{(1,1), (1,-1)}` in `Z^2`: two free elements, `m(X) = 2`.
pub fn diagonal_pair() -> Representation {
    Representation::from_coords(FgGroup::free(2), &[vec![1, 1], vec![1, -1]])
        .unwrap()
        .with_labels(labels(&["a", "b"]))
}

/// Four elements of `Z^2 + Z/6`: two free, two torsion, no proper
/// vectors (a molecule of positive rank with torsion on both sides).
pub fn molecule_z2_z6() -> Representation {
    let g = FgGroup::new(2, vec![6.into()]).unwrap();
    Representation::from_coords(
        g,
        &[vec![1, 2, 0], vec![2, 0, 1], vec![0, 0, 2], vec![0, 0, 3]],
    )
    .unwrap()
    .with_labels(labels(&["a", "b", "c", "d"]))
}

/// Four multiples of plane vectors inside `Z^3`; the list spans a rank-2
/// sublattice, so construction saturates the ambient group.
pub fn scaled_plane() -> Representation {
    Representation::from_coords(
        FgGroup::free(3),
        &[
            vec![3, 3, 0],
            vec![-6, -6, -6],
            vec![0, 0, 3],
            vec![0, 0, 12],
        ],
    )
    .unwrap()
    .with_labels(labels(&["a", "b", "c", "d"]))
}

/// `{(2,-1), (-1,2), (1,1)}` in `Z^2`: the third vector is proper.
pub fn three_fan() -> Representation {
    Representation::from_coords(
        FgGroup::free(2),
        &[vec![2, -1], vec![-1, 2], vec![1, 1]],
    )
    .unwrap()
    .with_labels(labels(&["a", "b", "c"]))
}

/// `{e1, e2, e3, (1,1,1,5)}` in `Z^4`: a skewed basis whose
/// characteristic-style specializations have non-unimodal coefficient
/// sequences.
pub fn hypercube_offdiag() -> Representation {
    Representation::from_coords(
        FgGroup::free(4),
        &[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, 1, 1, 5],
        ],
    )
    .unwrap()
    .with_labels(labels(&["e1", "e2", "e3", "f"]))
}

/// The standard basis of `Z^k`: trivial multiplicity, rank = cardinality.
pub fn standard_basis(k: usize) -> Representation {
    let coords: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    Representation::from_coords(FgGroup::free(k), &coords).unwrap()
}

pub fn diagonal_pair_matroid() -> ArithmeticMatroid {
    from_representation(&diagonal_pair())
}

pub fn molecule_z2_z6_matroid() -> ArithmeticMatroid {
    from_representation(&molecule_z2_z6())
}

pub fn scaled_plane_matroid() -> ArithmeticMatroid {
    from_representation(&scaled_plane())
}

pub fn three_fan_matroid() -> ArithmeticMatroid {
    from_representation(&three_fan())
}

pub fn hypercube_offdiag_matroid() -> ArithmeticMatroid {
    from_representation(&hypercube_offdiag())
}

/// Rank-2 uniform matroid on three elements with multiplicity 2 on the
/// bases and 1 elsewhere: satisfies all axioms but breaks the GCD rule
/// on the full list.
pub fn uniform_double_bases() -> ArithmeticMatroid {
    let k = 3;
    let mut rank = Vec::with_capacity(1 << k);
    let mut mult = Vec::with_capacity(1 << k);
    for bits in 0..1u32 << k {
        let n = Subset(bits).len();
        rank.push(n.min(2));
        mult.push(BigInt::from(if n == 2 { 2 } else { 1 }));
    }
    ArithmeticMatroid::from_tables(
        GroundSet::labeled(labels(&["a", "b", "c"])),
        rank,
        mult,
    )
    .unwrap()
}

/// The seven nonzero vectors of `F_2^3` with trivial multiplicity: a
/// valid arithmetic matroid that is not the matroid of any integer list.
pub fn fano_matroid() -> ArithmeticMatroid {
    let vectors: Vec<u8> = (1..8).collect();
    let gf2_rank = |s: Subset| -> usize {
        let mut pivots: Vec<u8> = Vec::new();
        for i in s.iter() {
            let mut v = vectors[i];
            for &p in &pivots {
                let lead = 7 - p.leading_zeros() as usize;
                if v >> lead & 1 == 1 {
                    v ^= p;
                }
            }
            if v != 0 {
                pivots.push(v);
            }
        }
        pivots.len()
    };
    let mut rank = Vec::with_capacity(128);
    let mut mult = Vec::with_capacity(128);
    for bits in 0..128u32 {
        rank.push(gf2_rank(Subset(bits)));
        mult.push(BigInt::one());
    }
    ArithmeticMatroid::from_tables(GroundSet::unlabeled(7), rank, mult).unwrap()
}

/// Ground size 0 with the given multiplicity of the empty sublist.
pub fn empty_matroid(m0: BigInt) -> ArithmeticMatroid {
    ArithmeticMatroid::from_tables(GroundSet::unlabeled(0), vec![0], vec![m0]).unwrap()
}

/// Explicit tables violating exactly multiplicity axiom `i` (1..=5)
/// while satisfying the rank axioms and the other four.
pub fn remark_axiom_fixture(i: usize) -> ArithmeticMatroid {
    let (size, rank, mult): (usize, Vec<usize>, Vec<i64>) = match i {
        // one torsion element whose multiplicity does not divide m(empty)
        1 => (1, vec![0, 0], vec![3, 2]),
        // one free element whose multiplicity is not a multiple of m(empty)
        2 => (1, vec![0, 1], vec![2, 3]),
        // one free + one torsion element breaking the product rule
        3 => (2, vec![0, 1, 0, 1], vec![2, 2, 1, 2]),
        // four torsion elements with an inclusion-exclusion defect
        4 => (
            4,
            vec![0; 16],
            vec![4, 2, 2, 1, 2, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1],
        ),
        // four free elements, dual defect of the previous table
        5 => (
            4,
            (0..16u32).map(|b| Subset(b).len()).collect(),
            vec![1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2, 2, 4],
        ),
        _ => panic!("axiom index must be 1..=5"),
    };
    ArithmeticMatroid::from_tables(
        GroundSet::unlabeled(size),
        rank,
        mult.into_iter().map(BigInt::from).collect(),
    )
    .unwrap()
}
