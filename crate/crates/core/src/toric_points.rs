//! The zero-dimensional layers of the arrangement attached to a
//! representation: finite-order characters, represented additively in
//! Q/Z, at which every element of a full-rank sublist vanishes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian_group::lifted_matrix;
use crate::arith_matroid::Subset;
use crate::error::{Error, Result};
use crate::exact_linalg::snf;
use crate::representation::{from_representation, Representation};
use crate::tutte_poly::{classical_tutte_with_cap, UniPoly};

/// A finite-order character of the ambient group: one rational in
/// `[0, 1)` per generator, killing the torsion relations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusPoint {
    values: Vec<BigRational>,
}

fn frac(v: BigRational) -> BigRational {
    &v - v.floor()
}

impl TorusPoint {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Value of the character at an element given by lift coordinates:
    /// the fractional part of the dot product.
    pub fn pair_lift(&self, coords: &[BigInt]) -> BigRational {
        let acc: BigRational = self
            .values
            .iter()
            .zip(coords)
            .map(|(v, c)| v * BigRational::from_integer(c.clone()))
            .sum();
        frac(acc)
    }

    /// True when the character kills every torsion relation of `r`'s
    /// ambient group.
    pub fn kills_relations(&self, r: &Representation) -> bool {
        let q = r.group().relation_block();
        (0..q.matrix().cols()).all(|j| self.pair_lift(&q.matrix().column(j)).is_zero())
    }
}

/// A point with the sublist of elements vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecord {
    pub point: TorusPoint,
    pub x_p: Subset,
}

/// The `m(B)` characters annihilating the basis `b`: solved through the
/// normal form of the square constraint matrix `[B~ | Q]`.
pub fn points_for_basis(r: &Representation, b: Subset) -> Result<Vec<TorusPoint>> {
    let n = r.group().dim();
    let cols: Vec<Vec<BigInt>> = b.iter().map(|i| r.elements()[i].coords().to_vec()).collect();
    let constraints = lifted_matrix(r.group(), &crate::exact_linalg::IntMatrix::from_columns(n, &cols));
    let s = snf(&constraints.transpose());
    if constraints.cols() != n || s.rank() != n {
        return Err(Error::NotABasis(b.0));
    }
    let d: Vec<u64> = s
        .d
        .iter()
        .map(|x| x.abs().to_u64().expect("invariant factor fits in u64"))
        .collect();
    // solutions are p = V w with w_i any multiple of 1/d_i in [0,1)
    let mut points = Vec::new();
    let mut counter = vec![0u64; n];
    loop {
        let w: Vec<BigRational> = counter
            .iter()
            .zip(&d)
            .map(|(&c, &di)| BigRational::new(c.into(), BigInt::from(di)))
            .collect();
        let values: Vec<BigRational> = (0..n)
            .map(|j| {
                frac(
                    (0..n)
                        .map(|i| BigRational::from_integer(s.v.get(j, i).clone()) * &w[i])
                        .sum(),
                )
            })
            .collect();
        points.push(TorusPoint { values });
        // odometer over the invariant factors
        let mut carry = true;
        for (c, &di) in counter.iter_mut().zip(&d) {
            if !carry {
                break;
            }
            *c += 1;
            if *c == di {
                *c = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    Ok(points)
}

/// All points of the zero-dimensional layers, deduplicated across
/// bases, each with its vanishing sublist `x_p`.
pub fn enumerate_points(r: &Representation) -> Result<Vec<PointRecord>> {
    let m = from_representation(r);
    let mut seen: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    for b in m.bases() {
        for p in points_for_basis(r, b)? {
            seen.insert(p.values);
        }
    }
    let lifts = r.lift_columns();
    let out = seen
        .into_iter()
        .map(|values| {
            let point = TorusPoint { values };
            let mut x_p = Subset::EMPTY;
            for i in 0..r.size() {
                if point.pair_lift(&lifts.column(i)).is_zero() {
                    x_p = x_p.with(i);
                }
            }
            PointRecord { point, x_p }
        })
        .collect();
    Ok(out)
}

/// One full-rank sublist whose point count disagrees with its
/// multiplicity (expected: none).
#[derive(Clone, Debug)]
pub struct CountMismatch {
    pub sublist: Subset,
    pub expected: BigInt,
    pub got: usize,
}

/// Checks that every maximal-rank sublist `A` lies in the vanishing
/// sublist of exactly `m(A)` points.
pub fn verify_component_counts(r: &Representation) -> Result<(bool, Vec<CountMismatch>)> {
    let m = from_representation(r);
    let records = enumerate_points(r)?;
    let mut mismatches = Vec::new();
    for a in m.maximal_rank_sublists() {
        let got = records.iter().filter(|rec| a.is_subset_of(rec.x_p)).count();
        let expected = m.multiplicity(a);
        if BigInt::from(got) != expected {
            mismatches.push(CountMismatch {
                sublist: a,
                expected,
                got,
            });
        }
    }
    Ok((mismatches.is_empty(), mismatches))
}

/// Checks the pointwise decomposition of the weighted polynomial at
/// `x = 1`: `M(1,y)` equals the sum over points of the classical Tutte
/// polynomial of the local sublist evaluated at `x = 1`.
pub fn verify_aes(r: &Representation) -> Result<bool> {
    let m = from_representation(r);
    let lhs = crate::tutte_poly::arithmetic_tutte_subsetsum(&m)?.substitute_x(&BigInt::one());
    let mut rhs = UniPoly::zero();
    for rec in enumerate_points(r)? {
        let local = m.restriction(rec.x_p);
        let t = classical_tutte_with_cap(&local, local.size())?;
        rhs = rhs.add(&t.substitute_x(&BigInt::one()));
    }
    Ok(lhs == rhs)
}
