//! Finitely generated abelian groups in invariant-factor form, their
//! elements, and the rank/multiplicity data of lists of elements.
//!
//! A group `Z^r + Z/d_1 + ... + Z/d_s` (with `d_i | d_{i+1}`) is realized as
//! `Z^{r+s}` modulo the relation block `Q`, where `q_i = d_i * e_{r+i}`.
//! Ranks and multiplicities of lists of group elements reduce to exact
//! matrix computations on the lifted matrix `[A | Q]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntMatrix};

/// A finitely generated abelian group in invariant-factor standard form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FgGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        let chain_ok = torsion.iter().all(|d| d >= &two)
            && torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if !chain_ok {
            return Err(Error::InvalidTorsion(
                torsion.iter().map(ToString::to_string).collect(),
            ));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_count(&self) -> usize {
        self.torsion.len()
    }

    /// Number of coordinates of a lifted element: `r + s`.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// `|G_t|`, the product of the torsion orders (1 when free).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// The relation block `Q` as a `dim x s` matrix, `q_i = d_i e_{r+i}`.
    pub fn relation_block(&self) -> RelationBlock {
        let s = self.torsion.len();
        let mut cols = IntMatrix::zero(self.dim(), s);
        for (i, d) in self.torsion.iter().enumerate() {
            *cols.get_mut(self.free_rank + i, i) = d.clone();
        }
        RelationBlock { cols }
    }

    /// Canonical element: torsion coordinates reduced into `[0, d_i)`.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(Error::ElementLength {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        let mut coords = coords;
        for (i, d) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.free_rank + i];
            *c = c.mod_floor(d);
        }
        Ok(GroupElement { coords })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.dim()],
        }
    }
}

/// An element of an [`FgGroup`] in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The lifts `q_i = d_i * e_{r+i}` realizing the torsion relations.
#[derive(Clone, Debug)]
pub struct RelationBlock {
    cols: IntMatrix,
}

impl RelationBlock {
    /// The `dim x s` matrix whose columns are the `q_i`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.cols
    }
}

/// Lifted matrix `[A | Q]` for a list of elements of `g`.
pub(crate) fn lifted_matrix(g: &FgGroup, lifts: &IntMatrix) -> IntMatrix {
    assert_eq!(lifts.rows(), g.dim(), "lift dimension mismatch");
    lifts.hstack(g.relation_block().matrix())
}

/// Rank and multiplicity of a list of elements of `g`, from arbitrary
/// integer lifts given as columns.
pub fn subgroup_data_lifts(g: &FgGroup, lifts: &IntMatrix) -> (usize, BigInt) {
    let m = lifted_matrix(g, lifts);
    let s = exact_linalg::snf_full(&m);
    let rank = s.rank() - g.torsion_count();
    let mult = s.d.iter().filter(|x| !x.is_zero()).product();
    (rank, mult)
}

/// Rank of the sublist and its multiplicity `|G_A : <A>|`.
pub fn subgroup_data(g: &FgGroup, a: &[GroupElement]) -> (usize, BigInt) {
    let lifts = IntMatrix::from_columns(g.dim(), &a.iter().map(|e| e.coords.clone()).collect::<Vec<_>>());
    subgroup_data_lifts(g, &lifts)
}

/// Coordinate map from a group onto one of its quotients: multiply by
/// `matrix`, then reduce each coordinate by its modulus (0 = free).
#[derive(Clone, Debug)]
pub struct QuotientMap {
    matrix: IntMatrix,
    target: FgGroup,
}

impl QuotientMap {
    pub fn target(&self) -> &FgGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, e: &GroupElement) -> GroupElement {
        self.apply_lift(e.coords())
    }

    pub fn apply_lift(&self, coords: &[BigInt]) -> GroupElement {
        let y = self.matrix.mul_vec(coords);
        self.target.element(y).expect("map output dimension")
    }
}

/// The quotient `G / <h>` in invariant-factor standard form, with the
/// coordinate map computed from the SNF transformation matrices.
pub fn quotient_presentation(g: &FgGroup, h: &[GroupElement]) -> (FgGroup, QuotientMap) {
    let lifts =
        IntMatrix::from_columns(g.dim(), &h.iter().map(|e| e.coords.clone()).collect::<Vec<_>>());
    quotient_presentation_lifts(g, &lifts)
}

pub fn quotient_presentation_lifts(g: &FgGroup, lifts: &IntMatrix) -> (FgGroup, QuotientMap) {
    let n = g.dim();
    let m = lifted_matrix(g, lifts);
    let s = exact_linalg::snf_full(&m);
    let t = s.rank();
    // Quotient coordinates are u * x; row i lives mod d_i for i < t and is
    // free for i >= t. Standard form drops d_i = 1 and puts free coords
    // first, then torsion ascending (the SNF order).
    let one = BigInt::one();
    let torsion_rows: Vec<usize> = (0..t).filter(|&i| s.d[i] > one).collect();
    let free_rows: Vec<usize> = (t..n).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| s.d[i].clone()).collect();
    let target = FgGroup::new(free_rows.len(), torsion).expect("SNF divisibility chain");
    let mut rows: Vec<usize> = free_rows;
    rows.extend(torsion_rows);
    let matrix = s.u.transpose().select_columns(&rows).transpose();
    (target.clone(), QuotientMap { matrix, target })
}

/// Replaces the ambient group by the saturation of the span of `x` (free
/// part) direct-summed with the unchanged torsion part, and re-expresses
/// the elements in a basis of the saturation.
pub fn saturate_ambient(g: &FgGroup, x: &[GroupElement]) -> Result<(FgGroup, Vec<GroupElement>)> {
    let r = g.free_rank();
    let s = g.torsion_count();
    let free_parts = IntMatrix::from_columns(
        r,
        &x.iter().map(|e| e.coords()[..r].to_vec()).collect::<Vec<_>>(),
    );
    let basis = exact_linalg::saturate(&free_parts);
    let new_rank = basis.cols();
    if new_rank == r {
        // already saturated: keep the original coordinates
        return Ok((g.clone(), x.to_vec()));
    }
    let new_group = FgGroup::new(new_rank, g.torsion().to_vec())?;
    let mut out = Vec::with_capacity(x.len());
    for e in x {
        let y = exact_linalg::solve_exact(&basis, &e.coords()[..r])
            .expect("free parts lie in their saturation");
        let mut coords = y;
        coords.extend_from_slice(&e.coords()[r..r + s]);
        out.push(new_group.element(coords)?);
    }
    Ok((new_group, out))
}
