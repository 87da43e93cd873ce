//! Exact integer matrix algebra: Smith normal form, rank, GCDs of maximal
//! minors, and lattice saturation.
//!
//! All arithmetic is over arbitrary-precision integers; no rounding ever
//! occurs. Matrices are stored dense, which is fine at the ground sizes
//! this crate targets (~20 columns).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .inspect(|row| assert_eq!(row.len(), c, "ragged rows"))
            .flatten()
            .map(|&x| BigInt::from(x))
            .collect();
        Self { rows: r, cols: c, entries }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for i in 0..dim {
                *m.get_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(i, j) = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                *out.get_mut(i, self.cols + j) = other.get(i, j).clone();
            }
        }
        out
    }

    /// Keeps the columns with the given indices, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut out = Self::zero(self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                *out.get_mut(i, jj) = self.get(i, j).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = self.get_mut(i, j);
            *e = -std::mem::take(e);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = self.get_mut(i, j);
            *e = -std::mem::take(e);
        }
    }

    /// row_i += c * row_j
    fn addmul_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for col in 0..self.cols {
            let delta = c * self.get(j, col);
            *self.get_mut(i, col) += delta;
        }
    }

    /// col_i += c * col_j
    fn addmul_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in 0..self.rows {
            let delta = c * self.get(row, j);
            *self.get_mut(row, i) += delta;
        }
    }
}

/// Smith normal form: `u * m * v` is diagonal with diagonal `d`,
/// `d[i]` divides `d[i+1]`, and `u`, `v` are unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Invariant factors, length `min(rows, cols)`, zeros at the end.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Like [`SnfResult`] but also carries the inverse of `u`, needed for
/// saturation and quotient coordinates.
#[derive(Clone, Debug)]
pub(crate) struct SnfFull {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SnfFull {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn result(self) -> SnfResult {
        SnfResult {
            d: self.d,
            u: self.u,
            v: self.v,
        }
    }
}

pub(crate) fn snf_full(m: &IntMatrix) -> SnfFull {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row op helpers keep u, u_inv in sync: a <- E a means u <- E u and
    // u_inv <- u_inv E^{-1}.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            a.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! row_neg {
        ($i:expr) => {{
            a.negate_row($i);
            u.negate_row($i);
            u_inv.negate_col($i);
        }};
    }
    macro_rules! row_addmul {
        // row_i += c * row_j
        ($i:expr, $j:expr, $c:expr) => {{
            let c: BigInt = $c;
            a.addmul_row($i, $j, &c);
            u.addmul_row($i, $j, &c);
            let neg = -c;
            u_inv.addmul_col($j, $i, &neg);
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            a.swap_cols($i, $j);
            v.swap_cols($i, $j);
        }};
    }
    macro_rules! col_addmul {
        // col_i += c * col_j
        ($i:expr, $j:expr, $c:expr) => {{
            let c: BigInt = $c;
            a.addmul_col($i, $j, &c);
            v.addmul_col($i, $j, &c);
        }};
    }

    let n = rows.min(cols);
    let mut t = 0;
    'outer: while t < n {
        // Smallest-nonzero-absolute-value pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    match pivot {
                        Some((pi, pj)) if a.get(pi, pj).abs() <= a.get(i, j).abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);

        // Clear column t below and row t to the right of the pivot. When a
        // remainder survives, the pivot shrinks and we restart the scan.
        for i in t + 1..rows {
            if !a.get(i, t).is_zero() {
                let q = a.get(i, t).div_rem(a.get(t, t)).0;
                row_addmul!(i, t, -q);
                if !a.get(i, t).is_zero() {
                    continue 'outer;
                }
            }
        }
        for j in t + 1..cols {
            if !a.get(t, j).is_zero() {
                let q = a.get(t, j).div_rem(a.get(t, t)).0;
                col_addmul!(j, t, -q);
                if !a.get(t, j).is_zero() {
                    continue 'outer;
                }
            }
        }

        // Enforce divisibility into the rest of the submatrix.
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !a.get(i, j).mod_floor(a.get(t, t)).is_zero() {
                    row_addmul!(t, i, BigInt::one());
                    continue 'outer;
                }
            }
        }

        if a.get(t, t).is_negative() {
            row_neg!(t);
        }
        t += 1;
    }

    let d = (0..n).map(|i| a.get(i, i).clone()).collect();
    SnfFull { d, u, u_inv, v }
}

/// Smith normal form of `m`.
pub fn snf(m: &IntMatrix) -> SnfResult {
    snf_full(m).result()
}

/// Rank of `m` over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    snf_full(m).rank()
}

/// GCD of the minors of order `rank(m)`. Equals the product of the nonzero
/// invariant factors; the zero and empty matrices give 1 (empty product).
pub fn gcd_maximal_minors(m: &IntMatrix) -> BigInt {
    snf_full(m)
        .d
        .iter()
        .filter(|x| !x.is_zero())
        .product()
}

/// A basis of the saturation of the column span of `m`: the maximal
/// subgroup of the ambient lattice in which the span has finite index.
/// The result has `rank(m)` columns.
pub fn saturate(m: &IntMatrix) -> IntMatrix {
    let s = snf_full(m);
    let r = s.rank();
    // u * m * v = diag(d) implies the span is u_inv * span(d_i e_i); its
    // saturation is u_inv * span(e_i, i < r).
    s.u_inv.select_columns(&(0..r).collect::<Vec<_>>())
}

/// Solves `m x = b` over the integers, if an integer solution exists.
pub fn solve_exact(m: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "rhs length mismatch");
    let s = snf_full(m);
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = s.d.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !ci.is_zero() {
                return Err(Error::NoIntegerSolution);
            }
        } else {
            let (q, r) = ci.div_rem(&di);
            if !r.is_zero() {
                return Err(Error::NoIntegerSolution);
            }
            y[i] = q;
        }
    }
    Ok(s.v.mul_vec(&y))
}

/// Column-style Hermite normal form, used as a canonical form for column
/// spans (lattice equality checks in the tests).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let rows = m.rows();
    let mut a = m.clone();
    let mut pivot_col = 0;
    for i in 0..rows {
        if pivot_col >= a.cols() {
            break;
        }
        // Euclid across columns pivot_col.. on row i.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..a.cols() {
                if !a.get(i, j).is_zero() {
                    match best {
                        Some(bj) if a.get(i, bj).abs() <= a.get(i, j).abs() => {}
                        _ => best = Some(j),
                    }
                }
            }
            let Some(bj) = best else { break };
            a.swap_cols(pivot_col, bj);
            let mut done = true;
            for j in pivot_col + 1..a.cols() {
                if !a.get(i, j).is_zero() {
                    let q = a.get(i, j).div_rem(a.get(i, pivot_col)).0;
                    let neg = -q;
                    a.addmul_col(j, pivot_col, &neg);
                    if !a.get(i, j).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a.get(i, pivot_col).is_zero() {
            continue;
        }
        if a.get(i, pivot_col).is_negative() {
            a.negate_col(pivot_col);
        }
        // Reduce earlier columns against this pivot.
        for j in 0..pivot_col {
            let q = a.get(i, j).div_mod_floor(a.get(i, pivot_col)).0;
            let neg = -q;
            a.addmul_col(j, pivot_col, &neg);
        }
        pivot_col += 1;
    }
    // Drop zero columns for a canonical result.
    let keep: Vec<usize> = (0..a.cols())
        .filter(|&j| (0..rows).any(|i| !a.get(i, j).is_zero()))
        .collect();
    a.select_columns(&keep)
}

/// Whether two matrices have the same column span over the integers.
pub fn same_column_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    hermite_normal_form(a) == hermite_normal_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(m: &IntMatrix) {
        let s = snf(m);
        // Round-trip: u * m * v reconstructs the diagonal exactly.
        let prod = s.u.matmul(m).matmul(&s.v);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if i == j && i < s.d.len() {
                    assert_eq!(prod.get(i, j), &s.d[i]);
                } else {
                    assert!(prod.get(i, j).is_zero(), "off-diagonal residue");
                }
            }
        }
        // Divisibility chain.
        for w in s.d.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert!(s.d.iter().all(|x| !x.is_negative()));
        // Unimodularity.
        assert_eq!(minor_det(&s.u).abs(), BigInt::from(1));
        assert_eq!(minor_det(&s.v).abs(), BigInt::from(1));
    }

    // Cofactor-expansion determinant, independent of the SNF path.
    fn minor_det(m: &IntMatrix) -> BigInt {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return BigInt::from(1);
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let mut sub = IntMatrix::zero(n - 1, n - 1);
            for i in 1..n {
                for (cc, &c) in cols.iter().enumerate() {
                    *sub.get_mut(i - 1, cc) = m.get(i, c).clone();
                }
            }
            let term = m.get(0, j) * minor_det(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    // Brute-force GCD of all minors of the given order.
    fn gcd_minors_direct(m: &IntMatrix, order: usize) -> BigInt {
        use num_integer::Integer;
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = combos(n - 1, k);
            for mut c in combos(n - 1, k - 1) {
                c.push(n - 1);
                out.push(c);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in combos(m.rows(), order) {
            for cs in combos(m.cols(), order) {
                let mut sub = IntMatrix::zero(order, order);
                for (i, &r) in rs.iter().enumerate() {
                    for (j, &c) in cs.iter().enumerate() {
                        *sub.get_mut(i, j) = m.get(r, c).clone();
                    }
                }
                g = g.gcd(&minor_det(&sub));
            }
        }
        g
    }

    #[test]
    fn snf_identity() {
        let s = snf(&IntMatrix::identity(3));
        assert_eq!(s.d, vec![1.into(), 1.into(), 1.into()]);
    }

    #[test]
    fn snf_two_by_two() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        let s = snf(&m);
        assert_eq!(s.d, vec![1.into(), 2.into()]);
        check_snf(&m);
    }

    #[test]
    fn snf_three_by_two() {
        // columns (3,3,0) and (-6,-6,-6)
        let m = IntMatrix::from_rows(&[vec![3, -6], vec![3, -6], vec![0, -6]]);
        let s = snf(&m);
        assert_eq!(s.d, vec![3.into(), 6.into()]);
        check_snf(&m);
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&IntMatrix::zero(3, 2)), 0);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        let m = IntMatrix::from_rows(&[vec![1, 1, 2], vec![1, -1, 0]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn gcd_maximal_minors_cases() {
        // columns (1,2,0),(2,0,0),(0,1,6)
        let m = IntMatrix::from_rows(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 0, 6]]).transpose();
        assert_eq!(gcd_maximal_minors(&m), 24.into());
        assert_eq!(gcd_maximal_minors(&IntMatrix::identity(5)), 1.into());
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(gcd_maximal_minors(&d), 6.into());
        assert_eq!(gcd_maximal_minors(&IntMatrix::zero(2, 3)), 1.into());
        assert_eq!(gcd_maximal_minors(&IntMatrix::zero(0, 3)), 1.into());
    }

    #[test]
    fn saturate_cases() {
        // columns (3,3,0),(-6,-6,-6),(0,0,3),(0,0,12)
        let m = IntMatrix::from_rows(&[
            vec![3, -6, 0, 0],
            vec![3, -6, 0, 0],
            vec![0, -6, 3, 12],
        ]);
        let sat = saturate(&m);
        let expected = IntMatrix::from_rows(&[vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert!(same_column_span(&sat, &expected));
        // the original span has finite index in the saturation
        for j in 0..m.cols() {
            assert!(solve_exact(&sat, &m.column(j)).is_ok());
        }

        let uni = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(same_column_span(&saturate(&uni), &IntMatrix::identity(2)));

        let col = IntMatrix::from_rows(&[vec![2], vec![4]]);
        let expected = IntMatrix::from_rows(&[vec![1], vec![2]]);
        assert!(same_column_span(&saturate(&col), &expected));
    }

    #[test]
    fn solve_exact_cases() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        assert_eq!(solve_exact(&m, &b).unwrap(), vec![2.into(), 3.into()]);
        let b = vec![BigInt::from(1), BigInt::from(0)];
        assert!(solve_exact(&m, &b).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_roundtrip(m in small_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn invariant_factor_product_matches_minor_gcd(m in small_matrix()) {
            let r = rank(&m);
            let got = gcd_maximal_minors(&m);
            if r == 0 {
                prop_assert_eq!(got, BigInt::from(1));
            } else {
                prop_assert_eq!(got, gcd_minors_direct(&m, r).abs());
            }
        }

        #[test]
        fn minor_gcd_unimodular_invariant(m in small_matrix(), seed in any::<u64>()) {
            // random unimodular row/col mixing
            let mut a = m.clone();
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); s };
            for _ in 0..6 {
                let i = (next() as usize) % a.rows();
                let j = (next() as usize) % a.rows();
                let c = BigInt::from((next() % 7) as i64 - 3);
                if i != j { a.addmul_row(i, j, &c); }
                let i = (next() as usize) % a.cols();
                let j = (next() as usize) % a.cols();
                let c = BigInt::from((next() % 7) as i64 - 3);
                if i != j { a.addmul_col(i, j, &c); }
            }
            prop_assert_eq!(gcd_maximal_minors(&a), gcd_maximal_minors(&m));
        }

        #[test]
        fn saturate_idempotent(m in small_matrix()) {
            let s1 = saturate(&m);
            let s2 = saturate(&s1);
            prop_assert!(same_column_span(&s1, &s2));
        }
    }
}

