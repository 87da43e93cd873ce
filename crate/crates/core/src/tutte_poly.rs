//! Bivariate and univariate polynomials with exact integer coefficients,
//! the multiplicity-weighted Tutte polynomial (by subset expansion and
//! by deletion–contraction), its one-variable specializations, and
//! unimodality / log-concavity tests on coefficient sequences.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith_matroid::{ArithmeticMatroid, ElementClass, Subset};
use crate::error::{Error, Result};

/// Default ground-size cap for the subset-expansion routes.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Polynomial in `x` and `y` with integer coefficients; terms keyed by
/// exponent pair, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = Self::default();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::default();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn swap_xy(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * x.pow(i) * y.pow(j);
        }
        acc
    }

    /// Substitutes an integer for `y`, leaving a polynomial in `x`.
    pub fn substitute_y(&self, y: &BigInt) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_coeff(i as usize, c * y.pow(j));
        }
        out
    }

    /// Substitutes an integer for `x`, leaving a polynomial in `y`.
    pub fn substitute_x(&self, x: &BigInt) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_coeff(j as usize, c * x.pow(i));
        }
        out
    }

    pub fn degree_x(&self) -> usize {
        self.terms.keys().map(|&(i, _)| i as usize).max().unwrap_or(0)
    }

    /// Canonical text: terms ascending by exponent pair, `c*x^i*y^j`
    /// with unit coefficients and zero exponents elided.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (i, j) == (0, 0) {
                factors.push(mag.to_string());
            }
            for (sym, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

// JSON form: {"terms": [[i, j, "coeff"], ...]} ascending.
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shape<'a> {
            terms: TermList<'a>,
        }
        struct TermList<'a>(&'a BTreeMap<(u32, u32), BigInt>);
        impl Serialize for TermList<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (&(i, j), c) in self.0 {
                    seq.serialize_element(&(i, j, c.to_string()))?;
                }
                seq.end()
            }
        }
        Shape { terms: TermList(&self.terms) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Shape {
            terms: Vec<(u32, u32, String)>,
        }
        let shape = Shape::deserialize(deserializer)?;
        let mut p = BiPoly::zero();
        for (i, j, c) in shape.terms {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

/// Polynomial in one variable, coefficients by ascending degree; no
/// trailing zero coefficient unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| c.into()).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add_coeff(&mut self, i: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, BigInt::zero());
        }
        self.coeffs[i] += c;
        self.normalize();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.coeffs.iter().enumerate() {
            out.add_coeff(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out.add_coeff(i + j, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(BigInt::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Substitutes `other` for the variable (polynomial composition).
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Canonical text in the given variable name, ascending degrees.
    pub fn canonical_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e == 0 {
                factors.push(mag.to_string());
            }
            match e {
                0 => {}
                1 => factors.push(var.to_string()),
                _ => factors.push(format!("{var}^{e}")),
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text("q"))
    }
}

fn check_cap(m: &ArithmeticMatroid, cap: usize) -> Result<()> {
    if m.size() > cap {
        return Err(Error::CapExceeded { size: m.size(), cap });
    }
    Ok(())
}

fn subset_expansion(
    m: &ArithmeticMatroid,
    cap: usize,
    weight: impl Fn(Subset) -> BigInt,
) -> Result<BiPoly> {
    check_cap(m, cap)?;
    let k = m.size();
    let r = m.rank_total();
    // collect the weight of each (corank, nullity) class, then expand
    // the (x-1)^a (y-1)^b factors once per class
    let mut classes: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for a in Subset::full(k).subsets() {
        let ra = m.rank(a);
        *classes.entry((r - ra, a.len() - ra)).or_default() += weight(a);
    }
    let xm1 = UniPoly::from_i64(&[-1, 1]);
    let mut out = BiPoly::zero();
    for ((cx, cy), w) in classes {
        let px = xm1.pow(cx);
        let py = xm1.pow(cy);
        for (i, a) in px.coeffs().iter().enumerate() {
            for (j, b) in py.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, a * b * &w);
            }
        }
    }
    Ok(out)
}

/// The multiplicity-weighted Tutte polynomial by direct expansion over
/// all sublists. Defined for any multiplicity table, including ones
/// violating the axioms.
pub fn arithmetic_tutte_subsetsum(m: &ArithmeticMatroid) -> Result<BiPoly> {
    arithmetic_tutte_subsetsum_with_cap(m, DEFAULT_SUBSET_CAP)
}

pub fn arithmetic_tutte_subsetsum_with_cap(m: &ArithmeticMatroid, cap: usize) -> Result<BiPoly> {
    subset_expansion(m, cap, |a| m.multiplicity(a))
}

/// The classical (multiplicity-blind) Tutte polynomial of the
/// underlying matroid.
pub fn classical_tutte(m: &ArithmeticMatroid) -> Result<BiPoly> {
    classical_tutte_with_cap(m, DEFAULT_SUBSET_CAP)
}

pub fn classical_tutte_with_cap(m: &ArithmeticMatroid, cap: usize) -> Result<BiPoly> {
    subset_expansion(m, cap, |_| BigInt::one())
}

struct Tables {
    k: usize,
    rank: Vec<usize>,
    mult: Vec<BigInt>,
}

impl Tables {
    fn classify(&self, v: usize) -> ElementClass {
        if self.rank[1 << v] == 0 {
            ElementClass::Torsion
        } else if self.rank[(self.full().without(v)).0 as usize] + 1
            == self.rank[self.full().0 as usize]
        {
            ElementClass::Free
        } else {
            ElementClass::Proper
        }
    }

    fn full(&self) -> Subset {
        Subset::full(self.k)
    }

    fn delete(&self, v: usize) -> Tables {
        self.minor(v, |s| s.unsqueeze(v), 0)
    }

    fn contract(&self, v: usize) -> Tables {
        let drop = self.rank[1 << v];
        self.minor(v, |s| s.unsqueeze(v).with(v), drop)
    }

    fn minor(&self, _v: usize, lift: impl Fn(Subset) -> Subset, rank_drop: usize) -> Tables {
        let k = self.k - 1;
        let n = 1usize << k;
        let mut rank = Vec::with_capacity(n);
        let mut mult = Vec::with_capacity(n);
        for bits in 0..n {
            let t = lift(Subset(bits as u32));
            rank.push(self.rank[t.0 as usize] - rank_drop);
            mult.push(self.mult[t.0 as usize].clone());
        }
        Tables { k, rank, mult }
    }
}

fn delcon_recurse(t: &Tables) -> BiPoly {
    if t.k == 0 {
        return BiPoly::constant(t.mult[0].clone());
    }
    // remove the greatest proper element first; on molecules, use the
    // free or torsion rule on the greatest element of that class
    let classes: Vec<ElementClass> = (0..t.k).map(|v| t.classify(v)).collect();
    if let Some(v) = (0..t.k).rev().find(|&v| classes[v] == ElementClass::Proper) {
        return delcon_recurse(&t.delete(v)).add(&delcon_recurse(&t.contract(v)));
    }
    if let Some(v) = (0..t.k).rev().find(|&v| classes[v] == ElementClass::Free) {
        let del = delcon_recurse(&t.delete(v));
        let con = delcon_recurse(&t.contract(v));
        return del.mul(&BiPoly::x().add(&BiPoly::constant((-1).into()))).add(&con);
    }
    let v = t.k - 1; // all torsion
    let del = delcon_recurse(&t.delete(v));
    let con = delcon_recurse(&t.contract(v));
    del.add(&con.mul(&BiPoly::y().add(&BiPoly::constant((-1).into()))))
}

/// The multiplicity-weighted Tutte polynomial by deletion–contraction.
/// Agrees with [`arithmetic_tutte_subsetsum`] on valid matroids; on
/// tables violating the axioms the recursion rules do not hold and the
/// result is unspecified.
pub fn arithmetic_tutte_delcon(m: &ArithmeticMatroid) -> Result<BiPoly> {
    arithmetic_tutte_delcon_with_cap(m, DEFAULT_SUBSET_CAP)
}

pub fn arithmetic_tutte_delcon_with_cap(m: &ArithmeticMatroid, cap: usize) -> Result<BiPoly> {
    check_cap(m, cap)?;
    let (rank, mult) = m.to_tables();
    Ok(delcon_recurse(&Tables { k: m.size(), rank, mult }))
}

/// One-variable specializations of the weighted Tutte polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Specialization {
    /// `M(1,1)`: total multiplicity-weighted basis count.
    BasesCount,
    /// `M(1,0)`: number of connected components of the real arrangement
    /// complement.
    Components,
    /// Poincare polynomial of the complex complement:
    /// `sum_i c_i (2q+1)^i q^(n-i)` where `M(x,0) = sum_i c_i x^i`.
    Poincare,
    /// Characteristic polynomial `(-1)^n M(1-q, 0)`.
    Characteristic,
    /// `M(1+q, 1)`: generating polynomial of weighted independent-set
    /// counts by corank.
    IndepCount,
}

/// Result of a specialization: a single count or a polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Specialized {
    Count(BigInt),
    Poly(UniPoly),
}

/// Specializes `p`; `n` is the ambient rank, used by the Poincare and
/// characteristic forms.
pub fn specialize(p: &BiPoly, which: Specialization, n: usize) -> Result<Specialized> {
    let one = BigInt::one();
    match which {
        Specialization::BasesCount => Ok(Specialized::Count(p.eval(&one, &one))),
        Specialization::Components => Ok(Specialized::Count(p.eval(&one, &BigInt::zero()))),
        Specialization::Poincare => {
            let at_y0 = p.substitute_y(&BigInt::zero());
            if at_y0.degree() > n && !at_y0.is_zero() {
                return Err(Error::DegreeExceedsRank {
                    degree: at_y0.degree(),
                    rank: n,
                });
            }
            let two_q_plus_1 = UniPoly::from_i64(&[1, 2]);
            let q = UniPoly::from_i64(&[0, 1]);
            let mut out = UniPoly::zero();
            for (i, c) in at_y0.coeffs().iter().enumerate() {
                out = out.add(&two_q_plus_1.pow(i).mul(&q.pow(n - i)).scale(c));
            }
            Ok(Specialized::Poly(out))
        }
        Specialization::Characteristic => {
            let at_y0 = p.substitute_y(&BigInt::zero());
            let one_minus_q = UniPoly::from_i64(&[1, -1]);
            let mut out = at_y0.compose(&one_minus_q);
            if n % 2 == 1 {
                out = out.scale(&(-1).into());
            }
            Ok(Specialized::Poly(out))
        }
        Specialization::IndepCount => {
            let at_y1 = p.substitute_y(&one);
            Ok(Specialized::Poly(at_y1.compose(&UniPoly::from_i64(&[1, 1]))))
        }
    }
}

/// Tests unimodality and log-concavity of the absolute values of the
/// coefficient sequence, including interior zeros.
pub fn sequence_tests(p: &UniPoly) -> (bool, bool) {
    let abs: Vec<BigInt> = p.coeffs().iter().map(Signed::abs).collect();
    if abs.len() <= 1 {
        return (true, true);
    }
    let mut unimodal = true;
    let mut descending = false;
    for w in abs.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if w[1] > w[0] && descending {
            unimodal = false;
            break;
        }
    }
    let log_concave = abs
        .windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    (unimodal, log_concave)
}
