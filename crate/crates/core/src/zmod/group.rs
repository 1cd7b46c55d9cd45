use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::int::Z;
use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::{snf_with, SnfTracking};

/// Finitely generated abelian group in invariant-factor normal form
/// `Z/d1 + Z/d2 + ...` with `d1 | d2 | ...`, every `di >= 2` or `di = 0`, and
/// the zeros (free summands) last.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariant_factors: Vec<Z>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator_labels: Option<Vec<String>>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: Vec::new(), generator_labels: None }
    }

    /// Accepts factors already in normal form; returns `None` otherwise.
    pub fn from_normal_form(factors: Vec<Z>) -> Option<Self> {
        let first_free = factors.iter().position(Z::is_zero).unwrap_or(factors.len());
        let (torsion, free) = factors.split_at(first_free);
        let ok = free.iter().all(Z::is_zero)
            && torsion.iter().all(|d| !d.is_negative() && d > &Z::ONE)
            && torsion.windows(2).all(|w| w[0].divides(&w[1]));
        ok.then_some(FinAbGroup { invariant_factors: factors, generator_labels: None })
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning infinite).
    pub fn from_cyclic_orders<T: Into<Z> + Clone>(orders: &[T]) -> Self {
        let moduli: Vec<Z> = orders.iter().cloned().map(Into::into).collect();
        CyclicSum::new(moduli).normal_form()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { invariant_factors: vec![Z::ZERO; rank], generator_labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.invariant_factors.len());
        self.generator_labels = Some(labels);
        self
    }

    pub fn invariant_factors(&self) -> &[Z] {
        &self.invariant_factors
    }

    pub fn generator_labels(&self) -> Option<&[String]> {
        self.generator_labels.as_deref()
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.invariant_factors.iter().all(|d| !d.is_zero())
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<Z> {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Group order, or `None` for an infinite group.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::from(1), |acc, d| acc * d.to_bigint()))
    }

    pub fn as_cyclic_sum(&self) -> CyclicSum {
        CyclicSum::new(self.invariant_factors.clone())
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut all = self.invariant_factors.clone();
        all.extend(other.invariant_factors.iter().cloned());
        FinAbGroup::from_cyclic_orders(&all)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// Direct sum of cyclic groups `Z/m0 + Z/m1 + ...` in a fixed order, not
/// normalized. A modulus of 0 is a copy of `Z`; a modulus of 1 is trivial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct CyclicSum {
    moduli: Vec<Z>,
}

impl CyclicSum {
    pub fn new(moduli: Vec<Z>) -> Self {
        let moduli = moduli.into_iter().map(|m| m.abs()).collect();
        CyclicSum { moduli }
    }

    pub fn empty() -> Self {
        CyclicSum { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[Z] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn modulus(&self, i: usize) -> &Z {
        &self.moduli[i]
    }

    pub fn zero(&self) -> Vec<Z> {
        vec![Z::ZERO; self.moduli.len()]
    }

    pub fn basis(&self, i: usize) -> Vec<Z> {
        let mut v = self.zero();
        v[i] = Z::ONE.rem_euclid(&self.moduli[i]);
        v
    }

    pub fn reduce(&self, v: &[Z]) -> Vec<Z> {
        assert_eq!(v.len(), self.moduli.len(), "coordinate vector length mismatch");
        v.iter().zip(&self.moduli).map(|(x, m)| x.rem_euclid(m)).collect()
    }

    pub fn reduce_in_place(&self, v: &mut [Z]) {
        for (x, m) in v.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = x.rem_euclid(m);
            }
        }
    }

    pub fn is_zero(&self, v: &[Z]) -> bool {
        v.iter().zip(&self.moduli).all(|(x, m)| m.divides(x))
    }

    pub fn eq_elements(&self, a: &[Z], b: &[Z]) -> bool {
        a.iter().zip(b).zip(&self.moduli).all(|((x, y), m)| m.divides(&(x - y)))
    }

    pub fn add(&self, a: &[Z], b: &[Z]) -> Vec<Z> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[Z], b: &[Z]) -> Vec<Z> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[Z]) -> Vec<Z> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn direct_sum(&self, other: &CyclicSum) -> CyclicSum {
        let mut m = self.moduli.clone();
        m.extend(other.moduli.iter().cloned());
        CyclicSum { moduli: m }
    }

    pub fn normal_form(&self) -> FinAbGroup {
        if let Some(g) = diagonal_normal_form(&self.moduli) {
            return g;
        }
        let n = self.moduli.len();
        let rel = IntMatrix::diagonal(n, n, &self.moduli);
        cokernel_presentation(&rel)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.normal_form().order()
    }
}

/// Element of a group, as a coordinate vector in its chosen generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AbElement {
    pub coords: Vec<Z>,
}

impl AbElement {
    pub fn new(coords: Vec<Z>) -> Self {
        AbElement { coords }
    }

    pub fn in_group(group: &FinAbGroup, coords: &[Z]) -> Self {
        AbElement { coords: group.as_cyclic_sum().reduce(coords) }
    }
}

/// Homomorphism between cyclic sums, acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub domain: CyclicSum,
    pub codomain: CyclicSum,
    pub matrix: SparseMatrix,
}

impl AbHom {
    pub fn new(domain: CyclicSum, codomain: CyclicSum, matrix: SparseMatrix) -> Self {
        assert_eq!(matrix.rows(), codomain.len(), "matrix rows must match codomain");
        assert_eq!(matrix.cols(), domain.len(), "matrix columns must match domain");
        AbHom { domain, codomain, matrix }
    }

    pub fn from_dense(domain: CyclicSum, codomain: CyclicSum, matrix: &IntMatrix) -> Self {
        Self::new(domain, codomain, matrix.to_sparse())
    }

    pub fn zero(domain: CyclicSum, codomain: CyclicSum) -> Self {
        let m = SparseMatrix::new(codomain.len(), domain.len());
        AbHom { domain, codomain, matrix: m }
    }

    pub fn identity(group: CyclicSum) -> Self {
        let m = SparseMatrix::identity(group.len());
        AbHom { domain: group.clone(), codomain: group, matrix: m }
    }

    /// `k` times the identity between groups with the same number of summands.
    pub fn scalar(domain: CyclicSum, codomain: CyclicSum, k: &Z) -> Self {
        assert_eq!(domain.len(), codomain.len(), "scalar map needs matching summands");
        let mut m = SparseMatrix::new(codomain.len(), domain.len());
        for i in 0..domain.len() {
            m.push(i, i, k.clone());
        }
        AbHom { domain, codomain, matrix: m }
    }

    /// Pointwise sum `self + k * other`.
    pub fn add_scaled(&self, other: &AbHom, k: &Z) -> AbHom {
        assert!(self.domain == other.domain && self.codomain == other.codomain, "sum of homs with different ends");
        AbHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add_scaled(&other.matrix, k),
        }
    }

    pub fn neg(&self) -> AbHom {
        AbHom::zero(self.domain.clone(), self.codomain.clone()).add_scaled(self, &Z::from(-1))
    }

    /// Equality as homomorphisms, that is entrywise modulo the codomain.
    pub fn same_map(&self, other: &AbHom) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.matrix.add_scaled(&other.matrix, &Z::from(-1)).is_zero_mod(self.codomain.moduli())
    }

    pub fn dense(&self) -> IntMatrix {
        self.matrix.to_dense()
    }

    pub fn apply(&self, x: &[Z]) -> Vec<Z> {
        let mut y = self.matrix.mul_vec(x);
        self.codomain.reduce_in_place(&mut y);
        y
    }

    /// Each generator of order `m > 0` must land on an element killed by `m`.
    pub fn respects_torsion(&self) -> bool {
        let t = self.matrix.transpose();
        (0..self.domain.len()).all(|i| {
            let m = self.domain.modulus(i);
            m.is_zero() || t.row(i).iter().all(|(r, v)| self.codomain.modulus(*r as usize).divides(&(m * v)))
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.codomain, other.domain, "composite of non-composable homs");
        AbHom { domain: self.domain.clone(), codomain: other.codomain.clone(), matrix: other.matrix.mul(&self.matrix) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero_mod(self.codomain.moduli())
    }
}

/// Normal form of a direct sum of cyclic groups by splitting each order into
/// prime powers. Returns `None` when some order is too large to factor by
/// trial division.
fn diagonal_normal_form(moduli: &[Z]) -> Option<FinAbGroup> {
    const LIMIT: i64 = 1 << 40;
    let mut free = 0usize;
    let mut powers: std::collections::BTreeMap<i64, Vec<u32>> = std::collections::BTreeMap::new();
    for m in moduli {
        let mut v = m.to_i64()?.abs();
        if v == 0 {
            free += 1;
            continue;
        }
        if v > LIMIT {
            return None;
        }
        let mut p = 2i64;
        while p * p <= v {
            let mut e = 0u32;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                powers.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if v > 1 {
            powers.entry(v).or_default().push(1);
        }
    }
    let width = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![Z::ONE; width];
    for (p, mut es) in powers {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            let slot = width - 1 - k;
            factors[slot] = &factors[slot] * &Z::from(p.pow(e));
        }
    }
    factors.extend(std::iter::repeat_n(Z::ZERO, free));
    Some(FinAbGroup { invariant_factors: factors, generator_labels: None })
}

/// Cokernel of `M: Z^cols -> Z^rows`, in invariant-factor normal form.
pub fn cokernel_presentation(m: &IntMatrix) -> FinAbGroup {
    let s = snf_with(m, SnfTracking::NONE);
    let diag = s.diagonal();
    let mut factors: Vec<Z> = diag.iter().filter(|d| !d.is_unit() && !d.is_zero()).map(Z::abs).collect();
    let free = m.rows() - s.rank;
    factors.extend(std::iter::repeat_n(Z::ZERO, free));
    FinAbGroup { invariant_factors: factors, generator_labels: None }
}

/// True iff the two groups have the same normal form.
pub fn iso_check(g: &FinAbGroup, h: &FinAbGroup) -> bool {
    g.invariant_factors == h.invariant_factors
}

/// How free parameters are fixed when a preimage is not unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreimageRule {
    /// Free coordinates in the reduced basis set to 0.
    #[default]
    Canonical,
    /// Free coordinates in the reduced basis set to 1.
    Perturbed,
}

/// Returns `x` with `h(x) = y`, or `None` if `y` is not in the image.
pub fn solve_preimage(h: &AbHom, y: &[Z]) -> Option<Vec<Z>> {
    solve_preimage_with(h, y, PreimageRule::Canonical)
}

pub fn solve_preimage_with(h: &AbHom, y: &[Z], rule: PreimageRule) -> Option<Vec<Z>> {
    let n = h.domain.len();
    let rows = h.codomain.len();
    assert_eq!(y.len(), rows, "target length mismatch");
    let mut a = h.dense();
    let rel = IntMatrix::diagonal(rows, rows, h.codomain.moduli());
    a = a.hconcat(&rel);
    let s = snf_with(&a, SnfTracking { u: true, v: true, ..SnfTracking::NONE });
    let u = s.u.as_ref().expect("tracked");
    let v = s.v.as_ref().expect("tracked");
    let yp = u.mul_vec(y);
    let cols = a.cols();
    let mut w = vec![Z::ZERO; cols];
    for (i, yi) in yp.iter().enumerate() {
        if i < s.rank {
            let d = s.d.get(i, i);
            if !d.divides(yi) {
                return None;
            }
            w[i] = yi.div_exact(d);
        } else if !yi.is_zero() {
            return None;
        }
    }
    if rule == PreimageRule::Perturbed {
        for wi in w.iter_mut().skip(s.rank) {
            *wi = Z::ONE;
        }
    }
    let full = v.mul_vec(&w);
    Some(h.domain.reduce(&full[..n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel_presentation(&IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 0]]));
        assert_eq!(g.invariant_factors(), &z(&[2, 0])[..]);
        assert!(cokernel_presentation(&IntMatrix::identity(3)).is_trivial());
        let g = cokernel_presentation(&IntMatrix::zeros(3, 0));
        assert_eq!(g, FinAbGroup::free(3));
    }

    #[test]
    fn iso_check_examples() {
        let a = FinAbGroup::from_normal_form(z(&[2, 4])).unwrap();
        assert!(iso_check(&a, &a.clone()));
        let b = FinAbGroup::from_normal_form(z(&[8])).unwrap();
        assert!(!iso_check(&b, &a));
        assert_eq!(a.order(), b.order());
        assert!(!iso_check(&FinAbGroup::free(1), &FinAbGroup::trivial()));
        assert!(FinAbGroup::from_normal_form(z(&[4, 2])).is_none());
        assert!(FinAbGroup::from_normal_form(z(&[0, 2])).is_none());
    }

    #[test]
    fn diagonal_normal_form_agrees_with_smith() {
        for orders in [vec![0i64, 4, 1, 6], vec![12, 18, 5], vec![2, 2, 4, 8, 3], vec![], vec![1, 1], vec![97, 0, 9]] {
            let zs = z(&orders);
            let n = zs.len();
            let dense = cokernel_presentation(&IntMatrix::diagonal(n, n, &zs));
            assert_eq!(CyclicSum::new(zs).normal_form(), dense, "{orders:?}");
        }
    }

    #[test]
    fn normal_form_of_cyclic_orders() {
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2i64, 3]).invariant_factors(), &z(&[6])[..]);
        assert_eq!(FinAbGroup::from_cyclic_orders(&[0i64, 4, 1, 6]).invariant_factors(), &z(&[2, 12, 0])[..]);
    }

    #[test]
    fn preimage_examples() {
        let zz = CyclicSum::new(z(&[0]));
        let times2 = AbHom::from_dense(zz.clone(), zz.clone(), &IntMatrix::from_rows(&[vec![2i64]]));
        assert_eq!(solve_preimage(&times2, &z(&[4])), Some(z(&[2])));
        assert_eq!(solve_preimage(&times2, &z(&[3])), None);
        let proj = AbHom::from_dense(
            CyclicSum::new(z(&[0, 0])),
            CyclicSum::new(z(&[2])),
            &IntMatrix::from_rows(&[vec![1i64, 0]]),
        );
        let x = solve_preimage(&proj, &z(&[1])).unwrap();
        assert_eq!(x, z(&[1, 0]));
        let xp = solve_preimage_with(&proj, &z(&[1]), PreimageRule::Perturbed).unwrap();
        assert!(proj.codomain.eq_elements(&proj.apply(&xp), &z(&[1])));
    }

    #[test]
    fn torsion_respect() {
        let h =
            AbHom::from_dense(CyclicSum::new(z(&[2])), CyclicSum::new(z(&[4])), &IntMatrix::from_rows(&[vec![2i64]]));
        assert!(h.respects_torsion());
        let bad =
            AbHom::from_dense(CyclicSum::new(z(&[2])), CyclicSum::new(z(&[4])), &IntMatrix::from_rows(&[vec![1i64]]));
        assert!(!bad.respects_torsion());
    }
}
