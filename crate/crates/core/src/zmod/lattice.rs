//! Subgroups of a cyclic sum, given by generating sets.

use super::group::{AbHom, CyclicSum};
use super::int::Z;
use super::matrix::IntMatrix;
use super::snf::{snf_with, SnfTracking};

/// Matrix whose columns are `gens` followed by the relations of `ambient`.
fn span_matrix(ambient: &CyclicSum, gens: &[Vec<Z>]) -> IntMatrix {
    let n = ambient.len();
    let mut m = IntMatrix::zeros(n, gens.len() + n);
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), n, "generator length mismatch");
        for (i, v) in g.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    for i in 0..n {
        m.set(i, gens.len() + i, ambient.modulus(i).clone());
    }
    m
}

/// Membership test for several elements against one generated subgroup.
pub struct SpanTester {
    u: IntMatrix,
    diag: Vec<Z>,
    rank: usize,
}

impl SpanTester {
    pub fn new(ambient: &CyclicSum, gens: &[Vec<Z>]) -> Self {
        let s = snf_with(&span_matrix(ambient, gens), SnfTracking { u: true, ..SnfTracking::NONE });
        let diag = s.diagonal();
        SpanTester { u: s.u.expect("tracked"), diag, rank: s.rank }
    }

    pub fn contains(&self, x: &[Z]) -> bool {
        let y = self.u.mul_vec(x);
        y.iter().enumerate().all(|(i, yi)| if i < self.rank { self.diag[i].divides(yi) } else { yi.is_zero() })
    }
}

/// True iff every element of `a` lies in the subgroup generated by `b`.
pub fn subgroup_contains(ambient: &CyclicSum, b: &[Vec<Z>], a: &[Vec<Z>]) -> bool {
    let t = SpanTester::new(ambient, b);
    a.iter().all(|x| t.contains(x))
}

pub fn subgroup_eq(ambient: &CyclicSum, a: &[Vec<Z>], b: &[Vec<Z>]) -> bool {
    subgroup_contains(ambient, a, b) && subgroup_contains(ambient, b, a)
}

/// Generators of the image of `h` (its columns, reduced).
pub fn image_generators(h: &AbHom) -> Vec<Vec<Z>> {
    let dense = h.dense();
    (0..dense.cols()).map(|c| h.codomain.reduce(&dense.column(c))).collect()
}

/// Generators of the kernel of `h`.
pub fn kernel_generators(h: &AbHom) -> Vec<Vec<Z>> {
    let n = h.domain.len();
    let rows = h.codomain.len();
    let a = h.dense().hconcat(&IntMatrix::diagonal(rows, rows, h.codomain.moduli()));
    let s = snf_with(&a, SnfTracking { v: true, ..SnfTracking::NONE });
    let v = s.v.expect("tracked");
    let mut out = Vec::new();
    for c in s.rank..a.cols() {
        let x = h.domain.reduce(&v.column(c)[..n]);
        if !h.domain.is_zero(&x) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn subgroups_of_z4() {
        let g = CyclicSum::new(z(&[4]));
        assert!(subgroup_eq(&g, &[z(&[2])], &[z(&[6])]));
        assert!(!subgroup_eq(&g, &[z(&[2])], &[z(&[1])]));
        assert!(subgroup_contains(&g, &[z(&[1])], &[z(&[2])]));
        assert!(subgroup_eq(&g, &[], &[z(&[0])]));
    }

    #[test]
    fn kernel_of_reduction() {
        let h =
            AbHom::from_dense(CyclicSum::new(z(&[4])), CyclicSum::new(z(&[2])), &IntMatrix::from_rows(&[vec![1i64]]));
        let k = kernel_generators(&h);
        assert!(subgroup_eq(&h.domain, &k, &[z(&[2])]));
        assert!(subgroup_eq(&h.codomain, &image_generators(&h), &[z(&[1])]));
    }
}
