use super::fp::{rank_mod_p, uniform_prime};
use super::group::{AbHom, CyclicSum, FinAbGroup};
use super::int::Z;
use super::matrix::{IntMatrix, SparseMatrix};
use super::modkernel::{finite_cocycle_basis, hermite_coords};
use super::snf::{snf_with, SnfTracking};
use super::ZmodError;

/// Cochain complex of cyclic sums with differentials `levels[n] -> levels[n+1]`.
#[derive(Clone, Debug)]
pub struct CochainComplexZ {
    levels: Vec<CyclicSum>,
    differentials: Vec<AbHom>,
}

impl CochainComplexZ {
    pub fn new(levels: Vec<CyclicSum>, differentials: Vec<AbHom>) -> Result<Self, ZmodError> {
        if levels.len() != differentials.len() + 1 {
            return Err(ZmodError::DimensionMismatch(format!(
                "{} levels need {} differentials, got {}",
                levels.len(),
                levels.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.domain != levels[n] || d.codomain != levels[n + 1] {
                return Err(ZmodError::DimensionMismatch(format!("differential {n} does not match its levels")));
            }
        }
        Ok(CochainComplexZ { levels, differentials })
    }

    pub fn levels(&self) -> &[CyclicSum] {
        &self.levels
    }

    pub fn differentials(&self) -> &[AbHom] {
        &self.differentials
    }

    pub fn level(&self, n: usize) -> &CyclicSum {
        &self.levels[n]
    }

    pub fn differential(&self, n: usize) -> &AbHom {
        &self.differentials[n]
    }

    /// Highest degree whose cohomology is determined.
    pub fn top_degree(&self) -> usize {
        self.differentials.len().saturating_sub(1)
    }

    /// Checks `d^n ∘ d^(n-1) = 0`.
    pub fn check_square_zero(&self, n: usize) -> Result<(), ZmodError> {
        if n == 0 || n >= self.differentials.len() {
            return Ok(());
        }
        let dd = self.differentials[n].matrix.mul(&self.differentials[n - 1].matrix);
        if dd.is_zero_mod(self.levels[n + 1].moduli()) {
            Ok(())
        } else {
            Err(ZmodError::NotAComplex(n))
        }
    }

    pub fn cohomology_at(&self, n: usize) -> Result<FinAbGroup, ZmodError> {
        if let Some(g) = self.prime_field_cohomology(n)? {
            return Ok(g);
        }
        Ok(self.cohomology_data(n)?.group)
    }

    /// When the non-trivial summands of levels `n` and `n + 1` all have one
    /// prime order `p`, both are `F_p`-vector spaces and the cohomology is
    /// `(Z/p)^(dim - rank d^n - rank d^(n-1))`, computed by sparse ranks.
    fn prime_field_cohomology(&self, n: usize) -> Result<Option<FinAbGroup>, ZmodError> {
        if n >= self.differentials.len() {
            return Err(ZmodError::IndexOutOfRange { index: n, len: self.differentials.len() });
        }
        let (Some(here), Some(next)) = (uniform_prime(&self.levels[n]), uniform_prime(&self.levels[n + 1])) else {
            return Ok(None);
        };
        let p = match (here, next) {
            (None, _) => return Ok(Some(FinAbGroup::trivial())),
            (Some(p), Some(q)) if p != q => return Ok(None),
            (Some(p), _) => p,
        };
        self.check_square_zero(n)?;
        let nontrivial = |g: &CyclicSum| (0..g.len()).filter(|&i| !g.modulus(i).is_one()).collect::<Vec<_>>();
        let dim = nontrivial(&self.levels[n]).len();
        let out = rank_mod_p(&self.differentials[n].matrix, nontrivial(&self.levels[n + 1]), p);
        let inc =
            if n == 0 { 0 } else { rank_mod_p(&self.differentials[n - 1].matrix, nontrivial(&self.levels[n]), p) };
        Ok(Some(FinAbGroup::from_cyclic_orders(&vec![Z::from(p); dim - out - inc])))
    }

    /// Cohomology at degree `n` with the data needed to classify cocycles.
    pub fn cohomology_data(&self, n: usize) -> Result<CohomologyData, ZmodError> {
        if n >= self.differentials.len() {
            return Err(ZmodError::IndexOutOfRange { index: n, len: self.differentials.len() });
        }
        self.check_square_zero(n)?;
        let level = &self.levels[n];
        let outgoing = &self.differentials[n];
        let incoming = if n == 0 { None } else { Some(&self.differentials[n - 1].matrix) };
        // Summands of order one carry no elements; dropping them keeps the
        // lattice computations at the size of the non-trivial part.
        let keep: Vec<usize> = (0..level.len()).filter(|&i| !level.modulus(i).is_one()).collect();
        if keep.len() == level.len() {
            return compute_cohomology(level, outgoing, incoming).ok_or(ZmodError::NotAComplex(n));
        }
        let cod = &outgoing.codomain;
        let rows: Vec<usize> = (0..cod.len()).filter(|&r| !cod.modulus(r).is_one()).collect();
        let small = CyclicSum::new(keep.iter().map(|&i| level.modulus(i).clone()).collect());
        let small_cod = CyclicSum::new(rows.iter().map(|&r| cod.modulus(r).clone()).collect());
        let small_out = AbHom::new(small.clone(), small_cod, restrict(&outgoing.matrix, &rows, &keep));
        let small_in = incoming.map(|m| {
            let all: Vec<usize> = (0..m.cols()).collect();
            restrict(m, &keep, &all)
        });
        let mut data = compute_cohomology(&small, &small_out, small_in.as_ref()).ok_or(ZmodError::NotAComplex(n))?;
        data.representatives = data.representatives.iter().map(|r| expand(r, &keep, level.len())).collect();
        data.level = level.clone();
        data.outgoing = outgoing.clone();
        data.keep = Some(keep);
        Ok(data)
    }
}

/// Cohomology group at one degree together with a basis of the cocycle lattice
/// and the change of basis onto the invariant-factor generators.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub group: FinAbGroup,
    level: CyclicSum,
    outgoing: AbHom,
    coords: CocycleCoords,
    /// Rows of `U` for the non-trivial invariant factors.
    projection: Vec<Vec<Z>>,
    representatives: Vec<Vec<Z>>,
    /// Coordinates of the level seen by `coords`, when trivial summands were dropped.
    keep: Option<Vec<usize>>,
}

/// Rows `rows` and columns `cols` of `m`, renumbered.
fn restrict(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    let mut col_map = vec![u32::MAX; m.cols()];
    for (k, &c) in cols.iter().enumerate() {
        col_map[c] = k as u32;
    }
    let mut out = SparseMatrix::new(rows.len(), cols.len());
    for (k, &r) in rows.iter().enumerate() {
        for (c, v) in m.row(r) {
            let c = col_map[*c as usize];
            if c != u32::MAX {
                out.push(k, c as usize, v.clone());
            }
        }
    }
    out.normalize();
    out
}

fn expand(x: &[Z], keep: &[usize], len: usize) -> Vec<Z> {
    let mut out = vec![Z::ZERO; len];
    for (v, &i) in x.iter().zip(keep) {
        out[i] = v.clone();
    }
    out
}

impl CohomologyData {
    pub fn level(&self) -> &CyclicSum {
        &self.level
    }

    pub fn is_cocycle(&self, x: &[Z]) -> bool {
        self.outgoing.codomain.is_zero(&self.outgoing.matrix.mul_vec(x))
    }

    /// One cocycle per invariant factor, mapping to the standard generators.
    pub fn representatives(&self) -> &[Vec<Z>] {
        &self.representatives
    }

    /// Class of a cocycle in invariant-factor coordinates.
    pub fn classify(&self, x: &[Z]) -> Result<Vec<Z>, ZmodError> {
        if x.len() != self.level.len() {
            return Err(ZmodError::DimensionMismatch(format!(
                "cochain of length {} at a level of size {}",
                x.len(),
                self.level.len()
            )));
        }
        if !self.is_cocycle(x) {
            return Err(ZmodError::NotACocycle);
        }
        let coords = match &self.keep {
            Some(keep) => {
                let small: Vec<Z> = keep.iter().map(|&i| x[i].clone()).collect();
                self.coords.coords(&small)
            }
            None => self.coords.coords(x),
        }
        .ok_or(ZmodError::NotACocycle)?;
        let factors = self.group.invariant_factors();
        Ok(self
            .projection
            .iter()
            .zip(factors)
            .map(|(row, d)| {
                let mut acc = Z::ZERO;
                for (a, b) in row.iter().zip(&coords) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc.rem_euclid(d)
            })
            .collect())
    }

    /// True iff the cocycle is a coboundary.
    pub fn is_trivial_class(&self, x: &[Z]) -> Result<bool, ZmodError> {
        Ok(self.classify(x)?.iter().all(Z::is_zero))
    }

    /// Cocycle representing the given class coordinates.
    pub fn lift(&self, class: &[Z]) -> Vec<Z> {
        let mut out = self.level.zero();
        for (c, rep) in class.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep) {
                o.add_mul(c, r);
            }
        }
        self.level.reduce(&out)
    }
}

/// How coordinates in the cocycle basis are recovered.
#[derive(Clone, Debug)]
enum CocycleCoords {
    /// Rows of a left inverse of the basis, as (numerators, denominator).
    Inverse(Vec<(Vec<Z>, Z)>),
    /// The basis itself, in Hermite form.
    Hermite(Vec<Vec<Z>>),
}

impl CocycleCoords {
    fn coords(&self, x: &[Z]) -> Option<Vec<Z>> {
        match self {
            CocycleCoords::Inverse(rows) => rows
                .iter()
                .map(|(num, den)| {
                    let mut acc = Z::ZERO;
                    for (a, b) in num.iter().zip(x) {
                        if !a.is_zero() && !b.is_zero() {
                            acc.add_mul(a, b);
                        }
                    }
                    den.divides(&acc).then(|| acc.div_exact(den))
                })
                .collect(),
            CocycleCoords::Hermite(basis) => hermite_coords(basis, x),
        }
    }
}

/// A basis of the cocycle lattice, grown one linear constraint at a time.
struct KernelLattice {
    /// Basis vectors, each of the ambient length.
    basis: Vec<Vec<Z>>,
    /// Left inverse rows with a positive denominator each.
    inverse: Vec<(Vec<Z>, Z)>,
}

fn combine_rows(a: &(Vec<Z>, Z), ka: &Z, b: &(Vec<Z>, Z), kb: &Z) -> (Vec<Z>, Z) {
    let l = a.1.lcm(&b.1);
    let fa = ka * &l.div_exact(&a.1);
    let fb = kb * &l.div_exact(&b.1);
    let mut num: Vec<Z> = Vec::with_capacity(a.0.len());
    for (x, y) in a.0.iter().zip(&b.0) {
        let mut v = Z::ZERO;
        if !x.is_zero() && !fa.is_zero() {
            v.add_mul(&fa, x);
        }
        if !y.is_zero() && !fb.is_zero() {
            v.add_mul(&fb, y);
        }
        num.push(v);
    }
    reduce_fraction(num, l)
}

fn reduce_fraction(mut num: Vec<Z>, den: Z) -> (Vec<Z>, Z) {
    if den.is_one() {
        return (num, den);
    }
    let mut g = den.clone();
    for x in &num {
        if g.is_one() {
            break;
        }
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_one() {
        return (num, den);
    }
    for x in num.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g);
        }
    }
    (num, den.div_exact(&g))
}

fn lin2(a: &[Z], ka: &Z, b: &[Z], kb: &Z) -> Vec<Z> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut v = Z::ZERO;
            if !x.is_zero() && !ka.is_zero() {
                v.add_mul(ka, x);
            }
            if !y.is_zero() && !kb.is_zero() {
                v.add_mul(kb, y);
            }
            v
        })
        .collect()
}

impl KernelLattice {
    fn new(n: usize) -> Self {
        let mut basis = Vec::with_capacity(n);
        let mut inverse = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Z::ZERO; n];
            e[i] = Z::ONE;
            basis.push(e.clone());
            inverse.push((e, Z::ONE));
        }
        KernelLattice { basis, inverse }
    }

    /// Brings the constraint value of basis vector `b` to zero, accumulating
    /// the gcd into basis vector `a`.
    fn merge(&mut self, a: usize, b: usize, va: &Z, vb: &Z, modulus: &Z) -> Z {
        if va.divides(vb) {
            let q = vb.div_exact(va);
            let nb = lin2(&self.basis[b], &Z::ONE, &self.basis[a], &-&q);
            self.basis[b] = nb;
            let na = combine_rows(&self.inverse[a], &Z::ONE, &self.inverse[b], &q);
            self.inverse[a] = na;
            return va.clone();
        }
        let (g, s, t) = va.ext_gcd(vb);
        let (pa, pb) = (va.div_exact(&g), vb.div_exact(&g));
        let new_a = lin2(&self.basis[a], &s, &self.basis[b], &t);
        let new_b = lin2(&self.basis[a], &-&pb, &self.basis[b], &pa);
        self.basis[a] = new_a;
        self.basis[b] = new_b;
        let inv_a = combine_rows(&self.inverse[a], &pa, &self.inverse[b], &pb);
        let inv_b = combine_rows(&self.inverse[a], &-&t, &self.inverse[b], &s);
        self.inverse[a] = inv_a;
        self.inverse[b] = inv_b;
        g.rem_euclid(modulus)
    }

    /// Restricts to vectors `x` with `row . x ≡ 0 (mod modulus)`.
    fn constrain(&mut self, row: &[(u32, Z)], modulus: &Z) {
        let mut vals: Vec<(usize, Z)> = Vec::new();
        for (j, b) in self.basis.iter().enumerate() {
            let mut acc = Z::ZERO;
            for (k, r) in row {
                let x = &b[*k as usize];
                if !x.is_zero() {
                    acc.add_mul(r, x);
                }
            }
            let acc = acc.rem_euclid(modulus);
            if !acc.is_zero() {
                vals.push((j, acc));
            }
        }
        if vals.is_empty() {
            return;
        }
        let pos = (0..vals.len()).min_by(|&x, &y| vals[x].1.cmp_abs(&vals[y].1)).expect("nonempty");
        let (a, mut va) = vals[pos].clone();
        for (i, (b, vb)) in vals.iter().enumerate() {
            if i == pos {
                continue;
            }
            va = self.merge(a, *b, &va, vb, modulus);
        }
        if modulus.is_zero() {
            self.basis.remove(a);
            self.inverse.remove(a);
        } else {
            let s = modulus.div_exact(&va.gcd(modulus));
            if !s.is_one() {
                for x in self.basis[a].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &s;
                    }
                }
                let (num, den) = std::mem::take(&mut self.inverse[a]);
                self.inverse[a] = reduce_fraction(num, &den * &s);
            }
        }
    }
}

fn integer_cocycle_lattice(level: &CyclicSum, outgoing: &AbHom) -> KernelLattice {
    let mut lattice = KernelLattice::new(level.len());
    let target = &outgoing.codomain;
    for r in 0..outgoing.matrix.rows() {
        let row = outgoing.matrix.row(r);
        let m = target.modulus(r);
        if row.iter().all(|(_, v)| m.divides(v)) {
            continue;
        }
        lattice.constrain(row, m);
        if lattice.basis.is_empty() {
            break;
        }
    }
    lattice
}

/// Returns `None` when a coboundary fails to be a cocycle.
fn compute_cohomology(level: &CyclicSum, outgoing: &AbHom, incoming: Option<&SparseMatrix>) -> Option<CohomologyData> {
    let n = level.len();
    let (basis, coords) = match finite_cocycle_basis(level, outgoing) {
        Some(b) => (b.clone(), CocycleCoords::Hermite(b)),
        None => {
            let lattice = integer_cocycle_lattice(level, outgoing);
            (lattice.basis, CocycleCoords::Inverse(lattice.inverse))
        }
    };
    let k = basis.len();

    // Coboundaries and the relations of the level, in lattice coordinates.
    let mut gens: Vec<Vec<Z>> = Vec::new();
    if let Some(inc) = incoming {
        let t = inc.transpose();
        for c in 0..t.rows() {
            if t.row(c).is_empty() {
                continue;
            }
            let mut col = vec![Z::ZERO; n];
            for (i, v) in t.row(c) {
                col[*i as usize] = v.clone();
            }
            let y = coords.coords(&col)?;
            if y.iter().any(|v| !v.is_zero()) {
                gens.push(y);
            }
        }
    }
    for i in 0..n {
        let m = level.modulus(i);
        if m.is_zero() {
            continue;
        }
        let mut rel = vec![Z::ZERO; n];
        rel[i] = m.clone();
        let y = coords.coords(&rel)?;
        if y.iter().any(|v| !v.is_zero()) {
            gens.push(y);
        }
    }
    let mut ymat = IntMatrix::zeros(k, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, v) in g.iter().enumerate() {
            if !v.is_zero() {
                ymat.set(i, j, v.clone());
            }
        }
    }
    let s = snf_with(&ymat, SnfTracking { u: true, u_inv: true, ..SnfTracking::NONE });
    let u = s.u.as_ref().expect("tracked");
    let u_inv = s.u_inv.as_ref().expect("tracked");
    let mut factors = Vec::new();
    let mut projection = Vec::new();
    let mut representatives = Vec::new();
    for i in 0..k {
        let d = if i < s.rank { s.d.get(i, i).abs() } else { Z::ZERO };
        if d.is_one() {
            continue;
        }
        factors.push(d);
        projection.push(u.row(i).to_vec());
        let mut rep = vec![Z::ZERO; n];
        for (j, b) in basis.iter().enumerate() {
            let c = u_inv.get(j, i);
            if c.is_zero() {
                continue;
            }
            for (o, x) in rep.iter_mut().zip(b) {
                if !x.is_zero() {
                    o.add_mul(c, x);
                }
            }
        }
        representatives.push(level.reduce(&rep));
    }
    let group = FinAbGroup::from_normal_form(factors).expect("Smith diagonal is a divisibility chain");
    Some(CohomologyData {
        group,
        level: level.clone(),
        outgoing: outgoing.clone(),
        coords,
        projection,
        representatives,
        keep: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    fn hom(dom: &[i64], cod: &[i64], rows: &[Vec<i64>]) -> AbHom {
        let m = if rows.is_empty() { IntMatrix::zeros(cod.len(), dom.len()) } else { IntMatrix::from_rows(rows) };
        AbHom::from_dense(CyclicSum::new(z(dom)), CyclicSum::new(z(cod)), &m)
    }

    /// Adds a zero level on top so every listed degree is computable.
    fn complex(levels: &[&[i64]], diffs: Vec<AbHom>) -> CochainComplexZ {
        let mut lv: Vec<CyclicSum> = levels.iter().map(|l| CyclicSum::new(z(l))).collect();
        let mut ds = diffs;
        let last = lv.last().unwrap().clone();
        ds.push(AbHom::zero(last, CyclicSum::empty()));
        lv.push(CyclicSum::empty());
        CochainComplexZ::new(lv, ds).unwrap()
    }

    #[test]
    fn trivial_summands_do_not_change_the_answer() {
        // Z/4 -(x2)-> Z/4 padded with Z/1 summands on both levels.
        let plain = complex(&[&[4], &[4]], vec![hom(&[4], &[4], &[vec![2]])]);
        let padded = complex(&[&[1, 4, 1], &[4, 1]], vec![hom(&[1, 4, 1], &[4, 1], &[vec![4, 2, 8], vec![1, 1, 1]])]);
        for n in 0..2 {
            assert_eq!(plain.cohomology_at(n).unwrap(), padded.cohomology_at(n).unwrap());
        }
        let data = padded.cohomology_data(1).unwrap();
        assert_eq!(data.group, FinAbGroup::from_cyclic_orders(&[2i64]));
        let rep = &data.representatives()[0];
        assert_eq!(rep.len(), 2);
        assert_eq!(data.classify(rep).unwrap(), z(&[1]));
        assert_eq!(data.classify(&z(&[2, 7])).unwrap(), z(&[0]));
        assert_eq!(data.lift(&z(&[1])).len(), 2);
    }

    #[test]
    fn multiplication_by_two() {
        let c = complex(&[&[0], &[0]], vec![hom(&[0], &[0], &[vec![2]])]);
        assert!(c.cohomology_at(0).unwrap().is_trivial());
        assert_eq!(c.cohomology_at(1).unwrap(), FinAbGroup::from_cyclic_orders(&[2i64]));
    }

    #[test]
    fn identity_is_exact() {
        let c = complex(&[&[0], &[0]], vec![hom(&[0], &[0], &[vec![1]])]);
        assert!(c.cohomology_at(0).unwrap().is_trivial());
        assert!(c.cohomology_at(1).unwrap().is_trivial());
    }

    #[test]
    fn zero_differentials_return_levels() {
        let c = complex(&[&[2, 0], &[4, 6]], vec![hom(&[2, 0], &[4, 6], &[])]);
        assert_eq!(c.cohomology_at(0).unwrap(), FinAbGroup::from_cyclic_orders(&[2i64, 0]));
        assert_eq!(c.cohomology_at(1).unwrap(), FinAbGroup::from_cyclic_orders(&[4i64, 6]));
    }

    #[test]
    fn torsion_levels() {
        // Z/4 --(x2)--> Z/4 --(x2)--> Z/4 is exact in the middle.
        let c = complex(&[&[4], &[4], &[4]], vec![hom(&[4], &[4], &[vec![2]]), hom(&[4], &[4], &[vec![2]])]);
        assert_eq!(c.cohomology_at(0).unwrap(), FinAbGroup::from_cyclic_orders(&[2i64]));
        assert!(c.cohomology_at(1).unwrap().is_trivial());
        assert_eq!(c.cohomology_at(2).unwrap(), FinAbGroup::from_cyclic_orders(&[2i64]));
    }

    #[test]
    fn classify_and_lift_round_trip() {
        let c = complex(&[&[0, 0], &[0]], vec![hom(&[0, 0], &[0], &[vec![1, 1]])]);
        let d = c.cohomology_data(0).unwrap();
        assert_eq!(d.group, FinAbGroup::free(1));
        let x = z(&[3, -3]);
        let cls = d.classify(&x).unwrap();
        assert!(d.classify(&z(&[1, 0])).is_err());
        assert_eq!(d.classify(&d.lift(&cls)).unwrap(), cls);
        let d1 = c.cohomology_data(1).unwrap();
        assert!(d1.group.is_trivial());
        assert!(d1.is_trivial_class(&z(&[5])).unwrap());
    }

    #[test]
    fn detects_non_complex() {
        let c = complex(&[&[0], &[0], &[0]], vec![hom(&[0], &[0], &[vec![1]]), hom(&[0], &[0], &[vec![1]])]);
        assert!(matches!(c.cohomology_at(1), Err(ZmodError::NotAComplex(1))));
    }
}
