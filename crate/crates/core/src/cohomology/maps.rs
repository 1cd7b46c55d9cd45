//! The maps `ξ: A -> B` and `ϑ: B -> C` and the short exact sequence they form.

use std::collections::HashSet;

use serde::Serialize;

use super::{layout, Assembler, CosimplicialAb, Theory};
use crate::coeff::TrackModule;
use crate::error::{Error, Result};
use crate::resolution::Resolution;
use crate::validation::ValidationReport;
use crate::zmod::{
    image_generators, iso_check, kernel_generators, subgroup_eq, AbHom, CyclicSum, FinAbGroup, SparseMatrix, Z,
};

/// `ξ` on the fibers of one generator with augmentation `alpha`: the identity
/// into the s-copy and conjugation along `alpha` into the t-copy.
pub(crate) fn xi_block(m: &TrackModule, alpha: usize) -> (AbHom, AbHom) {
    let x = &m.base;
    (AbHom::identity(m.fibers[x.s0[x.d0[alpha]]].clone()), m.conjugation(alpha))
}

/// `ϑ` on the fibers of one generator: minus the left vertical whisker of the
/// s-copy value and plus the right vertical whisker of the t-copy value.
pub(crate) fn theta_block(m: &TrackModule, alpha: usize) -> Result<(AbHom, AbHom)> {
    let x = &m.base;
    let from_s = m.v(x.s0[x.d0[alpha]], alpha)?.left.clone();
    let from_t = m.v(alpha, x.s0[x.d1[alpha]])?.right.clone();
    Ok((from_s.neg(), from_t))
}

/// `ξ` at level `n`.
pub fn xi_map(res: &Resolution, m: &TrackModule, n: usize) -> Result<AbHom> {
    let a = layout(Theory::SoTotal, res, m, n)?;
    let b = layout(Theory::SoBase, res, m, n)?;
    let aug = res.augment_table(n)?;
    let mut asm = Assembler::new(&a, &b);
    for (g, &alpha) in aug.iter().enumerate() {
        let (s, t) = xi_block(m, alpha);
        asm.place(2 * g, g, &s, &Z::ONE);
        asm.place(2 * g + 1, g, &t, &Z::ONE);
    }
    Ok(asm.finish())
}

/// `ϑ` at level `n`.
pub fn theta_map(res: &Resolution, m: &TrackModule, n: usize) -> Result<AbHom> {
    let b = layout(Theory::SoBase, res, m, n)?;
    let c = layout(Theory::Comonad, res, m, n)?;
    let aug = res.augment_table(n)?;
    let mut asm = Assembler::new(&b, &c);
    for (g, &alpha) in aug.iter().enumerate() {
        let (s, t) = theta_block(m, alpha)?;
        asm.place(g, 2 * g, &s, &Z::ONE);
        asm.place(g, 2 * g + 1, &t, &Z::ONE);
    }
    Ok(asm.finish())
}

/// Checks that `ξ` and `ϑ` commute with every coface of the built groups.
pub fn check_maps_commute(
    res: &Resolution,
    m: &TrackModule,
    a: &CosimplicialAb,
    b: &CosimplicialAb,
    c: &CosimplicialAb,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new("ξ and ϑ are cosimplicial maps");
    let top = a.top_level().min(b.top_level()).min(c.top_level());
    let xi: Vec<AbHom> = (0..=top).map(|n| xi_map(res, m, n)).collect::<Result<_>>()?;
    let theta: Vec<AbHom> = (0..=top).map(|n| theta_map(res, m, n)).collect::<Result<_>>()?;
    for n in 0..top {
        for i in 0..a.n_cofaces(n) {
            let lhs = a.coface(n, i).then(&xi[n + 1]);
            let rhs = xi[n].then(b.coface(n, i));
            r.check(lhs.same_map(&rhs), || format!("ξ does not commute with d^{i} out of level {n}"));
            let lhs = b.coface(n, i).then(&theta[n + 1]);
            let rhs = theta[n].then(c.coface(n, i));
            r.check(lhs.same_map(&rhs), || format!("ϑ does not commute with d^{i} out of level {n}"));
        }
    }
    Ok(r)
}

/// Exactness of `0 -> A^n -> B^n -> C^n -> 0` at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub level: usize,
    pub generators: usize,
    pub xi_injective: bool,
    pub theta_surjective: bool,
    pub exact_middle: bool,
    pub composite_zero: bool,
    pub order_identity: bool,
    #[serde(serialize_with = "crate::cohomology::maps::serialize_group")]
    pub a: FinAbGroup,
    #[serde(serialize_with = "crate::cohomology::maps::serialize_group")]
    pub b: FinAbGroup,
    #[serde(serialize_with = "crate::cohomology::maps::serialize_group")]
    pub c: FinAbGroup,
    pub witness: Option<String>,
}

pub(crate) fn serialize_group<S: serde::Serializer>(g: &FinAbGroup, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.invariant_factors().iter().map(|z| z.to_string()))
}

impl SesReport {
    pub fn is_exact(&self) -> bool {
        self.xi_injective && self.theta_surjective && self.exact_middle && self.composite_zero && self.order_identity
    }
}

fn push_block(out: &mut SparseMatrix, r0: usize, c0: usize, block: &SparseMatrix) {
    for r in 0..block.rows() {
        for (c, v) in block.row(r) {
            out.push(r0 + r, c0 + *c as usize, v.clone());
        }
    }
    out.normalize();
}

fn basis(g: &CyclicSum) -> Vec<Vec<Z>> {
    (0..g.len()).map(|i| g.basis(i)).collect()
}

struct BlockVerdict {
    injective: bool,
    surjective: bool,
    exact: bool,
    zero: bool,
}

fn check_block(m: &TrackModule, alpha: usize) -> Result<BlockVerdict> {
    let (xs, xt) = xi_block(m, alpha);
    let (ts, tt) = theta_block(m, alpha)?;
    let a = xs.domain.clone();
    let b = xs.codomain.direct_sum(&xt.codomain);
    let c = ts.codomain.clone();
    let split = a.len();
    let mut xi = SparseMatrix::new(b.len(), a.len());
    push_block(&mut xi, 0, 0, &xs.matrix);
    push_block(&mut xi, split, 0, &xt.matrix);
    let xi = AbHom::new(a, b.clone(), xi);
    let mut theta = SparseMatrix::new(c.len(), b.len());
    push_block(&mut theta, 0, 0, &ts.matrix);
    push_block(&mut theta, 0, split, &tt.matrix);
    let theta = AbHom::new(b.clone(), c.clone(), theta);
    let injective = kernel_generators(&xi).is_empty();
    let surjective = subgroup_eq(&c, &image_generators(&theta), &basis(&c));
    let exact = subgroup_eq(&b, &image_generators(&xi), &kernel_generators(&theta));
    let zero = xi.then(&theta).is_zero();
    Ok(BlockVerdict { injective, surjective, exact, zero })
}

/// Checks the short exact sequence at level `n`. The maps are block diagonal
/// over generators, so the check runs once per distinct augmentation cell.
pub fn verify_ses_level(res: &Resolution, m: &TrackModule, n: usize) -> Result<SesReport> {
    if m.base != res.base {
        return Err(Error::FiberMismatch("module is over a different track category than the resolution".into()));
    }
    let aug = res.augment_table(n)?;
    let mut seen: HashSet<usize> = HashSet::new();
    let mut report = SesReport {
        level: n,
        generators: aug.len(),
        xi_injective: true,
        theta_surjective: true,
        exact_middle: true,
        composite_zero: true,
        order_identity: true,
        a: FinAbGroup::trivial(),
        b: FinAbGroup::trivial(),
        c: FinAbGroup::trivial(),
        witness: None,
    };
    for (g, &alpha) in aug.iter().enumerate() {
        if !seen.insert(alpha) {
            continue;
        }
        let v = check_block(m, alpha)?;
        let ok = v.injective && v.surjective && v.exact && v.zero;
        report.xi_injective &= v.injective;
        report.theta_surjective &= v.surjective;
        report.exact_middle &= v.exact;
        report.composite_zero &= v.zero;
        if !ok && report.witness.is_none() {
            report.witness = Some(format!("generator {g} over the 2-cell {}", m.base.cell_name(alpha)));
        }
    }
    report.a = layout(Theory::SoTotal, res, m, n)?.group.normal_form();
    report.b = layout(Theory::SoBase, res, m, n)?.group.normal_form();
    report.c = layout(Theory::Comonad, res, m, n)?.group.normal_form();
    report.order_identity = iso_check(&report.b, &report.a.direct_sum(&report.c));
    Ok(report)
}
