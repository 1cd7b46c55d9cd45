//! The long exact sequence in cohomology induced by `0 -> A -> B -> C -> 0`.

use serde::Serialize;

use super::maps::{serialize_group, theta_block, verify_ses_level, xi_map, SesReport};
use super::{build_a, build_b, build_c, CosimplicialAb};
use crate::coeff::TrackModule;
use crate::error::{Error, Result};
use crate::resolution::Resolution;
use crate::zmod::{
    image_generators, kernel_generators, solve_preimage_with, subgroup_eq, AbHom, CochainComplexZ, CohomologyData,
    FinAbGroup, PreimageRule, SparseMatrix, Z,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NodeVerdict {
    Exact,
    Inexact {
        detail: String,
    },
    /// The neighbouring map leaves the truncation.
    NotCheckable,
}

impl NodeVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, NodeVerdict::Exact)
    }
}

/// Groups and maps of one degree: `H^n(A) -> H^n(B) -> H^n(C) -> H^(n+1)(A)`.
/// Maps are matrices in the invariant-factor generators of the groups.
#[derive(Clone, Debug, Serialize)]
pub struct LesDegree {
    pub degree: usize,
    #[serde(serialize_with = "serialize_group")]
    pub h_a: FinAbGroup,
    #[serde(serialize_with = "serialize_group")]
    pub h_b: FinAbGroup,
    #[serde(serialize_with = "serialize_group")]
    pub h_c: FinAbGroup,
    #[serde(skip)]
    pub xi_star: AbHom,
    #[serde(skip)]
    pub theta_star: AbHom,
    /// Absent in the top degree, where `H^(n+1)(A)` is not computed.
    #[serde(skip)]
    pub delta: Option<AbHom>,
    pub at_a: NodeVerdict,
    pub at_b: NodeVerdict,
    pub at_c: NodeVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub max_degree: usize,
    pub ses: Vec<SesReport>,
    pub degrees: Vec<LesDegree>,
    /// Whether the connecting maps agree under a second preimage rule.
    pub delta_choice_invariant: bool,
}

impl LesReport {
    /// True when the SES holds at every level and every checkable node is exact.
    pub fn all_exact(&self) -> bool {
        self.ses.iter().all(SesReport::is_exact)
            && self.delta_choice_invariant
            && self
                .degrees
                .iter()
                .flat_map(|d| [&d.at_a, &d.at_b, &d.at_c])
                .all(|v| !matches!(v, NodeVerdict::Inexact { .. }))
    }

    /// The first inexact node, as `(label, detail)`.
    pub fn first_failure(&self) -> Option<(String, String)> {
        if let Some(s) = self.ses.iter().find(|s| !s.is_exact()) {
            return Some((format!("short exact sequence at level {}", s.level), s.witness.clone().unwrap_or_default()));
        }
        if !self.delta_choice_invariant {
            return Some(("connecting map".into(), "depends on the preimage choice".into()));
        }
        for d in &self.degrees {
            for (name, v) in [("A", &d.at_a), ("B", &d.at_b), ("C", &d.at_c)] {
                if let NodeVerdict::Inexact { detail } = v {
                    return Some((format!("H^{}({name})", d.degree), detail.clone()));
                }
            }
        }
        None
    }
}

/// Matrix of the map induced on cohomology by a cochain map `f`.
fn induced(f: &AbHom, from: &CohomologyData, to: &CohomologyData) -> Result<AbHom> {
    let dom = from.group.as_cyclic_sum();
    let cod = to.group.as_cyclic_sum();
    let mut m = SparseMatrix::new(cod.len(), dom.len());
    for (j, rep) in from.representatives().iter().enumerate() {
        let class = to.classify(&f.apply(rep))?;
        for (i, v) in class.into_iter().enumerate() {
            m.push(i, j, v);
        }
    }
    m.normalize();
    Ok(AbHom::new(dom, cod, m))
}

/// Lifts a cochain of `C^n` along `ϑ` one generator at a time.
fn lift_along_theta(
    res: &Resolution,
    m: &TrackModule,
    c: &CosimplicialAb,
    b: &CosimplicialAb,
    n: usize,
    z: &[Z],
    rule: PreimageRule,
) -> Result<Vec<Z>> {
    let aug = res.augment_table(n)?;
    let cl = c.layout(n);
    let bl = b.layout(n);
    let mut out = bl.group.zero();
    for (g, &alpha) in aug.iter().enumerate() {
        let (ts, tt) = theta_block(m, alpha)?;
        let s_len = ts.domain.len();
        let mut mat = SparseMatrix::new(ts.codomain.len(), s_len + tt.domain.len());
        for r in 0..ts.codomain.len() {
            for (col, v) in ts.matrix.row(r) {
                mat.push(r, *col as usize, v.clone());
            }
            for (col, v) in tt.matrix.row(r) {
                mat.push(r, s_len + *col as usize, v.clone());
            }
        }
        mat.normalize();
        let block = AbHom::new(ts.domain.direct_sum(&tt.domain), ts.codomain.clone(), mat);
        let y = &z[cl.block_range(g)];
        let x = solve_preimage_with(&block, y, rule).ok_or_else(|| Error::InexactDetected {
            node: format!("ϑ at level {n}"),
            detail: format!("no preimage over generator {g}"),
        })?;
        let sr = bl.block_range(2 * g);
        let tr = bl.block_range(2 * g + 1);
        out[sr].clone_from_slice(&x[..s_len]);
        out[tr].clone_from_slice(&x[s_len..]);
    }
    Ok(out)
}

/// The connecting map `H^n(C) -> H^(n+1)(A)`.
#[allow(clippy::too_many_arguments)]
fn connecting_map(
    res: &Resolution,
    m: &TrackModule,
    (a, b, c): (&CosimplicialAb, &CosimplicialAb, &CosimplicialAb),
    db: &CochainComplexZ,
    hc: &CohomologyData,
    ha_next: &CohomologyData,
    n: usize,
    rule: PreimageRule,
) -> Result<AbHom> {
    let dom = hc.group.as_cyclic_sum();
    let cod = ha_next.group.as_cyclic_sum();
    let xi_next = xi_map(res, m, n + 1)?;
    let al = a.layout(n + 1);
    let bl = b.layout(n + 1);
    let mut mat = SparseMatrix::new(cod.len(), dom.len());
    for (j, z) in hc.representatives().iter().enumerate() {
        let lifted = lift_along_theta(res, m, c, b, n, z, rule)?;
        let y = db.differential(n).apply(&lifted);
        // y lies in the image of ξ, whose s-component is the identity.
        let mut pulled = al.group.zero();
        for g in 0..al.blocks.len() {
            pulled[al.block_range(g)].clone_from_slice(&y[bl.block_range(2 * g)]);
        }
        if !bl.group.eq_elements(&xi_next.apply(&pulled), &y) {
            return Err(Error::InexactDetected {
                node: format!("H^{}(A)", n + 1),
                detail: format!("d(lift) of class {j} of H^{n}(C) is not in the image of ξ"),
            });
        }
        let class = ha_next.classify(&pulled)?;
        for (i, v) in class.into_iter().enumerate() {
            mat.push(i, j, v);
        }
    }
    mat.normalize();
    Ok(AbHom::new(dom, cod, mat))
}

fn exactness(ambient: &FinAbGroup, incoming: Option<&AbHom>, outgoing: Option<&AbHom>, what: &str) -> NodeVerdict {
    let Some(out) = outgoing else {
        return NodeVerdict::NotCheckable;
    };
    let g = ambient.as_cyclic_sum();
    let image = incoming.map(image_generators).unwrap_or_default();
    let kernel = kernel_generators(out);
    if subgroup_eq(&g, &image, &kernel) {
        NodeVerdict::Exact
    } else {
        NodeVerdict::Inexact { detail: format!("image of the incoming map differs from the kernel of {what}") }
    }
}

/// Builds the three theories to `max_degree`, checks the short exact sequence
/// on every built level and the long exact sequence on every node whose
/// neighbours are computed. Inexactness is recorded, not raised.
pub fn les_report(res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<LesReport> {
    let a = build_a(res, m, max_degree)?;
    let b = build_b(res, m, max_degree)?;
    let c = build_c(res, m, max_degree)?;
    let ses = (0..=max_degree + 1).map(|n| verify_ses_level(res, m, n)).collect::<Result<Vec<_>>>()?;
    let (ca, cb, cc) = (a.complex()?, b.complex()?, c.complex()?);
    let data = |cx: &CochainComplexZ| (0..=max_degree).map(|s| cx.cohomology_data(s)).collect::<Result<Vec<_>, _>>();
    let (da, dbb, dc) = (data(&ca)?, data(&cb)?, data(&cc)?);
    let theta: Vec<AbHom> = (0..=max_degree).map(|n| super::theta_map(res, m, n)).collect::<Result<_>>()?;
    let mut degrees = Vec::with_capacity(max_degree + 1);
    let mut invariant = true;
    for n in 0..=max_degree {
        let xi_star = induced(&xi_map(res, m, n)?, &da[n], &dbb[n])?;
        let theta_star = induced(&theta[n], &dbb[n], &dc[n])?;
        let delta = if n < max_degree {
            let d = connecting_map(res, m, (&a, &b, &c), &cb, &dc[n], &da[n + 1], n, PreimageRule::Canonical)?;
            let alt = connecting_map(res, m, (&a, &b, &c), &cb, &dc[n], &da[n + 1], n, PreimageRule::Perturbed)?;
            invariant &= d.same_map(&alt);
            Some(d)
        } else {
            None
        };
        degrees.push(LesDegree {
            degree: n,
            h_a: da[n].group.clone(),
            h_b: dbb[n].group.clone(),
            h_c: dc[n].group.clone(),
            xi_star,
            theta_star,
            delta,
            at_a: NodeVerdict::NotCheckable,
            at_b: NodeVerdict::NotCheckable,
            at_c: NodeVerdict::NotCheckable,
        });
    }
    for n in 0..=max_degree {
        let prev_delta = if n == 0 { None } else { degrees[n - 1].delta.clone() };
        let d = &degrees[n];
        let at_a = exactness(&d.h_a, prev_delta.as_ref(), Some(&d.xi_star), "ξ*");
        let at_b = exactness(&d.h_b, Some(&d.xi_star), Some(&d.theta_star), "ϑ*");
        let at_c = exactness(&d.h_c, Some(&d.theta_star), d.delta.as_ref(), "δ");
        let d = &mut degrees[n];
        d.at_a = at_a;
        d.at_b = at_b;
        d.at_c = at_c;
    }
    Ok(LesReport { max_degree, ses, degrees, delta_choice_invariant: invariant })
}

/// As [`les_report`], but fails with the first inexact node.
pub fn les_verify(res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<LesReport> {
    let report = les_report(res, m, max_degree)?;
    if let Some((node, detail)) = report.first_failure() {
        return Err(Error::InexactDetected { node, detail });
    }
    Ok(report)
}
