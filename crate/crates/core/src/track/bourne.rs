use std::collections::HashMap;

use super::{validate_track_functor, FinTrackCategory, TrackFunctor};
use crate::cat::{validate_fincat, validate_functor, CatFunctor, FinCat, Morphism};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// A functor `q: total -> base` with a chosen section `t` (`q ∘ t = id`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEpiCat {
    pub total: FinCat,
    pub base: FinCat,
    pub q: CatFunctor,
    pub t: CatFunctor,
}

impl SplitEpiCat {
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new("split epimorphism");
        r.absorb(validate_fincat(&self.total));
        r.absorb(validate_fincat(&self.base));
        let mut q = validate_functor(&self.total, &self.base, &self.q.map);
        q.subject = "q".into();
        let mut t = validate_functor(&self.base, &self.total, &self.t.map);
        t.subject = "t".into();
        r.absorb(q);
        r.absorb(t);
        if r.is_valid() {
            for b in 0..self.base.len() {
                r.check(self.q.map[self.t.map[b]] == b, || format!("q t is not the identity on {}", self.base.name(b)));
            }
        }
        r
    }
}

/// Output of the construction `H`: the kernel-pair track category together
/// with its splitting and the unit of `H ⊣ R`.
#[derive(Clone, Debug)]
pub struct BourneH {
    pub track: FinTrackCategory,
    /// The 2-cell `i` is the pair `pairs[i] = (a, b)` with `q a = q b`.
    pub pairs: Vec<(usize, usize)>,
    pub pair_index: HashMap<(usize, usize), usize>,
    pub q: Vec<usize>,
    pub t: Vec<usize>,
    /// Unit on totals: `a ↦ (t q a, a)` as a 2-cell of the result.
    pub t1: Vec<usize>,
}

/// Kernel pair of `q` as a track category on the total category.
pub fn bourne_h(s: &SplitEpiCat) -> Result<BourneH> {
    let report = s.validate();
    if !report.is_valid() {
        return Err(Error::NotSplit(report.to_string()));
    }
    let a = &s.total;
    let n = a.len();
    // s0 pairs first so that (id, id) is the horizontal unit.
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|u| (u, u)).collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && s.q.map[u] == s.q.map[v] {
                pairs.push((u, v));
            }
        }
    }
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let morphisms: Vec<Morphism> = pairs
        .iter()
        .map(|&(u, v)| Morphism { name: format!("({},{})", a.name(u), a.name(v)), src: a.src(u), tgt: a.tgt(u) })
        .collect();
    let mut hcomp = HashMap::new();
    let mut vcomp = HashMap::new();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        for (j, &(u2, v2)) in pairs.iter().enumerate() {
            if let (Some(uu), Some(vv)) = (a.compose(u, u2), a.compose(v, v2)) {
                hcomp.insert((i, j), pair_index[&(uu, vv)]);
            }
            if v == u2 {
                vcomp.insert((i, j), pair_index[&(u, v2)]);
            }
        }
    }
    let two = FinCat { objects: a.objects.clone(), morphisms, identities: a.identities.clone(), composition: hcomp };
    let track = FinTrackCategory {
        one: a.clone(),
        two,
        d0: pairs.iter().map(|p| p.0).collect(),
        d1: pairs.iter().map(|p| p.1).collect(),
        s0: (0..n).collect(),
        vinv: pairs.iter().map(|&(u, v)| pair_index[&(v, u)]).collect(),
        vcomp,
    };
    let tq: Vec<usize> = (0..n).map(|u| s.t.map[s.q.map[u]]).collect();
    let t1 = (0..n).map(|u| pair_index[&(tq[u], u)]).collect();
    Ok(BourneH { track, pairs, pair_index, q: s.q.map.clone(), t: s.t.map.clone(), t1 })
}

/// `R X = (X₁ ⇄ X₀)` with `q = d0` and `t = s0`.
pub fn bourne_r(x: &FinTrackCategory) -> SplitEpiCat {
    SplitEpiCat {
        total: x.two.clone(),
        base: x.one.clone(),
        q: CatFunctor { map: x.d0.clone() },
        t: CatFunctor { map: x.s0.clone() },
    }
}

/// Counit `H R X -> X`: `d1` on 1-cells, `(α, α') ↦ α⁻¹ then α'` on 2-cells.
pub fn counit(x: &FinTrackCategory, hrx: &BourneH) -> TrackFunctor {
    TrackFunctor {
        on_one: x.d1.clone(),
        on_two: hrx.pairs.iter().map(|&(a, b)| x.vcompose(x.vinv[a], b).expect("pairs share their source")).collect(),
    }
}

/// Checks `ε_{HY} ∘ H(η_Y) = id` cellwise.
pub fn h_triangle_identity(s: &SplitEpiCat) -> Result<ValidationReport> {
    let hy = bourne_h(s)?;
    let rhy = bourne_r(&hy.track);
    let hrhy = bourne_h(&rhy)?;
    let mut r = ValidationReport::new("H triangle identity");
    // H(η) sends a 1-cell a to t1(a) and a 2-cell (a, b) to (t1 a, t1 b).
    let h_eta = TrackFunctor {
        on_one: hy.t1.clone(),
        on_two: hy.pairs.iter().map(|&(a, b)| hrhy.pair_index[&(hy.t1[a], hy.t1[b])]).collect(),
    };
    r.absorb(validate_track_functor(&hy.track, &hrhy.track, &h_eta));
    let eps = counit(&hy.track, &hrhy);
    r.absorb(validate_track_functor(&hrhy.track, &hy.track, &eps));
    let composite = h_eta.then(&eps);
    r.check(composite == TrackFunctor::identity(&hy.track), || "composite differs from the identity".into());
    Ok(r)
}

/// Checks `R(ε_X) ∘ η_{RX} = id` on base and total.
pub fn r_triangle_identity(x: &FinTrackCategory) -> Result<ValidationReport> {
    let rx = bourne_r(x);
    let hrx = bourne_h(&rx)?;
    let eps = counit(x, &hrx);
    let mut r = ValidationReport::new("R triangle identity");
    r.absorb(validate_track_functor(&hrx.track, x, &eps));
    for u in 0..x.one.len() {
        // base: η is t = s0, then ε on 1-cells is d1.
        r.check(eps.on_one[hrx.t[u]] == u, || format!("base component fails on {}", x.one.name(u)));
    }
    for a in 0..x.two.len() {
        r.check(eps.on_two[hrx.t1[a]] == a, || format!("total component fails on {}", x.cell_name(a)));
    }
    Ok(r)
}

/// The idempotent `e = H(t q)` on a kernel-pair track category.
pub fn idempotent_e(h: &BourneH) -> Result<TrackFunctor> {
    let n = h.track.one.len();
    if h.q.len() != n || h.q.iter().any(|&b| b >= h.t.len()) {
        return Err(Error::NotSplit("q and t do not match the 1-cells".into()));
    }
    let tq: Vec<usize> = (0..n).map(|u| h.t[h.q[u]]).collect();
    let mut on_two = Vec::with_capacity(h.pairs.len());
    for &(a, b) in &h.pairs {
        let Some(&c) = h.pair_index.get(&(tq[a], tq[b])) else {
            return Err(Error::NotSplit("t q does not preserve the kernel pair".into()));
        };
        on_two.push(c);
    }
    let e = TrackFunctor { on_one: tq, on_two };
    let r = validate_track_functor(&h.track, &h.track, &e);
    if !r.is_valid() {
        return Err(Error::NotSplit(r.to_string()));
    }
    Ok(e)
}
