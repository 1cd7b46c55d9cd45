//! Track categories: internal groupoids in categories with a fixed object set.

mod bourne;
mod builder;
mod lfree;
mod sx;

pub use bourne::{
    bourne_h, bourne_r, counit, h_triangle_identity, idempotent_e, r_triangle_identity, BourneH, SplitEpiCat,
};
pub use builder::TrackBuilder;
pub use lfree::{materialize_lf, transpose_backward, transpose_forward, LfTrack};
pub use sx::{s_construction, validate_s_equivalence, SConstruction};

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::cat::fincat::pair_map;
use crate::cat::{validate_fincat, validate_functor, CatFunctor, FinCat, ObjSet};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// Finite track category. `one` holds the 1-cells, `two` the 2-cells with their
/// horizontal composition. Vertical composition `vcomp[(a, b)]` is "a then b",
/// defined when `d1[a] = d0[b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinTrackCategory {
    pub one: FinCat,
    pub two: FinCat,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub s0: Vec<usize>,
    #[serde(with = "pair_map")]
    pub vcomp: HashMap<(usize, usize), usize>,
    pub vinv: Vec<usize>,
}

impl FinTrackCategory {
    pub fn objects(&self) -> &ObjSet {
        &self.one.objects
    }

    pub fn n_objects(&self) -> usize {
        self.one.objects.len()
    }

    pub fn n_one_cells(&self) -> usize {
        self.one.len()
    }

    pub fn n_two_cells(&self) -> usize {
        self.two.len()
    }

    pub fn cell_name(&self, a: usize) -> &str {
        self.two.name(a)
    }

    /// Source and target objects of a 2-cell.
    pub fn cell_objects(&self, a: usize) -> (usize, usize) {
        (self.two.src(a), self.two.tgt(a))
    }

    /// Horizontal composite, `a` first.
    pub fn hcomp(&self, a: usize, b: usize) -> Option<usize> {
        self.two.compose(a, b)
    }

    /// Vertical composite, `a` first.
    pub fn vcompose(&self, a: usize, b: usize) -> Option<usize> {
        self.vcomp.get(&(a, b)).copied()
    }

    /// Identity 2-cell on the identity 1-cell of an object.
    pub fn unit_cell(&self, obj: usize) -> usize {
        self.two.identity(obj)
    }

    pub fn is_unit_cell(&self, a: usize) -> bool {
        self.two.is_identity(a)
    }

    /// True when `a` is the vertical identity on its source 1-cell.
    pub fn is_degenerate(&self, a: usize) -> bool {
        self.s0[self.d0[a]] == a
    }

    /// 2-cells grouped by vertical source.
    pub fn cells_from(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.one.len()];
        for a in 0..self.two.len() {
            out[self.d0[a]].push(a);
        }
        out
    }

    /// 2-cells from `u` to `v`.
    pub fn cells_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.two.len()).filter(|&a| self.d0[a] == u && self.d1[a] == v).collect()
    }

    /// 2-cells other than the horizontal units, the generators of the first
    /// resolution stage.
    pub fn non_unit_cells(&self) -> Vec<usize> {
        (0..self.two.len()).filter(|&a| !self.is_unit_cell(a)).collect()
    }

    pub fn find_cell(&self, name: &str) -> Result<usize> {
        self.two.find(name).map_err(|_| Error::UnknownCell(name.to_string()))
    }

    pub fn find_one_cell(&self, name: &str) -> Result<usize> {
        self.one.find(name)
    }
}

/// Exhaustive check of the internal groupoid axioms.
pub fn validate_track(x: &FinTrackCategory) -> ValidationReport {
    let mut r = ValidationReport::new("track category");
    let mut one = validate_fincat(&x.one);
    one.subject = "1-cells".into();
    let mut two = validate_fincat(&x.two);
    two.subject = "2-cells".into();
    r.absorb(one);
    r.absorb(two);
    let (n1, n2) = (x.one.len(), x.two.len());
    if x.one.objects != x.two.objects {
        r.fail("1-cell and 2-cell categories have different object sets");
    }
    if x.d0.len() != n2 || x.d1.len() != n2 || x.s0.len() != n1 || x.vinv.len() != n2 {
        r.fail("structure maps have the wrong length");
    }
    if x.d0.iter().chain(&x.d1).any(|&u| u >= n1) || x.s0.iter().chain(&x.vinv).any(|&a| a >= n2) {
        r.fail("structure map value out of range");
    }
    if !r.is_valid() {
        return r;
    }
    for (name, map) in [("d0", &x.d0), ("d1", &x.d1)] {
        let mut f = validate_functor(&x.two, &x.one, map);
        f.subject = name.into();
        r.absorb(f);
    }
    let mut s = validate_functor(&x.one, &x.two, &x.s0);
    s.subject = "s0".into();
    r.absorb(s);
    for u in 0..n1 {
        let a = x.s0[u];
        r.check(x.d0[a] == u && x.d1[a] == u, || format!("s0 of {} is not a loop on it", x.one.name(u)));
    }
    if !r.is_valid() {
        return r;
    }
    let from = x.cells_from();
    let name = |a: usize| x.two.name(a).to_string();
    for (&(a, b), &c) in &x.vcomp {
        let ok = a < n2 && b < n2 && c < n2 && x.d1[a] == x.d0[b];
        r.check(ok, || format!("vertical entry ({a}, {b}) is not a composable pair"));
    }
    for a in 0..n2 {
        for &b in &from[x.d1[a]] {
            match x.vcompose(a, b) {
                None => r.fail(format!("vertical composite of {} then {} missing", name(a), name(b))),
                Some(c) => r.check(x.d0[c] == x.d0[a] && x.d1[c] == x.d1[b], || {
                    format!("vertical composite of {} then {} has wrong boundary", name(a), name(b))
                }),
            }
        }
        r.check(x.vcompose(x.s0[x.d0[a]], a) == Some(a), || format!("left vertical unit fails on {}", name(a)));
        r.check(x.vcompose(a, x.s0[x.d1[a]]) == Some(a), || format!("right vertical unit fails on {}", name(a)));
        let inv = x.vinv[a];
        r.check(x.d0[inv] == x.d1[a] && x.d1[inv] == x.d0[a], || format!("inverse of {} has wrong boundary", name(a)));
        r.check(x.vcompose(a, inv) == Some(x.s0[x.d0[a]]), || format!("{} then its inverse is not a unit", name(a)));
        r.check(x.vcompose(inv, a) == Some(x.s0[x.d1[a]]), || format!("inverse of {} then it is not a unit", name(a)));
    }
    if !r.is_valid() {
        return r;
    }
    for a in 0..n2 {
        for &b in &from[x.d1[a]] {
            let ab = x.vcompose(a, b).expect("checked");
            for &c in &from[x.d1[b]] {
                let left = x.vcompose(ab, c);
                let right = x.vcompose(b, c).and_then(|bc| x.vcompose(a, bc));
                r.check(left == right, || {
                    format!("vertical associativity fails on ({}, {}, {})", name(a), name(b), name(c))
                });
            }
        }
    }
    let by_src = x.two.by_source();
    for a in 0..n2 {
        for &b in &by_src[x.two.tgt(a)] {
            let ab = x.hcomp(a, b).expect("2-cell category checked");
            r.check(x.vinv[ab] == x.hcomp(x.vinv[a], x.vinv[b]).unwrap_or(usize::MAX), || {
                format!("inverse does not commute with the horizontal composite of {} and {}", name(a), name(b))
            });
            for &a2 in &from[x.d1[a]] {
                for &b2 in &from[x.d1[b]] {
                    let Some(a2b2) = x.hcomp(a2, b2) else {
                        r.fail(format!("horizontal composite of {} and {} missing", name(a2), name(b2)));
                        continue;
                    };
                    let left = x.vcompose(ab, a2b2);
                    let right = match (x.vcompose(a, a2), x.vcompose(b, b2)) {
                        (Some(p), Some(q)) => x.hcomp(p, q),
                        _ => None,
                    };
                    r.check(left.is_some() && left == right, || {
                        format!("interchange fails on ({}, {}; {}, {})", name(a), name(b), name(a2), name(b2))
                    });
                }
            }
        }
    }
    r
}

/// Identity-on-objects functor between track categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackFunctor {
    pub on_one: Vec<usize>,
    pub on_two: Vec<usize>,
}

impl TrackFunctor {
    pub fn identity(x: &FinTrackCategory) -> Self {
        TrackFunctor { on_one: (0..x.one.len()).collect(), on_two: (0..x.two.len()).collect() }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &TrackFunctor) -> TrackFunctor {
        TrackFunctor {
            on_one: self.on_one.iter().map(|&u| other.on_one[u]).collect(),
            on_two: self.on_two.iter().map(|&a| other.on_two[a]).collect(),
        }
    }

    pub fn components(&self) -> (CatFunctor, CatFunctor) {
        (CatFunctor { map: self.on_one.clone() }, CatFunctor { map: self.on_two.clone() })
    }
}

/// Checks that `f` is a functor on both levels commuting with all structure.
pub fn validate_track_functor(dom: &FinTrackCategory, cod: &FinTrackCategory, f: &TrackFunctor) -> ValidationReport {
    let mut r = ValidationReport::new("track functor");
    let mut one = validate_functor(&dom.one, &cod.one, &f.on_one);
    one.subject = "on 1-cells".into();
    let mut two = validate_functor(&dom.two, &cod.two, &f.on_two);
    two.subject = "on 2-cells".into();
    r.absorb(one);
    r.absorb(two);
    if !r.is_valid() {
        return r;
    }
    for a in 0..dom.two.len() {
        let fa = f.on_two[a];
        r.check(cod.d0[fa] == f.on_one[dom.d0[a]] && cod.d1[fa] == f.on_one[dom.d1[a]], || {
            format!("boundary of {} not preserved", dom.cell_name(a))
        });
        r.check(cod.vinv[fa] == f.on_two[dom.vinv[a]], || format!("inverse of {} not preserved", dom.cell_name(a)));
    }
    for u in 0..dom.one.len() {
        r.check(cod.s0[f.on_one[u]] == f.on_two[dom.s0[u]], || format!("s0 of {} not preserved", dom.one.name(u)));
    }
    for (&(a, b), &c) in &dom.vcomp {
        r.check(cod.vcompose(f.on_two[a], f.on_two[b]) == Some(f.on_two[c]), || {
            format!("vertical composite of {} then {} not preserved", dom.cell_name(a), dom.cell_name(b))
        });
    }
    r
}

/// The discrete track category on a category: only identity 2-cells.
pub fn d_discrete(c: &FinCat) -> FinTrackCategory {
    TrackBuilder::new(c.clone()).build().expect("discrete completion is total")
}

/// At most one 2-cell between any two parallel 1-cells.
pub fn is_hom_discrete(x: &FinTrackCategory) -> bool {
    let mut seen = HashSet::new();
    (0..x.two.len()).all(|a| seen.insert((x.d0[a], x.d1[a])))
}

/// Quotient of the 1-cells by the 2-cells, with the quotient functor.
pub fn pi0_track(x: &FinTrackCategory) -> Result<(FinCat, CatFunctor)> {
    let n1 = x.one.len();
    let mut parent: Vec<usize> = (0..n1).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..x.two.len() {
        let (u, v) = (root(&mut parent, x.d0[a]), root(&mut parent, x.d1[a]));
        if u != v {
            let (lo, hi) = (u.min(v), u.max(v));
            parent[hi] = lo;
        }
    }
    let mut class_of = vec![usize::MAX; n1];
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for u in 0..n1 {
        let r = root(&mut parent, u);
        if class_of[r] == usize::MAX {
            class_of[r] = reps.len();
            reps.push(u);
            members.push(Vec::new());
        }
        class_of[u] = class_of[r];
        members[class_of[u]].push(u);
    }
    let morphisms = members
        .iter()
        .map(|ms| {
            let names: Vec<&str> = ms.iter().map(|&u| x.one.name(u)).collect();
            crate::cat::Morphism { name: names.join("~"), src: x.one.src(ms[0]), tgt: x.one.tgt(ms[0]) }
        })
        .collect();
    let identities = (0..x.n_objects()).map(|a| class_of[x.one.identity(a)]).collect();
    let mut composition = HashMap::new();
    for (&(u, v), &w) in &x.one.composition {
        let key = (class_of[u], class_of[v]);
        let val = class_of[w];
        if let Some(&old) = composition.get(&key) {
            if old != val {
                return Err(Error::IllDefinedComposite(format!("{} then {}", x.one.name(u), x.one.name(v))));
            }
        } else {
            composition.insert(key, val);
        }
    }
    let cat = FinCat { objects: x.one.objects.clone(), morphisms, identities, composition };
    Ok((cat, CatFunctor { map: class_of }))
}

#[cfg(test)]
mod tests;
