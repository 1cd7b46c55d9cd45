//! Coefficient modules over a track category: an abelian group over every
//! 2-cell, with the horizontal and vertical composites split into whiskers.

mod element;

pub use element::{ElementOp, ModuleElement};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::track::{FinTrackCategory, TrackFunctor};
use crate::validation::ValidationReport;
use crate::zmod::{AbHom, CyclicSum, FinAbGroup, Z};

/// The two halves of a composite `(m, n) ↦ left(m) + right(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Whisker {
    pub left: AbHom,
    pub right: AbHom,
}

/// A module over `base`. Horizontal whiskers are keyed by `(a, b)` with `a`
/// first, vertical ones by `(a, b)` with `a` on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackModule {
    pub base: FinTrackCategory,
    pub fibers: Vec<CyclicSum>,
    pub hwhisker: HashMap<(usize, usize), Whisker>,
    pub vwhisker: HashMap<(usize, usize), Whisker>,
    pub vinverse: Vec<AbHom>,
}

/// Multiplier of the canonical map between cyclic groups of the given orders
/// (0 meaning `Z`): the identity, `1 ↦ b / gcd(a, b)` between finite groups,
/// reduction out of `Z`, and zero from a finite group into `Z`.
pub fn canonical_multiplier(from: &Z, to: &Z) -> Z {
    match (from.is_zero(), to.is_zero()) {
        (true, _) => Z::ONE,
        (false, true) => Z::ZERO,
        (false, false) => to.div_exact(&from.gcd(to)),
    }
}

impl TrackModule {
    /// Builds a module from closures giving each fiber, each horizontal and
    /// vertical whisker pair, and each inverse map.
    pub fn assemble(
        base: FinTrackCategory,
        fibers: Vec<CyclicSum>,
        mut horizontal: impl FnMut(usize, usize, usize) -> Whisker,
        mut vertical: impl FnMut(usize, usize, usize) -> Whisker,
        mut inverse: impl FnMut(usize, usize) -> AbHom,
    ) -> TrackModule {
        let mut hwhisker = HashMap::new();
        let by_src = base.two.by_source();
        for a in 0..base.two.len() {
            for &b in &by_src[base.two.tgt(a)] {
                let c = base.hcomp(a, b).expect("composable pair");
                hwhisker.insert((a, b), horizontal(a, b, c));
            }
        }
        let mut vwhisker = HashMap::new();
        for (&(a, b), &c) in &base.vcomp {
            vwhisker.insert((a, b), vertical(a, b, c));
        }
        let vinverse = (0..base.two.len()).map(|a| inverse(a, base.vinv[a])).collect();
        TrackModule { base, fibers, hwhisker, vwhisker, vinverse }
    }

    pub fn fiber(&self, a: usize) -> &CyclicSum {
        &self.fibers[a]
    }

    pub fn fiber_group(&self, a: usize) -> FinAbGroup {
        self.fibers[a].normal_form()
    }

    pub fn h(&self, a: usize, b: usize) -> Result<&Whisker> {
        self.hwhisker
            .get(&(a, b))
            .ok_or_else(|| Error::NotComposable(format!("{} and {} horizontally", self.cell(a), self.cell(b))))
    }

    pub fn v(&self, a: usize, b: usize) -> Result<&Whisker> {
        self.vwhisker
            .get(&(a, b))
            .ok_or_else(|| Error::NotComposable(format!("{} then {} vertically", self.cell(a), self.cell(b))))
    }

    fn cell(&self, a: usize) -> &str {
        self.base.cell_name(a)
    }

    /// True when every fiber is trivial.
    pub fn is_zero_module(&self) -> bool {
        self.fibers.iter().all(|f| f.moduli().iter().all(Z::is_unit))
    }
}

/// Every fiber equal to `a`, all whiskers the identity, inverse `m ↦ -m`.
pub fn constant_module(x: &FinTrackCategory, a: &FinAbGroup) -> TrackModule {
    let g = a.as_cyclic_sum();
    let id = AbHom::identity(g.clone());
    let neg = AbHom::scalar(g.clone(), g.clone(), &Z::from(-1));
    let pair = Whisker { left: id.clone(), right: id };
    TrackModule::assemble(
        x.clone(),
        vec![g; x.two.len()],
        |_, _, _| pair.clone(),
        |_, _, _| pair.clone(),
        |_, _| neg.clone(),
    )
}

/// Cyclic fibers of the given orders (0 for `Z`) with the canonical maps of
/// [`canonical_multiplier`] as whiskers and `m ↦ -m` as inverse.
pub fn cyclic_module(x: &FinTrackCategory, orders: &[Z]) -> Result<TrackModule> {
    if orders.len() != x.two.len() {
        return Err(Error::FiberMismatch(format!("{} orders for {} 2-cells", orders.len(), x.two.len())));
    }
    let fibers: Vec<CyclicSum> = orders.iter().map(|o| CyclicSum::new(vec![o.clone()])).collect();
    let map = |from: usize, to: usize| {
        AbHom::scalar(fibers[from].clone(), fibers[to].clone(), &canonical_multiplier(&orders[from], &orders[to]))
    };
    let pair = |a: usize, b: usize, c: usize| Whisker { left: map(a, c), right: map(b, c) };
    let module = TrackModule::assemble(x.clone(), fibers.clone(), pair, pair, |a, b| {
        let m = canonical_multiplier(&orders[a], &orders[b]);
        AbHom::scalar(fibers[a].clone(), fibers[b].clone(), &-m)
    });
    Ok(module)
}

/// `f* M` over `y`: the fiber at `γ` is the fiber of `M` at `f(γ)`.
pub fn pullback_module(y: &FinTrackCategory, f: &TrackFunctor, m: &TrackModule) -> TrackModule {
    let fibers = f.on_two.iter().map(|&a| m.fibers[a].clone()).collect();
    TrackModule::assemble(
        y.clone(),
        fibers,
        |a, b, _| m.hwhisker[&(f.on_two[a], f.on_two[b])].clone(),
        |a, b, _| m.vwhisker[&(f.on_two[a], f.on_two[b])].clone(),
        |a, _| m.vinverse[f.on_two[a]].clone(),
    )
}

/// The fiber over the vertical identity of `u`.
pub fn loop_fiber(m: &TrackModule, u: usize) -> Result<&CyclicSum> {
    if u >= m.base.one.len() {
        return Err(Error::UnknownCell(format!("1-cell index {u}")));
    }
    Ok(&m.fibers[m.base.s0[u]])
}

fn check_hom(r: &mut ValidationReport, h: &AbHom, dom: &CyclicSum, cod: &CyclicSum, what: impl Fn() -> String) {
    let ok = &h.domain == dom && &h.codomain == cod && h.respects_torsion();
    r.check(ok, || format!("{} is not a homomorphism between the right fibers", what()));
}

fn same(r: &mut ValidationReport, a: &AbHom, b: &AbHom, what: impl Fn() -> String) {
    r.check(a.same_map(b), what);
}

/// Exhaustive check of the module axioms.
pub fn validate_module(m: &TrackModule) -> ValidationReport {
    let mut r = ValidationReport::new("module");
    let x = &m.base;
    let n2 = x.two.len();
    if m.fibers.len() != n2 || m.vinverse.len() != n2 {
        r.fail("one fiber and one inverse map per 2-cell required");
        return r;
    }
    let name = |a: usize| x.cell_name(a).to_string();
    let by_src = x.two.by_source();
    for a in 0..n2 {
        for &b in &by_src[x.two.tgt(a)] {
            let c = x.hcomp(a, b).expect("validated base");
            match m.hwhisker.get(&(a, b)) {
                None => r.fail(format!("horizontal whisker for ({}, {}) missing", name(a), name(b))),
                Some(w) => {
                    check_hom(&mut r, &w.left, &m.fibers[a], &m.fibers[c], || format!("hl({}, {})", name(a), name(b)));
                    check_hom(&mut r, &w.right, &m.fibers[b], &m.fibers[c], || format!("hr({}, {})", name(a), name(b)));
                }
            }
        }
    }
    for (&(a, b), &c) in &x.vcomp {
        match m.vwhisker.get(&(a, b)) {
            None => r.fail(format!("vertical whisker for ({}, {}) missing", name(a), name(b))),
            Some(w) => {
                check_hom(&mut r, &w.left, &m.fibers[a], &m.fibers[c], || format!("vl({}, {})", name(a), name(b)));
                check_hom(&mut r, &w.right, &m.fibers[b], &m.fibers[c], || format!("vr({}, {})", name(a), name(b)));
            }
        }
    }
    for a in 0..n2 {
        let inv = x.vinv[a];
        check_hom(&mut r, &m.vinverse[a], &m.fibers[a], &m.fibers[inv], || format!("inverse at {}", name(a)));
    }
    if !r.is_valid() {
        return r;
    }
    let h = |a: usize, b: usize| &m.hwhisker[&(a, b)];
    let v = |a: usize, b: usize| &m.vwhisker[&(a, b)];

    // Units.
    for a in 0..n2 {
        let (s, t) = x.cell_objects(a);
        let id = AbHom::identity(m.fibers[a].clone());
        same(&mut r, &h(x.unit_cell(s), a).right, &id, || format!("left horizontal unit fails at {}", name(a)));
        same(&mut r, &h(a, x.unit_cell(t)).left, &id, || format!("right horizontal unit fails at {}", name(a)));
        same(&mut r, &v(x.s0[x.d0[a]], a).right, &id, || format!("upper vertical unit fails at {}", name(a)));
        same(&mut r, &v(a, x.s0[x.d1[a]]).left, &id, || format!("lower vertical unit fails at {}", name(a)));
    }

    // Inverses.
    for a in 0..n2 {
        let inv = x.vinv[a];
        let back = m.vinverse[a].then(&m.vinverse[inv]);
        same(&mut r, &back, &AbHom::identity(m.fibers[a].clone()), || {
            format!("inverse at {} is not an isomorphism", name(a))
        });
        let w = v(a, inv);
        let total = w.left.add_scaled(&m.vinverse[a].then(&w.right), &Z::ONE);
        r.check(total.is_zero(), || format!("{} composed with its inverse is not zero", name(a)));
    }

    // Horizontal associativity.
    for a in 0..n2 {
        for &b in &by_src[x.two.tgt(a)] {
            let ab = x.hcomp(a, b).expect("validated");
            for &c in &by_src[x.two.tgt(b)] {
                let bc = x.hcomp(b, c).expect("validated");
                let (ab_c, a_bc, a_b, b_c) = (h(ab, c), h(a, bc), h(a, b), h(b, c));
                let label = || format!("horizontal associativity fails on ({}, {}, {})", name(a), name(b), name(c));
                same(&mut r, &a_b.left.then(&ab_c.left), &a_bc.left, label);
                same(&mut r, &a_b.right.then(&ab_c.left), &b_c.left.then(&a_bc.right), label);
                same(&mut r, &ab_c.right, &b_c.right.then(&a_bc.right), label);
            }
        }
    }

    // Vertical associativity.
    let from = x.cells_from();
    for a in 0..n2 {
        for &b in &from[x.d1[a]] {
            let ab = x.vcompose(a, b).expect("validated");
            for &c in &from[x.d1[b]] {
                let bc = x.vcompose(b, c).expect("validated");
                let (ab_c, a_bc, a_b, b_c) = (v(ab, c), v(a, bc), v(a, b), v(b, c));
                let label = || format!("vertical associativity fails on ({}, {}, {})", name(a), name(b), name(c));
                same(&mut r, &a_b.left.then(&ab_c.left), &a_bc.left, label);
                same(&mut r, &a_b.right.then(&ab_c.left), &b_c.left.then(&a_bc.right), label);
                same(&mut r, &ab_c.right, &b_c.right.then(&a_bc.right), label);
            }
        }
    }

    // Interchange on every square.
    for a in 0..n2 {
        for &b in &by_src[x.two.tgt(a)] {
            let ab = x.hcomp(a, b).expect("validated");
            for &a2 in &from[x.d1[a]] {
                for &b2 in &from[x.d1[b]] {
                    let a2b2 = x.hcomp(a2, b2).expect("validated");
                    let (aa, bb) = (x.vcompose(a, a2).expect("validated"), x.vcompose(b, b2).expect("validated"));
                    let top = v(ab, a2b2);
                    let bottom = h(aa, bb);
                    let label =
                        || format!("interchange fails on ({}, {}; {}, {})", name(a), name(b), name(a2), name(b2));
                    same(&mut r, &h(a, b).left.then(&top.left), &v(a, a2).left.then(&bottom.left), label);
                    same(&mut r, &h(a, b).right.then(&top.left), &v(b, b2).left.then(&bottom.right), label);
                    same(&mut r, &h(a2, b2).left.then(&top.right), &v(a, a2).right.then(&bottom.left), label);
                    same(&mut r, &h(a2, b2).right.then(&top.right), &v(b, b2).right.then(&bottom.right), label);
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests;
