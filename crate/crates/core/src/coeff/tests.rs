use super::*;
use crate::cat::{CatFunctor, FinCat, ObjSet};
use crate::fixtures::{arrow2, chain_dag, loop2, mixed_dag_module, twisted_arrow2_module, wedge};
use crate::track::{bourne_h, idempotent_e, SplitEpiCat};

fn z(v: i64) -> Z {
    Z::from(v)
}

fn groups() -> Vec<FinAbGroup> {
    vec![
        FinAbGroup::trivial(),
        FinAbGroup::free(1),
        FinAbGroup::from_cyclic_orders(&[2i64]),
        FinAbGroup::from_cyclic_orders(&[4i64]),
        FinAbGroup::from_cyclic_orders(&[2i64, 0]),
    ]
}

#[test]
fn constant_modules_are_valid() {
    for x in [loop2(), arrow2(), chain_dag(), wedge()] {
        for a in groups() {
            let m = constant_module(&x, &a);
            let r = validate_module(&m);
            assert!(r.is_valid(), "{r}");
            for u in 0..x.n_one_cells() {
                assert_eq!(loop_fiber(&m, u).unwrap().normal_form(), a);
            }
        }
    }
    let m = constant_module(&loop2(), &FinAbGroup::from_cyclic_orders(&[2i64]));
    assert_eq!(m.fibers.len(), 4);
    assert!(constant_module(&loop2(), &FinAbGroup::trivial()).is_zero_module());
    assert!(matches!(loop_fiber(&m, 9), Err(Error::UnknownCell(_))));
}

#[test]
fn explicit_fixtures_are_valid() {
    let r = validate_module(&mixed_dag_module());
    assert!(r.is_valid(), "{r}");
    let r = validate_module(&twisted_arrow2_module());
    assert!(r.is_valid(), "{r}");
}

#[test]
fn canonical_multipliers() {
    assert_eq!(canonical_multiplier(&z(2), &z(4)), z(2));
    assert_eq!(canonical_multiplier(&z(4), &z(2)), z(1));
    assert_eq!(canonical_multiplier(&z(0), &z(6)), z(1));
    assert_eq!(canonical_multiplier(&z(6), &z(0)), z(0));
    assert_eq!(canonical_multiplier(&z(0), &z(0)), z(1));
}

#[test]
fn broken_inverse_is_reported() {
    let mut m = constant_module(&arrow2(), &FinAbGroup::from_cyclic_orders(&[4i64]));
    let a = m.base.find_cell("a").unwrap();
    let g = m.fibers[a].clone();
    m.vinverse[a] = AbHom::scalar(g.clone(), g, &z(2));
    let r = validate_module(&m);
    assert!(r.mentions("is not an isomorphism"), "{r}");
}

#[test]
fn broken_interchange_is_reported() {
    let mut m = constant_module(&chain_dag(), &FinAbGroup::from_cyclic_orders(&[3i64]));
    let x = m.base.clone();
    let f = x.find_cell("1_f").unwrap();
    let g = x.find_cell("1_g").unwrap();
    let w = m.hwhisker.get_mut(&(f, g)).unwrap();
    let fib = w.left.domain.clone();
    w.left = AbHom::scalar(fib.clone(), fib, &z(2));
    let r = validate_module(&m);
    assert!(!r.is_valid());
    assert!(r.mentions("interchange") || r.mentions("vertical unit") || r.mentions("associativity"), "{r}");
}

#[test]
fn element_operations() {
    let m = twisted_arrow2_module();
    let x = &m.base;
    let a = x.find_cell("a").unwrap();
    let u = x.find_one_cell("u").unwrap();
    let el = m.element(a, &[z(1)]).unwrap();
    let back = m.vcompose(&el, &m.vinvert(&el)).unwrap();
    assert_eq!(back.cell, x.s0[u]);
    assert!(m.fibers[back.cell].is_zero(&back.value));
    let sum = m.apply_op(ElementOp::Add, &[el.clone(), el.clone()]).unwrap();
    assert_eq!(sum.value, vec![z(2)]);
    assert_eq!(m.negate(&el).value, vec![z(2)]);
    let loop_u = m.element(x.s0[u], &[z(1)]).unwrap();
    let moved = m.conjugate_along(a, &loop_u).unwrap();
    assert_eq!(moved.value, vec![z(2)]);
    assert!(m.conjugate_along(a, &el).is_err());
    assert!(m.hcompose(&el, &el).is_err());
}

#[test]
fn conjugation_round_trips_and_is_trivial_for_constants() {
    let constant = constant_module(&arrow2(), &FinAbGroup::from_cyclic_orders(&[5i64]));
    for m in [twisted_arrow2_module(), constant.clone()] {
        let x = &m.base;
        for alpha in 0..x.n_two_cells() {
            let there = m.conjugation(alpha);
            let back = m.conjugation(x.vinv[alpha]);
            let round = there.then(&back);
            assert!(round.same_map(&AbHom::identity(round.domain.clone())));
        }
    }
    for alpha in 0..constant.base.n_two_cells() {
        let c = constant.conjugation(alpha);
        assert!(c.same_map(&AbHom::identity(c.domain.clone())));
    }
}

#[test]
fn eckmann_hilton_on_loop_fibers() {
    // On a loop fiber the vertical composite agrees with addition.
    for m in [twisted_arrow2_module(), mixed_dag_module()] {
        let x = &m.base;
        for u in 0..x.n_one_cells() {
            let s = x.s0[u];
            let w = &m.vwhisker[&(s, s)];
            let id = AbHom::identity(m.fibers[s].clone());
            assert!(w.left.same_map(&id) && w.right.same_map(&id));
        }
    }
}

#[test]
fn pullbacks() {
    let m = mixed_dag_module();
    let id = crate::track::TrackFunctor::identity(&m.base);
    assert_eq!(pullback_module(&m.base, &id, &m), m);

    // Kernel pair of a split epi with `u, v` over `w`: e sends (u, v) to (u, u).
    let total = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1), ("v", 0, 1)], &[]).unwrap();
    let base = FinCat::from_generators(ObjSet::numbered(2), &[("w", 0, 1)], &[]).unwrap();
    let s = SplitEpiCat { total, base, q: CatFunctor { map: vec![0, 1, 2, 2] }, t: CatFunctor { map: vec![0, 1, 2] } };
    let h = bourne_h(&s).unwrap();
    let e = idempotent_e(&h).unwrap();
    let module = constant_module(&h.track, &FinAbGroup::from_cyclic_orders(&[6i64]));
    let pulled = pullback_module(&h.track, &e, &module);
    assert!(validate_module(&pulled).is_valid());
    let uv = h.pair_index[&(2, 3)];
    let uu = h.pair_index[&(2, 2)];
    assert_eq!(e.on_two[uv], uu);
    assert_eq!(pulled.fibers[uv], module.fibers[uu]);
    let twice = pullback_module(&h.track, &e, &pulled);
    assert_eq!(twice, pullback_module(&h.track, &e.then(&e), &module));
}

#[test]
fn pullback_preserves_validity_along_projection() {
    let m = twisted_arrow2_module();
    let s = crate::track::s_construction(&m.base).unwrap();
    let pulled = pullback_module(&s.sx, &s.projection, &m);
    assert!(validate_module(&pulled).is_valid());
}
