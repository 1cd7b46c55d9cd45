use super::*;
use crate::cat::{Flavor, Side};
use crate::fixtures::{arrow2, chain_dag, d_z2, involution, loop2, wedge};

#[test]
fn fixtures_are_track_categories() {
    for (name, x) in
        [("loop2", loop2()), ("arrow2", arrow2()), ("chain", chain_dag()), ("wedge", wedge()), ("dz2", d_z2())]
    {
        let r = validate_track(&x);
        assert!(r.is_valid(), "{name}: {r}");
    }
    assert_eq!(loop2().n_two_cells(), 4);
    assert_eq!(arrow2().n_two_cells(), 6);
}

#[test]
fn discrete_tracks_are_hom_discrete() {
    let x = chain_dag();
    assert!(is_hom_discrete(&x));
    assert_eq!(x.n_two_cells(), x.n_one_cells());
    assert!(x.non_unit_cells().iter().all(|&a| x.is_degenerate(a)));
    assert!(!is_hom_discrete(&loop2()));
    // a and its inverse are the only 2-cells between distinct 1-cells.
    assert!(is_hom_discrete(&arrow2()));
}

#[test]
fn pi0_collapses_connected_one_cells() {
    let x = arrow2();
    let (u, v) = (x.find_one_cell("u").unwrap(), x.find_one_cell("v").unwrap());
    let (c, q) = pi0_track(&x).unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(q.map[u], q.map[v]);
    assert_eq!(c.name(q.map[u]), "u~v");
    let (c, q) = pi0_track(&loop2()).unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(q.map, vec![0, 1, 2]);
    let chain = chain_dag();
    let (c, _) = pi0_track(&chain).unwrap();
    assert_eq!(c, chain.one);
}

#[test]
fn builder_rejects_ambiguous_and_non_parallel() {
    let one = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1), ("v", 0, 1)], &[]).unwrap();
    let bad = TrackBuilder::new(one.clone()).cell("a", "u", "id_0").build();
    assert!(matches!(bad, Err(Error::UnknownCell(_))));
    let missing_inverse = TrackBuilder::new(one).cell("a", "u", "v").build();
    match missing_inverse {
        Err(Error::Invalid(r)) => assert!(r.mentions("vertical inverse of a")),
        other => panic!("expected a completion failure, got {other:?}"),
    }
}

#[test]
fn mutated_tables_fail_validation() {
    let x = loop2();
    let b = x.find_cell("b").unwrap();
    let u = x.find_one_cell("u").unwrap();
    let mut broken = x.clone();
    broken.vcomp.insert((b, b), b);
    let r = validate_track(&broken);
    assert!(!r.is_valid());
    assert!(r.mentions("not a unit"));

    let y = arrow2();
    let a = y.find_cell("a").unwrap();
    let ai = y.find_cell("a_inv").unwrap();
    let mut broken = y.clone();
    broken.vinv[a] = a;
    broken.vinv[ai] = ai;
    assert!(!validate_track(&broken).is_valid());

    let mut broken = x.clone();
    broken.s0[u] = b;
    assert!(!validate_track(&broken).is_valid());
}

#[test]
fn interchange_violation_is_reported() {
    // Replacing b by 1_u only in the composite with the unit breaks interchange
    // with the vertical unit law.
    let x = loop2();
    let b = x.find_cell("b").unwrap();
    let u = x.find_one_cell("u").unwrap();
    let unit1 = x.unit_cell(1);
    let mut broken = x.clone();
    broken.two.composition.insert((b, unit1), x.s0[u]);
    let r = validate_track(&broken);
    assert!(!r.is_valid());
}

fn split_epi() -> SplitEpiCat {
    let total = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1), ("v", 0, 1)], &[]).unwrap();
    let base = FinCat::from_generators(ObjSet::numbered(2), &[("w", 0, 1)], &[]).unwrap();
    SplitEpiCat { total, base, q: CatFunctor { map: vec![0, 1, 2, 2] }, t: CatFunctor { map: vec![0, 1, 2] } }
}

#[test]
fn kernel_pair_construction() {
    let s = split_epi();
    assert!(s.validate().is_valid());
    let h = bourne_h(&s).unwrap();
    assert!(validate_track(&h.track).is_valid());
    // Pairs: four diagonal ones plus (u, v) and (v, u).
    assert_eq!(h.pairs.len(), 6);
    assert!(is_hom_discrete(&h.track));
    let (c, q) = pi0_track(&h.track).unwrap();
    assert_eq!(c.len(), s.base.len());
    assert_eq!(q.map[2], q.map[3]);
    assert!(h_triangle_identity(&s).unwrap().is_valid());
}

#[test]
fn non_split_input_is_rejected() {
    let mut s = split_epi();
    s.t.map = vec![0, 1, 0];
    assert!(matches!(bourne_h(&s), Err(Error::NotSplit(_))));
}

#[test]
fn r_triangle_and_counit() {
    for x in [loop2(), arrow2(), chain_dag()] {
        let r = r_triangle_identity(&x).unwrap();
        assert!(r.is_valid(), "{r}");
        let hrx = bourne_h(&bourne_r(&x)).unwrap();
        assert!(validate_track(&hrx.track).is_valid());
    }
}

#[test]
fn idempotent_is_idempotent() {
    let h = bourne_h(&split_epi()).unwrap();
    let e = idempotent_e(&h).unwrap();
    assert_eq!(e.then(&e), e);
    let v = h.track.find_one_cell("v").unwrap();
    let u = h.track.find_one_cell("u").unwrap();
    assert_eq!(e.on_one[v], u);
}

#[test]
fn free_track_on_one_generator() {
    let names = vec!["x".to_string()];
    let lf = materialize_lf(&ObjSet::numbered(2), &names, &[(0, 1)]).unwrap();
    let x = &lf.track;
    assert!(validate_track(x).is_valid());
    assert_eq!(x.one.non_identity().len(), 2);
    assert_eq!(x.two.non_identity().len(), 4);
    assert!(is_hom_discrete(x));
    let (c, q) = pi0_track(x).unwrap();
    assert_eq!(c.len(), 3);
    let s = lf.one_cell(0, &[(0, Side::S)]).unwrap();
    let t = lf.one_cell(0, &[(0, Side::T)]).unwrap();
    assert_eq!(q.map[s], q.map[t]);
    let st = lf.letter(0, Flavor::ST);
    assert_eq!((x.d0[st], x.d1[st]), (s, t));
    assert_eq!(x.vinv[st], lf.letter(0, Flavor::TS));
}

#[test]
fn free_track_on_a_path() {
    let names = vec!["x".to_string(), "y".to_string()];
    let lf = materialize_lf(&ObjSet::numbered(3), &names, &[(0, 1), (1, 2)]).unwrap();
    assert!(validate_track(&lf.track).is_valid());
    // Words of length one and two in four letters per generator.
    assert_eq!(lf.track.two.non_identity().len(), 4 + 4 + 16);
    assert_eq!(lf.track.one.non_identity().len(), 2 + 2 + 4);
}

#[test]
fn transpose_round_trip() {
    let x = arrow2();
    let names = vec!["x".to_string()];
    let lf = materialize_lf(x.objects(), &names, &[(0, 1)]).unwrap();
    for cell in ["a", "a_inv", "1_u"] {
        let a = x.find_cell(cell).unwrap();
        let f = transpose_forward(&x, &lf, &[a]).unwrap();
        assert_eq!(transpose_backward(&lf, &f), vec![a]);
        let again = transpose_forward(&x, &lf, &transpose_backward(&lf, &f)).unwrap();
        assert_eq!(again, f);
    }
    let wrong = x.unit_cell(0);
    assert!(matches!(transpose_forward(&x, &lf, &[wrong]), Err(Error::NotAFunctor(_))));
}

#[test]
fn free_base_replacement() {
    for x in [wedge(), arrow2(), loop2(), chain_dag()] {
        let s = s_construction(&x).unwrap();
        assert!(validate_track(&s.sx).is_valid());
        assert!(validate_track_functor(&s.sx, &x, &s.projection).is_valid());
        let r = validate_s_equivalence(&x, &s);
        assert!(r.is_valid(), "{r}");
    }
    let w = wedge();
    let s = s_construction(&w).unwrap();
    // Paths: three identities, four edges, g after f1 and g after f2.
    assert_eq!(s.sx.n_one_cells(), 9);
    let h = s.paths.iter().filter(|p| p.edges.len() == 2).count();
    assert_eq!(h, 2);
}

#[test]
fn free_base_rejects_cycles() {
    assert!(matches!(s_construction(&involution()), Err(Error::CyclicQuiver { .. })));
}

#[test]
fn track_serde_round_trip() {
    let x = arrow2();
    let json = serde_json::to_string(&x).unwrap();
    let back: FinTrackCategory = serde_json::from_str(&json).unwrap();
    assert_eq!(back, x);
}
