use proptest::prelude::*;

use super::*;
use crate::cat::{FinCat, ObjSet, Quiver};
use crate::coeff::{constant_module, cyclic_module, validate_module};
use crate::fixtures::*;
use crate::track::FinTrackCategory;
use crate::zmod::{image_generators, iso_check, kernel_generators, subgroup_eq};

fn resolve(x: &FinTrackCategory, depth: usize) -> Resolution {
    Resolution::new(x, depth, 1_000_000).expect("fixture passes the gate")
}

fn cyclic(n: i64) -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(&[n])
}

fn shown(groups: &[FinAbGroup]) -> Vec<String> {
    groups.iter().map(|g| g.to_string()).collect()
}

fn all_h(m: &TrackModule, max_degree: usize) -> [Vec<String>; 3] {
    let res = resolve(&m.base, max_degree + 1);
    Theory::ALL.map(|t| shown(&compute_h(t, &res, m, max_degree).expect("cohomology")))
}

/// Modules on gated fixtures used by the structural checks below.
fn structural_fixtures() -> Vec<(&'static str, TrackModule)> {
    vec![
        ("loop2 Z/2", constant_module(&loop2(), &cyclic(2))),
        ("arrow2 Z/4", constant_module(&arrow2(), &cyclic(4))),
        ("arrow2 twisted", twisted_arrow2_module()),
        ("dag mixed", mixed_dag_module()),
        ("wedge top", wedge_top_module()),
    ]
}

#[test]
fn zero_module_gives_trivial_levels_and_groups() {
    for x in [loop2(), arrow2()] {
        let m = constant_module(&x, &FinAbGroup::trivial());
        let res = resolve(&x, 3);
        for t in Theory::ALL {
            let c = build(t, &res, &m, 2).unwrap();
            assert!((0..=3).all(|n| c.level(n).is_empty()), "{t}");
            assert!(compute_h(t, &res, &m, 2).unwrap().iter().all(FinAbGroup::is_trivial));
        }
        let les = les_verify(&res, &m, 2).unwrap();
        assert!(les.ses.iter().all(SesReport::is_exact));
        assert!(les.degrees.iter().all(|d| d.h_a.is_trivial() && d.h_b.is_trivial() && d.h_c.is_trivial()));
    }
}

#[test]
fn prime_field_shortcut_agrees_with_the_lattice_computation() {
    let mut modules = structural_fixtures();
    modules.push(("dag Z/3", constant_module(&chain_dag(), &cyclic(3))));
    modules.push(("wedge Z/2", constant_module(&wedge(), &cyclic(2))));
    for (name, m) in modules {
        let res = resolve(&m.base, 3);
        for t in Theory::ALL {
            let complex = build(t, &res, &m, 2).unwrap().complex().unwrap();
            for n in 0..=2 {
                let slow = complex.cohomology_data(n).unwrap().group;
                assert_eq!(complex.cohomology_at(n).unwrap(), slow, "{name} {t} H^{n}");
            }
        }
    }
}

#[test]
fn loop2_level_sizes() {
    let x = loop2();
    let m = constant_module(&x, &cyclic(2));
    let res = resolve(&x, 3);
    let c = build_c(&res, &m, 2).unwrap();
    let a = build_a(&res, &m, 2).unwrap();
    let b = build_b(&res, &m, 2).unwrap();
    for (n, expected) in [2usize, 8, 32, 128].into_iter().enumerate() {
        assert_eq!(c.level(n).len(), expected);
        assert_eq!(a.level(n).len(), expected);
        assert_eq!(b.level(n).len(), 2 * expected);
        assert!(b.level(n).moduli().iter().all(|q| *q == Z::from(2)));
        assert_eq!(b.summands(n).iter().filter(|s| s.side == Some(Side::S)).count(), expected);
    }
}

#[test]
fn cosimplicial_identities_and_square_zero_on_fixtures() {
    for (name, m) in structural_fixtures() {
        let res = resolve(&m.base, 3);
        for t in Theory::ALL {
            let c = build(t, &res, &m, 2).unwrap();
            let ids = c.check_identities();
            assert!(ids.is_valid(), "{name} {t}: {ids}");
            let dd = c.check_square_zero();
            assert!(dd.is_valid(), "{name} {t}: {dd}");
        }
    }
}

#[test]
fn xi_and_theta_are_cosimplicial_maps() {
    for (name, m) in structural_fixtures() {
        let res = resolve(&m.base, 3);
        let (a, b, c) = (build_a(&res, &m, 2).unwrap(), build_b(&res, &m, 2).unwrap(), build_c(&res, &m, 2).unwrap());
        let r = check_maps_commute(&res, &m, &a, &b, &c).unwrap();
        assert!(r.is_valid(), "{name}: {r}");
    }
}

#[test]
fn short_exact_sequence_at_every_level() {
    for (name, m) in structural_fixtures() {
        let res = resolve(&m.base, 3);
        for n in 0..=3 {
            let r = verify_ses_level(&res, &m, n).unwrap();
            assert!(r.is_exact(), "{name} level {n}: {r:?}");
            let (oa, ob, oc) = (r.a.order().unwrap(), r.b.order().unwrap(), r.c.order().unwrap());
            assert_eq!(ob, oa * oc, "{name} level {n}");
        }
    }
}

#[test]
fn constant_module_xi_is_diagonal_and_theta_is_a_difference() {
    let x = arrow2();
    let m = constant_module(&x, &cyclic(4));
    let res = resolve(&x, 2);
    let xi = xi_map(&res, &m, 1).unwrap();
    let theta = theta_map(&res, &m, 1).unwrap();
    let (a, b) = (xi.domain.clone(), xi.codomain.clone());
    for g in 0..a.len() {
        let mut expected = b.zero();
        expected[2 * g] = Z::ONE;
        expected[2 * g + 1] = Z::ONE;
        assert!(b.eq_elements(&xi.apply(&a.basis(g)), &expected));
        let c = &theta.codomain;
        assert!(c.eq_elements(&theta.apply(&b.basis(2 * g)), &c.neg(&c.basis(g))));
        assert!(c.eq_elements(&theta.apply(&b.basis(2 * g + 1)), &c.basis(g)));
    }
}

#[test]
fn so_base_vanishes_above_degree_zero_on_free_base() {
    let modules = [
        constant_module(&loop2(), &cyclic(2)),
        constant_module(&loop2(), &FinAbGroup::free(1)),
        constant_module(&arrow2(), &cyclic(4)),
        twisted_arrow2_module(),
        mixed_dag_module(),
    ];
    for m in modules {
        let res = resolve(&m.base, 3);
        let h = compute_h(Theory::SoBase, &res, &m, 2).unwrap();
        assert!(h[1..].iter().all(FinAbGroup::is_trivial), "{}", shown(&h).join(", "));
    }
}

#[test]
fn loop2_matches_the_cohomology_of_z2() {
    // The total theory of loop2 is the cohomology of the group of its loops.
    let [c, a, b] = all_h(&constant_module(&loop2(), &cyclic(2)), 2);
    assert_eq!(a, ["Z/2", "Z/2", "Z/2"]);
    assert_eq!(c, ["Z/2", "Z/2", "Z/2"]);
    assert_eq!(b, ["Z/2", "0", "0"]);
    let [c, a, b] = all_h(&constant_module(&loop2(), &FinAbGroup::free(1)), 2);
    assert_eq!(a, ["Z", "0", "Z/2"]);
    assert_eq!(c, ["0", "Z/2", "0"]);
    assert_eq!(b, ["Z", "0", "0"]);
    // The same groups from the bar complex of the involution monoid.
    let inv = involution();
    assert_eq!(
        shown(&bw_cohomology(&NaturalSystem::constant(&inv.one, &FinAbGroup::free(1)), 2).unwrap()),
        ["Z", "0", "Z/2"]
    );
    assert_eq!(
        shown(&bw_cohomology(&NaturalSystem::constant(&inv.one, &cyclic(2)), 2).unwrap()),
        ["Z/2", "Z/2", "Z/2"]
    );
}

#[test]
fn regression_values_on_fixtures() {
    let cases: Vec<(TrackModule, [&[&str]; 3])> = vec![
        (constant_module(&arrow2(), &cyclic(4)), [&["Z/4", "0", "0"], &["Z/4", "0", "0"], &["Z/4 + Z/4", "0", "0"]]),
        (twisted_arrow2_module(), [&["Z/3", "0", "0"], &["Z/3", "0", "0"], &["Z/3 + Z/3", "0", "0"]]),
        (constant_module(&arrow2(), &FinAbGroup::free(1)), [&["Z", "0", "0"], &["Z", "0", "0"], &["Z + Z", "0", "0"]]),
        (
            constant_module(&chain_dag(), &FinAbGroup::free(1)),
            [&["0", "0", "0"], &["Z + Z", "0", "0"], &["Z + Z", "0", "0"]],
        ),
        (mixed_dag_module(), [&["0", "0", "0"], &["Z/2 + Z/4", "0", "0"], &["Z/2 + Z/4", "0", "0"]]),
        (wedge_top_module(), [&["0", "0", "0"], &["0", "Z/2", "0"], &["0", "Z/2", "0"]]),
    ];
    for (m, expected) in cases {
        let got = all_h(&m, 2);
        for (g, e) in got.iter().zip(expected) {
            assert_eq!(g, e);
        }
    }
}

#[test]
fn degree_zero_is_the_equalizer_of_the_first_cofaces() {
    let m = twisted_arrow2_module();
    let res = resolve(&m.base, 2);
    for t in Theory::ALL {
        let c = build(t, &res, &m, 1).unwrap();
        let diff = c.coface(0, 0).add_scaled(c.coface(0, 1), &Z::from(-1));
        assert!(subgroup_eq(c.level(0), &kernel_generators(&diff), &kernel_generators(&c.differential(0))));
        let h0 = &cohomology_of(&c).unwrap()[0];
        let kernel = kernel_generators(&diff);
        assert_eq!(h0.ngens() == 0, kernel.iter().all(|v| c.level(0).is_zero(v)), "{t}");
    }
}

#[test]
fn long_exact_sequence_on_loop2() {
    let m = constant_module(&loop2(), &cyclic(2));
    let res = resolve(&m.base, 3);
    let r = les_verify(&res, &m, 2).unwrap();
    assert!(r.all_exact() && r.delta_choice_invariant);
    assert_eq!(r.ses.len(), 4);
    assert!(r.degrees[2].delta.is_none());
    assert_eq!(r.degrees[2].at_c, NodeVerdict::NotCheckable);
    assert!(r.degrees[..2].iter().all(|d| d.at_a.is_exact() && d.at_b.is_exact() && d.at_c.is_exact()));
}

#[test]
fn connecting_maps_are_isomorphisms_over_a_free_base() {
    let modules = [constant_module(&loop2(), &FinAbGroup::free(1)), mixed_dag_module(), twisted_arrow2_module()];
    for m in modules {
        let res = resolve(&m.base, 3);
        let r = les_verify(&res, &m, 2).unwrap();
        let d1 = r.degrees[1].delta.as_ref().expect("delta below the top degree");
        assert!(iso_check(&r.degrees[1].h_c, &r.degrees[2].h_a));
        assert!(kernel_generators(d1).iter().all(|v| d1.domain.is_zero(v)));
        let cod = &d1.codomain;
        let image = image_generators(d1);
        assert!(subgroup_eq(cod, &image, &(0..cod.len()).map(|i| cod.basis(i)).collect::<Vec<_>>()));
    }
    // loop2 with integer coefficients has a nonzero connecting map in degree 1.
    let m = constant_module(&loop2(), &FinAbGroup::free(1));
    let r = les_verify(&resolve(&m.base, 3), &m, 2).unwrap();
    assert!(!r.degrees[1].delta.as_ref().unwrap().is_zero());
}

#[test]
fn base_theory_matches_shifted_category_cohomology() {
    for m in [wedge_top_module(), mixed_dag_module(), constant_module(&arrow2(), &cyclic(4))] {
        let res = resolve(&m.base, 3);
        let base = compute_h(Theory::SoBase, &res, &m, 2).unwrap();
        let bw = bw_cohomology(&natural_system_from_module(&m), 3).unwrap();
        for s in 1..=2 {
            assert!(iso_check(&base[s], &bw[s + 1]), "s = {s}: {} vs {}", base[s], bw[s + 1]);
        }
    }
    // The octahedral poset has the cohomology of a 2-sphere.
    let m = constant_module(&octahedron(), &FinAbGroup::free(1));
    let base = compute_h(Theory::SoBase, &resolve(&m.base, 2), &m, 1).unwrap();
    let bw = bw_cohomology(&natural_system_from_module(&m), 2).unwrap();
    assert_eq!(shown(&bw), ["Z", "0", "Z"]);
    assert_eq!(base[1].to_string(), "Z");
}

#[test]
fn category_cohomology_of_the_trivial_monoid() {
    let one = FinCat::discrete(ObjSet::numbered(1));
    let h = bw_cohomology(&NaturalSystem::constant(&one, &cyclic(6)), 3).unwrap();
    assert_eq!(shown(&h), ["Z/6", "0", "0", "0"]);
}

#[test]
fn category_cohomology_of_free_categories_vanishes_above_one() {
    for x in [chain_dag(), arrow2()] {
        let h = bw_cohomology(&NaturalSystem::constant(&x.one, &cyclic(4)), 4).unwrap();
        assert!(h[2..].iter().all(FinAbGroup::is_trivial));
    }
    let q = Quiver::from_triples(ObjSet::numbered(3), &[("p", 0, 1), ("q", 0, 1), ("r", 1, 2)]).unwrap();
    let d = NaturalSystem::constant_on_free(&crate::cat::FreeCat::new(q), &FinAbGroup::free(1)).unwrap();
    let h = bw_cohomology(&d, 3).unwrap();
    assert_eq!(shown(&h), ["Z", "Z", "0", "0"]);
    let cyclic_q = Quiver::from_triples(ObjSet::numbered(1), &[("e", 0, 0)]).unwrap();
    let err = NaturalSystem::constant_on_free(&crate::cat::FreeCat::new(cyclic_q), &FinAbGroup::free(1));
    assert!(matches!(err, Err(Error::InfiniteCategory)));
}

#[test]
fn normalized_and_unnormalized_chains_agree() {
    let systems = [
        NaturalSystem::constant(&involution().one, &FinAbGroup::free(1)),
        natural_system_from_module(&wedge_top_module()),
        natural_system_from_module(&mixed_dag_module()),
    ];
    for d in systems {
        let norm = bw_complex(&d, 3, ChainMode::Normalized).unwrap();
        let full = bw_complex(&d, 3, ChainMode::Unnormalized).unwrap();
        for s in 0..=2 {
            assert!(iso_check(&norm.cohomology_at(s).unwrap(), &full.cohomology_at(s).unwrap()), "degree {s}");
        }
    }
}

#[test]
fn category_cochains_square_to_zero_on_long_chains() {
    let d = NaturalSystem::constant(&involution().one, &FinAbGroup::free(1));
    for mode in [ChainMode::Normalized, ChainMode::Unnormalized] {
        let cx = bw_complex(&d, 5, mode).unwrap();
        assert!((1..5).all(|n| cx.check_square_zero(n).is_ok()), "{mode:?}");
    }
    assert_eq!(shown(&bw_cohomology(&d, 4).unwrap()), ["Z", "0", "Z/2", "0", "Z/2"]);
}

#[test]
fn builders_reject_mismatched_inputs() {
    let m = constant_module(&arrow2(), &cyclic(2));
    let res = resolve(&loop2(), 3);
    assert!(matches!(build_c(&res, &m, 2), Err(Error::FiberMismatch(_))));
    assert!(matches!(verify_ses_level(&res, &m, 0), Err(Error::FiberMismatch(_))));
    let shallow = resolve(&arrow2(), 2);
    assert!(matches!(build_a(&shallow, &m, 2), Err(Error::GateNotPassed(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn loop2_total_theory_is_group_cohomology(n in 2i64..40) {
        // H^0(Z/2; Z/n) = Z/n and H^1(Z/2; Z/n) = Hom(Z/2, Z/n).
        let m = constant_module(&loop2(), &cyclic(n));
        let res = resolve(&m.base, 2);
        let h = compute_h(Theory::SoTotal, &res, &m, 1).unwrap();
        prop_assert!(iso_check(&h[0], &cyclic(n)));
        let hom = cyclic(if n % 2 == 0 { 2 } else { 1 });
        prop_assert!(iso_check(&h[1], &hom));
    }

    #[test]
    fn sequences_stay_exact_for_cyclic_modules(orders in proptest::collection::vec(prop_oneof![Just(0i64), 1i64..7], 6)) {
        let x = chain_dag();
        let orders: Vec<Z> = (0..x.n_two_cells()).map(|a| Z::from(orders[a % orders.len()])).collect();
        let m = cyclic_module(&x, &orders).unwrap();
        prop_assume!(validate_module(&m).is_valid());
        let res = resolve(&x, 2);
        for t in Theory::ALL {
            let c = build(t, &res, &m, 1).unwrap();
            prop_assert!(c.check_identities().is_valid());
        }
        let r = les_report(&res, &m, 1).unwrap();
        prop_assert!(r.all_exact(), "{:?}", r.first_failure());
    }

    #[test]
    fn xi_and_theta_commute_for_constant_groups(k in 1i64..12, free in any::<bool>()) {
        let g = if free { FinAbGroup::free(1).direct_sum(&cyclic(k)) } else { cyclic(k) };
        let m = constant_module(&arrow2(), &g);
        let res = resolve(&m.base, 2);
        let (a, b, c) = (build_a(&res, &m, 1).unwrap(), build_b(&res, &m, 1).unwrap(), build_c(&res, &m, 1).unwrap());
        prop_assert!(check_maps_commute(&res, &m, &a, &b, &c).unwrap().is_valid());
        for n in 0..=2 {
            prop_assert!(verify_ses_level(&res, &m, n).unwrap().is_exact());
        }
    }
}
