use proptest::prelude::*;

use super::*;
use crate::cat::ObjSet;
use crate::coeff::constant_module;
use crate::cohomology::{compute_h, Theory};
use crate::fixtures::*;
use crate::resolution::Resolution;
use crate::track::d_discrete;

fn z2() -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(&[2])
}

fn shown(groups: &[FinAbGroup]) -> Vec<String> {
    groups.iter().map(|g| g.to_string()).collect()
}

/// Rank over F2 of a matrix given as rows of bits.
fn rank_f2(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimensions of `H^n(G; F2)` for `n <= top` from the inhomogeneous bar
/// complex of a finite group given by its multiplication table.
fn bar_cohomology_f2(mul: &[Vec<usize>], top: usize) -> Vec<usize> {
    let g = mul.len();
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        (0..g.pow(n as u32))
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = k % g;
                        k /= g;
                        d
                    })
                    .collect()
            })
            .collect()
    };
    let index = |t: &[usize]| t.iter().rev().fold(0usize, |acc, &d| acc * g + d);
    // delta_n: cochains on G^n -> cochains on G^(n+1), one row per (n+1)-tuple.
    let delta = |n: usize| -> Vec<Vec<u8>> {
        tuples(n + 1)
            .iter()
            .map(|t| {
                let mut row = vec![0u8; g.pow(n as u32)];
                row[index(&t[1..])] ^= 1;
                for i in 1..=n {
                    let mut s = t[..i - 1].to_vec();
                    s.push(mul[t[i - 1]][t[i]]);
                    s.extend_from_slice(&t[i + 1..]);
                    row[index(&s)] ^= 1;
                }
                row[index(&t[..n])] ^= 1;
                row
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top).map(|n| rank_f2(delta(n))).collect();
    (0..=top).map(|n| g.pow(n as u32) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }).collect()
}

#[test]
fn bar_oracle_for_z2() {
    assert_eq!(bar_cohomology_f2(&[vec![0, 1], vec![1, 0]], 3), vec![1, 1, 1, 1]);
    // The trivial group has cohomology only in degree 0.
    assert_eq!(bar_cohomology_f2(&[vec![0]], 3), vec![1, 0, 0, 0]);
}

#[test]
fn classifying_space_of_the_z2_groupoid() {
    let b = classifying_space(&involution(), 4);
    assert!(b.check_identities().is_valid());
    let h = const_cohomology(&b, &z2(), 3).unwrap();
    let oracle = bar_cohomology_f2(&[vec![0, 1], vec![1, 0]], 3);
    for (g, dim) in h.iter().zip(oracle) {
        assert_eq!(g.ngens(), dim);
        assert!(g.invariant_factors().iter().all(|d| *d == Z::from(2)));
    }
    let h = const_cohomology(&b, &FinAbGroup::free(1), 3).unwrap();
    assert_eq!(shown(&h), ["Z", "0", "Z/2", "0"]);
}

#[test]
fn classifying_space_of_z2_as_2_cells() {
    // One object with Z/2 on its identity: the diagonal has the cohomology of
    // an Eilenberg-Mac Lane space K(Z/2, 2), which is Z/2 in degrees 0, 2, 3.
    let x = d_z2();
    let nerve = double_nerve(&x, 4);
    for q in 0..=4 {
        assert_eq!(nerve.size(1, q), 1 << q);
    }
    let h = const_cohomology(&diag(&nerve), &z2(), 3).unwrap();
    assert_eq!(shown(&h), ["Z/2", "0", "Z/2", "Z/2"]);
}

#[test]
fn double_nerve_identities_on_fixtures() {
    for x in [loop2(), arrow2(), chain_dag(), d_z2(), involution()] {
        let b = double_nerve(&x, 3);
        let r = b.check_identities();
        assert!(r.is_valid(), "{r}");
        assert!(diag(&b).check_identities().is_valid());
    }
    let b = classifying_space(&arrow2(), 4);
    assert!(b.check_identities().is_valid());
}

#[test]
fn corner_of_the_double_nerve_of_arrow2() {
    let x = arrow2();
    let b = double_nerve(&x, 2);
    assert_eq!(b.size(0, 0), 2);
    assert_eq!(b.size(0, 2), 2);
    assert_eq!(b.size(1, 0), x.n_one_cells());
    assert_eq!(b.size(1, 1), x.n_two_cells());
    // Composable pairs of 1-cells: only those with an identity on one side.
    assert_eq!(b.size(2, 0), 6);
    let s = diag(&b);
    assert_eq!(s.sizes[1], x.n_two_cells());
    assert_eq!(s.count_nondegenerate(1), x.n_two_cells() - x.n_objects());
    // A pair (identity stack, stack over u or v) is degenerate in the diagonal
    // only when the inserted vertical unit sits at the matching position:
    // two of the four height-2 stacks over each 1-cell, on each side.
    assert_eq!(s.count_nondegenerate(2), 8);
}

#[test]
fn discrete_track_categories_reduce_to_the_nerve() {
    for c in [chain_dag().one, wedge().one, involution().one, octahedron().one] {
        let x = d_discrete(&c);
        let b = double_nerve(&x, 3);
        for p in 0..=3 {
            for q in 0..3 {
                assert_eq!(b.size(p, q), b.size(p, q + 1), "vertically constant");
            }
        }
        let bx = diag(&b);
        let nerve = categorical_nerve(&c, 3);
        assert!(nerve.check_identities().is_valid());
        assert_eq!(bx.sizes, nerve.sizes);
        for a in [z2(), FinAbGroup::free(1)] {
            assert_eq!(const_cohomology(&bx, &a, 2).unwrap(), const_cohomology(&nerve, &a, 2).unwrap());
        }
    }
    let h = const_cohomology(&categorical_nerve(&octahedron().one, 3), &FinAbGroup::free(1), 2).unwrap();
    assert_eq!(shown(&h), ["Z", "0", "Z"]);
}

#[test]
fn free_dag_and_edgeless_classifying_spaces() {
    let a = FinAbGroup::from_cyclic_orders(&[4]);
    let h = const_cohomology(&classifying_space(&chain_dag(), 3), &a, 2).unwrap();
    assert_eq!(shown(&h), ["Z/4", "0", "0"]);
    let points = d_discrete(&FinCat::discrete(ObjSet::numbered(3)));
    let h = const_cohomology(&classifying_space(&points, 3), &a, 2).unwrap();
    assert_eq!(shown(&h), ["Z/4 + Z/4 + Z/4", "0", "0"]);
}

#[test]
fn positive_degrees_agree_with_the_total_theory() {
    // Only object sets pass both the groupoid condition and the gate.
    let x = d_discrete(&FinCat::discrete(ObjSet::numbered(2)));
    let a = FinAbGroup::from_cyclic_orders(&[6]);
    let h_bx = const_cohomology(&classifying_space(&x, 3), &a, 2).unwrap();
    let res = Resolution::new(&x, 3, 1_000).unwrap();
    let h_so = compute_h(Theory::SoTotal, &res, &constant_module(&x, &a), 2).unwrap();
    assert_eq!(h_bx[1..], h_so[1..]);
}

#[test]
fn shallow_truncation_is_rejected() {
    let s = classifying_space(&involution(), 2);
    assert!(matches!(const_cohomology(&s, &z2(), 2), Err(Error::TruncationTooShallow { depth: 2, degree: 2 })));
}

#[test]
fn incidence_export_lists_every_table() {
    let s = classifying_space(&involution(), 2);
    let text = s.to_incidence();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "simplicial-set 1");
    assert_eq!(lines[1], "depth 2");
    assert_eq!(lines[2..5], ["size 0 1", "size 1 2", "size 2 4"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("face ")).count(), 2 + 3);
    assert_eq!(text.lines().filter(|l| l.starts_with("degeneracy ")).count(), 1 + 2);
    let d0 = lines.iter().find(|l| l.starts_with("face 2 0")).unwrap();
    assert_eq!(d0.split(' ').count(), 3 + 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cyclic_groups_have_periodic_cohomology(n in 2usize..6) {
        // The cyclic group of order n as a one-object category, against the bar oracle.
        let names: Vec<String> = (1..n).map(|k| format!("g{k}")).collect();
        let gens: Vec<(&str, usize, usize)> = names.iter().map(|s| (s.as_str(), 0, 0)).collect();
        let name = |k: usize| if k == 0 { "id_0".to_string() } else { format!("g{k}") };
        let mut comps = Vec::new();
        for a in 1..n {
            for b in 1..n {
                comps.push((name(a), name(b), name((a + b) % n)));
            }
        }
        let comps: Vec<(&str, &str, &str)> = comps.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        let c = FinCat::from_generators(ObjSet::numbered(1), &gens, &comps).unwrap();
        let h = const_cohomology(&categorical_nerve(&c, 3), &z2(), 2).unwrap();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let oracle = bar_cohomology_f2(&mul, 2);
        for (g, dim) in h.iter().zip(oracle) {
            prop_assert_eq!(g.ngens(), dim);
        }
    }
}
