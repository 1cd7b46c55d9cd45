use super::*;
use crate::cat::ObjSet;
use crate::fixtures::{arrow2, chain_dag, d_z2, involution, loop2, wedge};
use crate::track::{is_hom_discrete, materialize_lf, validate_track};

fn zs(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

/// Independent count of nonempty composable words by direct recursion over
/// the previous level's object pairs.
fn brute_count(prev: &[(usize, usize)], n_obj: usize) -> (usize, Vec<(usize, usize)>) {
    fn extend(prev: &[(usize, usize)], start: usize, at: usize, out: &mut Vec<(usize, usize)>) {
        for &(s, t) in prev {
            if s == at {
                for _ in 0..4 {
                    out.push((start, t));
                    extend(prev, start, t, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n_obj {
        extend(prev, a, a, &mut out);
    }
    (out.len(), out)
}

#[test]
fn gate_predictions_match_direct_counts() {
    for x in [loop2(), arrow2(), chain_dag(), wedge()] {
        let gate = finiteness_gate(&x, 3, DEFAULT_GENERATOR_BOUND).unwrap();
        let mut pairs: Vec<(usize, usize)> = gate.support.clone();
        assert_eq!(gate.predicted[0], Z::from(pairs.len()));
        for m in 1..=3 {
            let (count, next) = brute_count(&pairs, x.n_objects());
            assert_eq!(gate.predicted[m], Z::from(count), "level {m}");
            pairs = next;
        }
    }
}

#[test]
fn gate_counts_on_fixtures() {
    // Every 2-cell except the horizontal units generates level 0.
    let p = finiteness_gate(&loop2(), 3, DEFAULT_GENERATOR_BOUND).unwrap().predicted;
    assert_eq!(p, zs(&[2, 8, 32, 128]));
    let p = finiteness_gate(&arrow2(), 3, DEFAULT_GENERATOR_BOUND).unwrap().predicted;
    assert_eq!(p, zs(&[4, 16, 64, 256]));
    let p = finiteness_gate(&chain_dag(), 3, DEFAULT_GENERATOR_BOUND).unwrap().predicted;
    assert_eq!(p, zs(&[3, 28, 368, 5568]));
    let discrete = crate::track::d_discrete(&crate::cat::FinCat::discrete(ObjSet::numbered(3)));
    let p = finiteness_gate(&discrete, 3, DEFAULT_GENERATOR_BOUND).unwrap().predicted;
    assert!(p.iter().all(Z::is_zero));
}

#[test]
fn gate_rejections() {
    match finiteness_gate(&d_z2(), 2, DEFAULT_GENERATOR_BOUND) {
        Err(Error::CyclicSupport { witness }) => assert_eq!(witness, vec!["g".to_string()]),
        other => panic!("expected a cyclic support, got {other:?}"),
    }
    assert!(matches!(finiteness_gate(&involution(), 2, DEFAULT_GENERATOR_BOUND), Err(Error::CyclicSupport { .. })));
    match finiteness_gate(&chain_dag(), 3, 1000) {
        Err(Error::TooLarge { level, bound, .. }) => assert_eq!((level, bound), (3, 1000)),
        other => panic!("expected TooLarge, got {other:?}"),
    }
}

#[test]
fn enumeration_matches_prediction_and_order() {
    for x in [loop2(), arrow2(), chain_dag()] {
        let r = Resolution::new(&x, 3, DEFAULT_GENERATOR_BOUND).unwrap();
        for m in 0..=3 {
            let lv = r.level(m).unwrap();
            assert_eq!(Z::from(lv.len()), r.gate.predicted[m]);
            for w in lv.words.windows(2) {
                assert!((w[0].len(), &w[0]) < (w[1].len(), &w[1]), "order at level {m}");
            }
        }
        assert!(matches!(r.level(4), Err(Error::GateNotPassed(4))));
    }
}

#[test]
fn level_one_of_loop2() {
    let x = loop2();
    let r = Resolution::new(&x, 2, DEFAULT_GENERATOR_BOUND).unwrap();
    let b = r.generator_of_cell(x.find_cell("b").unwrap()).unwrap();
    let l1 = r.level(1).unwrap();
    let b_words: Vec<Vec<(u32, Flavor)>> =
        (0..l1.len() as u32).map(|g| l1.letters(g).collect::<Vec<_>>()).filter(|w| w[0].0 == b).collect();
    assert_eq!(b_words, Flavor::ALL.iter().map(|&fl| vec![(b, fl)]).collect::<Vec<_>>());
    assert_eq!(r.level(2).unwrap().len(), 32);
}

#[test]
fn counit_on_single_letters() {
    let x = arrow2();
    let r = Resolution::new(&x, 1, DEFAULT_GENERATOR_BOUND).unwrap();
    let a = x.find_cell("a").unwrap();
    let ga = r.generator_of_cell(a).unwrap();
    let l1 = r.level(1).unwrap();
    let at = |fl| l1.index_of(&[pack(ga, fl)]).unwrap();
    assert_eq!(r.augment(1, at(Flavor::ST)).unwrap(), a);
    assert_eq!(r.augment(1, at(Flavor::SS)).unwrap(), x.s0[x.d0[a]]);
    assert_eq!(r.augment(1, at(Flavor::TS)).unwrap(), x.vinv[a]);
    assert_eq!(r.augment(1, at(Flavor::TT)).unwrap(), x.s0[x.d1[a]]);
}

#[test]
fn faces_and_degeneracy_examples() {
    let x = loop2();
    let r = Resolution::new(&x, 3, DEFAULT_GENERATOR_BOUND).unwrap();
    let b = r.generator_of_cell(x.find_cell("b").unwrap()).unwrap();
    let b_st = r.level(1).unwrap().index_of(&[pack(b, Flavor::ST)]).unwrap();
    let c = r.level(2).unwrap().index_of(&[pack(b_st, Flavor::ST)]).unwrap();
    assert_eq!(r.face(2, 1, c).unwrap(), b_st);
    assert_eq!(r.face(2, 0, c).unwrap(), b_st);
    assert_eq!(r.degeneracy(1, 0, b_st).unwrap(), c);
    assert_eq!(r.face(1, 0, b_st).unwrap(), b);
    assert!(matches!(r.face(2, 2, c), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(r.degeneracy(3, 0, 0), Err(Error::GateNotPassed(4))));
}

#[test]
fn simplicial_identities_exhaustive() {
    for x in [loop2(), arrow2(), chain_dag()] {
        let r = Resolution::new(&x, 3, DEFAULT_GENERATOR_BOUND).unwrap();
        // Faces: d_i d_j = d_{j-1} d_i for i < j, from level m to m - 2.
        for m in 2..=3 {
            for g in 0..r.level(m).unwrap().len() as u32 {
                for j in 0..m {
                    for i in 0..j {
                        let lhs = r.face(m - 1, i, r.face(m, j, g).unwrap()).unwrap();
                        let rhs = r.face(m - 1, j - 1, r.face(m, i, g).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "faces {i} < {j} at level {m}");
                    }
                }
            }
        }
        // Degeneracies against faces, from level m to m + 1 and back.
        for m in 1..=2 {
            for g in 0..r.level(m).unwrap().len() as u32 {
                for j in 0..m {
                    let s = r.degeneracy(m, j, g).unwrap();
                    assert_eq!(r.face(m + 1, j, s).unwrap(), g);
                    assert_eq!(r.face(m + 1, j + 1, s).unwrap(), g);
                    for i in 0..=m {
                        if i < j {
                            let lhs = r.face(m + 1, i, s).unwrap();
                            let rhs = r.degeneracy(m - 1, j - 1, r.face(m, i, g).unwrap());
                            if m >= 2 {
                                assert_eq!(lhs, rhs.unwrap());
                            }
                        } else if i > j + 1 {
                            let lhs = r.face(m + 1, i, s).unwrap();
                            let rhs = r.degeneracy(m - 1, j, r.face(m, i - 1, g).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, from level 1 to level 3.
        for g in 0..r.level(1).unwrap().len() as u32 {
            let s0 = r.degeneracy(1, 0, g).unwrap();
            let lhs = r.degeneracy(2, 0, s0).unwrap();
            let rhs = r.degeneracy(2, 1, s0).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn augmentation_coequalizes_level_two() {
    for x in [loop2(), arrow2(), chain_dag()] {
        let r = Resolution::new(&x, 2, DEFAULT_GENERATOR_BOUND).unwrap();
        for g in 0..r.level(2).unwrap().len() as u32 {
            let a0 = r.augment(1, r.face(2, 0, g).unwrap()).unwrap();
            let a1 = r.augment(1, r.face(2, 1, g).unwrap()).unwrap();
            assert_eq!(a0, a1);
            assert_eq!(r.augment(2, g).unwrap(), a0);
        }
    }
}

#[test]
fn term_operations() {
    let x = loop2();
    let r = Resolution::new(&x, 2, DEFAULT_GENERATOR_BOUND).unwrap();
    let b = r.generator_of_cell(x.find_cell("b").unwrap()).unwrap();
    let l1 = r.level(1).unwrap();
    let term = |fl| r.cell_term(1, l1.index_of(&[pack(b, fl)]).unwrap()).unwrap();
    let st = term(Flavor::ST);
    assert_eq!(st.vinv(), term(Flavor::TS));
    let back = st.vcomp(&st.vinv()).unwrap();
    assert_eq!(back, term(Flavor::SS));
    assert_eq!(back, st.d0().s0());
    assert_eq!(term(Flavor::SS).vinv(), term(Flavor::SS));
    assert!(st.vcomp(&st).is_err());
    for g in 0..r.level(2).unwrap().len() as u32 {
        let t = r.cell_term(2, g).unwrap();
        for w in [t.d0(), t.d1()] {
            assert_eq!(w.s0().d0(), w);
            assert_eq!(w.s0().d1(), w);
        }
        assert_eq!(r.term_index(&t), Some(g));
        assert_eq!(t.vinv().vinv(), t);
    }
    let id = CellTerm::identity(1, 0);
    assert_eq!(id.hcompose(&st).unwrap(), st);
    assert!(st.hcompose(&st).is_err());
}

#[test]
fn levels_are_hom_discrete_free_track_categories() {
    for (x, top) in [(loop2(), 3), (arrow2(), 2), (chain_dag(), 2)] {
        let r = Resolution::new(&x, top, DEFAULT_GENERATOR_BOUND).unwrap();
        for m in 1..=top {
            let prev = r.level(m - 1).unwrap();
            let names: Vec<String> = (0..prev.len()).map(|g| format!("g{g}")).collect();
            let gens: Vec<(usize, usize)> = (0..prev.len() as u32).map(|g| (prev.src(g), prev.tgt(g))).collect();
            let lf = materialize_lf(x.objects(), &names, &gens).unwrap();
            assert!(is_hom_discrete(&lf.track), "level {m}");
            if m <= 2 {
                assert!(validate_track(&lf.track).is_valid());
            }
            let packed: Vec<Vec<u32>> =
                lf.two_words[x.n_objects()..].iter().map(|w| w.iter().map(|&(g, fl)| pack(g, fl)).collect()).collect();
            assert_eq!(packed, r.level(m).unwrap().words);
        }
    }
}

#[test]
fn cached_levels_rebuild_identically() {
    let x = chain_dag();
    let r = Resolution::new(&x, 2, DEFAULT_GENERATOR_BOUND).unwrap();
    let json = serde_json::to_string(r.levels()).unwrap();
    let levels: Vec<LevelData> = serde_json::from_str(&json).unwrap();
    let again = Resolution::from_levels(&x, r.gate.clone(), levels).unwrap();
    for m in 1..=2 {
        for i in 0..m {
            assert_eq!(again.face_table(m, i).unwrap(), r.face_table(m, i).unwrap());
        }
        assert_eq!(again.augment_table(m).unwrap(), r.augment_table(m).unwrap());
    }
}
