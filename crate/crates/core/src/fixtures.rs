//! Small named track categories used by tests, benches and the command line.

use crate::cat::{FinCat, ObjSet};
use crate::coeff::{cyclic_module, TrackModule, Whisker};
use crate::track::{d_discrete, FinTrackCategory, TrackBuilder};
use crate::zmod::{AbHom, CyclicSum, Z};

/// One arrow `u: 0 -> 1` carrying one self-inverse loop `b: u => u`.
pub fn loop2() -> FinTrackCategory {
    let one = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1)], &[]).expect("valid generators");
    TrackBuilder::new(one).cell("b", "u", "u").inverse("b", "b").build().expect("loop2 is a track category")
}

/// Two parallel arrows `u, v: 0 -> 1` and an invertible 2-cell `a: u => v`.
pub fn arrow2() -> FinTrackCategory {
    let one = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1), ("v", 0, 1)], &[]).expect("valid generators");
    TrackBuilder::new(one)
        .cell("a", "u", "v")
        .cell("a_inv", "v", "u")
        .inverse("a", "a_inv")
        .build()
        .expect("arrow2 is a track category")
}

/// The discrete track category on the chain `0 -f-> 1 -g-> 2`.
pub fn chain_dag() -> FinTrackCategory {
    let one =
        FinCat::from_generators(ObjSet::numbered(3), &[("f", 0, 1), ("g", 1, 2), ("gf", 0, 2)], &[("f", "g", "gf")])
            .expect("valid generators");
    d_discrete(&one)
}

/// Two arrows `f1, f2: 0 -> 1` made equal by `g: 1 -> 2`, with discrete 2-cells.
pub fn wedge() -> FinTrackCategory {
    let one = FinCat::from_generators(
        ObjSet::numbered(3),
        &[("f1", 0, 1), ("f2", 0, 1), ("g", 1, 2), ("h", 0, 2)],
        &[("f1", "g", "h"), ("f2", "g", "h")],
    )
    .expect("valid generators");
    d_discrete(&one)
}

/// One object whose identity carries the group `Z/2` of 2-cells.
pub fn d_z2() -> FinTrackCategory {
    let one = FinCat::discrete(ObjSet::numbered(1));
    TrackBuilder::new(one)
        .cell("g", "id_0", "id_0")
        .inverse("g", "g")
        .hcomp("g", "g", "1_id_0")
        .build()
        .expect("d(Z/2) is a track category")
}

/// One object with an involution `e`, a category with a cyclic quiver.
pub fn involution() -> FinTrackCategory {
    let one =
        FinCat::from_generators(ObjSet::numbered(1), &[("e", 0, 0)], &[("e", "e", "id_0")]).expect("valid generators");
    d_discrete(&one)
}

/// The chain with `Z/2` over 2-cells ending at objects 0 or 1 and `Z/4` over
/// those ending at 2, joined by the canonical maps.
pub fn mixed_dag_module() -> TrackModule {
    let x = chain_dag();
    let orders: Vec<Z> = (0..x.n_two_cells()).map(|a| Z::from(if x.two.tgt(a) == 2 { 4 } else { 2 })).collect();
    cyclic_module(&x, &orders).expect("one order per 2-cell")
}

/// `Z/3` over every 2-cell of arrow2, twisted so that the 2-cell `a` acts by
/// `-1`: a vertical composite `(γ, m)` then `(δ, n)` is `δ·m + n`.
pub fn twisted_arrow2_module() -> TrackModule {
    let x = arrow2();
    let g = CyclicSum::new(vec![Z::from(3)]);
    let a = x.find_cell("a").expect("fixture cell");
    let a_inv = x.find_cell("a_inv").expect("fixture cell");
    let act = |cell: usize| Z::from(if cell == a || cell == a_inv { -1 } else { 1 });
    let scalar = |k: Z| AbHom::scalar(g.clone(), g.clone(), &k);
    let n2 = x.n_two_cells();
    let units: Vec<bool> = (0..n2).map(|c| x.is_unit_cell(c)).collect();
    TrackModule::assemble(
        x.clone(),
        vec![g.clone(); n2],
        |p, q, _| match (units[p], units[q]) {
            (true, true) | (false, false) => Whisker { left: scalar(Z::ONE), right: scalar(Z::ONE) },
            (true, false) => Whisker { left: scalar(Z::ZERO), right: scalar(Z::ONE) },
            (false, true) => Whisker { left: scalar(Z::ONE), right: scalar(Z::ZERO) },
        },
        |_, q, _| Whisker { left: scalar(act(q)), right: scalar(Z::ONE) },
        |_, inv| scalar(-act(inv)),
    )
}

/// The wedge with `Z/2` over the identity 2-cell of `h` and zero elsewhere.
pub fn wedge_top_module() -> TrackModule {
    let x = wedge();
    let h = x.find_one_cell("h").expect("fixture arrow");
    let orders: Vec<Z> = (0..x.n_two_cells()).map(|a| Z::from(if a == x.s0[h] { 2 } else { 1 })).collect();
    cyclic_module(&x, &orders).expect("one order per 2-cell")
}

/// The discrete track category on the poset `a, b < c, d < e, f`, whose
/// nerve is the octahedron.
pub fn octahedron() -> FinTrackCategory {
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut relations: Vec<(String, String, String)> = Vec::new();
    let names = ["a", "b", "c", "d", "e", "f"];
    for lo in 0..2 {
        for mid in 2..4 {
            arrows.push((format!("{}{}", names[lo], names[mid]), lo, mid));
        }
    }
    for mid in 2..4 {
        for hi in 4..6 {
            arrows.push((format!("{}{}", names[mid], names[hi]), mid, hi));
        }
    }
    for lo in 0..2 {
        for hi in 4..6 {
            let long = format!("{}{}", names[lo], names[hi]);
            arrows.push((long.clone(), lo, hi));
            for mid in 2..4 {
                relations.push((
                    format!("{}{}", names[lo], names[mid]),
                    format!("{}{}", names[mid], names[hi]),
                    long.clone(),
                ));
            }
        }
    }
    let arrows: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
    let relations: Vec<(&str, &str, &str)> =
        relations.iter().map(|(f, g, h)| (f.as_str(), g.as_str(), h.as_str())).collect();
    let objects = ObjSet::new(names).expect("distinct names");
    d_discrete(&FinCat::from_generators(objects, &arrows, &relations).expect("valid generators"))
}
