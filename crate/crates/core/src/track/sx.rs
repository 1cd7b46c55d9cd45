use std::collections::HashMap;

use super::{FinTrackCategory, TrackFunctor};
use crate::cat::{Edge, FinCat, FreeCat, Morphism, Path, Quiver};
use crate::error::Result;
use crate::validation::ValidationReport;

/// Free-base replacement: the track category with 1-cells the paths in the
/// non-identity 1-cells of `X`, and its projection back to `X`.
#[derive(Clone, Debug)]
pub struct SConstruction {
    pub sx: FinTrackCategory,
    pub projection: TrackFunctor,
    /// The 1-cell `i` of `sx` is the path `paths[i]`.
    pub paths: Vec<Path>,
    /// The 2-cell `i` of `sx` is `(u, v, α)`.
    pub triples: Vec<(usize, usize, usize)>,
    pub free_base: FreeCat,
}

pub fn s_construction(x: &FinTrackCategory) -> Result<SConstruction> {
    let gens: Vec<usize> = x.one.non_identity();
    let quiver = Quiver::new(
        x.one.objects.clone(),
        gens.iter().map(|&u| Edge { name: x.one.name(u).to_string(), src: x.one.src(u), tgt: x.one.tgt(u) }).collect(),
    )?;
    let free_base = FreeCat::new(quiver);
    let (one, paths) = free_base.to_fincat()?;
    let eps: Vec<usize> = paths
        .iter()
        .map(|p| {
            let images: Vec<usize> = p.edges.iter().map(|&e| gens[e]).collect();
            x.one.compose_path(p.src, &images).expect("paths compose in the base")
        })
        .collect();
    let n1 = paths.len();
    let mut triples: Vec<(usize, usize, usize)> = (0..n1).map(|p| (p, p, x.s0[eps[p]])).collect();
    for u in 0..n1 {
        for v in 0..n1 {
            if paths[u].src != paths[v].src || paths[u].tgt != paths[v].tgt {
                continue;
            }
            for a in x.cells_between(eps[u], eps[v]) {
                if u == v && a == x.s0[eps[u]] {
                    continue;
                }
                triples.push((u, v, a));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let morphisms: Vec<Morphism> = triples
        .iter()
        .enumerate()
        .map(|(i, &(u, v, a))| {
            let name = if i < n1 {
                format!("1_{}", one.name(u))
            } else {
                format!("({},{},{})", one.name(u), one.name(v), x.cell_name(a))
            };
            Morphism { name, src: paths[u].src, tgt: paths[u].tgt }
        })
        .collect();
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); x.n_objects()];
    for (i, &(u, _, _)) in triples.iter().enumerate() {
        by_src[paths[u].src].push(i);
    }
    let mut hcomp = HashMap::new();
    for (i, &(u, v, a)) in triples.iter().enumerate() {
        for &j in &by_src[paths[u].tgt] {
            let (u2, v2, b) = triples[j];
            let uu = one.compose(u, u2).expect("paths compose");
            let vv = one.compose(v, v2).expect("paths compose");
            let ab = x.hcomp(a, b).expect("cells compose");
            hcomp.insert((i, j), index[&(uu, vv, ab)]);
        }
    }
    let mut from: Vec<Vec<usize>> = vec![Vec::new(); n1];
    for (i, &(u, _, _)) in triples.iter().enumerate() {
        from[u].push(i);
    }
    let mut vcomp = HashMap::new();
    for (i, &(u, v, a)) in triples.iter().enumerate() {
        for &j in &from[v] {
            let (_, w, b) = triples[j];
            let ab = x.vcompose(a, b).expect("cells compose vertically");
            vcomp.insert((i, j), index[&(u, w, ab)]);
        }
    }
    let two =
        FinCat { objects: one.objects.clone(), morphisms, identities: one.identities.clone(), composition: hcomp };
    let sx = FinTrackCategory {
        d0: triples.iter().map(|t| t.0).collect(),
        d1: triples.iter().map(|t| t.1).collect(),
        s0: (0..n1).collect(),
        vinv: triples.iter().map(|&(u, v, a)| index[&(v, u, x.vinv[a])]).collect(),
        vcomp,
        one,
        two,
    };
    let projection = TrackFunctor { on_one: eps, on_two: triples.iter().map(|t| t.2).collect() };
    Ok(SConstruction { sx, projection, paths, triples, free_base })
}

/// Hom-wise equivalence of the projection: fully faithful on every pair of
/// parallel 1-cells and essentially surjective on 1-cells.
pub fn validate_s_equivalence(x: &FinTrackCategory, s: &SConstruction) -> ValidationReport {
    let mut r = ValidationReport::new("free-base replacement");
    let sx = &s.sx;
    let p = &s.projection;
    let n1 = sx.one.len();
    for u in 0..n1 {
        for v in 0..n1 {
            if sx.one.src(u) != sx.one.src(v) || sx.one.tgt(u) != sx.one.tgt(v) {
                continue;
            }
            let mut images: Vec<usize> = sx.cells_between(u, v).iter().map(|&c| p.on_two[c]).collect();
            images.sort_unstable();
            let mut expected = x.cells_between(p.on_one[u], p.on_one[v]);
            expected.sort_unstable();
            r.check(images == expected, || {
                format!("2-cells {} => {} are not in bijection with their images", sx.one.name(u), sx.one.name(v))
            });
        }
    }
    for w in 0..x.one.len() {
        r.check(p.on_one.contains(&w), || format!("1-cell {} is not the image of a path", x.one.name(w)));
    }
    r
}
