use std::collections::HashMap;

use super::{validate_track_functor, FinTrackCategory, TrackFunctor};
use crate::cat::{free_enumerate, Edge, FinCat, Flavor, FreeCat, Morphism, ObjSet, Quiver, Side};
use crate::error::{Error, Result};

/// Tabulated `L F` on a set of generators: 1-cells are words in the `s`/`t`
/// copies of the generators, 2-cells are words in the four flavored copies.
/// Empty words come first at both levels, then nonempty words ordered by
/// length and lexicographically by (generator, flavor).
#[derive(Clone, Debug)]
pub struct LfTrack {
    pub track: FinTrackCategory,
    pub generator_names: Vec<String>,
    pub generator_objects: Vec<(usize, usize)>,
    pub one_words: Vec<Vec<(u32, Side)>>,
    pub two_words: Vec<Vec<(u32, Flavor)>>,
    pub one_index: HashMap<(usize, Vec<(u32, Side)>), usize>,
    pub two_index: HashMap<(usize, Vec<(u32, Flavor)>), usize>,
}

impl LfTrack {
    /// Index of a 2-cell word starting at object `src`.
    pub fn two_cell(&self, src: usize, word: &[(u32, Flavor)]) -> Option<usize> {
        self.two_index.get(&(src, word.to_vec())).copied()
    }

    pub fn one_cell(&self, src: usize, word: &[(u32, Side)]) -> Option<usize> {
        self.one_index.get(&(src, word.to_vec())).copied()
    }

    /// Single-letter 2-cell `(g, fl)`.
    pub fn letter(&self, g: usize, fl: Flavor) -> usize {
        self.two_cell(self.generator_objects[g].0, &[(g as u32, fl)]).expect("single letters exist")
    }
}

fn words<L: Copy>(
    objects: &ObjSet,
    gens: &[(usize, usize)],
    letters: &[L],
    code: impl Fn(usize, L) -> u32,
) -> Result<Vec<(usize, usize, Vec<usize>)>> {
    let k = letters.len();
    let mut edges = Vec::with_capacity(gens.len() * k);
    for (g, &(s, t)) in gens.iter().enumerate() {
        for &l in letters {
            debug_assert_eq!(code(g, l) as usize, edges.len());
            edges.push(Edge { name: format!("{g}"), src: s, tgt: t });
        }
    }
    let q = Quiver::new(objects.clone(), edges)?;
    let paths = free_enumerate(&FreeCat::new(q))?;
    let mut out: Vec<(usize, usize, Vec<usize>)> = (0..objects.len()).map(|a| (a, a, Vec::new())).collect();
    out.extend(paths.into_iter().map(|p| (p.src, p.tgt, p.edges)));
    Ok(out)
}

/// Tabulates `L F` on the generators `gens[i] = (src, tgt)`.
pub fn materialize_lf(objects: &ObjSet, names: &[String], gens: &[(usize, usize)]) -> Result<LfTrack> {
    let n_obj = objects.len();
    let one_raw = words(objects, gens, &Side::ALL, |g, s| (g * 2 + s as usize) as u32)?;
    let two_raw = words(objects, gens, &Flavor::ALL, |g, f| (g * 4 + f as usize) as u32)?;
    let one_words: Vec<Vec<(u32, Side)>> = one_raw
        .iter()
        .map(|(_, _, w)| w.iter().map(|&e| ((e / 2) as u32, Side::from_index((e % 2) as u32))).collect())
        .collect();
    let two_words: Vec<Vec<(u32, Flavor)>> = two_raw
        .iter()
        .map(|(_, _, w)| w.iter().map(|&e| ((e / 4) as u32, Flavor::from_index((e % 4) as u32))).collect())
        .collect();
    let one_index: HashMap<(usize, Vec<(u32, Side)>), usize> =
        one_raw.iter().zip(&one_words).enumerate().map(|(i, (r, w))| ((r.0, w.clone()), i)).collect();
    let two_index: HashMap<(usize, Vec<(u32, Flavor)>), usize> =
        two_raw.iter().zip(&two_words).enumerate().map(|(i, (r, w))| ((r.0, w.clone()), i)).collect();

    let word_name = |w: &[(u32, &str)], obj: usize| -> String {
        if w.is_empty() {
            return format!("id_{}", objects.name(obj));
        }
        let parts: Vec<String> = w.iter().map(|(g, t)| format!("{}_{}", names[*g as usize], t)).collect();
        parts.join(";")
    };
    let one_morphisms: Vec<Morphism> = one_raw
        .iter()
        .zip(&one_words)
        .map(|(r, w)| {
            let tagged: Vec<(u32, &str)> = w.iter().map(|&(g, s)| (g, s.tag())).collect();
            Morphism { name: word_name(&tagged, r.0), src: r.0, tgt: r.1 }
        })
        .collect();
    let two_morphisms: Vec<Morphism> = two_raw
        .iter()
        .zip(&two_words)
        .map(|(r, w)| {
            let tagged: Vec<(u32, &str)> = w.iter().map(|&(g, f)| (g, f.tag())).collect();
            Morphism { name: word_name(&tagged, r.0), src: r.0, tgt: r.1 }
        })
        .collect();

    let concat_table = |raw: &[(usize, usize, Vec<usize>)], index: &dyn Fn(usize, &[usize]) -> usize| {
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); n_obj];
        for (i, r) in raw.iter().enumerate() {
            by_src[r.0].push(i);
        }
        let mut comp = HashMap::new();
        for (i, r) in raw.iter().enumerate() {
            for &j in &by_src[r.1] {
                let mut w = r.2.clone();
                w.extend_from_slice(&raw[j].2);
                comp.insert((i, j), index(r.0, &w));
            }
        }
        comp
    };
    let one_code: HashMap<(usize, Vec<usize>), usize> =
        one_raw.iter().enumerate().map(|(i, r)| ((r.0, r.2.clone()), i)).collect();
    let two_code: HashMap<(usize, Vec<usize>), usize> =
        two_raw.iter().enumerate().map(|(i, r)| ((r.0, r.2.clone()), i)).collect();
    let one_comp = concat_table(&one_raw, &|s, w| one_code[&(s, w.to_vec())]);
    let two_comp = concat_table(&two_raw, &|s, w| two_code[&(s, w.to_vec())]);
    let identities: Vec<usize> = (0..n_obj).collect();
    let one = FinCat {
        objects: objects.clone(),
        morphisms: one_morphisms,
        identities: identities.clone(),
        composition: one_comp,
    };
    let two = FinCat { objects: objects.clone(), morphisms: two_morphisms, identities, composition: two_comp };

    let side_word = |src: usize, w: &[(u32, Flavor)], pick: fn(Flavor) -> Side| -> usize {
        let sw: Vec<(u32, Side)> = w.iter().map(|&(g, f)| (g, pick(f))).collect();
        one_index[&(src, sw)]
    };
    let d0: Vec<usize> = two_raw.iter().zip(&two_words).map(|(r, w)| side_word(r.0, w, Flavor::first)).collect();
    let d1: Vec<usize> = two_raw.iter().zip(&two_words).map(|(r, w)| side_word(r.0, w, Flavor::second)).collect();
    let s0: Vec<usize> = one_raw
        .iter()
        .zip(&one_words)
        .map(|(r, w)| {
            let fw: Vec<(u32, Flavor)> = w.iter().map(|&(g, s)| (g, Flavor::diagonal(s))).collect();
            two_index[&(r.0, fw)]
        })
        .collect();
    let vinv: Vec<usize> = two_raw
        .iter()
        .zip(&two_words)
        .map(|(r, w)| {
            let fw: Vec<(u32, Flavor)> = w.iter().map(|&(g, f)| (g, f.swap())).collect();
            two_index[&(r.0, fw)]
        })
        .collect();
    let mut from: Vec<Vec<usize>> = vec![Vec::new(); one_words.len()];
    for (a, &u) in d0.iter().enumerate() {
        from[u].push(a);
    }
    let mut vcomp = HashMap::new();
    for a in 0..two_words.len() {
        for &b in &from[d1[a]] {
            let fw: Vec<(u32, Flavor)> = two_words[a]
                .iter()
                .zip(&two_words[b])
                .map(|(&(g, fa), &(_, fb))| (g, Flavor::from_sides(fa.first(), fb.second())))
                .collect();
            vcomp.insert((a, b), two_index[&(two_raw[a].0, fw)]);
        }
    }
    let track = FinTrackCategory { one, two, d0, d1, s0, vcomp, vinv };
    Ok(LfTrack {
        track,
        generator_names: names.to_vec(),
        generator_objects: gens.to_vec(),
        one_words,
        two_words,
        one_index,
        two_index,
    })
}

/// Transpose of `f: generators -> 2-cells of X` to a track functor `L F -> X`:
/// `ss ↦ s0 d0 f`, `st ↦ f`, `ts ↦ f⁻¹`, `tt ↦ s0 d1 f`, extended along words.
pub fn transpose_forward(x: &FinTrackCategory, lf: &LfTrack, f: &[usize]) -> Result<TrackFunctor> {
    if f.len() != lf.generator_objects.len() {
        return Err(Error::NotAFunctor("one 2-cell per generator required".into()));
    }
    for (g, &a) in f.iter().enumerate() {
        if a >= x.two.len() || x.cell_objects(a) != lf.generator_objects[g] {
            return Err(Error::NotAFunctor(format!(
                "generator {} sent to a 2-cell over other objects",
                lf.generator_names[g]
            )));
        }
    }
    let letter_value = |g: u32, fl: Flavor| -> usize {
        let a = f[g as usize];
        match fl {
            Flavor::SS => x.s0[x.d0[a]],
            Flavor::ST => a,
            Flavor::TS => x.vinv[a],
            Flavor::TT => x.s0[x.d1[a]],
        }
    };
    let side_value = |g: u32, s: Side| -> usize {
        let a = f[g as usize];
        match s {
            Side::S => x.d0[a],
            Side::T => x.d1[a],
        }
    };
    let mut on_one = Vec::with_capacity(lf.one_words.len());
    for (i, w) in lf.one_words.iter().enumerate() {
        let src = lf.track.one.src(i);
        let imgs: Vec<usize> = w.iter().map(|&(g, s)| side_value(g, s)).collect();
        on_one.push(x.one.compose_path(src, &imgs).ok_or_else(|| Error::NotAFunctor("1-cell word".into()))?);
    }
    let mut on_two = Vec::with_capacity(lf.two_words.len());
    for (i, w) in lf.two_words.iter().enumerate() {
        let src = lf.track.two.src(i);
        let imgs: Vec<usize> = w.iter().map(|&(g, fl)| letter_value(g, fl)).collect();
        on_two.push(x.two.compose_path(src, &imgs).ok_or_else(|| Error::NotAFunctor("2-cell word".into()))?);
    }
    let functor = TrackFunctor { on_one, on_two };
    let r = validate_track_functor(&lf.track, x, &functor);
    if !r.is_valid() {
        return Err(Error::NotAFunctor(r.to_string()));
    }
    Ok(functor)
}

/// Restriction of a track functor out of `L F` to the `st` copies.
pub fn transpose_backward(lf: &LfTrack, g: &TrackFunctor) -> Vec<usize> {
    (0..lf.generator_objects.len()).map(|i| g.on_two[lf.letter(i, Flavor::ST)]).collect()
}
