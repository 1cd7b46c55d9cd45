//! The resolution by iterated free track categories, as a calculus of
//! flavored words.
//!
//! Level 0 holds the 2-cells of `X` other than the horizontal units. A level
//! `m >= 1` generator is a nonempty composable word of letters `(c, fl)` with
//! `c` a level `m - 1` generator and `fl` one of the four flavors; letters are
//! packed as `4 * c + fl`. Generators are ordered by length, then
//! lexicographically on the packed letters.

mod term;

pub use term::{CellTerm, OneCellTerm};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cat::{count_paths_weighted, find_cycle, Flavor, Side};
use crate::error::{Error, Result};
use crate::track::FinTrackCategory;
use crate::zmod::Z;

/// Default bound on the number of generators of any level.
pub const DEFAULT_GENERATOR_BOUND: u64 = 1_000_000;

/// Outcome of the finiteness gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateReport {
    /// Predicted generator counts of levels `0..=max_level`.
    pub predicted: Vec<Z>,
    /// Object pairs carrying a level 0 generator, with multiplicity.
    pub support: Vec<(usize, usize)>,
    pub bound: u64,
}

impl GateReport {
    pub fn max_level(&self) -> usize {
        self.predicted.len() - 1
    }
}

/// Accepts `x` when the support quiver of its level 0 generators is acyclic
/// and no level up to `max_level` has more than `bound` generators.
pub fn finiteness_gate(x: &FinTrackCategory, max_level: usize, bound: u64) -> Result<GateReport> {
    let n = x.n_objects();
    let gens = x.non_unit_cells();
    let support: Vec<(usize, usize)> = gens.iter().map(|&a| x.cell_objects(a)).collect();
    if let Some(cycle) = find_cycle(n, &support) {
        return Err(Error::CyclicSupport {
            witness: cycle.iter().map(|&e| x.cell_name(gens[e]).to_string()).collect(),
        });
    }
    let mut counts = vec![vec![Z::ZERO; n]; n];
    for &(s, t) in &support {
        counts[s][t] += &Z::ONE;
    }
    let total = |c: &[Vec<Z>]| c.iter().flatten().fold(Z::ZERO, |acc, v| &acc + v);
    let mut predicted = vec![total(&counts)];
    let four = Z::from(4);
    for _ in 1..=max_level {
        let edges: Vec<(usize, usize, Z)> = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .filter(|&(s, t)| !counts[s][t].is_zero())
            .map(|(s, t)| (s, t, &counts[s][t] * &four))
            .collect();
        counts = count_paths_weighted(n, &edges).expect("support stays acyclic");
        predicted.push(total(&counts));
    }
    for (level, p) in predicted.iter().enumerate() {
        if p > &Z::from(bound) {
            return Err(Error::TooLarge { level, predicted: p.to_string(), bound });
        }
    }
    Ok(GateReport { predicted, support, bound })
}

/// The generators of one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub level: usize,
    /// Packed letters; at level 0 the single entry is the 2-cell of `X`.
    pub words: Vec<Vec<u32>>,
    /// Source and target objects.
    pub objects: Vec<(u32, u32)>,
    #[serde(skip)]
    index: HashMap<Vec<u32>, u32>,
}

/// Splits a packed letter into its inner generator and flavor.
pub fn unpack(letter: u32) -> (u32, Flavor) {
    (letter >> 2, Flavor::from_index(letter & 3))
}

pub fn pack(inner: u32, fl: Flavor) -> u32 {
    (inner << 2) | fl as u32
}

impl LevelData {
    fn new(level: usize, words: Vec<Vec<u32>>, objects: Vec<(u32, u32)>) -> Self {
        let mut d = LevelData { level, words, objects, index: HashMap::new() };
        d.rebuild_index();
        d
    }

    fn rebuild_index(&mut self) {
        self.index = self.words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &[u32]) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn letters(&self, g: u32) -> impl Iterator<Item = (u32, Flavor)> + '_ {
        self.words[g as usize].iter().map(|&l| unpack(l))
    }

    pub fn src(&self, g: u32) -> usize {
        self.objects[g as usize].0 as usize
    }

    pub fn tgt(&self, g: u32) -> usize {
        self.objects[g as usize].1 as usize
    }
}

fn enumerate_next(prev: &LevelData, n_objects: usize) -> LevelData {
    let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); n_objects];
    for (c, &(s, _)) in prev.objects.iter().enumerate() {
        for fl in Flavor::ALL {
            by_src[s as usize].push(pack(c as u32, fl));
        }
    }
    let tgt_of = |l: u32| prev.objects[(l >> 2) as usize].1;
    let mut words: Vec<Vec<u32>> = Vec::new();
    let mut objects: Vec<(u32, u32)> = Vec::new();
    let mut frontier: Vec<(Vec<u32>, u32, u32)> = Vec::new();
    for (c, &(s, t)) in prev.objects.iter().enumerate() {
        for fl in Flavor::ALL {
            frontier.push((vec![pack(c as u32, fl)], s, t));
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, s, t) in &frontier {
            for &l in &by_src[*t as usize] {
                let mut w2 = w.clone();
                w2.push(l);
                next.push((w2, *s, tgt_of(l)));
            }
        }
        for (w, s, t) in frontier {
            words.push(w);
            objects.push((s, t));
        }
        frontier = next;
    }
    LevelData::new(prev.level + 1, words, objects)
}

/// Levels `0..=max_level` with their face tables and augmentations.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub base: FinTrackCategory,
    pub gate: GateReport,
    levels: Vec<LevelData>,
    /// `faces[m][i][g]` for `m >= 1` and `i < m`.
    faces: Vec<Vec<Vec<u32>>>,
    /// Full augmentation into the 2-cells of `X`.
    aug: Vec<Vec<usize>>,
    /// Level 0 index of each 2-cell of `X`.
    cell_index: Vec<Option<u32>>,
}

impl Resolution {
    /// Runs the gate and builds levels `0..=max_level`.
    pub fn new(x: &FinTrackCategory, max_level: usize, bound: u64) -> Result<Self> {
        let gate = finiteness_gate(x, max_level, bound)?;
        let gens = x.non_unit_cells();
        let level0 = LevelData::new(
            0,
            gens.iter().map(|&a| vec![a as u32]).collect(),
            gens.iter().map(|&a| (x.two.src(a) as u32, x.two.tgt(a) as u32)).collect(),
        );
        let mut levels = vec![level0];
        for _ in 1..=max_level {
            let next = enumerate_next(levels.last().expect("level 0 exists"), x.n_objects());
            levels.push(next);
        }
        Self::from_levels(x, gate, levels)
    }

    /// Rebuilds the derived tables from stored levels, for example a cache.
    pub fn from_levels(x: &FinTrackCategory, gate: GateReport, mut levels: Vec<LevelData>) -> Result<Self> {
        for (m, l) in levels.iter_mut().enumerate() {
            if l.level != m || Z::from(l.len()) != gate.predicted[m] {
                return Err(Error::GateNotPassed(m));
            }
            l.rebuild_index();
        }
        let mut cell_index = vec![None; x.n_two_cells()];
        for (g, w) in levels[0].words.iter().enumerate() {
            cell_index[w[0] as usize] = Some(g as u32);
        }
        let mut r = Resolution { base: x.clone(), gate, levels, faces: vec![Vec::new()], aug: Vec::new(), cell_index };
        r.aug.push(r.levels[0].words.iter().map(|w| w[0] as usize).collect());
        for m in 1..r.levels.len() {
            let mut tables = Vec::with_capacity(m);
            for i in 0..m {
                let table: Vec<u32> =
                    (0..r.levels[m].len() as u32).map(|g| r.compute_face(m, i, g)).collect::<Result<_>>()?;
                tables.push(table);
            }
            let aug_prev = &r.aug[m - 1];
            let aug_m = tables[0].iter().map(|&f| aug_prev[f as usize]).collect();
            r.faces.push(tables);
            r.aug.push(aug_m);
        }
        Ok(r)
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[LevelData] {
        &self.levels
    }

    pub fn level(&self, m: usize) -> Result<&LevelData> {
        self.levels.get(m).ok_or(Error::GateNotPassed(m))
    }

    /// Level 0 generator of a 2-cell of `X`, if it is one.
    pub fn generator_of_cell(&self, a: usize) -> Option<u32> {
        self.cell_index.get(a).copied().flatten()
    }

    /// One step of the counit on a level `m >= 1` generator, or a letterwise
    /// face when `i >= 1`. Needs the face tables of level `m - 1`.
    fn compute_face(&self, m: usize, i: usize, g: u32) -> Result<u32> {
        let lv = &self.levels[m];
        let below = &self.levels[m - 1];
        let missing = || Error::GateNotPassed(m - 1);
        if i == 0 {
            if m == 1 {
                let x = &self.base;
                let mut acc: Option<usize> = None;
                for (c, fl) in lv.letters(g) {
                    let a = below.words[c as usize][0] as usize;
                    let v = match fl {
                        Flavor::SS => x.s0[x.d0[a]],
                        Flavor::ST => a,
                        Flavor::TS => x.vinv[a],
                        Flavor::TT => x.s0[x.d1[a]],
                    };
                    acc = Some(match acc {
                        None => v,
                        Some(p) => x.hcomp(p, v).ok_or_else(|| Error::NotComposable("letter images".into()))?,
                    });
                }
                let cell = acc.expect("generators are nonempty words");
                return self.generator_of_cell(cell).ok_or_else(|| {
                    Error::UnknownCell(format!("counit image {} is a horizontal unit", self.base.cell_name(cell)))
                });
            }
            let mut out = Vec::new();
            for (c, fl) in lv.letters(g) {
                for (c2, fl2) in below.letters(c) {
                    let (a, b) = (fl2.first(), fl2.second());
                    let new = match fl {
                        Flavor::SS => Flavor::from_sides(a, a),
                        Flavor::ST => fl2,
                        Flavor::TS => Flavor::from_sides(b, a),
                        Flavor::TT => Flavor::from_sides(b, b),
                    };
                    out.push(pack(c2, new));
                }
            }
            return below.index_of(&out).ok_or_else(missing);
        }
        let inner = &self.faces[m - 1][i - 1];
        let out: Vec<u32> = lv.letters(g).map(|(c, fl)| pack(inner[c as usize], fl)).collect();
        below.index_of(&out).ok_or_else(missing)
    }

    fn check_face(&self, m: usize, i: usize) -> Result<()> {
        if m == 0 || m > self.max_level() {
            return Err(Error::GateNotPassed(m));
        }
        if i >= m {
            return Err(Error::IndexOutOfRange { what: format!("face {i} of level {m}"), index: i });
        }
        Ok(())
    }

    /// Face `i` of a level `m` generator, for `i < m`.
    pub fn face(&self, m: usize, i: usize, g: u32) -> Result<u32> {
        self.check_face(m, i)?;
        Ok(self.faces[m][i][g as usize])
    }

    pub fn face_table(&self, m: usize, i: usize) -> Result<&[u32]> {
        self.check_face(m, i)?;
        Ok(&self.faces[m][i])
    }

    /// Degeneracy `i` of a level `m` generator, landing in level `m + 1`.
    pub fn degeneracy(&self, m: usize, i: usize, g: u32) -> Result<u32> {
        if m == 0 || m + 1 > self.max_level() {
            return Err(Error::GateNotPassed(m + 1));
        }
        if i >= m {
            return Err(Error::IndexOutOfRange { what: format!("degeneracy {i} of level {m}"), index: i });
        }
        let word = self.degeneracy_word(m, i, g)?;
        self.levels[m + 1].index_of(&word).ok_or(Error::GateNotPassed(m + 1))
    }

    fn degeneracy_word(&self, m: usize, i: usize, g: u32) -> Result<Vec<u32>> {
        let lv = &self.levels[m];
        let mut out = Vec::with_capacity(lv.words[g as usize].len());
        for (c, fl) in lv.letters(g) {
            let inner = if i == 0 {
                self.levels[m].index_of(&[pack(c, Flavor::ST)]).ok_or(Error::GateNotPassed(m))?
            } else {
                self.degeneracy(m - 1, i - 1, c)?
            };
            out.push(pack(inner, fl));
        }
        Ok(out)
    }

    /// Full augmentation of a level `m` generator into the 2-cells of `X`.
    pub fn augment(&self, m: usize, g: u32) -> Result<usize> {
        let table = self.aug.get(m).ok_or(Error::GateNotPassed(m))?;
        Ok(table[g as usize])
    }

    pub fn augment_table(&self, m: usize) -> Result<&[usize]> {
        self.aug.get(m).map(Vec::as_slice).ok_or(Error::GateNotPassed(m))
    }

    /// The 1-cell `d_side` of a level `m >= 1` generator, as a word of
    /// `(inner, side)` letters.
    pub fn boundary_word(&self, m: usize, g: u32, side: Side) -> Result<Vec<(u32, Side)>> {
        if m == 0 {
            return Err(Error::IndexOutOfRange { what: "level 0 has no word boundary".into(), index: 0 });
        }
        Ok(self.level(m)?.letters(g).map(|(c, fl)| (c, fl.component(side))).collect())
    }
}

#[cfg(test)]
mod tests;
