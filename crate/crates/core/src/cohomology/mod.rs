//! Cosimplicial abelian groups of cochains on the resolution, the maps between
//! them, and their cohomology.
//!
//! Three theories are built from a [`Resolution`] and a [`TrackModule`]:
//!
//! * `Comonad`: level `n` is the sum of `M⟨ε̂ e⟩` over the level `n` generators.
//! * `SoTotal`: level `n` is the sum of the loop fibers `M⟨s0 d0 ε̂ e⟩`.
//! * `SoBase`: level `n` has an s-copy `M⟨s0 d0 ε̂ e⟩` and a t-copy
//!   `M⟨s0 d1 ε̂ e⟩` for every generator.
//!
//! Coface `d^0` evaluates a cochain on the letters of a word and whiskers the
//! letter values into the fiber of the composite; cofaces `d^i` for `i >= 1`
//! restrict along the letterwise face `i - 1`.

mod bw;
mod les;
mod maps;

pub use bw::{bw_cohomology, bw_complex, natural_system_from_module, ChainMode, NaturalSystem};
pub use les::{les_report, les_verify, LesDegree, LesReport, NodeVerdict};
pub use maps::{check_maps_commute, theta_map, verify_ses_level, xi_map, SesReport};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cat::{Flavor, Side};
use crate::coeff::TrackModule;
use crate::error::{Error, Result};
use crate::resolution::Resolution;
use crate::validation::ValidationReport;
use crate::zmod::{AbHom, CochainComplexZ, CyclicSum, FinAbGroup, SparseMatrix, Z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    Comonad,
    SoTotal,
    SoBase,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::Comonad, Theory::SoTotal, Theory::SoBase];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Comonad => "comonad",
            Theory::SoTotal => "so_total",
            Theory::SoBase => "so_base",
        }
    }

    pub fn parse(s: &str) -> Option<Theory> {
        Theory::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One block of a cochain level: the fiber over `cell` attached to a
/// generator, and for the base theory the copy it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub generator: u32,
    pub side: Option<Side>,
    pub cell: usize,
}

/// Blocks of one level together with their offsets in the level group.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub blocks: Vec<Summand>,
    pub offsets: Vec<usize>,
    pub group: CyclicSum,
}

impl Layout {
    fn new(m: &TrackModule, blocks: Vec<Summand>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut moduli = Vec::new();
        for b in &blocks {
            offsets.push(moduli.len());
            moduli.extend(m.fibers[b.cell].moduli().iter().cloned());
        }
        offsets.push(moduli.len());
        Layout { blocks, offsets, group: CyclicSum::new(moduli) }
    }

    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b + 1]
    }
}

pub(crate) fn layout(theory: Theory, res: &Resolution, m: &TrackModule, n: usize) -> Result<Layout> {
    let x = &res.base;
    let aug = res.augment_table(n)?;
    let mut blocks = Vec::with_capacity(aug.len() * if theory == Theory::SoBase { 2 } else { 1 });
    for (g, &alpha) in aug.iter().enumerate() {
        let generator = g as u32;
        match theory {
            Theory::Comonad => blocks.push(Summand { generator, side: None, cell: alpha }),
            Theory::SoTotal => blocks.push(Summand { generator, side: None, cell: x.s0[x.d0[alpha]] }),
            Theory::SoBase => {
                blocks.push(Summand { generator, side: Some(Side::S), cell: x.s0[x.d0[alpha]] });
                blocks.push(Summand { generator, side: Some(Side::T), cell: x.s0[x.d1[alpha]] });
            }
        }
    }
    Ok(Layout::new(m, blocks))
}

/// Accumulates block homomorphisms into one sparse matrix.
pub(crate) struct Assembler<'a> {
    src: &'a Layout,
    tgt: &'a Layout,
    matrix: SparseMatrix,
}

impl<'a> Assembler<'a> {
    pub fn new(src: &'a Layout, tgt: &'a Layout) -> Self {
        Assembler { src, tgt, matrix: SparseMatrix::new(tgt.group.len(), src.group.len()) }
    }

    /// Adds `k * h` from source block `sb` to target block `tb`.
    pub fn place(&mut self, tb: usize, sb: usize, h: &AbHom, k: &Z) {
        let (r0, c0) = (self.tgt.offsets[tb], self.src.offsets[sb]);
        for r in 0..h.matrix.rows() {
            for (c, v) in h.matrix.row(r) {
                self.matrix.push(r0 + r, c0 + *c as usize, k * v);
            }
        }
    }

    pub fn finish(mut self) -> AbHom {
        self.matrix.normalize();
        AbHom::new(self.src.group.clone(), self.tgt.group.clone(), self.matrix)
    }
}

/// Whiskering data for a word of cells `v_1, ..., v_L`: the composite cell
/// and, for each letter, the map `M⟨v_k⟩ -> M⟨v_1 ... v_L⟩`.
#[derive(Default)]
pub(crate) struct WordFolds {
    cache: HashMap<Vec<usize>, (usize, Vec<AbHom>)>,
}

impl WordFolds {
    pub fn fold(&mut self, m: &TrackModule, cells: &[usize]) -> Result<&(usize, Vec<AbHom>)> {
        if !self.cache.contains_key(cells) {
            let folded = fold_cells(m, cells)?;
            self.cache.insert(cells.to_vec(), folded);
        }
        Ok(&self.cache[cells])
    }
}

fn fold_cells(m: &TrackModule, cells: &[usize]) -> Result<(usize, Vec<AbHom>)> {
    let x = &m.base;
    let mut prefix = Vec::with_capacity(cells.len());
    let mut acc = cells[0];
    prefix.push(acc);
    for &v in &cells[1..] {
        acc = x.hcomp(acc, v).ok_or_else(|| Error::NotComposable("letter cells of a word".into()))?;
        prefix.push(acc);
    }
    let len = cells.len();
    // suffix[k]: M⟨prefix[k]⟩ -> M⟨composite⟩ through the later letters.
    let mut suffix: Vec<AbHom> = Vec::with_capacity(len);
    suffix.push(AbHom::identity(m.fibers[acc].clone()));
    for k in (0..len - 1).rev() {
        let w = m.h(prefix[k], cells[k + 1])?;
        let step = w.left.then(suffix.last().expect("nonempty"));
        suffix.push(step);
    }
    suffix.reverse();
    let mut maps = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            maps.push(suffix[0].clone());
        } else {
            let w = m.h(prefix[k - 1], cells[k])?;
            maps.push(w.right.then(&suffix[k]));
        }
    }
    Ok((acc, maps))
}

/// A truncated cosimplicial abelian group, levels `0..=top` with cofaces
/// `cofaces[n][i]: level n -> level n + 1` for `i <= n + 1`.
#[derive(Clone, Debug)]
pub struct CosimplicialAb {
    pub theory: Theory,
    layouts: Vec<Layout>,
    cofaces: Vec<Vec<AbHom>>,
}

impl CosimplicialAb {
    pub fn top_level(&self) -> usize {
        self.layouts.len() - 1
    }

    pub fn level(&self, n: usize) -> &CyclicSum {
        &self.layouts[n].group
    }

    pub fn summands(&self, n: usize) -> &[Summand] {
        &self.layouts[n].blocks
    }

    pub(crate) fn layout(&self, n: usize) -> &Layout {
        &self.layouts[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &AbHom {
        &self.cofaces[n][i]
    }

    pub fn n_cofaces(&self, n: usize) -> usize {
        self.cofaces[n].len()
    }

    /// Alternating sum of the cofaces out of level `n`.
    pub fn differential(&self, n: usize) -> AbHom {
        let faces = &self.cofaces[n];
        let mut matrix = SparseMatrix::new(faces[0].codomain.len(), faces[0].domain.len());
        for (i, d) in faces.iter().enumerate() {
            let sign = if i % 2 == 0 { Z::ONE } else { Z::from(-1) };
            for r in 0..d.matrix.rows() {
                for (c, v) in d.matrix.row(r) {
                    matrix.push(r, *c as usize, &sign * v);
                }
            }
        }
        matrix.normalize();
        AbHom::new(faces[0].domain.clone(), faces[0].codomain.clone(), matrix)
    }

    /// The unnormalized cochain complex on levels `0..=top`.
    pub fn complex(&self) -> Result<CochainComplexZ> {
        let levels = self.layouts.iter().map(|l| l.group.clone()).collect();
        let diffs = (0..self.cofaces.len()).map(|n| self.differential(n)).collect();
        Ok(CochainComplexZ::new(levels, diffs)?)
    }

    /// Checks `d^j d^i = d^i d^(j-1)` for `i < j` on every pair of built levels.
    pub fn check_identities(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("cosimplicial identities ({})", self.theory));
        for n in 0..self.cofaces.len().saturating_sub(1) {
            for j in 1..=n + 2 {
                for i in 0..j {
                    let lhs = self.cofaces[n][i].then(&self.cofaces[n + 1][j]);
                    let rhs = self.cofaces[n][j - 1].then(&self.cofaces[n + 1][i]);
                    r.check(lhs.same_map(&rhs), || format!("d^{j} d^{i} != d^{i} d^{} out of level {n}", j - 1));
                }
            }
        }
        r
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn check_square_zero(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("d∘d = 0 ({})", self.theory));
        for n in 1..self.cofaces.len() {
            let dd = self.differential(n - 1).then(&self.differential(n));
            r.check(dd.is_zero(), || format!("d∘d != 0 out of level {}", n - 1));
        }
        r
    }
}

fn check_inputs(res: &Resolution, m: &TrackModule, top: usize) -> Result<()> {
    if m.base != res.base {
        return Err(Error::FiberMismatch("module is over a different track category than the resolution".into()));
    }
    if res.max_level() < top {
        return Err(Error::GateNotPassed(top));
    }
    Ok(())
}

fn block_of(theory: Theory, g: u32, side: Side) -> usize {
    match theory {
        Theory::SoBase => 2 * g as usize + side as usize,
        _ => g as usize,
    }
}

/// Builds levels `0..=max_degree + 1` of one theory.
pub fn build(theory: Theory, res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<CosimplicialAb> {
    let top = max_degree + 1;
    check_inputs(res, m, top)?;
    let layouts: Vec<Layout> = (0..=top).map(|n| layout(theory, res, m, n)).collect::<Result<_>>()?;
    let mut folds = WordFolds::default();
    let mut cofaces = Vec::with_capacity(top);
    for n in 0..top {
        let mut faces = Vec::with_capacity(n + 2);
        faces.push(coface_zero(theory, res, m, &layouts[n], &layouts[n + 1], n, &mut folds)?);
        let sides = if theory == Theory::SoBase { 2 } else { 1 };
        for i in 1..=n + 1 {
            let table = res.face_table(n + 1, i - 1)?;
            let mut asm = Assembler::new(&layouts[n], &layouts[n + 1]);
            for (g, &f) in table.iter().enumerate() {
                for s in 0..sides {
                    let side = Side::from_index(s);
                    let tb = block_of(theory, g as u32, side);
                    let sb = block_of(theory, f, side);
                    let id = AbHom::identity(m.fibers[layouts[n + 1].blocks[tb].cell].clone());
                    asm.place(tb, sb, &id, &Z::ONE);
                }
            }
            faces.push(asm.finish());
        }
        cofaces.push(faces);
    }
    Ok(CosimplicialAb { theory, layouts, cofaces })
}

/// The coface evaluating cochains on the letters of each level `n + 1` word.
fn coface_zero(
    theory: Theory,
    res: &Resolution,
    m: &TrackModule,
    src: &Layout,
    tgt: &Layout,
    n: usize,
    folds: &mut WordFolds,
) -> Result<AbHom> {
    let x = &res.base;
    let aug = res.augment_table(n)?;
    let words = res.level(n + 1)?;
    let mut asm = Assembler::new(src, tgt);
    let mut cells = Vec::new();
    let mut sources: Vec<Option<(usize, AbHom)>> = Vec::new();
    for tb in 0..tgt.blocks.len() {
        let target = &tgt.blocks[tb];
        cells.clear();
        sources.clear();
        for (c, fl) in words.letters(target.generator) {
            let alpha = aug[c as usize];
            let (cell, source) = match theory {
                Theory::Comonad => match fl {
                    Flavor::SS => (x.s0[x.d0[alpha]], None),
                    Flavor::ST => (alpha, Some((c as usize, AbHom::identity(m.fibers[alpha].clone())))),
                    Flavor::TS => (x.vinv[alpha], Some((c as usize, m.vinverse[alpha].clone()))),
                    Flavor::TT => (x.s0[x.d1[alpha]], None),
                },
                Theory::SoTotal => {
                    let from = x.s0[x.d0[alpha]];
                    match fl.first() {
                        Side::S => (from, Some((c as usize, AbHom::identity(m.fibers[from].clone())))),
                        Side::T => (x.s0[x.d1[alpha]], Some((c as usize, m.conjugation(alpha)))),
                    }
                }
                Theory::SoBase => {
                    let side = fl.component(target.side.expect("base blocks are sided"));
                    let cell = match side {
                        Side::S => x.s0[x.d0[alpha]],
                        Side::T => x.s0[x.d1[alpha]],
                    };
                    (cell, Some((block_of(theory, c, side), AbHom::identity(m.fibers[cell].clone()))))
                }
            };
            cells.push(cell);
            sources.push(source);
        }
        let (composite, maps) = folds.fold(m, &cells)?;
        if *composite != target.cell {
            return Err(Error::FiberMismatch(format!(
                "word {} of level {} composes to {} instead of {}",
                target.generator,
                n + 1,
                x.cell_name(*composite),
                x.cell_name(target.cell)
            )));
        }
        for (k, source) in sources.iter().enumerate() {
            if let Some((sb, h)) = source {
                asm.place(tb, *sb, &h.then(&maps[k]), &Z::ONE);
            }
        }
    }
    Ok(asm.finish())
}

pub fn build_c(res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<CosimplicialAb> {
    build(Theory::Comonad, res, m, max_degree)
}

pub fn build_a(res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<CosimplicialAb> {
    build(Theory::SoTotal, res, m, max_degree)
}

pub fn build_b(res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<CosimplicialAb> {
    build(Theory::SoBase, res, m, max_degree)
}

/// `H^0 ..= H^max_degree` of the built cosimplicial group.
pub fn cohomology_of(c: &CosimplicialAb) -> Result<Vec<FinAbGroup>> {
    let complex = c.complex()?;
    (0..c.top_level()).map(|s| Ok(complex.cohomology_at(s)?)).collect()
}

/// Builds one theory and returns its cohomology in degrees `0..=max_degree`.
pub fn compute_h(theory: Theory, res: &Resolution, m: &TrackModule, max_degree: usize) -> Result<Vec<FinAbGroup>> {
    cohomology_of(&build(theory, res, m, max_degree)?)
}

#[cfg(test)]
mod tests;
