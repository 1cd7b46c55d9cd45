use super::{pack, Resolution};
use crate::cat::{Flavor, Side};
use crate::error::{Error, Result};

/// A 2-cell of the level `level >= 1` free track category: a word of
/// flavored letters over level `level - 1` generators. The empty word is the
/// identity at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellTerm {
    pub level: usize,
    pub src: usize,
    pub tgt: usize,
    pub letters: Vec<(u32, Flavor)>,
}

/// A 1-cell of the same free track category: a word of sided letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneCellTerm {
    pub level: usize,
    pub src: usize,
    pub tgt: usize,
    pub letters: Vec<(u32, Side)>,
}

impl CellTerm {
    pub fn identity(level: usize, obj: usize) -> Self {
        CellTerm { level, src: obj, tgt: obj, letters: Vec::new() }
    }

    fn side_word(&self, pick: fn(Flavor) -> Side) -> OneCellTerm {
        OneCellTerm {
            level: self.level,
            src: self.src,
            tgt: self.tgt,
            letters: self.letters.iter().map(|&(c, fl)| (c, pick(fl))).collect(),
        }
    }

    pub fn d0(&self) -> OneCellTerm {
        self.side_word(Flavor::first)
    }

    pub fn d1(&self) -> OneCellTerm {
        self.side_word(Flavor::second)
    }

    /// Vertical inverse: `st` and `ts` swap.
    pub fn vinv(&self) -> CellTerm {
        CellTerm { letters: self.letters.iter().map(|&(c, fl)| (c, fl.swap())).collect(), ..self.clone() }
    }

    /// Vertical composite, `self` on top: letterwise `(σ, τ), (τ, ρ) ↦ (σ, ρ)`.
    pub fn vcomp(&self, other: &CellTerm) -> Result<CellTerm> {
        let matching = self.level == other.level
            && self.src == other.src
            && self.letters.len() == other.letters.len()
            && self.letters.iter().zip(&other.letters).all(|(a, b)| a.0 == b.0 && a.1.second() == b.1.first());
        if !matching {
            return Err(Error::NotComposable("vertical boundaries differ".into()));
        }
        let letters =
            self.letters.iter().zip(&other.letters).map(|(a, b)| (a.0, Flavor::from_sides(a.1.first(), b.1.second())));
        Ok(CellTerm { letters: letters.collect(), ..self.clone() })
    }

    /// Horizontal composite, `self` first: concatenation.
    pub fn hcompose(&self, other: &CellTerm) -> Result<CellTerm> {
        if self.level != other.level || self.tgt != other.src {
            return Err(Error::NotComposable("objects do not match".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(CellTerm { level: self.level, src: self.src, tgt: other.tgt, letters })
    }
}

impl OneCellTerm {
    /// Vertical identity: `s ↦ ss`, `t ↦ tt`.
    pub fn s0(&self) -> CellTerm {
        CellTerm {
            level: self.level,
            src: self.src,
            tgt: self.tgt,
            letters: self.letters.iter().map(|&(c, s)| (c, Flavor::diagonal(s))).collect(),
        }
    }
}

impl Resolution {
    /// The generator `g` of level `m >= 1` as a term.
    pub fn cell_term(&self, m: usize, g: u32) -> Result<CellTerm> {
        if m == 0 {
            return Err(Error::IndexOutOfRange { what: "level 0 cells are 2-cells of the base".into(), index: 0 });
        }
        let lv = self.level(m)?;
        if g as usize >= lv.len() {
            return Err(Error::IndexOutOfRange { what: format!("generator of level {m}"), index: g as usize });
        }
        Ok(CellTerm { level: m, src: lv.src(g), tgt: lv.tgt(g), letters: lv.letters(g).collect() })
    }

    /// Index of a nonempty term among the level generators.
    pub fn term_index(&self, t: &CellTerm) -> Option<u32> {
        let packed: Vec<u32> = t.letters.iter().map(|&(c, fl)| pack(c, fl)).collect();
        self.levels.get(t.level)?.index_of(&packed)
    }
}
