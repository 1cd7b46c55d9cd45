use super::TrackModule;
use crate::error::{Error, Result};
use crate::zmod::{AbHom, Z};

/// An element of the fiber over one 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub cell: usize,
    pub value: Vec<Z>,
}

/// Operations on module elements, for table-driven callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOp {
    HCompose,
    VCompose,
    VInvert,
    Add,
    Negate,
    /// Transport from the loop fiber at `d0 α` to the loop fiber at `d1 α`.
    ConjugateAlong(usize),
}

impl TrackModule {
    pub fn zero(&self, cell: usize) -> ModuleElement {
        ModuleElement { cell, value: self.fibers[cell].zero() }
    }

    pub fn element(&self, cell: usize, value: &[Z]) -> Result<ModuleElement> {
        let f = self.fibers.get(cell).ok_or_else(|| Error::UnknownCell(format!("2-cell index {cell}")))?;
        if f.len() != value.len() {
            return Err(Error::FiberMismatch(format!("fiber over {} has {} summands", self.cell_label(cell), f.len())));
        }
        Ok(ModuleElement { cell, value: f.reduce(value) })
    }

    fn cell_label(&self, a: usize) -> &str {
        self.base.cell_name(a)
    }

    /// `hl(m) + hr(n)` over the horizontal composite, `m` first.
    pub fn hcompose(&self, m: &ModuleElement, n: &ModuleElement) -> Result<ModuleElement> {
        let c = self.base.hcomp(m.cell, n.cell).ok_or_else(|| {
            Error::NotComposable(format!("{} and {}", self.cell_label(m.cell), self.cell_label(n.cell)))
        })?;
        let w = self.h(m.cell, n.cell)?;
        let value = self.fibers[c].add(&w.left.apply(&m.value), &w.right.apply(&n.value));
        Ok(ModuleElement { cell: c, value })
    }

    /// `vl(m) + vr(n)` over the vertical composite, `m` on top.
    pub fn vcompose(&self, m: &ModuleElement, n: &ModuleElement) -> Result<ModuleElement> {
        let c = self.base.vcompose(m.cell, n.cell).ok_or_else(|| {
            Error::NotComposable(format!("{} then {}", self.cell_label(m.cell), self.cell_label(n.cell)))
        })?;
        let w = self.v(m.cell, n.cell)?;
        let value = self.fibers[c].add(&w.left.apply(&m.value), &w.right.apply(&n.value));
        Ok(ModuleElement { cell: c, value })
    }

    pub fn vinvert(&self, m: &ModuleElement) -> ModuleElement {
        ModuleElement { cell: self.base.vinv[m.cell], value: self.vinverse[m.cell].apply(&m.value) }
    }

    pub fn add(&self, m: &ModuleElement, n: &ModuleElement) -> Result<ModuleElement> {
        if m.cell != n.cell {
            return Err(Error::NotComposable("sum of elements over different 2-cells".into()));
        }
        Ok(ModuleElement { cell: m.cell, value: self.fibers[m.cell].add(&m.value, &n.value) })
    }

    pub fn negate(&self, m: &ModuleElement) -> ModuleElement {
        ModuleElement { cell: m.cell, value: self.fibers[m.cell].neg(&m.value) }
    }

    /// The map `m ↦ 0_{α⁻¹} ∘ m ∘ 0_α` from the loop fiber at `d0 α` to the
    /// loop fiber at `d1 α`.
    pub fn conjugation(&self, alpha: usize) -> AbHom {
        let x = &self.base;
        let inv = x.vinv[alpha];
        let upper = &self.vwhisker[&(inv, x.s0[x.d0[alpha]])].right;
        let lower = &self.vwhisker[&(inv, alpha)].left;
        upper.then(lower)
    }

    pub fn conjugate_along(&self, alpha: usize, m: &ModuleElement) -> Result<ModuleElement> {
        let x = &self.base;
        if m.cell != x.s0[x.d0[alpha]] {
            return Err(Error::NotComposable(format!(
                "conjugation along {} needs an element over the identity of its source",
                self.cell_label(alpha)
            )));
        }
        Ok(ModuleElement { cell: x.s0[x.d1[alpha]], value: self.conjugation(alpha).apply(&m.value) })
    }

    pub fn apply_op(&self, op: ElementOp, args: &[ModuleElement]) -> Result<ModuleElement> {
        let arity = match op {
            ElementOp::HCompose | ElementOp::VCompose | ElementOp::Add => 2,
            _ => 1,
        };
        if args.len() != arity {
            return Err(Error::NotComposable(format!("{op:?} takes {arity} arguments")));
        }
        match op {
            ElementOp::HCompose => self.hcompose(&args[0], &args[1]),
            ElementOp::VCompose => self.vcompose(&args[0], &args[1]),
            ElementOp::Add => self.add(&args[0], &args[1]),
            ElementOp::VInvert => Ok(self.vinvert(&args[0])),
            ElementOp::Negate => Ok(self.negate(&args[0])),
            ElementOp::ConjugateAlong(alpha) => self.conjugate_along(alpha, &args[0]),
        }
    }
}
