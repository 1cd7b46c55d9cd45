//! Cohomology of a finite category with coefficients in a natural system.

use std::collections::HashMap;

use crate::cat::{FinCat, FreeCat};
use crate::coeff::TrackModule;
use crate::error::{Error, Result};
use crate::zmod::{AbHom, CochainComplexZ, CyclicSum, FinAbGroup, SparseMatrix, Z};

/// A group `D(u)` per morphism with the two actions along composition.
/// `left[(u, w)]: D(u) -> D(u then w)` and `right[(v, u)]: D(u) -> D(v then u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSystem {
    pub cat: FinCat,
    pub fibers: Vec<CyclicSum>,
    pub left: HashMap<(usize, usize), AbHom>,
    pub right: HashMap<(usize, usize), AbHom>,
}

impl NaturalSystem {
    /// The constant system: `D(u) = A` and both actions the identity.
    pub fn constant(cat: &FinCat, a: &FinAbGroup) -> Self {
        let g = a.as_cyclic_sum();
        let id = AbHom::identity(g.clone());
        let pairs: Vec<(usize, usize)> = cat.composition.keys().copied().collect();
        NaturalSystem {
            cat: cat.clone(),
            fibers: vec![g; cat.len()],
            left: pairs.iter().map(|&p| (p, id.clone())).collect(),
            right: pairs.iter().map(|&p| (p, id.clone())).collect(),
        }
    }

    /// The constant system on the category freely generated by a quiver.
    pub fn constant_on_free(free: &FreeCat, a: &FinAbGroup) -> Result<Self> {
        let (cat, _) = free.to_fincat().map_err(|e| match e {
            Error::CyclicQuiver { .. } => Error::InfiniteCategory,
            other => other,
        })?;
        Ok(Self::constant(&cat, a))
    }

    fn composite(&self, f: usize, g: usize) -> Result<usize> {
        self.cat
            .compose(f, g)
            .ok_or_else(|| Error::NotComposable(format!("{} then {}", self.cat.name(f), self.cat.name(g))))
    }

    fn action(table: &HashMap<(usize, usize), AbHom>, key: (usize, usize)) -> Result<&AbHom> {
        table.get(&key).ok_or_else(|| Error::NotComposable(format!("no action tabulated for {key:?}")))
    }
}

/// The natural system on the 1-cells of `X` given by the loop fibers
/// `D(u) = M⟨s0 u⟩`, acting by horizontal whiskering.
pub fn natural_system_from_module(m: &TrackModule) -> NaturalSystem {
    let x = &m.base;
    let cat = x.one.clone();
    let fibers = (0..cat.len()).map(|u| m.fibers[x.s0[u]].clone()).collect();
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for &(u, w) in cat.composition.keys() {
        let whisker = &m.hwhisker[&(x.s0[u], x.s0[w])];
        left.insert((u, w), whisker.left.clone());
        right.insert((u, w), whisker.right.clone());
    }
    NaturalSystem { cat, fibers, left, right }
}

/// Which composable chains index the cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMode {
    /// Chains of non-identity morphisms.
    Normalized,
    /// All composable chains.
    Unnormalized,
}

struct Chains {
    /// Source-first chains; level 0 holds the empty chain at each object.
    chains: Vec<Vec<usize>>,
    /// Object of each level 0 entry.
    objects: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

fn enumerate_chains(cat: &FinCat, top: usize, mode: ChainMode) -> Vec<Chains> {
    let usable: Vec<usize> = match mode {
        ChainMode::Normalized => cat.non_identity(),
        ChainMode::Unnormalized => (0..cat.len()).collect(),
    };
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); cat.objects.len()];
    for &u in &usable {
        by_src[cat.src(u)].push(u);
    }
    let mut out: Vec<Chains> = Vec::with_capacity(top + 1);
    let objects: Vec<usize> = (0..cat.objects.len()).collect();
    out.push(Chains { chains: vec![Vec::new(); objects.len()], objects, index: HashMap::new() });
    for n in 1..=top {
        let chains: Vec<Vec<usize>> = if n == 1 {
            usable.iter().map(|&u| vec![u]).collect()
        } else {
            out[n - 1]
                .chains
                .iter()
                .flat_map(|c| {
                    let end = cat.tgt(*c.last().expect("nonempty chain"));
                    by_src[end].iter().map(move |&u| {
                        let mut c2 = c.clone();
                        c2.push(u);
                        c2
                    })
                })
                .collect()
        };
        let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        out.push(Chains { chains, objects: Vec::new(), index });
    }
    out
}

/// Cochain complex on levels `0..=top`: level `n` is the sum of `D(u_1 ... u_n)`
/// over composable chains, and `D(id_a)` over objects at level 0.
pub fn bw_complex(d: &NaturalSystem, top: usize, mode: ChainMode) -> Result<CochainComplexZ> {
    let cat = &d.cat;
    let chains = enumerate_chains(cat, top, mode);
    let mut composites: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for (n, level) in chains.iter().enumerate() {
        let comps = if n == 0 {
            level.objects.iter().map(|&a| cat.identity(a)).collect()
        } else {
            level
                .chains
                .iter()
                .map(|c| c[1..].iter().try_fold(c[0], |acc, &u| d.composite(acc, u)))
                .collect::<Result<Vec<_>>>()?
        };
        composites.push(comps);
    }
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut levels: Vec<CyclicSum> = Vec::with_capacity(top + 1);
    for comps in &composites {
        let mut off = Vec::with_capacity(comps.len() + 1);
        let mut moduli = Vec::new();
        for &u in comps {
            off.push(moduli.len());
            moduli.extend(d.fibers[u].moduli().iter().cloned());
        }
        off.push(moduli.len());
        offsets.push(off);
        levels.push(CyclicSum::new(moduli));
    }
    let mut diffs = Vec::with_capacity(top);
    for n in 0..top {
        let mut mat = SparseMatrix::new(levels[n + 1].len(), levels[n].len());
        let place = |mat: &mut SparseMatrix, row: usize, col: usize, h: &AbHom, sign: &Z| {
            let (r0, c0) = (offsets[n + 1][row], offsets[n][col]);
            for r in 0..h.matrix.rows() {
                for (c, v) in h.matrix.row(r) {
                    mat.push(r0 + r, c0 + *c as usize, sign * v);
                }
            }
        };
        let source_index = |sub: &[usize], object: usize| -> Option<usize> {
            if n == 0 {
                Some(object)
            } else {
                chains[n].index.get(sub).copied()
            }
        };
        for (row, c) in chains[n + 1].chains.iter().enumerate() {
            let len = c.len();
            let whole = composites[n + 1][row];
            // Post-composition with the last morphism.
            let front = &c[..len - 1];
            let front_comp = if n == 0 { cat.identity(cat.src(c[0])) } else { composites[n][chains[n].index[front]] };
            let h = NaturalSystem::action(&d.left, (front_comp, c[len - 1]))?;
            let col = source_index(front, cat.src(c[0])).expect("sub-chain is enumerated");
            place(&mut mat, row, col, h, &Z::ONE);
            // Inner faces composing neighbours, numbered from the target end.
            for i in 1..len {
                let merged = d.composite(c[i - 1], c[i])?;
                if mode == ChainMode::Normalized && cat.is_identity(merged) {
                    continue;
                }
                let mut sub = Vec::with_capacity(len - 1);
                sub.extend_from_slice(&c[..i - 1]);
                sub.push(merged);
                sub.extend_from_slice(&c[i + 1..]);
                let col = chains[n].index[&sub];
                let id = AbHom::identity(d.fibers[whole].clone());
                let sign = if (len - i) % 2 == 0 { Z::ONE } else { Z::from(-1) };
                place(&mut mat, row, col, &id, &sign);
            }
            // Pre-composition with the first morphism.
            let back = &c[1..];
            let back_comp = if n == 0 { cat.identity(cat.tgt(c[0])) } else { composites[n][chains[n].index[back]] };
            let h = NaturalSystem::action(&d.right, (c[0], back_comp))?;
            let col = source_index(back, cat.tgt(c[0])).expect("sub-chain is enumerated");
            let sign = if (n + 1) % 2 == 0 { Z::ONE } else { Z::from(-1) };
            place(&mut mat, row, col, h, &sign);
        }
        mat.normalize();
        diffs.push(AbHom::new(levels[n].clone(), levels[n + 1].clone(), mat));
    }
    Ok(CochainComplexZ::new(levels, diffs)?)
}

/// `H^0 ..= H^max_degree` of the category with coefficients in `d`, from the
/// normalized complex.
pub fn bw_cohomology(d: &NaturalSystem, max_degree: usize) -> Result<Vec<FinAbGroup>> {
    let complex = bw_complex(d, max_degree + 1, ChainMode::Normalized)?;
    (0..=max_degree).map(|s| Ok(complex.cohomology_at(s)?)).collect()
}
