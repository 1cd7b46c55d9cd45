use std::collections::HashMap;

use super::{validate_track, FinTrackCategory};
use crate::cat::{FinCat, Morphism};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// Assembles a track category from its 1-cells, the non-identity 2-cells and
/// whatever composites are not forced.
///
/// Completion rules: the identity 2-cell `1_u` of every 1-cell `u` comes first
/// (so the 2-cell `1_id_a` is the horizontal unit at `a`); unit laws and the
/// declared inverse pairs fill vertical composites; identities compose to
/// identities horizontally; any remaining composite is filled when exactly one
/// 2-cell has the required boundary.
#[derive(Clone, Debug)]
pub struct TrackBuilder {
    one: FinCat,
    cells: Vec<(String, String, String)>,
    inverses: Vec<(String, String)>,
    hcomps: Vec<(String, String, String)>,
    vcomps: Vec<(String, String, String)>,
}

impl TrackBuilder {
    pub fn new(one: FinCat) -> Self {
        TrackBuilder { one, cells: Vec::new(), inverses: Vec::new(), hcomps: Vec::new(), vcomps: Vec::new() }
    }

    /// A 2-cell `name: from => to` between parallel 1-cells.
    pub fn cell(mut self, name: &str, from: &str, to: &str) -> Self {
        self.cells.push((name.into(), from.into(), to.into()));
        self
    }

    /// Declares `b` as the vertical inverse of `a` (and vice versa).
    pub fn inverse(mut self, a: &str, b: &str) -> Self {
        self.inverses.push((a.into(), b.into()));
        self
    }

    /// Horizontal composite `a` then `b` equals `c`.
    pub fn hcomp(mut self, a: &str, b: &str, c: &str) -> Self {
        self.hcomps.push((a.into(), b.into(), c.into()));
        self
    }

    /// Vertical composite `a` then `b` equals `c`.
    pub fn vcomp(mut self, a: &str, b: &str, c: &str) -> Self {
        self.vcomps.push((a.into(), b.into(), c.into()));
        self
    }

    /// Completes and validates.
    pub fn build(self) -> Result<FinTrackCategory> {
        let x = self.complete()?;
        let report = validate_track(&x);
        if report.is_valid() {
            Ok(x)
        } else {
            Err(Error::invalid(report))
        }
    }

    /// Completes the tables without validating the axioms.
    pub fn complete(self) -> Result<FinTrackCategory> {
        let one = self.one;
        let n1 = one.len();
        let mut names: Vec<String> = (0..n1).map(|u| format!("1_{}", one.name(u))).collect();
        let mut d0: Vec<usize> = (0..n1).collect();
        let mut d1: Vec<usize> = (0..n1).collect();
        for (name, from, to) in &self.cells {
            let (u, v) = (one.find(from)?, one.find(to)?);
            if one.src(u) != one.src(v) || one.tgt(u) != one.tgt(v) {
                return Err(Error::UnknownCell(format!("2-cell {name} joins non-parallel 1-cells")));
            }
            if names.contains(name) {
                return Err(Error::UnknownCell(format!("duplicate 2-cell name {name}")));
            }
            names.push(name.clone());
            d0.push(u);
            d1.push(v);
        }
        let n2 = names.len();
        let find = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| Error::UnknownCell(n.to_string()));
        let s0: Vec<usize> = (0..n1).collect();
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for a in 0..n2 {
            between.entry((d0[a], d1[a])).or_default().push(a);
        }
        let unique = |u: usize, v: usize| match between.get(&(u, v)) {
            Some(list) if list.len() == 1 => Some(list[0]),
            _ => None,
        };
        let mut report = ValidationReport::new("track completion");

        let mut vinv: Vec<Option<usize>> = vec![None; n2];
        for (a, slot) in vinv.iter_mut().enumerate().take(n1) {
            *slot = Some(a);
        }
        for (a, b) in &self.inverses {
            let (a, b) = (find(a)?, find(b)?);
            vinv[a] = Some(b);
            vinv[b] = Some(a);
        }
        for a in 0..n2 {
            if vinv[a].is_none() {
                vinv[a] = unique(d1[a], d0[a]);
            }
        }
        let vinv: Vec<usize> = vinv
            .iter()
            .enumerate()
            .map(|(a, i)| {
                i.unwrap_or_else(|| {
                    report.fail(format!("vertical inverse of {} not determined", names[a]));
                    a
                })
            })
            .collect();

        let mut vcomp: HashMap<(usize, usize), usize> = HashMap::new();
        for (a, b, c) in &self.vcomps {
            vcomp.insert((find(a)?, find(b)?), find(c)?);
        }
        for a in 0..n2 {
            for b in 0..n2 {
                if d1[a] != d0[b] || vcomp.contains_key(&(a, b)) {
                    continue;
                }
                let val = if a < n1 {
                    Some(b)
                } else if b < n1 {
                    Some(a)
                } else if vinv[a] == b {
                    Some(s0[d0[a]])
                } else {
                    unique(d0[a], d1[b])
                };
                match val {
                    Some(c) => {
                        vcomp.insert((a, b), c);
                    }
                    None => report.fail(format!("vertical composite of {} then {} not determined", names[a], names[b])),
                }
            }
        }

        let morphisms: Vec<Morphism> =
            (0..n2).map(|a| Morphism { name: names[a].clone(), src: one.src(d0[a]), tgt: one.tgt(d0[a]) }).collect();
        let identities: Vec<usize> = one.identities.clone();
        let mut hc: HashMap<(usize, usize), usize> = HashMap::new();
        for (a, b, c) in &self.hcomps {
            hc.insert((find(a)?, find(b)?), find(c)?);
        }
        let is_unit = |a: usize| a < n1 && one.is_identity(a);
        for a in 0..n2 {
            for b in 0..n2 {
                if morphisms[a].tgt != morphisms[b].src || hc.contains_key(&(a, b)) {
                    continue;
                }
                let top = one.compose(d0[a], d0[b]);
                let bottom = one.compose(d1[a], d1[b]);
                let val = if is_unit(a) {
                    Some(b)
                } else if is_unit(b) {
                    Some(a)
                } else if a < n1 && b < n1 {
                    top
                } else if let (Some(t), Some(bt)) = (top, bottom) {
                    unique(t, bt)
                } else {
                    None
                };
                match val {
                    Some(c) => {
                        hc.insert((a, b), c);
                    }
                    None => {
                        report.fail(format!("horizontal composite of {} and {} not determined", names[a], names[b]))
                    }
                }
            }
        }
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        let two = FinCat { objects: one.objects.clone(), morphisms, identities, composition: hc };
        Ok(FinTrackCategory { one, two, d0, d1, s0, vcomp, vinv })
    }
}
