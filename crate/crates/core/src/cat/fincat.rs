use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ObjSet;
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Finite category on a fixed object set, given by explicit tables.
///
/// Composition is stored diagrammatically: `composition[(f, g)]` is "f then g",
/// defined when `tgt(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCat {
    pub objects: ObjSet,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    #[serde(with = "pair_map")]
    pub composition: HashMap<(usize, usize), usize>,
}

impl FinCat {
    /// Builds a category from its non-identity morphisms and their composites.
    /// Identities `id_<object>` are prepended and their composites filled in.
    pub fn from_generators(
        objects: ObjSet,
        morphisms: &[(&str, usize, usize)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let mut mors: Vec<Morphism> =
            (0..objects.len()).map(|a| Morphism { name: format!("id_{}", objects.name(a)), src: a, tgt: a }).collect();
        for &(n, s, t) in morphisms {
            if s >= objects.len() || t >= objects.len() {
                return Err(Error::UnknownMorphism(format!("{n} has an endpoint outside the object set")));
            }
            mors.push(Morphism { name: n.to_string(), src: s, tgt: t });
        }
        let identities: Vec<usize> = (0..objects.len()).collect();
        let mut c = FinCat { objects, morphisms: mors, identities, composition: HashMap::new() };
        c.fill_identity_composites();
        for &(f, g, h) in composites {
            let (f, g, h) = (c.find(f)?, c.find(g)?, c.find(h)?);
            c.composition.insert((f, g), h);
        }
        Ok(c)
    }

    /// The discrete category on `objects`.
    pub fn discrete(objects: ObjSet) -> Self {
        FinCat::from_generators(objects, &[], &[]).expect("no generators")
    }

    pub fn fill_identity_composites(&mut self) {
        for (m, f) in self.morphisms.iter().enumerate() {
            self.composition.insert((self.identities[f.src], m), m);
            self.composition.insert((m, self.identities[f.tgt]), m);
        }
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    pub fn name(&self, m: usize) -> &str {
        &self.morphisms[m].name
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    pub fn find(&self, name: &str) -> Result<usize> {
        self.morphisms.iter().position(|m| m.name == name).ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    /// `f` then `g`, if composable and tabulated.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    /// Composite of a source-first sequence of morphisms starting at `start`.
    pub fn compose_path(&self, start: usize, path: &[usize]) -> Option<usize> {
        let mut acc = self.identities[start];
        for &m in path {
            acc = self.compose(acc, m)?;
        }
        Some(acc)
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b).collect()
    }

    pub fn non_identity(&self) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| !self.is_identity(m)).collect()
    }

    /// Morphisms grouped by source object.
    pub fn by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (m, f) in self.morphisms.iter().enumerate() {
            out[f.src].push(m);
        }
        out
    }
}

/// Exhaustive check of the category axioms.
pub fn validate_fincat(c: &FinCat) -> ValidationReport {
    let mut r = ValidationReport::new("category");
    let n_obj = c.objects.len();
    for f in &c.morphisms {
        r.check(f.src < n_obj && f.tgt < n_obj, || format!("morphism {} has an unknown endpoint", f.name));
    }
    if !r.is_valid() {
        return r;
    }
    r.check(c.identities.len() == n_obj, || "identity assignment does not cover every object".into());
    for (a, &i) in c.identities.iter().enumerate() {
        let ok = i < c.len() && c.src(i) == a && c.tgt(i) == a;
        r.check(ok, || format!("identity of object {} is not an endomorphism of it", c.objects.name(a)));
    }
    if !r.is_valid() {
        return r;
    }
    let by_src = c.by_source();
    for (&(f, g), &h) in &c.composition {
        let ok = f < c.len() && g < c.len() && h < c.len() && c.tgt(f) == c.src(g);
        r.check(ok, || format!("composition entry ({f}, {g}) is not a composable pair"));
    }
    for f in 0..c.len() {
        for &g in &by_src[c.tgt(f)] {
            match c.compose(f, g) {
                None => r.fail(format!("composite of {} then {} missing", c.name(f), c.name(g))),
                Some(h) => r.check(h < c.len() && c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g), || {
                    format!("composite of {} then {} has wrong endpoints", c.name(f), c.name(g))
                }),
            }
        }
        let (a, b) = (c.src(f), c.tgt(f));
        r.check(c.compose(c.identity(a), f) == Some(f), || format!("left identity fails on {}", c.name(f)));
        r.check(c.compose(f, c.identity(b)) == Some(f), || format!("right identity fails on {}", c.name(f)));
    }
    if !r.is_valid() {
        return r;
    }
    for f in 0..c.len() {
        for &g in &by_src[c.tgt(f)] {
            let fg = c.compose(f, g).expect("checked");
            for &h in &by_src[c.tgt(g)] {
                let left = c.compose(fg, h);
                let right = c.compose(g, h).and_then(|gh| c.compose(f, gh));
                r.check(left == right, || {
                    format!("associativity fails on ({}, {}, {})", c.name(f), c.name(g), c.name(h))
                });
            }
        }
    }
    r
}

pub(crate) mod pair_map {
    use std::collections::HashMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &HashMap<(usize, usize), usize>, s: S) -> Result<S::Ok, S::Error> {
        let mut v: Vec<(usize, usize, usize)> = m.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        v.sort_unstable();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<HashMap<(usize, usize), usize>, D::Error> {
        let v: Vec<(usize, usize, usize)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(a, b, c)| ((a, b), c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_monoid() -> FinCat {
        FinCat::from_generators(ObjSet::numbered(1), &[("g", 0, 0)], &[("g", "g", "id_0")]).unwrap()
    }

    fn poset3() -> FinCat {
        FinCat::from_generators(ObjSet::numbered(3), &[("a", 0, 1), ("b", 1, 2), ("ab", 0, 2)], &[("a", "b", "ab")])
            .unwrap()
    }

    #[test]
    fn monoid_and_poset_are_valid() {
        assert!(validate_fincat(&z2_monoid()).is_valid());
        let p = poset3();
        assert!(validate_fincat(&p).is_valid());
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn associativity_violation_is_reported() {
        // Z/3 with one broken product entry.
        let mut c = FinCat::from_generators(
            ObjSet::numbered(1),
            &[("g", 0, 0), ("h", 0, 0)],
            &[("g", "g", "h"), ("g", "h", "id_0"), ("h", "g", "id_0"), ("h", "h", "g")],
        )
        .unwrap();
        assert!(validate_fincat(&c).is_valid());
        let g = c.find("g").unwrap();
        c.composition.insert((g, g), g);
        let r = validate_fincat(&c);
        assert!(r.mentions("associativity"), "{r}");
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut p = poset3();
        let (a, b) = (p.find("a").unwrap(), p.find("b").unwrap());
        p.composition.remove(&(a, b));
        assert!(validate_fincat(&p).mentions("missing"));
    }
}
