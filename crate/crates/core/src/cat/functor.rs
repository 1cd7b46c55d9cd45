use serde::{Deserialize, Serialize};

use super::{FinCat, FreeCat, Path};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// Identity-on-objects functor between tabulated categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatFunctor {
    pub map: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &FinCat) -> Self {
        CatFunctor { map: (0..c.len()).collect() }
    }

    pub fn apply(&self, m: usize) -> Result<usize> {
        self.map.get(m).copied().ok_or_else(|| Error::UnknownMorphism(format!("#{m}")))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &CatFunctor) -> CatFunctor {
        CatFunctor { map: self.map.iter().map(|&m| other.map[m]).collect() }
    }
}

/// Exhaustive functoriality check of a morphism map.
pub fn validate_functor(dom: &FinCat, cod: &FinCat, map: &[usize]) -> ValidationReport {
    let mut r = ValidationReport::new("functor");
    if map.len() != dom.len() || map.iter().any(|&m| m >= cod.len()) {
        r.fail("morphism map does not cover the domain or leaves the codomain");
        return r;
    }
    for (m, &fm) in map.iter().enumerate() {
        r.check(cod.src(fm) == dom.src(m) && cod.tgt(fm) == dom.tgt(m), || {
            format!("{} is sent to {} with different endpoints", dom.name(m), cod.name(fm))
        });
    }
    for a in 0..dom.objects.len() {
        r.check(map[dom.identity(a)] == cod.identity(a), || {
            format!("identity of {} not preserved", dom.objects.name(a))
        });
    }
    for (&(f, g), &h) in &dom.composition {
        r.check(cod.compose(map[f], map[g]) == Some(map[h]), || {
            format!("composite of {} then {} not preserved", dom.name(f), dom.name(g))
        });
    }
    r
}

/// Functor out of a free category, stored on generators only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeFunctor {
    pub generators: Vec<usize>,
}

impl FreeFunctor {
    pub fn new(dom: &FreeCat, cod: &FinCat, generators: Vec<usize>) -> Result<Self> {
        if generators.len() != dom.generators.edges.len() {
            return Err(Error::NotAFunctor("one image per generator required".into()));
        }
        for (e, &m) in dom.generators.edges.iter().zip(&generators) {
            if m >= cod.len() || cod.src(m) != e.src || cod.tgt(m) != e.tgt {
                return Err(Error::NotAFunctor(format!(
                    "generator {} sent to a morphism with other endpoints",
                    e.name
                )));
            }
        }
        Ok(FreeFunctor { generators })
    }

    /// Image of a path: the composite of the generator images.
    pub fn apply(&self, cod: &FinCat, p: &Path) -> Result<usize> {
        let images: Vec<usize> = p
            .edges
            .iter()
            .map(|&e| self.generators.get(e).copied().ok_or_else(|| Error::UnknownMorphism(format!("edge #{e}"))))
            .collect::<Result<_>>()?;
        cod.compose_path(p.src, &images).ok_or_else(|| Error::NotComposable(format!("path from {}", p.src)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{ObjSet, Quiver};

    #[test]
    fn identity_functor_and_free_extension() {
        let q = Quiver::from_triples(ObjSet::numbered(3), &[("e1", 0, 1), ("e2", 1, 2)]).unwrap();
        let free = FreeCat::new(q);
        let (c, paths) = free.to_fincat().unwrap();
        let id = CatFunctor::identity(&c);
        assert!(validate_functor(&c, &c, &id.map).is_valid());
        for m in 0..c.len() {
            assert_eq!(id.apply(m).unwrap(), m);
        }
        let target = FinCat::from_generators(
            ObjSet::numbered(3),
            &[("f", 0, 1), ("g", 1, 2), ("gf", 0, 2)],
            &[("f", "g", "gf")],
        )
        .unwrap();
        let (f, g, gf) = (target.find("f").unwrap(), target.find("g").unwrap(), target.find("gf").unwrap());
        let phi = FreeFunctor::new(&free, &target, vec![f, g]).unwrap();
        let long = paths.iter().find(|p| p.edges.len() == 2).unwrap();
        assert_eq!(phi.apply(&target, long).unwrap(), gf);
    }

    #[test]
    fn collapse_of_parallel_pair() {
        let q = Quiver::from_triples(ObjSet::numbered(2), &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let free = FreeCat::new(q);
        let target = FinCat::from_generators(ObjSet::numbered(2), &[("u", 0, 1)], &[]).unwrap();
        let u = target.find("u").unwrap();
        let phi = FreeFunctor::new(&free, &target, vec![u, u]).unwrap();
        let ps = crate::cat::free_enumerate(&free).unwrap();
        assert_eq!(phi.apply(&target, &ps[0]).unwrap(), phi.apply(&target, &ps[1]).unwrap());
        assert!(FreeFunctor::new(&free, &target, vec![u]).is_err());
    }
}
