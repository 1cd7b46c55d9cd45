//! Categories with a fixed object set, quivers and free categories.

pub(crate) mod fincat;
mod flavor;
mod free;
mod functor;

pub use fincat::{validate_fincat, FinCat, Morphism};
pub use flavor::{Flavor, Side};
pub use free::{count_paths_transfer, count_paths_weighted, find_cycle, free_enumerate, FreeCat, Path};
pub use functor::{validate_functor, CatFunctor, FreeFunctor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The fixed object set shared by every category in a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObjSet {
    ids: Vec<String>,
}

impl ObjSet {
    pub fn new<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        for (i, a) in ids.iter().enumerate() {
            if ids[..i].contains(a) {
                return Err(Error::UnknownCell(format!("duplicate object id {a}")));
            }
        }
        Ok(ObjSet { ids })
    }

    /// Objects named `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Self {
        ObjSet { ids: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn name(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

/// An edge of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A reflexive graph; the distinguished loops are implicit and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub objects: ObjSet,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(objects: ObjSet, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.src >= objects.len() || e.tgt >= objects.len() {
                return Err(Error::UnknownCell(format!("edge {} has an endpoint outside the object set", e.name)));
            }
        }
        Ok(Quiver { objects, edges })
    }

    /// Convenience constructor from `(name, src, tgt)` triples.
    pub fn from_triples(objects: ObjSet, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let edges = edges.iter().map(|&(n, s, t)| Edge { name: n.to_string(), src: s, tgt: t }).collect();
        Quiver::new(objects, edges)
    }

    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.src, e.tgt)).collect()
    }
}

/// Tag alphabet for `k` flavored copies.
pub fn flavor_tags(k: usize) -> Vec<String> {
    match k {
        2 => vec!["s".into(), "t".into()],
        4 => Flavor::ALL.iter().map(|f| f.tag().to_string()).collect(),
        _ => (0..k).map(|i| format!("c{i}")).collect(),
    }
}

/// `k` tagged copies of every edge; edge `e` copy `c` lands at index `e * k + c`.
pub fn quiver_coproduct(q: &Quiver, k: usize) -> Result<Quiver> {
    if k == 0 {
        return Err(Error::IndexOutOfRange { what: "flavor count must be at least 1".into(), index: 0 });
    }
    let tags = flavor_tags(k);
    let mut edges = Vec::with_capacity(q.edges.len() * k);
    for e in &q.edges {
        for t in &tags {
            edges.push(Edge { name: format!("{}_{}", e.name, t), src: e.src, tgt: e.tgt });
        }
    }
    Ok(Quiver { objects: q.objects.clone(), edges })
}

/// Recovers the edges of one flavored copy.
pub fn coproduct_copy(coproduct: &Quiver, k: usize, copy: usize) -> Vec<(usize, usize)> {
    coproduct.edges.iter().skip(copy).step_by(k).map(|e| (e.src, e.tgt)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_tags_and_counts() {
        let q = Quiver::from_triples(ObjSet::numbered(2), &[("a", 0, 1)]).unwrap();
        let c = quiver_coproduct(&q, 4).unwrap();
        let names: Vec<&str> = c.edges.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["a_ss", "a_st", "a_ts", "a_tt"]);
        let empty = Quiver::from_triples(ObjSet::numbered(3), &[]).unwrap();
        assert!(quiver_coproduct(&empty, 4).unwrap().edges.is_empty());
        let three = Quiver::from_triples(ObjSet::numbered(3), &[("a", 0, 1), ("b", 1, 2), ("c", 0, 2)]).unwrap();
        let two = quiver_coproduct(&three, 2).unwrap();
        assert_eq!(two.edges.len(), 6);
        for copy in 0..2 {
            assert_eq!(coproduct_copy(&two, 2, copy), three.endpoints());
        }
    }

    #[test]
    fn objset_rejects_duplicates() {
        assert!(ObjSet::new(["a", "b", "a"]).is_err());
        assert_eq!(ObjSet::new(["x", "y"]).unwrap().index_of("y"), Some(1));
    }
}
