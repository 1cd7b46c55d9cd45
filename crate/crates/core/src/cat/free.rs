use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FinCat, Morphism, Quiver};
use crate::error::{Error, Result};
use crate::zmod::Z;

/// Path in a quiver, stored source-first. An empty path is the identity at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn identity(a: usize) -> Self {
        Path { src: a, tgt: a, edges: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.tgt != other.src {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { src: self.src, tgt: other.tgt, edges })
    }

    /// Applicative-order name such as `e12·e01`.
    pub fn name(&self, q: &Quiver) -> String {
        if self.edges.is_empty() {
            return format!("id_{}", q.objects.name(self.src));
        }
        let parts: Vec<&str> = self.edges.iter().rev().map(|&e| q.edges[e].name.as_str()).collect();
        parts.join("·")
    }
}

/// A directed cycle as a list of edge indices, if one exists.
pub fn find_cycle(n_objects: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n_objects];
    for (i, &(s, _)) in edges.iter().enumerate() {
        out[s].push(i);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n_objects];
    let mut via: Vec<Option<usize>> = vec![None; n_objects];
    for root in 0..n_objects {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out[v].len() {
                let e = out[v][*next];
                *next += 1;
                let w = edges[e].1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        via[w] = Some(e);
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![e];
                        let mut x = v;
                        while x != w {
                            let pe = via[x].expect("on stack");
                            cycle.push(pe);
                            x = edges[pe].0;
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Number of nonempty directed paths, by summing powers of the adjacency matrix.
/// Returns `None` for a cyclic quiver (infinitely many paths).
pub fn count_paths_transfer(n_objects: usize, edges: &[(usize, usize)]) -> Option<Z> {
    count_paths_weighted(n_objects, &edges.iter().map(|&(s, t)| (s, t, Z::ONE)).collect::<Vec<_>>())
        .map(|m| m.iter().flatten().fold(Z::ZERO, |acc, x| &acc + x))
}

/// Matrix of path counts `sum_{L>=1} A^L` for a weighted adjacency list.
pub fn count_paths_weighted(n: usize, edges: &[(usize, usize, Z)]) -> Option<Vec<Vec<Z>>> {
    let pairs: Vec<(usize, usize)> = edges.iter().filter(|e| !e.2.is_zero()).map(|e| (e.0, e.1)).collect();
    if find_cycle(n, &pairs).is_some() {
        return None;
    }
    let mut a = vec![vec![Z::ZERO; n]; n];
    for (s, t, w) in edges {
        a[*s][*t] += w;
    }
    let mut total = a.clone();
    let mut power = a.clone();
    for _ in 1..n.max(1) {
        let mut next = vec![vec![Z::ZERO; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        next[i][j].add_mul(&power[i][k], &a[k][j]);
                    }
                }
            }
        }
        if next.iter().flatten().all(Z::is_zero) {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                total[i][j] += &next[i][j];
            }
        }
        power = next;
    }
    Some(total)
}

/// Free category on a quiver, with a stored acyclicity certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCat {
    pub generators: Quiver,
    pub acyclic: bool,
}

impl FreeCat {
    pub fn new(generators: Quiver) -> Self {
        let acyclic = find_cycle(generators.objects.len(), &generators.endpoints()).is_none();
        FreeCat { generators, acyclic }
    }

    fn cycle_error(&self) -> Error {
        let cycle = find_cycle(self.generators.objects.len(), &self.generators.endpoints()).unwrap_or_default();
        Error::CyclicQuiver { witness: cycle.iter().map(|&e| self.generators.edges[e].name.clone()).collect() }
    }

    /// Tabulates the free category: identities first, then the nonempty paths in
    /// enumeration order. Also returns the path of every morphism.
    pub fn to_fincat(&self) -> Result<(FinCat, Vec<Path>)> {
        let q = &self.generators;
        let paths = free_enumerate(self)?;
        let n = q.objects.len();
        let mut all: Vec<Path> = (0..n).map(Path::identity).collect();
        all.extend(paths);
        let index: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let morphisms = all.iter().map(|p| Morphism { name: p.name(q), src: p.src, tgt: p.tgt }).collect();
        let mut composition = HashMap::new();
        for (i, p) in all.iter().enumerate() {
            for (j, r) in all.iter().enumerate() {
                if let Some(pr) = p.then(r) {
                    let k = if pr.is_identity() { pr.src } else { index[&pr] };
                    composition.insert((i, j), k);
                }
            }
        }
        let cat = FinCat { objects: q.objects.clone(), morphisms, identities: (0..n).collect(), composition };
        Ok((cat, all))
    }
}

/// All nonempty paths, ordered by length and then lexicographically by edge index.
pub fn free_enumerate(f: &FreeCat) -> Result<Vec<Path>> {
    if !f.acyclic {
        return Err(f.cycle_error());
    }
    let q = &f.generators;
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); q.objects.len()];
    for (i, e) in q.edges.iter().enumerate() {
        by_src[e.src].push(i);
    }
    let mut out: Vec<Path> = Vec::new();
    let mut frontier: Vec<Path> =
        (0..q.edges.len()).map(|i| Path { src: q.edges[i].src, tgt: q.edges[i].tgt, edges: vec![i] }).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in &by_src[p.tgt] {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(Path { src: p.src, tgt: q.edges[e].tgt, edges });
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    Ok(out)
}
