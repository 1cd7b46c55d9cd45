//! Truncated double nerve and classifying space of a finite track category,
//! and simplicial cohomology with constant coefficients.
//!
//! Simplices are numbered per dimension. Face and degeneracy maps are stored
//! as index tables: `faces[n][i][x]` is the index of `d_i` of the `n`-simplex
//! `x`, and `degeneracies[n][j][x]` the index of `s_j` of it.
//!
//! # Incidence format
//!
//! [`SimplicialSetTrunc::to_incidence`] writes one record per line:
//!
//! ```text
//! simplicial-set 1
//! depth <D>
//! size <n> <number of n-simplices>              for n = 0..=D
//! face <n> <i> <d_i of simplex 0> <d_i of simplex 1> ...          for 1 <= n <= D
//! degeneracy <n> <j> <s_j of simplex 0> <s_j of simplex 1> ...    for n < D
//! ```

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cat::FinCat;
use crate::error::{Error, Result};
use crate::track::FinTrackCategory;
use crate::validation::ValidationReport;
use crate::zmod::{AbHom, CochainComplexZ, CyclicSum, FinAbGroup, SparseMatrix, Z};

/// A simplicial set stored in dimensions `0..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSetTrunc {
    pub sizes: Vec<usize>,
    /// `faces[n][i]` for `1 <= n <= depth`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<u32>>>,
    /// `degeneracies[n][j]` for `n < depth`.
    pub degeneracies: Vec<Vec<Vec<u32>>>,
}

impl SimplicialSetTrunc {
    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x] as usize
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.degeneracies[n][j][x] as usize
    }

    /// Flags the `n`-simplices that are not a degeneracy of an `(n-1)`-simplex.
    pub fn nondegenerate(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![true; self.sizes[n]];
        if n > 0 {
            for table in &self.degeneracies[n - 1] {
                for &y in table {
                    flags[y as usize] = false;
                }
            }
        }
        flags
    }

    pub fn count_nondegenerate(&self, n: usize) -> usize {
        self.nondegenerate(n).iter().filter(|&&b| b).count()
    }

    /// Exhaustive check of the simplicial identities on all stored dimensions.
    pub fn check_identities(&self) -> ValidationReport {
        let mut r = ValidationReport::new("simplicial identities");
        check_simplicial(&mut r, &self.sizes, |n, i, x| self.face(n, i, x), |n, j, x| self.degeneracy(n, j, x), "");
        r
    }

    /// The incidence text described in the module documentation.
    pub fn to_incidence(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "simplicial-set 1");
        let _ = writeln!(out, "depth {}", self.depth());
        for (n, s) in self.sizes.iter().enumerate() {
            let _ = writeln!(out, "size {n} {s}");
        }
        let mut line = |head: String, t: &[u32]| {
            out.push_str(&head);
            for v in t {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        };
        for n in 1..=self.depth() {
            for (i, t) in self.faces[n].iter().enumerate() {
                line(format!("face {n} {i}"), t);
            }
        }
        for n in 0..self.depth() {
            for (j, t) in self.degeneracies[n].iter().enumerate() {
                line(format!("degeneracy {n} {j}"), t);
            }
        }
        out
    }
}

/// Checks `d_i d_j = d_(j-1) d_i` for `i < j`, the mixed identities and
/// `s_i s_j = s_(j+1) s_i` for `i <= j`, within dimensions `0..sizes.len()`.
fn check_simplicial(
    r: &mut ValidationReport,
    sizes: &[usize],
    face: impl Fn(usize, usize, usize) -> usize,
    degen: impl Fn(usize, usize, usize) -> usize,
    label: &str,
) {
    let depth = sizes.len() - 1;
    for (n, &size) in sizes.iter().enumerate().skip(2) {
        for x in 0..size {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = face(n - 1, i, face(n, j, x));
                    let rhs = face(n - 1, j - 1, face(n, i, x));
                    r.check(lhs == rhs, || format!("{label}d{i} d{j} != d{} d{i} on {n}-simplex {x}", j - 1));
                }
            }
        }
    }
    for (n, &size) in sizes.iter().enumerate().take(depth) {
        for x in 0..size {
            for j in 0..=n {
                let y = degen(n, j, x);
                for i in 0..=n + 1 {
                    let lhs = face(n + 1, i, y);
                    let rhs = if i < j {
                        degen(n - 1, j - 1, face(n, i, x))
                    } else if i == j || i == j + 1 {
                        x
                    } else {
                        degen(n - 1, j, face(n, i - 1, x))
                    };
                    r.check(lhs == rhs, || format!("{label}d{i} s{j} on {n}-simplex {x}"));
                }
                if n + 1 < depth {
                    for i in 0..=j {
                        let lhs = degen(n + 1, i, y);
                        let rhs = degen(n + 1, j + 1, degen(n, i, x));
                        r.check(lhs == rhs, || format!("{label}s{i} s{j} != s{} s{i} on {n}-simplex {x}", j + 1));
                    }
                }
            }
        }
    }
}

/// Key of a `(p, q)` element: `[object]` when `p = 0`, otherwise the `p`
/// stacks one after the other, each as its base 1-cell followed by its `q`
/// vertically composable 2-cells.
type Key = Vec<u32>;

/// The double nerve in bidegrees `(p, q)` with `p, q <= depth`: `p` is the
/// horizontal (categorical) direction and `q` the vertical (groupoid) one.
#[derive(Clone, Debug)]
pub struct BisimplicialTrunc {
    pub depth: usize,
    /// `elements[p][q]`, keys as described for [`Key`].
    pub elements: Vec<Vec<Vec<Key>>>,
    /// `hface[p][q][i]: (p, q) -> (p - 1, q)`.
    pub hface: Vec<Vec<Vec<Vec<u32>>>>,
    /// `vface[p][q][j]: (p, q) -> (p, q - 1)`.
    pub vface: Vec<Vec<Vec<Vec<u32>>>>,
    /// `hdeg[p][q][i]: (p, q) -> (p + 1, q)`.
    pub hdeg: Vec<Vec<Vec<Vec<u32>>>>,
    /// `vdeg[p][q][j]: (p, q) -> (p, q + 1)`.
    pub vdeg: Vec<Vec<Vec<Vec<u32>>>>,
}

impl BisimplicialTrunc {
    pub fn size(&self, p: usize, q: usize) -> usize {
        self.elements[p][q].len()
    }

    /// Horizontal and vertical simplicial identities and the commutation of
    /// horizontal with vertical operators.
    pub fn check_identities(&self) -> ValidationReport {
        let d = self.depth;
        let mut r = ValidationReport::new("bisimplicial identities");
        for q in 0..=d {
            let sizes: Vec<usize> = (0..=d).map(|p| self.size(p, q)).collect();
            check_simplicial(
                &mut r,
                &sizes,
                |p, i, x| self.hface[p][q][i][x] as usize,
                |p, i, x| self.hdeg[p][q][i][x] as usize,
                &format!("row {q}: "),
            );
        }
        for p in 0..=d {
            let sizes: Vec<usize> = (0..=d).map(|q| self.size(p, q)).collect();
            check_simplicial(
                &mut r,
                &sizes,
                |q, j, x| self.vface[p][q][j][x] as usize,
                |q, j, x| self.vdeg[p][q][j][x] as usize,
                &format!("column {p}: "),
            );
        }
        for p in 0..=d {
            for q in 0..=d {
                for x in 0..self.size(p, q) {
                    self.check_commutation(&mut r, p, q, x);
                }
            }
        }
        r
    }

    fn h_op(&self, face: bool, p: usize, q: usize, i: usize, x: usize) -> usize {
        let t = if face { &self.hface } else { &self.hdeg };
        t[p][q][i][x] as usize
    }

    fn v_op(&self, face: bool, p: usize, q: usize, j: usize, x: usize) -> usize {
        let t = if face { &self.vface } else { &self.vdeg };
        t[p][q][j][x] as usize
    }

    fn check_commutation(&self, r: &mut ValidationReport, p: usize, q: usize, x: usize) {
        let d = self.depth;
        for h_face in [true, false] {
            let Some(p2) = (if h_face { p.checked_sub(1) } else { (p < d).then_some(p + 1) }) else { continue };
            for v_face in [true, false] {
                let Some(q2) = (if v_face { q.checked_sub(1) } else { (q < d).then_some(q + 1) }) else { continue };
                for i in 0..=p {
                    for j in 0..=q {
                        let lhs = self.h_op(h_face, p, q2, i, self.v_op(v_face, p, q, j, x));
                        let rhs = self.v_op(v_face, p2, q, j, self.h_op(h_face, p, q, i, x));
                        r.check(lhs == rhs, || {
                            format!("horizontal {i} and vertical {j} do not commute at ({p}, {q}) element {x}")
                        });
                    }
                }
            }
        }
    }
}

struct NerveBuilder<'a> {
    x: &'a FinTrackCategory,
}

impl NerveBuilder<'_> {
    fn stack_vertex(&self, st: &[u32], k: usize) -> u32 {
        if k == 0 {
            st[0]
        } else {
            self.x.d1[st[k] as usize] as u32
        }
    }

    fn stack_vface(&self, st: &[u32], j: usize) -> Key {
        let q = st.len() - 1;
        if j == 0 {
            let mut out = vec![self.x.d1[st[1] as usize] as u32];
            out.extend_from_slice(&st[2..]);
            out
        } else if j == q {
            st[..q].to_vec()
        } else {
            let c = self.x.vcompose(st[j] as usize, st[j + 1] as usize).expect("stack cells are composable");
            let mut out = st[..j].to_vec();
            out.push(c as u32);
            out.extend_from_slice(&st[j + 2..]);
            out
        }
    }

    fn stack_vdeg(&self, st: &[u32], j: usize) -> Key {
        let v = self.stack_vertex(st, j);
        let mut out = st[..=j].to_vec();
        out.push(self.x.s0[v as usize] as u32);
        out.extend_from_slice(&st[j + 1..]);
        out
    }

    fn stack_hcompose(&self, a: &[u32], b: &[u32]) -> Key {
        let base = self.x.one.compose(a[0] as usize, b[0] as usize).expect("chain is composable");
        let mut out = vec![base as u32];
        for (&s, &t) in a[1..].iter().zip(&b[1..]) {
            out.push(self.x.hcomp(s as usize, t as usize).expect("2-cells over composable 1-cells compose") as u32);
        }
        out
    }

    fn identity_stack(&self, obj: usize, q: usize) -> Key {
        let mut out = vec![self.x.one.identity(obj) as u32];
        out.extend(std::iter::repeat_n(self.x.unit_cell(obj) as u32, q));
        out
    }

    fn chain_vertex(&self, key: &[u32], q: usize, k: usize) -> usize {
        if k == 0 {
            self.x.one.src(key[0] as usize)
        } else {
            self.x.one.tgt(key[(k - 1) * (q + 1)] as usize)
        }
    }

    fn hface(&self, key: &[u32], p: usize, q: usize, i: usize) -> Key {
        let w = q + 1;
        if p == 1 {
            let u = key[0] as usize;
            let obj = if i == 0 { self.x.one.tgt(u) } else { self.x.one.src(u) };
            return vec![obj as u32];
        }
        if i == 0 {
            key[w..].to_vec()
        } else if i == p {
            key[..(p - 1) * w].to_vec()
        } else {
            let mut out = key[..(i - 1) * w].to_vec();
            out.extend(self.stack_hcompose(&key[(i - 1) * w..i * w], &key[i * w..(i + 1) * w]));
            out.extend_from_slice(&key[(i + 1) * w..]);
            out
        }
    }

    fn hdeg(&self, key: &[u32], p: usize, q: usize, i: usize) -> Key {
        let w = q + 1;
        if p == 0 {
            return self.identity_stack(key[0] as usize, q);
        }
        let obj = self.chain_vertex(key, q, i);
        let mut out = key[..i * w].to_vec();
        out.extend(self.identity_stack(obj, q));
        out.extend_from_slice(&key[i * w..]);
        out
    }

    fn vface(&self, key: &[u32], p: usize, q: usize, j: usize) -> Key {
        if p == 0 {
            return key.to_vec();
        }
        key.chunks(q + 1).flat_map(|st| self.stack_vface(st, j)).collect()
    }

    fn vdeg(&self, key: &[u32], p: usize, q: usize, j: usize) -> Key {
        if p == 0 {
            return key.to_vec();
        }
        key.chunks(q + 1).flat_map(|st| self.stack_vdeg(st, j)).collect()
    }

    /// Vertical stacks of height `q`, grouped by source object.
    fn stacks(&self, q: usize) -> Vec<Vec<Key>> {
        let x = self.x;
        let from = x.cells_from();
        let mut layer: Vec<Key> = (0..x.one.len()).map(|u| vec![u as u32]).collect();
        for _ in 0..q {
            layer = layer
                .iter()
                .flat_map(|st| {
                    let top = self.stack_vertex(st, st.len() - 1) as usize;
                    from[top].iter().map(move |&c| {
                        let mut s = st.clone();
                        s.push(c as u32);
                        s
                    })
                })
                .collect();
        }
        let mut by_src = vec![Vec::new(); x.n_objects()];
        for st in layer {
            by_src[x.one.src(st[0] as usize)].push(st);
        }
        by_src
    }

    fn elements(&self, p: usize, stacks: &[Vec<Key>]) -> Vec<Key> {
        let n_obj = self.x.n_objects();
        if p == 0 {
            return (0..n_obj).map(|o| vec![o as u32]).collect();
        }
        let mut chains: Vec<(Key, usize)> =
            stacks.iter().flatten().map(|st| (st.clone(), self.x.one.tgt(st[0] as usize))).collect();
        for _ in 1..p {
            chains = chains
                .into_iter()
                .flat_map(|(c, end)| {
                    stacks[end].iter().map(move |st| {
                        let mut c2 = c.clone();
                        c2.extend_from_slice(st);
                        (c2, self.x.one.tgt(st[0] as usize))
                    })
                })
                .collect();
        }
        chains.into_iter().map(|(c, _)| c).collect()
    }
}

fn lookup<K: std::hash::Hash + Eq + std::fmt::Debug>(index: &HashMap<K, u32>, key: &K, what: &str) -> u32 {
    *index.get(key).unwrap_or_else(|| panic!("{what} leaves the enumerated set: {key:?}"))
}

/// The double nerve of `x` in bidegrees up to `(depth, depth)`.
pub fn double_nerve(x: &FinTrackCategory, depth: usize) -> BisimplicialTrunc {
    let b = NerveBuilder { x };
    let stacks: Vec<Vec<Vec<Key>>> = (0..=depth).map(|q| b.stacks(q)).collect();
    let elements: Vec<Vec<Vec<Key>>> =
        (0..=depth).map(|p| (0..=depth).map(|q| b.elements(p, &stacks[q])).collect()).collect();
    let index: Vec<Vec<HashMap<Key, u32>>> = elements
        .iter()
        .map(|row| row.iter().map(|es| es.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect()).collect())
        .collect();
    let table = |p: usize, q: usize, count: usize, tp: usize, tq: usize, op: &dyn Fn(&[u32], usize) -> Key| {
        (0..count)
            .map(|i| elements[p][q].iter().map(|k| lookup(&index[tp][tq], &op(k, i), "operator")).collect())
            .collect::<Vec<Vec<u32>>>()
    };
    let grid = |f: &dyn Fn(usize, usize) -> Vec<Vec<u32>>| {
        (0..=depth).map(|p| (0..=depth).map(|q| f(p, q)).collect()).collect::<Vec<Vec<_>>>()
    };
    let hface = grid(&|p, q| {
        if p == 0 {
            Vec::new()
        } else {
            table(p, q, p + 1, p - 1, q, &|k, i| b.hface(k, p, q, i))
        }
    });
    let vface = grid(&|p, q| {
        if q == 0 {
            Vec::new()
        } else {
            table(p, q, q + 1, p, q - 1, &|k, j| b.vface(k, p, q, j))
        }
    });
    let hdeg = grid(&|p, q| {
        if p == depth {
            Vec::new()
        } else {
            table(p, q, p + 1, p + 1, q, &|k, i| b.hdeg(k, p, q, i))
        }
    });
    let vdeg = grid(&|p, q| {
        if q == depth {
            Vec::new()
        } else {
            table(p, q, q + 1, p, q + 1, &|k, j| b.vdeg(k, p, q, j))
        }
    });
    BisimplicialTrunc { depth, elements, hface, vface, hdeg, vdeg }
}

/// The diagonal: `n`-simplices are the `(n, n)` elements, `d_i` is the
/// horizontal `d_i` after the vertical `d_i`, and likewise for `s_i`.
pub fn diag(b: &BisimplicialTrunc) -> SimplicialSetTrunc {
    let d = b.depth;
    let sizes: Vec<usize> = (0..=d).map(|n| b.size(n, n)).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        faces.push(
            (0..=n)
                .map(|i| {
                    let v = &b.vface[n][n][i];
                    let h = &b.hface[n][n - 1][i];
                    v.iter().map(|&y| h[y as usize]).collect()
                })
                .collect(),
        );
    }
    let degeneracies = (0..d)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let v = &b.vdeg[n][n][j];
                    let h = &b.hdeg[n][n + 1][j];
                    v.iter().map(|&y| h[y as usize]).collect()
                })
                .collect()
        })
        .collect();
    SimplicialSetTrunc { sizes, faces, degeneracies }
}

/// The classifying space `diag(double_nerve(x))` up to dimension `depth`.
pub fn classifying_space(x: &FinTrackCategory, depth: usize) -> SimplicialSetTrunc {
    diag(&double_nerve(x, depth))
}

/// The nerve of a finite category: `n`-simplices are source-first chains of
/// `n` composable morphisms, identities included.
pub fn categorical_nerve(c: &FinCat, depth: usize) -> SimplicialSetTrunc {
    let by_src = c.by_source();
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..c.objects.len()).map(|o| vec![o]).collect()];
    for n in 1..=depth {
        let next: Vec<Vec<usize>> = if n == 1 {
            (0..c.len()).map(|u| vec![u]).collect()
        } else {
            chains[n - 1]
                .iter()
                .flat_map(|ch| {
                    let end = c.tgt(*ch.last().expect("nonempty chain"));
                    by_src[end].iter().map(move |&u| {
                        let mut ch2 = ch.clone();
                        ch2.push(u);
                        ch2
                    })
                })
                .collect()
        };
        chains.push(next);
    }
    let index: Vec<HashMap<Vec<usize>, u32>> =
        chains.iter().map(|level| level.iter().enumerate().map(|(i, ch)| (ch.clone(), i as u32)).collect()).collect();
    let vertex = |ch: &[usize], n: usize, k: usize| -> usize {
        if n == 0 {
            ch[0]
        } else if k == 0 {
            c.src(ch[0])
        } else {
            c.tgt(ch[k - 1])
        }
    };
    let face = |ch: &[usize], n: usize, i: usize| -> Vec<usize> {
        if n == 1 {
            return vec![if i == 0 { c.tgt(ch[0]) } else { c.src(ch[0]) }];
        }
        if i == 0 {
            ch[1..].to_vec()
        } else if i == n {
            ch[..n - 1].to_vec()
        } else {
            let mut out = ch[..i - 1].to_vec();
            out.push(c.compose(ch[i - 1], ch[i]).expect("chain is composable"));
            out.extend_from_slice(&ch[i + 1..]);
            out
        }
    };
    let degen = |ch: &[usize], n: usize, j: usize| -> Vec<usize> {
        let id = c.identity(vertex(ch, n, j));
        if n == 0 {
            return vec![id];
        }
        let mut out = ch[..j].to_vec();
        out.push(id);
        out.extend_from_slice(&ch[j..]);
        out
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=depth {
        faces.push(
            (0..=n)
                .map(|i| chains[n].iter().map(|ch| lookup(&index[n - 1], &face(ch, n, i), "face")).collect())
                .collect(),
        );
    }
    let degeneracies = (0..depth)
        .map(|n| {
            (0..=n)
                .map(|j| chains[n].iter().map(|ch| lookup(&index[n + 1], &degen(ch, n, j), "degeneracy")).collect())
                .collect()
        })
        .collect();
    SimplicialSetTrunc { sizes: chains.iter().map(Vec::len).collect(), faces, degeneracies }
}

/// `H^0 ..= H^max_degree` of `s` with coefficients in `a`, from cochains on
/// nondegenerate simplices.
pub fn const_cohomology(s: &SimplicialSetTrunc, a: &FinAbGroup, max_degree: usize) -> Result<Vec<FinAbGroup>> {
    if s.depth() < max_degree + 1 {
        return Err(Error::TruncationTooShallow { depth: s.depth(), degree: max_degree });
    }
    let g = a.as_cyclic_sum();
    let top = max_degree + 1;
    let mut positions: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
    let mut levels: Vec<CyclicSum> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut next = 0usize;
        let pos: Vec<Option<usize>> = s
            .nondegenerate(n)
            .into_iter()
            .map(|nd| {
                nd.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        let moduli: Vec<Z> = (0..next).flat_map(|_| g.moduli().iter().cloned()).collect();
        levels.push(CyclicSum::new(moduli));
        positions.push(pos);
    }
    let k = g.len();
    let mut diffs = Vec::with_capacity(top);
    for n in 0..top {
        let mut mat = SparseMatrix::new(levels[n + 1].len(), levels[n].len());
        for (x, row) in positions[n + 1].iter().enumerate() {
            let Some(row) = row else { continue };
            for i in 0..=n + 1 {
                let Some(col) = positions[n][s.face(n + 1, i, x)] else { continue };
                let sign = if i % 2 == 0 { Z::ONE } else { Z::from(-1) };
                for t in 0..k {
                    mat.push(row * k + t, col * k + t, sign.clone());
                }
            }
        }
        mat.normalize();
        diffs.push(AbHom::new(levels[n].clone(), levels[n + 1].clone(), mat));
    }
    let complex = CochainComplexZ::new(levels, diffs)?;
    (0..=max_degree).map(|n| Ok(complex.cohomology_at(n)?)).collect()
}
