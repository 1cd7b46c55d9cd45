//! Cocycle lattices of finite levels, computed modulo the exponent of the level.
//!
//! When every summand of a level is finite with orders dividing `e`, the
//! lattice of integer cocycles contains `e·Z^n`. Generators can then be kept
//! reduced modulo `e`, which avoids the coefficient growth of elimination
//! over `Z`, and a Hermite basis is extracted at the end.

use super::group::{AbHom, CyclicSum};
use super::int::Z;

/// Largest exponent handled here; products of two residues stay in `i64`.
const MAX_EXPONENT: i64 = 1 << 30;

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// `a·x + b·y` reduced modulo `e`, entrywise.
fn combine(x: &[i64], a: i64, y: &[i64], b: i64, e: i64) -> Vec<i64> {
    let (a, b) = (a.rem_euclid(e), b.rem_euclid(e));
    x.iter().zip(y).map(|(&u, &v)| (a * u + b * v).rem_euclid(e)).collect()
}

/// Brings the values of all listed generators into the first one, leaving the
/// others with value zero. Returns the value left on the first generator.
fn merge_values(gens: &mut [Vec<i64>], picks: &[(usize, i64)], e: i64) -> i64 {
    let (a, mut va) = picks[0];
    for &(b, vb) in &picks[1..] {
        if vb % va == 0 {
            let q = vb / va;
            gens[b] = combine(&gens[b], 1, &gens[a], -q, e);
            continue;
        }
        let (g, s, t) = ext_gcd(va, vb);
        let new_a = combine(&gens[a], s, &gens[b], t, e);
        let new_b = combine(&gens[a], -(vb / g), &gens[b], va / g, e);
        gens[a] = new_a;
        gens[b] = new_b;
        va = g;
    }
    va
}

/// Hermite basis of the cocycle lattice `{x : outgoing(x) = 0}` of a finite
/// level: row `i` has its first nonzero entry, a positive divisor of the
/// exponent, at column `i`. Returns `None` when the level has a free summand
/// or its exponent is too large for the residue arithmetic.
pub(crate) fn finite_cocycle_basis(level: &CyclicSum, outgoing: &AbHom) -> Option<Vec<Vec<Z>>> {
    let n = level.len();
    let mut e = 1i64;
    for m in level.moduli() {
        let m = m.to_i64()?.abs();
        if m == 0 {
            return None;
        }
        e = e / gcd(e, m) * m;
        if e > MAX_EXPONENT {
            return None;
        }
    }
    let mut gens: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1 % e;
            v
        })
        .collect();
    let target = &outgoing.codomain;
    for r in 0..outgoing.matrix.rows() {
        let t = target.modulus(r).to_i64()?.abs();
        let row: Vec<(usize, i64)> = outgoing
            .matrix
            .row(r)
            .iter()
            .filter_map(|(c, v)| {
                let v =
                    if t == 0 { v.to_i64() } else { Some(v.rem_euclid(&Z::from(t)).to_i64().expect("small residue")) };
                v.map(|v| (*c as usize, v))
            })
            .collect();
        if row.len() != outgoing.matrix.row(r).len() {
            return None;
        }
        if t == 0 {
            // A map from a finite level into a free summand is zero.
            if row.iter().any(|&(_, v)| v != 0) {
                return None;
            }
            continue;
        }
        if t > MAX_EXPONENT || row.iter().all(|&(_, v)| v == 0) {
            if t > MAX_EXPONENT {
                return None;
            }
            continue;
        }
        let mut picks: Vec<(usize, i64)> = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            let mut acc = 0i64;
            for &(k, c) in &row {
                acc = (acc + c * g[k]) % t;
            }
            if acc != 0 {
                picks.push((j, acc));
            }
        }
        if picks.is_empty() {
            continue;
        }
        let pos = (0..picks.len()).min_by_key(|&i| picks[i].1).expect("nonempty");
        picks.swap(0, pos);
        let va = merge_values(&mut gens, &picks, e);
        let s = t / gcd(va, t);
        if s != 1 {
            let a = picks[0].0;
            for x in gens[a].iter_mut() {
                *x = (*x * s) % e;
            }
        }
    }
    Some(hermite_mod(gens, n, e).into_iter().map(|row| row.into_iter().map(Z::from).collect()).collect())
}

/// Hermite basis of the lattice spanned by `gens` together with `e·Z^n`.
fn hermite_mod(mut gens: Vec<Vec<i64>>, n: usize, e: i64) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::with_capacity(n);
    for col in 0..n {
        let picks: Vec<(usize, i64)> =
            gens.iter().enumerate().filter(|(_, g)| g[col] != 0).map(|(j, g)| (j, g[col])).collect();
        let mut pivot = if picks.is_empty() {
            let mut v = vec![0i64; n];
            v[col] = e;
            v
        } else {
            let mut picks = picks;
            let pos = (0..picks.len()).min_by_key(|&i| picks[i].1).expect("nonempty");
            picks.swap(0, pos);
            let a = picks[0].0;
            let va = merge_values(&mut gens, &picks, e);
            debug_assert_eq!(gens[a][col], va);
            let p = gens.swap_remove(a);
            // Combine with e·e_col: the pivot becomes gcd(va, e) and the
            // second row of the unimodular change stays a generator.
            let (g, s, _) = ext_gcd(va, e);
            let mut rest: Vec<i64> = p.iter().map(|&x| (-(e / g) * x).rem_euclid(e)).collect();
            rest[col] = 0;
            if rest.iter().any(|&x| x != 0) {
                gens.push(rest);
            }
            let mut piv: Vec<i64> = p.iter().map(|&x| (s * x).rem_euclid(e)).collect();
            piv[col] = g;
            piv
        };
        // Reduce the tail modulo e; the dropped multiples lie in later rows.
        for x in pivot.iter_mut().skip(col + 1) {
            *x = x.rem_euclid(e);
        }
        basis.push(pivot);
    }
    basis
}

/// Coordinates of `x` in a Hermite basis, if `x` lies in its span.
pub(crate) fn hermite_coords(basis: &[Vec<Z>], x: &[Z]) -> Option<Vec<Z>> {
    let mut rest = x.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for (i, row) in basis.iter().enumerate() {
        let v = &rest[i];
        if v.is_zero() {
            out.push(Z::ZERO);
            continue;
        }
        let d = &row[i];
        if !d.divides(v) {
            return None;
        }
        let c = v.div_exact(d);
        for (r, b) in rest.iter_mut().zip(row).skip(i) {
            if !b.is_zero() {
                r.sub_mul(&c, b);
            }
        }
        out.push(c);
    }
    rest.iter().all(Z::is_zero).then_some(out)
}
