//! Ranks of sparse matrices over a prime field, for cochain levels whose
//! non-trivial summands all have the same prime order.

use std::collections::HashMap;

use super::group::CyclicSum;
use super::int::Z;
use super::matrix::SparseMatrix;

/// Largest prime handled; products of two residues stay in `i64`.
const MAX_PRIME: i64 = 1 << 31;

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The common order `p` of the non-trivial summands when it is a prime.
/// A level with only trivial summands matches any prime and gives `Some(None)`.
pub(crate) fn uniform_prime(level: &CyclicSum) -> Option<Option<i64>> {
    let mut p = None;
    for m in level.moduli() {
        if m.is_one() {
            continue;
        }
        let v = m.to_i64()?;
        match p {
            None if is_prime(v) && v < MAX_PRIME => p = Some(v),
            Some(q) if q == v => {}
            _ => return None,
        }
    }
    Some(p)
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    let (mut r, mut b, mut e) = (1i64, a, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` of the listed rows of `m`, by sparse elimination with
/// pivots keyed on their leading column.
pub(crate) fn rank_mod_p(m: &SparseMatrix, rows: impl IntoIterator<Item = usize>, p: i64) -> usize {
    let zp = Z::from(p);
    let mut pivots: HashMap<u32, Vec<(u32, i64)>> = HashMap::new();
    for r in rows {
        let mut row: Vec<(u32, i64)> = m
            .row(r)
            .iter()
            .map(|(c, v)| (*c, v.rem_euclid(&zp).to_i64().expect("residue below p")))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, lv)) = row.first() {
            let Some(pivot) = pivots.get(&lead) else {
                let k = inverse_mod(lv, p);
                for x in row.iter_mut() {
                    x.1 = x.1 * k % p;
                }
                pivots.insert(lead, row);
                break;
            };
            // Pivot rows are monic, so subtracting lv times the pivot clears the lead.
            let mut out = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot.len() {
                if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
                    out.push(row[i]);
                    i += 1;
                } else if i == row.len() || pivot[j].0 < row[i].0 {
                    out.push((pivot[j].0, (p - lv * pivot[j].1 % p) % p));
                    j += 1;
                } else {
                    let v = (row[i].1 - lv * pivot[j].1 % p).rem_euclid(p);
                    if v != 0 {
                        out.push((row[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            row = out;
        }
    }
    pivots.len()
}
