use super::int::Z;
use super::matrix::IntMatrix;

/// Which transformation matrices to accumulate during reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct SnfTracking {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfTracking {
    pub const ALL: SnfTracking = SnfTracking { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: SnfTracking = SnfTracking { u: false, u_inv: false, v: false, v_inv: false };
}

/// Result of a Smith normal form computation: `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Snf {
    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<Z> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form `(U, D, V)` with `U * M * V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let tracking = SnfTracking { u: true, v: true, ..SnfTracking::NONE };
    let s = snf_with(m, tracking);
    (s.u.expect("tracked"), s.d, s.v.expect("tracked"))
}

/// Smith normal form with a caller-chosen set of tracked transforms.
pub fn snf_with(m: &IntMatrix, tracking: SnfTracking) -> Snf {
    let mut r = Reducer::new(m.clone(), tracking);
    r.run();
    r.finish()
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl Reducer {
    fn new(a: IntMatrix, t: SnfTracking) -> Self {
        let (r, c) = (a.rows(), a.cols());
        Reducer {
            u: t.u.then(|| IntMatrix::identity(r)),
            u_inv: t.u_inv.then(|| IntMatrix::identity(r)),
            v: t.v.then(|| IntMatrix::identity(c)),
            v_inv: t.v_inv.then(|| IntMatrix::identity(c)),
            a,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &Z) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-k);
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &Z) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    /// Smallest nonzero entry by absolute value in the trailing block starting
    /// at `(t, t)`, scanning column by column and stopping at the first unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for c in t..self.a.cols() {
            for r in t..self.a.rows() {
                let v = self.a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((r, c));
                }
                let better = match best {
                    None => true,
                    Some((br, bc)) => v.cmp_abs(self.a.get(br, bc)).is_lt(),
                };
                if better {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry among row `t` and column `t` beyond the pivot.
    fn find_cross_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let consider = |r: usize, c: usize, best: &mut Option<(usize, usize)>| {
            let v = self.a.get(r, c);
            if v.is_zero() {
                return;
            }
            let better = match *best {
                None => true,
                Some((br, bc)) => v.cmp_abs(self.a.get(br, bc)).is_lt(),
            };
            if better {
                *best = Some((r, c));
            }
        };
        for r in t + 1..self.a.rows() {
            consider(r, t, &mut best);
        }
        for c in t + 1..self.a.cols() {
            consider(t, c, &mut best);
        }
        best
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < n {
            let Some((pr, pc)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for r in t + 1..self.a.rows() {
                    let v = self.a.get(r, t);
                    if v.is_zero() {
                        continue;
                    }
                    let q = v.div_floor(&p);
                    self.add_row(r, t, &-q);
                    if !self.a.get(r, t).is_zero() {
                        clean = false;
                    }
                }
                for c in t + 1..self.a.cols() {
                    let v = self.a.get(t, c);
                    if v.is_zero() {
                        continue;
                    }
                    let q = v.div_floor(&p);
                    self.add_col(c, t, &-q);
                    if !self.a.get(t, c).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    if let Some((r, c)) = self.find_cross_pivot(t) {
                        if r != t {
                            self.swap_rows(t, r);
                        } else {
                            self.swap_cols(t, c);
                        }
                    }
                    continue;
                }
                if p.is_unit() {
                    break;
                }
                // Enforce the divisibility chain: pull in any row whose block
                // entries the pivot does not divide.
                let offending =
                    (t + 1..self.a.rows()).find(|&r| (t + 1..self.a.cols()).any(|c| !p.divides(self.a.get(r, c))));
                match offending {
                    Some(r) => self.add_row(t, r, &Z::ONE),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    fn finish(self) -> Snf {
        let n = self.a.rows().min(self.a.cols());
        let rank = (0..n).take_while(|&i| !self.a.get(i, i).is_zero()).count();
        Snf { d: self.a, rank, u: self.u, u_inv: self.u_inv, v: self.v, v_inv: self.v_inv }
    }
}
