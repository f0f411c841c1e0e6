//! Exact integer linear algebra: dense arbitrary-precision matrices, Smith
//! normal form with transformation matrices, kernels, cokernels with explicit
//! bases, induced quotient maps, ranks and eventual ranks.
//!
//! Everything here is exact; there is no floating point anywhere. Sizes are
//! desk scale (at most a few hundred rows), so the representation is dense
//! and the algorithms are the classical ones.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZMatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("induced map is not well defined: image of relation column {column} does not lie in the source relation image")]
    InducedMapIllDefined { column: usize },
}

/// Dense integer matrix, row-major, arbitrary precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: &BigInt) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product dimension mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = a * b;
                        out.add_assign_at(i, j, &v);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> IntMatrix {
        assert!(self.is_square());
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn column_slice(&self, lo: usize, hi: usize) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, hi - lo);
        for i in 0..self.rows {
            for j in lo..hi {
                out.set(i, j - lo, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> IntMatrix {
        let mut out = IntMatrix::zero(hi - lo, self.cols);
        for i in lo..hi {
            for j in 0..self.cols {
                out.set(i - lo, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = IntMatrix::zero(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Fixed bracketed text format used by the CLI and the golden tests:
    /// one row per line, `[ e1 e2 ... ]`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            s.push('[');
            for j in 0..self.cols {
                s.push(' ');
                s.push_str(&self.get(i, j).to_string());
            }
            s.push_str(" ]\n");
        }
        if self.rows == 0 {
            s.push_str("[ ]\n");
        }
        s
    }

    /// Parse the bracketed text format back. Accepts exactly what
    /// `to_text` produces (an all-blank `[ ]` means a 0-row matrix).
    pub fn parse_text(text: &str) -> Result<IntMatrix, ZMatrixError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let inner = line
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| ZMatrixError::DimensionMismatch(format!("bad row: {line}")))?;
            let row: Result<Vec<BigInt>, _> = inner
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| ZMatrixError::DimensionMismatch(format!("bad entry: {tok}")))
                })
                .collect();
            let row = row?;
            if !row.is_empty() {
                rows.push(row);
            }
        }
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(ZMatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

/// Smith normal form `S = U * M * V` with unimodular `U`, `V`.
/// Inverses are carried along so that kernel and cokernel bases come out
/// without a separate inversion step.
#[derive(Debug, Clone)]
pub struct SNFResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SNFResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// The nonzero invariant factors d1 | d2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

struct SnfCalc {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn new(m: &IntMatrix) -> Self {
        SnfCalc {
            a: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let x = self.a.get(i, c).clone();
            self.a.set(i, c, self.a.get(j, c).clone());
            self.a.set(j, c, x);
        }
        for c in 0..self.u.cols() {
            let x = self.u.get(i, c).clone();
            self.u.set(i, c, self.u.get(j, c).clone());
            self.u.set(j, c, x);
        }
        for r in 0..self.u_inv.rows() {
            let x = self.u_inv.get(r, i).clone();
            self.u_inv.set(r, i, self.u_inv.get(r, j).clone());
            self.u_inv.set(r, j, x);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let x = self.a.get(r, i).clone();
            self.a.set(r, i, self.a.get(r, j).clone());
            self.a.set(r, j, x);
        }
        for r in 0..self.v.rows() {
            let x = self.v.get(r, i).clone();
            self.v.set(r, i, self.v.get(r, j).clone());
            self.v.set(r, j, x);
        }
        for c in 0..self.v_inv.cols() {
            let x = self.v_inv.get(i, c).clone();
            self.v_inv.set(i, c, self.v_inv.get(j, c).clone());
            self.v_inv.set(j, c, x);
        }
    }

    /// row i += c * row j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.cols() {
            let v = self.a.get(i, k) + c * self.a.get(j, k);
            self.a.set(i, k, v);
        }
        for k in 0..self.u.cols() {
            let v = self.u.get(i, k) + c * self.u.get(j, k);
            self.u.set(i, k, v);
        }
        // U_inv picks up the inverse op on the column side
        for k in 0..self.u_inv.rows() {
            let v = self.u_inv.get(k, j) - c * self.u_inv.get(k, i);
            self.u_inv.set(k, j, v);
        }
    }

    /// col j += c * col i
    fn add_col(&mut self, j: usize, i: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.rows() {
            let v = self.a.get(k, j) + c * self.a.get(k, i);
            self.a.set(k, j, v);
        }
        for k in 0..self.v.rows() {
            let v = self.v.get(k, j) + c * self.v.get(k, i);
            self.v.set(k, j, v);
        }
        for k in 0..self.v_inv.cols() {
            let v = self.v_inv.get(i, k) - c * self.v_inv.get(j, k);
            self.v_inv.set(i, k, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols() {
            let v = -self.a.get(i, k);
            self.a.set(i, k, v);
        }
        for k in 0..self.u.cols() {
            let v = -self.u.get(i, k);
            self.u.set(i, k, v);
        }
        for k in 0..self.u_inv.rows() {
            let v = -self.u_inv.get(k, i);
            self.u_inv.set(k, i, v);
        }
    }

    /// Deterministic pivot policy: smallest nonzero absolute value, ties
    /// broken by row-major position.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if e.abs() < self.a.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn process(&mut self) {
        let mut t = 0;
        let bound = self.a.rows().min(self.a.cols());
        while t < bound {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            // clear the pivot row and column; remainders restart the pivot hunt
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                let q = self.a.get(i, t) / self.a.get(t, t);
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols() {
                let q = self.a.get(t, j) / self.a.get(t, t);
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: the pivot must divide the remaining submatrix
            let mut fix = None;
            'search: for i in t + 1..self.a.rows() {
                for j in t + 1..self.a.cols() {
                    if !(self.a.get(i, j) % self.a.get(t, t)).is_zero() {
                        fix = Some(i);
                        break 'search;
                    }
                }
            }
            if let Some(i) = fix {
                self.add_row(t, i, &BigInt::one());
                continue;
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Exact Smith normal form with transformation matrices and a deterministic
/// pivot policy.
pub fn snf(m: &IntMatrix) -> SNFResult {
    let mut calc = SnfCalc::new(m);
    calc.process();
    SNFResult {
        s: calc.a,
        u: calc.u,
        v: calc.v,
        u_inv: calc.u_inv,
        v_inv: calc.v_inv,
    }
}

/// Rank over the rationals via fraction-free (Bareiss) elimination.
pub fn rank(m: &IntMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut a = m.clone();
    let mut r = 0usize;
    let mut prev = BigInt::one();
    for c in 0..a.cols() {
        let piv = (r..a.rows()).find(|&i| !a.get(i, c).is_zero());
        let Some(piv) = piv else { continue };
        if piv != r {
            for j in 0..a.cols() {
                let x = a.get(r, j).clone();
                a.set(r, j, a.get(piv, j).clone());
                a.set(piv, j, x);
            }
        }
        for i in r + 1..a.rows() {
            for j in c + 1..a.cols() {
                let num = a.get(r, c) * a.get(i, j) - a.get(i, c) * a.get(r, j);
                debug_assert!((&num % &prev).is_zero());
                a.set(i, j, num / &prev);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = a.get(r, c).clone();
        r += 1;
        if r == a.rows() {
            break;
        }
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt, ZMatrixError> {
    if !m.is_square() {
        return Err(ZMatrixError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                let x = a.get(k, j).clone();
                a.set(k, j, a.get(piv, j).clone());
                a.set(piv, j, x);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j);
                debug_assert!((&num % &prev).is_zero());
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1).clone())
}

/// Rank of `m` over the field with `p` elements (`p` prime).
pub fn rank_mod_p(m: &IntMatrix, p: &BigUint) -> usize {
    let p = BigInt::from(p.clone());
    let modp = |x: &BigInt| -> BigInt {
        let r = x % &p;
        if r.is_negative() {
            r + &p
        } else {
            r
        }
    };
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| modp(m.get(i, j))).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0usize;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inverse(&a[r][c], &p);
        for j in 0..cols {
            a[r][j] = modp(&(&a[r][j] * &inv));
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = modp(&v);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `m^e` with entries reduced modulo `p` at every step; entry growth stays
/// bounded by `p^2` regardless of the exact power's size.
pub fn pow_mod(m: &IntMatrix, e: usize, p: &BigUint) -> IntMatrix {
    assert!(m.is_square());
    let p = BigInt::from(p.clone());
    let reduce = |x: &BigInt| -> BigInt {
        let r = x % &p;
        if r.is_negative() {
            r + &p
        } else {
            r
        }
    };
    let reduce_all = |m: &IntMatrix| -> IntMatrix {
        let mut out = IntMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, reduce(m.get(i, j)));
            }
        }
        out
    };
    let base = reduce_all(m);
    let mut acc = IntMatrix::identity(m.rows());
    for _ in 0..e {
        acc = reduce_all(&acc.mul(&base));
    }
    acc
}

fn mod_inverse(x: &BigInt, p: &BigInt) -> BigInt {
    // extended Euclid; p prime and x nonzero mod p
    let (mut a, mut b) = (x.clone(), p.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !b.is_zero() {
        let q = &a / &b;
        let r = &a - &q * &b;
        a = std::mem::replace(&mut b, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    let r = s0 % p;
    if r.is_negative() {
        r + p
    } else {
        r
    }
}

/// Column Hermite form of a full-column-rank basis matrix: column
/// operations only, so the column lattice is unchanged, but the entries
/// come out reduced. The Smith transform matrices can carry enormous
/// entries even on small inputs; bases handed onward are normalized here.
fn hnf_reduce_basis(b: &IntMatrix) -> IntMatrix {
    let mut a = b.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let swap_cols = |a: &mut IntMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..a.rows() {
            let x = a.get(r, i).clone();
            a.set(r, i, a.get(r, j).clone());
            a.set(r, j, x);
        }
    };
    let add_col = |a: &mut IntMatrix, j: usize, i: usize, c: &BigInt| {
        if c.is_zero() {
            return;
        }
        for r in 0..a.rows() {
            let v = a.get(r, j) + c * a.get(r, i);
            a.set(r, j, v);
        }
    };
    let mut col = 0usize;
    for row in 0..rows {
        if col == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in col..cols {
                if a.get(row, j).is_zero() {
                    continue;
                }
                if best.map_or(true, |bj| a.get(row, j).abs() < a.get(row, bj).abs()) {
                    best = Some(j);
                }
            }
            let Some(bj) = best else { break };
            swap_cols(&mut a, col, bj);
            let mut clean = true;
            for j in col + 1..cols {
                let q = a.get(row, j) / a.get(row, col);
                add_col(&mut a, j, col, &-q);
                if !a.get(row, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a.get(row, col).is_zero() {
            continue;
        }
        if a.get(row, col).is_negative() {
            for r in 0..rows {
                let v = -a.get(r, col);
                a.set(r, col, v);
            }
        }
        for j in 0..col {
            let q = a.get(row, j).div_floor(a.get(row, col));
            add_col(&mut a, j, col, &-q);
        }
        col += 1;
    }
    a
}

/// Columns form a saturated basis of the integer kernel of `m`
/// (vectors `x` with `m * x = 0`).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let res = snf(m);
    let r = res.rank();
    hnf_reduce_basis(&res.v.column_slice(r, m.cols()))
}

/// Saturated basis of the column-space lattice of `m` (the intersection of
/// the rational column span with the integer lattice).
pub fn saturated_column_basis(m: &IntMatrix) -> IntMatrix {
    let res = snf(m);
    let r = res.rank();
    hnf_reduce_basis(&res.u_inv.column_slice(0, r))
}

/// Presentation of the quotient `Z^k / image(relations)` where `relations`
/// is a `k x l` integer matrix.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    pub free_rank: usize,
    /// Invariant factors > 1.
    pub torsion: Vec<BigInt>,
    /// `k x free_rank`; maps quotient coordinates to ambient coordinates.
    pub basis_lift: IntMatrix,
    /// `free_rank x k`; projection onto quotient coordinates
    /// (`projection * basis_lift = identity`).
    pub projection: IntMatrix,
    /// The defining relation matrix, kept for well-definedness checks.
    pub relations: IntMatrix,
}

impl QuotientPresentation {
    pub fn ambient_rank(&self) -> usize {
        self.relations.rows()
    }

    /// The free presentation `Z^rank` with no relations.
    pub fn free(rank: usize) -> Self {
        QuotientPresentation {
            free_rank: rank,
            torsion: Vec::new(),
            basis_lift: IntMatrix::identity(rank),
            projection: IntMatrix::identity(rank),
            relations: IntMatrix::zero(rank, 0),
        }
    }
}

/// Cokernel `Z^k / image(d)` with explicit free-part coordinates.
pub fn cokernel(d: &IntMatrix) -> QuotientPresentation {
    let k = d.rows();
    let res = snf(d);
    let r = res.rank();
    let torsion: Vec<BigInt> = res
        .invariant_factors()
        .into_iter()
        .filter(|f| f > &BigInt::one())
        .collect();
    QuotientPresentation {
        free_rank: k - r,
        torsion,
        basis_lift: res.u_inv.column_slice(r, k),
        projection: res.u.row_slice(r, k),
        relations: d.clone(),
    }
}

/// Solve `b * x = c` exactly over the integers; `None` when no integer
/// solution exists. `b` need not be square.
pub fn solve_exact(b: &IntMatrix, c: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.rows(), c.rows(), "solve_exact shape mismatch");
    let res = snf(b);
    let r = res.rank();
    let uc = res.u.mul(c);
    let mut y = IntMatrix::zero(b.cols(), c.cols());
    for j in 0..c.cols() {
        for i in 0..b.rows() {
            if i < r {
                let d = res.s.get(i, i);
                if !(uc.get(i, j) % d).is_zero() {
                    return None;
                }
                y.set(i, j, uc.get(i, j) / d);
            } else if !uc.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some(res.v.mul(&y))
}

/// The matrix of the map induced by `a` on the free parts of the quotient
/// presentations. `a` maps target-ambient coordinates to source-ambient
/// coordinates (source rows x target columns, applied to target cochains).
/// Fails when `a` does not carry the target relations into the source
/// relations, i.e. when `a` is not a chain map.
pub fn induced_quotient_map(
    a: &IntMatrix,
    source: &QuotientPresentation,
    target: &QuotientPresentation,
) -> Result<IntMatrix, ZMatrixError> {
    if a.rows() != source.ambient_rank() || a.cols() != target.ambient_rank() {
        return Err(ZMatrixError::DimensionMismatch(format!(
            "induced map is {}x{} on ambient ranks {} and {}",
            a.rows(),
            a.cols(),
            source.ambient_rank(),
            target.ambient_rank()
        )));
    }
    let image = a.mul(&target.relations);
    if solve_exact(&source.relations, &image).is_none() {
        // report the first offending generator for diagnostics
        for j in 0..target.relations.cols() {
            let col = image.column_slice(j, j + 1);
            if solve_exact(&source.relations, &col).is_none() {
                return Err(ZMatrixError::InducedMapIllDefined { column: j });
            }
        }
        return Err(ZMatrixError::InducedMapIllDefined { column: 0 });
    }
    Ok(source.projection.mul(a).mul(&target.basis_lift))
}

/// `rank(m^r)` where `r` is the dimension; ranks of powers have stabilized
/// by that point.
pub fn eventual_rank(m: &IntMatrix) -> Result<usize, ZMatrixError> {
    if !m.is_square() {
        return Err(ZMatrixError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(rank(&m.pow(m.rows())))
}
