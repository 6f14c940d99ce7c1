//! Sparse exact matrices and the elimination routines behind homology.
//!
//! Convention: the matrix of a linear map `f: R^m -> R^n` has `m` rows and `n`
//! columns, row `i` holding the image of the `i`-th basis vector. Composition
//! "`f` then `g`" is therefore the product `f.mul(g)`. This matches the table
//! convention for finite maps (entry `i` is the image of `i`) and the boundary
//! orientation of chain complexes (`d_n` has shape `rank_n x rank_{n-1}`).
//!
//! Three elimination routines live here:
//! - field echelon (rank) for prime-field scalars,
//! - transform-free unimodular row reduction over the integers, used to
//!   compress huge-but-thin boundary matrices while preserving rank and
//!   invariant factors,
//! - dense Smith normal form with unimodular certificates `U, V` such that
//!   `U * A * V = D`, pivot chosen by minimal absolute value with
//!   lexicographic tie-break.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{Field, Ring};

/// Sparse row: strictly increasing column indices, no explicit zeros.
pub type SparseVec<R> = Vec<(usize, R)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat<R> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<R>>,
}

impl<R: Ring> SparseMat<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, R::one())]).collect();
        SparseMat { rows: n, cols: n, data }
    }

    /// Build from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, R)]) -> Self {
        let mut acc: Vec<BTreeMap<usize, R>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(*r < rows && *c < cols, "triplet ({r},{c}) out of {rows}x{cols}");
            let slot = acc[*r].entry(*c).or_insert_with(R::zero);
            *slot = slot.clone() + v.clone();
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMat { rows, cols, data }
    }

    pub fn from_dense(dense: &[Vec<R>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let data = dense
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<R> {
        &self.data[r]
    }

    /// Replace row `r`. The entries must be sorted, in range, and nonzero.
    pub fn set_row(&mut self, r: usize, row: SparseVec<R>) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, v)| *c < self.cols && !v.is_zero()));
        self.data[r] = row;
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn entry(&self, r: usize, c: usize) -> R {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    /// Matrix product; `self: m x k`, `rhs: k x n`.
    pub fn mul(&self, rhs: &SparseMat<R>) -> SparseMat<R> {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        let mut out = SparseMat::zero(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, R> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let slot = acc.entry(*j).or_insert_with(R::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &SparseMat<R>) -> SparseMat<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        let mut out = SparseMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            out.data[i] = axpy(&self.data[i], &R::from_i64(-1), &rhs.data[i]);
        }
        out
    }

    /// Side-by-side concatenation; all blocks must have the same row count.
    pub fn hconcat(blocks: &[&SparseMat<R>]) -> SparseMat<R> {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hconcat row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = SparseMat::zero(rows, cols);
        for i in 0..rows {
            let mut row = Vec::new();
            let mut offset = 0;
            for b in blocks {
                row.extend(b.data[i].iter().map(|(c, v)| (c + offset, v.clone())));
                offset += b.cols;
            }
            out.data[i] = row;
        }
        out
    }

    pub fn transpose(&self) -> SparseMat<R> {
        let mut out = SparseMat::zero(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out.data[*j].push((i, v.clone()));
            }
        }
        out
    }

    pub fn map_entries<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparseMat<S> {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[i][*c] = v.clone();
            }
        }
        out
    }

    pub fn triplets(&self) -> Vec<(usize, usize, R)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.push((i, *c, v.clone()));
            }
        }
        out
    }
}

/// `x + coeff * y` on sorted sparse rows.
pub fn axpy<R: Ring>(x: &SparseVec<R>, coeff: &R, y: &SparseVec<R>) -> SparseVec<R> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                let v = vx.clone() + coeff.clone() * vy.clone();
                if !v.is_zero() {
                    out.push((*cx, v));
                }
                i += 1;
                j += 1;
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (Some(_), Some((cy, vy))) => {
                let v = coeff.clone() * vy.clone();
                if !v.is_zero() {
                    out.push((*cy, v));
                }
                j += 1;
            }
            (Some((cx, vx)), None) => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (None, Some((cy, vy))) => {
                let v = coeff.clone() * vy.clone();
                if !v.is_zero() {
                    out.push((*cy, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon over a field. Rows are normalized to leading
/// coefficient 1 and indexed by pivot column.
pub struct FieldEchelon<F: Field> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> FieldEchelon<F> {
    pub fn new() -> Self {
        FieldEchelon { pivots: BTreeMap::new() }
    }

    /// Reduce `row` against the current pivots; absorb it if independent.
    /// Returns true when the rank grew.
    pub fn add_row(&mut self, mut row: SparseVec<F>) -> bool {
        loop {
            let Some(&(col, lead)) = row.first() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(p) => {
                    row = axpy(&row, &-lead, p);
                }
                None => {
                    let inv = lead.inverse();
                    let normalized = row.into_iter().map(|(c, v)| (c, v * inv)).collect();
                    self.pivots.insert(col, normalized);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Default for FieldEchelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

pub fn field_rank<F: Field>(m: &SparseMat<F>) -> usize {
    let mut ech = FieldEchelon::new();
    for i in 0..m.rows() {
        ech.add_row(m.row(i).clone());
    }
    ech.rank()
}

/// Rank of several maps out of a common domain, stacked side by side
/// (the rank of `x -> (f_1 x, ..., f_k x)`).
pub fn field_rank_stacked<F: Field>(blocks: &[&SparseMat<F>]) -> usize {
    field_rank(&SparseMat::hconcat(blocks))
}

/// Transform-free integer row echelon. Only unimodular row operations are
/// used, so the row lattice -- hence the rank and the invariant factors of the
/// matrix -- are preserved. Returns the nonzero echelon rows keyed by pivot
/// column. Feasible for huge-but-thin matrices because the working set never
/// exceeds one row per distinct pivot column.
pub fn int_row_echelon(m: &SparseMat<BigInt>) -> BTreeMap<usize, SparseVec<BigInt>> {
    let mut pivots: BTreeMap<usize, SparseVec<BigInt>> = BTreeMap::new();
    for i in 0..m.rows() {
        absorb_int_row(&mut pivots, m.row(i).clone());
    }
    pivots
}

fn absorb_int_row(pivots: &mut BTreeMap<usize, SparseVec<BigInt>>, mut row: SparseVec<BigInt>) {
    loop {
        let Some((col, lead)) = row.first().cloned() else {
            return;
        };
        match pivots.get_mut(&col) {
            None => {
                pivots.insert(col, row);
                return;
            }
            Some(p) => {
                let a = p.first().expect("pivot row nonempty").1.clone();
                let (q, r) = lead.div_rem(&a);
                if r.is_zero() {
                    row = axpy(&row, &-q, p);
                } else {
                    // Replace the pivot by the gcd combination; the 2x2
                    // transform [[s, t], [-b/g, a/g]] has determinant 1.
                    let ext = a.extended_gcd(&lead);
                    let (g, s, t) = (ext.gcd, ext.x, ext.y);
                    let new_pivot = {
                        let scaled_p: SparseVec<BigInt> =
                            p.iter().map(|(c, v)| (*c, v.clone() * &s)).collect();
                        axpy(&scaled_p, &t, &row)
                    };
                    let new_row = {
                        let coeff = -(&lead / &g);
                        let scaled_row: SparseVec<BigInt> = row
                            .iter()
                            .map(|(c, v)| (*c, v.clone() * (&a / &g)))
                            .collect();
                        axpy(&scaled_row, &coeff, p)
                    };
                    debug_assert_eq!(new_pivot.first().map(|(c, _)| *c), Some(col));
                    *p = new_pivot;
                    row = new_row;
                    debug_assert!(row.first().map_or(true, |(c, _)| *c > col));
                }
            }
        }
    }
}

/// Smith normal form with certificates: `u * a * v = d`, `u` and `v`
/// unimodular, `d` diagonal with each entry dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Nonzero diagonal entries (the invariant factors), positive, divisibility chain.
    pub diagonal: Vec<BigInt>,
    /// Row transform, `rows x rows`.
    pub u: Vec<Vec<BigInt>>,
    /// Column transform, `cols x cols`.
    pub v: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors strictly greater than 1, i.e. the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    /// Recompute `u * a * v` and check it is the diagonal matrix promised by
    /// `diagonal`, with unimodular transforms. Independent of the
    /// factorization routine: determinants go through fraction-free
    /// elimination.
    pub fn verify(&self, a: &SparseMat<BigInt>) -> bool {
        if a.rows() != self.rows || a.cols() != self.cols {
            return false;
        }
        let u = SparseMat::from_dense(&self.u);
        let v = SparseMat::from_dense(&self.v);
        let product = u.mul(a).mul(&v);
        let expected_triplets: Vec<(usize, usize, BigInt)> = self
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| (i, i, d.clone()))
            .collect();
        let expected = SparseMat::from_triplets(self.rows, self.cols, &expected_triplets);
        if product != expected {
            return false;
        }
        for w in self.diagonal.windows(2) {
            if (&w[1] % &w[0]) != BigInt::zero() {
                return false;
            }
        }
        if self.diagonal.iter().any(|d| *d <= BigInt::zero()) {
            return false;
        }
        let one = BigInt::one();
        bareiss_det(&self.u).abs() == one && bareiss_det(&self.v).abs() == one
    }
}

/// Fraction-free determinant (Bareiss). Exact over the integers.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Dense certified SNF. Pivot selection: minimal absolute value among the
/// remaining nonzero entries, ties broken by lexicographically smallest
/// (row, col). Intended for desk-scale matrices; large thin matrices should be
/// compressed through [`int_row_echelon`] first.
pub fn smith_normal_form(a: &SparseMat<BigInt>) -> Snf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.to_dense();
    let mut u: Vec<Vec<BigInt>> = identity_dense(rows);
    let mut v: Vec<Vec<BigInt>> = identity_dense(cols);

    let limit = rows.min(cols);
    let mut k = 0;
    while k < limit {
        let Some((pi, pj)) = select_pivot(&m, k) else {
            break;
        };
        swap_rows(&mut m, &mut u, k, pi);
        swap_cols(&mut m, &mut v, k, pj);

        loop {
            let mut dirty = false;
            // Clear column k with row operations.
            for i in 0..rows {
                if i != k && !m[i][k].is_zero() {
                    let q = div_to_smaller(&m[i][k], &m[k][k]);
                    if !q.is_zero() {
                        row_axpy(&mut m, &mut u, i, k, &-q);
                    }
                    if !m[i][k].is_zero() {
                        // Remainder smaller than the pivot: promote it.
                        swap_rows(&mut m, &mut u, k, i);
                        dirty = true;
                    }
                }
            }
            // Clear row k with column operations.
            for j in 0..cols {
                if j != k && !m[k][j].is_zero() {
                    let q = div_to_smaller(&m[k][j], &m[k][k]);
                    if !q.is_zero() {
                        col_axpy(&mut m, &mut v, j, k, &-q);
                    }
                    if !m[k][j].is_zero() {
                        swap_cols(&mut m, &mut v, k, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column clear. Enforce the divisibility chain: the pivot
            // must divide the whole remaining block.
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| (&m[i][j] % &m[k][k]) != BigInt::zero());
            match offender {
                Some((i, _)) => {
                    // Fold the offending row into row k and restart the clearing
                    // loop; the gcd strictly shrinks, so this terminates.
                    row_axpy_onto(&mut m, &mut u, k, i);
                    dirty = true;
                }
                None => {}
            }
            if !dirty {
                break;
            }
        }
        if m[k][k].sign() == num_bigint::Sign::Minus {
            negate_row(&mut m, &mut u, k);
        }
        k += 1;
    }

    let diagonal: Vec<BigInt> =
        (0..k).map(|i| m[i][i].clone()).filter(|d| !d.is_zero()).collect();
    Snf { diagonal, u, v, rows, cols }
}

fn identity_dense(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect()
}

fn select_pivot(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, val) in row.iter().enumerate().skip(k) {
            if val.is_zero() {
                continue;
            }
            let mag = val.abs();
            match &best {
                Some((bmag, _, _)) if *bmag <= mag => {}
                _ => best = Some((mag, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_rows(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        m.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i += q * row_k, mirrored on U.
fn row_axpy(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let (src_m, src_u): (Vec<BigInt>, Vec<BigInt>) = (m[k].clone(), u[k].clone());
    for (dst, s) in m[i].iter_mut().zip(src_m.iter()) {
        *dst += q * s;
    }
    for (dst, s) in u[i].iter_mut().zip(src_u.iter()) {
        *dst += q * s;
    }
}

/// row_k += row_i, mirrored on U.
fn row_axpy_onto(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], k: usize, i: usize) {
    let one = BigInt::one();
    row_axpy(m, u, k, i, &one);
}

/// col_j += q * col_k, mirrored on V (V multiplies on the right, so the same
/// column operation applies to it).
fn col_axpy(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[k].clone();
        row[j] += q * &s;
    }
    for row in v.iter_mut() {
        let s = row[k].clone();
        row[j] += q * &s;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], k: usize) {
    for x in m[k].iter_mut() {
        *x = -x.clone();
    }
    for x in u[k].iter_mut() {
        *x = -x.clone();
    }
}

/// Quotient that leaves the smallest-magnitude remainder (rounded division),
/// so repeated reduction converges fast.
fn div_to_smaller(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r * BigInt::from(2)).abs() > b.abs() {
        // Truncated remainder has the sign of `a`; shifting the quotient one
        // step toward `a / b` halves the remainder magnitude.
        if r.sign() == b.sign() {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> SparseMat<BigInt> {
        let dense: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&v| big(v)).collect()).collect();
        SparseMat::from_dense(&dense)
    }

    #[test]
    fn product_and_identity() {
        let a = mat(&[&[1, 2], &[3, 4], &[0, 1]]);
        let id = SparseMat::<BigInt>::identity(2);
        assert_eq!(a.mul(&id), a);
        let b = mat(&[&[1, 0, -1], &[2, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, mat(&[&[5, 2, -1], &[11, 4, -3], &[2, 1, 0]]));
    }

    #[test]
    fn snf_textbook_example() {
        // Frozen expectation: diag(2, 4). det = -8, gcd of entries = 2,
        // so invariant factors are 2 and 8/2 = 4.
        let a = mat(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal, vec![big(2), big(4)]);
        assert!(snf.verify(&a));
    }

    #[test]
    fn snf_zero_and_identity() {
        let z = SparseMat::<BigInt>::zero(3, 2);
        let snf = smith_normal_form(&z);
        assert!(snf.diagonal.is_empty());
        assert!(snf.verify(&z));

        let id = SparseMat::<BigInt>::identity(4);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.diagonal, vec![big(1); 4]);
        assert!(snf.verify(&id));
    }

    #[test]
    fn snf_rectangular_with_torsion() {
        // Rows generate a sublattice of Z^2 of index area 3 in rank 2:
        // invariant factors 1, 3.
        let a = mat(&[&[2, -1], &[1, 1], &[1, 1]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal, vec![big(1), big(3)]);
        assert!(snf.verify(&a));
    }

    #[test]
    fn echelon_preserves_invariant_factors() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16], &[2, 4, 4], &[0, 0, 0]]);
        let direct = smith_normal_form(&a);
        let ech = int_row_echelon(&a);
        let rows: Vec<SparseVec<BigInt>> = ech.into_values().collect();
        let mut compressed = SparseMat::zero(rows.len(), a.cols());
        for (i, r) in rows.into_iter().enumerate() {
            compressed.set_row(i, r);
        }
        let indirect = smith_normal_form(&compressed);
        assert_eq!(direct.diagonal, indirect.diagonal);
        assert!(direct.verify(&a));
        assert!(indirect.verify(&compressed));
    }

    #[test]
    fn field_rank_small() {
        use crate::F2;
        use crate::ring::PrimeField;
        let rows = vec![
            vec![(0, F2::from_u64(1)), (1, F2::from_u64(1))],
            vec![(1, F2::from_u64(1))],
            vec![(0, F2::from_u64(1))],
        ];
        let mut m = SparseMat::zero(3, 2);
        for (i, r) in rows.into_iter().enumerate() {
            m.set_row(i, r);
        }
        assert_eq!(field_rank(&m), 2);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![big(2), big(0), big(1)],
            vec![big(1), big(3), big(2)],
            vec![big(1), big(1), big(1)],
        ];
        // det = 2*(3-2) - 0 + 1*(1-3) = 0
        assert_eq!(bareiss_det(&m), big(0));
        let m2 = vec![vec![big(3), big(1)], vec![big(4), big(2)]];
        assert_eq!(bareiss_det(&m2), big(2));
    }

    #[test]
    fn axpy_cancels() {
        let x = vec![(0, big(2)), (3, big(5))];
        let y = vec![(0, big(1)), (2, big(7)), (3, big(-5))];
        let r = axpy(&x, &big(1), &y);
        assert_eq!(r, vec![(0, big(3)), (2, big(7))]);
    }
}
