//! Exact linear algebra over ℚ and ℤ.
//!
//! [`QMatrix`] is a small dense rational matrix used for weight-space blocks
//! of representations. [`exact_rank`] computes ranks of sparse integer
//! matrices: the rank modulo a 61-bit prime is a lower bound for the rank
//! over ℚ, and a kernel basis lifted by rational reconstruction and checked
//! over ℤ supplies the matching upper bound. When the lift fails the
//! fraction-free Bareiss elimination in [`bareiss_rank`] decides.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<BigRational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// If `self = c · other` for a scalar `c`, returns `c`; `None` when not
    /// proportional. Returns `Some(0)` when `self` is zero.
    pub fn proportionality(&self, other: &QMatrix) -> Option<BigRational> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let mut factor: Option<BigRational> = None;
        for (a, b) in self.data.iter().zip(&other.data) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, true) => return None,
                (_, false) => {
                    let q = a / b;
                    match &factor {
                        None => factor = Some(q),
                        Some(f) if *f == q => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        Some(factor.unwrap_or_else(BigRational::zero))
    }
}

/// Row-reduces the columns-as-vectors of `vectors` to find a maximal
/// independent subset (greedy, in order) and expresses every vector in it.
///
/// Returns `(basis_indices, coords)` where `coords[k]` gives vector `k` as a
/// combination of the selected basis vectors.
pub fn select_basis(vectors: &[Vec<BigRational>]) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let len = vectors.first().map_or(0, Vec::len);
    // echelon rows: (pivot position, reduced vector, combination over basis)
    let mut echelon: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut coords: Vec<Vec<BigRational>> = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        debug_assert_eq!(v.len(), len);
        let mut rest = v.clone();
        // expression of `v − rest` in terms of basis
        let mut comb: Vec<BigRational> = vec![BigRational::zero(); basis.len()];
        for (piv, row, row_comb) in &echelon {
            if rest[*piv].is_zero() {
                continue;
            }
            let f = &rest[*piv] / &row[*piv];
            for i in 0..len {
                if !row[i].is_zero() {
                    let d = &f * &row[i];
                    rest[i] -= d;
                }
            }
            for (i, c) in row_comb.iter().enumerate() {
                if !c.is_zero() {
                    comb[i] += &f * c;
                }
            }
        }
        match rest.iter().position(|x| !x.is_zero()) {
            Some(piv) => {
                let idx = basis.len();
                basis.push(k);
                for (_, _, rc) in echelon.iter_mut() {
                    rc.push(BigRational::zero());
                }
                comb.push(BigRational::zero());
                // rest = v − Σ comb_i b_i, so the new echelon row encodes
                // b_new − Σ comb_i b_i
                let mut row_comb: Vec<BigRational> = comb.iter().map(|c| -c).collect();
                row_comb[idx] = BigRational::one();
                echelon.push((piv, rest, row_comb));
                let mut own = vec![BigRational::zero(); basis.len()];
                own[idx] = BigRational::one();
                coords.push(own);
            }
            None => coords.push(comb),
        }
    }
    let n = basis.len();
    for c in coords.iter_mut() {
        c.resize(n, BigRational::zero());
    }
    (basis, coords)
}

/// A sparse integer matrix stored by rows.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Builds from rational rows, scaling each row to clear denominators.
    /// Row scaling preserves rank and kernel.
    pub fn from_rational_rows(cols: usize, rows: Vec<Vec<(usize, BigRational)>>) -> Self {
        let entries = rows
            .into_iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                row.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, (v * BigRational::from_integer(l.clone())).to_integer()))
                    .collect()
            })
            .collect::<Vec<_>>();
        SparseIntMatrix {
            rows: entries.len(),
            cols,
            entries,
        }
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::new(self.cols, self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                out.entries[*c].push((r, v.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                d[r][*c] += v;
            }
        }
        d
    }

    fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|(c, v)| v * &x[*c]).sum())
            .collect()
    }
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(v: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = v.mod_floor(&p);
    r.to_u64().expect("reduced below modulus")
}

/// Reduced row echelon form modulo `P`; returns pivot columns.
fn rref_mod(m: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = powmod(m[r][c], P - 2);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = (*x + P - mulmod(f, y)) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rational reconstruction of `a mod P` with numerator and denominator
/// bounded by `sqrt(P/2)`.
fn reconstruct(a: u64) -> Option<(BigInt, BigInt)> {
    let bound: i128 = 1_073_741_823; // floor(sqrt((2^61 - 1) / 2))
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((BigInt::from(num), BigInt::from(den)))
}

fn modular_rank_and_kernel(m: &SparseIntMatrix) -> (usize, Option<Vec<Vec<BigInt>>>) {
    let mut dense: Vec<Vec<u64>> = vec![vec![0; m.cols]; m.rows];
    for (r, row) in m.entries.iter().enumerate() {
        for (c, v) in row {
            dense[r][*c] = (dense[r][*c] + to_mod(v)) % P;
        }
    }
    let pivots = rref_mod(&mut dense, m.cols);
    let rank = pivots.len();
    if rank == m.cols {
        return (rank, Some(Vec::new()));
    }
    let mut is_pivot = vec![None; m.cols];
    for (k, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(k);
    }
    let mut kernel = Vec::new();
    for f in 0..m.cols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut nums: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::one()); m.cols];
        nums[f] = (BigInt::one(), BigInt::one());
        for (k, &c) in pivots.iter().enumerate() {
            let v = (P - dense[k][f]) % P;
            match reconstruct(v) {
                Some(q) => nums[c] = q,
                None => return (rank, None),
            }
        }
        let l = nums.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let x: Vec<BigInt> = nums.into_iter().map(|(n, d)| n * (&l / d)).collect();
        kernel.push(x);
    }
    (rank, Some(kernel))
}

/// Rank modulo a 61-bit prime of a rational matrix given by sparse rows.
///
/// A lower bound for the rank over ℚ: every minor vanishing over ℚ vanishes
/// modulo `P` as long as no denominator is divisible by `P`, which the caller
/// guarantees by passing small denominators.
pub fn modular_rank(cols: usize, rows: &[Vec<(usize, BigRational)>]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut v = vec![0u64; cols];
        for (c, q) in row {
            let n = to_mod(q.numer());
            let d = to_mod(q.denom());
            v[*c] = (v[*c] + mulmod(n, powmod(d, P - 2))) % P;
        }
        // reduce against stored pivot rows, each normalized to lead with 1
        let mut c = 0;
        while c < cols {
            if v[c] == 0 {
                c += 1;
                continue;
            }
            match pivots.get(&c) {
                Some(pr) => {
                    let f = v[c];
                    for k in c..cols {
                        if pr[k] != 0 {
                            v[k] = (v[k] + P - mulmod(f, pr[k])) % P;
                        }
                    }
                    c += 1;
                }
                None => {
                    let inv = powmod(v[c], P - 2);
                    for x in v[c..].iter_mut() {
                        *x = mulmod(*x, inv);
                    }
                    pivots.insert(c, v);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == cols {
            break;
        }
    }
    rank
}

/// Exact rank over ℚ of an integer matrix.
pub fn exact_rank(m: &SparseIntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // certify through whichever side has the smaller nullity
    let t;
    let work = if m.rows < m.cols {
        t = m.transpose();
        &t
    } else {
        m
    };
    let (rank, kernel) = modular_rank_and_kernel(work);
    if let Some(kernel) = kernel {
        if kernel.iter().all(|x| work.apply(x).iter().all(Zero::is_zero)) {
            return rank;
        }
    }
    log::debug!("modular rank certificate failed; falling back to Bareiss");
    bareiss_rank(work.to_dense())
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `|x|` of the largest absolute entry, for diagnostics.
pub fn max_abs_entry(m: &SparseIntMatrix) -> BigInt {
    m.entries
        .iter()
        .flatten()
        .map(|(_, v)| v.abs())
        .max()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sparse(rows: &[Vec<i64>]) -> SparseIntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        SparseIntMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(c, &v)| (c, BigInt::from(v)))
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn small_ranks() {
        assert_eq!(exact_rank(&sparse(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(exact_rank(&sparse(&[vec![1, 2], vec![3, 4]])), 2);
        assert_eq!(exact_rank(&sparse(&[vec![0, 0, 0]])), 0);
        assert_eq!(exact_rank(&SparseIntMatrix::new(0, 3)), 0);
        // singular modulo P but not over ℚ
        let p = (1i64 << 61) - 1;
        assert_eq!(exact_rank(&sparse(&[vec![p, 0], vec![0, 1]])), 2);
    }

    #[test]
    fn reconstruct_small_fractions() {
        for (n, d) in [(1i64, 3i64), (-7, 11), (123456, 789), (0, 1)] {
            let a = mulmod(to_mod(&BigInt::from(n)), powmod(to_mod(&BigInt::from(d)), P - 2));
            let (rn, rd) = reconstruct(a).unwrap();
            assert_eq!(BigRational::new(rn, rd), BigRational::new(n.into(), d.into()));
        }
    }

    #[test]
    fn basis_selection() {
        let vs = vec![
            vec![q(1), q(0), q(1)],
            vec![q(2), q(0), q(2)],
            vec![q(0), q(1), q(0)],
            vec![q(1), q(3), q(1)],
        ];
        let (basis, coords) = select_basis(&vs);
        assert_eq!(basis, vec![0, 2]);
        assert_eq!(coords[1], vec![q(2), q(0)]);
        assert_eq!(coords[3], vec![q(1), q(3)]);
    }

    #[test]
    fn proportional_matrices() {
        let a = QMatrix::from_rows(vec![vec![q(2), q(0)], vec![q(4), q(-2)]]);
        let b = QMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(2), q(-1)]]);
        assert_eq!(a.proportionality(&b), Some(q(2)));
        let c = QMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(-1)]]);
        assert_eq!(a.proportionality(&c), None);
    }

    proptest! {
        // the modular route and Bareiss must agree
        #[test]
        fn rank_routes_agree(
            rows in 1usize..7, cols in 1usize..7,
            vals in proptest::collection::vec(-3i64..4, 49),
            dup in any::<bool>(),
        ) {
            let mut m: Vec<Vec<i64>> = (0..rows)
                .map(|r| (0..cols).map(|c| vals[r * 7 + c]).collect())
                .collect();
            if dup && rows > 1 {
                let copy: Vec<i64> = m[0].iter().zip(&m[1]).map(|(a, b)| 2 * a - b).collect();
                m[rows - 1] = copy;
            }
            let s = sparse(&m);
            prop_assert_eq!(exact_rank(&s), bareiss_rank(s.to_dense()));
            let q: Vec<Vec<(usize, BigRational)>> = s
                .entries
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, BigRational::new(v.clone(), BigInt::from(3)))).collect())
                .collect();
            prop_assert_eq!(modular_rank(s.cols, &q), exact_rank(&s));
        }
    }
}
