//! Exact rational linear algebra: dense row reduction for small systems and
//! an incremental sparse echelon builder for graded relation spaces.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Reduced row-echelon form with zero rows dropped, and the pivot columns.
    /// Pivoting picks the first nonzero entry, so results are reproducible.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

pub type SparseRow = Vec<(usize, Rational)>;

/// `a + f * b` for sparse rows sorted by column.
fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, f * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + f * &b[j].1;
            if !x.is_zero() {
                out.push((ca, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize_row(row: &[(usize, Rational)]) -> SparseRow {
    let mut sorted: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    let mut entries = row.to_vec();
    entries.sort_by_key(|e| e.0);
    for (j, x) in entries {
        match sorted.last_mut() {
            Some(last) if last.0 == j => last.1 += x,
            _ => sorted.push((j, x)),
        }
    }
    sorted.retain(|e| !e.1.is_zero());
    sorted
}

/// Incremental exact Gaussian elimination that keeps its rows in reduced
/// row-echelon form with unit pivots. Reduced rows vanish on every other
/// pivot column, so reducing a vector is a single pass over its pivot
/// entries.
#[derive(Clone, Debug)]
pub struct RrefBuilder {
    cols: usize,
    rows: Vec<SparseRow>,
    row_of_pivot: HashMap<usize, usize>,
}

impl RrefBuilder {
    pub fn new(cols: usize) -> Self {
        RrefBuilder { cols, rows: Vec::new(), row_of_pivot: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `row` modulo the current span.
    pub fn reduce(&self, row: &[(usize, Rational)]) -> SparseRow {
        let mut v = normalize_row(row);
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(j, x)| self.row_of_pivot.get(j).map(|&r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            v = axpy(&v, &-x, &self.rows[r]);
        }
        v
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let v = self.reduce(row);
        let Some(&(p, ref lead)) = v.first() else { return false };
        let inv = lead.recip();
        let v: SparseRow = v.iter().map(|(j, x)| (*j, x * &inv)).collect();
        for existing in &mut self.rows {
            if let Ok(k) = existing.binary_search_by_key(&p, |e| e.0) {
                let f = -existing[k].1.clone();
                *existing = axpy(existing, &f, &v);
            }
        }
        self.row_of_pivot.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Rows sorted by pivot, and the pivots.
    pub fn finish(mut self) -> (Vec<SparseRow>, Vec<usize>) {
        self.rows.sort_by_key(|r| r[0].0);
        let pivots = self.rows.iter().map(|r| r[0].0).collect();
        (self.rows, pivots)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    u64::try_from(r).expect("reduced below the prime")
}

fn to_mod(x: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod(x.denom(), p);
    (d != 0).then(|| mul_mod(bigint_mod(x.numer(), p), pow_mod(d, p - 2, p), p))
}

/// Primes below `2^31`, descending, so products fit in `u64`.
fn primes() -> impl Iterator<Item = u64> {
    let is_prime = |n: u64| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    (1u64 << 20..1u64 << 31).rev().filter(move |&n| is_prime(n))
}

/// Reduced row-echelon form modulo `p`: dense rows and their pivots, or
/// `None` when some denominator vanishes modulo `p`.
fn rref_mod(rows: &[SparseRow], cols: usize, p: u64) -> Option<(Vec<Vec<u64>>, Vec<usize>)> {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivot_of: Vec<usize> = Vec::new();
    let mut row_of_pivot: Vec<Option<usize>> = vec![None; cols];
    for row in rows {
        if basis.len() == cols {
            break;
        }
        let mut v = vec![0u64; cols];
        for (j, x) in row {
            v[*j] = (v[*j] + to_mod(x, p)?) % p;
        }
        for c in 0..cols {
            if v[c] == 0 {
                continue;
            }
            if let Some(r) = row_of_pivot[c] {
                let f = p - v[c];
                for (k, &y) in basis[r].iter().enumerate().skip(c) {
                    if y != 0 {
                        v[k] = (v[k] + mul_mod(f, y, p)) % p;
                    }
                }
            }
        }
        let Some(q) = v.iter().position(|&x| x != 0) else { continue };
        let inv = pow_mod(v[q], p - 2, p);
        for y in v.iter_mut().skip(q) {
            *y = mul_mod(*y, inv, p);
        }
        for other in basis.iter_mut() {
            let f = other[q];
            if f != 0 {
                let f = p - f;
                for k in q..cols {
                    if v[k] != 0 {
                        other[k] = (other[k] + mul_mod(f, v[k], p)) % p;
                    }
                }
            }
        }
        row_of_pivot[q] = Some(basis.len());
        pivot_of.push(q);
        basis.push(v);
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivot_of[i]);
    let pivots = order.iter().map(|&i| pivot_of[i]).collect();
    let mut slots: Vec<Option<Vec<u64>>> = basis.into_iter().map(Some).collect();
    let sorted = order.iter().map(|&i| slots[i].take().expect("each row once")).collect();
    Some((sorted, pivots))
}

/// The rational `n/d` with `|n|, d <= sqrt(m/2)` congruent to `a` modulo `m`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Whether every row lies in the span of a reduced row-echelon basis.
fn spans_all(basis: &[SparseRow], pivots: &[usize], rows: &[SparseRow]) -> bool {
    let row_of_pivot: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    rows.iter().all(|row| {
        let mut v = normalize_row(row);
        let hits: Vec<(usize, Rational)> =
            v.iter().filter_map(|(j, x)| row_of_pivot.get(j).map(|&r| (r, x.clone()))).collect();
        for (r, x) in hits {
            v = axpy(&v, &-x, &basis[r]);
        }
        v.is_empty()
    })
}

/// Multimodular elimination with rational reconstruction. The candidate is
/// accepted only after exact verification that it spans every input row;
/// since the rank modulo a prime never exceeds the rational rank, a candidate
/// with that many independent rows is then the exact reduced basis.
fn span_rref_multimodular(rows: &[SparseRow], cols: usize) -> Option<(Vec<SparseRow>, Vec<usize>)> {
    let mut best_pivots: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;
    for p in primes() {
        if used == 24 {
            return None;
        }
        let Some((basis, pivots)) = rref_mod(rows, cols, p) else { continue };
        // prefer higher rank, then earlier pivots: those come from lucky primes
        let better = match &best_pivots {
            None => true,
            Some(best) => pivots.len() > best.len() || (pivots.len() == best.len() && pivots < *best),
        };
        let same = best_pivots.as_ref() == Some(&pivots);
        if better && !same {
            best_pivots = Some(pivots.clone());
            residues = Vec::new();
            modulus = BigInt::one();
        } else if !same {
            continue;
        }
        used += 1;
        let flat: Vec<u64> = basis.iter().flatten().copied().collect();
        if residues.is_empty() {
            residues = vec![flat.iter().map(|&x| BigInt::from(x)).collect()];
        } else {
            let inv = pow_mod(bigint_mod(&modulus, p), p - 2, p);
            for (acc, &r) in residues[0].iter_mut().zip(&flat) {
                let diff = (r + p - bigint_mod(acc, p)) % p;
                *acc += &modulus * BigInt::from(mul_mod(diff, inv, p));
            }
        }
        modulus *= BigInt::from(p);

        let Some(entries) = residues[0]
            .iter()
            .map(|a| rational_reconstruction(a, &modulus))
            .collect::<Option<Vec<Rational>>>()
        else {
            continue;
        };
        let candidate: Vec<SparseRow> = entries
            .chunks(cols.max(1))
            .map(|chunk| chunk.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        if spans_all(&candidate, &pivots, rows) {
            return Some((candidate, pivots));
        }
    }
    None
}

/// Exact reduced row-echelon basis of the span of `rows`.
pub fn span_rref(rows: &[SparseRow], cols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    if let Some(result) = span_rref_multimodular(rows, cols) {
        return result;
    }
    let mut builder = RrefBuilder::new(cols);
    for row in rows {
        builder.insert(row);
    }
    builder.finish()
}

/// A subspace of a graded piece, stored as a reduced row-echelon basis over
/// a canonical list of ambient basis elements.
#[derive(Clone, Debug)]
pub struct RelationSpace<K = crate::words::Word> {
    weight: u32,
    ambient: Vec<K>,
    index: HashMap<K, usize>,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl<K: Clone + Eq + Hash + Ord> RelationSpace<K> {
    pub fn from_rref(weight: u32, ambient: Vec<K>, rows: Vec<SparseRow>, pivots: Vec<usize>) -> Self {
        let index = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        RelationSpace { weight, ambient, index, rows, pivots }
    }

    /// Span of the given combinations of ambient elements.
    pub fn from_generators<'a>(
        weight: u32,
        ambient: Vec<K>,
        generators: impl IntoIterator<Item = Vec<(K, Rational)>>,
    ) -> Result<Self>
    where
        K: 'a,
    {
        let index: HashMap<K, usize> = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rows = Vec::new();
        for g in generators {
            let row = g
                .into_iter()
                .map(|(k, x)| {
                    index
                        .get(&k)
                        .map(|&i| (i, x))
                        .ok_or_else(|| Error::InvalidArgument("generator outside the ambient basis".into()))
                })
                .collect::<Result<SparseRow>>()?;
            rows.push(row);
        }
        let (rows, pivots) = span_rref(&rows, ambient.len());
        Ok(Self::from_rref(weight, ambient, rows, pivots))
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn ambient(&self) -> &[K] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient.len() - self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Basis row `i` as a combination of ambient elements.
    pub fn row_terms(&self, i: usize) -> Vec<(K, Rational)> {
        self.rows[i].iter().map(|(j, x)| (self.ambient[*j].clone(), x.clone())).collect()
    }

    /// Dense coordinates of a combination; unknown elements are an error.
    pub fn vector<'a>(&self, terms: impl IntoIterator<Item = (&'a K, &'a Rational)>) -> Result<Vec<Rational>>
    where
        K: 'a,
    {
        let mut v = vec![Rational::zero(); self.ambient.len()];
        for (k, x) in terms {
            let i = self
                .index_of(k)
                .ok_or_else(|| Error::InvalidArgument("element outside the ambient basis".into()))?;
            v[i] += x;
        }
        Ok(v)
    }

    /// Remainder of `v` after subtracting its projection onto the space; it
    /// is supported on non-pivot columns and is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient.len() {
            return Err(Error::DimensionMismatch { expected: self.ambient.len(), found: v.len() });
        }
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, x) in row {
                out[*j] -= &f * x;
            }
        }
        Ok(out)
    }

    /// Coordinates against the basis rows when `v` lies in the span.
    pub fn in_span(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let rem = self.reduce(v)?;
        if rem.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.in_span(v)?.is_some())
    }

    /// Same ambient basis and identical reduced rows.
    pub fn same_basis(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}
