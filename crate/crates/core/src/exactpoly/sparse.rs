use super::poly::LaurentPoly;
use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashMap;

/// Finitely supported map from keys to nonzero Laurent polynomials.
///
/// Iteration follows the key order, so every output built from it is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector<K: Ord> {
    entries: BTreeMap<K, LaurentPoly>,
}

impl<K: Ord> Default for SparseVector<K> {
    fn default() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(k: K) -> Self {
        let mut v = Self::new();
        v.add_term(k, &LaurentPoly::one());
        v
    }

    pub fn add_term(&mut self, k: K, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVector<K>, c: &LaurentPoly) {
        for (k, v) in &other.entries {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn get(&self, k: &K) -> LaurentPoly {
        self.entries.get(k).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, k: &K) -> Option<&LaurentPoly> {
        self.entries.get(k)
    }

    pub fn remove(&mut self, k: &K) -> Option<LaurentPoly> {
        self.entries.remove(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficientwise bar map.
    pub fn bar_coeffs(&self) -> Self {
        SparseVector {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.bar())).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> SparseVector<K2> {
        let mut out = SparseVector::new();
        for (k, v) in &self.entries {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        SparseVector {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, LaurentPoly)> for SparseVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, LaurentPoly)>>(iter: I) -> Self {
        let mut v = SparseVector::new();
        for (k, c) in iter {
            v.add_term(k, &c);
        }
        v
    }
}

pub type Column = Vec<(u32, LaurentPoly)>;

/// Column-major sparse matrix over `Z[q, q^-1]` with row indices sorted in
/// each column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Column>,
}

/// Sums a bag of (row, coeff) contributions into a sorted column.
pub fn collect_column(acc: HashMap<u32, LaurentPoly>) -> Column {
    let mut col: Column = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    col.sort_unstable_by_key(|e| e.0);
    col
}

/// Accumulates `c * col` into `acc`.
pub fn axpy(acc: &mut HashMap<u32, LaurentPoly>, col: &[(u32, LaurentPoly)], c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    for (r, v) in col {
        let prod = if c.is_one() { v.clone() } else { v * c };
        acc.entry(*r)
            .and_modify(|e| *e += &prod)
            .or_insert(prod);
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, ncols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(|i| vec![(i as u32, LaurentPoly::one())]).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<Column>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, LaurentPoly)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Column> {
        self.cols
    }

    pub fn set_col(&mut self, j: usize, col: Column) {
        self.cols[j] = col;
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        let col = &self.cols[j];
        match col.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(p) => col[p].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Entrywise bar.
    pub fn bar(&self) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, v.bar())).collect())
                .collect(),
        }
    }

    /// `self * x` for a sparse column vector `x`.
    pub fn apply(&self, x: &[(u32, LaurentPoly)]) -> Column {
        let mut acc = HashMap::new();
        for (j, c) in x {
            axpy(&mut acc, &self.cols[*j as usize], c);
        }
        collect_column(acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.rows);
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.ncols());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc = HashMap::new();
                axpy(&mut acc, a, &LaurentPoly::one());
                axpy(&mut acc, b, &LaurentPoly::one());
                collect_column(acc)
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, c: &LaurentPoly) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, v)| (*r, v * c))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: &[&[(u32, i64)]]) -> SparseMatrix {
        SparseMatrix::from_columns(
            rows,
            cols.iter()
                .map(|c| c.iter().map(|(r, v)| (*r, LaurentPoly::constant(*v))).collect())
                .collect(),
        )
    }

    #[test]
    fn matmul_small() {
        // [[1,2],[0,1]] * [[1,0],[3,1]] = [[7,2],[3,1]]
        let a = m(2, &[&[(0, 1)], &[(0, 2), (1, 1)]]);
        let b = m(2, &[&[(0, 1), (1, 3)], &[(1, 1)]]);
        let c = a.mul(&b);
        assert_eq!(c.get(0, 0), LaurentPoly::constant(7));
        assert_eq!(c.get(1, 0), LaurentPoly::constant(3));
        assert_eq!(c.get(0, 1), LaurentPoly::constant(2));
        assert_eq!(c.get(1, 1), LaurentPoly::constant(1));
    }

    #[test]
    fn vector_cancellation_drops_key() {
        let mut v: SparseVector<i32> = SparseVector::unit(3);
        v.add_term(3, &LaurentPoly::constant(-1));
        assert!(v.is_empty());
    }
}
