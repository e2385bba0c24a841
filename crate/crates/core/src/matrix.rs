//! Dense matrices over the Laurent polynomial ring.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::LaurentPoly;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix {
    pub field: Field,
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(field: &Field, dim: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field: field.clone(),
            dim,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(field, dim); rows * cols],
        }
    }

    pub fn identity(field: &Field, dim: usize, n: usize) -> Self {
        let mut m = Self::zero(field, dim, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one(field, dim);
        }
        m
    }

    pub fn from_rows(field: &Field, dim: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(PolyMatrix {
            field: field.clone(),
            dim,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(&self.field, self.dim, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    /// Transpose composed with the entrywise antipode.
    pub fn dagger(&self) -> Self {
        let mut m = self.transpose();
        for e in m.entries.iter_mut() {
            *e = e.antipode();
        }
        m
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("add".into()));
        }
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&rhs.entries) {
            *a = a.add(b);
        }
        Ok(m)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = Self::zero(&self.field, self.dim, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = LaurentPoly::zero(&self.field, self.dim);
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(rhs.at(k, j)));
                }
                *m.at_mut(i, j) = acc;
            }
        }
        Ok(m)
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = e.neg();
        }
        m
    }

    pub fn scale_row(&mut self, i: usize, by: &LaurentPoly) {
        for j in 0..self.cols {
            *self.at_mut(i, j) = self.at(i, j).mul(by);
        }
    }

    pub fn scale_col(&mut self, j: usize, by: &LaurentPoly) {
        for i in 0..self.rows {
            *self.at_mut(i, j) = self.at(i, j).mul(by);
        }
    }

    /// row i += f * row j
    pub fn row_add(&mut self, i: usize, j: usize, f: &LaurentPoly) {
        for k in 0..self.cols {
            let v = self.at(i, k).add(&self.at(j, k).mul(f));
            *self.at_mut(i, k) = v;
        }
    }

    /// col i += f * col j
    pub fn col_add(&mut self, i: usize, j: usize, f: &LaurentPoly) {
        for k in 0..self.rows {
            let v = self.at(k, i).add(&self.at(k, j).mul(f));
            *self.at_mut(k, i) = v;
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            let a = i * self.cols + k;
            let b = j * self.cols + k;
            self.entries.swap(a, b);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            let a = k * self.cols + i;
            let b = k * self.cols + j;
            self.entries.swap(a, b);
        }
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack".into()));
        }
        let mut m = self.clone();
        m.rows += other.rows;
        m.entries.extend(other.entries.iter().cloned());
        Ok(m)
    }

    /// The symplectic form [[0, id_q], [-id_q, 0]].
    pub fn lambda_q(field: &Field, dim: usize, q: usize) -> Self {
        let mut m = Self::zero(field, dim, 2 * q, 2 * q);
        let one = LaurentPoly::one(field, dim);
        for i in 0..q {
            *m.at_mut(i, i + q) = one.clone();
            *m.at_mut(i + q, i) = one.neg();
        }
        m
    }

    /// Determinant by Laplace expansion with memoization on row subsets.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("det of non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        let mut memo = HashMap::new();
        Ok(self.det_rec(&rows, &cols, &mut memo))
    }

    fn det_rec(
        &self,
        rows: &[usize],
        cols: &[usize],
        memo: &mut HashMap<(Vec<usize>, Vec<usize>), LaurentPoly>,
    ) -> LaurentPoly {
        if rows.is_empty() {
            return LaurentPoly::one(&self.field, self.dim);
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        // expand along the first listed column
        let c0 = cols[0];
        let rest_cols: Vec<usize> = cols[1..].to_vec();
        let mut acc = LaurentPoly::zero(&self.field, self.dim);
        for (pos, &r) in rows.iter().enumerate() {
            let e = self.at(r, c0);
            if e.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&x| x != r)
                .collect();
            let minor = self.det_rec(&sub_rows, &rest_cols, memo);
            let term = e.mul(&minor);
            acc = if pos % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        memo.insert(key, acc.clone());
        acc
    }

    /// All k x k minors, row-major over (row subset, column subset) pairs in
    /// lexicographic order of index subsets.
    pub fn minors(&self, k: usize) -> Vec<LaurentPoly> {
        if k == 0 || k > self.rows || k > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        for cs in combinations(self.cols, k) {
            let mut memo = HashMap::new();
            for rs in combinations(self.rows, k) {
                out.push(self.det_rec(&rs, &cs, &mut memo));
            }
        }
        out
    }

    /// Largest k with a nonzero k x k minor (0 for the zero matrix).
    pub fn rank(&self) -> usize {
        let maxk = self.rows.min(self.cols);
        let mut rank = 0;
        'outer: for k in 1..=maxk {
            for cs in combinations(self.cols, k) {
                let mut memo = HashMap::new();
                for rs in combinations(self.rows, k) {
                    if !self.det_rec(&rs, &cs, &mut memo).is_zero() {
                        rank = k;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        rank
    }

    /// Some nonzero k x k minor, if one exists.
    pub fn nonzero_minor(&self, k: usize) -> Option<LaurentPoly> {
        if k == 0 || k > self.rows || k > self.cols {
            return None;
        }
        for cs in combinations(self.cols, k) {
            let mut memo = HashMap::new();
            for rs in combinations(self.rows, k) {
                let d = self.det_rec(&rs, &cs, &mut memo);
                if !d.is_zero() {
                    return Some(d);
                }
            }
        }
        None
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance to the next k-subset in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn m(rows: &[&[&str]], dim: usize) -> PolyMatrix {
        let f = f2();
        PolyMatrix::from_rows(
            &f,
            dim,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, &f, dim).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn dagger_is_antihomomorphism() {
        let a = m(&[&["1+x", "y"], &["0", "x*y"]], 2);
        let b = m(&[&["x^-1", "1"], &["1+y^-1", "0"]], 2);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.dagger(), b.dagger().mul(&a.dagger()).unwrap());
    }

    #[test]
    fn lambda_squares_to_minus_one() {
        let f = f2();
        let l = PolyMatrix::lambda_q(&f, 2, 2);
        let l2 = l.mul(&l).unwrap();
        let id = PolyMatrix::identity(&f, 2, 4);
        assert_eq!(l2, id.neg());
    }

    #[test]
    fn det_and_minors() {
        let a = m(&[&["1+x", "y"], &["1", "1+y"]], 2);
        // (1+x)(1+y) - y = 1 + y + x + x*y + y = 1 + x + x*y over F_2
        let d = a.det().unwrap();
        assert_eq!(d, parse_poly("1+x+x*y", &f2(), 2).unwrap());
        assert_eq!(a.minors(1).len(), 4);
        assert_eq!(a.minors(2).len(), 1);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rank_of_rank_one_matrix() {
        let a = m(&[&["1+x", "y+x*y"], &["1", "y"]], 2);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn combinations_order() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
