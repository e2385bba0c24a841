//! Finite periodic lattices: instantiate a code on an L1 x ... x LD torus as
//! a matrix over the base field, compute ranks and the ground-space
//! parameter k, and cross-check against a brute-force group-order oracle.

use crate::code::CodeDef;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::PolyMatrix;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug)]
pub struct LatticeConfig {
    /// cap on matrix cells (bits for packed F2, 64x weighted otherwise)
    pub max_cells: u64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            max_cells: 1_000_000_000,
        }
    }
}

/// Row-major bit matrix over F2 with 64-bit word rows.
#[derive(Clone, Debug)]
pub struct BitMat {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMat {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Rank by forward Gaussian elimination; destroys a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let mut pivot = None;
            for r in rank..m.rows {
                if m.get(r, c) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// self * rhs over F2.
    pub fn mul(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = BitMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    let (s, d) = (j * rhs.words, i * out.words);
                    for k in 0..rhs.words {
                        out.data[d + k] ^= rhs.data[s + k];
                    }
                }
            }
        }
        out
    }
}

/// Dense matrix over an arbitrary finite field (correctness path for p > 2).
#[derive(Clone, Debug)]
pub struct DenseMat {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Elem>,
}

impl DenseMat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            field: field.clone(),
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: Elem) {
        let cur = self.data[r * self.cols + c];
        self.data[r * self.cols + c] = self.field.add(cur, v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let f = m.field.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let mut pivot = None;
            for r in rank..m.rows {
                if m.get(r, c) != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            for k in 0..m.cols {
                m.data.swap(rank * m.cols + k, p * m.cols + k);
            }
            let inv = f.inv(m.get(rank, c)).unwrap();
            for k in 0..m.cols {
                let v = f.mul(m.data[rank * m.cols + k], inv);
                m.data[rank * m.cols + k] = v;
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for k in 0..m.cols {
                    let sub = f.mul(factor, m.data[rank * m.cols + k]);
                    let cur = m.data[r * m.cols + k];
                    m.data[r * m.cols + k] = f.sub(cur, sub);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn mul(&self, rhs: &DenseMat) -> DenseMat {
        assert_eq!(self.cols, rhs.rows);
        let f = self.field.clone();
        let mut out = DenseMat::zero(&f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.cols {
                    let v = f.mul(a, rhs.get(j, k));
                    out.add_at(i, k, v);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum FlatMat {
    Bits(BitMat),
    Dense(DenseMat),
}

impl FlatMat {
    pub fn rows(&self) -> usize {
        match self {
            FlatMat::Bits(m) => m.rows,
            FlatMat::Dense(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            FlatMat::Bits(m) => m.cols,
            FlatMat::Dense(m) => m.cols,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            FlatMat::Bits(m) => m.rank(),
            FlatMat::Dense(m) => m.rank(),
        }
    }

    pub fn product_is_zero(&self, rhs: &FlatMat) -> bool {
        match (self, rhs) {
            (FlatMat::Bits(a), FlatMat::Bits(b)) => a.mul(b).is_zero(),
            (FlatMat::Dense(a), FlatMat::Dense(b)) => a.mul(b).is_zero(),
            _ => unreachable!("matrices from one instantiation share a field"),
        }
    }
}

/// A code evaluated on a periodic lattice with the given per-axis sizes.
#[derive(Clone, Debug)]
pub struct LatticeInstance {
    pub sizes: Vec<u32>,
    pub site_count: usize,
    pub qubits: usize,
    pub generators: usize,
    pub sigma_l: FlatMat,
    pub epsilon_l: FlatMat,
}

fn site_count(sizes: &[u32]) -> usize {
    sizes.iter().map(|&l| l as usize).product()
}

/// Flat site index: axis 0 is the fastest-varying digit.
fn flat_site(coords: &[i64], sizes: &[u32]) -> usize {
    let mut idx = 0usize;
    let mut stride = 1usize;
    for (c, &l) in coords.iter().zip(sizes) {
        let l = l as i64;
        idx += (c.rem_euclid(l)) as usize * stride;
        stride *= l as usize;
    }
    idx
}

fn site_coords(mut idx: usize, sizes: &[u32]) -> Vec<i64> {
    sizes
        .iter()
        .map(|&l| {
            let c = (idx % l as usize) as i64;
            idx /= l as usize;
            c
        })
        .collect()
}

/// Evaluate a polynomial matrix on the torus: the monomial x^a becomes the
/// cyclic shift by a (mod L) on each axis. Row (i, site), column (j, site)
/// flatten to i*S + site and j*S + site.
pub fn instantiate_matrix(m: &PolyMatrix, sizes: &[u32], cfg: &LatticeConfig) -> Result<FlatMat> {
    if sizes.len() != m.dim || sizes.iter().any(|&l| l == 0) {
        return Err(Error::Invalid(format!(
            "need {} positive lattice sizes",
            m.dim
        )));
    }
    let s = site_count(sizes);
    let (rows, cols) = (m.rows * s, m.cols * s);
    let binary = m.field.characteristic() == 2 && m.field.extension_degree() == 1;
    let weight = if binary { 1 } else { 64 };
    let cells = rows as u64 * cols as u64 * weight;
    if cells > cfg.max_cells {
        return Err(Error::CellCapExceeded {
            cells,
            limit: cfg.max_cells,
        });
    }
    let mut bits = binary.then(|| BitMat::zero(rows, cols));
    let mut dense = (!binary).then(|| DenseMat::zero(&m.field, rows, cols));
    for i in 0..m.rows {
        for j in 0..m.cols {
            let p = m.at(i, j);
            for (exps, &c) in p.iter_terms() {
                for site in 0..s {
                    let mut coords = site_coords(site, sizes);
                    for (co, &e) in coords.iter_mut().zip(exps) {
                        *co += e as i64;
                    }
                    let dst = flat_site(&coords, sizes);
                    let (r, col) = (i * s + dst, j * s + site);
                    if let Some(b) = bits.as_mut() {
                        if c == 1 {
                            b.flip(r, col);
                        }
                    } else if let Some(d) = dense.as_mut() {
                        d.add_at(r, col, c);
                    }
                }
            }
        }
    }
    Ok(match bits {
        Some(b) => FlatMat::Bits(b),
        None => FlatMat::Dense(dense.unwrap()),
    })
}

pub fn instantiate(code: &CodeDef, sizes: &[u32], cfg: &LatticeConfig) -> Result<LatticeInstance> {
    let sigma_l = instantiate_matrix(&code.sigma, sizes, cfg)?;
    let epsilon_l = instantiate_matrix(&code.excitation_map(), sizes, cfg)?;
    debug_assert!(epsilon_l.product_is_zero(&sigma_l));
    Ok(LatticeInstance {
        sizes: sizes.to_vec(),
        site_count: site_count(sizes),
        qubits: code.qubits,
        generators: code.t(),
        sigma_l,
        epsilon_l,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub sizes: Vec<u32>,
    pub site_count: usize,
    pub k: usize,
    pub dim_k: usize,
    pub rank_sigma: usize,
    pub rank_epsilon: usize,
}

/// Ground-space parameter k on the given lattice, with the two rank formulas
/// cross-checked against each other. A mismatch is a construction bug, not a
/// property of the input, so it is a hard error.
pub fn degeneracy_k(code: &CodeDef, sizes: &[u32], cfg: &LatticeConfig) -> Result<DegeneracyReport> {
    let inst = instantiate(code, sizes, cfg)?;
    if !inst.epsilon_l.product_is_zero(&inst.sigma_l) {
        return Err(Error::Invalid("epsilon_L * sigma_L != 0".into()));
    }
    let s = inst.site_count;
    let q = inst.qubits;
    let rank_sigma = inst.sigma_l.rank();
    let rank_epsilon = inst.epsilon_l.rank();
    let k = q * s - rank_sigma;
    let nullity_eps = 2 * q * s - rank_epsilon;
    let k2 = nullity_eps - q * s;
    if k != k2 {
        return Err(Error::Invalid(format!(
            "rank cross-check failed: qS - rank sigma_L = {k}, null eps_L - qS = {k2}"
        )));
    }
    if inst.generators == q {
        // square case: k also equals dim coker epsilon_L
        let coker = inst.generators * s - rank_epsilon;
        if coker != k {
            return Err(Error::Invalid(format!(
                "cokernel cross-check failed: {coker} vs {k}"
            )));
        }
    }
    let dim_k = nullity_eps - rank_sigma;
    if dim_k != 2 * k {
        return Err(Error::Invalid(format!(
            "dim K = {dim_k} is not 2k = {}",
            2 * k
        )));
    }
    Ok(DegeneracyReport {
        sizes: sizes.to_vec(),
        site_count: s,
        k,
        dim_k,
        rank_sigma,
        rank_epsilon,
    })
}

/// Independent oracle: enumerate all 2^(t*S) products of translated
/// generators by Gray-code column flips, count the distinct group elements,
/// and recover k from the group order. No elimination involved.
pub fn brute_force_group_order(code: &CodeDef, sizes: &[u32], cfg: &LatticeConfig) -> Result<usize> {
    if code.field.characteristic() != 2 || code.field.extension_degree() != 1 {
        return Err(Error::Unsupported(
            "brute-force oracle runs over F2 only".into(),
        ));
    }
    let s = site_count(sizes);
    let n = code.t() * s;
    if n > 20 {
        return Err(Error::Invalid(format!(
            "enumeration bound exceeded: t*S = {n} > 20"
        )));
    }
    let inst = instantiate(code, sizes, cfg)?;
    let FlatMat::Bits(sigma) = &inst.sigma_l else {
        unreachable!("F2 instantiation is bit-packed");
    };
    // column access: transposed copy so each generator is a contiguous key
    let words = (sigma.rows).div_ceil(64);
    let mut columns = vec![vec![0u64; words]; n];
    for (c, col) in columns.iter_mut().enumerate() {
        for r in 0..sigma.rows {
            if sigma.get(r, c) {
                col[r / 64] |= 1 << (r % 64);
            }
        }
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::with_capacity(1 << n);
    let mut cur = vec![0u64; words];
    seen.insert(cur.clone());
    for i in 1u64..(1 << n) {
        let flip = i.trailing_zeros() as usize;
        for (w, cw) in cur.iter_mut().zip(&columns[flip]) {
            *w ^= cw;
        }
        seen.insert(cur.clone());
    }
    let order = seen.len();
    assert!(order.is_power_of_two());
    let log2 = order.trailing_zeros() as usize;
    Ok(code.qubits * s - log2)
}

/// Closed form for the cubic code's k at uniform size L, via the degree of
/// gcd((1+x)^L + 1, (1+wx)^L + 1, (1+w^2 x)^L + 1) over GF(4).
pub fn cubic_closed_form(l: u32) -> usize {
    let f4 = Field::gf4();
    // univariate polynomials as coefficient vectors, index = degree
    let one = vec![1u64];
    let pow_plus_one = |a: Elem| -> Vec<Elem> {
        // (1 + a x)^L + 1 by repeated squaring
        let base = vec![1, a];
        let mut acc = one.clone();
        let mut sq = base;
        let mut e = l;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul(&f4, &acc, &sq);
            }
            sq = poly_mul(&f4, &sq, &sq);
            e >>= 1;
        }
        acc[0] = f4.add(acc[0], 1);
        trim(acc)
    };
    let w: Elem = 2; // the generator of GF(4) in packed-digit encoding
    let w2 = f4.mul(w, w);
    let mut g = pow_plus_one(1);
    g = poly_gcd(&f4, &g, &pow_plus_one(w));
    g = poly_gcd(&f4, &g, &pow_plus_one(w2));
    let deg = g.len().saturating_sub(1);
    4 * deg - 2
}

fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn poly_rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).unwrap();
    while r.len() > 1 || r[0] != 0 {
        let dr = r.len() - 1;
        if dr < db || (r.len() == 1 && r[0] == 0) {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        for (k, &bk) in b.iter().enumerate() {
            let sub = f.mul(c, bk);
            r[dr - db + k] = f.sub(r[dr - db + k], sub);
        }
        r = trim(r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    r
}

fn poly_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    // monic normalization
    let inv = f.inv(*a.last().unwrap()).unwrap();
    a.iter().map(|&c| f.mul(c, inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cfg() -> LatticeConfig {
        LatticeConfig::default()
    }

    #[test]
    fn ising_chain_sizes() {
        let code = catalog::ising1d();
        let inst = instantiate(&code, &[3], &cfg()).unwrap();
        assert_eq!(inst.sigma_l.rows(), 6);
        assert_eq!(inst.sigma_l.cols(), 3);
        // upper (X) block zero, lower block the circulant of 1+x with rank 2
        assert_eq!(inst.sigma_l.rank(), 2);
        let r = degeneracy_k(&code, &[3], &cfg()).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(brute_force_group_order(&code, &[3], &cfg()).unwrap(), 1);
    }

    #[test]
    fn size_one_evaluates_at_identity() {
        let code = catalog::ising1d();
        let inst = instantiate(&code, &[1], &cfg()).unwrap();
        // sigma(1) = 0 for the Ising chain: 1 + x vanishes at x = 1
        assert_eq!(inst.sigma_l.rank(), 0);
        assert_eq!(brute_force_group_order(&code, &[1], &cfg()).unwrap(), 1);
    }

    #[test]
    fn toric2d_small_lattices() {
        let code = catalog::toric2d();
        let inst = instantiate(&code, &[2, 2], &cfg()).unwrap();
        assert_eq!(inst.sigma_l.rows(), 16);
        assert_eq!(inst.sigma_l.cols(), 8);
        assert_eq!(inst.sigma_l.rank(), 6);
        for l in 2u32..=6 {
            let r = degeneracy_k(&code, &[l, l], &cfg()).unwrap();
            assert_eq!(r.k, 2, "L = {l}");
        }
        assert_eq!(brute_force_group_order(&code, &[2, 2], &cfg()).unwrap(), 2);
    }

    #[test]
    fn toric3d_k_is_three() {
        let code = catalog::toric3d();
        for l in [3u32, 4, 5] {
            let r = degeneracy_k(&code, &[l, l, l], &cfg()).unwrap();
            assert_eq!(r.k, 3, "L = {l}");
        }
    }

    #[test]
    fn chamon_gcd_formula() {
        let code = catalog::chamon();
        let cases = [((1u32, 1u32, 1u32), 8), ((2, 1, 1), 8), ((2, 2, 2), 16)];
        for ((l, m, n), want) in cases {
            let r = degeneracy_k(&code, &[2 * l, 2 * m, 2 * n], &cfg()).unwrap();
            assert_eq!(r.k, want, "sizes 2*({l},{m},{n})");
        }
    }

    #[test]
    fn levin_wen_parity() {
        let code = catalog::levin_wen();
        for (l, want) in [(2u32, 3), (3, 2), (4, 3), (5, 2)] {
            let r = degeneracy_k(&code, &[l, l, l], &cfg()).unwrap();
            assert_eq!(r.k, want, "L = {l}");
        }
    }

    #[test]
    fn cubic_closed_form_cases() {
        assert_eq!(cubic_closed_form(4), 14);
        assert_eq!(cubic_closed_form(5), 2);
        assert_eq!(cubic_closed_form(15), 50);
    }

    #[test]
    fn cubic_closed_form_matches_rank() {
        let code = catalog::cubic();
        for l in [2u32, 3, 4] {
            let r = degeneracy_k(&code, &[l, l, l], &cfg()).unwrap();
            assert_eq!(r.k, cubic_closed_form(l), "L = {l}");
        }
    }

    #[test]
    fn oracle_matches_rank_on_small_sizes() {
        for code in catalog::all() {
            let sizes: Vec<u32> = vec![2; code.dim];
            let s: usize = sizes.iter().map(|&l| l as usize).product();
            if code.t() * s > 16 || code.field.order() != 2 {
                continue;
            }
            let k = degeneracy_k(&code, &sizes, &cfg()).unwrap().k;
            let b = brute_force_group_order(&code, &sizes, &cfg()).unwrap();
            assert_eq!(k, b, "{}", code.name);
        }
    }
}
