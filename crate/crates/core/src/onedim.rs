//! One-dimensional classification: every commuting code on a chain is
//! equivalent, via elementary symplectic moves and coarse-graining, to a
//! direct sum of Ising chains, ancilla qubits, and non-interacting qubits.

use crate::code::{apply_elementary, CodeDef, Move, SymplecticTransform};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::LaurentPoly;
use serde::Serialize;

/// Degree of a univariate Laurent polynomial: max exponent minus min
/// exponent, so every monomial has degree zero (monomials are units).
pub fn laurent_degree(f: &LaurentPoly) -> Option<i64> {
    let max = f.max_exps()?;
    let min = f.min_exps()?;
    Some(max[0] as i64 - min[0] as i64)
}

/// Division n = quo * d + rem with laurent_degree(rem) < laurent_degree(d).
pub fn divmod_laurent(n: &LaurentPoly, d: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if d.is_zero() {
        return Err(Error::Invalid("division by zero".into()));
    }
    let field = d.field.clone();
    let dmin = d.min_exps().unwrap()[0];
    let d0 = d.mul_term(&[-dmin], 1); // min exponent 0
    let db = d0.max_exps().unwrap()[0];
    let beta = d0.coeff(&[db]);
    let beta_inv = field.inv(beta).unwrap();
    let mut r = n.clone();
    let mut quo = LaurentPoly::zero(&field, 1);
    while !r.is_zero() {
        let rmax = r.max_exps().unwrap()[0];
        let rmin = r.min_exps().unwrap()[0];
        if (rmax - rmin) < db {
            break;
        }
        let c = field.mul(r.coeff(&[rmax]), beta_inv);
        let t = LaurentPoly::monomial(&field, vec![rmax - db], c);
        r = r.sub(&t.mul(&d0));
        quo = quo.add(&t);
    }
    // we divided by d0 = d * x^{-dmin}
    Ok((quo.mul_term(&[-dmin], 1), r))
}

/// Euclid's algorithm on the 1 x 2 matrix (f g): returns the gcd (under the
/// Laurent degree, normalized by strip_unit) and the column-operation
/// transcript that turns (f g) into (gcd 0).
pub fn euclid_gcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<(LaurentPoly, Vec<Move>)> {
    let mut a = f.clone();
    let mut b = g.clone();
    let mut moves = Vec::new();
    while !b.is_zero() {
        let (quo, rem) = divmod_laurent(&a, &b)?;
        moves.push(Move::ColAdd {
            i: 0,
            j: 1,
            a: quo.neg(),
        });
        moves.push(Move::ColSwap { i: 0, j: 1 });
        a = b;
        b = rem;
    }
    if a.is_zero() {
        return Ok((a, moves));
    }
    Ok((a.strip_unit(), moves))
}

fn deg_of(f: &LaurentPoly) -> i64 {
    laurent_degree(f).unwrap_or(-1)
}

const SMITH_CAP: usize = 100_000;

/// Transform a commuting 1D code into symplectic Smith form: the X block
/// carries a diagonal f_1, f_2, ... and the Z block is zero. Only elementary
/// symplectic row moves and invertible column operations are used; the
/// transcript is returned with the diagonalized code.
pub fn symplectic_smith(code: &CodeDef) -> Result<(CodeDef, SymplecticTransform)> {
    if code.dim != 1 {
        return Err(Error::Invalid("symplectic Smith form needs D = 1".into()));
    }
    if let Err(w) = code.check_commuting() {
        return Err(Error::NotCommuting(format!(
            "generators {} and {} overlap with pairing {}",
            w.row, w.col, w.value
        )));
    }
    let mut work = code.clone();
    let mut transform = SymplecticTransform::identity(&code.field, 1, code.qubits);
    let q = code.qubits;
    let t = code.t();
    let mut budget = SMITH_CAP;
    let spend = |budget: &mut usize| -> Result<()> {
        if *budget == 0 {
            return Err(Error::IterationCapExceeded {
                what: "symplectic Smith form",
                limit: SMITH_CAP,
            });
        }
        *budget -= 1;
        Ok(())
    };

    let mut k = 0;
    'pivot: while k < q.min(t) {
        spend(&mut budget)?;
        // find the minimal-degree nonzero X-block entry in the submatrix
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..q {
            for j in k..t {
                let e = work.sigma.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let d = deg_of(e);
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            // X submatrix empty: pull a nonzero Z row into the X block
            let mut pulled = false;
            for j in k..q {
                if (k..t).any(|c| !work.sigma.at(q + j, c).is_zero()) {
                    apply_elementary(&mut work, &mut transform, &Move::Hadamard { qubit: j })?;
                    pulled = true;
                    break;
                }
            }
            if pulled {
                continue 'pivot;
            }
            break 'pivot; // the remaining submatrix is zero: done
        };
        if pi != k {
            apply_elementary(&mut work, &mut transform, &Move::QubitSwap { i: k, j: pi })?;
        }
        if pj != k {
            apply_elementary(&mut work, &mut transform, &Move::ColSwap { i: k, j: pj })?;
        }

        // Euclid on row k and column k of the X block
        let mut dirty = false;
        let f1 = work.sigma.at(k, k).clone();
        for j in k + 1..t {
            let e = work.sigma.at(k, j).clone();
            if e.is_zero() {
                continue;
            }
            let (quo, rem) = divmod_laurent(&e, &f1)?;
            apply_elementary(
                &mut work,
                &mut transform,
                &Move::ColAdd {
                    i: j,
                    j: k,
                    a: quo.neg(),
                },
            )?;
            if !rem.is_zero() {
                dirty = true;
            }
        }
        for i in k + 1..q {
            let e = work.sigma.at(i, k).clone();
            if e.is_zero() {
                continue;
            }
            let (quo, rem) = divmod_laurent(&e, &f1)?;
            apply_elementary(
                &mut work,
                &mut transform,
                &Move::Cnot {
                    i,
                    j: k,
                    a: quo.neg(),
                },
            )?;
            if !rem.is_zero() {
                dirty = true;
            }
        }
        if dirty {
            // a remainder of smaller degree appeared; rerun with it as pivot
            continue 'pivot;
        }

        // clear the Z-block entries of column k below other qubits: pull up
        // by Hadamard when not divisible (this strictly reduces the pivot
        // degree on the rerun), otherwise clear by controlled-NOT-Hadamard
        for j in k + 1..q {
            let gj = work.sigma.at(q + j, k).clone();
            if gj.is_zero() {
                continue;
            }
            match gj.divide_exact(&f1) {
                None => {
                    apply_elementary(&mut work, &mut transform, &Move::Hadamard { qubit: j })?;
                    continue 'pivot;
                }
                Some(quo) => {
                    // row_{q+j} += antipode(a) row_k with antipode(a) = -quo
                    apply_elementary(
                        &mut work,
                        &mut transform,
                        &Move::CnotHadamard {
                            i: k,
                            j,
                            a: quo.neg().antipode(),
                        },
                    )?;
                }
            }
        }

        // reduce g_1 = the (q+k, k) entry by controlled-Phase, using the
        // commutativity identity antipode(f_1) g_1 = antipode(g_1) f_1
        loop {
            spend(&mut budget)?;
            let g1 = work.sigma.at(q + k, k).clone();
            if g1.is_zero() {
                break;
            }
            let f1 = work.sigma.at(k, k).clone();
            if deg_of(&g1) < deg_of(&f1) {
                apply_elementary(&mut work, &mut transform, &Move::Hadamard { qubit: k })?;
                continue 'pivot;
            }
            // f_1 = alpha x^a + ... + beta x^b, g_1 = gamma x^c + ... + delta x^d;
            // commutativity forces c - a = b - d and alpha delta = beta gamma,
            // so h below is antipode-symmetric and cancels both ends of g_1
            let field = work.field.clone();
            let b = f1.max_exps().unwrap()[0];
            let a = f1.min_exps().unwrap()[0];
            let d = g1.max_exps().unwrap()[0];
            let c = g1.min_exps().unwrap()[0];
            let beta = f1.coeff(&[b]);
            let delta = g1.coeff(&[d]);
            let ratio = field.mul(delta, field.inv(beta).unwrap());
            let mut h = LaurentPoly::monomial(&field, vec![d - b], ratio);
            if d - b != a - c {
                return Err(Error::Invalid(
                    "commutativity identity violated during degree reduction".into(),
                ));
            }
            if d - b != 0 {
                h = h.add(&LaurentPoly::monomial(&field, vec![c - a], ratio));
            }
            apply_elementary(
                &mut work,
                &mut transform,
                &Move::CPhase {
                    qubit: k,
                    f: h.neg(),
                },
            )?;
        }

        // commutativity of column k against later columns forces the rest of
        // the pivot qubit's Z row to vanish
        for j in k + 1..t {
            if !work.sigma.at(q + k, j).is_zero() {
                return Err(Error::Invalid(
                    "nonzero residual Z-row entry after pivot reduction".into(),
                ));
            }
        }
        k += 1;
    }
    debug_assert!(transform.is_symplectic());
    Ok((work, transform))
}

/// Smallest n >= 1 with f(x) | x^n - 1, i.e. the order of x modulo f.
/// Requires f(0) != 0 after unit normalization.
pub fn order_of_x(f: &LaurentPoly) -> Result<u32> {
    let fs = f.strip_unit();
    let field = fs.field.clone();
    let deg = fs.max_exps().unwrap()[0];
    if deg == 0 {
        return Ok(1);
    }
    let cap = 1_000_000u32;
    // powers of x modulo fs, as coefficient vectors indexed by degree
    let d = deg as usize;
    let lead_inv = field.inv(fs.coeff(&[deg])).unwrap();
    let mut cur = vec![0u64; d];
    cur[if d > 1 { 1 } else { 0 }] = 1;
    if d == 1 {
        // x = -f_0 / f_1 mod fs
        cur[0] = field.mul(field.neg(fs.coeff(&[0])), lead_inv);
    }
    for n in 1..=cap {
        if cur.iter().enumerate().all(|(i, &c)| c == if i == 0 { 1 } else { 0 }) {
            return Ok(n);
        }
        // multiply by x
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            let c = field.mul(top, lead_inv);
            for i in 0..d {
                let sub = field.mul(c, fs.coeff(&[i as i32]));
                cur[i] = field.sub(cur[i], sub);
            }
        }
    }
    Err(Error::IterationCapExceeded {
        what: "order of x modulo f",
        limit: cap as usize,
    })
}

/// Plain (non-symplectic) Smith diagonalization for univariate polynomial
/// matrices. Returns the diagonal entries.
fn smith_diagonal(m: &mut PolyMatrix) -> Result<Vec<LaurentPoly>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut budget = SMITH_CAP;
    for k in 0..rows.min(cols) {
        'clean: loop {
            budget -= 1;
            if budget == 0 {
                return Err(Error::IterationCapExceeded {
                    what: "Smith diagonalization",
                    limit: SMITH_CAP,
                });
            }
            let mut best: Option<(usize, usize, i64)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = m.at(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let d = deg_of(e);
                    if best.is_none_or(|(_, _, bd)| d < bd) {
                        best = Some((i, j, d));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'clean;
            };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            let f = m.at(k, k).clone();
            let mut dirty = false;
            for j in k + 1..cols {
                let e = m.at(k, j).clone();
                if e.is_zero() {
                    continue;
                }
                let (quo, rem) = divmod_laurent(&e, &f)?;
                m.col_add(j, k, &quo.neg());
                dirty |= !rem.is_zero();
            }
            for i in k + 1..rows {
                let e = m.at(i, k).clone();
                if e.is_zero() {
                    continue;
                }
                let (quo, rem) = divmod_laurent(&e, &f)?;
                m.row_add(i, k, &quo.neg());
                dirty |= !rem.is_zero();
            }
            if !dirty {
                break 'clean;
            }
        }
    }
    Ok((0..rows.min(cols)).map(|k| m.at(k, k).clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct IsingDecomposition {
    pub coarse_factor: u32,
    pub ising_count: usize,
    pub diagonal: Vec<String>,
}

/// Coarse-grain a single stabilizer polynomial f into Ising copies: with
/// n the order of x mod f and x' = x^n, multiplication by f becomes an
/// n x n matrix over F_p[x'] whose Smith form is diagonal with entries that
/// are units or unit multiples of x' - 1; the latter count equals deg f.
pub fn ising_decompose(f: &LaurentPoly) -> Result<IsingDecomposition> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot decompose the zero polynomial".into()));
    }
    let fs = f.strip_unit();
    let field = fs.field.clone();
    if fs.is_monomial_unit() {
        return Ok(IsingDecomposition {
            coarse_factor: 1,
            ising_count: 0,
            diagonal: vec!["1".into()],
        });
    }
    let n = order_of_x(&fs)? as usize;
    let deg = fs.max_exps().unwrap()[0] as usize;
    // multiplication by f on the basis {1, x, ..., x^{n-1}} over F_p[x']:
    // x^{j+k} = x^{(j+k) mod n} * (x')^{(j+k) div n}
    let mut a = PolyMatrix::zero(&field, 1, n, n);
    for (exps, &c) in fs.iter_terms() {
        let k = exps[0] as usize;
        for j in 0..n {
            let m = (j + k) % n;
            let e = ((j + k) / n) as i32;
            let term = LaurentPoly::monomial(&field, vec![e], c);
            *a.at_mut(m, j) = a.at(m, j).add(&term);
        }
    }
    let diag = smith_diagonal(&mut a)?;
    let xm1 = LaurentPoly::var(&field, 1, 0, 1).sub(&LaurentPoly::one(&field, 1));
    let mut ising = 0;
    for d in &diag {
        if d.is_zero() {
            return Err(Error::Invalid("singular coarse-grained multiplier".into()));
        }
        if d.is_monomial_unit() {
            continue;
        }
        if d.strip_unit() != xm1.strip_unit() {
            return Err(Error::Invalid(format!(
                "diagonal entry {d} is neither a unit nor x' - 1"
            )));
        }
        ising += 1;
    }
    if ising != deg {
        return Err(Error::Invalid(format!(
            "expected deg f = {deg} Ising entries, found {ising}"
        )));
    }
    Ok(IsingDecomposition {
        coarse_factor: n as u32,
        ising_count: ising,
        diagonal: diag.iter().map(|d| d.to_string()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification1D {
    /// Ising copies per coarse unit cell
    pub ising_copies: usize,
    /// ancilla qubits per coarse unit cell (stabilized, stateless)
    pub free_qubits: usize,
    /// qubits per coarse cell touched by no stabilizer at all
    pub unconstrained_qubits: usize,
    /// coarse-graining factor (lcm of the per-polynomial factors)
    pub coarse_factor: u32,
    /// diagonal stabilizer polynomials after the symplectic Smith form
    pub diagonal: Vec<String>,
    #[serde(skip)]
    pub transcript: Vec<Move>,
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// Full 1D classification: symplectic Smith form, then per-polynomial
/// Ising decomposition at the common coarse factor.
pub fn classify_1d(code: &CodeDef) -> Result<Classification1D> {
    let (smith, transform) = symplectic_smith(code)?;
    let q = code.qubits;
    let t = code.t();
    let mut diag = Vec::new();
    for k in 0..q {
        if k < t {
            diag.push(smith.sigma.at(k, k).clone());
        } else {
            diag.push(LaurentPoly::zero(&code.field, 1));
        }
    }
    let mut parts = Vec::new();
    let mut coarse = 1u32;
    for f in &diag {
        if f.is_zero() {
            parts.push(None);
            continue;
        }
        let dec = ising_decompose(f)?;
        coarse = lcm_u32(coarse, dec.coarse_factor);
        parts.push(Some(dec));
    }
    let n = coarse as usize;
    let mut ising = 0;
    let mut free = 0;
    let mut unconstrained = 0;
    for part in &parts {
        match part {
            None => unconstrained += n,
            Some(dec) => {
                ising += dec.ising_count;
                free += n - dec.ising_count;
            }
        }
    }
    Ok(Classification1D {
        ising_copies: ising,
        free_qubits: free,
        unconstrained_qubits: unconstrained,
        coarse_factor: coarse,
        diagonal: diag.iter().map(|d| d.to_string()).collect(),
        transcript: transform.moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::catalog;
    use crate::poly::parse_poly;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, &f2(), 1).unwrap()
    }

    #[test]
    fn euclid_examples() {
        let (g, _) = euclid_gcd(&p("1+x"), &p("1+x^2")).unwrap();
        assert_eq!(g, p("1+x"));
        // monomials are units, so gcd of two monomials is 1
        let (g, _) = euclid_gcd(&p("x^3"), &p("x^-1")).unwrap();
        assert_eq!(g, p("1"));
        let (g, _) = euclid_gcd(&p("1+x+x^3"), &LaurentPoly::zero(&f2(), 1)).unwrap();
        assert_eq!(g, p("1+x+x^3"));
    }

    #[test]
    fn divmod_respects_degree() {
        let n = p("1+x^2+x^5");
        let d = p("x^-1+x");
        let (q, r) = divmod_laurent(&n, &d).unwrap();
        assert_eq!(q.mul(&d).add(&r), n);
        assert!(laurent_degree(&r).unwrap_or(-1) < laurent_degree(&d).unwrap());
    }

    #[test]
    fn ising_chain_already_diagonal() {
        let code = catalog::ising1d();
        let c = classify_1d(&code).unwrap();
        assert_eq!(
            (c.ising_copies, c.free_qubits, c.coarse_factor),
            (1, 0, 1)
        );
        assert_eq!(c.unconstrained_qubits, 0);
    }

    #[test]
    fn cubic_stabilizer_polynomial() {
        // sigma = (0, x^2+x+1)^T: one qubit with f = x^2+x+1, which needs
        // coarse factor 3 and splits into two Ising copies plus one ancilla
        let code = CodeDef::new(
            "test".into(),
            1,
            1,
            f2(),
            PolyMatrix::from_rows(
                &f2(),
                1,
                vec![vec![LaurentPoly::zero(&f2(), 1)], vec![p("1+x+x^2")]],
            )
            .unwrap(),
        )
        .unwrap();
        let c = classify_1d(&code).unwrap();
        assert_eq!(
            (c.ising_copies, c.free_qubits, c.coarse_factor),
            (2, 1, 3)
        );
    }

    #[test]
    fn ancilla_counts_as_free() {
        let code = catalog::ising1d().tensor_ancilla(1);
        let c = classify_1d(&code).unwrap();
        assert_eq!(
            (c.ising_copies, c.free_qubits, c.coarse_factor),
            (1, 1, 1)
        );
    }

    #[test]
    fn ising_decompose_worked_example() {
        let dec = ising_decompose(&p("1+x+x^2")).unwrap();
        assert_eq!(dec.coarse_factor, 3);
        assert_eq!(dec.ising_count, 2);
        let dec = ising_decompose(&p("1+x")).unwrap();
        assert_eq!((dec.coarse_factor, dec.ising_count), (1, 1));
        let dec = ising_decompose(&p("1+x^2")).unwrap();
        assert_eq!((dec.coarse_factor, dec.ising_count), (2, 2));
    }

    #[test]
    fn scrambled_ising_recovers() {
        let mut code = catalog::ising1d();
        let mut tr = SymplecticTransform::identity(&f2(), 1, 1);
        apply_elementary(&mut code, &mut tr, &Move::Hadamard { qubit: 0 }).unwrap();
        apply_elementary(
            &mut code,
            &mut tr,
            &Move::CPhase {
                qubit: 0,
                f: p("x+x^-1"),
            },
        )
        .unwrap();
        assert!(code.check_commuting().is_ok());
        let c = classify_1d(&code).unwrap();
        assert_eq!(
            (c.ising_copies, c.free_qubits, c.coarse_factor),
            (1, 0, 1)
        );
    }

    #[test]
    fn smith_transform_is_symplectic() {
        let code = catalog::ising1d().tensor_ancilla(2);
        let (smith, transform) = symplectic_smith(&code).unwrap();
        assert!(transform.is_symplectic());
        // Z block fully zero, X block diagonal
        let q = smith.qubits;
        for i in 0..q {
            for j in 0..smith.t() {
                assert!(smith.sigma.at(q + i, j).is_zero());
                if i != j {
                    assert!(smith.sigma.at(i, j).is_zero());
                }
            }
        }
    }
}
