//! Module-theoretic invariants of a code: exactness of the
//! stabilizer-excitation sequence, the associated (characteristic) ideal and
//! its dimension, torsion of the excitation cokernel, fractal (string)
//! generators, and the period of zero-dimensional ideals.

use crate::code::CodeDef;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{
    buchberger, graph_basis, krull_dimension, module_quotient, radical_member, saturate,
    syzygy_basis, GroebnerConfig, LaurentModule, MVec, Order,
};
use crate::poly::LaurentPoly;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    /// generators of ker(eps), as vectors of polynomial strings
    pub kernel_generators: Vec<Vec<String>>,
    /// a kernel generator outside im(sigma), when not exact
    pub witness: Option<Vec<String>>,
    /// eps * sigma == 0
    pub complex: bool,
}

fn mvec_strings(v: &MVec) -> Vec<String> {
    v.comps.iter().map(|c| c.to_string()).collect()
}

/// Generators of ker(eps) over the Laurent ring: column-normalize eps, take
/// syzygies in the polynomial ring, and undo the normalization. Localization
/// is exact, so the polynomial syzygies generate the Laurent kernel.
pub fn kernel_of_matrix(
    cols: &[MVec],
    target_rank: usize,
    cfg: &GroebnerConfig,
) -> Result<Vec<MVec>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let mut shifts = Vec::with_capacity(cols.len());
    let mut normalized = Vec::with_capacity(cols.len());
    for c in cols {
        let (n, s) = c.normalize_monomial();
        normalized.push(n);
        shifts.push(s);
    }
    let syz = syzygy_basis(&normalized, target_rank, cfg)?;
    // a syzygy s of the scaled columns gives the syzygy (s_i x^{shift_i}) of
    // the originals
    Ok(syz
        .into_iter()
        .map(|s| {
            MVec::from_comps(
                s.comps
                    .iter()
                    .zip(&shifts)
                    .map(|(p, sh)| p.mul_term(sh, 1))
                    .collect(),
            )
        })
        .collect())
}

pub fn exactness_check(code: &CodeDef, cfg: &GroebnerConfig) -> Result<ExactnessReport> {
    let eps = code.excitation_map();
    let complex = eps.mul(&code.sigma)?.is_zero();
    let eps_cols: Vec<MVec> = (0..eps.cols)
        .map(|j| MVec::from_comps(eps.column(j)))
        .collect();
    let kernel = kernel_of_matrix(&eps_cols, eps.rows, cfg)?;
    let image = LaurentModule::new(code.sigma_columns(), 2 * code.qubits, cfg)?;
    let mut witness = None;
    for k in &kernel {
        if !image.contains(k) {
            witness = Some(mvec_strings(k));
            break;
        }
    }
    Ok(ExactnessReport {
        exact: complex && witness.is_none(),
        kernel_generators: kernel.iter().map(mvec_strings).collect(),
        witness,
        complex,
    })
}

/// The associated ideal I(sigma): all q x q minors of sigma, deduplicated up
/// to monomial units.
pub fn associated_ideal(code: &CodeDef) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = Vec::new();
    for m in code.sigma.minors(code.qubits) {
        if m.is_zero() {
            continue;
        }
        let s = m.strip_unit();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Krull dimension of R / I(sigma); -1 when the ideal is the unit ideal.
pub fn characteristic_dimension(code: &CodeDef, cfg: &GroebnerConfig) -> Result<i64> {
    let ideal = associated_ideal(code);
    krull_dimension(&ideal, code.dim, &code.field, cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub torsion_free: bool,
    /// classes of torsion generators modulo im(eps)
    pub generators: Vec<Vec<String>>,
    /// the Fitting-ideal element used for the saturation
    pub saturator: String,
    pub rank: usize,
    #[serde(skip)]
    pub generator_vecs: Vec<MVec>,
    #[serde(skip)]
    pub image: Option<LaurentModule>,
}

/// Peel a polynomial into factors: monomial content is dropped, repeated
/// squares are unfolded at p = 2, and two-term (string-like) factors are
/// discovered by trial division over a small exponent box.
pub fn peel_factors(g: &LaurentPoly) -> Vec<LaurentPoly> {
    let mut queue = vec![g.strip_unit()];
    let mut out: Vec<LaurentPoly> = Vec::new();
    while let Some(f) = queue.pop() {
        if f.is_monomial_unit() || f.is_zero() {
            continue;
        }
        if let Some(r) = f.sqrt_char2() {
            queue.push(r);
            continue;
        }
        // trial division by binomials 1 + c x^a with a in the exponent box of f
        let field = f.field.clone();
        let dim = f.dim;
        let max = f.max_exps().unwrap_or_else(|| vec![0; dim]);
        let mut found = false;
        let mut cursor = vec![0i32; dim];
        'trial: loop {
            if cursor.iter().any(|&c| c != 0) {
                for c in 1..field.order() {
                    let bin = LaurentPoly::one(&field, dim)
                        .add(&LaurentPoly::monomial(&field, cursor.clone(), c));
                    if bin != f.strip_unit() {
                        if let Some(q) = f.divide_exact(&bin) {
                            queue.push(bin);
                            queue.push(q);
                            found = true;
                            break 'trial;
                        }
                    }
                }
            }
            let mut i = dim;
            loop {
                if i == 0 {
                    break 'trial;
                }
                i -= 1;
                cursor[i] += 1;
                if cursor[i] <= max[i] {
                    break;
                }
                cursor[i] = 0;
            }
        }
        if !found {
            out.push(f.strip_unit());
        }
    }
    if out.is_empty() {
        out.push(g.strip_unit());
    }
    out.dedup();
    out
}

/// Torsion submodule of coker(eps), via saturation of im(eps) by an element
/// of the first non-vanishing Fitting ideal. Any single nonzero element g of
/// that ideal suffices: g lies in the radical of ann(T), so (im eps : g^inf)
/// already captures the whole torsion submodule.
pub fn torsion_submodule(code: &CodeDef, cfg: &GroebnerConfig) -> Result<TorsionReport> {
    torsion_of_map(&code.excitation_map(), cfg)
}

/// Torsion submodule of the cokernel of an arbitrary matrix map.
pub fn torsion_of_map(
    eps: &crate::matrix::PolyMatrix,
    cfg: &GroebnerConfig,
) -> Result<TorsionReport> {
    let t = eps.rows;
    let cols: Vec<MVec> = (0..eps.cols)
        .map(|j| MVec::from_comps(eps.column(j)).normalize_monomial().0)
        .collect();
    let rank = eps.rank();
    if rank == 0 {
        return Err(Error::Invalid("excitation map is zero".into()));
    }
    let g = eps
        .nonzero_minor(rank)
        .ok_or_else(|| Error::Invalid("no nonzero minor at computed rank".into()))?;
    let image = LaurentModule::new(cols.clone(), t, cfg)?;
    let mut sat: Vec<MVec> = cols.clone();
    for factor in peel_factors(&g) {
        sat = saturate(&sat, t, &factor, cfg)?.0;
    }
    let mut gens = Vec::new();
    for v in &sat {
        if !image.contains(v) {
            gens.push(v.clone());
        }
    }
    Ok(TorsionReport {
        torsion_free: gens.is_empty(),
        generators: gens.iter().map(mvec_strings).collect(),
        saturator: g.strip_unit().to_string(),
        rank,
        generator_vecs: gens,
        image: Some(image),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FractalGenerator {
    /// the zero divisor f on coker(eps)
    pub f: String,
    /// torsion witness v with v not in im(eps) but f v in im(eps)
    pub v: Vec<String>,
    /// certificate p with eps(p) = f v
    pub p: Vec<String>,
    #[serde(skip)]
    pub f_poly: Option<LaurentPoly>,
    #[serde(skip)]
    pub v_vec: Option<MVec>,
    #[serde(skip)]
    pub p_vec: Option<MVec>,
}

/// Search for a fractal (string) generator: a minimal-support zero divisor f
/// on coker(eps) together with a certified witness. Returns None for
/// torsion-free cokernels.
pub fn find_fractal_generator(
    code: &CodeDef,
    cfg: &GroebnerConfig,
) -> Result<Option<FractalGenerator>> {
    let torsion = torsion_submodule(code, cfg)?;
    if torsion.torsion_free {
        return Ok(None);
    }
    let eps = code.excitation_map();
    let t = eps.rows;
    // track the monomial shift applied to each column so the certificate p
    // can be expressed against the raw excitation map
    let mut cols = Vec::with_capacity(eps.cols);
    let mut shifts = Vec::with_capacity(eps.cols);
    for j in 0..eps.cols {
        let (n, s) = MVec::from_comps(eps.column(j)).normalize_monomial();
        cols.push(n);
        shifts.push(s);
    }
    let image = torsion.image.as_ref().unwrap();
    let field = code.field.clone();
    let dim = code.dim;

    let mut best: Option<FractalGenerator> = None;
    for v in torsion.generator_vecs.iter().take(4) {
        // the annihilator of the class [v]: first coordinates of the kernel
        // of [v | eps columns]
        let mut gens = vec![v.clone()];
        gens.extend(cols.iter().cloned());
        let syz = syzygy_basis(&gens, t, cfg)?;
        // candidate pairs (f, coefficient vector for the eps columns)
        let mut candidates: Vec<(LaurentPoly, Vec<LaurentPoly>)> = Vec::new();
        for s in &syz {
            let f = s.comps[0].clone();
            if f.is_zero() {
                continue;
            }
            // the syzygy coefficients multiply the normalized columns, so
            // fold each column's monomial shift back in
            let p: Vec<LaurentPoly> = s.comps[1..]
                .iter()
                .zip(&shifts)
                .map(|(c, sh)| c.neg().mul_term(sh, 1))
                .collect();
            candidates.push((f, p));
        }
        if candidates.is_empty() {
            continue;
        }
        // prefer a minimal-support generator of the annihilator ideal; if the
        // reduced basis exposes a smaller f than the raw kernel generators,
        // re-express it in terms of them to keep the certificate
        let ann_gens: Vec<MVec> = candidates
            .iter()
            .map(|(f, _)| MVec::from_comps(vec![f.clone()]))
            .collect();
        let gb = buchberger(&ann_gens, 1, Order::default(), cfg)?;
        let ann_graph = graph_basis(&ann_gens, 1, cfg)?;
        for g in &gb.gens {
            let f = g.comps[0].clone();
            let expressed = crate::groebner::express_with_graph_basis(
                &MVec::from_comps(vec![f.clone()]),
                &ann_graph,
                1,
                ann_gens.len(),
                &field,
                dim,
            )?;
            if let Some(coeffs) = expressed {
                let mut p = MVec::zero(&field, dim, cols.len());
                for (a, (_, pi)) in coeffs.iter().zip(&candidates) {
                    if a.is_zero() {
                        continue;
                    }
                    for (acc, c) in p.comps.iter_mut().zip(pi) {
                        *acc = acc.add(&a.mul(c));
                    }
                }
                candidates.push((f, p.comps));
            }
        }
        candidates.sort_by_key(|(f, _)| (f.term_count(), f.abs_degree()));
        for (f, p) in candidates {
            if f.is_monomial_unit() {
                continue; // v would be in im(eps), contradicting the witness
            }
            let pv = MVec::from_comps(p);
            // certify: v not in im(eps), and eps(p) = f v exactly
            let fv = v.mul_poly(&f);
            let eps_p = apply_matrix(&eps, &pv);
            if image.contains(v) || eps_p != fv {
                continue;
            }
            let better = best
                .as_ref()
                .is_none_or(|b| {
                    let bf = b.f_poly.as_ref().unwrap();
                    (f.term_count(), f.abs_degree()) < (bf.term_count(), bf.abs_degree())
                });
            if better {
                best = Some(FractalGenerator {
                    f: f.to_string(),
                    v: mvec_strings(v),
                    p: mvec_strings(&pv),
                    f_poly: Some(f),
                    v_vec: Some(v.clone()),
                    p_vec: Some(pv),
                });
            }
            break;
        }
    }
    Ok(best)
}

/// eps applied to a vector p in R^{2q} (matrix-vector product).
pub fn apply_matrix(m: &crate::matrix::PolyMatrix, v: &MVec) -> MVec {
    let mut out = MVec::zero(&m.field, m.dim, m.rows);
    for i in 0..m.rows {
        let mut acc = LaurentPoly::zero(&m.field, m.dim);
        for j in 0..m.cols {
            if !m.at(i, j).is_zero() && !v.comps[j].is_zero() {
                acc = acc.add(&m.at(i, j).mul(&v.comps[j]));
            }
        }
        out.comps[i] = acc;
    }
    out
}

/// Smallest L such that x_i^L - 1 lies in the (zero-dimensional) ideal J for
/// every i. L is searched over multiples of the radical period n, which is
/// found by Rabinowitsch radical-membership tests.
pub fn find_period(
    ideal: &[LaurentPoly],
    dim: usize,
    field: &Field,
    cfg: &GroebnerConfig,
) -> Result<u32> {
    let d = krull_dimension(ideal, dim, field, cfg)?;
    if d != 0 {
        return Err(Error::Invalid(format!(
            "period is defined for zero-dimensional ideals (dimension here: {d})"
        )));
    }
    let gens: Vec<MVec> = ideal
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| MVec::from_comps(vec![p.strip_unit()]))
        .collect();
    let poly_ideal: Vec<LaurentPoly> = gens.iter().map(|g| g.comps[0].clone()).collect();
    let gb = buchberger(&gens, 1, Order::default(), cfg)?;
    let cap = 4096u32;
    let mut n = 0u32;
    'outer: for cand in 1..=cap {
        for i in 0..dim {
            let f = LaurentPoly::var(field, dim, i, cand as i32)
                .sub(&LaurentPoly::one(field, dim));
            if !radical_member(&f, &poly_ideal, dim, field, cfg)? {
                continue 'outer;
            }
        }
        n = cand;
        break;
    }
    if n == 0 {
        return Err(Error::IterationCapExceeded {
            what: "radical period search",
            limit: cap as usize,
        });
    }
    let mut l = n;
    while l <= cap {
        let ok = (0..dim).all(|i| {
            let f = LaurentPoly::var(field, dim, i, l as i32)
                .sub(&LaurentPoly::one(field, dim));
            gb.contains(&MVec::from_comps(vec![f]))
        });
        if ok {
            return Ok(l);
        }
        l += n;
    }
    Err(Error::IterationCapExceeded {
        what: "period search",
        limit: cap as usize,
    })
}

/// Rank of a matrix over the Laurent ring: largest k with a nonzero minor.
pub fn rank_over_r(m: &crate::matrix::PolyMatrix) -> usize {
    m.rank()
}

/// Convenience: the quotient ideal construction (N : f) for an ideal given
/// by Laurent generators.
pub fn ideal_quotient(
    ideal: &[LaurentPoly],
    f: &LaurentPoly,
    cfg: &GroebnerConfig,
) -> Result<Vec<LaurentPoly>> {
    let gens: Vec<MVec> = ideal
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| MVec::from_comps(vec![p.strip_unit()]))
        .collect();
    let (fp, _) = f.normalize_monomial();
    let q = module_quotient(&gens, 1, &fp, cfg)?;
    Ok(q.into_iter().map(|v| v.comps[0].clone()).collect())
}

/// Shared analysis config with Groebner caps.
pub type AnalysisConfig = GroebnerConfig;
