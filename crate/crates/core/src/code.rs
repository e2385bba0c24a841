//! Translation-invariant Pauli stabilizer codes as 2q x t matrices over the
//! Laurent polynomial ring: rows 1..q carry the X part, rows q+1..2q the Z
//! part, one column per stabilizer generator.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::MVec;
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, LaurentPoly};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub struct CodeDef {
    pub name: String,
    pub dim: usize,
    pub qubits: usize,
    pub field: Field,
    pub sigma: PolyMatrix,
}

#[derive(Clone, Debug)]
pub struct CommutationWitness {
    pub row: usize,
    pub col: usize,
    pub value: LaurentPoly,
}

impl CodeDef {
    pub fn new(name: &str, dim: usize, qubits: usize, field: Field, sigma: PolyMatrix) -> Result<Self> {
        if sigma.rows != 2 * qubits {
            return Err(Error::ShapeMismatch(format!(
                "sigma has {} rows, expected {}",
                sigma.rows,
                2 * qubits
            )));
        }
        if sigma.dim != dim {
            return Err(Error::DimensionMismatch);
        }
        Ok(CodeDef {
            name: name.to_string(),
            dim,
            qubits,
            field,
            sigma,
        })
    }

    /// Number of stabilizer generators per site.
    pub fn t(&self) -> usize {
        self.sigma.cols
    }

    pub fn lambda(&self) -> PolyMatrix {
        PolyMatrix::lambda_q(&self.field, self.dim, self.qubits)
    }

    /// sigma^dagger lambda_q sigma = 0 iff all generators commute with all of
    /// their translates. On failure returns the first offending entry.
    pub fn check_commuting(&self) -> std::result::Result<(), CommutationWitness> {
        let m = self
            .sigma
            .dagger()
            .mul(&self.lambda())
            .unwrap()
            .mul(&self.sigma)
            .unwrap();
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.at(i, j).is_zero() {
                    return Err(CommutationWitness {
                        row: i,
                        col: j,
                        value: m.at(i, j).clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The excitation map eps = sigma^dagger lambda_q, a t x 2q matrix with
    /// eps sigma = 0 for commuting codes.
    pub fn excitation_map(&self) -> PolyMatrix {
        self.sigma.dagger().mul(&self.lambda()).unwrap()
    }

    pub fn sigma_columns(&self) -> Vec<MVec> {
        (0..self.t())
            .map(|j| MVec::from_comps(self.sigma.column(j)))
            .collect()
    }

    /// Tensor n ancilla qubits per site, each pinned by a fresh pure-Z
    /// generator: sigma -> [[sigma_X, 0], [0, 0], [sigma_Z, 0], [0, id_n]].
    pub fn tensor_ancilla(&self, n: usize) -> CodeDef {
        let q = self.qubits;
        let t = self.t();
        let mut m = PolyMatrix::zero(&self.field, self.dim, 2 * (q + n), t + n);
        for j in 0..t {
            for i in 0..q {
                *m.at_mut(i, j) = self.sigma.at(i, j).clone();
                *m.at_mut(q + n + i, j) = self.sigma.at(q + i, j).clone();
            }
        }
        for a in 0..n {
            *m.at_mut(2 * q + n + a, t + a) = LaurentPoly::one(&self.field, self.dim);
        }
        CodeDef {
            name: format!("{}+{}anc", self.name, n),
            dim: self.dim,
            qubits: q + n,
            field: self.field.clone(),
            sigma: m,
        }
    }
}

// ---------------------------------------------------------------------------
// elementary symplectic transformations

/// Elementary equivalence moves. Row moves are required to be symplectic (the
/// transform invariant T^dagger lambda T = lambda is re-checked on apply);
/// column moves may be any invertible operation on the generators.
#[derive(Clone, Debug)]
pub enum Move {
    /// rows (i, i+q) -> (-row_{i+q}, row_i)
    Hadamard { qubit: usize },
    /// row_{i+q} += f row_i, f = antipode(f)
    CPhase { qubit: usize, f: LaurentPoly },
    /// row_i += f row_{i+q}, f = antipode(f)
    CPhaseX { qubit: usize, f: LaurentPoly },
    /// row_i += a row_j and row_{j+q} -= antipode(a) row_{i+q}, i != j
    Cnot { i: usize, j: usize, a: LaurentPoly },
    /// row_{i+q} += a row_j and row_{j+q} += antipode(a) row_i, i != j
    CnotHadamard { i: usize, j: usize, a: LaurentPoly },
    /// swap qubits i and j (rows i,j and i+q,j+q)
    QubitSwap { i: usize, j: usize },
    ColSwap { i: usize, j: usize },
    /// scale a generator column by a unit (single-term polynomial)
    ColScale { col: usize, unit: LaurentPoly },
    /// col_i += a col_j, i != j
    ColAdd { i: usize, j: usize, a: LaurentPoly },
}

/// Accumulated symplectic row transform with the move transcript.
#[derive(Clone, Debug)]
pub struct SymplecticTransform {
    pub matrix: PolyMatrix,
    pub moves: Vec<Move>,
    qubits: usize,
}

impl SymplecticTransform {
    pub fn identity(field: &Field, dim: usize, qubits: usize) -> Self {
        SymplecticTransform {
            matrix: PolyMatrix::identity(field, dim, 2 * qubits),
            moves: Vec::new(),
            qubits,
        }
    }

    pub fn is_symplectic(&self) -> bool {
        let lambda = PolyMatrix::lambda_q(&self.matrix.field, self.matrix.dim, self.qubits);
        self.matrix
            .dagger()
            .mul(&lambda)
            .unwrap()
            .mul(&self.matrix)
            .unwrap()
            == lambda
    }
}

/// Apply an elementary move to the code in place, accumulating the row
/// transform. Returns an error for malformed moves (non-symmetric phase
/// polynomial, non-unit column scale, out-of-range indices).
pub fn apply_elementary(
    code: &mut CodeDef,
    transform: &mut SymplecticTransform,
    mv: &Move,
) -> Result<()> {
    let q = code.qubits;
    let check_qubit = |i: usize| -> Result<()> {
        if i >= q {
            Err(Error::Invalid(format!("qubit index {i} out of range")))
        } else {
            Ok(())
        }
    };
    // apply a row operation to both sigma and the accumulated transform
    macro_rules! row_add {
        ($i:expr, $j:expr, $f:expr) => {{
            code.sigma.row_add($i, $j, $f);
            transform.matrix.row_add($i, $j, $f);
        }};
    }
    match mv {
        Move::Hadamard { qubit } => {
            let i = *qubit;
            check_qubit(i)?;
            code.sigma.swap_rows(i, i + q);
            transform.matrix.swap_rows(i, i + q);
            let minus_one = LaurentPoly::one(&code.field, code.dim).neg();
            code.sigma.scale_row(i, &minus_one);
            transform.matrix.scale_row(i, &minus_one);
        }
        Move::CPhase { qubit, f } => {
            let i = *qubit;
            check_qubit(i)?;
            if *f != f.antipode() {
                return Err(Error::Invalid(
                    "controlled-phase polynomial must equal its antipode".into(),
                ));
            }
            row_add!(i + q, i, f);
        }
        Move::CPhaseX { qubit, f } => {
            let i = *qubit;
            check_qubit(i)?;
            if *f != f.antipode() {
                return Err(Error::Invalid(
                    "controlled-phase polynomial must equal its antipode".into(),
                ));
            }
            row_add!(i, i + q, f);
        }
        Move::Cnot { i, j, a } => {
            check_qubit(*i)?;
            check_qubit(*j)?;
            if i == j {
                return Err(Error::Invalid("controlled-NOT needs i != j".into()));
            }
            row_add!(*i, *j, a);
            row_add!(*j + q, *i + q, &a.antipode().neg());
        }
        Move::CnotHadamard { i, j, a } => {
            check_qubit(*i)?;
            check_qubit(*j)?;
            if i == j {
                return Err(Error::Invalid("controlled-NOT-Hadamard needs i != j".into()));
            }
            row_add!(*i + q, *j, a);
            row_add!(*j + q, *i, &a.antipode());
        }
        Move::QubitSwap { i, j } => {
            check_qubit(*i)?;
            check_qubit(*j)?;
            code.sigma.swap_rows(*i, *j);
            code.sigma.swap_rows(*i + q, *j + q);
            transform.matrix.swap_rows(*i, *j);
            transform.matrix.swap_rows(*i + q, *j + q);
        }
        Move::ColSwap { i, j } => {
            code.sigma.swap_cols(*i, *j);
        }
        Move::ColScale { col, unit } => {
            if !unit.is_monomial_unit() {
                return Err(Error::Invalid("column scale must be a unit".into()));
            }
            code.sigma.scale_col(*col, unit);
        }
        Move::ColAdd { i, j, a } => {
            if i == j {
                return Err(Error::Invalid("column addition needs i != j".into()));
            }
            code.sigma.col_add(*i, *j, a);
        }
    }
    transform.moves.push(mv.clone());
    debug_assert!(transform.is_symplectic());
    Ok(())
}

// ---------------------------------------------------------------------------
// coarse-graining

/// Hermite normal form of a nonsingular integer matrix by column operations:
/// returns (H, W) with H = M W, H lower triangular with positive diagonal,
/// W unimodular.
fn hermite_normal_form(m: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let d = m.len();
    if m.iter().any(|r| r.len() != d) {
        return Err(Error::ShapeMismatch("sublattice matrix must be square".into()));
    }
    let mut h: Vec<Vec<i64>> = m.to_vec();
    let mut w: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    let col_op = |h: &mut Vec<Vec<i64>>, w: &mut Vec<Vec<i64>>, dst: usize, src: usize, k: i64| {
        for r in 0..d {
            h[r][dst] += k * h[r][src];
        }
        for r in 0..d {
            w[r][dst] += k * w[r][src];
        }
    };
    let col_swap = |h: &mut Vec<Vec<i64>>, w: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        for r in 0..d {
            h[r].swap(a, b);
            w[r].swap(a, b);
        }
    };
    for i in 0..d {
        // gcd sweep on row i over columns i..d
        loop {
            let mut piv: Option<usize> = None;
            for j in i..d {
                if h[i][j] != 0 && piv.is_none_or(|p| h[i][j].abs() < h[i][p].abs()) {
                    piv = Some(j);
                }
            }
            let piv = piv.ok_or_else(|| Error::Invalid("singular sublattice matrix".into()))?;
            col_swap(&mut h, &mut w, i, piv);
            let mut done = true;
            for j in i + 1..d {
                if h[i][j] != 0 {
                    let k = h[i][j] / h[i][i];
                    col_op(&mut h, &mut w, j, i, -k);
                    if h[i][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][i] < 0 {
            for r in 0..d {
                h[r][i] = -h[r][i];
                w[r][i] = -w[r][i];
            }
        }
    }
    Ok((h, w))
}

/// Restrict scalars to the sublattice spanned by the columns of `m`. Each
/// original qubit and generator splits into |det m| copies indexed by the
/// lexicographically least nonnegative coset representatives.
pub fn coarse_grain(code: &CodeDef, m: &[Vec<i64>]) -> Result<CodeDef> {
    let d = code.dim;
    if m.len() != d {
        return Err(Error::ShapeMismatch(format!(
            "sublattice matrix must be {d}x{d}"
        )));
    }
    let (h, w) = hermite_normal_form(m)?;
    let c: usize = (0..d).map(|i| h[i][i] as usize).product();

    // reduce a lattice point to (coset index, primed exponent vector):
    // u = H k + rep, coset index in mixed radix over the diagonal box,
    // primed exponents W k (since H = M W, so H k = M (W k)).
    let reduce = |u: &[i32]| -> (usize, Vec<i32>) {
        let mut rem: Vec<i64> = u.iter().map(|&x| x as i64).collect();
        let mut k = vec![0i64; d];
        for i in 0..d {
            let ki = rem[i].div_euclid(h[i][i]);
            k[i] = ki;
            for r in 0..d {
                rem[r] -= ki * h[r][i];
            }
        }
        let mut idx = 0usize;
        for i in (0..d).rev() {
            idx = idx * h[i][i] as usize + rem[i] as usize;
        }
        let v: Vec<i32> = (0..d)
            .map(|r| (0..d).map(|j| w[r][j] * k[j]).sum::<i64>() as i32)
            .collect();
        (idx, v)
    };

    // coset representative exponents, in lexicographic order of coordinates
    let mut reps: Vec<Vec<i32>> = vec![Vec::new(); c];
    {
        let mut cur = vec![0i32; d];
        'fill: loop {
            let (idx, _) = reduce(&cur);
            if reps[idx].is_empty() {
                reps[idx] = cur.clone();
            }
            // advance within the diagonal box
            for i in (0..d).rev() {
                cur[i] += 1;
                if (cur[i] as i64) < h[i][i] {
                    continue 'fill;
                }
                cur[i] = 0;
                if i == 0 {
                    break 'fill;
                }
            }
            if d == 0 {
                break;
            }
        }
    }

    let q = code.qubits;
    let t = code.t();
    let mut sigma = PolyMatrix::zero(&code.field, d, 2 * q * c, t * c);
    for g in 0..t {
        for (j, rep) in reps.iter().enumerate() {
            let col = g * c + j;
            for r in 0..2 * q {
                let (block, qi) = if r < q { (0usize, r) } else { (1, r - q) };
                let entry = code.sigma.at(r, g);
                for (e, coeff) in entry.iter_terms() {
                    let u: Vec<i32> = e.iter().zip(rep).map(|(a, b)| a + b).collect();
                    let (l, v) = reduce(&u);
                    let row = block * q * c + qi * c + l;
                    sigma
                        .at_mut(row, col)
                        .add_term(v, *coeff);
                }
            }
        }
    }
    CodeDef::new(
        &format!("{}@coarse", code.name),
        d,
        q * c,
        code.field.clone(),
        sigma,
    )
}

/// Uniform coarse-graining by factor `c` along every axis.
pub fn coarse_grain_uniform(code: &CodeDef, c: i64) -> Result<CodeDef> {
    let d = code.dim;
    let m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { c } else { 0 }).collect())
        .collect();
    coarse_grain(code, &m)
}

// ---------------------------------------------------------------------------
// JSON schema

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDefRepr {
    name: String,
    dimension: usize,
    qubits_per_site: usize,
    field: u64,
    /// one entry per generator, each a list of 2q polynomial strings
    generators: Vec<Vec<String>>,
}

impl CodeDef {
    pub fn to_json(&self) -> serde_json::Value {
        let t = self.t();
        let generators: Vec<Vec<String>> = (0..t)
            .map(|j| (0..2 * self.qubits).map(|i| self.sigma.at(i, j).to_string()).collect())
            .collect();
        serde_json::to_value(CodeDefRepr {
            name: self.name.clone(),
            dimension: self.dim,
            qubits_per_site: self.qubits,
            field: self.field.characteristic(),
            generators,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: CodeDefRepr = serde_json::from_value(v.clone())?;
        if repr.dimension == 0 || repr.dimension > 16 {
            return Err(Error::Invalid(format!(
                "dimension {} out of supported range 1..=16",
                repr.dimension
            )));
        }
        if repr.qubits_per_site == 0 || repr.qubits_per_site > 64 {
            return Err(Error::Invalid("qubits_per_site out of range 1..=64".into()));
        }
        let field = Field::prime(repr.field)?;
        let q = repr.qubits_per_site;
        let mut rows: Vec<Vec<LaurentPoly>> = vec![Vec::new(); 2 * q];
        for (gi, gen) in repr.generators.iter().enumerate() {
            if gen.len() != 2 * q {
                return Err(Error::Invalid(format!(
                    "generator {gi} has {} entries, expected {}",
                    gen.len(),
                    2 * q
                )));
            }
            for (i, s) in gen.iter().enumerate() {
                rows[i].push(parse_poly(s, &field, repr.dimension)?);
            }
        }
        let sigma = if repr.generators.is_empty() {
            PolyMatrix::zero(&field, repr.dimension, 2 * q, 0)
        } else {
            PolyMatrix::from_rows(&field, repr.dimension, rows)?
        };
        CodeDef::new(&repr.name, repr.dimension, q, field, sigma)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        Self::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::parse_poly;

    fn pp(s: &str, field: &Field, dim: usize) -> LaurentPoly {
        parse_poly(s, field, dim).unwrap()
    }

    fn mat(field: &Field, dim: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            field,
            dim,
            rows.iter()
                .map(|r| r.iter().map(|s| pp(s, field, dim)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn excitation_map_of_ising_chain() {
        let code = catalog::ising1d();
        let eps = code.excitation_map();
        assert_eq!(eps.rows, 1);
        assert_eq!(eps.cols, 2);
        assert_eq!(*eps.at(0, 0), pp("1+x^-1", &code.field, 1));
        assert!(eps.at(0, 1).is_zero());
    }

    #[test]
    fn plaquette_model_coarse_grains_to_toric_form() {
        // restrict the checkerboard model to the sublattice x' = x y^-1,
        // y' = y^2 (basis {1, y} for the original lattice over the new one)
        let code = catalog::wen();
        let coarse = coarse_grain(&code, &[vec![1, 0], vec![-1, 2]]).unwrap();
        assert_eq!(coarse.qubits, 2);
        assert_eq!(coarse.t(), 2);
        assert!(coarse.check_commuting().is_ok());
        let f = coarse.field.clone();
        let expected = mat(
            &f,
            2,
            &[
                &["1+x*y", "y+x*y"],
                &["1+x", "1+x*y"],
                &["1+x*y", "0"],
                &["0", "1+x*y"],
            ],
        );
        assert_eq!(coarse.sigma, expected);

        // five elementary moves take it to the vertex/plaquette form
        let mut code = coarse;
        let mut t = SymplecticTransform::identity(&f, 2, 2);
        let one = LaurentPoly::one(&f, 2);
        let moves = [
            Move::CPhaseX { qubit: 0, f: one.clone() },
            Move::CPhaseX { qubit: 1, f: one },
            Move::CnotHadamard { i: 0, j: 1, a: pp("y", &f, 2) },
            Move::ColScale { col: 1, unit: pp("x^-1*y^-1", &f, 2) },
            Move::Hadamard { qubit: 0 },
        ];
        for mv in &moves {
            apply_elementary(&mut code, &mut t, mv).unwrap();
            assert!(code.check_commuting().is_ok());
        }
        assert!(t.is_symplectic());
        let toric_form = mat(
            &f,
            2,
            &[
                &["1+y", "0"],
                &["1+x", "0"],
                &["0", "1+x^-1"],
                &["0", "1+y^-1"],
            ],
        );
        assert_eq!(code.sigma, toric_form);
    }

    #[test]
    fn trivial_coarse_graining_is_identity() {
        for code in [catalog::toric2d(), catalog::newman_moore()] {
            let same = coarse_grain_uniform(&code, 1).unwrap();
            assert_eq!(same.sigma, code.sigma);
            assert_eq!(same.qubits, code.qubits);
        }
    }

    #[test]
    fn uniform_coarse_graining_shapes() {
        let code = catalog::ising1d();
        let coarse = coarse_grain_uniform(&code, 2).unwrap();
        assert_eq!(coarse.qubits, 2);
        assert_eq!(coarse.t(), 2);
        assert!(coarse.check_commuting().is_ok());
        let c3 = coarse_grain_uniform(&catalog::toric2d(), 2).unwrap();
        assert_eq!(c3.qubits, 8);
        assert_eq!(c3.t(), 8);
        assert!(c3.check_commuting().is_ok());
    }

    #[test]
    fn ancilla_extension_shape() {
        let code = catalog::ising1d().tensor_ancilla(2);
        assert_eq!(code.qubits, 3);
        assert_eq!(code.t(), 3);
        assert!(code.check_commuting().is_ok());
        // added generators act on added qubits only
        for extra in 1..3 {
            let col = 1 + (extra - 1);
            for r in 0..code.qubits {
                let x_part = code.sigma.at(r, col);
                assert!(x_part.is_zero(), "ancilla generator has X support");
            }
        }
    }

    #[test]
    fn malformed_moves_rejected() {
        let mut code = catalog::toric2d();
        let f = code.field.clone();
        let mut t = SymplecticTransform::identity(&f, 2, 2);
        // phase polynomial must be antipode-symmetric
        let bad = Move::CPhase { qubit: 0, f: pp("x", &f, 2) };
        assert!(apply_elementary(&mut code, &mut t, &bad).is_err());
        // column scale by a non-unit
        let bad = Move::ColScale { col: 0, unit: pp("1+x", &f, 2) };
        assert!(apply_elementary(&mut code, &mut t, &bad).is_err());
        let bad = Move::Cnot { i: 0, j: 0, a: pp("1", &f, 2) };
        assert!(apply_elementary(&mut code, &mut t, &bad).is_err());
        assert!(t.moves.is_empty());
    }

    #[test]
    fn every_move_kind_preserves_commutation() {
        let mut code = catalog::toric2d();
        let f = code.field.clone();
        let mut t = SymplecticTransform::identity(&f, 2, 2);
        let moves = [
            Move::Hadamard { qubit: 1 },
            Move::CPhase { qubit: 0, f: pp("x+x^-1", &f, 2) },
            Move::CPhaseX { qubit: 1, f: pp("1", &f, 2) },
            Move::Cnot { i: 0, j: 1, a: pp("x*y", &f, 2) },
            Move::CnotHadamard { i: 1, j: 0, a: pp("y^-1", &f, 2) },
            Move::QubitSwap { i: 0, j: 1 },
            Move::ColSwap { i: 0, j: 1 },
            Move::ColScale { col: 0, unit: pp("x^2", &f, 2) },
            Move::ColAdd { i: 0, j: 1, a: pp("1+x", &f, 2) },
        ];
        for mv in &moves {
            apply_elementary(&mut code, &mut t, mv).unwrap();
            assert!(t.is_symplectic());
            assert!(code.check_commuting().is_ok(), "{mv:?} broke commutation");
        }
    }

    #[test]
    fn json_round_trip() {
        for code in catalog::all() {
            let v = code.to_json();
            let back = CodeDef::from_json(&v).unwrap();
            assert_eq!(back.sigma, code.sigma);
            assert_eq!(back.name, code.name);
        }
        assert!(CodeDef::from_json_str("{\"name\": 3}").is_err());
        assert!(CodeDef::from_json_str("not json").is_err());
    }
}
