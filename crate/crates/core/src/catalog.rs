//! Built-in code definitions.

use crate::code::CodeDef;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, LaurentPoly};

fn build(name: &str, dim: usize, qubits: usize, rows: &[&[&str]]) -> CodeDef {
    let field = Field::prime(2).unwrap();
    let m = PolyMatrix::from_rows(
        &field,
        dim,
        rows.iter()
            .map(|r| r.iter().map(|s| parse_poly(s, &field, dim).unwrap()).collect())
            .collect(),
    )
    .unwrap();
    CodeDef::new(name, dim, qubits, field, m).unwrap()
}

/// 1D Ising chain: a single pure-Z bond generator.
pub fn ising1d() -> CodeDef {
    build("ising1d", 1, 1, &[&["0"], &["1+x"]])
}

/// 2D Ising model: two pure-Z bond generators.
pub fn ising2d() -> CodeDef {
    build("ising2d", 2, 1, &[&["0", "0"], &["1+x", "1+y"]])
}

/// 2D toric code (vertex and plaquette generators).
pub fn toric2d() -> CodeDef {
    build(
        "toric2d",
        2,
        2,
        &[
            &["1+x^-1", "0"],
            &["1+y^-1", "0"],
            &["0", "1+y"],
            &["0", "1+x"],
        ],
    )
}

/// 3D toric code: one vertex generator, three plaquette generators.
pub fn toric3d() -> CodeDef {
    build(
        "toric3d",
        3,
        3,
        &[
            &["1+x^-1", "0", "0", "0"],
            &["1+y^-1", "0", "0", "0"],
            &["1+z^-1", "0", "0", "0"],
            &["0", "0", "1+z", "1+y"],
            &["0", "1+z", "0", "1+x"],
            &["0", "1+y", "1+x", "0"],
        ],
    )
}

/// 4D toric code on 2-cells: six qubits per site, four X- and four Z-type
/// generators, block diagonal in the X/Z split.
pub fn toric4d() -> CodeDef {
    let sigma_x: [[&str; 4]; 6] = [
        ["1+y", "1+x", "0", "0"],
        ["1+w", "0", "0", "1+x"],
        ["1+z", "0", "1+x", "0"],
        ["0", "1+z", "1+y", "0"],
        ["0", "1+w", "0", "1+y"],
        ["0", "0", "1+w", "1+z"],
    ];
    let sigma_z_bar: [[&str; 4]; 6] = [
        ["0", "0", "1+w", "1+z"],
        ["0", "1+z", "1+y", "0"],
        ["0", "1+w", "0", "1+y"],
        ["1+w", "0", "0", "1+x"],
        ["1+z", "0", "1+x", "0"],
        ["1+y", "1+x", "0", "0"],
    ];
    let field = Field::prime(2).unwrap();
    let dim = 4;
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    let zero = LaurentPoly::zero(&field, dim);
    for r in sigma_x.iter() {
        let mut row: Vec<LaurentPoly> = r
            .iter()
            .map(|s| parse_poly(s, &field, dim).unwrap())
            .collect();
        row.extend(vec![zero.clone(); 4]);
        rows.push(row);
    }
    for r in sigma_z_bar.iter() {
        let mut row = vec![zero.clone(); 4];
        // the Z block is the antipode of the tabulated matrix
        row.extend(
            r.iter()
                .map(|s| parse_poly(s, &field, dim).unwrap().antipode()),
        );
        rows.push(row);
    }
    let m = PolyMatrix::from_rows(&field, dim, rows).unwrap();
    CodeDef::new("toric4d", dim, 6, field, m).unwrap()
}

/// Wen's plaquette model; coarse-grains to the 2D toric code.
pub fn wen() -> CodeDef {
    build("wen", 2, 1, &[&["1+x+y+x*y"], &["1+x*y"]])
}

/// The 3D cube-interaction code with string-like excitations along one axis.
pub fn chamon() -> CodeDef {
    build(
        "chamon",
        3,
        1,
        &[&["x+x^-1+y+y^-1"], &["z+z^-1+y+y^-1"]],
    )
}

/// The 3D no-strings code: characteristic dimension 1 without string
/// operators.
pub fn cubic() -> CodeDef {
    build(
        "cubic",
        3,
        2,
        &[
            &["1+x*y+y*z+z*x", "0"],
            &["1+x+y+z", "0"],
            &["0", "1+x^-1+y^-1+z^-1"],
            &["0", "1+x^-1*y^-1+y^-1*z^-1+z^-1*x^-1"],
        ],
    )
}

/// A 3D string-net-derived code with nontrivial torsion.
pub fn levin_wen() -> CodeDef {
    build(
        "levin-wen",
        3,
        2,
        &[
            &["1+z", "1+z", "x+y"],
            &["y+y*z", "x+x*z", "x+y"],
            &["y+z", "1+x", "1+x"],
            &["y+z", "z+x*z", "y+x*y"],
        ],
    )
}

/// The 2D three-body fractal code; 1+x+y is a fractal generator.
pub fn newman_moore() -> CodeDef {
    build("newman-moore", 2, 1, &[&["0"], &["1+x+y"]])
}

pub const CATALOG_NAMES: [&str; 10] = [
    "ising1d",
    "ising2d",
    "toric2d",
    "toric3d",
    "toric4d",
    "wen",
    "chamon",
    "cubic",
    "levin-wen",
    "newman-moore",
];

pub fn by_name(name: &str) -> Result<CodeDef> {
    match name {
        "ising1d" => Ok(ising1d()),
        "ising2d" => Ok(ising2d()),
        "toric2d" => Ok(toric2d()),
        "toric3d" => Ok(toric3d()),
        "toric4d" => Ok(toric4d()),
        "wen" => Ok(wen()),
        "chamon" => Ok(chamon()),
        "cubic" => Ok(cubic()),
        "levin-wen" | "levin_wen" => Ok(levin_wen()),
        "newman-moore" | "newman_moore" => Ok(newman_moore()),
        _ => Err(Error::Invalid(format!(
            "unknown catalog code '{name}' (known: {})",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

pub fn all() -> Vec<CodeDef> {
    CATALOG_NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}

/// The two-qubit family with excitation map
/// [[p(x), p(y), 0, 0], [0, 0, p(y^-1), -p(x^-1)]] for a univariate p;
/// exposes string-operator experiments parameterized by p.
pub fn string_code(p: &str) -> Result<CodeDef> {
    let field = Field::prime(2).unwrap();
    let dim = 2;
    let px = parse_poly(p, &field, 1)?;
    let lift = |axis: usize, anti: bool| -> LaurentPoly {
        let mut out = LaurentPoly::zero(&field, dim);
        for (e, c) in px.iter_terms() {
            let mut ee = vec![0i32; dim];
            ee[axis] = if anti { -e[0] } else { e[0] };
            out.add_term(ee, *c);
        }
        out
    };
    let zero = LaurentPoly::zero(&field, dim);
    let eps = PolyMatrix::from_rows(
        &field,
        dim,
        vec![
            vec![lift(0, false), lift(1, false), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), lift(1, true), lift(0, true).neg()],
        ],
    )?;
    let lambda = PolyMatrix::lambda_q(&field, dim, 2);
    let sigma = lambda.mul(&eps.dagger())?;
    CodeDef::new(&format!("string[{p}]"), dim, 2, field, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_catalog_codes_commute() {
        for code in all() {
            assert!(
                code.check_commuting().is_ok(),
                "{} does not commute",
                code.name
            );
            let eps = code.excitation_map();
            assert!(
                eps.mul(&code.sigma).unwrap().is_zero(),
                "{}: eps sigma != 0",
                code.name
            );
        }
    }

    #[test]
    fn string_code_commutes() {
        let code = string_code("1+x").unwrap();
        assert!(code.check_commuting().is_ok());
        assert_eq!(code.qubits, 2);
        assert_eq!(code.t(), 2);
    }
}
