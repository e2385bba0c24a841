//! `pmod`: command-line analyses of translation-invariant commuting Pauli
//! Hamiltonians given as Laurent-polynomial stabilizer matrices.
//!
//! Exit codes: 0 success, 1 analysis negative (not commuting, not exact,
//! nothing found, oracle mismatch), 2 input error, 3 resource cap exceeded.

use clap::{Args, Parser, Subcommand};
use pauli_modules::catalog;
use pauli_modules::code::CodeDef;
use pauli_modules::groebner::{GroebnerConfig, MVec};
use pauli_modules::invariants::{
    associated_ideal, characteristic_dimension, exactness_check, find_fractal_generator,
    torsion_submodule,
};
use pauli_modules::lattice::{brute_force_group_order, degeneracy_k, LatticeConfig};
use pauli_modules::onedim::classify_1d;
use pauli_modules::poly::parse_poly;
use pauli_modules::process::{simulate_energy, verify_barrier, Recipe};
use pauli_modules::Error;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "pmod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeInput {
    /// built-in code name (see `pmod catalog list`)
    #[arg(long, conflicts_with = "code")]
    catalog: Option<String>,
    /// path to a CodeDef JSON file, or `-` for stdin
    #[arg(long)]
    code: Option<String>,
}

#[derive(Args, Clone)]
struct Caps {
    /// cap on Buchberger S-pairs
    #[arg(long, default_value_t = 10_000)]
    max_pairs: usize,
    /// cap on saturation / period-search iterations
    #[arg(long, default_value_t = 64)]
    max_iters: usize,
    /// cap on lattice cells (sites x generators)
    #[arg(long, default_value_t = 1_000_000_000)]
    max_cells: u64,
}

impl Caps {
    fn groebner(&self) -> GroebnerConfig {
        GroebnerConfig {
            max_pairs: self.max_pairs,
            max_iters: self.max_iters,
        }
    }

    fn lattice(&self) -> LatticeConfig {
        LatticeConfig {
            max_cells: self.max_cells,
        }
    }
}

#[derive(Args, Clone)]
struct SizeArgs {
    /// uniform linear sizes, comma separated (e.g. --L 2,3,4)
    #[arg(long, value_delimiter = ',')]
    l: Vec<u32>,
    /// anisotropic size vector like 4x2x2; repeatable
    #[arg(long)]
    sizes: Vec<String>,
}

impl SizeArgs {
    fn resolve(&self, dim: usize) -> Result<Vec<Vec<u32>>, String> {
        let mut out: Vec<Vec<u32>> = self.l.iter().map(|&l| vec![l; dim]).collect();
        for s in &self.sizes {
            let v: Result<Vec<u32>, _> = s.split('x').map(str::parse::<u32>).collect();
            let v = v.map_err(|e| format!("bad size vector {s:?}: {e}"))?;
            if v.len() != dim {
                return Err(format!("size vector {s:?} has {} axes, code has {dim}", v.len()));
            }
            out.push(v);
        }
        if out.is_empty() {
            return Err("no sizes given; use --L or --sizes".into());
        }
        if out.iter().flatten().any(|&l| l == 0) {
            return Err("sizes must be positive".into());
        }
        Ok(out)
    }
}

#[derive(Subcommand)]
enum Command {
    /// verify the commutation condition sigma^dagger lambda sigma = 0
    Check {
        #[command(flatten)]
        input: CodeInput,
    },
    /// exactness of ker(eps) = im(sigma) (local topological order)
    Exactness {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        caps: Caps,
    },
    /// characteristic dimension: Krull dimension of R / I_q(sigma)
    Chardim {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        caps: Caps,
        /// also list the associated determinantal ideal generators
        #[arg(long)]
        ideal: bool,
    },
    /// ground-space parameter k on periodic lattices (degeneracy 2^k)
    Degeneracy {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        sizes: SizeArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// cross-check degeneracy against brute-force group-order enumeration
    Oracle {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        sizes: SizeArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// search for a fractal (string) generator with a certified witness
    Fractal {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        caps: Caps,
    },
    /// torsion submodule of coker(eps): the nontrivial topological charges
    Torsion {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        caps: Caps,
    },
    /// 1D classification into Ising copies and free qubits
    Classify1d {
        #[command(flatten)]
        input: CodeInput,
    },
    /// simulate the fractal charge-separation process and its energy barrier
    Process {
        #[command(flatten)]
        input: CodeInput,
        #[command(flatten)]
        caps: Caps,
        /// fractal generator polynomial (default: discovered automatically)
        #[arg(long)]
        f: Option<String>,
        /// certificate column p: comma-separated list of 2q polynomials
        #[arg(long)]
        p: Option<String>,
        /// doubling rounds; steps = branching^r terms
        #[arg(long, default_value_t = 4)]
        r: u32,
        /// verify the energy bound for every r' in 0..=r instead
        #[arg(long)]
        barrier: bool,
        /// write a per-step energy trace as CSV
        #[arg(long)]
        csv: Option<String>,
        /// write the accumulated operator support as PGM (D = 2 only)
        #[arg(long)]
        pgm: Option<String>,
    },
    /// list built-in codes or export one as JSON
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// list built-in code names
    List,
    /// print the CodeDef JSON for a built-in code
    Export { name: String },
}

fn load_code(input: &CodeInput) -> Result<CodeDef, Error> {
    match (&input.catalog, &input.code) {
        (Some(name), None) => catalog::by_name(name),
        (None, Some(path)) => {
            let text = if path == "-" {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
                s
            } else {
                std::fs::read_to_string(path)?
            };
            CodeDef::from_json_str(&text)
        }
        _ => Err(Error::Invalid(
            "exactly one of --catalog or --code is required".into(),
        )),
    }
}

fn emit(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // tolerate a closed pipe (e.g. piping into `head`)
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::PairCapExceeded { .. }
        | Error::CellCapExceeded { .. }
        | Error::IterationCapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn fail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    exit_for(err)
}

fn run() -> u8 {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { input } => {
            let code = match load_code(&input) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            match code.check_commuting() {
                Ok(()) => {
                    emit(&json!({ "code": code.name, "commuting": true }));
                    EXIT_OK
                }
                Err(w) => {
                    emit(&json!({
                        "code": code.name,
                        "commuting": false,
                        "witness": { "row": w.row, "col": w.col, "value": w.value.to_string() },
                    }));
                    EXIT_NEGATIVE
                }
            }
        }
        Command::Exactness { input, caps } => with_code(&input, |code| {
            let report = exactness_check(&code, &caps.groebner())?;
            let exit = if report.exact { EXIT_OK } else { EXIT_NEGATIVE };
            emit(&json!({ "code": code.name, "report": report }));
            Ok(exit)
        }),
        Command::Chardim { input, caps, ideal } => with_code(&input, |code| {
            let d = characteristic_dimension(&code, &caps.groebner())?;
            let mut out = json!({ "code": code.name, "characteristic_dimension": d });
            if ideal {
                let gens: Vec<String> =
                    associated_ideal(&code).iter().map(|g| g.to_string()).collect();
                out["associated_ideal"] = json!(gens);
            }
            emit(&out);
            Ok(EXIT_OK)
        }),
        Command::Degeneracy { input, sizes, caps } => with_code(&input, |code| {
            let all = sizes.resolve(code.dim).map_err(Error::Invalid)?;
            let cfg = caps.lattice();
            let mut reports = Vec::new();
            for s in &all {
                reports.push(degeneracy_k(&code, s, &cfg)?);
            }
            emit(&json!({ "code": code.name, "results": reports }));
            Ok(EXIT_OK)
        }),
        Command::Oracle { input, sizes, caps } => with_code(&input, |code| {
            let all = sizes.resolve(code.dim).map_err(Error::Invalid)?;
            let cfg = caps.lattice();
            let mut rows = Vec::new();
            let mut mismatches = 0usize;
            for s in &all {
                let rank = degeneracy_k(&code, s, &cfg)?;
                let brute_k = brute_force_group_order(&code, s, &cfg)?;
                let agree = brute_k == rank.k;
                if !agree {
                    mismatches += 1;
                }
                rows.push(json!({
                    "sizes": s,
                    "k": rank.k,
                    "brute_force_k": brute_k,
                    "agree": agree,
                }));
            }
            emit(&json!({ "code": code.name, "results": rows, "mismatches": mismatches }));
            Ok(if mismatches == 0 { EXIT_OK } else { EXIT_NEGATIVE })
        }),
        Command::Fractal { input, caps } => with_code(&input, |code| {
            match find_fractal_generator(&code, &caps.groebner())? {
                Some(gen) => {
                    emit(&json!({ "code": code.name, "found": true, "generator": gen }));
                    Ok(EXIT_OK)
                }
                None => {
                    emit(&json!({ "code": code.name, "found": false }));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }),
        Command::Torsion { input, caps } => with_code(&input, |code| {
            let report = torsion_submodule(&code, &caps.groebner())?;
            emit(&json!({ "code": code.name, "report": report }));
            Ok(EXIT_OK)
        }),
        Command::Classify1d { input } => with_code(&input, |code| {
            let report = classify_1d(&code)?;
            emit(&json!({
                "code": code.name,
                "report": report,
                "transcript_length": report.transcript.len(),
            }));
            Ok(EXIT_OK)
        }),
        Command::Process {
            input,
            caps,
            f,
            p,
            r,
            barrier,
            csv,
            pgm,
        } => with_code(&input, |code| run_process(&code, &caps, f, p, r, barrier, csv, pgm)),
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                emit(&json!({ "codes": catalog::CATALOG_NAMES }));
                EXIT_OK
            }
            CatalogAction::Export { name } => match catalog::by_name(&name) {
                Ok(code) => {
                    emit(&code.to_json());
                    EXIT_OK
                }
                Err(e) => fail(&e),
            },
        },
    }
}

fn with_code(input: &CodeInput, f: impl FnOnce(CodeDef) -> Result<u8, Error>) -> u8 {
    match load_code(input).and_then(f) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_process(
    code: &CodeDef,
    caps: &Caps,
    f: Option<String>,
    p: Option<String>,
    r: u32,
    barrier: bool,
    csv: Option<String>,
    pgm: Option<String>,
) -> Result<u8, Error> {
    let (f, p) = match (f, p) {
        (Some(fs), Some(ps)) => {
            let f = parse_poly(&fs, &code.field, code.dim)?;
            let comps: Result<Vec<_>, Error> = ps
                .split(',')
                .map(|s| parse_poly(s.trim(), &code.field, code.dim))
                .collect();
            let comps = comps?;
            if comps.len() != 2 * code.qubits {
                return Err(Error::Invalid(format!(
                    "--p needs {} comma-separated polynomials",
                    2 * code.qubits
                )));
            }
            (f, MVec::from_comps(comps))
        }
        (None, None) => {
            let gen = find_fractal_generator(code, &caps.groebner())?.ok_or_else(|| {
                Error::Invalid("no fractal generator found; pass --f and --p explicitly".into())
            })?;
            (
                gen.f_poly.expect("generator carries its polynomial"),
                gen.p_vec.expect("generator carries its certificate"),
            )
        }
        _ => {
            return Err(Error::Invalid(
                "--f and --p must be given together".into(),
            ))
        }
    };

    if barrier {
        let reports = verify_barrier(code, &f, &p, r)?;
        let ok = reports.iter().all(|b| b.bound_ok && b.operator_verified);
        emit(&json!({ "code": code.name, "barrier": reports, "all_bounds_hold": ok }));
        return Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE });
    }

    let recipe = Recipe::build(code, &f, &p, r)?;
    let trace = simulate_energy(code, &recipe)?;
    if let Some(path) = &csv {
        let mut out = String::from("step,energy\n");
        for (i, e) in trace.energies.iter().enumerate() {
            out.push_str(&format!("{i},{e}\n"));
        }
        std::fs::write(path, out)?;
    }
    if let Some(path) = &pgm {
        write_operator_pgm(code, &recipe, path)?;
    }
    emit(&json!({ "code": code.name, "f": f.to_string(), "trace": trace }));
    Ok(if trace.operator_verified { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Render the support of the accumulated operator f^(2^r - 1) p as a binary
/// PGM image, one pixel per lattice site, components overlaid.
fn write_operator_pgm(code: &CodeDef, recipe: &Recipe, path: &str) -> Result<(), Error> {
    if code.dim != 2 {
        return Err(Error::Unsupported("PGM output needs a 2D code".into()));
    }
    let exponent = (1u32 << recipe.r) - 1;
    let op = recipe.p.mul_poly(&recipe.f.pow(exponent));
    let mut points: Vec<(i32, i32)> = Vec::new();
    for comp in &op.comps {
        for (e, _) in comp.iter_terms() {
            points.push((e[0], e[1]));
        }
    }
    if points.is_empty() {
        return Err(Error::Invalid("operator has empty support".into()));
    }
    let (x0, x1) = points.iter().fold((i32::MAX, i32::MIN), |(a, b), p| {
        (a.min(p.0), b.max(p.0))
    });
    let (y0, y1) = points.iter().fold((i32::MAX, i32::MIN), |(a, b), p| {
        (a.min(p.1), b.max(p.1))
    });
    let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
    let mut img = vec![255u8; w * h];
    for (x, y) in points {
        img[(y - y0) as usize * w + (x - x0) as usize] = 0;
    }
    let mut file = std::fs::File::create(path)?;
    write!(file, "P5\n{w} {h}\n255\n")?;
    file.write_all(&img)?;
    Ok(())
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
