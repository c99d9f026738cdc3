//! Command handlers.  Each returns a JSON payload; the envelope and exit codes
//! are handled in `main`.

use std::collections::BTreeSet;
use std::io::Read;

use modular_dft::cyclic::{self, CrtSpectrum};
use modular_dft::fields::{format_rational, parse_rational, Field, PrimeField, Rationals};
use modular_dft::fixtures::stored_modular_dft;
use modular_dft::linalg::{self, matrix_order_ff, order_bound, Matrix, MatrixOrder};
use modular_dft::poly::{factor_xn_minus_1_seeded, Poly, PolyRing};
use modular_dft::sga::{self, verify_idempotents, GroupAlgebra, SparseElement};
use modular_dft::symmetric::{self, FourierBlock, SpechtTable};
use modular_dft::unitary::{self, UNITARITY_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Command, Failure, Outcome, SnAction};

type CmdResult = Result<Outcome, Failure>;

/// Number of random right multipliers checked by `sn modular-dft`.
const BLOCK_CHECKS: usize = 20;

pub fn run(cmd: &Command, seed: u64) -> CmdResult {
    match cmd {
        Command::CyclicDft { n, p, alpha, input, inverse } => {
            cyclic_dft(*n, *p, *alpha, input.as_deref(), *inverse)
        }
        Command::FactorXn1 { n, p, splitting_field } => factor_xn1(*n, *p, *splitting_field, seed),
        Command::CrtDft { n, p, input, inverse } => crt_dft(*n, *p, input, *inverse),
        Command::Sn { action, n, p, fixture, verify_fixture, input } => {
            let args = SnArgs {
                n: *n,
                p: *p,
                fixture: fixture.as_deref(),
                verify_fixture: *verify_fixture,
                input: input.as_deref(),
                seed,
            };
            match action {
                SnAction::Dft => sn_dft(&args),
                SnAction::Idft => sn_idft(&args),
                SnAction::Unitary => sn_unitary(&args),
                SnAction::ModularDft => sn_modular_dft(&args),
                SnAction::Idempotents => sn_idempotents(&args),
                SnAction::MatrixOrder => sn_matrix_order(&args),
            }
        }
    }
}

fn precondition(msg: impl Into<String>) -> Failure {
    Failure::Precondition(msg.into())
}

// ---------------------------------------------------------------------------
// input helpers

fn read_tokens(input: &str) -> Result<Vec<String>, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| precondition(format!("cannot read stdin: {e}")))?;
        s
    } else {
        input.to_string()
    };
    Ok(text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect())
}

fn parse_mod_p(tokens: &[String], p: u64) -> Result<Vec<u64>, Failure> {
    let field = PrimeField::new(p)?;
    tokens
        .iter()
        .map(|t| {
            let r = parse_rational(t).ok_or_else(|| precondition(format!("not a number: {t:?}")))?;
            field
                .from_rational(&r)
                .ok_or_else(|| precondition(format!("{t} has a denominator divisible by {p}")))
        })
        .collect()
}

fn require_len(got: usize, want: usize, what: &str) -> Result<(), Failure> {
    if got == want {
        Ok(())
    } else {
        Err(precondition(format!("{what} has {got} entries, expected {want}")))
    }
}

fn poly_string(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn poly_json(f: &Poly<u64>) -> Value {
    json!({"coefficients": f.coeffs(), "polynomial": poly_string(f.coeffs())})
}

fn matrix_json<E: Clone>(m: &Matrix<E>, mut show: impl FnMut(&E) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(&mut show).collect()))
            .collect(),
    )
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// cyclic commands

fn cyclic_dft(n: u64, p: u64, alpha: Option<u64>, input: Option<&str>, inverse: bool) -> CmdResult {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(precondition("N must be at least 1"));
    }
    if n % p == 0 {
        return Err(modular_dft::Error::CharacteristicDividesLength { n, p }.into());
    }
    if (p - 1) % n != 0 {
        return Err(precondition(format!(
            "N does not divide p-1: F_{p} has no primitive {n}-th root of unity"
        )));
    }
    let alpha = match alpha {
        Some(a) => a % p,
        None => cyclic::default_root(&field, n)?,
    };
    let v = match input {
        Some(s) => parse_mod_p(&read_tokens(s)?, p)?,
        None => (0..n).map(|i| i % p).collect(),
    };
    require_len(v.len(), n as usize, "input")?;
    let out = if inverse {
        cyclic::idft_root_of_unity(&field, &v, &alpha)?
    } else {
        cyclic::dft_root_of_unity(&field, &v, &alpha)?
    };
    Ok(Outcome::ok(json!({"alpha": alpha, "input": v, "output": out})))
}

fn factor_xn1(n: u64, p: u64, splitting: bool, seed: u64) -> CmdResult {
    if n == 0 {
        return Err(precondition("N must be at least 1"));
    }
    let fac = factor_xn_minus_1_seeded(n, p, seed)?;
    let field = PrimeField::new(p)?;
    let ring = PolyRing::new(&field);
    let reconstructed = ring.expand(&fac.factorization()) == ring.x_pow_minus_one(n as usize);
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|f| {
            let mut v = poly_json(&f.factor);
            v["multiplicity"] = json!(f.multiplicity);
            v["d"] = json!(f.d);
            v["f"] = json!(f.f);
            v["g"] = json!(f.g);
            v
        })
        .collect();
    let mut result = json!({
        "n": fac.n,
        "p": fac.p,
        "s": fac.s,
        "ell": fac.ell,
        "factors": factors,
        "cyclotomic_splits": fac.splits,
        "linear_factor_count": fac.linear_factor_count(),
        "reconstruction_ok": reconstructed,
    });
    if splitting {
        let ext = cyclic::splitting_field(n, p)?;
        let degree = ext.relative_degree();
        result["splitting_field"] = json!({
            "degree": degree,
            "order": (p as u128).pow(degree as u32).to_string(),
            "modulus": poly_json(ext.modulus()),
        });
    }
    Ok(Outcome {
        result,
        verified: reconstructed,
        failed_check: (!reconstructed).then(|| "product of factors differs from x^N - 1".into()),
    })
}

fn crt_dft(n: u64, p: u64, input: &str, inverse: bool) -> CmdResult {
    if n == 0 {
        return Err(precondition("N must be at least 1"));
    }
    let field = PrimeField::new(p)?;
    let values = parse_mod_p(&read_tokens(input)?, p)?;
    let moduli = cyclic::crt_moduli(&field, n as usize);
    let moduli_json: Vec<Value> = moduli.iter().map(poly_json).collect();
    if inverse {
        require_len(values.len(), n as usize, "concatenated residues")?;
        let mut residues = Vec::with_capacity(moduli.len());
        let mut rest = values.as_slice();
        for m in &moduli {
            let d = m.degree().unwrap_or(0);
            residues.push(rest[..d].to_vec());
            rest = &rest[d..];
        }
        let spectrum = CrtSpectrum { n: n as usize, moduli, residues };
        let signal = cyclic::crt_idft(&spectrum, p)?;
        Ok(Outcome::ok(json!({"moduli": moduli_json, "output": signal})))
    } else {
        require_len(values.len(), n as usize, "input")?;
        let spectrum = cyclic::crt_dft(&values, p)?;
        Ok(Outcome::ok(json!({
            "moduli": moduli_json,
            "residues": spectrum.residues,
            "total_length": spectrum.total_length(),
        })))
    }
}

// ---------------------------------------------------------------------------
// symmetric group commands

struct SnArgs<'a> {
    n: Option<usize>,
    p: Option<u64>,
    fixture: Option<&'a str>,
    verify_fixture: bool,
    input: Option<&'a str>,
    seed: u64,
}

impl SnArgs<'_> {
    fn n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| precondition("--n is required"))
    }

    fn p(&self) -> Result<u64, Failure> {
        self.p.ok_or_else(|| precondition("--p is required"))
    }

    fn algebra(&self) -> Result<GroupAlgebra, Failure> {
        Ok(GroupAlgebra::new(self.p()?, self.n()?)?)
    }
}

fn blocks_json<F: Field>(blocks: &[FourierBlock<F::Elem>], show: impl Fn(&F::Elem) -> Value + Copy) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| {
                json!({
                    "lambda": b.lambda,
                    "dim": b.matrix.rows(),
                    "matrix": matrix_json(&b.matrix, show),
                })
            })
            .collect(),
    )
}

fn rational_json(r: &num_rational::BigRational) -> Value {
    Value::String(format_rational(r))
}

fn sn_dft(args: &SnArgs) -> CmdResult {
    let n = args.n()?;
    let table = SpechtTable::new(n)?;
    let order = table.group.order();
    let tokens = match args.input {
        Some(s) => read_tokens(s)?,
        None => {
            let mut r = rng(args.seed);
            (0..order).map(|_| r.gen_range(-5i64..=5).to_string()).collect()
        }
    };
    require_len(tokens.len(), order, "input")?;
    let result = match args.p {
        Some(p) => {
            let field = PrimeField::new(p)?;
            let f = parse_mod_p(&tokens, p)?;
            let blocks = symmetric::sn_dft(&field, &table, &f)?;
            json!({"field": format!("F_{p}"), "input": f, "blocks": blocks_json::<PrimeField>(&blocks, |x| json!(x))})
        }
        None => {
            let f = tokens
                .iter()
                .map(|t| parse_rational(t).ok_or_else(|| precondition(format!("not a rational: {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let blocks = symmetric::sn_dft(&Rationals, &table, &f)?;
            json!({
                "field": "Q",
                "input": f.iter().map(format_rational).collect::<Vec<_>>(),
                "blocks": blocks_json::<Rationals>(&blocks, rational_json),
            })
        }
    };
    Ok(Outcome::ok(result))
}

fn split_blocks<E: Clone>(table: &SpechtTable, values: &[E]) -> Result<Vec<FourierBlock<E>>, Failure> {
    let mut rest = values;
    let mut blocks = Vec::new();
    for (lambda, mats) in &table.reps {
        let d = mats[0].rows();
        let m = Matrix::from_vec(d, d, rest[..d * d].to_vec())?;
        rest = &rest[d * d..];
        blocks.push(FourierBlock { lambda: lambda.clone(), matrix: m });
    }
    Ok(blocks)
}

fn sn_idft(args: &SnArgs) -> CmdResult {
    let n = args.n()?;
    let table = SpechtTable::new(n)?;
    let input = args
        .input
        .ok_or_else(|| precondition("idft needs --input with the Fourier blocks concatenated row-major"))?;
    let tokens = read_tokens(input)?;
    require_len(tokens.len(), table.group.order(), "concatenated Fourier blocks")?;
    let result = match args.p {
        Some(p) => {
            let field = PrimeField::new(p)?;
            let blocks = split_blocks(&table, &parse_mod_p(&tokens, p)?)?;
            let f = symmetric::sn_idft(&field, &table, &blocks)?;
            json!({"field": format!("F_{p}"), "output": f})
        }
        None => {
            let values = tokens
                .iter()
                .map(|t| parse_rational(t).ok_or_else(|| precondition(format!("not a rational: {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let blocks = split_blocks(&table, &values)?;
            let f = symmetric::sn_idft(&Rationals, &table, &blocks)?;
            json!({"field": "Q", "output": f.iter().map(format_rational).collect::<Vec<_>>()})
        }
    };
    Ok(Outcome::ok(result))
}

fn sn_unitary(args: &SnArgs) -> CmdResult {
    if args.verify_fixture {
        let n = args.n.unwrap_or(3);
        if n != 3 {
            return Err(precondition("--verify-fixture is only available for n = 3"));
        }
        let report = unitary::verify_n3_fixture()?;
        let checks: Vec<Value> = report
            .checks()
            .iter()
            .map(|(name, ok)| json!({"check": name, "pass": ok}))
            .collect();
        let failed: Vec<&str> = report.checks().iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
        let mut result = serde_json::to_value(&report).expect("report serializes");
        result["checks"] = Value::Array(checks);
        return Ok(Outcome {
            result,
            verified: failed.is_empty(),
            failed_check: (!failed.is_empty()).then(|| failed.join("; ")),
        });
    }
    let n = args.n()?;
    let rep = unitary::unitary_sn_dft(n)?;
    let modulus = rep.max_modulus_deviation();
    let ok = rep.defect <= UNITARITY_TOL && modulus <= UNITARITY_TOL;
    let result = json!({
        "n": n,
        "blocks": rep.blocks.iter().map(|b| json!({"lambda": b.lambda, "dim": b.tau[0].rows()})).collect::<Vec<_>>(),
        "unitarity_defect": rep.defect,
        "max_eigenvalue_modulus_deviation": modulus,
        "eigenvalues": rep.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "matrix": matrix_json(&rep.u, |z| json!(z.re)),
    });
    Ok(Outcome {
        result,
        verified: ok,
        failed_check: (!ok).then(|| format!("unitarity defect {:e} exceeds {UNITARITY_TOL:e}", rep.defect.max(modulus))),
    })
}

fn p_cores(n: usize, p: u64) -> Vec<Value> {
    let cores: BTreeSet<Vec<usize>> = symmetric::partitions(n)
        .iter()
        .map(|l| symmetric::p_core(l, p as usize).0.parts().to_vec())
        .collect();
    cores.into_iter().map(|c| json!(c)).collect()
}

fn sn_idempotents(args: &SnArgs) -> CmdResult {
    let alg = args.algebra()?;
    let set = alg.central_idempotents(args.seed);
    let checks = verify_idempotents(&alg, &set);
    let cores = p_cores(alg.n(), alg.p());
    let count_ok = cores.len() == set.len();
    let result = json!({
        "p": alg.p(),
        "n": alg.n(),
        "count": set.len(),
        "block_dims": set.block_dims,
        "p_cores": cores,
        "idempotents": set
            .idempotents
            .iter()
            .map(|e| serde_json::to_value(SparseElement { group: alg.group(), coeffs: e }).expect("serializes"))
            .collect::<Vec<_>>(),
        "checks": checks,
        "count_matches_p_cores": count_ok,
    });
    let ok = checks.all() && count_ok;
    Ok(Outcome {
        result,
        verified: ok,
        failed_check: (!ok).then(|| "idempotent axioms or block count".into()),
    })
}

fn sn_modular_dft(args: &SnArgs) -> CmdResult {
    let alg = args.algebra()?;
    let set = alg.central_idempotents(args.seed);
    let mdm = alg.modular_dft_matrix(&set)?;
    let mut r = rng(args.seed);
    let diagonal = (0..BLOCK_CHECKS).all(|_| mdm.is_block_diagonal_for(&alg, &sga::random_element(&alg, &mut r)));
    let result = json!({
        "p": mdm.p,
        "n": mdm.n,
        "elements": alg.group().elements(),
        "layout": mdm.layout,
        "block_dims": set.block_dims,
        "basis": matrix_json(&mdm.basis, |x| json!(x)),
        "transform": matrix_json(&mdm.transform, |x| json!(x)),
        "block_diagonal_checks": BLOCK_CHECKS,
        "block_diagonal": diagonal,
    });
    Ok(Outcome {
        result,
        verified: diagonal,
        failed_check: (!diagonal).then(|| "right multiplication is not block diagonal".into()),
    })
}

fn sn_matrix_order(args: &SnArgs) -> CmdResult {
    let (p, n, matrix, source) = match args.fixture {
        Some(name) => {
            let fx = stored_modular_dft(name)?;
            (fx.p, fx.n, fx.matrix, name.to_string())
        }
        None => {
            let alg = args.algebra()?;
            let set = alg.central_idempotents(args.seed);
            let mdm = alg.modular_dft_matrix(&set)?;
            (alg.p(), alg.n(), mdm.basis, "computed".to_string())
        }
    };
    let field = PrimeField::new(p)?;
    let bound = order_bound(&field, &matrix)?;
    let order = match matrix_order_ff(&field, &matrix)? {
        MatrixOrder::Order(d) => json!(d.to_string()),
        MatrixOrder::NotInvertible => Value::Null,
    };
    Ok(Outcome::ok(json!({
        "source": source,
        "p": p,
        "n": n,
        "size": matrix.rows(),
        "rank": linalg::rank(&field, &matrix),
        "order": order,
        "bound": bound.bound.to_string(),
        "factor_degrees": bound.factor_degrees,
        "bound_factorization": bound
            .bound_factorization
            .iter()
            .map(|(q, e)| json!([q.to_string(), e]))
            .collect::<Vec<_>>(),
    })))
}

// ---------------------------------------------------------------------------
// pretty printing

/// Indented JSON where arrays of scalars stay on one line, so matrices print
/// one row per line.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => out.push_str(&v.to_string()),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}
