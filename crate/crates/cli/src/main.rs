//! Command-line surface for the o-polynomial toolkit.
//!
//! Every subcommand prints a human-readable summary by default and a
//! single structured JSON object with `--json`. The JSON payload is the
//! stable machine contract: identical flags and seed produce byte-
//! identical payloads across runs and worker counts (timing lives outside
//! the payload). Exit codes: 0 ok, 1 domain error, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use opolykit::factor::{factor_bivariate, has_abs_irred_factor_over_f2};
use opolykit::gf2m::BinaryField;
use opolykit::opoly::{
    append_checkpoint, are_equivalent, is_opoly_det, is_opoly_fast, load_latest_checkpoint,
    monomial_spectrum, search_opolys, search_space_size, SearchConstraint, SearchOptions,
};
use opolykit::surface::{
    bound, check_identity_4, count_offdiag_zeros, divides_linear, factor_phi_2k, phi_f, phi_j,
    TriPoly,
};
use opolykit::upoly::UPoly;

const WORKERS_ENV: &str = "OPOLYKIT_WORKERS";

#[derive(Parser)]
#[command(name = "opolykit", version, about = "o-polynomials and hyperovals over binary fields")]
struct Cli {
    /// Emit one structured JSON object instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Field exponent: the field is F_{2^h}.
    #[arg(long = "h")]
    h: u32,
    /// Modulus as a hexadecimal bit-vector (e.g. 0xB for x^3+x+1);
    /// defaults to the lexicographically smallest irreducible.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<BinaryField, String> {
        match &self.modulus {
            None => BinaryField::new(self.h).map_err(|e| e.to_string()),
            Some(m) => {
                let bits = parse_hex(m)?;
                BinaryField::with_modulus(self.h, bits).map_err(|e| e.to_string())
            }
        }
    }
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u64::from_str_radix(digits, 16).map_err(|_| format!("bad hexadecimal value {s:?}"))
}

#[derive(Subcommand)]
enum Command {
    /// Binary field inspection.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// O-polynomial checks, equivalence and searches.
    Opoly {
        #[command(subcommand)]
        cmd: OpolyCmd,
    },
    /// The surfaces phi_j / Phi_f and their identities.
    Phi {
        #[command(subcommand)]
        cmd: PhiCmd,
    },
    /// Factorisation and absolute irreducibility.
    Factor {
        #[command(subcommand)]
        cmd: FactorCmd,
    },
    /// Point-count lower bounds.
    Bound {
        #[command(subcommand)]
        cmd: BoundCmd,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Show order, modulus and element count of F_{2^h}.
    Info(FieldArgs),
}

#[derive(Subcommand)]
enum OpolyCmd {
    /// Test whether a polynomial is an o-polynomial.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        /// Polynomial in the term format, e.g. "1*x^6" or "3*x^4+1*x^2".
        #[arg(long)]
        poly: String,
        /// Also run the cubic determinant oracle and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive coefficient search with checkpointing.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "degree-bound")]
        degree_bound: u32,
        /// One of: all, even-terms-only, linearized, monomial.
        #[arg(long)]
        constraint: String,
        /// Checkpoint file (line-delimited records); resumed when present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker shards per block (env OPOLYKIT_WORKERS overrides).
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Stop after roughly this many candidates (resumable later).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Search for a shift witness making two polynomials equivalent.
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// All monomial o-polynomial exponents of the field.
    Monomials {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Lift an F_2 pattern across a range of fields.
    Family {
        /// Pattern with coefficients in F_2, e.g. "1*x^6".
        #[arg(long)]
        poly: String,
        #[arg(long = "h-min")]
        h_min: u32,
        #[arg(long = "h-max")]
        h_max: u32,
    },
}

#[derive(Subcommand)]
enum PhiCmd {
    /// Build phi_j (with --j) or Phi_f (with --h/--poly).
    Build {
        #[arg(long)]
        j: Option<u32>,
        #[arg(long = "h")]
        h: Option<u32>,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Verify the diagonal restriction identity for phi_{2i}.
    Identity4 {
        #[arg(long)]
        i: u32,
    },
    /// The linear factors of phi_{2^k} over F_{2^k}.
    Factor2k {
        #[arg(long)]
        k: u32,
    },
    /// Count off-diagonal zeros of Phi_f (or an explicit trivariate).
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        tri: Option<String>,
    },
    /// Does x + z + theta(y+z) divide the polynomial?
    Divides {
        #[command(flatten)]
        field: FieldArgs,
        /// theta as hexadecimal bits of an element of F_{2^h}.
        #[arg(long)]
        theta: String,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        tri: Option<String>,
    },
}

#[derive(Subcommand)]
enum FactorCmd {
    /// Factor a homogeneous trivariate over F_2 and decide whether an
    /// absolutely irreducible factor over F_2 exists.
    Tri {
        /// Shortcut: use phi_j for this j.
        #[arg(long)]
        j: Option<u32>,
        /// Explicit trivariate polynomial text over F_2.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Evaluate the surface and off-diagonal point-count lower bounds.
    Eval {
        #[arg(long = "h")]
        h: u32,
        #[arg(long)]
        d: u64,
    },
}

struct CmdOutput {
    payload: Value,
    human: String,
}

/// Print without panicking when the reader closes the pipe early.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                let envelope = json!({
                    "status": "ok",
                    "payload": out.payload,
                    "timing_ms": start.elapsed().as_millis() as u64,
                });
                emit(&envelope.to_string());
            } else {
                emit(&out.human);
            }
            ExitCode::SUCCESS
        }
        Err(msg) => {
            if cli.json {
                let envelope = json!({
                    "status": "error",
                    "error": msg,
                    "timing_ms": start.elapsed().as_millis() as u64,
                });
                emit(&envelope.to_string());
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> Result<CmdOutput, String> {
    match cmd {
        Command::Field { cmd: FieldCmd::Info(args) } => field_info(args),
        Command::Opoly { cmd } => match cmd {
            OpolyCmd::Check { field, poly, oracle } => opoly_check(field, poly, *oracle),
            OpolyCmd::Search {
                field,
                degree_bound,
                constraint,
                checkpoint,
                workers,
                limit,
            } => opoly_search(field, *degree_bound, constraint, checkpoint, *workers, *limit),
            OpolyCmd::Equiv { field, f, g } => opoly_equiv(field, f, g),
            OpolyCmd::Monomials { field } => opoly_monomials(field),
            OpolyCmd::Family { poly, h_min, h_max } => opoly_family(poly, *h_min, *h_max),
        },
        Command::Phi { cmd } => match cmd {
            PhiCmd::Build { j, h, modulus, poly } => phi_build(*j, *h, modulus, poly),
            PhiCmd::Identity4 { i } => phi_identity4(*i),
            PhiCmd::Factor2k { k } => phi_factor2k(*k),
            PhiCmd::Count { field, poly, tri } => phi_count(field, poly, tri),
            PhiCmd::Divides { field, theta, j, tri } => phi_divides(field, theta, *j, tri),
        },
        Command::Factor { cmd: FactorCmd::Tri { j, poly, seed } } => factor_tri(*j, poly, *seed),
        Command::Bound { cmd: BoundCmd::Eval { h, d } } => bound_eval(*h, *d),
    }
}

fn modulus_poly_text(modulus: u64) -> String {
    let mut terms = Vec::new();
    for e in (0..64).rev() {
        if (modulus >> e) & 1 == 1 {
            terms.push(match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            });
        }
    }
    terms.join("+")
}

fn field_info(args: &FieldArgs) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let default = BinaryField::new(args.h).map_err(|e| e.to_string())?;
    let payload = json!({
        "schema": "opolykit/field-info/v1",
        "h": field.h(),
        "q": field.q(),
        "modulus_hex": format!("{:#X}", field.modulus()),
        "modulus_poly": modulus_poly_text(field.modulus()),
        "is_default_modulus": field.modulus() == default.modulus(),
    });
    let human = format!(
        "field:   F_{{2^{}}} (q = {})\nmodulus: {:#X} = {}{}",
        field.h(),
        field.q(),
        field.modulus(),
        modulus_poly_text(field.modulus()),
        if field.modulus() == default.modulus() {
            " (default)"
        } else {
            ""
        }
    );
    Ok(CmdOutput { payload, human })
}

fn verdict_json(v: &opolykit::OPolyVerdict) -> Value {
    json!({
        "is_opoly": v.is_opoly,
        "failed_condition": v.failed_condition.map(|c| c.to_string()),
        "witness": v.witness.map(|w| w.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    })
}

fn opoly_check(args: &FieldArgs, poly: &str, oracle: bool) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let f = UPoly::parse(field, poly).map_err(|e| e.to_string())?;
    let verdict = is_opoly_fast(&f);
    let oracle_verdict = oracle.then(|| is_opoly_det(&f));
    let payload = json!({
        "schema": "opolykit/opoly-check/v1",
        "h": field.h(),
        "modulus_hex": format!("{:#X}", field.modulus()),
        "poly": f.to_string(),
        "verdict": verdict_json(&verdict),
        "oracle_agrees": oracle_verdict.as_ref().map(|o| o.is_opoly == verdict.is_opoly),
    });
    let mut human = format!("poly:     {f}\nis_opoly: {}", verdict.is_opoly);
    if let Some(c) = verdict.failed_condition {
        human.push_str(&format!("\nfailed:   {c}"));
    }
    if let Some(w) = verdict.witness {
        human.push_str(&format!("\nwitness:  ({}, {}, {})", w[0], w[1], w[2]));
    }
    if let Some(o) = oracle_verdict {
        human.push_str(&format!(
            "\noracle:   {} ({})",
            o.is_opoly,
            if o.is_opoly == verdict.is_opoly {
                "agrees"
            } else {
                "DISAGREES"
            }
        ));
    }
    Ok(CmdOutput { payload, human })
}

fn opoly_search(
    args: &FieldArgs,
    degree_bound: u32,
    constraint: &str,
    checkpoint: &Option<PathBuf>,
    workers: usize,
    limit: Option<u64>,
) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let constraint = SearchConstraint::from_tag(constraint).ok_or_else(|| {
        format!(
            "unknown constraint {constraint:?} (expected all, even-terms-only, linearized or monomial)"
        )
    })?;
    let workers = match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| format!("bad {WORKERS_ENV} value {v:?}"))?,
        Err(_) => workers,
    };
    let resume = match checkpoint {
        Some(path) if path.exists() => Some(load_latest_checkpoint(path).map_err(|e| e.to_string())?),
        _ => None,
    };
    let options = SearchOptions { workers, limit };
    let mut sink_err: Option<String> = None;
    let outcome = {
        let mut sink = |cp: &opolykit::SearchCheckpoint| {
            if let Some(path) = checkpoint {
                if let Err(e) = append_checkpoint(path, cp) {
                    sink_err.get_or_insert(e.to_string());
                }
            }
        };
        search_opolys(
            &field,
            degree_bound,
            constraint,
            resume.as_ref(),
            &options,
            Some(&mut sink),
        )
        .map_err(|e| e.to_string())?
    };
    if let Some(e) = sink_err {
        return Err(format!("checkpoint write failed: {e}"));
    }
    let hits: Vec<String> = outcome.hits.iter().map(|h| h.to_string()).collect();
    let payload = json!({
        "schema": "opolykit/opoly-search/v1",
        "h": field.h(),
        "modulus_hex": format!("{:#X}", field.modulus()),
        "degree_bound": degree_bound,
        "constraint": constraint.tag(),
        "space_size": search_space_size(&field, degree_bound, constraint).to_string(),
        "cursor": outcome.checkpoint.cursor,
        "complete": outcome.complete,
        "hit_count": hits.len(),
        "hits": hits,
    });
    let mut human = format!(
        "search:   h={} modulus={:#X} degree<={} constraint={}\nscanned:  {} / {} candidates{}\nhits:     {}",
        field.h(),
        field.modulus(),
        degree_bound,
        constraint.tag(),
        outcome.checkpoint.cursor,
        search_space_size(&field, degree_bound, constraint),
        if outcome.complete { " (complete)" } else { " (resumable)" },
        outcome.hits.len(),
    );
    for h in &outcome.hits {
        human.push_str(&format!("\n  {h}"));
    }
    Ok(CmdOutput { payload, human })
}

fn opoly_equiv(args: &FieldArgs, f_text: &str, g_text: &str) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let f = UPoly::parse(field, f_text).map_err(|e| e.to_string())?;
    let g = UPoly::parse(field, g_text).map_err(|e| e.to_string())?;
    let witness = are_equivalent(&f, &g);
    let payload = json!({
        "schema": "opolykit/opoly-equiv/v1",
        "h": field.h(),
        "f": f.to_string(),
        "g": g.to_string(),
        "equivalent": witness.is_some(),
        "witness": witness.map(|a| a.to_string()),
    });
    let human = match witness {
        Some(a) => format!("equivalent: true\nwitness:    a = {a}"),
        None => "equivalent: false".to_string(),
    };
    Ok(CmdOutput { payload, human })
}

fn opoly_monomials(args: &FieldArgs) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let spectrum = monomial_spectrum(&field).map_err(|e| e.to_string())?;
    let exps: Vec<u64> = spectrum.into_iter().collect();
    let payload = json!({
        "schema": "opolykit/opoly-monomials/v1",
        "h": field.h(),
        "exponents": exps,
    });
    let human = format!(
        "monomial o-polynomial exponents of F_{{2^{}}}: {:?}",
        field.h(),
        exps
    );
    Ok(CmdOutput { payload, human })
}

fn opoly_family(poly: &str, h_min: u32, h_max: u32) -> Result<CmdOutput, String> {
    if h_min > h_max {
        return Err(format!("empty range: h-min {h_min} > h-max {h_max}"));
    }
    let f2 = BinaryField::new(1).map_err(|e| e.to_string())?;
    let pattern = UPoly::parse(f2, poly).map_err(|e| e.to_string())?;
    let range: Vec<u32> = (h_min..=h_max).collect();
    let results =
        opolykit::opoly::check_family(&pattern, &range).map_err(|e| e.to_string())?;
    let payload = json!({
        "schema": "opolykit/opoly-family/v1",
        "poly": pattern.to_string(),
        "results": results.iter().map(|(h, b)| json!({"h": h, "is_opoly": b})).collect::<Vec<_>>(),
    });
    let mut human = format!("family: {pattern}");
    for (h, b) in &results {
        human.push_str(&format!("\n  h={h:<3} {b}"));
    }
    Ok(CmdOutput { payload, human })
}

fn phi_build(
    j: Option<u32>,
    h: Option<u32>,
    modulus: &Option<String>,
    poly: &Option<String>,
) -> Result<CmdOutput, String> {
    let p: TriPoly = match (j, h, poly) {
        (Some(j), None, None) => {
            if j < 1 {
                return Err("phi build --j requires j >= 1".to_string());
            }
            phi_j(j)
        }
        (None, Some(h), Some(poly)) => {
            let args = FieldArgs {
                h,
                modulus: modulus.clone(),
            };
            let field = args.field()?;
            let f = UPoly::parse(field, poly).map_err(|e| e.to_string())?;
            phi_f(&f)
        }
        _ => return Err("use either --j N, or --h H --poly TEXT".to_string()),
    };
    let payload = json!({
        "schema": "opolykit/phi-build/v1",
        "poly": p.to_string(),
        "terms": p.num_terms(),
        "total_degree": p.total_degree(),
    });
    let human = format!(
        "terms:        {}\ntotal_degree: {:?}\npoly:         {}",
        p.num_terms(),
        p.total_degree(),
        p
    );
    Ok(CmdOutput { payload, human })
}

fn phi_identity4(i: u32) -> Result<CmdOutput, String> {
    if i < 1 {
        return Err("identity4 requires i >= 1".to_string());
    }
    let holds = check_identity_4(i);
    let payload = json!({
        "schema": "opolykit/phi-identity4/v1",
        "i": i,
        "holds": holds,
    });
    Ok(CmdOutput {
        payload,
        human: format!("phi_{}(x,y,x) = ((x^{i}+y^{i})/(x+y))^2: {holds}", 2 * i),
    })
}

fn phi_factor2k(k: u32) -> Result<CmdOutput, String> {
    if k < 2 {
        return Err("factor2k requires k >= 2".to_string());
    }
    let factors = factor_phi_2k(k).map_err(|e| e.to_string())?;
    let product = factors
        .iter()
        .fold(TriPoly::constant(factors[0].field(), 1), |acc, f| acc.mul(f));
    let expected = {
        let f2 = BinaryField::new(1).map_err(|e| e.to_string())?;
        let big = factors[0].field();
        let emb = opolykit::Embedding::new(&f2, &big).map_err(|e| e.to_string())?;
        phi_j(1 << k).lift(&emb)
    };
    let matches = product == expected;
    let texts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    let payload = json!({
        "schema": "opolykit/phi-factor2k/v1",
        "k": k,
        "factor_count": texts.len(),
        "factors": texts,
        "product_matches_phi": matches,
    });
    let mut human = format!(
        "phi_{} over F_{{2^{k}}}: {} linear factors (product matches: {matches})",
        1u64 << k,
        texts.len()
    );
    for t in &texts {
        human.push_str(&format!("\n  {t}"));
    }
    Ok(CmdOutput { payload, human })
}

fn phi_count(
    args: &FieldArgs,
    poly: &Option<String>,
    tri: &Option<String>,
) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let p: TriPoly = match (poly, tri) {
        (Some(poly), None) => {
            let f = UPoly::parse(field, poly).map_err(|e| e.to_string())?;
            phi_f(&f)
        }
        (None, Some(tri)) => TriPoly::parse(field, tri).map_err(|e| e.to_string())?,
        _ => return Err("use exactly one of --poly or --tri".to_string()),
    };
    let count = count_offdiag_zeros(&p, &field).map_err(|e| e.to_string())?;
    let payload = json!({
        "schema": "opolykit/phi-count/v1",
        "h": field.h(),
        "count": count,
        "zero": count == 0,
    });
    Ok(CmdOutput {
        payload,
        human: format!("off-diagonal zeros over F_{{2^{}}}: {count}", field.h()),
    })
}

fn phi_divides(
    args: &FieldArgs,
    theta: &str,
    j: Option<u32>,
    tri: &Option<String>,
) -> Result<CmdOutput, String> {
    let field = args.field()?;
    let theta = field.parse_element(theta).map_err(|e| e.to_string())?;
    let p: TriPoly = match (j, tri) {
        (Some(j), None) => {
            if j < 1 {
                return Err("phi divides --j requires j >= 1".to_string());
            }
            phi_j(j)
        }
        (None, Some(tri)) => TriPoly::parse(field, tri).map_err(|e| e.to_string())?,
        _ => return Err("use exactly one of --j or --tri".to_string()),
    };
    let divides = divides_linear(theta, &p);
    let payload = json!({
        "schema": "opolykit/phi-divides/v1",
        "h": field.h(),
        "theta": theta.to_string(),
        "divides": divides,
    });
    Ok(CmdOutput {
        payload,
        human: format!("x + z + {theta}*(y+z) divides: {divides}"),
    })
}

fn factor_tri(j: Option<u32>, poly: &Option<String>, seed: u64) -> Result<CmdOutput, String> {
    let f2 = BinaryField::new(1).map_err(|e| e.to_string())?;
    let p: TriPoly = match (j, poly) {
        (Some(j), None) => {
            if j < 1 {
                return Err("factor tri --j requires j >= 1".to_string());
            }
            phi_j(j)
        }
        (None, Some(text)) => TriPoly::parse(f2, text).map_err(|e| e.to_string())?,
        _ => return Err("use exactly one of --j or --poly".to_string()),
    };
    let report = has_abs_irred_factor_over_f2(&p, seed).map_err(|e| e.to_string())?;
    let factors = if p.is_zero() || p.total_degree() == Some(0) {
        Vec::new()
    } else {
        factor_bivariate(&p.dehomogenize_z(), seed)
            .map_err(|e| e.to_string())?
            .factors
    };
    let factor_list: Vec<Value> = factors
        .iter()
        .map(|(f, m)| {
            json!({
                "poly": f.homogenize_z().to_string(),
                "total_degree": f.total_degree(),
                "multiplicity": m,
            })
        })
        .collect();
    let payload = json!({
        "schema": "opolykit/factor-tri/v1",
        "input": p.to_string(),
        "factors": factor_list,
        "has_abs_irred_factor_over_f2": report.has_abs_irred_factor_over_base,
        "witness": report.witness_factor.as_ref().map(|w| w.to_string()),
        "splitting_extension": report.splitting_extension,
    });
    let mut human = format!(
        "factors over F_2 (re-homogenised): {}\nabs. irreducible factor over F_2: {}",
        factors.len(),
        report.has_abs_irred_factor_over_base
    );
    for (f, m) in &factors {
        human.push_str(&format!("\n  deg {:2} mult {m}: {}", f.total_degree().unwrap_or(0), f.homogenize_z()));
    }
    if let Some(w) = &report.witness_factor {
        human.push_str(&format!("\nwitness: {w}"));
    }
    if let Some(e) = report.splitting_extension {
        human.push_str(&format!("\nfirst factor splits over F_{{2^{e}}}"));
    }
    Ok(CmdOutput { payload, human })
}

fn bound_eval(h: u32, d: u64) -> Result<CmdOutput, String> {
    if h == 0 || h > 62 {
        return Err(format!("h = {h} out of range (1..=62)"));
    }
    let q = 1u64 << h;
    let positive = bound::bound_positive(q, d).map_err(|e| e.to_string())?;
    let exact = h.is_multiple_of(2);
    let (surface, offdiag) = if exact {
        let (s, o) = bound::gl_bound(q, d).map_err(|e| e.to_string())?;
        (Some(s.to_string()), Some(o.to_string()))
    } else {
        (None, None)
    };
    let payload = json!({
        "schema": "opolykit/bound-eval/v1",
        "h": h,
        "q": q.to_string(),
        "d": d,
        "surface_bound": surface,
        "offdiag_bound": offdiag,
        "positive": positive,
        "exact": exact,
    });
    let human = match (&payload["surface_bound"], &payload["offdiag_bound"]) {
        (Value::String(s), Value::String(o)) => format!(
            "q = 2^{h}, d = {d}\nsurface_bound: {s}\noffdiag_bound: {o}\npositive:      {positive}"
        ),
        _ => format!(
            "q = 2^{h}, d = {d}\nodd exponent: exact q^(3/2) unavailable; sign via squared comparison\npositive: {positive}"
        ),
    };
    Ok(CmdOutput { payload, human })
}
