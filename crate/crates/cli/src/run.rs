//! Argument parsing, dispatch and report rendering.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lacunary::bounds::{
    generalized_multiplicity_bound, hajos_family, max_valuation_search, valuation_bound, weight2_valuation_bound,
    wz_identity_check, MultiBoundInput, SearchParams,
};
use lacunary::coeffring::Field;
use lacunary::error::Error as CoreError;
use lacunary::factors::{
    fp_form_supported, linear_factors_fp, linear_factors_q, multilinear_factors_q, verify_report, EvidenceSource,
    Factor, FactorReport, Grouping, LinearForm, PieceLayout,
};
use lacunary::gap::{gap_partition, piece_decomposition};
use lacunary::pit::{
    verify_witness, zero_test_fp, zero_test_q, zero_test_two_sparse, Certainty, PitOptions, SumWitness, Verdict,
    Witness, ZeroTestVerdict, DEFAULT_LAMBDA,
};
use lacunary::poly::{binom_size, expand_oracle, lacunary_size, wronskian, BinomExprPoly, DEFAULT_ORACLE_CAP};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::document::{self, Body, InputDocument, ParseError};

pub const EXIT_OK: i32 = 0;
/// The checked property does not hold (for example a `NonZero` verdict).
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
/// The input is well formed but outside an operation's preconditions.
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lacunary",
    version,
    about = "Identity testing and factor extraction for lacunary polynomials"
)]
struct Cli {
    /// Seed of every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo answers err with probability at most 2^-lambda.
    #[arg(long, global = true, default_value_t = DEFAULT_LAMBDA)]
    lambda: u32,
    /// Largest degree a dense expansion may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
    /// Worker threads for the library.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Input {
    /// Document path; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the document's polynomial is zero.
    ZeroTest(Input),
    /// Linear or multilinear factors with multiplicities.
    Factor {
        #[arg(long, conflicts_with = "multilinear")]
        linear: bool,
        #[arg(long)]
        multilinear: bool,
        /// Restrict to one linear form.
        #[arg(long, value_enum)]
        form: Option<FormArg>,
        #[command(flatten)]
        input: Input,
    },
    /// Valuation bounds of the document's exponent list.
    Bound {
        #[arg(long, group = "kind")]
        thm1: bool,
        #[arg(long, group = "kind")]
        weight2: bool,
        #[arg(long, group = "kind")]
        generalized: bool,
        /// Keep the given column order in the generalized bound.
        #[arg(long)]
        no_order_opt: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Gap partition (binomial documents) or dense pieces (lacunary ones).
    GapSplit {
        #[arg(long, default_value_t = 1)]
        weight: u32,
        #[command(flatten)]
        input: Input,
    },
    /// Emit a generated document.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Run a built-in identity check.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Wronskian of the expanded terms of a small binomial document.
    Wronskian(Input),
    /// Search instances for large valuation gains.
    Search {
        #[command(subcommand)]
        what: Search,
    },
}

#[derive(Subcommand, Debug)]
enum Generate {
    /// The Hajos family, whose expansion is X^(2k+3).
    Hajos {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// The sum identity and recurrence behind the Hajos coefficients.
    Wz {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    MaxValuation {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        exp_cap: u64,
        #[arg(long, default_value_t = 5)]
        coeff_cap: u64,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
}

impl Command {
    fn input(&self) -> Option<&Input> {
        match self {
            Command::ZeroTest(i) | Command::Wronskian(i) => Some(i),
            Command::Factor { input, .. } | Command::Bound { input, .. } | Command::GapSplit { input, .. } => {
                Some(input)
            }
            Command::Generate { .. } | Command::Check { .. } | Command::Search { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    XMinusA,
    YMinusB,
    YMinusUx,
    General,
}

impl From<FormArg> for LinearForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::XMinusA => LinearForm::XminusA,
            FormArg::YMinusB => LinearForm::YminusB,
            FormArg::YMinusUx => LinearForm::YminusUX,
            FormArg::General => LinearForm::General,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(
                CoreError::CharacteristicTooSmall { .. }
                | CoreError::UnsupportedForm(_)
                | CoreError::DegreeCap { .. }
                | CoreError::MultiplicityCap { .. }
                | CoreError::TooManyCandidates(_)
                | CoreError::SpecializationExhausted(_)
                | CoreError::PrimeSearchExhausted { .. },
            ) => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            _ if self.code() == EXIT_PRECONDITION => "precondition",
            _ => "input",
        }
    }
}

/// What a command produced: a report body or a document, and the exit code.
enum Produced {
    Report(Map<String, Value>, i32),
    Document(InputDocument),
}

/// Parses `args` (program name first), runs the command and renders its
/// output. Documents are read from the named file or from `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome { stdout, stderr, code };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => return failure(&Failure::Input(e.to_string())),
    };
    let text = match cli.command.input().map(|i| read_input(i, stdin)).transpose() {
        Ok(t) => t,
        Err(f) => return failure(&f),
    };
    let start = Instant::now();
    let produced = pool.install(|| dispatch(&cli, text.as_deref()));
    let elapsed = start.elapsed();
    match produced {
        Err(f) => failure(&f),
        Ok(Produced::Document(doc)) => Outcome {
            stdout: match cli.format {
                Format::Json => document::to_json(&doc),
                Format::Text => document::to_text(&doc),
            },
            stderr: String::new(),
            code: EXIT_OK,
        },
        Ok(Produced::Report(mut body, code)) => {
            if cli.timings {
                body.insert("timings".into(), json!({"elapsed_ms": elapsed.as_secs_f64() * 1e3}));
            }
            Outcome {
                stdout: render(&Value::Object(body), cli.format),
                stderr: String::new(),
                code,
            }
        }
    }
}

fn failure(f: &Failure) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error[{}]: {f}\n", f.tag()),
        code: f.code(),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", v, &mut out);
            out
        }
    }
}

/// `path = value` lines, one per scalar.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(xs) => {
            if xs.is_empty() {
                out.push_str(&format!("{prefix} = []\n"));
            }
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    Ok(match &input.input {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            s
        }
    })
}

fn read_document(text: Option<&str>) -> Result<InputDocument, Failure> {
    Ok(document::parse(text.unwrap_or_default())?)
}

fn dispatch(cli: &Cli, text: Option<&str>) -> Result<Produced, Failure> {
    let opts = PitOptions {
        lambda: cli.lambda,
        seed: cli.seed,
    };
    let report = |command: &str, body: Map<String, Value>, code: i32| {
        let mut m = Map::new();
        m.insert("command".into(), command.into());
        m.extend(body);
        Ok(Produced::Report(m, code))
    };
    match &cli.command {
        Command::ZeroTest(_) => {
            let (body, code) = match read_document(text)? {
                InputDocument::Rational(b) => zero_test_body(&b, |p| {
                    if p.base_degree().is_one() {
                        zero_test_q(p, &opts)
                    } else {
                        zero_test_two_sparse(p, &opts)
                    }
                })?,
                InputDocument::Galois(b) => zero_test_body(&b, zero_test_fp)?,
            };
            report("zero-test", body, code)
        }
        Command::Factor { multilinear, form, .. } => {
            let form = form.map(LinearForm::from);
            let (body, code) = match read_document(text)? {
                InputDocument::Rational(b) => {
                    let p = lacunary_only(&b)?;
                    let r = if *multilinear {
                        multilinear_factors_q(&p, &opts)?
                    } else {
                        linear_factors_q(&p, &opts)?
                    };
                    factor_body(&b, r, form, |r| verify_report(&p, r, &opts))?
                }
                InputDocument::Galois(b) => {
                    let p = lacunary_only(&b)?;
                    if *multilinear {
                        return Err(CoreError::UnsupportedForm(
                            "multilinear factors in positive characteristic".into(),
                        )
                        .into());
                    }
                    if let Some(f) = form {
                        fp_form_supported(f)?;
                    }
                    let r = linear_factors_fp(&p, &opts)?;
                    factor_body(&b, r, form, |r| verify_report(&p, r, &opts))?
                }
            };
            report("factor", body, code)
        }
        Command::Bound {
            weight2,
            generalized,
            no_order_opt,
            ..
        } => {
            let kind = if *weight2 {
                BoundKind::Weight2
            } else if *generalized {
                BoundKind::Generalized {
                    order_opt: !no_order_opt,
                }
            } else {
                BoundKind::Valuation
            };
            let (body, code) = match read_document(text)? {
                InputDocument::Rational(b) => bound_body(&b, kind, Some(cli.oracle_cap))?,
                InputDocument::Galois(b) => bound_body(&b, kind, None)?,
            };
            report("bound", body, code)
        }
        Command::GapSplit { weight, .. } => {
            let body = match read_document(text)? {
                InputDocument::Rational(b) => gap_body(&b, *weight)?,
                InputDocument::Galois(b) => gap_body(&b, *weight)?,
            };
            report("gap-split", body, EXIT_OK)
        }
        Command::Generate {
            what: Generate::Hajos { k },
        } => Ok(Produced::Document(document::binomial_document(&hajos_family(*k)?))),
        Command::Check { what: Check::Wz { k } } => {
            let mut body = Map::new();
            body.insert("k".into(), (*k).into());
            let code = match wz_identity_check(*k)? {
                Ok(()) => {
                    body.insert("holds".into(), true.into());
                    EXIT_OK
                }
                Err(n) => {
                    body.insert("holds".into(), false.into());
                    body.insert("failure_at".into(), n.into());
                    EXIT_VIOLATION
                }
            };
            report("check wz", body, code)
        }
        Command::Wronskian(_) => {
            let body = match read_document(text)? {
                InputDocument::Rational(b) => wronskian_body(&b, cli.oracle_cap)?,
                InputDocument::Galois(b) => wronskian_body(&b, cli.oracle_cap)?,
            };
            report("wronskian", body, EXIT_OK)
        }
        Command::Search {
            what:
                Search::MaxValuation {
                    k,
                    exp_cap,
                    coeff_cap,
                    budget,
                },
        } => {
            let params = SearchParams {
                k: *k,
                exp_cap: *exp_cap,
                coeff_cap: *coeff_cap,
                seed: cli.seed,
                budget: *budget,
            };
            let mut body = Map::new();
            match max_valuation_search(&params)? {
                Some(r) => {
                    body.insert("gain".into(), r.gain.into());
                    body.insert(
                        "witness".into(),
                        document::to_json_value(&document::binomial_document(&r.witness)),
                    );
                }
                None => {
                    body.insert("gain".into(), Value::Null);
                }
            }
            report("search max-valuation", body, EXIT_OK)
        }
    }
}

fn lacunary_only<F: Field>(b: &Body<F>) -> Result<lacunary::poly::LacunaryPoly<F>, Failure> {
    if b.is_binomial() {
        return Err(Failure::Input("factoring needs a lacunary document".into()));
    }
    Ok(b.lacunary())
}

fn size_bits<F: Field>(b: &Body<F>) -> u64 {
    match b.binomial() {
        Some(p) => binom_size(&p).bits,
        None => lacunary_size(&b.lacunary()).bits,
    }
}

fn certainty_json(c: Certainty) -> Value {
    match c {
        Certainty::Deterministic => json!({"kind": "Deterministic"}),
        Certainty::MonteCarlo { lambda } => json!({"kind": "MonteCarlo", "lambda": lambda}),
    }
}

fn sum_witness_json(w: &SumWitness) -> Value {
    match w {
        SumWitness::Evaluated => json!({"kind": "Evaluated"}),
        SumWitness::SameSign => json!({"kind": "SameSign"}),
        SumWitness::Adic { prime, index } => json!({"kind": "Adic", "prime": prime.to_string(), "index": index}),
        SumWitness::Modulus { prime } => json!({"kind": "Modulus", "prime": prime.to_string()}),
    }
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Coefficient { terms, exponent } => json!({
            "kind": "Coefficient",
            "terms": [terms.start, terms.end],
            "exponent": exponent.to_string(),
        }),
        Witness::PowerSum { exponent, evidence } => json!({
            "kind": "PowerSum",
            "exponent": exponent.to_string(),
            "evidence": sum_witness_json(evidence),
        }),
        Witness::Sum(s) => json!({"kind": "Sum", "evidence": sum_witness_json(s)}),
        Witness::Residue { class, inner } => json!({
            "kind": "Residue",
            "class": class.to_string(),
            "inner": witness_json(inner),
        }),
    }
}

fn verdict_json(v: &ZeroTestVerdict) -> Value {
    json!({
        "verdict": match v.verdict {
            Verdict::Zero => "Zero",
            Verdict::NonZero => "NonZero",
        },
        "certainty": certainty_json(v.certainty),
        "witness": v.witness.as_ref().map_or(Value::Null, witness_json),
    })
}

fn zero_test_body<F: lacunary::pit::PitField>(
    b: &Body<F>,
    test: impl Fn(&BinomExprPoly<F>) -> lacunary::Result<ZeroTestVerdict>,
) -> Result<(Map<String, Value>, i32), Failure> {
    let mut body = Map::new();
    body.insert("size_measure".into(), size_bits(b).into());
    let zero = match b.binomial() {
        Some(p) => {
            let v = test(&p)?;
            let Value::Object(m) = verdict_json(&v) else {
                unreachable!()
            };
            body.extend(m);
            if let Some(w) = &v.witness {
                body.insert("witness_verified".into(), verify_witness(&p, w).into());
            }
            v.is_zero()
        }
        None => {
            let p = b.lacunary();
            body.insert("verdict".into(), if p.is_zero() { "Zero" } else { "NonZero" }.into());
            body.insert("certainty".into(), certainty_json(Certainty::Deterministic));
            let w = p.terms().first().map_or(
                Value::Null,
                |t| json!({"kind": "SurvivingTerm", "alpha": t.alpha.to_string(), "beta": t.beta.to_string()}),
            );
            body.insert("witness".into(), w);
            p.is_zero()
        }
    };
    Ok((body, if zero { EXIT_OK } else { EXIT_VIOLATION }))
}

fn evidence_source(s: EvidenceSource) -> String {
    match s {
        EvidenceSource::Groups(g) => match g {
            Grouping::ByBeta => "groups/beta",
            Grouping::ByAlpha => "groups/alpha",
            Grouping::ByTotalDegree => "groups/alpha+beta",
            Grouping::ByAlphaMinusBeta => "groups/alpha-beta",
        }
        .into(),
        EvidenceSource::Pieces(l) => match l {
            PieceLayout::Gap { weight } => format!("pieces/gap-weight-{weight}"),
            PieceLayout::AlphaMinusBeta => "pieces/alpha-beta".into(),
            PieceLayout::BetaMinusAlpha => "pieces/beta-alpha".into(),
            PieceLayout::TotalDegree => "pieces/alpha+beta".into(),
        },
    }
}

fn factor_body<F: Field>(
    b: &Body<F>,
    mut report: FactorReport<F::Elem>,
    form: Option<LinearForm>,
    verify: impl Fn(&FactorReport<F::Elem>) -> lacunary::Result<bool>,
) -> Result<(Map<String, Value>, i32), Failure> {
    let field = &b.field;
    if let Some(form) = form {
        report
            .entries
            .retain(|e| matches!(&e.factor, Factor::Linear(l) if l.form(field) == form));
    }
    let verified = verify(&report)?;
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let s = |x: &F::Elem| field.format_elem(x);
            let (kind, form, coefficients) = match &e.factor {
                Factor::Linear(l) => (
                    "linear",
                    Value::from(format!("{:?}", l.form(field))),
                    json!({"u": s(l.u()), "v": s(l.v()), "w": s(l.w())}),
                ),
                Factor::Multilinear(m) => (
                    "multilinear",
                    Value::Null,
                    json!({"a": s(m.a()), "b": s(m.b()), "c": s(m.c())}),
                ),
            };
            json!({
                "factor": e.factor.display(field),
                "kind": kind,
                "form": form,
                "coefficients": coefficients,
                "multiplicity": e.multiplicity.to_string(),
                "evidence": {
                    "source": evidence_source(e.evidence.source),
                    "multiplicities": e.evidence.multiplicities.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "restriction": e.evidence.restriction.as_ref().map_or(Value::Null, verdict_json),
                },
            })
        })
        .collect();
    let mut body = Map::new();
    body.insert("size_measure".into(), size_bits(b).into());
    body.insert("factors".into(), entries.into());
    body.insert("certainty".into(), certainty_json(report.certainty));
    body.insert("verified".into(), verified.into());
    Ok((body, if verified { EXIT_OK } else { EXIT_VIOLATION }))
}

#[derive(Clone, Copy)]
enum BoundKind {
    Valuation,
    Weight2,
    Generalized { order_opt: bool },
}

/// The bound on the valuation at zero, plus the actual valuation when the
/// expansion is within `oracle_cap` (rational binomial documents only).
fn bound_body<F: Field>(
    b: &Body<F>,
    kind: BoundKind,
    oracle_cap: Option<u64>,
) -> Result<(Map<String, Value>, i32), Failure> {
    let binom = b.binomial();
    let mut terms = match &binom {
        Some(p) => p.terms().to_vec(),
        None => b.lacunary().terms().to_vec(),
    };
    terms.sort_by(|x, y| (&x.alpha, &x.beta).cmp(&(&y.alpha, &y.beta)));
    let alphas: Vec<BigUint> = terms.iter().map(|t| t.alpha.clone()).collect();
    let (name, bound) = match kind {
        BoundKind::Valuation => ("thm1", valuation_bound(&alphas)?),
        BoundKind::Weight2 => ("weight2", weight2_valuation_bound(&alphas)?),
        BoundKind::Generalized { order_opt } => {
            let Some(p) = &binom else {
                return Err(Failure::Input("the generalized bound needs a binomial document".into()));
            };
            let d = p
                .base_degree()
                .to_u64()
                .ok_or_else(|| Failure::Input("base degree too large".into()))?;
            let input = MultiBoundInput {
                degrees: vec![1, d],
                mults: vec![1, if b.field.is_zero(p.v()) { d } else { 0 }],
                alphas: vec![alphas.clone(), terms.iter().map(|t| t.beta.clone()).collect()],
            };
            ("generalized", generalized_multiplicity_bound(&input, order_opt)?)
        }
    };
    let mut body = Map::new();
    body.insert("size_measure".into(), size_bits(b).into());
    body.insert("kind".into(), name.into());
    body.insert("bound".into(), bound.to_string().into());
    let mut code = EXIT_OK;
    if let (Some(cap), Some(p)) = (oracle_cap, &binom) {
        if p.max_degree() <= BigUint::from(cap) {
            let dense = expand_oracle(p, cap)?;
            let val = dense.valuation();
            let holds = val.is_none_or(|v| BigUint::from(v) <= bound);
            body.insert("valuation".into(), val.map_or(Value::Null, |v| v.into()));
            body.insert("holds".into(), holds.into());
            if !holds {
                code = EXIT_VIOLATION;
            }
        }
    }
    Ok((body, code))
}

fn gap_body<F: Field>(b: &Body<F>, weight: u32) -> Result<Map<String, Value>, Failure> {
    let mut body = Map::new();
    body.insert("size_measure".into(), size_bits(b).into());
    body.insert("weight".into(), weight.into());
    match b.binomial() {
        Some(p) => {
            let alphas: Vec<BigUint> = p.terms().iter().map(|t| t.alpha.clone()).collect();
            let parts: Vec<Value> = gap_partition(&alphas, weight)?
                .parts
                .iter()
                .map(|r| json!([r.start, r.end]))
                .collect();
            body.insert("parts".into(), parts.into());
        }
        None => {
            let d = piece_decomposition(&b.lacunary(), weight)?;
            let pieces: Vec<Value> = d
                .pieces
                .iter()
                .map(|piece| {
                    let terms: Vec<Value> = piece
                        .poly
                        .terms()
                        .into_iter()
                        .map(|(c, x, y)| json!([b.field.format_elem(&c), x, y]))
                        .collect();
                    json!({"x_shift": piece.x_shift.to_string(), "y_shift": piece.y_shift.to_string(), "terms": terms})
                })
                .collect();
            body.insert("pieces".into(), pieces.into());
        }
    }
    Ok(body)
}

fn wronskian_body<F: Field>(b: &Body<F>, cap: u64) -> Result<Map<String, Value>, Failure> {
    let Some(p) = b.binomial() else {
        return Err(Failure::Input("the wronskian needs a binomial document".into()));
    };
    let family = p
        .terms()
        .iter()
        .map(|t| expand_oracle(&p.with_terms(vec![t.clone()]), cap))
        .collect::<lacunary::Result<Vec<_>>>()?;
    let w = wronskian(&family)?;
    let mut body = Map::new();
    body.insert("size_measure".into(), size_bits(b).into());
    body.insert("family_size".into(), family.len().into());
    body.insert("independent".into(), (!w.is_zero()).into());
    body.insert("valuation".into(), w.valuation().map_or(Value::Null, |v| v.into()));
    let coeffs: Vec<String> = w.coeffs().iter().map(|c| b.field.format_elem(c)).collect();
    body.insert("coefficients".into(), coeffs.into());
    Ok(body)
}
