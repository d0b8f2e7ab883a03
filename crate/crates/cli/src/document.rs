//! Input documents: a line-oriented text format and a JSON format, both with
//! a canonical serialization.
//!
//! Text format:
//!
//! ```text
//! # comment
//! field Q                      | field GF <p> [<phi_0> ... <phi_s>]
//! poly lacunary                | poly binomial [u=<c>] [v=<c>] [d=<n>]
//! <coeff> <alpha> <beta>       (one term per line)
//! ```
//!
//! A document whose first non-blank character is `{` is read as JSON:
//! `{"field": {"kind": "Q"} | {"kind": "GF", "p": "7", "phi": [...]},
//! "poly": {"kind": "lacunary"} | {"kind": "binomial", "u", "v", "d"},
//! "terms": [{"c": "3/2", "alpha": "5", "beta": "0"}, ...]}`.

use std::fmt;

use lacunary::coeffring::{parse_rational, Field, GaloisField, Rationals};
use lacunary::error::Error as CoreError;
use lacunary::poly::{BinomExprPoly, LacunaryPoly, Term};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

/// Stable diagnostic codes of document errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagCode {
    /// JSON syntax error.
    Syntax,
    /// Missing, repeated or misplaced header line or key.
    Header,
    /// Unknown field or polynomial kind, or unknown directive.
    UnknownKind,
    MalformedCoefficient,
    MalformedExponent,
    NegativeExponent,
    /// A term line without exactly three columns.
    Columns,
    NonPrimeModulus,
    /// Defining polynomial not monic, too short, or reducible.
    BadDefiningPolynomial,
    /// A fraction whose denominator vanishes in the field.
    CoefficientNotInField,
    BadBinomialParameter,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Syntax => "E100",
            DiagCode::Header => "E101",
            DiagCode::UnknownKind => "E102",
            DiagCode::MalformedCoefficient => "E110",
            DiagCode::MalformedExponent => "E111",
            DiagCode::NegativeExponent => "E112",
            DiagCode::Columns => "E113",
            DiagCode::NonPrimeModulus => "E120",
            DiagCode::BadDefiningPolynomial => "E121",
            DiagCode::CoefficientNotInField => "E122",
            DiagCode::BadBinomialParameter => "E130",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column.
    Text { line: usize, col: usize },
    /// JSON pointer to the offending value.
    Json(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Text { line, col } => write!(f, "{line}:{col}"),
            Location::Json(path) if path.is_empty() => write!(f, "/"),
            Location::Json(path) => write!(f, "{path}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} at {location}: {message}", code.as_str())]
pub struct ParseError {
    pub code: DiagCode,
    pub location: Location,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape<E> {
    Lacunary,
    /// Terms are `a X^alpha (u X^d + v)^beta`.
    Binomial {
        u: E,
        v: E,
        d: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Body<F: Field> {
    pub field: F,
    pub shape: Shape<F::Elem>,
    /// Terms exactly as written.
    pub terms: Vec<Term<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputDocument {
    Rational(Body<Rationals>),
    Galois(Body<GaloisField>),
}

impl<F: Field> Body<F> {
    pub fn lacunary(&self) -> LacunaryPoly<F> {
        LacunaryPoly::new(self.field.clone(), self.terms.clone())
    }

    /// The binomial expression of a binomial document.
    pub fn binomial(&self) -> Option<BinomExprPoly<F>> {
        match &self.shape {
            Shape::Binomial { u, v, d } => Some(BinomExprPoly::with_degree(
                self.field.clone(),
                u.clone(),
                v.clone(),
                d.clone(),
                self.terms.clone(),
            )),
            Shape::Lacunary => None,
        }
    }

    pub fn is_binomial(&self) -> bool {
        matches!(self.shape, Shape::Binomial { .. })
    }
}

/// Parses either format, chosen by the first non-blank character.
pub fn parse(text: &str) -> PResult<InputDocument> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn err<T>(code: DiagCode, location: Location, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        code,
        location,
        message: message.into(),
    })
}

fn field_error(e: CoreError, location: Location) -> ParseError {
    let code = match e {
        CoreError::NotPrime(_) => DiagCode::NonPrimeModulus,
        _ => DiagCode::BadDefiningPolynomial,
    };
    ParseError {
        code,
        location,
        message: e.to_string(),
    }
}

fn parse_natural(s: &str, location: &Location, what: &str) -> PResult<BigUint> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    if let Some(rest) = digits.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit()) {
            return err(
                DiagCode::NegativeExponent,
                location.clone(),
                format!("{what} `{s}` is negative"),
            );
        }
    }
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return err(
            DiagCode::MalformedExponent,
            location.clone(),
            format!("{what} `{s}` is not a nonnegative integer"),
        );
    }
    Ok(digits.parse().unwrap())
}

/// Coefficients are rationals; over `F_{p^s}` they may also be coordinate
/// vectors `[c0,c1,...]`.
fn parse_coeff<F: Field>(field: &F, s: &str, location: &Location) -> PResult<F::Elem> {
    let bad = |m: String| err(DiagCode::MalformedCoefficient, location.clone(), m);
    if s.starts_with('[') {
        if field.is_char_zero() {
            return bad(format!("coordinate vector `{s}` needs an extension field"));
        }
        return field.parse_elem(s).or_else(|e| bad(e.to_string()));
    }
    let q = match parse_rational(s) {
        Ok(q) => q,
        Err(e) => return bad(e.to_string()),
    };
    let num = field.from_bigint(q.numer());
    let den = field.from_bigint(q.denom());
    match field.div(&num, &den) {
        Some(c) => Ok(c),
        None => err(
            DiagCode::CoefficientNotInField,
            location.clone(),
            format!("denominator of `{s}` vanishes in the field"),
        ),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = 0;
    let mut start_col = 0;
    for (i, ch) in line.char_indices() {
        col += 1;
        match (ch.is_whitespace(), start) {
            (false, None) => {
                start = Some(i);
                start_col = col;
            }
            (true, Some(s)) => {
                out.push((start_col, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((start_col, &line[s..]));
    }
    out
}

pub fn parse_text(text: &str) -> PResult<InputDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((n, line)) = lines.next() else {
        return err(
            DiagCode::Header,
            Location::Text { line: 1, col: 1 },
            "empty document: expected a `field` line",
        );
    };
    let toks = tokens(line);
    let at = |col: usize| Location::Text { line: n, col };
    if toks[0].1 != "field" {
        return err(DiagCode::Header, at(toks[0].0), "expected a `field` line first");
    }
    let Some(&(kcol, kind)) = toks.get(1) else {
        return err(DiagCode::Header, at(toks[0].0), "`field` needs a kind (Q or GF)");
    };
    let rest: Vec<_> = lines.collect();
    match kind {
        "Q" => {
            if let Some(&(c, t)) = toks.get(2) {
                return err(DiagCode::Header, at(c), format!("unexpected `{t}` after `field Q`"));
            }
            Ok(InputDocument::Rational(text_body(Rationals, &rest, n)?))
        }
        "GF" => {
            let Some(&(pcol, ptxt)) = toks.get(2) else {
                return err(DiagCode::Header, at(kcol), "`field GF` needs a prime");
            };
            let p = parse_natural(ptxt, &at(pcol), "modulus")?;
            let field = if toks.len() == 3 {
                GaloisField::prime(p)
            } else {
                let phi = toks[3..]
                    .iter()
                    .map(|&(c, t)| parse_natural(t, &at(c), "defining coefficient"))
                    .collect::<PResult<Vec<_>>>()?;
                GaloisField::new(p, phi)
            }
            .map_err(|e| field_error(e, at(pcol)))?;
            Ok(InputDocument::Galois(text_body(field, &rest, n)?))
        }
        other => err(DiagCode::UnknownKind, at(kcol), format!("unknown field kind `{other}`")),
    }
}

fn text_body<F: Field>(field: F, lines: &[(usize, &str)], field_line: usize) -> PResult<Body<F>> {
    let Some(&(n, line)) = lines.first() else {
        return err(
            DiagCode::Header,
            Location::Text {
                line: field_line + 1,
                col: 1,
            },
            "expected a `poly` line",
        );
    };
    let toks = tokens(line);
    let at = |col: usize| Location::Text { line: n, col };
    if toks[0].1 != "poly" {
        return err(DiagCode::Header, at(toks[0].0), "expected a `poly` line after `field`");
    }
    let shape = match toks.get(1) {
        Some(&(_, "lacunary")) if toks.len() == 2 => Shape::Lacunary,
        Some(&(c, "lacunary")) => return err(DiagCode::Header, at(c), "`poly lacunary` takes no parameters"),
        Some(&(_, "binomial")) => {
            let (mut u, mut v, mut d) = (field.one(), field.one(), BigUint::one());
            for &(c, t) in &toks[2..] {
                let loc = at(c);
                match t.split_once('=') {
                    Some(("u", s)) => u = parse_coeff(&field, s, &loc)?,
                    Some(("v", s)) => v = parse_coeff(&field, s, &loc)?,
                    Some(("d", s)) => d = parse_natural(s, &loc, "base degree")?,
                    _ => {
                        return err(
                            DiagCode::BadBinomialParameter,
                            loc,
                            format!("unknown binomial parameter `{t}`"),
                        )
                    }
                }
            }
            check_degree(&d, at(toks[0].0))?;
            Shape::Binomial { u, v, d }
        }
        Some(&(c, other)) => {
            return err(
                DiagCode::UnknownKind,
                at(c),
                format!("unknown polynomial kind `{other}`"),
            )
        }
        None => {
            return err(
                DiagCode::Header,
                at(toks[0].0),
                "`poly` needs a kind (lacunary or binomial)",
            )
        }
    };
    let mut terms = Vec::new();
    for &(n, line) in &lines[1..] {
        let toks = tokens(line);
        let at = |col: usize| Location::Text { line: n, col };
        if matches!(toks[0].1, "field" | "poly") {
            return err(
                DiagCode::Header,
                at(toks[0].0),
                format!("repeated `{}` line", toks[0].1),
            );
        }
        if toks.len() != 3 {
            let col = toks.get(3).map_or(toks[0].0, |t| t.0);
            return err(
                DiagCode::Columns,
                at(col),
                format!("a term line has 3 columns, found {}", toks.len()),
            );
        }
        let c = parse_coeff(&field, toks[0].1, &at(toks[0].0))?;
        let a = parse_natural(toks[1].1, &at(toks[1].0), "exponent")?;
        let b = parse_natural(toks[2].1, &at(toks[2].0), "exponent")?;
        terms.push(Term::new(c, a, b));
    }
    Ok(Body { field, shape, terms })
}

fn check_degree(d: &BigUint, location: Location) -> PResult<()> {
    if d.is_zero() {
        return err(
            DiagCode::BadBinomialParameter,
            location,
            "base degree d must be at least 1",
        );
    }
    Ok(())
}

/// A string or an integer JSON value as text.
fn scalar<'a>(v: &'a Value, path: &str) -> PResult<std::borrow::Cow<'a, str>> {
    match v {
        Value::String(s) => Ok(s.as_str().into()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().into()),
        _ => err(
            DiagCode::MalformedCoefficient,
            Location::Json(path.to_string()),
            "expected a string or an integer",
        ),
    }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> PResult<&'a Value> {
    obj.get(key).ok_or_else(|| ParseError {
        code: DiagCode::Header,
        location: Location::Json(path.to_string()),
        message: format!("missing key `{key}`"),
    })
}

fn object<'a>(v: &'a Value, path: &str) -> PResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| ParseError {
        code: DiagCode::Header,
        location: Location::Json(path.to_string()),
        message: "expected an object".into(),
    })
}

pub fn parse_json(text: &str) -> PResult<InputDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| ParseError {
        code: DiagCode::Syntax,
        location: Location::Text {
            line: e.line(),
            col: e.column(),
        },
        message: e.to_string(),
    })?;
    let root = object(&root, "")?;
    let field = object(get(root, "field", "")?, "/field")?;
    let kind = scalar(get(field, "kind", "/field")?, "/field/kind")?;
    match kind.as_ref() {
        "Q" => Ok(InputDocument::Rational(json_body(Rationals, root)?)),
        "GF" => {
            let loc = || Location::Json("/field/p".into());
            let p = parse_natural(&scalar(get(field, "p", "/field")?, "/field/p")?, &loc(), "modulus")?;
            let f = match field.get("phi") {
                None => GaloisField::prime(p),
                Some(Value::Array(cs)) => {
                    let phi = cs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let path = format!("/field/phi/{i}");
                            parse_natural(&scalar(c, &path)?, &Location::Json(path), "defining coefficient")
                        })
                        .collect::<PResult<Vec<_>>>()?;
                    GaloisField::new(p, phi)
                }
                Some(_) => {
                    return err(
                        DiagCode::BadDefiningPolynomial,
                        Location::Json("/field/phi".into()),
                        "expected an array",
                    )
                }
            }
            .map_err(|e| field_error(e, loc()))?;
            Ok(InputDocument::Galois(json_body(f, root)?))
        }
        other => err(
            DiagCode::UnknownKind,
            Location::Json("/field/kind".into()),
            format!("unknown field kind `{other}`"),
        ),
    }
}

fn json_body<F: Field>(field: F, root: &Map<String, Value>) -> PResult<Body<F>> {
    let poly = object(get(root, "poly", "")?, "/poly")?;
    let shape = match scalar(get(poly, "kind", "/poly")?, "/poly/kind")?.as_ref() {
        "lacunary" => Shape::Lacunary,
        "binomial" => {
            let coeff = |key: &str| -> PResult<F::Elem> {
                let path = format!("/poly/{key}");
                match poly.get(key) {
                    None => Ok(field.one()),
                    Some(v) => parse_coeff(&field, &scalar(v, &path)?, &Location::Json(path)),
                }
            };
            let (u, v) = (coeff("u")?, coeff("v")?);
            let d = match poly.get("d") {
                None => BigUint::one(),
                Some(v) => parse_natural(&scalar(v, "/poly/d")?, &Location::Json("/poly/d".into()), "base degree")?,
            };
            check_degree(&d, Location::Json("/poly/d".into()))?;
            Shape::Binomial { u, v, d }
        }
        other => {
            return err(
                DiagCode::UnknownKind,
                Location::Json("/poly/kind".into()),
                format!("unknown polynomial kind `{other}`"),
            )
        }
    };
    let Value::Array(items) = get(root, "terms", "")? else {
        return err(DiagCode::Header, Location::Json("/terms".into()), "expected an array");
    };
    let mut terms = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let base = format!("/terms/{i}");
        let t = object(item, &base)?;
        let path = |k: &str| format!("{base}/{k}");
        let c = parse_coeff(
            &field,
            &scalar(get(t, "c", &base)?, &path("c"))?,
            &Location::Json(path("c")),
        )?;
        let a = parse_natural(
            &scalar(get(t, "alpha", &base)?, &path("alpha"))?,
            &Location::Json(path("alpha")),
            "exponent",
        )?;
        let b = parse_natural(
            &scalar(get(t, "beta", &base)?, &path("beta"))?,
            &Location::Json(path("beta")),
            "exponent",
        )?;
        terms.push(Term::new(c, a, b));
    }
    Ok(Body { field, shape, terms })
}

fn field_header_text(doc: &InputDocument) -> String {
    match doc {
        InputDocument::Rational(_) => "field Q".into(),
        InputDocument::Galois(b) => {
            let mut s = format!("field GF {}", b.field.p());
            if b.field.degree() > 1 {
                for c in b.field.phi() {
                    s.push_str(&format!(" {c}"));
                }
            }
            s
        }
    }
}

fn body_text<F: Field>(b: &Body<F>, out: &mut String) {
    match &b.shape {
        Shape::Lacunary => out.push_str("poly lacunary\n"),
        Shape::Binomial { u, v, d } => out.push_str(&format!(
            "poly binomial u={} v={} d={d}\n",
            b.field.format_elem(u),
            b.field.format_elem(v)
        )),
    }
    for t in &b.terms {
        out.push_str(&format!("{} {} {}\n", b.field.format_elem(&t.coeff), t.alpha, t.beta));
    }
}

/// Canonical text form.
pub fn to_text(doc: &InputDocument) -> String {
    let mut out = field_header_text(doc);
    out.push('\n');
    match doc {
        InputDocument::Rational(b) => body_text(b, &mut out),
        InputDocument::Galois(b) => body_text(b, &mut out),
    }
    out
}

fn body_json<F: Field>(b: &Body<F>, field: Value) -> Value {
    let poly = match &b.shape {
        Shape::Lacunary => json!({"kind": "lacunary"}),
        Shape::Binomial { u, v, d } => json!({
            "kind": "binomial",
            "u": b.field.format_elem(u),
            "v": b.field.format_elem(v),
            "d": d.to_string(),
        }),
    };
    let terms: Vec<Value> = b
        .terms
        .iter()
        .map(|t| json!({"c": b.field.format_elem(&t.coeff), "alpha": t.alpha.to_string(), "beta": t.beta.to_string()}))
        .collect();
    json!({"field": field, "poly": poly, "terms": terms})
}

/// Canonical JSON value.
pub fn to_json_value(doc: &InputDocument) -> Value {
    match doc {
        InputDocument::Rational(b) => body_json(b, json!({"kind": "Q"})),
        InputDocument::Galois(b) => {
            let mut f = json!({"kind": "GF", "p": b.field.p().to_string()});
            if b.field.degree() > 1 {
                f["phi"] = Value::from(b.field.phi().iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            body_json(b, f)
        }
    }
}

/// Canonical JSON text, pretty-printed in a fixed key order.
pub fn to_json(doc: &InputDocument) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(doc)).expect("documents serialize");
    s.push('\n');
    s
}

/// A rational binomial document from a library expression.
pub fn binomial_document(p: &BinomExprPoly<Rationals>) -> InputDocument {
    InputDocument::Rational(Body {
        field: Rationals,
        shape: Shape::Binomial {
            u: p.u().clone(),
            v: p.v().clone(),
            d: p.base_degree().clone(),
        },
        terms: p.terms().to_vec(),
    })
}
