//! Text, LaTeX and JSON renderings of tautological expressions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::taut::expr::{Monomial, TautExpr};
use crate::taut::generator::Generator;
use crate::taut::spec::ModuliSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(e: &TautExpr, format: Format) -> String {
    match format {
        Format::Text => render_text(e),
        Format::Latex => render_latex(e),
        Format::Json => render_json(e),
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

/// Variable names of the two branches for irreducible and separating atoms.
fn branch_names(style: Style, separating: bool) -> (&'static str, &'static str) {
    match (style, separating) {
        (Style::Text, false) => ("psi_{q1}", "psi_{q2}"),
        (Style::Text, true) => ("psi_{r1}", "psi_{r2}"),
        (Style::Latex, false) => ("\\psi_{q_1}", "\\psi_{q_2}"),
        (Style::Latex, true) => ("\\psi_{r_1}", "\\psi_{r_2}"),
    }
}

fn power(style: Style, base: &str, e: u32) -> String {
    match (e, style) {
        (0, _) => String::new(),
        (1, _) => base.to_string(),
        (_, Style::Text) => format!("{base}^{e}"),
        (_, Style::Latex) => format!("{base}^{{{e}}}"),
    }
}

/// `x^a y^b` for one ordered exponent pair.
fn branch_monomial(style: Style, separating: bool, a: u32, b: u32) -> String {
    let (x, y) = branch_names(style, separating);
    let parts: Vec<String> = [power(style, x, a), power(style, y, b)].into_iter().filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return "1".to_string();
    }
    match (style, separating) {
        (Style::Latex, true) => {
            let l = power(style, x, a);
            let r = power(style, y, b);
            format!(
                "{} \\otimes {}",
                if l.is_empty() { "1".into() } else { l },
                if r.is_empty() { "1".into() } else { r }
            )
        }
        (Style::Text, _) => parts.join("*"),
        (Style::Latex, false) => parts.join(" "),
    }
}

/// Argument `m_{(a,b)}` of a symmetric atom.
fn symmetric_argument(style: Style, separating: bool, a: u32, b: u32) -> String {
    if a == b {
        branch_monomial(style, separating, a, b)
    } else {
        format!("{} + {}", branch_monomial(style, separating, a, b), branch_monomial(style, separating, b, a))
    }
}

fn side_labels(spec: &ModuliSpec, side: u64) -> Vec<String> {
    (0..spec.n()).filter(|i| side >> i & 1 == 1).map(|i| spec.labels()[i].clone()).collect()
}

fn generator_text(spec: &ModuliSpec, g: &Generator) -> String {
    match *g {
        Generator::Kappa(m) => format!("kappa_{m}"),
        Generator::KappaTilde(m) => format!("kappatilde_{m}"),
        Generator::PsiPow(1) => "psi".to_string(),
        Generator::PsiPow(m) => format!("p_{m}(psi)"),
        Generator::Psi(i) => format!("psi_{{{}}}", spec.labels()[i]),
        Generator::ChE(1) => "lambda".to_string(),
        Generator::ChE(k) => format!("ch_{k}(E)"),
        Generator::Delta => "delta".to_string(),
        Generator::BoundaryIrr(a, b) => format!("xi_irr_*({})", symmetric_argument(Style::Text, false, a, b)),
        Generator::BoundarySepAll(a, b) => {
            format!("sum_{{h,A}} xi_{{h,A}}_*({})", symmetric_argument(Style::Text, true, a, b))
        }
        Generator::BoundarySep { h, side, a, b } => format!(
            "xi_{{{h},{{{}}}}}_*({})",
            side_labels(spec, side).join(","),
            branch_monomial(Style::Text, true, a, b)
        ),
    }
}

fn generator_latex(spec: &ModuliSpec, g: &Generator) -> String {
    match *g {
        Generator::Kappa(m) => format!("\\kappa_{{{m}}}"),
        Generator::KappaTilde(m) => format!("\\tilde{{\\kappa}}_{{{m}}}"),
        Generator::PsiPow(1) => "\\psi".to_string(),
        Generator::PsiPow(m) => format!("p_{{{m}}}(\\psi)"),
        Generator::Psi(i) => format!("\\psi_{{{}}}", spec.labels()[i]),
        Generator::ChE(1) => "\\lambda".to_string(),
        Generator::ChE(k) => format!("\\mathrm{{ch}}_{{{k}}}(\\mathbb{{E}})"),
        Generator::Delta => "\\delta".to_string(),
        Generator::BoundaryIrr(a, b) => {
            format!("\\xi_{{\\mathrm{{irr}}*}}\\left({}\\right)", symmetric_argument(Style::Latex, false, a, b))
        }
        Generator::BoundarySepAll(a, b) => {
            format!("\\sum_{{h,A}} \\xi_{{h,A*}}\\left({}\\right)", symmetric_argument(Style::Latex, true, a, b))
        }
        Generator::BoundarySep { h, side, a, b } => format!(
            "\\xi_{{{h},\\{{{}\\}}*}}\\left({}\\right)",
            side_labels(spec, side).join(","),
            branch_monomial(Style::Latex, true, a, b)
        ),
    }
}

fn monomial_string(spec: &ModuliSpec, m: &Monomial, style: Style) -> String {
    let mut factors: Vec<_> = m.factors().iter().collect();
    factors.sort_by_key(|(g, _)| display_rank(g));
    let parts: Vec<String> = factors
        .into_iter()
        .map(|(g, e)| {
            let base = match style {
                Style::Text => generator_text(spec, g),
                Style::Latex => generator_latex(spec, g),
            };
            power(style, &base, *e)
        })
        .collect();
    match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.join(" "),
    }
}

fn coefficient_latex(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// Display rank: Hodge classes are shown before the psi classes, otherwise
/// the canonical generator order applies.
fn display_rank(g: &Generator) -> u8 {
    match g {
        Generator::Kappa(_) => 0,
        Generator::KappaTilde(_) => 1,
        Generator::ChE(_) => 2,
        Generator::PsiPow(_) => 3,
        Generator::Psi(_) => 4,
        Generator::Delta => 5,
        _ => 6,
    }
}

/// Terms in display order: by degree, then by generators in display rank.
pub(crate) fn display_terms(e: &TautExpr) -> Vec<(&Monomial, &Rational)> {
    let mut terms: Vec<_> = e.iter().collect();
    terms.sort_by_cached_key(|(m, _)| {
        let mut key: Vec<_> = m.factors().iter().map(|(g, k)| (display_rank(g), g.clone(), u32::MAX - k)).collect();
        key.sort();
        (m.degree(), key)
    });
    terms
}

fn render_with(e: &TautExpr, style: Style) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in display_terms(e).into_iter().enumerate() {
        let sign = c.is_negative();
        match (i, sign) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mono = monomial_string(e.spec(), m, style);
        let piece = match style {
            _ if m.is_one() => match style {
                Style::Text => a.to_string(),
                Style::Latex => coefficient_latex(&a),
            },
            _ if a.is_one() => mono,
            Style::Text if a.is_integer() => format!("{a}*{mono}"),
            Style::Text => format!("{a} {mono}"),
            Style::Latex => format!("{} {mono}", coefficient_latex(&a)),
        };
        out.push_str(&piece);
    }
    out
}

/// Plain-text form, e.g. `13*lambda + psi - 2*delta`. Integer coefficients
/// attach with `*`, fractional ones with a space.
pub fn render_text(e: &TautExpr) -> String {
    render_with(e, Style::Text)
}

pub fn render_latex(e: &TautExpr) -> String {
    render_with(e, Style::Latex)
}

/// JSON document: `{ "g", "n", "degree", "terms": [{ "coeff", "monomial": [{ "gen", "args" }] }] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonExpr {
    pub g: u32,
    pub n: usize,
    pub degree: u32,
    pub terms: Vec<JsonTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub monomial: Vec<JsonGen>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonGen {
    pub gen: String,
    pub args: Vec<Value>,
}

fn generator_json(spec: &ModuliSpec, g: &Generator) -> JsonGen {
    let (name, args): (&str, Vec<Value>) = match *g {
        Generator::Kappa(m) => ("kappa", vec![m.into()]),
        Generator::KappaTilde(m) => ("kappa_tilde", vec![m.into()]),
        Generator::PsiPow(m) => ("psi_pow", vec![m.into()]),
        Generator::Psi(i) => ("psi", vec![spec.labels()[i].clone().into()]),
        Generator::ChE(k) => ("ch_E", vec![k.into()]),
        Generator::Delta => ("delta", vec![]),
        Generator::BoundaryIrr(a, b) => ("xi_irr", vec![a.into(), b.into()]),
        Generator::BoundarySepAll(a, b) => ("xi_sep_all", vec![a.into(), b.into()]),
        Generator::BoundarySep { h, side, a, b } => {
            ("xi_sep", vec![h.into(), side_labels(spec, side).into(), a.into(), b.into()])
        }
    };
    JsonGen { gen: name.to_string(), args }
}

pub fn to_json(e: &TautExpr) -> JsonExpr {
    let spec = e.spec();
    let terms = display_terms(e)
        .into_iter()
        .map(|(m, c)| JsonTerm {
            coeff: c.to_string(),
            monomial: m
                .factors()
                .iter()
                .flat_map(|(g, k)| std::iter::repeat_n(generator_json(spec, g), *k as usize))
                .collect(),
        })
        .collect();
    JsonExpr { g: spec.genus(), n: spec.n(), degree: e.order(), terms }
}

pub fn render_json(e: &TautExpr) -> String {
    serde_json::to_string(&to_json(e)).expect("json serialization of plain data")
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn arg_u32(args: &[Value], i: usize) -> Result<u32> {
    args.get(i)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| bad(format!("argument {i} must be a non-negative integer")))
}

fn label(spec: &ModuliSpec, v: &Value) -> Result<usize> {
    let s = v.as_str().ok_or_else(|| bad("label must be a string"))?;
    spec.label_index(s).ok_or_else(|| bad(format!("unknown label {s:?}")))
}

fn generator_from_json(spec: &ModuliSpec, j: &JsonGen) -> Result<Generator> {
    let a = &j.args;
    let expect = |k: usize| {
        if a.len() == k {
            Ok(())
        } else {
            Err(bad(format!("{} takes {k} arguments", j.gen)))
        }
    };
    let g = match j.gen.as_str() {
        "kappa" => expect(1).and_then(|_| Ok(Generator::Kappa(arg_u32(a, 0)?)))?,
        "kappa_tilde" => expect(1).and_then(|_| Ok(Generator::KappaTilde(arg_u32(a, 0)?)))?,
        "psi_pow" => expect(1).and_then(|_| Ok(Generator::PsiPow(arg_u32(a, 0)?)))?,
        "psi" => expect(1).and_then(|_| Ok(Generator::Psi(label(spec, &a[0])?)))?,
        "ch_E" => expect(1).and_then(|_| Ok(Generator::ChE(arg_u32(a, 0)?)))?,
        "delta" => expect(0).map(|_| Generator::Delta)?,
        "xi_irr" => expect(2).and_then(|_| Ok(Generator::BoundaryIrr(arg_u32(a, 0)?, arg_u32(a, 1)?)))?,
        "xi_sep_all" => expect(2).and_then(|_| Ok(Generator::BoundarySepAll(arg_u32(a, 0)?, arg_u32(a, 1)?)))?,
        "xi_sep" => {
            expect(4)?;
            let labels = a[1].as_array().ok_or_else(|| bad("xi_sep side must be a label list"))?;
            let mut side = 0u64;
            for l in labels {
                side |= 1 << label(spec, l)?;
            }
            Generator::BoundarySep { h: arg_u32(a, 0)?, side, a: arg_u32(a, 2)?, b: arg_u32(a, 3)? }
        }
        other => return Err(bad(format!("unknown generator {other:?}"))),
    };
    g.validate(spec)?;
    Ok(g)
}

/// Parses a JSON rendering back into an expression on `spec`.
pub fn parse_json(text: &str, spec: &Arc<ModuliSpec>) -> Result<TautExpr> {
    let doc: JsonExpr = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if doc.g != spec.genus() || doc.n != spec.n() {
        return Err(bad("g or n does not match the moduli data"));
    }
    let mut e = TautExpr::zero(spec, doc.degree);
    for t in &doc.terms {
        let c: Rational = t.coeff.parse()?;
        let factors =
            t.monomial.iter().map(|j| generator_from_json(spec, j).map(|g| (g, 1))).collect::<Result<Vec<_>>>()?;
        e.add_raw(c, factors);
    }
    Ok(e)
}
