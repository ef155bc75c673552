//! Report assembly and rendering.
//!
//! Every command produces one [`Report`]; the JSON form follows the schema
//! shipped in `schema/report.schema.json` (all integers are decimal strings,
//! pieces are DSL text), and the human form contains every field of the JSON
//! form. Identical inputs produce byte-identical output in both modes.

use std::fmt::Write as _;

use mapdeg::{
    build_witness, decide_exists_infinite, family_for_class, four_forms, normal_form, parse,
    render, DegreeClass, DegreeFamily, FactorVerdict, FiniteReason, FourForms, GeometryClass,
    ManifoldExpression, MapRecipe, Membership, ParseError, SourceSpan, Verdict, WitnessError,
    WitnessPackage,
};
use num_bigint::BigInt;
use serde::Serialize;

pub const REPORT_SCHEMA: &str = "mapdeg.report.v1";
pub const SUMMARY_SCHEMA: &str = "mapdeg.batch-summary.v1";

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub error: Option<ErrorReport>,
    pub normalized: Option<String>,
    pub factors: Option<Vec<FactorReport>>,
    pub decision: Option<DecisionReport>,
    pub witness: Option<WitnessReport>,
    pub check: Option<CheckReport>,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub constraint: Option<&'static str>,
    pub message: String,
    pub span: SourceSpan,
}

#[derive(Serialize)]
pub struct FactorReport {
    pub piece: String,
    pub geometry: GeometryClass,
    pub geometry_note: Option<&'static str>,
    pub degree_class: DegreeClass,
    pub class_heuristic: bool,
    pub family: Option<DegreeFamily>,
    pub family_members: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct DecisionReport {
    pub exists_infinite: bool,
    pub self_infinite: bool,
    pub blocking: Vec<BlockingReport>,
}

#[derive(Serialize)]
pub struct BlockingReport {
    pub piece: String,
    pub reason: FiniteReason,
    pub verdict: &'static str,
}

#[derive(Serialize)]
pub struct WitnessReport {
    #[serde(flatten)]
    pub package: WitnessPackage,
    pub recipe_digest: String,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub degree: String,
    pub four_forms: Option<FourForms>,
    pub four_forms_error: Option<String>,
    pub factors: Vec<CheckFactorReport>,
}

#[derive(Serialize)]
pub struct CheckFactorReport {
    pub piece: String,
    pub family: Option<DegreeFamily>,
    pub membership: Option<Membership>,
    pub finite_reason: Option<FiniteReason>,
}

impl Report {
    fn empty(command: &'static str, input: &str) -> Report {
        Report {
            schema: REPORT_SCHEMA,
            command,
            input: input.to_string(),
            error: None,
            normalized: None,
            factors: None,
            decision: None,
            witness: None,
            check: None,
        }
    }

    pub fn from_parse_error(command: &'static str, input: &str, err: &ParseError) -> Report {
        Report {
            error: Some(ErrorReport {
                kind: err.kind.token(),
                constraint: err.kind.constraint(),
                message: err.message.clone(),
                span: err.span,
            }),
            ..Report::empty(command, input)
        }
    }
}

fn factor_reports(expr: &ManifoldExpression, max_enum: Option<usize>) -> Vec<FactorReport> {
    decide_exists_infinite(expr)
        .per_factor
        .into_iter()
        .map(|row: FactorVerdict| {
            let family = family_for_class(&row.class).ok();
            let family_members = match (&family, max_enum) {
                (Some(f), Some(k)) if k > 0 => {
                    Some(f.enumerate(k).iter().map(|v| v.to_string()).collect())
                }
                _ => None,
            };
            FactorReport {
                piece: row.piece.to_string(),
                geometry: row.geometry,
                geometry_note: row.geometry_note,
                degree_class: row.class,
                class_heuristic: row.class_heuristic,
                family,
                family_members,
            }
        })
        .collect()
}

fn decision_report(verdict: &Verdict) -> DecisionReport {
    DecisionReport {
        exists_infinite: verdict.exists_infinite,
        self_infinite: verdict.self_infinite,
        blocking: verdict
            .blocking_factors()
            .map(|f| {
                let reason = match &f.class {
                    DegreeClass::Finite { reason } => *reason,
                    _ => unreachable!("blocking factors are finite"),
                };
                BlockingReport {
                    piece: f.piece.to_string(),
                    reason,
                    verdict: reason.human(),
                }
            })
            .collect(),
    }
}

pub fn recipe_digest(recipe: &MapRecipe) -> String {
    match recipe {
        MapRecipe::SelfMap { factor, degree, .. } => format!("self[{factor}]:{degree}"),
        MapRecipe::Pinch { degree, inner } => {
            format!("pinch:{degree}({})", recipe_digest(inner))
        }
        MapRecipe::ConnectedSum { degree, children } => {
            let parts: Vec<String> = children.iter().map(recipe_digest).collect();
            format!("sum:{degree}({})", parts.join("+"))
        }
    }
}

/// Builders return the complete report plus its exit code: 0 success,
/// 2 input error, 3 witness blocked.
pub fn classify_report(input: &str, max_enum: Option<usize>) -> (Report, u8) {
    let expr = match parse(input) {
        Ok(expr) => expr,
        Err(e) => return (Report::from_parse_error("classify", input, &e), 2),
    };
    let report = Report {
        normalized: Some(render(&expr)),
        factors: Some(factor_reports(&expr, max_enum)),
        ..Report::empty("classify", input)
    };
    (report, 0)
}

pub fn decide_report(input: &str) -> (Report, u8) {
    let expr = match parse(input) {
        Ok(expr) => expr,
        Err(e) => return (Report::from_parse_error("decide", input, &e), 2),
    };
    let verdict = decide_exists_infinite(&expr);
    let report = Report {
        normalized: Some(render(&expr)),
        factors: Some(factor_reports(&expr, None)),
        decision: Some(decision_report(&verdict)),
        ..Report::empty("decide", input)
    };
    (report, 0)
}

pub fn witness_report(input: &str, l_values: &[BigInt]) -> (Report, u8) {
    let expr = match parse(input) {
        Ok(expr) => expr,
        Err(e) => return (Report::from_parse_error("witness", input, &e), 2),
    };
    let verdict = decide_exists_infinite(&expr);
    let base_report = Report {
        normalized: Some(render(&expr)),
        factors: Some(factor_reports(&expr, None)),
        decision: Some(decision_report(&verdict)),
        ..Report::empty("witness", input)
    };
    match build_witness(&expr, l_values) {
        Ok(package) => {
            let digest = recipe_digest(&package.recipe);
            let report = Report {
                witness: Some(WitnessReport {
                    package,
                    recipe_digest: digest,
                }),
                ..base_report
            };
            (report, 0)
        }
        Err(WitnessError::Blocked { .. }) => (base_report, 3),
    }
}

pub fn check_report(input: &str, degree: &BigInt) -> (Report, u8) {
    let expr = match parse(input) {
        Ok(expr) => expr,
        Err(e) => return (Report::from_parse_error("check", input, &e), 2),
    };
    let nf = normal_form(&expr);
    let (forms, forms_error) = match four_forms(degree, &nf) {
        Ok(forms) => (Some(forms), None),
        Err(err) => (None, Some(err.to_string())),
    };
    let factors = expr
        .factors()
        .iter()
        .map(|piece| {
            let class = mapdeg::degree_class(piece);
            let finite_reason = match &class {
                DegreeClass::Finite { reason } => Some(*reason),
                _ => None,
            };
            let family = family_for_class(&class).ok();
            let membership = family.as_ref().map(|f| f.member(degree));
            CheckFactorReport {
                piece: piece.to_string(),
                family,
                membership,
                finite_reason,
            }
        })
        .collect();
    let report = Report {
        normalized: Some(render(&expr)),
        check: Some(CheckReport {
            degree: degree.to_string(),
            four_forms: forms,
            four_forms_error: forms_error,
            factors,
        }),
        ..Report::empty("check", input)
    };
    (report, 0)
}

/// One batch line: classification plus decision, with parse errors embedded.
pub fn batch_line_report(line: &str) -> Report {
    match parse(line) {
        Ok(expr) => {
            let verdict = decide_exists_infinite(&expr);
            Report {
                normalized: Some(render(&expr)),
                factors: Some(factor_reports(&expr, None)),
                decision: Some(decision_report(&verdict)),
                ..Report::empty("batch", line)
            }
        }
        Err(e) => Report::from_parse_error("batch", line, &e),
    }
}

#[derive(Serialize)]
pub struct BatchSummary {
    pub schema: &'static str,
    pub lines: usize,
    pub exists_infinite_true: usize,
    pub exists_infinite_false: usize,
    pub parse_errors: usize,
}

// --- human rendering ----------------------------------------------------------

fn family_human(family: &DegreeFamily) -> String {
    match family {
        DegreeFamily::AllIntegers => "Z (all integers)".to_string(),
        DegreeFamily::ApPlusOne { modulus } => format!("{{ {modulus}*l + 1 }}"),
        DegreeFamily::OddSquares => "{ (2l+1)^2 }".to_string(),
        DegreeFamily::FourthPowersMod12 => "{ l^4 : l = 1 (mod 12) }".to_string(),
        DegreeFamily::WitnessFourth { base } => format!("{{ ({base}*l + 1)^4 }}"),
        DegreeFamily::Shifted { inner, offset } => match inner.as_ref() {
            DegreeFamily::WitnessFourth { base } => {
                format!("{{ ({base}*l + 1)^4 + {offset} }}")
            }
            other => format!("({}) shifted by {offset}", family_human(other)),
        },
    }
}

fn four_forms_human(forms: &FourForms) -> String {
    let mut parts = Vec::new();
    for (order, quotient) in &forms.c1 {
        parts.push(format!("C1[order {order}] = {quotient}"));
    }
    for (alpha, quotient) in &forms.c2 {
        parts.push(format!("C2[alpha {alpha}] = {quotient}"));
    }
    if let Some(c3) = &forms.c3 {
        parts.push(format!("C3 = {c3}"));
    }
    if let Some(c4) = &forms.c4 {
        parts.push(format!("C4 = {c4}"));
    }
    if parts.is_empty() {
        format!("d = {} (no applicable forms)", forms.d)
    } else {
        format!("d = {}: {}", forms.d, parts.join(", "))
    }
}

fn recipe_human(recipe: &MapRecipe, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match recipe {
        MapRecipe::SelfMap {
            factor,
            degree,
            parameter,
        } => {
            let _ = writeln!(
                out,
                "{pad}self_map {factor} degree={degree} parameter={parameter}"
            );
        }
        MapRecipe::Pinch { degree, inner } => {
            let _ = writeln!(out, "{pad}pinch degree={degree} (pi1-surjective)");
            recipe_human(inner, indent + 1, out);
        }
        MapRecipe::ConnectedSum { degree, children } => {
            let _ = writeln!(out, "{pad}connected_sum degree={degree} (pi1-surjective)");
            for child in children {
                recipe_human(child, indent + 1, out);
            }
        }
    }
}

fn caret_block(input: &str, span: &SourceSpan, out: &mut String) {
    if let Some(line) = input.lines().nth(span.line.saturating_sub(1)) {
        let _ = writeln!(out, "  | {line}");
        let pad = " ".repeat(span.column.saturating_sub(1));
        let carets = "^".repeat(span.length.max(1));
        let _ = writeln!(out, "  | {pad}{carets}");
    }
}

pub fn human(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "report:     {} ({})", report.command, report.schema);
    let _ = writeln!(out, "input:      {}", report.input);
    if let Some(err) = &report.error {
        let constraint = err.constraint.map(|c| format!(": {c}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "parse error ({}{}) at line {}, column {}:",
            err.kind, constraint, err.span.line, err.span.column
        );
        let _ = writeln!(out, "  {}", err.message);
        caret_block(&report.input, &err.span, &mut out);
        return out;
    }
    if let Some(normalized) = &report.normalized {
        let _ = writeln!(out, "normalized: {normalized}");
    }
    if let Some(factors) = &report.factors {
        let _ = writeln!(out, "factors:");
        for (i, f) in factors.iter().enumerate() {
            let _ = writeln!(out, "  {}. {}", i + 1, f.piece);
            let note = f
                .geometry_note
                .map(|n| format!("  [{n}]"))
                .unwrap_or_default();
            let _ = writeln!(out, "     geometry: {}{}", f.geometry.human(), note);
            let heuristic = if f.class_heuristic {
                "  [heuristic]"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "     class:    {}{}",
                f.degree_class.human(),
                heuristic
            );
            if let Some(family) = &f.family {
                let _ = writeln!(out, "     family:   {}", family_human(family));
            }
            if let Some(members) = &f.family_members {
                let _ = writeln!(out, "     members:  {}", members.join(", "));
            }
        }
    }
    if let Some(decision) = &report.decision {
        let _ = writeln!(out, "decision:");
        let _ = writeln!(out, "  exists_infinite: {}", decision.exists_infinite);
        let _ = writeln!(out, "  self_infinite:   {}", decision.self_infinite);
        if !decision.blocking.is_empty() {
            let _ = writeln!(out, "  blocking factors:");
            for b in &decision.blocking {
                let _ = writeln!(out, "    {}  ->  {}", b.piece, b.verdict);
            }
        }
    }
    if let Some(witness) = &report.witness {
        let _ = writeln!(out, "witness:");
        let _ = writeln!(out, "  target: {}", witness.package.target);
        let _ = writeln!(out, "  domain: {}", witness.package.domain);
        let _ = writeln!(out, "  base:   B = {}", witness.package.base);
        let _ = writeln!(out, "  samples:");
        for sample in &witness.package.samples {
            let _ = writeln!(out, "    l={}: degree = {}", sample.l, sample.degree);
            let _ = writeln!(out, "      {}", four_forms_human(&sample.four_forms));
        }
        let _ = writeln!(out, "  recipe:");
        recipe_human(&witness.package.recipe, 2, &mut out);
        let _ = writeln!(out, "  recipe digest: {}", witness.recipe_digest);
    }
    if let Some(check) = &report.check {
        let _ = writeln!(out, "check:");
        let _ = writeln!(out, "  degree: {}", check.degree);
        if let Some(forms) = &check.four_forms {
            let _ = writeln!(out, "  four forms: {}", four_forms_human(forms));
        }
        if let Some(err) = &check.four_forms_error {
            let _ = writeln!(out, "  four forms: FAILED -- {err}");
        }
        let _ = writeln!(out, "  per-factor membership:");
        for f in &check.factors {
            match (&f.family, &f.membership) {
                (Some(family), Some(m)) if m.is_member => {
                    let parameter = m
                        .parameter
                        .as_ref()
                        .map(|l| format!(", parameter l = {l}"))
                        .unwrap_or_default();
                    let root = m
                        .root
                        .as_ref()
                        .map(|r| format!(", root = {r}"))
                        .unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "    {}: member of {}{parameter}{root}",
                        f.piece,
                        family_human(family)
                    );
                }
                (Some(family), _) => {
                    let _ = writeln!(
                        out,
                        "    {}: NOT a member of {}",
                        f.piece,
                        family_human(family)
                    );
                }
                _ => {
                    let reason = f
                        .finite_reason
                        .map(|r| r.human())
                        .unwrap_or("no degree family");
                    let _ = writeln!(out, "    {}: no family ({reason})", f.piece);
                }
            }
        }
    }
    out
}

pub fn human_summary(summary: &BatchSummary) -> String {
    format!(
        "summary ({}): {} expression(s): exists_infinite true for {}, false for {}, parse errors {}\n",
        summary.schema,
        summary.lines,
        summary.exists_infinite_true,
        summary.exists_infinite_false,
        summary.parse_errors
    )
}
