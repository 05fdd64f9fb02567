//! CPLEX LP text for an [`IlpModel`], and a reader for the subset this
//! writer produces (enough to audit an export or a hand-edited model).

use std::fmt::Write as _;

use thiserror::Error;
use zlq_core::ilp::{IlpModel, Sense, Var};
use zlq_core::CandidateMode;

const TERMS_PER_LINE: usize = 10;

fn write_terms(out: &mut String, model: &IlpModel, terms: &[(Var, i64)]) {
    for (i, (var, coef)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        if i > 0 {
            out.push_str(if *coef < 0 { " - " } else { " + " });
        } else if *coef < 0 {
            out.push_str("- ");
        }
        if coef.unsigned_abs() != 1 {
            write!(out, "{} ", coef.unsigned_abs()).unwrap();
        }
        out.push_str(&model.var_name(*var));
    }
}

/// Deterministic LP document: objective, one named row per constraint in
/// model order, and every variable in the `Binary` section.
pub fn export_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    let mode = match model.mode() {
        CandidateMode::Full => "full",
        CandidateMode::NondegenerateOnly => "nondeg",
    };
    writeln!(out, "\\ zlq model q={} mode={mode}", model.grid().q()).unwrap();
    writeln!(
        out,
        "\\ {} candidates, {} cells, {} rows",
        model.candidates().len(),
        model.cells().len(),
        model.constraints().len()
    )
    .unwrap();
    out.push_str("Maximize\n obj: ");
    let objective: Vec<(Var, i64)> = (0..model.candidates().len()).map(|k| (Var::X(k), 1)).collect();
    if objective.is_empty() {
        out.push('0');
    }
    write_terms(&mut out, model, &objective);
    out.push_str("\nSubject To\n");
    for c in model.constraints() {
        write!(out, " {}: ", model.row_name(&c.kind)).unwrap();
        write_terms(&mut out, model, &c.terms);
        let sense = match c.sense {
            Sense::Eq => "=",
            Sense::Le => "<=",
        };
        writeln!(out, " {sense} {}", c.rhs).unwrap();
    }
    out.push_str("Binary\n");
    let names: Vec<String> = model.variables().map(|v| model.var_name(v)).collect();
    for chunk in names.chunks(TERMS_PER_LINE) {
        writeln!(out, " {}", chunk.join(" ")).unwrap();
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpSense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpRow {
    pub name: String,
    pub terms: Vec<(String, i64)>,
    pub sense: LpSense,
    pub rhs: i64,
}

impl LpRow {
    pub fn holds(&self, value: impl Fn(&str) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|(v, c)| c * value(v)).sum();
        match self.sense {
            LpSense::Le => lhs <= self.rhs,
            LpSense::Ge => lhs >= self.rhs,
            LpSense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpDocument {
    pub maximize: bool,
    pub objective: Vec<(String, i64)>,
    pub rows: Vec<LpRow>,
    pub binaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("LP line {line}: {message}")]
pub struct LpError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objective,
    Constraints,
    Binary,
    Done,
}

/// Reads integer coefficients, `<=`/`>=`/`=` rows and the `Binary` section.
/// Bounds, general integers and real coefficients are not supported.
pub fn parse_lp(text: &str) -> Result<LpDocument, LpError> {
    let mut doc = LpDocument::default();
    let mut section = Section::None;
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('\\').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let keyword = body.to_ascii_lowercase();
        let next = match keyword.as_str() {
            "maximize" | "maximum" | "max" => Some((Section::Objective, true)),
            "minimize" | "minimum" | "min" => Some((Section::Objective, false)),
            "subject to" | "such that" | "st" | "s.t." => Some((Section::Constraints, doc.maximize)),
            "binary" | "binaries" | "bin" => Some((Section::Binary, doc.maximize)),
            "end" => Some((Section::Done, doc.maximize)),
            _ => None,
        };
        if let Some((s, max)) = next {
            flush(&mut doc, section, &mut pending)?;
            section = s;
            doc.maximize = max;
            continue;
        }
        match section {
            Section::None | Section::Done => {
                return Err(LpError { line, message: format!("unexpected text {body:?}") });
            }
            Section::Binary => doc.binaries.extend(body.split_whitespace().map(String::from)),
            Section::Objective => pending.push((line, body.to_string())),
            Section::Constraints => {
                pending.push((line, body.to_string()));
                if ["<=", ">=", "=", "=<", "=>"].iter().any(|s| body.split_whitespace().any(|t| t == *s)) {
                    flush(&mut doc, section, &mut pending)?;
                }
            }
        }
    }
    flush(&mut doc, section, &mut pending)?;
    if section != Section::Done {
        return Err(LpError { line: text.lines().count(), message: "missing `End`".into() });
    }
    Ok(doc)
}

fn flush(doc: &mut LpDocument, section: Section, pending: &mut Vec<(usize, String)>) -> Result<(), LpError> {
    if pending.is_empty() {
        return Ok(());
    }
    let line = pending[0].0;
    let joined: String = pending.drain(..).map(|(_, s)| s).collect::<Vec<_>>().join(" ");
    let fail = |message: String| LpError { line, message };
    let (name, rest) = match joined.split_once(':') {
        Some((n, r)) => (n.trim().to_string(), r),
        None => (String::new(), joined.as_str()),
    };
    let mut tokens: Vec<&str> = rest.split_whitespace().collect();
    match section {
        Section::Objective => {
            doc.objective = if tokens == ["0"] { Vec::new() } else { terms(&tokens).map_err(fail)? };
        }
        Section::Constraints => {
            let rhs = tokens.pop().ok_or_else(|| fail("empty row".into()))?;
            let rhs: i64 = rhs.parse().map_err(|_| fail(format!("bad right-hand side {rhs:?}")))?;
            let sense = match tokens.pop() {
                Some("<=") | Some("=<") => LpSense::Le,
                Some(">=") | Some("=>") => LpSense::Ge,
                Some("=") => LpSense::Eq,
                other => return Err(fail(format!("expected a sense, got {other:?}"))),
            };
            doc.rows.push(LpRow { name, terms: terms(&tokens).map_err(fail)?, sense, rhs });
        }
        _ => unreachable!("only objective and rows are buffered"),
    }
    Ok(())
}

fn terms(tokens: &[&str]) -> Result<Vec<(String, i64)>, String> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut coef: Option<i64> = None;
    for &t in tokens {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(c) = t.parse::<i64>() {
                    if coef.replace(c).is_some() {
                        return Err(format!("two coefficients in a row at {t:?}"));
                    }
                } else {
                    out.push((t.to_string(), sign * coef.take().unwrap_or(1)));
                    sign = 1;
                }
            }
        }
    }
    if coef.is_some() {
        return Err("dangling coefficient".into());
    }
    Ok(out)
}
