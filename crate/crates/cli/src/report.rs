//! JSON and text renderings of command results.

use serde_json::{json, Value};

use symprod::stability::{SlopeInterval, StabilityVerdict};
use symprod::verify::Report as VerifyReport;
use symprod::{ChowClass, RatPoly, Symbol};

/// The `result` object of a report.
pub struct Outcome {
    pub kind: &'static str,
    pub text: String,
    pub terms: Vec<Value>,
    /// Rows for `--format text`.
    pub table: Vec<Vec<String>>,
}

pub fn poly(p: &RatPoly) -> Outcome {
    let mut terms = Vec::new();
    let mut table = vec![vec!["coeff".into(), "g".into(), "d".into(), "r".into()]];
    for (m, c) in p.terms() {
        let e = |s| m.exponent(s);
        terms.push(json!({
            "coeff": c.to_string(),
            "g": e(Symbol::G),
            "d": e(Symbol::D),
            "r": e(Symbol::R),
        }));
        table.push(vec![
            c.to_string(),
            e(Symbol::G).to_string(),
            e(Symbol::D).to_string(),
            e(Symbol::R).to_string(),
        ]);
    }
    Outcome {
        kind: "poly",
        text: p.to_string(),
        terms,
        table,
    }
}

pub fn class(c: &ChowClass) -> Outcome {
    let mut terms = Vec::new();
    let mut table = vec![vec!["coeff".into(), "configuration".into(), "codim".into()]];
    for (conf, coeff) in c.terms() {
        terms.push(json!({
            "coeff": coeff.to_string(),
            "config": conf.to_string(),
            "codim": conf.codim(),
        }));
        table.push(vec![
            coeff.to_string(),
            conf.to_string(),
            conf.codim().to_string(),
        ]);
    }
    Outcome {
        kind: "class",
        text: c.to_string(),
        terms,
        table,
    }
}

fn interval_json(i: &SlopeInterval) -> Value {
    json!({
        "lo": i.lo.to_string(),
        "hi": i.hi.to_string(),
        "closed": i.closed,
        "lo_approx": i.lo.to_f64(),
        "hi_approx": i.hi.to_f64(),
    })
}

pub fn interval(i: Option<&SlopeInterval>) -> Outcome {
    match i {
        Some(i) => Outcome {
            kind: "interval",
            text: i.to_string(),
            terms: vec![interval_json(i)],
            table: vec![
                vec!["lo".into(), "hi".into(), "approx".into()],
                vec![
                    i.lo.to_string(),
                    i.hi.to_string(),
                    format!("({:.6}, {:.6})", i.lo.to_f64(), i.hi.to_f64()),
                ],
            ],
        },
        None => Outcome {
            kind: "interval",
            text: "empty".into(),
            terms: Vec::new(),
            table: Vec::new(),
        },
    }
}

pub fn verdict(v: &StabilityVerdict) -> Outcome {
    let mut terms = Vec::new();
    let mut table = vec![vec!["criterion".into(), "interval".into()]];
    for w in &v.witnesses {
        let mut t = interval_json(&w.interval);
        t["criterion"] = json!(w.criterion.as_str());
        terms.push(t);
        table.push(vec![w.criterion.as_str().into(), w.interval.to_string()]);
    }
    Outcome {
        kind: "verdict",
        text: v.verdict.as_str().into(),
        terms,
        table,
    }
}

pub fn verification(r: &VerifyReport) -> Outcome {
    let mut terms = Vec::new();
    let mut table = vec![vec![
        "status".into(),
        "family".into(),
        "n".into(),
        "computed".into(),
    ]];
    for row in &r.rows {
        terms.push(json!({
            "family": row.family,
            "n": row.n,
            "passed": row.passed,
            "computed": row.computed,
            "expected": row.expected,
        }));
        let status = if row.passed { "pass" } else { "FAIL" };
        let computed = if row.passed {
            row.computed.clone()
        } else {
            format!("{} (expected {})", row.computed, row.expected)
        };
        table.push(vec![
            status.into(),
            row.family.into(),
            row.n.to_string(),
            computed,
        ]);
    }
    let failed = r.failures().count();
    Outcome {
        kind: "verdict",
        text: if failed == 0 {
            format!("pass: {} checks", r.rows.len())
        } else {
            format!("fail: {failed} of {} checks", r.rows.len())
        },
        terms,
        table,
    }
}

/// A complete report: the common header, the outcome and extra fields.
pub struct Document {
    pub n: Option<usize>,
    pub expr: String,
    pub result: Outcome,
    pub extra: Vec<(&'static str, Value)>,
}

impl Document {
    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "n": self.n,
            "expr": self.expr,
            "result": {
                "kind": self.result.kind,
                "text": self.result.text,
                "terms": self.result.terms,
            },
        });
        for (k, v) in &self.extra {
            doc[*k] = v.clone();
        }
        doc
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.n {
            out += &format!("n       {n}\n");
        }
        out += &format!("expr    {}\n", self.expr);
        for (k, v) in &self.extra {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Object(o) if o.contains_key("text") => {
                    o["text"].as_str().unwrap_or_default().into()
                }
                v => v.to_string(),
            };
            out += &format!("{k:<7} {v}\n");
        }
        out += &format!("result  {} ({})\n", self.result.text, self.result.kind);
        if self.result.table.len() > 1 {
            out.push('\n');
            out += &table(&self.result.table);
        }
        out
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out += &rule.join("  ");
            out.push('\n');
        }
    }
    out
}
