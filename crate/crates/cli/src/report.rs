//! Emission records and their JSON / CSV / text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use spectra_core::verify::{Check, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSection {
    pub omega: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<BTreeMap<u64, u64>>,
    pub agreement: bool,
    pub classification: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CSpectrumSection {
    pub c: String,
    pub omega: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<BTreeMap<u64, u64>>,
    pub agreement: bool,
    pub row_max: u64,
    pub gcd_floor: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_ok: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharSumSection {
    pub method: String,
    pub hasse_margin1: f64,
    pub hasse_margin2: f64,
    pub hasse_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: String,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name.clone(),
            status: c.status.to_string(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
        }
    }
}

/// One object per field. Optional sections appear only for the commands
/// that compute them.
#[derive(Debug, Clone, Serialize)]
pub struct FieldRecord {
    pub p: u64,
    pub n: usize,
    pub q: u64,
    pub d: u64,
    pub chi5: i64,
    pub lambda1: i64,
    pub lambda2: i64,
    pub lambda: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_sums: Option<CharSumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_spectrum: Option<CSpectrumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniformity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

impl FieldRecord {
    pub fn attach_verify(&mut self, report: &VerifyReport) {
        self.checks = Some(report.checks.iter().map(CheckRecord::from).collect());
        self.passed = Some(report.passed());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub summary: bool,
    pub qmax: u64,
    pub fields: usize,
    pub failed: Vec<u64>,
    pub passed: bool,
}

pub const CSV_HEADER: &str = "p,n,q,d,section,key,value,detail";

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Long-format rows: `p,n,q,d,section,key,value,detail`.
pub fn csv_rows(rec: &FieldRecord) -> Vec<String> {
    let prefix = format!("{},{},{},{}", rec.p, rec.n, rec.q, rec.d);
    let mut rows = Vec::new();
    let mut push = |section: &str, key: &str, value: String, detail: &str| {
        rows.push(format!(
            "{prefix},{section},{},{},{}",
            csv_escape(key),
            csv_escape(&value),
            csv_escape(detail)
        ));
    };
    push("field", "chi5", rec.chi5.to_string(), "");
    push("char_sums", "lambda1", rec.lambda1.to_string(), "");
    push("char_sums", "lambda2", rec.lambda2.to_string(), "");
    push("char_sums", "lambda", rec.lambda.to_string(), "");
    if let Some(cs) = &rec.char_sums {
        push("char_sums", "method", cs.method.clone(), "");
        push("char_sums", "hasse_ok", cs.hasse_ok.to_string(), "");
        if let Some(a) = cs.agreement {
            push("char_sums", "agreement", a.to_string(), "");
        }
    }
    if let Some(s) = &rec.spectrum {
        for (i, w) in &s.omega {
            push(
                "spectrum",
                &format!("omega_{i}"),
                w.to_string(),
                "brute-force",
            );
        }
        if let Some(cf) = &s.closed_form {
            for (i, w) in cf {
                push(
                    "spectrum",
                    &format!("omega_{i}"),
                    w.to_string(),
                    "closed-form",
                );
            }
        }
        push("spectrum", "agreement", s.agreement.to_string(), "");
        push("spectrum", "classification", s.classification.clone(), "");
    }
    if let Some(s) = &rec.c_spectrum {
        push("c_spectrum", "c", s.c.clone(), "");
        for (i, w) in &s.omega {
            push(
                "c_spectrum",
                &format!("omega_{i}"),
                w.to_string(),
                "brute-force",
            );
        }
        if let Some(cf) = &s.closed_form {
            for (i, w) in cf {
                push(
                    "c_spectrum",
                    &format!("omega_{i}"),
                    w.to_string(),
                    "closed-form",
                );
            }
        }
        push("c_spectrum", "agreement", s.agreement.to_string(), "");
        push("c_spectrum", "row_max", s.row_max.to_string(), "");
        push("c_spectrum", "gcd_floor", s.gcd_floor.to_string(), "");
        if let (Some(b), Some(ok)) = (s.bound, s.bound_ok) {
            push("c_spectrum", "bound", b.to_string(), &format!("holds={ok}"));
        }
    }
    if let Some(u) = rec.uniformity {
        push("field", "uniformity", u.to_string(), "");
    }
    if let Some(checks) = &rec.checks {
        for c in checks {
            push(
                "check",
                &c.name,
                c.status.clone(),
                &format!("{} | {}", c.lhs, c.rhs),
            );
        }
    }
    rows
}

fn omega_line(omega: &BTreeMap<u64, u64>) -> String {
    omega
        .iter()
        .map(|(i, w)| format!("w{i}={w}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn text(rec: &FieldRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "F_{}^{} (q = {}), d = {}, chi(5) = {}",
        rec.p, rec.n, rec.q, rec.d, rec.chi5
    );
    let _ = writeln!(
        out,
        "  lambda1 = {}  lambda2 = {}  lambda = {}",
        rec.lambda1, rec.lambda2, rec.lambda
    );
    if let Some(cs) = &rec.char_sums {
        let _ = writeln!(
            out,
            "  method {}  hasse margins {:.3} / {:.3}{}",
            cs.method,
            cs.hasse_margin1,
            cs.hasse_margin2,
            cs.agreement
                .map(|a| format!("  agreement {a}"))
                .unwrap_or_default()
        );
    }
    if let Some(s) = &rec.spectrum {
        let _ = writeln!(out, "  spectrum     {}", omega_line(&s.omega));
        if let Some(cf) = &s.closed_form {
            let _ = writeln!(out, "  closed form  {}", omega_line(cf));
        }
        let _ = writeln!(out, "  {}  agreement {}", s.classification, s.agreement);
    }
    if let Some(s) = &rec.c_spectrum {
        let _ = writeln!(out, "  c = {}", s.c);
        let _ = writeln!(out, "  c-spectrum   {}", omega_line(&s.omega));
        if let Some(cf) = &s.closed_form {
            let _ = writeln!(out, "  closed form  {}", omega_line(cf));
        }
        let _ = writeln!(
            out,
            "  row max {}  gcd floor {}  agreement {}",
            s.row_max, s.gcd_floor, s.agreement
        );
    }
    if let Some(u) = rec.uniformity {
        let _ = writeln!(out, "  uniformity {u}");
    }
    if let Some(checks) = &rec.checks {
        let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in checks {
            let _ = writeln!(
                out,
                "  {:<width$}  {:<7}  {} | {}",
                c.name, c.status, c.lhs, c.rhs
            );
        }
    }
    out
}
