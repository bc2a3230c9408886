use std::fmt::Write as _;

use cayley_spectra::cyclotomic::{deserialize_bigint_vec, BigIntList, CycInt};
use cayley_spectra::group::AbelianGroup;
use cayley_spectra::spectrum::{ConnectionSet, Spectrum};
use cayley_spectra::splitting::SplittingFieldReport;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::parse::format_element_list;
use crate::verify::VerificationSummary;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyReport {
    pub group: AbelianGroup,
    /// Coefficients in ascending degree.
    #[serde(serialize_with = "ser_list", deserialize_with = "deserialize_bigint_vec")]
    pub coeffs: Vec<BigInt>,
}

fn ser_list<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    BigIntList(v).serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub modulus: u64,
    pub stabilizer_order: u64,
    pub degree: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralReport {
    pub integral: bool,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Spectrum(Spectrum),
    CharPoly(CharPolyReport),
    Degree(DegreeReport),
    SplittingField(SplittingFieldReport),
    Integral(IntegralReport),
    Enumeration(Vec<ConnectionSet>),
    Verification(VerificationSummary),
}

/// Renders `report` as single-line JSON or as an aligned text table.
pub fn emit(report: &Report, json: bool) -> String {
    if json {
        let value = match report {
            Report::Spectrum(r) => serde_json::to_string(r),
            Report::CharPoly(r) => serde_json::to_string(r),
            Report::Degree(r) => serde_json::to_string(r),
            Report::SplittingField(r) => serde_json::to_string(r),
            Report::Integral(r) => serde_json::to_string(r),
            Report::Enumeration(r) => serde_json::to_string(r),
            Report::Verification(r) => serde_json::to_string(r),
        };
        return value.expect("reports serialize to JSON");
    }
    match report {
        Report::Spectrum(r) => spectrum_table(r),
        Report::CharPoly(r) => format!("{}\n", format_poly(&r.coeffs, "x")),
        Report::Degree(r) => {
            table(&[
                vec!["modulus".into(), r.modulus.to_string()],
                vec!["|H|".into(), r.stabilizer_order.to_string()],
                vec!["degree".into(), r.degree.to_string()],
            ])
        }
        Report::SplittingField(r) => splitting_text(r),
        Report::Integral(r) => {
            if r.integral {
                "integral\n".into()
            } else {
                format!("not integral (degree {})\n", r.degree)
            }
        }
        Report::Enumeration(sets) => enumeration_text(sets),
        Report::Verification(s) => verification_text(s),
    }
}

/// Left-aligned columns separated by two spaces, trailing space trimmed.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<width$}", width = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn exact_text(v: &CycInt) -> String {
    match v.as_integer() {
        Ok(n) => n.to_string(),
        Err(_) => v.to_string(),
    }
}

fn approx_text(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn spectrum_table(spec: &Spectrum) -> String {
    let mut rows = vec![vec!["g".to_string(), "γ_g (exact)".into(), "γ_g (≈)".into()]];
    for e in spec.entries() {
        rows.push(vec![e.element.to_string(), exact_text(&e.gamma), approx_text(e.gamma.complex_embed().re)]);
    }
    let mut out = table(&rows);
    let _ = writeln!(out, "z = exp(2πi/{})", spec.modulus());
    out
}

/// Polynomial with ascending `coeffs` in the variable `var`, highest term first.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() || d == 0 {
            out.push_str(&mag.to_string());
        }
        match d {
            0 => {}
            1 => out.push_str(var),
            _ => {
                let _ = write!(out, "{var}^{d}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn join_u64(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn splitting_text(r: &SplittingFieldReport) -> String {
    let mut rows = vec![
        vec!["modulus".into(), r.modulus.to_string()],
        vec!["stabilizer".into(), format!("{{{}}}", join_u64(r.stabilizer.elements()))],
        vec!["degree".into(), r.degree.to_string()],
        vec!["coset reps".into(), format!("{{{}}}", join_u64(&r.coset_reps))],
    ];
    match &r.generator {
        Some(g) => {
            rows.push(vec!["generator".into(), g.theta.to_string()]);
            rows.push(vec!["min poly".into(), format_poly(&g.min_poly, "x")]);
        }
        None => rows.push(vec!["generator".into(), "not found".into()]),
    }
    let mut out = table(&rows);
    let _ = writeln!(out, "z = exp(2πi/{})", r.modulus);
    out
}

fn enumeration_text(sets: &[ConnectionSet]) -> String {
    let mut out = String::new();
    if let Some(first) = sets.first() {
        let _ = writeln!(out, "{} integral connection sets on {}", sets.len(), first.group());
    }
    let rows: Vec<Vec<String>> = sets
        .iter()
        .map(|cs| {
            vec![
                format!("A = {{{}}}", format_element_list(cs.undirected())),
                format!("B = {{{}}}", format_element_list(cs.directed())),
            ]
        })
        .collect();
    out.push_str(&table(&rows));
    out
}

fn verification_text(s: &VerificationSummary) -> String {
    let mut rows = vec![vec![
        "group".to_string(),
        "sets".into(),
        "undirected".into(),
        "integral".into(),
        "numeric".into(),
    ]];
    for t in &s.groups {
        rows.push(vec![
            t.group.to_string(),
            t.sets.to_string(),
            t.undirected.to_string(),
            t.integral.to_string(),
            t.numeric.to_string(),
        ]);
    }
    let mut out = table(&rows);
    let _ = writeln!(
        out,
        "{} groups, {} connection sets, {} failures (max order {}, seed {})",
        s.groups.len(),
        s.total_sets(),
        s.failures.len(),
        s.max_order,
        s.seed
    );
    for f in &s.failures {
        let check = serde_json::to_string(&f.check).expect("check name");
        let _ = writeln!(
            out,
            "FAIL {} on {}: A = {{{}}}, B = {{{}}}: {}",
            check.trim_matches('"'),
            f.set.group(),
            format_element_list(f.set.undirected()),
            format_element_list(f.set.directed()),
            f.detail
        );
    }
    out
}
