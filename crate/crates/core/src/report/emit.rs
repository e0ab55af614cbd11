use std::fmt::Write;

use super::{Format, Status, SuiteResult};

/// Serializes a result. Ordering follows the run, so a fixed configuration
/// without timestamps gives byte-identical output.
pub fn emit(result: &SuiteResult, format: Format) -> String {
    match format {
        Format::Text => text(result),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(result).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Latex => latex(result),
    }
}

fn status_word(result: &SuiteResult, c: &super::CheckRecord) -> &'static str {
    match (c.status, c.informational && !result.config.strict) {
        (Status::Pass, false) => "PASS",
        (Status::Pass, true) => "INFO",
        (Status::Fail, false) => "FAIL",
        (Status::Fail, true) => "NOTE",
    }
}

fn text(result: &SuiteResult) -> String {
    let mut out = String::new();
    for a in &result.artifacts {
        let _ = writeln!(out, "== {} ==", a.title);
        for r in a.rows.iter().filter(|r| !r.value.is_empty()) {
            let _ = writeln!(out, "{} = {}", r.key, r.value);
        }
        out.push('\n');
    }
    for c in &result.checks {
        let _ = write!(out, "{:<4}  {:<9}  {}  [{}]", status_word(result, c), c.suite, c.id, c.locus);
        if let Some(us) = c.duration_us {
            let _ = write!(out, "  {us}us");
        }
        out.push('\n');
        if c.status == Status::Fail || c.informational {
            let _ = writeln!(out, "      {}", c.witness);
        }
    }
    for d in &result.diffs {
        let _ = writeln!(out, "diff [{}] convention {}\n  printed: {}\n  derived: {}", d.locus, d.convention, d.expected, d.derived);
    }
    let failed = result.failures().count();
    let informational = result.checks.iter().filter(|c| c.informational).count();
    let _ = writeln!(
        out,
        "overall: {} ({} checks, {} failed, {} informational)",
        if result.overall { "pass" } else { "fail" },
        result.checks.len(),
        failed,
        informational
    );
    out
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '%' | '&' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '\\' => out.push_str("\\textbackslash{}"),
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn latex(result: &SuiteResult) -> String {
    let mut out = String::new();
    for a in &result.artifacts {
        let _ = writeln!(out, "\\section*{{{}}}", escape(&a.title));
        let matrix: Vec<_> = a.rows.iter().filter(|r| r.value.is_empty()).collect();
        if !matrix.is_empty() {
            for r in matrix {
                let _ = writeln!(out, "\\[\n{}\n\\]", r.latex);
            }
            continue;
        }
        out.push_str("\\begin{align*}\n");
        let n = a.rows.len();
        for (i, r) in a.rows.iter().enumerate() {
            let _ = write!(out, "  \\mathrm{{{}}} &= {}", escape(&r.key), r.latex);
            out.push_str(if i + 1 < n { " \\\\\n" } else { "\n" });
        }
        out.push_str("\\end{align*}\n");
    }
    if !result.checks.is_empty() {
        out.push_str("\\begin{tabular}{lll}\n\\hline\nstatus & check & locus \\\\\n\\hline\n");
        for c in &result.checks {
            let _ = writeln!(out, "{} & \\texttt{{{}}} & {} \\\\", status_word(result, c), escape(&c.id), escape(&c.locus));
        }
        out.push_str("\\hline\n\\end{tabular}\n");
    }
    let _ = writeln!(out, "% overall: {}", if result.overall { "pass" } else { "fail" });
    out
}
