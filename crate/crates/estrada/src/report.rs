//! Machine-readable output for reports: JSON and CSV with a pinned number
//! format.
//!
//! Floats are always printed with 17 significant digits (`d.16e`), which
//! round-trips every `f64` exactly and makes "same seed, same bytes" a
//! testable contract. Big integers are emitted as decimal strings.

use std::fmt::Write as _;

use crate::double_star::OrderingReport;
use crate::spectral::IdentityReport;
use crate::trees::{AmbiguousPair, ExtremalReport, RankedTree, TieOutcome, TreeRanking};

/// 17 significant digits, exponent form: enough to reproduce the exact bit
/// pattern on read-back.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn levels_string(levels: &[usize]) -> String {
    levels.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn ranked_tree_json(t: &RankedTree) -> String {
    format!(
        "{{\"levelseq\":{},\"lee\":{}}}",
        json_string(&levels_string(&t.levels)),
        fmt_f64(t.lee)
    )
}

fn ambiguous_json(p: &AmbiguousPair) -> String {
    let outcome = match p.outcome {
        TieOutcome::ConfirmedOrder => "confirmed",
        TieOutcome::Swapped => "swapped",
        TieOutcome::Unresolved => "unresolved",
    };
    format!(
        "{{\"first\":{},\"second\":{},\"outcome\":{}}}",
        json_string(&levels_string(&p.first)),
        json_string(&levels_string(&p.second)),
        json_string(outcome)
    )
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(",")
}

impl IdentityReport {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"m\":{},\"lhs\":{},\"rhs\":{},\"abs_err\":{},\"rel_err\":{}}}",
            self.n,
            self.m,
            fmt_f64(self.lhs),
            fmt_f64(self.rhs),
            fmt_f64(self.abs_err),
            fmt_f64(self.rel_err)
        )
    }
}

impl TreeRanking {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"count\":{},\"top\":[{}],\"bottom\":[{}],\"ambiguous\":[{}]}}",
            self.n,
            self.count,
            join(&self.top, ranked_tree_json),
            join(&self.bottom, ranked_tree_json),
            join(&self.ambiguous, ambiguous_json)
        )
    }
}

impl ExtremalReport {
    pub fn to_json(&self) -> String {
        let entries = join(&self.entries, |e| {
            format!(
                "{{\"n\":{},\"count\":{},\"pass\":{},\"failures\":[{}],\"top\":[{}],\"bottom\":[{}]}}",
                e.n,
                e.count,
                e.pass(),
                join(&e.failures, |f| json_string(f)),
                join(&e.ranking.top, ranked_tree_json),
                join(&e.ranking.bottom, ranked_tree_json)
            )
        });
        format!(
            "{{\"max_n\":{},\"pass\":{},\"entries\":[{}]}}",
            self.max_n,
            self.pass(),
            entries
        )
    }
}

impl OrderingReport {
    pub fn to_json(&self) -> String {
        let rows = join(&self.rows, |r| {
            format!(
                "{{\"a\":{},\"b\":{},\"x1\":{},\"x2\":{},\"x3\":{},\"lee\":{}}}",
                r.a,
                r.b,
                fmt_f64(r.roots.x1),
                fmt_f64(r.roots.x2),
                fmt_f64(r.roots.x3),
                fmt_f64(r.lee)
            )
        });
        format!(
            "{{\"n\":{},\"pass\":{},\"special_margin\":{},\"margins\":[{}],\"violations\":[{}],\"rows\":[{}]}}",
            self.n,
            self.pass,
            fmt_f64(self.special_margin),
            join(&self.margins, |m| fmt_f64(*m)),
            join(&self.violations, |v| json_string(v)),
            rows
        )
    }

    /// CSV table: one row per double star, margins to the next row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a,b,x1,x2,x3,lee,margin_to_next\n");
        for (i, r) in self.rows.iter().enumerate() {
            let margin = self.margins.get(i).map(|m| fmt_f64(*m)).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.n,
                r.a,
                r.b,
                fmt_f64(r.roots.x1),
                fmt_f64(r.roots.x2),
                fmt_f64(r.roots.x3),
                fmt_f64(r.lee),
                margin
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_17_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(181.161064120155), "1.8116106412015500e2");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        // round-trips exactly
        for x in [std::f64::consts::E, 1e-300, -4.257e17, 0.1 + 0.2] {
            let printed = fmt_f64(x);
            assert_eq!(printed.parse::<f64>().unwrap(), x, "{printed}");
        }
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_string("plain"), "\"plain\"");
        assert_eq!(json_string("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
        assert_eq!(json_string("\u{1}"), "\"\\u0001\"");
    }

    #[test]
    fn identity_report_layout() {
        let rep = IdentityReport { n: 3, m: 2, lhs: 1.0, rhs: 1.0, abs_err: 0.0, rel_err: 0.0 };
        assert_eq!(
            rep.to_json(),
            "{\"n\":3,\"m\":2,\"lhs\":1.0000000000000000e0,\"rhs\":1.0000000000000000e0,\
             \"abs_err\":0.0000000000000000e0,\"rel_err\":0.0000000000000000e0}"
        );
    }
}
