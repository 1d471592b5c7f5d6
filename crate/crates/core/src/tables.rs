//! Regeneration of the exact trace / minimal-polynomial case tables.
//!
//! The golden file `data/case_tables.tsv` lists, per case, the halved
//! triplets, the published trace of `C'_x C'_y` and the published `f_ζ`.
//! [`regenerate`] recomputes both from the triplets and compares them by
//! exact field equality, then rebuilds the lists of non-cyclotomic quadratic
//! and quartic `f_ζ` from the recomputed rows.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{analyze, RootOfUnityVerdict};
use crate::rotation::{CosPhi, Triplet};
use crate::scalar::{parse_angle, parse_mq, parse_rational, Mq, Rational};
use crate::RationalPoly;

const SHIPPED: &str = include_str!("../data/case_tables.tsv");
const HEADER: &str = "# case tables v1";

#[derive(Debug, Clone)]
pub struct GoldenRow {
    pub id: String,
    pub triplets: Vec<Triplet>,
    pub trace: Mq,
    pub f_zeta: RationalPoly,
    pub degree: usize,
}

#[derive(Debug, Clone)]
pub struct GoldenTables {
    pub rows: Vec<GoldenRow>,
    /// Linear coefficients `a` of the non-cyclotomic `x² + ax + 1`.
    pub quadratic_a: Vec<Rational>,
    /// `(a, b)` of the non-cyclotomic `x⁴ + ax³ + bx² + ax + 1`.
    pub quartic_ab: Vec<(Rational, Rational)>,
}

impl GoldenTables {
    pub fn shipped() -> Self {
        GoldenTables::parse(SHIPPED).expect("shipped case tables parse")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(Error::Parse(format!("case tables must start with {HEADER:?}")));
        }
        let mut rows = Vec::new();
        let mut quadratic_a = None;
        let mut quartic_ab = None;
        for (n, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |msg: String| Error::Parse(format!("case tables line {}: {msg}", n + 2));
            let cols: Vec<&str> = line.split('\t').collect();
            match cols[..] {
                ["@quadratic", list] => {
                    quadratic_a = Some(list.split_whitespace().map(parse_rational).collect::<Result<_>>()?);
                }
                ["@quartic", list] => {
                    let pairs = list
                        .split_whitespace()
                        .map(|p| {
                            let (a, b) = p.split_once(',').ok_or_else(|| at(format!("bad pair {p:?}")))?;
                            Ok((parse_rational(a)?, parse_rational(b)?))
                        })
                        .collect::<Result<_>>()?;
                    quartic_ab = Some(pairs);
                }
                [id, triplets, trace, f, degree] => {
                    let triplets = triplets
                        .split(';')
                        .map(|t| parse_triplet(t).map_err(|e| at(e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    let mut coeffs = f
                        .split_whitespace()
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    coeffs.reverse();
                    let degree = degree
                        .parse()
                        .map_err(|_| at(format!("bad degree {degree:?}")))?;
                    rows.push(GoldenRow {
                        id: id.to_string(),
                        triplets,
                        trace: parse_mq(trace)?,
                        f_zeta: RationalPoly::new(coeffs),
                        degree,
                    });
                }
                _ => return Err(at("expected 5 columns or an '@' list".into())),
            }
        }
        Ok(GoldenTables {
            rows,
            quadratic_a: quadratic_a.ok_or_else(|| Error::Parse("missing @quadratic".into()))?,
            quartic_ab: quartic_ab.ok_or_else(|| Error::Parse("missing @quartic".into()))?,
        })
    }
}

fn parse_triplet(src: &str) -> Result<Triplet> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    let [tx, ty, phi] = parts[..] else {
        return Err(Error::Parse(format!("bad triplet {src:?}")));
    };
    Triplet::exact(parse_angle(tx)?, parse_angle(ty)?, CosPhi::parse(phi)?)
}

/// One regenerated triplet of a golden row.
#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub id: String,
    pub triplet: String,
    pub expected_trace: String,
    pub trace: String,
    pub expected_f: String,
    pub f_zeta: String,
    pub degree: usize,
    pub root: Option<RootOfUnityVerdict>,
    /// Empty when everything matches.
    pub diffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ListCheck {
    pub expected: Vec<String>,
    pub found: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub rows: Vec<RowCheck>,
    /// Number of row checks with at least one difference.
    pub diffs: usize,
    pub quadratic_a: ListCheck,
    pub quartic_ab: ListCheck,
    /// Quartic `f_ζ` that are cyclotomic: `(id, n)`.
    pub cyclotomic_quartics: Vec<(String, u64)>,
}

impl TablesReport {
    pub fn pass(&self) -> bool {
        self.diffs == 0 && self.quadratic_a.pass && self.quartic_ab.pass
    }
}

/// Recompute every golden row and both certificate lists.
pub fn regenerate(golden: &GoldenTables) -> TablesReport {
    let mut rows = Vec::new();
    let mut quad: BTreeSet<Rational> = BTreeSet::new();
    let mut quart: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    let mut cyclotomic_quartics = Vec::new();
    for g in &golden.rows {
        for t in &g.triplets {
            let mut diffs = Vec::new();
            let (trace, f, root) = match analyze(t) {
                Ok(a) => (Some(a.trace), Some(a.min_poly), Some(a.root)),
                Err(e) => {
                    diffs.push(format!("analysis failed: {e}"));
                    (None, None, None)
                }
            };
            if let Some(tr) = &trace {
                if tr != &g.trace {
                    diffs.push(format!("trace {tr} != {}", g.trace));
                }
            }
            if let Some(f) = &f {
                if f != &g.f_zeta {
                    diffs.push(format!("f {f} != {}", g.f_zeta));
                }
                if f.degree() != Some(g.degree) {
                    diffs.push(format!("degree {:?} != {}", f.degree(), g.degree));
                }
                match (f.degree(), root) {
                    (Some(2), Some(RootOfUnityVerdict::NotRootOfUnity)) => {
                        quad.insert(f.coeff(1));
                    }
                    (Some(4), Some(RootOfUnityVerdict::NotRootOfUnity)) => {
                        quart.insert((f.coeff(3), f.coeff(2)));
                    }
                    (Some(4), Some(RootOfUnityVerdict::RootOfUnity(n)))
                        if !cyclotomic_quartics.iter().any(|(id, _)| id == &g.id) => {
                            cyclotomic_quartics.push((g.id.clone(), n));
                        }
                    _ => {}
                }
            }
            rows.push(RowCheck {
                id: g.id.clone(),
                triplet: t.to_string(),
                expected_trace: g.trace.to_string(),
                trace: trace.map_or_else(String::new, |t| t.to_string()),
                expected_f: g.f_zeta.to_string(),
                f_zeta: f.as_ref().map_or_else(String::new, |f| f.to_string()),
                degree: f.and_then(|f| f.degree()).unwrap_or(0),
                root,
                diffs,
            });
        }
    }
    let diffs = rows.iter().filter(|r| !r.diffs.is_empty()).count();

    let expected_quad: BTreeSet<Rational> = golden.quadratic_a.iter().cloned().collect();
    let expected_quart: BTreeSet<(Rational, Rational)> = golden.quartic_ab.iter().cloned().collect();
    let show_pair = |(a, b): &(Rational, Rational)| format!("({a}, {b})");
    TablesReport {
        rows,
        diffs,
        quadratic_a: ListCheck {
            expected: golden.quadratic_a.iter().map(Rational::to_string).collect(),
            found: quad.iter().map(Rational::to_string).collect(),
            pass: quad == expected_quad,
        },
        quartic_ab: ListCheck {
            expected: golden.quartic_ab.iter().map(show_pair).collect(),
            found: quart.iter().map(show_pair).collect(),
            pass: quart == expected_quart,
        },
        cyclotomic_quartics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rows() {
        let g = GoldenTables::shipped();
        assert_eq!(g.rows.len(), 35);
        assert_eq!(g.quadratic_a.len(), 4);
        assert_eq!(g.quartic_ab.len(), 8);
        let ids: BTreeSet<&str> = g.rows.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), 35);
    }

    #[test]
    fn shipped_tables_regenerate_cleanly() {
        let report = regenerate(&GoldenTables::shipped());
        let bad: Vec<_> = report.rows.iter().filter(|r| !r.diffs.is_empty()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(report.pass(), "{report:#?}");
        let mut cyc = report.cyclotomic_quartics.clone();
        cyc.sort();
        let want: Vec<(String, u64)> = ["A5-a1-3", "A5-a2-10", "A5-a2-6"]
            .iter()
            .map(|s| (s.to_string(), 5))
            .collect();
        assert_eq!(cyc, want);
    }

    #[test]
    fn corrupted_row_is_reported() {
        let text = SHIPPED.replace("A4-a-2\t1,1/3,sqrt(1/3)\t-2/3", "A4-a-2\t1,1/3,sqrt(1/3)\t-1/3");
        let report = regenerate(&GoldenTables::parse(&text).unwrap());
        assert_eq!(report.diffs, 1);
        assert!(!report.pass());
        let text = SHIPPED.replace("@quadratic\t5/3 4/3 3/2 1/3", "@quadratic\t5/3 4/3 3/2");
        assert!(!regenerate(&GoldenTables::parse(&text).unwrap()).quadratic_a.pass);
    }

    #[test]
    fn parse_errors() {
        assert!(GoldenTables::parse("x\n").is_err());
        assert!(GoldenTables::parse("# case tables v1\nA\t1,1,0\t0\n").is_err());
        assert!(GoldenTables::parse("# case tables v1\n@quadratic\t1/3\n").is_err());
    }
}
