//! Triplets known to generate finite groups, and the halved triplets derived
//! from them.
//!
//! The shipped table is `data/catalog.tsv`: a `# catalog v1` header, `#`
//! comment lines, then one tab-separated row per triplet:
//!
//! ```text
//! id  group  order  theta_x  theta_y  cos_phi
//! ```
//!
//! Angles are rational multiples of π in `[0, 2)`; `group` is one of `Cn`,
//! `Dn`, `A4`, `S4`, `A5`; `cos_phi` uses the grammar of
//! [`CosPhi::parse`](crate::rotation::CosPhi::parse).

use serde::Serialize;

use super::{classify_finite, close_group, ClosureStatus, GroupLabel};
use crate::error::{Error, Result};
use crate::rotation::{build_pair, CosPhi, Theta, Triplet};
use crate::scalar::{parse_angle, Angle, Rational};

const SHIPPED: &str = include_str!("../../data/catalog.tsv");
const HEADER: &str = "# catalog v1";

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub group: GroupLabel,
    pub order: usize,
    /// Angles may exceed π here, so the triplet is in numeric mode.
    pub triplet: Triplet,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The table shipped with the crate.
    pub fn shipped() -> Self {
        Catalog::parse(SHIPPED).expect("shipped catalog parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(Error::Parse(format!("catalog must start with {HEADER:?}")));
        }
        let mut entries = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [id, group, order, tx, ty, phi] = cols[..] else {
                return Err(Error::Parse(format!("catalog line {}: expected 6 columns", n + 2)));
            };
            let group: GroupLabel = group.parse()?;
            let order: usize = order
                .parse()
                .map_err(|_| Error::Parse(format!("bad order {order:?}")))?;
            if order != group.order() {
                return Err(Error::Parse(format!("{id}: order {order} does not match {group}")));
            }
            let triplet = Triplet::numeric(
                Theta::Exact(parse_angle(tx)?),
                Theta::Exact(parse_angle(ty)?),
                CosPhi::parse(phi)?,
            );
            entries.push(CatalogEntry {
                id: id.to_string(),
                group,
                order,
                triplet,
            });
        }
        Ok(Catalog { entries })
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub triplet: String,
    pub expected: GroupLabel,
    pub found: Option<GroupLabel>,
    pub status: ClosureStatus,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryResult>,
    pub failures: usize,
}

/// Close and classify every entry and compare with its stored label.
pub fn catalog_verify(catalog: &Catalog, cap: usize, tol: f64) -> CatalogReport {
    let entries: Vec<EntryResult> = catalog
        .entries
        .iter()
        .map(|e| {
            let pair = build_pair::<f64>(&e.triplet);
            let g = close_group(&pair.generators(), cap, tol);
            let found = classify_finite(&g).ok();
            EntryResult {
                id: e.id.clone(),
                triplet: e.triplet.to_string(),
                expected: e.group,
                found,
                status: g.status,
                pass: found == Some(e.group) && g.order() == Some(e.order),
            }
        })
        .collect();
    let failures = entries.iter().filter(|r| !r.pass).count();
    CatalogReport { entries, failures }
}

/// An exact-mode triplet `(θ_x/2, θ_y, φ)` or `(θ_x, θ_y/2, φ)`.
#[derive(Debug, Clone)]
pub struct HalvedTriplet {
    pub triplet: Triplet,
    /// Catalog entries producing this triplet.
    pub parents: Vec<String>,
}

fn in_half_open_pi(a: &Angle) -> bool {
    !a.is_zero() && a.q() <= &Rational::from_integer(1.into())
}

/// Halve either angle of every non-cyclic catalog entry, keeping the results
/// with both angles in `(0, π]`, deduplicated in catalog order.
pub fn halved_triplets(catalog: &Catalog) -> Vec<HalvedTriplet> {
    let mut out: Vec<HalvedTriplet> = Vec::new();
    for e in catalog.entries.iter().filter(|e| !matches!(e.group, GroupLabel::Cyclic(_))) {
        let (Some(x), Some(y)) = (e.triplet.theta_x.exact(), e.triplet.theta_y.exact()) else {
            continue;
        };
        for (tx, ty) in [(x.half(), y.clone()), (x.clone(), y.half())] {
            if !(in_half_open_pi(&tx) && in_half_open_pi(&ty)) {
                continue;
            }
            let t = Triplet::exact(tx, ty, e.triplet.phi.clone()).expect("angles checked");
            match out.iter_mut().find(|h| h.triplet == t) {
                Some(h) => h.parents.push(e.id.clone()),
                None => out.push(HalvedTriplet {
                    triplet: t,
                    parents: vec![e.id.clone()],
                }),
            }
        }
    }
    out
}
