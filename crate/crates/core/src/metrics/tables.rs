//! Recomputation of the comparison tables from scratch.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::distance::{
    center_density, closed_form_dpmin, comparative_distances, comparative_from, DistanceReport,
    DistanceStatus,
};
use super::power::PowerProduct;
use crate::constructions::{
    Construction, Family, MixedConstruction, OddConstruction, PowerTwoConstruction,
};
use crate::error::{Error, Result};
use crate::lattice::{dn_matrix, gram_and_verify, zn_matrix, LatticeKind};
use crate::real::Precision;

/// Decimals used for the rendered cells.
pub const RENDER_PLACES: u32 = 4;

/// Parameters of one table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowParams {
    Odd { l: usize },
    PowerTwo { m: u32 },
    Mixed { l: usize, m: u32 },
}

impl RowParams {
    fn build(self) -> Result<Construction> {
        Ok(match self {
            RowParams::Odd { l } => Construction::Odd(OddConstruction::build(l, None)?),
            RowParams::PowerTwo { m } => Construction::PowerTwo(PowerTwoConstruction::build(m)?),
            RowParams::Mixed { l, m } => Construction::Mixed(MixedConstruction::build(l, m, None)?),
        })
    }
}

/// Row parameters of table 1, 2 or 3. Table 1 includes `l = 13`, which is
/// dropped with a diagnostic when its `D_n` distance is not exact.
pub fn table_params(which: u8) -> Result<Vec<RowParams>> {
    use RowParams::*;
    Ok(match which {
        1 => [3, 5, 7, 9, 11, 13, 15].into_iter().map(|l| Odd { l }).collect(),
        2 => vec![
            PowerTwo { m: 4 },
            Mixed { l: 3, m: 3 },
            PowerTwo { m: 5 },
            Mixed { l: 5, m: 3 },
            Mixed { l: 3, m: 4 },
            Mixed { l: 7, m: 3 },
        ],
        3 => vec![
            Odd { l: 3 },
            PowerTwo { m: 4 },
            Odd { l: 5 },
            Mixed { l: 3, m: 3 },
            Odd { l: 7 },
            PowerTwo { m: 5 },
            Odd { l: 9 },
            Mixed { l: 5, m: 3 },
        ],
        _ => return Err(Error::InvalidParameter(format!("no table {which}; expected 1, 2 or 3"))),
    })
}

pub fn table_columns(which: u8) -> [&'static str; 4] {
    if which == 3 {
        ["nor_zn", "nor_dn", "delta_zn", "delta_dn"]
    } else {
        ["rel_zn", "rel_dn", "delta_zn", "delta_dn"]
    }
}

/// Printed cells, keyed by the row dimension.
pub fn published_cells(which: u8, n: usize) -> Option<[&'static str; 4]> {
    let rows: &[(usize, [&str; 4])] = match which {
        1 => &[
            (3, ["0.5227...", "0.3696...", "0.125", "0.176776..."]),
            (5, ["0.3832...", "0.2709...", "0.031250...", "0.088388..."]),
            (7, ["0.2361...", "0.1670...", "0.007812...", "0.044194..."]),
            (9, ["0.2701...", "0.1910...", "0,2701...", "0,1910..."]),
            (11, ["0.2404...", "0.1700...", "0,000488...", "0.011048..."]),
            (15, ["0.2013...", "0.1424...", "0,000030...", "0.002762..."]),
        ],
        2 => &[
            (4, ["0.3855...", "0.3242...", "0.0625...", "0.125"]),
            (6, ["0.3108...", "0.4395...", "0.015625", "0.0625"]),
            (8, ["0.2610...", "0.2013...", "0.003906...", "0.03125"]),
            (10, ["0.2278...", "0.3222...", "0.000976...", "0.015625"]),
            (12, ["0.2015...", "0.2850...", "0.000244...", "0.0078125"]),
            (14, ["0.1404...", "0.1986...", "0.000061...", "0.00390625"]),
        ],
        3 => &[
            (3, ["0.1428...", "0.1133...", "0.0625...", "0.125"]),
            (4, ["0.3855...", "0.3855...", "0.0625...", "0.125"]),
            (5, ["0.0082...", "0.0071...", "0.0625...", "0.125"]),
            (6, ["0.3108...", "0.5538...", "0.015625", "0.0625"]),
            (7, ["0.00004...", "0.00003...", "0.0625...", "0.125"]),
            (8, ["0.2610...", "0.2610...", "0.003906...", "0.03125"]),
            (9, ["0.000007...", "0.000007...", "0.0625...", "0.125"]),
            (10, ["0.2278...", "0.4252...", "0.000976...", "0.015625"]),
        ],
        _ => return None,
    };
    rows.iter().find(|(k, _)| *k == n).map(|(_, c)| *c)
}

/// Compares an exact value with a printed cell such as `"0.2361..."` or
/// `"0,000488..."`: truncated to the printed decimals, at least four.
pub fn agrees_with_published(value: &PowerProduct, published: &str) -> bool {
    let cleaned = published.trim_end_matches('.').replace(',', ".");
    let decimals = cleaned.split_once('.').map_or(0, |(_, f)| f.len());
    let places = decimals.max(RENDER_PLACES as usize);
    let padded = match cleaned.split_once('.') {
        Some((i, f)) => format!("{i}.{f:0<places$}"),
        None => format!("{cleaned}.{}", "0".repeat(places)),
    };
    value.truncated(places as u32) == padded
}

/// A disagreement with a printed cell, with the reading that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFlag {
    pub note: String,
    /// Value under the published convention, when the cause is identified.
    pub published_convention: Option<PowerProduct>,
    /// Whether that value reproduces the printed cell.
    pub convention_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub column: &'static str,
    pub exact: PowerProduct,
    pub published: Option<&'static str>,
    pub agrees: Option<bool>,
    pub flag: Option<CellFlag>,
}

impl TableCell {
    pub fn rendered(&self) -> String {
        self.exact.truncated(RENDER_PLACES)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rendered": self.rendered(),
            "value": self.exact.significant(12),
            "exact": self.exact.to_string(),
            "published": self.published,
            "agrees_with_published": self.agrees,
            "flag": self.flag.as_ref().map(|f| json!({
                "note": f.note,
                "published_convention": f.published_convention.as_ref().map(|v| v.to_json()),
                "convention_agrees": f.convention_agrees,
            })),
        })
    }
}

/// The recomputed quantities for one parameter set.
#[derive(Debug, Clone)]
pub struct ComparativeRow {
    pub n: usize,
    pub family: Family,
    pub l: Option<usize>,
    pub p: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<u32>,
    pub k: Option<usize>,
    pub unit: Option<&'static str>,
    pub zn: DistanceReport,
    pub dn: DistanceReport,
    pub rel_zn: PowerProduct,
    pub rel_dn: PowerProduct,
    pub nor_zn: PowerProduct,
    pub nor_dn: PowerProduct,
    pub delta_zn: PowerProduct,
    pub delta_dn: PowerProduct,
    /// Both generator matrices passed the Gram and determinant checks.
    pub orthonormal: bool,
}

impl ComparativeRow {
    pub fn column(&self, name: &str) -> &PowerProduct {
        match name {
            "rel_zn" => &self.rel_zn,
            "rel_dn" => &self.rel_dn,
            "nor_zn" => &self.nor_zn,
            "nor_dn" => &self.nor_dn,
            "delta_zn" => &self.delta_zn,
            "delta_dn" => &self.delta_dn,
            _ => panic!("unknown column {name}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub row: ComparativeRow,
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub which: u8,
    pub columns: [&'static str; 4],
    pub rows: Vec<TableRow>,
    /// Parameter sets left out because a required distance is not exact.
    pub diagnostics: Vec<String>,
}

enum Outcome {
    Row(Box<ComparativeRow>),
    Skipped(String),
}

fn compute_row(params: RowParams, precision: Precision) -> Result<Outcome> {
    let construction = Arc::new(params.build()?);
    let hypothesis = construction.odd_part().map(|o| o.unit_condition_report());
    let zn = zn_matrix(construction.clone(), precision)?;
    let dn = dn_matrix(&zn)?;
    let orthonormal = [&zn, &dn].iter().try_fold(true, |ok, d| {
        let g = gram_and_verify(d)?;
        Ok::<bool, Error>(ok && g.det_ok && g.orthonormal)
    })?;
    let rz = closed_form_dpmin(&zn, hypothesis.as_ref());
    let rd = closed_form_dpmin(&dn, hypothesis.as_ref());
    let n = zn.dimension;
    let (l, p, r) = match construction.odd_part() {
        Some(o) => (Some(o.n), Some(o.p), Some(o.r)),
        None => (None, None, None),
    };
    for rep in [&rz, &rd] {
        if rep.status != DistanceStatus::Exact {
            return Ok(Outcome::Skipped(format!(
                "n = {n}{}: {} distance is {}{}; row omitted",
                p.map_or(String::new(), |p| format!(" (p = {p})")),
                if rep.kind == LatticeKind::Zn { "Z^n" } else { "D_n" },
                rep.status.as_str(),
                rep.hypothesis
                    .as_ref()
                    .map_or(String::new(), |h| format!(", unit condition {}", h.unit_label())),
            )));
        }
    }
    let cz = comparative_distances(&rz)?;
    let cd = comparative_distances(&rd)?;
    let (m, k) = match construction.as_ref() {
        Construction::Odd(_) => (None, None),
        Construction::PowerTwo(c) => (Some(c.m), Some(c.k)),
        Construction::Mixed(c) => (Some(c.m), Some(c.k)),
    };
    Ok(Outcome::Row(Box::new(ComparativeRow {
        n,
        family: construction.family(),
        l,
        p,
        r,
        m,
        k,
        unit: hypothesis.as_ref().map(|h| h.unit_label()),
        zn: rz,
        dn: rd,
        rel_zn: cz.d_rel_root,
        rel_dn: cd.d_rel_root,
        nor_zn: cz.d_nor_root,
        nor_dn: cd.d_nor_root,
        delta_zn: center_density(LatticeKind::Zn, n),
        delta_dn: center_density(LatticeKind::Dn, n),
        orthonormal,
    })))
}

/// Known causes of printed cells that the recomputation does not reproduce.
fn explain(which: u8, row: &ComparativeRow, column: &str) -> Option<(String, PowerProduct)> {
    let n = row.n;
    match (which, row.family, column) {
        (1, _, "delta_zn") => Some((
            "printed cell repeats the distance column; recomputed 2^-n".into(),
            row.rel_zn.clone(),
        )),
        (1, _, "delta_dn") => Some((
            "printed cell repeats the distance column; recomputed 2^(-(n+2)/2)".into(),
            row.rel_dn.clone(),
        )),
        (_, Family::Mixed, "rel_dn" | "nor_dn") => {
            let published = row.dn.erratum.as_ref()?.published.clone();
            let c = comparative_from(&published, LatticeKind::Dn, n);
            let v = if column == "rel_dn" { c.d_rel_root } else { c.d_nor_root };
            Some((
                "printed cell follows the published D_n closed form, which is not attained".into(),
                v,
            ))
        }
        (3, Family::Odd, "nor_zn" | "nor_dn") => {
            let (d, vol) = if column == "nor_zn" {
                (row.zn.closed_form.clone()?, PowerProduct::one())
            } else {
                (row.dn.closed_form.clone()?, PowerProduct::power(2, 1, 1))
            };
            Some((
                "printed cell is d_min·vol^(-1/n), without the n-th root of d_min".into(),
                d.div(&vol.root(n)),
            ))
        }
        (3, Family::Odd, "delta_zn") => Some((
            "printed cell repeats the n = 4 row".into(),
            center_density(LatticeKind::Zn, 4),
        )),
        (3, Family::Odd, "delta_dn") => Some((
            "printed cell repeats the n = 4 row".into(),
            center_density(LatticeKind::Dn, 4),
        )),
        _ => None,
    }
}

fn make_cells(which: u8, row: &ComparativeRow) -> Vec<TableCell> {
    let printed = published_cells(which, row.n);
    table_columns(which)
        .iter()
        .enumerate()
        .map(|(i, &column)| {
            let exact = row.column(column).clone();
            let published = printed.map(|c| c[i]);
            let agrees = published.map(|p| agrees_with_published(&exact, p));
            let flag = match (agrees, published) {
                (Some(false), Some(p)) => Some(match explain(which, row, column) {
                    Some((note, v)) => CellFlag {
                        convention_agrees: agrees_with_published(&v, p),
                        note,
                        published_convention: Some(v),
                    },
                    None => CellFlag {
                        note: "unexplained disagreement with the printed cell".into(),
                        published_convention: None,
                        convention_agrees: false,
                    },
                }),
                _ => None,
            };
            TableCell {
                column,
                exact,
                published,
                agrees,
                flag,
            }
        })
        .collect()
}

/// Recomputes table 1, 2 or 3: constructions, matrices, distance reports
/// and comparative measures, one row per parameter set.
pub fn table(which: u8, precision: Precision) -> Result<Table> {
    let params = table_params(which)?;
    let outcomes = params
        .par_iter()
        .map(|&p| compute_row(p, precision))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Row(row) => {
                let cells = make_cells(which, &row);
                rows.push(TableRow { row: *row, cells });
            }
            Outcome::Skipped(msg) => diagnostics.push(msg),
        }
    }
    Ok(Table {
        which,
        columns: table_columns(which),
        rows,
        diagnostics,
    })
}

impl Table {
    /// Cells that disagree with the printed table.
    pub fn flagged(&self) -> impl Iterator<Item = (&TableRow, &TableCell)> {
        self.rows
            .iter()
            .flat_map(|r| r.cells.iter().map(move |c| (r, c)))
            .filter(|(_, c)| c.flag.is_some())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|tr| {
                let r = &tr.row;
                let mut cells = Map::new();
                for c in &tr.cells {
                    cells.insert(c.column.to_string(), c.to_json());
                }
                json!({
                    "n": r.n,
                    "family": r.family,
                    "l": r.l,
                    "p": r.p,
                    "r": r.r,
                    "m": r.m,
                    "k": r.k,
                    "unit": r.unit,
                    "dpmin_zn": r.zn.closed_form.as_ref().map(|v| v.to_string()),
                    "dpmin_dn": r.dn.closed_form.as_ref().map(|v| v.to_string()),
                    "orthonormal": r.orthonormal,
                    "cells": cells,
                })
            })
            .collect();
        json!({
            "table": self.which,
            "columns": self.columns,
            "rows": rows,
            "flagged_cells": self.flagged().count(),
            "diagnostics": self.diagnostics,
        })
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["n", "family", "l", "p", "r", "m", "k", "unit"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        h.extend(self.columns.iter().map(|c| c.to_string()));
        h.extend(self.columns.iter().map(|c| format!("{c}_exact")));
        h.push("flagged".into());
        h
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        self.rows
            .iter()
            .map(|tr| {
                let r = &tr.row;
                let mut rec = vec![
                    r.n.to_string(),
                    r.family.to_string(),
                    opt(r.l.map(|v| v.to_string())),
                    opt(r.p.map(|v| v.to_string())),
                    opt(r.r.map(|v| v.to_string())),
                    opt(r.m.map(|v| v.to_string())),
                    opt(r.k.map(|v| v.to_string())),
                    r.unit.unwrap_or("").to_string(),
                ];
                rec.extend(tr.cells.iter().map(|c| c.rendered()));
                rec.extend(tr.cells.iter().map(|c| c.exact.to_string()));
                let flagged: Vec<&str> = tr
                    .cells
                    .iter()
                    .filter(|c| c.flag.is_some())
                    .map(|c| c.column)
                    .collect();
                rec.push(flagged.join(";"));
                rec
            })
            .collect()
    }
}
