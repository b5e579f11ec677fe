use std::fmt::Write;

use qdouble_core::braid::{sigma_1q, sigma_2q, Catalog, TwoQubitPairing};
use qdouble_core::double::{s_discrepancies, AnyonCharge, ModularData};
use qdouble_core::group::{cayley_table, irreps, GroupKind, Section, CLASSES, ELEMENTS};
use qdouble_core::recoupling::Pairing;
use qdouble_core::{ExactMatrix, ExactScalar};
use serde::Serialize;

use crate::output::{csv_string, to_json, CliError, Format};
use crate::{CatalogArg, Table};

pub fn render(table: Table, pairing: &str, arity: u8, catalog: CatalogArg, format: Format) -> Result<String, CliError> {
    match table {
        Table::Group => group(format),
        Table::Smatrix => smatrix(format),
        Table::Tmatrix => tmatrix(format),
        Table::Fusion => fusion(format),
        Table::Braids => braids(pairing, arity, catalog, format),
    }
}

#[derive(Serialize)]
struct CayleyRow {
    a: &'static str,
    b: &'static str,
    product: &'static str,
}

#[derive(Serialize)]
struct ClassJson {
    name: &'static str,
    members: Vec<&'static str>,
    centralizer: Vec<&'static str>,
    irreps: Vec<IrrepJson>,
}

#[derive(Serialize)]
struct IrrepJson {
    label: String,
    dimension: usize,
    characters: Vec<(&'static str, ExactScalar)>,
}

fn group(format: Format) -> Result<String, CliError> {
    let t = cayley_table();
    match format {
        Format::Csv => csv_string(ELEMENTS.iter().flat_map(|&a| {
            ELEMENTS.iter().map(move |&b| CayleyRow { a: a.name(), b: b.name(), product: t[a.index()][b.index()].name() })
        })),
        Format::Json => {
            let classes: Vec<ClassJson> = CLASSES
                .iter()
                .map(|&c| {
                    let kind = if c.is_central() { GroupKind::Q8 } else { GroupKind::Centralizer(c) };
                    let irreps = irreps(kind)
                        .iter()
                        .map(|r| IrrepJson {
                            label: r.label.name(),
                            dimension: r.dimension,
                            characters: r.elements().map(|g| (g.name(), r.character(g))).collect(),
                        })
                        .collect();
                    ClassJson {
                        name: c.name(),
                        members: c.members().iter().map(|g| g.name()).collect(),
                        centralizer: c.centralizer().iter().map(|g| g.name()).collect(),
                        irreps,
                    }
                })
                .collect();
            let cayley: Vec<Vec<&str>> = t.iter().map(|r| r.iter().map(|g| g.name()).collect()).collect();
            to_json(&serde_json::json!({ "elements": ELEMENTS.map(|g| g.name()), "cayley": cayley, "classes": classes }))
        }
        Format::Text => {
            let mut s = String::from("·  ");
            for b in ELEMENTS {
                let _ = write!(s, " {:>2}", b.name());
            }
            s.push('\n');
            for a in ELEMENTS {
                let _ = write!(s, "{:>2} ", a.name());
                for b in ELEMENTS {
                    let _ = write!(s, " {:>2}", t[a.index()][b.index()].name());
                }
                s.push('\n');
            }
            s.push('\n');
            for c in CLASSES {
                let m: Vec<&str> = c.members().iter().map(|g| g.name()).collect();
                let z: Vec<&str> = c.centralizer().iter().map(|g| g.name()).collect();
                let _ = writeln!(s, "{}: {{{}}}  centralizer {{{}}}", c.name(), m.join(", "), z.join(", "));
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct SRow {
    a: String,
    b: String,
    value: ExactScalar,
    float: f64,
}

fn smatrix(format: Format) -> Result<String, CliError> {
    let md = ModularData::compute(Section::First);
    let names: Vec<String> = md.charges.iter().map(|c| c.name()).collect();
    match format {
        Format::Csv => csv_string(md.charges.iter().flat_map(|a| {
            let md = &md;
            md.charges.iter().map(move |b| SRow {
                a: a.name(),
                b: b.name(),
                value: md.s.get(a.index(), b.index()),
                float: md.s_f64(a.index(), b.index()),
            })
        })),
        Format::Json => to_json(&serde_json::json!({
            "labels": names,
            "s": md.s,
            "symmetric": md.is_symmetric(),
            "unitary": md.is_unitary(),
            "printed_discrepancies": s_discrepancies(&md),
        })),
        Format::Text => {
            let mut s = format!("{:>4}", "");
            for n in &names {
                let _ = write!(s, " {n:>5}");
            }
            s.push('\n');
            for (i, a) in names.iter().enumerate() {
                let _ = write!(s, "{a:>4}");
                for j in 0..names.len() {
                    let _ = write!(s, " {:>5}", md.s.get(i, j).to_string());
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct TRow {
    label: String,
    t: ExactScalar,
    spin: f64,
}

fn tmatrix(format: Format) -> Result<String, CliError> {
    let md = ModularData::compute(Section::First);
    let rows: Vec<TRow> = md
        .charges
        .iter()
        .map(|c| {
            let t = md.t[c.index()];
            TRow { label: c.name(), t, spin: t.to_complex().arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU }
        })
        .collect();
    match format {
        Format::Csv => csv_string(rows),
        Format::Json => to_json(&rows),
        Format::Text => Ok(rows.iter().map(|r| format!("{:>4}  T = {:<3}  s = {}\n", r.label, r.t.to_string(), r.spin)).collect()),
    }
}

#[derive(Serialize)]
struct FusionRow {
    a: String,
    b: String,
    c: String,
    #[serde(rename = "N")]
    n: u8,
}

fn fusion(format: Format) -> Result<String, CliError> {
    let f = ModularData::compute(Section::First).fusion()?;
    let rows: Vec<FusionRow> = f.rows().into_iter().map(|(a, b, c, n)| FusionRow { a: a.name(), b: b.name(), c: c.name(), n }).collect();
    match format {
        Format::Csv => csv_string(rows),
        Format::Json => to_json(&rows),
        Format::Text => {
            let mut s = String::new();
            for a in AnyonCharge::all() {
                for b in AnyonCharge::all() {
                    let ch: Vec<String> = f.channels(a, b).iter().map(|c| c.name()).collect();
                    let _ = writeln!(s, "{} ⊗ {} = {}", a.name(), b.name(), ch.join(" ⊕ "));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct EntryRow {
    generator: usize,
    row: usize,
    col: usize,
    exact: ExactScalar,
    /// m in ζ^m / √2^p, ζ = e^{iπ/4}
    phase_k: Option<u8>,
    sqrt2_power: Option<u32>,
    re: f64,
    im: f64,
}

fn entries(index: usize, m: &ExactMatrix) -> Vec<EntryRow> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if v.is_zero() {
                continue;
            }
            let pp = v.as_phase_power();
            let z = v.to_complex();
            out.push(EntryRow { generator: index, row: r, col: c, exact: v, phase_k: pp.map(|x| x.0), sqrt2_power: pp.map(|x| x.1), re: z.re, im: z.im });
        }
    }
    out
}

fn braids(pairing: &str, arity: u8, catalog: CatalogArg, format: Format) -> Result<String, CliError> {
    let unknown = || CliError::usage(format!("unknown pairing {pairing:?} for arity {arity}"));
    let mats: Vec<ExactMatrix> = if arity == 1 {
        let p = Pairing::parse(pairing).ok_or_else(unknown)?;
        (1..=2).map(|i| sigma_1q(p, i)).collect::<Result<_, _>>()?
    } else {
        let p = TwoQubitPairing::parse(pairing).ok_or_else(unknown)?;
        let c = match catalog {
            CatalogArg::Printed => Catalog::Printed,
            CatalogArg::Amended => Catalog::Amended,
        };
        (1..=5).map(|i| sigma_2q(p, i, c)).collect::<Result<_, _>>()?
    };
    let rows: Vec<EntryRow> = mats.iter().enumerate().flat_map(|(i, m)| entries(i + 1, m)).collect();
    match format {
        Format::Csv => csv_string(rows),
        Format::Json => to_json(&serde_json::json!({ "pairing": pairing, "arity": arity, "entries": rows, "matrices": mats })),
        Format::Text => {
            let mut s = String::new();
            for (i, m) in mats.iter().enumerate() {
                let _ = writeln!(s, "σ{}{}", i + 1, if m.is_unitary() { "" } else { "  (not unitary)" });
                for r in 0..m.rows() {
                    let cells: Vec<String> = m.row(r).iter().map(|v| format!("{:>9}", v.to_string())).collect();
                    let _ = writeln!(s, "  [{}]", cells.join(" "));
                }
            }
            Ok(s)
        }
    }
}
