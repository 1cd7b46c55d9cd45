//! Fixture documents: a track category and a module over it, as JSON.
//!
//! ```json
//! {
//!   "schema": "trackhom.fixture/1",
//!   "name": "loop2",
//!   "description": "one arrow with a self-inverse loop",
//!   "objects": ["0", "1"],
//!   "one_cells": [{ "name": "u", "src": "0", "tgt": "1" }],
//!   "composites": [],
//!   "two_cells": [{ "name": "b", "src": "u", "tgt": "u" }],
//!   "inverses": [["b", "b"]],
//!   "hcomp": [],
//!   "vcomp": [],
//!   "groupoid_completion": "auto",
//!   "module": { "constant": "Z/2" }
//! }
//! ```
//!
//! Identities `id_<object>` and identity 2-cells `1_<1-cell>` are implicit.
//! `composites` entries `[f, g, h]` read "f then g is h"; `hcomp` and `vcomp`
//! entries use the same order. Missing composites are completed when they are
//! forced, and the result must pass the track-category axioms.
//!
//! The module section takes one of three forms:
//! - `{"constant": "<group>"}` with a group literal such as `"Z/2 + Z"`;
//! - `{"cyclic": {"default": 1, "orders": {"1_h": 2}}}`, cyclic fibers joined
//!   by the canonical maps (order 0 is `Z`);
//! - `{"explicit": {...}}` with fibers as group literals per 2-cell and
//!   optional whisker and inverse matrices; omitted maps are the canonical
//!   diagonal maps, and omitted inverses their negatives.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use trackhom::cat::{FinCat, ObjSet};
use trackhom::coeff::{canonical_multiplier, constant_module, cyclic_module, validate_module, TrackModule, Whisker};
use trackhom::track::{validate_track, FinTrackCategory, TrackBuilder};
use trackhom::zmod::{AbHom, CyclicSum, FinAbGroup, IntMatrix, Z};
use trackhom::ValidationReport;

use crate::error::CliError;

pub const FIXTURE_SCHEMA: &str = "trackhom.fixture/1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema: String,
    name: String,
    #[serde(default)]
    description: String,
    objects: Vec<String>,
    #[serde(default)]
    one_cells: Vec<CellDecl>,
    #[serde(default)]
    composites: Vec<[String; 3]>,
    #[serde(default)]
    two_cells: Vec<CellDecl>,
    #[serde(default)]
    inverses: Vec<[String; 2]>,
    #[serde(default)]
    hcomp: Vec<[String; 3]>,
    #[serde(default)]
    vcomp: Vec<[String; 3]>,
    #[serde(default)]
    groupoid_completion: Option<String>,
    module: ModuleDecl,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDecl {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum ModuleDecl {
    Constant(String),
    Cyclic {
        #[serde(default = "one")]
        default: i64,
        #[serde(default)]
        orders: BTreeMap<String, i64>,
    },
    Explicit {
        #[serde(default = "trivial_literal")]
        default: String,
        #[serde(default)]
        fibers: BTreeMap<String, String>,
        #[serde(default)]
        horizontal: Vec<WhiskerDecl>,
        #[serde(default)]
        vertical: Vec<WhiskerDecl>,
        #[serde(default)]
        inverse: Vec<InverseDecl>,
    },
}

fn one() -> i64 {
    1
}

fn trivial_literal() -> String {
    "0".into()
}

/// Matrices have one row per summand of the target fiber.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WhiskerDecl {
    cells: [String; 2],
    left: Vec<Vec<i64>>,
    right: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InverseDecl {
    cell: String,
    map: Vec<Vec<i64>>,
}

/// How the module was declared, as far as later commands care.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Constant(FinAbGroup),
    Cyclic,
    Explicit,
}

/// A parsed and validated fixture.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    /// Hex SHA-256 of the file bytes.
    pub sha256: String,
    pub track: FinTrackCategory,
    pub module: TrackModule,
    pub kind: ModuleKind,
    pub validation: Vec<ValidationReport>,
}

/// Parses a group literal such as `0`, `Z`, `Z/2 + Z/4`, `Z^2 ⊕ Z/3^2`
/// into its cyclic summands in the written order (0 standing for `Z`).
pub fn parse_group_literal(text: &str) -> Result<Vec<Z>, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in text.split(['+', '⊕']) {
        let term = term.trim();
        let (base, power) = match term.split_once('^') {
            Some((b, p)) => {
                let p: usize = p.trim().parse().map_err(|_| format!("bad exponent in '{term}'"))?;
                (b.trim(), p)
            }
            None => (term, 1),
        };
        let base = base.trim_start_matches('(').trim_end_matches(')').trim();
        let order = if base == "Z" {
            Z::ZERO
        } else if let Some(n) = base.strip_prefix("Z/") {
            let n: Z = n.trim().parse().map_err(|_| format!("bad order in '{term}'"))?;
            if n.is_negative() || n.is_zero() {
                return Err(format!("order must be positive in '{term}'"));
            }
            n
        } else {
            return Err(format!("unrecognised group term '{term}'"));
        };
        out.extend(std::iter::repeat_n(order, power));
    }
    Ok(out)
}

/// Reads, parses and validates a fixture file.
pub fn parse_fixture(path: &Path) -> Result<Fixture, CliError> {
    let origin = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    parse_fixture_bytes(&bytes, &origin)
}

pub fn parse_fixture_bytes(bytes: &[u8], origin: &str) -> Result<Fixture, CliError> {
    let doc: Document = serde_json::from_slice(bytes)
        .map_err(|e| CliError::Parse(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    if doc.schema != FIXTURE_SCHEMA {
        return Err(CliError::Parse(format!("{origin}: schema '{}' is not '{FIXTURE_SCHEMA}'", doc.schema)));
    }
    if let Some(mode) = &doc.groupoid_completion {
        if mode != "auto" {
            return Err(CliError::Parse(format!("{origin}: groupoid_completion must be \"auto\", found '{mode}'")));
        }
    }
    let sha256 = hex::encode(Sha256::digest(bytes));
    let track = build_track(&doc)?;
    let track_report = validate_track(&track);
    if !track_report.is_valid() {
        return Err(CliError::Validation(vec![track_report]));
    }
    let (module, kind) = build_module(&doc.module, &track)?;
    let module_report = validate_module(&module);
    if !module_report.is_valid() {
        return Err(CliError::Validation(vec![track_report, module_report]));
    }
    Ok(Fixture {
        name: doc.name,
        description: doc.description,
        sha256,
        track,
        module,
        kind,
        validation: vec![track_report, module_report],
    })
}

fn invalid(subject: &str, msg: String) -> CliError {
    let mut r = ValidationReport::new(subject);
    r.fail(msg);
    CliError::Validation(vec![r])
}

fn build_track(doc: &Document) -> Result<FinTrackCategory, CliError> {
    let objects = ObjSet::new(doc.objects.iter().cloned()).map_err(|e| invalid("objects", e.to_string()))?;
    let mut arrows = Vec::with_capacity(doc.one_cells.len());
    for (i, c) in doc.one_cells.iter().enumerate() {
        let end = |id: &str, which: &str| {
            objects.index_of(id).ok_or_else(|| {
                invalid("one_cells", format!("one_cells[{i}] ({}): {which} object '{id}' is not declared", c.name))
            })
        };
        arrows.push((c.name.as_str(), end(&c.src, "source")?, end(&c.tgt, "target")?));
    }
    let composites: Vec<(&str, &str, &str)> =
        doc.composites.iter().map(|[f, g, h]| (f.as_str(), g.as_str(), h.as_str())).collect();
    let one =
        FinCat::from_generators(objects, &arrows, &composites).map_err(|e| invalid("composites", e.to_string()))?;
    let mut builder = TrackBuilder::new(one.clone());
    for (i, c) in doc.two_cells.iter().enumerate() {
        for (which, u) in [("source", &c.src), ("target", &c.tgt)] {
            if one.find(u).is_err() {
                return Err(invalid(
                    "two_cells",
                    format!("two_cells[{i}] ({}): {which} 1-cell '{u}' is not declared", c.name),
                ));
            }
        }
        builder = builder.cell(&c.name, &c.src, &c.tgt);
    }
    for [a, b] in &doc.inverses {
        builder = builder.inverse(a, b);
    }
    for [a, b, c] in &doc.hcomp {
        builder = builder.hcomp(a, b, c);
    }
    for [a, b, c] in &doc.vcomp {
        builder = builder.vcomp(a, b, c);
    }
    builder.complete().map_err(|e| match e {
        trackhom::Error::Invalid(r) => CliError::Validation(vec![*r]),
        other => invalid("two_cells", other.to_string()),
    })
}

fn cell_index(x: &FinTrackCategory, name: &str, what: &str) -> Result<usize, CliError> {
    x.find_cell(name).map_err(|_| invalid("module", format!("{what}: 2-cell '{name}' is not declared")))
}

fn build_module(decl: &ModuleDecl, x: &FinTrackCategory) -> Result<(TrackModule, ModuleKind), CliError> {
    let n2 = x.n_two_cells();
    match decl {
        ModuleDecl::Constant(literal) => {
            let orders = parse_group_literal(literal).map_err(|e| invalid("module", format!("constant: {e}")))?;
            let g = FinAbGroup::from_cyclic_orders(&orders);
            Ok((constant_module(x, &g), ModuleKind::Constant(g)))
        }
        ModuleDecl::Cyclic { default, orders } => {
            let mut all = vec![Z::from(*default); n2];
            for (name, &o) in orders {
                all[cell_index(x, name, "cyclic orders")?] = Z::from(o);
            }
            if all.iter().any(Z::is_negative) {
                return Err(invalid("module", "cyclic orders must be non-negative".into()));
            }
            let m = cyclic_module(x, &all).map_err(|e| invalid("module", e.to_string()))?;
            Ok((m, ModuleKind::Cyclic))
        }
        ModuleDecl::Explicit { default, fibers, horizontal, vertical, inverse } => {
            let parse = |lit: &str, what: &str| {
                parse_group_literal(lit).map(CyclicSum::new).map_err(|e| invalid("module", format!("{what}: {e}")))
            };
            let mut groups = vec![parse(default, "default fiber")?; n2];
            for (name, lit) in fibers {
                groups[cell_index(x, name, "fibers")?] = parse(lit, &format!("fiber of {name}"))?;
            }
            let matrix = |rows: &[Vec<i64>], dom: &CyclicSum, cod: &CyclicSum, what: &str| {
                if rows.len() != cod.len() || rows.iter().any(|r| r.len() != dom.len()) {
                    return Err(invalid("module", format!("{what}: expected a {}x{} matrix", cod.len(), dom.len())));
                }
                let m = if rows.is_empty() { IntMatrix::zeros(0, dom.len()) } else { IntMatrix::from_rows(rows) };
                Ok(AbHom::from_dense(dom.clone(), cod.clone(), &m))
            };
            let mut hmaps = BTreeMap::new();
            for (k, w) in horizontal.iter().enumerate() {
                let (a, b) = (cell_index(x, &w.cells[0], "horizontal")?, cell_index(x, &w.cells[1], "horizontal")?);
                let c = x.hcomp(a, b).ok_or_else(|| {
                    invalid("module", format!("horizontal[{k}]: {} and {} are not composable", w.cells[0], w.cells[1]))
                })?;
                let what = format!("horizontal[{k}]");
                hmaps.insert(
                    (a, b),
                    Whisker {
                        left: matrix(&w.left, &groups[a], &groups[c], &what)?,
                        right: matrix(&w.right, &groups[b], &groups[c], &what)?,
                    },
                );
            }
            let mut vmaps = BTreeMap::new();
            for (k, w) in vertical.iter().enumerate() {
                let (a, b) = (cell_index(x, &w.cells[0], "vertical")?, cell_index(x, &w.cells[1], "vertical")?);
                let c = x.vcompose(a, b).ok_or_else(|| {
                    invalid("module", format!("vertical[{k}]: {} and {} are not composable", w.cells[0], w.cells[1]))
                })?;
                let what = format!("vertical[{k}]");
                vmaps.insert(
                    (a, b),
                    Whisker {
                        left: matrix(&w.left, &groups[a], &groups[c], &what)?,
                        right: matrix(&w.right, &groups[b], &groups[c], &what)?,
                    },
                );
            }
            let mut inverses = BTreeMap::new();
            for (k, d) in inverse.iter().enumerate() {
                let a = cell_index(x, &d.cell, "inverse")?;
                inverses.insert(a, matrix(&d.map, &groups[a], &groups[x.vinv[a]], &format!("inverse[{k}]"))?);
            }
            let canonical = |a: usize, c: usize, k: i64| canonical_diagonal(&groups[a], &groups[c], k);
            let m = TrackModule::assemble(
                x.clone(),
                groups.clone(),
                |a, b, c| {
                    hmaps
                        .get(&(a, b))
                        .cloned()
                        .unwrap_or_else(|| Whisker { left: canonical(a, c, 1), right: canonical(b, c, 1) })
                },
                |a, b, c| {
                    vmaps
                        .get(&(a, b))
                        .cloned()
                        .unwrap_or_else(|| Whisker { left: canonical(a, c, 1), right: canonical(b, c, 1) })
                },
                |a, inv| inverses.get(&a).cloned().unwrap_or_else(|| canonical(a, inv, -1)),
            );
            Ok((m, ModuleKind::Explicit))
        }
    }
}

/// Summand `i` to summand `i` by `k` times the canonical map, zero elsewhere.
fn canonical_diagonal(dom: &CyclicSum, cod: &CyclicSum, k: i64) -> AbHom {
    let mut m = IntMatrix::zeros(cod.len(), dom.len());
    for i in 0..dom.len().min(cod.len()) {
        m.set(i, i, &canonical_multiplier(dom.modulus(i), cod.modulus(i)) * &Z::from(k));
    }
    AbHom::from_dense(dom.clone(), cod.clone(), &m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn group_literals() {
        assert_eq!(parse_group_literal("0").unwrap(), orders(&[]));
        assert_eq!(parse_group_literal("Z/2 + Z").unwrap(), orders(&[2, 0]));
        assert_eq!(parse_group_literal("Z^2 ⊕ Z/3^2").unwrap(), orders(&[0, 0, 3, 3]));
        assert_eq!(parse_group_literal("(Z/4)^1").unwrap(), orders(&[4]));
        assert!(parse_group_literal("Q").is_err());
        assert!(parse_group_literal("Z/0").is_err());
        assert!(parse_group_literal("Z/x").is_err());
    }

    fn loop2_doc(module: &str) -> String {
        format!(
            r#"{{"schema": "trackhom.fixture/1", "name": "loop2", "objects": ["0", "1"],
                "one_cells": [{{"name": "u", "src": "0", "tgt": "1"}}],
                "two_cells": [{{"name": "b", "src": "u", "tgt": "u"}}],
                "inverses": [["b", "b"]], "module": {module}}}"#
        )
    }

    #[test]
    fn loop2_with_each_module_form() {
        let f = parse_fixture_bytes(loop2_doc(r#"{"constant": "Z/2"}"#).as_bytes(), "t").unwrap();
        assert_eq!(f.track.n_two_cells(), 4);
        assert_eq!(
            f.track.cells_between(f.track.find_one_cell("u").unwrap(), f.track.find_one_cell("u").unwrap()).len(),
            2
        );
        assert_eq!(f.kind, ModuleKind::Constant(FinAbGroup::from_cyclic_orders(&[2])));
        let c = parse_fixture_bytes(loop2_doc(r#"{"cyclic": {"default": 2}}"#).as_bytes(), "t").unwrap();
        assert_eq!(c.module.fibers, f.module.fibers);
        let e = parse_fixture_bytes(loop2_doc(r#"{"explicit": {"default": "Z/2"}}"#).as_bytes(), "t").unwrap();
        assert_eq!(e.module, f.module);
    }

    #[test]
    fn explicit_matrices_are_checked() {
        let doc = loop2_doc(r#"{"explicit": {"default": "Z/2", "inverse": [{"cell": "b", "map": [[1, 0]]}]}}"#);
        assert!(matches!(parse_fixture_bytes(doc.as_bytes(), "t"), Err(CliError::Validation(_))));
        // A zero whisker breaks the unit law.
        let doc = loop2_doc(
            r#"{"explicit": {"default": "Z/2", "vertical": [{"cells": ["b", "b"], "left": [[0]], "right": [[0]]}]}}"#,
        );
        assert!(matches!(parse_fixture_bytes(doc.as_bytes(), "t"), Err(CliError::Validation(_))));
    }

    #[test]
    fn diagnostics_are_positional() {
        let err = parse_fixture_bytes(b"{\n  \"schema\": 3\n}", "bad.json").unwrap_err();
        match err {
            CliError::Parse(msg) => assert!(msg.starts_with("bad.json:2:"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let doc = loop2_doc(r#"{"constant": "Z"}"#).replace(r#""src": "u""#, r#""src": "w""#);
        match parse_fixture_bytes(doc.as_bytes(), "t").unwrap_err() {
            CliError::Validation(r) => assert!(r[0].mentions("two_cells[0] (b)") && r[0].mentions("'w'")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_object_set_is_a_valid_fixture() {
        let doc = r#"{"schema": "trackhom.fixture/1", "name": "empty", "objects": [], "module": {"constant": "Z"}}"#;
        let f = parse_fixture_bytes(doc.as_bytes(), "t").unwrap();
        assert_eq!(f.track.n_objects(), 0);
        assert!(f.validation.iter().all(ValidationReport::is_valid));
    }

    #[test]
    fn hash_tracks_content() {
        let a = parse_fixture_bytes(loop2_doc(r#"{"constant": "Z"}"#).as_bytes(), "t").unwrap();
        let b = parse_fixture_bytes(loop2_doc(r#"{"constant": "Z"}"#).as_bytes(), "t").unwrap();
        let c = parse_fixture_bytes(loop2_doc(r#"{"constant":  "Z"}"#).as_bytes(), "t").unwrap();
        assert_eq!(a.sha256, b.sha256);
        assert_ne!(a.sha256, c.sha256);
        assert_eq!(a.sha256.len(), 64);
    }
}
