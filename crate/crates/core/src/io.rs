//! The structure-constant file format: a JSON document with the base
//! field, a kind tag, dimensions, and dense row-major matrices of exact
//! scalar strings (`"n/d"` over the rationals, residues over a prime
//! field). Emission is canonical: rationals are reduced, residues lie in
//! `0..p`, map names are sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::emw::MonadInEMW;
use crate::lifting::{Bimodule, Coring, EntwiningDatum};
use crate::linalg::{FieldSpec, LinMap};
use crate::structures::{Algebra, Coalgebra, PreMonad, WeakBialgebra};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldVal {
    Name(String),
    Fp { #[serde(rename = "Fp")] p: u64 },
}

#[derive(Serialize, Deserialize)]
struct Doc {
    field: FieldVal,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<BTreeMap<String, usize>>,
    maps: BTreeMap<String, Vec<Vec<String>>>,
}

/// A typed structure read from or written to a document.
#[derive(Clone, Debug)]
pub enum Structure {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    PreMonad(PreMonad),
    WeakBialgebra(WeakBialgebra),
    Entwining(EntwiningDatum),
    EmwMonad(MonadInEMW),
    Coring(Coring),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::Coalgebra(_) => "coalgebra",
            Structure::PreMonad(_) => "premonad",
            Structure::WeakBialgebra(_) => "weak_bialgebra",
            Structure::Entwining(_) => "entwining",
            Structure::EmwMonad(_) => "emw_monad",
            Structure::Coring(_) => "coring",
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Structure::Algebra(a) => a.field,
            Structure::Coalgebra(c) => c.field,
            Structure::PreMonad(p) => p.field,
            Structure::WeakBialgebra(h) => h.field,
            Structure::Entwining(d) => d.field(),
            Structure::EmwMonad(w) => w.base.field,
            Structure::Coring(c) => c.base.field,
        }
    }

    /// Dispatch the structure's own axiom checker.
    pub fn check(&self) -> Report {
        match self {
            Structure::Algebra(a) => a.check(),
            Structure::Coalgebra(c) => c.check(),
            Structure::PreMonad(p) => p.check(),
            Structure::WeakBialgebra(h) => h.check(),
            Structure::Entwining(d) => {
                let mut rep = Report::new("entwining datum");
                rep.extend(d.algebra.check());
                rep.extend(d.coalgebra.check());
                rep.push(crate::entwine::shared_axiom_verdict(
                    d,
                    crate::entwine::Handedness::Right,
                ));
                rep
            }
            Structure::EmwMonad(w) => w.check(),
            Structure::Coring(c) => c.check(),
        }
    }
}

fn render_field(field: FieldSpec) -> FieldVal {
    match field {
        FieldSpec::Q => FieldVal::Name("Q".into()),
        FieldSpec::Fp(p) => FieldVal::Fp { p },
    }
}

fn parse_field(v: &FieldVal) -> Result<FieldSpec> {
    match v {
        FieldVal::Name(s) if s == "Q" => Ok(FieldSpec::Q),
        FieldVal::Name(s) => Err(Error::InvalidPresentation(format!(
            "unknown field name {s:?}"
        ))),
        FieldVal::Fp { p } => FieldSpec::prime(*p),
    }
}

fn render_map(m: &LinMap) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| m.field().render_scalar(m.get(r, c)))
                .collect()
        })
        .collect()
}

fn parse_map(
    field: FieldSpec,
    name: &str,
    rows: usize,
    cols: usize,
    data: &[Vec<String>],
) -> Result<LinMap> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::DimMismatch(format!(
            "map {name:?}: expected {rows}x{cols}, got {}x{}",
            data.len(),
            data.first().map(|r| r.len()).unwrap_or(0)
        )));
    }
    let mut m = LinMap::zero(field, rows, cols);
    for (r, row) in data.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, field.parse_scalar(s)?);
        }
    }
    Ok(m)
}

/// Serialize a structure to the canonical document text.
pub fn emit_structure(s: &Structure) -> String {
    let mut maps = BTreeMap::new();
    let mut dims: Option<BTreeMap<String, usize>> = None;
    let mut dim = None;
    match s {
        Structure::Algebra(a) => {
            dim = Some(a.dim);
            maps.insert("mult".into(), render_map(&a.mult));
            maps.insert("unit".into(), render_map(&a.unit));
        }
        Structure::Coalgebra(c) => {
            dim = Some(c.dim);
            maps.insert("comult".into(), render_map(&c.comult));
            maps.insert("counit".into(), render_map(&c.counit));
        }
        Structure::PreMonad(p) => {
            dim = Some(p.dim);
            maps.insert("mult".into(), render_map(&p.mult));
            maps.insert("unit".into(), render_map(&p.unit));
        }
        Structure::WeakBialgebra(h) => {
            dim = Some(h.dim);
            maps.insert("mult".into(), render_map(&h.mult));
            maps.insert("unit".into(), render_map(&h.unit));
            maps.insert("comult".into(), render_map(&h.comult));
            maps.insert("counit".into(), render_map(&h.counit));
        }
        Structure::Entwining(d) => {
            let mut dm = BTreeMap::new();
            dm.insert("a".into(), d.algebra.dim);
            dm.insert("c".into(), d.coalgebra.dim);
            dims = Some(dm);
            maps.insert("mult".into(), render_map(&d.algebra.mult));
            maps.insert("unit".into(), render_map(&d.algebra.unit));
            maps.insert("comult".into(), render_map(&d.coalgebra.comult));
            maps.insert("counit".into(), render_map(&d.coalgebra.counit));
            maps.insert("psi".into(), render_map(&d.psi));
        }
        Structure::EmwMonad(w) => {
            let mut dm = BTreeMap::new();
            dm.insert("s".into(), w.s_dim);
            dm.insert("t".into(), w.base.dim);
            dims = Some(dm);
            maps.insert("t_mult".into(), render_map(&w.base.mult));
            maps.insert("t_unit".into(), render_map(&w.base.unit));
            maps.insert("psi".into(), render_map(&w.psi));
            maps.insert("nu".into(), render_map(&w.nu));
            maps.insert("theta".into(), render_map(&w.theta));
        }
        Structure::Coring(c) => {
            let mut dm = BTreeMap::new();
            dm.insert("base".into(), c.base.dim);
            dm.insert("carrier".into(), c.carrier.dim);
            dims = Some(dm);
            maps.insert("base_mult".into(), render_map(&c.base.mult));
            maps.insert("base_unit".into(), render_map(&c.base.unit));
            maps.insert("left_act".into(), render_map(&c.carrier.left_act));
            maps.insert("right_act".into(), render_map(&c.carrier.right_act));
            maps.insert("coproduct".into(), render_map(&c.coproduct));
            maps.insert("counit".into(), render_map(&c.counit));
        }
    }
    let doc = Doc {
        field: render_field(s.field()),
        kind: s.kind().into(),
        dim,
        dims,
        maps,
    };
    serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
}

/// Parse a document, normalizing scalars and validating all shapes.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = parse_field(&doc.field)?;
    let get = |name: &str| -> Result<&Vec<Vec<String>>> {
        doc.maps
            .get(name)
            .ok_or_else(|| Error::InvalidPresentation(format!("missing map {name:?}")))
    };
    let need_dim = || -> Result<usize> {
        doc.dim
            .ok_or_else(|| Error::InvalidPresentation("missing \"dim\"".into()))
    };
    let need_dims = |key: &str| -> Result<usize> {
        doc.dims
            .as_ref()
            .and_then(|d| d.get(key))
            .copied()
            .ok_or_else(|| Error::InvalidPresentation(format!("missing dims[{key:?}]")))
    };
    match doc.kind.as_str() {
        "algebra" => {
            let n = need_dim()?;
            let mult = parse_map(field, "mult", n, n * n, get("mult")?)?;
            let unit = parse_map(field, "unit", n, 1, get("unit")?)?;
            Ok(Structure::Algebra(Algebra::new(field, n, mult, unit)?))
        }
        "coalgebra" => {
            let n = need_dim()?;
            let comult = parse_map(field, "comult", n * n, n, get("comult")?)?;
            let counit = parse_map(field, "counit", 1, n, get("counit")?)?;
            Ok(Structure::Coalgebra(Coalgebra::new(
                field, n, comult, counit,
            )?))
        }
        "premonad" => {
            let n = need_dim()?;
            let mult = parse_map(field, "mult", n, n * n, get("mult")?)?;
            let unit = parse_map(field, "unit", n, 1, get("unit")?)?;
            Ok(Structure::PreMonad(PreMonad::new(field, n, mult, unit)?))
        }
        "weak_bialgebra" => {
            let n = need_dim()?;
            let mult = parse_map(field, "mult", n, n * n, get("mult")?)?;
            let unit = parse_map(field, "unit", n, 1, get("unit")?)?;
            let comult = parse_map(field, "comult", n * n, n, get("comult")?)?;
            let counit = parse_map(field, "counit", 1, n, get("counit")?)?;
            Ok(Structure::WeakBialgebra(WeakBialgebra::new(
                field, n, mult, unit, comult, counit,
            )?))
        }
        "entwining" => {
            let a = need_dims("a")?;
            let c = need_dims("c")?;
            let mult = parse_map(field, "mult", a, a * a, get("mult")?)?;
            let unit = parse_map(field, "unit", a, 1, get("unit")?)?;
            let comult = parse_map(field, "comult", c * c, c, get("comult")?)?;
            let counit = parse_map(field, "counit", 1, c, get("counit")?)?;
            let psi = parse_map(field, "psi", a * c, c * a, get("psi")?)?;
            Ok(Structure::Entwining(EntwiningDatum::new(
                Algebra::new(field, a, mult, unit)?,
                Coalgebra::new(field, c, comult, counit)?,
                psi,
            )?))
        }
        "emw_monad" => {
            let s = need_dims("s")?;
            let t = need_dims("t")?;
            let mult = parse_map(field, "t_mult", t, t * t, get("t_mult")?)?;
            let unit = parse_map(field, "t_unit", t, 1, get("t_unit")?)?;
            let base = Algebra::new(field, t, mult, unit)?;
            let psi = parse_map(field, "psi", s * t, t * s, get("psi")?)?;
            let nu = parse_map(field, "nu", s * t, s * s, get("nu")?)?;
            let theta = parse_map(field, "theta", s * t, 1, get("theta")?)?;
            Ok(Structure::EmwMonad(MonadInEMW::new(
                base, s, psi, nu, theta,
            )?))
        }
        "coring" => {
            let b = need_dims("base")?;
            let n = need_dims("carrier")?;
            let base = Algebra::new(
                field,
                b,
                parse_map(field, "base_mult", b, b * b, get("base_mult")?)?,
                parse_map(field, "base_unit", b, 1, get("base_unit")?)?,
            )?;
            let carrier = Bimodule::new(
                base.clone(),
                base.clone(),
                n,
                parse_map(field, "left_act", n, b * n, get("left_act")?)?,
                parse_map(field, "right_act", n, n * b, get("right_act")?)?,
            )?;
            let counit = parse_map(field, "counit", b, n, get("counit")?)?;
            // The coproduct is presented against the canonical quotient
            // basis, recomputed deterministically from the carrier.
            let square = crate::lifting::tensor_over_a(&carrier, &carrier)?;
            let coproduct = parse_map(
                field,
                "coproduct",
                square.quotient.dim,
                n,
                get("coproduct")?,
            )?;
            Ok(Structure::Coring(Coring::new(
                base, carrier, coproduct, counit,
            )?))
        }
        other => Err(Error::InvalidPresentation(format!(
            "unknown kind {other:?}"
        ))),
    }
}

/// Read and parse a file.
pub fn read_structure(path: &std::path::Path) -> Result<Structure> {
    parse_structure(&std::fs::read_to_string(path)?)
}

/// Emit a structure to a file, canonically.
pub fn write_structure(path: &std::path::Path, s: &Structure) -> Result<()> {
    std::fs::write(path, emit_structure(s))?;
    Ok(())
}
