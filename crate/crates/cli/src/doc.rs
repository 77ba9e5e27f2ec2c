//! JSON document schema (format version "1") for cycles, functions, and
//! integer affine maps.
//!
//! Every rational number is an exact string `"p"` or `"p/q"`; output is
//! always in lowest terms with a positive denominator. Integers (weights,
//! exponents, matrix entries) are accepted both as JSON numbers and as
//! strings, and serialized as numbers whenever they fit in 64 bits.
//!
//! A cycle document lists polyhedral cells by their constraints, with
//! inequalities meaning `normal . x >= rhs` and equalities
//! `normal . x = rhs`, plus a weight table indexing into the cell list.
//! Parsing a cycle document includes the balancing check: a document whose
//! cycle fails validation is rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tropint::cycle::TropicalCycle;
use tropint::function::AffinePiece;
use tropint::polyhedron::HPolyhedron;
use tropint::{
    rat_from_str, rat_to_string, IntegerAffineMap, Int, PiecewiseAffineFunction, Rat,
    TropicalPolynomial,
};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
}

/// An integer that tolerates both JSON numbers and exact strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Number(i64),
    Text(String),
}

impl IntValue {
    fn to_int(&self, path: &str) -> Result<Int, DocError> {
        match self {
            IntValue::Number(n) => Ok(Int::from(*n)),
            IntValue::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| DocError::Schema(format!("{path}: not an integer: {s:?}"))),
        }
    }

    fn from_int(i: &Int) -> IntValue {
        match i64::try_from(i) {
            Ok(n) => IntValue::Number(n),
            Err(_) => IntValue::Text(i.to_string()),
        }
    }
}

fn parse_rat(s: &str, path: &str) -> Result<Rat, DocError> {
    rat_from_str(s).ok_or_else(|| DocError::Schema(format!("{path}: not a rational: {s:?}")))
}

fn parse_rat_vec(v: &[String], n: usize, path: &str) -> Result<Vec<Rat>, DocError> {
    if v.len() != n {
        return Err(DocError::Schema(format!(
            "{path}: expected {n} coordinates, found {}",
            v.len()
        )));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s, &format!("{path}[{i}]")))
        .collect()
}

fn check_version(v: &str, what: &str) -> Result<(), DocError> {
    if v != FORMAT_VERSION {
        return Err(DocError::Schema(format!(
            "{what}.format_version: unsupported version {v:?} (this build reads \"{FORMAT_VERSION}\")"
        )));
    }
    Ok(())
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Schema(format!("{what}: {e}")))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub normal: Vec<String>,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CellDoc {
    #[serde(default)]
    pub inequalities: Vec<ConstraintDoc>,
    #[serde(default)]
    pub equalities: Vec<ConstraintDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimDoc {
    Number(usize),
    Tag(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightDoc {
    pub cell: usize,
    pub weight: IntValue,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleDocument {
    pub format_version: String,
    pub ambient_dim: usize,
    pub dim: DimDoc,
    pub cells: Vec<CellDoc>,
    pub weights: Vec<WeightDoc>,
}

fn cell_from_doc(doc: &CellDoc, ambient: usize, path: &str) -> Result<HPolyhedron, DocError> {
    let read = |list: &[ConstraintDoc], kind: &str| -> Result<Vec<(Vec<Rat>, Rat)>, DocError> {
        list.iter()
            .enumerate()
            .map(|(i, c)| {
                let p = format!("{path}.{kind}[{i}]");
                let normal = parse_rat_vec(&c.normal, ambient, &format!("{p}.normal"))?;
                let rhs = parse_rat(&c.rhs, &format!("{p}.rhs"))?;
                Ok((normal, rhs))
            })
            .collect()
    };
    let ineqs = read(&doc.inequalities, "inequalities")?;
    let eqs = read(&doc.equalities, "equalities")?;
    Ok(HPolyhedron::from_constraints(ambient, ineqs, eqs))
}

fn cell_to_doc(cell: &HPolyhedron) -> CellDoc {
    let write = |list: &[(Vec<Rat>, Rat)]| -> Vec<ConstraintDoc> {
        list.iter()
            .map(|(a, b)| ConstraintDoc {
                normal: a.iter().map(rat_to_string).collect(),
                rhs: rat_to_string(b),
            })
            .collect()
    };
    CellDoc {
        inequalities: write(cell.inequalities()),
        equalities: write(cell.equalities()),
    }
}

fn format_validation(report: &tropint::ValidationReport) -> String {
    let mut parts = Vec::new();
    for (i, j) in &report.face_violations {
        parts.push(format!("cells {i} and {j} do not meet in a common face"));
    }
    for (ridge, defect) in &report.unbalanced_ridges {
        let at = ridge
            .relative_interior_point()
            .map(|p| {
                let coords: Vec<String> = p.iter().map(rat_to_string).collect();
                format!("({})", coords.join(", "))
            })
            .unwrap_or_else(|| "(empty)".to_string());
        let d: Vec<String> = defect.iter().map(rat_to_string).collect();
        parts.push(format!("ridge through {at} is unbalanced, defect ({})", d.join(", ")));
    }
    parts.join("; ")
}

pub fn cycle_from_document(doc: &CycleDocument) -> Result<TropicalCycle, DocError> {
    check_version(&doc.format_version, "cycle")?;
    let ambient = doc.ambient_dim;
    let cells: Vec<HPolyhedron> = doc
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| cell_from_doc(c, ambient, &format!("cells[{i}]")))
        .collect::<Result<_, _>>()?;
    let mut weights = vec![Int::from(0); cells.len()];
    for (i, w) in doc.weights.iter().enumerate() {
        if w.cell >= cells.len() {
            return Err(DocError::Schema(format!(
                "weights[{i}].cell: index {} out of range (document has {} cells)",
                w.cell,
                cells.len()
            )));
        }
        weights[w.cell] += w.weight.to_int(&format!("weights[{i}].weight"))?;
    }
    let facets: Vec<(HPolyhedron, Int)> = cells
        .into_iter()
        .zip(weights)
        .filter(|(_, w)| *w != Int::from(0))
        .collect();
    let cycle = TropicalCycle::from_weighted_cells(ambient, facets)
        .map_err(|e| DocError::Validation(e.to_string()))?;
    let declared = match &doc.dim {
        DimDoc::Number(d) => Some(*d),
        DimDoc::Tag(t) if t == "zero" => None,
        DimDoc::Tag(t) => {
            return Err(DocError::Schema(format!(
                "dim: expected an integer or \"zero\", found {t:?}"
            )))
        }
    };
    if declared != cycle.dim() {
        let found = cycle
            .dim()
            .map(|d| d.to_string())
            .unwrap_or_else(|| "\"zero\"".to_string());
        let stated = declared
            .map(|d| d.to_string())
            .unwrap_or_else(|| "\"zero\"".to_string());
        return Err(DocError::Schema(format!(
            "dim: document declares {stated} but the weighted cells have dimension {found}"
        )));
    }
    let report = cycle.validate();
    if !report.is_valid() {
        return Err(DocError::Validation(format_validation(&report)));
    }
    Ok(cycle)
}

pub fn cycle_to_document(cycle: &TropicalCycle) -> CycleDocument {
    CycleDocument {
        format_version: FORMAT_VERSION.to_string(),
        ambient_dim: cycle.ambient_dim(),
        dim: match cycle.dim() {
            Some(d) => DimDoc::Number(d),
            None => DimDoc::Tag("zero".to_string()),
        },
        cells: cycle.facets().iter().map(|(c, _)| cell_to_doc(c)).collect(),
        weights: cycle
            .facets()
            .iter()
            .enumerate()
            .map(|(i, (_, w))| WeightDoc { cell: i, weight: IntValue::from_int(w) })
            .collect(),
    }
}

pub fn parse_cycle(text: &str) -> Result<TropicalCycle, DocError> {
    cycle_from_document(&from_json::<CycleDocument>(text, "cycle")?)
}

pub fn cycle_to_json(cycle: &TropicalCycle) -> String {
    let mut s = serde_json::to_string_pretty(&cycle_to_document(cycle)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<IntValue>,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceDoc {
    pub cell: CellDoc,
    pub linear: Vec<String>,
    pub constant: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FunctionDocument {
    #[serde(rename = "tropical_polynomial")]
    Polynomial {
        format_version: String,
        ambient_dim: usize,
        terms: Vec<TermDoc>,
    },
    #[serde(rename = "piecewise")]
    Piecewise {
        format_version: String,
        ambient_dim: usize,
        pieces: Vec<PieceDoc>,
    },
}

/// A parsed function keeps its document flavor so that operations which
/// stay inside one flavor (say polynomial pull-backs) can write it back.
#[derive(Debug, Clone)]
pub enum ParsedFunction {
    Polynomial(TropicalPolynomial),
    Piecewise(PiecewiseAffineFunction),
}

impl ParsedFunction {
    pub fn piecewise(&self) -> PiecewiseAffineFunction {
        match self {
            ParsedFunction::Polynomial(p) => p.piecewise(),
            ParsedFunction::Piecewise(f) => f.clone(),
        }
    }
}

pub fn function_from_document(doc: &FunctionDocument) -> Result<ParsedFunction, DocError> {
    match doc {
        FunctionDocument::Polynomial { format_version, ambient_dim, terms } => {
            check_version(format_version, "function")?;
            let parsed: Vec<(Vec<Int>, Rat)> = terms
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let path = format!("terms[{i}]");
                    if t.exponents.len() != *ambient_dim {
                        return Err(DocError::Schema(format!(
                            "{path}.exponents: expected {ambient_dim} entries, found {}",
                            t.exponents.len()
                        )));
                    }
                    let exps: Vec<Int> = t
                        .exponents
                        .iter()
                        .enumerate()
                        .map(|(j, e)| e.to_int(&format!("{path}.exponents[{j}]")))
                        .collect::<Result<_, _>>()?;
                    let coeff = parse_rat(&t.coefficient, &format!("{path}.coefficient"))?;
                    Ok((exps, coeff))
                })
                .collect::<Result<_, _>>()?;
            let p = TropicalPolynomial::new(*ambient_dim, parsed)
                .map_err(|e| DocError::Validation(e.to_string()))?;
            Ok(ParsedFunction::Polynomial(p))
        }
        FunctionDocument::Piecewise { format_version, ambient_dim, pieces } => {
            check_version(format_version, "function")?;
            let parsed: Vec<AffinePiece> = pieces
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let path = format!("pieces[{i}]");
                    let cell = cell_from_doc(&p.cell, *ambient_dim, &format!("{path}.cell"))?;
                    let linear =
                        parse_rat_vec(&p.linear, *ambient_dim, &format!("{path}.linear"))?;
                    let constant = parse_rat(&p.constant, &format!("{path}.constant"))?;
                    Ok(AffinePiece { cell, linear, constant })
                })
                .collect::<Result<_, _>>()?;
            let f = PiecewiseAffineFunction::from_pieces(*ambient_dim, parsed)
                .map_err(|e| DocError::Validation(e.to_string()))?;
            Ok(ParsedFunction::Piecewise(f))
        }
    }
}

pub fn function_to_document(f: &ParsedFunction) -> FunctionDocument {
    match f {
        ParsedFunction::Polynomial(p) => FunctionDocument::Polynomial {
            format_version: FORMAT_VERSION.to_string(),
            ambient_dim: p.ambient_dim(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermDoc {
                    exponents: e.iter().map(IntValue::from_int).collect(),
                    coefficient: rat_to_string(c),
                })
                .collect(),
        },
        ParsedFunction::Piecewise(f) => FunctionDocument::Piecewise {
            format_version: FORMAT_VERSION.to_string(),
            ambient_dim: f.ambient_dim(),
            pieces: f
                .pieces()
                .iter()
                .map(|p| PieceDoc {
                    cell: cell_to_doc(&p.cell),
                    linear: p.linear.iter().map(rat_to_string).collect(),
                    constant: rat_to_string(&p.constant),
                })
                .collect(),
        },
    }
}

pub fn parse_function(text: &str) -> Result<ParsedFunction, DocError> {
    function_from_document(&from_json::<FunctionDocument>(text, "function")?)
}

pub fn function_to_json(f: &ParsedFunction) -> String {
    let mut s = serde_json::to_string_pretty(&function_to_document(f)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDocument {
    pub format_version: String,
    pub matrix: Vec<Vec<IntValue>>,
    pub shift: Vec<String>,
}

pub fn map_from_document(doc: &MapDocument) -> Result<IntegerAffineMap, DocError> {
    check_version(&doc.format_version, "map")?;
    let target = doc.matrix.len();
    if doc.shift.len() != target {
        return Err(DocError::Schema(format!(
            "shift: expected {target} entries to match the matrix rows, found {}",
            doc.shift.len()
        )));
    }
    let source = doc.matrix.first().map_or(0, |r| r.len());
    let mut matrix = Vec::with_capacity(target);
    for (i, row) in doc.matrix.iter().enumerate() {
        if row.len() != source {
            return Err(DocError::Schema(format!(
                "matrix[{i}]: expected {source} entries, found {}",
                row.len()
            )));
        }
        matrix.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| x.to_int(&format!("matrix[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let shift = doc
        .shift
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s, &format!("shift[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerAffineMap::from_integer_matrix(matrix, shift))
}

pub fn map_to_document(m: &IntegerAffineMap) -> MapDocument {
    MapDocument {
        format_version: FORMAT_VERSION.to_string(),
        matrix: m
            .matrix()
            .iter()
            .map(|row| row.iter().map(IntValue::from_int).collect())
            .collect(),
        shift: m.shift().iter().map(rat_to_string).collect(),
    }
}

pub fn parse_map(text: &str) -> Result<IntegerAffineMap, DocError> {
    map_from_document(&from_json::<MapDocument>(text, "map")?)
}

pub fn map_to_json(m: &IntegerAffineMap) -> String {
    let mut s = serde_json::to_string_pretty(&map_to_document(m)).expect("serializable");
    s.push('\n');
    s
}

/// Output of `witness-translate`: the full certificate plus its verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub format_version: String,
    pub cylinder: CycleDocument,
    pub projection: MapDocument,
    pub function: FunctionDocument,
    pub difference: CycleDocument,
    pub verified: bool,
}

/// Output of `simplicial-complete`: the complete simplicial fan (as its
/// maximal cones) and the rewritten cycle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompletionDocument {
    pub format_version: String,
    pub fan_cells: Vec<CellDoc>,
    pub cycle: CycleDocument,
}

/// Output of `bezout`: both sides of the recession-fan product identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BezoutDocument {
    pub format_version: String,
    pub holds: bool,
    pub lhs: CycleDocument,
    pub rhs: CycleDocument,
}

pub fn fan_cells_to_docs(fan: &tropint::PolyhedralComplex) -> Vec<CellDoc> {
    fan.maximal_cells().iter().map(cell_to_doc).collect()
}
