//! JSON file formats.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`); plain JSON integers
//! are accepted on input. Letters in words are 1-based, group words are
//! signed 1-based indices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::free_module::FreeModule;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::linrep::LinRep;
use crate::pmu::{AlexanderPoly, PmuModule};
use crate::quasidet::SeriesMatrix;
use crate::series::{GroupWord, TruncSeries, Word};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Text(s) => parse_rational(s),
        }
    }

    fn from_rational(q: &Rational) -> Self {
        Num::Text(format_rational(q))
    }
}

/// A vector given either flat or as a column of one-element rows.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum VecDoc {
    Flat(Vec<Num>),
    Column(Vec<[Num; 1]>),
}

impl VecDoc {
    fn to_vec(&self) -> Result<Vec<Rational>> {
        match self {
            VecDoc::Flat(v) => v.iter().map(Num::to_rational).collect(),
            VecDoc::Column(v) => v.iter().map(|[x]| x.to_rational()).collect(),
        }
    }
}

fn nums(v: &[Rational]) -> Vec<Num> {
    v.iter().map(Num::from_rational).collect()
}

fn matrix_doc(m: &Matrix) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| nums(r)).collect()
}

fn matrix_from_doc(rows: &[Vec<Num>], dim: usize) -> Result<Matrix> {
    if rows.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
    }
    if dim == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(Num::to_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(rows)?;
    if m.cols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: m.cols() });
    }
    Ok(m)
}

fn word_from_doc(letters: &[usize], mu: usize) -> Result<Word> {
    let w = letters
        .iter()
        .map(|&k| {
            if k == 0 {
                Err(Error::Parse("letters are 1-based".into()))
            } else {
                Ok(k - 1)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let w = Word::new(w);
    w.check_alphabet(mu)?;
    Ok(w)
}

fn word_doc(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|&a| a + 1).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermDoc {
    word: Vec<usize>,
    coeff: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SeriesDoc {
    mu: usize,
    order: usize,
    terms: Vec<TermDoc>,
}

fn terms_doc(s: &TruncSeries) -> Vec<TermDoc> {
    s.terms()
        .map(|(w, c)| TermDoc { word: word_doc(w), coeff: Num::from_rational(c) })
        .collect()
}

fn series_from_terms(mu: usize, order: usize, terms: &[TermDoc]) -> Result<TruncSeries> {
    let terms = terms
        .iter()
        .map(|t| Ok((word_from_doc(&t.word, mu)?, t.coeff.to_rational()?)))
        .collect::<Result<Vec<_>>>()?;
    TruncSeries::from_terms(mu, order, terms)
}

#[derive(Clone, Debug, Deserialize)]
struct LinRepDoc {
    mu: usize,
    dim: usize,
    init: VecDoc,
    trans: Vec<Vec<Vec<Num>>>,
    fin: VecDoc,
}

#[derive(Serialize)]
struct LinRepOut {
    mu: usize,
    dim: usize,
    init: Vec<Num>,
    trans: Vec<Vec<Vec<Num>>>,
    fin: Vec<[Num; 1]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FreeModuleDoc {
    kind: String,
    mu: usize,
    dim: usize,
    matrices: Vec<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PmuDoc {
    kind: String,
    mu: usize,
    dim: usize,
    z: Vec<Vec<Num>>,
    pi: Vec<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AlexanderDoc {
    delta: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SeriesMatrixDoc {
    size: usize,
    mu: usize,
    order: usize,
    entries: Vec<Vec<Vec<TermDoc>>>,
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

/// Any of the input documents understood by this crate.
#[derive(Clone, Debug)]
pub enum Document {
    Series(TruncSeries),
    LinRep(LinRep),
    FreeModule(FreeModule),
    PmuModule(PmuModule),
    Alexander(AlexanderPoly),
    SeriesMatrix(SeriesMatrix),
    GroupWord(GroupWord),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Series(_) => "series",
            Document::LinRep(_) => "linrep",
            Document::FreeModule(_) => "free_module",
            Document::PmuModule(_) => "pmu_module",
            Document::Alexander(_) => "alexander",
            Document::SeriesMatrix(_) => "series_matrix",
            Document::GroupWord(_) => "group_word",
        }
    }
}

/// Detects the document kind from its fields and parses it.
pub fn parse_document(text: &str) -> Result<Document> {
    let v = parse_json(text)?;
    if v.is_array() {
        let signed: Vec<i64> = from_value(v)?;
        return Ok(Document::GroupWord(GroupWord::from_signed(&signed)?));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("free_module") => return Ok(Document::FreeModule(free_module_from_value(v)?)),
        Some("pmu_module") => return Ok(Document::PmuModule(pmu_from_value(v)?)),
        Some(other) => return Err(Error::Parse(format!("unknown kind {other:?}"))),
        None => {}
    }
    if obj.contains_key("delta") {
        Ok(Document::Alexander(alexander_from_value(v)?))
    } else if obj.contains_key("trans") {
        Ok(Document::LinRep(linrep_from_value(v)?))
    } else if obj.contains_key("entries") {
        Ok(Document::SeriesMatrix(series_matrix_from_value(v)?))
    } else if obj.contains_key("terms") {
        Ok(Document::Series(series_from_value(v)?))
    } else {
        Err(Error::Parse("unrecognized document".into()))
    }
}

fn series_from_value(v: Value) -> Result<TruncSeries> {
    let doc: SeriesDoc = from_value(v)?;
    series_from_terms(doc.mu, doc.order, &doc.terms)
}

pub fn parse_series(text: &str) -> Result<TruncSeries> {
    series_from_value(parse_json(text)?)
}

pub fn series_to_json(s: &TruncSeries) -> String {
    to_string(&SeriesDoc { mu: s.mu(), order: s.order(), terms: terms_doc(s) })
}

fn linrep_from_value(v: Value) -> Result<LinRep> {
    let doc: LinRepDoc = from_value(v)?;
    if doc.trans.len() != doc.mu {
        return Err(Error::AlphabetMismatch { left: doc.mu, right: doc.trans.len() });
    }
    let trans = doc
        .trans
        .iter()
        .map(|m| matrix_from_doc(m, doc.dim))
        .collect::<Result<Vec<_>>>()?;
    LinRep::new(doc.mu, doc.init.to_vec()?, trans, doc.fin.to_vec()?)
}

pub fn parse_linrep(text: &str) -> Result<LinRep> {
    linrep_from_value(parse_json(text)?)
}

pub fn linrep_to_json(r: &LinRep) -> String {
    to_string(&LinRepOut {
        mu: r.mu(),
        dim: r.dim(),
        init: nums(r.init()),
        trans: r.trans().iter().map(matrix_doc).collect(),
        fin: r.fin().iter().map(|c| [Num::from_rational(c)]).collect(),
    })
}

fn free_module_from_value(v: Value) -> Result<FreeModule> {
    let doc: FreeModuleDoc = from_value(v)?;
    if doc.matrices.len() != doc.mu {
        return Err(Error::AlphabetMismatch { left: doc.mu, right: doc.matrices.len() });
    }
    if doc.mu == 0 {
        return Ok(FreeModule::zero(0));
    }
    let actions = doc
        .matrices
        .iter()
        .map(|m| matrix_from_doc(m, doc.dim))
        .collect::<Result<Vec<_>>>()?;
    FreeModule::new(doc.dim, actions)
}

pub fn parse_free_module(text: &str) -> Result<FreeModule> {
    free_module_from_value(parse_json(text)?)
}

pub fn free_module_to_json(m: &FreeModule) -> String {
    to_string(&FreeModuleDoc {
        kind: "free_module".into(),
        mu: m.mu(),
        dim: m.dim(),
        matrices: m.actions().iter().map(matrix_doc).collect(),
    })
}

fn pmu_from_value(v: Value) -> Result<PmuModule> {
    let doc: PmuDoc = from_value(v)?;
    if doc.pi.len() != doc.mu {
        return Err(Error::AlphabetMismatch { left: doc.mu, right: doc.pi.len() });
    }
    let z = matrix_from_doc(&doc.z, doc.dim)?;
    let pi = doc
        .pi
        .iter()
        .map(|m| matrix_from_doc(m, doc.dim))
        .collect::<Result<Vec<_>>>()?;
    PmuModule::new(z, pi)
}

pub fn parse_pmu_module(text: &str) -> Result<PmuModule> {
    pmu_from_value(parse_json(text)?)
}

pub fn pmu_module_to_json(m: &PmuModule) -> String {
    to_string(&PmuDoc {
        kind: "pmu_module".into(),
        mu: m.mu(),
        dim: m.dim(),
        z: matrix_doc(m.z()),
        pi: m.pi().iter().map(matrix_doc).collect(),
    })
}

fn alexander_from_value(v: Value) -> Result<AlexanderPoly> {
    let doc: AlexanderDoc = from_value(v)?;
    AlexanderPoly::new(doc.delta.iter().map(Num::to_rational).collect::<Result<_>>()?)
}

pub fn parse_alexander(text: &str) -> Result<AlexanderPoly> {
    alexander_from_value(parse_json(text)?)
}

/// Parses a comma-separated coefficient list such as `1,-1,1`.
pub fn parse_coefficient_list(text: &str) -> Result<AlexanderPoly> {
    let coeffs = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    AlexanderPoly::new(coeffs)
}

pub fn alexander_to_json(p: &AlexanderPoly) -> String {
    to_string(&AlexanderDoc { delta: nums(p.coeffs()) })
}

fn series_matrix_from_value(v: Value) -> Result<SeriesMatrix> {
    let doc: SeriesMatrixDoc = from_value(v)?;
    if doc.entries.len() != doc.size {
        return Err(Error::DimensionMismatch { expected: doc.size, found: doc.entries.len() });
    }
    let mut entries = Vec::with_capacity(doc.size * doc.size);
    for row in &doc.entries {
        if row.len() != doc.size {
            return Err(Error::DimensionMismatch { expected: doc.size, found: row.len() });
        }
        for terms in row {
            entries.push(series_from_terms(doc.mu, doc.order, terms)?);
        }
    }
    SeriesMatrix::new(doc.size, doc.mu, doc.order, entries)
}

pub fn parse_series_matrix(text: &str) -> Result<SeriesMatrix> {
    series_matrix_from_value(parse_json(text)?)
}

pub fn series_matrix_to_json(a: &SeriesMatrix) -> String {
    let n = a.size();
    to_string(&SeriesMatrixDoc {
        size: n,
        mu: a.mu(),
        order: a.order(),
        entries: (0..n)
            .map(|i| (0..n).map(|j| terms_doc(a.get(i, j))).collect())
            .collect(),
    })
}

pub fn parse_group_word(text: &str) -> Result<GroupWord> {
    let signed: Vec<i64> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    GroupWord::from_signed(&signed)
}

pub fn group_word_to_json(g: &GroupWord) -> String {
    serde_json::to_string(&g.to_signed()).expect("integers serialize")
}
