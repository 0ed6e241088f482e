//! JSON and CSV encodings of posets, labels, co-ideals, class functions,
//! species elements and supercharacter tables.
//!
//! Atom labels may be written as JSON strings or integers on input; output
//! always uses strings. Every list is emitted in canonical order, so equal
//! values serialize to identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde::de::Deserializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use superpattern_core::group::GroupElement;
use superpattern_core::scalar::Rf;
use superpattern_core::supercharacter::DeterminantReport;
use superpattern_core::{
    Atom, AtomSet, Basis, BasisKey, ClassFunction, CoIdeal, Interval, NNPartition, PatternGroup, Poset,
    SpeciesElement, TensorElement,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] superpattern_core::Error),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

/// An atom label given as a JSON string or integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(Label(s)),
            Value::Number(n) => Ok(Label(n.to_string())),
            other => Err(serde::de::Error::custom(format!("atom label must be a string or integer, got {other}"))),
        }
    }
}

impl From<&Atom> for Label {
    fn from(a: &Atom) -> Self {
        Label(a.as_str().to_owned())
    }
}

/// `{"elements": [...], "relations": [[lo, hi], ...]}`; relations generate
/// the order and are closed transitively on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<Label>,
    #[serde(default)]
    pub relations: Vec<[Label; 2]>,
}

impl PosetJson {
    /// Elements in sorted order with the cover relations.
    pub fn encode(p: &Poset) -> Self {
        PosetJson {
            elements: p.atoms().iter().map(Label::from).collect(),
            relations: p.covers().iter().map(|(a, b)| [a.into(), b.into()]).collect(),
        }
    }

    pub fn decode(&self) -> Result<Poset> {
        Ok(Poset::new(
            self.elements.iter().map(|l| l.0.as_str()),
            self.relations.iter().map(|[a, b]| (a.0.as_str(), b.0.as_str())),
        )?)
    }
}

/// A list of `[lo, hi]` pairs, used for both labels and co-ideals.
pub type PairsJson = Vec<[Label; 2]>;

pub fn encode_pairs(ivs: &[Interval]) -> PairsJson {
    ivs.iter().map(|iv| [(&iv.lo).into(), (&iv.hi).into()]).collect()
}

fn decode_pairs(pairs: &PairsJson) -> Vec<Interval> {
    pairs.iter().map(|[a, b]| Interval::new(a.0.as_str(), b.0.as_str())).collect()
}

pub fn decode_label(r: &Poset, pairs: &PairsJson) -> Result<NNPartition> {
    Ok(NNPartition::new(r, decode_pairs(pairs))?)
}

pub fn decode_coideal(r: &Poset, pairs: &PairsJson) -> Result<CoIdeal> {
    Ok(CoIdeal::new(r, decode_pairs(pairs))?)
}

/// Compact one-line JSON of a label, used as CSV row and column headers.
pub fn label_string(lambda: &NNPartition) -> String {
    serde_json::to_string(&encode_pairs(lambda.arcs())).expect("label serialization is infallible")
}

/// How scalars are rendered: canonical symbolic strings, or values at a
/// fixed rational `q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum QMode {
    #[default]
    Symbolic,
    Concrete(BigRational),
}

impl QMode {
    pub fn render(&self, c: &Rf) -> Result<String> {
        match self {
            QMode::Symbolic => Ok(c.render()),
            QMode::Concrete(q) => Ok(c.evaluate(q)?.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub ambient: PosetJson,
    pub basis: String,
    pub label: PairsJson,
    pub coeff: String,
}

/// `{"terms": [...]}` with the ground set and basis repeated at top level so
/// that the zero element also round-trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<Vec<Label>>,
    pub terms: Vec<TermJson>,
}

fn encode_key(key: &BasisKey) -> (PosetJson, PairsJson) {
    (PosetJson::encode(&key.ambient), encode_pairs(key.label.arcs()))
}

fn decode_key(ambient: &PosetJson, label: &PairsJson) -> Result<BasisKey> {
    let ambient = ambient.decode()?;
    let label = decode_label(&ambient, label)?;
    Ok(BasisKey::new(ambient, label)?)
}

impl SpeciesJson {
    pub fn encode(x: &SpeciesElement, q: &QMode) -> Result<Self> {
        let basis = x.basis().name().to_owned();
        let terms = x
            .terms()
            .iter()
            .map(|(key, c)| {
                let (ambient, label) = encode_key(key);
                Ok(TermJson {
                    ambient,
                    basis: basis.clone(),
                    label,
                    coeff: q.render(c)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SpeciesJson {
            basis: Some(basis),
            ground: Some(x.ground().iter().map(Label::from).collect()),
            terms,
        })
    }

    pub fn decode(&self) -> Result<SpeciesElement> {
        let basis = match (&self.basis, self.terms.first()) {
            (Some(b), _) => b.clone(),
            (None, Some(t)) => t.basis.clone(),
            (None, None) => return Err(FormatError::Invalid("an element without terms needs a \"basis\" field".into())),
        };
        let basis = Basis::from_name(&basis)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        let mut ground: Option<AtomSet> = self
            .ground
            .as_ref()
            .map(|g| g.iter().map(|l| Atom::new(&l.0)).collect());
        for t in &self.terms {
            if Basis::from_name(&t.basis)? != basis {
                return Err(FormatError::Invalid("terms mix several bases".into()));
            }
            let key = decode_key(&t.ambient, &t.label)?;
            match &ground {
                Some(g) if *g != key.ground() => {
                    return Err(FormatError::Invalid("term ambients live on different atom sets".into()));
                }
                Some(_) => {}
                None => ground = Some(key.ground()),
            }
            let coeff: Rf = t.coeff.parse()?;
            terms.push((key, coeff));
        }
        Ok(SpeciesElement::from_terms(ground.unwrap_or_default(), basis, terms)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub ambient: PosetJson,
    pub label: PairsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub factors: Vec<FactorJson>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub basis: String,
    pub blocks: Vec<Vec<Label>>,
    pub terms: Vec<TensorTermJson>,
}

impl TensorJson {
    pub fn encode(t: &TensorElement, q: &QMode) -> Result<Self> {
        let terms = t
            .terms()
            .iter()
            .map(|(keys, c)| {
                let factors = keys
                    .iter()
                    .map(|k| {
                        let (ambient, label) = encode_key(k);
                        FactorJson { ambient, label }
                    })
                    .collect();
                Ok(TensorTermJson {
                    factors,
                    coeff: q.render(c)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(TensorJson {
            basis: t.basis().name().to_owned(),
            blocks: t.blocks().iter().map(|b| b.iter().map(Label::from).collect()).collect(),
            terms,
        })
    }

    pub fn decode(&self) -> Result<TensorElement> {
        let basis = Basis::from_name(&self.basis)?;
        let blocks: Vec<AtomSet> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|l| Atom::new(&l.0)).collect())
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.factors.len() != blocks.len() {
                return Err(FormatError::Invalid("tensor term has the wrong number of factors".into()));
            }
            let keys = t
                .factors
                .iter()
                .map(|f| decode_key(&f.ambient, &f.label))
                .collect::<Result<Vec<_>>>()?;
            terms.push((keys, t.coeff.parse::<Rf>()?));
        }
        Ok(TensorElement::from_terms(blocks, basis, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTermJson {
    pub label: PairsJson,
    pub coeff: String,
}

/// A class function on `UT_R` in one of the four bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunctionJson {
    pub reference: PosetJson,
    pub basis: String,
    pub terms: Vec<ClassTermJson>,
}

impl ClassFunctionJson {
    pub fn encode(f: &ClassFunction, q: &QMode) -> Result<Self> {
        let terms = f
            .coeffs()
            .iter()
            .map(|(l, c)| {
                Ok(ClassTermJson {
                    label: encode_pairs(l.arcs()),
                    coeff: q.render(c)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ClassFunctionJson {
            reference: PosetJson::encode(f.reference()),
            basis: f.basis().name().to_owned(),
            terms,
        })
    }

    pub fn decode(&self) -> Result<ClassFunction> {
        let r = self.reference.decode()?;
        let basis = Basis::from_name(&self.basis)?;
        let coeffs = self
            .terms
            .iter()
            .map(|t| Ok((decode_label(&r, &t.label)?, t.coeff.parse::<Rf>()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction::new(&r, basis, coeffs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminantJson {
    pub formula: String,
    pub direct: String,
    pub sign: Option<i8>,
}

impl DeterminantJson {
    pub fn encode(d: &DeterminantReport, q: &QMode) -> Result<Self> {
        Ok(DeterminantJson {
            formula: q.render(&d.formula)?,
            direct: q.render(&d.direct)?,
            sign: d.sign(),
        })
    }
}

/// Rows are supercharacters `χ^λ`, columns superclasses `μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableJson {
    pub poset: PosetJson,
    pub labels: Vec<PairsJson>,
    pub rows: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<DeterminantJson>,
}

/// Renders every entry of a square table.
pub fn render_rows(entries: &[Vec<Rf>], q: &QMode) -> Result<Vec<Vec<String>>> {
    entries
        .iter()
        .map(|row| row.iter().map(|c| q.render(c)).collect())
        .collect()
}

/// CSV with a header row of serialized labels and the row label first.
pub fn table_csv(labels: &[NNPartition], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["label".to_owned()];
    header.extend(labels.iter().map(label_string));
    w.write_record(&header)?;
    for (l, row) in labels.iter().zip(rows) {
        let mut rec = vec![label_string(l)];
        rec.extend(row.iter().cloned());
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// `{"[1,3]": 2, ...}`, listing only nonzero entries.
pub fn group_element_json(group: &PatternGroup, g: &GroupElement) -> BTreeMap<String, u32> {
    group
        .entries_map(g)
        .into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|(iv, v)| (format!("[{},{}]", iv.lo, iv.hi), v))
        .collect()
}

/// Reads a JSON argument that is either a path to a file or inline JSON.
pub fn read_json_arg<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: arg.to_owned(),
            source,
        })?
    } else {
        arg.to_owned()
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn read_poset(arg: &str) -> Result<Poset> {
    read_json_arg::<PosetJson>(arg)?.decode()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
