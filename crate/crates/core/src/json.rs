//! JSON formats for eigenpairs, spectra, power-spectrum reports and
//! supplied base spectra. Floats are written with 17 significant digits.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphJson, UniformHypergraph};
use crate::power::{CertificationReport, PowerSpectrumResult, SuppliedSpectra};
use crate::spectral::{RootClass, Spectrum};
use crate::tensor::{Eigenpair, Tolerances};

/// A float that serializes as `{:.16e}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        if !self.0.is_finite() {
            return Err(S::Error::custom("non-finite number"));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        if !v.is_finite() {
            return Err(D::Error::custom("non-finite number"));
        }
        Ok(Num(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson {
            re: Num(z.re),
            im: Num(z.im),
        }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re.0, z.im.0)
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        reason: e.to_string(),
    }
}

fn to_text<T: Serialize>(v: &T) -> Result<String> {
    // plain data; the only failure is a non-finite float
    serde_json::to_string_pretty(v).map_err(|_| Error::NonFinite("json output"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenpairJson {
    pub lambda: ComplexJson,
    pub vector: Vec<ComplexJson>,
    pub residual: Num,
}

impl From<&Eigenpair> for EigenpairJson {
    fn from(p: &Eigenpair) -> Self {
        EigenpairJson {
            lambda: p.lambda.into(),
            vector: p.vector.iter().map(|&z| z.into()).collect(),
            residual: Num(p.residual),
        }
    }
}

impl From<EigenpairJson> for Eigenpair {
    fn from(j: EigenpairJson) -> Self {
        Eigenpair {
            lambda: j.lambda.into(),
            vector: j.vector.into_iter().map(Complex64::from).collect(),
            residual: j.residual.0,
        }
    }
}

pub fn eigenpair_to_json(p: &Eigenpair) -> Result<String> {
    to_text(&EigenpairJson::from(p))
}

/// Reads an eigenpair as written. The pair is not re-verified here.
pub fn eigenpair_from_json(text: &str) -> Result<Eigenpair> {
    let j: EigenpairJson = serde_json::from_str(text).map_err(parse_err)?;
    Ok(j.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootClassJson {
    pub c: ComplexJson,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumItemJson {
    Class(RootClassJson),
    Value(ComplexJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub kind: String,
    pub k: Option<usize>,
    pub items: Vec<SpectrumItemJson>,
}

/// A spectrum read back from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumData {
    Values(Vec<Complex64>),
    RootClasses { k: Option<usize>, classes: Vec<RootClass> },
}

pub fn values_to_json(s: &Spectrum<Complex64>) -> Result<String> {
    to_text(&SpectrumJson {
        kind: "values".into(),
        k: None,
        items: s.iter().map(|&z| SpectrumItemJson::Value(z.into())).collect(),
    })
}

pub fn root_classes_to_json(s: &Spectrum<RootClass>) -> Result<String> {
    let orders: Vec<usize> = s.iter().map(|c| c.order).collect();
    let k = orders.first().copied().filter(|o| orders.iter().all(|x| x == o));
    to_text(&SpectrumJson {
        kind: "root_classes".into(),
        k,
        items: s
            .iter()
            .map(|c| {
                SpectrumItemJson::Class(RootClassJson {
                    c: c.base.into(),
                    order: c.order,
                })
            })
            .collect(),
    })
}

pub fn spectrum_from_json(text: &str) -> Result<SpectrumData> {
    let j: SpectrumJson = serde_json::from_str(text).map_err(parse_err)?;
    let bad = |what: &str| Error::Validation(format!("spectrum of kind {:?} holds {what}", j.kind));
    match j.kind.as_str() {
        "values" => j
            .items
            .iter()
            .map(|it| match it {
                SpectrumItemJson::Value(z) => Ok(Complex64::from(*z)),
                SpectrumItemJson::Class(_) => Err(bad("a root class")),
            })
            .collect::<Result<_>>()
            .map(SpectrumData::Values),
        "root_classes" => j
            .items
            .iter()
            .map(|it| match it {
                SpectrumItemJson::Class(c) => RootClass::new(c.c.into(), c.order),
                SpectrumItemJson::Value(_) => Err(bad("a bare value")),
            })
            .collect::<Result<_>>()
            .map(|classes| SpectrumData::RootClasses { k: j.k, classes }),
        other => Err(Error::Validation(format!("unknown spectrum kind {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub subgraph: String,
    pub beta: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportClassJson {
    pub c: ComplexJson,
    pub order: usize,
    pub witness: WitnessJson,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub mode: String,
    pub classes: Vec<ReportClassJson>,
}

impl ReportJson {
    /// Classes of a spectrum; `certified` comes from the report when given.
    pub fn new(res: &PowerSpectrumResult, cert: Option<&CertificationReport>) -> Self {
        ReportJson {
            r: res.r,
            s: res.s,
            k: res.k,
            mode: res.mode.as_str().into(),
            classes: res
                .classes
                .iter()
                .map(|e| ReportClassJson {
                    c: e.class.base.into(),
                    order: e.class.order,
                    witness: WitnessJson {
                        subgraph: e.witness.subgraph.to_string(),
                        beta: e.witness.beta.into(),
                    },
                    certified: cert
                        .and_then(|c| {
                            c.classes
                                .iter()
                                .find(|cc| cc.class.same_as(&e.class, res.tol.dedup))
                        })
                        .map(|cc| cc.certified)
                        .unwrap_or(false),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_text(self)
    }
}

pub fn report_from_json(text: &str) -> Result<ReportJson> {
    let j: ReportJson = serde_json::from_str(text).map_err(parse_err)?;
    if !matches!(j.mode.as_str(), "identity" | "induced" | "general") {
        return Err(Error::Validation(format!("unknown mode {:?}", j.mode)));
    }
    for c in &j.classes {
        RootClass::new(c.c.into(), c.order)?;
        c.witness
            .subgraph
            .parse::<crate::hypergraph::CanonicalForm>()?;
    }
    Ok(j)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuppliedPairJson {
    pub lambda: ComplexJson,
    pub vector: Vec<ComplexJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuppliedEntryJson {
    pub hypergraph: HypergraphJson,
    pub pairs: Vec<SuppliedPairJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuppliedJson {
    pub entries: Vec<SuppliedEntryJson>,
}

/// Reads `{"entries":[{"hypergraph":{…},"pairs":[{"lambda":…,"vector":[…]}]}]}`,
/// verifying every pair.
pub fn supplied_from_json(text: &str, tol: &Tolerances) -> Result<SuppliedSpectra> {
    let j: SuppliedJson = serde_json::from_str(text).map_err(parse_err)?;
    let mut out = SuppliedSpectra::new();
    for entry in j.entries {
        let g = UniformHypergraph::try_from(entry.hypergraph)?;
        for p in entry.pairs {
            let x: Vec<Complex64> = p.vector.into_iter().map(Complex64::from).collect();
            out.insert(&g, p.lambda.into(), &x, tol)?;
        }
    }
    Ok(out)
}
