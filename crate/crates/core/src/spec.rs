//! Model specifications: which graphon to sample, from which measure, with
//! which seed.
//!
//! Text form: `KIND[:ARG][@MEASURE]` where `KIND` is `er:P`,
//! `line-universal`, `line-trianglefree`, `ksfree:S` or `step:PATH`, and the
//! optional measure uses the [`VertexMeasure`] text form.

use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphon::{parse_number, Graphon, StepGraphon, VertexMeasure};
use crate::intervals::{fmt_rational, Rational};
use crate::line_graph::LineMode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Er(Rational),
    LineUniversal,
    LineTriangleFree,
    KsFree(usize),
    Step(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Overrides the kind's default measure.
    pub measure: Option<VertexMeasure>,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self { kind, measure: None, seed: 0 }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (model, measure) = match text.split_once('@') {
            Some((model, m)) => (model, Some(m.parse::<VertexMeasure>()?)),
            None => (text, None),
        };
        let (name, arg) = match model.trim().split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (model.trim(), None),
        };
        let kind = match (name, arg) {
            ("er", Some(p)) => ModelKind::Er(parse_number(p)?),
            ("line-universal", None) => ModelKind::LineUniversal,
            ("line-trianglefree", None) => ModelKind::LineTriangleFree,
            ("ksfree", Some(s)) => ModelKind::KsFree(s.parse().map_err(|_| Error::Spec(format!("bad s `{s}`")))?),
            ("step", Some(path)) => ModelKind::Step(PathBuf::from(path)),
            _ => return Err(Error::Spec(format!("unknown model `{text}`"))),
        };
        let spec = Self { kind, measure, seed: 0 };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        match &self.kind {
            ModelKind::Er(p) => Graphon::constant(p.clone()).map(|_| ()),
            ModelKind::KsFree(s) if *s < 4 => Err(Error::Spec(format!("ksfree needs s >= 4, got {s}"))),
            _ => Ok(()),
        }
    }

    /// The graphon and vertex measure, reading the step file if any.
    pub fn build(&self) -> Result<(Graphon, VertexMeasure)> {
        self.validate()?;
        let graphon = match &self.kind {
            ModelKind::Er(p) => Graphon::constant(p.clone())?,
            ModelKind::LineUniversal => Graphon::line(LineMode::Plain),
            ModelKind::LineTriangleFree => Graphon::line(LineMode::TriangleFree),
            ModelKind::KsFree(s) => Graphon::plane(*s)?,
            ModelKind::Step(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
                Graphon::Step(StepGraphon::from_json(&text)?)
            }
        };
        let measure = match (&self.measure, &graphon) {
            (Some(m), _) => m.clone(),
            (None, Graphon::Step(s)) => VertexMeasure::blocks(s.masses().to_vec())?,
            (None, _) => VertexMeasure::default_line(),
        };
        graphon.check_compatible(&measure)?;
        Ok((graphon, measure))
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModelKind::Er(p) => write!(f, "er:{}", fmt_rational(p))?,
            ModelKind::LineUniversal => write!(f, "line-universal")?,
            ModelKind::LineTriangleFree => write!(f, "line-trianglefree")?,
            ModelKind::KsFree(s) => write!(f, "ksfree:{s}")?,
            ModelKind::Step(p) => write!(f, "step:{}", p.display())?,
        }
        if let Some(m) = &self.measure {
            write!(f, "@{m}")?;
        }
        Ok(())
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
