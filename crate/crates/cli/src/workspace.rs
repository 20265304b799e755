//! Loading and validating input documents.

use std::path::Path;
use std::sync::Arc;

use linf_core::gm::{SimplicialVectorSpace, TransferCertificate};
use linf_core::io::{
    AlgebraDoc, CertificateDoc, ElementDoc, IoError, MorphismDoc, SimplexDoc, SimplicialSpaceDoc,
};
use linf_core::slie::{Element, InftyMorphism, SLieAlgebra};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

pub fn fail<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError::Message(msg.into()))
}

pub enum Loaded {
    Algebra(Arc<SLieAlgebra>),
    Morphism(InftyMorphism),
    Certificate(Box<TransferCertificate>),
    Simplex(SimplexDoc),
    Space(SimplicialVectorSpace),
}

/// Every input file, parsed and validated at the requested truncation.
pub struct Workspace {
    pub items: Vec<Loaded>,
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Message(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::Message(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, InputError> {
    Ok(serde_json::from_value(v).map_err(IoError::from)?)
}

const ENVELOPE_KEYS: [&str; 5] = ["certificate", "simplex", "edge", "triangle", "composite"];

fn classify(v: Value, truncation: Option<u32>, p: &Path) -> Result<Loaded, InputError> {
    let Some(obj) = v.as_object() else {
        return fail(format!("{}: expected a JSON object", p.display()));
    };
    Ok(if obj.contains_key("taylor") {
        Loaded::Morphism(parse::<MorphismDoc>(v)?.to_morphism(truncation)?)
    } else if obj.contains_key("outcome") {
        Loaded::Certificate(Box::new(parse::<CertificateDoc>(v)?.to_certificate()?))
    } else if obj.contains_key("dims") {
        Loaded::Space(parse::<SimplicialSpaceDoc>(v)?.to_space()?)
    } else if obj.contains_key("algebra") {
        Loaded::Simplex(parse::<SimplexDoc>(v)?)
    } else {
        Loaded::Algebra(Arc::new(parse::<AlgebraDoc>(v)?.to_algebra(truncation)?))
    })
}

impl Workspace {
    pub fn load(paths: &[std::path::PathBuf], truncation: Option<u32>) -> Result<Self, InputError> {
        let mut items = Vec::new();
        for p in paths {
            let v = read_json(p)?;
            if v.get("command").is_some() {
                // A result document from an earlier run: load what it carries.
                for key in ENVELOPE_KEYS {
                    if let Some(inner) = v.get(key) {
                        if !inner.is_null() {
                            items.push(classify(inner.clone(), truncation, p)?);
                        }
                    }
                }
                continue;
            }
            items.push(classify(v, truncation, p)?);
        }
        Ok(Workspace { items })
    }

    pub fn algebra(&self) -> Result<Arc<SLieAlgebra>, InputError> {
        self.items
            .iter()
            .find_map(|i| match i {
                Loaded::Algebra(a) => Some(a.clone()),
                _ => None,
            })
            .ok_or_else(|| InputError::Message("this command needs an algebra --input".into()))
    }

    pub fn morphism(&self) -> Result<&InftyMorphism, InputError> {
        self.items
            .iter()
            .find_map(|i| match i {
                Loaded::Morphism(u) => Some(u),
                _ => None,
            })
            .ok_or_else(|| InputError::Message("this command needs a morphism --input".into()))
    }
}

/// An element given inline or as a path, as an element or simplex document.
pub fn element_arg(alg: &SLieAlgebra, arg: &str) -> Result<Element, InputError> {
    let v: Value = if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg)
            .map_err(|e| InputError::Message(format!("inline element: {e}")))?
    } else {
        read_json(Path::new(arg))?
    };
    let v = match v.get("command") {
        Some(_) => ENVELOPE_KEYS
            .iter()
            .find_map(|k| v.get(*k).filter(|x| !x.is_null()).cloned())
            .ok_or_else(|| InputError::Message("result document carries no simplex".into()))?,
        None => v,
    };
    if v.get("algebra").is_some() {
        Ok(parse::<SimplexDoc>(v)?.to_element(alg)?)
    } else {
        Ok(parse::<ElementDoc>(v)?.to_element(alg)?)
    }
}
