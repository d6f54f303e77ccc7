//! JSON instance files.
//!
//! ```json
//! {"n": 2, "constraints": [{"scope": [0], "weight": "3"}, {"scope": [0, 1], "weight": "-2"}]}
//! ```
//!
//! Indices are 0-based. Weights are decimal strings so that arbitrarily large
//! values survive the round trip. An optional `metadata` object is carried
//! through untouched.
//!
//! Matoušek landscapes are stored by their scopes instead:
//!
//! ```json
//! {"n": 2, "scopes": [[0], [0, 1]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;
use crate::error::CoreError;
use crate::fitness::FitnessValue;
use crate::generators::{Matousek, MatousekSpec};
use crate::instance::{Landscape, VcspInstance};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRecord {
    pub scope: Vec<usize>,
    pub weight: FitnessValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub constraints: Vec<ConstraintRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl InstanceFile {
    /// Unary constraints by index, then binary constraints in lexicographic scope order.
    pub fn from_instance(c: &VcspInstance, metadata: Option<serde_json::Value>) -> Self {
        let mut constraints: Vec<ConstraintRecord> = c
            .unary_constraints()
            .map(|(i, w)| ConstraintRecord {
                scope: vec![i],
                weight: w.clone(),
            })
            .collect();
        constraints.extend(c.binary_constraints().map(|((i, j), w)| ConstraintRecord {
            scope: vec![i, j],
            weight: w.clone(),
        }));
        InstanceFile {
            n: c.n(),
            constraints,
            metadata,
        }
    }

    pub fn to_instance(&self) -> Result<VcspInstance, CoreError> {
        let mut c = VcspInstance::new(self.n);
        for r in &self.constraints {
            c.add_constraint(&r.scope, r.weight.clone())?;
        }
        Ok(c)
    }
}

pub fn instance_to_json(c: &VcspInstance, metadata: Option<serde_json::Value>) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(c, metadata))
        .expect("instance serializes")
}

/// Parses an instance file, returning the instance and its metadata block.
pub fn instance_from_json(
    text: &str,
) -> Result<(VcspInstance, Option<serde_json::Value>), CoreError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CoreError::Format(e.to_string()))?;
    let c = file.to_instance()?;
    Ok((c, file.metadata))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct MatousekFile {
    n: usize,
    scopes: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<serde_json::Value>,
}

/// Any landscape that can be read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLandscape {
    Vcsp(VcspInstance),
    Matousek(Matousek),
}

impl AnyLandscape {
    pub fn as_vcsp(&self) -> Option<&VcspInstance> {
        match self {
            AnyLandscape::Vcsp(c) => Some(c),
            AnyLandscape::Matousek(_) => None,
        }
    }
}

impl Landscape for AnyLandscape {
    fn dim(&self) -> usize {
        match self {
            AnyLandscape::Vcsp(c) => c.dim(),
            AnyLandscape::Matousek(m) => m.dim(),
        }
    }

    fn fitness(&self, x: &Assignment) -> FitnessValue {
        match self {
            AnyLandscape::Vcsp(c) => c.fitness(x),
            AnyLandscape::Matousek(m) => m.fitness(x),
        }
    }

    fn flip_gain(&self, x: &Assignment, i: usize) -> FitnessValue {
        match self {
            AnyLandscape::Vcsp(c) => c.flip_gain(x, i),
            AnyLandscape::Matousek(m) => m.flip_gain(x, i),
        }
    }
}

pub fn matousek_to_json(m: &Matousek, metadata: Option<serde_json::Value>) -> String {
    let spec = m.spec();
    let file = MatousekFile {
        n: spec.n,
        scopes: spec.scopes.clone(),
        metadata,
    };
    serde_json::to_string_pretty(&file).expect("scopes serialize")
}

pub fn landscape_to_json(f: &AnyLandscape, metadata: Option<serde_json::Value>) -> String {
    match f {
        AnyLandscape::Vcsp(c) => instance_to_json(c, metadata),
        AnyLandscape::Matousek(m) => matousek_to_json(m, metadata),
    }
}

/// Reads either file kind. A top-level `scopes` field marks a Matoušek landscape.
pub fn landscape_from_json(
    text: &str,
) -> Result<(AnyLandscape, Option<serde_json::Value>), CoreError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CoreError::Format(e.to_string()))?;
    if value.get("scopes").is_some() {
        let file: MatousekFile =
            serde_json::from_value(value).map_err(|e| CoreError::Format(e.to_string()))?;
        let m = Matousek::new(MatousekSpec {
            n: file.n,
            scopes: file.scopes,
        })
        .map_err(|e| CoreError::Format(e.to_string()))?;
        Ok((AnyLandscape::Matousek(m), file.metadata))
    } else {
        let file: InstanceFile =
            serde_json::from_value(value).map_err(|e| CoreError::Format(e.to_string()))?;
        Ok((AnyLandscape::Vcsp(file.to_instance()?), file.metadata))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_large_weights() {
        let big: FitnessValue = "-123456789012345678901234567890".parse().unwrap();
        let mut c = VcspInstance::new(3);
        c.add_unary(0, 3).unwrap();
        c.add_binary(2, 1, big.clone()).unwrap();
        let text = instance_to_json(&c, Some(serde_json::json!({"family": "test"})));
        assert!(text.contains("\"-123456789012345678901234567890\""));
        let (d, meta) = instance_from_json(&text).unwrap();
        assert_eq!(c, d);
        assert_eq!(d.binary(1, 2), big);
        assert_eq!(meta.unwrap()["family"], "test");
    }

    #[test]
    fn rejects_bad_files() {
        let dup =
            r#"{"n":2,"constraints":[{"scope":[0,1],"weight":"1"},{"scope":[1,0],"weight":"2"}]}"#;
        assert_eq!(
            instance_from_json(dup).unwrap_err(),
            CoreError::DuplicateScope(vec![0, 1])
        );
        let zero = r#"{"n":2,"constraints":[{"scope":[0],"weight":"0"}]}"#;
        assert_eq!(
            instance_from_json(zero).unwrap_err(),
            CoreError::ZeroWeight(vec![0])
        );
        let arity = r#"{"n":3,"constraints":[{"scope":[0,1,2],"weight":"1"}]}"#;
        assert!(matches!(
            instance_from_json(arity),
            Err(CoreError::BadScope(_))
        ));
        assert!(matches!(
            instance_from_json("{\"n\":1}"),
            Err(CoreError::Format(_))
        ));
        let numeric = r#"{"n":1,"constraints":[{"scope":[0],"weight":"1.5"}]}"#;
        assert!(matches!(
            instance_from_json(numeric),
            Err(CoreError::Format(_))
        ));
    }

    #[test]
    fn landscape_files() {
        let m = Matousek::new(MatousekSpec {
            n: 3,
            scopes: vec![vec![0], vec![0, 1], vec![1, 2]],
        })
        .unwrap();
        let text = matousek_to_json(&m, None);
        let (back, meta) = landscape_from_json(&text).unwrap();
        assert_eq!(back, AnyLandscape::Matousek(m));
        assert!(meta.is_none());
        let mut c = VcspInstance::new(2);
        c.add_binary(0, 1, 4).unwrap();
        let (back, _) = landscape_from_json(&instance_to_json(&c, None)).unwrap();
        assert_eq!(back.as_vcsp(), Some(&c));
        assert!(landscape_from_json(r#"{"n":2,"scopes":[[1],[1]]}"#).is_err());
    }
}
