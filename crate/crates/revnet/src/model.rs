//! Versioned JSON persistence of trained models.

use serde::{Deserialize, Serialize};

use revnet_core::features::Feature;
use revnet_core::svr::{Imputer, SvrError, SvrModel};

pub const FORMAT: &str = "revnet-svr";
pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported model file {format:?} version {version}")]
    Version { format: String, version: u32 },
    #[error("model feature {0:?} is not a known feature code")]
    UnknownFeature(String),
    #[error(transparent)]
    Svr(#[from] SvrError),
}

/// A trained model plus the imputation it expects.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub model: SvrModel,
    pub imputer: Imputer,
    pub training_rows: usize,
}

impl ModelFile {
    pub fn new(model: SvrModel, imputer: Imputer, training_rows: usize) -> Self {
        ModelFile {
            format: String::from(FORMAT),
            version: VERSION,
            model,
            imputer,
            training_rows,
        }
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut v = serde_json::to_vec_pretty(self).expect("model serializes");
        v.push(b'\n');
        v
    }

    pub fn from_json(bytes: &[u8]) -> Result<ModelFile, ModelError> {
        let m: ModelFile = serde_json::from_slice(bytes)?;
        if m.format != FORMAT || m.version != VERSION {
            return Err(ModelError::Version {
                format: m.format,
                version: m.version,
            });
        }
        m.features()?;
        Ok(m)
    }

    pub fn features(&self) -> Result<Vec<Feature>, ModelError> {
        self.model
            .feature_names
            .iter()
            .map(|n| Feature::from_code(n).ok_or_else(|| ModelError::UnknownFeature(n.clone())))
            .collect()
    }

    /// Impute and predict rows given in the model's feature order.
    pub fn predict(&self, rows: &[Vec<Option<f64>>]) -> Result<Vec<f64>, ModelError> {
        let filled: Vec<Vec<f64>> = rows.iter().map(|r| self.imputer.transform(r)).collect();
        Ok(self.model.predict(&filled)?)
    }
}
