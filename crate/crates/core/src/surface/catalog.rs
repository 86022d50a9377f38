//! The JSON catalog format.
//!
//! ```text
//! {"surfaces": [{"name": "S(A4)", "degree": 5,
//!                "curves": [{"id": 0, "self": -1}, ...],
//!                "intersections": [[0, 3, 1], ...],
//!                "singular_points": [{"type": "A4", "curves": [1, 2, 3, 4]}],
//!                "fan": [[1, 2], ...],
//!                "metadata": {...}}]}
//! ```
//!
//! Intersection triples are `[i, j, mult]` with `i < j` (curve ids) and
//! `mult >= 1`; absent pairs are zero and the diagonal comes from `self`.

use std::collections::BTreeSet;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::model::{Curve, CurveId, Metadata, SingularPoint, SurfaceModel};
use super::validate::{validate, ValidationReport};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("catalog parse error in surface {surface:?}: {message}")]
    Structure { surface: String, message: String },
    #[error("surface {surface:?} failed validation: {report}")]
    Invalid {
        surface: String,
        report: ValidationReport,
    },
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    surfaces: Vec<SurfaceRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceRecord {
    name: String,
    degree: u32,
    #[serde(default)]
    curves: Vec<CurveRecord>,
    #[serde(default)]
    intersections: Vec<[i64; 3]>,
    #[serde(default)]
    singular_points: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fan: Option<Vec<[i64; 2]>>,
    #[serde(default)]
    metadata: Metadata,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveRecord {
    id: u32,
    #[serde(rename = "self")]
    self_intersection: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    #[serde(rename = "type")]
    label: String,
    curves: Vec<u32>,
}

impl SurfaceRecord {
    fn into_model(self) -> Result<SurfaceModel, CatalogError> {
        let structure = |message: String| CatalogError::Structure {
            surface: self.name.clone(),
            message,
        };
        let mut seen = BTreeSet::new();
        for c in &self.curves {
            if !seen.insert(c.id) {
                return Err(structure(format!("duplicate curve id {}", c.id)));
            }
        }
        let curves: Vec<Curve> = self
            .curves
            .iter()
            .map(|c| Curve {
                id: CurveId(c.id),
                self_intersection: c.self_intersection,
            })
            .collect();
        let index = |id: i64| -> Option<usize> {
            u32::try_from(id)
                .ok()
                .and_then(|id| curves.iter().position(|c| c.id == CurveId(id)))
        };

        let n = curves.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, c) in curves.iter().enumerate() {
            matrix[i][i] = c.self_intersection;
        }
        let mut pairs = BTreeSet::new();
        for &[a, b, mult] in &self.intersections {
            if a >= b {
                return Err(structure(format!(
                    "intersection [{a}, {b}, {mult}] needs i < j"
                )));
            }
            if mult < 1 {
                return Err(structure(format!(
                    "intersection [{a}, {b}, {mult}] needs mult >= 1"
                )));
            }
            let (Some(i), Some(j)) = (index(a), index(b)) else {
                return Err(structure(format!(
                    "intersection [{a}, {b}, {mult}] names an unknown curve"
                )));
            };
            if !pairs.insert((a, b)) {
                return Err(structure(format!(
                    "intersection pair ({a}, {b}) listed twice"
                )));
            }
            matrix[i][j] = mult;
            matrix[j][i] = mult;
        }

        let mut singular_points = Vec::with_capacity(self.singular_points.len());
        for p in &self.singular_points {
            let label = p
                .label
                .parse()
                .map_err(|e: super::ade::AdeError| structure(e.to_string()))?;
            singular_points.push(SingularPoint {
                label,
                curve_ids: p.curves.iter().map(|&id| CurveId(id)).collect(),
            });
        }

        Ok(SurfaceModel {
            name: self.name,
            degree: self.degree,
            curves,
            intersections: matrix,
            singular_points,
            fan: self.fan,
            metadata: self.metadata,
        })
    }

    fn from_model(model: &SurfaceModel) -> Self {
        let mut intersections = Vec::new();
        for i in 0..model.curves.len() {
            for j in i + 1..model.curves.len() {
                let mult = model.intersections[i][j];
                if mult != 0 {
                    let (a, b) = (model.curves[i].id.0, model.curves[j].id.0);
                    intersections.push([i64::from(a.min(b)), i64::from(a.max(b)), mult]);
                }
            }
        }
        intersections.sort_unstable();
        SurfaceRecord {
            name: model.name.clone(),
            degree: model.degree,
            curves: model
                .curves
                .iter()
                .map(|c| CurveRecord {
                    id: c.id.0,
                    self_intersection: c.self_intersection,
                })
                .collect(),
            intersections,
            singular_points: model
                .singular_points
                .iter()
                .map(|p| PointRecord {
                    label: p.label.to_string(),
                    curves: p.curve_ids.iter().map(|c| c.0).collect(),
                })
                .collect(),
            fan: model.fan.clone(),
            metadata: model.metadata.clone(),
        }
    }
}

/// Reads a catalog and validates every surface, preserving file order.
pub fn load_catalog<R: Read>(mut source: R) -> Result<Vec<SurfaceModel>, CatalogError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Vec<SurfaceModel>, CatalogError> {
    let models = parse_catalog_unvalidated(text)?;
    for model in &models {
        let report = validate(model);
        if !report.is_valid() {
            return Err(CatalogError::Invalid {
                surface: model.name.clone(),
                report,
            });
        }
    }
    Ok(models)
}

/// Structural parse only; the caller decides what to do with invalid surfaces.
pub fn parse_catalog_unvalidated(text: &str) -> Result<Vec<SurfaceModel>, CatalogError> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut names = BTreeSet::new();
    let mut models = Vec::with_capacity(file.surfaces.len());
    for record in file.surfaces {
        if !names.insert(record.name.clone()) {
            return Err(CatalogError::Structure {
                surface: record.name,
                message: "duplicate surface name".to_string(),
            });
        }
        models.push(record.into_model()?);
    }
    Ok(models)
}

pub fn save_catalog(models: &[SurfaceModel]) -> String {
    let file = CatalogFile {
        surfaces: models.iter().map(SurfaceRecord::from_model).collect(),
    };
    serde_json::to_string_pretty(&file).expect("catalog records always serialize")
}

const BUILTIN: &str = include_str!("../../data/catalog.json");
const EXTENSIONS: &str = include_str!("../../data/extensions.json");

/// The shipped catalog of rank-one Gorenstein del Pezzo surfaces. Every entry
/// carries a provenance note.
pub fn builtin_fixtures() -> Vec<SurfaceModel> {
    parse_catalog(BUILTIN).expect("builtin catalog is valid")
}

/// Surfaces whose curve configurations were derived here rather than taken
/// from a source, kept apart from the main catalog.
pub fn extension_fixtures() -> Vec<SurfaceModel> {
    parse_catalog(EXTENSIONS).expect("extension catalog is valid")
}
