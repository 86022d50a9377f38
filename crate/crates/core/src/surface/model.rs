use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ade::{parse_singularity_type, AdeError, AdeType};

/// Identifier of a curve on the minimal resolution. Unique within a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveId(pub u32);

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub id: CurveId,
    /// Only -1 and -2 are meaningful; anything else is a validation error.
    pub self_intersection: i64,
}

impl Curve {
    pub fn is_minus_one(&self) -> bool {
        self.self_intersection == -1
    }

    pub fn is_minus_two(&self) -> bool {
        self.self_intersection == -2
    }

    /// `K·C = -2 - C²` by adjunction for a smooth rational curve.
    pub fn canonical_degree(&self) -> i64 {
        -2 - self.self_intersection
    }
}

/// One ADE singular point and the (-2)-curves lying over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub label: AdeType,
    pub curve_ids: Vec<CurveId>,
}

impl SingularPoint {
    pub fn group_order(&self) -> u64 {
        self.label.group_order()
    }

    pub fn num_components(&self) -> usize {
        self.curve_ids.len()
    }
}

/// Whether the (-1)-curve arrangement is known, or only the Dynkin diagrams
/// over the singular points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Configuration {
    #[default]
    Complete,
    ExceptionalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BvStatus {
    Holds,
    Fails,
}

/// Free-form catalog facts. Known keys are typed; everything else is kept
/// verbatim in `extra` so a save/load cycle is lossless.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard_rank: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularity_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configuration: Option<Configuration>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toric: Option<bool>,
    /// Description of a torus-preserving finite quotient presentation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universal_cover: Option<String>,
    /// Why endomorphisms cannot lift to the universal cover.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_fails_weil_bv: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartier_bv: Option<BvStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0_tangent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_bv_failure: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

/// A Gorenstein del Pezzo surface given by the (-1)- and (-2)-curves on its
/// minimal resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceModel {
    pub name: String,
    /// `(-K_X)²`
    pub degree: u32,
    pub curves: Vec<Curve>,
    /// Dense symmetric matrix indexed by position in `curves`; the diagonal
    /// holds self-intersections.
    pub intersections: Vec<Vec<i64>>,
    pub singular_points: Vec<SingularPoint>,
    /// Optional toric fan (rays in the lattice `Z²`).
    pub fan: Option<Vec<[i64; 2]>>,
    pub metadata: Metadata,
}

impl SurfaceModel {
    pub fn index_of(&self, id: CurveId) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    pub fn minus_one_curves(&self) -> impl Iterator<Item = (usize, &Curve)> {
        self.curves
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_minus_one())
    }

    pub fn minus_two_curves(&self) -> impl Iterator<Item = (usize, &Curve)> {
        self.curves
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_minus_two())
    }

    /// Number of (-2)-curves on the resolution.
    pub fn exceptional_count(&self) -> usize {
        self.minus_two_curves().count()
    }

    pub fn configuration(&self) -> Configuration {
        self.metadata.configuration.unwrap_or_default()
    }

    /// Sorted labels of the singular points.
    pub fn singularity_labels(&self) -> Vec<AdeType> {
        let mut labels: Vec<_> = self.singular_points.iter().map(|p| p.label).collect();
        labels.sort();
        labels
    }

    pub fn declared_singularity_labels(&self) -> Option<Result<Vec<AdeType>, AdeError>> {
        self.metadata
            .singularity_type
            .as_deref()
            .map(parse_singularity_type)
    }

    /// The ampleness criterion needs the cone of curves spanned by (-1)- and
    /// (-2)-curves, which fails for P² and Hirzebruch surfaces.
    pub fn unsupported_for_positivity(&self) -> bool {
        self.configuration() == Configuration::ExceptionalOnly
            || self.minus_one_curves().next().is_none()
            || self.minus_two_curves().next().is_none()
    }
}
