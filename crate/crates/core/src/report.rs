//! Classification summary: one verdict per catalog entry, combining cited
//! metadata with computed witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::intersection::Surface;
use crate::positivity::{search_bott_failures, PositivityError, Witness};
use crate::riemann_roch::baker_cartier_bv;
use crate::surface::{format_singularity_type, BvStatus, SurfaceModel};
use crate::toric::{singularity_multiset, Fan2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Toric,
    ToricQuotient,
    FailsCartierBv,
    FailsWeilBv,
    CoverFailsBv,
    NoEndomorphismByCover,
    Open,
}

impl Status {
    pub const ALL: [Status; 7] = [
        Status::Toric,
        Status::ToricQuotient,
        Status::FailsCartierBv,
        Status::FailsWeilBv,
        Status::CoverFailsBv,
        Status::NoEndomorphismByCover,
        Status::Open,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Toric => "toric",
            Status::ToricQuotient => "toric_quotient",
            Status::FailsCartierBv => "fails_cartier_bv",
            Status::FailsWeilBv => "fails_weil_bv",
            Status::CoverFailsBv => "cover_fails_bv",
            Status::NoEndomorphismByCover => "no_endomorphism_by_cover",
            Status::Open => "open",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub surface: String,
    pub status: Status,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub surface: String,
    pub message: String,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.surface, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{} metadata/computation conflict(s): {}", .0.len(), join(.0))]
    Conflicts(Vec<Conflict>),
    #[error("search failed on {surface}: {source}")]
    Search {
        surface: String,
        #[source]
        source: PositivityError,
    },
}

fn join(conflicts: &[Conflict]) -> String {
    conflicts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Witnesses keyed by surface name. A key that is present means the surface
/// was searched, even when its list is empty.
pub type WitnessMap = BTreeMap<String, Vec<Witness>>;

/// Searches every entry whose configuration supports positivity.
pub fn search_catalog(models: &[SurfaceModel], bound: u32) -> Result<WitnessMap, ReportError> {
    let mut out = WitnessMap::new();
    for model in models.iter().filter(|m| !m.unsupported_for_positivity()) {
        let search_error = |source| ReportError::Search {
            surface: model.name.clone(),
            source,
        };
        let surface = Surface::new(model.clone()).map_err(|e| search_error(e.into()))?;
        let outcome = search_bott_failures(&surface, bound, None).map_err(search_error)?;
        out.insert(model.name.clone(), outcome.witnesses);
    }
    Ok(out)
}

fn minus_two_count(model: &SurfaceModel) -> u32 {
    model.minus_two_curves().count() as u32
}

fn picard_rank(model: &SurfaceModel) -> u32 {
    model
        .metadata
        .picard_rank
        .unwrap_or_else(|| 10u32.saturating_sub(model.degree + minus_two_count(model)))
}

fn first_witness<'a>(witnesses: &'a WitnessMap, name: &str) -> Option<&'a Witness> {
    witnesses.get(name).and_then(|w| w.first())
}

/// Collects conflicts for one entry.
fn check(model: &SurfaceModel, witnesses: &WitnessMap, conflicts: &mut Vec<Conflict>) {
    let mut conflict = |message: String| {
        conflicts.push(Conflict {
            surface: model.name.clone(),
            message,
        })
    };
    let meta = &model.metadata;
    let found = first_witness(witnesses, &model.name);

    if let Some(rays) = &model.fan {
        let points = format_singularity_type(&model.singularity_labels());
        match Fan2D::new(rays.clone())
            .map_err(|e| e.to_string())
            .and_then(|fan| singularity_multiset(&fan).map_err(|e| e.to_string()))
        {
            Ok(labels) if format_singularity_type(&labels) == points => {}
            Ok(labels) => conflict(format!(
                "fan has singularities {} but the curves give {}",
                format_singularity_type(&labels),
                points
            )),
            Err(e) => conflict(format!("fan rejected: {e}")),
        }
    }

    if let Some(w) = found {
        if meta.toric == Some(true) || meta.quotient.is_some() {
            conflict(format!(
                "toric or toric quotient, yet {} is a witness",
                w.describe()
            ));
        }
        if meta.expected_bv_failure == Some(false) {
            conflict(format!(
                "no failure expected, yet {} is a witness",
                w.describe()
            ));
        }
    } else if meta.expected_bv_failure == Some(true) && !model.unsupported_for_positivity() {
        conflict("failure expected but the search found no witness".to_string());
    }

    if let (Some(h0), Some(cited)) = (meta.h0_tangent, meta.cartier_bv) {
        let baker = baker_cartier_bv(h0, minus_two_count(model), picard_rank(model));
        if baker != (cited == BvStatus::Holds) {
            conflict(format!(
                "h0(T) = {h0} gives Cartier Bott vanishing {}, metadata says {}",
                if baker { "holds" } else { "fails" },
                if cited == BvStatus::Holds {
                    "holds"
                } else {
                    "fails"
                }
            ));
        }
    }
}

fn classify(model: &SurfaceModel, models: &[SurfaceModel], witnesses: &WitnessMap) -> Verdict {
    let meta = &model.metadata;
    let verdict = |status, evidence: String| Verdict {
        surface: model.name.clone(),
        status,
        evidence,
    };

    if meta.toric == Some(true) {
        let evidence = match &model.fan {
            Some(rays) => format!(
                "fan {}",
                rays.iter()
                    .map(|r| format!("({},{})", r[0], r[1]))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            None => "toric".to_string(),
        };
        return verdict(Status::Toric, evidence);
    }
    if let Some(q) = &meta.quotient {
        return verdict(Status::ToricQuotient, q.clone());
    }

    let n = minus_two_count(model);
    let rho = picard_rank(model);
    if let Some(h0) = meta.h0_tangent {
        if !baker_cartier_bv(h0, n, rho) {
            return verdict(
                Status::FailsCartierBv,
                format!(
                    "h0(T) = {h0} but 10 - n - 2rho = {}",
                    10 - n as i64 - 2 * rho as i64
                ),
            );
        }
    }
    if meta.cartier_bv == Some(BvStatus::Fails) {
        return verdict(Status::FailsCartierBv, "cited".to_string());
    }

    if let Some(obstruction) = &meta.cover_obstruction {
        return verdict(Status::NoEndomorphismByCover, obstruction.clone());
    }

    if let Some(w) = first_witness(witnesses, &model.name) {
        return verdict(Status::FailsWeilBv, w.describe());
    }
    if meta.expected_bv_failure == Some(true) && model.unsupported_for_positivity() {
        return verdict(
            Status::FailsWeilBv,
            "cited; curve configuration not encoded".to_string(),
        );
    }

    if let Some(cover) = &meta.universal_cover {
        let cover_witness = models
            .iter()
            .any(|m| &m.name == cover)
            .then(|| first_witness(witnesses, cover))
            .flatten();
        if let Some(w) = cover_witness {
            return verdict(
                Status::CoverFailsBv,
                format!("cover {cover}: {}", w.describe()),
            );
        }
        if meta.cover_fails_weil_bv == Some(true) {
            return verdict(Status::CoverFailsBv, format!("cited; cover: {cover}"));
        }
    }

    verdict(Status::Open, "no obstruction known".to_string())
}

/// One verdict per model, in input order. Every conflict between metadata
/// and computed data is reported; none is resolved silently.
pub fn report(
    models: &[SurfaceModel],
    witnesses: &WitnessMap,
) -> Result<Vec<Verdict>, ReportError> {
    let mut conflicts = Vec::new();
    for model in models {
        check(model, witnesses, &mut conflicts);
    }
    if !conflicts.is_empty() {
        return Err(ReportError::Conflicts(conflicts));
    }
    Ok(models
        .iter()
        .map(|m| classify(m, models, witnesses))
        .collect())
}

pub fn status_counts(verdicts: &[Verdict]) -> BTreeMap<Status, usize> {
    let mut counts = BTreeMap::new();
    for v in verdicts {
        *counts.entry(v.status).or_insert(0) += 1;
    }
    counts
}

pub fn render_table(verdicts: &[Verdict]) -> String {
    let name_width = verdicts
        .iter()
        .map(|v| v.surface.chars().count())
        .max()
        .unwrap_or(0)
        .max(7);
    let status_width = Status::ALL
        .iter()
        .map(|s| s.as_str().len())
        .max()
        .unwrap_or(0);
    let mut out = format!(
        "{:<name_width$}  {:<status_width$}  evidence\n",
        "surface", "status"
    );
    for v in verdicts {
        out.push_str(&format!(
            "{:<name_width$}  {:<status_width$}  {}\n",
            v.surface,
            v.status.as_str(),
            v.evidence
        ));
    }
    out
}

/// One JSON object per line.
pub fn render_records(verdicts: &[Verdict]) -> String {
    verdicts
        .iter()
        .map(|v| serde_json::to_string(v).expect("verdicts serialize") + "\n")
        .collect()
}
