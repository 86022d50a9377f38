//! Structural checks on surface descriptions. Problems are collected as
//! [`Violation`]s; malformed input never panics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ade::{classify_dynkin, format_singularity_type, AdeType};
use super::model::{Configuration, CurveId, SurfaceModel};
use crate::linalg::{first_non_negative_definite_minor, Matrix};
use crate::rational::int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DegreeOutOfRange(u32),
    DuplicateCurveId(CurveId),
    BadSelfIntersection {
        curve: CurveId,
        value: i64,
    },
    MatrixShape {
        expected: usize,
        found: String,
    },
    Asymmetric {
        a: CurveId,
        b: CurveId,
    },
    DiagonalMismatch {
        curve: CurveId,
        diagonal: i64,
        declared: i64,
    },
    NegativeIntersection {
        a: CurveId,
        b: CurveId,
        value: i64,
    },
    UnknownCurve {
        point: usize,
        curve: CurveId,
    },
    Unassigned(CurveId),
    AssignedTwice(CurveId),
    MinusOneInPoint {
        point: usize,
        curve: CurveId,
    },
    NotAdeShaped {
        point: usize,
        reason: String,
    },
    LabelMismatch {
        point: usize,
        declared: AdeType,
        derived: AdeType,
    },
    PointsMeet {
        first: usize,
        second: usize,
    },
    NotNegativeDefinite {
        minor: usize,
    },
    PicardRank {
        rho: u32,
        degree: u32,
        n: usize,
    },
    SingularityType {
        declared: String,
        actual: String,
    },
    BadSingularityType(String),
    ExceptionalOnlyWithMinusOne(CurveId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DegreeOutOfRange(d) => write!(f, "degree {d} outside 1..=9"),
            DuplicateCurveId(id) => write!(f, "duplicate curve id {id}"),
            BadSelfIntersection { curve, value } => {
                write!(
                    f,
                    "curve {curve} has self-intersection {value}, expected -1 or -2"
                )
            }
            MatrixShape { expected, found } => {
                write!(
                    f,
                    "intersection matrix must be {expected}x{expected}, found {found}"
                )
            }
            Asymmetric { a, b } => write!(f, "intersection matrix asymmetric at ({a}, {b})"),
            DiagonalMismatch {
                curve,
                diagonal,
                declared,
            } => write!(
                f,
                "diagonal entry {diagonal} of {curve} differs from self-intersection {declared}"
            ),
            NegativeIntersection { a, b, value } => {
                write!(
                    f,
                    "distinct curves {a} and {b} have intersection {value} < 0"
                )
            }
            UnknownCurve { point, curve } => {
                write!(f, "singular point {point} lists unknown curve {curve}")
            }
            Unassigned(id) => write!(f, "(-2)-curve {id} belongs to no singular point"),
            AssignedTwice(id) => write!(f, "(-2)-curve {id} belongs to several singular points"),
            MinusOneInPoint { point, curve } => {
                write!(f, "(-1)-curve {curve} listed over singular point {point}")
            }
            NotAdeShaped { point, reason } => {
                write!(f, "singular point {point} not ADE-shaped: {reason}")
            }
            LabelMismatch {
                point,
                declared,
                derived,
            } => write!(
                f,
                "singular point {point} declared {declared} but its curves form {derived}"
            ),
            PointsMeet { first, second } => write!(
                f,
                "exceptional curves of singular points {first} and {second} intersect"
            ),
            NotNegativeDefinite { minor } => write!(
                f,
                "exceptional intersection matrix not negative definite (leading minor {minor})"
            ),
            PicardRank { rho, degree, n } => write!(
                f,
                "picard rank {rho}: n ≠ {} − d (n = {n}, d = {degree})",
                10 - i64::from(*rho)
            ),
            SingularityType { declared, actual } => write!(
                f,
                "metadata singularity type {declared} differs from singular points {actual}"
            ),
            BadSingularityType(text) => write!(f, "unparseable singularity type {text:?}"),
            ExceptionalOnlyWithMinusOne(id) => {
                write!(f, "exceptional-only configuration lists (-1)-curve {id}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("; "))
    }
}

pub fn validate(model: &SurfaceModel) -> ValidationReport {
    let mut out = Vec::new();
    let n_curves = model.curves.len();

    if !(1..=9).contains(&model.degree) {
        out.push(Violation::DegreeOutOfRange(model.degree));
    }

    let mut ids = BTreeSet::new();
    for curve in &model.curves {
        if !ids.insert(curve.id) {
            out.push(Violation::DuplicateCurveId(curve.id));
        }
        if curve.self_intersection != -1 && curve.self_intersection != -2 {
            out.push(Violation::BadSelfIntersection {
                curve: curve.id,
                value: curve.self_intersection,
            });
        }
        if model.configuration() == Configuration::ExceptionalOnly && curve.is_minus_one() {
            out.push(Violation::ExceptionalOnlyWithMinusOne(curve.id));
        }
    }

    let shape_ok = model.intersections.len() == n_curves
        && model.intersections.iter().all(|row| row.len() == n_curves);
    if !shape_ok {
        let widths: Vec<String> = model
            .intersections
            .iter()
            .map(|r| r.len().to_string())
            .collect();
        out.push(Violation::MatrixShape {
            expected: n_curves,
            found: format!(
                "{} rows of widths [{}]",
                model.intersections.len(),
                widths.join(",")
            ),
        });
        // Everything below needs a well-formed matrix.
        return ValidationReport { violations: out };
    }

    let m = &model.intersections;
    let id = |i: usize| model.curves[i].id;
    for i in 0..n_curves {
        if m[i][i] != model.curves[i].self_intersection {
            out.push(Violation::DiagonalMismatch {
                curve: id(i),
                diagonal: m[i][i],
                declared: model.curves[i].self_intersection,
            });
        }
        for j in i + 1..n_curves {
            if m[i][j] != m[j][i] {
                out.push(Violation::Asymmetric { a: id(i), b: id(j) });
            }
            if m[i][j] < 0 {
                out.push(Violation::NegativeIntersection {
                    a: id(i),
                    b: id(j),
                    value: m[i][j],
                });
            }
        }
    }

    // singular point membership
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut point_indices: Vec<Vec<usize>> = Vec::new();
    for (p, point) in model.singular_points.iter().enumerate() {
        let mut indices = Vec::new();
        for &cid in &point.curve_ids {
            match model.index_of(cid) {
                None => out.push(Violation::UnknownCurve {
                    point: p,
                    curve: cid,
                }),
                Some(idx) => {
                    if model.curves[idx].is_minus_one() {
                        out.push(Violation::MinusOneInPoint {
                            point: p,
                            curve: cid,
                        });
                    }
                    if owner.insert(idx, p).is_some() {
                        out.push(Violation::AssignedTwice(cid));
                    }
                    indices.push(idx);
                }
            }
        }
        point_indices.push(indices);
    }
    for (idx, curve) in model.curves.iter().enumerate() {
        if curve.is_minus_two() && !owner.contains_key(&idx) {
            out.push(Violation::Unassigned(curve.id));
        }
    }

    // Dynkin shape per point, disjointness across points
    for (p, indices) in point_indices.iter().enumerate() {
        let mut edges = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                if m[i][j] != 0 {
                    edges.push((a, b, m[i][j]));
                }
            }
        }
        match classify_dynkin(indices.len(), &edges) {
            Ok(derived) => {
                let declared = model.singular_points[p].label;
                if derived != declared {
                    out.push(Violation::LabelMismatch {
                        point: p,
                        declared,
                        derived,
                    });
                }
            }
            Err(e) => out.push(Violation::NotAdeShaped {
                point: p,
                reason: e.to_string(),
            }),
        }
        for (q, other) in point_indices.iter().enumerate().skip(p + 1) {
            if indices.iter().any(|&i| other.iter().any(|&j| m[i][j] != 0)) {
                out.push(Violation::PointsMeet {
                    first: p,
                    second: q,
                });
            }
        }
    }

    let exceptional: Vec<usize> = model.minus_two_curves().map(|(i, _)| i).collect();
    let sub: Matrix = exceptional
        .iter()
        .map(|&i| exceptional.iter().map(|&j| int(m[i][j])).collect())
        .collect();
    if let Some(minor) = first_non_negative_definite_minor(&sub) {
        out.push(Violation::NotNegativeDefinite { minor });
    }

    let n = exceptional.len();
    if let Some(rho) = model.metadata.picard_rank {
        if i64::from(rho) != 10 - i64::from(model.degree) - n as i64 {
            out.push(Violation::PicardRank {
                rho,
                degree: model.degree,
                n,
            });
        }
    }

    if let Some(declared) = model.declared_singularity_labels() {
        match declared {
            Ok(labels) => {
                let actual = model.singularity_labels();
                if labels != actual {
                    out.push(Violation::SingularityType {
                        declared: format_singularity_type(&labels),
                        actual: format_singularity_type(&actual),
                    });
                }
            }
            Err(_) => out.push(Violation::BadSingularityType(
                model.metadata.singularity_type.clone().unwrap_or_default(),
            )),
        }
    }

    ValidationReport { violations: out }
}
