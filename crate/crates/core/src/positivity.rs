//! Ampleness of pushed-forward Weil divisors and the box search for ample
//! divisors with `χ(Ω^[1](D)) < 0`.
//!
//! On a weak del Pezzo surface other than P² or a Hirzebruch surface the cone
//! of curves is spanned by (-1)- and (-2)-curves, so `D` is ample iff
//! `(π^*D)·C_i > 0` for every (-1)-curve `C_i`. These pairings are the rows of
//! the Gram matrix `M_ij = C_i·C_j - Σ_x c_1(x, C_i)·c_1(x, C_j)` applied to
//! the coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::intersection::{
    k_product, local_c1, product_resolution, Surface, SurfaceError, WeilClass,
};
use crate::linalg::Matrix;
use crate::rational::{to_pq, Rational};
use crate::riemann_roch::chi_omega1;
use crate::surface::CurveId;

#[derive(Debug, Error)]
pub enum PositivityError {
    #[error("surface {0:?} is unsupported for positivity: it needs both (-1)- and (-2)-curves and a complete configuration")]
    Unsupported(String),
    #[error("gram and rank-one ampleness tests disagree for divisor {0}")]
    MethodDisagreement(WeilClass),
    #[error("search box of radius {bound} in dimension {dim} is too large to enumerate")]
    SearchSpaceTooLarge { bound: u32, dim: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmpleVerdict {
    Ample,
    NotAmple,
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplenessMethod {
    Gram,
    Rank1Shortcut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplenessCertificate {
    /// `(π^*D)·C_i` per (-1)-curve; empty for the rank-one shortcut.
    pub gram_values: Vec<(CurveId, Rational)>,
    pub verdict: AmpleVerdict,
    pub method: AmplenessMethod,
}

impl AmplenessCertificate {
    pub fn is_ample(&self) -> bool {
        self.verdict == AmpleVerdict::Ample
    }
}

/// The Gram matrix over (-1)-curves, rows and columns in
/// [`Surface::minus_one_ids`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub curves: Vec<CurveId>,
    pub entries: Matrix,
}

impl GramMatrix {
    /// `(M a)_i`
    pub fn apply(&self, coeffs: &[i64]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(coeffs)
                    .filter(|(_, &a)| a != 0)
                    .map(|(m, &a)| m * Rational::from_integer(BigInt::from(a)))
                    .sum()
            })
            .collect()
    }
}

fn ensure_supported(surface: &Surface) -> Result<(), PositivityError> {
    if surface.model().unsupported_for_positivity() {
        Err(PositivityError::Unsupported(surface.name().to_string()))
    } else {
        Ok(())
    }
}

fn unit(surface: &Surface, i: usize) -> WeilClass {
    let mut coeffs = vec![0; surface.minus_one_positions().len()];
    coeffs[i] = 1;
    surface.weil(&coeffs).expect("length matches")
}

pub fn gram_matrix(surface: &Surface) -> Result<GramMatrix, PositivityError> {
    ensure_supported(surface)?;
    let minus_one = surface.minus_one_positions();
    let c1: Vec<Vec<_>> = (0..minus_one.len())
        .map(|i| {
            let d = unit(surface, i);
            (0..surface.point_count())
                .map(|x| local_c1(surface, x, &d).expect("point index in range"))
                .collect()
        })
        .collect();
    let entries = (0..minus_one.len())
        .map(|i| {
            (0..minus_one.len())
                .map(|j| {
                    let correction: Rational = (0..surface.point_count())
                        .map(|x| product_resolution(surface, &c1[i][x], &c1[j][x]))
                        .sum();
                    surface.form(minus_one[i], minus_one[j]) - correction
                })
                .collect()
        })
        .collect();
    Ok(GramMatrix {
        curves: surface.minus_one_ids(),
        entries,
    })
}

fn certificate_from_values(curves: &[CurveId], values: Vec<Rational>) -> AmplenessCertificate {
    let ample = values.iter().all(Signed::is_positive);
    AmplenessCertificate {
        gram_values: curves.iter().copied().zip(values).collect(),
        verdict: if ample {
            AmpleVerdict::Ample
        } else {
            AmpleVerdict::NotAmple
        },
        method: AmplenessMethod::Gram,
    }
}

/// On a Picard-rank-one surface every divisor is numerically a multiple of
/// `-K`, so `D` is ample iff `D·(-K) > 0`. `None` unless the catalog declares
/// rank one.
pub fn rank1_shortcut(surface: &Surface, d: &WeilClass) -> Option<AmplenessCertificate> {
    if surface.model().metadata.picard_rank != Some(1) {
        return None;
    }
    let anti_canonical_degree = -k_product(surface, d);
    Some(AmplenessCertificate {
        gram_values: Vec::new(),
        verdict: if anti_canonical_degree.is_positive() {
            AmpleVerdict::Ample
        } else {
            AmpleVerdict::NotAmple
        },
        method: AmplenessMethod::Rank1Shortcut,
    })
}

/// Precomputed Gram data for repeated ampleness checks on one surface.
pub struct AmplenessTester<'a> {
    surface: &'a Surface,
    gram: GramMatrix,
    scaled: Option<ScaledGram>,
}

impl<'a> AmplenessTester<'a> {
    pub fn new(surface: &'a Surface) -> Result<Self, PositivityError> {
        let gram = gram_matrix(surface)?;
        let scaled = ScaledGram::new(&gram);
        Ok(AmplenessTester {
            surface,
            gram,
            scaled,
        })
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    /// Sign test only, integer arithmetic when the scaled matrix fits.
    fn quick_ample(&self, coeffs: &[i64]) -> bool {
        self.scaled
            .as_ref()
            .and_then(|s| s.all_positive(coeffs))
            .unwrap_or_else(|| self.gram.apply(coeffs).iter().all(Signed::is_positive))
    }

    pub fn certify(&self, d: &WeilClass) -> Result<AmplenessCertificate, PositivityError> {
        let cert = certificate_from_values(&self.gram.curves, self.gram.apply(d.coefficients()));
        if let Some(shortcut) = rank1_shortcut(self.surface, d) {
            if shortcut.verdict != cert.verdict {
                return Err(PositivityError::MethodDisagreement(d.clone()));
            }
        }
        Ok(cert)
    }
}

/// Gram-method certificate. On rank-one surfaces the shortcut is evaluated as
/// well and a disagreement is an error. Unsupported surfaces get an
/// `Unsupported` verdict rather than an answer.
pub fn is_ample(surface: &Surface, d: &WeilClass) -> Result<AmplenessCertificate, PositivityError> {
    if surface.model().unsupported_for_positivity() {
        return Ok(AmplenessCertificate {
            gram_values: Vec::new(),
            verdict: AmpleVerdict::Unsupported,
            method: AmplenessMethod::Gram,
        });
    }
    AmplenessTester::new(surface)?.certify(d)
}

/// An ample divisor with negative `χ(Ω^[1](D))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub coefficients: Vec<i64>,
    pub certificate: AmplenessCertificate,
    pub chi_omega: Rational,
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    coefficients: &'a [i64],
    chi: String,
    gram: Vec<String>,
}

impl Witness {
    /// `{"coefficients":[..],"chi":"p/q","gram":["p/q",..]}`
    pub fn to_json(&self) -> String {
        let record = WitnessRecord {
            coefficients: &self.coefficients,
            chi: to_pq(&self.chi_omega),
            gram: self
                .certificate
                .gram_values
                .iter()
                .map(|(_, v)| to_pq(v))
                .collect(),
        };
        serde_json::to_string(&record).expect("witness record serializes")
    }

    pub fn describe(&self) -> String {
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        format!(
            "a=({}), chi={}",
            coeffs.join(","),
            crate::rational::to_pretty(&self.chi_omega)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Radius of the coefficient box `‖a‖_∞ ≤ bound`.
    pub bound: u32,
    /// Maximum number of candidates to examine, in lexicographic order.
    pub budget: Option<u64>,
    /// Candidates per parallel work unit; does not affect the result.
    pub chunk_size: u64,
}

impl SearchOptions {
    pub fn new(bound: u32) -> Self {
        SearchOptions {
            bound,
            budget: None,
            chunk_size: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Sorted lexicographically by coefficients.
    pub witnesses: Vec<Witness>,
    pub examined: u64,
    pub total: u64,
    /// False when the budget stopped the enumeration early.
    pub complete: bool,
}

/// Gram matrix scaled to integers by the lcm of its denominators, for the
/// hot loop. Signs of `(M a)_i` are unchanged.
struct ScaledGram {
    rows: Vec<Vec<i128>>,
}

impl ScaledGram {
    fn new(gram: &GramMatrix) -> Option<Self> {
        let lcm = gram
            .entries
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let rows = gram
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| (v.numer() * (&lcm / v.denom())).to_i128())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledGram { rows })
    }

    fn all_positive(&self, coeffs: &[i64]) -> Option<bool> {
        for row in &self.rows {
            let mut sum: i128 = 0;
            for (&m, &a) in row.iter().zip(coeffs) {
                sum = sum.checked_add(m.checked_mul(i128::from(a))?)?;
            }
            if sum <= 0 {
                return Some(false);
            }
        }
        Some(true)
    }
}

fn decode(mut index: u64, bound: u32, dim: usize) -> Vec<i64> {
    let base = 2 * u64::from(bound) + 1;
    let mut coeffs = vec![0i64; dim];
    for slot in coeffs.iter_mut().rev() {
        *slot = (index % base) as i64 - i64::from(bound);
        index /= base;
    }
    coeffs
}

/// Enumerates `‖a‖_∞ ≤ bound` in lexicographic order and keeps every ample
/// `a` with `χ(Ω^[1](π_*Σ a_i C_i)) < 0`.
pub fn search_bott_failures(
    surface: &Surface,
    bound: u32,
    budget: Option<u64>,
) -> Result<SearchOutcome, PositivityError> {
    search_with(
        surface,
        &SearchOptions {
            budget,
            ..SearchOptions::new(bound)
        },
    )
}

pub fn search_with(
    surface: &Surface,
    options: &SearchOptions,
) -> Result<SearchOutcome, PositivityError> {
    let tester = AmplenessTester::new(surface)?;
    let gram = tester.gram();
    let dim = gram.curves.len();
    let too_large = || PositivityError::SearchSpaceTooLarge {
        bound: options.bound,
        dim,
    };
    let base = 2 * u64::from(options.bound) + 1;
    let total = u32::try_from(dim)
        .ok()
        .and_then(|d| base.checked_pow(d))
        .ok_or_else(too_large)?;
    let limit = options.budget.map_or(total, |b| b.min(total));
    let chunk = options.chunk_size.max(1);

    let check = |index: u64| -> Option<Witness> {
        let coeffs = decode(index, options.bound, dim);
        if !tester.quick_ample(&coeffs) {
            return None;
        }
        let d = surface.weil(&coeffs).expect("length matches");
        let chi = chi_omega1(surface, &d).chi_omega;
        if !chi.is_negative() {
            return None;
        }
        Some(Witness {
            certificate: certificate_from_values(&gram.curves, gram.apply(&coeffs)),
            coefficients: coeffs,
            chi_omega: chi,
        })
    };

    let chunks = limit.div_ceil(chunk);
    let mut witnesses: Vec<Witness> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(limit);
            (start..end).filter_map(check).collect::<Vec<_>>()
        })
        .collect();
    witnesses.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));

    Ok(SearchOutcome {
        witnesses,
        examined: limit,
        total,
        complete: limit == total,
    })
}
