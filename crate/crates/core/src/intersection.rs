//! Intersection theory on the minimal resolution and Mumford's pullback
//! product on the singular surface.
//!
//! A [`Surface`] is a validated [`SurfaceModel`] together with the numerical
//! pullback of every (-1)-curve image, computed once by exact elimination.
//! Pullbacks of arbitrary Weil classes are the corresponding integer
//! combinations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{solve, Matrix};
use crate::rational::{int, to_pq, zero, Rational};
use crate::surface::{validate, CurveId, SurfaceModel, ValidationReport};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("surface {name:?} is invalid: {report}")]
    Invalid {
        name: String,
        report: ValidationReport,
    },
    #[error("divisor has {found} coefficients but the surface has {expected} (-1)-curves")]
    WrongLength { expected: usize, found: usize },
    #[error("no singular point with index {0}")]
    NoSuchPoint(usize),
}

/// A Q-divisor on the resolution: one exact coefficient per curve of the model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QDivisor {
    coeffs: Vec<Rational>,
}

impl QDivisor {
    pub fn zero(len: usize) -> Self {
        QDivisor {
            coeffs: vec![zero(); len],
        }
    }

    pub fn from_coefficients(coeffs: Vec<Rational>) -> Self {
        QDivisor { coeffs }
    }

    /// Coefficients indexed by curve position in the model.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, position: usize) -> &Rational {
        &self.coeffs[position]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Non-zero entries as `(position, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Componentwise floor.
    pub fn floor(&self) -> QDivisor {
        QDivisor {
            coeffs: self.coeffs.iter().map(|c| c.floor()).collect(),
        }
    }

    /// Keeps only the given positions.
    pub fn restrict(&self, positions: &[usize]) -> QDivisor {
        let mut out = QDivisor::zero(self.coeffs.len());
        for &p in positions {
            out.coeffs[p] = self.coeffs[p].clone();
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, factor: &Rational) -> QDivisor {
        QDivisor {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl Add for &QDivisor {
    type Output = QDivisor;
    fn add(self, rhs: &QDivisor) -> QDivisor {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "divisors on different surfaces"
        );
        QDivisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QDivisor {
    type Output = QDivisor;
    fn sub(self, rhs: &QDivisor) -> QDivisor {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "divisors on different surfaces"
        );
        QDivisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QDivisor {
    type Output = QDivisor;
    fn neg(self) -> QDivisor {
        QDivisor {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&QDivisor> for i64 {
    type Output = QDivisor;
    fn mul(self, rhs: &QDivisor) -> QDivisor {
        rhs.scale(&int(self))
    }
}

/// A Weil divisor `D = Σ a_i π_*C_i` on the singular surface, with integer
/// coefficients on the (-1)-curves in the order of [`Surface::minus_one_ids`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilClass {
    coeffs: Vec<i64>,
}

impl WeilClass {
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn scaled(&self, factor: i64) -> WeilClass {
        WeilClass {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }
}

impl Add for &WeilClass {
    type Output = WeilClass;
    fn add(self, rhs: &WeilClass) -> WeilClass {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "divisors on different surfaces"
        );
        WeilClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for WeilClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A validated surface with precomputed pullbacks.
#[derive(Debug, Clone)]
pub struct Surface {
    model: SurfaceModel,
    form: Matrix,
    minus_one: Vec<usize>,
    minus_two: Vec<usize>,
    point_curves: Vec<Vec<usize>>,
    /// π^*π_*C_i for every (-1)-curve C_i.
    curve_pullbacks: Vec<QDivisor>,
}

impl Surface {
    pub fn new(model: SurfaceModel) -> Result<Self, SurfaceError> {
        let report = validate(&model);
        if !report.is_valid() {
            return Err(SurfaceError::Invalid {
                name: model.name.clone(),
                report,
            });
        }
        let form: Matrix = model
            .intersections
            .iter()
            .map(|row| row.iter().map(|&v| int(v)).collect())
            .collect();
        let minus_one: Vec<usize> = model.minus_one_curves().map(|(i, _)| i).collect();
        let minus_two: Vec<usize> = model.minus_two_curves().map(|(i, _)| i).collect();
        let point_curves = model
            .singular_points
            .iter()
            .map(|p| {
                p.curve_ids
                    .iter()
                    .map(|&id| model.index_of(id).expect("validated"))
                    .collect()
            })
            .collect();
        let mut surface = Surface {
            model,
            form,
            minus_one,
            minus_two,
            point_curves,
            curve_pullbacks: Vec::new(),
        };
        surface.curve_pullbacks = surface
            .minus_one
            .iter()
            .map(|&i| {
                let mut strict = QDivisor::zero(surface.curve_count());
                strict.coeffs[i] = int(1);
                numerical_pullback(&surface, &strict)
            })
            .collect();
        Ok(surface)
    }

    pub fn model(&self) -> &SurfaceModel {
        &self.model
    }

    pub fn name(&self) -> &str {
        &self.model.name
    }

    pub fn degree(&self) -> u32 {
        self.model.degree
    }

    pub fn curve_count(&self) -> usize {
        self.model.curves.len()
    }

    pub fn curve_id(&self, position: usize) -> CurveId {
        self.model.curves[position].id
    }

    /// Positions of the (-1)-curves; this is the coordinate order of [`WeilClass`].
    pub fn minus_one_positions(&self) -> &[usize] {
        &self.minus_one
    }

    pub fn minus_one_ids(&self) -> Vec<CurveId> {
        self.minus_one.iter().map(|&i| self.curve_id(i)).collect()
    }

    /// Positions of the (-2)-curves.
    pub fn exceptional_positions(&self) -> &[usize] {
        &self.minus_two
    }

    pub fn point_count(&self) -> usize {
        self.point_curves.len()
    }

    /// Curve positions over singular point `point`.
    pub fn point_curves(&self, point: usize) -> &[usize] {
        &self.point_curves[point]
    }

    pub fn group_order(&self, point: usize) -> u64 {
        self.model.singular_points[point].group_order()
    }

    pub fn form(&self, i: usize, j: usize) -> &Rational {
        &self.form[i][j]
    }

    pub fn weil(&self, coeffs: &[i64]) -> Result<WeilClass, SurfaceError> {
        if coeffs.len() != self.minus_one.len() {
            return Err(SurfaceError::WrongLength {
                expected: self.minus_one.len(),
                found: coeffs.len(),
            });
        }
        Ok(WeilClass {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn zero_weil(&self) -> WeilClass {
        WeilClass {
            coeffs: vec![0; self.minus_one.len()],
        }
    }

    /// Unit divisor on the curve at `position`.
    pub fn curve_divisor(&self, position: usize) -> QDivisor {
        let mut d = QDivisor::zero(self.curve_count());
        d.coeffs[position] = int(1);
        d
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<(), SurfaceError> {
        if point < self.point_count() {
            Ok(())
        } else {
            Err(SurfaceError::NoSuchPoint(point))
        }
    }

    /// Renders a Q-divisor as `c*#id + ...` using curve ids.
    pub fn describe(&self, d: &QDivisor) -> String {
        let terms: Vec<String> = d
            .support()
            .map(|(p, c)| format!("{}*C{}", to_pq(c), self.curve_id(p).0))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Solves `(A + Σ c_j E_j)·E_k = 0` for all (-2)-curves `E_k`, returning the
/// numerical pullback of `π_*A`. The (-2)-part of `A` is discarded first.
pub fn numerical_pullback(surface: &Surface, strict: &QDivisor) -> QDivisor {
    let exc = surface.exceptional_positions();
    let mut base = strict.clone();
    for &p in exc {
        base.coeffs[p] = zero();
    }
    if exc.is_empty() {
        return base;
    }
    let matrix: Matrix = exc
        .iter()
        .map(|&i| exc.iter().map(|&j| surface.form(i, j).clone()).collect())
        .collect();
    let rhs: Vec<Rational> = exc
        .iter()
        .map(|&k| -product_resolution(surface, &base, &surface.curve_divisor(k)))
        .collect();
    let solution =
        solve(&matrix, &rhs).expect("negative definite exceptional matrix is invertible");
    for (&p, c) in exc.iter().zip(solution) {
        base.coeffs[p] = c;
    }
    base
}

/// `D̃ = Σ a_i C_i` on the resolution.
pub fn strict_transform(surface: &Surface, d: &WeilClass) -> QDivisor {
    let mut out = QDivisor::zero(surface.curve_count());
    for (&p, &a) in surface.minus_one.iter().zip(&d.coeffs) {
        out.coeffs[p] = int(a);
    }
    out
}

/// Numerical pullback `π^*D`: orthogonal to every (-2)-curve.
pub fn pullback(surface: &Surface, d: &WeilClass) -> QDivisor {
    let mut out = QDivisor::zero(surface.curve_count());
    for (pb, &a) in surface.curve_pullbacks.iter().zip(&d.coeffs) {
        if a == 0 {
            continue;
        }
        let a = int(a);
        for (o, c) in out.coeffs.iter_mut().zip(&pb.coeffs) {
            *o += c * &a;
        }
    }
    out
}

/// `D^s`: the part of a divisor supported on (-2)-curves.
pub fn exceptional_part(surface: &Surface, d: &QDivisor) -> QDivisor {
    d.restrict(surface.exceptional_positions())
}

/// Local first Chern class `c_1(x, D̃) = D̃ - π^*D` restricted over `point`,
/// i.e. `-(D^s)|_x`.
pub fn local_c1(surface: &Surface, point: usize, d: &WeilClass) -> Result<QDivisor, SurfaceError> {
    surface.check_point(point)?;
    let pb = pullback(surface, d);
    Ok(-&pb.restrict(surface.point_curves(point)))
}

/// The intersection form on the resolution: `Σ A_i B_j (C_i·C_j)`.
pub fn product_resolution(surface: &Surface, a: &QDivisor, b: &QDivisor) -> Rational {
    let mut total = zero();
    for (i, ai) in a.support() {
        for (j, bj) in b.support() {
            let m = surface.form(i, j);
            if !m.is_zero() {
                total += ai * bj * m;
            }
        }
    }
    total
}

/// Mumford's intersection product `D1·D2 = π^*D1 · π^*D2`.
pub fn mumford_product(surface: &Surface, d1: &WeilClass, d2: &WeilClass) -> Rational {
    product_resolution(surface, &pullback(surface, d1), &pullback(surface, d2))
}

/// `K_X̃·A` via adjunction, `K·C = -2 - C²`.
pub fn canonical_pairing(surface: &Surface, a: &QDivisor) -> Rational {
    a.support()
        .map(|(p, c)| c * int(surface.model.curves[p].canonical_degree()))
        .sum()
}

/// `K_X·D`. The resolution is crepant, so this equals `K_X̃·D̃ = -Σ a_i`.
pub fn k_product(surface: &Surface, d: &WeilClass) -> Rational {
    canonical_pairing(surface, &strict_transform(surface, d))
}
