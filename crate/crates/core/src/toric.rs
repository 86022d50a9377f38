//! Complete two-dimensional fans and the cyclic quotient singularities of
//! their cones.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::surface::AdeType;

pub type Ray = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("a fan needs at least three rays, got {0}")]
    TooFewRays(usize),
    #[error("ray ({}, {}) is not primitive", .0[0], .0[1])]
    NotPrimitive(Ray),
    #[error("rays ({}, {}) and ({}, {}) are not positively oriented", .0[0], .0[1], .1[0], .1[1])]
    WronglyOriented(Ray, Ray),
    #[error("rays wind {0} times around the origin; the fan is not complete")]
    NotComplete(i64),
    #[error("cone ({}, {})-({}, {}) is not Gorenstein (order {order})", .cone.0[0], .cone.0[1], .cone.1[0], .cone.1[1])]
    NonGorenstein { cone: (Ray, Ray), order: u64 },
    #[error("cannot parse ray list: {0}")]
    Parse(String),
}

fn det(u: Ray, v: Ray) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Rays ordered counterclockwise, each primitive, together spanning the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<Ray>,
}

impl Fan2D {
    /// Accepts rays listed in cyclic order. A consistently clockwise listing
    /// is reversed; a mixed orientation is an error.
    pub fn new(rays: Vec<Ray>) -> Result<Self, FanError> {
        if rays.len() < 3 {
            return Err(FanError::TooFewRays(rays.len()));
        }
        for &r in &rays {
            if r[0].gcd(&r[1]) != 1 {
                return Err(FanError::NotPrimitive(r));
            }
        }
        let mut rays = rays;
        let n = rays.len();
        let first = det(rays[0], rays[1 % n]);
        if first < 0 {
            rays.reverse();
        }
        for i in 0..n {
            let (u, v) = (rays[i], rays[(i + 1) % n]);
            if det(u, v) <= 0 {
                return Err(FanError::WronglyOriented(u, v));
            }
        }
        let winding = winding_number(&rays);
        if winding != 1 {
            return Err(FanError::NotComplete(winding));
        }
        Ok(Fan2D { rays })
    }

    /// Sorts the rays by angle before validating.
    pub fn from_unordered(mut rays: Vec<Ray>) -> Result<Self, FanError> {
        rays.sort_by(|&a, &b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(a, b))));
        Fan2D::new(rays)
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cones(&self) -> impl Iterator<Item = (Ray, Ray)> + '_ {
        let n = self.rays.len();
        (0..n).map(move |i| (self.rays[i], self.rays[(i + 1) % n]))
    }
}

/// 0 for angles in [0, π), 1 for [π, 2π).
fn half(r: Ray) -> u8 {
    if r[1] > 0 || (r[1] == 0 && r[0] > 0) {
        0
    } else {
        1
    }
}

/// Counts the cones (u, v] containing the positive x-axis.
fn winding_number(rays: &[Ray]) -> i64 {
    let axis = [1, 0];
    let n = rays.len();
    (0..n)
        .filter(|&i| {
            let (u, v) = (rays[i], rays[(i + 1) % n]);
            det(u, axis) > 0 && det(axis, v) >= 0
        })
        .count() as i64
}

impl std::str::FromStr for Fan2D {
    type Err = FanError;

    /// `"1,2; 1,-2; -1,0"`, any cyclic orientation.
    fn from_str(s: &str) -> Result<Self, FanError> {
        let rays = s
            .split(';')
            .filter(|part| !part.trim().is_empty())
            .map(|part| {
                let coords: Vec<&str> = part.split(',').map(str::trim).collect();
                match coords.as_slice() {
                    [x, y] => match (x.parse(), y.parse()) {
                        (Ok(x), Ok(y)) => Ok([x, y]),
                        _ => Err(FanError::Parse(format!("bad ray `{}`", part.trim()))),
                    },
                    _ => Err(FanError::Parse(format!("bad ray `{}`", part.trim()))),
                }
            })
            .collect::<Result<Vec<Ray>, _>>()?;
        Fan2D::new(rays)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSingularity {
    pub cone: (Ray, Ray),
    pub order: u64,
    pub gorenstein: bool,
}

impl ConeSingularity {
    pub fn of_cone(u: Ray, v: Ray) -> Self {
        let d = det(u, v);
        // m with m(u) = m(v) = 1
        let mx = v[1] - u[1];
        let my = u[0] - v[0];
        ConeSingularity {
            cone: (u, v),
            order: d.unsigned_abs(),
            gorenstein: mx % d == 0 && my % d == 0,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.order == 1
    }

    pub fn ade_type(&self) -> Option<AdeType> {
        (self.gorenstein && self.order > 1).then(|| AdeType::A(self.order as u32 - 1))
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ConeSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ade_type() {
            _ if self.is_smooth() => f.write_str("smooth"),
            Some(t) => write!(f, "{t}"),
            None => write!(f, "non-Gorenstein cyclic of order {}", self.order),
        }
    }
}

pub fn classify_fan(fan: &Fan2D) -> Vec<ConeSingularity> {
    fan.cones()
        .map(|(u, v)| ConeSingularity::of_cone(u, v))
        .collect()
}

/// Sorted ADE labels of the singular cones.
pub fn singularity_multiset(fan: &Fan2D) -> Result<Vec<AdeType>, FanError> {
    let mut out = Vec::new();
    for sing in classify_fan(fan) {
        if sing.is_smooth() {
            continue;
        }
        match sing.ade_type() {
            Some(t) => out.push(t),
            None => {
                return Err(FanError::NonGorenstein {
                    cone: sing.cone,
                    order: sing.order,
                })
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(rays: &[Ray]) -> Vec<String> {
        singularity_multiset(&Fan2D::new(rays.to_vec()).unwrap())
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn fixture_fans() {
        assert_eq!(labels(&[[1, 2], [1, -2], [-1, 0]]), ["A1", "A1", "A3"]);
        assert!(labels(&[[1, 0], [0, 1], [-1, -1]]).is_empty());
        assert_eq!(labels(&[[-2, 1], [1, 1], [1, -2]]), ["A2", "A2", "A2"]);
    }

    #[test]
    fn per_cone_labels() {
        let fan = Fan2D::new(vec![[1, 2], [1, -2], [-1, 0]]).unwrap();
        let mut orders: Vec<u64> = classify_fan(&fan).iter().map(|s| s.order).collect();
        orders.sort();
        assert_eq!(orders, [2, 2, 4]);
        let p2 = Fan2D::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap();
        assert!(classify_fan(&p2).iter().all(|s| s.label() == "smooth"));
    }

    #[test]
    fn non_gorenstein_cone() {
        // P(1,1,3): the cone at the weight-3 point is 1/3(1,1)
        let fan = Fan2D::new(vec![[1, 0], [0, 1], [-1, -3]]).unwrap();
        let bad: Vec<String> = classify_fan(&fan)
            .iter()
            .filter(|s| !s.gorenstein)
            .map(ConeSingularity::label)
            .collect();
        assert_eq!(bad, ["non-Gorenstein cyclic of order 3"]);
        assert!(matches!(
            singularity_multiset(&fan),
            Err(FanError::NonGorenstein { order: 3, .. })
        ));
    }

    #[test]
    fn weighted_projective_planes() {
        assert_eq!(labels(&[[1, 0], [0, 1], [-1, -2]]), ["A1"]);
        assert_eq!(labels(&[[1, 0], [0, 1], [-2, -3]]), ["A1", "A2"]);
    }

    #[test]
    fn rejects_bad_fans() {
        assert_eq!(
            Fan2D::new(vec![[2, 0], [0, 1], [-1, -1]]),
            Err(FanError::NotPrimitive([2, 0]))
        );
        assert!(matches!(
            Fan2D::new(vec![[1, 0], [0, 1], [-1, 0]]),
            Err(FanError::WronglyOriented(..))
        ));
        assert!(matches!(
            Fan2D::new(vec![[1, 0], [0, 1], [-1, 1], [-1, -1], [1, -1], [0, -1]]),
            Err(FanError::WronglyOriented(..))
        ));
        // winds twice
        let twice = [[1, 0], [0, 1], [-1, 0], [0, -1]];
        let doubled: Vec<Ray> = twice.iter().chain(twice.iter()).copied().collect();
        assert_eq!(Fan2D::new(doubled), Err(FanError::NotComplete(2)));
        assert_eq!(
            Fan2D::new(vec![[1, 0], [0, 1]]),
            Err(FanError::TooFewRays(2))
        );
        assert!(matches!(
            Fan2D::new(vec![[1, 0], [0, 1], [-1, 1]]),
            Err(FanError::WronglyOriented(..))
        ));
    }

    #[test]
    fn parses_ray_lists() {
        let fan: Fan2D = "1,2; 1,-2; -1,0".parse().unwrap();
        assert_eq!(fan.rays().len(), 3);
        assert!(matches!(
            "1,2; x,0; 1,1".parse::<Fan2D>(),
            Err(FanError::Parse(_))
        ));
    }

    #[test]
    fn unordered_input_is_sorted() {
        let fan = Fan2D::from_unordered(vec![[-1, 0], [1, -2], [1, 2], [0, -1]]).unwrap();
        assert_eq!(fan.rays(), [[1, 2], [-1, 0], [0, -1], [1, -2]]);
    }

    fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
        // products of elementary matrices and a reflection
        prop::collection::vec((0..4u8, -3i64..=3), 0..6).prop_map(|ops| {
            let mut m = [[1i64, 0], [0, 1]];
            for (op, k) in ops {
                let e = match op {
                    0 => [[1, k], [0, 1]],
                    1 => [[1, 0], [k, 1]],
                    2 => [[0, 1], [1, 0]],
                    _ => [[-1, 0], [0, 1]],
                };
                m = [
                    [
                        m[0][0] * e[0][0] + m[0][1] * e[1][0],
                        m[0][0] * e[0][1] + m[0][1] * e[1][1],
                    ],
                    [
                        m[1][0] * e[0][0] + m[1][1] * e[1][0],
                        m[1][0] * e[0][1] + m[1][1] * e[1][1],
                    ],
                ];
            }
            m
        })
    }

    fn fixture_fan() -> impl Strategy<Value = Vec<Ray>> {
        prop_oneof![
            Just(vec![[1, 2], [1, -2], [-1, 0]]),
            Just(vec![[-2, 1], [1, 1], [1, -2]]),
            Just(vec![[1, 0], [0, 1], [-2, -3]]),
            Just(vec![[1, 0], [0, 1], [-1, -3]]),
            Just(vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -2], [0, -1]]),
        ]
    }

    fn sorted_orders(fan: &Fan2D) -> Vec<(u64, bool)> {
        let mut v: Vec<_> = classify_fan(fan)
            .iter()
            .map(|s| (s.order, s.gorenstein))
            .collect();
        v.sort();
        v
    }

    proptest! {
        #[test]
        fn unimodular_invariance(rays in fixture_fan(), m in unimodular()) {
            let fan = Fan2D::new(rays.clone()).unwrap();
            let moved: Vec<Ray> = rays
                .iter()
                .map(|r| [m[0][0] * r[0] + m[0][1] * r[1], m[1][0] * r[0] + m[1][1] * r[1]])
                .collect();
            let moved = Fan2D::new(moved).unwrap();
            prop_assert_eq!(sorted_orders(&fan), sorted_orders(&moved));
        }

        #[test]
        fn rotation_invariance(rays in fixture_fan(), shift in 0usize..6) {
            let mut rotated = rays.clone();
            let len = rotated.len();
            rotated.rotate_left(shift % len);
            let a = Fan2D::new(rays).unwrap();
            let b = Fan2D::new(rotated).unwrap();
            prop_assert_eq!(singularity_multiset(&a).ok(), singularity_multiset(&b).ok());
        }

        #[test]
        fn order_one_iff_lattice_basis(rays in fixture_fan()) {
            let fan = Fan2D::new(rays).unwrap();
            for s in classify_fan(&fan) {
                let (u, v) = s.cone;
                // a basis reaches both unit vectors with integer coefficients
                let d = det(u, v);
                let basis = [v[1], -u[1], -v[0], u[0]].iter().all(|c| c % d == 0);
                prop_assert_eq!(s.is_smooth(), basis);
            }
        }
    }
}
