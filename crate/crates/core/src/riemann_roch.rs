//! Euler characteristics on the singular surface via Riemann–Roch for normal
//! surfaces, and Baker's arithmetic criterion for Bott vanishing on Cartier
//! divisors.
//!
//! `χ(O_X) = 1` throughout: every surface here is rational with quotient
//! singularities.

use crate::intersection::{k_product, product_resolution, pullback, QDivisor, Surface, WeilClass};
use crate::invariants::{c2_global_from_pullback, local_invariants_from_pullback, LocalInvariants};
use crate::rational::{int, to_pq, Rational};

/// Every intermediate quantity of one `χ(X, Ω^[1](D))` evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiBreakdown {
    pub divisor: WeilClass,
    pub pullback: QDivisor,
    /// `D²`
    pub self_int: Rational,
    /// `K_X·D`
    pub k_dot: Rational,
    pub c2_global: Rational,
    pub a_terms: Vec<LocalInvariants>,
    /// `χ(X, Ω^[1](D))`
    pub chi_omega: Rational,
    /// `χ(X, O(D))`
    pub chi_structure: Rational,
}

impl ChiBreakdown {
    pub fn sum_a_omega(&self) -> Rational {
        self.a_terms.iter().map(|t| &t.a_omega).sum()
    }

    pub fn sum_a_o(&self) -> Rational {
        self.a_terms.iter().map(|t| &t.a_o).sum()
    }

    /// Flat `key -> "p/q"` record, in a fixed key order.
    pub fn to_record(&self, surface: &Surface) -> Vec<(String, String)> {
        let mut out = vec![("divisor".to_string(), self.divisor.to_string())];
        for (p, c) in self.pullback.coefficients().iter().enumerate() {
            out.push((format!("pullback.C{}", surface.curve_id(p).0), to_pq(c)));
        }
        out.push(("self_int".into(), to_pq(&self.self_int)));
        out.push(("k_dot".into(), to_pq(&self.k_dot)));
        for t in &self.a_terms {
            let label = surface.model().singular_points[t.point].label;
            let key = format!("point{}.{label}", t.point);
            out.push((format!("{key}.a_O"), to_pq(&t.a_o)));
            out.push((format!("{key}.a_omega"), to_pq(&t.a_omega)));
            out.push((format!("{key}.c2_local"), to_pq(&t.c2_local_omega_twisted)));
            out.push((format!("{key}.k"), t.k_summands.to_string()));
        }
        out.push(("c2_global".into(), to_pq(&self.c2_global)));
        out.push(("chi_structure".into(), to_pq(&self.chi_structure)));
        out.push(("chi_omega".into(), to_pq(&self.chi_omega)));
        out
    }
}

/// `χ(X, Ω^[1](D)) = 2 + (K_X + 2D)·D - c_2(Ω^[1](D)) + Σ_x a(x, Ω^[1](D))`.
pub fn chi_omega1(surface: &Surface, d: &WeilClass) -> ChiBreakdown {
    let pb = pullback(surface, d);
    let self_int = product_resolution(surface, &pb, &pb);
    let k_dot = k_product(surface, d);
    let c2_global = c2_global_from_pullback(surface, d, &pb);
    let a_terms = local_invariants_from_pullback(surface, &pb);

    let sum_omega: Rational = a_terms.iter().map(|t| &t.a_omega).sum();
    let sum_o: Rational = a_terms.iter().map(|t| &t.a_o).sum();
    let chi_omega = int(2) + &k_dot + int(2) * &self_int - &c2_global + sum_omega;
    let chi_structure = int(1) + (&self_int - &k_dot) / int(2) + sum_o;

    ChiBreakdown {
        divisor: d.clone(),
        pullback: pb,
        self_int,
        k_dot,
        c2_global,
        a_terms,
        chi_omega,
        chi_structure,
    }
}

/// `χ(X, O(D)) = 1 + ½ D·(D - K_X) + Σ_x a(x, O(D))`.
pub fn chi_rank1(surface: &Surface, d: &WeilClass) -> Rational {
    chi_omega1(surface, d).chi_structure
}

/// Baker: a Gorenstein del Pezzo surface satisfies Bott vanishing for Cartier
/// divisors iff `h⁰(X̃, T_X̃) = 10 - n - 2ρ(X)`.
pub fn baker_cartier_bv(h0_tangent: u32, n_minus2_curves: u32, rho: u32) -> bool {
    i64::from(h0_tangent) == 10 - i64::from(n_minus2_curves) - 2 * i64::from(rho)
}
