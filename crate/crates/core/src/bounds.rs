//! Closed-form lower bounds for approximating the unit ball by polytopes with
//! at most `M` k-faces, with the predicates under which each one applies.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::geometry::lattice::{facet_side_applies, vertex_side_applies};
use crate::metrics::constants::{ball_intrinsic_volume, sphere_area, unit_ball_volume};

/// `ρ_d = S_d / (4 κ_{d-1})` and `ρ_d^{2/(d-1)}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RhoD {
    pub d: usize,
    pub rho: f64,
    pub rho_pow: f64,
}

pub fn rho_d(d: usize) -> RhoD {
    let rho = sphere_area(d) / (4.0 * unit_ball_volume(d - 1));
    RhoD {
        d,
        rho,
        rho_pow: rho.powf(exponent(d)),
    }
}

/// `2 / (d - 1)`
fn exponent(d: usize) -> f64 {
    2.0 / (d as f64 - 1.0)
}

/// `M^{-2/(d-1)}`
fn decay(d: usize, m: f64) -> f64 {
    (-exponent(d) * m.ln()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Inscribed,
    Circumscribed,
}

/// Which part of the f-vector a bound covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KRange {
    /// `0 ≤ k ≤ ⌊d/2⌋`
    VertexSide,
    /// `⌈d/2⌉ - 1 ≤ k ≤ d - 1`
    FacetSide,
    Any,
}

impl KRange {
    pub fn contains(self, d: usize, k: usize) -> bool {
        match self {
            KRange::VertexSide => vertex_side_applies(d, k),
            KRange::FacetSide => facet_side_applies(d, k),
            KRange::Any => k < d,
        }
    }
}

/// Which coefficient the correction bracket of the intrinsic-volume bound uses:
/// the published `(d-j)/8` or the `(j-1)/8` that its derivation produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketMode {
    #[default]
    Statement,
    Proof,
}

/// A condition attached to a bound. `satisfied` is `None` until it is checked
/// against an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Requirement {
    KRange { range: KRange, satisfied: Option<bool> },
    Side { side: Side, satisfied: Option<bool> },
    OriginInterior { satisfied: Option<bool> },
    MinM { threshold: f64, satisfied: Option<bool> },
    ContainedIn { radius: f64, satisfied: Option<bool> },
    FacetsMeetBallInterior { satisfied: Option<bool> },
    PositiveBracket { factor: f64, satisfied: Option<bool> },
}

impl Requirement {
    pub fn satisfied(&self) -> Option<bool> {
        match self {
            Requirement::KRange { satisfied, .. }
            | Requirement::Side { satisfied, .. }
            | Requirement::OriginInterior { satisfied }
            | Requirement::MinM { satisfied, .. }
            | Requirement::ContainedIn { satisfied, .. }
            | Requirement::FacetsMeetBallInterior { satisfied }
            | Requirement::PositiveBracket { satisfied, .. } => *satisfied,
        }
    }

    fn evaluate(&mut self, inst: &InstanceDescriptor) {
        let d = inst.d;
        match self {
            Requirement::KRange { range, satisfied } => *satisfied = Some(range.contains(d, inst.k)),
            Requirement::Side { side, satisfied } => {
                *satisfied = Some(match side {
                    Side::Inscribed => inst.inscribed,
                    Side::Circumscribed => inst.circumscribed,
                })
            }
            Requirement::OriginInterior { satisfied } => *satisfied = Some(inst.origin_interior),
            Requirement::MinM { threshold, satisfied } => *satisfied = Some(inst.m as f64 >= *threshold),
            Requirement::ContainedIn { radius, satisfied } => {
                *satisfied = Some(inst.max_vertex_norm <= *radius + crate::metrics::deviation::NEST_TOL)
            }
            Requirement::FacetsMeetBallInterior { satisfied } => *satisfied = Some(inst.facets_meet_ball_interior),
            Requirement::PositiveBracket { .. } => {}
        }
    }
}

/// What a bound needs to know about a concrete polytope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstanceDescriptor {
    pub d: usize,
    pub k: usize,
    /// `f_k(P)`
    pub m: usize,
    pub inscribed: bool,
    pub circumscribed: bool,
    pub origin_interior: bool,
    pub max_vertex_norm: f64,
    /// every facet is at distance < 1 from the origin
    pub facets_meet_ball_interior: bool,
}

/// Evaluated right-hand side of a lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub valid: bool,
    pub requirements: Vec<Requirement>,
    pub provenance: String,
}

impl BoundValue {
    fn new(value: f64, provenance: impl Into<String>, requirements: Vec<Requirement>) -> Self {
        let mut b = BoundValue {
            value: value.max(0.0),
            valid: true,
            requirements,
            provenance: provenance.into(),
        };
        b.refresh();
        b
    }

    fn refresh(&mut self) {
        self.valid = self.requirements.iter().all(|r| r.satisfied() != Some(false));
    }

    /// Evaluate every instance-dependent requirement.
    pub fn check(mut self, inst: &InstanceDescriptor) -> Self {
        for r in &mut self.requirements {
            r.evaluate(inst);
        }
        self.refresh();
        self
    }
}

fn k_req(range: KRange) -> Requirement {
    Requirement::KRange { range, satisfied: None }
}

fn side_req(side: Side) -> Requirement {
    Requirement::Side { side, satisfied: None }
}

/// Mean-width deficit of an inscribed polytope: `(1/4) ρ^{2/(d-1)} M^{-2/(d-1)}`.
pub fn bound_mw_inscribed(d: usize, m: f64) -> BoundValue {
    let value = 0.25 * rho_d(d).rho_pow * decay(d, m);
    BoundValue::new(
        value,
        "mw-inscribed",
        vec![
            k_req(KRange::VertexSide),
            side_req(Side::Inscribed),
            Requirement::OriginInterior { satisfied: None },
        ],
    )
}

/// Volume excess of a circumscribed polytope: `(S_d/8) ρ^{2/(d-1)} M^{-2/(d-1)}`.
pub fn bound_vol_circumscribed(d: usize, m: f64) -> BoundValue {
    let value = sphere_area(d) / 8.0 * rho_d(d).rho_pow * decay(d, m);
    BoundValue::new(
        value,
        "vol-circumscribed",
        vec![k_req(KRange::FacetSide), side_req(Side::Circumscribed)],
    )
}

fn side_constants(side: Side) -> (f64, f64) {
    match side {
        Side::Inscribed => (4.0, 8.0),
        Side::Circumscribed => (8.0, 16.0),
    }
}

/// `δ_j(P, B_d)` lower bound with its correction bracket.
pub fn bound_delta_j(d: usize, j: usize, m: f64, side: Side, mode: BracketMode) -> BoundValue {
    let (lead, corr) = side_constants(side);
    let rp = rho_d(d).rho_pow;
    let t = rp * decay(d, m);
    let coeff = match (side, mode) {
        (Side::Inscribed, BracketMode::Proof) => j as f64 - 1.0,
        _ => (d - j) as f64,
    };
    let bracket = 1.0 - coeff / corr * t;
    let value = j as f64 / lead * ball_intrinsic_volume(d, j) * t * bracket;
    let range = match side {
        Side::Inscribed => KRange::VertexSide,
        Side::Circumscribed => KRange::FacetSide,
    };
    let mut reqs = vec![k_req(range), side_req(side)];
    if side == Side::Inscribed {
        reqs.push(Requirement::OriginInterior { satisfied: None });
    }
    reqs.push(Requirement::PositiveBracket {
        factor: bracket,
        satisfied: Some(bracket > 0.0),
    });
    let side_tag = match side {
        Side::Inscribed => "inscribed",
        Side::Circumscribed => "circumscribed",
    };
    let mode_tag = match mode {
        BracketMode::Statement => "",
        BracketMode::Proof => "-proof-bracket",
    };
    BoundValue::new(value, format!("intrinsic-j{j}-{side_tag}{mode_tag}"), reqs)
}

/// Smallest `M` for which the bracket of [`bound_delta_j`] is at least `c`:
/// `ρ_d ((d-j) / (8(1-c)))^{(d-1)/2}` (16 on the circumscribed side).
pub fn delta_j_threshold(d: usize, j: usize, c: f64, side: Side) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::CInvalid(c));
    }
    let (_, corr) = side_constants(side);
    Ok(rho_d(d).rho * ((d - j) as f64 / (corr * (1.0 - c))).powf((d as f64 - 1.0) / 2.0))
}

/// Wills-metric bound `(c/4) ρ^{2/(d-1)} d W̄(B_d) M^{-2/(d-1)}` (c/8 circumscribed),
/// valid from the threshold with `d - 1` in place of `d - j`.
pub fn bound_wills(d: usize, m: f64, c: f64, side: Side) -> Result<BoundValue> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::CInvalid(c));
    }
    let (lead, corr) = side_constants(side);
    let avg_wills: f64 = (1..=d).map(|j| j as f64 / d as f64 * ball_intrinsic_volume(d, j)).sum();
    let value = c / lead * rho_d(d).rho_pow * d as f64 * avg_wills * decay(d, m);
    let threshold = rho_d(d).rho * ((d as f64 - 1.0) / (corr * (1.0 - c))).powf((d as f64 - 1.0) / 2.0);
    let range = match side {
        Side::Inscribed => KRange::VertexSide,
        Side::Circumscribed => KRange::FacetSide,
    };
    let tag = match side {
        Side::Inscribed => "wills-inscribed",
        Side::Circumscribed => "wills-circumscribed",
    };
    let mut reqs = vec![k_req(range), side_req(side)];
    if side == Side::Inscribed {
        reqs.push(Requirement::OriginInterior { satisfied: None });
    }
    reqs.push(Requirement::MinM {
        threshold,
        satisfied: Some(m >= threshold),
    });
    Ok(BoundValue::new(value, tag, reqs))
}

/// Symmetric-difference bound for arbitrarily placed polytopes:
/// `A^{(d+1)/(d-1)} M^{-2/(d-1)} / (2 d κ_{d-1}^{2/(d-1)})` with `A = vol_{d-1}(∂P ∩ B_d)`.
pub fn bound_symdiff_arbitrary(d: usize, boundary_mass: f64, m: f64) -> BoundValue {
    let e = exponent(d);
    let value = boundary_mass.max(0.0).powf((d as f64 + 1.0) / (d as f64 - 1.0)) * decay(d, m)
        / (2.0 * d as f64 * unit_ball_volume(d - 1).powf(e));
    BoundValue::new(
        value,
        "symdiff-arbitrary",
        vec![
            k_req(KRange::FacetSide),
            Requirement::FacetsMeetBallInterior { satisfied: None },
        ],
    )
}

/// Reference line for symmetric-difference reports (never used for pass/fail):
/// `S_d^{(d+1)/(d-1)} M^{-2/(d-1)} / (67 π e² d)`.
pub fn boroczky_reference(d: usize, m: f64) -> f64 {
    let e2 = std::f64::consts::E * std::f64::consts::E;
    sphere_area(d).powf((d as f64 + 1.0) / (d as f64 - 1.0)) * decay(d, m) / (67.0 * std::f64::consts::PI * e2 * d as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HausdorffBranch {
    InscFacets,
    InscVertices,
    CircFacets,
    CircVertices,
}

impl HausdorffBranch {
    pub fn tag(self) -> &'static str {
        match self {
            HausdorffBranch::InscFacets => "hausdorff-inscribed-facets",
            HausdorffBranch::InscVertices => "hausdorff-inscribed-vertices",
            HausdorffBranch::CircFacets => "hausdorff-circumscribed-facets",
            HausdorffBranch::CircVertices => "hausdorff-circumscribed-vertices",
        }
    }
}

/// Hausdorff-distance bounds in terms of `∂P` and the face count `N`.
pub fn bound_hausdorff(d: usize, n: f64, surface_area: f64, branch: HausdorffBranch) -> BoundValue {
    let (lead, denom, range, side) = match branch {
        HausdorffBranch::InscFacets => (0.5, unit_ball_volume(d - 1), KRange::FacetSide, Side::Inscribed),
        HausdorffBranch::InscVertices => (0.5, sphere_area(d), KRange::VertexSide, Side::Inscribed),
        HausdorffBranch::CircFacets => (1.0 / 3.0, unit_ball_volume(d - 1), KRange::FacetSide, Side::Circumscribed),
        HausdorffBranch::CircVertices => (1.0 / 3.0, sphere_area(d), KRange::VertexSide, Side::Circumscribed),
    };
    let value = lead * (surface_area / (4.0 * n * denom)).powf(exponent(d));
    let mut reqs = vec![k_req(range), side_req(side)];
    if side == Side::Circumscribed {
        reqs.push(Requirement::ContainedIn {
            radius: std::f64::consts::SQRT_2,
            satisfied: None,
        });
    }
    BoundValue::new(value, branch.tag(), reqs)
}

/// Cap height `η_{d,N} = (1/3) (S_d / (4 N κ_{d-1}))^{2/(d-1)}`.
pub fn eta_dn(d: usize, n: f64) -> f64 {
    (sphere_area(d) / (4.0 * n * unit_ball_volume(d - 1))).powf(exponent(d)) / 3.0
}

/// `((d-1)/(d+1)) (2 S_d / ((d+1) κ_{d-1}))^{2/(d-1)}`
pub fn asymptotic_lower_mw(d: usize) -> f64 {
    let df = d as f64;
    (df - 1.0) / (df + 1.0) * (2.0 * sphere_area(d) / ((df + 1.0) * unit_ball_volume(d - 1))).powf(exponent(d))
}

/// `(S_d/2) · asymptotic_lower_mw(d)`
pub fn asymptotic_lower_vol(d: usize) -> f64 {
    sphere_area(d) / 2.0 * asymptotic_lower_mw(d)
}

/// Computable bracket around the Dirichlet–Voronoi tiling constant `div_{d-1}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivBracket {
    pub lower: f64,
    pub upper: f64,
}

pub fn div_bracket(d: usize) -> DivBracket {
    let df = d as f64;
    let e = exponent(d);
    let kappa = unit_ball_volume(d - 1);
    DivBracket {
        lower: (df - 1.0) / (df + 1.0) * (2.0 / ((df + 1.0) * kappa)).powf(e),
        upper: e * gamma(e) * kappa.powf(-e),
    }
}

/// Limit of `N^{2/(d-1)} (w(B_d) - E w(P_N))` for `N` uniform random points on the sphere.
pub fn muller_limit(d: usize) -> f64 {
    let e = exponent(d);
    e * (sphere_area(d) / unit_ball_volume(d - 1)).powf(e) * gamma(e)
}

/// `ρ_d^{2/(d-1)}` for each `d` in the range.
pub fn flag_ratio_trend(ds: impl IntoIterator<Item = usize>) -> Vec<RhoD> {
    ds.into_iter().map(rho_d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn rho_values() {
        assert_relative_eq!(rho_d(2).rho_pow, (PI / 4.0).powi(2), max_relative = 1e-12);
        assert_relative_eq!(rho_d(3).rho_pow, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn mean_width_and_volume_examples() {
        assert_relative_eq!(bound_mw_inscribed(2, 6.0).value, PI * PI / 2304.0, max_relative = 1e-12);
        assert_relative_eq!(bound_mw_inscribed(3, 4.0).value, 0.0625, max_relative = 1e-12);
        assert_relative_eq!(bound_vol_circumscribed(3, 6.0).value, PI / 12.0, max_relative = 1e-12);
        // (2π/8)(π/4)²/16 = π³/1024
        assert_relative_eq!(bound_vol_circumscribed(2, 4.0).value, PI.powi(3) / 1024.0, max_relative = 1e-12);
        assert!(bound_mw_inscribed(2, 1e12).value < 1e-20);
    }

    #[test]
    fn intrinsic_examples() {
        let b = bound_delta_j(3, 3, 8.0, Side::Inscribed, BracketMode::Statement);
        assert_relative_eq!(b.value, PI / 8.0, max_relative = 1e-12);
        let b = bound_delta_j(3, 1, 4.0, Side::Circumscribed, BracketMode::Statement);
        assert_relative_eq!(b.value, 0.125 * 4.0 * 0.25 * 31.0 / 32.0, max_relative = 1e-12);
        let p = bound_delta_j(3, 1, 4.0, Side::Inscribed, BracketMode::Proof);
        assert_relative_eq!(p.value, 0.25 * 4.0 * 0.25, max_relative = 1e-12);
    }

    #[test]
    fn wills_examples() {
        let b = bound_wills(2, 6.0, 0.5, Side::Inscribed).unwrap();
        assert_relative_eq!(b.value, 0.125 * (PI * PI / 16.0) * 2.0 * 1.5 * PI / 36.0, max_relative = 1e-12);
        assert!(b.valid);
        let Some(&Requirement::MinM { threshold, .. }) = b.requirements.last() else { panic!() };
        assert_relative_eq!(threshold, PI / 8.0, max_relative = 1e-12);
        assert!(matches!(bound_wills(2, 6.0, 1.0, Side::Inscribed), Err(Error::CInvalid(_))));
        assert!(!bound_wills(3, 1e6, 1.0 - 1e-12, Side::Inscribed).unwrap().valid);
    }

    #[test]
    fn symdiff_examples() {
        let a = 2.0 * PI * 0.9;
        assert_relative_eq!(bound_symdiff_arbitrary(2, a, 8.0).value, a.powi(3) / 16.0 / 64.0, max_relative = 1e-12);
        assert_eq!(bound_symdiff_arbitrary(2, 0.0, 8.0).value, 0.0);
        assert_relative_eq!(bound_symdiff_arbitrary(3, 4.0 * PI, 20.0).value, 0.41887902047863906, max_relative = 1e-12);
    }

    #[test]
    fn hausdorff_examples() {
        let b = bound_hausdorff(2, 4.0, 4.0 * 2f64.sqrt(), HausdorffBranch::InscFacets);
        assert_relative_eq!(b.value, 1.0 / 64.0, max_relative = 1e-12);
        let c = bound_hausdorff(2, 4.0, 8.0, HausdorffBranch::CircVertices);
        assert_relative_eq!(c.value, 1.0 / (48.0 * PI * PI), max_relative = 1e-12);
    }

    #[test]
    fn eta_and_asymptotics() {
        assert_relative_eq!(eta_dn(2, 4.0), PI * PI / 768.0, max_relative = 1e-12);
        assert_relative_eq!(eta_dn(3, 4.0), 1.0 / 12.0, max_relative = 1e-12);
        assert_relative_eq!(asymptotic_lower_mw(2), (2.0 * PI / 3.0).powi(2) / 3.0, max_relative = 1e-12);
        assert_relative_eq!(asymptotic_lower_mw(3), 1.0, max_relative = 1e-12);
        assert_relative_eq!(asymptotic_lower_vol(3), 2.0 * PI, max_relative = 1e-12);
    }

    #[test]
    fn div_and_muller() {
        let b2 = div_bracket(2);
        assert_relative_eq!(b2.lower, 1.0 / 27.0, max_relative = 1e-12);
        assert_relative_eq!(b2.upper, 0.5, max_relative = 1e-12);
        let b3 = div_bracket(3);
        assert_relative_eq!(b3.lower, 1.0 / (4.0 * PI), max_relative = 1e-12);
        assert_relative_eq!(b3.upper, 1.0 / PI, max_relative = 1e-12);
        assert_relative_eq!(muller_limit(2), 2.0 * PI * PI, max_relative = 1e-12);
        assert_relative_eq!(muller_limit(3), 4.0, max_relative = 1e-12);
    }
}
