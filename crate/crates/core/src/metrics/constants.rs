use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::geometry::linalg::binomial;

/// `κ_m = π^{m/2} / Γ(m/2 + 1)`, the volume of the unit m-ball.
pub fn unit_ball_volume(m: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let h = m as f64 / 2.0;
    (h * std::f64::consts::PI.ln() - ln_gamma(h + 1.0)).exp()
}

/// `S_d = d κ_d`, the surface area of the unit sphere in ℝ^d.
pub fn sphere_area(d: usize) -> f64 {
    d as f64 * unit_ball_volume(d)
}

/// Flag coefficient `C(d,j) κ_d / (κ_j κ_{d-j})`.
pub fn flag_coefficient(d: usize, j: usize) -> f64 {
    binomial(d, j) * unit_ball_volume(d) / (unit_ball_volume(j) * unit_ball_volume(d - j))
}

/// `V_j(B_d) = C(d,j) κ_d / κ_{d-j}`.
pub fn ball_intrinsic_volume(d: usize, j: usize) -> f64 {
    binomial(d, j) * unit_ball_volume(d) / unit_ball_volume(d - j)
}

/// Per-dimension constants of the unit ball.
#[derive(Debug, Clone, Serialize)]
pub struct BallConstants {
    pub d: usize,
    /// `kappa[m] = κ_m` for `m = 0..=d`
    pub kappa: Vec<f64>,
    #[serde(rename = "S")]
    pub s: f64,
    /// `flag[j]` for `j = 0..=d`
    pub flag: Vec<f64>,
    /// `vj_ball[j] = V_j(B_d)` for `j = 0..=d`
    pub vj_ball: Vec<f64>,
    pub wills: f64,
    pub avg_wills: f64,
}

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

pub fn ball_constants(d: usize) -> Result<BallConstants> {
    if !(MIN_DIM..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let kappa: Vec<f64> = (0..=d).map(unit_ball_volume).collect();
    let flag: Vec<f64> = (0..=d).map(|j| flag_coefficient(d, j)).collect();
    let vj_ball: Vec<f64> = (0..=d).map(|j| ball_intrinsic_volume(d, j)).collect();
    let wills = vj_ball.iter().sum();
    let avg_wills = (1..=d).map(|j| j as f64 / d as f64 * vj_ball[j]).sum();
    Ok(BallConstants {
        d,
        s: d as f64 * kappa[d],
        kappa,
        flag,
        vj_ball,
        wills,
        avg_wills,
    })
}

impl BallConstants {
    /// `V_1(K) = mean_width_factor · w(K)`
    pub fn mean_width_factor(&self) -> f64 {
        self.s / (2.0 * self.kappa[self.d - 1])
    }
}
