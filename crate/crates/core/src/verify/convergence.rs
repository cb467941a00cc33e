//! Residual of the identity as a function of grid resolution: the same
//! instance run over a ladder of grids, for convergence-order studies.

use crate::error::{Error, Result};
use crate::verify::instance::InstanceSpec;
use crate::verify::pipeline::verify;
use serde::Serialize;

#[derive(Serialize)]
pub struct ConvergencePoint {
    pub resolution: usize,
    pub lhs_c2: Option<f64>,
    pub rhs_c1c1: Option<f64>,
    pub rhs_bott_chern_integral: Option<f64>,
    pub rhs_log_gamma: f64,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

pub fn convergence(spec: &InstanceSpec, grids: &[usize]) -> Result<Vec<ConvergencePoint>> {
    if grids.is_empty() {
        return Err(Error::Schema("empty grid list".to_string()));
    }
    let mut out = Vec::with_capacity(grids.len());
    for &n in grids {
        if !(8..=4096).contains(&n) {
            return Err(Error::Schema(format!(
                "grid resolution {n} outside 8..=4096"
            )));
        }
        let mut s = spec.clone();
        s.grid.resolution = n;
        let r = verify(&s)?;
        out.push(ConvergencePoint {
            resolution: n,
            lhs_c2: r.lhs_c2,
            rhs_c1c1: r.rhs_c1c1,
            rhs_bott_chern_integral: r.rhs_bott_chern_integral,
            rhs_log_gamma: r.rhs_log_gamma,
            residual: r.residual,
            error: r.error,
        });
    }
    Ok(out)
}
