use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

/// Upper bound on residual edges, as a multiple of `n`, that the
/// sparse-partition step will ship to every vertex.
pub const C_SPARSE: usize = 8;

/// `floor(x)` with a little slack so `(2 + 2.0) * 3` is 12 and not 11.
pub(crate) fn floor_tol(x: f64) -> u64 {
    (x + 1e-9).floor() as u64
}

pub(crate) fn ceil_tol(x: f64) -> u64 {
    (x - 1e-9).ceil().max(0.0) as u64
}

/// Parameters of one H-partition computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPartitionParams {
    /// Arboricity promise.
    pub a: u32,
    /// `s` in the threshold `(2 + s) a`.
    pub slack: f64,
    /// A vertex with at most this many active neighbours joins the current
    /// level. Also bounds the out-degree of the induced orientation.
    pub threshold: u64,
    /// Number of distributed peeling iterations before the residual graph is
    /// handled centrally.
    pub iterations: u32,
}

impl HPartitionParams {
    /// Threshold `floor((2 + eps) a)` and `ceil((2 / eps) log2 a)` iterations.
    pub fn standard(a: u32, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return invalid(format!("eps must be positive, got {eps}"));
        }
        let iterations = if a <= 1 {
            0
        } else {
            ceil_tol(2.0 / eps * (a as f64).log2()) as u32
        };
        Ok(HPartitionParams {
            a,
            slack: eps,
            threshold: floor_tol((2.0 + eps) * a as f64),
            iterations,
        })
    }

    /// Threshold `floor((2 + q) a)` with `q = a^eps` and `ceil(2 / eps)`
    /// iterations; the iteration count does not depend on `a`.
    pub fn with_power(a: u32, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return invalid(format!("eps must be positive, got {eps}"));
        }
        if a < 2 {
            return invalid("the power threshold needs a >= 2");
        }
        let q = (a as f64).powf(eps);
        Ok(HPartitionParams {
            a,
            slack: q,
            threshold: floor_tol((2.0 + q) * a as f64),
            iterations: ceil_tol(2.0 / eps) as u32,
        })
    }

    /// Largest number of forests a decomposition with these parameters uses.
    pub fn forest_bound(&self) -> u64 {
        self.threshold
    }

    /// Level numbering of the sparse-partition suffix.
    pub fn start_index(&self) -> u32 {
        self.iterations + 1
    }
}
