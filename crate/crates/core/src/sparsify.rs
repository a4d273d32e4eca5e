//! Classical cut sparsifier: Matula estimate, optional sparse certificate,
//! then uniform sampling of the multigraph view.

use num_rational::Ratio;

use crate::graph::WeightedGraph;
use crate::rng::{self, tag};
use crate::treepack::{matula_estimate, ni_certificate, skeleton_sample, TreePackError};

/// Edge-count constant: outputs have at most
/// `SPARSIFIER_EDGE_CONSTANT * n * ln(n) / eps^2` edges.
pub const SPARSIFIER_EDGE_CONSTANT: u64 = 25;

/// Sampling rate numerator `3 * d` with `d = 2`, as in `p = 3d ln(n) / (eps * lambda)`.
const RATE_FACTOR: u64 = 6;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SparsifyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("eps must lie in (0, 1/3], got {0}")]
    BadEps(Ratio<u64>),
    #[error(transparent)]
    Pack(#[from] TreePackError),
}

/// Sparsifier graph with the factor mapping its cut weights back to the
/// input's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sparsifier {
    pub graph: WeightedGraph,
    /// `w_g(X) ~ scale * w_h(X)` for every shore `X`.
    pub scale: Ratio<u64>,
}

pub fn sparsifier_scale(h: &Sparsifier) -> Ratio<u64> {
    h.scale
}

/// Deterministic bound on the output edge count.
pub fn edge_budget(n: usize, eps: Ratio<u64>) -> u64 {
    let (num, den) = (*eps.numer() as f64, *eps.denom() as f64);
    let n_f = n as f64;
    (SPARSIFIER_EDGE_CONSTANT as f64 * n_f * n_f.ln() * den * den / (num * num)).floor() as u64
}

/// Integer-weighted sparsifier of a connected `g`.
///
/// With lower estimate `low = ceil(matula / 3) <= lambda`, samples
/// `ceil(p * W)` multigraph edges at `p = 6 ln(n) / (eps * low)`. The scale
/// is `W / draws`, the exact reciprocal of the realized rate. When
/// `p >= 1` the graph is returned unchanged. Inputs with more edges than
/// `edge_budget` are first replaced by their sparse certificate at
/// `ceil((1 + eps) * matula)`, which keeps every cut up to that weight.
pub fn cut_sparsifier(g: &WeightedGraph, eps: Ratio<u64>, seed: u64) -> Result<Sparsifier, SparsifyError> {
    if *eps.numer() == 0 || eps > Ratio::new(1, 3) {
        return Err(SparsifyError::BadEps(eps));
    }
    let n = g.n();
    if n < 2 {
        return Err(SparsifyError::TooFewVertices(n));
    }
    if !g.is_connected() {
        return Err(SparsifyError::Disconnected);
    }
    let estimate = matula_estimate(g)?;
    let low = estimate.div_ceil(3).max(1);
    let budget = edge_budget(n, eps);
    let frame = if g.m() as u64 <= budget {
        g.clone()
    } else {
        let c = (estimate as u128 * (*eps.denom() + *eps.numer()) as u128)
            .div_ceil(*eps.denom() as u128);
        ni_certificate(g, c.min(u64::MAX as u128) as u64)
    };
    // Rate as a rational with ln(n) rounded up at three decimals.
    let rate_num = (RATE_FACTOR as f64 * (n as f64).ln() * 1000.0).ceil() as u128 * *eps.denom() as u128;
    let rate_den = 1000u128 * *eps.numer() as u128 * low as u128;
    if rate_num >= rate_den {
        return Ok(Sparsifier {
            graph: frame,
            scale: Ratio::from_integer(1),
        });
    }
    let divisor = gcd(rate_num, rate_den);
    let (rate_num, rate_den) = (rate_num / divisor, rate_den / divisor);
    let p = match (u64::try_from(rate_num), u64::try_from(rate_den)) {
        (Ok(a), Ok(b)) => Ratio::new(a, b),
        // Astronomically heavy input: approximate with a 64-bit denominator.
        _ => Ratio::new(1, u64::try_from(rate_den / rate_num.max(1)).unwrap_or(u64::MAX)),
    };
    let total = crate::graph::total_weight(&frame) as u128;
    let draws = (total * *p.numer() as u128).div_ceil(*p.denom() as u128);
    let graph = skeleton_sample(&frame, p, rng::derive(seed, tag::SPARSIFY))?;
    debug_assert!(graph.m() as u64 <= budget.max(g.m() as u64));
    Ok(Sparsifier {
        graph,
        scale: Ratio::new(total as u64, draws as u64),
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
