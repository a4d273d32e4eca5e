//! Lower-bound graph families with closed-form minimum cuts, and random
//! connected weighted graphs.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::graph::{GraphError, Shore, WeightedGraph};
use crate::rng::{self, tag};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn infeasible(msg: impl Into<String>) -> InstanceError {
    InstanceError::Infeasible(msg.into())
}

/// Generated graph with its known minimum cut, when the family has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    /// Minimum cut weight in the graph's integer units.
    pub lambda: Option<u64>,
    /// The unique minimum-cut shore, when unique.
    pub shore: Option<Shore>,
    /// Real value of one integer weight unit.
    pub unit: Ratio<u64>,
}

/// Bit string of length `len` with exactly `ones` set bits at random places.
pub fn random_bits(len: usize, ones: usize, seed: u64) -> Result<Vec<bool>, InstanceError> {
    if ones > len {
        return Err(infeasible(format!("{ones} ones in {len} bits")));
    }
    let mut bits = vec![false; len];
    bits[..ones].fill(true);
    bits.shuffle(&mut rng::stream(seed, tag::INSTANCE));
    Ok(bits)
}

/// `tau * (floor(n/2) - 1)`, the star weight of the distinguished vertex.
pub fn matrix_lb_k(n: usize, tau: u64) -> u64 {
    tau * (n / 2).saturating_sub(1) as u64
}

/// Number of cross bits of the matrix-model family: `(floor(n/2) - 1) * ceil(n/2)`.
pub fn matrix_lb_bits(n: usize) -> usize {
    (n / 2).saturating_sub(1) * n.div_ceil(2)
}

/// Matrix-model family: cliques of weight `tau` on `V0 = [0, n/2)` and
/// `V1 = [n/2, n)`, plus unit edges between `V0 \ {0}` and `V1` where `x`
/// is set (row-major over `V0' x V1`). `lambda = min(|x|, k)`.
pub fn gen_matrix_lb(n: usize, tau: u64, x: &[bool]) -> Result<Instance, InstanceError> {
    let half = n / 2;
    if half < 2 || tau < 1 || 2 * tau > (half - 1) as u64 {
        return Err(infeasible(format!(
            "need 1 <= tau <= (floor(n/2) - 1) / 2, got n = {n}, tau = {tau}"
        )));
    }
    if x.len() != matrix_lb_bits(n) {
        return Err(infeasible(format!(
            "x has {} bits, expected {}",
            x.len(),
            matrix_lb_bits(n)
        )));
    }
    let mut edges = Vec::new();
    for part in [0..half, half..n] {
        for u in part.clone() {
            for v in u + 1..part.end {
                edges.push((u, v, tau));
            }
        }
    }
    let width = n - half;
    for (i, _) in x.iter().enumerate().filter(|(_, &b)| b) {
        edges.push((1 + i / width, half + i % width, 1));
    }
    let graph = WeightedGraph::new(n, edges)?;
    let ones = x.iter().filter(|&&b| b).count() as u64;
    let k = matrix_lb_k(n, tau);
    Ok(Instance {
        graph,
        lambda: Some(ones.min(k)),
        shore: (ones < k).then(|| Shore::from_vertices(n, 0..half)),
        unit: Ratio::from_integer(1),
    })
}

/// Array-model family with constant weight ratio: complete bipartite
/// `L = [0, 3n/4)`, `R = [3n/4, n)`, with weight `1 + eps * pattern_i(j)`.
/// Integer weights are `den` and `den + num` for `eps = num / den`.
/// `lambda = n/4 + eps * min_i |pattern_i|`, attained by an `L` star.
pub fn gen_bipartite_lb(n: usize, eps: Ratio<u64>, patterns: &[Vec<bool>]) -> Result<Instance, InstanceError> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(infeasible(format!("n must be a multiple of 4 and >= 8, got {n}")));
    }
    if *eps.numer() == 0 || eps > Ratio::from_integer(1) {
        return Err(infeasible("eps must lie in (0, 1]"));
    }
    let (left, right) = (3 * n / 4, n / 4);
    if patterns.len() != left {
        return Err(infeasible(format!("expected {left} patterns, got {}", patterns.len())));
    }
    let (lo, hi) = ((n / 8).saturating_sub(1), n / 8 + 1);
    let mut min_ones = usize::MAX;
    for p in patterns {
        let ones = p.iter().filter(|&&b| b).count();
        if p.len() != right || (ones != lo && ones != hi) {
            return Err(infeasible(format!(
                "each pattern needs {right} bits with {lo} or {hi} ones"
            )));
        }
        min_ones = min_ones.min(ones);
    }
    let (num, den) = (*eps.numer(), *eps.denom());
    let mut edges = Vec::with_capacity(left * right);
    for (i, p) in patterns.iter().enumerate() {
        for (j, &bit) in p.iter().enumerate() {
            edges.push((i, left + j, den + if bit { num } else { 0 }));
        }
    }
    let graph = WeightedGraph::new(n, edges)?;
    Ok(Instance {
        graph,
        lambda: Some(den * right as u64 + num * min_ones as u64),
        shore: None,
        unit: Ratio::new(1, den),
    })
}

/// Patterns for `gen_bipartite_lb`: all heavy (`floor(n/8) + 1` ones) except
/// the first `light` rows.
pub fn bipartite_patterns(n: usize, light: usize, seed: u64) -> Result<Vec<Vec<bool>>, InstanceError> {
    let (left, right) = (3 * n / 4, n / 4);
    if light > left {
        return Err(infeasible(format!("{light} light rows of {left}")));
    }
    (0..left)
        .map(|i| {
            let ones = if i < light { (n / 8).saturating_sub(1) } else { n / 8 + 1 };
            random_bits(right, ones, rng::derive(seed, i as u64))
        })
        .collect()
}

/// Quadruples of the array-model family: with `q = n/4` and `l = a*q + b`,
/// quadruple `l` is `(b, q + (b+a) % q, 2q + b, 3q + (b+a) % q)`. Each of
/// the four consecutive pairs determines `(a, b)`, so the quadruples are
/// edge-disjoint for up to `q^2` of them.
pub fn quadruples(n: usize, count: usize) -> Vec<[usize; 4]> {
    let q = n / 4;
    (0..count)
        .map(|l| {
            let (a, b) = (l / q, l % q);
            let s = (b + a) % q;
            [b, q + s, 2 * q + b, 3 * q + s]
        })
        .collect()
}

/// Number of bits of the quadruple family, `tau * n / 10`, if integral.
pub fn quadruple_lb_bits(n: usize, tau: u64) -> Option<usize> {
    let t = tau as usize * n;
    t.is_multiple_of(10).then_some(t / 10)
}

/// Array-model family with large weight ratio: four `tau`-cliques of size
/// `n/4` plus, per quadruple `l`, unit edges `{u1,u2},{u3,u4}` when `x_l`
/// is set and `{u2,u3},{u4,u1}` otherwise.
/// `lambda = 2 * min(|x|, tau*n/10 - |x|)`.
pub fn gen_quadruple_lb(n: usize, tau: u64, x: &[bool]) -> Result<Instance, InstanceError> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(infeasible(format!("n must be a multiple of 4 and >= 8, got {n}")));
    }
    if tau < 1 || 8 * tau as usize > 5 * n {
        return Err(infeasible(format!("need 1 <= tau <= 5n/8, got tau = {tau}")));
    }
    let len = quadruple_lb_bits(n, tau)
        .ok_or_else(|| infeasible(format!("tau * n / 10 = {tau} * {n} / 10 is not an integer")))?;
    if x.len() != len {
        return Err(infeasible(format!("x has {} bits, expected {len}", x.len())));
    }
    let q = n / 4;
    let mut edges = Vec::new();
    for part in 0..4 {
        for u in part * q..(part + 1) * q {
            for v in u + 1..(part + 1) * q {
                edges.push((u, v, tau));
            }
        }
    }
    for (quad, &bit) in quadruples(n, len).iter().zip(x) {
        let [u1, u2, u3, u4] = *quad;
        if bit {
            edges.extend([(u1, u2, 1), (u3, u4, 1)]);
        } else {
            edges.extend([(u2, u3, 1), (u4, u1, 1)]);
        }
    }
    let graph = WeightedGraph::new(n, edges)?;
    let ones = x.iter().filter(|&&b| b).count();
    let low = ones.min(len - ones);
    // Set bits put their unit edges across (V1 + V4, V2 + V3), clear bits
    // across (V1 + V2, V3 + V4).
    let shore = match (2 * ones).cmp(&len) {
        std::cmp::Ordering::Less => Some(Shore::from_vertices(n, (0..q).chain(3 * q..n))),
        std::cmp::Ordering::Greater => Some(Shore::from_vertices(n, 0..2 * q)),
        std::cmp::Ordering::Equal => None,
    };
    Ok(Instance {
        graph,
        lambda: Some(2 * low as u64),
        shore,
        unit: Ratio::from_integer(1),
    })
}

/// Connected random graph with `m` edges: a random tree (each vertex of a
/// shuffled order attaches to a uniform earlier one) plus uniform extra
/// pairs, weights uniform in `[1, tau]`.
pub fn gen_random(n: usize, m: usize, tau: u64, seed: u64) -> Result<Instance, InstanceError> {
    let max_m = n * n.saturating_sub(1) / 2;
    if n < 2 || m + 1 < n || m > max_m || tau < 1 {
        return Err(infeasible(format!(
            "need n >= 2, n - 1 <= m <= n(n-1)/2, tau >= 1; got n = {n}, m = {m}, tau = {tau}"
        )));
    }
    let mut rng = rng::stream(seed, tag::INSTANCE);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        pairs.insert((a.min(b), a.max(b)));
    }
    if 2 * m > max_m {
        // Dense: shuffle the missing pairs and take a prefix.
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|p| !pairs.contains(p))
            .collect();
        rest.shuffle(&mut rng);
        pairs.extend(rest.into_iter().take(m - (n - 1)));
    } else {
        while pairs.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(1..=tau)))
        .collect();
    Ok(Instance {
        graph: WeightedGraph::new(n, edges)?,
        lambda: None,
        shore: None,
        unit: Ratio::from_integer(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_weight;
    use crate::pipeline::reference::brute_min_cut;

    #[test]
    fn matrix_lb_below_and_above_k() {
        let (n, tau) = (10, 2);
        let k = matrix_lb_k(n, tau) as usize;
        assert_eq!(k, 8);
        let below = gen_matrix_lb(n, tau, &random_bits(matrix_lb_bits(n), k - 1, 1).unwrap()).unwrap();
        assert_eq!(below.lambda, Some(7));
        let v0 = below.shore.clone().unwrap();
        assert_eq!(v0.to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(cut_weight(&below.graph, &v0).unwrap(), 7);
        assert_eq!(brute_min_cut(&below.graph).unwrap().0, 7);
        let above = gen_matrix_lb(n, tau, &random_bits(matrix_lb_bits(n), k + 1, 2).unwrap()).unwrap();
        assert_eq!(above.lambda, Some(8));
        assert_eq!(above.graph.weighted_degree(0), 8);
        assert_eq!(brute_min_cut(&above.graph).unwrap().0, 8);
    }

    #[test]
    fn matrix_lb_rejects_large_tau() {
        assert!(gen_matrix_lb(10, 3, &vec![false; matrix_lb_bits(10)]).is_err());
        assert!(gen_matrix_lb(10, 2, &[true]).is_err());
    }

    #[test]
    fn bipartite_heavy_and_light() {
        let eps = Ratio::new(1, 2);
        let heavy = gen_bipartite_lb(8, eps, &bipartite_patterns(8, 0, 3).unwrap()).unwrap();
        // n/4 + eps * (floor(n/8) + 1) = 2 + 1, in halves.
        assert_eq!(heavy.lambda, Some(6));
        assert_eq!(heavy.unit, Ratio::new(1, 2));
        assert_eq!(brute_min_cut(&heavy.graph).unwrap().0, 6);
        let light = gen_bipartite_lb(8, eps, &bipartite_patterns(8, 1, 3).unwrap()).unwrap();
        assert_eq!(light.lambda, Some(4));
        assert_eq!(brute_min_cut(&light.graph).unwrap().0, 4);
    }

    #[test]
    fn quadruples_are_edge_disjoint() {
        let n = 20;
        let quads = quadruples(n, 25);
        let mut seen = std::collections::HashSet::new();
        for [a, b, c, d] in quads {
            for pair in [(a, b), (b, c), (c, d), (d, a)] {
                assert!(seen.insert((pair.0.min(pair.1), pair.0.max(pair.1))));
            }
        }
    }

    #[test]
    fn quadruple_lb_closed_form() {
        let (n, tau) = (16, 5);
        let len = quadruple_lb_bits(n, tau).unwrap();
        assert_eq!(len, 8);
        let low = gen_quadruple_lb(n, tau, &random_bits(len, 3, 4).unwrap()).unwrap();
        assert_eq!(low.lambda, Some(6));
        assert_eq!(brute_min_cut(&low.graph).unwrap().0, 6);
        let witness = low.shore.clone().unwrap();
        assert_eq!(witness.to_vec(), vec![0, 1, 2, 3, 12, 13, 14, 15]);
        assert_eq!(cut_weight(&low.graph, &witness).unwrap(), 6);
        let high = gen_quadruple_lb(n, tau, &random_bits(len, 6, 4).unwrap()).unwrap();
        assert_eq!(high.lambda, Some(4));
        assert!(gen_quadruple_lb(12, 4, &[]).is_err());
    }

    #[test]
    fn quadruple_degrees_ignore_x() {
        let (n, tau) = (16, 5);
        let a = gen_quadruple_lb(n, tau, &random_bits(8, 2, 1).unwrap()).unwrap();
        let b = gen_quadruple_lb(n, tau, &random_bits(8, 7, 2).unwrap()).unwrap();
        for v in 0..n {
            assert_eq!(a.graph.degree(v), b.graph.degree(v));
            assert_eq!(a.graph.weighted_degree(v), b.graph.weighted_degree(v));
        }
    }

    #[test]
    fn random_graphs() {
        let tree = gen_random(12, 11, 5, 7).unwrap().graph;
        assert!(tree.is_connected() && tree.m() == 11);
        let unit = gen_random(10, 30, 1, 7).unwrap().graph;
        assert!(unit.edges().iter().all(|e| e.w == 1) && unit.m() == 30);
        assert_eq!(gen_random(10, 44, 3, 9).unwrap(), gen_random(10, 44, 3, 9).unwrap());
        assert!(gen_random(5, 3, 1, 0).is_err());
        assert!(gen_random(5, 11, 1, 0).is_err());
    }
}
