//! Reference minimum-cut solvers used for verification and for the exact
//! steps of the pipeline.

use crate::graph::{Shore, WeightedGraph};

use super::PipelineError;

/// Largest vertex count accepted by exhaustive enumeration.
pub const BRUTE_FORCE_MAX_N: usize = 24;

/// Weight of every shore that excludes vertex `n - 1`, indexed by bitmask.
///
/// Entry 0 is the empty shore (weight 0). Walks the masks in Gray-code order
/// so each step costs one vertex's degree.
pub fn cut_table(g: &WeightedGraph) -> Result<Vec<u64>, PipelineError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(PipelineError::TooLargeForBruteForce(n));
    }
    if n < 2 {
        return Err(PipelineError::TooFewVertices(n));
    }
    let free = n - 1;
    let mut table = vec![0u64; 1 << free];
    let mut side = 0u64;
    let mut weight: i128 = 0;
    for step in 1u64..(1 << free) {
        let v = step.trailing_zeros() as usize;
        let inside = side >> v & 1 == 1;
        for &(x, e) in g.neighbors(v) {
            let w = g.edge(e).w as i128;
            let same = (side >> x & 1 == 1) == inside;
            weight += if same { w } else { -w };
        }
        side ^= 1 << v;
        table[side as usize] = weight as u64;
    }
    Ok(table)
}

/// Exhaustive minimum cut for `n <= 24`.
pub fn brute_min_cut(g: &WeightedGraph) -> Result<(u64, Shore), PipelineError> {
    let table = cut_table(g)?;
    let (mask, &w) = table
        .iter()
        .enumerate()
        .skip(1)
        .min_by_key(|&(mask, &w)| (w, mask))
        .expect("at least one nontrivial shore");
    Ok((w, Shore::from_mask(g.n(), mask as u64)))
}

/// Stoer-Wagner minimum cut on a dense weight matrix, `O(n^3)`.
pub fn stoer_wagner(g: &WeightedGraph) -> Result<(u64, Shore), PipelineError> {
    let n = g.n();
    if n < 2 {
        return Err(PipelineError::TooFewVertices(n));
    }
    let mut w = vec![0u64; n * n];
    for e in g.edges() {
        w[e.u * n + e.v] = e.w;
        w[e.v * n + e.u] = e.w;
    }
    // members[r] lists the original vertices merged into representative r.
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut attach = vec![0u64; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            attach[v] = 0;
            added[v] = false;
        }
        let mut prev = active[0];
        added[prev] = true;
        for &v in &active {
            if v != prev {
                attach[v] = w[prev * n + v];
            }
        }
        let mut last = prev;
        for _ in 1..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .max_by_key(|&v| (attach[v], std::cmp::Reverse(v)))
                .expect("an unadded vertex remains");
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    attach[v] += w[next * n + v];
                }
            }
        }
        let phase_cut = attach[last];
        if best.as_ref().is_none_or(|(b, _)| phase_cut < *b) {
            best = Some((phase_cut, members[last].clone()));
        }
        // Merge `last` into `prev`.
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &active {
            if v != prev && v != last {
                let add = w[last * n + v];
                w[prev * n + v] += add;
                w[v * n + prev] += add;
            }
        }
        active.retain(|&v| v != last);
    }
    let (lambda, side) = best.expect("n >= 2 gives at least one phase");
    Ok((lambda, Shore::from_vertices(n, side)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_weight;

    #[test]
    fn single_edge() {
        let g = WeightedGraph::new(2, [(0, 1, 9)]).unwrap();
        assert_eq!(brute_min_cut(&g).unwrap().0, 9);
        assert_eq!(stoer_wagner(&g).unwrap().0, 9);
    }

    #[test]
    fn complete_graph_has_star_minimum() {
        let n = 6;
        let g = WeightedGraph::new(
            n,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1))),
        )
        .unwrap();
        let (lb, sb) = brute_min_cut(&g).unwrap();
        let (ls, ss) = stoer_wagner(&g).unwrap();
        assert_eq!((lb, ls), (5, 5));
        assert_eq!(sb.len(), 1);
        assert_eq!(cut_weight(&g, &ss).unwrap(), 5);
    }

    #[test]
    fn disconnected_graph_has_zero_cut() {
        let g = WeightedGraph::new(4, [(0, 1, 3), (2, 3, 4)]).unwrap();
        let (l, s) = stoer_wagner(&g).unwrap();
        assert_eq!(l, 0);
        assert_eq!(cut_weight(&g, &s).unwrap(), 0);
        assert_eq!(brute_min_cut(&g).unwrap().0, 0);
    }

    #[test]
    fn size_limits() {
        let g = WeightedGraph::new(1, []).unwrap();
        assert!(matches!(stoer_wagner(&g), Err(PipelineError::TooFewVertices(1))));
        let big = WeightedGraph::new(25, (0..24).map(|i| (i, i + 1, 1))).unwrap();
        assert!(matches!(
            brute_min_cut(&big),
            Err(PipelineError::TooLargeForBruteForce(25))
        ));
    }

    #[test]
    fn cut_table_matches_direct_sums() {
        let g = WeightedGraph::new(5, [(0, 1, 2), (1, 2, 3), (2, 3, 1), (3, 4, 7), (0, 4, 5), (1, 3, 4)])
            .unwrap();
        let table = cut_table(&g).unwrap();
        for (mask, &w) in table.iter().enumerate().skip(1) {
            let s = Shore::from_mask(5, mask as u64);
            assert_eq!(w, cut_weight(&g, &s).unwrap());
        }
    }
}
