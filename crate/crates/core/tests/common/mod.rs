//! Generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use qmincut_core::graph::{atoms, Partition, Shore, ShoreFamily, WeightedGraph};
use qmincut_core::instances::gen_random;
use qmincut_core::tworespect::{shore_of, RootedTree, TwoRespectId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph with `n` vertices, a uniform edge count and weights in `[1, tau]`.
pub fn random_connected(r: &mut ChaCha8Rng, n: usize, tau: u64) -> WeightedGraph {
    let max_m = n * (n - 1) / 2;
    let m = r.gen_range(n - 1..=max_m);
    gen_random(n, m, tau, r.gen()).expect("feasible").graph
}

/// Uniformly shuffled Kruskal: a random spanning tree of a connected `g`, as edge indices.
pub fn random_spanning_tree(r: &mut ChaCha8Rng, g: &WeightedGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(r);
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree = Vec::new();
    for e in order {
        let ed = g.edge(e);
        let (a, b) = (find(&mut parent, ed.u), find(&mut parent, ed.v));
        if a != b {
            parent[a] = b;
            tree.push(e);
        }
    }
    assert_eq!(tree.len() + 1, g.n(), "graph must be connected");
    tree
}

/// Random recursive tree on `n` vertices rooted at 0, with shuffled labels.
pub fn random_tree(r: &mut ChaCha8Rng, n: usize) -> RootedTree {
    let mut labels: Vec<usize> = (0..n).collect();
    labels[1..].shuffle(r);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[r.gen_range(0..i)], labels[i]))
        .collect();
    RootedTree::new(n, &edges, 0).expect("valid tree")
}

pub fn naive_atoms(t: &RootedTree, ids: &[TwoRespectId]) -> Partition {
    let shores: Vec<Shore> = ids.iter().map(|&id| shore_of(t, id).expect("valid id")).collect();
    atoms(t.n(), &ShoreFamily::new(shores))
}

/// Brute cut table entries as `(shore, weight)` for every shore avoiding vertex `n - 1`.
pub fn all_cuts(table: &[u64], n: usize) -> impl Iterator<Item = (Shore, u64)> + '_ {
    table
        .iter()
        .enumerate()
        .skip(1)
        .map(move |(mask, &w)| (Shore::from_mask(n, mask as u64), w))
}
