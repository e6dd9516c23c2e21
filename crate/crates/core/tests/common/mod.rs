//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `(d2, lo, hi)` edge with the strict total order used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Key(pub f64, pub usize, pub usize);

pub fn cmp_key(a: &Key, b: &Key) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
}

/// Decodes a Prüfer sequence over `n` vertices into its tree's edges.
fn prufer_tree(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every labeled spanning tree of `K_n` (Cayley: `n^(n-2)` of them).
pub fn all_spanning_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 2);
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for mut code in 0..total {
        for s in seq.iter_mut() {
            *s = code % n;
            code /= n;
        }
        out.push(prufer_tree(&seq, n));
    }
    out
}

pub struct BruteMst {
    /// Edges of the minimum tree under the strict edge order, sorted.
    pub keys: Vec<Key>,
    /// Its weight, summed in sorted edge order.
    pub weight: f64,
    /// Smallest weight over all spanning trees, each summed in sorted order.
    pub min_weight: f64,
}

/// Exhaustive minimum spanning tree. The tree whose sorted key sequence is
/// lexicographically smallest is the unique MST under the strict order; its
/// weight is checked against the minimum over all trees separately.
pub fn brute_force_mst(points: &[Vec<f64>]) -> BruteMst {
    let n = points.len();
    let mut best: Option<Vec<Key>> = None;
    let mut min_weight = f64::INFINITY;
    for tree in all_spanning_trees(n) {
        let mut keys: Vec<Key> =
            tree.iter().map(|&(u, v)| Key(sq_dist(&points[u], &points[v]), u, v)).collect();
        keys.sort_by(cmp_key);
        let w: f64 = keys.iter().map(|k| k.0.sqrt()).sum();
        min_weight = min_weight.min(w);
        let better = match &best {
            None => true,
            Some(b) => {
                keys.iter().zip(b).map(|(x, y)| cmp_key(x, y)).find(|o| o.is_ne()) == Some(Ordering::Less)
            }
        };
        if better {
            best = Some(keys);
        }
    }
    let keys = best.unwrap();
    let weight = keys.iter().map(|k| k.0.sqrt()).sum();
    BruteMst { keys, weight, min_weight }
}

/// Dichotomous edge counts per unordered class pair, as an `m x m` matrix.
pub fn fr_counts(keys: &[Key], labels: &[usize], m: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; m]; m];
    for k in keys {
        let (a, b) = (labels[k.1], labels[k.2]);
        if a != b {
            c[a][b] += 1;
            c[b][a] += 1;
        }
    }
    c
}

/// Kruskal with union-find on all `n(n-1)/2` edges; used for sizes too large
/// to enumerate.
pub fn kruskal(points: &[Vec<f64>]) -> Vec<Key> {
    let n = points.len();
    let mut keys = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            keys.push(Key(sq_dist(&points[u], &points[v]), u, v));
        }
    }
    keys.sort_by(cmp_key);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut tree = Vec::with_capacity(n - 1);
    for k in keys {
        let (a, b) = (find(&mut parent, k.1), find(&mut parent, k.2));
        if a != b {
            parent[a] = b;
            tree.push(k);
        }
    }
    tree
}

/// Dirichlet(1, ..., 1) via normalized exponentials.
pub fn dirichlet_ones<R: rand::Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}
