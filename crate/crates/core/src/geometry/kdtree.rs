//! Exact Borůvka MST driven by kd-tree nearest-foreign-neighbour queries.
//!
//! Each round every component finds its minimum outgoing edge under the same
//! `(squared distance, min index, max index)` order as Prim, so the two paths
//! return the same tree. Subtrees whose points all belong to the querying
//! component are skipped, as are boxes farther than the current best edge.

use super::EdgeKey;
use crate::dataset::{sq_dist, Points};

const LEAF_SIZE: usize = 16;
const MIXED: usize = usize::MAX;

struct Node {
    start: usize,
    end: usize,
    children: Option<(usize, usize)>,
}

struct KdTree<'a> {
    points: &'a Points,
    /// Global index of each local point.
    idx: &'a [usize],
    /// Local point ids in tree order.
    order: Vec<usize>,
    nodes: Vec<Node>,
    /// Per-node bounding boxes, `d` lows followed by `d` highs.
    boxes: Vec<f64>,
}

impl<'a> KdTree<'a> {
    fn build(points: &'a Points, idx: &'a [usize]) -> Self {
        let mut tree = KdTree {
            points,
            idx,
            order: (0..idx.len()).collect(),
            nodes: Vec::new(),
            boxes: Vec::new(),
        };
        tree.build_node(0, idx.len());
        tree
    }

    fn coord(&self, local: usize, dim: usize) -> f64 {
        self.points.row(self.idx[local])[dim]
    }

    fn build_node(&mut self, start: usize, end: usize) -> usize {
        let d = self.points.dim();
        let id = self.nodes.len();
        self.nodes.push(Node { start, end, children: None });
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for &p in &self.order[start..end] {
            let row = self.points.row(self.idx[p]);
            for k in 0..d {
                lo[k] = lo[k].min(row[k]);
                hi[k] = hi[k].max(row[k]);
            }
        }
        self.boxes.extend_from_slice(&lo);
        self.boxes.extend_from_slice(&hi);

        if end - start > LEAF_SIZE {
            let split_dim = (0..d)
                .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])))
                .unwrap_or(0);
            if hi[split_dim] > lo[split_dim] {
                let mid = start + (end - start) / 2;
                let mut slice = std::mem::take(&mut self.order);
                slice[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
                    self.coord(a, split_dim)
                        .total_cmp(&self.coord(b, split_dim))
                        .then(a.cmp(&b))
                });
                self.order = slice;
                let left = self.build_node(start, mid);
                let right = self.build_node(mid, end);
                self.nodes[id].children = Some((left, right));
            }
        }
        id
    }

    fn box_sq_dist(&self, node: usize, x: &[f64]) -> f64 {
        let d = x.len();
        let lo = &self.boxes[2 * d * node..2 * d * node + d];
        let hi = &self.boxes[2 * d * node + d..2 * d * (node + 1)];
        let mut acc = 0.0;
        for k in 0..d {
            let gap = if x[k] < lo[k] {
                lo[k] - x[k]
            } else if x[k] > hi[k] {
                x[k] - hi[k]
            } else {
                0.0
            };
            acc += gap * gap;
        }
        acc
    }

    /// Component id shared by every point of a node, or `MIXED`.
    fn node_components(&self, comp: &[usize]) -> Vec<usize> {
        let mut out = vec![MIXED; self.nodes.len()];
        // Children always have larger ids than their parent.
        for id in (0..self.nodes.len()).rev() {
            let node = &self.nodes[id];
            out[id] = match node.children {
                Some((l, r)) => {
                    if out[l] == out[r] {
                        out[l]
                    } else {
                        MIXED
                    }
                }
                None => {
                    let first = comp[self.order[node.start]];
                    if self.order[node.start..node.end].iter().all(|&p| comp[p] == first) {
                        first
                    } else {
                        MIXED
                    }
                }
            };
        }
        out
    }

    /// Lowers `best` to the smallest edge from `query` to a point outside
    /// its component, if any beats it. Returns the partner's local id.
    fn nearest_foreign(
        &self,
        query: usize,
        comp: &[usize],
        node_comp: &[usize],
        best: &mut EdgeKey,
    ) -> Option<usize> {
        let x = self.points.row(self.idx[query]);
        let own = comp[query];
        let qg = self.idx[query];
        let mut found = None;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            if node_comp[id] == own || self.box_sq_dist(id, x) > best.d2 {
                continue;
            }
            let node = &self.nodes[id];
            match node.children {
                Some((l, r)) => {
                    let (dl, dr) = (self.box_sq_dist(l, x), self.box_sq_dist(r, x));
                    // Visit the nearer child first (pushed last).
                    if dl <= dr {
                        stack.push(r);
                        stack.push(l);
                    } else {
                        stack.push(l);
                        stack.push(r);
                    }
                }
                None => {
                    for &p in &self.order[node.start..node.end] {
                        if comp[p] == own {
                            continue;
                        }
                        let d2 = sq_dist(x, self.points.row(self.idx[p]));
                        if d2 <= best.d2 {
                            let key = EdgeKey::new(d2, qg, self.idx[p]);
                            if key < *best {
                                *best = key;
                                found = Some(p);
                            }
                        }
                    }
                }
            }
        }
        found
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

pub(super) fn kd_boruvka(points: &Points, idx: &[usize]) -> Vec<EdgeKey> {
    let k = idx.len();
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    if k < 2 {
        return edges;
    }
    let tree = KdTree::build(points, idx);
    let mut uf = UnionFind::new(k);
    let mut components = k;
    let mut comp = vec![0usize; k];
    let mut best: Vec<(EdgeKey, usize, usize)> = vec![(EdgeKey::INFINITE, 0, 0); k];

    while components > 1 {
        for (i, c) in comp.iter_mut().enumerate() {
            *c = uf.find(i);
        }
        let node_comp = tree.node_components(&comp);
        for b in best.iter_mut() {
            b.0 = EdgeKey::INFINITE;
        }
        for q in 0..k {
            let c = comp[q];
            let mut bound = best[c].0;
            if let Some(p) = tree.nearest_foreign(q, &comp, &node_comp, &mut bound) {
                best[c] = (bound, q, p);
            }
        }
        for c in 0..k {
            if comp[c] != c {
                continue;
            }
            let (key, a, b) = best[c];
            debug_assert!(key.d2.is_finite());
            if uf.union(a, b) {
                edges.push(key);
                components -= 1;
            }
        }
    }
    edges
}
