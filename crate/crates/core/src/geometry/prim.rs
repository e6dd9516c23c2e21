use super::EdgeKey;
use crate::dataset::{sq_dist, Points};

/// Dense O(k^2) Prim over the points `idx` (ascending global indices).
pub(super) fn prim(points: &Points, idx: &[usize]) -> Vec<EdgeKey> {
    let k = idx.len();
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    if k < 2 {
        return edges;
    }
    let mut best = vec![EdgeKey::INFINITE; k];
    // Local indices not yet in the tree; order is irrelevant because the
    // minimum is taken under a strict total order.
    let mut remaining: Vec<usize> = (1..k).collect();
    let mut current = 0usize;
    while !remaining.is_empty() {
        let anchor = points.row(idx[current]);
        let anchor_global = idx[current];
        let mut arg = 0usize;
        for (slot, &v) in remaining.iter().enumerate() {
            let d2 = sq_dist(anchor, points.row(idx[v]));
            if d2 <= best[v].d2 {
                let key = EdgeKey::new(d2, anchor_global, idx[v]);
                if key < best[v] {
                    best[v] = key;
                }
            }
            if slot == 0 || best[v] < best[remaining[arg]] {
                arg = slot;
            }
        }
        let next = remaining.swap_remove(arg);
        edges.push(best[next]);
        current = next;
    }
    edges
}
