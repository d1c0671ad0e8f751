//! Nearest-neighbor search over small-dimensional point sets.
//!
//! A k-d tree is used for dimension <= 16, brute force otherwise. Both
//! paths compute squared distances identically (summing coordinates in
//! index order) and collect the full argmin tie set, so they agree exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mix_seed;

const KDTREE_MAX_DIM: usize = 16;

/// A dense row-major point set.
#[derive(Debug, Clone)]
pub struct Points {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl Points {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InsufficientData("empty point set".into()));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::InvalidInput("points need at least one coordinate".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::InvalidInput("ragged point rows".into()));
            }
            data.extend_from_slice(row);
        }
        Self::from_flat(data, rows.len(), d)
    }

    /// Interleaves column slices of equal length into rows.
    pub fn from_columns(cols: &[&[f64]]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::InvalidInput("points need at least one coordinate".into()));
        }
        let n = cols[0].len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidInput("columns differ in length".into()));
        }
        let d = cols.len();
        let mut data = Vec::with_capacity(n * d);
        for i in 0..n {
            for col in cols {
                data.push(col[i]);
            }
        }
        Self::from_flat(data, n, d)
    }

    fn from_flat(data: Vec<f64>, n: usize, d: usize) -> Result<Self> {
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite coordinate at point {} (1-based)",
                k / d + 1
            )));
        }
        Ok(Self { data, n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for k in 0..a.len() {
        let diff = a[k] - b[k];
        acc += diff * diff;
    }
    acc
}

/// For each point, the index of its nearest neighbor (self excluded).
///
/// Tie rule: when the minimum distance is zero (exact duplicates) the
/// neighbor is drawn uniformly at random from the duplicate group, seeded
/// by `tie_seed` and the query index; nonzero-distance ties resolve to the
/// smallest index. Duplicates carry the same coordinates but different
/// responses, so the random draw keeps rank comparisons unbiased.
#[derive(Debug, Clone)]
pub struct NeighborMap {
    pub index: Vec<usize>,
    pub tie_seed: u64,
}

/// Computes the nearest-neighbor map of a point set.
pub fn nearest_neighbors(points: &Points, tie_seed: u64) -> Result<NeighborMap> {
    if points.n() < 2 {
        return Err(Error::InsufficientData(
            "nearest neighbors need at least 2 points".into(),
        ));
    }
    let index = if points.dim() <= KDTREE_MAX_DIM {
        let tree = KdTree::build(points);
        (0..points.n())
            .map(|i| {
                let mut best = BestSet::new();
                tree.search(points, i, &mut best);
                resolve_tie(best, i, tie_seed)
            })
            .collect()
    } else {
        (0..points.n())
            .map(|i| {
                let mut best = BestSet::new();
                let q = points.row(i);
                for j in 0..points.n() {
                    if j != i {
                        best.offer(j, sq_dist(q, points.row(j)));
                    }
                }
                resolve_tie(best, i, tie_seed)
            })
            .collect()
    };
    Ok(NeighborMap { index, tie_seed })
}

struct BestSet {
    dist: f64,
    ties: Vec<usize>,
}

impl BestSet {
    fn new() -> Self {
        Self {
            dist: f64::INFINITY,
            ties: Vec::new(),
        }
    }

    #[inline]
    fn offer(&mut self, j: usize, d2: f64) {
        if d2 < self.dist {
            self.dist = d2;
            self.ties.clear();
            self.ties.push(j);
        } else if d2 == self.dist {
            self.ties.push(j);
        }
    }
}

fn resolve_tie(mut best: BestSet, query: usize, tie_seed: u64) -> usize {
    best.ties.sort_unstable();
    if best.ties.len() == 1 {
        return best.ties[0];
    }
    if best.dist == 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(tie_seed, query as u64));
        best.ties[rng.gen_range(0..best.ties.len())]
    } else {
        best.ties[0]
    }
}

/// Median-split k-d tree over point indices.
struct KdTree {
    nodes: Vec<KdNode>,
    root: i32,
}

struct KdNode {
    point: usize,
    axis: usize,
    left: i32,
    right: i32,
}

impl KdTree {
    fn build(points: &Points) -> Self {
        let mut idx: Vec<usize> = (0..points.n()).collect();
        let mut nodes = Vec::with_capacity(points.n());
        let root = Self::build_rec(points, &mut idx, 0, &mut nodes);
        Self { nodes, root }
    }

    fn build_rec(points: &Points, idx: &mut [usize], depth: usize, nodes: &mut Vec<KdNode>) -> i32 {
        if idx.is_empty() {
            return -1;
        }
        let axis = depth % points.dim();
        let mid = idx.len() / 2;
        idx.select_nth_unstable_by(mid, |&a, &b| {
            points.row(a)[axis].total_cmp(&points.row(b)[axis])
        });
        let point = idx[mid];
        let (lo, rest) = idx.split_at_mut(mid);
        let hi = &mut rest[1..];
        let left = Self::build_rec(points, lo, depth + 1, nodes);
        let right = Self::build_rec(points, hi, depth + 1, nodes);
        nodes.push(KdNode {
            point,
            axis,
            left,
            right,
        });
        (nodes.len() - 1) as i32
    }

    fn search(&self, points: &Points, query: usize, best: &mut BestSet) {
        self.search_rec(self.root, points, query, best);
    }

    fn search_rec(&self, node: i32, points: &Points, query: usize, best: &mut BestSet) {
        if node < 0 {
            return;
        }
        let n = &self.nodes[node as usize];
        let q = points.row(query);
        if n.point != query {
            best.offer(n.point, sq_dist(q, points.row(n.point)));
        }
        let delta = q[n.axis] - points.row(n.point)[n.axis];
        let (near, far) = if delta < 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        self.search_rec(near, points, query, best);
        // visit the far side whenever it could hold an exact tie
        if delta * delta <= best.dist {
            self.search_rec(far, points, query, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts_1d(vals: &[f64]) -> Points {
        Points::from_columns(&[vals]).unwrap()
    }

    #[test]
    fn forced_by_distances_1d() {
        let map = nearest_neighbors(&pts_1d(&[0.0, 1.0, 5.0]), 0).unwrap();
        assert_eq!(map.index, vec![1, 0, 1]);
    }

    #[test]
    fn hand_distance_2d() {
        // d((10,10),(0,0))^2 = 200, d((10,10),(0,1))^2 = 181: nearest is (0,1)
        let pts = Points::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0], vec![10.0, 10.0]]).unwrap();
        let map = nearest_neighbors(&pts, 0).unwrap();
        assert_eq!(map.index[2], 1);
        assert_eq!(map.index[0], 1);
        assert_eq!(map.index[1], 0);
    }

    #[test]
    fn identical_points_pair() {
        let map = nearest_neighbors(&pts_1d(&[3.0, 3.0]), 0).unwrap();
        assert_eq!(map.index, vec![1, 0]);
    }

    #[test]
    fn no_self_loops_and_in_range() {
        let vals: Vec<f64> = (0..60).map(|i| ((i * 37) % 11) as f64).collect();
        let map = nearest_neighbors(&pts_1d(&vals), 5).unwrap();
        for (i, &ni) in map.index.iter().enumerate() {
            assert_ne!(ni, i);
            assert!(ni < vals.len());
        }
    }

    #[test]
    fn duplicate_group_draw_is_seeded() {
        let vals = [1.0, 1.0, 1.0, 1.0, 9.0];
        let a = nearest_neighbors(&pts_1d(&vals), 11).unwrap();
        let b = nearest_neighbors(&pts_1d(&vals), 11).unwrap();
        assert_eq!(a.index, b.index);
        // every duplicate maps inside the duplicate group
        for i in 0..4 {
            assert!(a.index[i] < 4);
        }
    }

    #[test]
    fn tree_matches_brute_force_exactly() {
        // deterministic pseudo-random points, 3-d, with planted duplicates
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut rows: Vec<Vec<f64>> = (0..200).map(|_| (0..3).map(|_| next()).collect()).collect();
        for i in 0..20 {
            rows[150 + i] = rows[i].clone(); // duplicates
        }
        let pts = Points::from_rows(&rows).unwrap();
        let tree_map = nearest_neighbors(&pts, 42).unwrap();
        // brute force with the same tie rule
        let brute: Vec<usize> = (0..pts.n())
            .map(|i| {
                let mut best = BestSet::new();
                for j in 0..pts.n() {
                    if j != i {
                        best.offer(j, sq_dist(pts.row(i), pts.row(j)));
                    }
                }
                resolve_tie(best, i, 42)
            })
            .collect();
        assert_eq!(tree_map.index, brute);
    }
}
