//! Exact bottleneck distance with an optimal matching.
//!
//! Essential cornerpoints can only be matched among themselves (any cross
//! pairing has infinite cost), and the sorted-by-birth pairing is optimal for
//! them. For proper cornerpoints the finite optimum is one of the finitely
//! many candidate values `{d(p,q)} ∪ {d(p,Δ)} ∪ {d(Δ,q)} ∪ {0}`; a binary
//! search over the sorted candidate list runs a maximum-bipartite-matching
//! feasibility test at each probe, which keeps the result exact.

use std::collections::VecDeque;
use std::fmt;

use crate::diagram::{point_distance, DiagramPoint, PersistenceDiagram, PointKind};
use crate::geometry::ExtendedReal;

/// Why a matching has infinite cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteCostReason {
    /// The diagrams carry different total essential multiplicities, so some
    /// essential point is forced against a proper point or `Delta`.
    EssentialCountMismatch { left: u64, right: u64 },
}

impl fmt::Display for InfiniteCostReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteCostReason::EssentialCountMismatch { left, right } => write!(
                f,
                "essential multiplicities differ ({left} vs {right}); every matching pairs an \
                 essential cornerpoint with a proper one or with delta"
            ),
        }
    }
}

/// A multiset bijection between two diagrams augmented with `Delta`,
/// together with its cost `max_p d(p, σ(p))`.
#[derive(Clone, Debug)]
pub struct Matching {
    /// Matched pairs, one entry per multiplicity copy. Points matched to the
    /// diagonal appear paired with `DiagramPoint::delta()`.
    pub pairs: Vec<(DiagramPoint, DiagramPoint)>,
    pub cost: ExtendedReal,
    pub infinite_reason: Option<InfiniteCostReason>,
}

impl Matching {
    pub fn is_finite(&self) -> bool {
        self.cost.is_finite()
    }
}

/// Computes the bottleneck distance and an optimal matching between two
/// persistence diagrams.
///
/// Ties among optimal matchings are broken deterministically: points are
/// processed in lexicographic (birth, death) order and augmenting paths
/// prefer earlier targets, so identical inputs always yield the same
/// matching.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Matching {
    let ess1 = essential_births(d1);
    let ess2 = essential_births(d2);
    if ess1.len() != ess2.len() {
        return Matching {
            pairs: Vec::new(),
            cost: ExtendedReal::Infinite,
            infinite_reason: Some(InfiniteCostReason::EssentialCountMismatch {
                left: ess1.len() as u64,
                right: ess2.len() as u64,
            }),
        };
    }

    let mut pairs: Vec<(DiagramPoint, DiagramPoint)> = Vec::new();
    let mut essential_cost = 0.0f64;
    for (&u, &u2) in ess1.iter().zip(ess2.iter()) {
        essential_cost = essential_cost.max((u - u2).abs());
        pairs.push((DiagramPoint::essential(u, 1), DiagramPoint::essential(u2, 1)));
    }

    let p1 = proper_points(d1);
    let p2 = proper_points(d2);
    let geom = ProperGeometry::new(&p1, &p2);

    // Candidate bottleneck values, sorted and deduplicated.
    let mut candidates: Vec<f64> = Vec::with_capacity(p1.len() * p2.len() + p1.len() + p2.len() + 1);
    candidates.push(0.0);
    candidates.extend_from_slice(&geom.cross);
    candidates.extend_from_slice(&geom.diag1);
    candidates.extend_from_slice(&geom.diag2);
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();

    // Smallest feasible candidate.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(geom.feasible(candidates[hi]));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if geom.feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let proper_cost = candidates[lo];

    let eps = proper_cost;
    let assignment = geom.matching(eps);
    let mut matched2 = vec![false; p2.len()];
    for (i, &j) in assignment.iter().enumerate() {
        match j {
            Some(j) => {
                matched2[j] = true;
                pairs.push((point(&p1[i]), point(&p2[j])));
            }
            None => pairs.push((point(&p1[i]), DiagramPoint::delta())),
        }
    }
    for (j, used) in matched2.iter().enumerate() {
        if !used {
            pairs.push((DiagramPoint::delta(), point(&p2[j])));
        }
    }

    let cost = ExtendedReal::finite(essential_cost.max(proper_cost));
    debug_assert!(pairs
        .iter()
        .all(|(p, q)| point_distance(p, q) <= cost));
    Matching {
        pairs,
        cost,
        infinite_reason: None,
    }
}

fn essential_births(d: &PersistenceDiagram) -> Vec<f64> {
    let mut births: Vec<f64> = d
        .expanded()
        .filter_map(|p| match p.kind {
            PointKind::Essential { birth } => Some(birth),
            _ => None,
        })
        .collect();
    births.sort_by(|a, b| a.partial_cmp(b).unwrap());
    births
}

fn proper_points(d: &PersistenceDiagram) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = d
        .expanded()
        .filter_map(|p| match p.kind {
            PointKind::Proper { birth, death } => Some((birth, death)),
            _ => None,
        })
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts
}

fn point(p: &(f64, f64)) -> DiagramPoint {
    DiagramPoint::proper(p.0, p.1, 1)
}

fn cross_distance(p: (f64, f64), q: (f64, f64)) -> f64 {
    let shift = (p.0 - q.0).abs().max((p.1 - q.1).abs());
    let collapse = ((p.1 - p.0) / 2.0).max((q.1 - q.0) / 2.0);
    shift.min(collapse)
}

/// Pairwise distances of the proper parts, reused across feasibility probes.
struct ProperGeometry {
    n1: usize,
    n2: usize,
    cross: Vec<f64>,
    diag1: Vec<f64>,
    diag2: Vec<f64>,
}

impl ProperGeometry {
    fn new(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> Self {
        let mut cross = Vec::with_capacity(p1.len() * p2.len());
        for &p in p1 {
            for &q in p2 {
                cross.push(cross_distance(p, q));
            }
        }
        ProperGeometry {
            n1: p1.len(),
            n2: p2.len(),
            cross,
            diag1: p1.iter().map(|p| (p.1 - p.0) / 2.0).collect(),
            diag2: p2.iter().map(|q| (q.1 - q.0) / 2.0).collect(),
        }
    }

    fn feasible(&self, eps: f64) -> bool {
        let size = self.n1 + self.n2;
        matcher_run(self, eps).0 == size
    }

    /// Real-to-real assignment extracted from a perfect matching at `eps`.
    /// Left points not assigned to a right point go to the diagonal.
    fn matching(&self, eps: f64) -> Vec<Option<usize>> {
        let (_, pair_left) = matcher_run(self, eps);
        (0..self.n1)
            .map(|i| match pair_left[i] {
                j if j != usize::MAX && j < self.n2 => Some(j),
                _ => None,
            })
            .collect()
    }
}

/// Hopcroft–Karp on the diagonal-augmented bipartite graph.
///
/// Left vertices: the `n1` proper points of the first diagram followed by one
/// diagonal copy per right point. Right vertices: the `n2` proper points of
/// the second diagram followed by one diagonal copy per left point. Edges at
/// threshold `eps`: real-real pairs with `d ≤ eps`, each real point to its
/// own diagonal copy when its half-persistence is `≤ eps`, and all
/// diagonal-diagonal pairs. A perfect matching exists iff `eps` is feasible.
fn matcher_run(g: &ProperGeometry, eps: f64) -> (usize, Vec<usize>) {
    let (n1, n2) = (g.n1, g.n2);
    let left_total = n1 + n2;
    let right_total = n2 + n1;

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); left_total];
    for (i, edges) in adj.iter_mut().enumerate().take(n1) {
        for j in 0..n2 {
            if g.cross[i * n2 + j] <= eps {
                edges.push(j as u32);
            }
        }
        if g.diag1[i] <= eps {
            edges.push((n2 + i) as u32);
        }
    }
    for j in 0..n2 {
        // diagonal copy standing in for right point j
        let u = n1 + j;
        if g.diag2[j] <= eps {
            adj[u].push(j as u32);
        }
        for i in 0..n1 {
            adj[u].push((n2 + i) as u32);
        }
    }

    let mut pair_left = vec![usize::MAX; left_total];
    let mut pair_right = vec![usize::MAX; right_total];
    let mut dist = vec![usize::MAX; left_total];
    let mut matched = 0usize;

    fn try_augment(
        u: usize,
        adj: &[Vec<u32>],
        pair_left: &mut [usize],
        pair_right: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let v = v as usize;
            let w = pair_right[v];
            let ok = if w == usize::MAX {
                true
            } else if dist[w] == dist[u].wrapping_add(1) {
                try_augment(w, adj, pair_left, pair_right, dist)
            } else {
                false
            };
            if ok {
                pair_left[u] = v;
                pair_right[v] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left_total {
            if pair_left[u] == usize::MAX {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found_free_right = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = pair_right[v as usize];
                if w == usize::MAX {
                    found_free_right = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found_free_right {
            break;
        }

        let mut progressed = false;
        for u in 0..left_total {
            if pair_left[u] == usize::MAX
                && try_augment(u, &adj, &mut pair_left, &mut pair_right, &mut dist)
            {
                matched += 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    (matched, pair_left)
}
