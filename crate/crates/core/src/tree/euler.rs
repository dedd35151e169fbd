use crate::error::{Error, Result};
use crate::graph::Graph;

use super::rmq::{RmqMode, SparseTableRmq};
use super::RootedForest;

/// Euler tours of a rooted forest, concatenated component by component,
/// plus the level-RMQ used to answer lowest-common-ancestor queries.
#[derive(Debug, Clone)]
pub struct EulerLca {
    pub tour: Vec<u32>,
    pub first: Vec<u32>,
    pub tour_level: Vec<u32>,
    rmq: SparseTableRmq<u32>,
}

/// Depth-first Euler tour of each tree, children visited in ascending id;
/// a tree of `k` vertices contributes `2k - 1` tour entries.
pub fn euler_tour(rf: &RootedForest, forest: &Graph) -> EulerLca {
    let n = rf.parent.len();
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n as u32 {
        let p = rf.parent[v as usize];
        if p != v {
            children[p as usize].push(v);
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    debug_assert_eq!(forest.n(), n);
    let mut tour = Vec::with_capacity(2 * n);
    let mut first = vec![u32::MAX; n];
    let mut roots: Vec<u32> = (0..n as u32).filter(|&v| rf.parent[v as usize] == v).collect();
    roots.sort_unstable();
    // Iterative DFS; the stack entry tracks which child comes next.
    for root in roots {
        let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
        first[root as usize] = tour.len() as u32;
        tour.push(root);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < children[v as usize].len() {
                let c = children[v as usize][*next];
                *next += 1;
                first[c as usize] = tour.len() as u32;
                tour.push(c);
                stack.push((c, 0));
            } else {
                stack.pop();
                if let Some(&(parent, _)) = stack.last() {
                    tour.push(parent);
                }
            }
        }
    }
    let tour_level: Vec<u32> = tour.iter().map(|&v| rf.level[v as usize]).collect();
    let rmq = SparseTableRmq::build(tour_level.clone(), RmqMode::Min);
    EulerLca { tour, first, tour_level, rmq }
}

impl EulerLca {
    /// Lowest common ancestor via the minimum level on the tour segment
    /// between the first occurrences of `u` and `w`.
    pub fn lca(&self, rf: &RootedForest, u: u32, w: u32) -> Result<u32> {
        if rf.component[u as usize] != rf.component[w as usize] {
            return Err(Error::DifferentComponents(u, w));
        }
        let (i, j) = {
            let (a, b) = (self.first[u as usize] as usize, self.first[w as usize] as usize);
            (a.min(b), a.max(b))
        };
        let idx = self.rmq.query(i, j)?;
        Ok(self.tour[idx])
    }

    /// True when `a` is an ancestor of `u` (including `a == u`).
    pub fn is_ancestor(&self, rf: &RootedForest, a: u32, u: u32) -> bool {
        rf.component[a as usize] == rf.component[u as usize]
            && rf.level[a as usize] <= rf.level[u as usize]
            && self.lca(rf, u, a) == Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::tree::root_forest;

    #[test]
    fn single_vertex_tour() {
        let g = Graph::unweighted(1, vec![]).unwrap();
        let rf = root_forest(&g).unwrap();
        let t = euler_tour(&rf, &g);
        assert_eq!(t.tour, vec![0]);
    }

    #[test]
    fn path_and_star_tours() {
        let path = Graph::unweighted(2, vec![(0, 1)]).unwrap();
        let rf = root_forest(&path).unwrap();
        assert_eq!(euler_tour(&rf, &path).tour, vec![0, 1, 0]);

        let star = Graph::unweighted(3, vec![(0, 1), (0, 2)]).unwrap();
        let rf = root_forest(&star).unwrap();
        assert_eq!(euler_tour(&rf, &star).tour, vec![0, 1, 0, 2, 0]);
    }

    #[test]
    fn lca_examples() {
        // Balanced binary tree on 7 nodes, edges parent k -> children 2k+1, 2k+2.
        let edges = vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)];
        let g = Graph::unweighted(7, edges).unwrap();
        let rf = root_forest(&g).unwrap();
        let t = euler_tour(&rf, &g);
        assert_eq!(t.lca(&rf, 5, 5).unwrap(), 5);
        assert_eq!(t.lca(&rf, 3, 0).unwrap(), 0);
        assert_eq!(t.lca(&rf, 3, 6).unwrap(), 0);
        assert_eq!(t.lca(&rf, 3, 4).unwrap(), 1);
    }

    #[test]
    fn lca_matches_ancestor_walk_on_random_trees() {
        for seed in 0..6 {
            let n = 120 + 60 * seed as usize;
            let g = generate::random_tree(n, seed).unwrap();
            let rf = root_forest(&g).unwrap();
            let t = euler_tour(&rf, &g);
            let naive = |mut a: u32, mut b: u32| -> u32 {
                while rf.level[a as usize] > rf.level[b as usize] {
                    a = rf.parent[a as usize];
                }
                while rf.level[b as usize] > rf.level[a as usize] {
                    b = rf.parent[b as usize];
                }
                while a != b {
                    a = rf.parent[a as usize];
                    b = rf.parent[b as usize];
                }
                a
            };
            for u in (0..n as u32).step_by(7) {
                for w in (0..n as u32).step_by(11) {
                    assert_eq!(t.lca(&rf, u, w).unwrap(), naive(u, w));
                }
            }
        }
    }

    #[test]
    fn different_components_error() {
        let g = Graph::unweighted(4, vec![(0, 1), (2, 3)]).unwrap();
        let rf = root_forest(&g).unwrap();
        let t = euler_tour(&rf, &g);
        assert!(matches!(t.lca(&rf, 0, 3), Err(Error::DifferentComponents(0, 3))));
    }
}
