//! Tree machinery shared by the spanning-forest and connectivity pipeline:
//! rooted forests, Euler tours with level-RMQ for LCA, heavy-light
//! decomposition with pivot tables for path maxima, and pointer jumping.
//!
//! Builders here are plain in-memory constructions; the algorithm layers
//! decide how their cost is charged (the light-edge classification ships
//! these structures through the store and queries them per edge).

mod euler;
mod hld;
mod jump;
mod rmq;

pub use euler::{euler_tour, EulerLca};
pub use hld::{build_hld, build_pivots, path_max, EdgeKey, HeavyLight, PivotTable};
pub use jump::{pointer_chase_round, pointer_jump, publish_pointers};
pub use rmq::{RmqMode, SparseTableRmq};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::UnionFind;

/// Rooted view of a forest: parent pointers (self at roots), depth levels
/// and a component label per vertex. The root of each component is its
/// minimum vertex id, which doubles as the component label.
#[derive(Debug, Clone)]
pub struct RootedForest {
    pub parent: Vec<u32>,
    pub level: Vec<u32>,
    pub component: Vec<u32>,
}

impl RootedForest {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_root(&self, v: u32) -> bool {
        self.parent[v as usize] == v
    }
}

/// Roots every component of a forest at its minimum vertex id.
///
/// Errors with `NotAForest` when the input contains a cycle.
pub fn root_forest(f: &Graph) -> Result<RootedForest> {
    let n = f.n();
    let mut uf = UnionFind::new(n);
    for e in f.edges() {
        if !uf.union(e.u, e.v) {
            return Err(Error::NotAForest);
        }
    }
    let component = uf.labels();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut level = vec![0u32; n];
    let mut visited = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n as u32 {
        if component[v as usize] == v {
            visited[v as usize] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(u, _) in f.neighbors(v) {
            if !visited[u as usize] {
                visited[u as usize] = true;
                parent[u as usize] = v;
                level[u as usize] = level[v as usize] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(RootedForest { parent, level, component })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::unweighted(2, vec![(0, 1)]).unwrap();
        let rf = root_forest(&g).unwrap();
        assert_eq!(rf.parent, vec![0, 0]);
        assert_eq!(rf.level, vec![0, 1]);
    }

    #[test]
    fn path_levels() {
        let g = Graph::unweighted(3, vec![(0, 1), (1, 2)]).unwrap();
        let rf = root_forest(&g).unwrap();
        assert_eq!(rf.level, vec![0, 1, 2]);
    }

    #[test]
    fn two_components_two_labels() {
        let g = Graph::unweighted(4, vec![(0, 1), (2, 3)]).unwrap();
        let rf = root_forest(&g).unwrap();
        assert_eq!(rf.component, vec![0, 0, 2, 2]);
    }

    #[test]
    fn cycle_is_rejected() {
        let g = Graph::unweighted(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(root_forest(&g).err(), Some(Error::NotAForest));
    }
}
