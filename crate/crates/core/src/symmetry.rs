//! The vertex permutation group `S_{q+1}` acting on rows, cells and 2-edges.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::grid::{Grid, TwoEdge, Vertex};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<Vertex>> {
    let mut current: Vec<Vertex> = (0..n as Vertex).collect();
    let mut out = alloc::vec![current.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Adjacent transpositions `(i i+1)`, which generate the symmetric group.
pub fn generators(n: usize) -> Vec<Vec<Vertex>> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<Vertex> = (0..n as Vertex).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit label of every candidate: the smallest index in its orbit.
///
/// `candidates` must be closed under vertex permutations; images that fall
/// outside the list are ignored.
pub fn orbit_labels(grid: Grid, candidates: &[TwoEdge]) -> Vec<usize> {
    let index: BTreeMap<TwoEdge, usize> = candidates.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut parent: Vec<usize> = (0..candidates.len()).collect();
    for g in generators(grid.columns()) {
        for (i, e) in candidates.iter().enumerate() {
            if let Some(&j) = index.get(&grid.permute_edge(e, &g)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..candidates.len()).map(|i| find(&mut parent, i)).collect()
}

/// One representative (the smallest index) per orbit, ascending.
pub fn orbit_representatives(grid: Grid, candidates: &[TwoEdge]) -> Vec<usize> {
    orbit_labels(grid, candidates).into_iter().enumerate().filter(|(i, l)| i == l).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::CandidateMode;
    use alloc::collections::BTreeSet;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(5).len(), 120);
        let set: BTreeSet<_> = permutations(5).into_iter().collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn identity_fixes_candidates() {
        let g = Grid::new(3).unwrap();
        let id: Vec<Vertex> = (0..4).collect();
        for e in g.candidates(CandidateMode::Full) {
            assert_eq!(g.permute_edge(&e, &id), e);
        }
    }

    /// Orbits from the 24 explicit permutations of S_4 agree with the
    /// generator-based union–find.
    #[test]
    fn q3_orbits_match_explicit_group_action() {
        let g = Grid::new(3).unwrap();
        let cands: Vec<_> = g.candidates(CandidateMode::Full).collect();
        let perms = permutations(4);
        let mut explicit: BTreeSet<BTreeSet<TwoEdge>> = BTreeSet::new();
        for e in &cands {
            explicit.insert(perms.iter().map(|p| g.permute_edge(e, p)).collect());
        }
        let labels = orbit_labels(g, &cands);
        let mut via_labels: BTreeMap<usize, BTreeSet<TwoEdge>> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            via_labels.entry(*l).or_default().insert(cands[i]);
        }
        let via_labels: BTreeSet<_> = via_labels.into_values().collect();
        assert_eq!(via_labels, explicit);
        assert_eq!(orbit_representatives(g, &cands).len(), explicit.len());
    }
}
