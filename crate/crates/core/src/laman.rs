//! Laman verification through the (2,3) pebble game, plus a brute-force
//! subset oracle for small graphs.

use serde::{Deserialize, Serialize};

use crate::graph::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LamanVerdict {
    Accepted,
    Rejected {
        /// A vertex set that is overfull, or all of `V` when the graph has
        /// too few edges.
        witness: Vec<usize>,
        induced_edges: usize,
        reason: RejectReason,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    /// `|E(W)| > 2|W| - 3` for the witness.
    Overfull,
    /// `|E| < 2|V| - 3`.
    TooFewEdges,
}

impl LamanVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, LamanVerdict::Accepted)
    }
}

/// Incremental (2,3) pebble game on vertices `1..=n`.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    mark: Vec<u32>,
    stamp: u32,
    parent: Vec<usize>,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n + 1],
            out: vec![Vec::new(); n + 1],
            mark: vec![0; n + 1],
            stamp: 0,
            parent: vec![0; n + 1],
        }
    }

    /// Adds `a -- b` if it is independent. On failure returns the vertex set
    /// reachable from `a` and `b`, which then spans more than `2|W| - 3`
    /// edges once `a -- b` is counted.
    pub fn try_add_edge(&mut self, a: usize, b: usize) -> Result<(), Vec<usize>> {
        assert_ne!(a, b, "loops are not allowed");
        loop {
            if self.pebbles[a] + self.pebbles[b] == 4 {
                break;
            }
            if self.pebbles[a] < 2 && self.gather(a, b) {
                continue;
            }
            if self.pebbles[b] < 2 && self.gather(b, a) {
                continue;
            }
            return Err(self.reach(&[a, b]));
        }
        self.pebbles[a] -= 1;
        self.out[a].push(b);
        Ok(())
    }

    /// Removes a previously accepted edge, returning its pebble.
    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if let Some(i) = self.out[a].iter().position(|&w| w == b) {
            self.out[a].swap_remove(i);
            self.pebbles[a] += 1;
        } else if let Some(i) = self.out[b].iter().position(|&w| w == a) {
            self.out[b].swap_remove(i);
            self.pebbles[b] += 1;
        } else {
            panic!("edge {a}-{b} not present in pebble game");
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }

    /// Searches for a free pebble reachable from `target` without visiting
    /// `keep`, and moves it to `target`.
    fn gather(&mut self, target: usize, keep: usize) -> bool {
        let s = self.next_stamp();
        self.mark[target] = s;
        self.mark[keep] = s;
        let mut stack = vec![target];
        let mut found = None;
        'search: while let Some(u) = stack.pop() {
            for i in 0..self.out[u].len() {
                let w = self.out[u][i];
                if self.mark[w] == s {
                    continue;
                }
                self.mark[w] = s;
                self.parent[w] = u;
                if self.pebbles[w] > 0 {
                    found = Some(w);
                    break 'search;
                }
                stack.push(w);
            }
        }
        let Some(w) = found else { return false };
        self.pebbles[w] -= 1;
        let mut c = w;
        while c != target {
            let p = self.parent[c];
            let i = self.out[p].iter().position(|&x| x == c).unwrap();
            self.out[p].swap_remove(i);
            self.out[c].push(p);
            c = p;
        }
        self.pebbles[target] += 1;
        true
    }

    fn reach(&mut self, from: &[usize]) -> Vec<usize> {
        let s = self.next_stamp();
        let mut stack = Vec::new();
        let mut seen = Vec::new();
        for &v in from {
            if self.mark[v] != s {
                self.mark[v] = s;
                stack.push(v);
                seen.push(v);
            }
        }
        while let Some(u) = stack.pop() {
            for i in 0..self.out[u].len() {
                let w = self.out[u][i];
                if self.mark[w] != s {
                    self.mark[w] = s;
                    stack.push(w);
                    seen.push(w);
                }
            }
        }
        seen.sort_unstable();
        seen
    }
}

fn induced(edges: &[(usize, usize)], w: &[usize], n: usize) -> usize {
    let mut inside = vec![false; n + 1];
    for &v in w {
        inside[v] = true;
    }
    edges
        .iter()
        .filter(|&&(a, b)| inside[a] && inside[b])
        .count()
}

/// Pebble-game Laman test on an edge list over vertices `1..=n`.
pub fn laman_verdict(n: usize, edges: &[(usize, usize)]) -> LamanVerdict {
    let mut game = PebbleGame::new(n);
    for &(a, b) in edges {
        if let Err(witness) = game.try_add_edge(a, b) {
            let induced_edges = induced(edges, &witness, n);
            return LamanVerdict::Rejected {
                witness,
                induced_edges,
                reason: RejectReason::Overfull,
            };
        }
    }
    if n < 2 || edges.len() + 3 < 2 * n {
        return LamanVerdict::Rejected {
            witness: (1..=n).collect(),
            induced_edges: edges.len(),
            reason: RejectReason::TooFewEdges,
        };
    }
    LamanVerdict::Accepted
}

pub fn validate_laman(g: &PlaneGraph) -> LamanVerdict {
    laman_verdict(g.n(), &g.edges())
}

/// Exhaustive subset check; only practical for small `n`.
pub fn laman_verdict_brute_force(n: usize, edges: &[(usize, usize)]) -> LamanVerdict {
    assert!(n <= 20, "brute force limited to 20 vertices");
    if n < 2 || edges.len() + 3 != 2 * n {
        if n >= 2 && edges.len() + 3 > 2 * n {
            return LamanVerdict::Rejected {
                witness: (1..=n).collect(),
                induced_edges: edges.len(),
                reason: RejectReason::Overfull,
            };
        }
        return LamanVerdict::Rejected {
            witness: (1..=n).collect(),
            induced_edges: edges.len(),
            reason: RejectReason::TooFewEdges,
        };
    }
    let masks: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(a, b)| (1u32 << (a - 1), 1u32 << (b - 1)))
        .collect();
    for set in 1u32..(1 << n) {
        let size = set.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let count = masks
            .iter()
            .filter(|&&(a, b)| set & a != 0 && set & b != 0)
            .count();
        if count + 3 > 2 * size {
            return LamanVerdict::Rejected {
                witness: (1..=n).filter(|v| set & (1 << (v - 1)) != 0).collect(),
                induced_edges: count,
                reason: RejectReason::Overfull,
            };
        }
    }
    LamanVerdict::Accepted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_accepted() {
        assert!(validate_laman(&k3()).is_accepted());
        assert!(validate_laman(&k3_plus()).is_accepted());
    }

    #[test]
    fn k4_rejected_with_all_vertices() {
        match validate_laman(&k4()) {
            LamanVerdict::Rejected {
                witness,
                induced_edges,
                reason,
            } => {
                assert_eq!(witness, vec![1, 2, 3, 4]);
                assert_eq!(induced_edges, 6);
                assert_eq!(reason, RejectReason::Overfull);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn too_few_edges() {
        let v = laman_verdict(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(matches!(
            v,
            LamanVerdict::Rejected {
                reason: RejectReason::TooFewEdges,
                ..
            }
        ));
    }

    #[test]
    fn removal_restores_pebbles() {
        let mut g = PebbleGame::new(3);
        for (a, b) in [(1, 2), (2, 3), (1, 3)] {
            g.try_add_edge(a, b).unwrap();
        }
        g.remove_edge(2, 3);
        g.try_add_edge(3, 2).unwrap();
        assert!(g.try_add_edge(1, 2).is_err());
    }

    fn arb_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..=8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
                .collect();
            let len = pairs.len();
            (Just(n), proptest::sample::subsequence(pairs, 0..=len))
        })
    }

    proptest! {
        #[test]
        fn pebble_game_matches_brute_force((n, edges) in arb_edges()) {
            let fast = laman_verdict(n, &edges);
            let slow = laman_verdict_brute_force(n, &edges);
            prop_assert_eq!(fast.is_accepted(), slow.is_accepted());
            if let LamanVerdict::Rejected { witness, induced_edges, reason: RejectReason::Overfull } = fast {
                prop_assert!(witness.len() >= 2);
                prop_assert!(induced_edges + 3 > 2 * witness.len());
            }
        }
    }
}
