//! Complete-bipartite subgraph search.

use super::{BicliqueWitness, Budget, SearchOutcome};
use crate::graph::{Bitset, Graph};

/// Looks for `K_{s,t}` as a (not necessarily induced) subgraph: disjoint
/// sets `A` of size `s` and `B` of size `t` with every cross pair adjacent.
///
/// Branches over `s`-subsets in ascending lexicographic order, carrying the
/// common neighborhood of the chosen prefix and cutting as soon as it drops
/// below `t`.
pub fn find_biclique(
    g: &Graph,
    s: usize,
    t: usize,
    budget: &Budget,
) -> SearchOutcome<BicliqueWitness> {
    assert!(s >= 1 && t >= 1);
    let n = g.vertex_count();
    if n < s + t {
        return SearchOutcome::Exhausted;
    }
    let masks = g.adjacency_bitsets();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    let mut ticker = 0u32;

    #[allow(clippy::too_many_arguments)]
    fn descend(
        g: &Graph,
        masks: &[Bitset],
        s: usize,
        t: usize,
        start: usize,
        common: &Bitset,
        chosen: &mut Vec<usize>,
        budget: &Budget,
        ticker: &mut u32,
    ) -> SearchOutcome<BicliqueWitness> {
        *ticker = ticker.wrapping_add(1);
        if *ticker % 1024 == 0 && budget.expired() {
            return SearchOutcome::TimedOut;
        }
        if chosen.len() == s {
            // B = first t common neighbors outside A.
            let b: Vec<usize> = common
                .iter_ones()
                .filter(|v| !chosen.contains(v))
                .take(t)
                .collect();
            if b.len() == t {
                return SearchOutcome::Found(BicliqueWitness {
                    host: g.clone(),
                    side_a: chosen.iter().copied().collect(),
                    side_b: b.into_iter().collect(),
                });
            }
            return SearchOutcome::Exhausted;
        }
        for v in start..g.vertex_count() {
            if g.degree(v) < t {
                continue;
            }
            let next_common = if chosen.is_empty() {
                masks[v].clone()
            } else {
                common.intersection(&masks[v])
            };
            // Members of A may appear in the common set; at most s of them.
            if next_common.count() < t {
                continue;
            }
            chosen.push(v);
            match descend(g, masks, s, t, v + 1, &next_common, chosen, budget, ticker) {
                SearchOutcome::Exhausted => {
                    chosen.pop();
                }
                done => {
                    chosen.pop();
                    return done;
                }
            }
        }
        SearchOutcome::Exhausted
    }

    let all = Bitset::new(n);
    descend(g, &masks, s, t, 0, &all, &mut chosen, budget, &mut ticker)
}
