//! Tree parameters used by the tree bounds: domination number,
//! independence number, support/leaf counts and the search for a minimum
//! dominating set whose complement is independent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_GAMMA_SET_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeProfile {
    pub n: usize,
    pub gamma: usize,
    pub beta0: usize,
    pub supports: usize,
    pub leaves: usize,
}

impl TreeProfile {
    pub fn of(t: &Graph) -> Result<TreeProfile> {
        let (supports, leaves) = count_supports_leaves(t)?;
        Ok(TreeProfile {
            n: t.order(),
            gamma: domination_number(t)?,
            beta0: independence_number(t)?,
            supports,
            leaves,
        })
    }
}

/// BFS from vertex 0: (visit order, parent).
fn rooted(t: &Graph) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = t.order();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[0] = true;
    order.push(0);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &v in t.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                order.push(v);
            }
        }
    }
    (order, parent)
}

/// Exact `γ(T)` by a three-state rooted DP: in the set, dominated by a
/// child, or waiting to be dominated by the parent.
pub fn domination_number(t: &Graph) -> Result<usize> {
    t.require_tree()?;
    const INF: usize = usize::MAX / 4;
    let n = t.order();
    let (order, parent) = rooted(t);
    let mut inset = vec![1usize; n];
    let mut covered = vec![0usize; n];
    let mut waiting = vec![0usize; n];
    // cheapest extra cost to force one child into the set
    let mut force = vec![INF; n];
    for &v in order.iter().rev() {
        if force[v] >= INF {
            covered[v] = INF;
        } else {
            covered[v] += force[v];
        }
        if let Some(p) = parent[v] {
            let best_ab = inset[v].min(covered[v]);
            inset[p] += best_ab.min(waiting[v]);
            covered[p] = covered[p].saturating_add(best_ab);
            force[p] = force[p].min(inset[v] - best_ab);
            waiting[p] = waiting[p].saturating_add(covered[v]).min(INF);
        }
    }
    Ok(inset[0].min(covered[0]))
}

/// Exact `β₀(T)` by the two-state DP.
pub fn independence_number(t: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(t)?.len())
}

/// One maximum independent set, in ascending order.
pub fn maximum_independent_set(t: &Graph) -> Result<Vec<usize>> {
    t.require_tree()?;
    let n = t.order();
    let (order, parent) = rooted(t);
    let mut take = vec![1usize; n];
    let mut skip = vec![0usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            take[p] += skip[v];
            skip[p] += take[v].max(skip[v]);
        }
    }
    let mut chosen = vec![false; n];
    for &v in &order {
        let parent_taken = parent[v].is_some_and(|p| chosen[p]);
        chosen[v] = !parent_taken && take[v] >= skip[v];
    }
    Ok((0..n).filter(|&v| chosen[v]).collect())
}

/// `(s, l)`: vertices adjacent to a leaf, and degree-1 vertices. For `P_2`
/// both endpoints count as support and leaf, giving `(2, 2)`.
pub fn count_supports_leaves(t: &Graph) -> Result<(usize, usize)> {
    t.require_tree()?;
    if t.order() < 2 {
        return Err(Error::Precondition("support/leaf counts need n >= 2".into()));
    }
    let leaf = |v: usize| t.neighbors(v).len() == 1;
    let n = t.order();
    let l = (0..n).filter(|&v| leaf(v)).count();
    let s = (0..n).filter(|&v| t.neighbors(v).iter().any(|&u| leaf(u))).count();
    Ok((s, l))
}

/// Searches all minimum dominating sets (in lexicographic order) for one
/// whose complement is independent.
pub fn find_gamma_set_independent_complement(t: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    t.require_tree()?;
    let n = t.order();
    if n > cap {
        return Err(Error::CapExceeded {
            method: "gamma-set search",
            cap,
            order: n,
            hint: "the search enumerates subsets",
        });
    }
    let gamma = domination_number(t)?;
    let mut chosen = vec![false; n];
    let mut found = None;
    combos(t, gamma, 0, &mut chosen, &mut found);
    Ok(found)
}

fn combos(t: &Graph, left: usize, from: usize, chosen: &mut [bool], found: &mut Option<Vec<usize>>) {
    if found.is_some() {
        return;
    }
    let n = chosen.len();
    if left == 0 {
        let independent_rest = (0..n).all(|v| chosen[v] || t.neighbors(v).iter().all(|&u| chosen[u]));
        let dominating = (0..n).all(|v| chosen[v] || t.neighbors(v).iter().any(|&u| chosen[u]));
        if independent_rest && dominating {
            *found = Some((0..n).filter(|&v| chosen[v]).collect());
        }
        return;
    }
    for v in from..=n.saturating_sub(left) {
        chosen[v] = true;
        combos(t, left - 1, v + 1, chosen, found);
        chosen[v] = false;
        if found.is_some() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{random_tree, GraphSpec};

    fn gen(s: GraphSpec) -> Graph {
        s.generate().unwrap()
    }

    // independent oracles: subset enumeration
    fn brute_gamma(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&m| (0..n).all(|v| m >> v & 1 == 1 || g.neighbors(v).iter().any(|&u| m >> u & 1 == 1)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_beta(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn oracle_values() {
        assert_eq!(brute_gamma(&gen(GraphSpec::Path(4))), 2);
        assert_eq!(brute_gamma(&gen(GraphSpec::Path(7))), 3);
        assert_eq!(brute_beta(&gen(GraphSpec::Path(4))), 2);
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_number(&gen(GraphSpec::Path(4))).unwrap(), 2);
        assert_eq!(domination_number(&gen(GraphSpec::Path(7))).unwrap(), 3);
        assert_eq!(domination_number(&gen(GraphSpec::Path(1))).unwrap(), 1);
        assert_eq!(domination_number(&gen(GraphSpec::Path(2))).unwrap(), 1);
        for n in 2..12 {
            assert_eq!(domination_number(&gen(GraphSpec::Star(n))).unwrap(), 1);
        }
        assert!(domination_number(&gen(GraphSpec::Cycle(4))).is_err());
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&gen(GraphSpec::Path(4))).unwrap(), 2);
        assert_eq!(independence_number(&gen(GraphSpec::Path(5))).unwrap(), 3);
        for n in 2..12 {
            let s = gen(GraphSpec::Star(n));
            assert_eq!(independence_number(&s).unwrap(), n - 1);
            assert_eq!(independence_number(&s).unwrap() + domination_number(&s).unwrap(), n);
        }
    }

    #[test]
    fn dp_matches_brute_force_on_random_trees() {
        for seed in 0..200 {
            let n = 1 + (seed as usize % 12);
            let t = random_tree(n, seed);
            assert_eq!(domination_number(&t).unwrap(), brute_gamma(&t), "seed {seed}");
            let mis = maximum_independent_set(&t).unwrap();
            assert!(t.edges().all(|(u, v)| !(mis.contains(&u) && mis.contains(&v))));
            assert_eq!(mis.len(), brute_beta(&t), "seed {seed}");
        }
    }

    #[test]
    fn supports_and_leaves() {
        assert_eq!(
            count_supports_leaves(&gen(GraphSpec::DoubleStar(3, 3))).unwrap(),
            (2, 4)
        );
        assert_eq!(count_supports_leaves(&gen(GraphSpec::Path(5))).unwrap(), (2, 2));
        assert_eq!(count_supports_leaves(&gen(GraphSpec::Path(2))).unwrap(), (2, 2));
        assert!(count_supports_leaves(&gen(GraphSpec::Path(1))).is_err());
    }

    #[test]
    fn profile_invariants_on_random_trees() {
        for seed in 0..100 {
            let n = 2 + (seed as usize % 30);
            let p = TreeProfile::of(&random_tree(n, seed)).unwrap();
            assert!(p.gamma >= 1 && p.gamma <= n.div_ceil(2));
            assert!(p.beta0 >= n.div_ceil(2));
            assert!(p.leaves >= p.supports);
        }
    }

    #[test]
    fn gamma_sets_with_independent_complement() {
        // {v1, v3} comes first lexicographically; {v2, v3} qualifies too
        assert_eq!(
            find_gamma_set_independent_complement(&gen(GraphSpec::Path(4)), 20).unwrap(),
            Some(vec![0, 2])
        );
        assert_eq!(
            find_gamma_set_independent_complement(&gen(GraphSpec::Star(7)), 20).unwrap(),
            Some(vec![0])
        );
        // every γ-set of P_6 is {v2, v5}: the complement keeps edge v3v4
        assert_eq!(
            find_gamma_set_independent_complement(&gen(GraphSpec::Path(6)), 20).unwrap(),
            None
        );
        assert!(find_gamma_set_independent_complement(&gen(GraphSpec::Path(21)), 20).is_err());
    }
}
