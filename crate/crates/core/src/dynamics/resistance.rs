//! Exact stochastic stability via resistance trees.
//!
//! Under log-linear learning, the probability that the updating player picks
//! a non-best-response decays exponentially in beta with rate equal to the
//! payoff deficit against the best response. That deficit is the single-step
//! resistance. Stability is decided over the recurrent classes of the
//! unperturbed (best-reply) chain: inter-class resistances are shortest
//! resistance paths through arbitrary intermediate states, the stochastic
//! potential of a class is the weight of the cheapest spanning in-tree
//! pulling every other class into it, and the stochastically stable states
//! are exactly the members of the classes with minimal stochastic potential.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_traits::Zero;

use super::recurrence::{recurrent_classes, RecurrentClassSet};
use super::transition::abr_transition_matrix;
use crate::game::StrategicGame;
use crate::rational::Rational;

/// Inter-class resistances over the recurrent classes of the best-reply
/// chain. `arcs[i][j]` is the minimal summed single-step resistance of any
/// deviation path from class `i` to class `j`; the diagonal is `None`.
#[derive(Clone, Debug)]
pub struct ResistanceGraph {
    pub classes: Vec<BTreeSet<usize>>,
    pub arcs: Vec<Vec<Option<Rational>>>,
}

/// Resistance of the unilateral move at `from` where `player` switches to
/// `action`: the best available utility minus the chosen one. Zero exactly
/// when the chosen action is a best response.
pub fn single_step_resistance<G: StrategicGame + ?Sized>(
    g: &G,
    from: usize,
    player: usize,
    action: usize,
) -> Rational {
    let space = g.space();
    let chosen = g.utility(player, space.with_coord(from, player, action));
    let mut best = chosen;
    for a in 0..space.counts()[player] {
        let u = g.utility(player, space.with_coord(from, player, a));
        if u > best {
            best = u;
        }
    }
    best - chosen
}

/// Per-player fiber maxima of the utilities, indexed by joint profile.
fn fiber_maxima<G: StrategicGame + ?Sized>(g: &G) -> Vec<Vec<Rational>> {
    let space = g.space();
    let n = space.num_players();
    let mut maxima = vec![vec![Rational::zero(); space.len()]; n];
    for player in 0..n {
        for flat in space.flats() {
            if space.coord(flat, player) != 0 {
                continue;
            }
            let best = (0..space.counts()[player])
                .map(|a| g.utility(player, space.with_coord(flat, player, a)))
                .max()
                .expect("nonempty action set")
                .clone();
            for a in 0..space.counts()[player] {
                maxima[player][space.with_coord(flat, player, a)] = best.clone();
            }
        }
    }
    maxima
}

/// Multi-source Dijkstra over the unilateral-deviation graph with exact
/// rational path costs.
fn resistance_distances<G: StrategicGame + ?Sized>(
    g: &G,
    sources: &BTreeSet<usize>,
    maxima: &[Vec<Rational>],
) -> Vec<Option<Rational>> {
    let space = g.space();
    let n = space.num_players();
    let mut dist: Vec<Option<Rational>> = vec![None; space.len()];
    let mut heap: BinaryHeap<Reverse<(Rational, usize)>> = BinaryHeap::new();
    for &s in sources {
        dist[s] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), s)));
    }
    while let Some(Reverse((d, state))) = heap.pop() {
        match &dist[state] {
            Some(best) if *best < d => continue,
            _ => {}
        }
        for player in 0..n {
            let own = space.coord(state, player);
            for action in 0..space.counts()[player] {
                if action == own {
                    continue;
                }
                let target = space.with_coord(state, player, action);
                let step = &maxima[player][state] - g.utility(player, target);
                let candidate = &d + &step;
                let better = match &dist[target] {
                    Some(existing) => candidate < *existing,
                    None => true,
                };
                if better {
                    dist[target] = Some(candidate.clone());
                    heap.push(Reverse((candidate, target)));
                }
            }
        }
    }
    dist
}

/// Build the inter-class resistance graph for the given recurrent classes.
pub fn resistance_graph<G: StrategicGame + ?Sized>(
    g: &G,
    classes: &RecurrentClassSet,
) -> ResistanceGraph {
    let maxima = fiber_maxima(g);
    let class_list: Vec<BTreeSet<usize>> = classes.classes().to_vec();
    let m = class_list.len();
    let mut arcs = vec![vec![None; m]; m];
    for (i, from_class) in class_list.iter().enumerate() {
        let dist = resistance_distances(g, from_class, &maxima);
        for (j, to_class) in class_list.iter().enumerate() {
            if i == j {
                continue;
            }
            arcs[i][j] = to_class
                .iter()
                .filter_map(|&s| dist[s].clone())
                .min();
        }
    }
    ResistanceGraph {
        classes: class_list,
        arcs,
    }
}

/// Weight of the minimum spanning arborescence rooted at `root` (root
/// reaches every node through chosen in-edges), by the contraction
/// algorithm. Returns `None` when some node has no incoming edge.
fn min_arborescence_weight(
    n: usize,
    root: usize,
    weights: &[Vec<Option<Rational>>],
) -> Option<Rational> {
    if n <= 1 {
        return Some(Rational::zero());
    }
    // Cheapest incoming edge for every non-root node.
    let mut parent: Vec<Option<(usize, Rational)>> = vec![None; n];
    for v in 0..n {
        if v == root {
            continue;
        }
        for (u, row) in weights.iter().enumerate() {
            if u == v {
                continue;
            }
            if let Some(w) = &row[v] {
                let better = match &parent[v] {
                    Some((_, current)) => w < current,
                    None => true,
                };
                if better {
                    parent[v] = Some((u, w.clone()));
                }
            }
        }
        parent[v].as_ref()?;
    }

    // Look for a cycle among the chosen edges.
    let mut cycle: Option<Vec<usize>> = None;
    let mut mark = vec![usize::MAX; n];
    for start in 0..n {
        if cycle.is_some() {
            break;
        }
        let mut v = start;
        while v != root && mark[v] == usize::MAX {
            mark[v] = start;
            v = parent[v].as_ref().unwrap().0;
        }
        if v != root && mark[v] == start {
            // Walk the cycle once to collect it.
            let mut c = vec![v];
            let mut w = parent[v].as_ref().unwrap().0;
            while w != v {
                c.push(w);
                w = parent[w].as_ref().unwrap().0;
            }
            cycle = Some(c);
        }
    }

    let chosen_total = || -> Rational {
        (0..n)
            .filter(|&v| v != root)
            .map(|v| parent[v].as_ref().unwrap().1.clone())
            .sum()
    };

    let cycle = match cycle {
        None => return Some(chosen_total()),
        Some(c) => c,
    };

    // Contract the cycle into a single node and recurse on adjusted weights.
    let in_cycle: Vec<bool> = {
        let mut f = vec![false; n];
        for &v in &cycle {
            f[v] = true;
        }
        f
    };
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if !in_cycle[v] {
            id[v] = next;
            next += 1;
        }
    }
    let cycle_id = next;
    for &v in &cycle {
        id[v] = cycle_id;
    }
    let m = next + 1;
    let mut contracted: Vec<Vec<Option<Rational>>> = vec![vec![None; m]; m];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let w = match &weights[u][v] {
                Some(w) => w,
                None => continue,
            };
            let (cu, cv) = (id[u], id[v]);
            if cu == cv {
                continue;
            }
            // Entering the cycle: discount by the cycle edge being replaced.
            let adjusted = if cv == cycle_id {
                w - &parent[v].as_ref().unwrap().1
            } else {
                w.clone()
            };
            let slot = &mut contracted[cu][cv];
            let better = match slot {
                Some(current) => adjusted < *current,
                None => true,
            };
            if better {
                *slot = Some(adjusted);
            }
        }
    }
    let cycle_weight: Rational = cycle
        .iter()
        .map(|&v| parent[v].as_ref().unwrap().1.clone())
        .sum();
    let sub = min_arborescence_weight(m, id[root], &contracted)?;
    Some(sub + cycle_weight)
}

/// Full output of the exact stability computation.
#[derive(Clone, Debug)]
pub struct StochasticStability {
    pub classes: Vec<BTreeSet<usize>>,
    /// Stochastic potential per class: the cheapest in-tree weight.
    pub stochastic_potential: Vec<Rational>,
    /// Indices of classes attaining the minimal potential.
    pub stable_classes: Vec<usize>,
    /// Union of the stable classes' member states.
    pub stable_states: BTreeSet<usize>,
}

/// Exact stochastically stable set of log-linear learning on `g`.
///
/// With a single recurrent class the answer is immediate, since the stable
/// set is always contained in the recurrent states. Otherwise the stochastic
/// potential of each class is the minimum weight of a spanning arborescence
/// (over classes, with shortest-resistance arc weights) pulled into that
/// class, computed by edge-reversed contraction.
pub fn stochastically_stable_exact<G: StrategicGame + ?Sized>(g: &G) -> StochasticStability {
    let chain = abr_transition_matrix(g);
    let classes = recurrent_classes(&chain);
    let class_list: Vec<BTreeSet<usize>> = classes.classes().to_vec();
    if class_list.len() == 1 {
        let stable_states = class_list[0].clone();
        return StochasticStability {
            classes: class_list,
            stochastic_potential: vec![Rational::zero()],
            stable_classes: vec![0],
            stable_states,
        };
    }
    let graph = resistance_graph(g, &classes);
    let m = graph.classes.len();
    // In-arborescence toward the root equals an out-arborescence on the
    // transposed arc weights.
    let mut transposed = vec![vec![None; m]; m];
    for i in 0..m {
        for (j, w) in graph.arcs[i].iter().enumerate() {
            transposed[j][i] = w.clone();
        }
    }
    let potentials: Vec<Rational> = (0..m)
        .map(|root| {
            min_arborescence_weight(m, root, &transposed)
                .expect("resistance digraph over classes is complete")
        })
        .collect();
    let minimum = potentials.iter().min().expect("at least one class").clone();
    let stable_classes: Vec<usize> = (0..m).filter(|&c| potentials[c] == minimum).collect();
    let stable_states: BTreeSet<usize> = stable_classes
        .iter()
        .flat_map(|&c| graph.classes[c].iter().copied())
        .collect();
    StochasticStability {
        classes: graph.classes,
        stochastic_potential: potentials,
        stable_classes,
        stable_states,
    }
}
