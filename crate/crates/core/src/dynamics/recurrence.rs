//! Recurrent classes of a chain and weak acyclicity under best replies.

use std::collections::{BTreeMap, BTreeSet};

use super::transition::TransitionMatrix;
use crate::game::{best_response_set_at, pure_nash_equilibria, StrategicGame};

/// Tarjan SCC on a directed graph given as adjacency lists. Components are
/// returned in reverse topological order.
pub fn tarjan_scc(graph: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'g> {
        graph: &'g [Vec<usize>],
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }

    fn strongconnect(v: usize, st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;

        for &w in &st.graph[v] {
            if st.idx[w].is_none() {
                strongconnect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }

        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }

    let n = graph.len();
    let mut st = State {
        graph,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            strongconnect(v, &mut st);
        }
    }
    st.comps
}

/// The closed communicating classes of a chain, sorted by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrentClassSet {
    classes: Vec<BTreeSet<usize>>,
}

impl RecurrentClassSet {
    pub fn classes(&self) -> &[BTreeSet<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// All member states across classes.
    pub fn states(&self) -> BTreeSet<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn class_of(&self, state: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&state))
    }
}

/// Condense the positive-probability digraph and keep exactly the strongly
/// connected components with no outgoing condensation edge.
pub fn recurrent_classes(p: &TransitionMatrix) -> RecurrentClassSet {
    assert!(p.is_row_stochastic(), "transition matrix must be row-stochastic");
    let n = p.size();
    let graph: Vec<Vec<usize>> = (0..n).map(|s| p.positive_targets(s)).collect();
    let comps = tarjan_scc(&graph);
    let mut comp_of = vec![usize::MAX; n];
    for (cid, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = cid;
        }
    }
    let mut classes: Vec<BTreeSet<usize>> = Vec::new();
    for (cid, comp) in comps.iter().enumerate() {
        let closed = comp
            .iter()
            .all(|&v| graph[v].iter().all(|&w| comp_of[w] == cid));
        if closed {
            classes.push(comp.iter().copied().collect());
        }
    }
    classes.sort_by_key(|c| *c.first().expect("nonempty component"));
    RecurrentClassSet { classes }
}

/// Best-reply digraph: one edge per unilateral move to a best response that
/// differs from the current action.
pub fn best_reply_graph<G: StrategicGame + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let space = g.space();
    let mut graph = vec![Vec::new(); space.len()];
    for flat in space.flats() {
        for player in 0..space.num_players() {
            let own = space.coord(flat, player);
            for action in best_response_set_at(g, player, flat) {
                if action != own {
                    graph[flat].push(space.with_coord(flat, player, action));
                }
            }
        }
    }
    graph
}

/// Outcome of the weak-acyclicity check. When the property holds,
/// `witness_paths` maps every profile to a best-reply path (inclusive of
/// both endpoints) terminating at a pure Nash equilibrium.
#[derive(Clone, Debug)]
pub struct WeakAcyclicity {
    pub holds: bool,
    pub witness_paths: BTreeMap<usize, Vec<usize>>,
}

/// From every profile, does some best-reply path reach a pure Nash
/// equilibrium? Computed by reverse reachability from the equilibrium set
/// over the best-reply digraph.
pub fn is_weakly_acyclic<G: StrategicGame + ?Sized>(g: &G) -> WeakAcyclicity {
    let space = g.space();
    let pne = pure_nash_equilibria(g);
    if pne.is_empty() {
        return WeakAcyclicity {
            holds: false,
            witness_paths: BTreeMap::new(),
        };
    }
    let graph = best_reply_graph(g);
    let mut reverse = vec![Vec::new(); space.len()];
    for (from, targets) in graph.iter().enumerate() {
        for &to in targets {
            reverse[to].push(from);
        }
    }
    // next_hop[s] is the successor of s on a shortest witness path.
    let mut next_hop: Vec<Option<usize>> = vec![None; space.len()];
    let mut seen = vec![false; space.len()];
    let mut queue: std::collections::VecDeque<usize> = pne.iter().copied().collect();
    for &s in &pne {
        seen[s] = true;
    }
    while let Some(s) = queue.pop_front() {
        for &p in &reverse[s] {
            if !seen[p] {
                seen[p] = true;
                next_hop[p] = Some(s);
                queue.push_back(p);
            }
        }
    }
    let holds = seen.iter().all(|&r| r);
    let mut witness_paths = BTreeMap::new();
    if holds {
        for start in space.flats() {
            let mut path = vec![start];
            let mut cursor = start;
            while let Some(next) = next_hop[cursor] {
                path.push(next);
                cursor = next;
            }
            debug_assert!(pne.contains(&cursor));
            witness_paths.insert(start, path);
        }
    }
    WeakAcyclicity {
        holds,
        witness_paths,
    }
}
