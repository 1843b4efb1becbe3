//! Exact enumeration of the realizable acceptance profiles.
//!
//! Run every model state in parallel on the same input: a node of the run
//! graph is the tuple of current states (or "dead") reached from the identity
//! tuple by some word. Along any infinite input the set of surviving
//! components only shrinks, and its limit is the profile of the input. So a
//! set `B` is realizable iff some reachable node with survivors exactly `B`
//! lies on an infinite path that never kills another component.

use std::collections::{BTreeMap, VecDeque};

use super::{Point, Profile, StateSet};
use crate::automaton::Dfa;
use crate::word::{Letter, Word};

const DEAD: u32 = u32::MAX;

#[derive(Debug)]
pub(crate) struct ProfileData {
    pub profiles: Vec<Profile>,
    pub witnesses: Vec<Point>,
}

struct RunGraph {
    letters: usize,
    succ: Vec<Vec<Option<usize>>>,
    alive: Vec<StateSet>,
    // shortest (then lexicographically least) word reaching each node
    access: Vec<Word>,
}

impl RunGraph {
    fn build(dfa: &Dfa) -> Self {
        let n = dfa.states();
        let start: Vec<u32> = (0..n as u32).collect();
        let (graph, tuples) = Dfa::explore(dfa.letters(), start, |t, a| {
            let next: Vec<u32> = t
                .iter()
                .map(|&q| {
                    if q == DEAD {
                        DEAD
                    } else {
                        dfa.next(q, a).unwrap_or(DEAD)
                    }
                })
                .collect();
            next.iter().any(|&q| q != DEAD).then_some(next)
        });
        let alive = tuples
            .iter()
            .map(|t| {
                let mut s = StateSet::new(n);
                for (i, &q) in t.iter().enumerate() {
                    if q != DEAD {
                        s.insert(i as u32);
                    }
                }
                s
            })
            .collect();
        let succ: Vec<Vec<Option<usize>>> = (0..graph.states())
            .map(|v| {
                (0..dfa.letters() as Letter)
                    .map(|a| graph.next(v as u32, a).map(|t| t as usize))
                    .collect()
            })
            .collect();
        let mut access = vec![None; succ.len()];
        access[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (a, t) in succ[v].iter().enumerate() {
                if let Some(t) = *t {
                    if access[t].is_none() {
                        access[t] = Some(access[v].as_ref().unwrap().pushed(a as Letter));
                        queue.push_back(t);
                    }
                }
            }
        }
        RunGraph {
            letters: dfa.letters(),
            succ,
            alive,
            access: access.into_iter().map(Option::unwrap).collect(),
        }
    }

    /// Successor along `a` that keeps every survivor alive.
    fn stable_next(&self, v: usize, a: usize) -> Option<usize> {
        self.succ[v][a].filter(|&t| self.alive[t] == self.alive[v])
    }

    /// Nodes with an infinite path that never changes the survivor set.
    fn stable_live(&self) -> Vec<bool> {
        let mut live = vec![true; self.succ.len()];
        loop {
            let mut changed = false;
            for v in 0..live.len() {
                if live[v]
                    && !(0..self.letters).any(|a| self.stable_next(v, a).is_some_and(|t| live[t]))
                {
                    live[v] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// Shortest, then least, nonempty stable cycle through `v`.
    fn cycle_at(&self, v: usize, live: &[bool]) -> Option<Word> {
        let mut path: BTreeMap<usize, Word> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for a in 0..self.letters {
            if let Some(t) = self.stable_next(v, a).filter(|&t| live[t]) {
                if t == v {
                    return Some(Word::new(vec![a as Letter]));
                }
                if let std::collections::btree_map::Entry::Vacant(e) = path.entry(t) {
                    e.insert(Word::new(vec![a as Letter]));
                    queue.push_back(t);
                }
            }
        }
        while let Some(u) = queue.pop_front() {
            for a in 0..self.letters {
                if let Some(t) = self.stable_next(u, a).filter(|&t| live[t]) {
                    if t == v {
                        return Some(path[&u].pushed(a as Letter));
                    }
                    if !path.contains_key(&t) {
                        let w = path[&u].pushed(a as Letter);
                        path.insert(t, w);
                        queue.push_back(t);
                    }
                }
            }
        }
        None
    }
}

impl ProfileData {
    pub fn compute(dfa: &Dfa) -> Self {
        let graph = RunGraph::build(dfa);
        let live = graph.stable_live();
        let mut best: BTreeMap<StateSet, Point> = BTreeMap::new();
        for v in 0..graph.succ.len() {
            if !live[v] {
                continue;
            }
            let Some(cycle) = graph.cycle_at(v, &live) else {
                continue;
            };
            let x = Point::new(graph.access[v].clone(), cycle);
            let slot = best
                .entry(graph.alive[v].clone())
                .or_insert_with(|| x.clone());
            if (x.size(), &x) < (slot.size(), &*slot) {
                *slot = x;
            }
        }
        let (profiles, witnesses) = best.into_iter().map(|(s, x)| (Profile(s), x)).unzip();
        ProfileData {
            profiles,
            witnesses,
        }
    }
}
