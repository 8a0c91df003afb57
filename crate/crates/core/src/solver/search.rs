//! Backtracking engine for k-colourability under a [`Mode`].
//!
//! Vertices are visited in a static order. Colours are tried in ascending
//! order and a vertex may open at most one new colour (the next unused
//! label), which removes colour-permutation symmetry. Vertices that are
//! twins (equal open or equal closed neighbourhoods) are placed next to each
//! other and must receive non-decreasing colours; swapping twins is an
//! automorphism, so this keeps at least one colouring from every orbit.

use alloc::vec::Vec;

use crate::colouring::Mode;

use super::Limits;

/// Ordering constraint between a position and an earlier one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Link {
    Free,
    /// colour ≥ colour at that position
    NotBelow(usize),
    /// colour > colour at that position
    Above(usize),
}

pub(crate) struct Plan {
    pub order: Vec<usize>,
    pub links: Vec<Link>,
}

impl Plan {
    /// Degree-descending order (ties by index) with twin classes kept contiguous.
    pub fn with_twins(adj: &[u64]) -> Plan {
        let n = adj.len();
        let mut class_of = alloc::vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if class_of[v] != usize::MAX {
                continue;
            }
            let closed = adj[v] | 1 << v;
            let mut members = alloc::vec![v];
            for w in v + 1..n {
                if class_of[w] == usize::MAX && (adj[w] | 1 << w) == closed {
                    members.push(w);
                }
            }
            if members.len() == 1 {
                for w in v + 1..n {
                    if class_of[w] == usize::MAX && adj[w] == adj[v] {
                        members.push(w);
                    }
                }
            }
            for &w in &members {
                class_of[w] = classes.len();
            }
            classes.push(members);
        }
        classes.sort_by_key(|c| (core::cmp::Reverse(adj[c[0]].count_ones()), c[0]));
        Self::from_classes(&classes, false)
    }

    /// Degree-descending order with no twin constraints.
    pub fn plain(adj: &[u64]) -> Plan {
        let mut order: Vec<usize> = (0..adj.len()).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(adj[v].count_ones()), v));
        Plan { links: alloc::vec![Link::Free; order.len()], order }
    }

    /// Fixed blocks whose members need strictly increasing colours (b-fold search).
    pub fn strict_blocks(adj: &[u64], block: usize) -> Plan {
        let mut blocks: Vec<Vec<usize>> =
            (0..adj.len() / block).map(|v| (v * block..(v + 1) * block).collect()).collect();
        blocks.sort_by_key(|c| (core::cmp::Reverse(adj[c[0]].count_ones()), c[0]));
        Self::from_classes(&blocks, true)
    }

    fn from_classes(classes: &[Vec<usize>], strict: bool) -> Plan {
        let mut order = Vec::new();
        let mut links = Vec::new();
        for c in classes {
            for (k, &v) in c.iter().enumerate() {
                links.push(match (k, strict) {
                    (0, _) => Link::Free,
                    (_, false) => Link::NotBelow(order.len() - 1),
                    (_, true) => Link::Above(order.len() - 1),
                });
                order.push(v);
            }
        }
        Plan { order, links }
    }
}

pub(crate) enum Found {
    Yes(Vec<u32>),
    No,
    Aborted,
}

pub(crate) struct Search<'a, 'l> {
    adj: &'a [u64],
    plan: &'a Plan,
    mode: Mode,
    k: u32,
    class: Vec<u64>,
    colour: Vec<u32>,
    pub nodes: u64,
    limits: &'a Limits<'l>,
    aborted: bool,
    enumerate: Option<(usize, Vec<Vec<u32>>)>,
}

impl<'a, 'l> Search<'a, 'l> {
    pub fn new(adj: &'a [u64], plan: &'a Plan, mode: Mode, limits: &'a Limits<'l>) -> Self {
        Search {
            adj,
            plan,
            mode,
            k: 0,
            class: Vec::new(),
            colour: alloc::vec![0; adj.len()],
            nodes: 0,
            limits,
            aborted: false,
            enumerate: None,
        }
    }

    /// Whether `v` may join colour class `a` (0-based) given the current partial colouring.
    fn admissible(&self, v: usize, a: usize) -> bool {
        let cls = self.class[a];
        match self.mode {
            Mode::Proper => self.adj[v] & cls == 0,
            Mode::Improper(d) => {
                let mut same = self.adj[v] & cls;
                if same.count_ones() as usize > d {
                    return false;
                }
                while same != 0 {
                    let u = same.trailing_zeros() as usize;
                    same &= same - 1;
                    if (self.adj[u] & cls).count_ones() as usize + 1 > d {
                        return false;
                    }
                }
                true
            }
            Mode::Clustered(t) => {
                let within = cls | 1 << v;
                let mut comp = 1u64 << v;
                let mut frontier = comp;
                while frontier != 0 {
                    let u = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let fresh = self.adj[u] & within & !comp;
                    comp |= fresh;
                    frontier |= fresh;
                    if comp.count_ones() as usize > t {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn lowest_colour(&self, pos: usize) -> u32 {
        match self.plan.links[pos] {
            Link::Free => 1,
            Link::NotBelow(p) => self.colour[self.plan.order[p]],
            Link::Above(p) => self.colour[self.plan.order[p]] + 1,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.limits.node_limit {
            if self.nodes > limit {
                self.aborted = true;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(stop) = self.limits.stop {
                if stop() {
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    fn assign(&mut self, v: usize, a: u32) {
        self.colour[v] = a;
        self.class[a as usize - 1] |= 1 << v;
    }

    fn unassign(&mut self, v: usize) {
        let a = self.colour[v];
        self.class[a as usize - 1] &= !(1 << v);
        self.colour[v] = 0;
    }

    fn reset(&mut self, k: usize) {
        self.k = k as u32;
        self.class = alloc::vec![0; k];
        self.colour.iter_mut().for_each(|c| *c = 0);
        self.aborted = false;
    }

    /// Smallest admissible colour at every step; always succeeds.
    pub fn greedy(&mut self) -> Vec<u32> {
        let n = self.adj.len();
        self.reset(n);
        let mut max_used = 0;
        for pos in 0..n {
            let v = self.plan.order[pos];
            let lo = self.lowest_colour(pos);
            let a = (lo..=max_used + 1)
                .find(|&a| self.admissible(v, a as usize - 1))
                .expect("a fresh colour class is always admissible");
            self.assign(v, a);
            max_used = max_used.max(a);
        }
        self.colour.clone()
    }

    pub fn colourable(&mut self, k: usize) -> Found {
        self.reset(k);
        if self.descend(0, 0) {
            Found::Yes(self.colour.clone())
        } else if self.aborted {
            Found::Aborted
        } else {
            Found::No
        }
    }

    /// Every k-colouring up to colour permutation (no twin constraints should
    /// be in the plan), stopping after `max` results.
    pub fn enumerate(&mut self, k: usize, max: usize) -> Option<Vec<Vec<u32>>> {
        self.reset(k);
        self.enumerate = Some((max, Vec::new()));
        self.descend(0, 0);
        let (_, found) = self.enumerate.take().expect("set above");
        (!self.aborted).then_some(found)
    }

    fn descend(&mut self, pos: usize, max_used: u32) -> bool {
        if pos == self.adj.len() {
            if let Some((max, found)) = self.enumerate.as_mut() {
                found.push(self.colour.clone());
                return found.len() >= *max;
            }
            return true;
        }
        let v = self.plan.order[pos];
        let hi = self.k.min(max_used + 1);
        for a in self.lowest_colour(pos)..=hi {
            if !self.admissible(v, a as usize - 1) {
                continue;
            }
            if !self.tick() {
                return false;
            }
            self.assign(v, a);
            if self.descend(pos + 1, max_used.max(a)) {
                return true;
            }
            self.unassign(v);
            if self.aborted {
                return false;
            }
        }
        false
    }
}
