//! Maximum cliques and maximum `d`-sparse induced subgraphs on bitmask graphs.

use alloc::vec::Vec;

use super::Limits;

pub(crate) struct SetSearch<'a, 'l> {
    adj: &'a [u64],
    limits: &'a Limits<'l>,
    pub nodes: u64,
    pub aborted: bool,
    pub best: u64,
}

impl<'a, 'l> SetSearch<'a, 'l> {
    pub fn new(adj: &'a [u64], limits: &'a Limits<'l>) -> Self {
        SetSearch { adj, limits, nodes: 0, aborted: false, best: 0 }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.limits.node_limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
        }
        if self.nodes.is_multiple_of(1024) && self.limits.stop.is_some_and(|s| s()) {
            self.aborted = true;
        }
        !self.aborted
    }

    pub fn max_clique(&mut self) {
        let all = if self.adj.len() == 64 { u64::MAX } else { (1u64 << self.adj.len()) - 1 };
        self.clique(0, all);
    }

    /// Branch and bound with a greedy colouring bound on the candidate set.
    fn clique(&mut self, current: u64, mut cand: u64) {
        if cand == 0 {
            if current.count_ones() > self.best.count_ones() {
                self.best = current;
            }
            return;
        }
        // greedy colouring of the candidates; vertices listed by colour
        let mut ranked: Vec<(usize, u32)> = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncoloured = cand;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut avail = uncoloured;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !self.adj[v];
                uncoloured &= !(1 << v);
                ranked.push((v, colour));
            }
        }
        for &(v, c) in ranked.iter().rev() {
            if current.count_ones() + c <= self.best.count_ones() {
                return;
            }
            if !self.tick() {
                return;
            }
            self.clique(current | 1 << v, cand & self.adj[v]);
            cand &= !(1 << v);
        }
    }

    /// Largest set inducing maximum degree at most `d`.
    pub fn max_sparse(&mut self, d: usize) {
        let n = self.adj.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.sparse(d, 0, all);
    }

    fn sparse(&mut self, d: usize, set: u64, cand: u64) {
        // drop candidates that can no longer join
        let mut saturated = 0u64;
        let mut s = set;
        while s != 0 {
            let u = s.trailing_zeros() as usize;
            s &= s - 1;
            if (self.adj[u] & set).count_ones() as usize >= d {
                saturated |= 1 << u;
            }
        }
        let mut cand = cand & !set;
        let mut c = cand;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            if self.adj[w] & saturated != 0 || (self.adj[w] & set).count_ones() as usize > d {
                cand &= !(1 << w);
            }
        }
        if set.count_ones() > self.best.count_ones() {
            self.best = set;
        }
        while cand != 0 {
            if set.count_ones() + cand.count_ones() <= self.best.count_ones() {
                return;
            }
            if !self.tick() {
                return;
            }
            // branch on the candidate with fewest candidate neighbours
            let mut pick = cand.trailing_zeros() as usize;
            let mut fewest = u32::MAX;
            let mut c = cand;
            while c != 0 {
                let w = c.trailing_zeros() as usize;
                c &= c - 1;
                let k = (self.adj[w] & cand).count_ones();
                if k < fewest {
                    fewest = k;
                    pick = w;
                }
            }
            cand &= !(1 << pick);
            self.sparse(d, set | 1 << pick, cand);
            if self.aborted {
                return;
            }
        }
    }
}
