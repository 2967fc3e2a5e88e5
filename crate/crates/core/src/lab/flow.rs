//! Dinic max-flow on real capacities, used for 1-capacity via min-cut duality.

use std::collections::VecDeque;

struct Arc {
    to: usize,
    cap: f64,
}

pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Adds an undirected edge (capacity `cap` in both directions).
    pub fn add_undirected(&mut self, a: usize, b: usize, cap: f64) {
        self.add_pair(a, b, cap, cap);
    }

    pub fn add_directed(&mut self, a: usize, b: usize, cap: f64) {
        self.add_pair(a, b, cap, 0.0);
    }

    fn add_pair(&mut self, a: usize, b: usize, forward: f64, backward: f64) {
        self.out[a].push(self.arcs.len());
        self.arcs.push(Arc { to: b, cap: forward });
        self.out[b].push(self.arcs.len());
        self.arcs.push(Arc { to: a, cap: backward });
    }

    fn levels(&self, s: usize, eps: f64) -> Vec<Option<usize>> {
        let mut level = vec![None; self.out.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > eps && level[arc.to].is_none() {
                    level[arc.to] = Some(level[x].unwrap() + 1);
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, x: usize, t: usize, limit: f64, level: &[Option<usize>], next: &mut [usize], eps: f64) -> f64 {
        if x == t {
            return limit;
        }
        while next[x] < self.out[x].len() {
            let a = self.out[x][next[x]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > eps && level[to] == level[x].map(|l| l + 1) {
                let pushed = self.augment(to, t, limit.min(cap), level, next, eps);
                if pushed > 0.0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0.0
    }

    /// Maximum flow value and the source side of a minimum cut.
    pub fn max_flow(&mut self, s: usize, t: usize, eps: f64) -> (f64, Vec<bool>) {
        let mut total = 0.0;
        loop {
            let level = self.levels(s, eps);
            if level[t].is_none() {
                let side = level.iter().map(Option::is_some).collect();
                return (total, side);
            }
            let mut next = vec![0; self.out.len()];
            loop {
                let pushed = self.augment(s, t, f64::INFINITY, &level, &mut next, eps);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
    }
}
