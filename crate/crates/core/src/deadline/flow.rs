//! Exact maximum flow over rational capacities.
//!
//! Capacities are scaled by the least common multiple of their denominators,
//! solved with Dinic's algorithm on integers and scaled back.

use std::collections::VecDeque;

use crate::time::{common_denominator, TimePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: TimePoint,
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: TimePoint,
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub arc_flows: Vec<TimePoint>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { nodes, arcs: Vec::new() }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: TimePoint) -> usize {
        assert!(from < self.nodes && to < self.nodes, "arc endpoint out of range");
        self.arcs.push(Arc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn max_flow(&self, source: usize, sink: usize) -> MaxFlow {
        let scale = common_denominator(self.arcs.iter().map(|a| &a.capacity));
        let mut dinic = Dinic::new(self.nodes);
        for arc in &self.arcs {
            let cap = arc.capacity.scaled(scale).expect("scale clears all denominators");
            dinic.add_edge(arc.from, arc.to, cap);
        }
        let value = if source == sink { 0 } else { dinic.run(source, sink) };
        let unscale = |v: u64| TimePoint::new(v, scale).expect("scale > 0");
        MaxFlow {
            value: unscale(value),
            arc_flows: (0..self.arcs.len()).map(|i| unscale(dinic.flow(i))).collect(),
        }
    }
}

struct Edge {
    to: usize,
    capacity: u64,
    residual: u64,
}

struct Dinic {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<Option<u32>>,
    cursor: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![None; n],
            cursor: vec![0; n],
        }
    }

    // forward edge at an even index, its reverse right after
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, capacity: cap, residual: cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, capacity: 0, residual: 0 });
    }

    /// Flow on the `i`-th forward edge.
    fn flow(&self, i: usize) -> u64 {
        let e = &self.edges[2 * i];
        e.capacity - e.residual
    }

    fn residual(&self, e: usize) -> u64 {
        self.edges[e].residual
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = None);
        self.level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let lu = self.level[u].expect("queued nodes are labelled");
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if self.level[v].is_none() && self.residual(e) > 0 {
                    self.level[v] = Some(lu + 1);
                    queue.push_back(v);
                }
            }
        }
        self.level[t].is_some()
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.adj[u].len() {
            let e = self.adj[u][self.cursor[u]];
            let v = self.edges[e].to;
            let next_level = self.level[u].map(|l| l + 1);
            if self.residual(e) > 0 && self.level[v] == next_level {
                let got = self.dfs(v, t, pushed.min(self.residual(e)));
                if got > 0 {
                    self.edges[e].residual -= got;
                    self.edges[e ^ 1].residual += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2);
        net.add_arc(0, 1, 5.into());
        let f = net.max_flow(0, 1);
        assert_eq!(f.value, 5.into());
        assert_eq!(f.arc_flows, vec![TimePoint::from(5)]);
    }

    #[test]
    fn unit_diamond() {
        let mut net = FlowNetwork::new(4);
        for (u, v) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            net.add_arc(u, v, TimePoint::ONE);
        }
        assert_eq!(net.max_flow(0, 3).value, 2.into());
    }

    #[test]
    fn rational_capacities_need_rerouting() {
        // the path 0-1-2-3 must be undone through the reverse of 1-2
        let half = TimePoint::new(1, 2).unwrap();
        let third = TimePoint::new(1, 3).unwrap();
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, half);
        net.add_arc(0, 2, third);
        net.add_arc(1, 2, half);
        net.add_arc(1, 3, third);
        net.add_arc(2, 3, half);
        let f = net.max_flow(0, 3);
        assert_eq!(f.value, half + third);
        // conservation at the inner nodes
        for node in [1, 2] {
            let inflow: TimePoint = net
                .arcs()
                .iter()
                .zip(&f.arc_flows)
                .filter(|(a, _)| a.to == node)
                .map(|(_, &x)| x)
                .sum();
            let outflow: TimePoint = net
                .arcs()
                .iter()
                .zip(&f.arc_flows)
                .filter(|(a, _)| a.from == node)
                .map(|(_, &x)| x)
                .sum();
            assert_eq!(inflow, outflow);
        }
        for (arc, flow) in net.arcs().iter().zip(&f.arc_flows) {
            assert!(*flow <= arc.capacity);
        }
    }

    #[test]
    fn disconnected() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 4.into());
        assert_eq!(net.max_flow(0, 2).value, TimePoint::ZERO);
    }
}
