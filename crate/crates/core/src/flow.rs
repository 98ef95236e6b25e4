//! Unit-capacity max flow (Edmonds–Karp).

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub(crate) struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNet {
    pub fn new(n: usize) -> FlowNet {
        FlowNet { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    /// Adds `u → v` with capacity `c`; returns the arc id (its residual twin is `id ^ 1`).
    pub fn add_arc(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently on arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.cap[id ^ 1]
    }

    /// Augments from `s` to `t` until `limit` units flow or no path remains.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &id in &self.adj[u] {
                    let v = self.to[id];
                    if self.cap[id] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let id = via[v];
                self.cap[id] -= 1;
                self.cap[id ^ 1] += 1;
                v = self.to[id ^ 1];
            }
            total += 1;
        }
        total
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let v = self.to[id];
                if self.cap[id] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_paths() {
        let mut f = FlowNet::new(4);
        f.add_arc(0, 1, 1);
        f.add_arc(1, 3, 1);
        f.add_arc(0, 2, 1);
        f.add_arc(2, 3, 1);
        f.add_arc(1, 2, 1);
        assert_eq!(f.max_flow(0, 3, i64::MAX), 2);
        assert!(!f.reachable(0)[3]);
    }
}
