use super::Circuit;

/// Dependency DAG over gate indices.
///
/// There is an edge `u -> v` when `v` is the next gate after `u` on one of
/// `u`'s qubits. Edges always point forward in gate order, so index order is a
/// topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepDag {
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

impl DepDag {
    pub fn from_circuit(c: &Circuit) -> Self {
        let n = c.len();
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        let mut last: Vec<Option<usize>> = vec![None; c.width()];
        for (i, g) in c.gates().iter().enumerate() {
            for q in g.qubits() {
                if let Some(p) = last[q] {
                    if !preds[i].contains(&p) {
                        preds[i].push(p);
                        succs[p].push(i);
                    }
                }
                last[q] = Some(i);
            }
        }
        Self { preds, succs }
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.preds[node]
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.succs[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succs.iter().map(Vec::len).sum()
    }

    /// Heaviest path where each node contributes `weight(node)`.
    pub fn longest_path<W, F>(&self, weight: F) -> W
    where
        W: Copy + Ord + Default + std::ops::Add<Output = W>,
        F: Fn(usize) -> W,
    {
        let mut best = vec![W::default(); self.len()];
        let mut overall = W::default();
        for v in 0..self.len() {
            let base = self.preds[v]
                .iter()
                .map(|&p| best[p])
                .max()
                .unwrap_or_default();
            best[v] = base + weight(v);
            overall = overall.max(best[v]);
        }
        overall
    }
}
