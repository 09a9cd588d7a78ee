//! Weighted digraphs and the classical path problems as closure pipelines.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Profile, Semiring};

/// Digraph with string labels and at most one nonzero-weight arc per ordered
/// pair. Loops are allowed.
#[derive(Clone, Debug)]
pub struct WeightedDigraph<S: Semiring> {
    sr: S,
    labels: Vec<String>,
    arcs: BTreeMap<(usize, usize), S::Elem>,
}

impl<S: Semiring> WeightedDigraph<S> {
    pub fn new(sr: S, labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Malformed(format!("duplicate node label {l:?}")));
            }
        }
        Ok(WeightedDigraph {
            sr,
            labels,
            arcs: BTreeMap::new(),
        })
    }

    /// Nodes labelled `1..=n`.
    pub fn with_nodes(sr: S, n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        WeightedDigraph {
            sr,
            labels,
            arcs: BTreeMap::new(),
        }
    }

    pub fn semiring(&self) -> &S {
        &self.sr
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_node(&self, index: usize) -> Result<()> {
        if index < self.labels.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index,
                nodes: self.labels.len(),
            })
        }
    }

    /// Adds an arc. A zero weight is not an arc and is dropped; a second
    /// arc on the same pair is ⊕-merged into the first. Both cases log a warning.
    pub fn add_arc(&mut self, from: usize, to: usize, weight: S::Elem) -> Result<()> {
        self.check_node(from)?;
        self.check_node(to)?;
        if self.sr.is_zero(&weight) {
            log::warn!("dropping zero-weight arc {} -> {}", self.labels[from], self.labels[to]);
            return Ok(());
        }
        match self.arcs.get_mut(&(from, to)) {
            Some(w) => {
                log::warn!("merging parallel arcs {} -> {}", self.labels[from], self.labels[to]);
                *w = self.sr.add(w, &weight);
            }
            None => {
                self.arcs.insert((from, to), weight);
            }
        }
        Ok(())
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<&S::Elem> {
        self.arcs.get(&(from, to))
    }

    /// Arcs in (from, to) order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &S::Elem)> {
        self.arcs.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

pub fn graph_to_matrix<S: Semiring>(g: &WeightedDigraph<S>) -> Matrix<S> {
    let n = g.node_count();
    let mut a = Matrix::zeros(g.sr.clone(), n, n);
    for (i, j, w) in g.arcs() {
        a.set(i, j, w.clone());
    }
    a
}

pub fn matrix_to_graph<S: Semiring>(a: &Matrix<S>) -> Result<WeightedDigraph<S>> {
    let n = a.require_square("matrix_to_graph")?;
    let mut g = WeightedDigraph::with_nodes(a.semiring().clone(), n);
    for i in 0..n {
        for j in 0..n {
            let w = a.get(i, j);
            if !g.sr.is_zero(w) {
                g.arcs.insert((i, j), w.clone());
            }
        }
    }
    Ok(g)
}

/// ⊙-product of the arc weights along `path`; a single node has weight 𝟏.
pub fn path_weight<S: Semiring>(g: &WeightedDigraph<S>, path: &[usize]) -> Result<S::Elem> {
    let Some(&first) = path.first() else {
        return Err(Error::Malformed("empty node sequence".into()));
    };
    g.check_node(first)?;
    let mut acc = g.sr.one();
    for w in path.windows(2) {
        g.check_node(w[1])?;
        let arc = g.weight(w[0], w[1]).ok_or(Error::NotAPath { from: w[0], to: w[1] })?;
        acc = g.sr.mul(&acc, arc);
    }
    Ok(acc)
}

/// Supremum of path weights between every pair of nodes, `A*`.
pub fn algebraic_path<S: Semiring>(g: &WeightedDigraph<S>) -> Result<Matrix<S>> {
    graph_to_matrix(g).closure()
}

fn require_profile(g: &WeightedDigraph<Profile>, expected: Profile) -> Result<()> {
    if *g.semiring() == expected {
        Ok(())
    } else {
        Err(Error::ProfileMismatch {
            expected: expected.key().into(),
            actual: g.semiring().key().into(),
        })
    }
}

/// Shortest distances; fails with the offending nodes on a negative cycle.
pub fn shortest_paths(g: &WeightedDigraph<Profile>) -> Result<Matrix<Profile>> {
    require_profile(g, Profile::MinPlus)?;
    algebraic_path(g)
}

/// Bottleneck capacities. Always defined since every width is below 𝟏 = +∞.
pub fn max_width_paths(g: &WeightedDigraph<Profile>) -> Result<Matrix<Profile>> {
    require_profile(g, Profile::MaxMin)?;
    algebraic_path(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Horizon {
    Steps(usize),
    Unbounded,
}

/// Best profit from each node: `A^k B` for a horizon of k steps, `A* B`
/// without a horizon. `terminal` holds the profit for ending at each node.
pub fn best_profit(
    g: &WeightedDigraph<Profile>,
    terminal: &Matrix<Profile>,
    horizon: Horizon,
) -> Result<Matrix<Profile>> {
    require_profile(g, Profile::MaxPlus)?;
    let a = graph_to_matrix(g);
    if terminal.rows() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "best_profit",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: terminal.rows(),
            right_cols: terminal.cols(),
        });
    }
    match horizon {
        Horizon::Steps(k) => a.pow(k)?.mul(terminal),
        Horizon::Unbounded => {
            let nodes = a.divergent_nodes();
            if !nodes.is_empty() {
                return Err(Error::ClosureDiverges { nodes });
            }
            a.closure()?.mul(terminal)
        }
    }
}
