//! Dense matrices over a semiring.
//!
//! `Mat_mn(S)` with elementwise ⊕ and the usual row-by-column product is again
//! a semiring (for m = n). The closure `A* = E ⊕ A ⊕ A² ⊕ …` solves the
//! algebraic path problem: entry (i, j) is the ⊕-sum of the weights of all
//! paths from i to j in the digraph whose arcs are the nonzero entries.

use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{Element, Profile, Semiring};

#[derive(Clone, Debug)]
pub struct Matrix<S: Semiring> {
    sr: S,
    rows: usize,
    cols: usize,
    data: Vec<S::Elem>,
}

impl<S: Semiring> PartialEq for Matrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Eigenpair `A V = λ ⊙ V`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult<S: Semiring> {
    pub eigenvalue: S::Elem,
    /// Present for semifield instances only.
    pub eigenvector: Option<Matrix<S>>,
    /// The eigenvalue is unique when the matrix is irreducible.
    pub unique: bool,
}

/// Strongly connected components of the support digraph, ordered so that the
/// permuted matrix is upper block triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    /// `permutation[p]` is the original index placed at position `p`.
    pub permutation: Vec<usize>,
    /// Original node indices of each block, in block order.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockStructure {
    /// Start offset of each block in the permuted order.
    pub fn boundaries(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |start, b| {
                let s = *start;
                *start += b.len();
                Some(s)
            })
            .collect()
    }

    pub fn block_of(&self) -> Vec<usize> {
        let n = self.permutation.len();
        let mut owner = vec![0; n];
        for (b, nodes) in self.blocks.iter().enumerate() {
            for &v in nodes {
                owner[v] = b;
            }
        }
        owner
    }
}

impl<S: Semiring> Matrix<S> {
    pub fn new(sr: S, rows: usize, cols: usize, data: Vec<S::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Malformed(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix {
            sr,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(sr: S, rows: Vec<Vec<S::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Matrix::new(sr, r, c, data)
    }

    pub fn from_fn(sr: S, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            sr,
            rows,
            cols,
            data,
        }
    }

    /// The zero matrix O.
    pub fn zeros(sr: S, rows: usize, cols: usize) -> Self {
        let z = sr.zero();
        Matrix {
            data: vec![z; rows * cols],
            sr,
            rows,
            cols,
        }
    }

    /// The unity matrix E.
    pub fn identity(sr: S, n: usize) -> Self {
        let (z, o) = (sr.zero(), sr.one());
        Matrix::from_fn(sr, n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn column(sr: S, entries: Vec<S::Elem>) -> Self {
        let n = entries.len();
        Matrix {
            sr,
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn semiring(&self) -> &S {
        &self.sr
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[S::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[S::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Elementwise image under `f`, possibly into another semiring.
    pub fn map<T: Semiring>(&self, sr: T, f: impl Fn(&S::Elem) -> T::Elem) -> Matrix<T> {
        Matrix {
            sr,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch("mat_add", other));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| self.sr.add(x, y))
            .collect();
        Ok(Matrix {
            sr: self.sr.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.product(other, |sr, x, y| sr.add(x, y))
    }

    /// Product with ⊕ replaced by the order join: entry (i, j) of the k-th
    /// power is then the supremum of single path weights rather than their sum.
    fn join_mul(&self, other: &Self) -> Result<Self> {
        self.product(other, |sr, x, y| sr.join(x, y))
    }

    fn product(&self, other: &Self, combine: impl Fn(&S, &S::Elem, &S::Elem) -> S::Elem) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch("mat_mul", other));
        }
        let sr = &self.sr;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let mut acc = sr.zero();
                for (k, a) in row.iter().enumerate() {
                    let t = sr.mul(a, other.get(k, j));
                    acc = combine(sr, &acc, &t);
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            sr: sr.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `λ ⊙ A`.
    pub fn scalar_mul(&self, lambda: &S::Elem) -> Self {
        let sr = self.sr.clone();
        self.map(sr, |x| self.sr.mul(lambda, x))
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let n = self.require_square("pow")?;
        let mut acc = Matrix::identity(self.sr.clone(), n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `⊕_{l=0}^{k} A^l`.
    pub fn power_sum(&self, k: usize) -> Result<Self> {
        let n = self.require_square("power_sum")?;
        let mut term = Matrix::identity(self.sr.clone(), n);
        let mut total = term.clone();
        for _ in 0..k {
            term = term.mul(self)?;
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// Elementwise order: every entry `a_ij ⪯ b_ij`.
    pub fn leq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(x, y)| self.sr.leq(x, y).holds())
    }

    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(x, y)| self.sr.approx_eq(x, y, rel_tol))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.sr.is_zero(x))
    }

    /// Principal submatrix on `nodes`, in the given order.
    pub fn submatrix(&self, nodes: &[usize]) -> Self {
        Matrix::from_fn(self.sr.clone(), nodes.len(), nodes.len(), |i, j| {
            self.get(nodes[i], nodes[j]).clone()
        })
    }

    /// `P A Pᵀ` for `permutation[p] = original index`.
    pub fn permuted(&self, permutation: &[usize]) -> Self {
        self.submatrix(permutation)
    }

    /// Successor lists of the support digraph (arcs are nonzero entries).
    pub fn support(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.sr.is_zero(self.get(i, j)))
                    .collect()
            })
            .collect()
    }

    /// Closure `A*` computed by in-place generalized Gauss–Jordan elimination,
    /// `a_ij ← a_ij ⊕ a_ik ⊙ (a_kk)* ⊙ a_kj` over pivots k, in O(n³)
    /// semiring operations. When a pivot closure is undefined but the matrix
    /// is semi-definite, the truncated power sum `⊕_{l<n} A^l` is returned.
    pub fn closure(&self) -> Result<Self> {
        let n = self.require_square("closure")?;
        match self.eliminate() {
            Ok(plus) => Matrix::identity(self.sr.clone(), n).add(&plus),
            Err(pivot) => {
                if self.sr.flags().idempotent && self.is_semi_definite() {
                    return self.closure_by_power_sum();
                }
                let mut nodes = self.divergent_nodes();
                if nodes.is_empty() {
                    let blocks = self.scc_blocks();
                    nodes = blocks.blocks[blocks.block_of()[pivot]].clone();
                }
                Err(Error::ClosureDiverges { nodes })
            }
        }
    }

    /// `A⁺ = A ⊕ A² ⊕ …` by elimination. On failure returns the pivot whose
    /// scalar closure is undefined.
    fn eliminate(&self) -> std::result::Result<Self, usize> {
        let n = self.rows;
        let sr = &self.sr;
        let mut a = self.clone();
        for k in 0..n {
            let pivot = sr.closure(a.get(k, k)).map_err(|_| k)?;
            let col: Vec<S::Elem> = (0..n).map(|i| a.get(i, k).clone()).collect();
            let row: Vec<S::Elem> = a.row(k).to_vec();
            for (i, aik) in col.iter().enumerate() {
                if sr.is_zero(aik) {
                    continue;
                }
                let left = sr.mul(aik, &pivot);
                for (j, akj) in row.iter().enumerate() {
                    if sr.is_zero(akj) {
                        continue;
                    }
                    let t = sr.mul(&left, akj);
                    let v = sr.add(a.get(i, j), &t);
                    a.set(i, j, v);
                }
            }
        }
        Ok(a)
    }

    /// `⊕_{l=0}^{n-1} A^l`, which equals `A*` for semi-definite A.
    pub fn closure_by_power_sum(&self) -> Result<Self> {
        let n = self.require_square("closure")?;
        self.power_sum(n.saturating_sub(1))
    }

    /// Diagonal of `⊕_{k=1}^{n} A^k` taken with the order join, i.e. for each
    /// node the supremum of weights of closed paths of length 1..=n through it.
    fn closed_path_sup(&self) -> Vec<S::Elem> {
        let n = self.rows;
        let mut term = self.clone();
        let mut diag: Vec<S::Elem> = (0..n).map(|i| self.get(i, i).clone()).collect();
        for _ in 1..n {
            term = term.join_mul(self).expect("square");
            for (i, d) in diag.iter_mut().enumerate() {
                *d = self.sr.join(d, term.get(i, i));
            }
        }
        diag
    }

    /// Nodes lying on a closed path of weight not below 𝟏.
    pub fn divergent_nodes(&self) -> Vec<usize> {
        let one = self.sr.one();
        self.closed_path_sup()
            .iter()
            .enumerate()
            .filter(|(_, d)| !self.sr.leq(d, &one).holds())
            .map(|(i, _)| i)
            .collect()
    }

    /// Every closed path has weight ⪯ 𝟏. Closed paths longer than n split
    /// into cycles of length ≤ n, so checking lengths 1..=n suffices.
    pub fn is_semi_definite(&self) -> bool {
        self.is_square() && self.divergent_nodes().is_empty()
    }

    /// Every closed path has weight ≺ 𝟏.
    pub fn is_definite(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let one = self.sr.one();
        self.closed_path_sup()
            .iter()
            .all(|d| self.sr.is_zero(d) || self.sr.lt(d, &one))
    }

    /// Support digraph strongly connected; a 1×1 matrix needs a nonzero loop.
    pub fn is_irreducible(&self) -> bool {
        if !self.is_square() || self.rows == 0 {
            return false;
        }
        let blocks = self.scc_blocks();
        blocks.blocks.len() == 1 && (self.rows > 1 || !self.sr.is_zero(self.get(0, 0)))
    }

    /// Tarjan's strongly connected components, emitted sources first so arcs
    /// only run from earlier to later blocks.
    pub fn scc_blocks(&self) -> BlockStructure {
        let succ = self.support();
        let mut sccs = tarjan(&succ);
        sccs.reverse();
        for b in &mut sccs {
            b.sort_unstable();
        }
        BlockStructure {
            permutation: sccs.iter().flatten().copied().collect(),
            blocks: sccs,
        }
    }

    fn require_spectral_caps(&self) -> Result<()> {
        let f = self.sr.flags();
        for (ok, cap) in [
            (f.commutative, "commutative"),
            (f.algebraically_closed, "algebraically_closed"),
            (f.cancellative, "cancellative"),
            (f.stabilizing, "stabilizing"),
        ] {
            if !ok {
                return Err(self.sr.missing(cap));
            }
        }
        Ok(())
    }

    /// `⊕_{l=1}^{n} root_l(tr A^l)`: the ⊕ over closed paths p of the
    /// |p|-th root of their weight. The maximum is attained on an elementary
    /// cycle, so this is the cycle-invariant eigenvalue formula.
    fn cycle_root_sum(&self) -> Result<S::Elem> {
        let n = self.rows;
        let sr = &self.sr;
        let mut lambda = sr.zero();
        let mut term = Matrix::identity(sr.clone(), n);
        for l in 1..=n {
            term = term.mul(self)?;
            let trace = sr.sum((0..n).map(|i| term.get(i, i)));
            lambda = sr.add(&lambda, &sr.nth_root(&trace, l)?);
        }
        Ok(lambda)
    }

    /// Eigenvalue, and for semifields an eigenvector taken from a critical
    /// column of `(λ⁻¹ ⊙ A)⁺`. For reducible matrices the returned value is
    /// the largest eigenvalue (`unique = false`).
    pub fn eigenvalue(&self) -> Result<EigenResult<S>> {
        self.require_square("eigenvalue")?;
        self.require_spectral_caps()?;
        let lambda = self.cycle_root_sum()?;
        if self.sr.is_zero(&lambda) {
            return Err(Error::NoCycle);
        }
        let eigenvector = self.critical_vector(&lambda);
        Ok(EigenResult {
            eigenvalue: lambda,
            eigenvector,
            unique: self.is_irreducible(),
        })
    }

    fn critical_vector(&self, lambda: &S::Elem) -> Option<Self> {
        let sr = &self.sr;
        let inv = sr.inverse(lambda).ok()?;
        let n = self.rows;
        let normalized = self.scalar_mul(&inv);
        // Carré truncation: for semi-definite B, B⁺ = ⊕_{k=1}^{n} B^k.
        let plus = normalized.mul(&normalized.power_sum(n - 1).ok()?).ok()?;
        let one = sr.one();
        let diag: Vec<&S::Elem> = (0..n).map(|i| plus.get(i, i)).collect();
        let critical = diag.iter().position(|d| **d == one).or_else(|| {
            // Rounding can push the critical diagonal off 𝟏; fall back to the
            // first maximal nonzero diagonal entry.
            let best = diag
                .iter()
                .filter(|d| !sr.is_zero(d))
                .fold(None::<&S::Elem>, |acc, d| match acc {
                    Some(a) => Some(if sr.lt(a, d) { d } else { a }),
                    None => Some(d),
                })?;
            diag.iter().position(|d| *d == best)
        })?;
        let v: Vec<S::Elem> = (0..n).map(|i| plus.get(i, critical).clone()).collect();
        Some(Matrix::column(sr.clone(), v))
    }

    /// `ρ(A)`: ⊕ of the eigenvalues of the irreducible diagonal blocks of the
    /// block triangular form; zero blocks contribute 𝟎.
    pub fn spectral_radius(&self) -> Result<S::Elem> {
        self.require_square("spectral_radius")?;
        self.require_spectral_caps()?;
        let blocks = self.scc_blocks();
        let mut rho = self.sr.zero();
        for nodes in &blocks.blocks {
            let sub = self.submatrix(nodes);
            if sub.is_irreducible() {
                rho = self.sr.add(&rho, &sub.cycle_root_sum()?);
            }
        }
        Ok(rho)
    }
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State<'_>, v: usize) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &st.succ[v] {
            match st.index[w] {
                None => {
                    visit(st, w);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                _ => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            let mut comp = Vec::new();
            while let Some(w) = st.stack.pop() {
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.out.push(comp);
        }
    }

    let n = succ.len();
    let mut st = State {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(&mut st, v);
        }
    }
    st.out
}

/// Karp's O(n·m) maximum cycle mean for max-plus (minimum cycle mean for
/// min-plus). `None` when the matrix has no cycle.
pub fn karp_cycle_mean(a: &Matrix<Profile>) -> Result<Option<f64>> {
    let n = a.require_square("karp_cycle_mean")?;
    let sign = match a.semiring() {
        Profile::MaxPlus => 1.0,
        Profile::MinPlus => -1.0,
        other => {
            return Err(Error::ProfileMismatch {
                expected: "max-plus or min-plus".into(),
                actual: other.to_string(),
            })
        }
    };
    let arcs: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| a.get(i, j).as_finite().map(|w| (i, j, sign * w)))
        .collect();
    // d[k][v]: heaviest walk of exactly k arcs ending at v, from any start.
    let mut d = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    d[0].iter_mut().for_each(|x| *x = 0.0);
    for k in 1..=n {
        for &(u, v, w) in &arcs {
            if d[k - 1][u] > f64::NEG_INFINITY {
                d[k][v] = d[k][v].max(d[k - 1][u] + w);
            }
        }
    }
    let mut best: Option<f64> = None;
    for v in 0..n {
        if d[n][v] == f64::NEG_INFINITY {
            continue;
        }
        let worst = (0..n)
            .filter(|&k| d[k][v] > f64::NEG_INFINITY)
            .map(|k| (d[n][v] - d[k][v]) / (n - k) as f64)
            .fold(f64::INFINITY, f64::min);
        best = Some(best.map_or(worst, |b: f64| b.max(worst)));
    }
    Ok(best.map(|m| sign * m))
}

impl<S: Semiring> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| self.sr.describe(x)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Convenience constructor for real-valued scalar matrices; `f64` infinities
/// become the corresponding tags.
pub fn real_matrix(sr: Profile, rows: &[&[f64]]) -> Matrix<Profile> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&v| Element::from(v)).collect())
        .collect();
    Matrix::from_rows(sr, rows).expect("rectangular")
}
