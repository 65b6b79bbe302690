//! Decoupling groups, their Cayley graphs and Eulerian walks through them.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::{mod_bath, spectral_norm, DenseOperator, Pauli, PauliString};
use crate::pulses::phase_fidelity;

/// Projective unitary representation of a finite group on the system register.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct DDGroupRep {
    labels: Vec<String>,
    unitaries: Vec<DenseOperator>,
    generators: Vec<usize>,
    /// `table[a][b]` is the index of `g_a g_b`.
    table: Vec<Vec<usize>>,
}

impl DDGroupRep {
    /// Builds the multiplication table from the unitaries (products compared up to phase).
    pub fn new(
        labels: Vec<String>,
        unitaries: Vec<DenseOperator>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let d = unitaries.len();
        if d == 0 || labels.len() != d {
            return Err(Error::InvalidArgument(
                "one label per group element required",
            ));
        }
        if generators.iter().any(|&g| g >= d) {
            return Err(Error::InvalidArgument("generator index out of range"));
        }
        if phase_fidelity(
            &unitaries[0],
            &DenseOperator::identity(unitaries[0].n_qubits(), 0),
        ) < 1.0 - 1e-10
        {
            return Err(Error::InvalidArgument(
                "element 0 must represent the identity",
            ));
        }
        let mut table = alloc::vec![alloc::vec![0; d]; d];
        for a in 0..d {
            for b in 0..d {
                let prod = &unitaries[a] * &unitaries[b];
                table[a][b] = (0..d)
                    .find(|&k| phase_fidelity(&unitaries[k], &prod) > 1.0 - 1e-10)
                    .ok_or(Error::InvalidArgument(
                        "representation is not closed under products",
                    ))?;
            }
        }
        let rep = Self {
            labels,
            unitaries,
            generators,
            table,
        };
        if rep.reachable_from_identity().iter().any(|r| !r) {
            return Err(Error::InvalidArgument(
                "generators do not generate the group",
            ));
        }
        Ok(rep)
    }

    fn reachable_from_identity(&self) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.order()];
        let mut stack = alloc::vec![0];
        seen[0] = true;
        while let Some(g) = stack.pop() {
            for &h in &self.generators {
                let next = self.table[g][h];
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen
    }

    pub fn order(&self) -> usize {
        self.unitaries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unitaries(&self) -> &[DenseOperator] {
        &self.unitaries
    }

    /// Element indices of the generators, in their fixed order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn n_system(&self) -> usize {
        self.unitaries[0].n_qubits()
    }
}

/// `{I, X, Y, Z}^(all)` on `n_system` qubits with generators `(X^(all), Y^(all))`.
pub fn dd_group_z2z2(n_system: usize) -> Result<DDGroupRep> {
    if n_system == 0 {
        return Err(Error::InvalidArgument(
            "the group needs at least one system qubit",
        ));
    }
    let mut labels = Vec::new();
    let mut unitaries = Vec::new();
    for p in Pauli::ALL {
        labels.push(String::from(p.symbol()));
        unitaries.push(PauliString::uniform(n_system, p).to_operator(0));
    }
    DDGroupRep::new(labels, unitaries, alloc::vec![1, 2])
}

/// `|| (sum_g U_g^dag E U_g)_modB ||` for a Hermitian joint-space `E`.
pub fn decoupling_residual(rep: &DDGroupRep, e: &DenseOperator) -> Result<f64> {
    if e.n_system() != rep.n_system() {
        return Err(Error::DimensionMismatch {
            expected: rep.n_system(),
            found: e.n_system(),
        });
    }
    let mut total = DenseOperator::zeros(e.n_system(), e.n_bath());
    for u in rep.unitaries() {
        total += &e.conjugate_by_system(u);
    }
    spectral_norm(&mod_bath(&total).hermitian_part())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Position in the representation's generator list.
    Generator(usize),
    /// Identity-implementing arm attached as a self-loop.
    IdentityArm,
    /// Gate-implementing arm leading to the target vertex.
    GateArm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// Directed labelled multigraph. Vertices `0..group_order` are group elements;
/// vertex `group_order`, when present, is the target gate.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyGraph {
    group_order: usize,
    has_target: bool,
    edges: Vec<Edge>,
}

impl CayleyGraph {
    pub fn from_edges(n_vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        if edges
            .iter()
            .any(|e| e.from >= n_vertices || e.to >= n_vertices)
        {
            return Err(Error::InvalidArgument("edge endpoint out of range"));
        }
        Ok(Self {
            group_order: n_vertices,
            has_target: false,
            edges,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.group_order + usize::from(self.has_target)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn target(&self) -> Option<usize> {
        self.has_target.then_some(self.group_order)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.n_vertices()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.from].push(k);
        }
        adj
    }

    /// Hierholzer's algorithm from `start`. Out-edges are consumed in
    /// insertion order, which makes the result deterministic.
    fn hierholzer(&self, start: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut next = alloc::vec![0; self.n_vertices()];
        let mut stack: Vec<(usize, Option<usize>)> = alloc::vec![(start, None)];
        let mut walk = Vec::with_capacity(self.edges.len());
        while let Some(&(v, _)) = stack.last() {
            if next[v] < adj[v].len() {
                let e = adj[v][next[v]];
                next[v] += 1;
                stack.push((self.edges[e].to, Some(e)));
            } else if let Some((_, Some(e))) = stack.pop() {
                walk.push(e);
            }
        }
        walk.reverse();
        walk
    }
}

/// Cayley graph with an edge `g -> g h` labelled `h` for every element and generator.
pub fn cayley_graph(rep: &DDGroupRep) -> CayleyGraph {
    let mut edges = Vec::new();
    for g in 0..rep.order() {
        for (k, &h) in rep.generators().iter().enumerate() {
            edges.push(Edge {
                from: g,
                to: rep.multiply(g, h),
                label: EdgeLabel::Generator(k),
            });
        }
    }
    CayleyGraph {
        group_order: rep.order(),
        has_target: false,
        edges,
    }
}

/// Adds an identity-arm self-loop at every non-identity vertex and a gate arm
/// from the identity to a new target vertex.
pub fn modify_graph_for_gate(graph: &CayleyGraph) -> Result<CayleyGraph> {
    if graph.has_target {
        return Err(Error::InvalidArgument("graph is already modified"));
    }
    let mut out = graph.clone();
    for v in 1..graph.group_order {
        out.edges.push(Edge {
            from: v,
            to: v,
            label: EdgeLabel::IdentityArm,
        });
    }
    out.edges.push(Edge {
        from: 0,
        to: graph.group_order,
        label: EdgeLabel::GateArm,
    });
    out.has_target = true;
    Ok(out)
}

/// Ordered edge walk through a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerWalk {
    /// Indices into [`CayleyGraph::edges`].
    pub edges: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

impl EulerWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether the walk uses every edge of `graph` exactly once, head to tail.
    pub fn is_valid_for(&self, graph: &CayleyGraph) -> bool {
        if self.edges.len() != graph.edges.len() {
            return false;
        }
        let mut used = alloc::vec![false; graph.edges.len()];
        let mut at = self.start;
        for &k in &self.edges {
            if k >= used.len() || used[k] || graph.edges[k].from != at {
                return false;
            }
            used[k] = true;
            at = graph.edges[k].to;
        }
        at == self.end
    }

    pub fn labels<'a>(&'a self, graph: &'a CayleyGraph) -> impl Iterator<Item = EdgeLabel> + 'a {
        self.edges.iter().map(move |&k| graph.edges[k].label)
    }
}

/// Closed walk from `start` through every edge once.
pub fn eulerian_cycle(graph: &CayleyGraph, start: usize) -> Result<EulerWalk> {
    if start >= graph.n_vertices() {
        return Err(Error::NoEulerianCycle("start vertex out of range"));
    }
    if (0..graph.n_vertices()).any(|v| graph.in_degree(v) != graph.out_degree(v)) {
        return Err(Error::NoEulerianCycle("unbalanced vertex"));
    }
    let edges = graph.hierholzer(start);
    if edges.len() != graph.edges.len() {
        return Err(Error::NoEulerianCycle(
            "edges unreachable from the start vertex",
        ));
    }
    Ok(EulerWalk {
        edges,
        start,
        end: start,
    })
}

/// Open walk from the unique surplus-out vertex to the unique surplus-in vertex.
/// Falls back to a cycle from vertex 0 when every vertex is balanced.
pub fn eulerian_path(graph: &CayleyGraph) -> Result<EulerWalk> {
    let mut start = None;
    let mut end = None;
    for v in 0..graph.n_vertices() {
        let (out, inn) = (graph.out_degree(v), graph.in_degree(v));
        if out == inn + 1 && start.is_none() {
            start = Some(v);
        } else if inn == out + 1 && end.is_none() {
            end = Some(v);
        } else if inn != out {
            return Err(Error::NoEulerianPath("vertex degrees admit no path"));
        }
    }
    let (start, end) = match (start, end) {
        (Some(s), Some(e)) => (s, e),
        (None, None) => {
            return eulerian_cycle(graph, 0)
                .map_err(|_| Error::NoEulerianPath("graph is not connected"))
        }
        _ => return Err(Error::NoEulerianPath("vertex degrees admit no path")),
    };
    let edges = graph.hierholzer(start);
    if edges.len() != graph.edges.len() {
        return Err(Error::NoEulerianPath(
            "edges unreachable from the start vertex",
        ));
    }
    Ok(EulerWalk { edges, start, end })
}
