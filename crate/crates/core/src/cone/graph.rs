//! Structure constants from chordal, A4-free graphs (quaternionic entries, n_kj = 4).

use crate::cone::structure::{check_completion_condition, from_dims, ConeStructure};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Adjacency-list input: `{ "vertices": 3, "edges": [[0, 1], [0, 2]] }`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphInput {
    pub fn adjacency(&self) -> Result<Vec<Vec<u8>>> {
        let n = self.vertices;
        let mut adj = vec![vec![0u8; n]; n];
        for &[a, b] in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Input(format!("bad edge [{a}, {b}] for {n} vertices")));
            }
            adj[a][b] = 1;
            adj[b][a] = 1;
        }
        Ok(adj)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStructure {
    pub structure: ConeStructure,
    /// `order[i]` is the input vertex assigned to index i + 1.
    pub order: Vec<usize>,
    pub m: Option<u8>,
}

/// Maximum-cardinality search, started at the lowest-numbered vertex of maximum degree.
/// Returns vertices in visit order.
pub fn maximum_cardinality_search(adj: &[Vec<u8>]) -> Vec<usize> {
    let n = adj.len();
    let degree = |v: usize| adj[v].iter().filter(|&&e| e == 1).count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let pick = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| {
                let ka = if step == 0 { degree(a) } else { weight[a] };
                let kb = if step == 0 { degree(b) } else { weight[b] };
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .expect("unvisited vertex remains");
        visited[pick] = true;
        order.push(pick);
        for v in 0..n {
            if adj[pick][v] == 1 && !visited[v] {
                weight[v] += 1;
            }
        }
    }
    order
}

/// True when every vertex's previously visited neighbours form a clique, i.e. the
/// reversed visit order is a perfect elimination ordering.
pub fn is_perfect_visit_order(adj: &[Vec<u8>], order: &[usize]) -> bool {
    for (i, &v) in order.iter().enumerate() {
        let earlier: Vec<usize> = order[..i].iter().copied().filter(|&u| adj[v][u] == 1).collect();
        for (a, &x) in earlier.iter().enumerate() {
            for &y in &earlier[a + 1..] {
                if adj[x][y] == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Looks for an induced path on four vertices by brute force over 4-subsets.
pub fn find_induced_p4(adj: &[Vec<u8>]) -> Option<[usize; 4]> {
    let n = adj.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let vs = [a, b, c, d];
                    let mut deg = [0usize; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if adj[vs[i]][vs[j]] == 1 {
                                deg[i] += 1;
                                deg[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    let mut sorted = deg;
                    sorted.sort_unstable();
                    // the only 3-edge graph on 4 vertices with degrees (1,1,2,2) is P4
                    if edges == 3 && sorted == [1, 1, 2, 2] {
                        return Some(vs);
                    }
                }
            }
        }
    }
    None
}

pub fn build_structure_from_graph(adj: &[Vec<u8>]) -> Result<GraphStructure> {
    let n = adj.len();
    if n == 0 {
        return Err(Error::Input("graph has no vertices".into()));
    }
    for i in 0..n {
        if adj[i].len() != n || adj[i][i] != 0 {
            return Err(Error::Input("adjacency must be square with zero diagonal".into()));
        }
        for j in 0..n {
            if adj[i][j] != adj[j][i] || adj[i][j] > 1 {
                return Err(Error::Input("adjacency must be a symmetric 0/1 matrix".into()));
            }
        }
    }
    let order = maximum_cardinality_search(adj);
    if !is_perfect_visit_order(adj, &order) {
        return Err(Error::NotChordal);
    }
    if find_induced_p4(adj).is_some() {
        return Err(Error::NotA4Free);
    }
    let mut dims = vec![vec![0u32; n]; n];
    for k in 0..n {
        for j in 0..k {
            if adj[order[k]][order[j]] == 1 {
                dims[k][j] = 4;
            }
        }
    }
    let structure = from_dims(dims);
    let m = check_completion_condition(&structure);
    Ok(GraphStructure { structure, order, m })
}
