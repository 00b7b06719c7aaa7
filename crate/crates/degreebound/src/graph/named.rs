//! Named graph constructors and the string forms accepted wherever a graph
//! can be read: `K{n}`, `K{r},{t}`, `C{n}`, `P{n}`, `petersen`, and
//! `PG(2,{q})-incidence` for prime `q`.

use super::{Graph, GraphError};

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete graph")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges).expect("complete bipartite graph")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle")
}

/// Path on `n` vertices (so `n - 1` edges).
pub fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((i, i + 5)); // spokes
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
    }
    Graph::from_edges(10, &edges).expect("petersen")
}

/// Point-line incidence graph of the projective plane of prime order `q`:
/// `q^2 + q + 1` points and as many lines, every vertex of degree `q + 1`,
/// girth 6 (hence C4-free). Points and lines are the 1- and 2-dimensional
/// subspaces of GF(q)^3; incidence is orthogonality.
pub fn projective_incidence(q: usize) -> Result<Graph, GraphError> {
    let is_prime = q >= 2 && (2..q).all(|d| q % d != 0);
    if !is_prime {
        return Err(GraphError::UnknownName(format!(
            "PG(2,{q})-incidence (q must be prime)"
        )));
    }
    // Normalized representatives of projective points over GF(q): first
    // nonzero coordinate equals 1.
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let p = [x, y, z];
                let first = p.iter().find(|&&c| c != 0);
                if first == Some(&1) {
                    reps.push(p);
                }
            }
        }
    }
    let m = reps.len();
    debug_assert_eq!(m, q * q + q + 1);
    let mut edges = Vec::new();
    for (pi, p) in reps.iter().enumerate() {
        for (li, l) in reps.iter().enumerate() {
            let dot = (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q;
            if dot == 0 {
                edges.push((pi, m + li));
            }
        }
    }
    Graph::from_edges(2 * m, &edges)
}

/// Parses a named-graph constructor string.
pub fn parse(name: &str) -> Result<Graph, GraphError> {
    let unknown = || GraphError::UnknownName(name.to_string());
    let name = name.trim();
    if name == "petersen" {
        return Ok(petersen());
    }
    if let Some(rest) = name.strip_prefix("PG(2,") {
        if let Some(q) = rest.strip_suffix(")-incidence") {
            let q: usize = q.parse().map_err(|_| unknown())?;
            return projective_incidence(q);
        }
        return Err(unknown());
    }
    if let Some(rest) = name.strip_prefix('K') {
        if let Some((a, b)) = rest.split_once(',') {
            let a: usize = a.parse().map_err(|_| unknown())?;
            let b: usize = b.parse().map_err(|_| unknown())?;
            return Ok(complete_bipartite(a, b));
        }
        let n: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(complete(n));
    }
    if let Some(rest) = name.strip_prefix('C') {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n < 3 {
            return Err(unknown());
        }
        return Ok(cycle(n));
    }
    if let Some(rest) = name.strip_prefix('P') {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(path(n));
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_named_forms() {
        assert_eq!(parse("K5").unwrap(), complete(5));
        assert_eq!(parse("K2,3").unwrap(), complete_bipartite(2, 3));
        assert_eq!(parse("C9").unwrap(), cycle(9));
        assert_eq!(parse("P4").unwrap(), path(4));
        assert_eq!(parse("petersen").unwrap(), petersen());
        assert!(parse("Q3").is_err());
        assert!(parse("C2").is_err());
    }

    #[test]
    fn fano_incidence_graph() {
        let g = parse("PG(2,2)-incidence").unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edge_count(), 21);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(g.girth(), Some(6));
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn projective_incidence_rejects_composite_order() {
        assert!(projective_incidence(4).is_err());
        assert!(projective_incidence(1).is_err());
    }

    #[test]
    fn pg23_incidence_is_c4_free_with_degree_4() {
        let g = projective_incidence(3).unwrap();
        assert_eq!(g.vertex_count(), 26);
        assert!(g.vertices().all(|v| g.degree(v) == 4));
        assert_eq!(g.girth(), Some(6));
    }
}
