use super::Diagram;
use crate::error::{Error, Result};

/// Adjacency lists of `(neighbour index, edge id)`; self-loops appear twice.
fn adjacency(d: &Diagram) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); d.vertices().len()];
    for (id, e) in d.edges().iter().enumerate() {
        let a = d.vertex_index(e.u).expect("validated edge");
        let b = d.vertex_index(e.v).expect("validated edge");
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    adj
}

/// Connected components as sorted lists of vertex ids, ordered by their
/// smallest id.
pub fn components(d: &Diagram) -> Vec<Vec<u32>> {
    let adj = adjacency(d);
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(d.vertices()[x].id);
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The empty diagram counts as connected.
pub fn is_connected(d: &Diagram) -> bool {
    components(d).len() <= 1
}

/// Edge ids of every bridge, ascending.
///
/// Low-link DFS that skips only the *edge id* it arrived by, so a parallel
/// copy of that edge still counts as a back edge and parallel edges are
/// never bridges.
pub fn bridges(d: &Diagram) -> Vec<usize> {
    let adj = adjacency(d);
    let n = adj.len();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // frames: (vertex, edge id used to enter, next adjacency slot)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        while let Some(frame) = stack.last_mut() {
            let (x, parent_edge, slot) = *frame;
            if slot < adj[x].len() {
                frame.2 += 1;
                let (y, edge) = adj[x][slot];
                if Some(edge) == parent_edge {
                    continue;
                }
                if order[y] == usize::MAX {
                    order[y] = counter;
                    low[y] = counter;
                    counter += 1;
                    stack.push((y, Some(edge), 0));
                } else {
                    low[x] = low[x].min(order[y]);
                }
            } else {
                stack.pop();
                if let (Some(&(p, _, _)), Some(edge)) = (stack.last(), parent_edge) {
                    low[p] = low[p].min(low[x]);
                    if low[x] > order[p] {
                        out.push(edge);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// True iff no internal line is a bridge. Requires a connected diagram.
pub fn is_one_particle_irreducible(d: &Diagram) -> Result<bool> {
    if !is_connected(d) {
        return Err(Error::Disconnected);
    }
    Ok(bridges(d).is_empty())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Diagram;
    use super::*;

    #[test]
    fn connectivity_examples() {
        let one = Diagram::new(model(1), vertices(1), vec![], vec![]).unwrap();
        assert!(is_connected(&one));
        let two = Diagram::new(model(1), vertices(2), vec![], vec![]).unwrap();
        assert!(!is_connected(&two));
        let joined = Diagram::new(model(1), vertices(2), vec![ul(0, 1, 0)], vec![]).unwrap();
        assert!(is_connected(&joined));
        let empty = Diagram::new(model(1), vec![], vec![], vec![]).unwrap();
        assert!(is_connected(&empty));
    }

    #[test]
    fn one_particle_irreducibility_examples() {
        assert!(is_one_particle_irreducible(&vacuum_bubble()).unwrap());
        let dumbbell = dumbbell();
        assert!(!is_one_particle_irreducible(&dumbbell).unwrap());
        // canonical order (0,0), (0,1), (1,1): the joining line is edge 1
        assert_eq!(bridges(&dumbbell), vec![1]);
        let two = Diagram::new(model(1), vertices(2), vec![], vec![]).unwrap();
        assert_eq!(is_one_particle_irreducible(&two), Err(Error::Disconnected));
    }

    #[test]
    fn path_edges_are_all_bridges() {
        let path = Diagram::new(
            model(1),
            vertices(4),
            vec![ul(0, 1, 0), ul(1, 2, 0), ul(2, 3, 0)],
            vec![],
        )
        .unwrap();
        assert_eq!(bridges(&path), vec![0, 1, 2]);
        let cycle = Diagram::new(
            model(1),
            vertices(3),
            vec![ul(0, 1, 0), ul(1, 2, 0), ul(2, 0, 0)],
            vec![],
        )
        .unwrap();
        assert!(bridges(&cycle).is_empty());
    }
}
