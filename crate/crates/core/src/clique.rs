//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use crate::error::{Error, Result};

/// Undirected graph with a dense adjacency bit matrix.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Builds the graph row by row from a symmetric predicate.
    pub fn from_predicate(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        use rayon::prelude::*;
        let mut g = Graph::new(n);
        let words = g.words;
        g.adj.par_chunks_mut(words).enumerate().for_each(|(i, row)| {
            for j in 0..n {
                if i != j && edge(i, j) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        });
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i * self.words + j / 64] |= 1 << (j % 64);
            self.adj[j * self.words + i / 64] |= 1 << (i % 64);
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(a, &i)| vs[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    /// Vertices of one maximum clique, ascending.
    pub clique: Vec<usize>,
    pub nodes: u64,
}

/// All maximum cliques, or `None` when there are more than the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllMaximum {
    pub cliques: Option<Vec<Vec<usize>>>,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a Graph,
    /// Search position to original vertex.
    order: Vec<usize>,
    /// Adjacency rows in search positions.
    adj: Vec<Vec<u64>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        // high degree first keeps the colorings tight near the root
        let mut order: Vec<usize> = (0..g.n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let words = g.words;
        let adj = order
            .iter()
            .map(|&v| {
                let mut row = vec![0u64; words];
                for (p, &u) in order.iter().enumerate() {
                    if g.has_edge(v, u) {
                        row[p / 64] |= 1 << (p % 64);
                    }
                }
                row
            })
            .collect();
        Search {
            g,
            order,
            adj,
            nodes: 0,
        }
    }

    /// Greedy coloring of `p`: vertices in color order with their colors.
    fn color(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.to_vec();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first(&q) {
                out.push((v, color));
                uncolored[v / 64] &= !(1 << (v % 64));
                q[v / 64] &= !(1 << (v % 64));
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
            }
        }
        out
    }

    fn expand_max(&mut self, c: &mut Vec<usize>, mut p: Vec<u64>, best: &mut Vec<usize>) {
        self.nodes += 1;
        let colored = self.color(&p);
        for &(v, col) in colored.iter().rev() {
            if c.len() + col <= best.len() {
                return;
            }
            c.push(v);
            let np: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if np.iter().all(|&w| w == 0) {
                if c.len() > best.len() {
                    best.clone_from(c);
                }
            } else {
                self.expand_max(c, np, best);
            }
            c.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Collects cliques of size `target`; returns false once `limit` is exceeded.
    fn expand_all(
        &mut self,
        c: &mut Vec<usize>,
        mut p: Vec<u64>,
        target: usize,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        self.nodes += 1;
        if c.len() == target {
            out.push(c.clone());
            return out.len() <= limit;
        }
        let colored = self.color(&p);
        for &(v, col) in colored.iter().rev() {
            if c.len() + col < target {
                return true;
            }
            c.push(v);
            let np: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            let ok = self.expand_all(c, np, target, limit, out);
            c.pop();
            if !ok {
                return false;
            }
            p[v / 64] &= !(1 << (v % 64));
        }
        true
    }

    fn full(&self) -> Vec<u64> {
        let mut p = vec![0u64; self.g.words];
        for v in 0..self.g.n {
            p[v / 64] |= 1 << (v % 64);
        }
        p
    }

    fn original(&self, c: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = c.iter().map(|&i| self.order[i]).collect();
        v.sort_unstable();
        v
    }
}

fn first(p: &[u64]) -> Option<usize> {
    p.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

pub fn max_clique(g: &Graph, vertex_limit: usize) -> Result<CliqueResult> {
    if g.n > vertex_limit {
        return Err(Error::limit("clique-vertices", vertex_limit as u64, g.n));
    }
    if g.n == 0 {
        return Ok(CliqueResult {
            clique: Vec::new(),
            nodes: 0,
        });
    }
    let mut s = Search::new(g);
    let mut best = Vec::new();
    let p = s.full();
    s.expand_max(&mut Vec::new(), p, &mut best);
    Ok(CliqueResult {
        clique: s.original(&best),
        nodes: s.nodes,
    })
}

/// Every clique of size `size`, sorted, if there are at most `limit`.
pub fn all_cliques_of_size(g: &Graph, size: usize, limit: usize, vertex_limit: usize) -> Result<AllMaximum> {
    if g.n > vertex_limit {
        return Err(Error::limit("clique-vertices", vertex_limit as u64, g.n));
    }
    let mut s = Search::new(g);
    let mut out = Vec::new();
    let p = s.full();
    let complete = s.expand_all(&mut Vec::new(), p, size, limit, &mut out);
    let cliques = complete.then(|| {
        let mut v: Vec<Vec<usize>> = out.iter().map(|c| s.original(c)).collect();
        v.sort();
        v
    });
    Ok(AllMaximum {
        cliques,
        nodes: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|b| m >> b & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_graphs() {
        let mut g = Graph::new(5);
        for (i, j) in [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)] {
            g.add_edge(i, j);
        }
        let r = max_clique(&g, 100).unwrap();
        assert_eq!(r.clique, vec![0, 1, 2]);
        let all = all_cliques_of_size(&g, 2, 100, 100).unwrap();
        assert_eq!(all.cliques.unwrap().len(), 5);
        assert_eq!(max_clique(&Graph::new(4), 100).unwrap().clique.len(), 1);
        assert!(max_clique(&Graph::new(4), 3).is_err());
        let complete = Graph::from_predicate(70, |_, _| true);
        assert_eq!(max_clique(&complete, 100).unwrap().clique.len(), 70);
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..12, edges in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let mut g = Graph::new(n);
            for (i, j) in edges {
                if i < n && j < n {
                    g.add_edge(i, j);
                }
            }
            let r = max_clique(&g, 100).unwrap();
            prop_assert!(g.is_clique(&r.clique));
            let w = brute(&g);
            prop_assert_eq!(r.clique.len(), w);
            let all = all_cliques_of_size(&g, w, 10_000, 100).unwrap().cliques.unwrap();
            let count = (0u32..1 << n)
                .filter(|&m| m.count_ones() as usize == w
                    && g.is_clique(&(0..n).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>()))
                .count();
            prop_assert_eq!(all.len(), count);
        }
    }
}
