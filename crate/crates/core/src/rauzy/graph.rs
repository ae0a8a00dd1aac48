use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use super::RauzyError;
use crate::words::{FactorId, FactorSet};

pub(crate) fn drop_last(s: &str) -> &str {
    s.char_indices().last().map_or("", |(i, _)| &s[..i])
}

pub(crate) fn drop_first(s: &str) -> &str {
    s.chars().next().map_or("", |c| &s[c.len_utf8()..])
}

pub(crate) fn last_char(s: &str) -> char {
    s.chars().last().expect("nonempty word")
}

/// Rauzy graph of order `k`: vertices are words of length `k`, arcs are
/// words of length `k + 1` from their `k`-prefix to their `k`-suffix.
/// Vertices and arcs are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyGraph {
    k: usize,
    vertices: Vec<String>,
    arcs: Vec<String>,
    tail: Vec<usize>,
    head: Vec<usize>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl RauzyGraph {
    pub fn new<V, A>(k: usize, vertices: V, arcs: A) -> Result<Self, RauzyError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<String>,
    {
        let vertices: Vec<String> = vertices
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let arcs: Vec<String> = arcs
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for v in &vertices {
            if v.chars().count() != k {
                return Err(RauzyError::BadLength(v.clone()));
            }
        }
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut tail = Vec::with_capacity(arcs.len());
        let mut head = Vec::with_capacity(arcs.len());
        let mut out_arcs = vec![Vec::new(); vertices.len()];
        let mut in_arcs = vec![Vec::new(); vertices.len()];
        for (a, w) in arcs.iter().enumerate() {
            if w.chars().count() != k + 1 {
                return Err(RauzyError::BadLength(w.clone()));
            }
            let t = *index
                .get(drop_last(w))
                .ok_or_else(|| RauzyError::DanglingArc(w.clone()))?;
            let h = *index
                .get(drop_first(w))
                .ok_or_else(|| RauzyError::DanglingArc(w.clone()))?;
            tail.push(t);
            head.push(h);
            out_arcs[t].push(a);
            in_arcs[h].push(a);
        }
        Ok(RauzyGraph {
            k,
            vertices,
            arcs,
            tail,
            head,
            out_arcs,
            in_arcs,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn arc_index(&self, a: &str) -> Option<usize> {
        self.arcs.binary_search_by(|x| x.as_str().cmp(a)).ok()
    }

    /// Arc indices leaving vertex `v`, in arc order.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    /// Arc indices entering vertex `v`, in arc order.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.tail[arc]
    }

    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn is_bispecial(&self, v: usize) -> bool {
        self.in_arcs[v].len() >= 2 && self.out_arcs[v].len() >= 2
    }

    /// Graphviz description with lexicographic node and edge order.
    pub fn export_dot(&self) -> String {
        let mut out = format!("digraph G{} {{\n", self.k);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (a, _) in self.arcs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                self.vertices[self.tail[a]], self.vertices[self.head[a]]
            );
        }
        out.push_str("}\n");
        out
    }
}

/// `G_k` of the indexed word.
pub fn build_k_graph(fs: &FactorSet, k: usize) -> Result<RauzyGraph, RauzyError> {
    if k + 1 > fs.max_len() {
        return Err(RauzyError::KOutOfRange {
            k,
            max_len: fs.max_len(),
        });
    }
    let level = |n: usize| {
        (0..fs.complexity(n).expect("in range") as FactorId).map(move |id| fs.render(n, id))
    };
    RauzyGraph::new(k, level(k), level(k + 1))
}

/// Line graph: vertices are the arcs of `g`, with an arc `A -> B` whenever
/// `head(A) = tail(B)`. Returned as a graph of order `k + 1` whose arcs are
/// the overlaps `A + last(B)`.
pub fn follower(g: &RauzyGraph) -> RauzyGraph {
    let mut arcs = Vec::new();
    for (a, w) in g.arcs.iter().enumerate() {
        for &b in &g.out_arcs[g.head[a]] {
            let mut x = w.clone();
            x.push(last_char(&g.arcs[b]));
            arcs.push(x);
        }
    }
    RauzyGraph::new(g.k + 1, g.arcs.iter().cloned(), arcs)
        .expect("follower arcs join existing arcs")
}

/// Whether `g_k1` embeds in the follower of `g_k` under the identification
/// of its vertices with the arcs of `g_k`.
pub fn is_subgraph_of_follower(g_k: &RauzyGraph, g_k1: &RauzyGraph) -> Result<bool, RauzyError> {
    if g_k1.k != g_k.k + 1 {
        return Err(RauzyError::MismatchedK {
            lower: g_k.k,
            upper: g_k1.k,
        });
    }
    if !g_k1.vertices.iter().all(|v| g_k.arc_index(v).is_some()) {
        return Ok(false);
    }
    let fol = follower(g_k);
    Ok(g_k1.arcs.iter().all(|a| fol.arc_index(a).is_some()))
}

/// Forward and backward reachability from one vertex. Graphs with at most
/// one vertex count as strongly connected.
pub fn strongly_connected(g: &RauzyGraph) -> bool {
    let n = g.vertices.len();
    if n <= 1 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            let arcs = if forward {
                &g.out_arcs[v]
            } else {
                &g.in_arcs[v]
            };
            for &a in arcs {
                let u = if forward { g.head[a] } else { g.tail[a] };
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    };
    reach(true) && reach(false)
}

/// Strong connectivity of `G_k` read directly off the factor index.
pub(crate) fn level_strongly_connected(fs: &FactorSet, k: usize) -> bool {
    let n = fs.complexity(k).expect("in range");
    if n <= 1 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0 as FactorId];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let next: Vec<FactorId> = if forward {
                fs.right_children(k, v)
                    .map(|a| fs.suffix_id(k + 1, a))
                    .collect()
            } else {
                fs.left_children(k, v)
                    .iter()
                    .map(|&a| fs.prefix_id(k + 1, a))
                    .collect()
            };
            for u in next {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    };
    reach(true) && reach(false)
}
