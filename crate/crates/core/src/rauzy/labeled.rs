use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use super::graph::{drop_first, drop_last, follower, RauzyGraph};
use super::RauzyError;

/// Crotch label: `L` is encoded as 0, `R` as 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    L,
    R,
}

impl Label {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Label::R
        } else {
            Label::L
        }
    }

    pub fn bit(self) -> bool {
        self == Label::R
    }

    pub fn flip_if(self, flip: bool) -> Self {
        Label::from_bit(self.bit() ^ flip)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::L => "l",
            Label::R => "r",
        })
    }
}

/// A Rauzy graph with crotch labels and minus marks.
///
/// The in-label of an arc belongs to its head's in-crotch, the out-label to
/// its tail's out-crotch. Labels are present exactly on crotch arcs (sides of
/// degree two) and differ within a crotch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledRauzyGraph {
    base: RauzyGraph,
    in_labels: Vec<Option<Label>>,
    out_labels: Vec<Option<Label>>,
    marks: Vec<bool>,
}

impl LabeledRauzyGraph {
    pub fn new(
        base: RauzyGraph,
        in_labels: &BTreeMap<String, Label>,
        out_labels: &BTreeMap<String, Label>,
        marks: &BTreeSet<String>,
    ) -> Result<Self, RauzyError> {
        let lookup = |m: &BTreeMap<String, Label>| -> Result<Vec<Option<Label>>, RauzyError> {
            for a in m.keys() {
                if base.arc_index(a).is_none() {
                    return Err(RauzyError::InvalidLabeling(format!("{a} is not an arc")));
                }
            }
            Ok(base.arcs().iter().map(|a| m.get(a).copied()).collect())
        };
        for v in marks {
            if base.vertex_index(v).is_none() {
                return Err(RauzyError::InvalidLabeling(format!("{v} is not a vertex")));
            }
        }
        let marks = base.vertices().iter().map(|v| marks.contains(v)).collect();
        let in_labels = lookup(in_labels)?;
        let out_labels = lookup(out_labels)?;
        Self::from_parts(base, in_labels, out_labels, marks)
    }

    pub(crate) fn from_parts(
        base: RauzyGraph,
        in_labels: Vec<Option<Label>>,
        out_labels: Vec<Option<Label>>,
        marks: Vec<bool>,
    ) -> Result<Self, RauzyError> {
        let g = LabeledRauzyGraph {
            base,
            in_labels,
            out_labels,
            marks,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<(), RauzyError> {
        let g = &self.base;
        for v in 0..g.vertices().len() {
            for (arcs, labels, side) in [
                (g.in_arcs(v), &self.in_labels, "in"),
                (g.out_arcs(v), &self.out_labels, "out"),
            ] {
                let name = &g.vertices()[v];
                match arcs {
                    [a, b] => match (labels[*a], labels[*b]) {
                        (Some(x), Some(y)) if x != y => {}
                        (Some(_), Some(_)) => {
                            return Err(RauzyError::LabelConflict(format!(
                                "{side}-crotch at {name} has equal labels"
                            )))
                        }
                        _ => {
                            return Err(RauzyError::InvalidLabeling(format!(
                                "{side}-crotch at {name} is unlabeled"
                            )))
                        }
                    },
                    _ if arcs.len() > 2 => {
                        return Err(RauzyError::InvalidLabeling(format!(
                            "{name} has {side}-degree {}",
                            arcs.len()
                        )))
                    }
                    _ => {
                        if arcs.iter().any(|&a| labels[a].is_some()) {
                            return Err(RauzyError::InvalidLabeling(format!(
                                "{side}-label outside a crotch at {name}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &RauzyGraph {
        &self.base
    }

    pub fn in_label(&self, arc: &str) -> Option<Label> {
        self.base.arc_index(arc).and_then(|a| self.in_labels[a])
    }

    pub fn out_label(&self, arc: &str) -> Option<Label> {
        self.base.arc_index(arc).and_then(|a| self.out_labels[a])
    }

    pub fn is_marked(&self, vertex: &str) -> bool {
        self.base
            .vertex_index(vertex)
            .is_some_and(|v| self.marks[v])
    }

    pub fn in_labels(&self) -> BTreeMap<String, Label> {
        collect(&self.base, &self.in_labels)
    }

    pub fn out_labels(&self) -> BTreeMap<String, Label> {
        collect(&self.base, &self.out_labels)
    }

    pub fn marks(&self) -> BTreeSet<String> {
        self.base
            .vertices()
            .iter()
            .zip(&self.marks)
            .filter(|(_, &m)| m)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Keeps the labels of `sub`'s crotches. `sub` must be a subgraph.
    pub fn restrict(&self, sub: &RauzyGraph) -> Result<LabeledRauzyGraph, RauzyError> {
        let mut in_labels = vec![None; sub.arcs().len()];
        let mut out_labels = vec![None; sub.arcs().len()];
        for (a, w) in sub.arcs().iter().enumerate() {
            let Some(src) = self.base.arc_index(w) else {
                return Err(RauzyError::InvalidLabeling(format!(
                    "{w} is not an arc of the labeled graph"
                )));
            };
            if sub.in_arcs(sub.head(a)).len() == 2 {
                in_labels[a] = self.in_labels[src];
            }
            if sub.out_arcs(sub.tail(a)).len() == 2 {
                out_labels[a] = self.out_labels[src];
            }
        }
        let marks = sub
            .vertices()
            .iter()
            .map(|v| {
                self.base
                    .vertex_index(v)
                    .map(|i| self.marks[i])
                    .ok_or_else(|| {
                        RauzyError::InvalidLabeling(format!(
                            "{v} is not a vertex of the labeled graph"
                        ))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        LabeledRauzyGraph::from_parts(sub.clone(), in_labels, out_labels, marks)
    }

    /// Graphviz description; out-labels are tail labels, in-labels head
    /// labels, marked vertices carry `xlabel="-"`.
    pub fn export_dot(&self) -> String {
        let g = &self.base;
        let mut out = format!("digraph G{} {{\n", g.k());
        for (v, name) in g.vertices().iter().enumerate() {
            if self.marks[v] {
                let _ = writeln!(out, "  \"{name}\" [xlabel=\"-\"];");
            } else {
                let _ = writeln!(out, "  \"{name}\";");
            }
        }
        for a in 0..g.arcs().len() {
            let mut attrs = Vec::new();
            if let Some(l) = self.out_labels[a] {
                attrs.push(format!("taillabel=\"{l}\""));
            }
            if let Some(l) = self.in_labels[a] {
                attrs.push(format!("headlabel=\"{l}\""));
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\"{attrs};",
                g.vertices()[g.tail(a)],
                g.vertices()[g.head(a)]
            );
        }
        out.push_str("}\n");
        out
    }
}

fn collect(g: &RauzyGraph, labels: &[Option<Label>]) -> BTreeMap<String, Label> {
    g.arcs()
        .iter()
        .zip(labels)
        .filter_map(|(a, l)| l.map(|l| (a.clone(), l)))
        .collect()
}

/// Labels the follower of `lg`:
/// the arc `xvc` inherits the in-label of `xv`;
/// it inherits the out-label of `vc`, reversed when `v` is marked;
/// the follower vertex `vc` inherits the mark of `v`.
pub fn label_follower(lg: &LabeledRauzyGraph) -> Result<LabeledRauzyGraph, RauzyError> {
    let g = &lg.base;
    let fol = follower(g);
    let mut in_labels = vec![None; fol.arcs().len()];
    let mut out_labels = vec![None; fol.arcs().len()];
    for (a, w) in fol.arcs().iter().enumerate() {
        let xv = g
            .arc_index(drop_last(w))
            .expect("follower arc starts with an arc");
        let vc = g
            .arc_index(drop_first(w))
            .expect("follower arc ends with an arc");
        let v = g.head(xv);
        if fol.in_arcs(fol.head(a)).len() == 2 {
            in_labels[a] = lg.in_labels[xv];
        }
        if fol.out_arcs(fol.tail(a)).len() == 2 {
            out_labels[a] = lg.out_labels[vc].map(|l| l.flip_if(lg.marks[v]));
        }
    }
    let marks = (0..g.arcs().len()).map(|a| lg.marks[g.tail(a)]).collect();
    LabeledRauzyGraph::from_parts(fol, in_labels, out_labels, marks)
}
