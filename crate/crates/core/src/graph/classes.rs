use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};

/// Vertices grouped by `floor(log2 deg)`; isolated vertices go to `zero`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClassPartition {
    pub classes: Vec<VertexSet>,
    pub zero: VertexSet,
}

impl DegreeClassPartition {
    /// Lower degree threshold of class `i`.
    pub fn threshold(i: usize) -> u64 {
        1u64 << i
    }

    /// Class of a vertex of degree `deg`, `None` when isolated.
    pub fn class_of_degree(deg: u32) -> Option<usize> {
        (deg > 0).then(|| 31 - deg.leading_zeros() as usize)
    }

    /// Per-vertex class label, `u32::MAX` for isolated vertices.
    pub fn labels(g: &Graph) -> Vec<u32> {
        g.degrees()
            .iter()
            .map(|&d| Self::class_of_degree(d).map_or(u32::MAX, |c| c as u32))
            .collect()
    }
}

pub fn degree_classes(g: &Graph) -> DegreeClassPartition {
    let top = DegreeClassPartition::class_of_degree(g.max_degree()).map_or(0, |c| c + 1);
    let mut classes = vec![Vec::new(); top];
    let mut zero = Vec::new();
    for v in 0..g.n() as u32 {
        match DegreeClassPartition::class_of_degree(g.degree(v)) {
            Some(c) => classes[c].push(v),
            None => zero.push(v),
        }
    }
    DegreeClassPartition {
        classes: classes
            .into_iter()
            .map(|m| VertexSet::new(g.n(), m).expect("ascending ids"))
            .collect(),
        zero: VertexSet::new(g.n(), zero).expect("ascending ids"),
    }
}
