use petgraph::unionfind::UnionFind;

use super::{find_witness, Decision};
use crate::coflag::CoflagDatum;
use crate::crossed::PreCrossedDatum;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// One equivalence class: its representative, the number of enumerated
/// candidates it contains and a free-text family label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub datum: PreCrossedDatum,
    pub coflag: Option<CoflagDatum>,
    pub size: usize,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub field: Field,
    pub kind: String,
    pub classes: Vec<ClassEntry>,
    pub candidates: usize,
}

impl ClassificationResult {
    pub fn total(&self) -> usize {
        self.classes.len()
    }

    /// Orders classes by representative and checks the size bookkeeping.
    pub(crate) fn finish(mut self) -> ClassificationResult {
        self.classes.sort_by_key(|a| a.datum.flat_key());
        debug_assert_eq!(self.classes.iter().map(|c| c.size).sum::<usize>(), self.candidates);
        self
    }
}

/// Partitions crossed systems over a common `P` and `V` into cohomology
/// classes using [`find_witness`]. Each candidate is compared against the
/// first member of every class found so far.
pub fn quotient_classes(candidates: &[PreCrossedDatum], field: Field) -> Result<ClassificationResult> {
    let tagged: Vec<(PreCrossedDatum, Option<CoflagDatum>, String)> = candidates
        .iter()
        .map(|d| {
            let tag = if d.v_is_abelian() { "abelian V" } else { "non-abelian V" };
            (d.clone(), None, tag.to_string())
        })
        .collect();
    quotient_with(tagged, field, "crossed systems", find_witness)
}

/// Generic form of [`quotient_classes`] with a caller-supplied decider.
/// The representative of a class is its member with the smallest
/// [`PreCrossedDatum::flat_key`].
pub(crate) fn quotient_with(
    candidates: Vec<(PreCrossedDatum, Option<CoflagDatum>, String)>,
    field: Field,
    kind: &str,
    mut decide: impl FnMut(&PreCrossedDatum, &PreCrossedDatum) -> Result<Decision>,
) -> Result<ClassificationResult> {
    let n = candidates.len();
    let mut uf = UnionFind::<usize>::new(n);
    let mut leaders: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut joined = false;
        for &l in &leaders {
            match decide(&candidates[l].0, &candidates[i].0)? {
                Decision::Equivalent(_) => {
                    uf.union(l, i);
                    joined = true;
                    break;
                }
                Decision::NotEquivalent => {}
                Decision::Undecidable(why) => return Err(Error::Undecidable(why)),
            }
        }
        if !joined {
            leaders.push(i);
        }
    }
    let labels = uf.into_labeling();
    let mut classes = Vec::new();
    for &l in &leaders {
        let members: Vec<usize> = (0..n).filter(|&i| labels[i] == labels[l]).collect();
        let best = *members
            .iter()
            .min_by(|&&a, &&b| candidates[a].0.flat_key().cmp(&candidates[b].0.flat_key()))
            .expect("nonempty class");
        let (datum, coflag, tag) = candidates[best].clone();
        classes.push(ClassEntry {
            datum,
            coflag,
            size: members.len(),
            tag,
        });
    }
    Ok(ClassificationResult {
        field,
        kind: kind.to_string(),
        classes,
        candidates: n,
    }
    .finish())
}
