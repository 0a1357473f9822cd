//! Abstract simplicial complexes stored by their facets.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::DEFAULT_FACE_BUDGET;

/// A finite abstract simplicial complex on labelled vertices `0..labels.len()`.
///
/// Only the facets are stored; faces are enumerated on demand and cached.
/// Two states without vertices are distinguished: the void complex has no
/// faces at all, while the empty complex has exactly the empty face.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
    faces: OnceLock<Arc<FaceTable>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// All faces of a complex grouped by dimension, each group sorted
/// lexicographically. Index 0 holds the empty face (dimension -1).
#[derive(Debug, Clone, Default)]
pub struct FaceTable {
    by_size: Vec<Vec<Vec<usize>>>,
}

impl FaceTable {
    /// Faces of dimension `dim` (so of `dim + 1` vertices).
    pub fn of_dim(&self, dim: isize) -> &[Vec<usize>] {
        if dim < -1 {
            return &[];
        }
        self.by_size.get((dim + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, dim: isize) -> usize {
        self.of_dim(dim).len()
    }

    /// Number of nonempty faces.
    pub fn total(&self) -> usize {
        self.by_size.iter().skip(1).map(Vec::len).sum()
    }

    /// Every face, by dimension and then lexicographically, starting with the
    /// empty face when the complex is not void.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.by_size.iter().flatten()
    }

    pub fn top_dim(&self) -> Option<isize> {
        if self.by_size.is_empty() {
            None
        } else {
            Some(self.by_size.len() as isize - 2)
        }
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Keeps only inclusion-maximal sets; input sets must be sorted. Output is
/// sorted lexicographically.
pub(crate) fn absorb(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.len() > s.len() && is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn void() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// The complex whose only face is the empty face.
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), vec![Vec::new()])
    }

    pub(crate) fn from_parts(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        SimplicialComplex {
            labels,
            facets,
            faces: OnceLock::new(),
        }
    }

    /// Builds a complex from arbitrary generating faces. Non-maximal faces are
    /// absorbed and every labelled vertex not covered by a face becomes an
    /// isolated vertex.
    pub fn new(labels: Vec<String>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let mut covered = vec![false; n];
        let mut sets = Vec::with_capacity(faces.len() + n);
        for mut f in faces {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("a face lists the same vertex twice"));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::invalid(format!("vertex index {v} out of range")));
            }
            for &v in &f {
                covered[v] = true;
            }
            sets.push(f);
        }
        sets.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
        let mut unique = HashSet::new();
        for l in &labels {
            if !unique.insert(l) {
                return Err(Error::invalid(format!("duplicate vertex label {l:?}")));
            }
        }
        Ok(Self::from_parts(labels, absorb(sets)))
    }

    /// Restricts to the vertices that occur in `facets` and renumbers them,
    /// keeping their relative order.
    pub(crate) fn compacted(labels: &[String], facets: Vec<Vec<usize>>) -> Self {
        let facets = absorb(facets);
        let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let mut map = vec![usize::MAX; labels.len()];
        for (new, &old) in used.iter().enumerate() {
            map[old] = new;
        }
        let facets = facets
            .into_iter()
            .map(|f| f.into_iter().map(|v| map[v]).collect())
            .collect();
        let labels = used.iter().map(|&v| labels[v].clone()).collect();
        Self::from_parts(labels, facets)
    }

    /// `r` isolated vertices labelled `"0".."r-1"`; `r = 0` is the void complex.
    pub fn discrete(r: usize) -> Self {
        Self::from_parts(
            (0..r).map(|i| i.to_string()).collect(),
            (0..r).map(|i| vec![i]).collect(),
        )
    }

    /// The full simplex on the given labels.
    pub fn simplex(labels: Vec<String>) -> Self {
        let facet = (0..labels.len()).collect();
        Self::from_parts(labels, vec![facet])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn face_labels(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the void complex, `Some(-1)` for the empty complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Whether the sorted vertex set `face` is a face.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Face table with the default budget.
    pub fn faces(&self) -> Result<Arc<FaceTable>> {
        self.faces_with_budget(DEFAULT_FACE_BUDGET)
    }

    /// Enumerates all faces, failing once more than `budget` nonempty faces
    /// would be produced. The table is cached after the first success.
    pub fn faces_with_budget(&self, budget: usize) -> Result<Arc<FaceTable>> {
        if let Some(t) = self.faces.get() {
            return if t.total() <= budget {
                Ok(t.clone())
            } else {
                Err(Error::BudgetExceeded { budget })
            };
        }
        let table = Arc::new(self.enumerate_faces(budget)?);
        Ok(self.faces.get_or_init(|| table).clone())
    }

    fn enumerate_faces(&self, budget: usize) -> Result<FaceTable> {
        let Some(dim) = self.dimension() else {
            return Ok(FaceTable::default());
        };
        let max_size = (dim + 1) as usize;
        if max_size >= 63 || (1u128 << max_size) > budget as u128 + 1 {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); max_size + 1];
        sets[0].insert(Vec::new());
        let mut total = 0usize;
        let mut buf = Vec::with_capacity(max_size);
        for f in &self.facets {
            for mask in 1u64..(1u64 << f.len()) {
                buf.clear();
                buf.extend((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]));
                if !sets[buf.len()].contains(&buf) {
                    sets[buf.len()].insert(buf.clone());
                    total += 1;
                }
            }
            if total > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
        let by_size = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Vec<usize>> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ok(FaceTable { by_size })
    }

    /// `lk F = { G : F ∪ G is a face, F ∩ G = ∅ }`. The link of a facet is the
    /// empty complex; the link of the empty face is the complex itself.
    pub fn link(&self, face: &[usize]) -> Result<Self> {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        if face.is_empty() {
            return Ok(self.clone());
        }
        let containing: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(&face, f))
            .map(|f| f.iter().copied().filter(|v| face.binary_search(v).is_err()).collect())
            .collect();
        if containing.is_empty() {
            return Err(Error::invalid(format!(
                "{:?} is not a face",
                face.iter().map(|&v| self.labels.get(v).cloned().unwrap_or_default()).collect::<Vec<_>>()
            )));
        }
        Ok(Self::compacted(&self.labels, containing))
    }

    /// Full subcomplex on the given vertices.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut keep = vec![false; self.labels.len()];
        for &v in vertices {
            keep[v] = true;
        }
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| keep[v]).collect::<Vec<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        Self::compacted(&self.labels, facets)
    }

    /// Join `K * L`: faces are unions of a face of `K` and a face of `L`.
    /// Vertices are relabelled with the prefixes `L:` and `R:`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let pairs = self.facets.len() as u128 * other.facets.len() as u128;
        if pairs > DEFAULT_FACE_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                budget: DEFAULT_FACE_BUDGET,
            });
        }
        let (labels, offset) = prefixed_labels(self, other);
        let mut facets = Vec::with_capacity(pairs as usize);
        for f in &self.facets {
            for g in &other.facets {
                facets.push(f.iter().copied().chain(g.iter().map(|v| v + offset)).collect());
            }
        }
        Ok(Self::from_parts(labels, absorb(facets)))
    }

    /// Join over a subcomplex: faces of `K`, faces of `L`, and `a ⊔ l` for
    /// nonempty faces `a` of `A` and `l` of `L`. `A` is matched to `K` by
    /// vertex labels and must be a subcomplex of `K`.
    pub fn join_over(&self, sub: &Self, other: &Self) -> Result<Self> {
        let mut sub_facets = Vec::with_capacity(sub.facets.len());
        for f in &sub.facets {
            let mut mapped = f
                .iter()
                .map(|&v| {
                    self.vertex(&sub.labels[v]).ok_or_else(|| {
                        Error::invalid(format!("vertex {:?} of the subcomplex is not in K", sub.labels[v]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            mapped.sort_unstable();
            if !self.contains_face(&mapped) {
                return Err(Error::invalid("the subcomplex has a face that is not a face of K"));
            }
            sub_facets.push(mapped);
        }
        let (labels, offset) = prefixed_labels(self, other);
        let other_facets: Vec<Vec<usize>> = other
            .facets
            .iter()
            .map(|g| g.iter().map(|v| v + offset).collect())
            .collect();
        let mut facets: Vec<Vec<usize>> = self.facets.clone();
        facets.extend(other_facets.iter().cloned());
        for a in sub_facets.iter().filter(|a| !a.is_empty()) {
            for l in other_facets.iter().filter(|l| !l.is_empty()) {
                facets.push(a.iter().chain(l).copied().collect());
            }
        }
        Ok(Self::from_parts(labels, absorb(facets)))
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }
}

fn prefixed_labels(left: &SimplicialComplex, right: &SimplicialComplex) -> (Vec<String>, usize) {
    let mut labels: Vec<String> = left.labels.iter().map(|l| format!("L:{l}")).collect();
    labels.extend(right.labels.iter().map(|l| format!("R:{l}")));
    (labels, left.labels.len())
}
