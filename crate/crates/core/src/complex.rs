//! Finite abstract simplicial complexes with totally ordered integer vertex labels.
//!
//! Simplices of each dimension are stored as sorted lists of vertex *indices* (positions in
//! the sorted label list) and ordered lexicographically, which is also the lexicographic
//! order on sorted labels. Every cochain in the crate is a vector over this ordered basis.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::cohomology::Caches;
use crate::{Error, Result};

pub type Label = i64;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    maximal: Vec<Vec<Label>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    // faces[k][s][i] = index of the face of simplex s (dim k) opposite its i-th vertex
    faces: Vec<Vec<Vec<usize>>>,
    pub(crate) caches: Caches,
}

impl SimplicialComplex {
    /// Builds the face closure of the given simplices.
    ///
    /// Rejects simplices with repeated vertices, simplices listed twice and empty input.
    pub fn new<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[Label]>,
    {
        let listed: Vec<(usize, Vec<Label>)> = simplices
            .into_iter()
            .enumerate()
            .map(|(i, s)| (i + 1, s.as_ref().to_vec()))
            .collect();
        Self::from_numbered(listed)
    }

    fn from_numbered(listed: Vec<(usize, Vec<Label>)>) -> Result<Self> {
        let mut seen: HashMap<Vec<Label>, usize> = HashMap::new();
        let mut sets = Vec::with_capacity(listed.len());
        for (line, mut s) in listed {
            if s.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "empty simplex".into(),
                });
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse {
                    line,
                    msg: "duplicate vertex in simplex".into(),
                });
            }
            if let Some(first) = seen.insert(s.clone(), line) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate simplex (first listed at line {first})"),
                });
            }
            sets.push(s);
        }
        if sets.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty complex".into(),
            });
        }

        let labels: Vec<Label> = sets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pos: HashMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let dim = sets.iter().map(Vec::len).max().unwrap() - 1;
        let mut all: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for s in &sets {
            let idx: Vec<usize> = s.iter().map(|l| pos[l]).collect();
            for mask in 1u64..(1u64 << idx.len()) {
                let face: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                all[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            all.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            let level = simplices[k]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            index[k - 1][&f]
                        })
                        .collect()
                })
                .collect();
            faces.push(level);
        }

        let maximal: Vec<Vec<Label>> = {
            let mut m: Vec<Vec<Label>> = sets
                .iter()
                .filter(|s| {
                    !sets
                        .iter()
                        .any(|t| t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()))
                })
                .cloned()
                .collect();
            m.sort();
            m
        };

        Ok(SimplicialComplex {
            caches: Caches::new(dim),
            labels,
            maximal,
            simplices,
            index,
            faces,
        })
    }

    /// Parses the complex text format: a dimension hint line, then one maximal simplex per
    /// line as whitespace-separated integer labels. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut hint_seen = false;
        let mut listed = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim_end_matches('\r').trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if !hint_seen {
                content.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("expected a dimension hint, found {content:?}"),
                })?;
                hint_seen = true;
                continue;
            }
            let simplex = content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Label>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("malformed vertex label {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            listed.push((line, simplex));
        }
        if listed.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty complex".into(),
            });
        }
        Self::from_numbered(listed)
    }

    /// Renders the complex in the text format accepted by [`SimplicialComplex::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.dim());
        for s in &self.maximal {
            let line: Vec<String> = s.iter().map(Label::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Boundary of the `(n+1)`-simplex on labels `1..=n+2`: the standard `n`-sphere.
    pub fn sphere(n: usize) -> Self {
        let verts: Vec<Label> = (1..=(n as Label + 2)).collect();
        let facets = (0..verts.len()).map(|skip| {
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect::<Vec<_>>()
        });
        Self::new(facets).expect("sphere is well formed")
    }

    /// Applies a vertex relabeling. The map must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Result<Self> {
        Self::new(
            self.maximal
                .iter()
                .map(|s| s.iter().map(|&v| f(v)).collect::<Vec<_>>()),
        )
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertices(&self) -> &[Label] {
        &self.labels
    }

    pub fn maximal_simplices(&self) -> &[Vec<Label>] {
        &self.maximal
    }

    pub fn is_pure(&self) -> bool {
        self.maximal.iter().all(|s| s.len() == self.dim() + 1)
    }

    /// Number of `k`-simplices; zero above the dimension.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// The `k`-simplices as sorted vertex-index lists, in basis order.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_labels(&self, k: usize, s: usize) -> Vec<Label> {
        self.simplices[k][s]
            .iter()
            .map(|&v| self.labels[v])
            .collect()
    }

    pub fn index_of(&self, verts: &[usize]) -> Option<usize> {
        if verts.is_empty() {
            return None;
        }
        self.index.get(verts.len() - 1)?.get(verts).copied()
    }

    /// Faces of the `k`-simplex `s`, the `i`-th entry being the face opposite vertex `i`.
    pub fn faces(&self, k: usize, s: usize) -> &[usize] {
        &self.faces[k][s]
    }
}
