use std::collections::HashSet;

use serde::Serialize;

use super::{ConceptId, Dim, DISJOINT};
use crate::error::{MatrixError, ValidationError};

/// Symmetric matrix of shared-face dimensions between hyperedges.
///
/// Off the diagonal, entry `(h, k)` is `|EA_h ∩ EA_k| - 1` (`-1` when the
/// two are disjoint); on the diagonal it is the dimension of `EA_h` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionMatrix {
    ids: Vec<String>,
    dims: Vec<Vec<Dim>>,
    #[serde(rename = "max_face_dim")]
    max_face: Dim,
}

impl IntersectionMatrix {
    pub fn new(ids: Vec<String>, dims: Vec<Vec<Dim>>) -> Result<Self, MatrixError> {
        let mut seen = HashSet::with_capacity(ids.len());
        let ids = ids
            .into_iter()
            .map(|id| {
                let concept = ConceptId::new("hyperedge", &id, None)?;
                if !seen.insert(concept.id().to_string()) {
                    return Err(ValidationError::DuplicateId {
                        role: "hyperedge",
                        id: concept.id().to_string(),
                    });
                }
                Ok(concept.id().to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;

        let n = ids.len();
        if dims.len() != n {
            return Err(MatrixError::RowCount {
                rows: dims.len(),
                ids: n,
            });
        }
        for (row, values) in dims.iter().enumerate() {
            if values.len() != n {
                return Err(MatrixError::RowLength {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            for (col, &value) in values.iter().enumerate() {
                if value < DISJOINT {
                    return Err(MatrixError::BelowSentinel { row, col, value });
                }
            }
            if values[row] < 0 {
                return Err(MatrixError::EmptyHyperedge {
                    id: ids[row].clone(),
                    value: values[row],
                });
            }
        }
        let mut max_face = DISJOINT;
        for row in 0..n {
            for col in row + 1..n {
                let (upper, lower) = (dims[row][col], dims[col][row]);
                if upper != lower {
                    return Err(MatrixError::Asymmetric {
                        row,
                        col,
                        upper,
                        lower,
                    });
                }
                let bound = dims[row][row].min(dims[col][col]);
                if upper > bound {
                    return Err(MatrixError::FaceExceedsHyperedge {
                        row,
                        col,
                        value: upper,
                        bound,
                    });
                }
                max_face = max_face.max(upper);
            }
        }
        Ok(IntersectionMatrix {
            ids,
            dims,
            max_face,
        })
    }

    /// Builds the matrix from consequence sets, already sorted ascending.
    pub(crate) fn from_sorted_sets(ids: Vec<String>, sets: &[&[usize]]) -> Self {
        let n = sets.len();
        let mut dims = vec![vec![0; n]; n];
        let mut max_face = DISJOINT;
        let bits: Vec<Vec<u64>> = sets.iter().map(|s| to_bits(s)).collect();
        for h in 0..n {
            dims[h][h] = sets[h].len() as Dim - 1;
            for k in h + 1..n {
                let face = shared_bits(&bits[h], &bits[k]) as Dim - 1;
                dims[h][k] = face;
                dims[k][h] = face;
                max_face = max_face.max(face);
            }
        }
        IntersectionMatrix {
            ids,
            dims,
            max_face,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn rows(&self) -> &[Vec<Dim>] {
        &self.dims
    }

    /// Dimension of hyperedge `h`.
    pub fn dim(&self, h: usize) -> Dim {
        self.dims[h][h]
    }

    /// Dimension of the face shared by `h` and `k`.
    pub fn face(&self, h: usize, k: usize) -> Dim {
        self.dims[h][k]
    }

    /// P: the largest off-diagonal entry, `-1` when every pair is disjoint.
    pub fn max_face(&self) -> Dim {
        self.max_face
    }

    /// Matrix form of the one-to-one test: singleton hyperedges, pairwise disjoint.
    pub fn is_one_to_one(&self) -> bool {
        (0..self.len()).all(|h| self.dim(h) == 0) && self.max_face == DISJOINT
    }

    /// Indices of hyperedges of dimension at least `q`.
    pub fn eligible(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&h| self.dim(h) >= q as Dim).collect()
    }
}

fn to_bits(set: &[usize]) -> Vec<u64> {
    let mut words = vec![0u64; set.last().map_or(0, |&c| c / 64 + 1)];
    for &c in set {
        words[c / 64] |= 1 << (c % 64);
    }
    words
}

fn shared_bits(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}
