//! Union-find over hyperedge indices.

use crate::model::Partition;

#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            // path halving
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Groups every element by root. Classes come out ordered by smallest
    /// member, members ascending.
    pub fn into_partition(mut self) -> Partition {
        self.partition_of(0..self.parent.len())
    }

    /// Like [`into_partition`](Self::into_partition) but over a subset of elements.
    pub fn partition_of(&mut self, members: impl IntoIterator<Item = usize>) -> Partition {
        let mut slot = vec![usize::MAX; self.parent.len()];
        let mut classes: Partition = Vec::new();
        for x in members {
            let root = self.find(x);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(x);
        }
        classes
    }
}
