//! Partition of morphisms into equivalence classes.

use serde::Serialize;

use crate::kernel::{Category, TwoCategory};

use super::EquivData;

/// Blocks of a partition, each sorted, blocks ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition<M> {
    pub blocks: Vec<Vec<M>>,
}

impl<M: Copy + Ord> Partition<M> {
    pub fn from_blocks(mut blocks: Vec<Vec<M>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        Partition { blocks }
    }

    pub fn block_of(&self, m: M) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&m).is_ok())
    }

    pub fn map<N: Copy + Ord>(&self, f: impl Fn(M) -> N) -> Partition<N> {
        Partition::from_blocks(
            self.blocks.iter().map(|b| b.iter().map(|&m| f(m)).collect()).collect(),
        )
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

impl<C: Category, D: TwoCategory> EquivData<C, D> {
    /// Classes of all morphisms of `C`, identities included.
    pub fn equivalence_classes(&self) -> Partition<C::Mor> {
        self.equivalence_classes_of(&self.c().morphisms())
    }

    /// Classes of the given morphisms.
    ///
    /// Each morphism is searched only against one representative per block
    /// found so far; this agrees with all-pairs search because the relation is
    /// an equivalence.
    pub fn equivalence_classes_of(&self, morphisms: &[C::Mor]) -> Partition<C::Mor> {
        let mut members: Vec<C::Mor> = morphisms.to_vec();
        members.sort();
        members.dedup();
        let mut sets = DisjointSets::new(members.len());
        let mut representatives: Vec<usize> = Vec::new();
        for i in 0..members.len() {
            let found = representatives
                .iter()
                .copied()
                .find(|&r| self.are_equivalent(members[r], members[i]).is_some());
            match found {
                Some(r) => sets.union(r, i),
                None => representatives.push(i),
            }
        }
        let mut blocks: Vec<Vec<C::Mor>> = vec![Vec::new(); members.len()];
        for (i, &m) in members.iter().enumerate() {
            let root = sets.find(i);
            blocks[root].push(m);
        }
        Partition::from_blocks(blocks)
    }
}
