//! Irreducibility, weak irreducibility and the weakly irreducible block
//! partition of a nonnegative tensor.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{IndexSet, Tensor};

/// Default cap on the dimension for the exhaustive irreducibility check.
pub const IRREDUCIBLE_CAP: usize = 16;

/// `R(A)`: entry `(i, j)` sums every `A[i, i2, .., im]` whose tail mentions `j`,
/// each tail counted once per distinct `j`.
pub fn representation_matrix(a: &Tensor) -> Result<DMatrix<f64>> {
    a.require_nonnegative()?;
    let n = a.dim();
    let mut r = DMatrix::zeros(n, n);
    let mut idx = vec![0usize; a.order()];
    let mut seen = vec![usize::MAX; n];
    for (flat, &v) in a.entries().iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        a.decode_into(flat, &mut idx);
        for &j in &idx[1..] {
            if seen[j] != flat {
                seen[j] = flat;
                r[(idx[0], j)] += v;
            }
        }
    }
    Ok(r)
}

fn adjacency(a: &Tensor) -> Result<Vec<Vec<usize>>> {
    let r = representation_matrix(a)?;
    let n = a.dim();
    Ok((0..n).map(|i| (0..n).filter(|&j| r[(i, j)] > 0.0).collect()).collect())
}

/// `R(A)` is irreducible, i.e. its digraph is strongly connected.
pub fn is_weakly_irreducible(a: &Tensor) -> Result<bool> {
    let adj = adjacency(a)?;
    Ok(a.dim() == 1 || strongly_connected_components(&adj).len() == 1)
}

/// Exhaustive check over all nonempty proper subsets `alpha`: the tensor is
/// reducible iff some `alpha` has `A[i1, ..] = 0` whenever `i1` is in `alpha`
/// and every tail index lies outside it.
pub fn is_irreducible(a: &Tensor) -> Result<bool> {
    is_irreducible_capped(a, IRREDUCIBLE_CAP)
}

pub fn is_irreducible_capped(a: &Tensor, cap: usize) -> Result<bool> {
    a.require_nonnegative()?;
    let n = a.dim();
    if n > cap || n >= 64 {
        return Err(Error::TooLarge { dim: n, cap });
    }
    if n == 1 {
        return Ok(true);
    }
    // Distinct (head, tail-set) pairs of the nonzero entries.
    let mut pairs: Vec<(usize, u64)> = Vec::new();
    let mut idx = vec![0usize; a.order()];
    for (flat, &v) in a.entries().iter().enumerate() {
        if v != 0.0 {
            a.decode_into(flat, &mut idx);
            let tail = idx[1..].iter().fold(0u64, |m, &j| m | 1 << j);
            pairs.push((idx[0], tail));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let full = (1u64 << n) - 1;
    let reducible = (1..full).any(|alpha| {
        !pairs
            .iter()
            .any(|&(head, tail)| alpha >> head & 1 == 1 && tail & alpha == 0)
    });
    Ok(!reducible)
}

/// Ordered partition of `{0, .., n-1}` into weakly irreducible blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub blocks: Vec<IndexSet>,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Position of the block holding `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(i))
    }
}

/// Strongly connected components of `R(A)`, ordered so that no block's rows
/// reference an earlier block. Ties between valid orders go to the block
/// with the smallest minimum index.
///
/// This is the finest partition with that ordering property. For order 2
/// every block's principal subtensor is weakly irreducible. For higher
/// orders a block can be held together only by entries that also touch a
/// later block, and its principal subtensor may then be weakly reducible
/// again; `spectral_radius` recurses into such blocks.
pub fn weakly_irreducible_partition(a: &Tensor) -> Result<BlockPartition> {
    let adj = adjacency(a)?;
    let n = a.dim();
    let comps = strongly_connected_components(&adj);
    let k = comps.len();
    let mut comp_of = vec![0usize; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    // Edge P -> Q when a row of P references Q: P must precede Q.
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            let (p, q) = (comp_of[u], comp_of[v]);
            if p != q && !succ[p].contains(&q) {
                succ[p].push(q);
                indeg[q] += 1;
            }
        }
    }
    let key = |c: usize| comps[c].iter().copied().min().unwrap_or(0);
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> =
        (0..k).filter(|&c| indeg[c] == 0).map(|c| Reverse((key(c), c))).collect();
    let mut blocks = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = ready.pop() {
        blocks.push(IndexSet::new(comps[c].clone())?);
        for &q in &succ[c] {
            indeg[q] -= 1;
            if indeg[q] == 0 {
                ready.push(Reverse((key(q), q)));
            }
        }
    }
    Ok(BlockPartition { blocks })
}

/// Tarjan's algorithm, iterative. Components come out in reverse topological order.
pub(crate) fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse3(entries: &[([usize; 3], f64)]) -> Tensor {
        let mut t = Tensor::zeros(3, 2);
        for (i, v) in entries {
            t.set(i, *v);
        }
        t
    }

    #[test]
    fn representation_matrix_examples() {
        let r = representation_matrix(&sparse3(&[([0, 1, 1], 5.0)])).unwrap();
        assert_eq!(r, DMatrix::from_row_slice(2, 2, &[0., 5., 0., 0.]));
        let r = representation_matrix(&Tensor::ones(3, 2)).unwrap();
        assert_eq!(r, DMatrix::from_element(2, 2, 3.0));
        assert_eq!(representation_matrix(&Tensor::zeros(3, 2)).unwrap(), DMatrix::zeros(2, 2));
        assert!(representation_matrix(&Tensor::identity(3, 2).scaled(-1.0)).is_err());
    }

    #[test]
    fn weak_irreducibility_examples() {
        assert!(is_weakly_irreducible(&Tensor::ones(4, 3)).unwrap());
        assert!(!is_weakly_irreducible(&sparse3(&[([0, 1, 1], 5.0)])).unwrap());
        let t = sparse3(&[([0, 0, 1], 1.0), ([1, 0, 0], 1.0)]);
        assert!(is_weakly_irreducible(&t).unwrap());
        assert!(!is_irreducible(&t).unwrap());
        assert!(is_weakly_irreducible(&Tensor::zeros(2, 1)).unwrap());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&Tensor::ones(3, 3)).unwrap());
        let t = sparse3(&[([0, 1, 1], 1.0), ([1, 0, 0], 1.0)]);
        assert!(is_irreducible(&t).unwrap());
        let big = Tensor::ones(2, 17);
        assert!(matches!(is_irreducible(&big), Err(Error::TooLarge { dim: 17, cap: 16 })));
    }

    #[test]
    fn partition_examples() {
        let p = weakly_irreducible_partition(&Tensor::ones(3, 3)).unwrap();
        assert_eq!(p.blocks, vec![IndexSet::full(3)]);
        let p = weakly_irreducible_partition(&sparse3(&[([0, 1, 1], 5.0)])).unwrap();
        assert_eq!(p.blocks, vec![IndexSet::new(vec![0]).unwrap(), IndexSet::new(vec![1]).unwrap()]);
        let p = weakly_irreducible_partition(&Tensor::zeros(3, 3)).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn partition_respects_forward_references() {
        // Row 1 references 0, so {1} must come first.
        let mut t = Tensor::zeros(2, 2);
        t.set(&[1, 0], 2.0);
        let p = weakly_irreducible_partition(&t).unwrap();
        assert_eq!(p.blocks, vec![IndexSet::new(vec![1]).unwrap(), IndexSet::new(vec![0]).unwrap()]);
    }
}
