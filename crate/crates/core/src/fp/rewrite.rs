//! Reidemeister–Schreier: a presentation of a finite-index subgroup from
//! a completed coset table, on the nontrivial Schreier generators of a
//! prefix-closed transversal.

use crate::error::{Error, Result};
use crate::fp::coset::CosetTable;
use crate::fp::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalOrder {
    BreadthFirst,
    DepthFirst,
}

/// Subgroup presentation with a breadth-first Schreier transversal.
pub fn reidemeister_schreier(pres: &Presentation, table: &CosetTable) -> Result<Presentation> {
    reidemeister_schreier_with(pres, table, TransversalOrder::BreadthFirst)
}

pub fn reidemeister_schreier_with(
    pres: &Presentation,
    table: &CosetTable,
    order: TransversalOrder,
) -> Result<Presentation> {
    if !table.is_valid_for(pres) {
        return Err(Error::IncompatibleTable);
    }
    let n = table.n_cosets();
    let n_gens = pres.n_gens();
    // spanning tree: tree pairs (coset, gen) whose Schreier generator is
    // trivial, discovered in breadth- or depth-first column order
    let mut visited = vec![false; n];
    let mut tree_pair = vec![vec![false; n_gens]; n];
    visited[0] = true;
    match order {
        TransversalOrder::BreadthFirst => {
            let mut queue = vec![0usize];
            let mut head = 0;
            while head < queue.len() {
                let c = queue[head];
                head += 1;
                for g in 0..n_gens {
                    for positive in [true, false] {
                        let img = table.apply(c, g, positive);
                        if !visited[img] {
                            visited[img] = true;
                            // the tree edge is along generator g between
                            // c and img; record it on the source of the
                            // positive direction
                            if positive {
                                tree_pair[c][g] = true;
                            } else {
                                tree_pair[img][g] = true;
                            }
                            queue.push(img);
                        }
                    }
                }
            }
        }
        TransversalOrder::DepthFirst => {
            let mut stack = vec![0usize];
            while let Some(c) = stack.pop() {
                for g in 0..n_gens {
                    for positive in [true, false] {
                        let img = table.apply(c, g, positive);
                        if !visited[img] {
                            visited[img] = true;
                            if positive {
                                tree_pair[c][g] = true;
                            } else {
                                tree_pair[img][g] = true;
                            }
                            stack.push(img);
                        }
                    }
                }
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(Error::IncompatibleTable);
    }
    // nontrivial Schreier generators, one per non-tree (coset, gen) pair
    let mut gen_index = vec![vec![usize::MAX; n_gens]; n];
    let mut count = 0usize;
    for c in 0..n {
        for g in 0..n_gens {
            if !tree_pair[c][g] {
                gen_index[c][g] = count;
                count += 1;
            }
        }
    }
    debug_assert_eq!(count, n * n_gens - (n - 1));
    let gen_names: Vec<String> = (1..=count).map(|i| format!("s{i}")).collect();
    // rewrite every relator at every coset
    let mut relators = Vec::new();
    for r in &pres.relators {
        for c0 in 0..n {
            let mut letters = Vec::new();
            let mut cur = c0;
            for &(g, s) in &r.letters {
                if s {
                    if gen_index[cur][g] != usize::MAX {
                        letters.push((gen_index[cur][g], true));
                    }
                    cur = table.apply(cur, g, true);
                } else {
                    let prev = table.apply(cur, g, false);
                    if gen_index[prev][g] != usize::MAX {
                        letters.push((gen_index[prev][g], false));
                    }
                    cur = prev;
                }
            }
            debug_assert_eq!(cur, c0);
            let w = Word::new(letters).free_reduce();
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    Ok(Presentation::new(gen_names, relators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::coset::todd_coxeter;

    #[test]
    fn free_group_index_two() {
        // kernel of F2 -> Z/2 sending a -> 1, b -> 0 has rank 3
        let f2 = Presentation::parse("< a, b >").unwrap();
        let subs = [
            f2.word("aa").unwrap(),
            f2.word("b").unwrap(),
            f2.word("aba").unwrap(),
        ];
        let t = todd_coxeter(&f2, &subs, 100).unwrap().table().unwrap();
        assert_eq!(t.n_cosets(), 2);
        let sub = reidemeister_schreier(&f2, &t).unwrap();
        assert_eq!(sub.n_gens(), 3);
        assert!(sub.relators.is_empty());
    }

    #[test]
    fn index_three_in_s3() {
        let s3 = Presentation::parse("< a, b | aa, bbb, abab >").unwrap();
        let subs = [s3.word("b").unwrap()];
        let t = todd_coxeter(&s3, &subs, 100).unwrap().table().unwrap();
        assert_eq!(t.n_cosets(), 2);
        // subgroup of index 2 is <b> = C3
        let sub = reidemeister_schreier(&s3, &t).unwrap();
        let ab = crate::fp::abelian::abelianization(&sub);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion_u64(), vec![3]);
    }

    #[test]
    fn transversal_order_independence() {
        let p = Presentation::parse("< a, b | aaaa, bbAA, abaB >").unwrap();
        let t = todd_coxeter(&p, &[p.word("a").unwrap()], 100)
            .unwrap()
            .table()
            .unwrap();
        let bfs = reidemeister_schreier_with(&p, &t, TransversalOrder::BreadthFirst).unwrap();
        let dfs = reidemeister_schreier_with(&p, &t, TransversalOrder::DepthFirst).unwrap();
        assert_eq!(
            crate::fp::abelian::abelianization(&bfs),
            crate::fp::abelian::abelianization(&dfs)
        );
    }

    #[test]
    fn incompatible_table() {
        let p = Presentation::parse("< a | aaa >").unwrap();
        let q = Presentation::parse("< a | aa >").unwrap();
        let t = todd_coxeter(&q, &[], 100).unwrap().table().unwrap();
        assert_eq!(
            reidemeister_schreier(&p, &t),
            Err(Error::IncompatibleTable)
        );
    }
}
