//! Level-by-weight enumeration of normal forms.
//!
//! Every child of a normal form is a normal form, so level `w` is built from
//! lower levels by putting a generator on top of normal children and keeping
//! the candidates with no relation anchored at the new root. Whether a
//! relation matches at the root depends only on the children's crowns (their
//! top `H - 1` layers, `H` the largest relation height), so children are
//! grouped by crown and the root test runs once per crown tuple.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::MonomialOperadPresentation;
use crate::tree::{GenId, TreeMonomial};

/// Keeps the vertices at depth `< depth`; everything deeper becomes a leaf.
pub(crate) fn crown(t: &TreeMonomial, depth: usize) -> TreeMonomial {
    match t {
        TreeMonomial::Node(g, ch) if depth > 0 => {
            TreeMonomial::Node(*g, ch.iter().map(|c| crown(c, depth - 1)).collect())
        }
        _ => TreeMonomial::Leaf,
    }
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative terms.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=total {
            cur.push(k);
            go(total - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    } else if total == 0 {
        out.push(Vec::new());
    }
    out
}

/// Sort key realizing the deglex path order with generators ranked by index.
fn path_key(t: &TreeMonomial) -> (usize, Vec<(usize, Vec<GenId>)>) {
    let p = t.path_sequence();
    (p.len(), p.0.into_iter().map(|w| (w.len(), w)).collect())
}

struct Level {
    trees: Vec<TreeMonomial>,
    arities: Vec<usize>,
    /// crown -> indices into `trees`
    groups: BTreeMap<TreeMonomial, Vec<usize>>,
}

/// Streams normal forms one weight level at a time, each level sorted by the
/// deglex path order. Construct with [`enumerate_irr`].
pub struct IrrEnumerator<'a> {
    pres: &'a MonomialOperadPresentation,
    max_weight: usize,
    max_arity: Option<usize>,
    crown_depth: usize,
    levels: Vec<Level>,
}

/// Every normal form of weight `≤ max_weight`, level by level.
pub fn enumerate_irr(pres: &MonomialOperadPresentation, max_weight: usize) -> IrrEnumerator<'_> {
    enumerate_irr_bounded(pres, max_weight, None)
}

/// As [`enumerate_irr`], skipping monomials of arity above `max_arity`.
pub fn enumerate_irr_bounded(
    pres: &MonomialOperadPresentation,
    max_weight: usize,
    max_arity: Option<usize>,
) -> IrrEnumerator<'_> {
    IrrEnumerator { pres, max_weight, max_arity, crown_depth: pres.max_relation_height() - 1, levels: Vec::new() }
}

impl IrrEnumerator<'_> {
    fn make_level(&self, trees: Vec<TreeMonomial>) -> Level {
        let arities: Vec<usize> = trees.iter().map(TreeMonomial::arity).collect();
        let mut groups: BTreeMap<TreeMonomial, Vec<usize>> = BTreeMap::new();
        for (i, t) in trees.iter().enumerate() {
            groups.entry(crown(t, self.crown_depth)).or_default().push(i);
        }
        Level { trees, arities, groups }
    }

    fn build(&self, w: usize) -> Vec<TreeMonomial> {
        let alphabet = self.pres.alphabet();
        let bound = self.max_arity.unwrap_or(usize::MAX);
        let mut jobs: Vec<(GenId, Vec<usize>)> = Vec::new();
        for g in 0..alphabet.len() {
            for comp in compositions(w - 1, alphabet.arity(g)) {
                jobs.push((g, comp));
            }
        }
        let levels = &self.levels;
        let mut out: Vec<TreeMonomial> = jobs
            .par_iter()
            .flat_map_iter(|(g, comp)| {
                let mut found = Vec::new();
                let group_lists: Vec<Vec<(&TreeMonomial, &Vec<usize>)>> =
                    comp.iter().map(|&k| levels[k].groups.iter().collect()).collect();
                if group_lists.iter().any(Vec::is_empty) {
                    return found.into_iter();
                }
                for_each_choice(&group_lists, &mut |choice: &[(&TreeMonomial, &Vec<usize>)]| {
                    let top = TreeMonomial::Node(*g, choice.iter().map(|(c, _)| (*c).clone()).collect());
                    if !self.pres.root_ok(&top) {
                        return;
                    }
                    let members: Vec<Vec<(&TreeMonomial, usize)>> = choice
                        .iter()
                        .zip(comp)
                        .map(|((_, idx), &k)| {
                            idx.iter().map(|&i| (&levels[k].trees[i], levels[k].arities[i])).collect()
                        })
                        .collect();
                    for_each_choice(&members, &mut |kids: &[(&TreeMonomial, usize)]| {
                        let arity: usize = kids.iter().map(|(_, a)| a).sum();
                        if arity <= bound {
                            found.push(TreeMonomial::Node(*g, kids.iter().map(|(t, _)| (*t).clone()).collect()));
                        }
                    });
                });
                found.into_iter()
            })
            .collect();
        out.par_sort_by_cached_key(path_key);
        out
    }
}

/// Calls `f` on every element of the cartesian product of `lists`.
fn for_each_choice<T: Copy>(lists: &[Vec<T>], f: &mut impl FnMut(&[T])) {
    fn go<T: Copy>(lists: &[Vec<T>], cur: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        let depth = cur.len();
        if depth == lists.len() {
            f(cur);
            return;
        }
        for &x in &lists[depth] {
            cur.push(x);
            go(lists, cur, f);
            cur.pop();
        }
    }
    go(lists, &mut Vec::with_capacity(lists.len()), f);
}

impl Iterator for IrrEnumerator<'_> {
    type Item = Vec<TreeMonomial>;

    fn next(&mut self) -> Option<Self::Item> {
        let w = self.levels.len();
        if w > self.max_weight {
            return None;
        }
        let trees = if w == 0 { vec![TreeMonomial::Leaf] } else { self.build(w) };
        let level = self.make_level(trees);
        let out = level.trees.clone();
        self.levels.push(level);
        Some(out)
    }
}
