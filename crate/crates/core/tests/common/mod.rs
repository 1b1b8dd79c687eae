//! Random corpus generators and brute-force oracles shared by the
//! integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treealign_core::{Comparator, CorpusItem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn word(rng: &mut impl Rng, vocab: usize) -> String {
    format!("w{}", rng.gen_range(0..vocab))
}

/// A balanced item sequence of at most `max_len` items.
pub fn random_balanced_items(rng: &mut impl Rng, max_len: usize, vocab: usize) -> Vec<CorpusItem> {
    let len = rng.gen_range(0..=max_len);
    let mut items = Vec::with_capacity(len);
    let mut depth = 0usize;
    while items.len() < len {
        let remaining = len - items.len();
        if remaining == depth {
            items.push(CorpusItem::Rsd);
            depth -= 1;
            continue;
        }
        let mut choices = Vec::new();
        if remaining >= depth + 2 {
            choices.push(0);
        }
        if depth > 0 {
            choices.push(1);
        }
        if remaining > depth {
            choices.push(2);
        }
        match *choices.choose(rng).unwrap() {
            0 => {
                items.push(CorpusItem::Lsd);
                depth += 1;
            }
            1 => {
                items.push(CorpusItem::Rsd);
                depth -= 1;
            }
            _ => items.push(CorpusItem::Terminal(word(rng, vocab))),
        }
    }
    items
}

/// Matching right-delimiter position for every left delimiter, by naive
/// forward scanning.
pub fn naive_extents(items: &[CorpusItem]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (start, item) in items.iter().enumerate() {
        if *item != CorpusItem::Lsd {
            continue;
        }
        let mut depth = 0i64;
        for (pos, other) in items.iter().enumerate().skip(start) {
            match other {
                CorpusItem::Lsd => depth += 1,
                CorpusItem::Rsd => {
                    depth -= 1;
                    if depth == 0 {
                        out.push((start, pos));
                        break;
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Textbook O(nm) LCS length under a comparator.
pub fn lcs_len(left: &[String], right: &[String], cmp: Comparator) -> usize {
    let mut table = vec![vec![0usize; right.len() + 1]; left.len() + 1];
    for i in 1..=left.len() {
        for j in 1..=right.len() {
            table[i][j] = if cmp.key(&left[i - 1]) == cmp.key(&right[j - 1]) {
                table[i - 1][j - 1] + 1
            } else {
                table[i - 1][j].max(table[i][j - 1])
            };
        }
    }
    table[left.len()][right.len()]
}

/// Explicit tree used to build and perturb corpora.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Term(String),
    /// `id` is the original subtree index, `None` for inserted brackets.
    Br(Option<usize>, Vec<Node>),
}

/// A forest over `terms` terminals. Leaves are wrapped in unary brackets
/// with probability `unary_p`; `empty_p` adds empty brackets.
pub fn random_forest(
    rng: &mut impl Rng,
    terms: usize,
    vocab: usize,
    unary_p: f64,
    empty_p: f64,
) -> Vec<Node> {
    fn build(
        rng: &mut impl Rng,
        n: usize,
        vocab: usize,
        unary_p: f64,
        empty_p: f64,
    ) -> Vec<Node> {
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            let leaf = Node::Term(word(rng, vocab));
            return if rng.gen_bool(unary_p) {
                vec![Node::Br(None, vec![leaf])]
            } else {
                vec![leaf]
            };
        }
        let parts = rng.gen_range(2..=4.min(n));
        let mut cuts: Vec<usize> = (1..n).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort_unstable();
        let mut bounds = vec![0];
        bounds.extend(cuts);
        bounds.push(n);
        let mut out = Vec::new();
        for w in bounds.windows(2) {
            let size = w[1] - w[0];
            let children = build(rng, size, vocab, unary_p, empty_p);
            if size == 1 {
                out.extend(children);
            } else {
                out.push(Node::Br(None, children));
            }
            if rng.gen_bool(empty_p) {
                out.push(Node::Br(None, Vec::new()));
            }
        }
        out
    }
    let mut forest = build(rng, terms, vocab, unary_p, empty_p);
    number(&mut forest);
    forest
}

/// Assign preorder ids (1-based) to every bracket.
pub fn number(forest: &mut [Node]) {
    fn walk(nodes: &mut [Node], next: &mut usize) {
        for node in nodes {
            if let Node::Br(id, children) = node {
                *next += 1;
                *id = Some(*next);
                walk(children, next);
            }
        }
    }
    let mut next = 0;
    walk(forest, &mut next);
}

/// Items plus the id carried by each bracket, in left-delimiter order.
pub fn flatten(forest: &[Node]) -> (Vec<CorpusItem>, Vec<Option<usize>>) {
    fn walk(nodes: &[Node], items: &mut Vec<CorpusItem>, ids: &mut Vec<Option<usize>>) {
        for node in nodes {
            match node {
                Node::Term(t) => items.push(CorpusItem::Terminal(t.clone())),
                Node::Br(id, children) => {
                    items.push(CorpusItem::Lsd);
                    ids.push(*id);
                    walk(children, items, ids);
                    items.push(CorpusItem::Rsd);
                }
            }
        }
    }
    let mut items = Vec::new();
    let mut ids = Vec::new();
    walk(forest, &mut items, &mut ids);
    (items, ids)
}

/// Yield of every bracket in left-delimiter order, computed on the tree.
pub fn tree_yields(forest: &[Node]) -> Vec<Option<(usize, usize)>> {
    fn walk(nodes: &[Node], next_term: &mut usize, out: &mut Vec<Option<(usize, usize)>>) {
        for node in nodes {
            match node {
                Node::Term(_) => *next_term += 1,
                Node::Br(_, children) => {
                    let slot = out.len();
                    out.push(None);
                    let before = *next_term;
                    walk(children, next_term, out);
                    if *next_term > before {
                        out[slot] = Some((before + 1, *next_term));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(forest, &mut 0, &mut out);
    out
}

/// Child lists of the forest, addressed by paths of child positions.
fn list_paths(nodes: &[Node], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(path.clone());
    for (n, node) in nodes.iter().enumerate() {
        if let Node::Br(_, children) = node {
            path.push(n);
            list_paths(children, path, out);
            path.pop();
        }
    }
}

fn list_at<'a>(forest: &'a mut Vec<Node>, path: &[usize]) -> &'a mut Vec<Node> {
    let mut list = forest;
    for &n in path {
        list = match &mut list[n] {
            Node::Br(_, children) => children,
            Node::Term(_) => unreachable!(),
        };
    }
    list
}

fn yield_counts(forest: &[Node]) -> std::collections::HashMap<(usize, usize), usize> {
    let mut counts = std::collections::HashMap::new();
    for y in tree_yields(forest).into_iter().flatten() {
        *counts.entry(y).or_insert(0) += 1;
    }
    counts
}

/// Randomly insert and delete brackets without touching terminals. An
/// inserted bracket gets a yield no other bracket has; a deleted original
/// bracket is the only one with its yield. Yield groups of the surviving
/// original brackets are therefore unchanged.
pub fn perturb_brackets(rng: &mut impl Rng, forest: &[Node], edits: usize) -> Vec<Node> {
    let mut current = forest.to_vec();
    for _ in 0..edits {
        let mut paths = Vec::new();
        list_paths(&current, &mut Vec::new(), &mut paths);
        let path = paths.choose(rng).unwrap().clone();
        let mut candidate = current.clone();
        if rng.gen_bool(0.5) {
            let list = list_at(&mut candidate, &path);
            if list.len() < 2 {
                continue;
            }
            let a = rng.gen_range(0..list.len() - 1);
            let b = rng.gen_range(a + 1..list.len());
            let wrapped: Vec<Node> = list.drain(a..=b).collect();
            list.insert(a, Node::Br(None, wrapped));
            let old = yield_counts(&current);
            let new = yield_counts(&candidate);
            let fresh: Vec<_> = new.iter().filter(|(y, _)| !old.contains_key(y)).collect();
            let ok = fresh.len() == 1
                && *fresh[0].1 == 1
                && old.iter().all(|(y, c)| new.get(y) == Some(c));
            if ok {
                current = candidate;
            }
        } else {
            let list = list_at(&mut candidate, &path);
            let brackets: Vec<usize> = list
                .iter()
                .enumerate()
                .filter(|(_, n)| matches!(n, Node::Br(..)))
                .map(|(n, _)| n)
                .collect();
            let Some(&victim) = brackets.choose(rng) else { continue };
            let Node::Br(_, children) = list.remove(victim) else { unreachable!() };
            for (k, child) in children.into_iter().enumerate() {
                list.insert(victim + k, child);
            }
            let old = yield_counts(&current);
            let new = yield_counts(&candidate);
            // Allowed iff the removed bracket was alone in its yield group
            // (or had an empty yield): no surviving group shrank.
            let ok = new.iter().all(|(y, c)| old[y] == *c);
            if ok {
                current = candidate;
            }
        }
    }
    current
}

/// Substitute roughly `rate` of the words with fresh ones.
pub fn substitute_words(rng: &mut impl Rng, items: &[CorpusItem], rate: f64) -> Vec<CorpusItem> {
    items
        .iter()
        .map(|item| match item {
            CorpusItem::Terminal(t) if rng.gen_bool(rate) => {
                CorpusItem::Terminal(format!("{t}~{}", rng.gen_range(0..1000)))
            }
            other => other.clone(),
        })
        .collect()
}

/// Apply `f` to every terminal; `None` removes it.
pub fn map_terms(forest: &[Node], f: &mut impl FnMut(&str) -> Vec<String>) -> Vec<Node> {
    let mut out = Vec::new();
    for node in forest {
        match node {
            Node::Term(t) => out.extend(f(t).into_iter().map(Node::Term)),
            Node::Br(id, children) => out.push(Node::Br(*id, map_terms(children, f))),
        }
    }
    out
}

/// Two-column Susanne text for a forest without empty brackets.
pub fn render_susanne(forest: &[Node]) -> String {
    let (items, _) = flatten(forest);
    let mut lines: Vec<(String, usize, usize)> = Vec::new();
    let mut pending = 0;
    for item in items {
        match item {
            CorpusItem::Lsd => pending += 1,
            CorpusItem::Terminal(t) => {
                lines.push((t, pending, 0));
                pending = 0;
            }
            CorpusItem::Rsd => lines.last_mut().expect("no empty brackets").2 += 1,
        }
    }
    let mut out = String::new();
    for (word, opens, closes) in lines {
        out.push_str(&word);
        out.push('\t');
        out.push_str(&"[Ns".repeat(opens));
        out.push('.');
        out.push_str(&"Ns]".repeat(closes));
        out.push('\n');
    }
    out
}

/// Penn bracketing with a preterminal around every word.
pub fn render_penn(forest: &[Node]) -> String {
    fn walk(nodes: &[Node], out: &mut String) {
        for node in nodes {
            match node {
                Node::Term(t) => {
                    out.push_str(" (NN ");
                    out.push_str(t);
                    out.push(')');
                }
                Node::Br(_, children) => {
                    out.push_str(" (X");
                    walk(children, out);
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    for node in forest {
        walk(std::slice::from_ref(node), &mut out);
        out.push('\n');
    }
    out
}
