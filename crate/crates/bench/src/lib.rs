//! Synthetic corpus pairs for benchmarking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treealign_core::{CorpusItem, NormalizedCorpus};

/// Sentences of 8–40 words, bracketed by random binary-to-quaternary
/// splits with occasional unary brackets over single words.
fn sentence(rng: &mut impl Rng, words: usize, vocab: usize, out: &mut Vec<CorpusItem>) {
    fn build(rng: &mut impl Rng, n: usize, vocab: usize, out: &mut Vec<CorpusItem>) {
        if n == 1 {
            let unary = rng.gen_bool(0.15);
            if unary {
                out.push(CorpusItem::Lsd);
            }
            out.push(CorpusItem::Terminal(format!("w{}", rng.gen_range(0..vocab))));
            if unary {
                out.push(CorpusItem::Rsd);
            }
            return;
        }
        let parts = rng.gen_range(2..=4.min(n));
        let mut rest = n;
        for k in (1..=parts).rev() {
            let size = if k == 1 { rest } else { rng.gen_range(1..=rest - (k - 1)) };
            rest -= size;
            if size > 1 {
                out.push(CorpusItem::Lsd);
            }
            build(rng, size, vocab, out);
            if size > 1 {
                out.push(CorpusItem::Rsd);
            }
        }
    }
    out.push(CorpusItem::Lsd);
    build(rng, words, vocab, out);
    out.push(CorpusItem::Rsd);
}

/// A left corpus of `terminals` words and a right corpus that differs in
/// roughly `diff_rate` of its tokens and re-brackets every tenth sentence.
pub fn corpus_pair(terminals: usize, diff_rate: f64, seed: u64) -> (NormalizedCorpus, NormalizedCorpus) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut produced = 0;
    while produced < terminals {
        let words = rng.gen_range(8..40).min(terminals - produced);
        produced += words;
        let start = left.len();
        sentence(&mut rng, words, 5000, &mut left);
        if rng.gen_bool(0.1) {
            let terms: Vec<CorpusItem> =
                left[start..].iter().filter(|i| i.is_terminal()).cloned().collect();
            right.push(CorpusItem::Lsd);
            right.extend(terms);
            right.push(CorpusItem::Rsd);
        } else {
            right.extend_from_slice(&left[start..]);
        }
    }
    for item in right.iter_mut() {
        if let CorpusItem::Terminal(t) = item {
            if rng.gen_bool(diff_rate) {
                t.push('~');
            }
        }
    }
    (
        NormalizedCorpus::from_items(left, "left").expect("balanced"),
        NormalizedCorpus::from_items(right, "right").expect("balanced"),
    )
}
