use super::{Result, SearchError};
use crate::chain::{Letter, Word};

fn letters(bits: u32, n: usize) -> Vec<Letter> {
    (0..n).map(|i| if bits >> i & 1 == 1 { Letter::S } else { Letter::C }).collect()
}

fn canonical_letters(v: &[Letter]) -> Vec<Letter> {
    let n = v.len();
    let mut best = v.to_vec();
    let rev: Vec<Letter> = v.iter().rev().copied().collect();
    for src in [v, &rev[..]] {
        for k in 0..n {
            let cand: Vec<Letter> = (0..n).map(|i| src[(i + k) % n]).collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// Least rotation or reversal of `w`, with `c < s`.
pub fn canonical_word(w: &Word) -> Word {
    Word::new(canonical_letters(w.letters())).expect("same length")
}

/// One word per class under rotation and reversal, lengths `3..=max_len`.
pub fn enumerate_words(max_len: usize) -> Result<Vec<Word>> {
    if !(3..=16).contains(&max_len) {
        return Err(SearchError::MaxLength(max_len));
    }
    let mut out = Vec::new();
    for n in 3..=max_len {
        let mut class: Vec<Vec<Letter>> = (0..1u32 << n)
            .map(|b| letters(b, n))
            .filter(|v| canonical_letters(v) == *v)
            .collect();
        class.sort();
        out.extend(class.into_iter().map(|v| Word::new(v).expect("length ≥ 3")));
    }
    Ok(out)
}
