//! Words in simple transpositions acting on strand positions.
//!
//! Letters are 1-based and listed in application order: `letters[0]` is the crossing
//! nearest the bottom idempotent. A word's strand arrangement `top` records, for each
//! top position `q` (0-based), the bottom position of the strand ending there.

pub type Letter = u8;

/// The residue sequence read at the top after applying `letters` to `seq`.
pub fn apply_word(seq: &[u8], letters: &[Letter]) -> Vec<u8> {
    let mut s = seq.to_vec();
    for &c in letters {
        s.swap(c as usize - 1, c as usize);
    }
    s
}

/// Strand arrangement of a word on `m` strands.
pub fn strands(m: usize, letters: &[Letter]) -> Vec<u8> {
    let mut top: Vec<u8> = (0..m as u8).collect();
    for &c in letters {
        top.swap(c as usize - 1, c as usize);
    }
    top
}

/// Whether the two strands ending at top positions `c, c+1` already crossed.
pub fn is_left_descent(top: &[u8], c: Letter) -> bool {
    top[c as usize - 1] > top[c as usize]
}

pub fn min_left_descent(top: &[u8]) -> Option<Letter> {
    (1..top.len()).find(|&c| top[c - 1] > top[c]).map(|c| c as Letter)
}

/// Coxeter length: number of crossed strand pairs.
pub fn length(top: &[u8]) -> usize {
    let mut n = 0;
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            if top[a] > top[b] {
                n += 1;
            }
        }
    }
    n
}

/// The canonical reduced word: the topmost letter is the least left descent, and the
/// rest of the word is canonical for what remains. Every prefix of a canonical word is
/// therefore canonical.
pub fn canonical_word(top: &[u8]) -> Vec<Letter> {
    let mut s = top.to_vec();
    let mut out = Vec::new();
    while let Some(c) = min_left_descent(&s) {
        out.push(c);
        s.swap(c as usize - 1, c as usize);
    }
    out.reverse();
    out
}

pub fn is_reduced(m: usize, letters: &[Letter]) -> bool {
    length(&strands(m, letters)) == letters.len()
}

pub fn is_canonical(m: usize, letters: &[Letter]) -> bool {
    canonical_word(&strands(m, letters)) == letters
}
