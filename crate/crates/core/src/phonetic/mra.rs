//! Match Rating Approach encoding (codex only, no comparison rules).

use super::{encode, PhoneticAlgorithm, Unencodable};

fn is_vowel(c: char) -> bool {
    matches!(c, 'A' | 'E' | 'I' | 'O' | 'U')
}

pub(super) fn encode_letters(letters: &str) -> String {
    // Vowels go first, then doubled consonants collapse.
    let mut chars = letters.chars();
    let first = chars.next().expect("non-empty input");
    let without_vowels = std::iter::once(first).chain(chars.filter(|&c| !is_vowel(c)));

    let mut codex: Vec<char> = Vec::with_capacity(letters.len());
    for c in without_vowels {
        if codex.last() == Some(&c) && !is_vowel(c) {
            continue;
        }
        codex.push(c);
    }
    if codex.len() > 6 {
        codex.drain(3..codex.len() - 3);
    }
    codex.into_iter().collect()
}

/// MRA codex: at most six letters.
pub fn mra(name: &str) -> Result<String, Unencodable> {
    encode(name, PhoneticAlgorithm::Mra).map(|c| c.primary)
}
