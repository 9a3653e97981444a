//! NYSIIS, original (strict) variant: keys are truncated to six letters.

use super::{encode, PhoneticAlgorithm, Unencodable};

pub const NYSIIS_MAX_LEN: usize = 6;

fn is_vowel(c: u8) -> bool {
    matches!(c, b'A' | b'E' | b'I' | b'O' | b'U')
}

fn replace_prefix(word: &mut Vec<u8>, from: &[u8], to: &[u8]) -> bool {
    if word.starts_with(from) {
        word.splice(..from.len(), to.iter().copied());
        true
    } else {
        false
    }
}

fn replace_suffix(word: &mut Vec<u8>, from: &[u8], to: &[u8]) -> bool {
    if word.ends_with(from) {
        let start = word.len() - from.len();
        word.splice(start.., to.iter().copied());
        true
    } else {
        false
    }
}

/// Replacement for the letter at `i`; may span the following letters.
fn transcode(prev: u8, cur: u8, next: u8, after_next: u8) -> &'static [u8] {
    match cur {
        b'E' if next == b'V' => b"AF",
        c if is_vowel(c) => b"A",
        b'Q' => b"G",
        b'Z' => b"S",
        b'M' => b"N",
        b'K' if next == b'N' => b"NN",
        b'K' => b"C",
        b'S' if next == b'C' && after_next == b'H' => b"SSS",
        b'P' if next == b'H' => b"FF",
        b'H' if !is_vowel(prev) || !is_vowel(next) => prev_slice(prev),
        b'W' if is_vowel(prev) => prev_slice(prev),
        c => letter_slice(c),
    }
}

const LETTERS: &[u8; 26] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ";

fn letter_slice(c: u8) -> &'static [u8] {
    let i = (c - b'A') as usize;
    &LETTERS[i..i + 1]
}

fn prev_slice(prev: u8) -> &'static [u8] {
    letter_slice(prev)
}

pub(super) fn encode_letters(letters: &str) -> String {
    let mut word = letters.as_bytes().to_vec();

    for (from, to) in [(&b"MAC"[..], &b"MCC"[..]), (b"KN", b"NN"), (b"K", b"C"), (b"PH", b"FF"), (b"PF", b"FF"), (b"SCH", b"SSS")] {
        if replace_prefix(&mut word, from, to) {
            break;
        }
    }
    for (from, to) in [(&b"EE"[..], &b"Y"[..]), (b"IE", b"Y")] {
        if replace_suffix(&mut word, from, to) {
            break;
        }
    }
    for from in [&b"DT"[..], b"RT", b"RD", b"NT", b"ND"] {
        if replace_suffix(&mut word, from, b"D") {
            break;
        }
    }

    let mut key = vec![word[0]];
    for i in 1..word.len() {
        let next = word.get(i + 1).copied().unwrap_or(b' ');
        let after_next = word.get(i + 2).copied().unwrap_or(b' ');
        let replacement = transcode(word[i - 1], word[i], next, after_next);
        // Replacements are written back so later positions see them.
        for (offset, &r) in replacement.iter().enumerate() {
            if let Some(slot) = word.get_mut(i + offset) {
                *slot = r;
            }
        }
        if word[i] != word[i - 1] {
            key.push(word[i]);
        }
    }

    if key.len() > 1 && key.last() == Some(&b'S') {
        key.pop();
    }
    if key.len() > 2 && key.ends_with(b"AY") {
        let n = key.len();
        key.remove(n - 2);
    }
    if key.len() > 1 && key.last() == Some(&b'A') {
        key.pop();
    }
    key.truncate(NYSIIS_MAX_LEN);
    String::from_utf8(key).expect("ASCII letters")
}

pub fn nysiis(name: &str) -> Result<String, Unencodable> {
    encode(name, PhoneticAlgorithm::Nysiis).map(|c| c.primary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robert() {
        assert_eq!(nysiis("robert").unwrap(), "RABAD");
    }

    #[test]
    fn prefix_rules() {
        assert_eq!(nysiis("macintosh").unwrap(), "MCANT");
        assert_eq!(nysiis("knight").unwrap(), "NAGT");
        assert_eq!(nysiis("phillips").unwrap(), "FALAP");
        assert_eq!(nysiis("schmidt").unwrap(), "SNAD");
    }

    #[test]
    fn truncated_to_six() {
        assert!(nysiis("bartholomew").unwrap().len() <= NYSIIS_MAX_LEN);
    }
}
