//! Original Metaphone (Philips, 1990). Codes are not length-capped.

use super::{encode, PhoneticAlgorithm, Unencodable};

fn is_vowel(c: u8) -> bool {
    matches!(c, b'A' | b'E' | b'I' | b'O' | b'U')
}

fn is_front_vowel(c: u8) -> bool {
    matches!(c, b'E' | b'I' | b'Y')
}

pub(super) fn encode_letters(letters: &str) -> String {
    // Adjacent duplicates collapse, except C.
    let mut w: Vec<u8> = Vec::with_capacity(letters.len());
    for &c in letters.as_bytes() {
        if w.last() == Some(&c) && c != b'C' {
            continue;
        }
        w.push(c);
    }
    if [&b"AE"[..], b"GN", b"KN", b"PN", b"WR"].iter().any(|p| w.starts_with(p)) {
        w.remove(0);
    } else if w.first() == Some(&b'X') {
        w[0] = b'S';
    } else if w.starts_with(b"WH") {
        w.remove(1);
    }

    let at = |i: usize| w.get(i).copied().unwrap_or(0);
    let last = w.len().saturating_sub(1);
    let mut code = String::with_capacity(w.len());
    for i in 0..w.len() {
        let c = w[i];
        let prev = if i > 0 { w[i - 1] } else { 0 };
        let next = at(i + 1);
        let next2 = at(i + 2);
        match c {
            b'A' | b'E' | b'I' | b'O' | b'U' => {
                if i == 0 {
                    code.push(c as char);
                }
            }
            b'B' => {
                if !(i == last && prev == b'M') {
                    code.push('B');
                }
            }
            b'C' => {
                if prev == b'S' && is_front_vowel(next) {
                    // -SCI-, -SCE-, -SCY-
                } else if next == b'I' && next2 == b'A' {
                    code.push('X');
                } else if next == b'H' {
                    code.push(if prev == b'S' { 'K' } else { 'X' });
                } else if is_front_vowel(next) {
                    code.push('S');
                } else {
                    code.push('K');
                }
            }
            b'D' => {
                if next == b'G' && is_front_vowel(next2) {
                    code.push('J');
                } else {
                    code.push('T');
                }
            }
            b'G' => {
                let silent_gh = next == b'H' && i + 2 <= last && !is_vowel(next2);
                let silent_gn = (next == b'N' && i + 1 == last)
                    || (i + 3 == last && &w[i + 1..] == b"NED");
                let after_dj = prev == b'D' && is_front_vowel(next);
                if silent_gh || silent_gn || after_dj {
                    // silent
                } else if is_front_vowel(next) {
                    code.push('J');
                } else {
                    code.push('K');
                }
            }
            b'H' => {
                let after_vowel = is_vowel(prev) && !is_vowel(next);
                let modifier = matches!(prev, b'C' | b'S' | b'P' | b'T' | b'G');
                if !(after_vowel || modifier) {
                    code.push('H');
                }
            }
            b'K' => {
                if prev != b'C' {
                    code.push('K');
                }
            }
            b'P' => code.push(if next == b'H' { 'F' } else { 'P' }),
            b'Q' => code.push('K'),
            b'S' => {
                if next == b'H' || (next == b'I' && matches!(next2, b'O' | b'A')) {
                    code.push('X');
                } else {
                    code.push('S');
                }
            }
            b'T' => {
                if next == b'I' && matches!(next2, b'O' | b'A') {
                    code.push('X');
                } else if next == b'H' {
                    code.push('0');
                } else if !(next == b'C' && next2 == b'H') {
                    code.push('T');
                }
            }
            b'V' => code.push('F'),
            b'W' | b'Y' => {
                if is_vowel(next) {
                    code.push(c as char);
                }
            }
            b'X' => code.push_str("KS"),
            b'Z' => code.push('S'),
            other => code.push(other as char),
        }
    }
    if code.is_empty() {
        // Only silent letters ("W", "Y"): keep the first letter.
        code.push(letters.as_bytes()[0] as char);
    }
    code
}

pub fn metaphone(name: &str) -> Result<String, Unencodable> {
    encode(name, PhoneticAlgorithm::Metaphone).map(|c| c.primary)
}
