//! American Soundex.

use super::{encode, PhoneticAlgorithm, Unencodable};

/// Digit class of a letter; `0` for vowels (which separate runs), `None` for
/// `H` and `W` (which do not).
fn class(c: u8) -> Option<u8> {
    match c {
        b'B' | b'F' | b'P' | b'V' => Some(b'1'),
        b'C' | b'G' | b'J' | b'K' | b'Q' | b'S' | b'X' | b'Z' => Some(b'2'),
        b'D' | b'T' => Some(b'3'),
        b'L' => Some(b'4'),
        b'M' | b'N' => Some(b'5'),
        b'R' => Some(b'6'),
        b'H' | b'W' => None,
        _ => Some(b'0'),
    }
}

pub(super) fn encode_letters(letters: &str) -> String {
    let bytes = letters.as_bytes();
    let mut code = String::with_capacity(4);
    code.push(bytes[0] as char);
    let mut last = class(bytes[0]).unwrap_or(b'0');
    for &c in &bytes[1..] {
        if code.len() == 4 {
            break;
        }
        match class(c) {
            None => {}
            Some(b'0') => last = b'0',
            Some(d) => {
                if d != last {
                    code.push(d as char);
                }
                last = d;
            }
        }
    }
    while code.len() < 4 {
        code.push('0');
    }
    code
}

/// Soundex code: one letter followed by three digits.
pub fn soundex(name: &str) -> Result<String, Unencodable> {
    encode(name, PhoneticAlgorithm::Soundex).map(|c| c.primary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hw_do_not_separate_but_vowels_do() {
        assert_eq!(soundex("ashcraft").unwrap(), "A261");
        assert_eq!(soundex("tymczak").unwrap(), "T522");
        assert_eq!(soundex("pfister").unwrap(), "P236");
    }

    #[test]
    fn padding_and_truncation() {
        assert_eq!(soundex("a").unwrap(), "A000");
        assert_eq!(soundex("lee").unwrap(), "L000");
        assert_eq!(soundex("bartholomewjacksonsmith").unwrap(), "B634");
    }
}
