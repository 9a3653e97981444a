//! Double Metaphone (Philips, 2000), primary and alternate codes capped at
//! four characters.

use super::{encode, PhoneticAlgorithm, Unencodable};

pub const DOUBLE_METAPHONE_MAX_LEN: usize = 4;

struct Codes {
    primary: String,
    alternate: String,
    max: usize,
}

impl Codes {
    fn new(max: usize) -> Self {
        Self { primary: String::with_capacity(max), alternate: String::with_capacity(max), max }
    }

    fn push_capped(target: &mut String, s: &str, max: usize) {
        let room = max.saturating_sub(target.len());
        target.push_str(&s[..s.len().min(room)]);
    }

    fn both(&mut self, s: &str) {
        Self::push_capped(&mut self.primary, s, self.max);
        Self::push_capped(&mut self.alternate, s, self.max);
    }

    fn split(&mut self, primary: &str, alternate: &str) {
        Self::push_capped(&mut self.primary, primary, self.max);
        Self::push_capped(&mut self.alternate, alternate, self.max);
    }

    fn primary_only(&mut self, s: &str) {
        Self::push_capped(&mut self.primary, s, self.max);
    }

    fn alternate_only(&mut self, s: &str) {
        Self::push_capped(&mut self.alternate, s, self.max);
    }

    fn complete(&self) -> bool {
        self.primary.len() >= self.max && self.alternate.len() >= self.max
    }
}

/// Uppercase ASCII word (letters and single spaces) with bounds-checked
/// lookups that return NUL outside the word.
struct Word<'a> {
    bytes: &'a [u8],
    slavo_germanic: bool,
}

impl<'a> Word<'a> {
    fn new(s: &'a str) -> Self {
        let bytes = s.as_bytes();
        let slavo_germanic = s.contains('W') || s.contains('K') || s.contains("CZ") || s.contains("WITZ");
        Self { bytes, slavo_germanic }
    }

    fn len(&self) -> isize {
        self.bytes.len() as isize
    }

    fn at(&self, i: isize) -> u8 {
        if i < 0 || i >= self.len() {
            0
        } else {
            self.bytes[i as usize]
        }
    }

    /// True when the `len`-byte window at `start` equals any of `options`.
    fn matches(&self, start: isize, len: isize, options: &[&str]) -> bool {
        if start < 0 || start + len > self.len() {
            return false;
        }
        let window = &self.bytes[start as usize..(start + len) as usize];
        options.iter().any(|o| o.as_bytes() == window)
    }

    fn any_of(&self, i: isize, letters: &[u8]) -> bool {
        let c = self.at(i);
        c != 0 && letters.contains(&c)
    }

    fn is_vowel(&self, i: isize) -> bool {
        self.any_of(i, b"AEIOUY")
    }

    fn last(&self) -> isize {
        self.len() - 1
    }
}

pub(super) fn encode_letters(letters: &str) -> (String, String) {
    let (primary, alternate) = encode_with_max(letters, DOUBLE_METAPHONE_MAX_LEN);
    if primary.is_empty() {
        // Only silent letters: fall back to the first letter so every
        // encodable name has a code.
        let first = letters[..1].to_string();
        return (first.clone(), first);
    }
    (primary, alternate)
}

fn encode_with_max(letters: &str, max: usize) -> (String, String) {
    let w = Word::new(letters);
    let mut out = Codes::new(max);
    let mut i: isize = if w.matches(0, 2, &["GN", "KN", "PN", "WR", "PS"]) { 1 } else { 0 };

    while !out.complete() && i < w.len() {
        i = match w.at(i) {
            b'A' | b'E' | b'I' | b'O' | b'U' | b'Y' => {
                if i == 0 {
                    out.both("A");
                }
                i + 1
            }
            b'B' => {
                out.both("P");
                if w.at(i + 1) == b'B' { i + 2 } else { i + 1 }
            }
            b'C' => handle_c(&w, &mut out, i),
            b'D' => handle_d(&w, &mut out, i),
            b'F' => {
                out.both("F");
                if w.at(i + 1) == b'F' { i + 2 } else { i + 1 }
            }
            b'G' => handle_g(&w, &mut out, i),
            b'H' => handle_h(&w, &mut out, i),
            b'J' => handle_j(&w, &mut out, i),
            b'K' => {
                out.both("K");
                if w.at(i + 1) == b'K' { i + 2 } else { i + 1 }
            }
            b'L' => handle_l(&w, &mut out, i),
            b'M' => {
                out.both("M");
                if condition_m0(&w, i) { i + 2 } else { i + 1 }
            }
            b'N' => {
                out.both("N");
                if w.at(i + 1) == b'N' { i + 2 } else { i + 1 }
            }
            b'P' => handle_p(&w, &mut out, i),
            b'Q' => {
                out.both("K");
                if w.at(i + 1) == b'Q' { i + 2 } else { i + 1 }
            }
            b'R' => handle_r(&w, &mut out, i),
            b'S' => handle_s(&w, &mut out, i),
            b'T' => handle_t(&w, &mut out, i),
            b'V' => {
                out.both("F");
                if w.at(i + 1) == b'V' { i + 2 } else { i + 1 }
            }
            b'W' => handle_w(&w, &mut out, i),
            b'X' => handle_x(&w, &mut out, i),
            b'Z' => handle_z(&w, &mut out, i),
            _ => i + 1,
        };
    }
    (out.primary, out.alternate)
}

fn germanic(w: &Word) -> bool {
    w.matches(0, 4, &["VAN ", "VON "]) || w.matches(0, 3, &["SCH"])
}

fn handle_c(w: &Word, out: &mut Codes, i: isize) -> isize {
    if condition_c0(w, i) {
        // "-ACH-" as in "bacher", "macher"
        out.both("K");
        i + 2
    } else if i == 0 && w.matches(i, 6, &["CAESAR"]) {
        out.both("S");
        i + 2
    } else if w.matches(i, 2, &["CH"]) {
        handle_ch(w, out, i)
    } else if w.matches(i, 2, &["CZ"]) && !w.matches(i - 2, 4, &["WICZ"]) {
        // "Czerny"
        out.split("S", "X");
        i + 2
    } else if w.matches(i + 1, 3, &["CIA"]) {
        // "focaccia"
        out.both("X");
        i + 3
    } else if w.matches(i, 2, &["CC"]) && !(i == 1 && w.at(0) == b'M') {
        // double "cc" but not "McClelland"
        handle_cc(w, out, i)
    } else if w.matches(i, 2, &["CK", "CG", "CQ"]) {
        out.both("K");
        i + 2
    } else if w.matches(i, 2, &["CI", "CE", "CY"]) {
        if w.matches(i, 3, &["CIO", "CIE", "CIA"]) {
            out.split("S", "X");
        } else {
            out.both("S");
        }
        i + 2
    } else {
        out.both("K");
        if w.matches(i + 1, 2, &[" C", " Q", " G"]) {
            // "Mac Caffrey", "Mac Gregor"
            i + 3
        } else if w.any_of(i + 1, b"CKQ") && !w.matches(i + 1, 2, &["CE", "CI"]) {
            i + 2
        } else {
            i + 1
        }
    }
}

fn handle_cc(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.any_of(i + 2, b"IEH") && !w.matches(i + 2, 2, &["HU"]) {
        // "bellocchio" but not "bacchus"
        if (i == 1 && w.at(i - 1) == b'A') || w.matches(i - 1, 5, &["UCCEE", "UCCES"]) {
            // "accident", "accede", "succeed"
            out.both("KS");
        } else {
            // "bacci", "bertucci"
            out.both("X");
        }
        i + 3
    } else {
        // Pierce's rule
        out.both("K");
        i + 2
    }
}

fn handle_ch(w: &Word, out: &mut Codes, i: isize) -> isize {
    if i > 0 && w.matches(i, 4, &["CHAE"]) {
        // "Michael"
        out.split("K", "X");
    } else if condition_ch0(w, i) || condition_ch1(w, i) {
        // Greek roots ("chemistry", "chorus") and Germanic "kh" sounds
        out.both("K");
    } else if i > 0 {
        if w.matches(0, 2, &["MC"]) {
            out.both("K");
        } else {
            out.split("X", "K");
        }
    } else {
        out.both("X");
    }
    i + 2
}

fn handle_d(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.matches(i, 2, &["DG"]) {
        if w.any_of(i + 2, b"IEY") {
            // "edge"
            out.both("J");
            i + 3
        } else {
            // "Edgar"
            out.both("TK");
            i + 2
        }
    } else if w.matches(i, 2, &["DT", "DD"]) {
        out.both("T");
        i + 2
    } else {
        out.both("T");
        i + 1
    }
}

fn handle_g(w: &Word, out: &mut Codes, i: isize) -> isize {
    let next = w.at(i + 1);
    if next == b'H' {
        handle_gh(w, out, i)
    } else if next == b'N' {
        if i == 1 && w.is_vowel(0) && !w.slavo_germanic {
            out.split("KN", "N");
        } else if !w.matches(i + 2, 2, &["EY"]) && next != b'Y' && !w.slavo_germanic {
            out.split("N", "KN");
        } else {
            out.both("KN");
        }
        i + 2
    } else if w.matches(i + 1, 2, &["LI"]) && !w.slavo_germanic {
        // "tagliaro"
        out.split("KL", "L");
        i + 2
    } else if i == 0
        && (next == b'Y'
            || w.matches(i + 1, 2, &["ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN", "IE", "EI", "ER"]))
    {
        // -ges-, -gep-, -gel-, -gie- at the beginning
        out.split("K", "J");
        i + 2
    } else if (w.matches(i + 1, 2, &["ER"]) || next == b'Y')
        && !w.matches(0, 6, &["DANGER", "RANGER", "MANGER"])
        && !w.any_of(i - 1, b"EI")
        && !w.matches(i - 1, 3, &["RGY", "OGY"])
    {
        // -ger-, -gy-
        out.split("K", "J");
        i + 2
    } else if w.any_of(i + 1, b"EIY") || w.matches(i - 1, 4, &["AGGI", "OGGI"]) {
        // Italian "biaggi"
        if germanic(w) || w.matches(i + 1, 2, &["ET"]) {
            out.both("K");
        } else if w.matches(i + 1, 3, &["IER"]) {
            out.both("J");
        } else {
            out.split("J", "K");
        }
        i + 2
    } else if next == b'G' {
        out.both("K");
        i + 2
    } else {
        out.both("K");
        i + 1
    }
}

fn handle_gh(w: &Word, out: &mut Codes, i: isize) -> isize {
    if i > 0 && !w.is_vowel(i - 1) {
        out.both("K");
    } else if i == 0 {
        // "ghislane", "ghiradelli"
        if w.at(i + 2) == b'I' {
            out.both("J");
        } else {
            out.both("K");
        }
    } else if (i > 1 && w.any_of(i - 2, b"BHD"))
        || (i > 2 && w.any_of(i - 3, b"BHD"))
        || (i > 3 && w.any_of(i - 4, b"BH"))
    {
        // Parker's rule: "hugh", "bough", "broughton"
    } else if i > 2 && w.at(i - 1) == b'U' && w.any_of(i - 3, b"CGLRT") {
        // "laugh", "McLaughlin", "cough", "gough", "rough", "tough"
        out.both("F");
    } else if i > 0 && w.at(i - 1) != b'I' {
        out.both("K");
    }
    i + 2
}

fn handle_h(w: &Word, out: &mut Codes, i: isize) -> isize {
    // Kept only when first or between vowels.
    if (i == 0 || w.is_vowel(i - 1)) && w.is_vowel(i + 1) {
        out.both("H");
        i + 2
    } else {
        i + 1
    }
}

fn handle_j(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.matches(i, 4, &["JOSE"]) || w.matches(0, 4, &["SAN "]) {
        // Spanish "Jose", "San Jacinto"
        if (i == 0 && w.at(i + 4) == b' ') || w.len() == 4 || w.matches(0, 4, &["SAN "]) {
            out.both("H");
        } else {
            out.split("J", "H");
        }
        return i + 1;
    }
    if i == 0 {
        // "Yankelovich", "Jankelowicz"
        out.split("J", "A");
    } else if w.is_vowel(i - 1) && !w.slavo_germanic && matches!(w.at(i + 1), b'A' | b'O') {
        // Spanish pronunciation, "bajador"
        out.split("J", "H");
    } else if i == w.last() {
        out.primary_only("J");
    } else if !w.any_of(i + 1, b"LTKSNMBZ") && !w.any_of(i - 1, b"SKL") {
        out.both("J");
    }
    if w.at(i + 1) == b'J' {
        i + 2
    } else {
        i + 1
    }
}

fn handle_l(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.at(i + 1) == b'L' {
        if condition_l0(w, i) {
            // Spanish "cabrillo", "gallegos"
            out.primary_only("L");
        } else {
            out.both("L");
        }
        i + 2
    } else {
        out.both("L");
        i + 1
    }
}

fn handle_p(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.at(i + 1) == b'H' {
        out.both("F");
        i + 2
    } else {
        // "campbell", "raspberry"
        out.both("P");
        if w.any_of(i + 1, b"PB") { i + 2 } else { i + 1 }
    }
}

fn handle_r(w: &Word, out: &mut Codes, i: isize) -> isize {
    if i == w.last()
        && !w.slavo_germanic
        && w.matches(i - 2, 2, &["IE"])
        && !w.matches(i - 4, 2, &["ME", "MA"])
    {
        // French "rogier", but not "hochmeier"
        out.alternate_only("R");
    } else {
        out.both("R");
    }
    if w.at(i + 1) == b'R' {
        i + 2
    } else {
        i + 1
    }
}

fn handle_s(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.matches(i - 1, 3, &["ISL", "YSL"]) {
        // "island", "isle", "carlisle", "carlysle"
        i + 1
    } else if i == 0 && w.matches(i, 5, &["SUGAR"]) {
        out.split("X", "S");
        i + 1
    } else if w.matches(i, 2, &["SH"]) {
        if w.matches(i + 1, 4, &["HEIM", "HOEK", "HOLM", "HOLZ"]) {
            // Germanic
            out.both("S");
        } else {
            out.both("X");
        }
        i + 2
    } else if w.matches(i, 3, &["SIO", "SIA"]) || w.matches(i, 4, &["SIAN"]) {
        // Italian and Armenian
        if w.slavo_germanic {
            out.both("S");
        } else {
            out.split("S", "X");
        }
        i + 3
    } else if (i == 0 && w.any_of(i + 1, b"MNLW")) || w.at(i + 1) == b'Z' {
        // "smith" vs "schmidt", "snider" vs "schneider"; Slavic -sz-
        out.split("S", "X");
        if w.at(i + 1) == b'Z' { i + 2 } else { i + 1 }
    } else if w.matches(i, 2, &["SC"]) {
        handle_sc(w, out, i)
    } else {
        if i == w.last() && w.matches(i - 2, 2, &["AI", "OI"]) {
            // French "resnais", "artois"
            out.alternate_only("S");
        } else {
            out.both("S");
        }
        if w.any_of(i + 1, b"SZ") { i + 2 } else { i + 1 }
    }
}

fn handle_sc(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.at(i + 2) == b'H' {
        // Schlesinger's rule
        if w.matches(i + 3, 2, &["OO", "ER", "EN", "UY", "ED", "EM"]) {
            // Dutch "school", "schooner"; "schermerhorn", "schenker"
            if w.matches(i + 3, 2, &["ER", "EN"]) {
                out.split("X", "SK");
            } else {
                out.both("SK");
            }
        } else if i == 0 && !w.is_vowel(3) && w.at(3) != b'W' {
            out.split("X", "S");
        } else {
            out.both("X");
        }
    } else if w.any_of(i + 2, b"IEY") {
        out.both("S");
    } else {
        out.both("SK");
    }
    i + 3
}

fn handle_t(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.matches(i, 4, &["TION"]) || w.matches(i, 3, &["TIA", "TCH"]) {
        out.both("X");
        i + 3
    } else if w.matches(i, 2, &["TH"]) || w.matches(i, 3, &["TTH"]) {
        if w.matches(i + 2, 2, &["OM", "AM"]) || germanic(w) {
            // "thomas", "thames", or Germanic
            out.both("T");
        } else {
            out.split("0", "T");
        }
        i + 2
    } else {
        out.both("T");
        if w.any_of(i + 1, b"TD") { i + 2 } else { i + 1 }
    }
}

fn handle_w(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.matches(i, 2, &["WR"]) {
        out.both("R");
        return i + 2;
    }
    if i == 0 && (w.is_vowel(i + 1) || w.matches(i, 2, &["WH"])) {
        if w.is_vowel(i + 1) {
            // "Wasserman" should match "Vasserman"
            out.split("A", "F");
        } else {
            // "Uomo" should match "Womo"
            out.both("A");
        }
        i + 1
    } else if (i == w.last() && w.is_vowel(i - 1))
        || w.matches(i - 1, 5, &["EWSKI", "EWSKY", "OWSKI", "OWSKY"])
        || w.matches(0, 3, &["SCH"])
    {
        // "Arnow" should match "Arnoff"
        out.alternate_only("F");
        i + 1
    } else if w.matches(i, 4, &["WICZ", "WITZ"]) {
        // Polish "filipowicz"
        out.split("TS", "FX");
        i + 4
    } else {
        i + 1
    }
}

fn handle_x(w: &Word, out: &mut Codes, i: isize) -> isize {
    if i == 0 {
        // "Xavier"
        out.both("S");
        return i + 1;
    }
    let french_final = i == w.last()
        && (w.matches(i - 3, 3, &["IAU", "EAU"]) || w.matches(i - 2, 2, &["AU", "OU"]));
    if !french_final {
        out.both("KS");
    }
    if w.any_of(i + 1, b"CX") {
        i + 2
    } else {
        i + 1
    }
}

fn handle_z(w: &Word, out: &mut Codes, i: isize) -> isize {
    if w.at(i + 1) == b'H' {
        // Chinese pinyin "zhao"
        out.both("J");
        return i + 2;
    }
    if w.matches(i + 1, 2, &["ZO", "ZI", "ZA"]) || (w.slavo_germanic && i > 0 && w.at(i - 1) != b'T') {
        out.split("S", "TS");
    } else {
        out.both("S");
    }
    if w.at(i + 1) == b'Z' {
        i + 2
    } else {
        i + 1
    }
}

fn condition_c0(w: &Word, i: isize) -> bool {
    if w.matches(i, 4, &["CHIA"]) {
        true
    } else if i <= 1 || w.is_vowel(i - 2) || !w.matches(i - 1, 3, &["ACH"]) {
        false
    } else {
        let c = w.at(i + 2);
        (c != b'I' && c != b'E') || w.matches(i - 2, 6, &["BACHER", "MACHER"])
    }
}

fn condition_ch0(w: &Word, i: isize) -> bool {
    i == 0
        && (w.matches(i + 1, 5, &["HARAC", "HARIS"]) || w.matches(i + 1, 3, &["HOR", "HYM", "HIA", "HEM"]))
        && !w.matches(0, 5, &["CHORE"])
}

fn condition_ch1(w: &Word, i: isize) -> bool {
    germanic(w)
        || w.matches(i - 2, 6, &["ORCHES", "ARCHIT", "ORCHID"])
        || w.any_of(i + 2, b"TS")
        || ((w.any_of(i - 1, b"AOUE") || i == 0)
            && (w.any_of(i + 2, b"LRNMBHFVW ") || i + 1 == w.last()))
}

fn condition_l0(w: &Word, i: isize) -> bool {
    let n = w.len();
    if i == n - 3 && w.matches(i - 1, 4, &["ILLO", "ILLA", "ALLE"]) {
        return true;
    }
    (w.matches(n - 2, 2, &["AS", "OS"]) || w.any_of(n - 1, b"AO")) && w.matches(i - 1, 4, &["ALLE"])
}

fn condition_m0(w: &Word, i: isize) -> bool {
    if w.at(i + 1) == b'M' {
        return true;
    }
    // "dumb", "thumb"
    w.matches(i - 1, 3, &["UMB"]) && (i + 1 == w.last() || w.matches(i + 2, 2, &["ER"]))
}

/// Primary and alternate Double Metaphone codes.
pub fn double_metaphone(name: &str) -> Result<(String, String), Unencodable> {
    let code = encode(name, PhoneticAlgorithm::DoubleMetaphone)?;
    let secondary = code.secondary.unwrap_or_else(|| code.primary.clone());
    Ok((code.primary, secondary))
}
