use std::fmt;

/// Canonical encoding of an irreducible object.
///
/// Two labels compare equal exactly when they denote isomorphic irreducibles of
/// the same ring. The derived `Ord` is the lexicographic order on the encoding;
/// rings combine it with their level filtration to get the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// `H_n` of a Temperley-Lieb-Jones ring.
    Tlj(u32),
    /// Element of `Z` or `Z/n`.
    Int(i64),
    /// Element of `Z^d`, `d >= 2`.
    Lattice(Vec<i64>),
    /// Reduced word in a free group; letter `k` is generator `k`, `-k` its inverse.
    FreeGroup(Vec<i32>),
    /// Element of a finite group given by its multiplication table.
    Element(u32),
    /// Dominant weight of `SU(n)` as a partition with fewer than `n` rows.
    Partition(Vec<u32>),
    /// Irreducible of a product ring.
    Pair(Box<Label>, Box<Label>),
    /// Alternating word of a free product; empty is the unit.
    Word(Vec<Letter>),
}

/// One letter of a free-product word: a non-unit label of factor 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub factor: u8,
    pub label: Label,
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn partition<I: IntoIterator<Item = u32>>(parts: I) -> Label {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Label::Partition(parts)
    }
}

fn free_letter(k: i32) -> char {
    let base = if k > 0 { b'a' } else { b'A' };
    (base + (k.unsigned_abs() as u8 - 1)) as char
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tlj(n) => write!(f, "H{n}"),
            Label::Int(k) => write!(f, "{k}"),
            Label::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Label::FreeGroup(w) if w.is_empty() => write!(f, "e"),
            Label::FreeGroup(w) => {
                for &k in w {
                    write!(f, "{}", free_letter(k))?;
                }
                Ok(())
            }
            Label::Element(g) => write!(f, "g{g}"),
            Label::Partition(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Word(w) if w.is_empty() => write!(f, "e"),
            Label::Word(w) => {
                for (i, letter) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    match &letter.label {
                        Label::Word(_) => write!(f, "{}:{{{}}}", letter.factor, letter.label)?,
                        other => write!(f, "{}:{}", letter.factor, other)?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Splits `text` on `sep` at bracket depth zero.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Strips one pair of enclosing delimiters, if present and matching.
pub(crate) fn strip_enclosing(text: &str, open: char, close: char) -> Option<&str> {
    let t = text.trim();
    if t.starts_with(open) && t.ends_with(close) && t.len() >= 2 {
        Some(&t[open.len_utf8()..t.len() - close.len_utf8()])
    } else {
        None
    }
}
