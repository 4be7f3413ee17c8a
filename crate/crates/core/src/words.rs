//! Words over the three alphabets and their weight/depth grading.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    /// `{x0, x1}`, graded by length.
    X,
    /// `{y1, y2, ...}`, `y_k` has weight `k`.
    Y,
    /// `{b0, b1, ...}`, `b_k` has weight `k` for `k >= 1` and `b0` weight 1.
    B,
}

impl Alphabet {
    pub fn admits(self, letter: Letter) -> bool {
        match self {
            Alphabet::X => letter <= 1,
            Alphabet::Y => letter >= 1,
            Alphabet::B => true,
        }
    }

    pub fn prefix(self) -> char {
        match self {
            Alphabet::X => 'x',
            Alphabet::Y => 'y',
            Alphabet::B => 'b',
        }
    }

    pub fn from_prefix(c: char) -> Option<Self> {
        match c {
            'x' => Some(Alphabet::X),
            'y' => Some(Alphabet::Y),
            'b' => Some(Alphabet::B),
            _ => None,
        }
    }

    pub fn letter_weight(self, letter: Letter) -> u32 {
        match self {
            Alphabet::X => 1,
            Alphabet::Y => letter,
            Alphabet::B => letter.max(1),
        }
    }

    pub fn letter_depth(self, letter: Letter) -> u32 {
        match self {
            Alphabet::X => u32::from(letter == 1),
            Alphabet::Y => 1,
            Alphabet::B => u32::from(letter != 0),
        }
    }

    /// Letters of exactly the given weight, ascending.
    pub fn letters_of_weight(self, weight: u32) -> Vec<Letter> {
        match (self, weight) {
            (_, 0) => vec![],
            (Alphabet::X, 1) => vec![0, 1],
            (Alphabet::X, _) => vec![],
            (Alphabet::Y, w) => vec![w],
            (Alphabet::B, 1) => vec![0, 1],
            (Alphabet::B, w) => vec![w],
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Alphabet::X => "X",
            Alphabet::Y => "Y",
            Alphabet::B => "B",
        };
        f.write_str(s)
    }
}

/// A word over one alphabet. The empty word is the unit `1`.
///
/// The derived order compares alphabet, then weight, then the letter
/// sequence lexicographically; this is the canonical graded-lex order that
/// fixes matrix column order everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    weight: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&letter) = letters.iter().find(|&&l| !alphabet.admits(l)) {
            return Err(Error::InvalidLetter { alphabet, letter });
        }
        Ok(Self::from_valid(alphabet, letters))
    }

    /// Caller guarantees every letter is admitted by `alphabet`.
    pub(crate) fn from_valid(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        let weight = letters.iter().map(|&l| alphabet.letter_weight(l)).sum();
        Word { alphabet, weight, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, weight: 0, letters: Vec::new() }
    }

    pub fn letter(alphabet: Alphabet, letter: Letter) -> Result<Self> {
        Self::new(alphabet, vec![letter])
    }

    /// Panics on an invalid letter; meant for literals.
    pub fn b<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Self::new(Alphabet::B, letters.into_iter().collect()).expect("valid B-word")
    }

    pub fn x<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Self::new(Alphabet::X, letters.into_iter().collect()).expect("valid X-word")
    }

    pub fn y<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Self::new(Alphabet::Y, letters.into_iter().collect()).expect("valid Y-word")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn depth(&self) -> u32 {
        self.letters.iter().map(|&l| self.alphabet.letter_depth(l)).sum()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Word {
        self.slice(1.min(self.len()), self.len())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Self::from_valid(self.alphabet, self.letters[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { alphabet: self.alphabet, weight: self.weight + other.weight, letters }
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word {
            alphabet: self.alphabet,
            weight: self.weight + self.alphabet.letter_weight(letter),
            letters,
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, ..self.clone() }
    }

    /// Number of leading occurrences of `letter`.
    pub fn leading(&self, letter: Letter) -> usize {
        self.letters.iter().take_while(|&&l| l == letter).count()
    }

    pub fn trailing(&self, letter: Letter) -> usize {
        self.letters.iter().rev().take_while(|&&l| l == letter).count()
    }

    /// Same letters, reinterpreted in another alphabet.
    pub fn relabel(&self, alphabet: Alphabet) -> Result<Word> {
        Word::new(alphabet, self.letters.clone())
    }

    /// Dot-separated letters, `1` for the empty word.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let p = self.alphabet.prefix();
        self.letters.iter().map(|l| format!("{p}{l}")).collect::<Vec<_>>().join(".")
    }

    /// Compact `[2,0,3]` list form (alphabet carried separately).
    pub fn to_compact(&self) -> String {
        let inner: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        format!("[{}]", inner.join(","))
    }

    /// Parses `b2 b0 b3` or `b2.b0.b3`; the alphabet is inferred from the
    /// letter prefixes and must be uniform. `1` (or an empty string) is the
    /// empty word and needs a `default` alphabet.
    pub fn parse(s: &str, default: Option<Alphabet>) -> Result<Word> {
        let tokens: Vec<&str> =
            s.split(|c: char| c == '.' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        if tokens.is_empty() || tokens == ["1"] {
            return default
                .map(Word::empty)
                .ok_or_else(|| Error::Parse("cannot infer the alphabet of the empty word".into()));
        }
        let mut alphabet: Option<Alphabet> = default;
        let mut letters = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let mut chars = tok.chars();
            let prefix = chars.next().unwrap_or(' ');
            let a = Alphabet::from_prefix(prefix)
                .ok_or_else(|| Error::Parse(format!("invalid letter '{tok}'")))?;
            match alphabet {
                None => alphabet = Some(a),
                Some(prev) if prev != a => {
                    return Err(Error::Parse(format!(
                        "letter '{tok}' does not belong to alphabet {prev}"
                    )))
                }
                _ => {}
            }
            let idx: Letter = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid letter '{tok}'")))?;
            if !a.admits(idx) {
                return Err(Error::Parse(format!("invalid letter '{tok}' for alphabet {a}")));
            }
            letters.push(idx);
        }
        Word::new(alphabet.expect("set above"), letters)
    }

    /// Parses the compact `[2,0,3]` form.
    pub fn parse_compact(alphabet: Alphabet, s: &str) -> Result<Word> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] list, got '{s}'")))?;
        let letters = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Letter>().map_err(|_| Error::Parse(format!("invalid index '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(alphabet, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub fn weight(w: &Word) -> u32 {
    w.weight()
}

pub fn depth(w: &Word) -> u32 {
    w.depth()
}

/// All words of exact weight `weight`, in canonical order.
pub fn enumerate_words(alphabet: Alphabet, weight: u32) -> Vec<Word> {
    fn go(alphabet: Alphabet, remaining: u32, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_valid(alphabet, prefix.clone()));
            return;
        }
        for w in 1..=remaining {
            for letter in alphabet.letters_of_weight(w) {
                prefix.push(letter);
                go(alphabet, remaining - w, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(alphabet, weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All words of weight at most `bound`, in canonical order.
pub fn words_up_to(alphabet: Alphabet, bound: u32) -> Vec<Word> {
    (0..=bound).flat_map(|w| enumerate_words(alphabet, w)).collect()
}

/// Words of `B` not starting with `b0` (the basis of `Q<B>^0`).
pub fn b0_free_start_words(weight: u32) -> Vec<Word> {
    enumerate_words(Alphabet::B, weight).into_iter().filter(|w| w.first() != Some(0)).collect()
}

/// `x0^{k1-1} x1 ... x0^{kd-1} x1`.
pub fn x_word_from_indices(ks: &[u32]) -> Result<Word> {
    let mut letters = Vec::new();
    for &k in ks {
        if k == 0 {
            return Err(Error::InvalidArgument("indices must be positive".into()));
        }
        letters.extend(std::iter::repeat_n(0, k as usize - 1));
        letters.push(1);
    }
    Word::new(Alphabet::X, letters)
}

/// Inverse of [`x_word_from_indices`] for words ending in `x1` (or empty).
pub fn x_word_indices(w: &Word) -> Option<Vec<u32>> {
    if w.alphabet() != Alphabet::X || w.last() == Some(0) {
        return None;
    }
    let mut out = Vec::new();
    let mut zeros = 0;
    for &l in w.letters() {
        if l == 0 {
            zeros += 1;
        } else {
            out.push(zeros + 1);
            zeros = 0;
        }
    }
    Some(out)
}

/// An X-word starting with `x0` and ending with `x1`.
pub fn is_admissible_x(w: &Word) -> bool {
    w.alphabet() == Alphabet::X && w.first() == Some(0) && w.last() == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_and_depth_examples() {
        assert_eq!(Word::b([2, 0, 3]).weight(), 6);
        assert_eq!(Word::b([2, 0, 3]).depth(), 2);
        assert_eq!(Word::empty(Alphabet::B).weight(), 0);
        assert_eq!(Word::empty(Alphabet::B).depth(), 0);
        assert_eq!(Word::x([0, 0, 1]).weight(), 3);
        assert_eq!(Word::x([0, 1, 0, 1]).depth(), 2);
        assert_eq!(Word::y([2, 3]).weight(), 5);
    }

    #[test]
    fn invalid_letters_rejected() {
        assert!(Word::new(Alphabet::X, vec![2]).is_err());
        assert!(Word::new(Alphabet::Y, vec![0]).is_err());
        assert!(Word::new(Alphabet::B, vec![0, 7]).is_ok());
    }

    #[test]
    fn enumerate_small_weights() {
        let b1: Vec<String> = enumerate_words(Alphabet::B, 1).iter().map(Word::to_text).collect();
        assert_eq!(b1, ["b0", "b1"]);
        let b2: Vec<String> = enumerate_words(Alphabet::B, 2).iter().map(Word::to_text).collect();
        assert_eq!(b2, ["b0.b0", "b0.b1", "b1.b0", "b1.b1", "b2"]);
        let y3: Vec<String> = enumerate_words(Alphabet::Y, 3).iter().map(Word::to_text).collect();
        assert_eq!(y3, ["y1.y1.y1", "y1.y2", "y2.y1", "y3"]);
        assert_eq!(enumerate_words(Alphabet::X, 0), vec![Word::empty(Alphabet::X)]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        // every letter sequence with indices <= w, filtered by weight
        fn brute(alphabet: Alphabet, w: u32) -> Vec<Word> {
            let max_letter = w;
            let mut out = vec![];
            let mut frontier = vec![Vec::<Letter>::new()];
            while let Some(seq) = frontier.pop() {
                let word = Word::from_valid(alphabet, seq.clone());
                if word.weight() == w {
                    out.push(word.clone());
                }
                if word.weight() < w {
                    for l in 0..=max_letter {
                        if alphabet.admits(l) {
                            let mut s = seq.clone();
                            s.push(l);
                            frontier.push(s);
                        }
                    }
                }
            }
            out.sort();
            out
        }
        for a in [Alphabet::X, Alphabet::Y, Alphabet::B] {
            for w in 0..=6 {
                assert_eq!(enumerate_words(a, w), brute(a, w), "{a} weight {w}");
            }
        }
    }

    #[test]
    fn b_word_count_recursion() {
        let mut c = vec![1usize];
        for w in 1..=9usize {
            let tail: usize = (2..=w).map(|k| c[w - k]).sum();
            c.push(2 * c[w - 1] + tail);
        }
        for (w, &expected) in c.iter().enumerate() {
            assert_eq!(enumerate_words(Alphabet::B, w as u32).len(), expected);
        }
    }

    #[test]
    fn grading_is_additive() {
        for a in [Alphabet::X, Alphabet::Y, Alphabet::B] {
            let words = words_up_to(a, 6);
            for u in &words {
                for v in &words {
                    if u.weight() + v.weight() > 6 {
                        continue;
                    }
                    let uv = u.concat(v);
                    assert_eq!(uv.weight(), u.weight() + v.weight());
                    assert_eq!(uv.depth(), u.depth() + v.depth());
                }
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Word::parse("b2 b0 b3", None).unwrap(), Word::b([2, 0, 3]));
        assert_eq!(Word::parse("b2.b0.b3", None).unwrap(), Word::b([2, 0, 3]));
        assert_eq!(Word::parse("1", Some(Alphabet::Y)).unwrap(), Word::empty(Alphabet::Y));
        assert_eq!(Word::parse_compact(Alphabet::B, "[2,0,3]").unwrap(), Word::b([2, 0, 3]));
        let err = Word::parse("b2 x0", None).unwrap_err().to_string();
        assert!(err.contains("x0"), "{err}");
        assert!(Word::parse("x2", None).unwrap_err().to_string().contains("x2"));
        assert!(Word::parse("1", None).is_err());
    }

    #[test]
    fn x_indices_round_trip() {
        let w = x_word_from_indices(&[2, 1, 3]).unwrap();
        assert_eq!(w, Word::x([0, 1, 1, 0, 0, 1]));
        assert_eq!(x_word_indices(&w).unwrap(), vec![2, 1, 3]);
        assert!(x_word_indices(&Word::x([1, 0])).is_none());
        assert!(is_admissible_x(&w));
    }
}
