//! Words over the two-letter alphabet {x, y} and indices (compositions).
//!
//! An index `(k_1, ..., k_l)` corresponds to the word `z_{k_1} ... z_{k_l}`
//! with `z_k = x^{k-1} y`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A z-letter string: the parts of an index, each at least 1.
pub type Comp = SmallVec<[u32; 8]>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    /// The empty word, i.e. the unit 1.
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn x() -> Self {
        Word(smallvec::smallvec![Letter::X])
    }

    pub fn y() -> Self {
        Word(smallvec::smallvec![Letter::Y])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    /// `z_k = x^{k-1} y`.
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z-letters are indexed from 1");
        let mut w = Word::empty();
        w.push_z(k);
        w
    }

    pub fn from_comp(parts: &[u32]) -> Self {
        let mut w = Word(SmallVec::with_capacity(parts.iter().sum::<u32>() as usize));
        for &k in parts {
            w.push_z(k);
        }
        w
    }

    fn push_z(&mut self, k: u32) {
        for _ in 1..k {
            self.0.push(Letter::X);
        }
        self.0.push(Letter::Y);
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Number of `y` letters; equals the depth for words in H^1.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[start..end]))
    }

    /// Empty or ends with `y`.
    pub fn in_h1(&self) -> bool {
        self.0.last().is_none_or(|&l| l == Letter::Y)
    }

    /// Empty, or starts with `x` and ends with `y`.
    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.0[0] == Letter::X && self.0[self.0.len() - 1] == Letter::Y)
    }

    pub fn is_power_of_y(&self) -> bool {
        self.0.iter().all(|&l| l == Letter::Y)
    }

    /// Nonempty H^1 words other than powers of `y`.
    pub fn in_h1_check(&self) -> bool {
        self.in_h1() && !self.is_empty() && !self.is_power_of_y()
    }

    /// Splits an H^1 word into its z-letter parts.
    pub fn to_comp(&self) -> Option<Comp> {
        if !self.in_h1() {
            return None;
        }
        let mut parts = Comp::new();
        let mut run = 0u32;
        for &l in &self.0 {
            run += 1;
            if l == Letter::Y {
                parts.push(run);
                run = 0;
            }
        }
        Some(parts)
    }

    pub fn rotate_left(&self, by: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let by = by % v.len();
            v.rotate_left(by);
        }
        Word(v)
    }

    /// Renders the word as a product of z-letters, e.g. `z2z1`; H^1 only.
    pub fn to_z_string(&self) -> Option<String> {
        let comp = self.to_comp()?;
        if comp.is_empty() {
            return Some("1".into());
        }
        Some(comp.iter().map(|k| format!("z{k}")).collect())
    }
}

/// Length first, then lexicographic with `x < y`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `1` for the empty word, otherwise a string over `x`, `y`.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse { pos, msg: format!("unexpected letter `{other}` in word") }),
            })
            .collect::<Result<SmallVec<_>>>()
            .map(Word)
    }
}

/// A nonempty composition `(k_1, ..., k_l)` of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidIndex("empty index".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!("{parts:?} has a zero part")));
        }
        Ok(Index(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_admissible(&self) -> bool {
        self.0[0] >= 2
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&k| k == 1)
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.to_string()))
        }
    }

    /// All compositions of `weight` in lexicographic order.
    pub fn compositions(weight: u32) -> Vec<Index> {
        fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
            if rest == 0 {
                out.push(Index(cur.clone()));
                return;
            }
            for k in 1..=rest {
                cur.push(k);
                rec(rest - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if weight > 0 {
            rec(weight, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Admissible indices with weight in `2..=max_weight`, ordered by weight.
    pub fn admissible_up_to(max_weight: u32) -> Vec<Index> {
        (2..=max_weight)
            .flat_map(Index::compositions)
            .filter(Index::is_admissible)
            .collect()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parses `2,1` (parentheses optional).
impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse { pos: 0, msg: format!("invalid index part `{p}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

pub fn word_from_index(idx: &Index) -> Word {
    Word::from_comp(idx.parts())
}

pub fn index_from_word(w: &Word) -> Result<Index> {
    if w.is_empty() {
        return Err(Error::Domain { word: w.to_string(), space: "nonempty words" });
    }
    let comp = w.to_comp().ok_or_else(|| Error::Domain { word: w.to_string(), space: "H^1" })?;
    Index::new(comp.to_vec())
}

/// Every word of exactly `len` letters, in length-lex order.
pub fn words_of_length(len: usize) -> Vec<Word> {
    (0..1usize << len)
        .map(|bits| {
            Word::from_letters((0..len).rev().map(|i| if bits >> i & 1 == 1 { Letter::Y } else { Letter::X }))
        })
        .collect()
}

/// Every word of length at most `max_len`, including the empty word.
pub fn words_up_to(max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(words_of_length).collect()
}

/// Nonempty words ending in `y` of length at most `max_len`.
pub fn hy_words_up_to(max_len: usize) -> Vec<Word> {
    words_up_to(max_len).into_iter().filter(|w| !w.is_empty() && w.in_h1()).collect()
}
