//! Coxeter systems given by a bond matrix, enumerated as a Cayley graph.
//!
//! Elements are discovered breadth-first from the identity, multiplying on the
//! right by generators in their declared order. Processing each layer in
//! discovery order makes the first word that reaches an element its
//! ShortLex-least reduced word, so element ids are themselves ShortLex-sorted.
//!
//! Group elements are told apart exactly by their action on the
//! contragredient of the geometric representation: `w` is keyed by
//! `w⁻¹·f₀`, where `f₀` takes the value 1 on every simple root and therefore
//! lies in the interior of the fundamental chamber, whose stabilizer is
//! trivial.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::CyclotomicRing;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 100_000;

pub(crate) const NONE: u32 = u32::MAX;

/// Order `m(s,t)` of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_finite(self) -> bool {
        matches!(self, Bond::Finite(_))
    }

    pub fn order(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// A validated symmetric Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Bond>,
}

impl CoxeterMatrix {
    #[allow(clippy::needless_range_loop)] // symmetric (i, j) indexing
    pub fn new(rows: Vec<Vec<Bond>>) -> Result<Self> {
        let rank = rows.len();
        if rank > u8::MAX as usize {
            return Err(Error::MalformedMatrix(format!(
                "rank {rank} exceeds the supported maximum of {}",
                u8::MAX
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for i in 0..rank {
            if rows[i][i] != Bond::Finite(1) {
                return Err(Error::MalformedMatrix(format!(
                    "diagonal entry m({0},{0}) = {1}, expected 1",
                    i + 1,
                    rows[i][i]
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::MalformedMatrix(format!(
                        "m({},{}) = {} but m({},{}) = {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        j + 1,
                        i + 1,
                        rows[j][i]
                    )));
                }
                if let Bond::Finite(m) = rows[i][j] {
                    if m < 2 {
                        return Err(Error::MalformedMatrix(format!(
                            "off-diagonal entry m({},{}) = {m} is below 2",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(Self {
            rank,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer orders, reading 0 as infinity.
    pub fn from_orders(rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&m| if m == 0 { Bond::Infinite } else { Bond::Finite(m) })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.entries[s * self.rank + t]
    }

    pub fn rows(&self) -> Vec<Vec<Bond>> {
        self.entries.chunks(self.rank.max(1)).map(<[Bond]>::to_vec).take(self.rank).collect()
    }
}

/// A group element of an enumerated [`CoxeterSystem`].
///
/// Ids follow the ShortLex order of canonical words, so the derived ordering
/// is ShortLex. Elements of different systems must not be mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// Which side a generator multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The contragredient geometric representation over `Z[ζ]`.
#[derive(Debug, Clone)]
struct Representation {
    rank: usize,
    ring: CyclotomicRing,
    /// `2cos(π/m(t,s))` for each ordered pair, `None` when it vanishes.
    coupling: Vec<Option<Vec<i64>>>,
}

impl Representation {
    fn new(matrix: &CoxeterMatrix) -> Self {
        let rank = matrix.rank();
        let lcm = (0..rank)
            .flat_map(|s| (0..rank).map(move |t| (s, t)))
            .filter(|&(s, t)| s != t)
            .filter_map(|(s, t)| matrix.bond(s, t).order())
            .filter(|&m| m > 3)
            .fold(1usize, |acc, m| lcm(acc, m as usize));
        let order = if lcm == 1 { 1 } else { 2 * lcm };
        let ring = CyclotomicRing::new(order);
        let mut coupling = vec![None; rank * rank];
        for t in 0..rank {
            for s in 0..rank {
                if s == t {
                    continue;
                }
                coupling[t * rank + s] = match matrix.bond(t, s) {
                    Bond::Finite(2) => None,
                    Bond::Finite(3) => Some(ring.constant(1)),
                    Bond::Infinite => Some(ring.constant(2)),
                    Bond::Finite(m) => {
                        let j = order / (2 * m as usize);
                        let mut c = ring.root_power(j);
                        for (a, b) in c.iter_mut().zip(ring.root_power(order - j)) {
                            *a += b;
                        }
                        Some(c)
                    }
                };
            }
        }
        Self { rank, ring, coupling }
    }

    fn width(&self) -> usize {
        self.rank * self.ring.degree()
    }

    fn chamber_point(&self) -> Vec<i64> {
        let d = self.ring.degree();
        let mut v = vec![0; self.width()];
        for s in 0..self.rank {
            v[s * d] = 1;
        }
        v
    }

    /// Applies the simple reflection `t` to a linear form given by its values
    /// on the simple roots: `(t·f)(α_s) = f(α_s) + 2cos(π/m(t,s)) f(α_t)`,
    /// `(t·f)(α_t) = -f(α_t)`.
    fn act(&self, t: usize, form: &[i64]) -> Result<Vec<i64>> {
        let d = self.ring.degree();
        let mut out = form.to_vec();
        let ft = &form[t * d..(t + 1) * d];
        for s in 0..self.rank {
            if let Some(c) = &self.coupling[t * self.rank + s] {
                self.ring.mul_add(&mut out[s * d..(s + 1) * d], c, ft)?;
            }
        }
        for x in &mut out[t * d..(t + 1) * d] {
            *x = -*x;
        }
        Ok(out)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Exact keys kept for truncated systems, where multiplication tables have
/// holes at the boundary of the ball.
#[derive(Debug, Clone)]
struct KeyIndex {
    rep: Representation,
    by_id: Vec<Box<[i64]>>,
    lookup: HashMap<Box<[i64]>, u32>,
}

impl KeyIndex {
    fn find(&self, key: &[i64]) -> Option<u32> {
        self.lookup.get(key).copied()
    }
}

/// A Coxeter system `(W, S)` together with its enumerated element table.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    labels: Vec<String>,
    matrix: CoxeterMatrix,
    cap: usize,
    complete: bool,
    lengths: Vec<u32>,
    words: Vec<Box<[u8]>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverses: Vec<u32>,
    pub(crate) reflections: Vec<Element>,
    pub(crate) reflection_pos: Vec<u32>,
    keys: Option<KeyIndex>,
}

impl CoxeterSystem {
    /// Enumerates the group breadth-first up to `cap` elements.
    pub fn build(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::MalformedMatrix("cap must be positive".into()));
        }
        let rank = matrix.rank();
        let rep = Representation::new(&matrix);

        let origin: Box<[i64]> = rep.chamber_point().into();
        let mut by_id = vec![origin.clone()];
        let mut lookup = HashMap::from([(origin, 0u32)]);
        let mut lengths = vec![0u32];
        let mut parents = vec![(NONE, 0u8)];
        let mut right = vec![NONE; rank];
        let mut truncated = false;

        let mut next = 0usize;
        while next < lengths.len() {
            let x = next;
            next += 1;
            for s in 0..rank {
                if right[x * rank + s] != NONE {
                    continue;
                }
                let key: Box<[i64]> = rep.act(s, &by_id[x])?.into();
                let y = match lookup.get(&key) {
                    Some(&y) => y,
                    None if lengths.len() < cap => {
                        let y = lengths.len() as u32;
                        lookup.insert(key.clone(), y);
                        by_id.push(key);
                        lengths.push(lengths[x] + 1);
                        parents.push((x as u32, s as u8));
                        right.extend(std::iter::repeat_n(NONE, rank));
                        y
                    }
                    None => {
                        truncated = true;
                        continue;
                    }
                };
                right[x * rank + s] = y;
                right[y as usize * rank + s] = x as u32;
            }
        }

        let count = lengths.len();
        let mut words: Vec<Box<[u8]>> = Vec::with_capacity(count);
        words.push(Box::new([]));
        for &(p, s) in &parents[1..] {
            let mut w = words[p as usize].to_vec();
            w.push(s);
            words.push(w.into());
        }

        let mut sys = Self {
            labels: (1..=rank).map(|i| format!("s{i}")).collect(),
            matrix,
            cap,
            complete: !truncated,
            lengths,
            words,
            right,
            left: vec![NONE; count * rank],
            inverses: vec![NONE; count],
            reflections: Vec::new(),
            reflection_pos: vec![NONE; count],
            keys: truncated.then_some(KeyIndex { rep, by_id, lookup }),
        };
        sys.fill_left_and_inverse(&parents)?;
        sys.index_reflections();
        Ok(sys)
    }

    fn fill_left_and_inverse(&mut self, parents: &[(u32, u8)]) -> Result<()> {
        let rank = self.rank();
        self.inverses[0] = 0;
        for s in 0..rank {
            self.left[s] = self.right[s];
        }
        for (x, &(p, a)) in parents.iter().enumerate().skip(1) {
            for s in 0..rank {
                let sp = self.left[p as usize * rank + s];
                let mut sx = if sp == NONE {
                    NONE
                } else {
                    self.right[sp as usize * rank + a as usize]
                };
                if sx == NONE {
                    sx = self.key_left_mul(s, x)?;
                }
                self.left[x * rank + s] = sx;
            }
            let ip = self.inverses[p as usize];
            let mut inv = if ip == NONE {
                NONE
            } else {
                self.left[ip as usize * rank + a as usize]
            };
            if inv == NONE {
                inv = self.key_inverse(x)?;
            }
            self.inverses[x] = inv;
        }
        Ok(())
    }

    /// `s·x` through the exact keys; only reachable on truncated systems.
    fn key_left_mul(&self, s: usize, x: usize) -> Result<u32> {
        let Some(keys) = &self.keys else {
            return Ok(NONE);
        };
        // key(s x) = x⁻¹ (s f₀); x⁻¹ applies the letters of x front to back
        let mut form = keys.rep.act(s, &keys.by_id[0])?;
        for &a in self.words[x].iter() {
            form = keys.rep.act(a as usize, &form)?;
        }
        Ok(keys.find(&form).unwrap_or(NONE))
    }

    fn key_inverse(&self, x: usize) -> Result<u32> {
        let Some(keys) = &self.keys else {
            return Ok(NONE);
        };
        let mut form = keys.by_id[0].to_vec();
        for &a in self.words[x].iter().rev() {
            form = keys.rep.act(a as usize, &form)?;
        }
        Ok(keys.find(&form).unwrap_or(NONE))
    }

    /// Closure of `S` under conjugation by generators, restricted to the
    /// enumerated region.
    fn index_reflections(&mut self) {
        let rank = self.rank();
        let mut seen = vec![false; self.order()];
        let mut queue: Vec<u32> = Vec::new();
        for s in 0..rank {
            let g = self.right[s];
            if g != NONE && !seen[g as usize] {
                seen[g as usize] = true;
                queue.push(g);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let t = queue[i] as usize;
            i += 1;
            for s in 0..rank {
                let ts = self.right[t * rank + s];
                if ts == NONE {
                    continue;
                }
                let sts = self.left[ts as usize * rank + s];
                if sts != NONE && !seen[sts as usize] {
                    seen[sts as usize] = true;
                    queue.push(sts);
                }
            }
        }
        queue.sort_unstable();
        for (pos, &t) in queue.iter().enumerate() {
            self.reflection_pos[t as usize] = pos as u32;
        }
        self.reflections = queue.into_iter().map(Element).collect();
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.matrix.bond(s, t)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Whether the whole group was enumerated (its order is at most the cap).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of enumerated elements; the group order when complete.
    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn generator(&self, s: usize) -> Result<Element> {
        if s >= self.rank() {
            return Err(Error::InvalidGenerator(s));
        }
        Ok(Element(self.right[s]))
    }

    pub fn generators(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.rank()).map(|s| Element(self.right[s]))
    }

    /// All enumerated elements in ShortLex order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        (0..self.order() as u32).map(Element)
    }

    pub fn element(&self, id: usize) -> Option<Element> {
        (id < self.order()).then_some(Element(id as u32))
    }

    pub fn length(&self, w: Element) -> usize {
        self.lengths[w.id()] as usize
    }

    /// Canonical (ShortLex-least reduced) word, as 0-based generator indices.
    pub fn word(&self, w: Element) -> &[u8] {
        &self.words[w.id()]
    }

    /// `w·s`, or `None` when it lies outside the enumerated region.
    pub fn right_mul(&self, w: Element, s: usize) -> Option<Element> {
        let v = self.right[w.id() * self.rank() + s];
        (v != NONE).then_some(Element(v))
    }

    /// `s·w`, or `None` when it lies outside the enumerated region.
    pub fn left_mul(&self, s: usize, w: Element) -> Option<Element> {
        let v = self.left[w.id() * self.rank() + s];
        (v != NONE).then_some(Element(v))
    }

    /// Evaluates a word over 0-based generator indices.
    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        if let Some(&bad) = word.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::InvalidGenerator(bad));
        }
        word.iter().try_fold(Element::IDENTITY, |w, &s| {
            self.right_mul(w, s).ok_or(Error::OutOfEnumeratedRegion)
        })
    }

    pub fn multiply(&self, u: Element, v: Element) -> Result<Element> {
        self.word(v).iter().try_fold(u, |w, &s| {
            self.right_mul(w, s as usize).ok_or(Error::OutOfEnumeratedRegion)
        })
    }

    pub fn inverse(&self, w: Element) -> Result<Element> {
        let v = self.inverses[w.id()];
        if v == NONE {
            Err(Error::OutOfEnumeratedRegion)
        } else {
            Ok(Element(v))
        }
    }

    /// `y⁻¹ t y`.
    pub fn conjugate(&self, t: Element, y: Element) -> Result<Element> {
        let yi = self.inverse(y)?;
        self.multiply(self.multiply(yi, t)?, y)
    }

    /// Generators `s` with `ℓ(ws) < ℓ(w)` (right) or `ℓ(sw) < ℓ(w)` (left).
    ///
    /// Descents always lie inside the enumerated region, so this is exact
    /// even at the boundary of a truncated ball.
    pub fn descents(&self, w: Element, side: Side) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| self.has_descent(w, s, side))
            .collect()
    }

    pub fn has_descent(&self, w: Element, s: usize, side: Side) -> bool {
        let v = match side {
            Side::Right => self.right_mul(w, s),
            Side::Left => self.left_mul(s, w),
        };
        v.is_some_and(|v| self.length(v) < self.length(w))
    }

    /// Space-separated 1-based indices, `e` for the identity.
    pub fn format_word(&self, w: Element) -> String {
        if w == Element::IDENTITY {
            return "e".into();
        }
        self.word(w)
            .iter()
            .map(|s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Digit-string notation (`42312342`) when every index is a single digit,
    /// otherwise the space-separated form.
    pub fn compact_word(&self, w: Element) -> String {
        if self.rank() > 9 {
            return self.format_word(w);
        }
        if w == Element::IDENTITY {
            return "e".into();
        }
        self.word(w).iter().map(|s| char::from(b'1' + s)).collect()
    }

    /// Parses a word given as space-separated 1-based indices, or as a digit
    /// string when the rank is at most 9. `e` and the empty string denote the
    /// identity. Returns 0-based indices.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, WordParseError> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let mut word = Vec::new();
        let compact = self.rank() <= 9;
        for token in tokens {
            if compact && token.len() > 1 && token.bytes().all(|b| b.is_ascii_digit()) {
                for b in token.bytes() {
                    word.push(self.parse_index(&char::from(b).to_string())?);
                }
            } else {
                word.push(self.parse_index(token)?);
            }
        }
        Ok(word)
    }

    fn parse_index(&self, token: &str) -> Result<usize, WordParseError> {
        let i: usize = token
            .parse()
            .map_err(|_| WordParseError(format!("not a generator index: {token:?}")))?;
        if i == 0 || i > self.rank() {
            return Err(WordParseError(format!(
                "generator index {i} out of range 1..={}",
                self.rank()
            )));
        }
        Ok(i - 1)
    }
}

/// An element word that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid element word: {0}")]
pub struct WordParseError(pub String);
