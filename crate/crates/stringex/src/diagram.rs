//! String diagrams of shuffle words: one signed node per triangle, placed on
//! the level of its letter; consecutive nodes on a level bound the closed
//! strings that index the exchange matrix.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::word::{Origin, ShuffleWord};
use crate::{Error, Result};

/// A node of the string diagram.
///
/// `epsilon` is `+1` for a bottom-labeled triangle and `-1` for a
/// top-labeled one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Node {
    pub triangle_pos: usize,
    pub level: usize,
    pub epsilon: i64,
}

/// Label of a closed string: its level and its 1-based left-to-right rank on
/// that level. Rendered as `level:index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedStringId {
    pub level: usize,
    pub index: usize,
}

impl ClosedStringId {
    pub fn new(level: usize, index: usize) -> Self {
        ClosedStringId { level, index }
    }
}

impl fmt::Display for ClosedStringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.index)
    }
}

impl FromStr for ClosedStringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |part: &str| -> Option<usize> {
            let v = part.parse().ok()?;
            (v >= 1).then_some(v)
        };
        let (lv, ix) = s
            .split_once(':')
            .and_then(|(a, b)| Some((parse(a)?, parse(b)?)))
            .ok_or_else(|| {
                Error::InvalidInstance(format!(
                    "closed-string label {s:?}, expected \"level:index\" with positive integers"
                ))
            })?;
        Ok(ClosedStringId::new(lv, ix))
    }
}

impl Serialize for ClosedStringId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClosedStringId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// A closed string together with the triangle positions of its two endpoint
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedString {
    pub id: ClosedStringId,
    pub left_pos: usize,
    pub right_pos: usize,
}

/// The string diagram of a shuffle word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringDiagram {
    word: ShuffleWord,
    nodes_by_level: Vec<Vec<Node>>,
    closed_strings: Vec<ClosedString>,
}

/// Builds the string diagram: node `t` sits on the level of the word's
/// `t`-th letter with sign from its origin; the closed strings on each level
/// join consecutive nodes, enumerated left to right.
pub fn build_diagram(word: &ShuffleWord) -> StringDiagram {
    let n = word.cartan().n();
    let mut nodes_by_level: Vec<Vec<Node>> = vec![Vec::new(); n];
    for (idx, letter) in word.letters().iter().enumerate() {
        let epsilon = match letter.origin {
            Origin::Bottom => 1,
            Origin::Top => -1,
        };
        nodes_by_level[letter.value - 1].push(Node {
            triangle_pos: idx + 1,
            level: letter.value,
            epsilon,
        });
    }
    let mut closed_strings = Vec::new();
    for (lv, nodes) in nodes_by_level.iter().enumerate() {
        for (i, pair) in nodes.windows(2).enumerate() {
            closed_strings.push(ClosedString {
                id: ClosedStringId::new(lv + 1, i + 1),
                left_pos: pair[0].triangle_pos,
                right_pos: pair[1].triangle_pos,
            });
        }
    }
    StringDiagram {
        word: word.clone(),
        nodes_by_level,
        closed_strings,
    }
}

impl StringDiagram {
    pub fn word(&self) -> &ShuffleWord {
        &self.word
    }

    /// Nodes on `level` (1-based), left to right.
    pub fn nodes_on_level(&self, level: usize) -> &[Node] {
        &self.nodes_by_level[level - 1]
    }

    /// All nodes in triangle order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut all: Vec<Node> = self.nodes_by_level.iter().flatten().copied().collect();
        all.sort_by_key(|n| n.triangle_pos);
        all
    }

    /// The closed strings in the `⪯` order (level first, then rank).
    pub fn closed_strings(&self) -> &[ClosedString] {
        &self.closed_strings
    }

    /// The ordered label set `I`.
    pub fn labels(&self) -> Vec<ClosedStringId> {
        self.closed_strings.iter().map(|s| s.id).collect()
    }

    /// Number of closed strings on `level`.
    pub fn closed_count_on_level(&self, level: usize) -> usize {
        self.nodes_by_level[level - 1].len().saturating_sub(1)
    }

    pub fn string(&self, id: ClosedStringId) -> Result<&ClosedString> {
        self.closed_strings
            .iter()
            .find(|s| s.id == id)
            .ok_or(Error::UnknownString(id))
    }

    /// True when closed string `z` intersects triangle `t` transversely:
    /// `t` lies strictly between the endpoint triangles of `z`.
    pub fn crosses(&self, z: ClosedStringId, t: usize) -> Result<bool> {
        if t < 1 || t > self.word.len() {
            return Err(Error::PositionOutOfRange {
                pos: t,
                max: self.word.len(),
            });
        }
        let s = self.string(z)?;
        Ok(s.left_pos < t && t < s.right_pos)
    }

    /// The strings on the node's level that end at it from the left and
    /// start at it to the right, when closed.
    pub fn flanking_strings(&self, node: &Node) -> (Option<ClosedStringId>, Option<ClosedStringId>) {
        let nodes = self.nodes_on_level(node.level);
        let rank = nodes
            .iter()
            .position(|m| m.triangle_pos == node.triangle_pos)
            .expect("node belongs to this diagram")
            + 1;
        let left = (rank >= 2).then(|| ClosedStringId::new(node.level, rank - 1));
        let right = (rank < nodes.len()).then(|| ClosedStringId::new(node.level, rank));
        (left, right)
    }

    /// ASCII rendering: one row per level, node glyphs `(+k)`/`(-k)` in the
    /// cell of their triangle, dots elsewhere. Stable across releases.
    pub fn render(&self) -> String {
        let n = self.word.cartan().n();
        let width = 3 + n.to_string().len();
        let mut out = String::new();
        for level in 1..=n {
            let mut row = vec![".".repeat(width); self.word.len()];
            for node in self.nodes_on_level(level) {
                let sign = if node.epsilon > 0 { '+' } else { '-' };
                let mut glyph = format!("({sign}{level})");
                while glyph.len() < width {
                    glyph.push('.');
                }
                row[node.triangle_pos - 1] = glyph;
            }
            out.push_str(&format!("level {level}: {}\n", row.concat()));
        }
        out
    }
}
