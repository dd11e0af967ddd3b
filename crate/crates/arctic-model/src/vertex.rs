use serde::{Deserialize, Serialize};

use crate::ModelError;

/// Slot of a degree-4 vertex. Paths enter through `S` and `W` and leave
/// through `N` and `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_out(self) -> bool {
        matches!(self, Dir::N | Dir::E)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightClass {
    A,
    B,
    C,
}

/// The six admissible local patterns, thick meaning "carries a path".
///
/// * `W1` all thin, `W2` all thick
/// * `W3` path goes straight north, `W4` straight east
/// * `W5` path enters south and leaves east
/// * `W6` path enters west and leaves north
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
}

impl VertexType {
    pub const ALL: [VertexType; 6] =
        [VertexType::W1, VertexType::W2, VertexType::W3, VertexType::W4, VertexType::W5, VertexType::W6];

    /// Classify from thicknesses in slot order N, E, S, W.
    pub fn classify(n: bool, e: bool, s: bool, w: bool) -> Result<VertexType, ModelError> {
        use VertexType::*;
        Ok(match (n, e, s, w) {
            (false, false, false, false) => W1,
            (true, true, true, true) => W2,
            (true, false, true, false) => W3,
            (false, true, false, true) => W4,
            (false, true, true, false) => W5,
            (true, false, false, true) => W6,
            _ => return Err(ModelError::InvalidLocalPattern { pattern: [n, e, s, w] }),
        })
    }

    /// Thicknesses in slot order N, E, S, W.
    pub fn pattern(self) -> [bool; 4] {
        use VertexType::*;
        match self {
            W1 => [false, false, false, false],
            W2 => [true, true, true, true],
            W3 => [true, false, true, false],
            W4 => [false, true, false, true],
            W5 => [false, true, true, false],
            W6 => [true, false, false, true],
        }
    }

    pub fn class(self) -> WeightClass {
        use VertexType::*;
        match self {
            W1 | W2 => WeightClass::A,
            W3 | W4 => WeightClass::B,
            W5 | W6 => WeightClass::C,
        }
    }

    /// Complementing all four edges, which a gauge move does locally.
    pub fn flipped(self) -> VertexType {
        use VertexType::*;
        match self {
            W1 => W2,
            W2 => W1,
            W3 => W4,
            W4 => W3,
            W5 => W6,
            W6 => W5,
        }
    }

    /// Entry of the associated alternating sign matrix.
    pub fn asm_entry(self) -> i8 {
        match self {
            VertexType::W6 => 1,
            VertexType::W5 => -1,
            _ => 0,
        }
    }
}
