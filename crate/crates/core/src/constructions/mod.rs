//! The odd, power-of-two and mixed field constructions.

pub mod arith;
mod mixed;
mod odd;
mod power_two;

use serde::Serialize;

pub use mixed::MixedConstruction;
pub use odd::{AlphaIdentities, OddConstruction, UnitConditionReport};
pub use power_two::{PowerTwoConstruction, TAU_EXPONENT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Odd,
    PowerTwo,
    Mixed,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Odd => "odd",
            Family::PowerTwo => "power_two",
            Family::Mixed => "mixed",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Any of the three constructions.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Construction {
    Odd(OddConstruction),
    PowerTwo(PowerTwoConstruction),
    Mixed(MixedConstruction),
}

impl Construction {
    pub fn family(&self) -> Family {
        match self {
            Construction::Odd(_) => Family::Odd,
            Construction::PowerTwo(_) => Family::PowerTwo,
            Construction::Mixed(_) => Family::Mixed,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Construction::Odd(c) => c.n,
            Construction::PowerTwo(c) => c.k,
            Construction::Mixed(c) => c.n,
        }
    }

    /// The odd construction underlying an odd or mixed build.
    pub fn odd_part(&self) -> Option<&OddConstruction> {
        match self {
            Construction::Odd(c) => Some(c),
            Construction::Mixed(c) => Some(&c.odd),
            Construction::PowerTwo(_) => None,
        }
    }
}
