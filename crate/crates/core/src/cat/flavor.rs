use serde::{Deserialize, Serialize};

/// One of the two copies of a generator in a 1-cell word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    S = 0,
    T = 1,
}

impl Side {
    pub const ALL: [Side; 2] = [Side::S, Side::T];

    pub fn tag(self) -> &'static str {
        match self {
            Side::S => "s",
            Side::T => "t",
        }
    }

    pub fn from_index(i: u32) -> Side {
        if i == 0 {
            Side::S
        } else {
            Side::T
        }
    }
}

/// One of the four copies of a generator in a 2-cell word, read as the pair
/// (source side, target side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    SS = 0,
    ST = 1,
    TS = 2,
    TT = 3,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::SS, Flavor::ST, Flavor::TS, Flavor::TT];

    pub fn from_sides(a: Side, b: Side) -> Flavor {
        match (a, b) {
            (Side::S, Side::S) => Flavor::SS,
            (Side::S, Side::T) => Flavor::ST,
            (Side::T, Side::S) => Flavor::TS,
            (Side::T, Side::T) => Flavor::TT,
        }
    }

    pub fn from_index(i: u32) -> Flavor {
        Flavor::ALL[(i & 3) as usize]
    }

    /// Side of the vertical source (`d0`).
    pub fn first(self) -> Side {
        match self {
            Flavor::SS | Flavor::ST => Side::S,
            Flavor::TS | Flavor::TT => Side::T,
        }
    }

    /// Side of the vertical target (`d1`).
    pub fn second(self) -> Side {
        match self {
            Flavor::SS | Flavor::TS => Side::S,
            Flavor::ST | Flavor::TT => Side::T,
        }
    }

    /// Side selected by `side`: the source component for `S`, target for `T`.
    pub fn component(self, side: Side) -> Side {
        match side {
            Side::S => self.first(),
            Side::T => self.second(),
        }
    }

    /// Vertical inverse: swap of the pair.
    pub fn swap(self) -> Flavor {
        Flavor::from_sides(self.second(), self.first())
    }

    pub fn diagonal(side: Side) -> Flavor {
        Flavor::from_sides(side, side)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Flavor::SS => "ss",
            Flavor::ST => "st",
            Flavor::TS => "ts",
            Flavor::TT => "tt",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        Flavor::ALL.into_iter().find(|f| f.tag() == s)
    }
}
