use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The five exceptional compact simply connected Lie groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Group {
    pub const ALL: [Group; 5] = [Group::G2, Group::F4, Group::E6, Group::E7, Group::E8];

    pub fn name(self) -> &'static str {
        match self {
            Group::G2 => "G2",
            Group::F4 => "F4",
            Group::E6 => "E6",
            Group::E7 => "E7",
            Group::E8 => "E8",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> Result<Group, String> {
        Group::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown group '{s}' (expected one of G2, F4, E6, E7, E8)"))
    }
}
