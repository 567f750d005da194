use thiserror::Error;

use crate::algebra::Symbol;
use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no presentation catalogued for {group} over {coeff}")]
    UnknownPair { group: Group, coeff: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("catalog data for {group} failed validation: {reason}")]
    CorruptData { group: Group, reason: String },
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("element has degree zero")]
    DegreeZero,
    #[error("index set {set:?} is not contained in e({group},{prime})")]
    NotInE {
        group: Group,
        prime: u32,
        set: Vec<u32>,
    },
    #[error("tensor of degree {degree} is not in the mod {prime} image of the torsion ideal")]
    NotInTorsionImage { prime: u32, degree: u32 },
}

impl Error {
    pub fn unknown(s: &Symbol) -> Error {
        Error::UnknownGenerator(s.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
