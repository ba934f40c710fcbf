use core::fmt;

use crate::error::{Error, Result};

/// A rational prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Selects one of the two embeddings of ℚ(√d): `Sigma` sends √d to the
/// principal root, `Tau` to its negative.
///
/// At a split prime `p` the principal root is the `p`-adic square root of
/// `d` whose residue is the smaller representative in `1..p` (for `p = 2`,
/// the root congruent to 1 mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Embedding {
    #[default]
    Sigma,
    Tau,
}

impl Embedding {
    pub fn sign(self) -> i8 {
        match self {
            Embedding::Sigma => 1,
            Embedding::Tau => -1,
        }
    }
}

/// A place of ℚ, optionally refined by an embedding selector for quadratic
/// scalars. Rationals ignore the selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Archimedean { embedding: Option<Embedding> },
    Finite { p: Prime, embedding: Option<Embedding> },
}

impl Place {
    pub fn arch() -> Self {
        Place::Archimedean { embedding: None }
    }

    pub fn finite(p: u64) -> Result<Self> {
        Ok(Place::Finite { p: Prime::new(p)?, embedding: None })
    }

    pub fn with_embedding(self, e: Embedding) -> Self {
        match self {
            Place::Archimedean { .. } => Place::Archimedean { embedding: Some(e) },
            Place::Finite { p, .. } => Place::Finite { p, embedding: Some(e) },
        }
    }

    pub fn embedding(&self) -> Embedding {
        match self {
            Place::Archimedean { embedding } | Place::Finite { embedding, .. } => {
                embedding.unwrap_or_default()
            }
        }
    }

    pub fn prime(&self) -> Option<Prime> {
        match self {
            Place::Finite { p, .. } => Some(*p),
            Place::Archimedean { .. } => None,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean { .. })
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean { embedding: None } => write!(f, "arch"),
            Place::Archimedean { embedding: Some(e) } => write!(f, "arch/{e:?}"),
            Place::Finite { p, embedding: None } => write!(f, "{p}"),
            Place::Finite { p, embedding: Some(e) } => write!(f, "{p}/{e:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(91), Err(Error::NotPrime(91)));
    }
}
