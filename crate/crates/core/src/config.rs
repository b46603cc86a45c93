use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits applied by the expensive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest group order accepted by any constructor.
    pub max_order: u64,
    /// Largest permutation degree.
    pub max_degree: usize,
    /// Largest number of subgroups an enumeration may produce.
    pub max_subgroups: usize,
    /// Largest group order for which subgroup lattices are enumerated.
    pub max_lattice_order: u64,
    /// Largest group order whose elements may be listed.
    pub max_enumeration: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_order: 1_000_000,
            max_degree: 10_000,
            max_subgroups: 100_000,
            max_lattice_order: 2_000,
            max_enumeration: 1_000_000,
        }
    }
}

impl Guards {
    pub fn check_order(&self, order: u64) -> Result<()> {
        if order > self.max_order {
            return Err(Error::guard("group order", self.max_order, order));
        }
        Ok(())
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::guard(
                "degree",
                self.max_degree as u64,
                degree as u64,
            ));
        }
        Ok(())
    }

    pub fn check_lattice(&self, order: u64) -> Result<()> {
        if order > self.max_lattice_order {
            return Err(Error::guard(
                "order for subgroup enumeration",
                self.max_lattice_order,
                order,
            ));
        }
        Ok(())
    }

    pub fn check_enumeration(&self, order: u64) -> Result<()> {
        if order > self.max_enumeration {
            return Err(Error::guard(
                "order for element enumeration",
                self.max_enumeration,
                order,
            ));
        }
        Ok(())
    }
}
