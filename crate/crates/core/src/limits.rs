use crate::error::{Error, Result};

/// Caps on exhaustive work. Exceeding one is an error, never an approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of assignments a single enumeration may visit.
    pub max_models: u64,
    /// Maximum knowledge-base size for exact subset search.
    pub max_kb: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_models: 1 << 22,
            max_kb: 20,
        }
    }
}

impl Limits {
    /// Fails unless `2^vars` assignments fit the model budget.
    pub fn check_vars(&self, vars: usize) -> Result<()> {
        if vars >= 64 || (1u64 << vars) > self.max_models {
            return Err(Error::ModelBudget {
                vars,
                cap: self.max_models,
            });
        }
        Ok(())
    }

    pub fn check_kb(&self, size: usize) -> Result<()> {
        if size > self.max_kb {
            return Err(Error::KbBudget {
                size,
                cap: self.max_kb,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_budget_boundary() {
        let l = Limits {
            max_models: 16,
            max_kb: 3,
        };
        assert!(l.check_vars(4).is_ok());
        assert!(l.check_vars(5).unwrap_err().is_budget());
        assert!(Limits::default().check_vars(64).is_err());
        assert!(l.check_kb(3).is_ok());
        assert!(l.check_kb(4).unwrap_err().is_budget());
    }
}
