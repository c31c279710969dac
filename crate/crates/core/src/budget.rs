use crate::error::{Error, Result};

/// Default number of candidate maps an enumeration may inspect.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Upper bound on the size of any exhaustive enumeration.
///
/// Every enumeration states its candidate count up front and fails with
/// [`Error::Budget`] instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn limit(self) -> u64 {
        self.0
    }

    pub fn check(self, what: impl Into<String>, required: u128) -> Result<()> {
        if required > u128::from(self.0) {
            Err(Error::Budget {
                what: what.into(),
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == 0 {
            return 0;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_saturates() {
        assert_eq!(power(2, 10), 1024);
        assert_eq!(power(0, 0), 1);
        assert_eq!(power(0, 3), 0);
        assert_eq!(power(1000, 100), u128::MAX);
    }

    #[test]
    fn budget_reports_bound() {
        let err = Budget(10).check("maps", 11).unwrap_err();
        assert_eq!(
            err,
            Error::Budget {
                what: "maps".into(),
                required: 11,
                budget: 10
            }
        );
        assert!(Budget(10).check("maps", 10).is_ok());
    }
}
