use crate::error::{Error, Result};

/// Default ceiling on the estimated number of elementary set visits an
/// exhaustive scan may perform before it is refused.
pub const DEFAULT_MAX_WORK: u128 = 100_000_000;

/// Upper bound on exhaustive work, overridable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkLimit(pub u128);

impl WorkLimit {
    pub const fn unlimited() -> Self {
        WorkLimit(u128::MAX)
    }

    pub fn check(self, estimate: u128) -> Result<()> {
        if estimate > self.0 {
            Err(Error::WorkLimitExceeded {
                estimate,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit(DEFAULT_MAX_WORK)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(35, 5), 324_632);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn limit() {
        assert!(WorkLimit::default().check(100_000_000).is_ok());
        assert!(WorkLimit::default().check(100_000_001).is_err());
        assert!(WorkLimit::unlimited().check(u128::MAX).is_ok());
    }
}
