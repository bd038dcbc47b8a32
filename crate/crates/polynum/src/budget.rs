//! Enumeration budgets.
//!
//! Point enumeration and shelling search are exponential in the worst case,
//! so every long-running loop charges a meter and aborts with a budget
//! error instead of hanging. Budgets come from `POLYNUM_BUDGET`: either a
//! single integer applied to every cap, or a comma list like
//! `points=2000000,shelling=500000`.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap on enumerated points or chains per sequence evaluation.
    pub max_points: u64,
    /// Cap on node expansions in the shelling backtracker.
    pub max_shelling_expansions: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_points: 5_000_000,
            max_shelling_expansions: 1_000_000,
        }
    }
}

impl Budget {
    pub fn parse(text: Option<&str>) -> Result<Budget> {
        let mut b = Budget::default();
        let Some(text) = text else { return Ok(b) };
        let text = text.trim();
        if text.is_empty() {
            return Ok(b);
        }
        if let Ok(n) = text.parse::<u64>() {
            b.max_points = n;
            b.max_shelling_expansions = n;
            return Ok(b);
        }
        for part in text.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget item `{part}`")))?;
            let n: u64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("budget value `{val}`")))?;
            match key.trim() {
                "points" => b.max_points = n,
                "shelling" => b.max_shelling_expansions = n,
                other => {
                    return Err(Error::Parse(format!("budget key `{other}`")))
                }
            }
        }
        Ok(b)
    }

    pub fn from_env() -> Result<Budget> {
        Budget::parse(std::env::var("POLYNUM_BUDGET").ok().as_deref())
    }

    pub fn points_meter(&self) -> Meter {
        Meter::new(self.max_points, "point enumeration")
    }

    pub fn shelling_meter(&self) -> Meter {
        Meter::new(self.max_shelling_expansions, "shelling search")
    }
}

/// Counts work against a cap.
#[derive(Debug)]
pub struct Meter {
    used: u64,
    cap: u64,
    what: &'static str,
}

impl Meter {
    pub fn new(cap: u64, what: &'static str) -> Meter {
        Meter { used: 0, cap, what }
    }

    pub fn tick(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(Error::Budget(format!(
                "{} exceeded {} steps",
                self.what, self.cap
            )))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
