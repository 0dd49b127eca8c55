//! Named groups of criteria with a deterministic JSON report.

use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::criteria::{run_criterion, CriterionOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Inclusions,
    Constants,
    Semigroup,
    Green,
    Measures,
    Capacity,
    All,
}

impl Suite {
    pub const NAMES: &'static [&'static str] = &["inclusions", "constants", "semigroup", "green", "measures", "capacity", "all"];

    pub fn criteria(&self) -> &'static [u8] {
        match self {
            Suite::Inclusions => &[1, 2, 3, 10],
            Suite::Constants => &[4],
            Suite::Semigroup => &[8],
            Suite::Green => &[7],
            Suite::Measures => &[5, 6],
            Suite::Capacity => &[9],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "inclusions" => Suite::Inclusions,
            "constants" => Suite::Constants,
            "semigroup" => Suite::Semigroup,
            "green" => Suite::Green,
            "measures" => Suite::Measures,
            "capacity" => Suite::Capacity,
            "all" => Suite::All,
            _ => {
                return Err(Error::Argument(format!(
                    "unknown suite '{s}', expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub criteria: Vec<CriterionOutcome>,
    pub violations: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json() + "\n")?)
    }
}

/// Criteria run in parallel and are merged in id order.
pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let criteria = suite
        .criteria()
        .par_iter()
        .map(|id| run_criterion(*id, seed))
        .collect::<Result<Vec<_>>>()?;
    let violations = criteria.iter().filter(|c| !c.passed).count();
    Ok(SuiteReport {
        suite,
        seed,
        criteria,
        violations,
    })
}
