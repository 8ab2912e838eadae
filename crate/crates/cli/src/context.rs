//! A registry of named finite sets, built from `--sets` preload files and
//! the `sets` arrays of parsed documents.

use std::collections::BTreeMap;

use bilens_core::FinSet;

use crate::{input_err, CliError};

#[derive(Default, Clone)]
pub struct SetContext {
    by_name: BTreeMap<String, FinSet>,
}

impl SetContext {
    pub fn new() -> Self {
        SetContext::default()
    }

    /// Register a set. Re-registering an identical definition is fine;
    /// clashing definitions under one name are rejected.
    pub fn add(&mut self, set: FinSet) -> Result<(), CliError> {
        if let Some(existing) = self.by_name.get(set.name()) {
            if *existing != set {
                return Err(input_err(format!(
                    "set {:?} defined twice with different elements",
                    set.name()
                )));
            }
            return Ok(());
        }
        self.by_name.insert(set.name().to_string(), set);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<FinSet, CliError> {
        self.by_name
            .get(name)
            .cloned()
            .ok_or_else(|| input_err(format!("unknown set {name:?}: not defined in any `sets` array or --sets file")))
    }
}
