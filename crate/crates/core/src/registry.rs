//! Name-keyed registries of interchangeable strategies.

use std::collections::BTreeMap;

use crate::error::{arg_err, Result};

pub trait Named {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: BTreeMap::new() }
    }
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn register(&mut self, entry: Box<T>) {
        self.entries.insert(entry.name(), entry);
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.get(name).map(|b| &**b).ok_or_else(|| {
            arg_err!("unknown name {name:?}; known: {}", self.names().collect::<Vec<_>>().join(", "))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.values().map(|b| &**b)
    }
}
