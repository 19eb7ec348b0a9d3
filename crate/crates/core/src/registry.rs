//! Registry of host-evaluable function symbols.
//!
//! Function symbols cover both added recursive functions and the free
//! function variables that the no-counterexample scenario instantiates with
//! opponent functions. Every registered function is total and deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

pub type HostFn = Rc<dyn Fn(&[u64]) -> u64>;

#[derive(Clone, Default)]
pub struct FunctionRegistry {
    entries: BTreeMap<String, (usize, HostFn)>,
}

impl fmt::Debug for FunctionRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(name, (arity, _))| (name, arity)))
            .finish()
    }
}

impl FunctionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        f: impl Fn(&[u64]) -> u64 + 'static,
    ) {
        self.entries.insert(name.into(), (arity, Rc::new(f)));
    }

    pub fn register_host(&mut self, name: impl Into<String>, arity: usize, f: HostFn) {
        self.entries.insert(name.into(), (arity, f));
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.entries.get(name).map(|(k, _)| *k)
    }

    pub fn call(&self, name: &str, args: &[u64]) -> Option<u64> {
        let (arity, f) = self.entries.get(name)?;
        if *arity != args.len() {
            return None;
        }
        Some(f(args))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registers_and_calls() {
        let mut reg = FunctionRegistry::new();
        reg.register("double", 1, |args| args[0] * 2);
        assert_eq!(reg.arity("double"), Some(1));
        assert_eq!(reg.call("double", &[21]), Some(42));
        assert_eq!(reg.call("double", &[1, 2]), None);
        assert_eq!(reg.call("missing", &[]), None);
    }
}
