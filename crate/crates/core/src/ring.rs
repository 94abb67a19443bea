//! Ring descriptor: named variables over a prime field with a term order.
//!
//! Rings are immutable and shared via `Arc`; polynomials hold a reference so
//! binary operations can reject mixed-ring operands cheaply.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;
use std::collections::HashMap;
use std::sync::Arc;

pub type RingRef = Arc<Ring>;

#[derive(Debug)]
pub struct Ring {
    names: Vec<String>,
    index: HashMap<String, usize>,
    order: MonomialOrder,
    field: PrimeField,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.order == other.order && self.field == other.field
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        order: MonomialOrder,
        field: PrimeField,
    ) -> Result<RingRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Unsupported("a ring needs at least one variable".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || !n.chars().next().unwrap().is_ascii_alphabetic()
                || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Unsupported(format!("bad variable name `{n}`")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Unsupported(format!("duplicate variable `{n}`")));
            }
        }
        if let MonomialOrder::Elimination { split } = order {
            if split == 0 || split >= names.len() {
                return Err(Error::Unsupported(format!(
                    "elimination split {split} outside 1..{}",
                    names.len()
                )));
            }
        }
        Ok(Arc::new(Ring {
            names,
            index,
            order,
            field,
        }))
    }

    /// Degrevlex ring with the given names, the common case.
    pub fn degrevlex<S: Into<String>>(names: Vec<S>, p: u32) -> Result<RingRef> {
        Ring::new(names, MonomialOrder::DegRevLex, PrimeField::new(p)?)
    }

    /// Degrevlex ring z0..z{n-1}.
    pub fn standard(prefix: &str, arity: usize, p: u32) -> Result<RingRef> {
        let names: Vec<String> = (0..arity).map(|i| format!("{prefix}{i}")).collect();
        Ring::degrevlex(names, p)
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn describe(&self) -> String {
        format!(
            "F_{}[{}]/{:?}",
            self.field.modulus(),
            self.names.join(","),
            self.order
        )
    }

    /// Same variables and field, different order. Used by the elimination
    /// machinery, which reorders variables into blocks.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        Ring::new(self.names.clone(), order, self.field)
    }
}

/// Check two polynomials' rings agree; returns the shared ring.
pub fn same_ring<'a>(a: &'a RingRef, b: &RingRef) -> Result<&'a RingRef> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(a)
    } else {
        Err(Error::RingMismatch {
            left: a.describe(),
            right: b.describe(),
        })
    }
}
