use std::fmt;

/// A product of mode generators, stored as a multiset of integer subscripts
/// in nondecreasing order.
///
/// Canonical ordering is maintained by construction, so two monomials are
/// equal iff their index multisets are equal, and the derived lexicographic
/// `Ord` is a stable total order for use as a map key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeMonomial {
    indices: Vec<i64>,
}

impl ModeMonomial {
    pub fn new(mut indices: Vec<i64>) -> Self {
        indices.sort_unstable();
        ModeMonomial { indices }
    }

    /// The empty product (the unit of the classical algebra).
    pub fn unit() -> Self {
        ModeMonomial {
            indices: Vec::new(),
        }
    }

    pub fn generator(n: i64) -> Self {
        ModeMonomial { indices: vec![n] }
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Multiset union with another monomial.
    pub fn merge(&self, other: &ModeMonomial) -> ModeMonomial {
        let mut out = Vec::with_capacity(self.indices.len() + other.indices.len());
        out.extend_from_slice(&self.indices);
        out.extend_from_slice(&other.indices);
        ModeMonomial::new(out)
    }

    /// Copy with the slot at `pos` removed.
    pub fn without_slot(&self, pos: usize) -> ModeMonomial {
        let mut out = self.indices.clone();
        out.remove(pos);
        // removing one element of a sorted vec keeps it sorted
        ModeMonomial { indices: out }
    }

    /// Largest absolute value among the indices; zero for the unit.
    pub fn max_abs_index(&self) -> i64 {
        self.indices.iter().map(|k| k.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for ModeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices.iter().map(|k| format!("a[{k}]")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for ModeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_maintained() {
        let m = ModeMonomial::new(vec![3, -1, 2, -1]);
        assert_eq!(m.indices(), &[-1, -1, 2, 3]);
        assert_eq!(m, ModeMonomial::new(vec![-1, 2, -1, 3]));
    }

    #[test]
    fn merge_is_multiset_union() {
        let a = ModeMonomial::new(vec![1, -2]);
        let b = ModeMonomial::new(vec![1]);
        assert_eq!(a.merge(&b).indices(), &[-2, 1, 1]);
    }

    #[test]
    fn slot_removal_keeps_order() {
        let m = ModeMonomial::new(vec![-3, 0, 5]);
        assert_eq!(m.without_slot(1).indices(), &[-3, 5]);
    }
}
