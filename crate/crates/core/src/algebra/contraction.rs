use std::sync::Arc;

use crate::scalars::GaussianRational;

/// A two-point pairing `<a_m a_n>` defining a star product.
///
/// The pairing is a total function; index pairs a kernel does not support
/// simply return zero. The value is the coefficient of ħ contributed by
/// contracting a generator `a_m` taken from the *left* factor against `a_n`
/// from the *right* factor.
#[derive(Clone)]
pub struct ContractionKernel {
    label: String,
    pairing: Arc<dyn Fn(i64, i64) -> GaussianRational + Send + Sync>,
    support: Arc<dyn Fn(i64, i64) -> bool + Send + Sync>,
}

impl ContractionKernel {
    pub fn from_fn<F>(label: impl Into<String>, pairing: F) -> Self
    where
        F: Fn(i64, i64) -> GaussianRational + Send + Sync + Clone + 'static,
    {
        let probe = pairing.clone();
        ContractionKernel {
            label: label.into(),
            pairing: Arc::new(pairing),
            support: Arc::new(move |m, n| !probe(m, n).is_zero()),
        }
    }

    /// The cylinder-vacuum kernel: `pairing(m, n) = m θ(m) δ_{m+n,0}` with
    /// `θ(m) = 1` for `m > 0` and `0` otherwise.
    pub fn cylinder_vacuum() -> Self {
        ContractionKernel {
            label: "cylinder-vacuum".to_string(),
            pairing: Arc::new(|m, n| {
                if m > 0 && m + n == 0 {
                    GaussianRational::from_int(m)
                } else {
                    GaussianRational::zero()
                }
            }),
            // allocation-free prune for the hot enumeration path
            support: Arc::new(|m, n| m > 0 && m + n == 0),
        }
    }

    /// A symmetric pairing supported on finitely many index pairs; entries
    /// are stored under both orientations. These model the smooth
    /// state-difference kernels relating different orderings.
    pub fn symmetric_from_pairs(
        label: impl Into<String>,
        entries: &[((i64, i64), GaussianRational)],
    ) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for ((m, n), value) in entries {
            map.insert((*m, *n), value.clone());
            map.insert((*n, *m), value.clone());
        }
        let support: std::collections::BTreeSet<(i64, i64)> = map.keys().cloned().collect();
        ContractionKernel {
            label: label.into(),
            pairing: Arc::new(move |m, n| {
                map.get(&(m, n)).cloned().unwrap_or_else(GaussianRational::zero)
            }),
            support: Arc::new(move |m, n| support.contains(&(m, n))),
        }
    }

    /// Pointwise sum of two pairings (the shifted-kernel construction).
    pub fn sum(a: &ContractionKernel, b: &ContractionKernel) -> Self {
        let label = format!("{}+{}", a.label, b.label);
        let (pa, pb) = (a.pairing.clone(), b.pairing.clone());
        let (sa, sb) = (a.support.clone(), b.support.clone());
        ContractionKernel {
            label,
            pairing: Arc::new(move |m, n| &pa(m, n) + &pb(m, n)),
            // over-approximation of the support; exact zeros of the sum are
            // pruned later by coefficient arithmetic
            support: Arc::new(move |m, n| sa(m, n) || sb(m, n)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn pairing(&self, m: i64, n: i64) -> GaussianRational {
        (self.pairing)(m, n)
    }

    /// Fast test used to prune the Wick enumeration before any arbitrary
    /// precision arithmetic is done.
    pub fn pairs(&self, m: i64, n: i64) -> bool {
        (self.support)(m, n)
    }
}

impl std::fmt::Debug for ContractionKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ContractionKernel({})", self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_vacuum_values() {
        let k = ContractionKernel::cylinder_vacuum();
        assert_eq!(k.pairing(1, -1), GaussianRational::from_int(1));
        assert_eq!(k.pairing(3, -3), GaussianRational::from_int(3));
        assert!(k.pairing(-1, 1).is_zero());
        assert!(k.pairing(0, 0).is_zero());
        assert!(k.pairing(2, -3).is_zero());
    }
}
