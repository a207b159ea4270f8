use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::{AlgebraError, ContractionKernel, ModeMonomial};
use crate::functionals::ChiralConfig;
use crate::scalars::{GaussianRational, HbarSeries};

/// A polynomial in the mode generators with exact ħ-series coefficients.
///
/// Terms are keyed by canonical monomials; identically-zero coefficients are
/// never stored, so structural equality is semantic equality. All coefficient
/// series share one truncation order, fixed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ModePolynomial {
    trunc_order: usize,
    terms: BTreeMap<ModeMonomial, HbarSeries>,
}

impl ModePolynomial {
    pub fn zero(trunc_order: usize) -> Self {
        ModePolynomial {
            trunc_order,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(trunc_order: usize) -> Self {
        let mut p = Self::zero(trunc_order);
        p.add_term(ModeMonomial::unit(), HbarSeries::one(trunc_order));
        p
    }

    /// The generator `a_n`.
    pub fn generator(n: i64, trunc_order: usize) -> Self {
        let mut p = Self::zero(trunc_order);
        p.add_term(ModeMonomial::generator(n), HbarSeries::one(trunc_order));
        p
    }

    /// A bare scalar as a polynomial.
    pub fn scalar(c: HbarSeries) -> Self {
        let mut p = Self::zero(c.trunc_order());
        p.add_term(ModeMonomial::unit(), c);
        p
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModeMonomial, &HbarSeries)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &ModeMonomial) -> HbarSeries {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| HbarSeries::zero(self.trunc_order))
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(ModeMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Add `c` to the coefficient of `m`, pruning zeros.
    pub fn add_term(&mut self, m: ModeMonomial, c: HbarSeries) {
        assert_eq!(c.trunc_order(), self.trunc_order, "mixed truncation orders");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        ModePolynomial {
            trunc_order: self.trunc_order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_order);
        }
        ModePolynomial {
            trunc_order: self.trunc_order,
            terms: self
                .terms
                .iter()
                .map(|(m, s)| (m.clone(), s.scale(c)))
                .collect(),
        }
    }

    pub fn scale_series(&self, c: &HbarSeries) -> Self {
        let mut out = Self::zero(self.trunc_order);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s * c);
        }
        out
    }

    /// Commutative pointwise product: multiset union of monomials with exact
    /// coefficient products.
    pub fn classical_mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.trunc_order);
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                out.add_term(ml.merge(mr), cl * cr);
            }
        }
        out
    }

    /// The chiral Poisson bracket: the unique biderivation over the classical
    /// product extending `{a_n, a_m} = -i n δ_{n+m,0}`.
    pub fn chiral_bracket(&self, rhs: &Self) -> Self {
        let i_unit = GaussianRational::i();
        let mut out = Self::zero(self.trunc_order);
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                for (li, &lk) in ml.indices().iter().enumerate() {
                    if lk == 0 {
                        continue;
                    }
                    for (ri, &rk) in mr.indices().iter().enumerate() {
                        if lk + rk != 0 {
                            continue;
                        }
                        // {a_lk, a_rk} = -i lk
                        let factor = (-&i_unit).scale_int(lk);
                        let coeff = (cl * cr).scale(&factor);
                        out.add_term(ml.without_slot(li).merge(&mr.without_slot(ri)), coeff);
                    }
                }
            }
        }
        out
    }

    /// Star product by Wick pairings: the ħ^j term sums over all ways of
    /// contracting j generators of `self` against j generators of `rhs`, each
    /// contracted pair `(a_m, a_n)` contributing `ħ · pairing(m, n)`. The
    /// j = 0 term is the classical product.
    pub fn star_product(
        &self,
        rhs: &Self,
        kernel: &ContractionKernel,
    ) -> Result<Self, AlgebraError> {
        let needed = self.max_degree().min(rhs.max_degree());
        if needed > self.trunc_order {
            return Err(AlgebraError::TruncationOverflow {
                needed,
                available: self.trunc_order,
            });
        }
        let mut out = self.classical_mul(rhs);
        self.accumulate_contractions(rhs, kernel, &mut out, false);
        Ok(out)
    }

    /// `star_product(self, rhs) - star_product(rhs, self)`.
    ///
    /// The j = 0 terms are the commutative classical products and cancel
    /// identically, so only the contracted terms are accumulated.
    pub fn commutator(&self, rhs: &Self, kernel: &ContractionKernel) -> Result<Self, AlgebraError> {
        let needed = self.max_degree().min(rhs.max_degree());
        if needed > self.trunc_order {
            return Err(AlgebraError::TruncationOverflow {
                needed,
                available: self.trunc_order,
            });
        }
        let mut out = Self::zero(self.trunc_order);
        self.accumulate_contractions(rhs, kernel, &mut out, false);
        rhs.accumulate_contractions(self, kernel, &mut out, true);
        Ok(out)
    }

    /// Add every term of the Wick expansion with at least one contraction
    /// (negated when `negate` is set).
    fn accumulate_contractions(
        &self,
        rhs: &Self,
        kernel: &ContractionKernel,
        out: &mut Self,
        negate: bool,
    ) {
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                // cheap pruning: skip monomial pairs with no pairable slots
                let any = ml
                    .indices()
                    .iter()
                    .any(|&m| mr.indices().iter().any(|&n| kernel.pairs(m, n)));
                if !any {
                    continue;
                }
                let base = cl * cr;
                let base = if negate { -&base } else { base };
                let mut used = vec![false; mr.degree()];
                wick_recurse(
                    ml.indices(),
                    mr.indices(),
                    0,
                    &mut used,
                    &GaussianRational::one(),
                    0,
                    &mut Vec::new(),
                    &mut |pairs, prod, left_rest, right_rest| {
                        if pairs == 0 {
                            return; // classical term handled separately
                        }
                        let mut mono: Vec<i64> =
                            Vec::with_capacity(left_rest.len() + right_rest.len());
                        mono.extend_from_slice(left_rest);
                        mono.extend_from_slice(right_rest);
                        let coeff = base.scale(prod).shift_hbar(pairs);
                        out.add_term(ModeMonomial::new(mono), coeff);
                    },
                    kernel,
                );
            }
        }
    }

    /// Re-ordering shift for quadratics, for a translation-invariant smooth
    /// difference kernel whose total diagonal contribution to the quadratic
    /// zero mode is `d0`. Only the `a_0·a_0` pair couples to such a kernel's
    /// zero mode, so the shift adds `ħ · d0 · 2c₀₀` to the empty monomial,
    /// where `c₀₀` is the coefficient of `a_0·a_0`. Degree > 2 is rejected:
    /// the diagonal-limit rule is only available for quadratics.
    pub fn alpha_shift_quadratic(&self, d0: &GaussianRational) -> Result<Self, AlgebraError> {
        let deg = self.max_degree();
        if deg > 2 {
            return Err(AlgebraError::DegreeTooHigh { max: 2, got: deg });
        }
        let mut out = self.clone();
        if d0.is_zero() {
            return Ok(out);
        }
        let c00 = self.coeff(&ModeMonomial::new(vec![0, 0]));
        if c00.is_zero() {
            return Ok(out);
        }
        let shift = c00.scale(&d0.scale_int(2)).shift_hbar(1);
        out.add_term(ModeMonomial::unit(), shift);
        Ok(out)
    }

    /// The general re-ordering map for a symmetric difference pairing `S`:
    /// contracts disjoint unordered slot pairs *within* each monomial, an
    /// `(a_j, a_k)` pair contributing `ħ·S(j, k)`. It intertwines the star
    /// products of two kernels differing by `S`:
    /// `alpha_reorder(F ⋆_W G) = alpha_reorder(F) ⋆_{W+S} alpha_reorder(G)`,
    /// with inverse `alpha_reorder` at `-S`. The supplied kernel must be
    /// symmetric.
    pub fn alpha_reorder(&self, shift: &ContractionKernel) -> Result<Self, AlgebraError> {
        let needed = self.max_degree() / 2;
        if needed > self.trunc_order {
            return Err(AlgebraError::TruncationOverflow {
                needed,
                available: self.trunc_order,
            });
        }
        let mut out = Self::zero(self.trunc_order);
        for (mono, coeff) in &self.terms {
            self_pair_recurse(
                mono.indices(),
                coeff,
                shift,
                0,
                &GaussianRational::one(),
                &mut Vec::new(),
                &mut out,
            );
        }
        Ok(out)
    }

    /// The polynomial multiplying ħ^j, as a polynomial with ħ-free
    /// coefficients (same truncation order).
    pub fn hbar_component(&self, j: usize) -> Self {
        let mut out = Self::zero(self.trunc_order);
        for (m, c) in &self.terms {
            let cj = c.coeff(j);
            if !cj.is_zero() {
                out.add_term(m.clone(), HbarSeries::from_scalar(cj, self.trunc_order));
            }
        }
        out
    }

    /// Numeric evaluation: substitutes `a_n -> A_n[ψ] = 2√π ψ̂_{-n}` and
    /// `ħ -> hbar_value`.
    pub fn evaluate(&self, psi: &ChiralConfig, hbar_value: f64) -> Complex64 {
        let root_pi = std::f64::consts::PI.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = eval_series(c, hbar_value);
            for &k in m.indices() {
                term *= 2.0 * root_pi * psi.coeff(-k);
            }
            acc += term;
        }
        acc
    }
}

/// Enumerate sets of disjoint unordered slot pairs inside one monomial.
/// The first remaining slot is either left alone or paired with one of the
/// later remaining slots, so every pair set is visited exactly once.
fn self_pair_recurse(
    slots: &[i64],
    coeff: &HbarSeries,
    shift: &ContractionKernel,
    pairs: usize,
    prod: &GaussianRational,
    rest: &mut Vec<i64>,
    out: &mut ModePolynomial,
) {
    match slots.split_first() {
        None => {
            let contribution = coeff.scale(prod).shift_hbar(pairs);
            out.add_term(ModeMonomial::new(rest.clone()), contribution);
        }
        Some((&first, tail)) => {
            // leave the first slot uncontracted
            rest.push(first);
            self_pair_recurse(tail, coeff, shift, pairs, prod, rest, out);
            rest.pop();
            // or pair it with a later slot
            for (j, &partner) in tail.iter().enumerate() {
                if !shift.pairs(first, partner) {
                    continue;
                }
                let prod2 = prod * &shift.pairing(first, partner);
                let mut remaining: Vec<i64> = Vec::with_capacity(tail.len() - 1);
                remaining.extend_from_slice(&tail[..j]);
                remaining.extend_from_slice(&tail[j + 1..]);
                self_pair_recurse(&remaining, coeff, shift, pairs + 1, &prod2, rest, out);
            }
        }
    }
}

fn eval_series(c: &HbarSeries, hbar: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pow = 1.0;
    for k in 0..=c.trunc_order() {
        let coeff = c.coeff(k);
        if !coeff.is_zero() {
            acc += coeff.to_complex_f64() * pow;
        }
        pow *= hbar;
    }
    acc
}

/// Enumerate partial matchings of `left` slots against `right` slots with
/// nonzero pairings. Each matching is visited exactly once: slots of `left`
/// are scanned in order and either skipped or matched to an unused `right`
/// slot.
#[allow(clippy::too_many_arguments)]
fn wick_recurse(
    left: &[i64],
    right: &[i64],
    pos: usize,
    used: &mut Vec<bool>,
    prod: &GaussianRational,
    pairs: usize,
    left_rest: &mut Vec<i64>,
    visit: &mut impl FnMut(usize, &GaussianRational, &[i64], &[i64]),
    kernel: &ContractionKernel,
) {
    if pos == left.len() {
        let right_rest: Vec<i64> = right
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(_, &n)| n)
            .collect();
        visit(pairs, prod, left_rest, &right_rest);
        return;
    }
    let m = left[pos];
    // option 1: leave this slot uncontracted
    left_rest.push(m);
    wick_recurse(
        left,
        right,
        pos + 1,
        used,
        prod,
        pairs,
        left_rest,
        visit,
        kernel,
    );
    left_rest.pop();
    // option 2: contract against each available right slot
    for j in 0..right.len() {
        if used[j] || !kernel.pairs(m, right[j]) {
            continue;
        }
        let p = kernel.pairing(m, right[j]);
        used[j] = true;
        let prod2 = prod * &p;
        wick_recurse(
            left,
            right,
            pos + 1,
            used,
            &prod2,
            pairs + 1,
            left_rest,
            visit,
            kernel,
        );
        used[j] = false;
    }
}

impl fmt::Display for ModePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
