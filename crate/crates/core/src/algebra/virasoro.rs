use super::{AlgebraError, ContractionKernel, ModeMonomial, ModePolynomial};
use crate::scalars::{GaussianRational, HbarSeries};

/// The truncated stress-tensor mode generator
/// `B_n^{(K)} = (1/2) Σ_k a_k a_{n-k}` over all `k` with `|k| <= K` and
/// `|n-k| <= K`. Windows too small to contain any admissible `k` (that is,
/// `|n| > 2K`) are rejected as empty truncations.
pub fn build_b(n: i64, k_trunc: i64, trunc_order: usize) -> Result<ModePolynomial, AlgebraError> {
    if n.abs() > 2 * k_trunc {
        return Err(AlgebraError::InvalidTruncation {
            k_trunc,
            n_abs: n.abs(),
        });
    }
    let half = GaussianRational::from_ratio(1, 2);
    let mut p = ModePolynomial::zero(trunc_order);
    for k in -k_trunc..=k_trunc {
        let partner = n - k;
        if partner.abs() > k_trunc {
            continue;
        }
        p.add_term(
            ModeMonomial::new(vec![k, partner]),
            HbarSeries::from_scalar(half.clone(), trunc_order),
        );
    }
    Ok(p)
}

/// The split of `[B_n, B_m]` into the linear mode part, the central scalar,
/// and a truncation residual.
#[derive(Clone, Debug)]
pub struct CommutatorSplit {
    /// The part matched against the basis generator: `ħ(n-m) · basis(n+m)`.
    pub witt: ModePolynomial,
    /// Coefficient of the empty monomial after the witt subtraction.
    pub central: HbarSeries,
    /// Everything else; supported on the truncation boundary window.
    pub residual: ModePolynomial,
    k_trunc: i64,
    n: i64,
    m: i64,
}

impl CommutatorSplit {
    /// Boundary-window certificate: every residual monomial must carry some
    /// index with absolute value above `K - 2·max(|n|, |m|)`.
    pub fn residual_in_boundary_window(&self) -> bool {
        let threshold = self.k_trunc - 2 * self.n.abs().max(self.m.abs());
        self.residual
            .terms()
            .all(|(mono, _)| mono.max_abs_index() > threshold)
    }
}

fn split_against(
    commutator: ModePolynomial,
    n: i64,
    m: i64,
    k_trunc: i64,
    basis: &ModePolynomial,
) -> CommutatorSplit {
    let trunc_order = commutator.trunc_order();
    let witt_coeff = HbarSeries::hbar_monomial(GaussianRational::from_int(n - m), 1, trunc_order);
    let witt = basis.scale_series(&witt_coeff);
    let reduced = commutator.sub(&witt);
    let central = reduced.coeff(&ModeMonomial::unit());
    let mut residual = reduced;
    residual.add_term(ModeMonomial::unit(), -&central);
    CommutatorSplit {
        witt,
        central,
        residual,
        k_trunc,
        n,
        m,
    }
}

fn check_window(n: i64, m: i64, k_trunc: i64) -> Result<(), AlgebraError> {
    let margin = 4 * n.abs().max(m.abs());
    if k_trunc < margin {
        return Err(AlgebraError::InvalidTruncation {
            k_trunc,
            n_abs: margin,
        });
    }
    Ok(())
}

/// `[B_n^{(K)}, B_m^{(K)}]` with the cylinder-vacuum kernel, split against
/// the vacuum-ordered generators. The central part equals
/// `ħ² n(n²-1)/12 · δ_{n+m,0}` exactly and the residual stays inside the
/// boundary window (see [`CommutatorSplit::residual_in_boundary_window`]).
pub fn virasoro_commutator(
    n: i64,
    m: i64,
    k_trunc: i64,
    trunc_order: usize,
) -> Result<CommutatorSplit, AlgebraError> {
    check_window(n, m, k_trunc)?;
    let kernel = ContractionKernel::cylinder_vacuum();
    let bn = build_b(n, k_trunc, trunc_order)?;
    let bm = build_b(m, k_trunc, trunc_order)?;
    let comm = bn.commutator(&bm, &kernel)?;
    let basis = build_b(n + m, k_trunc, trunc_order)?;
    Ok(split_against(comm, n, m, k_trunc, &basis))
}

/// Same commutator computed for the covariantly re-ordered generators
/// `B_n - ħ/24 · δ_{n,0}`, split against the re-ordered basis. The central
/// part becomes `ħ² n³/12 · δ_{n+m,0}` exactly.
pub fn virasoro_commutator_covariant(
    n: i64,
    m: i64,
    k_trunc: i64,
    trunc_order: usize,
) -> Result<CommutatorSplit, AlgebraError> {
    check_window(n, m, k_trunc)?;
    let d0 = GaussianRational::from_ratio(-1, 24);
    let kernel = ContractionKernel::cylinder_vacuum();
    let bn = build_b(n, k_trunc, trunc_order)?.alpha_shift_quadratic(&d0)?;
    let bm = build_b(m, k_trunc, trunc_order)?.alpha_shift_quadratic(&d0)?;
    let comm = bn.commutator(&bm, &kernel)?;
    let basis = build_b(n + m, k_trunc, trunc_order)?.alpha_shift_quadratic(&d0)?;
    Ok(split_against(comm, n, m, k_trunc, &basis))
}

/// The exact expected central series `ħ² n(n²-1)/12 δ_{n+m,0}`.
pub fn expected_central_vacuum(n: i64, m: i64, trunc_order: usize) -> HbarSeries {
    if n + m != 0 {
        return HbarSeries::zero(trunc_order);
    }
    let num = n * (n * n - 1);
    HbarSeries::hbar_monomial(GaussianRational::from_ratio(num, 12), 2, trunc_order)
}

/// The exact expected central series `ħ² n³/12 δ_{n+m,0}` of the covariant
/// ordering.
pub fn expected_central_covariant(n: i64, m: i64, trunc_order: usize) -> HbarSeries {
    if n + m != 0 {
        return HbarSeries::zero(trunc_order);
    }
    HbarSeries::hbar_monomial(GaussianRational::from_ratio(n * n * n, 12), 2, trunc_order)
}
