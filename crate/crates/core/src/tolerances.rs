//! Pinned numeric tolerances and default parameters for the verification suites.
//!
//! Every numeric threshold used by a suite or by the acceptance tests lives
//! here. Exact checks have no tolerance.

/// Twisted Q_k transformation residual at series truncation [`Q_TRANSFORM_ORDER`].
pub const Q_TRANSFORM_TOL: f64 = 1e-8;
pub const Q_TRANSFORM_ORDER: u64 = 300;

/// Twisted P_k transformation residual at summation cutoff [`P_TRANSFORM_CUTOFF`].
pub const P_TRANSFORM_TOL: f64 = 1e-6;
pub const P_TRANSFORM_CUTOFF: u32 = 80;

/// Lattice sum versus q-expansion of G_k.
pub const LATTICE_TOL: f64 = 1e-4;
pub const LATTICE_CUTOFF: u32 = 200;

/// η transformation laws.
pub const ETA_LAW_TOL: f64 = 1e-10;
/// Truncation order used when evaluating η numerically.
pub const ETA_EVAL_ORDER: u64 = 80;

/// Ratio constancy of trace functions under S and T.
pub const TRACE_TRANSFORM_TOL: f64 = 1e-8;
/// Modulus of the T-constant must be 1 to this tolerance.
pub const UNIT_MODULUS_TOL: f64 = 1e-8;
/// Series truncation for numeric trace evaluation.
pub const TRACE_EVAL_ORDER: u64 = 60;

/// Default order for exact suites.
pub const EXACT_ORDER: u64 = 10;
/// Order for the exact P̄ residue identity.
pub const PROP_ORDER: u64 = 8;
/// Weight cutoff for the enumeration oracle.
pub const ENUMERATION_WEIGHT: u64 = 5;
/// Maximal number of basis states visited by a single enumeration.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;
/// Default bracket-table size.
pub const BRACKET_IMAX: u32 = 16;

/// Minimal separation between sample points of a ratio check.
pub const SAMPLE_SEPARATION: f64 = 1e-3;
/// |rhs| below this counts as a zero of the right-hand side.
pub const DEGENERATE_RHS: f64 = 1e-300;
