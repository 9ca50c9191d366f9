/// Effort caps shared by every operation that can blow up on adversarial input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible basis dimension `prod q_i` for inversion and unification.
    pub dim_cap: usize,
    /// Starting precision (bits) for sign determination.
    pub prec_start: u32,
    /// Precision (bits) beyond which sign determination gives up.
    pub prec_cap: u32,
    /// Largest number of lattice points the enumeration oracle may visit.
    pub enum_cap: u64,
    /// Trial division runs over candidates below this bound.
    pub trial_bound: u64,
    /// Iteration budget for each Pollard-rho attempt.
    pub rho_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 4096,
            prec_start: 64,
            prec_cap: 1 << 16,
            enum_cap: 10_000_000,
            trial_bound: 1 << 16,
            rho_budget: 1 << 20,
        }
    }
}
