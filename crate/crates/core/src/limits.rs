use serde::Serialize;

/// Resource caps shared by every search in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest group order any constructor will materialize.
    pub order_cap: usize,
    /// Largest tuple space `|G|^n` any enumeration will visit.
    pub state_cap: u64,
    /// Largest subset size tried by the rank and weight searches.
    pub tuple_bound: usize,
    /// Components up to this size get exact diameters; larger ones get a
    /// two-sweep lower bound flagged as approximate.
    pub exact_diameter_limit: usize,
}

pub const DEFAULT_ORDER_CAP: usize = 4096;
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;
pub const DEFAULT_TUPLE_BOUND: usize = 4;
pub const DEFAULT_EXACT_DIAMETER_LIMIT: usize = 20_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            state_cap: DEFAULT_STATE_CAP,
            tuple_bound: DEFAULT_TUPLE_BOUND,
            exact_diameter_limit: DEFAULT_EXACT_DIAMETER_LIMIT,
        }
    }
}
