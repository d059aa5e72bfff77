//! Small shared helpers.

/// Ceiling of log2. This is the one log convention used everywhere a block
/// size or threshold is needed: `ceil_log2(1) = 0`, `ceil_log2(3) = 2`.
pub fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    n.next_power_of_two().trailing_zeros() as usize
}
