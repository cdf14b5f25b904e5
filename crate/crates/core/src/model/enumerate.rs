use super::Pins;
use crate::error::{Error, Result};

/// Calls `f` with the bitmask of every full assignment extending `pins`.
/// Bit `v` of the mask is the spin of vertex `v`.
pub(crate) fn for_each_extension<F: FnMut(u64)>(n: usize, pins: &Pins, budget: usize, mut f: F) -> Result<()> {
    if n > 63 {
        return Err(Error::Budget { free: n, limit: 63 });
    }
    pins.check_range(n)?;
    let free = pins.free_vertices(n);
    if free.len() > budget {
        return Err(Error::Budget { free: free.len(), limit: budget });
    }
    let base = pins.ones_mask();
    for sub in 0u64..(1u64 << free.len()) {
        let mut mask = base;
        let mut bits = sub;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            mask |= 1u64 << free[i];
            bits &= bits - 1;
        }
        f(mask);
    }
    Ok(())
}
