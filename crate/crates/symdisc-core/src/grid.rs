//! Finite grids standing in for the "for all α ∈ 𝔻̄ / β ∈ 𝕋" quantifiers.
//!
//! Grid density is always an explicit parameter of the operations that use
//! these; refinement tests double the density and require verdicts to be
//! stable.

use crate::C64;
use alloc::vec::Vec;
use num_traits::Float;

/// Radial–angular grid of the closed unit disk: `radii` rings from 0 to 1
/// inclusive, `angles` equispaced directions (the origin appears once).
pub fn closed_disk_grid(radii: usize, angles: usize) -> Vec<C64> {
    assert!(radii >= 2 && angles >= 1, "degenerate disk grid");
    let mut out = Vec::with_capacity(1 + (radii - 1) * angles);
    out.push(C64::new(0.0, 0.0));
    for k in 1..radii {
        let r = k as f64 / (radii - 1) as f64;
        for j in 0..angles {
            let phi = core::f64::consts::TAU * j as f64 / angles as f64;
            out.push(C64::new(r * phi.cos(), r * phi.sin()));
        }
    }
    out
}

/// Equispaced grid of the unit circle.
pub fn unit_circle_grid(count: usize) -> Vec<C64> {
    assert!(count >= 1, "empty circle grid");
    (0..count)
        .map(|j| {
            let phi = core::f64::consts::TAU * j as f64 / count as f64;
            C64::new(phi.cos(), phi.sin())
        })
        .collect()
}
