//! Measure-weighted counts: the thick rainbow total and the parametrized
//! `ℓ¹` norm.

use super::algebra::{Clopen, ClopenAlgebra, Measure};
use crate::error::{Error, Result};

/// `2^n · Σ μ(A_i) c_i` for orbits of `Z_0` with `c_i` points per sheet.
pub fn thick_rainbow_weight(algebra: &ClopenAlgebra, n: usize, orbits: &[(Clopen, u64)]) -> Measure {
    let total: Measure = orbits.iter().map(|(a, c)| algebra.measure(a) * Measure::from_integer(*c as i64)).sum();
    total * Measure::from_integer(1i64 << n)
}

/// `Σ_i |∫ f_i dμ|`. The simplices are carried along unread; no two of them
/// may be translates of each other.
pub fn parametrized_l1_norm<S>(algebra: &ClopenAlgebra, terms: &[(Vec<i64>, S)]) -> Result<Measure> {
    let n = algebra.size();
    let mut total = Measure::from_integer(0);
    for (f, _) in terms {
        if f.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.len() });
        }
        let integral = Measure::new(f.iter().sum(), n as i64);
        total += if integral < Measure::from_integer(0) { -integral } else { integral };
    }
    Ok(total)
}
