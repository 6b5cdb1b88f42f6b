//! Benchmark inputs shared by the criterion targets.

use tubedef_core::band::{band_module, parse_band};
use tubedef_core::fixtures::klein4;
use tubedef_core::{BandModuleSpec, Field, Representation};

/// `V(a b^-, λ, m)` over the Klein four algebra.
pub fn klein_band(lambda: i64, m: usize) -> Representation {
    let f = Field::Rationals;
    let band = parse_band("a b^-", &klein4(f)).expect("valid band");
    band_module(&BandModuleSpec { band, lambda: f.from_i64(lambda), m }).expect("valid module")
}
