#![no_main]

use libfuzzer_sys::fuzz_target;
use wkspin_core::moduli::read_csv;

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = read_csv(data) {
        for r in rows {
            assert!(r.params.check_finite().is_ok());
            assert!(r.f_residual.is_finite() && r.scalar.is_finite());
        }
    }
});
