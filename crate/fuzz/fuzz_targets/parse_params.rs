#![no_main]

use libfuzzer_sys::fuzz_target;
use wkspin_core::geometry::ModelParams;
use wkspin_core::parse::parse_real;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_real(text) {
        assert!(x.is_finite());
    }
    if let Ok(p) = text.parse::<ModelParams>() {
        assert!(p.check_finite().is_ok());
        let again: ModelParams = format!("{},{},{}", p.k, p.l, p.m).parse().unwrap();
        assert_eq!(again, p);
        let _ = wkspin_core::wk::verify(&p);
    }
});
