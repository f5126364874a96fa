#![no_main]

use libfuzzer_sys::fuzz_target;
use wkspin_core::report::RunReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = RunReport::from_json(text) {
        let once = report.to_json();
        let back = RunReport::from_json(&once).expect("re-serialized report parses");
        assert_eq!(back.to_json(), once);
    }
});
