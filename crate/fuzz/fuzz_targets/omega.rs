#![no_main]

use klein11_core::suites::parse_omega;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(z) = parse_omega(data) {
        assert!(z.re.is_finite() && z.im.is_finite());
    }
});
