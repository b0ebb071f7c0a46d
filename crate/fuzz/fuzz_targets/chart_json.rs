#![no_main]

use klein11_core::algebra::BranchChart;
use klein11_core::exact::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(c) = BranchChart::<Rational>::from_json(data) {
        let json = c.to_json();
        assert_eq!(BranchChart::<Rational>::from_json(&json).unwrap(), c);
    }
});
