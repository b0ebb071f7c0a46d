#![no_main]

use klein11_core::exact::Cyclotomic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(c) = Cyclotomic::from_json(data) {
        let json = c.to_json();
        assert_eq!(Cyclotomic::from_json(&json).unwrap(), c);
    }
});
