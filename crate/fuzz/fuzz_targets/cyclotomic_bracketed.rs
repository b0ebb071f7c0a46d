#![no_main]

use klein11_core::exact::Cyclotomic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(c) = Cyclotomic::parse_bracketed(data) {
        let text = c.to_bracketed();
        assert_eq!(Cyclotomic::parse_bracketed(&text).unwrap(), c);
    }
});
