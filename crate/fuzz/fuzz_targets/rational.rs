#![no_main]

use klein11_core::exact::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(q) = data.parse::<Rational>() {
        let text = q.to_string();
        assert_eq!(text.parse::<Rational>().unwrap(), q);
    }
});
